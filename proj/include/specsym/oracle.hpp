#pragma once

#include <cstdint>
#include <vector>

#include "specsym/graph.hpp"
#include "specsym/partition.hpp"
#include "specsym/permutation.hpp"

namespace specsym {

/// Ground truth for tests: exhaustive automorphism enumeration and the
/// structure data derived from the explicit list. Never used by the main
/// pipeline.
struct OracleResult {
    std::vector<Permutation> automorphisms;
    Partition orbits;
    std::vector<Partition> stabilizer_orbits;            // indexed by vertex
    std::vector<std::vector<std::vector<std::vector<int>>>> block_systems; // per orbit
    std::uint64_t group_order = 0;
};

/// Backtracking over color/degree-compatible images with partial-adjacency
/// pruning. Throws when n exceeds the cap unless overridden.
std::vector<Permutation> enumerate_automorphisms(const Graph& g, int cap = 10,
                                                 bool override_cap = false);

/// All block systems of the action on one orbit: closure of every seed pair
/// under the full group, deduplicated. Includes only nontrivial systems
/// (block size > 1, more than one block).
std::vector<std::vector<std::vector<int>>> enumerate_block_systems(
    const Graph& g, const std::vector<Permutation>& auts, const std::vector<int>& orbit);

OracleResult oracle_analyze(const Graph& g, int cap = 10, bool override_cap = false);

Partition orbit_partition_of(const std::vector<Permutation>& perms, int n);

} // namespace specsym
