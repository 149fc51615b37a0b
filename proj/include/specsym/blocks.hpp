#pragma once

#include <map>
#include <optional>
#include <vector>

#include "specsym/automorphism.hpp"
#include "specsym/graph.hpp"
#include "specsym/linalg.hpp"
#include "specsym/partition.hpp"
#include "specsym/permutation.hpp"

namespace specsym {

/// Bipartite graph on the cells of two stabilizer orbit partitions; cells are
/// adjacent when they intersect.
struct BipartiteOrbitGraph {
    Partition left, right;
    std::vector<std::pair<int, int>> edges; // (left cell, right cell)
    std::vector<int> left_component, right_component;
    int component_count = 0;
};

BipartiteOrbitGraph bipartite_graph(const Partition& pa, const Partition& pb);

/// Union of the left cells in x's component, intersected with the orbit; a
/// candidate block by the component lemma.
std::vector<int> component_block(const BipartiteOrbitGraph& bog, int x,
                                 const std::vector<int>& orbit);

struct BlockSystem {
    std::vector<int> orbit;
    std::vector<std::vector<int>> blocks; // equal sizes, sorted canonically
};

/// Partition of the orbit by equality of the stabilizer orbit partitions;
/// absence when the classes are all singletons or a single class.
std::optional<BlockSystem> tilde_partition(const std::vector<int>& orbit,
                                           const std::map<int, Partition>& stab_parts);

enum class Primitivity { CaseConnected, CaseCyclicPrime, Imprimitive };

/// Reduced scan: bipartite graphs BG(t, x) for the fixed base t against every
/// other orbit member (sufficient by conjugacy).
Primitivity is_primitive(const std::vector<int>& orbit,
                         const std::map<int, Partition>& stab_parts,
                         const AdequateSet& adequate);

/// Canonical minimal nontrivial block system on the orbit. Requires the
/// action to be imprimitive.
BlockSystem minimal_block(const std::vector<int>& orbit,
                          const std::map<int, Partition>& stab_parts, const AdequateSet& adequate,
                          const std::vector<Permutation>& stab_gens);

struct BlockFamily {
    // Ascending chain B_1 < B_2 < ... < B_l of blocks containing the base;
    // each step is maximal (no intermediate block), the top block is maximal.
    std::vector<std::vector<int>> chain;
    std::vector<Primitivity> level_verdicts; // primitivity of the action above each level
};

/// Ascends minimal blocks level by level until the action on the top system
/// is primitive.
BlockFamily block_family(const Graph& g, const std::vector<int>& orbit,
                         const std::map<int, Partition>& stab_parts, const AdequateSet& adequate,
                         const std::vector<Permutation>& stab_gens, const Tolerances& tol = {});

/// Complete enumeration of the nontrivial block systems on the orbit
/// (breadth-first over block closures through the level machinery).
std::vector<BlockSystem> all_block_systems_on_orbit(const std::vector<int>& orbit,
                                                    const std::map<int, Partition>& stab_parts,
                                                    const AdequateSet& adequate,
                                                    const std::vector<Permutation>& stab_gens);

/// Every certified automorphism must map blocks to blocks; block sizes must
/// agree; the block partition extended by singletons must be equitable.
void verify_block_system(const Graph& g, const BlockSystem& sys,
                         const std::vector<Permutation>& certificates, const Tolerances& tol = {});

struct BlockExtension {
    std::vector<int> b_plus;     // block generated in the source orbit
    bool b_plus_trivial = false; // b_plus is the whole source orbit
    bool criterion_holds = false; // the projection test of the cross-orbit theorem
    bool s_is_block = false;     // nontrivial correlated block structure on S
};

/// Cross-orbit extension: B a certified block in one orbit, S an orbit of the
/// block stabilizer inside another orbit. Decides via the relevant-IR
/// projection test whether S carries a block structure correlated with B+.
BlockExtension extend_block_across_orbits(const Graph& g, const std::vector<Permutation>& gens,
                                          const std::vector<Subspace>& irs,
                                          const std::vector<int>& block,
                                          const std::vector<int>& s_orbit,
                                          const Tolerances& tol = {});

} // namespace specsym
