#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "specsym/automorphism.hpp"
#include "specsym/blocks.hpp"
#include "specsym/irreps.hpp"

namespace specsym {

/// Consolidated output of the full structure analysis: orbits, a generating
/// set, all block systems per orbit, and the decomposition of every
/// eigenspace into irreducible representations.
struct SagResult {
    Partition orbits;
    std::vector<Permutation> generators;
    std::uint64_t order = 0;
    std::vector<OrbitGroupData> orbit_data; // one entry per orbit, in canonical order
    std::vector<IRDecomposition> irs;
    AnalysisReport analysis; // top-level co-refinement run
    std::vector<std::string> warnings;
    int d = 0;
    Tolerances tol;
};

SagResult run_sag(const Graph& g, int K = 4, const Tolerances& tol = {});

/// Per-orbit context (adequate set, stabilizer generators, block systems)
/// computed through a shared Analyzer.
std::vector<OrbitGroupData> gather_orbit_data(Analyzer& an);

std::string sag_to_json(const Graph& g, const SagResult& r, bool dump_bases = false);
std::string report_to_json(const AnalysisReport& rep);
std::string partition_to_json(const Partition& p);
std::string iso_to_json(const IsoOutcome& out);

} // namespace specsym
