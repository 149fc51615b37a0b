#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "specsym/graph.hpp"
#include "specsym/permutation.hpp"
#include "specsym/splitting.hpp"

namespace specsym {

/// Exact automorphism test: a_{s(i)s(j)} = a_{ij} (within eps_vec*||A||_max
/// for non-integer weights) and colors preserved.
bool verify_automorphism(const Graph& g, const Permutation& s, const Tolerances& tol = {});

/// Exact isomorphism test between two graphs under phi: b_{phi(i)phi(j)} = a_{ij}.
bool verify_isomorphism(const Graph& a, const Graph& b, const Permutation& phi,
                        const Tolerances& tol = {});

struct StabilizerData {
    int vertex;
    Partition orbits;                       // orbit partition of the point stabilizer
    std::vector<Permutation> certificates;  // verified automorphisms fixing `vertex`
};

struct AdequateSet {
    int base = -1;
    std::vector<int> orbit;
    std::map<int, Permutation> carrier; // x -> verified sigma with sigma(base) = x

    const Permutation& to(int x) const { return carrier.at(x); }
};

/// Exact order of <gens> by orbit-transversal recursion with Schreier
/// generators (test/validation utility).
std::uint64_t group_order(const std::vector<Permutation>& gens, int n);

/// Full enumeration of <gens> (bounded); used by set-stabilizer queries.
std::vector<Permutation> enumerate_group(const std::vector<Permutation>& gens, int n,
                                         std::size_t cap = 2000000);

struct IsoOutcome {
    bool isomorphic = false;
    std::optional<Permutation> map;
    std::string stage; // first distinguishing stage when not isomorphic
};

/// Orchestrates the spectral pipeline over one graph with caching of
/// analyses per color vector. All returned permutations are re-verified
/// internally; a verification failure aborts with CertificateError.
class Analyzer {
  public:
    explicit Analyzer(Graph g, int K = 4, Tolerances tol = {});

    const Graph& graph() const { return g_; }
    int K() const { return k_; }
    const Tolerances& tolerances() const { return tol_; }

    /// Cached Algorithm-4 run for the graph with the given chain of fixed
    /// vertices (each pinned to a fresh color, in order).
    const AnalysisReport& analysis(const std::vector<int>& fixed_chain = {});

    /// Automorphism carrying u to v, via matched terminal pair-sets of the
    /// colored analyses; absence certifies non-symmetry (within the spectral
    /// machinery; verified positives only).
    std::optional<Permutation> find_automorphism(int u, int v);
    std::optional<Permutation> find_automorphism_fixing(const std::vector<int>& fixed_chain, int u,
                                                        int v);

    /// Certified orbit partition of Aut(g).
    const Partition& orbits();

    /// Certified orbit partition of the subgroup fixing `fixed_chain`
    /// pointwise, with carrier certificates from each orbit's minimum.
    struct CertifiedOrbits {
        Partition partition;
        // carrier[v] maps the minimum of v's orbit to v (identity for minima)
        std::map<int, Permutation> carrier;
    };
    const CertifiedOrbits& certified_orbits(const std::vector<int>& fixed_chain);

    StabilizerData stabilizer_orbits(int v);

    AdequateSet adequate_set(int t, const std::vector<int>& orbit);

    /// Generating set via block families and stabilizer recursion.
    const std::vector<Permutation>& generating_set();

    /// Generators of the point stabilizer of v.
    std::vector<Permutation> stabilizer_generating_set(int v) {
        return generating_set_fixing({v});
    }

  private:
    std::vector<Permutation> generating_set_fixing(const std::vector<int>& fixed_chain);

    Graph g_;
    int k_;
    Tolerances tol_;
    std::map<std::vector<int>, AnalysisReport> analysis_cache_;
    std::map<std::vector<int>, CertifiedOrbits> orbit_cache_;
    std::optional<std::vector<Permutation>> generators_;
};

/// Isomorphism decision between two graphs: synchronized Algorithm-4 runs
/// with candidate trials for every internal individualization; any emitted
/// map is verified before returning.
IsoOutcome find_isomorphism(const Graph& a, const Graph& b, int K = 4, const Tolerances& tol = {});

} // namespace specsym
