#pragma once

#include <optional>
#include <vector>

#include "specsym/automorphism.hpp"
#include "specsym/blocks.hpp"
#include "specsym/graph.hpp"
#include "specsym/linalg.hpp"
#include "specsym/permutation.hpp"

namespace specsym {

class EmptySliceError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// {x in U : P_xi x = x for every generator xi}: the fixed subspace of the
/// anchor's stabilizer inside U.
std::optional<Subspace> fixed_subspace(const Subspace& u, const std::vector<Permutation>& stab_gens,
                                       const Tolerances& tol = {});

/// U[B] for a block with cyclic stabilizer: vectors u with
/// zeta (sum_k xi^k) u = (sum_k xi^k) u for the block stabilizer generators.
std::optional<Subspace> block_fixed_subspace(const Subspace& u,
                                             const std::vector<Permutation>& block_group,
                                             const Tolerances& tol = {});

/// The extremal refinement: start from the stabilizer-fixed slice of X and
/// iteratively restrict to the top-eigenvalue subspace of the symmetrized
/// form of each mover; returns a unit vector lying in a single irreducible
/// representation.
Eigen::VectorXd extremal_refine(const Subspace& x, int v,
                                const std::vector<Permutation>& stab_gens,
                                const std::vector<Permutation>& movers, const Tolerances& tol = {});

/// Everything the irreducible decomposition needs to know about one orbit.
struct OrbitGroupData {
    int base = -1;
    std::vector<int> orbit;
    AdequateSet adequate;
    std::vector<Permutation> stab_gens; // generators of the base stabilizer
    std::vector<BlockSystem> systems;   // all block systems on this orbit
};

struct IRDecomposition {
    double eigenvalue;
    std::vector<Subspace> parts; // mutually orthogonal, each claimed irreducible
    std::vector<int> orbit_of;   // index into the orbit data each part came from
};

/// Decomposes every eigenspace into irreducible representations: block-system
/// presplits (quotient lift cross-checked against stabilizer-fixed
/// intersections) followed by the extremal refinement loop per orbit.
std::vector<IRDecomposition> decompose_into_irs(const Graph& g, const Decomposition& dec,
                                                const std::vector<OrbitGroupData>& orbits,
                                                const Tolerances& tol = {});

/// Isomorphism test via normalized Gram matrices of the projected standard
/// basis over the orbit; both projections must be nontrivial there.
bool irs_isomorphic(const Subspace& w1, const Subspace& w2, const std::vector<int>& orbit,
                    const Tolerances& tol = {});

struct BlockProjectionReport {
    std::vector<int> relevant_irs; // indices with nonzero constant-on-block projections
    bool all_pass = true;          // every (IR, block) pair satisfied the dichotomy
};

/// Checks Proj_W(R_B) in {0, |B| Proj_W(e_b)} for every IR and block; tags
/// the IRs representing the system.
BlockProjectionReport block_projection_check(const BlockSystem& sys,
                                             const std::vector<Subspace>& irs,
                                             const Tolerances& tol = {});

} // namespace specsym
