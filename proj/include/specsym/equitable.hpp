#pragma once

#include <optional>
#include <vector>

#include "specsym/graph.hpp"
#include "specsym/linalg.hpp"
#include "specsym/partition.hpp"

namespace specsym {

/// Coarsest equitable partition of g refining `seed` (classical color
/// refinement with weighted degree signatures, values clustered by gap).
Partition coarsest_equitable(const Graph& g, const Partition& seed, const Tolerances& tol = {});

/// Cached per-part projectors of a decomposition.
class DecProjections {
  public:
    explicit DecProjections(const Decomposition& dec);
    int count() const { return static_cast<int>(ps_.size()); }
    const Eigen::MatrixXd& operator[](int i) const { return ps_[i]; }

  private:
    std::vector<Eigen::MatrixXd> ps_;
};

/// Partition of V by the projection relation anchored at v: x ~ y iff for
/// every part U of dec, ||Proj_U e_x|| = ||Proj_U e_y|| and
/// <e_x, Proj_U e_v> = <e_y, Proj_U e_v>; the result is then refined to its
/// coarsest equitable partition.
Partition projection_partition(const Graph& g, const Decomposition& dec, int v,
                               const Tolerances& tol = {});
Partition projection_partition(const Graph& g, const DecProjections& ps, int v,
                               const Tolerances& tol = {});

struct CellTypeMatch {
    bool matched = false;
    std::vector<int> cell_map; // cell_map[i] = cell index in target for cell i of source
};

/// Attempts the size/signature-respecting bijection between the cells of two
/// partitions (projection signatures taken against dec). Absence of a match
/// is a value, not an error.
CellTypeMatch cells_in_same_type(const Decomposition& dec, const Partition& pA,
                                 const Partition& pB, const Tolerances& tol = {});

/// All signature-consistent cell bijections, lexicographically ordered,
/// capped by the product of signature-class multiplicities.
std::vector<std::vector<int>> all_cell_type_bijections(const Decomposition& dec,
                                                       const Partition& pA, const Partition& pB,
                                                       const Tolerances& tol = {});

/// Do the quotient matrices agree under the cell bijection (direction- and
/// weight-preserving)?
bool quotients_isomorphic(const Graph& g, const Partition& pA, const Partition& pB,
                          const std::vector<int>& cell_map, const Tolerances& tol = {});

/// Partition of V grouping vertices u ~ v whose anchored projection
/// partitions are in the same type with isomorphic quotients, refined to the
/// coarsest equitable partition. Every orbit of Aut lies inside one cell.
Partition symmetry_partition(const Graph& g, const Decomposition& dec, const Tolerances& tol = {});

} // namespace specsym
