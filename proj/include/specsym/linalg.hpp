#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "specsym/graph.hpp"
#include "specsym/types.hpp"

namespace specsym {

/// Linear subspace of R^n held as a column-orthonormal basis. The basis is
/// canonical: modified Gram-Schmidt over the projected standard basis
/// P e_0, P e_1, ..., so equal subspaces produced along different routes get
/// bit-identical bases on one platform. The zero subspace is represented by
/// absence (std::optional), never by an empty basis.
class Subspace {
  public:
    Subspace(Eigen::MatrixXd orthonormal_basis, std::string label = {});

    /// Canonical subspace spanned by the columns of a (not necessarily
    /// orthonormal) spanning set; empty when the span is numerically trivial.
    static std::optional<Subspace> from_span(const Eigen::MatrixXd& span, double eps_rank,
                                             std::string label = {});
    static std::optional<Subspace> from_projector(const Eigen::MatrixXd& projector,
                                                  double eps_rank, std::string label = {});

    int ambient_dim() const { return static_cast<int>(basis_.rows()); }
    int dim() const { return static_cast<int>(basis_.cols()); }
    const Eigen::MatrixXd& basis() const { return basis_; }
    const std::string& label() const { return label_; }
    void set_label(std::string l) { label_ = std::move(l); }

    /// Orthogonal projection matrix B B^T; columns are the projections of the
    /// standard basis (the OPSB matrix of this subspace).
    Eigen::MatrixXd projector() const { return basis_ * basis_.transpose(); }

    Eigen::VectorXd project(const Eigen::VectorXd& v) const;
    bool contains(const Subspace& inner, double eps_vec) const;
    bool same_space(const Subspace& other, double eps_vec) const;

  private:
    Eigen::MatrixXd basis_;
    std::string label_;
};

struct DecompositionPart {
    double eigenvalue;
    Subspace space;
};

/// Ordered list of mutually orthogonal subspaces, each inside a single
/// eigenspace of the matrix it was derived from.
class Decomposition {
  public:
    Decomposition() = default;
    Decomposition(int ambient_dim, std::vector<DecompositionPart> parts, bool complete);

    int ambient_dim() const { return ambient_; }
    bool complete() const { return complete_; }
    const std::vector<DecompositionPart>& parts() const { return parts_; }
    int part_count() const { return static_cast<int>(parts_.size()); }
    const DecompositionPart& part(int i) const { return parts_[i]; }

    int max_part_dim() const;

    /// Orthogonality, per-part eigen-residual against `m`, and (for complete
    /// decompositions) reconstruction sum B_i B_i^T = I. Throws
    /// CertificateError on violation.
    void check_invariants(const Eigen::MatrixXd& m, const Tolerances& tol) const;

  private:
    int ambient_ = 0;
    std::vector<DecompositionPart> parts_;
    bool complete_ = false;
};

/// Maximal eigenspaces of the graph's spectral matrix, eigenvalues sorted
/// descending, grouped by gap <= eps_eig * max(1, ||A||_max).
Decomposition eigendecompose(const Graph& g, const Tolerances& tol = {});
Decomposition eigendecompose(const Eigen::MatrixXd& m, const Tolerances& tol = {});

/// Flags eigenvalue gaps within 10x of the grouping threshold (the gap
/// heuristic cannot certify equality vs. closeness there).
std::vector<std::string> spectral_gap_warnings(const Eigen::MatrixXd& m, const Tolerances& tol);

Eigen::VectorXd project(const Subspace& s, const Eigen::VectorXd& v);

/// Orthogonal complement of `inner` within `outer`; throws NotContainedError
/// when inner is not a subspace of outer; empty when dims are equal.
std::optional<Subspace> ominus(const Subspace& outer, const Subspace& inner,
                               const Tolerances& tol = {}, double scale = 1.0);

/// span{ Proj_s(e_x) : x in vertices }, vertices processed ascending through
/// modified Gram-Schmidt with rank threshold eps_rank.
std::optional<Subspace> span_of_projections(const Subspace& s, const std::vector<int>& vertices,
                                            const Tolerances& tol = {}, double scale = 1.0);

/// Intersection of two subspaces of a common ambient space.
std::optional<Subspace> intersect(const Subspace& a, const Subspace& b, const Tolerances& tol = {},
                                  double scale = 1.0);

} // namespace specsym
