#include "specsym/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace specsym {

namespace {

/// Modified Gram-Schmidt with two passes per vector; drops residuals whose
/// norm falls at or below `eps`.
Eigen::MatrixXd mgs(const Eigen::MatrixXd& cols, double eps) {
    const int n = static_cast<int>(cols.rows());
    std::vector<Eigen::VectorXd> basis;
    for (int j = 0; j < cols.cols(); ++j) {
        Eigen::VectorXd v = cols.col(j);
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& b : basis) v -= b.dot(v) * b;
        double nv = v.norm();
        if (nv > eps) basis.push_back(v / nv);
    }
    Eigen::MatrixXd out(n, static_cast<int>(basis.size()));
    for (int j = 0; j < out.cols(); ++j) out.col(j) = basis[j];
    return out;
}

} // namespace

Subspace::Subspace(Eigen::MatrixXd orthonormal_basis, std::string label)
    : basis_(std::move(orthonormal_basis)), label_(std::move(label)) {
    if (basis_.cols() < 1) throw DimensionError("zero subspace must be represented by absence");
}

std::optional<Subspace> Subspace::from_span(const Eigen::MatrixXd& span, double eps_rank,
                                            std::string label) {
    Eigen::MatrixXd b = mgs(span, eps_rank);
    if (b.cols() == 0) return std::nullopt;
    // Canonicalize via the projector so the basis does not depend on the
    // order or scaling of the spanning set.
    return from_projector(b * b.transpose(), eps_rank, std::move(label));
}

std::optional<Subspace> Subspace::from_projector(const Eigen::MatrixXd& projector, double eps_rank,
                                                 std::string label) {
    Eigen::MatrixXd b = mgs(projector, eps_rank);
    if (b.cols() == 0) return std::nullopt;
    return Subspace(std::move(b), std::move(label));
}

Eigen::VectorXd Subspace::project(const Eigen::VectorXd& v) const {
    if (v.size() != basis_.rows()) throw DimensionError("vector length does not match ambient dim");
    return basis_ * (basis_.transpose() * v);
}

bool Subspace::contains(const Subspace& inner, double eps_vec) const {
    for (int j = 0; j < inner.dim(); ++j) {
        Eigen::VectorXd b = inner.basis().col(j);
        if ((project(b) - b).cwiseAbs().maxCoeff() > eps_vec) return false;
    }
    return true;
}

bool Subspace::same_space(const Subspace& other, double eps_vec) const {
    if (ambient_dim() != other.ambient_dim()) return false;
    if (dim() != other.dim()) return false;
    return (projector() - other.projector()).cwiseAbs().maxCoeff() <= eps_vec;
}

Eigen::VectorXd project(const Subspace& s, const Eigen::VectorXd& v) { return s.project(v); }

Decomposition::Decomposition(int ambient_dim, std::vector<DecompositionPart> parts, bool complete)
    : ambient_(ambient_dim), parts_(std::move(parts)), complete_(complete) {}

int Decomposition::max_part_dim() const {
    int d = 0;
    for (const auto& p : parts_) d = std::max(d, p.space.dim());
    return d;
}

void Decomposition::check_invariants(const Eigen::MatrixXd& m, const Tolerances& tol) const {
    double a_max = std::max(1.0, m.cwiseAbs().maxCoeff());
    const int n = ambient_;
    for (size_t i = 0; i < parts_.size(); ++i) {
        const auto& bi = parts_[i].space.basis();
        double res = (m * bi - parts_[i].eigenvalue * bi).cwiseAbs().maxCoeff();
        if (res > 100 * tol.eps_eig * a_max)
            throw CertificateError("eigen-residual " + std::to_string(res) + " in part " +
                                   parts_[i].space.label());
        for (size_t j = i + 1; j < parts_.size(); ++j) {
            double o = (bi.transpose() * parts_[j].space.basis()).cwiseAbs().maxCoeff();
            if (o > tol.eps_vec) throw CertificateError("decomposition parts not orthogonal");
        }
    }
    if (complete_) {
        Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(n, n);
        for (const auto& p : parts_) sum += p.space.projector();
        if ((sum - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff() > n * tol.eps_vec)
            throw CertificateError("decomposition does not reconstruct the identity");
    }
}

Decomposition eigendecompose(const Eigen::MatrixXd& m, const Tolerances& tol) {
    const int n = static_cast<int>(m.rows());
    double a_max = std::max(1.0, m.cwiseAbs().maxCoeff());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
    if (solver.info() != Eigen::Success) throw EigensolverError("eigensolver failed to converge");
    Eigen::VectorXd w = solver.eigenvalues();
    Eigen::MatrixXd v = solver.eigenvectors();

    // Sort descending, then group by gap.
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) { return w(a) > w(b); });

    std::vector<DecompositionPart> parts;
    int i = 0;
    while (i < n) {
        int j = i;
        while (j + 1 < n && w(order[j]) - w(order[j + 1]) <= tol.eps_eig * a_max) ++j;
        Eigen::MatrixXd block(n, j - i + 1);
        double lambda_sum = 0;
        for (int k = i; k <= j; ++k) {
            block.col(k - i) = v.col(order[k]);
            lambda_sum += w(order[k]);
        }
        double lambda = lambda_sum / (j - i + 1);
        auto sub = Subspace::from_projector(block * block.transpose(), tol.eps_rank);
        if (!sub || sub->dim() != j - i + 1)
            throw EigensolverError("eigenspace basis extraction lost rank");
        std::ostringstream label;
        label << "V[" << lambda << "]";
        sub->set_label(label.str());
        parts.push_back({lambda, std::move(*sub)});
        i = j + 1;
    }
    return Decomposition(n, std::move(parts), true);
}

Decomposition eigendecompose(const Graph& g, const Tolerances& tol) {
    return eigendecompose(g.spectral_matrix(), tol);
}

std::vector<std::string> spectral_gap_warnings(const Eigen::MatrixXd& m, const Tolerances& tol) {
    double a_max = std::max(1.0, m.cwiseAbs().maxCoeff());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
    Eigen::VectorXd w = solver.eigenvalues();
    std::vector<std::string> warnings;
    for (int i = 0; i + 1 < w.size(); ++i) {
        double gap = std::abs(w(i + 1) - w(i));
        if (gap > tol.eps_eig * a_max && gap <= 10 * tol.eps_eig * a_max) {
            std::ostringstream os;
            os << "eigenvalue gap " << gap << " between " << w(i) << " and " << w(i + 1)
               << " lies within 10x of the grouping threshold";
            warnings.push_back(os.str());
        }
    }
    return warnings;
}

std::optional<Subspace> ominus(const Subspace& outer, const Subspace& inner, const Tolerances& tol,
                               double /*scale*/) {
    if (!outer.contains(inner, 10 * tol.eps_vec))
        throw NotContainedError("inner subspace not contained in outer");
    if (inner.dim() == outer.dim()) return std::nullopt;
    Eigen::MatrixXd p = outer.projector() - inner.projector();
    return Subspace::from_projector(p, tol.eps_rank);
}

std::optional<Subspace> span_of_projections(const Subspace& s, const std::vector<int>& vertices,
                                            const Tolerances& tol, double /*scale*/) {
    std::vector<int> order(vertices);
    std::sort(order.begin(), order.end());
    Eigen::MatrixXd p = s.projector();
    Eigen::MatrixXd cols(s.ambient_dim(), static_cast<int>(order.size()));
    for (size_t k = 0; k < order.size(); ++k) cols.col(static_cast<int>(k)) = p.col(order[k]);
    return Subspace::from_span(cols, tol.eps_rank);
}

std::optional<Subspace> intersect(const Subspace& a, const Subspace& b, const Tolerances& tol,
                                  double /*scale*/) {
    // Eigenvectors of B_a^T P_b B_a with eigenvalue ~1 span the intersection
    // in a-coordinates.
    Eigen::MatrixXd c = a.basis().transpose() * b.projector() * a.basis();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(c);
    if (solver.info() != Eigen::Success) throw EigensolverError("intersection solver failed");
    std::vector<int> keep;
    for (int i = 0; i < solver.eigenvalues().size(); ++i)
        if (solver.eigenvalues()(i) >= 1.0 - tol.eps_rank) keep.push_back(i);
    if (keep.empty()) return std::nullopt;
    Eigen::MatrixXd span(a.ambient_dim(), static_cast<int>(keep.size()));
    for (size_t k = 0; k < keep.size(); ++k)
        span.col(static_cast<int>(k)) = a.basis() * solver.eigenvectors().col(keep[k]);
    return Subspace::from_span(span, tol.eps_rank);
}

} // namespace specsym
