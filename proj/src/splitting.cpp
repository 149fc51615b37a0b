#include "specsym/splitting.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace specsym {

namespace {

std::string cell_to_string(const std::vector<int>& c) {
    std::ostringstream os;
    os << "{";
    for (size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
    os << "}";
    return os.str();
}

std::string partition_to_string(const Partition& p) {
    std::ostringstream os;
    for (const auto& c : p.cells()) os << cell_to_string(c);
    return os.str();
}

/// Lifted eigenspaces of the quotient: diagonal similarity makes the quotient
/// matrix symmetric, and R maps its eigenvectors to eigenvectors of A.
std::vector<std::pair<double, Subspace>> lifted_spaces(const Graph& g, const Partition& p,
                                                       const Tolerances& tol) {
    QuotientGraph q = quotient(g, p, tol);
    const int t = p.cell_count();
    Eigen::VectorXd d(t);
    for (int i = 0; i < t; ++i) d(i) = static_cast<double>(q.cell_sizes[i]);
    Eigen::VectorXd dh = d.cwiseSqrt();
    Eigen::MatrixXd m = dh.asDiagonal() * q.adjacency * dh.cwiseInverse().asDiagonal();
    m = ((m + m.transpose()) / 2.0).eval();
    Decomposition qdec = eigendecompose(m, tol);

    Eigen::MatrixXd r = Eigen::MatrixXd::Zero(g.n(), t);
    for (int j = 0; j < t; ++j)
        for (int v : p.cell(j)) r(v, j) = 1.0;

    std::vector<std::pair<double, Subspace>> out;
    for (const auto& part : qdec.parts()) {
        Eigen::MatrixXd span = r * dh.cwiseInverse().asDiagonal() * part.space.basis();
        auto s = Subspace::from_span(span, tol.eps_rank);
        if (s) out.emplace_back(part.eigenvalue, std::move(*s));
    }
    return out;
}

} // namespace

std::optional<Partition> fn1_refine_partition(const Graph& g, const Decomposition& dec,
                                              const Partition& p, const Tolerances& tol) {
    DecProjections ps(dec);
    std::vector<std::vector<int>> pieces;
    for (const auto& cell : p.cells()) {
        if (cell.size() == 1) {
            pieces.push_back(cell);
            continue;
        }
        std::vector<Partition> pp;
        pp.reserve(cell.size());
        for (int v : cell) pp.push_back(projection_partition(g, ps, v, tol));

        // Group cell members by the projection-symmetry relation: matching
        // partition types with isomorphic quotients.
        std::vector<int> klass(cell.size(), -1);
        std::vector<size_t> reps;
        for (size_t i = 0; i < cell.size(); ++i) {
            for (size_t r = 0; r < reps.size(); ++r) {
                const Partition& pu = pp[reps[r]];
                if (pu.cell_count() != pp[i].cell_count()) continue;
                bool ok = false;
                for (const auto& psi : all_cell_type_bijections(dec, pu, pp[i], tol))
                    if (quotients_isomorphic(g, pu, pp[i], psi, tol)) {
                        ok = true;
                        break;
                    }
                if (ok) {
                    klass[i] = static_cast<int>(r);
                    break;
                }
            }
            if (klass[i] < 0) {
                klass[i] = static_cast<int>(reps.size());
                reps.push_back(i);
            }
        }
        std::vector<std::vector<int>> groups(reps.size());
        for (size_t i = 0; i < cell.size(); ++i) groups[klass[i]].push_back(cell[i]);
        for (auto& grp : groups) pieces.push_back(std::move(grp));
    }
    Partition refined = coarsest_equitable(g, Partition(p.n(), std::move(pieces)), tol);
    if (!refined.refines(p)) return std::nullopt;
    return refined;
}

Decomposition fn2_split_by_quotient(const Graph& g, const Decomposition& dec, const Partition& p,
                                    const Tolerances& tol) {
    auto lifts = lifted_spaces(g, p, tol);
    double eig_eps = tol.eps_eig * std::max(1.0, g.max_abs_entry());

    std::vector<DecompositionPart> parts;
    for (const auto& part : dec.parts()) {
        const Subspace* lift = nullptr;
        for (const auto& [lam, s] : lifts)
            if (std::abs(lam - part.eigenvalue) <= 100 * eig_eps) {
                lift = &s;
                break;
            }
        if (!lift) {
            parts.push_back(part);
            continue;
        }
        auto y = intersect(part.space, *lift, tol);
        if (!y || y->dim() == part.space.dim()) {
            parts.push_back(part);
            continue;
        }
        auto z = ominus(part.space, *y, tol);
        y->set_label(part.space.label() + ".q");
        parts.push_back({part.eigenvalue, std::move(*y)});
        if (z) {
            z->set_label(part.space.label() + ".q'");
            parts.push_back({part.eigenvalue, std::move(*z)});
        }
    }
    return Decomposition(dec.ambient_dim(), std::move(parts), dec.complete());
}

Decomposition fn3_split_by_cells(const Graph& g, const Decomposition& dec, const Partition& p,
                                 const Tolerances& tol) {
    std::vector<DecompositionPart> parts(dec.parts());
    for (int s = 0; s < p.cell_count(); ++s) {
        const auto& cell = p.cell(s);
        std::vector<DecompositionPart> next;
        for (auto& part : parts) {
            auto span = span_of_projections(part.space, cell, tol);
            if (!span || span->dim() == part.space.dim()) {
                next.push_back(std::move(part));
                continue;
            }
            auto z = ominus(part.space, *span, tol);
            span->set_label(part.space.label() + ".c" + std::to_string(s));
            next.push_back({part.eigenvalue, std::move(*span)});
            if (z) {
                z->set_label(part.space.label() + ".c" + std::to_string(s) + "'");
                next.push_back({part.eigenvalue, std::move(*z)});
            }
        }
        parts = std::move(next);
    }
    return Decomposition(dec.ambient_dim(), std::move(parts), dec.complete());
}

bool irrelevant_cells(const Graph& g, const Decomposition& dec, const Partition& p, int c1, int c2,
                      const Tolerances& tol) {
    DecProjections ps(dec);
    auto covers = [&](int from, int target) {
        for (int w : p.cell(from)) {
            Partition pp = projection_partition(g, ps, w, tol);
            if (pp.find_cell(p.cell(target)) < 0) return false;
        }
        return true;
    };
    return covers(c1, c2) || covers(c2, c1);
}

std::vector<std::vector<int>> small_cell_local_orbits(const Graph& g, const Decomposition& dec,
                                                      const std::vector<int>& cell,
                                                      const Tolerances& tol) {
    const int k = static_cast<int>(cell.size());
    // Gram data of the OPSB of span{X : cell} per part, indexed within the cell.
    std::vector<Eigen::MatrixXd> gram;
    for (const auto& part : dec.parts()) {
        auto span = span_of_projections(part.space, cell, tol);
        Eigen::MatrixXd gm = Eigen::MatrixXd::Zero(k, k);
        if (span) {
            Eigen::MatrixXd pr = span->projector();
            for (int a = 0; a < k; ++a)
                for (int b = 0; b < k; ++b) gm(a, b) = pr(cell[a], cell[b]);
        }
        gram.push_back(std::move(gm));
    }
    std::vector<int> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::vector<int>> symmetries;
    do {
        bool ok = true;
        for (const auto& gm : gram) {
            for (int a = 0; a < k && ok; ++a)
                for (int b = 0; b < k && ok; ++b)
                    if (std::abs(gm(perm[a], perm[b]) - gm(a, b)) > tol.eps_vec) ok = false;
            if (!ok) break;
        }
        if (ok) symmetries.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));

    // Orbits of the matched symmetry group on the cell.
    std::vector<int> root(k, -1);
    std::vector<std::vector<int>> orbits;
    for (int a = 0; a < k; ++a) {
        if (root[a] >= 0) continue;
        std::vector<int> orbit{a};
        root[a] = a;
        for (size_t i = 0; i < orbit.size(); ++i)
            for (const auto& s : symmetries) {
                int img = s[orbit[i]];
                if (root[img] < 0) {
                    root[img] = a;
                    orbit.push_back(img);
                }
            }
        std::sort(orbit.begin(), orbit.end());
        std::vector<int> named;
        for (int idx : orbit) named.push_back(cell[idx]);
        orbits.push_back(std::move(named));
    }
    return orbits;
}

Algorithm4Driver::Algorithm4Driver(const Graph& g, int K, const Tolerances& tol)
    : ga_(g.colored() ? Graph(g.spectral_matrix()) : g), k_(K), tol_(tol),
      p_(Partition::single_cell(g.n())), dec_(eigendecompose(ga_, tol)) {
    dec_.check_invariants(ga_.adjacency(), tol_);
    snapshot();
}

void Algorithm4Driver::snapshot() {
    if (!rep_.pairs.empty() && rep_.pairs.back().partition == p_ &&
        rep_.pairs.back().decomposition.part_count() == dec_.part_count())
        return;
    rep_.pairs.push_back({p_, dec_});
    rep_.history.push_back({HistoryEvent::Kind::Snapshot, partition_to_string(p_)});
}

bool Algorithm4Driver::run() {
    pending_cell_ = -1;
    while (true) {
        bool big_cell = false;
        for (const auto& c : p_.cells()) big_cell |= static_cast<int>(c.size()) > k_;
        bool big_part = dec_.max_part_dim() > k_;
        if (!big_cell || !big_part) {
            std::string why = big_cell ? "all subspace dims <= K" : "all cells <= K";
            if (!big_cell && !big_part) why = "all cells and all subspace dims <= K";
            rep_.history.push_back({HistoryEvent::Kind::Stop, why});
            snapshot();
            terminal_ = true;
            return true;
        }

        auto refined = fn1_refine_partition(ga_, dec_, p_, tol_);
        if (refined && refined->strictly_refines(p_)) {
            p_ = std::move(*refined);
            rep_.history.push_back({HistoryEvent::Kind::F1Refined, partition_to_string(p_)});
            dec_ = fn3_split_by_cells(ga_, fn2_split_by_quotient(ga_, dec_, p_, tol_), p_, tol_);
            dec_.check_invariants(ga_.adjacency(), tol_);
            continue;
        }
        rep_.history.push_back({!refined ? HistoryEvent::Kind::F1NotAppropriate
                                         : HistoryEvent::Kind::F1NoStrictRefinement,
                               ""});
        snapshot();

        int i = 0;
        while (i < p_.cell_count() && p_.cell(i).size() == 1) ++i;
        while (i < p_.cell_count() && static_cast<int>(p_.cell(i).size()) <= k_) {
            if (p_.cell(i).size() > 1) {
                auto orbits = small_cell_local_orbits(ga_, dec_, p_.cell(i), tol_);
                std::ostringstream os;
                os << "cell " << cell_to_string(p_.cell(i)) << " local orbits ";
                for (const auto& o : orbits) os << cell_to_string(o);
                rep_.history.push_back({HistoryEvent::Kind::SmallCellAnalysis, os.str()});
            }
            ++i;
        }
        pending_cell_ = i;
        return false;
    }
}

void Algorithm4Driver::individualize(int vertex) {
    rep_.fixed_vertices.push_back(vertex);
    rep_.d += 1;
    rep_.history.push_back({HistoryEvent::Kind::Individualize, std::to_string(vertex)});
    Partition anchored = projection_partition(ga_, dec_, vertex, tol_);
    // Meet with the current partition to preserve monotonicity, then restore
    // equitability.
    p_ = coarsest_equitable(ga_, Partition::meet(anchored, p_), tol_);
    dec_ = fn3_split_by_cells(ga_, fn2_split_by_quotient(ga_, dec_, p_, tol_), p_, tol_);
    dec_.check_invariants(ga_.adjacency(), tol_);
    snapshot();
}

AnalysisReport Algorithm4Driver::finish() {
    rep_.terminal = terminal_;
    std::stable_sort(rep_.pairs.begin(), rep_.pairs.end(),
                     [&](const AnalysisPair& a, const AnalysisPair& b) {
                         if (pair_precedes(a, b, tol_)) return true;
                         if (pair_precedes(b, a, tol_)) return false;
                         auto key = [](const AnalysisPair& x) {
                             std::vector<int> sizes, dims;
                             for (const auto& c : x.partition.cells())
                                 sizes.push_back(static_cast<int>(c.size()));
                             for (const auto& pt : x.decomposition.parts())
                                 dims.push_back(pt.space.dim());
                             std::sort(sizes.begin(), sizes.end());
                             std::sort(dims.begin(), dims.end());
                             return std::tuple(x.partition.cell_count(), sizes, dims);
                         };
                         return key(a) < key(b);
                     });
    return rep_;
}

bool pair_precedes(const AnalysisPair& a, const AnalysisPair& b, const Tolerances& tol) {
    if (b.partition.strictly_refines(a.partition)) return true;
    if (a.partition != b.partition) return false;
    // Every part of a must be a direct sum of parts of b.
    for (const auto& pa : a.decomposition.parts()) {
        int dims = 0;
        for (const auto& pb : b.decomposition.parts())
            if (pa.space.contains(pb.space, 10 * tol.eps_vec)) dims += pb.space.dim();
        if (dims != pa.space.dim()) return false;
    }
    return a.decomposition.part_count() <= b.decomposition.part_count();
}

AnalysisReport run_algorithm4(const Graph& g, int K, const Tolerances& tol) {
    Algorithm4Driver driver(g, K, tol);
    while (!driver.run()) {
        int cell = driver.pending_cell();
        driver.individualize(driver.partition().cell(cell).front());
    }
    return driver.finish();
}

} // namespace specsym
