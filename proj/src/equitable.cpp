#include "specsym/equitable.hpp"

#include <algorithm>
#include <cmath>

namespace specsym {

namespace {

/// Refine cells by gap-clustering one scalar per vertex: within each cell,
/// sort members by value and cut wherever the gap exceeds eps.
std::vector<std::vector<int>> refine_by_scalar(const std::vector<std::vector<int>>& cells,
                                               const std::vector<double>& value, double eps) {
    std::vector<std::vector<int>> out;
    for (const auto& c : cells) {
        std::vector<int> order(c);
        std::sort(order.begin(), order.end(),
                  [&](int a, int b) { return value[a] < value[b]; });
        std::vector<int> cur;
        for (size_t k = 0; k < order.size(); ++k) {
            if (!cur.empty() && value[order[k]] - value[cur.back()] > eps) {
                out.push_back(cur);
                cur.clear();
            }
            cur.push_back(order[k]);
        }
        if (!cur.empty()) out.push_back(cur);
    }
    return out;
}

bool profiles_close(const std::vector<double>& a, const std::vector<double>& b, double eps) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i)
        if (std::abs(a[i] - b[i]) > eps) return false;
    return true;
}

} // namespace

Partition coarsest_equitable(const Graph& g, const Partition& seed, const Tolerances& tol) {
    const int n = g.n();
    double eps = tol.eps_vec * std::max(1.0, g.max_abs_entry());
    std::vector<std::vector<int>> cells = seed.cells();
    for (int round = 0; round <= n; ++round) {
        size_t before = cells.size();
        // One full pass: for each current cell as target, refine by weight-sums.
        size_t targets = cells.size();
        for (size_t j = 0; j < targets && j < cells.size(); ++j) {
            std::vector<double> val(n, 0.0);
            for (int v = 0; v < n; ++v)
                for (int u : cells[j]) val[v] += g.weight(v, u);
            cells = refine_by_scalar(cells, val, eps);
            if (cells.size() != targets) break; // cell indices shifted; restart pass
        }
        if (cells.size() == before) {
            // Verify stability against the final cell set.
            bool stable = true;
            for (size_t j = 0; j < cells.size() && stable; ++j) {
                std::vector<double> val(n, 0.0);
                for (int v = 0; v < n; ++v)
                    for (int u : cells[j]) val[v] += g.weight(v, u);
                if (refine_by_scalar(cells, val, eps).size() != cells.size()) stable = false;
            }
            if (stable) break;
        }
    }
    return Partition(n, std::move(cells));
}

DecProjections::DecProjections(const Decomposition& dec) {
    ps_.reserve(dec.part_count());
    for (const auto& p : dec.parts()) ps_.push_back(p.space.projector());
}

Partition projection_partition(const Graph& g, const DecProjections& ps, int v,
                               const Tolerances& tol) {
    const int n = g.n();
    std::vector<std::vector<int>> cells = Partition::single_cell(n).cells();
    for (int k = 0; k < ps.count(); ++k) {
        const Eigen::MatrixXd& p = ps[k];
        std::vector<double> norm(n), ip(n);
        for (int x = 0; x < n; ++x) {
            norm[x] = std::sqrt(std::max(0.0, p(x, x)));
            ip[x] = p(x, v);
        }
        cells = refine_by_scalar(cells, norm, tol.eps_vec);
        cells = refine_by_scalar(cells, ip, tol.eps_vec);
    }
    return coarsest_equitable(g, Partition(n, std::move(cells)), tol);
}

Partition projection_partition(const Graph& g, const Decomposition& dec, int v,
                               const Tolerances& tol) {
    return projection_partition(g, DecProjections(dec), v, tol);
}

namespace {

struct CellSignature {
    int size;
    // per part: norm of Proj(R_C), sorted in-cell profile, sorted full profile
    std::vector<double> norms;
    std::vector<std::vector<double>> cell_profiles;
    std::vector<std::vector<double>> full_profiles;
};

CellSignature cell_signature(const DecProjections& ps, const std::vector<int>& cell, int n) {
    CellSignature s;
    s.size = static_cast<int>(cell.size());
    for (int k = 0; k < ps.count(); ++k) {
        Eigen::VectorXd rc = Eigen::VectorXd::Zero(n);
        for (int x : cell) rc(x) = 1.0;
        Eigen::VectorXd pr = ps[k] * rc;
        s.norms.push_back(pr.norm());
        std::vector<double> in_cell, full;
        for (int x : cell) in_cell.push_back(pr(x));
        for (int x = 0; x < n; ++x) full.push_back(pr(x));
        std::sort(in_cell.begin(), in_cell.end());
        std::sort(full.begin(), full.end());
        s.cell_profiles.push_back(std::move(in_cell));
        s.full_profiles.push_back(std::move(full));
    }
    return s;
}

bool signatures_match(const CellSignature& a, const CellSignature& b, double eps) {
    if (a.size != b.size) return false;
    for (size_t k = 0; k < a.norms.size(); ++k) {
        if (std::abs(a.norms[k] - b.norms[k]) > eps) return false;
        if (!profiles_close(a.cell_profiles[k], b.cell_profiles[k], eps)) return false;
        if (!profiles_close(a.full_profiles[k], b.full_profiles[k], eps)) return false;
    }
    return true;
}

void enumerate_bijections(const std::vector<std::vector<int>>& candidates, size_t i,
                          std::vector<int>& used, std::vector<int>& cur,
                          std::vector<std::vector<int>>& out, size_t cap) {
    if (out.size() >= cap) return;
    if (i == candidates.size()) {
        out.push_back(cur);
        return;
    }
    for (int j : candidates[i]) {
        if (used[j]) continue;
        used[j] = 1;
        cur.push_back(j);
        enumerate_bijections(candidates, i + 1, used, cur, out, cap);
        cur.pop_back();
        used[j] = 0;
    }
}

std::vector<std::vector<int>> type_bijections(const DecProjections& ps, const Partition& pA,
                                              const Partition& pB, const Tolerances& tol,
                                              size_t cap) {
    std::vector<std::vector<int>> none;
    if (pA.n() != pB.n() || pA.cell_count() != pB.cell_count()) return none;
    const int n = pA.n();
    std::vector<CellSignature> sa, sb;
    for (const auto& c : pA.cells()) sa.push_back(cell_signature(ps, c, n));
    for (const auto& c : pB.cells()) sb.push_back(cell_signature(ps, c, n));
    std::vector<std::vector<int>> candidates(pA.cell_count());
    for (int i = 0; i < pA.cell_count(); ++i) {
        for (int j = 0; j < pB.cell_count(); ++j)
            if (signatures_match(sa[i], sb[j], tol.eps_vec)) candidates[i].push_back(j);
        if (candidates[i].empty()) return none;
    }
    std::vector<int> used(pB.cell_count(), 0), cur;
    std::vector<std::vector<int>> out;
    enumerate_bijections(candidates, 0, used, cur, out, cap);
    return out;
}

} // namespace

CellTypeMatch cells_in_same_type(const Decomposition& dec, const Partition& pA,
                                 const Partition& pB, const Tolerances& tol) {
    DecProjections ps(dec);
    auto all = type_bijections(ps, pA, pB, tol, 1);
    if (all.empty()) return {};
    return {true, all.front()};
}

std::vector<std::vector<int>> all_cell_type_bijections(const Decomposition& dec,
                                                       const Partition& pA, const Partition& pB,
                                                       const Tolerances& tol) {
    DecProjections ps(dec);
    return type_bijections(ps, pA, pB, tol, 10000);
}

bool quotients_isomorphic(const Graph& g, const Partition& pA, const Partition& pB,
                          const std::vector<int>& cell_map, const Tolerances& tol) {
    double eps = tol.eps_vec * std::max(1.0, g.max_abs_entry());
    QuotientGraph qa, qb;
    try {
        qa = quotient(g, pA, tol);
        qb = quotient(g, pB, tol);
    } catch (const NotEquitableError&) {
        return false;
    }
    int t = qa.partition.cell_count();
    for (int i = 0; i < t; ++i) {
        if (qa.cell_sizes[i] != qb.cell_sizes[cell_map[i]]) return false;
        for (int j = 0; j < t; ++j)
            if (std::abs(qa.adjacency(i, j) - qb.adjacency(cell_map[i], cell_map[j])) > eps)
                return false;
    }
    return true;
}

Partition symmetry_partition(const Graph& g, const Decomposition& dec, const Tolerances& tol) {
    const int n = g.n();
    DecProjections ps(dec);
    std::vector<Partition> pp;
    pp.reserve(n);
    for (int v = 0; v < n; ++v) pp.push_back(projection_partition(g, ps, v, tol));

    std::vector<int> klass(n, -1);
    std::vector<int> reps;
    for (int v = 0; v < n; ++v) {
        for (size_t r = 0; r < reps.size(); ++r) {
            int u = reps[r];
            auto bijections = type_bijections(ps, pp[u], pp[v], tol, 64);
            bool ok = false;
            for (const auto& psi : bijections)
                if (quotients_isomorphic(g, pp[u], pp[v], psi, tol)) {
                    ok = true;
                    break;
                }
            if (ok) {
                klass[v] = static_cast<int>(r);
                break;
            }
        }
        if (klass[v] < 0) {
            klass[v] = static_cast<int>(reps.size());
            reps.push_back(v);
        }
    }
    std::vector<std::vector<int>> cells(reps.size());
    for (int v = 0; v < n; ++v) cells[klass[v]].push_back(v);
    return coarsest_equitable(g, Partition(n, std::move(cells)), tol);
}

} // namespace specsym
