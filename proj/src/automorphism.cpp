#include "specsym/automorphism.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "specsym/blocks.hpp"

namespace specsym {

namespace {

bool weights_match(double a, double b, double eps) {
    if (a == b) return true;
    return std::abs(a - b) <= eps;
}

} // namespace

bool verify_automorphism(const Graph& g, const Permutation& s, const Tolerances& tol) {
    if (s.n() != g.n()) throw DimensionError("permutation length does not match vertex count");
    return verify_isomorphism(g, g, s, tol);
}

bool verify_isomorphism(const Graph& a, const Graph& b, const Permutation& phi,
                        const Tolerances& tol) {
    if (a.n() != b.n() || phi.n() != a.n()) return false;
    double eps = tol.eps_vec * std::max(1.0, std::max(a.max_abs_entry(), b.max_abs_entry()));
    const int n = a.n();
    for (int i = 0; i < n; ++i) {
        if (a.color(i) != b.color(phi(i))) return false;
        for (int j = i; j < n; ++j)
            if (!weights_match(a.weight(i, j), b.weight(phi(i), phi(j)), eps)) return false;
    }
    return true;
}

std::uint64_t group_order(const std::vector<Permutation>& gens, int n) {
    std::vector<Permutation> work;
    for (const auto& g : gens)
        if (!g.is_identity()) work.push_back(g);
    if (work.empty()) return 1;

    int base = -1;
    for (int v = 0; v < n && base < 0; ++v)
        for (const auto& g : work)
            if (g(v) != v) {
                base = v;
                break;
            }
    if (base < 0) return 1;

    // Orbit of `base` with a transversal, then Schreier generators of the
    // stabilizer.
    std::map<int, Permutation> transversal;
    transversal.emplace(base, Permutation::identity(n));
    std::vector<int> queue{base};
    for (size_t qi = 0; qi < queue.size(); ++qi) {
        int p = queue[qi];
        for (const auto& g : work) {
            int q = g(p);
            if (!transversal.count(q)) {
                transversal.emplace(q, g * transversal.at(p));
                queue.push_back(q);
            }
        }
    }
    std::set<std::vector<int>> stab_set;
    std::vector<Permutation> stab_gens;
    for (const auto& [p, u] : transversal)
        for (const auto& g : work) {
            Permutation s = transversal.at(g(p)).inverse() * g * u;
            if (s.is_identity()) continue;
            if (stab_set.insert(s.image()).second) stab_gens.push_back(s);
        }
    return static_cast<std::uint64_t>(transversal.size()) * group_order(stab_gens, n);
}

std::vector<Permutation> enumerate_group(const std::vector<Permutation>& gens, int n,
                                         std::size_t cap) {
    std::set<std::vector<int>> seen;
    std::vector<Permutation> elems{Permutation::identity(n)};
    seen.insert(elems.front().image());
    for (size_t i = 0; i < elems.size(); ++i) {
        for (const auto& g : gens) {
            Permutation next = g * elems[i];
            if (seen.insert(next.image()).second) {
                elems.push_back(std::move(next));
                if (elems.size() > cap)
                    throw CertificateError("group enumeration exceeded the cap");
            }
        }
    }
    return elems;
}

// ---------------------------------------------------------------------------
// Terminal-report matching (the reorganized-OPSB method).

namespace {

struct TerminalView {
    const Graph* original;          // graph with colors (for final verification)
    const Partition* partition;
    std::vector<Eigen::MatrixXd> projectors;
    std::vector<double> eigenvalues;
    std::vector<int> dims;
    std::vector<std::string> labels;
};

TerminalView make_view(const Graph& original, const Partition& p, const Decomposition& dec) {
    TerminalView v;
    v.original = &original;
    v.partition = &p;
    for (const auto& part : dec.parts()) {
        v.projectors.push_back(part.space.projector());
        v.eigenvalues.push_back(part.eigenvalue);
        v.dims.push_back(part.space.dim());
        v.labels.push_back(part.space.label());
    }
    return v;
}

bool views_aligned(const TerminalView& a, const TerminalView& b, double eig_eps) {
    if (a.dims != b.dims) return false;
    if (a.labels != b.labels) return false;
    for (size_t i = 0; i < a.eigenvalues.size(); ++i)
        if (std::abs(a.eigenvalues[i] - b.eigenvalues[i]) > 100 * eig_eps) return false;
    // Cell size profiles.
    std::vector<int> sa, sb;
    for (const auto& c : a.partition->cells()) sa.push_back(static_cast<int>(c.size()));
    for (const auto& c : b.partition->cells()) sb.push_back(static_cast<int>(c.size()));
    return sa == sb;
}

/// Backtracking vertex bijection preserving all per-part OPSB Gram entries,
/// verified exactly against the original graphs before acceptance.
class OpsbMatcher {
  public:
    OpsbMatcher(const TerminalView& a, const TerminalView& b, const Tolerances& tol)
        : a_(a), b_(b), eps_(tol.eps_vec), tol_(tol), n_(a.original->n()) {
        budget_ = 1000l * n_ * n_ * n_ + 100000l;
    }

    std::optional<Permutation> match() {
        const int n = n_;
        // Candidate sets from the per-part diagonal profile.
        candidates_.assign(n, {});
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y) {
                bool ok = true;
                for (size_t j = 0; j < a_.projectors.size() && ok; ++j)
                    if (std::abs(a_.projectors[j](x, x) - b_.projectors[j](y, y)) > eps_)
                        ok = false;
                if (ok) candidates_[x].push_back(y);
            }
        order_.resize(n);
        std::iota(order_.begin(), order_.end(), 0);
        std::stable_sort(order_.begin(), order_.end(), [&](int x, int y) {
            return candidates_[x].size() < candidates_[y].size();
        });
        img_.assign(n, -1);
        used_.assign(n, 0);
        std::optional<Permutation> result;
        extend(0, result);
        return result;
    }

  private:
    void extend(int pos, std::optional<Permutation>& result) {
        if (result || budget_ < 0) return;
        if (pos == n_) {
            Permutation phi(img_);
            if (verify_isomorphism(*a_.original, *b_.original, phi, tol_)) result = phi;
            return;
        }
        int x = order_[pos];
        for (int y : candidates_[x]) {
            if (used_[y]) continue;
            --budget_;
            if (budget_ < 0) return;
            bool ok = true;
            for (int p = 0; p < pos && ok; ++p) {
                int x2 = order_[p];
                for (size_t j = 0; j < a_.projectors.size() && ok; ++j)
                    if (std::abs(a_.projectors[j](x, x2) - b_.projectors[j](y, img_[x2])) > eps_)
                        ok = false;
            }
            if (!ok) continue;
            img_[x] = y;
            used_[y] = 1;
            extend(pos + 1, result);
            img_[x] = -1;
            used_[y] = 0;
            if (result) return;
        }
    }

    const TerminalView& a_;
    const TerminalView& b_;
    double eps_;
    Tolerances tol_;
    int n_;
    long budget_;
    std::vector<std::vector<int>> candidates_;
    std::vector<int> order_;
    std::vector<int> img_;
    std::vector<char> used_;
};

/// Synchronized Algorithm-4 pair with candidate trials for every internal
/// individualization of the left driver.
class SyncSearch {
  public:
    SyncSearch(const Graph& ga, const Graph& gb, int K, const Tolerances& tol)
        : ga_(ga), gb_(gb), k_(K), tol_(tol) {}

    std::optional<Permutation> search(std::string* stage = nullptr) {
        Algorithm4Driver da(ga_, k_, tol_);
        Algorithm4Driver db(gb_, k_, tol_);
        bool ta = da.run();
        bool tb = db.run();
        std::string local_stage;
        auto r = rec(da, ta, db, tb, local_stage);
        if (stage) *stage = local_stage;
        return r;
    }

  private:
    std::optional<Permutation> rec(Algorithm4Driver& da, bool ta, Algorithm4Driver& db, bool tb,
                                   std::string& stage) {
        if (ta != tb) {
            stage = "pair-set shape";
            return std::nullopt;
        }
        double eig_eps = tol_.eps_eig * std::max(1.0, da.analysis_graph().max_abs_entry());
        TerminalView va = make_view(ga_, da.partition(), da.decomposition());
        TerminalView vb = make_view(gb_, db.partition(), db.decomposition());
        if (!views_aligned(va, vb, eig_eps)) {
            stage = "partition/decomposition signature";
            return std::nullopt;
        }
        if (ta) {
            OpsbMatcher matcher(va, vb, tol_);
            auto phi = matcher.match();
            if (!phi) stage = "OPSB distribution";
            return phi;
        }
        // Both need an individualization: pick min of the pending cell on the
        // left, try signature-compatible candidates on the right.
        int cell = da.pending_cell();
        int x = da.partition().cell(cell).front();
        size_t want = da.partition().cell(cell).size();
        std::vector<int> cands;
        for (const auto& c : db.partition().cells()) {
            if (c.size() != want) continue;
            for (int y : c) {
                bool ok = true;
                for (size_t j = 0; j < va.projectors.size() && ok; ++j)
                    if (std::abs(va.projectors[j](x, x) - vb.projectors[j](y, y)) > tol_.eps_vec)
                        ok = false;
                if (ok) cands.push_back(y);
            }
        }
        Algorithm4Driver da2 = da;
        da2.individualize(x);
        bool ta2 = da2.run();
        for (int y : cands) {
            Algorithm4Driver db2 = db;
            db2.individualize(y);
            bool tb2 = db2.run();
            auto r = rec(da2, ta2, db2, tb2, stage);
            if (r) return r;
        }
        if (stage.empty()) stage = "individualization candidates exhausted";
        return std::nullopt;
    }

    const Graph& ga_;
    const Graph& gb_;
    int k_;
    Tolerances tol_;
};

Graph apply_fixed_chain(const Graph& g, const std::vector<int>& chain) {
    Graph out = g;
    for (int v : chain) out = out.with_fixed_vertex(v);
    return out;
}

} // namespace

IsoOutcome find_isomorphism(const Graph& a, const Graph& b, int K, const Tolerances& tol) {
    IsoOutcome out;
    if (a.n() != b.n()) {
        out.stage = "vertex count";
        return out;
    }
    {
        Eigen::VectorXd wa =
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(a.spectral_matrix(), Eigen::EigenvaluesOnly)
                .eigenvalues();
        Eigen::VectorXd wb =
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(b.spectral_matrix(), Eigen::EigenvaluesOnly)
                .eigenvalues();
        double eps = tol.eps_eig * std::max(1.0, std::max(a.max_abs_entry(), b.max_abs_entry()));
        if ((wa - wb).cwiseAbs().maxCoeff() > 100 * eps) {
            out.stage = "spectrum";
            return out;
        }
    }
    SyncSearch search(a, b, K, tol);
    std::string stage;
    auto phi = search.search(&stage);
    if (phi) {
        if (!verify_isomorphism(a, b, *phi, tol))
            throw CertificateError("matched map failed isomorphism verification");
        out.isomorphic = true;
        out.map = std::move(phi);
    } else {
        out.stage = stage;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Analyzer

Analyzer::Analyzer(Graph g, int K, Tolerances tol) : g_(std::move(g)), k_(K), tol_(tol) {}

const AnalysisReport& Analyzer::analysis(const std::vector<int>& fixed_chain) {
    auto it = analysis_cache_.find(fixed_chain);
    if (it != analysis_cache_.end()) return it->second;
    Graph colored = apply_fixed_chain(g_, fixed_chain);
    auto rep = run_algorithm4(colored, k_, tol_);
    return analysis_cache_.emplace(fixed_chain, std::move(rep)).first->second;
}

std::optional<Permutation> Analyzer::find_automorphism(int u, int v) {
    return find_automorphism_fixing({}, u, v);
}

std::optional<Permutation> Analyzer::find_automorphism_fixing(const std::vector<int>& fixed_chain,
                                                              int u, int v) {
    if (u == v) {
        // Still require the identity to be color-consistent.
        return Permutation::identity(g_.n());
    }
    Graph base = apply_fixed_chain(g_, fixed_chain);
    Graph ga = base.with_fixed_vertex(u);
    Graph gb = base.with_fixed_vertex(v);
    SyncSearch search(ga, gb, k_, tol_);
    auto phi = search.search();
    if (phi) {
        if (!verify_isomorphism(ga, gb, *phi, tol_) || (*phi)(u) != v)
            throw CertificateError("automorphism candidate failed verification");
        if (!verify_automorphism(g_, *phi, tol_))
            throw CertificateError("automorphism candidate does not preserve the base graph");
    }
    return phi;
}

const Analyzer::CertifiedOrbits& Analyzer::certified_orbits(const std::vector<int>& fixed_chain) {
    auto it = orbit_cache_.find(fixed_chain);
    if (it != orbit_cache_.end()) return it->second;

    Graph colored = apply_fixed_chain(g_, fixed_chain);
    Decomposition dec = eigendecompose(colored, tol_);
    Graph ga = colored.colored() ? Graph(colored.spectral_matrix()) : colored;
    Partition candidate = symmetry_partition(ga, dec, tol_);

    const int n = g_.n();
    std::vector<int> root(n);
    std::iota(root.begin(), root.end(), 0);
    auto find = [&](int x) {
        while (root[x] != x) x = root[x] = root[root[x]];
        return x;
    };
    CertifiedOrbits out;
    // carrier[v]: permutation taking the orbit minimum to v.
    for (const auto& cell : candidate.cells()) {
        std::vector<int> reps; // representatives of certified classes inside this cell
        for (int v : cell) {
            bool joined = false;
            for (int r : reps) {
                auto phi = find_automorphism_fixing(fixed_chain, r, v);
                if (phi) {
                    // carrier(min->r) then r->v
                    int rm = find(r);
                    out.carrier.emplace(v, *phi * out.carrier.at(r));
                    root[find(v)] = rm;
                    joined = true;
                    break;
                }
            }
            if (!joined) {
                reps.push_back(v);
                out.carrier.emplace(v, Permutation::identity(n));
            }
        }
    }
    std::map<int, std::vector<int>> groups;
    for (int v = 0; v < n; ++v) groups[find(v)].push_back(v);
    std::vector<std::vector<int>> cells;
    for (auto& [k, c] : groups) cells.push_back(std::move(c));
    out.partition = Partition(n, std::move(cells));

    // Re-anchor carriers at each orbit's minimum and verify them.
    for (const auto& cell : out.partition.cells()) {
        int m = cell.front();
        // carrier currently maps class representative (first certified rep) to v;
        // by construction the representative is the cell minimum because cells
        // iterate ascending.
        for (int v : cell) {
            const Permutation& s = out.carrier.at(v);
            if (s(m) != v || !verify_automorphism(colored, s, tol_))
                throw CertificateError("orbit carrier failed verification");
        }
    }
    return orbit_cache_.emplace(fixed_chain, std::move(out)).first->second;
}

const Partition& Analyzer::orbits() { return certified_orbits({}).partition; }

StabilizerData Analyzer::stabilizer_orbits(int v) {
    const auto& co = certified_orbits({v});
    StabilizerData out;
    out.vertex = v;
    out.orbits = co.partition;
    for (const auto& [x, s] : co.carrier)
        if (!s.is_identity()) out.certificates.push_back(s);
    if (!is_equitable(g_, out.orbits, tol_))
        throw CertificateError("stabilizer orbit partition is not equitable");
    return out;
}

AdequateSet Analyzer::adequate_set(int t, const std::vector<int>& orbit) {
    const auto& co = certified_orbits({});
    AdequateSet out;
    out.base = t;
    out.orbit = orbit;
    int m = orbit.front();
    for (int x : orbit)
        if (co.partition.cell_of(x) != co.partition.cell_of(t))
            throw OrbitUncertifiedError("vertex " + std::to_string(x) +
                                        " is not in the certified orbit of the base");
    const Permutation& to_t = co.carrier.at(t); // m -> t
    Permutation t_to_m = to_t.inverse();
    for (int x : orbit) {
        Permutation s = co.carrier.at(x) * t_to_m; // t -> m -> x
        if (s(t) != x || !verify_automorphism(g_, s, tol_))
            throw CertificateError("adequate-set element failed verification");
        out.carrier.emplace(x, std::move(s));
    }
    (void)m;
    return out;
}

std::vector<Permutation> Analyzer::generating_set_fixing(const std::vector<int>& fixed_chain) {
    const auto& co = certified_orbits(fixed_chain);

    // First nontrivial orbit in canonical order; recursion handles the rest.
    const std::vector<int>* orbit = nullptr;
    for (const auto& c : co.partition.cells())
        if (c.size() > 1) {
            orbit = &c;
            break;
        }
    if (!orbit) return {};

    int t = orbit->front();
    Graph colored = apply_fixed_chain(g_, fixed_chain);

    // Adequate set on this orbit for the current (colored) group.
    AdequateSet adequate;
    adequate.base = t;
    adequate.orbit = *orbit;
    for (int x : *orbit) {
        Permutation s = co.carrier.at(x); // orbit minimum == t by canonical order
        if (s(t) != x) throw CertificateError("carrier does not anchor at the orbit minimum");
        adequate.carrier.emplace(x, s);
    }

    std::vector<int> deeper = fixed_chain;
    deeper.push_back(t);
    std::vector<Permutation> stab_gens = generating_set_fixing(deeper);

    std::vector<Permutation> gens = stab_gens;
    if (stab_gens.empty()) {
        // Trivial point stabilizer: the adequate set is the group.
        for (int x : *orbit)
            if (x != t) gens.push_back(adequate.to(x));
        return gens;
    }

    // Stabilizer orbit partitions over the orbit, by conjugation from t.
    const auto& stab_t = certified_orbits(deeper);
    std::map<int, Partition> stab_parts;
    for (int x : *orbit) {
        const Permutation& s = adequate.to(x);
        std::vector<std::vector<int>> cells;
        for (const auto& c : stab_t.partition.cells()) cells.push_back(s.apply_set(c));
        stab_parts.emplace(x, Partition(g_.n(), std::move(cells)));
    }

    BlockFamily family =
        block_family(colored, *orbit, stab_parts, adequate, stab_gens, tol_);

    // One mover per level of {t} = L_0 < B_1 < ... < B_l < T.
    std::vector<std::vector<int>> levels;
    levels.push_back({t});
    for (const auto& b : family.chain) levels.push_back(b);
    levels.push_back(*orbit);
    for (size_t i = 0; i + 1 < levels.size(); ++i) {
        const auto& lo = levels[i];
        const auto& hi = levels[i + 1];
        int x = -1;
        for (int cand : hi)
            if (std::find(lo.begin(), lo.end(), cand) == lo.end()) {
                x = cand;
                break;
            }
        if (x < 0) throw CertificateError("degenerate block family level");
        gens.push_back(adequate.to(x));
    }
    return gens;
}

const std::vector<Permutation>& Analyzer::generating_set() {
    if (!generators_) {
        auto gens = generating_set_fixing({});
        for (const auto& s : gens)
            if (!verify_automorphism(g_, s, tol_))
                throw CertificateError("generator failed verification");
        generators_ = std::move(gens);
    }
    return *generators_;
}

} // namespace specsym
