#include "specsym/blocks.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "specsym/oracle.hpp"

namespace specsym {

namespace {

int find_root(std::vector<int>& root, int x) {
    while (root[x] != x) x = root[x] = root[root[x]];
    return x;
}

std::vector<int> sorted_union(const std::vector<std::vector<int>>& sets,
                              const std::vector<int>& which) {
    std::vector<int> out;
    for (int i : which) out.insert(out.end(), sets[i].begin(), sets[i].end());
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

BipartiteOrbitGraph bipartite_graph(const Partition& pa, const Partition& pb) {
    BipartiteOrbitGraph bog;
    bog.left = pa;
    bog.right = pb;
    int l = pa.cell_count(), r = pb.cell_count();
    std::vector<int> root(l + r);
    std::iota(root.begin(), root.end(), 0);
    for (int i = 0; i < l; ++i)
        for (int j = 0; j < r; ++j) {
            const auto& a = pa.cell(i);
            const auto& b = pb.cell(j);
            bool hit = false;
            for (size_t x = 0, y = 0; x < a.size() && y < b.size();) {
                if (a[x] == b[y]) {
                    hit = true;
                    break;
                }
                if (a[x] < b[y]) ++x;
                else ++y;
            }
            if (hit) {
                bog.edges.emplace_back(i, j);
                int ra = find_root(root, i), rb = find_root(root, l + j);
                if (ra != rb) root[ra] = rb;
            }
        }
    std::map<int, int> comp_id;
    bog.left_component.resize(l);
    bog.right_component.resize(r);
    for (int i = 0; i < l + r; ++i) {
        int rt = find_root(root, i);
        auto [it, fresh] = comp_id.emplace(rt, static_cast<int>(comp_id.size()));
        if (i < l) bog.left_component[i] = it->second;
        else bog.right_component[i - l] = it->second;
    }
    bog.component_count = static_cast<int>(comp_id.size());
    return bog;
}

std::vector<int> component_block(const BipartiteOrbitGraph& bog, int x,
                                 const std::vector<int>& orbit) {
    int comp = bog.left_component[bog.left.cell_of(x)];
    std::vector<int> verts;
    for (int i = 0; i < bog.left.cell_count(); ++i)
        if (bog.left_component[i] == comp)
            verts.insert(verts.end(), bog.left.cell(i).begin(), bog.left.cell(i).end());
    std::sort(verts.begin(), verts.end());
    std::vector<int> out;
    std::set_intersection(verts.begin(), verts.end(), orbit.begin(), orbit.end(),
                          std::back_inserter(out));
    return out;
}

std::optional<BlockSystem> tilde_partition(const std::vector<int>& orbit,
                                           const std::map<int, Partition>& stab_parts) {
    std::map<std::vector<std::vector<int>>, std::vector<int>> classes;
    for (int v : orbit) classes[stab_parts.at(v).cells()].push_back(v);
    if (classes.size() <= 1 || classes.size() == orbit.size()) return std::nullopt;
    BlockSystem sys;
    sys.orbit = orbit;
    for (auto& [k, members] : classes) sys.blocks.push_back(members);
    std::sort(sys.blocks.begin(), sys.blocks.end());
    size_t sz = sys.blocks.front().size();
    for (const auto& b : sys.blocks)
        if (b.size() != sz) throw CertificateError("tilde classes have unequal sizes");
    return sys;
}

namespace {

/// Restriction of a partition to the cells meeting the given sorted set.
std::vector<std::vector<int>> cells_within(const Partition& p, const std::vector<int>& domain) {
    std::vector<std::vector<int>> out;
    for (const auto& c : p.cells()) {
        std::vector<int> in;
        std::set_intersection(c.begin(), c.end(), domain.begin(), domain.end(),
                              std::back_inserter(in));
        if (!in.empty()) {
            if (in.size() != c.size())
                throw CertificateError("stabilizer orbit straddles the group orbit");
            out.push_back(std::move(in));
        }
    }
    return out;
}

bool is_prime(size_t n) {
    if (n < 2) return false;
    for (size_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

/// One level of the induced action: points are the blocks of the current
/// system; all permutations are induced on demand from ground certificates.
struct PointAction {
    std::vector<std::vector<int>> point_sets; // sorted vertex sets, partition of the orbit
    int base = -1;                            // point containing the adequate base
    std::vector<Partition> stab_orbits;       // on points, per point
    std::vector<Permutation> point_adequate;  // induced, base -> p
    std::vector<Permutation> all_induced;     // induced generators of the full action
};

Permutation induce(const Permutation& g, const std::vector<std::vector<int>>& point_sets,
                   const std::map<std::vector<int>, int>& index) {
    std::vector<int> img(point_sets.size());
    for (size_t i = 0; i < point_sets.size(); ++i) {
        auto it = index.find(g.apply_set(point_sets[i]));
        if (it == index.end()) throw CertificateError("certificate does not preserve the system");
        img[i] = it->second;
    }
    return Permutation(std::move(img));
}

PointAction make_action(std::vector<std::vector<int>> point_sets, int base_vertex,
                        const AdequateSet& adequate, const std::vector<Permutation>& stab_gens) {
    PointAction act;
    std::sort(point_sets.begin(), point_sets.end());
    act.point_sets = std::move(point_sets);
    const int m = static_cast<int>(act.point_sets.size());
    std::map<std::vector<int>, int> index;
    for (int i = 0; i < m; ++i) index.emplace(act.point_sets[i], i);
    for (int i = 0; i < m; ++i)
        if (std::binary_search(act.point_sets[i].begin(), act.point_sets[i].end(), base_vertex))
            act.base = i;
    if (act.base < 0) throw CertificateError("base vertex not covered by the system");

    for (const auto& g : stab_gens) act.all_induced.push_back(induce(g, act.point_sets, index));
    act.point_adequate.resize(m, Permutation::identity(m));
    for (int p = 0; p < m; ++p) {
        const Permutation& ground = adequate.to(act.point_sets[p].front());
        Permutation ind = induce(ground, act.point_sets, index);
        if (ind(act.base) != p) throw CertificateError("adequate carrier misses its point");
        act.all_induced.push_back(ind);
        act.point_adequate[p] = std::move(ind);
    }

    // Stabilizer of the base point: gens(G_t) plus every carrier landing
    // inside the base block; orbits of that subgroup, then conjugates.
    std::vector<Permutation> base_stab;
    for (const auto& g : stab_gens) base_stab.push_back(induce(g, act.point_sets, index));
    for (int x : act.point_sets[act.base])
        base_stab.push_back(induce(adequate.to(x), act.point_sets, index));
    Partition base_orbits = orbit_partition_of(base_stab, m);
    act.stab_orbits.reserve(m);
    for (int p = 0; p < m; ++p) {
        std::vector<std::vector<int>> cells;
        for (const auto& c : base_orbits.cells())
            cells.push_back(act.point_adequate[p].apply_set(c));
        act.stab_orbits.push_back(Partition(m, std::move(cells)));
    }
    return act;
}

/// Verified blockness of a point subset: its carrier images tile the domain
/// and every generator of the action preserves the tiling.
bool verify_point_block(const PointAction& act, const std::vector<int>& block,
                        std::vector<std::vector<int>>* system_out = nullptr) {
    const int m = static_cast<int>(act.point_sets.size());
    std::set<std::vector<int>> sys;
    for (int p = 0; p < m; ++p) sys.insert(act.point_adequate[p].apply_set(block));
    if (sys.size() * block.size() != static_cast<size_t>(m)) return false;
    std::vector<char> covered(m, 0);
    for (const auto& b : sys) {
        if (b.size() != block.size()) return false;
        for (int p : b) {
            if (covered[p]) return false;
            covered[p] = 1;
        }
    }
    for (const auto& g : act.all_induced)
        for (const auto& b : sys)
            if (!sys.count(g.apply_set(b))) return false;
    if (system_out) system_out->assign(sys.begin(), sys.end());
    return true;
}

std::vector<int> cycle_of(const Permutation& s, int start, int step_power) {
    // Orbit of `start` under <s^step_power>.
    Permutation step = s;
    for (int k = 1; k < step_power; ++k) step = step * s;
    std::vector<int> out{start};
    int cur = step(start);
    while (cur != start) {
        out.push_back(cur);
        cur = step(cur);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::vector<int>> minimal_point_blocks(const PointAction& act) {
    const int m = static_cast<int>(act.point_sets.size());
    std::set<std::vector<int>> candidates;

    std::vector<int> all(m);
    std::iota(all.begin(), all.end(), 0);

    for (int q = 0; q < m; ++q) {
        if (q == act.base) continue;
        if (act.stab_orbits[q] == act.stab_orbits[act.base]) continue;
        auto bog = bipartite_graph(act.stab_orbits[act.base], act.stab_orbits[q]);
        auto blk = component_block(bog, act.base, all);
        if (blk.size() > 1 && blk.size() < static_cast<size_t>(m)) candidates.insert(blk);
    }
    // Tilde class of the base: prime cycles of adequate carriers.
    for (int q = 0; q < m; ++q) {
        if (q == act.base || act.stab_orbits[q] != act.stab_orbits[act.base]) continue;
        const Permutation& s = act.point_adequate[q];
        std::vector<int> full = cycle_of(s, act.base, 1);
        size_t len = full.size();
        for (size_t p = 2; p <= len; ++p) {
            if (!is_prime(p) || len % p != 0) continue;
            auto sub = cycle_of(s, act.base, static_cast<int>(len / p));
            if (sub.size() == p && p < static_cast<size_t>(m)) candidates.insert(sub);
        }
    }

    std::vector<std::vector<int>> verified;
    for (const auto& c : candidates)
        if (verify_point_block(act, c)) verified.push_back(c);

    // Inclusion-minimal only.
    std::vector<std::vector<int>> out;
    for (const auto& c : verified) {
        bool minimal = true;
        for (const auto& d : verified)
            if (d != c && std::includes(c.begin(), c.end(), d.begin(), d.end())) minimal = false;
        if (minimal) out.push_back(c);
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    return out;
}

Primitivity primitivity_of(const PointAction& act) {
    const int m = static_cast<int>(act.point_sets.size());
    std::vector<int> all(m);
    std::iota(all.begin(), all.end(), 0);
    bool all_connected = true, all_matchings = true;
    for (int q = 0; q < m; ++q) {
        if (q == act.base) continue;
        auto bog = bipartite_graph(act.stab_orbits[act.base], act.stab_orbits[q]);
        if (static_cast<int>(component_block(bog, act.base, all).size()) != m)
            all_connected = false;
        std::vector<int> ldeg(bog.left.cell_count(), 0), rdeg(bog.right.cell_count(), 0);
        for (auto [i, j] : bog.edges) {
            ++ldeg[i];
            ++rdeg[j];
        }
        for (int d : ldeg)
            if (d != 1) all_matchings = false;
        for (int d : rdeg)
            if (d != 1) all_matchings = false;
    }
    if (m == 1 || all_connected) return Primitivity::CaseConnected;
    if (all_matchings && is_prime(static_cast<size_t>(m))) return Primitivity::CaseCyclicPrime;
    return Primitivity::Imprimitive;
}

std::vector<std::vector<int>> singleton_points(const std::vector<int>& orbit) {
    std::vector<std::vector<int>> out;
    for (int v : orbit) out.push_back({v});
    return out;
}

} // namespace

Primitivity is_primitive(const std::vector<int>& orbit,
                         const std::map<int, Partition>& stab_parts,
                         const AdequateSet& adequate) {
    const int t = adequate.base;
    bool all_connected = true, all_matchings = true;
    for (int x : orbit) {
        if (x == t) continue;
        // Restrict both partitions to the orbit; stabilizer orbits never
        // straddle group orbits.
        auto ca = cells_within(stab_parts.at(t), orbit);
        auto cb = cells_within(stab_parts.at(x), orbit);
        // Re-index the orbit as 0..|T|-1 for the partition type.
        std::map<int, int> ix;
        for (size_t i = 0; i < orbit.size(); ++i) ix[orbit[i]] = static_cast<int>(i);
        auto reindex = [&](std::vector<std::vector<int>> cells) {
            for (auto& c : cells)
                for (auto& v : c) v = ix.at(v);
            return cells;
        };
        Partition pa(static_cast<int>(orbit.size()), reindex(ca));
        Partition pb(static_cast<int>(orbit.size()), reindex(cb));
        auto bog = bipartite_graph(pa, pb);
        std::vector<int> all(orbit.size());
        std::iota(all.begin(), all.end(), 0);
        if (component_block(bog, ix.at(t), all).size() != orbit.size()) all_connected = false;
        std::vector<int> ldeg(bog.left.cell_count(), 0), rdeg(bog.right.cell_count(), 0);
        for (auto [i, j] : bog.edges) {
            ++ldeg[i];
            ++rdeg[j];
        }
        for (int d : ldeg)
            if (d != 1) all_matchings = false;
        for (int d : rdeg)
            if (d != 1) all_matchings = false;
    }
    if (orbit.size() == 1 || all_connected) return Primitivity::CaseConnected;
    if (all_matchings && is_prime(orbit.size())) return Primitivity::CaseCyclicPrime;
    return Primitivity::Imprimitive;
}

BlockSystem minimal_block(const std::vector<int>& orbit,
                          const std::map<int, Partition>& stab_parts, const AdequateSet& adequate,
                          const std::vector<Permutation>& stab_gens) {
    (void)stab_parts;
    PointAction act = make_action(singleton_points(orbit), adequate.base, adequate, stab_gens);
    auto mbs = minimal_point_blocks(act);
    if (mbs.empty()) throw CertificateError("no minimal block found on an imprimitive action");
    std::vector<std::vector<int>> system;
    if (!verify_point_block(act, mbs.front(), &system))
        throw CertificateError("minimal block failed verification");
    BlockSystem sys;
    sys.orbit = orbit;
    for (const auto& b : system) {
        std::vector<int> verts;
        for (int p : b) verts.push_back(act.point_sets[p].front());
        std::sort(verts.begin(), verts.end());
        sys.blocks.push_back(std::move(verts));
    }
    std::sort(sys.blocks.begin(), sys.blocks.end());
    return sys;
}

BlockFamily block_family(const Graph& g, const std::vector<int>& orbit,
                         const std::map<int, Partition>& stab_parts, const AdequateSet& adequate,
                         const std::vector<Permutation>& stab_gens, const Tolerances& tol) {
    (void)g;
    (void)stab_parts;
    (void)tol;
    BlockFamily fam;
    std::vector<std::vector<int>> points = singleton_points(orbit);
    while (true) {
        PointAction act = make_action(points, adequate.base, adequate, stab_gens);
        Primitivity prim = primitivity_of(act);
        fam.level_verdicts.push_back(prim);
        if (prim != Primitivity::Imprimitive) break;
        auto mbs = minimal_point_blocks(act);
        if (mbs.empty()) throw CertificateError("imprimitive level without a minimal block");
        std::vector<std::vector<int>> system;
        if (!verify_point_block(act, mbs.front(), &system))
            throw CertificateError("level block failed verification");
        fam.chain.push_back(sorted_union(act.point_sets, mbs.front()));
        std::vector<std::vector<int>> next;
        for (const auto& b : system) next.push_back(sorted_union(act.point_sets, b));
        points = std::move(next);
    }
    return fam;
}

std::vector<BlockSystem> all_block_systems_on_orbit(const std::vector<int>& orbit,
                                                    const std::map<int, Partition>& stab_parts,
                                                    const AdequateSet& adequate,
                                                    const std::vector<Permutation>& stab_gens) {
    (void)stab_parts;
    std::set<std::vector<int>> seen_blocks;
    std::set<std::vector<std::vector<int>>> seen_systems;
    std::vector<std::vector<std::vector<int>>> queue; // systems (as point sets)
    queue.push_back(singleton_points(orbit));
    while (!queue.empty()) {
        auto points = queue.back();
        queue.pop_back();
        PointAction act = make_action(points, adequate.base, adequate, stab_gens);
        for (const auto& mb : minimal_point_blocks(act)) {
            std::vector<int> block_verts = sorted_union(act.point_sets, mb);
            if (block_verts.size() == orbit.size()) continue;
            if (!seen_blocks.insert(block_verts).second) continue;
            std::vector<std::vector<int>> system;
            if (!verify_point_block(act, mb, &system))
                throw CertificateError("enumerated block failed verification");
            std::vector<std::vector<int>> vsystem;
            for (const auto& b : system) vsystem.push_back(sorted_union(act.point_sets, b));
            std::sort(vsystem.begin(), vsystem.end());
            seen_systems.insert(vsystem);
            queue.push_back(vsystem);
        }
    }
    std::vector<BlockSystem> out;
    for (const auto& s : seen_systems) out.push_back({orbit, s});
    return out;
}

void verify_block_system(const Graph& g, const BlockSystem& sys,
                         const std::vector<Permutation>& certificates, const Tolerances& tol) {
    if (sys.blocks.empty()) throw CertificateError("empty block system");
    size_t sz = sys.blocks.front().size();
    std::vector<char> covered(g.n(), 0);
    for (const auto& b : sys.blocks) {
        if (b.size() != sz) throw CertificateError("blocks have unequal sizes");
        for (int v : b) {
            if (covered[v]) throw CertificateError("blocks overlap");
            covered[v] = 1;
        }
    }
    std::set<std::vector<int>> blocks(sys.blocks.begin(), sys.blocks.end());
    for (const auto& s : certificates)
        for (const auto& b : sys.blocks)
            if (!blocks.count(s.apply_set(b)))
                throw CertificateError("certificate does not map blocks to blocks");
    std::vector<std::vector<int>> cells = sys.blocks;
    for (int v = 0; v < g.n(); ++v)
        if (!covered[v]) cells.push_back({v});
    if (!is_equitable(g, Partition(g.n(), cells), tol))
        throw CertificateError("block system is not an equitable partition");
}

BlockExtension extend_block_across_orbits(const Graph& g, const std::vector<Permutation>& gens,
                                          const std::vector<Subspace>& irs,
                                          const std::vector<int>& block,
                                          const std::vector<int>& s_orbit, const Tolerances& tol) {
    BlockExtension out;
    auto group = enumerate_group(gens, g.n());
    std::set<int> sset(s_orbit.begin(), s_orbit.end());

    // Stabilizer of S as a set, then B+ = its orbit through min(block).
    std::vector<const Permutation*> gs;
    for (const auto& s : group) {
        bool keeps = true;
        for (int v : s_orbit)
            if (!sset.count(s(v))) {
                keeps = false;
                break;
            }
        if (keeps) gs.push_back(&s);
    }
    int b = block.front();
    std::set<int> bplus;
    for (const auto* s : gs) bplus.insert((*s)(b));
    out.b_plus.assign(bplus.begin(), bplus.end());

    // Orbit of b under the full group, to detect the trivial case.
    std::set<int> full_orbit;
    for (const auto& s : group) full_orbit.insert(s(b));
    out.b_plus_trivial = bplus.size() == full_orbit.size();

    // Projection criterion over IRs relevant to the system of B+.
    const int n = g.n();
    Eigen::VectorXd rbp = Eigen::VectorXd::Zero(n);
    for (int v : out.b_plus) rbp(v) = 1.0;
    for (const auto& w : irs) {
        Eigen::MatrixXd p = w.projector();
        Eigen::VectorXd pr = p * rbp;
        if (pr.cwiseAbs().maxCoeff() <= tol.eps_vec) continue;
        // Relevance: every member of B+ projects identically.
        bool relevant = true;
        for (int v : out.b_plus)
            if ((p.col(v) * static_cast<double>(out.b_plus.size()) - pr).cwiseAbs().maxCoeff() >
                out.b_plus.size() * tol.eps_vec)
                relevant = false;
        if (!relevant) continue;
        // S-side test: equal projections, each parallel to pr.
        bool equal = true, parallel = true;
        Eigen::VectorXd first = p.col(s_orbit.front());
        double prn = pr.norm();
        for (int s : s_orbit) {
            Eigen::VectorXd ps = p.col(s);
            if ((ps - first).cwiseAbs().maxCoeff() > tol.eps_vec) equal = false;
            double c = ps.dot(pr) / (prn * prn);
            if (ps.norm() <= tol.eps_vec || (ps - c * pr).cwiseAbs().maxCoeff() > tol.eps_vec)
                parallel = false;
        }
        if (equal && parallel) {
            out.criterion_holds = true;
            break;
        }
    }
    out.s_is_block = out.criterion_holds && !out.b_plus_trivial;
    return out;
}

} // namespace specsym
