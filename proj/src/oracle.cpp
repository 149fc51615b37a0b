#include "specsym/oracle.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>

namespace specsym {

namespace {

void backtrack(const Graph& g, std::vector<int>& img, std::vector<char>& used, int i,
               std::vector<Permutation>& out) {
    const int n = g.n();
    if (i == n) {
        out.emplace_back(img);
        return;
    }
    for (int t = 0; t < n; ++t) {
        if (used[t]) continue;
        if (g.color(t) != g.color(i)) continue;
        if (g.weight(t, t) != g.weight(i, i)) continue;
        bool ok = true;
        for (int j = 0; j < i && ok; ++j)
            if (g.weight(img[j], t) != g.weight(j, i)) ok = false;
        if (!ok) continue;
        img[i] = t;
        used[t] = 1;
        backtrack(g, img, used, i + 1, out);
        used[t] = 0;
    }
}

/// Minimal block containing `seed`: grow while some image overlaps without
/// agreeing.
std::set<int> block_closure(const std::vector<Permutation>& auts, std::set<int> seed) {
    bool grew = true;
    while (grew) {
        grew = false;
        for (const auto& s : auts) {
            std::set<int> img;
            for (int v : seed) img.insert(s(v));
            bool overlaps = false, equal = true;
            for (int v : img) {
                if (seed.count(v)) overlaps = true;
                else equal = false;
            }
            if (overlaps && !equal) {
                size_t before = seed.size();
                seed.insert(img.begin(), img.end());
                if (seed.size() != before) grew = true;
            }
        }
    }
    return seed;
}

} // namespace

std::vector<Permutation> enumerate_automorphisms(const Graph& g, int cap, bool override_cap) {
    if (g.n() > cap && !override_cap)
        throw std::invalid_argument("oracle cap exceeded; pass override to enumerate anyway");
    std::vector<int> img(g.n(), -1);
    std::vector<char> used(g.n(), 0);
    std::vector<Permutation> out;
    backtrack(g, img, used, 0, out);
    return out;
}

Partition orbit_partition_of(const std::vector<Permutation>& perms, int n) {
    std::vector<int> root(n);
    for (int i = 0; i < n; ++i) root[i] = i;
    std::function<int(int)> find = [&](int x) {
        while (root[x] != x) x = root[x] = root[root[x]];
        return x;
    };
    for (const auto& p : perms)
        for (int v = 0; v < n; ++v) {
            int a = find(v), b = find(p(v));
            if (a != b) root[a] = b;
        }
    std::map<int, std::vector<int>> groups;
    for (int v = 0; v < n; ++v) groups[find(v)].push_back(v);
    std::vector<std::vector<int>> cells;
    for (auto& [k, c] : groups) cells.push_back(std::move(c));
    return Partition(n, std::move(cells));
}

std::vector<std::vector<std::vector<int>>> enumerate_block_systems(
    const Graph& g, const std::vector<Permutation>& auts, const std::vector<int>& orbit) {
    (void)g;
    const int t0 = orbit.front();
    // BFS over closures: every block containing t0 is reached by repeatedly
    // closing a found block together with one extra vertex.
    std::set<std::set<int>> found;
    std::vector<std::set<int>> frontier{{t0}};
    std::set<std::vector<std::vector<int>>> systems;
    while (!frontier.empty()) {
        std::set<int> base = frontier.back();
        frontier.pop_back();
        for (int x : orbit) {
            if (base.count(x)) continue;
            std::set<int> seed = base;
            seed.insert(x);
            std::set<int> block = block_closure(auts, std::move(seed));
            if (block.size() >= orbit.size() || found.count(block)) continue;
            found.insert(block);
            frontier.push_back(block);
            std::set<std::vector<int>> sys;
            for (const auto& s : auts) {
                std::vector<int> img;
                for (int v : block) img.push_back(s(v));
                std::sort(img.begin(), img.end());
                sys.insert(std::move(img));
            }
            systems.insert(std::vector<std::vector<int>>(sys.begin(), sys.end()));
        }
    }
    return std::vector<std::vector<std::vector<int>>>(systems.begin(), systems.end());
}

OracleResult oracle_analyze(const Graph& g, int cap, bool override_cap) {
    OracleResult r;
    r.automorphisms = enumerate_automorphisms(g, cap, override_cap);
    r.group_order = r.automorphisms.size();
    r.orbits = orbit_partition_of(r.automorphisms, g.n());
    for (int v = 0; v < g.n(); ++v) {
        std::vector<Permutation> stab;
        for (const auto& s : r.automorphisms)
            if (s(v) == v) stab.push_back(s);
        r.stabilizer_orbits.push_back(orbit_partition_of(stab, g.n()));
    }
    for (const auto& orbit : r.orbits.cells())
        r.block_systems.push_back(enumerate_block_systems(g, r.automorphisms, orbit));
    return r;
}

} // namespace specsym
