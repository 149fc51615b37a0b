#include "specsym/partition.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace specsym {

Partition::Partition(int n, std::vector<std::vector<int>> cells) : n_(n), cells_(std::move(cells)) {
    for (auto& c : cells_) std::sort(c.begin(), c.end());
    std::sort(cells_.begin(), cells_.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a.front() < b.front();
    });
    cell_of_.assign(n_, -1);
    int covered = 0;
    for (int i = 0; i < static_cast<int>(cells_.size()); ++i) {
        for (int v : cells_[i]) {
            if (v < 0 || v >= n_ || cell_of_[v] != -1)
                throw std::invalid_argument("cells do not partition the vertex set");
            cell_of_[v] = i;
            ++covered;
        }
    }
    if (covered != n_) throw std::invalid_argument("cells do not cover the vertex set");
}

Partition Partition::single_cell(int n) {
    std::vector<int> all(n);
    std::iota(all.begin(), all.end(), 0);
    return Partition(n, {all});
}

Partition Partition::discrete(int n) {
    std::vector<std::vector<int>> cells;
    cells.reserve(n);
    for (int v = 0; v < n; ++v) cells.push_back({v});
    return Partition(n, std::move(cells));
}

bool Partition::refines(const Partition& coarser) const {
    if (n_ != coarser.n_) return false;
    for (const auto& c : cells_) {
        int target = coarser.cell_of(c.front());
        for (int v : c)
            if (coarser.cell_of(v) != target) return false;
    }
    return true;
}

bool Partition::strictly_refines(const Partition& coarser) const {
    return refines(coarser) && cell_count() > coarser.cell_count();
}

Partition Partition::meet(const Partition& a, const Partition& b) {
    std::map<std::pair<int, int>, std::vector<int>> groups;
    for (int v = 0; v < a.n(); ++v) groups[{a.cell_of(v), b.cell_of(v)}].push_back(v);
    std::vector<std::vector<int>> cells;
    cells.reserve(groups.size());
    for (auto& [k, g] : groups) cells.push_back(std::move(g));
    return Partition(a.n(), std::move(cells));
}

int Partition::find_cell(const std::vector<int>& sorted_cell) const {
    for (int i = 0; i < cell_count(); ++i)
        if (cells_[i] == sorted_cell) return i;
    return -1;
}

} // namespace specsym
