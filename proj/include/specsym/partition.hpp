#pragma once

#include <vector>

namespace specsym {

/// Ordered partition of {0..n-1}. Cells are sorted ascending internally and
/// ordered by (size, smallest member), the canonical order required by the
/// refinement driver.
class Partition {
  public:
    Partition() = default;
    Partition(int n, std::vector<std::vector<int>> cells);

    static Partition single_cell(int n);
    static Partition discrete(int n);

    int n() const { return n_; }
    int cell_count() const { return static_cast<int>(cells_.size()); }
    const std::vector<std::vector<int>>& cells() const { return cells_; }
    const std::vector<int>& cell(int i) const { return cells_[i]; }
    int cell_of(int v) const { return cell_of_[v]; }

    bool refines(const Partition& coarser) const;
    bool strictly_refines(const Partition& coarser) const;

    /// Common refinement (meet in the refinement order).
    static Partition meet(const Partition& a, const Partition& b);

    /// Index of the cell equal to the given sorted vertex list, or -1.
    int find_cell(const std::vector<int>& sorted_cell) const;

    bool operator==(const Partition& o) const { return cells_ == o.cells_; }
    bool operator!=(const Partition& o) const { return !(*this == o); }
    bool operator<(const Partition& o) const { return cells_ < o.cells_; }

  private:
    int n_ = 0;
    std::vector<std::vector<int>> cells_;
    std::vector<int> cell_of_;
};

} // namespace specsym
