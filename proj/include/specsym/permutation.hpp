#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace specsym {

/// Bijection on vertex indices. image()[v] is the image of v.
class Permutation {
  public:
    Permutation() = default;
    explicit Permutation(std::vector<int> image);
    static Permutation identity(int n);

    int n() const { return static_cast<int>(img_.size()); }
    int operator()(int v) const { return img_[v]; }
    const std::vector<int>& image() const { return img_; }

    bool is_identity() const;
    Permutation inverse() const;
    /// (a * b)(v) = a(b(v)).
    Permutation operator*(const Permutation& b) const;

    /// Action on vectors per the permutation representation:
    /// (sigma v)_i = v_{sigma^-1(i)}.
    Eigen::VectorXd apply(const Eigen::VectorXd& v) const;
    Eigen::MatrixXd matrix() const;

    /// Image of a vertex set (sorted).
    std::vector<int> apply_set(const std::vector<int>& s) const;

    std::string cycle_string(int index_base = 0) const;
    std::vector<std::vector<int>> cycles() const;

    bool operator==(const Permutation& o) const { return img_ == o.img_; }
    bool operator<(const Permutation& o) const { return img_ < o.img_; }

  private:
    std::vector<int> img_;
};

} // namespace specsym
