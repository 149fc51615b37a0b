#include "specsym/permutation.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace specsym {

Permutation::Permutation(std::vector<int> image) : img_(std::move(image)) {
    std::vector<char> seen(img_.size(), 0);
    for (int v : img_) {
        if (v < 0 || v >= n() || seen[v]) throw std::invalid_argument("image is not a bijection");
        seen[v] = 1;
    }
}

Permutation Permutation::identity(int n) {
    std::vector<int> img(n);
    for (int i = 0; i < n; ++i) img[i] = i;
    return Permutation(std::move(img));
}

bool Permutation::is_identity() const {
    for (int i = 0; i < n(); ++i)
        if (img_[i] != i) return false;
    return true;
}

Permutation Permutation::inverse() const {
    std::vector<int> inv(n());
    for (int i = 0; i < n(); ++i) inv[img_[i]] = i;
    return Permutation(std::move(inv));
}

Permutation Permutation::operator*(const Permutation& b) const {
    std::vector<int> img(n());
    for (int i = 0; i < n(); ++i) img[i] = img_[b.img_[i]];
    return Permutation(std::move(img));
}

Eigen::VectorXd Permutation::apply(const Eigen::VectorXd& v) const {
    Eigen::VectorXd out(v.size());
    for (int i = 0; i < n(); ++i) out(img_[i]) = v(i);
    return out;
}

Eigen::MatrixXd Permutation::matrix() const {
    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n(), n());
    for (int i = 0; i < n(); ++i) p(img_[i], i) = 1.0;
    return p;
}

std::vector<int> Permutation::apply_set(const std::vector<int>& s) const {
    std::vector<int> out;
    out.reserve(s.size());
    for (int v : s) out.push_back(img_[v]);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::vector<int>> Permutation::cycles() const {
    std::vector<char> seen(n(), 0);
    std::vector<std::vector<int>> out;
    for (int i = 0; i < n(); ++i) {
        if (seen[i] || img_[i] == i) continue;
        std::vector<int> cyc;
        int j = i;
        while (!seen[j]) {
            seen[j] = 1;
            cyc.push_back(j);
            j = img_[j];
        }
        out.push_back(std::move(cyc));
    }
    return out;
}

std::string Permutation::cycle_string(int index_base) const {
    auto cs = cycles();
    if (cs.empty()) return "()";
    std::ostringstream os;
    for (const auto& c : cs) {
        os << "(";
        for (size_t i = 0; i < c.size(); ++i) os << (i ? " " : "") << c[i] + index_base;
        os << ")";
    }
    return os.str();
}

} // namespace specsym
