#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <string>
#include <vector>

#include "specsym/partition.hpp"
#include "specsym/types.hpp"

namespace specsym {

enum class GraphFormat { EdgeList, WeightedJson };

/// Vertex-indexed symmetric weighted adjacency plus an optional integer color
/// per vertex. Immutable after construction.
class Graph {
  public:
    Graph() = default;
    Graph(Eigen::MatrixXd adjacency, std::vector<int> colors = {});

    static Graph from_edges(int n, const std::vector<std::array<double, 3>>& edges,
                            std::vector<int> colors = {});
    static Graph load(std::istream& in, GraphFormat format);
    static Graph load_file(const std::string& path);

    int n() const { return static_cast<int>(adj_.rows()); }
    const Eigen::MatrixXd& adjacency() const { return adj_; }
    double weight(int u, int v) const { return adj_(u, v); }
    double max_abs_entry() const { return a_max_; }

    bool colored() const { return colored_; }
    const std::vector<int>& colors() const { return colors_; }
    int color(int v) const { return colors_[v]; }

    /// Copy with one extra vertex pinned to a fresh color. Used to encode
    /// point stabilizers spectrally.
    Graph with_fixed_vertex(int v) const;
    Graph with_colors(std::vector<int> colors) const;

    /// The matrix the spectral pipeline analyzes: A + mu * diag(colors) with
    /// mu large enough that automorphisms of the matrix coincide with
    /// color-preserving automorphisms of A.
    Eigen::MatrixXd spectral_matrix() const;
    double color_shift() const;

    std::string serialize_edge_list() const;
    std::string serialize_json() const;

  private:
    Eigen::MatrixXd adj_;
    std::vector<int> colors_;
    bool colored_ = false;
    double a_max_ = 0.0;
};

struct QuotientGraph {
    Eigen::MatrixXd adjacency;      // t x t, generally asymmetric
    std::vector<int> cell_sizes;
    Partition partition;            // the source partition
};

/// Quotient over an equitable partition; throws NotEquitableError when a
/// vertex violates cell-degree constancy beyond the tolerance.
QuotientGraph quotient(const Graph& g, const Partition& p, const Tolerances& tol = {});

/// Weight-sum from vertex v into each cell of p.
std::vector<double> cell_degrees(const Graph& g, const Partition& p, int v);

bool is_equitable(const Graph& g, const Partition& p, const Tolerances& tol = {});

} // namespace specsym
