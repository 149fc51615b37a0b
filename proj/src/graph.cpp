#include "specsym/graph.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <sstream>

#include <json.hpp>

namespace specsym {

namespace {

std::string format_weight(double w) {
    // Shortest representation that round-trips the double exactly.
    char buf[64];
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof(buf), "%.*g", prec, w);
        if (std::strtod(buf, nullptr) == w) break;
    }
    return buf;
}

} // namespace

Graph::Graph(Eigen::MatrixXd adjacency, std::vector<int> colors) : adj_(std::move(adjacency)) {
    if (adj_.rows() != adj_.cols() || adj_.rows() < 1)
        throw ParseError("adjacency matrix must be square and non-empty");
    if (!adj_.isApprox(adj_.transpose()))
        throw AsymmetryError("adjacency matrix is not symmetric");
    adj_ = ((adj_ + adj_.transpose()) / 2.0).eval();
    if (colors.empty()) {
        colors_.assign(n(), 0);
    } else {
        if (static_cast<int>(colors.size()) != n())
            throw ParseError("color vector length does not match vertex count");
        colors_ = std::move(colors);
        for (int c : colors_)
            if (c != 0) colored_ = true;
    }
    a_max_ = adj_.cwiseAbs().maxCoeff();
}

Graph Graph::from_edges(int n, const std::vector<std::array<double, 3>>& edges,
                        std::vector<int> colors) {
    if (n < 1) throw ParseError("vertex count must be >= 1");
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (const auto& e : edges) {
        int u = static_cast<int>(e[0]);
        int v = static_cast<int>(e[1]);
        if (u < 0 || u >= n || v < 0 || v >= n) throw ParseError("edge endpoint out of range");
        a(u, v) += e[2];
        if (u != v) a(v, u) += e[2];
    }
    return Graph(std::move(a), std::move(colors));
}

Graph Graph::load(std::istream& in, GraphFormat format) {
    if (format == GraphFormat::EdgeList) {
        std::string line;
        int n = -1;
        std::vector<std::array<double, 3>> edges;
        while (std::getline(in, line)) {
            auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            std::istringstream ls(line);
            if (n < 0) {
                std::string head;
                if (!(ls >> head)) continue;
                if (head.rfind("n=", 0) != 0) throw ParseError("first line must be n=<int>");
                try {
                    n = std::stoi(head.substr(2));
                } catch (const std::exception&) {
                    throw ParseError("malformed vertex count: " + head);
                }
                continue;
            }
            long u, v;
            double w = 1.0;
            if (!(ls >> u)) continue;
            if (!(ls >> v)) throw ParseError("malformed edge line: " + line);
            ls >> w;
            edges.push_back({static_cast<double>(u), static_cast<double>(v), w});
        }
        if (n < 0) throw ParseError("missing n=<int> header");
        return from_edges(n, edges);
    }

    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid json: ") + e.what());
    }
    if (!j.contains("n")) throw ParseError("json graph missing \"n\"");
    int n = j["n"].get<int>();
    if (n < 1) throw ParseError("vertex count must be >= 1");
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (const auto& e : j.value("edges", nlohmann::json::array())) {
        int u = e.at(0).get<int>();
        int v = e.at(1).get<int>();
        double w = e.size() > 2 ? e.at(2).get<double>() : 1.0;
        if (u < 0 || u >= n || v < 0 || v >= n) throw ParseError("edge endpoint out of range");
        if (a(u, v) != 0.0 && a(u, v) != w && a(v, u) != w)
            throw AsymmetryError("conflicting weights for edge");
        a(u, v) = w;
        if (u != v) {
            if (a(v, u) != 0.0 && a(v, u) != w) throw AsymmetryError("a_ij != a_ji in input");
            a(v, u) = w;
        }
    }
    std::vector<int> colors;
    if (j.contains("colors")) colors = j["colors"].get<std::vector<int>>();
    return Graph(std::move(a), std::move(colors));
}

Graph Graph::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    auto fmt = path.size() > 5 && path.substr(path.size() - 5) == ".json" ? GraphFormat::WeightedJson
                                                                          : GraphFormat::EdgeList;
    return load(in, fmt);
}

Graph Graph::with_fixed_vertex(int v) const {
    std::vector<int> c = colors_;
    int next = 0;
    for (int x : c) next = std::max(next, x);
    c[v] = next + 1;
    return Graph(adj_, std::move(c));
}

Graph Graph::with_colors(std::vector<int> colors) const { return Graph(adj_, std::move(colors)); }

double Graph::color_shift() const {
    double diag_max = adj_.diagonal().cwiseAbs().maxCoeff();
    return 4.0 * (diag_max + a_max_ + 1.0);
}

Eigen::MatrixXd Graph::spectral_matrix() const {
    if (!colored_) return adj_;
    Eigen::MatrixXd m = adj_;
    double mu = color_shift();
    for (int v = 0; v < n(); ++v) m(v, v) += mu * colors_[v];
    return m;
}

std::string Graph::serialize_edge_list() const {
    std::ostringstream out;
    out << "n=" << n() << "\n";
    for (int u = 0; u < n(); ++u)
        for (int v = u; v < n(); ++v)
            if (adj_(u, v) != 0.0) {
                out << u << " " << v;
                if (adj_(u, v) != 1.0) out << " " << format_weight(adj_(u, v));
                out << "\n";
            }
    return out.str();
}

std::string Graph::serialize_json() const {
    nlohmann::json j;
    j["n"] = n();
    auto edges = nlohmann::json::array();
    for (int u = 0; u < n(); ++u)
        for (int v = u; v < n(); ++v)
            if (adj_(u, v) != 0.0) edges.push_back({u, v, adj_(u, v)});
    j["edges"] = edges;
    if (colored_) j["colors"] = colors_;
    return j.dump();
}

std::vector<double> cell_degrees(const Graph& g, const Partition& p, int v) {
    std::vector<double> deg(p.cell_count(), 0.0);
    for (int j = 0; j < p.cell_count(); ++j)
        for (int u : p.cell(j)) deg[j] += g.weight(v, u);
    return deg;
}

bool is_equitable(const Graph& g, const Partition& p, const Tolerances& tol) {
    auto sc = tol.scaled(g.max_abs_entry());
    for (int i = 0; i < p.cell_count(); ++i) {
        const auto& c = p.cell(i);
        auto ref = cell_degrees(g, p, c.front());
        for (size_t k = 1; k < c.size(); ++k) {
            auto d = cell_degrees(g, p, c[k]);
            for (int j = 0; j < p.cell_count(); ++j)
                if (std::abs(d[j] - ref[j]) > sc.vec) return false;
        }
    }
    return true;
}

QuotientGraph quotient(const Graph& g, const Partition& p, const Tolerances& tol) {
    if (!is_equitable(g, p, tol))
        throw NotEquitableError("partition is not equitable; quotient undefined");
    int t = p.cell_count();
    Eigen::MatrixXd b(t, t);
    std::vector<int> sizes(t);
    for (int i = 0; i < t; ++i) {
        sizes[i] = static_cast<int>(p.cell(i).size());
        auto deg = cell_degrees(g, p, p.cell(i).front());
        for (int j = 0; j < t; ++j) b(i, j) = deg[j];
    }
    return QuotientGraph{std::move(b), std::move(sizes), p};
}

} // namespace specsym
