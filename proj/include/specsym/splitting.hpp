#pragma once

#include <optional>
#include <string>
#include <vector>

#include "specsym/equitable.hpp"
#include "specsym/graph.hpp"
#include "specsym/linalg.hpp"

namespace specsym {

struct HistoryEvent {
    enum class Kind {
        F1Refined,
        F1NotAppropriate,
        F1NoStrictRefinement,
        F2Split,
        F3Split,
        Snapshot,
        SmallCellAnalysis,
        Individualize,
        Stop,
    };
    Kind kind;
    std::string detail;
};

struct AnalysisPair {
    Partition partition;
    Decomposition decomposition;
};

struct AnalysisReport {
    std::vector<AnalysisPair> pairs; // predecessor-ordered
    std::vector<int> fixed_vertices;
    int d = 0;
    bool terminal = false;
    std::vector<HistoryEvent> history;

    const AnalysisPair& terminal_pair() const { return pairs.back(); }
};

/// Function 1: revise/refine an equitable partition by a group of subspaces.
/// nullopt mirrors the "not an appropriate EP" branch.
std::optional<Partition> fn1_refine_partition(const Graph& g, const Decomposition& dec,
                                              const Partition& p, const Tolerances& tol = {});

/// Function 2: split parts by the lifted eigenspaces of the quotient over p.
Decomposition fn2_split_by_quotient(const Graph& g, const Decomposition& dec, const Partition& p,
                                    const Tolerances& tol = {});

/// Function 3: split parts by spans of projected cells, cells in canonical
/// order, re-collecting after each cell.
Decomposition fn3_split_by_cells(const Graph& g, const Decomposition& dec, const Partition& p,
                                 const Tolerances& tol = {});

/// True iff C2 is a cell of every anchored projection partition over C1 (or
/// symmetrically); such cells can be analyzed independently.
bool irrelevant_cells(const Graph& g, const Decomposition& dec, const Partition& p, int c1, int c2,
                      const Tolerances& tol = {});

/// Local symmetry structure of a small cell, decided by exhaustive matching
/// of the cell's OPSB Gram data over all orderings; returns the orbit
/// partition of the matched symmetry group restricted to the cell.
std::vector<std::vector<int>> small_cell_local_orbits(const Graph& g, const Decomposition& dec,
                                                      const std::vector<int>& cell,
                                                      const Tolerances& tol = {});

/// The partition/decomposition co-refinement driver. run() iterates
/// Functions 1-3 until either the loop condition fails (terminal) or the
/// driver needs an externally chosen vertex to individualize.
class Algorithm4Driver {
  public:
    Algorithm4Driver(const Graph& g, int K, const Tolerances& tol = {});

    /// Returns true when terminal; false when an individualization is
    /// pending (see pending_cell()).
    bool run();
    int pending_cell() const { return pending_cell_; }
    const Partition& partition() const { return p_; }
    const Decomposition& decomposition() const { return dec_; }
    const Graph& analysis_graph() const { return ga_; }

    void individualize(int vertex);

    AnalysisReport finish();

  private:
    void snapshot();

    Graph ga_; // spectral-matrix graph (colors folded into the diagonal)
    int k_;
    Tolerances tol_;
    Partition p_;
    Decomposition dec_;
    AnalysisReport rep_;
    bool terminal_ = false;
    int pending_cell_ = -1;
};

/// Lines 1-27: full run with the lowest-index tie-break for individualized
/// vertices.
AnalysisReport run_algorithm4(const Graph& g, int K, const Tolerances& tol = {});

/// Predecessor order on pairs.
bool pair_precedes(const AnalysisPair& a, const AnalysisPair& b, const Tolerances& tol = {});

} // namespace specsym
