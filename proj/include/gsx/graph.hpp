#pragma once

#include <utility>

#include "gsx/errors.hpp"
#include "gsx/types.hpp"

namespace gsx {

/// A weighted graph held as its dense real adjacency matrix. The matrix is
/// the correlation structure everything else in the library is built on.
/// `directed` is derived from symmetry, never set by callers.
struct Graph {
    RMatrix adjacency;
    bool directed = false;

    Index n() const { return adjacency.rows(); }

    /// Validates shape and finiteness and derives the directedness flag
    /// (asymmetry beyond 1e-12 relative Frobenius distance).
    static Graph from_adjacency(RMatrix a) {
        if (a.rows() == 0 || a.rows() != a.cols())
            throw DimensionMismatch("adjacency matrix must be square and non-empty");
        if (!a.allFinite())
            throw Error("adjacency matrix has non-finite entries");
        const double scale = a.norm();
        const double skew = (a - a.transpose()).norm();
        Graph g;
        g.directed = skew > 1e-12 * scale;
        g.adjacency = std::move(a);
        return g;
    }
};

} // namespace gsx
