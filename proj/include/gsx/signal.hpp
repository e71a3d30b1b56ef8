#pragma once

#include <utility>

#include "gsx/errors.hpp"
#include "gsx/types.hpp"

namespace gsx {

enum class Domain { Vertex, Fourier };

/// Complex vector over the vertices (or frequency slots) of a graph.
/// The domain tag is enforced at transform boundaries to prevent silent
/// double transforms.
struct GraphSignal {
    CVector values;
    Domain domain = Domain::Vertex;

    Index size() const { return values.size(); }
};

inline GraphSignal vertex_signal(CVector v) { return GraphSignal{std::move(v), Domain::Vertex}; }

inline GraphSignal fourier_signal(CVector v) { return GraphSignal{std::move(v), Domain::Fourier}; }

inline GraphSignal delta_signal(Index n, Index at) {
    if (at < 0 || at >= n) throw IndexOutOfRange("delta position out of range");
    CVector v = CVector::Zero(n);
    v(at) = cxd{1.0, 0.0};
    return vertex_signal(std::move(v));
}

/// Squared 2-norm.
inline double energy(const CVector& v) { return v.squaredNorm(); }
inline double energy(const GraphSignal& x) { return x.values.squaredNorm(); }

} // namespace gsx
