#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "gsx/decomposition.hpp"
#include "gsx/errors.hpp"
#include "gsx/graph.hpp"
#include "gsx/rng.hpp"
#include "gsx/signal.hpp"
#include "gsx/types.hpp"

namespace gsx {

/// Directed cyclic graph: C(0, n-1) = 1 and C(k, k-1) = 1, so C·e_i = e_{i+1}.
inline Graph cyclic_graph(Index n) {
    if (n < 1) throw DimensionMismatch("cyclic_graph: n must be at least 1");
    RMatrix a = RMatrix::Zero(n, n);
    for (Index k = 0; k < n; ++k) a(k, (k - 1 + n) % n) = 1.0;
    return Graph::from_adjacency(std::move(a));
}

/// A geometric graph together with its node coordinates (n×2, unit square).
struct SensorGraph {
    Graph graph;
    RMatrix coordinates;
};

namespace detail {

inline RMatrix random_points(Index n, Rng& rng) {
    RMatrix pts(n, 2);
    for (Index i = 0; i < n; ++i) {
        pts(i, 0) = rng.uniform01();
        pts(i, 1) = rng.uniform01();
    }
    return pts;
}

// k nearest neighbors of node i by squared distance, equidistant ties
// broken by lower index.
inline std::vector<Index> nearest(const RMatrix& pts, Index i, Index k) {
    const Index n = pts.rows();
    std::vector<Index> others;
    others.reserve(static_cast<std::size_t>(n - 1));
    for (Index j = 0; j < n; ++j)
        if (j != i) others.push_back(j);
    std::sort(others.begin(), others.end(), [&](Index a, Index b) {
        const double da = (pts.row(a) - pts.row(i)).squaredNorm();
        const double db = (pts.row(b) - pts.row(i)).squaredNorm();
        if (da != db) return da < db;
        return a < b;
    });
    others.resize(static_cast<std::size_t>(k));
    return others;
}

} // namespace detail

/// Random sensor network: n points uniform on [0,1]², each connected to its
/// k nearest neighbors with weight 1, symmetrized by OR.
inline SensorGraph knn_sensor_graph(Index n, Index k, std::uint64_t seed) {
    if (n < 2 || k < 1 || k >= n)
        throw DimensionMismatch("knn_sensor_graph: need 1 <= k < n and n >= 2");
    Rng rng(seed);
    const RMatrix pts = detail::random_points(n, rng);
    RMatrix a = RMatrix::Zero(n, n);
    for (Index i = 0; i < n; ++i)
        for (Index j : detail::nearest(pts, i, k)) {
            a(i, j) = 1.0;
            a(j, i) = 1.0;
        }
    return SensorGraph{Graph::from_adjacency(std::move(a)), pts};
}

/// Distance-weighted sensor network: w_ij = exp(−d_ij²/θ) on the k-NN
/// support (OR-symmetrized), zero elsewhere.
inline SensorGraph exp_weighted_graph(Index n, std::uint64_t seed, double theta, Index k = 6) {
    if (theta <= 0.0) throw Error("exp_weighted_graph: theta must be positive");
    if (n < 2 || k < 1 || k >= n)
        throw DimensionMismatch("exp_weighted_graph: need 1 <= k < n and n >= 2");
    Rng rng(seed);
    const RMatrix pts = detail::random_points(n, rng);
    RMatrix a = RMatrix::Zero(n, n);
    for (Index i = 0; i < n; ++i)
        for (Index j : detail::nearest(pts, i, k)) {
            const double w = std::exp(-(pts.row(i) - pts.row(j)).squaredNorm() / theta);
            a(i, j) = w;
            a(j, i) = w;
        }
    return SensorGraph{Graph::from_adjacency(std::move(a)), pts};
}

/// Keeps every directed edge independently with probability `prob`
/// (row-major scan, one uniform draw per existing edge). The result is
/// generally asymmetric.
inline Graph directed_subsample(const Graph& g, double prob, std::uint64_t seed) {
    if (!(prob > 0.0 && prob <= 1.0))
        throw Error("directed_subsample: prob must be in (0, 1]");
    Rng rng(seed);
    RMatrix a = g.adjacency;
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < a.cols(); ++j)
            if (a(i, j) != 0.0 && rng.uniform01() >= prob) a(i, j) = 0.0;
    return Graph::from_adjacency(std::move(a));
}

/// Signal whose Fourier representation has exactly K nonzero entries:
/// standard-normal draws in the first K canonical slots, transformed back
/// to the vertex domain.
inline GraphSignal k_sparse_signal(const EigenDecomposition& d, Index k_nonzero,
                                   std::uint64_t seed) {
    if (k_nonzero < 1 || k_nonzero > d.n())
        throw IndexOutOfRange("k_sparse_signal: need 1 <= K <= n");
    Rng rng(seed);
    CVector xf = CVector::Zero(d.n());
    for (Index i = 0; i < k_nonzero; ++i) xf(i) = cxd{rng.gauss(), 0.0};
    return vertex_signal(d.v * xf);
}

/// y = x + noise. Exactly-real signals get real N(0, σ²) noise; complex
/// signals get independent N(0, σ²/2) on each component so total noise
/// power stays σ².
inline GraphSignal add_noise(const GraphSignal& x, double sigma, std::uint64_t seed) {
    if (sigma < 0.0) throw Error("add_noise: sigma must be non-negative");
    Rng rng(seed);
    CVector y = x.values;
    const bool real_signal = (x.values.imag().array() == 0.0).all();
    if (real_signal) {
        for (Index i = 0; i < y.size(); ++i) y(i) += sigma * rng.gauss();
    } else {
        const double comp = sigma / std::sqrt(2.0);
        for (Index i = 0; i < y.size(); ++i)
            y(i) += cxd{comp * rng.gauss(), comp * rng.gauss()};
    }
    return GraphSignal{std::move(y), x.domain};
}

/// Signal-to-noise ratio in dB: average per-node signal power over σ².
inline double snr_db(const GraphSignal& x, double sigma) {
    if (sigma <= 0.0) throw Error("snr_db: sigma must be positive");
    const double avg_power = energy(x) / static_cast<double>(x.size());
    return 10.0 * std::log10(avg_power / (sigma * sigma));
}

/// Noise level that realizes the requested SNR for the given signal.
inline double sigma_for_snr_db(const GraphSignal& x, double target_db) {
    const double avg_power = energy(x) / static_cast<double>(x.size());
    return std::sqrt(avg_power / std::pow(10.0, target_db / 10.0));
}

} // namespace gsx
