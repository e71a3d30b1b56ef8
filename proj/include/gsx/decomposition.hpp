#pragma once

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>
#include <vector>

#include "gsx/errors.hpp"
#include "gsx/graph.hpp"
#include "gsx/types.hpp"

namespace gsx {

/// Full eigendecomposition A = V diag(lambda) V^{-1} with eigenvalues in
/// canonical order. Rows of v_inv and columns of v form a biorthogonal pair.
/// Immutable once built; share freely across threads.
struct EigenDecomposition {
    CMatrix v;
    CVector lambda;
    CMatrix v_inv;
    std::vector<Index> ordering; ///< ordering[k] = solver slot of canonical slot k
    bool unitary_v = false;      ///< ‖VᴴV − I‖_F ≤ 1e-9·n

    Index n() const { return lambda.size(); }
};

using DecompPtr = std::shared_ptr<const EigenDecomposition>;

inline constexpr double kDistinctTolFactor = 1e-8;  // pairwise eigenvalue gap
inline constexpr double kReconTolFactor = 1e-9;     // reconstruction residual

namespace detail {

// Angle of z measured clockwise from the positive real axis, in (-2π, 0].
// Real axis crossings are snapped so that eigenvalues that are real up to
// noise land exactly on 0 (positive) or -π (negative), keeping the order
// among real eigenvalues a pure descending-real sort.
inline double clockwise_angle(cxd z) {
    constexpr double snap = 1e-9;
    const double th = std::arg(z); // (-π, π]
    if (std::abs(th) <= snap) return 0.0;
    if (std::abs(th) >= kPi - snap) return -kPi;
    return th > 0.0 ? th - kTwoPi : th;
}

} // namespace detail

/// Canonical eigenvalue order: clockwise angle from the positive real axis,
/// ties by descending real part, then descending imaginary part, then
/// original slot. For an all-real spectrum this is exactly a descending
/// sort (largest eigenvalue first); for the directed cyclic graph it lists
/// the N-th roots of unity as e^{-j2πm/N}, m = 0..N-1.
inline std::vector<Index> canonical_order(const CVector& lambda) {
    std::vector<Index> order(static_cast<std::size_t>(lambda.size()));
    std::iota(order.begin(), order.end(), Index{0});
    std::vector<double> angle(order.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        angle[i] = detail::clockwise_angle(lambda(static_cast<Index>(i)));
    std::sort(order.begin(), order.end(), [&](Index a, Index b) {
        if (angle[static_cast<std::size_t>(a)] != angle[static_cast<std::size_t>(b)])
            return angle[static_cast<std::size_t>(a)] > angle[static_cast<std::size_t>(b)];
        if (lambda(a).real() != lambda(b).real())
            return lambda(a).real() > lambda(b).real();
        if (lambda(a).imag() != lambda(b).imag())
            return lambda(a).imag() > lambda(b).imag();
        return a < b;
    });
    return order;
}

/// Eigendecomposition of the adjacency matrix. Symmetric (undirected)
/// inputs go through the self-adjoint solver, so their eigenvalues are
/// exactly real and V is orthogonal; everything else uses the general
/// complex solver. Throws RepeatedEigenvalues when the spectrum is not
/// simple and NotDiagonalizable when the reconstruction residual exceeds
/// 1e-9·‖A‖_F.
inline EigenDecomposition eigendecompose(const Graph& g) {
    const Index n = g.n();
    CMatrix v_raw(n, n);
    CVector lam_raw(n);
    const bool self_adjoint = !g.directed;
    if (self_adjoint) {
        Eigen::SelfAdjointEigenSolver<RMatrix> solver(g.adjacency);
        if (solver.info() != Eigen::Success)
            throw NotDiagonalizable("self-adjoint eigensolver did not converge");
        v_raw = solver.eigenvectors().cast<cxd>();
        lam_raw = solver.eigenvalues().cast<cxd>();
    } else {
        Eigen::ComplexEigenSolver<CMatrix> solver(g.adjacency.cast<cxd>());
        if (solver.info() != Eigen::Success)
            throw NotDiagonalizable("complex eigensolver did not converge");
        v_raw = solver.eigenvectors();
        lam_raw = solver.eigenvalues();
    }

    EigenDecomposition d;
    d.ordering = canonical_order(lam_raw);
    d.v.resize(n, n);
    d.lambda.resize(n);
    for (Index k = 0; k < n; ++k) {
        d.lambda(k) = lam_raw(d.ordering[static_cast<std::size_t>(k)]);
        d.v.col(k) = v_raw.col(d.ordering[static_cast<std::size_t>(k)]);
    }

    const double max_mod = d.lambda.cwiseAbs().maxCoeff();
    const double tol_distinct = kDistinctTolFactor * max_mod;
    for (Index i = 0; i < n; ++i)
        for (Index j = i + 1; j < n; ++j)
            if (std::abs(d.lambda(i) - d.lambda(j)) <= tol_distinct)
                throw RepeatedEigenvalues("eigenvalues " + std::to_string(i) + " and " +
                                          std::to_string(j) + " are not distinct");

    // Phase convention: rotate each eigenvector so its first component that
    // attains the column max modulus (within 1e-6 relative) is real positive.
    for (Index i = 0; i < n; ++i) {
        const double top = d.v.col(i).cwiseAbs().maxCoeff();
        for (Index j = 0; j < n; ++j) {
            const cxd vj = d.v(j, i);
            if (std::abs(vj) >= (1.0 - 1e-6) * top) {
                d.v.col(i) *= std::conj(vj) / std::abs(vj);
                break;
            }
        }
    }

    if (self_adjoint) {
        d.v_inv = d.v.adjoint();
    } else {
        d.v_inv = d.v.partialPivLu().solve(CMatrix::Identity(n, n));
    }

    const double recon =
        (d.v * d.lambda.asDiagonal() * d.v_inv - g.adjacency.cast<cxd>()).norm();
    if (recon > kReconTolFactor * g.adjacency.norm())
        throw NotDiagonalizable("reconstruction residual " + std::to_string(recon) +
                                " exceeds tolerance");

    d.unitary_v =
        (d.v.adjoint() * d.v - CMatrix::Identity(n, n)).norm() <= 1e-9 * static_cast<double>(n);
    return d;
}

inline DecompPtr decompose_shared(const Graph& g) {
    return std::make_shared<const EigenDecomposition>(eigendecompose(g));
}

/// Rank-one spectral projector v_i ṽ_iᵀ of the i-th frequency component
/// (0-based index). Satisfies A·V̂_i = λ_i·V̂_i and V̂_i² = V̂_i.
struct Eigengraph {
    Index index;
    CMatrix matrix;
};

inline Eigengraph eigengraph(const EigenDecomposition& d, Index i) {
    if (i < 0 || i >= d.n())
        throw IndexOutOfRange("eigengraph index " + std::to_string(i) + " out of [0, " +
                              std::to_string(d.n()) + ")");
    return Eigengraph{i, d.v.col(i) * d.v_inv.row(i)};
}

} // namespace gsx
