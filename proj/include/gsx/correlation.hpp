#pragma once

#include <cmath>

#include "gsx/errors.hpp"
#include "gsx/shift.hpp"
#include "gsx/signal.hpp"
#include "gsx/types.hpp"

namespace gsx {

namespace detail {

inline Index mod_index(long i, Index n) {
    long r = i % static_cast<long>(n);
    if (r < 0) r += static_cast<long>(n);
    return static_cast<Index>(r);
}

// Columns y, S·y, ..., S^{L-1}·y computed spectrally.
inline CMatrix shifted_basis(const ShiftOperator& s, const CVector& y, Index L) {
    const auto& d = s.decomposition();
    const CVector u = d.v_inv * y;
    const CVector e = s.eigenvalues();
    CMatrix basis(d.n(), L);
    CVector mult = CVector::Ones(d.n());
    for (Index k = 0; k < L; ++k) {
        basis.col(k) = d.v * mult.cwiseProduct(u);
        if (k + 1 < L) mult.array() *= e.array();
    }
    return basis;
}

} // namespace detail

/// Circular autocorrelation at lag l: Σ_n y*_n·y_{n+l} with mod-N indexing.
/// Equals yᴴ(Cˡ)ᴴy on the directed cyclic graph.
inline cxd autocorr_cyclic(const GraphSignal& y, long l) {
    const Index n = y.size();
    cxd acc{0.0, 0.0};
    for (Index i = 0; i < n; ++i)
        acc += std::conj(y.values(i)) * y.values(detail::mod_index(static_cast<long>(i) + l, n));
    return acc;
}

/// Circular cross-correlation at lag l: Σ_n x_{n+l}·y*_n = yᴴ(Cˡ)ᴴx.
inline cxd crosscorr_cyclic(const GraphSignal& x, const GraphSignal& y, long l) {
    if (x.size() != y.size()) throw DimensionMismatch("crosscorr_cyclic: size mismatch");
    const Index n = y.size();
    cxd acc{0.0, 0.0};
    for (Index i = 0; i < n; ++i)
        acc += x.values(detail::mod_index(static_cast<long>(i) + l, n)) * std::conj(y.values(i));
    return acc;
}

/// Graph autocorrelation with lags l and m: yᴴ(S^l)ᴴ·S^m·y, i.e. the inner
/// product of the l- and m-step shifted copies, evaluated spectrally.
inline cxd graph_autocorr(const ShiftOperator& s, const GraphSignal& y, Index l, Index m) {
    if (!is_unit_modulus(s.kind()))
        throw ConditionsNotMet("graph_autocorr requires a phase-kind shift operator");
    if (y.size() != s.n()) throw DimensionMismatch("graph_autocorr: size mismatch");
    const GraphSignal wl = apply_shift(s, y, l);
    const GraphSignal wm = apply_shift(s, y, m);
    return wl.values.dot(wm.values);
}

/// Graph cross-correlation at lag l: yᴴ(S^l)ᴴ·x.
inline cxd graph_crosscorr(const ShiftOperator& s, const GraphSignal& x, const GraphSignal& y,
                           Index l) {
    if (!is_unit_modulus(s.kind()))
        throw ConditionsNotMet("graph_crosscorr requires a phase-kind shift operator");
    if (x.size() != s.n() || y.size() != s.n())
        throw DimensionMismatch("graph_crosscorr: size mismatch");
    const GraphSignal wl = apply_shift(s, y, l);
    return wl.values.dot(x.values);
}

/// L×L Gram matrix of the shifted copies of y. Hermitian PSD by
/// construction; Toeplitz when the shift operator is unitary (unit-modulus
/// phases on a unitary basis).
struct CorrelationMatrix {
    CMatrix r;
    Index lag_count;
    bool hermitian;
    bool toeplitz;
};

/// R(i,j) = yᴴ(Sⁱ)ᴴ·Sʲ·y for 0-based lags i,j < L. The spectral fast path
/// R(i,j) = Σ_n |y_F(n)|²·(λ*_n)ⁱ·λ_nʲ is exact only on a unitary basis and
/// raises FastPathUnavailable otherwise.
inline CorrelationMatrix autocorr_matrix(const ShiftOperator& s, const GraphSignal& y, Index L,
                                         bool use_spectral_fast_path) {
    if (L < 1) throw DimensionMismatch("autocorr_matrix: lag count must be positive");
    if (y.size() != s.n()) throw DimensionMismatch("autocorr_matrix: size mismatch");
    const auto& d = s.decomposition();
    CorrelationMatrix out;
    out.lag_count = L;
    out.hermitian = true;
    out.toeplitz = is_unit_modulus(s.kind()) && d.unitary_v;
    if (use_spectral_fast_path) {
        if (!d.unitary_v)
            throw FastPathUnavailable("spectral fast path needs a unitary Fourier basis");
        const CVector u = d.v_inv * y.values;
        const RVector w = u.cwiseAbs2();
        const CVector e = s.eigenvalues();
        CMatrix powers(L, d.n()); // powers(k, t) = λ_t^k
        CVector mult = CVector::Ones(d.n());
        for (Index k = 0; k < L; ++k) {
            powers.row(k) = mult.transpose();
            if (k + 1 < L) mult.array() *= e.array();
        }
        out.r = powers.conjugate() * w.asDiagonal() * powers.transpose();
    } else {
        const CMatrix basis = detail::shifted_basis(s, y.values, L);
        out.r = basis.adjoint() * basis;
    }
    return out;
}

/// r(l) = yᴴ(Sˡ)ᴴ·x for 0-based lags l < L; fast path uses
/// Σ_n y*_F(n)·x_F(n)·(λ*_n)ˡ, valid only on a unitary basis.
inline CVector crosscorr_vector(const ShiftOperator& s, const GraphSignal& x,
                                const GraphSignal& y, Index L, bool use_spectral_fast_path) {
    if (L < 1) throw DimensionMismatch("crosscorr_vector: lag count must be positive");
    if (x.size() != s.n() || y.size() != s.n())
        throw DimensionMismatch("crosscorr_vector: size mismatch");
    const auto& d = s.decomposition();
    CVector r(L);
    if (use_spectral_fast_path) {
        if (!d.unitary_v)
            throw FastPathUnavailable("spectral fast path needs a unitary Fourier basis");
        const CVector yf = d.v_inv * y.values;
        const CVector xf = d.v_inv * x.values;
        const CVector e = s.eigenvalues();
        CVector mult = CVector::Ones(d.n());
        for (Index l = 0; l < L; ++l) {
            cxd acc{0.0, 0.0};
            for (Index t = 0; t < d.n(); ++t)
                acc += std::conj(yf(t)) * xf(t) * std::conj(mult(t));
            r(l) = acc;
            if (l + 1 < L) mult.array() *= e.array();
        }
    } else {
        const CMatrix basis = detail::shifted_basis(s, y.values, L);
        for (Index l = 0; l < L; ++l) r(l) = basis.col(l).dot(x.values);
    }
    return r;
}

} // namespace gsx
