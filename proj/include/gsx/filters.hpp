#pragma once

#include <cmath>
#include <utility>

#include "gsx/errors.hpp"
#include "gsx/polynomials.hpp"
#include "gsx/shift.hpp"
#include "gsx/signal.hpp"
#include "gsx/types.hpp"

namespace gsx {

/// Coefficients of an LSI polynomial filter H = Σ_k h_k·S^k in some shift
/// operator S. h[0] is the constant tap.
struct FilterTaps {
    CVector h;
    ShiftKind shift_kind = ShiftKind::GenericPhi;

    Index length() const { return h.size(); }
};

/// Diagonal of the filter in the Fourier basis: entry m = Σ_k h_k·λ_m^k.
inline CVector frequency_response(const ShiftOperator& s, const FilterTaps& t) {
    if (t.length() < 1) throw DimensionMismatch("filter has no taps");
    const CVector e = s.eigenvalues();
    CVector resp(e.size());
    for (Index m = 0; m < e.size(); ++m) resp(m) = detail::horner(t.h, e(m));
    return resp;
}

/// Dense filter matrix H = V·diag(response)·V⁻¹, assembled spectrally.
inline CMatrix lsi_filter_matrix(const ShiftOperator& s, const FilterTaps& t) {
    const CVector resp = frequency_response(s, t);
    const auto& d = s.decomposition();
    return d.v * resp.asDiagonal() * d.v_inv;
}

/// Filtering in the spectral domain: igft(response ⊙ gft(x)).
inline GraphSignal apply_filter(const ShiftOperator& s, const FilterTaps& t,
                                const GraphSignal& x) {
    if (x.size() != s.n()) throw DimensionMismatch("apply_filter: size mismatch");
    if (x.domain != Domain::Vertex)
        throw WrongDomain("apply_filter expects a vertex-domain signal");
    const CVector resp = frequency_response(s, t);
    const auto& d = s.decomposition();
    CVector u = d.v_inv * x.values;
    u.array() *= resp.array();
    return vertex_signal(d.v * u);
}

/// Taps h with Σ_k h_k·A_φ^k = A. For the canonical operator the system
/// collapses to an inverse DFT of the eigenvalue vector (with a phase
/// correction when φ_const ≠ 0); a generic phase operator goes through the
/// Vandermonde solve.
inline FilterTaps adjacency_as_lsi_taps(const ShiftOperator& s) {
    const auto& d = s.decomposition();
    const Index n = d.n();
    if (s.kind() == ShiftKind::CanonicalE) {
        const double phi_const = s.phases()(0);
        CVector h(n);
        for (Index k = 0; k < n; ++k) {
            cxd acc{0.0, 0.0};
            for (Index m = 0; m < n; ++m)
                acc += d.lambda(m) * std::polar(1.0, kTwoPi * static_cast<double>(k) *
                                                         static_cast<double>(m) /
                                                         static_cast<double>(n));
            h(k) = acc / static_cast<double>(n) *
                   std::polar(1.0, -static_cast<double>(k) * phi_const);
        }
        return FilterTaps{std::move(h), s.kind()};
    }
    if (s.kind() == ShiftKind::GenericPhi)
        return FilterTaps{vandermonde_solve(s.eigenvalues(), d.lambda), s.kind()};
    throw ConditionsNotMet("adjacency_as_lsi_taps requires a phase-kind shift operator");
}

/// Folds taps beyond the minimal-polynomial degree back into the first
/// L_A positions (S^{L_A} = −Σ_{i<L_A} α_i·S^i), highest power first.
/// Taps already at or below the degree are returned unchanged.
inline FilterTaps reduce_taps(const FilterTaps& t, const MinimalPolynomial& mp) {
    if (mp.alpha.size() != mp.degree + 1 || std::abs(mp.alpha(mp.degree) - cxd{1.0, 0.0}) > 1e-12)
        throw DegreeMismatch("minimal polynomial is not monic of the stated degree");
    if (t.length() <= mp.degree) return t;
    CVector h = t.h;
    for (Index len = h.size(); len > mp.degree; --len) {
        const Index p = len - 1;
        const cxd top = h(p);
        for (Index i = 0; i < mp.degree; ++i) h(p - mp.degree + i) -= top * mp.alpha(i);
    }
    return FilterTaps{h.head(mp.degree), t.shift_kind};
}

enum class FilterClass { GFIR, GIIR };

/// GFIR when the effective tap count (trailing near-zeros trimmed at
/// 1e-12·max|h|) is below the minimal-polynomial degree, GIIR when equal.
/// Longer filters must be reduced first.
inline FilterClass classify(const FilterTaps& t, const MinimalPolynomial& mp) {
    const double top = t.h.cwiseAbs().maxCoeff();
    Index effective = 0;
    for (Index k = 0; k < t.length(); ++k)
        if (std::abs(t.h(k)) > 1e-12 * top) effective = k + 1;
    if (effective > mp.degree)
        throw LengthExceedsDegree("effective length " + std::to_string(effective) +
                                  " exceeds minimal-polynomial degree " +
                                  std::to_string(mp.degree) + "; reduce first");
    return effective == mp.degree ? FilterClass::GIIR : FilterClass::GFIR;
}

} // namespace gsx
