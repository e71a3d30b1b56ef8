#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "gsx/correlation.hpp"
#include "gsx/errors.hpp"
#include "gsx/filters.hpp"
#include "gsx/shift.hpp"
#include "gsx/signal.hpp"
#include "gsx/types.hpp"

namespace gsx {

/// One denoising instance: recover the clean target x from the observation
/// y with an LSI filter of at most `taps` coefficients in `shift`.
struct WienerProblem {
    ShiftOperator shift;
    GraphSignal x; ///< clean target
    GraphSignal y; ///< noisy observation
    Index taps;
    bool allow_pinv = false; ///< rank-deficient basis: minimum-norm solve instead of throwing
};

/// Basis of shifted observations B = [y, S·y, ..., S^{L-1}·y].
inline CMatrix build_shift_basis(const ShiftOperator& s, const GraphSignal& y, Index L) {
    if (L < 1) throw DimensionMismatch("build_shift_basis: tap count must be positive");
    if (y.size() != s.n()) throw DimensionMismatch("build_shift_basis: size mismatch");
    if (y.domain != Domain::Vertex)
        throw WrongDomain("build_shift_basis expects a vertex-domain signal");
    return detail::shifted_basis(s, y.values, L);
}

struct WienerSolution {
    FilterTaps taps;
    double residual;   ///< ‖B·h − x‖₂
    double condition;  ///< condition estimate of the solved system
    std::string path;  ///< "ls" or "spectral"
};

namespace detail {

inline void check_problem(const WienerProblem& p) {
    if (p.x.size() != p.shift.n() || p.y.size() != p.shift.n())
        throw DimensionMismatch("wiener: signal length vs graph size");
    if (p.x.domain != Domain::Vertex || p.y.domain != Domain::Vertex)
        throw WrongDomain("wiener expects vertex-domain signals");
    if (p.taps < 1 || p.taps > p.shift.n())
        throw DimensionMismatch("wiener: tap count must satisfy 1 <= L <= n");
}

} // namespace detail

/// Least-squares tap solve min_h ‖B·h − x‖₂ through a rank-revealing
/// orthogonal factorization of B (the normal equations BᴴB·h = Bᴴx specify
/// the same minimizer; the factorization is the better-conditioned route).
/// Rank-deficient bases raise SingularNormalEquations unless allow_pinv is
/// set, in which case the minimum-norm solution is returned.
inline WienerSolution wiener_taps_ls(const WienerProblem& p) {
    detail::check_problem(p);
    const CMatrix basis = build_shift_basis(p.shift, p.y, p.taps);
    Eigen::CompleteOrthogonalDecomposition<CMatrix> cod(basis);
    if (cod.rank() < p.taps && !p.allow_pinv)
        throw SingularNormalEquations("shift basis has rank " + std::to_string(cod.rank()) +
                                      " < " + std::to_string(p.taps));
    CVector h = cod.solve(p.x.values);
    Eigen::JacobiSVD<CMatrix> svd(basis);
    const auto& sv = svd.singularValues();
    const double smin = sv(sv.size() - 1);
    WienerSolution sol;
    sol.taps = FilterTaps{std::move(h), p.shift.kind()};
    sol.residual = (basis * sol.taps.h - p.x.values).norm();
    sol.condition = smin > 0.0 ? sv(0) / smin : std::numeric_limits<double>::infinity();
    sol.path = "ls";
    return sol;
}

/// Closed-form power-spectrum solve for the canonical shift operator on a
/// unitary basis at full tap count: per-bin division
/// t(i) = (W_λᴴ r)(i) / (n·|y_F(i)|²), h = W_λ·t / n, where W_λ is the phase
/// Vandermonde of the operator (W_λᴴW_λ = n·I). Preconditions that fail
/// raise ConditionsNotMet; a vanishing spectral bin raises SpectralNull.
inline WienerSolution wiener_taps_spectral(const WienerProblem& p) {
    detail::check_problem(p);
    const auto& d = p.shift.decomposition();
    const Index n = d.n();
    if (p.shift.kind() != ShiftKind::CanonicalE)
        throw ConditionsNotMet("spectral Wiener solve requires the canonical shift operator");
    if (!d.unitary_v)
        throw ConditionsNotMet("spectral Wiener solve requires a unitary Fourier basis");
    if (p.taps != n) throw ConditionsNotMet("spectral Wiener solve requires L = n");

    const CVector yf = d.v_inv * p.y.values;
    const RVector power = yf.cwiseAbs2();
    const double max_abs = yf.cwiseAbs().maxCoeff();
    for (Index i = 0; i < n; ++i)
        if (std::sqrt(power(i)) <= 1e-10 * max_abs)
            throw SpectralNull("spectral bin " + std::to_string(i) + " vanishes");

    const CVector r = crosscorr_vector(p.shift, p.x, p.y, n, /*use_spectral_fast_path=*/true);
    const CVector e = p.shift.eigenvalues();

    // t = W_λᴴ·r scaled by the per-bin power, with W_λᴴ(i,b) = λ_i^b.
    CVector t(n);
    for (Index i = 0; i < n; ++i) {
        cxd acc{0.0, 0.0};
        cxd pw{1.0, 0.0};
        for (Index b = 0; b < n; ++b) {
            acc += pw * r(b);
            pw *= e(i);
        }
        t(i) = acc / (static_cast<double>(n) * power(i));
    }
    // h = W_λ·t / n, with W_λ(a,i) = (λ*_i)^a.
    CVector h = CVector::Zero(n);
    for (Index i = 0; i < n; ++i) {
        cxd pw{1.0, 0.0};
        const cxd ci = std::conj(e(i));
        for (Index a = 0; a < n; ++a) {
            h(a) += pw * t(i);
            pw *= ci;
        }
    }
    h /= static_cast<double>(n);

    const CMatrix basis = build_shift_basis(p.shift, p.y, n);
    WienerSolution sol;
    sol.taps = FilterTaps{std::move(h), p.shift.kind()};
    sol.residual = (basis * sol.taps.h - p.x.values).norm();
    const double pmin = power.minCoeff();
    sol.condition = pmin > 0.0 ? power.maxCoeff() / pmin : std::numeric_limits<double>::infinity();
    sol.path = "spectral";
    return sol;
}

/// Relative reconstruction error ‖x − x̂‖/‖x‖.
inline double reconstruction_error(const GraphSignal& x, const GraphSignal& x_hat) {
    if (x.size() != x_hat.size()) throw DimensionMismatch("reconstruction_error: size mismatch");
    const double ref = x.values.norm();
    if (ref == 0.0) throw ZeroReference("reconstruction_error: reference signal is zero");
    return (x.values - x_hat.values).norm() / ref;
}

} // namespace gsx
