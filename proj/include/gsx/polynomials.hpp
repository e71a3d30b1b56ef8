#pragma once

#include <cmath>
#include <vector>

#include "gsx/decomposition.hpp"
#include "gsx/errors.hpp"
#include "gsx/types.hpp"

namespace gsx {

namespace detail {

// Minimal complex arithmetic over __float128. The Newton solve and its
// residual check run in this type; monomial-basis coefficients can grow
// large enough that double loses the residual entirely. Magnitudes are
// compared squared, so no libquadmath calls are needed.
struct QuadComplex {
    __float128 re = 0;
    __float128 im = 0;

    QuadComplex() = default;
    QuadComplex(__float128 r, __float128 i) : re(r), im(i) {}
    explicit QuadComplex(cxd z) : re(z.real()), im(z.imag()) {}

    cxd to_cxd() const { return cxd{static_cast<double>(re), static_cast<double>(im)}; }
};

inline QuadComplex operator+(QuadComplex a, QuadComplex b) { return {a.re + b.re, a.im + b.im}; }
inline QuadComplex operator-(QuadComplex a, QuadComplex b) { return {a.re - b.re, a.im - b.im}; }
inline QuadComplex operator*(QuadComplex a, QuadComplex b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline QuadComplex operator/(QuadComplex a, QuadComplex b) {
    const __float128 d = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}
inline double abs2(QuadComplex a) { return static_cast<double>(a.re * a.re + a.im * a.im); }

inline cxd horner(const CVector& coeffs, cxd x) {
    cxd acc{0.0, 0.0};
    for (Index k = coeffs.size() - 1; k >= 0; --k) acc = acc * x + coeffs(k);
    return acc;
}

} // namespace detail

/// Solves Σ_k g_k·nodes_i^k = rhs_i for the coefficient vector g via Newton
/// divided differences expanded to monomial coefficients (O(m²), no
/// explicit Vandermonde inverse), carried out in extended precision. The
/// extended-precision residual is checked against 1e-8·‖rhs‖∞; failure
/// raises IllConditioned.
inline CVector vandermonde_solve(const CVector& nodes, const CVector& rhs) {
    const Index m = nodes.size();
    if (m == 0 || m != rhs.size())
        throw DimensionMismatch("vandermonde_solve: node/rhs size mismatch");

    const double max_mod = nodes.cwiseAbs().maxCoeff();
    const double gap_tol = kDistinctTolFactor * max_mod;
    for (Index i = 0; i < m; ++i)
        for (Index j = i + 1; j < m; ++j)
            if (std::abs(nodes(i) - nodes(j)) <= gap_tol)
                throw DuplicateNodes("interpolation nodes " + std::to_string(i) + " and " +
                                     std::to_string(j) + " coincide");

    using detail::QuadComplex;
    std::vector<QuadComplex> z(static_cast<std::size_t>(m)), c(static_cast<std::size_t>(m));
    for (Index i = 0; i < m; ++i) {
        z[static_cast<std::size_t>(i)] = QuadComplex(nodes(i));
        c[static_cast<std::size_t>(i)] = QuadComplex(rhs(i));
    }
    // divided differences
    for (Index j = 1; j < m; ++j)
        for (Index i = m - 1; i >= j; --i)
            c[static_cast<std::size_t>(i)] =
                (c[static_cast<std::size_t>(i)] - c[static_cast<std::size_t>(i - 1)]) /
                (z[static_cast<std::size_t>(i)] - z[static_cast<std::size_t>(i - j)]);
    // expand the Newton form: g(x) <- g(x)·(x − z_k) + c_k, top node first
    std::vector<QuadComplex> g(static_cast<std::size_t>(m));
    g[0] = c[static_cast<std::size_t>(m - 1)];
    Index degree = 0;
    for (Index k = m - 2; k >= 0; --k) {
        for (Index i = degree + 1; i >= 1; --i)
            g[static_cast<std::size_t>(i)] = g[static_cast<std::size_t>(i - 1)] -
                                             z[static_cast<std::size_t>(k)] *
                                                 g[static_cast<std::size_t>(i)];
        g[0] = c[static_cast<std::size_t>(k)] - z[static_cast<std::size_t>(k)] * g[0];
        ++degree;
    }

    const double scale = rhs.cwiseAbs().maxCoeff();
    double worst2 = 0.0;
    for (Index i = 0; i < m; ++i) {
        QuadComplex acc{0, 0};
        for (Index k = m - 1; k >= 0; --k)
            acc = acc * z[static_cast<std::size_t>(i)] + g[static_cast<std::size_t>(k)];
        const QuadComplex res = QuadComplex(rhs(i)) - acc;
        worst2 = std::max(worst2, detail::abs2(res));
    }
    if (worst2 > (1e-8 * scale) * (1e-8 * scale))
        throw IllConditioned("vandermonde_solve residual " + std::to_string(std::sqrt(worst2)) +
                             " exceeds 1e-8 relative");

    CVector out(m);
    for (Index k = 0; k < m; ++k) out(k) = g[static_cast<std::size_t>(k)].to_cxd();
    return out;
}

/// Monic annihilating polynomial of minimal degree, computed from the
/// spectrum: degree = number of distinct eigenvalues, coefficients from the
/// Vandermonde system with alpha[degree] = 1.
struct MinimalPolynomial {
    Index degree;
    CVector alpha; ///< degree+1 coefficients, lowest power first, alpha[degree] = 1
};

inline MinimalPolynomial minimal_polynomial_from_eigenvalues(const CVector& lambda) {
    if (lambda.size() == 0) throw DimensionMismatch("empty spectrum");
    const double tol = kDistinctTolFactor * lambda.cwiseAbs().maxCoeff();
    std::vector<cxd> reps;
    for (Index i = 0; i < lambda.size(); ++i) {
        bool seen = false;
        for (const cxd& r : reps)
            if (std::abs(lambda(i) - r) <= tol) {
                seen = true;
                break;
            }
        if (!seen) reps.push_back(lambda(i));
    }
    const Index degree = static_cast<Index>(reps.size());
    CVector nodes(degree), rhs(degree);
    for (Index i = 0; i < degree; ++i) {
        nodes(i) = reps[static_cast<std::size_t>(i)];
        rhs(i) = -std::pow(nodes(i), static_cast<int>(degree));
    }
    MinimalPolynomial mp;
    mp.degree = degree;
    mp.alpha.resize(degree + 1);
    if (degree == 1) {
        mp.alpha(0) = -nodes(0);
    } else {
        mp.alpha.head(degree) = vandermonde_solve(nodes, rhs);
    }
    mp.alpha(degree) = cxd{1.0, 0.0};
    return mp;
}

inline MinimalPolynomial minimal_polynomial(const EigenDecomposition& d) {
    return minimal_polynomial_from_eigenvalues(d.lambda);
}

} // namespace gsx
