#pragma once

#include <cmath>
#include <memory>
#include <mutex>
#include <string>
#include <utility>

#include "gsx/decomposition.hpp"
#include "gsx/errors.hpp"
#include "gsx/polynomials.hpp"
#include "gsx/signal.hpp"
#include "gsx/types.hpp"

namespace gsx {

enum class ShiftKind { GenericPhi, CanonicalE, RawAdjacency, NormalizedAdjacency };

inline const char* to_string(ShiftKind k) {
    switch (k) {
        case ShiftKind::GenericPhi: return "generic_phi";
        case ShiftKind::CanonicalE: return "canonical_e";
        case ShiftKind::RawAdjacency: return "raw_adjacency";
        case ShiftKind::NormalizedAdjacency: return "normalized_adjacency";
    }
    return "unknown";
}

inline bool is_unit_modulus(ShiftKind k) {
    return k == ShiftKind::GenericPhi || k == ShiftKind::CanonicalE;
}

/// A graph shift operator sharing the eigenvectors of the adjacency matrix.
/// The phase kinds (GenericPhi, CanonicalE) replace every eigenvalue by a
/// unit-modulus e^{jφ_k}, so shifting never changes Fourier-domain energy.
/// RawAdjacency and NormalizedAdjacency are the comparison baselines.
///
/// The dense matrix realization is materialized lazily; shifting and
/// filtering go through the spectral representation. Handles are cheap to
/// copy and safe to share across threads.
class ShiftOperator {
public:
    ShiftKind kind() const { return impl_->kind; }
    Index n() const { return impl_->d->n(); }
    const EigenDecomposition& decomposition() const { return *impl_->d; }
    const DecompPtr& decomposition_ptr() const { return impl_->d; }

    /// Phase vector, populated for the unit-modulus kinds only.
    const RVector& phases() const { return impl_->phases; }

    /// Eigenvalues of the operator in canonical slot order.
    CVector eigenvalues() const {
        const Index n = impl_->d->n();
        CVector e(n);
        switch (impl_->kind) {
            case ShiftKind::GenericPhi:
            case ShiftKind::CanonicalE:
                for (Index i = 0; i < n; ++i) e(i) = std::polar(1.0, impl_->phases(i));
                break;
            case ShiftKind::RawAdjacency:
                e = impl_->d->lambda;
                break;
            case ShiftKind::NormalizedAdjacency:
                e = impl_->d->lambda / impl_->scale;
                break;
        }
        return e;
    }

    /// Dense matrix realization (cached after first use).
    const CMatrix& matrix() const {
        std::call_once(impl_->once, [this] {
            const auto& d = *impl_->d;
            if (impl_->kind == ShiftKind::RawAdjacency || impl_->kind == ShiftKind::NormalizedAdjacency) {
                impl_->cache = impl_->adjacency.cast<cxd>();
                if (impl_->kind == ShiftKind::NormalizedAdjacency) impl_->cache /= impl_->scale;
            } else {
                impl_->cache = d.v * eigenvalues().asDiagonal() * d.v_inv;
            }
        });
        return impl_->cache;
    }

    struct Impl {
        DecompPtr d;
        ShiftKind kind = ShiftKind::GenericPhi;
        RVector phases;       // unit-modulus kinds
        RMatrix adjacency;    // raw/normalized kinds
        double scale = 1.0;   // |λ_max| for NormalizedAdjacency
        mutable std::once_flag once;
        mutable CMatrix cache;
    };

    explicit ShiftOperator(std::shared_ptr<Impl> impl) : impl_(std::move(impl)) {}

private:
    std::shared_ptr<Impl> impl_;
};

namespace detail {

inline double wrap_phase(double phi) {
    double w = std::fmod(phi, kTwoPi);
    if (w < 0.0) w += kTwoPi;
    if (w >= kTwoPi) w = 0.0;
    return w;
}

inline void check_phases(const RVector& phases) {
    const Index n = phases.size();
    for (Index i = 0; i < n; ++i)
        if (!(phases(i) >= 0.0 && phases(i) < kTwoPi))
            throw PhaseOutOfRange("phase " + std::to_string(phases(i)) + " outside [0, 2π)");
    for (Index i = 0; i < n; ++i)
        for (Index j = i + 1; j < n; ++j) {
            double diff = std::abs(phases(i) - phases(j));
            diff = std::min(diff, kTwoPi - diff);
            if (diff <= 1e-8)
                throw DuplicatePhases("phases " + std::to_string(i) + " and " +
                                      std::to_string(j) + " coincide on the unit circle");
        }
}

} // namespace detail

/// Energy-preserving shift operator with caller-chosen distinct phases.
inline ShiftOperator make_a_phi(DecompPtr d, const RVector& phases) {
    if (!d) throw Error("make_a_phi: null decomposition");
    if (phases.size() != d->n())
        throw DimensionMismatch("make_a_phi: phase count " + std::to_string(phases.size()) +
                                " vs graph size " + std::to_string(d->n()));
    detail::check_phases(phases);
    auto impl = std::make_shared<ShiftOperator::Impl>();
    impl->d = std::move(d);
    impl->kind = ShiftKind::GenericPhi;
    impl->phases = phases;
    return ShiftOperator(std::move(impl));
}

/// The canonical shift operator: φ_k = φ_const − 2π·k/n over the canonical
/// eigenvalue order (0-based k), so consecutive eigenvalue ratios are
/// e^{-j2π/n} and the operator has period n.
inline ShiftOperator make_a_e(DecompPtr d, double phi_const = 0.0) {
    if (!d) throw Error("make_a_e: null decomposition");
    const Index n = d->n();
    RVector phases(n);
    for (Index k = 0; k < n; ++k)
        phases(k) = detail::wrap_phase(phi_const - kTwoPi * static_cast<double>(k) /
                                                      static_cast<double>(n));
    auto impl = std::make_shared<ShiftOperator::Impl>();
    impl->d = std::move(d);
    impl->kind = ShiftKind::CanonicalE;
    impl->phases = std::move(phases);
    return ShiftOperator(std::move(impl));
}

/// Adjacency matrix itself, viewed as a shift operator (baseline).
inline ShiftOperator raw_shift(DecompPtr d, const Graph& g) {
    if (!d) throw Error("raw_shift: null decomposition");
    auto impl = std::make_shared<ShiftOperator::Impl>();
    impl->d = std::move(d);
    impl->kind = ShiftKind::RawAdjacency;
    impl->adjacency = g.adjacency;
    return ShiftOperator(std::move(impl));
}

/// A/|λ_max| (baseline). Throws ZeroSpectrum when the spectrum vanishes.
inline ShiftOperator normalized_shift(DecompPtr d, const Graph& g) {
    if (!d) throw Error("normalized_shift: null decomposition");
    const double scale = d->lambda.cwiseAbs().maxCoeff();
    if (scale == 0.0) throw ZeroSpectrum("normalized_shift: largest eigenvalue is zero");
    auto impl = std::make_shared<ShiftOperator::Impl>();
    impl->d = std::move(d);
    impl->kind = ShiftKind::NormalizedAdjacency;
    impl->adjacency = g.adjacency;
    impl->scale = scale;
    return ShiftOperator(std::move(impl));
}

inline ShiftOperator normalized_shift(const Graph& g) {
    return normalized_shift(decompose_shared(g), g);
}

/// k-step shift, evaluated spectrally: V·diag(λ_s^k)·V⁻¹·x. Never forms
/// matrix powers.
inline GraphSignal apply_shift(const ShiftOperator& s, const GraphSignal& x, Index k) {
    if (k < 0) throw IndexOutOfRange("apply_shift: negative shift count");
    if (x.size() != s.n())
        throw DimensionMismatch("apply_shift: signal length " + std::to_string(x.size()) +
                                " vs graph size " + std::to_string(s.n()));
    if (x.domain != Domain::Vertex) throw WrongDomain("apply_shift expects a vertex-domain signal");
    const auto& d = s.decomposition();
    CVector u = d.v_inv * x.values;
    if (is_unit_modulus(s.kind())) {
        const RVector& phi = s.phases();
        for (Index i = 0; i < u.size(); ++i)
            u(i) *= std::polar(1.0, static_cast<double>(k) * phi(i));
    } else {
        const CVector e = s.eigenvalues();
        for (Index i = 0; i < u.size(); ++i) u(i) *= std::pow(e(i), static_cast<int>(k));
    }
    return vertex_signal(d.v * u);
}

/// The factorization A = A_h·A_φ = A_φ·A_h: Λ_h = Λ·Λ_φ⁻¹, so the adjacency
/// matrix is itself an LSI filter with respect to the shift operator.
struct FilterDecomposition {
    CVector lambda_h;
    ShiftOperator shift;

    CMatrix a_h_matrix() const {
        const auto& d = shift.decomposition();
        return d.v * lambda_h.asDiagonal() * d.v_inv;
    }
};

inline FilterDecomposition decompose_adjacency(const ShiftOperator& s) {
    if (!is_unit_modulus(s.kind()))
        throw ConditionsNotMet("decompose_adjacency requires a phase-kind shift operator");
    const CVector e = s.eigenvalues();
    CVector lambda_h(s.n());
    for (Index i = 0; i < s.n(); ++i)
        lambda_h(i) = s.decomposition().lambda(i) * std::conj(e(i));
    return FilterDecomposition{std::move(lambda_h), s};
}

/// Tap vector g with Σ_k g_k·A^k = A_φ, obtained from the Vandermonde
/// system on the adjacency spectrum. Requires distinct eigenvalues; raises
/// IllConditioned when the interpolation is numerically singular.
inline CVector a_phi_as_polynomial_of_a(const ShiftOperator& s) {
    if (!is_unit_modulus(s.kind()))
        throw ConditionsNotMet("a_phi_as_polynomial_of_a requires a phase-kind shift operator");
    return vandermonde_solve(s.decomposition().lambda, s.eigenvalues());
}

/// Minimal polynomial of the shift operator (from its spectrum).
inline MinimalPolynomial minimal_polynomial(const ShiftOperator& s) {
    return minimal_polynomial_from_eigenvalues(s.eigenvalues());
}

} // namespace gsx
