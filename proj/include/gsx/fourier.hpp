#pragma once

#include "gsx/decomposition.hpp"
#include "gsx/errors.hpp"
#include "gsx/signal.hpp"
#include "gsx/types.hpp"

namespace gsx {

namespace detail {

inline void check_size(const EigenDecomposition& d, const GraphSignal& x, const char* who) {
    if (x.size() != d.n())
        throw DimensionMismatch(std::string(who) + ": signal length " +
                                std::to_string(x.size()) + " vs graph size " +
                                std::to_string(d.n()));
}

} // namespace detail

/// Analysis transform x_F = V⁻¹x.
inline GraphSignal gft(const EigenDecomposition& d, const GraphSignal& x) {
    detail::check_size(d, x, "gft");
    if (x.domain != Domain::Vertex) throw WrongDomain("gft expects a vertex-domain signal");
    return fourier_signal(d.v_inv * x.values);
}

/// Synthesis transform x = V·x_F.
inline GraphSignal igft(const EigenDecomposition& d, const GraphSignal& x_f) {
    detail::check_size(d, x_f, "igft");
    if (x_f.domain != Domain::Fourier) throw WrongDomain("igft expects a Fourier-domain signal");
    return vertex_signal(d.v * x_f.values);
}

/// Dual analysis transform x̃_F = Vᴴx. Together with gft it preserves inner
/// products on non-unitary bases: ⟨x, y⟩ = ⟨x̃_F, y_F⟩.
inline GraphSignal dual_gft(const EigenDecomposition& d, const GraphSignal& x) {
    detail::check_size(d, x, "dual_gft");
    return fourier_signal(d.v.adjoint() * x.values);
}

/// Inverse of the dual transform, x = V^{-H}·x̃_F = (V⁻¹)ᴴ·x̃_F.
inline GraphSignal dual_igft(const EigenDecomposition& d, const GraphSignal& x_f) {
    detail::check_size(d, x_f, "dual_igft");
    return vertex_signal(d.v_inv.adjoint() * x_f.values);
}

/// Energy bounds of the analysis transform: alpha·‖x‖² ≤ ‖x_F‖² ≤ beta·‖x‖².
/// alpha/beta are the extreme squared singular values of V⁻¹ (the attainable
/// pair). alpha_reciprocal = 1/beta is the loose companion bound often
/// quoted with beta; it coincides with alpha only for unitary V.
struct FrameBounds {
    double alpha;
    double beta;
    double alpha_reciprocal;
};

inline FrameBounds frame_bounds(const EigenDecomposition& d) {
    Eigen::JacobiSVD<CMatrix> svd(d.v_inv);
    const auto& s = svd.singularValues();
    const double smax = s(0);
    const double smin = s(s.size() - 1);
    FrameBounds fb;
    fb.beta = smax * smax;
    fb.alpha = smin * smin;
    fb.alpha_reciprocal = 1.0 / fb.beta;
    return fb;
}

} // namespace gsx
