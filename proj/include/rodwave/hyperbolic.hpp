#pragma once

#include <cmath>
#include <complex>

namespace rodwave {

// Hyperbolic sine and cosine of a complex argument in scaled form,
//
//     sinh(z) = sinh_v * exp(exponent),   cosh(z) = cosh_v * exp(exponent),
//
// with exponent = |Re z|, so that |sinh_v|, |cosh_v| <= 1.  Quotients of
// hyperbolic expressions with arguments of comparable real part can then be
// assembled without ever forming exp(|Re z|), which for pole/quadrature
// arguments like kappa*s*M(s) routinely exceeds the double range.
struct ScaledHyp {
    std::complex<double> sinh_v;
    std::complex<double> cosh_v;
    double exponent;
};

inline ScaledHyp scaled_sinh_cosh(std::complex<double> z) {
    const double m = std::abs(z.real());
    if (m < 20.0) {
        // No overflow possible; scale the directly computed values.
        const double e = std::exp(-m);
        return {std::sinh(z) * e, std::cosh(z) * e, m};
    }
    // sinh(z) e^{-|Re z|} = (e^{i Im z} - e^{-2|Re z|} e^{-i Im z})/2 for
    // Re z >= 0, and the mirrored combination for Re z < 0.  The discarded
    // term is below 4e-18 of the kept one for |Re z| >= 20.
    const std::complex<double> eip = std::polar(1.0, z.imag());
    const double d = std::exp(-2.0 * m);
    if (z.real() >= 0.0) {
        return {0.5 * (eip - d * std::conj(eip)), 0.5 * (eip + d * std::conj(eip)), m};
    }
    return {0.5 * (d * eip - std::conj(eip)), 0.5 * (d * eip + std::conj(eip)), m};
}

} // namespace rodwave
