#pragma once

#include <functional>

#include "rodwave/modes.hpp"

namespace rodwave {

// Parameters of the Fourier-series inversion on a vertical line.  With the
// ladder s_k = sigma0 + i k pi / period_T, results are trustworthy for
// t in (0, period_T / 2); everything to the right of sigma0 must be regular.
struct BromwichConfig {
    double sigma0 = 0;
    double period_T = 0;
    int n_terms = 8192;
    int euler_m = 32;
};

// Chooses the inversion line for a horizon t_max.  The abscissa sits at
// 2.63 / t_max above max(Re s_n, 0) when a mode set pins the poles, and at
// the bare margin otherwise (sound whenever all singularities lie in
// Re s <= 0, as they do for the passive rod kernels).  The margin scales
// so that sigma0 * period_T stays near 10.5 for every horizon: the alias
// images of the periodized inversion (period 2T) are then damped to
// ~e^{-21} while the roundoff amplification e^{sigma0 t} never exceeds
// e^{2.63}.  A fixed "+1" margin would overflow the amplification at
// t ~ 200 and under-damp aliasing below t ~ 1.
BromwichConfig make_bromwich_config(const ModeSet* modes, double t_max,
                                    int n_terms = 8192, int euler_m = 32);

struct InversionResult {
    double value = 0;
    double error_estimate = 0;
};

using LaplaceTransform = std::function<ComplexS(ComplexS)>;

// Inverts a Laplace transform at time t by the trapezoidal Bromwich sum
//   e^{sigma0 t}/T [ F(sigma0)/2 + sum_k Re( F(sigma0 + ik pi/T) e^{ik pi t/T} ) ]
// with Euler (binomial) acceleration of the oscillating tail.  The error
// estimate combines the spread between acceleration orders m and m+2 with
// the accumulated roundoff of the ladder sum.
//
// Throws DomainError unless 0 < t < period_T/2; AccuracyError when the
// estimate exceeds 10x the requested tolerance (the oracle refuses to hand
// out numbers it cannot back).
InversionResult invert(const LaplaceTransform& transform,
                       const BromwichConfig& cfg, double t, double tol);

// Laplace-domain solution kernels, assembled in overflow-safe scaled form:
//   P_hat     = M(s) sinh(kappa x s M) / (s [sM sinh(kappa sM) + kappa cosh(kappa sM)])
//   sigma_hat = kappa cosh(kappa x s M) / (s [ ... same denominator ... ])
// The hyperbolic ratio is evaluated as (scaled num / scaled den) e^{(x-1)r},
// r = |Re(kappa s M)|, which cannot overflow for x in [0,1].
ComplexS P_hat(const ConstitutiveModel& model, double kappa, double x, ComplexS s);
ComplexS sigma_H_hat(const ConstitutiveModel& model, double kappa, double x, ComplexS s);

struct OracleOptions {
    const ModeSet* modes = nullptr; // pins sigma0 under the pole cloud
    double tol = 1e-8;
    int n_terms = 8192;
    int euler_m = 32;
    double t_max = 0;               // horizon; 0 means "the requested t"
};

// Independent reference values for the time-domain kernels: a straight
// numerical inversion of P_hat / sigma_H_hat, sharing no code with the
// residue-plus-cut evaluator beyond the constitutive quotient itself.
InversionResult oracle_P(const ConstitutiveModel& model, double kappa,
                         double x, double t, const OracleOptions& opt = {});
InversionResult oracle_sigma_H(const ConstitutiveModel& model, double kappa,
                               double x, double t, const OracleOptions& opt = {});

} // namespace rodwave
