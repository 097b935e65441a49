#pragma once

#include <memory>
#include <string>
#include <vector>

#include "rodwave/modes.hpp"

namespace rodwave {

enum class KernelKind { DisplacementP, StressSigmaH };

// Panel layout for the branch-cut integral over q in (0, infinity).
//
// The integrand is damped by e^{-q t}, so panel breakpoints scale with
// max(1, 1/t) and the integral is truncated once e^{-q t} < 1e-10
// (q_max = 23.03/t).  At t = 0 the damping is gone but the integrand itself
// decays like 1/q^2, so a fixed algebraic truncation at q_max_cap applies.
struct QuadratureConfig {
    std::vector<double> q_split{1e-3, 1.0, 10.0, 100.0};
    double rel_tol = 1e-9;   // per-panel Gauss-Kronrod target, in (0, 1e-3]
    double q_max_cap = 1e6;

    double q_max(double t) const;
};

namespace kernel_flags {
constexpr unsigned kAccuracy = 1u;         // error estimate exceeded spec.tol
constexpr unsigned kUnresolved = 2u;       // unresolved modes bounded, not summed
constexpr unsigned kFiniteDifference = 4u; // value came from a FD composition
}

// Every kernel evaluation reports a value, an error budget (quadrature
// estimate + truncation + residue tail), and quality flags.  A sweep never
// aborts on a soft accuracy miss; callers inspect the flags.
struct KernelValue {
    double value = 0;
    double error_estimate = 0;
    unsigned flags = 0;
};

// Immutable evaluation recipe for one kernel.  The cut side fixes which
// limit of M onto the negative real axis feeds the branch-cut integrand;
// the stored integral representations use the lower side for the
// displacement kernel and the upper side for the stress kernel, and
// calibrate_cut_side verifies the orientation against the oracle.
struct KernelSpec {
    KernelKind kind = KernelKind::DisplacementP;
    ConstitutiveModel model;
    double kappa = 0;
    std::shared_ptr<const ModeSet> modes;
    QuadratureConfig quad;
    double tol = 1e-6;
    CutSide cut_side = CutSide::Lower;
};

// Validates that the mode set was built for the same (model, kappa) and
// applies the per-kind default cut side.
KernelSpec make_kernel_spec(KernelKind kind, const ConstitutiveModel& model,
                            double kappa, std::shared_ptr<const ModeSet> modes,
                            double tol);

// t-independent factor of the branch-cut integrand at s = -q on the
// KernelSpec's cut side:
// Im( M sinh(kappa x q M) / (q M sinh(kappa q M) + kappa cosh(kappa q M)) ) / q
// for the displacement kernel, and Im( cosh(kappa x q M) / (same) ) / q for
// the stress kernel (the kappa/pi prefactor and the e^{-q t} damping are
// applied by the panel driver).  Identically zero when M is real on the cut.
double branch_cut_integrand_P(const KernelSpec& spec, double x, double q);
double branch_cut_integrand_sigma(const KernelSpec& spec, double x, double q);

// Displacement kernel P(x,t): (1/pi) cut integral + twice the real part of
// the residue series; exactly 0 for t < 0.  Unresolved modes contribute
// their tail envelope to the error budget instead of a value.
KernelValue eval_P(const KernelSpec& spec, double x, double t);

// Step-load stress kernel sigma_H(x,t): the s = 0 residue contributes the
// unit step, then (kappa/pi) cut integral + residue series; 0 for t < 0.
KernelValue eval_sigma_H(const KernelSpec& spec, double x, double t);

struct SeriesValue {
    double value = 0;
    double tail_bound = 0;
};

// Closed-form kernels of the purely elastic rod (M identically 1): the cut
// contribution vanishes and the poles sit exactly at +-i w_n, leaving plain
// trigonometric series.  The overloads taking a frequency table avoid
// re-solving the resonance equation inside dense sweeps.
//
//   P^el(x,t)       = 2 sum sin(kappa w_n x) sin(w_n t) / (w_n D_n)
//   sigma_H^el(x,t) = H(t) - 2 kappa sum cos(kappa w_n x) cos(w_n t) / (w_n D_n)
//
// with D_n = (1+kappa^2) sin(kappa w_n) + kappa w_n cos(kappa w_n).  The
// stress series alone sums to -1 at t = 0 (it absorbs the negative of the
// step); the physical response carries the Heaviside step from the s = 0
// pole, so the step is part of the closed form here.  Both return 0 for
// t < 0.
SeriesValue elastic_P(double kappa, double x, double t, int n_terms);
SeriesValue elastic_sigma_H(double kappa, double x, double t, int n_terms);
SeriesValue elastic_P(const std::vector<double>& freqs, double kappa,
                      double x, double t);
SeriesValue elastic_sigma_H(const std::vector<double>& freqs, double kappa,
                            double x, double t);

// Empirical orientation check of the cut limit: evaluates the kernel on
// both sides at t = 0.1, x in {0.25, 0.5, 1.0} and returns the side agreeing
// with the oracle inversion.  When the cut contribution vanishes (real M on
// the cut) both sides tie and the stored default wins.  Appends a summary
// line to *log when given; throws EvaluationError if neither side matches.
CutSide calibrate_cut_side(KernelKind kind, const ConstitutiveModel& model,
                           double kappa, std::shared_ptr<const ModeSet> modes,
                           std::string* log = nullptr);

} // namespace rodwave
