#pragma once

#include <string>
#include <utility>
#include <vector>

#include "rodwave/kernels.hpp"

namespace rodwave {

enum class ForcingKind { Heaviside, Impulse, Sinusoid, PowerStep, Tabulated };

// Tip-force signal F(t), causal by construction (F = 0 for t < 0).
//
//   heaviside   F(t) = H(t)
//   impulse     F = delta; has no pointwise values, convolutions collapse
//   sinusoid    F(t) = A sin(omega t) for t >= 0
//   power_step  F(t) = t^{alpha-1}/Gamma(alpha), transform s^{-alpha},
//               alpha in (0,1): integrable ramp-up with a t -> 0 singularity
//   tabulated   linear interpolation of (t, F) samples; the grid must be
//               strictly increasing and start at t = 0; F is held constant
//               beyond the last sample
class ForcingSignal {
public:
    static ForcingSignal heaviside();
    static ForcingSignal impulse();
    static ForcingSignal sinusoid(double omega, double amplitude);
    static ForcingSignal power_step(double alpha);
    static ForcingSignal tabulated(std::vector<std::pair<double, double>> samples);
    static ForcingSignal tabulated_from_csv(const std::string& path);

    ForcingKind kind() const { return kind_; }
    double alpha() const { return alpha_; }
    double omega() const { return omega_; }
    double amplitude() const { return amplitude_; }
    const std::vector<std::pair<double, double>>& samples() const { return samples_; }
    std::string describe() const;

private:
    ForcingSignal() = default;
    ForcingKind kind_ = ForcingKind::Heaviside;
    double alpha_ = 0;
    double omega_ = 0;
    double amplitude_ = 0;
    std::vector<std::pair<double, double>> samples_;
};

// Parses a forcing description:
//   "heaviside" | "impulse" | "sinusoid omega=<v> [amplitude=<v>]"
//   | "power_step alpha=<v>" | "tabulated path=<file.csv>"
// The sinusoid amplitude defaults to 1.  The CSV file holds "t,F" rows
// (comma or whitespace separated); '#' lines are comments and one leading
// header row is tolerated.  Throws ConfigError on grammar or validity
// problems.
ForcingSignal parse_forcing(const std::string& text);

// Pointwise value of the signal; 0 for t < 0.  DomainError for the impulse,
// which has no pointwise values.
double eval_F(const ForcingSignal& signal, double t);

// Gauss rule for integrals with the power endpoint weight:
//   integral_0^1 u^{alpha-1} h(u) du  =  sum_i weight_i h(node_i)
// built by the Golub-Welsch eigensolve of the Jacobi recurrence for the
// weight (1+x)^{alpha-1} on [-1,1], mapped onto [0,1].
struct QuadRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
QuadRule jacobi_rule(int n, double alpha);

// Displacement under the given forcing: u(x,t) = integral_0^t F(tau) P(x,t-tau) dtau.
// The impulse collapses to u = P; the Heaviside specializes to the running
// integral of P.  Quadrature is composite Simpson with halving until the
// relative change drops below 1e-4 (samples reused between levels); a
// power-step start adds a weighted Gauss-Jacobi panel for the t^{alpha-1}
// endpoint singularity.  Kernel error budgets propagate through the
// quadrature weights into the returned estimate.
KernelValue compose_u(const KernelSpec& spec, const ForcingSignal& signal,
                      double x, double t);

// Stress under the given forcing.  Exact for the Heaviside (sigma = sigma_H);
// the impulse is rejected (distributional stress).  Any other signal is
// composed as sigma = d/dt (F * sigma_H) by a central finite difference of
// the convolved signal (step 1e-3), with the kFiniteDifference flag set and
// the differentiation amplification folded into the error estimate.
KernelValue compose_sigma(const KernelSpec& spec, const ForcingSignal& signal,
                          double x, double t);

} // namespace rodwave
