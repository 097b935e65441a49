#include "rodwave/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "rodwave/hyperbolic.hpp"
#include "rodwave/oracle.hpp"

namespace rodwave {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double QuadratureConfig::q_max(double t) const {
    // e^{-q t} < 1e-10 beyond 23.03/t; without damping fall back to the
    // algebraic-decay cap.
    if (t > 0.0)
        return std::min(q_max_cap, 23.03 / t);
    return q_max_cap;
}

KernelSpec make_kernel_spec(KernelKind kind, const ConstitutiveModel& model,
                            double kappa, std::shared_ptr<const ModeSet> modes,
                            double tol) {
    if (!(kappa > 0.0))
        throw DomainError("make_kernel_spec: kappa must be positive");
    if (!modes)
        throw DomainError("make_kernel_spec: missing mode set");
    if (!(modes->model == model) || modes->kappa != kappa)
        throw DomainError("make_kernel_spec: mode set was built for a "
                          "different (model, kappa)");
    if (!(tol > 0.0))
        throw DomainError("make_kernel_spec: tol must be positive");

    KernelSpec spec;
    spec.kind = kind;
    spec.model = model;
    spec.kappa = kappa;
    spec.modes = std::move(modes);
    spec.tol = tol;
    spec.cut_side = kind == KernelKind::DisplacementP ? CutSide::Lower
                                                      : CutSide::Upper;
    return spec;
}

// ======================================================================
// branch-cut integrand
// ======================================================================

namespace {

// Scaled quotient at s = -q on the chosen cut side.  With M = M(-q +- i0)
// the denominator is f(-q) = q M sinh(kappa q M) + kappa cosh(kappa q M);
// the numerator carries sinh (displacement) or cosh (stress) of the
// x-shortened argument.  Assembled as (num_scaled / den_scaled) e^{(x-1) r},
// r = kappa q |Re M|, so the quotient never overflows on [0,1].
ComplexS cut_ratio(const KernelSpec& spec, double x, double q) {
    const ComplexS M = spec.model.M_on_cut(q, spec.cut_side);
    const ComplexS y = q * M;
    const ScaledHyp hx = scaled_sinh_cosh(spec.kappa * x * y);
    const ScaledHyp h1 = scaled_sinh_cosh(spec.kappa * y);
    const ComplexS den = y * h1.sinh_v + spec.kappa * h1.cosh_v;
    if (!(std::abs(den) > 1e-300))
        throw EvaluationError("branch-cut integrand: denominator vanished at q = " +
                              std::to_string(q));
    const ComplexS num = spec.kind == KernelKind::DisplacementP
                             ? M * hx.sinh_v
                             : hx.cosh_v;
    const ComplexS ratio = num / den * std::exp(hx.exponent - h1.exponent);
    if (!std::isfinite(ratio.real()) || !std::isfinite(ratio.imag()))
        throw EvaluationError("branch-cut integrand: non-finite quotient at q = " +
                              std::to_string(q));
    return ratio;
}

void check_cut_args(const KernelSpec& spec, KernelKind expected, double x,
                    double q, const char* who) {
    if (spec.kind != expected)
        throw DomainError(std::string(who) + ": spec built for the other kernel");
    if (!(q > 0.0))
        throw DomainError(std::string(who) + ": q must be positive");
    if (!(x >= 0.0 && x <= 1.0))
        throw DomainError(std::string(who) + ": x must lie in [0,1]");
}

} // namespace

double branch_cut_integrand_P(const KernelSpec& spec, double x, double q) {
    check_cut_args(spec, KernelKind::DisplacementP, x, q, "branch_cut_integrand_P");
    return cut_ratio(spec, x, q).imag() / q;
}

double branch_cut_integrand_sigma(const KernelSpec& spec, double x, double q) {
    check_cut_args(spec, KernelKind::StressSigmaH, x, q, "branch_cut_integrand_sigma");
    return cut_ratio(spec, x, q).imag() / q;
}

// ======================================================================
// panel driver and residue series
// ======================================================================

namespace {

struct CutIntegral {
    double value = 0;
    double error = 0;
};

template <class Bare>
CutIntegral integrate_cut(const QuadratureConfig& quad, double t, Bare&& bare) {
    const double qmax = quad.q_max(t);
    const double u = t > 0.0 ? std::max(1.0, 1.0 / t) : 1.0;

    std::vector<double> bp{0.0};
    for (double b : quad.q_split) {
        const double q = b * u;
        if (q < qmax) bp.push_back(q);
    }
    // geometric padding out to the truncation point keeps Gauss-Kronrod
    // panels within one decade each
    while (bp.back() > 0.0 && bp.back() * 10.0 < qmax)
        bp.push_back(bp.back() * 10.0);
    bp.push_back(qmax);

    using gk = boost::math::quadrature::gauss_kronrod<double, 15>;
    const auto damped = [&](double q) { return bare(q) * std::exp(-q * t); };

    CutIntegral out;
    for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
        double err = 0;
        out.value += gk::integrate(damped, bp[i], bp[i + 1], 12, quad.rel_tol, &err);
        out.error += err;
    }
    // truncation remainder: exponential damping beyond qmax for t > 0,
    // otherwise the 1/q^2 algebraic decay of the bare factor
    const double edge = std::abs(bare(qmax));
    out.error += t > 0.0 ? edge * std::exp(-qmax * t) / t : edge * qmax;
    return out;
}

struct ResidueSum {
    double value = 0;
    double tail_error = 0;
    unsigned flags = 0;
};

// Twice the real part of the upper-half-plane residues.  Unresolved modes
// are not summed; their tail-envelope bound goes into the error budget.
ResidueSum sum_residues(const KernelSpec& spec, double x, double t) {
    const ModeSet& ms = *spec.modes;
    const ComplexS i_unit(0.0, 1.0);
    ResidueSum out;
    for (const Mode& m : ms.modes) {
        const double n_eff = std::max(1, m.n);
        if (!m.resolved) {
            out.flags |= kernel_flags::kUnresolved;
            out.tail_error += ms.tail.K * std::exp(ms.tail.a * t) / (n_eff * n_eff);
            continue;
        }
        ComplexS res;
        if (spec.kind == KernelKind::DisplacementP) {
            res = i_unit * m.w * std::sin(spec.kappa * m.w * x) *
                  std::exp(m.s * t) / (m.s * m.s * m.dsM * m.denom);
        } else {
            res = -i_unit * spec.kappa * std::cos(spec.kappa * m.w * x) *
                  std::exp(m.s * t) / (m.s * m.dsM * m.denom);
        }
        out.value += 2.0 * res.real();
    }
    out.tail_error += ms.tail.K * std::exp(ms.tail.a * t) / ms.n_max();
    return out;
}

} // namespace

// ======================================================================
// kernel evaluation
// ======================================================================

KernelValue eval_P(const KernelSpec& spec, double x, double t) {
    if (spec.kind != KernelKind::DisplacementP)
        throw DomainError("eval_P: spec built for the stress kernel");
    if (!(x >= 0.0 && x <= 1.0))
        throw DomainError("eval_P: x must lie in [0,1]");
    if (!std::isfinite(t))
        throw DomainError("eval_P: t must be finite");
    if (t < 0.0)
        return {0.0, 0.0, 0u};

    const CutIntegral cut = integrate_cut(
        spec.quad, t, [&](double q) { return branch_cut_integrand_P(spec, x, q); });
    const ResidueSum res = sum_residues(spec, x, t);

    KernelValue out;
    out.value = cut.value / kPi + res.value;
    out.error_estimate = cut.error / kPi + res.tail_error;
    out.flags = res.flags;
    if (out.error_estimate > spec.tol)
        out.flags |= kernel_flags::kAccuracy;
    return out;
}

KernelValue eval_sigma_H(const KernelSpec& spec, double x, double t) {
    if (spec.kind != KernelKind::StressSigmaH)
        throw DomainError("eval_sigma_H: spec built for the displacement kernel");
    if (!(x >= 0.0 && x <= 1.0))
        throw DomainError("eval_sigma_H: x must lie in [0,1]");
    if (!std::isfinite(t))
        throw DomainError("eval_sigma_H: t must be finite");
    if (t < 0.0)
        return {0.0, 0.0, 0u};

    const CutIntegral cut = integrate_cut(
        spec.quad, t,
        [&](double q) { return branch_cut_integrand_sigma(spec, x, q); });
    const ResidueSum res = sum_residues(spec, x, t);

    KernelValue out;
    out.value = 1.0 + spec.kappa * cut.value / kPi + res.value;
    out.error_estimate = spec.kappa * cut.error / kPi + res.tail_error;
    out.flags = res.flags;
    if (out.error_estimate > spec.tol)
        out.flags |= kernel_flags::kAccuracy;
    return out;
}

// ======================================================================
// elastic closed forms
// ======================================================================

SeriesValue elastic_P(const std::vector<double>& freqs, double kappa,
                      double x, double t) {
    if (t < 0.0)
        return {0.0, 0.0};
    SeriesValue out;
    double last_amp = 0;
    for (double w : freqs) {
        const double D = (1.0 + kappa * kappa) * std::sin(kappa * w) +
                         kappa * w * std::cos(kappa * w);
        out.value += 2.0 * std::sin(kappa * w * x) * std::sin(w * t) / (w * D);
        last_amp = 2.0 / (w * std::abs(D));
    }
    // term amplitudes settle onto c/n^2; the tail beyond N is ~ c_N * N
    out.tail_bound = last_amp * static_cast<double>(freqs.size());
    return out;
}

SeriesValue elastic_sigma_H(const std::vector<double>& freqs, double kappa,
                            double x, double t) {
    if (t < 0.0)
        return {0.0, 0.0};
    SeriesValue out;
    out.value = 1.0; // step carried by the s = 0 pole of the transform
    double last_amp = 0;
    for (double w : freqs) {
        const double D = (1.0 + kappa * kappa) * std::sin(kappa * w) +
                         kappa * w * std::cos(kappa * w);
        out.value -= 2.0 * kappa * std::cos(kappa * w * x) * std::cos(w * t) / (w * D);
        last_amp = 2.0 * kappa / (w * std::abs(D));
    }
    out.tail_bound = last_amp * static_cast<double>(freqs.size());
    return out;
}

SeriesValue elastic_P(double kappa, double x, double t, int n_terms) {
    return elastic_P(find_frequencies(kappa, n_terms), kappa, x, t);
}

SeriesValue elastic_sigma_H(double kappa, double x, double t, int n_terms) {
    return elastic_sigma_H(find_frequencies(kappa, n_terms), kappa, x, t);
}

// ======================================================================
// cut-side calibration
// ======================================================================

CutSide calibrate_cut_side(KernelKind kind, const ConstitutiveModel& model,
                           double kappa, std::shared_ptr<const ModeSet> modes,
                           std::string* log) {
    constexpr double t_probe = 0.1;
    constexpr double xs[] = {0.25, 0.5, 1.0};

    OracleOptions opt;
    opt.modes = modes.get();
    opt.tol = 1e-5;
    opt.t_max = t_probe;

    double dev[2] = {0.0, 0.0};
    double cut_mag = 0.0;
    for (int side = 0; side < 2; ++side) {
        KernelSpec spec = make_kernel_spec(kind, model, kappa, modes, 1e-6);
        spec.cut_side = side == 0 ? CutSide::Lower : CutSide::Upper;
        for (double x : xs) {
            const bool stress = kind == KernelKind::StressSigmaH;
            const double got = stress ? eval_sigma_H(spec, x, t_probe).value
                                      : eval_P(spec, x, t_probe).value;
            const double want = stress
                                    ? oracle_sigma_H(model, kappa, x, t_probe, opt).value
                                    : oracle_P(model, kappa, x, t_probe, opt).value;
            dev[side] = std::max(dev[side], std::abs(got - want));
            const CutIntegral ci = integrate_cut(spec.quad, t_probe, [&](double q) {
                return stress ? branch_cut_integrand_sigma(spec, x, q)
                              : branch_cut_integrand_P(spec, x, q);
            });
            cut_mag = std::max(cut_mag, std::abs(ci.value));
        }
    }

    const CutSide fallback = kind == KernelKind::DisplacementP ? CutSide::Lower
                                                               : CutSide::Upper;
    const char* name = kind == KernelKind::DisplacementP ? "P" : "sigma_H";
    if (cut_mag < 1e-12) {
        // no cut discontinuity (elastic-like material): orientation moot
        if (log)
            *log += std::string("cut side for ") + name +
                    ": default " + to_string(fallback) + " (cut vanishes)\n";
        return fallback;
    }
    const CutSide winner = dev[0] <= dev[1] ? CutSide::Lower : CutSide::Upper;
    const double best = std::min(dev[0], dev[1]);
    const double worst = std::max(dev[0], dev[1]);
    if (best > 1e-3)
        throw EvaluationError(std::string("cut-side calibration failed for ") +
                              name + ": best deviation " + std::to_string(best));
    if (log) {
        char line[160];
        std::snprintf(line, sizeof line,
                      "cut side for %s: %s (dev %.3e vs %.3e)\n", name,
                      to_string(winner), best, worst);
        *log += line;
    }
    return winner;
}

} // namespace rodwave
