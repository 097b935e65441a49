#pragma once

#include <vector>

#include "rodwave/constitutive.hpp"

namespace rodwave {

// One vibration mode of the rod-plus-tip-mass system: a conjugate pole pair
// of the solution kernels, represented by its upper-half-plane member.
//
//   w     positive root of tan(kappa w) = kappa / w (resonance frequency of
//         the elastic limit), bracket n: (n pi/kappa, (n+1/2) pi/kappa)
//   s     pole, solving s M(s) = i w in the closed upper half-plane
//   dsM   d(sM)/ds at the pole
//   denom (1 + kappa^2) sin(kappa w) + kappa w cos(kappa w), the real factor
//         shared by all residue expressions
//   residual  |f(s)| of the characteristic function at the accepted pole
struct Mode {
    int n = 0;
    double w = 0;
    ComplexS s{};
    ComplexS dsM{};
    double denom = 0;
    double residual = 0;
    bool resolved = false;
};

// Residue tail envelope: the pair contribution of mode n is bounded by
// K e^{a t} / n^2 for n beyond the fitted range.
struct TailFit {
    double K = 0;
    double a = 0;
};

struct ModeSet {
    ConstitutiveModel model;
    double kappa = 0;
    std::vector<Mode> modes;          // index n = 0 .. n_max-1, one per bracket
    std::vector<int> unresolved;      // indices of modes that failed vetting
    TailFit tail;

    int n_max() const { return static_cast<int>(modes.size()); }
};

// The n_max smallest positive roots of tan(kappa w) = kappa / w, one per
// bracket (n pi/kappa, (n+1/2) pi/kappa), n = 0 .. n_max-1.  Bisection on
// the cleared form h(w) = w sin(kappa w) - kappa cos(kappa w) (no
// asymptotes, guaranteed sign change) plus a safeguarded Newton polish.
std::vector<double> find_frequencies(double kappa, int n_max);

// Characteristic function f(s) = s M(s) sinh(kappa s M(s)) + kappa
// cosh(kappa s M(s)); its upper-half-plane zeros are the modes.
ComplexS eval_f(const ConstitutiveModel& model, double kappa, ComplexS s);

// f in scaled form f = value * exp(exponent) (|value| = O(1)); safe for
// arguments where f itself would overflow, e.g. argument-principle sampling
// on large circles.
struct ScaledF {
    ComplexS value;
    double exponent;
};
ScaledF eval_f_scaled(const ConstitutiveModel& model, double kappa, ComplexS s);

// Solves s M(s) = i w by Newton iteration from s0 = i w / c_inf.  An
// optional hint (typically the previous mode's pole) seeds a fallback start
// when the asymptotic guess stalls.  Deterministic: the perturbed restarts
// fan out at golden-angle increments, no RNG.
ComplexS lift_to_pole(const ConstitutiveModel& model, double kappa, double w,
                      const ComplexS* hint = nullptr);

// Builds the full mode table for n = 0 .. n_max-1 and fits the residue tail
// envelope.  Modes with near-zero denominators or duplicated poles are kept
// but marked unresolved.  Requires a nondegenerate material.
ModeSet build_mode_set(const ConstitutiveModel& model, double kappa, int n_max);

// Argument-principle count of zeros of f inside the disc |s| < R (the
// boundary is deformed around the branch cut).  Counts both half-planes, so
// the result is twice the number of conjugate pairs inside.
int count_zeros_in_disc(const ConstitutiveModel& model, double kappa, double R,
                        int n_samples = 4096);

// Writes the mode table as CSV:
// n,w,re_s,im_s,re_dsM,im_dsM,denom,residual,w_ratio,zeta_ratio
// where w_ratio = w kappa/(n pi) and zeta_ratio = |s| c_inf kappa/(n pi)
// (NaN for n = 0).
std::string mode_set_csv(const ModeSet& ms);

} // namespace rodwave
