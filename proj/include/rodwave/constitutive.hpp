#pragma once

#include <complex>
#include <string>
#include <vector>

#include "rodwave/errors.hpp"

namespace rodwave {

using ComplexS = std::complex<double>;

// Which side of the branch cut along the negative real axis a limit is
// taken from: Upper means s = q*exp(+i*pi), Lower means s = q*exp(-i*pi).
enum class CutSide { Upper, Lower };

inline const char* to_string(CutSide side) {
    return side == CutSide::Upper ? "upper" : "lower";
}

enum class ModelKind { Elastic, FractionalZener, PowerLaw, HilferFluid };

// Limits of the material quotient along rays in the cut plane:
// c_inf = lim_{|s|->inf} M(s) is the glassy (wave-front) speed factor,
// c_0 = lim_{s->0} M(s) the equilibrium one.
struct ModelLimits {
    double c_inf;
    double c_0;
};

// Material description in the Laplace domain.
//
// A viscoelastic rod obeying a distributed-order fractional constitutive
// law enters the motion problem only through the quotient
//
//     M(s) = sqrt( Phi_sigma(s) / Phi_eps(s) ),
//
// the square root of the ratio of the stress- and strain-side operator
// symbols.  M is analytic on the cut plane V = C \ (-inf, 0], satisfies
// M(conj s) = conj M(s), and for admissible materials tends to finite
// positive limits c_inf (|s| -> inf) and c_0 (s -> 0).
//
// Implemented materials:
//
//   elastic            M(s) = 1
//   fractional Zener   M(s) = sqrt( (1 + a s^alpha) / (1 + b s^alpha) ),
//                      0 < alpha < 1, 0 < a <= b (thermodynamic restriction)
//   power-law          M(s)^2 = g(a s) / g(b s),  g(z) = (z-1)/log z,
//                      0 < a <= b; removable singularities at s = 1/a, 1/b
//   Hilfer fluid       M(s) = sqrt( (1 + a s^alpha) /
//                                   (b0 s^beta0 + b1 s^beta1 + b2 s^beta2) ),
//                      0 < alpha < beta0 < beta1 < beta2 <= 1
//
// The Hilfer fluid has c_inf = 0 and unbounded M near s = 0, which breaks
// the uniform-nondegeneracy assumption the mode and kernel machinery relies
// on; constructing it therefore requires an explicit opt-in.
class ConstitutiveModel {
  public:
    ConstitutiveModel() = default; // the elastic material
    static ConstitutiveModel elastic();
    static ConstitutiveModel fractional_zener(double alpha, double a, double b);
    static ConstitutiveModel power_law(double a, double b);
    static ConstitutiveModel hilfer_fluid(double a, double alpha,
                                          double b0, double b1, double b2,
                                          double beta0, double beta1, double beta2,
                                          bool allow_degenerate = false);

    // M(s) on the cut plane V.  Throws DomainError for s on the closed
    // negative real axis (including s = 0); use M_on_cut for cut limits.
    ComplexS M(ComplexS s) const;

    // Limit of M onto the branch cut, M(q e^{+-i pi}), q > 0.  The two
    // sides are complex conjugates of each other.
    ComplexS M_on_cut(double q, CutSide side) const;

    // d(s M(s))/ds.  Analytic expressions for the elastic, Zener and Hilfer
    // materials; the power-law model uses a central complex difference with
    // step h = max(1e-6, 1e-8 |s|) plus one Richardson extrapolation.
    ComplexS sM_derivative(ComplexS s) const;

    ModelLimits limits() const;

    // True when c_inf > 0 and c_0 is finite, i.e. the material admits the
    // mode/kernel pipeline.
    bool nondegenerate() const;

    ModelKind kind() const { return kind_; }
    std::string describe() const;

    bool operator==(const ConstitutiveModel&) const = default;

  private:
    ComplexS M_unchecked(ComplexS s) const;

    ModelKind kind_ = ModelKind::Elastic;
    double alpha_ = 0, a_ = 0, b_ = 0;
    double b0_ = 0, b1_ = 0, b2_ = 0;
    double beta0_ = 0, beta1_ = 0, beta2_ = 0;
};

// Numerical screening of the analyticity/limit assumptions behind the mode
// and kernel machinery.  Samples M and d(sM)/ds on rays arg s in
// {0, +-pi/4, +-pi/2, +-3pi/4} at n_samples log-spaced radii in
// [1/s_max, s_max].  Advisory: the report never throws on a failed check.
struct AssumptionReport {
    double c_inf_estimate = 0;   // mean |M| at radius s_max over rays
    double c_0_estimate = 0;     // mean |M| at radius 1/s_max
    double im_M_outer = 0;       // max |Im M| at radius s_max
    double im_M_decay = 0;       // im_M_outer / max |Im M| at s_max/10
    double small_s_growth = 0;   // |M(1e-8)| / |M(1e-1)| on the positive axis
    double min_dsM = 0;          // min |d(sM)/ds| over the sample grid
    double continuity = 0;       // max |M(s(1+1e-3)) - M(s)| over the grid
    double max_s_im_M = 0;       // max |s Im M(s)| on the near-cut rays
    bool limits_ok = false;      // c_inf > 0 and no small-s blowup
    bool derivative_ok = false;  // min_dsM > 1e-3

    std::string render() const;
};

// Preconditions: s_max > 1, n_samples >= 16 (DomainError otherwise).
AssumptionReport check_assumptions(const ConstitutiveModel& model,
                                   double s_max, int n_samples);

// Parses a material spec string:
//
//   "elastic"
//   "zener alpha=<f> a=<f> b=<f>"
//   "powerlaw a=<f> b=<f>"
//   "hilfer a=<f> alpha=<f> b0=<f> b1=<f> b2=<f> beta0=<f> beta1=<f> beta2=<f>"
//
// Throws ConfigError with the offending token for unknown names, unknown or
// repeated keys, missing keys and out-of-range values.  The Hilfer fluid is
// only accepted with allow_degenerate = true (CLI flag --unsafe-model).
ConstitutiveModel parse_model(const std::string& text, bool allow_degenerate = false);

} // namespace rodwave
