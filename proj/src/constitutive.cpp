#include "rodwave/constitutive.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <sstream>

namespace rodwave {

namespace {

constexpr double kPi = 3.14159265358979323846;

// (z - 1)/log(z) with the removable singularity at z = 1 filled in by the
// Taylor expansion 1 + w/2 - w^2/12 + w^3/24 (w = z - 1), whose next term
// is O(w^4) and thus far below rounding at the switch radius 1e-4.
ComplexS g_over_log(ComplexS z) {
    const ComplexS w = z - 1.0;
    if (std::abs(w) < 1e-4) {
        return 1.0 + w * (0.5 + w * (-1.0 / 12.0 + w * (1.0 / 24.0)));
    }
    return w / std::log(z);
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

} // namespace

// ======================================================================
// construction
// ======================================================================

ConstitutiveModel ConstitutiveModel::elastic() {
    ConstitutiveModel m;
    m.kind_ = ModelKind::Elastic;
    return m;
}

ConstitutiveModel ConstitutiveModel::fractional_zener(double alpha, double a, double b) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw DomainError("fractional_zener: alpha must lie in (0,1), got " + fmt(alpha));
    if (!(a > 0.0))
        throw DomainError("fractional_zener: a must be positive, got " + fmt(a));
    if (!(a <= b))
        throw DomainError("fractional_zener: thermodynamic restriction a <= b violated (a=" +
                          fmt(a) + ", b=" + fmt(b) + ")");
    ConstitutiveModel m;
    m.kind_ = ModelKind::FractionalZener;
    m.alpha_ = alpha;
    m.a_ = a;
    m.b_ = b;
    return m;
}

ConstitutiveModel ConstitutiveModel::power_law(double a, double b) {
    if (!(a > 0.0))
        throw DomainError("power_law: a must be positive, got " + fmt(a));
    if (!(a <= b))
        throw DomainError("power_law: thermodynamic restriction a <= b violated (a=" +
                          fmt(a) + ", b=" + fmt(b) + ")");
    ConstitutiveModel m;
    m.kind_ = ModelKind::PowerLaw;
    m.a_ = a;
    m.b_ = b;
    return m;
}

ConstitutiveModel ConstitutiveModel::hilfer_fluid(double a, double alpha,
                                                  double b0, double b1, double b2,
                                                  double beta0, double beta1, double beta2,
                                                  bool allow_degenerate) {
    if (!(a > 0.0 && b0 > 0.0 && b1 > 0.0 && b2 > 0.0))
        throw DomainError("hilfer_fluid: coefficients a, b0, b1, b2 must be positive");
    if (!(alpha > 0.0 && alpha < beta0 && beta0 < beta1 && beta1 < beta2 && beta2 <= 1.0))
        throw DomainError("hilfer_fluid: orders must satisfy 0 < alpha < beta0 < beta1 < beta2 <= 1");
    if (!allow_degenerate)
        throw DomainError(
            "hilfer_fluid: this material has c_inf = 0 and unbounded M(s) as s -> 0, "
            "so the mode and kernel machinery does not apply; construct with "
            "allow_degenerate = true (CLI --unsafe-model) to inspect it anyway");
    ConstitutiveModel m;
    m.kind_ = ModelKind::HilferFluid;
    m.a_ = a;
    m.alpha_ = alpha;
    m.b0_ = b0;
    m.b1_ = b1;
    m.b2_ = b2;
    m.beta0_ = beta0;
    m.beta1_ = beta1;
    m.beta2_ = beta2;
    return m;
}

// ======================================================================
// evaluation
// ======================================================================

ComplexS ConstitutiveModel::M_unchecked(ComplexS s) const {
    switch (kind_) {
    case ModelKind::Elastic:
        return ComplexS(1.0, 0.0);
    case ModelKind::FractionalZener: {
        const ComplexS sa = std::pow(s, alpha_);
        return std::sqrt((1.0 + a_ * sa) / (1.0 + b_ * sa));
    }
    case ModelKind::PowerLaw:
        return std::sqrt(g_over_log(a_ * s) / g_over_log(b_ * s));
    case ModelKind::HilferFluid: {
        const ComplexS num = 1.0 + a_ * std::pow(s, alpha_);
        const ComplexS den = b0_ * std::pow(s, beta0_) + b1_ * std::pow(s, beta1_) +
                             b2_ * std::pow(s, beta2_);
        return std::sqrt(num / den);
    }
    }
    throw EvaluationError("constitutive model kind corrupted");
}

ComplexS ConstitutiveModel::M(ComplexS s) const {
    if (s.imag() == 0.0 && s.real() <= 0.0)
        throw DomainError("M(s): s on the closed negative real axis; "
                          "use M_on_cut for branch-cut limits");
    return M_unchecked(s);
}

ComplexS ConstitutiveModel::M_on_cut(double q, CutSide side) const {
    if (!(q > 0.0))
        throw DomainError("M_on_cut: cut coordinate q must be positive, got " + fmt(q));
    // Signed zero steers the principal branches of log/pow to the requested
    // side: log(-q + 0i) = log q + i pi, log(-q - 0i) = log q - i pi.
    const ComplexS s(-q, side == CutSide::Upper ? +0.0 : -0.0);
    return M_unchecked(s);
}

ComplexS ConstitutiveModel::sM_derivative(ComplexS s) const {
    switch (kind_) {
    case ModelKind::Elastic:
        return ComplexS(1.0, 0.0);
    case ModelKind::FractionalZener: {
        // d(sM)/ds = M [1 + (alpha/2)(a s^a/(1+a s^a) - b s^a/(1+b s^a))]
        const ComplexS sa = std::pow(s, alpha_);
        const ComplexS m = std::sqrt((1.0 + a_ * sa) / (1.0 + b_ * sa));
        const ComplexS corr = (alpha_ / 2.0) *
            (a_ * sa / (1.0 + a_ * sa) - b_ * sa / (1.0 + b_ * sa));
        return m * (1.0 + corr);
    }
    case ModelKind::HilferFluid: {
        const ComplexS sa = std::pow(s, alpha_);
        const ComplexS num = 1.0 + a_ * sa;
        const ComplexS den = b0_ * std::pow(s, beta0_) + b1_ * std::pow(s, beta1_) +
                             b2_ * std::pow(s, beta2_);
        const ComplexS dnum = alpha_ * a_ * sa;          // s * d(num)/ds
        const ComplexS dden = beta0_ * b0_ * std::pow(s, beta0_) +
                              beta1_ * b1_ * std::pow(s, beta1_) +
                              beta2_ * b2_ * std::pow(s, beta2_);
        return std::sqrt(num / den) * (1.0 + 0.5 * (dnum / num - dden / den));
    }
    case ModelKind::PowerLaw: {
        // No tidy closed form; central complex difference of y(s) = s M(s)
        // with one Richardson step, which brings the truncation error to
        // O(h^4) while the step stays well clear of the branch cut for the
        // upper-half-plane arguments this is used with.
        const double h = std::max(1e-6, 1e-8 * std::abs(s));
        auto y = [this](ComplexS z) { return z * M_unchecked(z); };
        const ComplexS d1 = (y(s + h) - y(s - h)) / (2.0 * h);
        const ComplexS d2 = (y(s + 0.5 * h) - y(s - 0.5 * h)) / h;
        const ComplexS d = (4.0 * d2 - d1) / 3.0;
        if (!std::isfinite(d.real()) || !std::isfinite(d.imag()))
            throw EvaluationError("sM_derivative: finite-difference stencil not finite");
        return d;
    }
    }
    throw EvaluationError("constitutive model kind corrupted");
}

ModelLimits ConstitutiveModel::limits() const {
    switch (kind_) {
    case ModelKind::Elastic:
        return {1.0, 1.0};
    case ModelKind::FractionalZener:
    case ModelKind::PowerLaw:
        return {std::sqrt(a_ / b_), 1.0};
    case ModelKind::HilferFluid:
        return {0.0, std::numeric_limits<double>::infinity()};
    }
    return {0.0, 0.0};
}

bool ConstitutiveModel::nondegenerate() const {
    const ModelLimits lim = limits();
    return lim.c_inf > 0.0 && std::isfinite(lim.c_0);
}

std::string ConstitutiveModel::describe() const {
    std::ostringstream os;
    switch (kind_) {
    case ModelKind::Elastic:
        os << "elastic";
        break;
    case ModelKind::FractionalZener:
        os << "zener(alpha=" << alpha_ << ", a=" << a_ << ", b=" << b_ << ")";
        break;
    case ModelKind::PowerLaw:
        os << "powerlaw(a=" << a_ << ", b=" << b_ << ")";
        break;
    case ModelKind::HilferFluid:
        os << "hilfer(a=" << a_ << ", alpha=" << alpha_
           << ", b=[" << b0_ << "," << b1_ << "," << b2_ << "]"
           << ", beta=[" << beta0_ << "," << beta1_ << "," << beta2_ << "])";
        break;
    }
    return os.str();
}

// ======================================================================
// assumption screening
// ======================================================================

AssumptionReport check_assumptions(const ConstitutiveModel& model,
                                   double s_max, int n_samples) {
    if (!(s_max > 1.0))
        throw DomainError("check_assumptions: s_max must exceed 1");
    if (n_samples < 16)
        throw DomainError("check_assumptions: need at least 16 samples");

    static const double rays[] = {0.0, kPi / 4, -kPi / 4, kPi / 2, -kPi / 2,
                                  3 * kPi / 4, -3 * kPi / 4};
    AssumptionReport rep;

    // Limits along the rays.
    double cinf_sum = 0, c0_sum = 0, im_outer = 0, im_inner = 0;
    for (double th : rays) {
        const ComplexS m_out = model.M(std::polar(s_max, th));
        const ComplexS m_mid = model.M(std::polar(s_max / 10.0, th));
        const ComplexS m_in = model.M(std::polar(1.0 / s_max, th));
        cinf_sum += std::abs(m_out);
        c0_sum += std::abs(m_in);
        im_outer = std::max(im_outer, std::abs(m_out.imag()));
        im_inner = std::max(im_inner, std::abs(m_mid.imag()));
    }
    rep.c_inf_estimate = cinf_sum / std::size(rays);
    rep.c_0_estimate = c0_sum / std::size(rays);
    rep.im_M_outer = im_outer;
    rep.im_M_decay = im_inner > 0 ? im_outer / im_inner : 0.0;

    // Small-s growth on the positive axis flags materials with unbounded M
    // near the origin (e.g. the Hilfer fluid).
    rep.small_s_growth = std::abs(model.M(ComplexS(1e-8, 0.0))) /
                         std::abs(model.M(ComplexS(1e-1, 0.0)));

    // Grid scans: derivative floor, modulus of continuity, near-cut bound.
    double min_dsM = std::numeric_limits<double>::infinity();
    double cont = 0, s_im = 0;
    const double lr0 = std::log(1.0 / s_max), lr1 = std::log(s_max);
    for (int i = 0; i < n_samples; ++i) {
        const double r = std::exp(lr0 + (lr1 - lr0) * i / (n_samples - 1.0));
        for (double th : rays) {
            const ComplexS s = std::polar(r, th);
            min_dsM = std::min(min_dsM, std::abs(model.sM_derivative(s)));
            cont = std::max(cont, std::abs(model.M(s * ComplexS(1.001, 0.0)) - model.M(s)));
            if (std::abs(th) > 2.0)
                s_im = std::max(s_im, std::abs(s) * std::abs(model.M(s).imag()));
        }
    }
    rep.min_dsM = min_dsM;
    rep.continuity = cont;
    rep.max_s_im_M = s_im;

    rep.limits_ok = rep.c_inf_estimate > 1e-6 && rep.small_s_growth < 10.0;
    rep.derivative_ok = rep.min_dsM > 1e-3;
    return rep;
}

std::string AssumptionReport::render() const {
    std::ostringstream os;
    os << "assumption screening\n"
       << "  c_inf estimate        : " << c_inf_estimate << "\n"
       << "  c_0 estimate          : " << c_0_estimate << "\n"
       << "  max |Im M| at outer r : " << im_M_outer
       << "  (decay vs r/10: " << im_M_decay << ")\n"
       << "  small-s growth        : " << small_s_growth
       << (limits_ok ? "  [limits ok]" : "  [DEGENERATE LIMITS]") << "\n"
       << "  min |d(sM)/ds|        : " << min_dsM
       << (derivative_ok ? "  [above 1e-3 floor]" : "  [BELOW 1e-3 FLOOR]") << "\n"
       << "  continuity (0.1% step): " << continuity << "\n"
       << "  max |s Im M| near cut : " << max_s_im_M << "\n";
    return os.str();
}

// ======================================================================
// spec-string parsing
// ======================================================================

namespace {

std::map<std::string, double> parse_kv(std::istringstream& in, const std::string& model) {
    std::map<std::string, double> kv;
    std::string tok;
    while (in >> tok) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos)
            throw ConfigError("model spec: expected key=value token for '" + model +
                              "', got '" + tok + "'");
        const std::string key = tok.substr(0, eq);
        const std::string val = tok.substr(eq + 1);
        if (kv.count(key))
            throw ConfigError("model spec: repeated key '" + key + "' for '" + model + "'");
        try {
            std::size_t used = 0;
            kv[key] = std::stod(val, &used);
            if (used != val.size())
                throw std::invalid_argument(val);
        } catch (const std::exception&) {
            throw ConfigError("model spec: cannot parse value '" + val + "' for key '" +
                              key + "'");
        }
    }
    return kv;
}

double take(std::map<std::string, double>& kv, const std::string& key,
            const std::string& model) {
    const auto it = kv.find(key);
    if (it == kv.end())
        throw ConfigError("model spec: missing key '" + key + "' for '" + model + "'");
    const double v = it->second;
    kv.erase(it);
    return v;
}

void expect_empty(const std::map<std::string, double>& kv, const std::string& model) {
    if (!kv.empty())
        throw ConfigError("model spec: unknown key '" + kv.begin()->first + "' for '" +
                          model + "'");
}

} // namespace

ConstitutiveModel parse_model(const std::string& text, bool allow_degenerate) {
    std::istringstream in(text);
    std::string name;
    if (!(in >> name))
        throw ConfigError("model spec: empty string");

    try {
        if (name == "elastic") {
            auto kv = parse_kv(in, name);
            expect_empty(kv, name);
            return ConstitutiveModel::elastic();
        }
        if (name == "zener") {
            auto kv = parse_kv(in, name);
            const double alpha = take(kv, "alpha", name);
            const double a = take(kv, "a", name);
            const double b = take(kv, "b", name);
            expect_empty(kv, name);
            return ConstitutiveModel::fractional_zener(alpha, a, b);
        }
        if (name == "powerlaw") {
            auto kv = parse_kv(in, name);
            const double a = take(kv, "a", name);
            const double b = take(kv, "b", name);
            expect_empty(kv, name);
            return ConstitutiveModel::power_law(a, b);
        }
        if (name == "hilfer") {
            auto kv = parse_kv(in, name);
            const double a = take(kv, "a", name);
            const double alpha = take(kv, "alpha", name);
            const double b0 = take(kv, "b0", name);
            const double b1 = take(kv, "b1", name);
            const double b2 = take(kv, "b2", name);
            const double beta0 = take(kv, "beta0", name);
            const double beta1 = take(kv, "beta1", name);
            const double beta2 = take(kv, "beta2", name);
            expect_empty(kv, name);
            return ConstitutiveModel::hilfer_fluid(a, alpha, b0, b1, b2,
                                                   beta0, beta1, beta2, allow_degenerate);
        }
    } catch (const DomainError& e) {
        throw ConfigError(std::string("model spec: ") + e.what());
    }
    throw ConfigError("model spec: unknown model '" + name +
                      "' (expected elastic, zener, powerlaw or hilfer)");
}

} // namespace rodwave
