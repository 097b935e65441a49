#include "rodwave/modes.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <string>

#include "rodwave/hyperbolic.hpp"

namespace rodwave {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Cleared form of the resonance equation tan(kappa w) = kappa / w:
// h(w) = w sin(kappa w) - kappa cos(kappa w).  Free of asymptotes, with a
// guaranteed sign change over each bracket (n pi/k, (n+1/2) pi/k).
double h_res(double kappa, double w) {
    return w * std::sin(kappa * w) - kappa * std::cos(kappa * w);
}

double h_res_prime(double kappa, double w) {
    return (1.0 + kappa * kappa) * std::sin(kappa * w) +
           kappa * w * std::cos(kappa * w);
}

} // namespace

// ======================================================================
// resonance frequencies
// ======================================================================

std::vector<double> find_frequencies(double kappa, int n_max) {
    if (!(kappa > 0.0))
        throw DomainError("find_frequencies: kappa must be positive");
    if (n_max < 1)
        throw DomainError("find_frequencies: n_max must be at least 1");

    std::vector<double> roots;
    roots.reserve(n_max);
    for (int n = 0; n < n_max; ++n) {
        double lo = n * kPi / kappa;
        double hi = (n + 0.5) * kPi / kappa;
        // h(lo) = -kappa cos(n pi), h(hi) = hi sin((n+1/2) pi): opposite
        // signs by construction.  Evaluate just inside the bracket so
        // rounding at the endpoints cannot flip them.
        const double span = hi - lo;
        lo += 1e-12 * span;
        hi -= 1e-12 * span;
        double flo = h_res(kappa, lo);
        double fhi = h_res(kappa, hi);
        if (flo == 0.0) { roots.push_back(lo); continue; }
        if (fhi == 0.0) { roots.push_back(hi); continue; }
        if ((flo > 0) == (fhi > 0))
            throw BracketError("find_frequencies: no sign change in bracket " +
                               std::to_string(n));
        for (int it = 0; it < 200 && hi - lo > 2e-16 * hi; ++it) {
            const double mid = 0.5 * (lo + hi);
            const double fm = h_res(kappa, mid);
            if (fm == 0.0) { lo = hi = mid; break; }
            if ((fm > 0) == (flo > 0)) { lo = mid; flo = fm; }
            else { hi = mid; fhi = fm; }
        }
        // Safeguarded Newton polish: a couple of steps clamped to the
        // bracket sharpen the bisection result to the rounding floor.
        double w = 0.5 * (lo + hi);
        for (int it = 0; it < 3; ++it) {
            const double hp = h_res_prime(kappa, w);
            if (hp == 0.0) break;
            const double next = w - h_res(kappa, w) / hp;
            if (!(next > lo && next < hi)) break;
            w = next;
        }
        roots.push_back(w);
    }
    return roots;
}

// ======================================================================
// characteristic function
// ======================================================================

ScaledF eval_f_scaled(const ConstitutiveModel& model, double kappa, ComplexS s) {
    const ComplexS y = s * model.M(s);
    const ScaledHyp hyp = scaled_sinh_cosh(kappa * y);
    return {y * hyp.sinh_v + kappa * hyp.cosh_v, hyp.exponent};
}

ComplexS eval_f(const ConstitutiveModel& model, double kappa, ComplexS s) {
    const ScaledF f = eval_f_scaled(model, kappa, s);
    if (f.exponent > 690.0)
        throw EvaluationError("eval_f: overflow despite scaling (|Re kappa sM| = " +
                              std::to_string(f.exponent) + ")");
    return f.value * std::exp(f.exponent);
}

// ======================================================================
// pole lifting
// ======================================================================

namespace {

// One Newton run from a given start.  Returns true on convergence; `out`
// then holds the pole, iterated past the acceptance gate until |g| stalls
// at the rounding floor.
bool newton_run(const ConstitutiveModel& model, double w, ComplexS start,
                bool damped, ComplexS& out) {
    auto g_of = [&](ComplexS z) -> ComplexS {
        // Keep the iterate off the branch cut; a nudge of 1e-12 is far below
        // any pole scale and only triggers if a step lands exactly on it.
        if (z.imag() == 0.0 && z.real() <= 0.0)
            z += ComplexS(0.0, 1e-12 * (1.0 + std::abs(z)));
        return z * model.M(z) - ComplexS(0.0, w);
    };

    const double gate = 1e-10 * (1.0 + w);
    ComplexS s = start;
    ComplexS g = g_of(s);
    for (int it = 0; it < 50; ++it) {
        const ComplexS gp = model.sM_derivative(s);
        if (std::abs(gp) == 0.0) return false;
        const ComplexS step = g / gp;
        ComplexS s_next = s - step;
        ComplexS g_next = g_of(s_next);
        if (damped) {
            double lambda = 1.0;
            while (std::abs(g_next) >= std::abs(g) && lambda > 1.0 / 1024.0) {
                lambda *= 0.5;
                s_next = s - lambda * step;
                g_next = g_of(s_next);
            }
        }
        if (!std::isfinite(s_next.real()) || !std::isfinite(s_next.imag()))
            return false;
        s = s_next;
        g = g_next;
        if (std::abs(g) < gate) {
            // Polish past the gate: continue while the residual still
            // drops, so the characteristic residual lands at the rounding
            // floor rather than at the gate.
            ComplexS best = s;
            double best_g = std::abs(g);
            for (int p = 0; p < 8; ++p) {
                const ComplexS gpp = model.sM_derivative(s);
                if (std::abs(gpp) == 0.0) break;
                s -= g_of(s) / gpp;
                const double cur = std::abs(g_of(s));
                if (cur < best_g) { best = s; best_g = cur; }
                else break;
            }
            out = best;
            return true;
        }
    }
    return false;
}

} // namespace

ComplexS lift_to_pole(const ConstitutiveModel& model, double kappa, double w,
                      const ComplexS* hint) {
    (void)kappa; // the lift solves sM(s) = i w; kappa enters only the bracket
    if (!(w > 0.0))
        throw DomainError("lift_to_pole: w must be positive");
    const double c_inf = model.limits().c_inf;
    if (!(c_inf > 0.0))
        throw DomainError("lift_to_pole: model is degenerate (c_inf = 0): " +
                          model.describe());

    const ComplexS s0(0.0, w / c_inf);
    ComplexS out;
    if (newton_run(model, w, s0, /*damped=*/false, out) && out.imag() >= 0.0)
        return out;

    // Fallbacks, all deterministic: the homotopy hint (previous pole in the
    // family), then a golden-angle fan of perturbed starts with damping.
    if (hint != nullptr) {
        // Re-height the neighbouring pole to this frequency: the real part
        // (damping) drifts slowly along the family, the imaginary part
        // tracks w / c_inf.
        const ComplexS start(hint->real(), w / c_inf);
        if (newton_run(model, w, start, /*damped=*/true, out) && out.imag() >= 0.0)
            return out;
    }
    constexpr double golden = 2.399963229728653;
    for (int j = 0; j < 10; ++j) {
        const ComplexS start = s0 * (1.0 + 0.05 * std::polar(1.0, golden * (j + 1)));
        if (newton_run(model, w, start, /*damped=*/true, out) && out.imag() >= 0.0)
            return out;
    }
    throw ConvergenceError("lift_to_pole: no convergence for w = " + std::to_string(w) +
                           " with " + model.describe());
}

// ======================================================================
// mode set assembly
// ======================================================================

ModeSet build_mode_set(const ConstitutiveModel& model, double kappa, int n_max) {
    if (!model.nondegenerate())
        throw DomainError("build_mode_set: degenerate material (c_inf = 0 or "
                          "unbounded c_0): " + model.describe());
    if (n_max < 1)
        throw DomainError("build_mode_set: n_max must be at least 1");

    ModeSet ms;
    ms.model = model;
    ms.kappa = kappa;
    const std::vector<double> ws = find_frequencies(kappa, n_max);
    ms.modes.reserve(n_max);

    const ComplexS* hint = nullptr;
    for (int n = 0; n < n_max; ++n) {
        Mode m;
        m.n = n;
        m.w = ws[n];
        m.denom = (1.0 + kappa * kappa) * std::sin(kappa * m.w) +
                  kappa * m.w * std::cos(kappa * m.w);
        try {
            m.s = lift_to_pole(model, kappa, m.w, hint);
            m.dsM = model.sM_derivative(m.s);
            m.residual = std::abs(eval_f(model, kappa, m.s));

            const double purity = std::abs((m.s * model.M(m.s)).real());
            bool ok = m.residual <= 1e-9 * std::max(1.0, std::abs(m.s));
            ok = ok && purity < 1e-8 * (1.0 + m.w);
            ok = ok && std::abs(m.denom) >= 1e-6;
            // A Newton run that fell back onto an earlier pole signals a
            // possible multiple zero; keep the data but do not trust it.
            for (const Mode& prev : ms.modes) {
                if (prev.resolved &&
                    std::abs(prev.s - m.s) < 1e-8 * (1.0 + std::abs(m.s))) {
                    ok = false;
                    break;
                }
            }
            m.resolved = ok;
        } catch (const ConvergenceError&) {
            m.resolved = false;
        }
        if (!m.resolved)
            ms.unresolved.push_back(n);
        ms.modes.push_back(m);           // reserve() above keeps `hint` valid
        if (m.resolved)
            hint = &ms.modes.back().s;
    }

    // Tail envelope K e^{a t}/n^2 for the residue pair amplitudes
    // c_n = 2 w_n / (|s_n|^2 |dsM_n| |denom_n|).  The decay rate a is the
    // largest real part beyond the low-mode range (the envelope must cover
    // every tail mode, and Re s_n decreases); K comes from the last three
    // resolved modes, where c_n n^2 has settled onto its limit.
    double a = -std::numeric_limits<double>::infinity();
    bool a_found = false;
    for (const Mode& m : ms.modes) {
        if (!m.resolved) continue;
        if (m.n > 5) { a = std::max(a, m.s.real()); a_found = true; }
    }
    if (!a_found) {
        for (const Mode& m : ms.modes)
            if (m.resolved) { a = std::max(a, m.s.real()); a_found = true; }
    }
    double K = 0;
    int used = 0;
    for (auto it = ms.modes.rbegin(); it != ms.modes.rend() && used < 3; ++it) {
        if (!it->resolved) continue;
        const double c = 2.0 * it->w /
            (std::norm(it->s) * std::abs(it->dsM) * std::abs(it->denom));
        const double n_eff = std::max(1, it->n);
        K = std::max(K, c * n_eff * n_eff);
        ++used;
    }
    ms.tail = {K, a_found ? a : 0.0};
    return ms;
}

// ======================================================================
// argument principle
// ======================================================================

namespace {

// Signed argument increment between two path samples, with recursive
// bisection whenever a single step turns the phase by more than ~1 radian
// (well under the pi aliasing limit).
double delta_arg(const std::function<ComplexS(double)>& path,
                 const ConstitutiveModel& model, double kappa,
                 double u0, ComplexS f0, double u1, ComplexS f1, int depth) {
    const double d = std::arg(f1 * std::conj(f0));
    if (std::abs(d) <= 1.0 || depth >= 28)
        return d;
    const double um = 0.5 * (u0 + u1);
    const ComplexS fm = eval_f_scaled(model, kappa, path(um)).value;
    return delta_arg(path, model, kappa, u0, f0, um, fm, depth + 1) +
           delta_arg(path, model, kappa, um, fm, u1, f1, depth + 1);
}

double walk(const std::function<ComplexS(double)>& path,
            const ConstitutiveModel& model, double kappa, int n_pts) {
    double acc = 0;
    double u_prev = 0;
    ComplexS f_prev = eval_f_scaled(model, kappa, path(0.0)).value;
    for (int i = 1; i <= n_pts; ++i) {
        const double u = static_cast<double>(i) / n_pts;
        const ComplexS f = eval_f_scaled(model, kappa, path(u)).value;
        acc += delta_arg(path, model, kappa, u_prev, f_prev, u, f, 0);
        u_prev = u;
        f_prev = f;
    }
    return acc;
}

} // namespace

int count_zeros_in_disc(const ConstitutiveModel& model, double kappa, double R,
                        int n_samples) {
    if (!(R > 0.0))
        throw DomainError("count_zeros_in_disc: R must be positive");
    if (n_samples < 256)
        throw DomainError("count_zeros_in_disc: need at least 256 samples");

    // The disc boundary must dodge the branch cut: follow the circle from
    // just below the cut around to just above it, hug the cut back to a
    // small radius, then detour around the origin through the positive real
    // axis (f ~ kappa there, so the detour turns the phase negligibly) and
    // hug the lower side back out.
    const double delta = 1e-7;                    // angular gap at the cut
    const double y_off = R * std::sin(delta);     // leg offset above/below
    const double q0 = R * std::cos(delta);
    const double eps = 1e-6 * std::min(1.0, R);
    const double lq0 = std::log(q0), leps = std::log(eps);
    const double r0 = std::hypot(eps, y_off);     // keyhole radius at origin
    const double th0 = std::atan2(y_off, -eps);   // upper leg endpoint angle

    const auto circle = [&](double u) {
        return std::polar(R, -kPi + delta + u * 2.0 * (kPi - delta));
    };
    const auto upper_leg = [&](double u) {
        return ComplexS(-std::exp(lq0 + u * (leps - lq0)), y_off);
    };
    const auto crossing = [&](double u) {
        return std::polar(r0, th0 * (1.0 - 2.0 * u));
    };
    const auto lower_leg = [&](double u) {
        return ComplexS(-std::exp(leps + u * (lq0 - leps)), -y_off);
    };

    const int n_circle = (7 * n_samples) / 10;
    const int n_leg = (n_samples - n_circle) / 2;

    double total = 0;
    total += walk(circle, model, kappa, n_circle);
    total += walk(upper_leg, model, kappa, n_leg);
    total += walk(crossing, model, kappa, 8);
    total += walk(lower_leg, model, kappa, n_leg);

    const double turns = total / (2.0 * kPi);
    const int count = static_cast<int>(std::lround(turns));
    if (std::abs(turns - count) > 0.02)
        throw EvaluationError("count_zeros_in_disc: winding number " +
                              std::to_string(turns) + " did not close to an integer");
    return count;
}

// ======================================================================
// serialization
// ======================================================================

std::string mode_set_csv(const ModeSet& ms) {
    std::string out = "n,w,re_s,im_s,re_dsM,im_dsM,denom,residual,w_ratio,zeta_ratio\n";
    const double c_inf = ms.model.limits().c_inf;
    char buf[512];
    for (const Mode& m : ms.modes) {
        const double nan = std::numeric_limits<double>::quiet_NaN();
        const double w_ratio = m.n > 0 ? m.w * ms.kappa / (m.n * kPi) : nan;
        const double z_ratio = m.n > 0 ? std::abs(m.s) * c_inf * ms.kappa / (m.n * kPi) : nan;
        std::snprintf(buf, sizeof buf,
                      "%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                      m.n, m.w, m.s.real(), m.s.imag(), m.dsM.real(), m.dsM.imag(),
                      m.denom, m.residual, w_ratio, z_ratio);
        out += buf;
    }
    return out;
}

} // namespace rodwave
