#include "rodwave/forcing.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

namespace rodwave {

// ======================================================================
// signal construction
// ======================================================================

ForcingSignal ForcingSignal::heaviside() {
    ForcingSignal s;
    s.kind_ = ForcingKind::Heaviside;
    return s;
}

ForcingSignal ForcingSignal::impulse() {
    ForcingSignal s;
    s.kind_ = ForcingKind::Impulse;
    return s;
}

ForcingSignal ForcingSignal::sinusoid(double omega, double amplitude) {
    if (!(omega > 0.0))
        throw DomainError("sinusoid forcing: omega must be positive");
    if (!std::isfinite(amplitude))
        throw DomainError("sinusoid forcing: amplitude must be finite");
    ForcingSignal s;
    s.kind_ = ForcingKind::Sinusoid;
    s.omega_ = omega;
    s.amplitude_ = amplitude;
    return s;
}

ForcingSignal ForcingSignal::power_step(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw DomainError("power_step forcing: alpha must lie in (0,1)");
    ForcingSignal s;
    s.kind_ = ForcingKind::PowerStep;
    s.alpha_ = alpha;
    return s;
}

ForcingSignal ForcingSignal::tabulated(
    std::vector<std::pair<double, double>> samples) {
    if (samples.empty())
        throw ConfigError("tabulated forcing: no samples");
    if (samples.front().first != 0.0)
        throw ConfigError("tabulated forcing: grid must start at t = 0");
    for (std::size_t i = 0; i + 1 < samples.size(); ++i)
        if (!(samples[i].first < samples[i + 1].first))
            throw ConfigError("tabulated forcing: t grid must be strictly "
                              "increasing (row " + std::to_string(i + 2) + ")");
    for (const auto& [t, f] : samples)
        if (!std::isfinite(t) || !std::isfinite(f))
            throw ConfigError("tabulated forcing: non-finite sample");
    ForcingSignal s;
    s.kind_ = ForcingKind::Tabulated;
    s.samples_ = std::move(samples);
    return s;
}

ForcingSignal ForcingSignal::tabulated_from_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("tabulated forcing: cannot open '" + path + "'");
    std::vector<std::pair<double, double>> samples;
    std::string line;
    int line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#')
            continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream row(line);
        double t = 0, f = 0;
        if (!(row >> t >> f)) {
            if (!header_seen && samples.empty()) {
                header_seen = true; // one header row, wherever comments put it
                continue;
            }
            throw ConfigError("tabulated forcing: " + path + ":" +
                              std::to_string(line_no) + ": expected two numbers");
        }
        samples.emplace_back(t, f);
    }
    return tabulated(std::move(samples));
}

std::string ForcingSignal::describe() const {
    switch (kind_) {
    case ForcingKind::Heaviside: return "heaviside";
    case ForcingKind::Impulse: return "impulse";
    case ForcingKind::Sinusoid:
        return "sinusoid omega=" + std::to_string(omega_) +
               " amplitude=" + std::to_string(amplitude_);
    case ForcingKind::PowerStep:
        return "power_step alpha=" + std::to_string(alpha_);
    case ForcingKind::Tabulated:
        return "tabulated (" + std::to_string(samples_.size()) + " samples)";
    }
    return "?";
}

// ======================================================================
// parsing
// ======================================================================

ForcingSignal parse_forcing(const std::string& text) {
    std::istringstream in(text);
    std::string kind;
    in >> kind;
    std::vector<std::pair<std::string, std::string>> kv;
    std::string tok;
    while (in >> tok) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos || eq == 0)
            throw ConfigError("forcing spec: expected key=value, got '" + tok + "'");
        kv.emplace_back(tok.substr(0, eq), tok.substr(eq + 1));
    }
    const auto take = [&](const std::string& key, bool required,
                          const std::string& fallback) {
        for (auto it = kv.begin(); it != kv.end(); ++it) {
            if (it->first == key) {
                const std::string v = it->second;
                kv.erase(it);
                return v;
            }
        }
        if (required)
            throw ConfigError("forcing spec: missing '" + key + "' for " + kind);
        return fallback;
    };
    const auto num = [&](const std::string& key, bool required,
                         const std::string& fallback) {
        const std::string v = take(key, required, fallback);
        try {
            std::size_t used = 0;
            const double d = std::stod(v, &used);
            if (used != v.size())
                throw std::invalid_argument(v);
            return d;
        } catch (const std::exception&) {
            throw ConfigError("forcing spec: bad number for '" + key + "': " + v);
        }
    };
    const auto done = [&] {
        if (!kv.empty())
            throw ConfigError("forcing spec: unknown key '" + kv.front().first +
                              "' for " + kind);
    };

    try {
        if (kind == "heaviside") { done(); return ForcingSignal::heaviside(); }
        if (kind == "impulse") { done(); return ForcingSignal::impulse(); }
        if (kind == "sinusoid") {
            const double omega = num("omega", true, "");
            const double amplitude = num("amplitude", false, "1");
            done();
            return ForcingSignal::sinusoid(omega, amplitude);
        }
        if (kind == "power_step") {
            const double alpha = num("alpha", true, "");
            done();
            return ForcingSignal::power_step(alpha);
        }
        if (kind == "tabulated") {
            const std::string path = take("path", true, "");
            done();
            return ForcingSignal::tabulated_from_csv(path);
        }
    } catch (const DomainError& e) {
        throw ConfigError(std::string("forcing spec: ") + e.what());
    }
    throw ConfigError("forcing spec: unknown kind '" + kind + "'");
}

// ======================================================================
// pointwise evaluation
// ======================================================================

double eval_F(const ForcingSignal& signal, double t) {
    if (t < 0.0)
        return 0.0;
    switch (signal.kind()) {
    case ForcingKind::Heaviside:
        return 1.0;
    case ForcingKind::Impulse:
        throw DomainError("eval_F: the impulse has no pointwise values");
    case ForcingKind::Sinusoid:
        return signal.amplitude() * std::sin(signal.omega() * t);
    case ForcingKind::PowerStep:
        if (t == 0.0)
            return 0.0; // integrable singularity; never sampled at 0 by quadrature
        return std::pow(t, signal.alpha() - 1.0) / std::tgamma(signal.alpha());
    case ForcingKind::Tabulated: {
        const auto& s = signal.samples();
        if (t >= s.back().first)
            return s.back().second;
        const auto it = std::upper_bound(
            s.begin(), s.end(), t,
            [](double v, const std::pair<double, double>& p) { return v < p.first; });
        const auto& [t1, f1] = *it;
        const auto& [t0, f0] = *(it - 1);
        return f0 + (f1 - f0) * (t - t0) / (t1 - t0);
    }
    }
    return 0.0;
}

// ======================================================================
// Gauss-Jacobi rule (Golub-Welsch)
// ======================================================================

QuadRule jacobi_rule(int n, double alpha) {
    if (n < 1)
        throw DomainError("jacobi_rule: need at least one node");
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw DomainError("jacobi_rule: alpha must lie in (0,1]");

    // three-term recurrence for the weight (1+x)^{alpha-1} on [-1,1]
    // (Jacobi parameters A = 0, B = alpha - 1)
    const double B = alpha - 1.0;
    const double mu0 = std::pow(2.0, alpha) / alpha;
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
    for (int k = 0; k < n; ++k) {
        const double ab2k = 2.0 * k + B;
        J(k, k) = k == 0 ? B / (B + 2.0)
                         : B * B / (ab2k * (ab2k + 2.0));
        if (k + 1 < n) {
            const int j = k + 1; // off-diagonal index uses b_j, j >= 1
            const double ab2j = 2.0 * j + B;
            const double bj = 4.0 * j * j * (j + B) * (j + B) /
                              (ab2j * ab2j * (ab2j + 1.0) * (ab2j - 1.0));
            J(k, k + 1) = J(k + 1, k) = std::sqrt(bj);
        }
    }
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    if (es.info() != Eigen::Success)
        throw EvaluationError("jacobi_rule: eigensolve failed");

    // map x -> u = (x+1)/2 and fold the 2^{-alpha} Jacobian/weight factor
    QuadRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const double fold = std::pow(2.0, -alpha) * mu0;
    for (int i = 0; i < n; ++i) {
        rule.nodes[i] = 0.5 * (es.eigenvalues()[i] + 1.0);
        const double v0 = es.eigenvectors()(0, i);
        rule.weights[i] = fold * v0 * v0;
    }
    return rule;
}

// ======================================================================
// convolution quadrature
// ======================================================================

namespace {

struct ConvSample {
    double g = 0;
    double err = 0;
    unsigned flags = 0;
};

// Composite Simpson on [a,b] with halving until the relative change is
// below 1e-4 (or an absolute floor for values at rounding scale); samples
// are reused between levels.  The kernel error estimates ride along with
// the same quadrature weights.
template <class Sampler>
KernelValue simpson_converge(Sampler&& sample, double a, double b) {
    KernelValue out;
    if (!(b > a))
        return out;

    int n = 16;
    std::vector<ConvSample> v(n + 1);
    for (int i = 0; i <= n; ++i)
        v[i] = sample(a + (b - a) * i / n);

    const auto level = [&](double& value, double& err, unsigned& flags) {
        const double h = (b - a) / n;
        double sv = v[0].g + v[n].g;
        double se = v[0].err + v[n].err;
        unsigned fl = v[0].flags | v[n].flags;
        for (int i = 1; i < n; ++i) {
            const double c = i % 2 ? 4.0 : 2.0;
            sv += c * v[i].g;
            se += c * v[i].err;
            fl |= v[i].flags;
        }
        value = sv * h / 3.0;
        err = se * h / 3.0;
        flags = fl;
    };

    double S = 0, err_kernel = 0;
    unsigned flags = 0;
    level(S, err_kernel, flags);
    double S_prev = S;
    bool converged = false;
    while (n < 16384) {
        std::vector<ConvSample> fine(2 * n + 1);
        for (int i = 0; i <= n; ++i)
            fine[2 * i] = v[i];
        for (int i = 0; i < n; ++i)
            fine[2 * i + 1] = sample(a + (b - a) * (2 * i + 1) / (2.0 * n));
        v = std::move(fine);
        n *= 2;
        S_prev = S;
        level(S, err_kernel, flags);
        if (std::abs(S - S_prev) <= 1e-4 * std::max(std::abs(S), 1e-12)) {
            converged = true;
            break;
        }
    }

    out.value = S;
    out.error_estimate = std::abs(S - S_prev) / 15.0 + err_kernel;
    out.flags = flags;
    if (!converged)
        out.flags |= kernel_flags::kAccuracy;
    return out;
}

void require_kind(const KernelSpec& spec, KernelKind kind, const char* who) {
    if (spec.kind != kind)
        throw DomainError(std::string(who) + ": kernel spec kind mismatch");
}

} // namespace

// ======================================================================
// composition
// ======================================================================

KernelValue compose_u(const KernelSpec& spec, const ForcingSignal& signal,
                      double x, double t) {
    require_kind(spec, KernelKind::DisplacementP, "compose_u");
    if (!std::isfinite(t))
        throw DomainError("compose_u: t must be finite");
    if (t < 0.0)
        return {0.0, 0.0, 0u};

    switch (signal.kind()) {
    case ForcingKind::Impulse:
        return eval_P(spec, x, t); // sifting: delta * P = P
    case ForcingKind::Heaviside: {
        if (t == 0.0)
            return {0.0, 0.0, 0u};
        return simpson_converge(
            [&](double tau) {
                const KernelValue kv = eval_P(spec, x, tau);
                return ConvSample{kv.value, kv.error_estimate, kv.flags};
            },
            0.0, t);
    }
    case ForcingKind::PowerStep: {
        if (t == 0.0)
            return {0.0, 0.0, 0u};
        // head panel [0, t/8]: weight tau^{alpha-1} handled by the Jacobi
        // rule; two orders give a spread-based error estimate
        const double split = t / 8.0;
        const double gamma = std::tgamma(signal.alpha());
        const double scale = std::pow(split, signal.alpha()) / gamma;
        KernelValue head;
        double head_lo = 0;
        for (int pass = 0; pass < 2; ++pass) {
            const QuadRule rule = jacobi_rule(pass == 0 ? 24 : 16, signal.alpha());
            double acc = 0, err = 0;
            unsigned fl = 0;
            for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
                const KernelValue kv = eval_P(spec, x, t - split * rule.nodes[i]);
                acc += rule.weights[i] * kv.value;
                err += rule.weights[i] * kv.error_estimate;
                fl |= kv.flags;
            }
            if (pass == 0) {
                head.value = scale * acc;
                head.error_estimate = scale * err;
                head.flags = fl;
            } else {
                head_lo = scale * acc;
            }
        }
        head.error_estimate += std::abs(head.value - head_lo);

        const KernelValue rest = simpson_converge(
            [&](double tau) {
                const KernelValue kv = eval_P(spec, x, t - tau);
                const double f = eval_F(signal, tau);
                return ConvSample{f * kv.value, std::abs(f) * kv.error_estimate,
                                  kv.flags};
            },
            split, t);

        KernelValue out;
        out.value = head.value + rest.value;
        out.error_estimate = head.error_estimate + rest.error_estimate;
        out.flags = head.flags | rest.flags;
        return out;
    }
    case ForcingKind::Sinusoid:
    case ForcingKind::Tabulated: {
        if (t == 0.0)
            return {0.0, 0.0, 0u};
        return simpson_converge(
            [&](double tau) {
                const KernelValue kv = eval_P(spec, x, t - tau);
                const double f = eval_F(signal, tau);
                return ConvSample{f * kv.value, std::abs(f) * kv.error_estimate,
                                  kv.flags};
            },
            0.0, t);
    }
    }
    throw DomainError("compose_u: unhandled forcing kind");
}

KernelValue compose_sigma(const KernelSpec& spec, const ForcingSignal& signal,
                          double x, double t) {
    require_kind(spec, KernelKind::StressSigmaH, "compose_sigma");
    if (!std::isfinite(t))
        throw DomainError("compose_sigma: t must be finite");
    if (t < 0.0)
        return {0.0, 0.0, 0u};

    if (signal.kind() == ForcingKind::Heaviside)
        return eval_sigma_H(spec, x, t); // the step response, verbatim
    if (signal.kind() == ForcingKind::Impulse)
        throw DomainError("compose_sigma: stress under impulsive forcing is "
                          "distributional and not representable here");

    // sigma = d/dt (F * sigma_H), differentiated numerically; the kernel
    // error budget is amplified by the 1/(2h) of the central difference
    const double h = 1e-3;
    const auto G = [&](double T) -> KernelValue {
        if (T <= 0.0)
            return {0.0, 0.0, 0u};
        return simpson_converge(
            [&](double tau) {
                const KernelValue kv = eval_sigma_H(spec, x, T - tau);
                const double f = eval_F(signal, tau);
                return ConvSample{f * kv.value, std::abs(f) * kv.error_estimate,
                                  kv.flags};
            },
            0.0, T);
    };
    const KernelValue gp = G(t + h);
    const KernelValue g0 = G(t);
    const KernelValue gm = G(t - h);

    KernelValue out;
    out.value = (gp.value - gm.value) / (2.0 * h);
    out.error_estimate =
        (gp.error_estimate + gm.error_estimate) / (2.0 * h) +
        std::abs(gp.value - 2.0 * g0.value + gm.value) / (2.0 * h);
    out.flags = gp.flags | g0.flags | gm.flags | kernel_flags::kFiniteDifference;
    if (out.error_estimate > spec.tol)
        out.flags |= kernel_flags::kAccuracy;
    return out;
}

} // namespace rodwave
