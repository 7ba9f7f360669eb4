#include "bctoda/numerics.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>

namespace bctoda {

namespace {

// Lanczos approximation, g = 607/128, 15 coefficients.
constexpr double kLanczosG = 4.7421875;
constexpr double kLanczos[15] = {
    0.99999999999999709182,     57.156235665862923517,     -59.597960355475491248,
    14.136097974741747174,      -0.49191381609762019978,   0.33994649984811888699e-4,
    0.46523628927048575665e-4,  -0.98374475304879564677e-4, 0.15808870322491248884e-3,
    -0.21026444172410488319e-3, 0.21743961811521264320e-3, -0.16431810653676389022e-3,
    0.84418223983852743293e-4,  -0.26190838401581408670e-4, 0.36899182659531622704e-5,
};

const double kLogSqrt2Pi = 0.91893853320467274178;

// log(sin z), stable for large |Im z|; branch only controlled mod 2*pi*i.
Complex log_sin(Complex z) {
    if (std::abs(z.imag()) < 5.0) return std::log(std::sin(z));
    if (z.imag() > 0.0) {
        // sin z = e^{iz}(1 - e^{-2iz}) / (2i)
        return I * z + std::log(1.0 - std::exp(-2.0 * I * z)) - std::log(Complex(0.0, 2.0));
    }
    return -I * z + std::log(1.0 - std::exp(2.0 * I * z)) + std::log(Complex(0.0, 0.5));
}

Complex log_gamma_core(Complex z) {
    // requires Re z >= 0.5
    Complex sum = kLanczos[0];
    for (int k = 1; k < 15; ++k) sum += kLanczos[k] / (z - 1.0 + double(k));
    Complex t = z + (kLanczosG - 0.5);
    return kLogSqrt2Pi + (z - 0.5) * std::log(t) - t + std::log(sum);
}

}  // namespace

Complex log_gamma(Complex z) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw Error(ErrorCode::NonFinite, "log_gamma of non-finite argument");
    if (std::abs(z.imag()) < 1e-14) {
        double r = std::round(z.real());
        if (r <= 0.0 && std::abs(z.real() - r) < 1e-14)
            throw Error(ErrorCode::PoleError, "log_gamma at nonpositive integer");
    }
    if (z.real() >= 0.5) return log_gamma_core(z);
    // reflection: log Gamma(z) = log(pi) - log sin(pi z) - log Gamma(1 - z)
    const double kLogPi = 1.1447298858494001741;
    return kLogPi - log_sin(M_PI * z) - log_gamma_core(1.0 - z);
}

Complex gamma_fn(Complex z) { return std::exp(log_gamma(z)); }

namespace {

struct Counter {
    const std::function<Complex(double)>* f;
    long* n;
    Complex operator()(double t) const {
        ++*n;
        Complex v = (*f)(t);
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw Error(ErrorCode::NonFinite, "integrand returned NaN/Inf at t=" + std::to_string(t));
        return v;
    }
};

double cutoff_scale(const std::function<Complex(double)>& f, double lo, double hi, long* evals) {
    double m = 0.0;
    const int n = 33;
    for (int i = 0; i < n; ++i) {
        double t = lo + (hi - lo) * (i + 0.5) / n;
        Complex v = f(t);
        ++*evals;
        if (std::isfinite(v.real()) && std::isfinite(v.imag())) m = std::max(m, std::abs(v));
    }
    return m;
}

// Local maximum of |f| near t (the integrand may oscillate through zero).
double probe_mag(const std::function<Complex(double)>& f, double t, double dt, long* evals) {
    double m = 0.0;
    for (double s : {t, t - 0.37 * dt, t + 0.41 * dt}) {
        Complex v = f(s);
        ++*evals;
        if (std::isfinite(v.real()) && std::isfinite(v.imag())) m = std::max(m, std::abs(v));
    }
    return m;
}

}  // namespace

IntegralResult integrate_real_line(const std::function<Complex(double)>& f,
                                   const QuadratureSpec& spec, DecayHint hint) {
    using boost::math::quadrature::gauss_kronrod;
    IntegralResult res;
    double lo = hint.lo, hi = hint.hi;
    if (!(hi > lo)) hi = lo + 1.0;

    double scale = cutoff_scale(f, lo, hi, &res.evaluations);
    double cutoff = std::max(spec.abs_tol, spec.rel_tol * scale * (hi - lo)) *
                    std::pow(10.0, -spec.truncation_margin);
    if (cutoff <= 0.0 || !std::isfinite(cutoff)) cutoff = 1e-300;

    double step = 1.0;
    int guard = 0;
    while (probe_mag(f, lo, step, &res.evaluations) > cutoff && guard++ < 300) {
        lo -= step;
        step = std::min(step * 1.3, 8.0);
    }
    step = 1.0;
    guard = 0;
    while (probe_mag(f, hi, step, &res.evaluations) > cutoff && guard++ < 300) {
        hi += step;
        step = std::min(step * 1.3, 8.0);
    }

    Counter cf{&f, &res.evaluations};
    double err = 0.0;
    res.value = gauss_kronrod<double, 15>::integrate(cf, lo, hi,
                                                     unsigned(spec.max_refinement_depth),
                                                     0.1 * spec.rel_tol, &err);
    res.error_estimate = err;
    double budget = std::max(spec.abs_tol, spec.rel_tol * std::abs(res.value));
    if (!(err <= budget)) {
        // one deeper retry before giving up
        long dummy = 0;
        Counter cf2{&f, &dummy};
        double err2 = 0.0;
        Complex v2 = gauss_kronrod<double, 15>::integrate(
            cf2, lo, hi, unsigned(spec.max_refinement_depth + 4), 0.01 * spec.rel_tol, &err2);
        res.evaluations += dummy;
        if (err2 < err) {
            res.value = v2;
            res.error_estimate = err2;
        }
        budget = std::max(spec.abs_tol, spec.rel_tol * std::abs(res.value));
        if (!(res.error_estimate <= budget))
            throw Error(ErrorCode::MaxDepth,
                        "real-line quadrature did not reach tolerance (err=" +
                            std::to_string(res.error_estimate) + ")");
    }
    return res;
}

IntegralResult integrate_semiinf_singular_offset(const std::function<Complex(double)>& f_of_s,
                                                 double sing_exponent,
                                                 const QuadratureSpec& spec) {
    using boost::math::quadrature::exp_sinh;
    if (sing_exponent <= -1.0)
        throw Error(ErrorCode::SingularityTooStrong,
                    "endpoint exponent " + std::to_string(sing_exponent) + " <= -1");

    IntegralResult res;
    auto g = [&](double w) -> Complex {
        ++res.evaluations;
        // s = log(cosh w), computed without overflow and clamped away from 0
        double s = (w > 20.0) ? w - M_LN2 + std::log1p(std::exp(-2.0 * w))
                              : std::log(std::cosh(w));
        if (s < 1e-280) s = 1e-280;
        Complex v = f_of_s(s) * std::tanh(w);
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw Error(ErrorCode::NonFinite, "integrand returned NaN/Inf at s=" + std::to_string(s));
        return v;
    };

    exp_sinh<double> integrator(static_cast<size_t>(std::max(spec.max_refinement_depth, 9)));
    double err = 0.0, l1 = 0.0;
    res.value = integrator.integrate(g, 0.1 * spec.rel_tol, &err, &l1);
    res.error_estimate = err;  // absolute estimate (level difference)
    double budget = std::max(spec.abs_tol, spec.rel_tol * std::abs(res.value));
    if (!(res.error_estimate <= budget))
        throw Error(ErrorCode::MaxDepth,
                    "semi-infinite quadrature did not reach tolerance (err=" +
                        std::to_string(res.error_estimate) + ")");
    return res;
}

IntegralResult integrate_semiinf_singular(const std::function<Complex(double)>& f, double left,
                                          double sing_exponent, const QuadratureSpec& spec) {
    auto f_of_s = [&](double s) { return f(left + s); };
    return integrate_semiinf_singular_offset(f_of_s, sing_exponent, spec);
}

namespace {

IntegralResult integrate_box_rec(const std::function<Complex(std::span<const double>)>& f,
                                 std::span<const BoxAxis> axes, const QuadratureSpec& spec,
                                 std::vector<double>& coords, int level) {
    const BoxAxis& ax = axes[level];
    if (level == 0) {
        auto f1 = [&](double t) -> Complex {
            coords[0] = t;
            return f(std::span<const double>(coords.data(), axes.size()));
        };
        if (ax.kind == BoxAxis::Kind::SemiInfSingular)
            return integrate_semiinf_singular(f1, ax.left, ax.sing_exponent, spec);
        return integrate_real_line(f1, spec, ax.hint);
    }

    long evals = 0;
    double inner_err_sum = 0.0;
    long inner_calls = 0;
    QuadratureSpec inner_spec = spec.tightened(0.1);
    auto fouter = [&](double t) -> Complex {
        coords[level] = t;
        IntegralResult r = integrate_box_rec(f, axes, inner_spec, coords, level - 1);
        evals += r.evaluations;
        inner_err_sum += r.error_estimate;
        ++inner_calls;
        return r.value;
    };
    IntegralResult out;
    if (ax.kind == BoxAxis::Kind::SemiInfSingular)
        out = integrate_semiinf_singular(fouter, ax.left, ax.sing_exponent, spec);
    else
        out = integrate_real_line(fouter, spec, ax.hint);
    out.evaluations += evals;
    if (inner_calls > 0) {
        double width = (ax.kind == BoxAxis::Kind::RealLine) ? (ax.hint.hi - ax.hint.lo + 10.0) : 20.0;
        out.error_estimate += (inner_err_sum / double(inner_calls)) * width;
    }
    return out;
}

}  // namespace

IntegralResult integrate_box(const std::function<Complex(std::span<const double>)>& f,
                             std::span<const BoxAxis> axes, const QuadratureSpec& spec) {
    if (axes.empty() || axes.size() > 3)
        throw Error(ErrorCode::SizeLimit, "integrate_box supports 1 <= k <= 3 axes");
    std::vector<double> coords(axes.size(), 0.0);
    return integrate_box_rec(f, axes, spec, coords, int(axes.size()) - 1);
}

}  // namespace bctoda
