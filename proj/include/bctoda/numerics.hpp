#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "bctoda/errors.hpp"

namespace bctoda {

using Complex = std::complex<double>;

inline constexpr Complex I{0.0, 1.0};

/// Tolerances and limits shared by all quadrature engines.
struct QuadratureSpec {
    double rel_tol = 1e-9;
    double abs_tol = 1e-12;
    int max_refinement_depth = 15;
    /// Decades of decay below the target tolerance beyond which integrand
    /// tails are dropped.
    double truncation_margin = 3.0;

    static QuadratureSpec line() { return {}; }
    static QuadratureSpec iterated() {
        QuadratureSpec s;
        s.rel_tol = 1e-7;
        s.abs_tol = 1e-10;
        return s;
    }
    QuadratureSpec tightened(double factor) const {
        QuadratureSpec s = *this;
        s.rel_tol *= factor;
        s.abs_tol *= factor;
        return s;
    }
};

struct IntegralResult {
    Complex value{0.0, 0.0};
    double error_estimate = 0.0;
    long evaluations = 0;
};

/// Interval that contains the bulk of the integrand's mass; the engine
/// expands outward from it until the tails are below the truncation cutoff.
struct DecayHint {
    double lo = -5.0;
    double hi = 5.0;
};

/// Principal-branch log Gamma. Accurate to ~1e-14 relative (in exp) for
/// |z| <= 50. Throws PoleError at nonpositive integers.
Complex log_gamma(Complex z);

/// exp(log_gamma(z)).
Complex gamma_fn(Complex z);

/// Adaptive integration of f over the real line. The integrand must decay
/// at least exponentially on both sides; `hint` locates its core support.
IntegralResult integrate_real_line(const std::function<Complex(double)>& f,
                                   const QuadratureSpec& spec, DecayHint hint);

/// Integration over (left, infinity) with algebraic behavior
/// (z-left)^sing_exponent at the endpoint and double-exponential decay at
/// +infinity. Uses the substitution z = left + log(cosh w) followed by a
/// double-exponential rule.
IntegralResult integrate_semiinf_singular(const std::function<Complex(double)>& f, double left,
                                          double sing_exponent, const QuadratureSpec& spec);

/// Same engine, but the callback receives the offset s = z - left. Use this
/// form whenever the integrand needs s to full relative precision near the
/// endpoint (computing z - left after the fact cancels catastrophically).
IntegralResult integrate_semiinf_singular_offset(const std::function<Complex(double)>& f_of_s,
                                                 double sing_exponent, const QuadratureSpec& spec);

struct BoxAxis {
    enum class Kind { RealLine, SemiInfSingular } kind = Kind::RealLine;
    DecayHint hint{};           // RealLine
    double left = 0.0;          // SemiInfSingular
    double sing_exponent = 0.0; // SemiInfSingular
};

/// Iterated integration over k <= 3 axes, innermost axis first (axes[0] is
/// innermost). Error estimates accumulate additively across axes.
IntegralResult integrate_box(const std::function<Complex(std::span<const double>)>& f,
                             std::span<const BoxAxis> axes, const QuadratureSpec& spec);

}  // namespace bctoda
