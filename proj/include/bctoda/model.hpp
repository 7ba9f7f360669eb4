#pragma once

#include <array>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "bctoda/numerics.hpp"

namespace bctoda {

/// Boundary parameters; g is derived as 1/2 + alpha/beta and never set
/// independently.
struct ModelParams {
    double alpha = 0.0;
    double beta = 1.0;
    double g = 0.5;
};

/// Validates (alpha, beta) and derives g. Throws InvalidParams when beta < 0
/// or g <= 0, and BLimitUnsupported when beta == 0 (the beta -> 0 regime is
/// covered by the dedicated limit check, not by direct evaluation).
ModelParams make_params(double alpha, double beta);

struct SpectralTuple {
    std::vector<Complex> lambdas;
    int n() const { return int(lambdas.size()); }
};

struct Point {
    std::vector<double> coords;
    Point() = default;
    Point(std::initializer_list<double> c) : coords(c) {}
    explicit Point(std::vector<double> c) : coords(std::move(c)) {}
    int arity() const { return int(coords.size()); }
    double operator[](int i) const { return coords[static_cast<size_t>(i)]; }
};

enum class DecayClass { exp_tempered, poly_at_plus_infinity };

struct Box {
    std::vector<std::array<double, 2>> axes;  // {lo, hi} per axis
    int arity() const { return int(axes.size()); }
    bool contains(const Point& p, double margin = 0.0) const;
};

/// Tensor Chebyshev interpolant on a box.
struct ChebCache {
    Box box;
    std::vector<int> degree;      // nodes per axis
    std::vector<Complex> coeff;   // row-major tensor of Chebyshev coefficients
    double probe_error = 0.0;     // max |interp - direct| on the probe grid

    Complex eval(const Point& p) const;
};

/// A function of k real coordinates: an evaluation callback plus an optional
/// cached interpolant over a truncated box.
class SampledFunction {
public:
    SampledFunction() = default;
    SampledFunction(int arity, std::function<Complex(const Point&)> evaluate,
                    DecayClass decay = DecayClass::exp_tempered)
        : arity_(arity), evaluate_(std::move(evaluate)), decay_(decay) {}

    int arity() const { return arity_; }
    DecayClass decay_class() const { return decay_; }
    void set_decay_class(DecayClass d) { decay_ = d; }
    bool has_cache() const { return cache_ != nullptr; }
    const ChebCache& cache() const { return *cache_; }
    void set_cache(ChebCache c) { cache_ = std::make_shared<const ChebCache>(std::move(c)); }

    /// Cache when inside the box, direct callback otherwise.
    Complex eval(const Point& p) const;

    /// Policy used by the integral-operator appliers: cache when inside the
    /// box, zero outside it (the truncation boxes are sized so that the
    /// discarded mass is negligible). Without a cache, the direct callback.
    Complex eval_clipped(const Point& p) const;

    Complex eval_direct(const Point& p) const { return evaluate_(p); }

private:
    int arity_ = 0;
    std::function<Complex(const Point&)> evaluate_;
    DecayClass decay_ = DecayClass::exp_tempered;
    std::shared_ptr<const ChebCache> cache_;
};

/// Chebyshev-Gauss nodes of the given size mapped to [lo, hi].
std::vector<double> cheb_nodes(int n, double lo, double hi);

/// Builds the tensor Chebyshev interpolant of f on the box and verifies it
/// against direct evaluation on a 3x denser probe grid (subsampled to at most
/// max_probe_points when positive). Throws CacheAccuracy when the probe error
/// exceeds 1e-7 * max|f|.
SampledFunction build_cache(const SampledFunction& f, const Box& box,
                            const std::vector<int>& degree_per_axis, int max_probe_points = 0);

inline SampledFunction build_cache(const SampledFunction& f, const Box& box, int degree_per_axis,
                                   int max_probe_points = 0) {
    return build_cache(f, box, std::vector<int>(static_cast<size_t>(f.arity()), degree_per_axis),
                       max_probe_points);
}

}  // namespace bctoda
