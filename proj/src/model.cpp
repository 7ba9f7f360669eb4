#include "bctoda/model.hpp"

#include <Eigen/Dense>

#include <cmath>

namespace bctoda {

ModelParams make_params(double alpha, double beta) {
    if (!std::isfinite(alpha) || !std::isfinite(beta))
        throw Error(ErrorCode::InvalidParams, "non-finite boundary parameters");
    if (beta == 0.0)
        throw Error(ErrorCode::BLimitUnsupported,
                    "beta = 0 is the B-type limit; use the beta->0 limit check instead");
    if (beta < 0.0) throw Error(ErrorCode::InvalidParams, "beta must be positive");
    double g = 0.5 + alpha / beta;
    if (!(g > 0.0))
        throw Error(ErrorCode::InvalidParams, "require 1/2 + alpha/beta > 0");
    ModelParams p;
    p.alpha = alpha;
    p.beta = beta;
    p.g = g;
    return p;
}

bool Box::contains(const Point& p, double margin) const {
    if (p.arity() != arity()) return false;
    for (int d = 0; d < arity(); ++d)
        if (p[d] < axes[static_cast<size_t>(d)][0] + margin || p[d] > axes[static_cast<size_t>(d)][1] - margin) return false;
    return true;
}

std::vector<double> cheb_nodes(int n, double lo, double hi) {
    std::vector<double> x(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) {
        double c = std::cos(M_PI * (j + 0.5) / n);
        x[static_cast<size_t>(j)] = 0.5 * (lo + hi) + 0.5 * (hi - lo) * c;
    }
    return x;
}

namespace {

// Clenshaw recurrence; u in [-1, 1] in the Chebyshev variable.
Complex clenshaw(const Complex* c, int n, double u) {
    Complex b1{0.0, 0.0}, b2{0.0, 0.0};
    for (int k = n - 1; k >= 1; --k) {
        Complex b0 = 2.0 * u * b1 - b2 + c[k];
        b2 = b1;
        b1 = b0;
    }
    return u * b1 - b2 + c[0];
}

double to_unit(double x, double lo, double hi) { return (2.0 * x - lo - hi) / (hi - lo); }

}  // namespace

Complex ChebCache::eval(const Point& p) const {
    const int d = box.arity();
    if (d == 1) {
        return clenshaw(coeff.data(), degree[0], to_unit(p[0], box.axes[0][0], box.axes[0][1]));
    }
    if (d == 2) {
        const int n1 = degree[0], n2 = degree[1];
        double u2 = to_unit(p[1], box.axes[1][0], box.axes[1][1]);
        // contract the trailing axis, then the leading one
        std::vector<Complex> tmp(static_cast<size_t>(n1));
        for (int i = 0; i < n1; ++i) tmp[static_cast<size_t>(i)] = clenshaw(coeff.data() + static_cast<size_t>(i) * n2, n2, u2);
        return clenshaw(tmp.data(), n1, to_unit(p[0], box.axes[0][0], box.axes[0][1]));
    }
    // d == 3
    const int n1 = degree[0], n2 = degree[1], n3 = degree[2];
    double u2 = to_unit(p[1], box.axes[1][0], box.axes[1][1]);
    double u3 = to_unit(p[2], box.axes[2][0], box.axes[2][1]);
    std::vector<Complex> tmp(static_cast<size_t>(n1));
    std::vector<Complex> row(static_cast<size_t>(n2));
    for (int i = 0; i < n1; ++i) {
        for (int j = 0; j < n2; ++j)
            row[static_cast<size_t>(j)] = clenshaw(coeff.data() + (static_cast<size_t>(i) * n2 + static_cast<size_t>(j)) * n3, n3, u3);
        tmp[static_cast<size_t>(i)] = clenshaw(row.data(), n2, u2);
    }
    return clenshaw(tmp.data(), n1, to_unit(p[0], box.axes[0][0], box.axes[0][1]));
}

Complex SampledFunction::eval(const Point& p) const {
    if (cache_ && cache_->box.contains(p)) return cache_->eval(p);
    return evaluate_(p);
}

Complex SampledFunction::eval_clipped(const Point& p) const {
    if (cache_) return cache_->box.contains(p) ? cache_->eval(p) : Complex{0.0, 0.0};
    return evaluate_(p);
}

namespace {

// Coefficient transform matrix for Chebyshev-Gauss nodes:
// c_k = (2 - delta_{k0})/n * sum_j f(x_j) cos(pi k (j + 1/2)/n).
Eigen::MatrixXd cheb_transform(int n) {
    Eigen::MatrixXd T(n, n);
    for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j)
            T(k, j) = (k == 0 ? 1.0 : 2.0) / n * std::cos(M_PI * k * (j + 0.5) / n);
    return T;
}

}  // namespace

SampledFunction build_cache(const SampledFunction& f, const Box& box,
                            const std::vector<int>& degree_per_axis, int max_probe_points) {
    const int d = f.arity();
    if (d < 1 || d > 3) throw Error(ErrorCode::SizeLimit, "cache supports arity 1..3");
    if (box.arity() != d || int(degree_per_axis.size()) != d)
        throw Error(ErrorCode::InvalidParams, "box/degree arity mismatch");

    std::vector<std::vector<double>> nodes(static_cast<size_t>(d));
    size_t total = 1;
    for (int a = 0; a < d; ++a) {
        if (degree_per_axis[static_cast<size_t>(a)] < 2)
            throw Error(ErrorCode::InvalidParams, "need at least 2 nodes per axis");
        nodes[static_cast<size_t>(a)] = cheb_nodes(degree_per_axis[static_cast<size_t>(a)], box.axes[static_cast<size_t>(a)][0],
                                      box.axes[static_cast<size_t>(a)][1]);
        total *= static_cast<size_t>(degree_per_axis[static_cast<size_t>(a)]);
    }

    std::vector<Complex> values(total);
    std::vector<int> idx(static_cast<size_t>(d), 0);
    Point p;
    p.coords.resize(static_cast<size_t>(d));
    for (size_t lin = 0; lin < total; ++lin) {
        size_t rem = lin;
        for (int a = d - 1; a >= 0; --a) {
            int n = degree_per_axis[static_cast<size_t>(a)];
            idx[static_cast<size_t>(a)] = int(rem % static_cast<size_t>(n));
            rem /= static_cast<size_t>(n);
        }
        for (int a = 0; a < d; ++a) p.coords[static_cast<size_t>(a)] = nodes[static_cast<size_t>(a)][static_cast<size_t>(idx[static_cast<size_t>(a)])];
        values[lin] = f.eval_direct(p);
    }

    // transform axis by axis
    std::vector<Complex> coeff = values;
    for (int a = d - 1; a >= 0; --a) {
        int n = degree_per_axis[static_cast<size_t>(a)];
        Eigen::MatrixXd T = cheb_transform(n);
        size_t stride = 1;
        for (int b = a + 1; b < d; ++b) stride *= static_cast<size_t>(degree_per_axis[static_cast<size_t>(b)]);
        size_t outer = total / (static_cast<size_t>(n) * stride);
        std::vector<Complex> line(static_cast<size_t>(n)), out(static_cast<size_t>(n));
        for (size_t o = 0; o < outer; ++o) {
            for (size_t s = 0; s < stride; ++s) {
                size_t base = o * static_cast<size_t>(n) * stride + s;
                for (int j = 0; j < n; ++j) line[static_cast<size_t>(j)] = coeff[base + static_cast<size_t>(j) * stride];
                for (int k = 0; k < n; ++k) {
                    Complex acc{0.0, 0.0};
                    for (int j = 0; j < n; ++j) acc += T(k, j) * line[static_cast<size_t>(j)];
                    out[static_cast<size_t>(k)] = acc;
                }
                for (int k = 0; k < n; ++k) coeff[base + static_cast<size_t>(k) * stride] = out[static_cast<size_t>(k)];
            }
        }
    }

    ChebCache cache;
    cache.box = box;
    cache.degree = degree_per_axis;
    cache.coeff = std::move(coeff);

    // probe on a 3x denser uniform grid (optionally subsampled)
    double max_abs = 0.0;
    for (const Complex& v : values) max_abs = std::max(max_abs, std::abs(v));
    std::vector<int> probe_n(static_cast<size_t>(d), 0);
    size_t probe_total = 1;
    for (int a = 0; a < d; ++a) {
        probe_n[static_cast<size_t>(a)] = 3 * degree_per_axis[static_cast<size_t>(a)];
        probe_total *= static_cast<size_t>(probe_n[static_cast<size_t>(a)]);
    }
    size_t probe_stride = 1;
    if (max_probe_points > 0 && probe_total > static_cast<size_t>(max_probe_points))
        probe_stride = probe_total / static_cast<size_t>(max_probe_points);
    double perr = 0.0;
    for (size_t lin = 0; lin < probe_total; lin += probe_stride) {
        size_t rem = lin;
        for (int a = d - 1; a >= 0; --a) {
            int n = probe_n[static_cast<size_t>(a)];
            int i = int(rem % static_cast<size_t>(n));
            rem /= static_cast<size_t>(n);
            double lo = box.axes[static_cast<size_t>(a)][0], hi = box.axes[static_cast<size_t>(a)][1];
            p.coords[static_cast<size_t>(a)] = lo + (hi - lo) * (i + 0.5) / n;
        }
        double e = std::abs(cache.eval(p) - f.eval_direct(p));
        perr = std::max(perr, e);
    }
    cache.probe_error = perr;
    if (max_abs > 0.0 && perr > 1e-7 * max_abs)
        throw Error(ErrorCode::CacheAccuracy,
                    "interpolant probe error " + std::to_string(perr) + " exceeds 1e-7 * max|f| = " +
                        std::to_string(1e-7 * max_abs));

    SampledFunction g = f;
    g.set_cache(std::move(cache));
    return g;
}

}  // namespace bctoda
