#pragma once

// SampledFunction: real values on a uniform node grid over a stated interval.
// Carries mollified densities, kernel profiles and window functions.

#include <cmath>
#include <cstddef>
#include <vector>

#include "quadpat/numerics.hpp"

namespace quadpat {

class SampledFunction {
public:
    SampledFunction() = default;
    SampledFunction(double x0, double x1, std::vector<double> values)
        : x0_(x0), x1_(x1), v_(std::move(values)) {
        if (v_.size() < 2 || !(x1_ > x0_)) fail(ErrorKind::parameter, "SampledFunction: need >= 2 nodes and x1 > x0");
    }

    template <class F>
    static SampledFunction sample(F&& f, double x0, double x1, std::size_t nodes) {
        std::vector<double> v(nodes);
        const double h = (x1 - x0) / (double)(nodes - 1);
        for (std::size_t k = 0; k < nodes; ++k) v[k] = f(x0 + h * (double)k);
        return SampledFunction(x0, x1, std::move(v));
    }

    double x0() const { return x0_; }
    double x1() const { return x1_; }
    std::size_t nodes() const { return v_.size(); }
    double step() const { return (x1_ - x0_) / (double)(v_.size() - 1); }
    const std::vector<double>& values() const { return v_; }
    std::vector<double>& values() { return v_; }

    // Linear interpolation; zero outside [x0, x1].
    double operator()(double x) const {
        if (x < x0_ || x > x1_) return 0.0;
        const double t = (x - x0_) / step();
        std::size_t k = (std::size_t)t;
        if (k >= v_.size() - 1) k = v_.size() - 2;
        const double u = t - (double)k;
        return v_[k] * (1.0 - u) + v_[k + 1] * u;
    }

    // Trapezoid integral over the whole grid.
    double integral() const {
        long double acc = 0.5L * (v_.front() + v_.back());
        for (std::size_t k = 1; k + 1 < v_.size(); ++k) acc += v_[k];
        return (double)(acc * (long double)step());
    }

    double max_abs() const {
        double m = 0.0;
        for (double x : v_) m = std::max(m, std::abs(x));
        return m;
    }

    SampledFunction& operator-=(const SampledFunction& o) {
        if (o.v_.size() != v_.size() || o.x0_ != x0_ || o.x1_ != x1_)
            fail(ErrorKind::parameter, "SampledFunction: grid mismatch in subtraction");
        for (std::size_t k = 0; k < v_.size(); ++k) v_[k] -= o.v_[k];
        return *this;
    }

    friend SampledFunction operator-(SampledFunction a, const SampledFunction& b) { return a -= b; }

private:
    double x0_ = 0.0, x1_ = 1.0;
    std::vector<double> v_;
};

}  // namespace quadpat
