#pragma once

// Test-only oracles, independent of the library implementation paths they
// check: Wick/Isserlis evaluation of Gaussian quartic moments, element-wise
// finite formulas, and small brute-force enumerations.

#include <array>
#include <cmath>
#include <functional>
#include <vector>

#include "chainlab/disorder.hpp"
#include "chainlab/ring_matrix.hpp"

namespace oracle {

// E[w_a w_b w_c w_d] under the product Gaussian with variance 1/beta:
// Isserlis pairing sum.
inline double quartic_moment(int a, int b, int c, int d, int n, double beta) {
    auto eq = [n](int i, int j) { return ((i % n) + n) % n == ((j % n) + n) % n; };
    double s = 0.0;
    if (eq(a, b) && eq(c, d)) s += 1.0;
    if (eq(a, c) && eq(b, d)) s += 1.0;
    if (eq(a, d) && eq(b, c)) s += 1.0;
    return s / (beta * beta);
}

// Covariance E[f g] - E[f] E[g] of two quadratic forms f = w^T A w, g = w^T B w
// by brute-force Isserlis over all index pairs.
inline double quadratic_covariance(const chainlab::RingMatrix& a, const chainlab::RingMatrix& b,
                                   double beta) {
    const int n = a.size();
    double efg = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l)
                    efg += a.at(i, j) * b.at(k, l) * quartic_moment(i, j, k, l, n, beta);
    double ef = a.trace() / beta;
    double eg = b.trace() / beta;
    return efg - ef * eg;
}

// drift formula evaluated element-wise straight from the definition
inline std::vector<double> drift_reference(const std::vector<double>& w,
                                           const std::vector<double>& m) {
    const int n = static_cast<int>(w.size());
    auto wrap = [n](int x) { return ((x % n) + n) % n; };
    std::vector<double> f(w.size());
    for (int x = 0; x < n; ++x) {
        double right = w[static_cast<std::size_t>(wrap(x + 1))] /
                       std::sqrt(m[static_cast<std::size_t>(x)] *
                                 m[static_cast<std::size_t>(wrap(x + 1))]);
        double left = w[static_cast<std::size_t>(wrap(x - 1))] /
                      std::sqrt(m[static_cast<std::size_t>(wrap(x - 1))] *
                                m[static_cast<std::size_t>(x)]);
        f[static_cast<std::size_t>(x)] = right - left;
    }
    return f;
}

// mean and sample variance
struct Moments {
    double mean = 0.0;
    double var = 0.0;
    std::size_t count = 0;
};

inline Moments moments(const std::vector<double>& v) {
    Moments m;
    m.count = v.size();
    for (double x : v) m.mean += x;
    m.mean /= static_cast<double>(v.size());
    for (double x : v) m.var += (x - m.mean) * (x - m.mean);
    m.var /= static_cast<double>(v.size() - 1);
    return m;
}

} // namespace oracle
