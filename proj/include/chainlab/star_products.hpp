#pragma once

#include <stdexcept>
#include <vector>

#include "disorder.hpp"
#include "observable.hpp"
#include "ring_matrix.hpp"

namespace chainlab {

inline void check_star_support(const QuadraticObservable& f, int n) {
    if (4 * f.support_radius() >= n)
        throw std::invalid_argument("support radius must be < n/4 for ring star products");
}

// <<f, g>>_star at one disorder sample: sum over all ring translates of g.
inline double star_inner_sample(const QuadraticObservable& f, const QuadraticObservable& g,
                                const DisorderField& disorder, double beta) {
    const int n = disorder.size();
    check_star_support(f, n);
    check_star_support(g, n);
    const RingMatrix& qf = f.realize(disorder);
    double s = 0.0;
    for (int x = 0; x < n; ++x) {
        QuadraticObservable gx = g.translated(x);
        s += inner_gibbs(qf, gx.realize(disorder), beta);
    }
    return s;
}

inline double star_inner(const QuadraticObservable& f, const QuadraticObservable& g,
                         const std::vector<DisorderField>& ensemble, double beta) {
    if (ensemble.empty()) throw std::invalid_argument("empty disorder ensemble");
    double s = 0.0;
    for (const auto& d : ensemble) s += star_inner_sample(f, g, d, beta);
    return s / static_cast<double>(ensemble.size());
}

// <<f>>_starstar = sum_x x E[f w_x^2] with the signed centered-window coordinate.
inline double star_star_sample(const QuadraticObservable& f, const DisorderField& disorder,
                               double beta) {
    const int n = disorder.size();
    check_star_support(f, n);
    const RingMatrix& qf = f.realize(disorder);
    double s = 0.0;
    for (int x = 0; x < n; ++x) s += signed_coord(x, n) * qf.at(x, x);
    return 2.0 / (beta * beta) * s;
}

inline double star_star(const QuadraticObservable& f, const std::vector<DisorderField>& ensemble,
                        double beta) {
    if (ensemble.empty()) throw std::invalid_argument("empty disorder ensemble");
    double s = 0.0;
    for (const auto& d : ensemble) s += star_star_sample(f, d, beta);
    return s / static_cast<double>(ensemble.size());
}

} // namespace chainlab
