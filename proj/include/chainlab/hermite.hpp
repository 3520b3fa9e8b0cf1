#pragma once

#include <cmath>
#include <map>
#include <stdexcept>
#include <utility>

#include "params.hpp"
#include "ring_matrix.hpp"

namespace chainlab {

// Degree-2 occupation function: coefficients over the orthonormal basis
// {w_x w_y (x < y), (w_x^2 - 1)/sqrt(2)} of the two-particle sector at unit
// temperature. Keys are ordered ring sites; a doubled site is (x, x).
class OccupationFunction {
  public:
    explicit OccupationFunction(int n) : n_(n) {}

    int ring_size() const { return n_; }

    double coeff(int x, int y) const {
        auto it = c_.find(key(x, y));
        return it == c_.end() ? 0.0 : it->second;
    }

    void add(int x, int y, double v) {
        if (v == 0.0) return;
        auto k = key(x, y);
        auto [it, inserted] = c_.try_emplace(k, v);
        if (!inserted) {
            it->second += v;
            if (it->second == 0.0) c_.erase(it);
        }
    }

    const std::map<std::pair<int, int>, double>& coefficients() const { return c_; }

    static double inner(const OccupationFunction& f, const OccupationFunction& g) {
        if (f.n_ != g.n_) throw std::invalid_argument("ring size mismatch");
        const auto& small = f.c_.size() <= g.c_.size() ? f : g;
        const auto& large = f.c_.size() <= g.c_.size() ? g : f;
        double s = 0.0;
        for (const auto& [k, v] : small.c_) {
            auto it = large.c_.find(k);
            if (it != large.c_.end()) s += v * it->second;
        }
        return s;
    }

  private:
    std::pair<int, int> key(int x, int y) const {
        int a = ((x % n_) + n_) % n_;
        int b = ((y % n_) + n_) % n_;
        return a <= b ? std::make_pair(a, b) : std::make_pair(b, a);
    }

    int n_;
    std::map<std::pair<int, int>, double> c_;
};

// Coefficient matrix -> occupation coefficients, valid at unit temperature:
// F(x, y) = 2 Q(x, y) for x < y and F(x, x) = sqrt(2) Q(x, x).
inline OccupationFunction hermite_decompose(const RingMatrix& q, double beta) {
    if (beta != 1.0) throw std::invalid_argument("hermite basis requires beta = 1; rescale first");
    const int n = q.size();
    OccupationFunction f(n);
    for (int x = 0; x < n; ++x) {
        f.add(x, x, std::sqrt(2.0) * q.at(x, x));
        for (int y = x + 1; y < n; ++y) f.add(x, y, 2.0 * q.at(x, y));
    }
    return f;
}

inline RingMatrix hermite_reconstruct(const OccupationFunction& f) {
    RingMatrix q(f.ring_size());
    for (const auto& [k, v] : f.coefficients()) {
        auto [x, y] = k;
        if (x == y) {
            q(x, x) = v / std::sqrt(2.0);
        } else {
            q(x, y) = 0.5 * v;
            q(y, x) = 0.5 * v;
        }
    }
    return q;
}

// Noise generator on occupation coefficients:
//   (fraktur-S F)(xi) = lambda sum_x [F(xi^{x,x+1}) - F(xi)]
//                     + gamma sum_x ((-1)^{xi_x} - 1) F(xi).
// For the two-particle sector the flip factor is -2 per singly-occupied site.
inline OccupationFunction act_occupation_noise(const OccupationFunction& f, const ModelParams& p) {
    const int n = f.ring_size();
    OccupationFunction out(n);
    auto swap_site = [n](int z, int bond) {
        int a = bond, b = (bond + 1) % n;
        if (z == a) return b;
        if (z == b) return a;
        return z;
    };
    for (const auto& [k, v] : f.coefficients()) {
        auto [x, y] = k;
        // flip part: -2 gamma per odd occupation number
        if (x != y) out.add(x, y, -4.0 * p.gamma * v);
        // exchange part: all ring bonds
        for (int bond = 0; bond < n; ++bond) {
            int xs = swap_site(x, bond);
            int ys = swap_site(y, bond);
            if (xs == x && ys == y) continue;
            out.add(xs, ys, p.lambda * v);
            out.add(x, y, -p.lambda * v);
        }
    }
    return out;
}

} // namespace chainlab
