#pragma once

#include <cmath>
#include <memory>
#include <stdexcept>
#include <vector>

#include "disorder.hpp"
#include "generator.hpp"
#include "gradient_form.hpp"
#include "observable.hpp"
#include "ring_matrix.hpp"
#include "star_products.hpp"

namespace chainlab {

namespace detail {

// Dense symmetric positive definite solve (Cholesky). Sizes here are <= n/2.
class SpdFactor {
  public:
    explicit SpdFactor(std::vector<double> a, int n) : n_(n), l_(std::move(a)) {
        for (int j = 0; j < n_; ++j) {
            double d = l_[idx(j, j)];
            for (int k = 0; k < j; ++k) d -= l_[idx(j, k)] * l_[idx(j, k)];
            if (d <= 0.0) throw std::runtime_error("matrix not positive definite");
            d = std::sqrt(d);
            l_[idx(j, j)] = d;
            for (int i = j + 1; i < n_; ++i) {
                double s = l_[idx(i, j)];
                for (int k = 0; k < j; ++k) s -= l_[idx(i, k)] * l_[idx(j, k)];
                l_[idx(i, j)] = s / d;
            }
        }
    }

    std::vector<double> solve(std::vector<double> b) const {
        for (int i = 0; i < n_; ++i) {
            double s = b[static_cast<std::size_t>(i)];
            for (int k = 0; k < i; ++k) s -= l_[idx(i, k)] * b[static_cast<std::size_t>(k)];
            b[static_cast<std::size_t>(i)] = s / l_[idx(i, i)];
        }
        for (int i = n_ - 1; i >= 0; --i) {
            double s = b[static_cast<std::size_t>(i)];
            for (int k = i + 1; k < n_; ++k) s -= l_[idx(k, i)] * b[static_cast<std::size_t>(k)];
            b[static_cast<std::size_t>(i)] = s / l_[idx(i, i)];
        }
        return b;
    }

  private:
    std::size_t idx(int i, int j) const { return static_cast<std::size_t>(i) * n_ + j; }
    int n_;
    std::vector<double> l_;
};

} // namespace detail

// Variance seminorm on the fluctuation sector at unit temperature:
//
//   |||phi|||^2 = sup_{g, a} { 2<<phi, g>>_* + 2a<<phi>>_** - D_0(a w_0^2 + Gamma_g) }.
//
// On the ring the translate sum Gamma_g of a cylinder g has a circulant
// coefficient matrix T, and every term of the objective is an explicit
// function of T and a:
//
//   2<<phi, g>>_*  = 4 tr(Q_phi T)
//   D_0 terms      = 8 gamma sum_{x != 0} T(0,x)^2
//                  + 4 lambda sum_{x != 0,1} (T(0,x) - T(1,x))^2
//                  + 2 lambda (a + T(0,0) - T(1,1))^2
//
// so the supremum over the diagonal symbol t_d of T is a small positive
// definite quadratic program, and the gradient direction a decouples with
// closed-form value <<phi>>_**^2 / (2 lambda). The Hessian is disorder-free
// and factorized once per (n, gamma, lambda).
class SeminormEngine {
  public:
    SeminormEngine(int n, const ModelParams& params)
        : n_(n), gamma_(params.gamma), lambda_(params.lambda), dmax_(n / 2) {
        std::vector<double> k(static_cast<std::size_t>(dmax_) * dmax_, 0.0);
        auto add = [&](int d1, int d2, double w) {
            k[static_cast<std::size_t>(d1 - 1) * dmax_ + (d2 - 1)] += w;
        };
        for (int x = 1; x < n_; ++x) add(dsym(x), dsym(x), 8.0 * gamma_);
        for (int x = 2; x < n_; ++x) {
            int a = dsym(x), b = dsym(x - 1);
            add(a, a, 4.0 * lambda_);
            add(b, b, 4.0 * lambda_);
            add(a, b, -4.0 * lambda_);
            add(b, a, -4.0 * lambda_);
        }
        factor_ = std::make_shared<detail::SpdFactor>(std::move(k), dmax_);
    }

    int size() const { return n_; }

    // linear functional of the QP: L_d = 4 sum_{x: d(x)=d} s_x, s_x = sum_i Q(i, i+x)
    std::vector<double> linear_term(const RingMatrix& q) const {
        std::vector<double> L(static_cast<std::size_t>(dmax_), 0.0);
        for (int x = 1; x < n_; ++x) {
            double s = 0.0;
            for (int i = 0; i < n_; ++i) s += q(i, i + x);
            L[static_cast<std::size_t>(dsym(x) - 1)] += 4.0 * s;
        }
        return L;
    }

    double qp_value(const std::vector<double>& L) const {
        std::vector<double> y = factor_->solve(L);
        double v = 0.0;
        for (std::size_t i = 0; i < L.size(); ++i) v += L[i] * y[i];
        return 0.25 * v;
    }

    double qp_pair(const std::vector<double>& L1, const std::vector<double>& L2) const {
        std::vector<double> y = factor_->solve(L2);
        double v = 0.0;
        for (std::size_t i = 0; i < L1.size(); ++i) v += L1[i] * y[i];
        return 0.25 * v;
    }

    // <<phi>>_** of a realized coefficient matrix (centered window coordinate)
    double star_star_of(const RingMatrix& q) const {
        double s = 0.0;
        for (int x = 0; x < n_; ++x) s += signed_coord(x, n_) * q.at(x, x);
        return 2.0 * s;
    }

    double value(const RingMatrix& q_phi) const {
        double ss = star_star_of(q_phi);
        return qp_value(linear_term(q_phi)) + ss * ss / (2.0 * lambda_);
    }

    double pair(const RingMatrix& q_phi, const RingMatrix& q_psi) const {
        return qp_pair(linear_term(q_phi), linear_term(q_psi)) +
               star_star_of(q_phi) * star_star_of(q_psi) / (2.0 * lambda_);
    }

    // the maximizing test direction: circulant with symbol t, plus the scalar a
    struct Maximizer {
        std::vector<double> symbol; // t_d, d = 1..n/2
        double a = 0.0;
    };

    Maximizer maximizer(const RingMatrix& q_phi) const {
        Maximizer m;
        std::vector<double> L = linear_term(q_phi);
        m.symbol = factor_->solve(L);
        for (auto& v : m.symbol) v *= 0.5;
        m.a = star_star_of(q_phi) / (2.0 * lambda_);
        return m;
    }

  private:
    int dsym(int x) const {
        int r = ((x % n_) + n_) % n_;
        return std::min(r, n_ - r);
    }

    int n_;
    double gamma_, lambda_;
    int dmax_;
    std::shared_ptr<detail::SpdFactor> factor_;
};

// |||phi|||_1^2 averaged over a disorder ensemble; phi given in gradient form.
inline double variance_seminorm_sq(const GradientForm& phi, const ModelParams& params,
                                   const std::vector<DisorderField>& ensemble) {
    if (ensemble.empty()) throw std::invalid_argument("empty disorder ensemble");
    SeminormEngine engine(ensemble.front().size(), params);
    double acc = 0.0;
    for (const auto& d : ensemble) acc += engine.value(phi.assemble(d));
    return acc / static_cast<double>(ensemble.size());
}

// polarized semi-inner product <<phi, psi>>_1
inline double variance_seminorm_pair(const GradientForm& phi, const GradientForm& psi,
                                     const ModelParams& params,
                                     const std::vector<DisorderField>& ensemble) {
    if (ensemble.empty()) throw std::invalid_argument("empty disorder ensemble");
    SeminormEngine engine(ensemble.front().size(), params);
    double acc = 0.0;
    for (const auto& d : ensemble) acc += engine.pair(phi.assemble(d), psi.assemble(d));
    return acc / static_cast<double>(ensemble.size());
}

} // namespace chainlab
