#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <stdexcept>
#include <utility>

#include "chain_state.hpp"
#include "disorder.hpp"
#include "ring_matrix.hpp"

namespace chainlab {

// Mean-zero degree-2 observable f(m, w) = w^T Q(m) w - tr(Q(m))/beta.
// The builder maps a disorder field to the symmetric coefficient matrix, so a
// translation acts on both the matrix indices and the disorder argument.
class QuadraticObservable {
  public:
    using Builder = std::function<RingMatrix(const DisorderField&)>;

    QuadraticObservable() = default;
    QuadraticObservable(Builder builder, int support_radius)
        : builder_(std::move(builder)), support_radius_(support_radius),
          cache_(std::make_shared<Cache>()) {}

    // Disorder-independent coefficients ("quenched" observable).
    static QuadraticObservable from_matrix(RingMatrix q, int support_radius) {
        return QuadraticObservable(
            [q = std::move(q)](const DisorderField&) { return q; }, support_radius);
    }

    // f = w_x w_y (x != y) or f = w_x^2 - 1/beta (x == y)
    static QuadraticObservable pair(int n, int x, int y) {
        RingMatrix q(n);
        if (q.wrap(x) == q.wrap(y)) {
            q(x, x) = 1.0;
        } else {
            q(x, y) = 0.5;
            q(y, x) = 0.5;
        }
        int radius = std::max(std::abs(signed_coord(x, n)), std::abs(signed_coord(y, n)));
        return from_matrix(std::move(q), radius);
    }

    // total energy fluctuation sum_x (w_x^2 - 1/beta)
    static QuadraticObservable total_energy(int n) {
        RingMatrix q(n);
        for (int i = 0; i < n; ++i) q(i, i) = 1.0;
        return from_matrix(std::move(q), n / 2);
    }

    // hamiltonian bond current 2 w_0 w_1 / sqrt(m_0 m_1)
    static QuadraticObservable current_ham(int n) {
        return QuadraticObservable(
            [n](const DisorderField& d) {
                RingMatrix q(n);
                q(0, 1) = d.hop(0);
                q(1, 0) = d.hop(0);
                return q;
            },
            1);
    }

    // exchange bond current lambda (w_1^2 - w_0^2)
    static QuadraticObservable current_noise(int n, double lambda) {
        RingMatrix q(n);
        q(0, 0) = -lambda;
        q(1, 1) = lambda;
        return from_matrix(std::move(q), 1);
    }

    bool valid() const { return static_cast<bool>(builder_); }
    int support_radius() const { return support_radius_; }

    const RingMatrix& realize(const DisorderField& disorder) const {
        if (!builder_) throw std::logic_error("empty observable");
        if (!cache_ || cache_->stamp != disorder.stamp()) {
            if (!cache_) cache_ = std::make_shared<Cache>();
            cache_->matrix = builder_(disorder);
            cache_->stamp = disorder.stamp();
        }
        return cache_->matrix;
    }

    // translated observable: (tau_y f)(m, w) = f(tau_y m, tau_y w)
    QuadraticObservable translated(int y) const {
        Builder base = builder_;
        return QuadraticObservable(
            [base, y](const DisorderField& d) { return base(d.rotated(y)).shifted(y); },
            support_radius_);
    }

    QuadraticObservable scaled(double c) const {
        Builder base = builder_;
        return QuadraticObservable(
            [base, c](const DisorderField& d) {
                RingMatrix q = base(d);
                q *= c;
                return q;
            },
            support_radius_);
    }

    // pointwise evaluation f(m, w)
    double evaluate(const DisorderField& disorder, const ChainState& state, double beta) const {
        const RingMatrix& q = realize(disorder);
        const int n = q.size();
        if (state.size() != n) throw std::invalid_argument("state size mismatch");
        double s = 0.0;
        for (int i = 0; i < n; ++i) {
            double row = 0.0;
            for (int j = 0; j < n; ++j) row += q.at(i, j) * state.omega[static_cast<std::size_t>(j)];
            s += state.omega[static_cast<std::size_t>(i)] * row;
        }
        return s - q.trace() / beta;
    }

  private:
    struct Cache {
        std::uint64_t stamp = 0;
        RingMatrix matrix;
    };
    Builder builder_;
    int support_radius_ = 0;
    mutable std::shared_ptr<Cache> cache_;
};

// Gibbs covariance of two mean-zero quadratic forms: <f, g>_beta = 2 beta^-2 tr(Qf Qg).
inline double inner_gibbs(const RingMatrix& qf, const RingMatrix& qg, double beta) {
    if (qf.size() != qg.size()) throw std::invalid_argument("ring size mismatch");
    return 2.0 / (beta * beta) * RingMatrix::dot(qf, qg);
}

inline double inner_gibbs(const QuadraticObservable& f, const QuadraticObservable& g,
                          const DisorderField& disorder, double beta) {
    return inner_gibbs(f.realize(disorder), g.realize(disorder), beta);
}

inline double norm_gibbs(const RingMatrix& qf, double beta) {
    return std::sqrt(std::max(0.0, inner_gibbs(qf, qf, beta)));
}

} // namespace chainlab
