#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "disorder.hpp"
#include "generator.hpp"
#include "gradient_form.hpp"
#include "observable.hpp"
#include "ring_matrix.hpp"

namespace chainlab {

struct SolveReport {
    int iterations = 0;
    double relative_residual = 0.0;
    bool converged = false;
};

// The noise generator restricted to a window is symmetric negative semidefinite
// with kernel spanned by the window energy sum_{x in W} (w_x^2 - 1/beta); all
// inverse solves project that direction out and run CG on the complement.
class WindowNoiseOperator {
  public:
    WindowNoiseOperator(int n, ModelParams params, NoiseRestriction res)
        : n_(n), params_(std::move(params)), res_(std::move(res)) {
        std::vector<char> in(static_cast<std::size_t>(n), 0);
        for (int s : res_.sites) in[static_cast<std::size_t>(((s % n) + n) % n)] = 1;
        for (int b : res_.bonds) {
            in[static_cast<std::size_t>(((b % n) + n) % n)] = 1;
            in[static_cast<std::size_t>(((b + 1) % n + n) % n)] = 1;
        }
        for (int i = 0; i < n; ++i)
            if (in[static_cast<std::size_t>(i)]) window_.push_back(i);
    }

    const std::vector<int>& window() const { return window_; }

    // -S restricted; positive semidefinite
    RingMatrix apply(const RingMatrix& q) const {
        RingMatrix r = act_noise_restricted(q, params_, res_);
        r *= -1.0;
        return r;
    }

    void project_out_kernel(RingMatrix& q) const {
        double t = 0.0;
        for (int i : window_) t += q.at(i, i);
        t /= static_cast<double>(window_.size());
        for (int i : window_) q.at(i, i) -= t;
    }

    // Solve (-S) g = u by conjugate gradients on the kernel complement.
    RingMatrix solve(const RingMatrix& u, double rel_tol, int max_iter, SolveReport* report) const {
        RingMatrix b = u;
        project_out_kernel(b);

        RingMatrix x(n_);
        RingMatrix r = b;
        RingMatrix p = r;
        double rs = RingMatrix::dot(r, r);
        const double b_norm = std::sqrt(RingMatrix::dot(b, b));
        SolveReport rep;
        if (b_norm == 0.0) {
            rep.converged = true;
            if (report) *report = rep;
            return x;
        }
        int it = 0;
        for (; it < max_iter; ++it) {
            if (std::sqrt(rs) <= rel_tol * b_norm) break;
            RingMatrix ap = apply(p);
            project_out_kernel(ap);
            double denom = RingMatrix::dot(p, ap);
            if (denom <= 0.0) break; // left the positive cone; should not happen
            double alpha = rs / denom;
            for (std::size_t k = 0; k < x.data().size(); ++k) {
                x.data()[k] += alpha * p.data()[k];
                r.data()[k] -= alpha * ap.data()[k];
            }
            double rs_new = RingMatrix::dot(r, r);
            double beta = rs_new / rs;
            rs = rs_new;
            for (std::size_t k = 0; k < p.data().size(); ++k)
                p.data()[k] = r.data()[k] + beta * p.data()[k];
        }
        rep.iterations = it;
        rep.relative_residual = std::sqrt(rs) / b_norm;
        rep.converged = rep.relative_residual <= rel_tol;
        if (report) *report = rep;
        return x;
    }

  private:
    int n_;
    ModelParams params_;
    NoiseRestriction res_;
    std::vector<int> window_;
};

struct HminusOneResult {
    RingMatrix maximizer;  // g with (-S_window) g = u
    double value = 0.0;    // <u, (-S_window)^{-1} u>_beta
    SolveReport report;
};

// Variance of a window-supported fluctuation against the restricted noise:
// value = <u, (-S_Lambda_ell)^{-1} u>_beta = sup_g { 2<u,g> - <g,(-S)g> }.
// Rejects inputs with a kernel component (total-energy direction).
inline HminusOneResult hminus_one_solve(const RingMatrix& u, int ell, const ModelParams& params,
                                        double beta, double rel_tol = 1e-10, int max_iter = 0) {
    const int n = u.size();
    if (2 * (ell + 1) >= n) throw std::invalid_argument("window does not fit on the ring");
    WindowNoiseOperator op(n, params, NoiseRestriction::window_outgoing(n, ell));

    double diag = 0.0, scale = u.max_abs();
    for (int i : op.window()) diag += u(i, i);
    if (std::abs(diag) > 1e-10 * std::max(1.0, scale) * static_cast<double>(op.window().size()))
        throw std::invalid_argument("rhs has a kernel (total energy) component");

    if (max_iter <= 0) max_iter = 10 * n * n;
    HminusOneResult res;
    res.maximizer = op.solve(u, rel_tol, max_iter, &res.report);
    res.value = inner_gibbs(u, res.maximizer, beta);
    return res;
}

// One term of the CLT variance scan: the window variance of the translate sum
// sum_{|x| <= ell - s_phi - 1} tau_x phi, normalized per translate. The
// sequence converges to the variance seminorm of phi as ell grows.
inline double variance_scan_term(const GradientForm& phi, int ell, const ModelParams& params,
                                 const DisorderField& disorder, double beta) {
    const int n = disorder.size();
    const int s_phi = phi.support_radius();
    const int ell_phi = ell - s_phi - 1;
    if (ell_phi < 0) throw std::invalid_argument("window too small for the support of phi");
    if (2 * (ell + 1) >= n) throw std::invalid_argument("window does not fit on the ring");

    RingMatrix base = phi.assemble(disorder);
    QuadraticObservable phi_obs = QuadraticObservable::from_matrix(base, s_phi);
    RingMatrix summed(n);
    for (int x = -ell_phi; x <= ell_phi; ++x) {
        // translate re-realizes the builder on rotated disorder; for assembled
        // per-sample matrices the translate is the plain index shift
        summed += phi.assemble_translated(disorder, x);
    }
    HminusOneResult r = hminus_one_solve(summed, ell, params, beta);
    return r.value / static_cast<double>(2 * ell_phi + 1);
}

inline std::vector<double> variance_scan(const GradientForm& phi, const std::vector<int>& ells,
                                         const ModelParams& params,
                                         const std::vector<DisorderField>& ensemble, double beta) {
    std::vector<double> out;
    out.reserve(ells.size());
    for (int ell : ells) {
        double acc = 0.0;
        for (const auto& d : ensemble) acc += variance_scan_term(phi, ell, params, d, beta);
        out.push_back(acc / static_cast<double>(ensemble.size()));
    }
    return out;
}

} // namespace chainlab
