#pragma once

#include <vector>

#include "disorder.hpp"
#include "observable.hpp"
#include "params.hpp"
#include "ring_matrix.hpp"

namespace chainlab {

// Skew hopping matrix: M(x, x+1) = 1/sqrt(m_x m_{x+1}), M(x+1, x) = -M(x, x+1).
inline RingMatrix hopping_matrix(const DisorderField& disorder) {
    const int n = disorder.size();
    RingMatrix m(n);
    for (int x = 0; x < n; ++x) {
        m(x, x + 1) = disorder.hop(x);
        m(x + 1, x) = -disorder.hop(x);
    }
    return m;
}

// --- generator actions in the quadratic sector ------------------------------
//
// f = w^T Q w - tr(Q)/beta maps under the hamiltonian part to Q M - M Q,
// under the flip noise to -4 offdiag(Q), and under the exchange noise to
// sum_x (P_x Q P_x - Q). All three images are traceless.

inline RingMatrix act_drift_matrix(const RingMatrix& q, const DisorderField& d) {
    const int n = q.size();
    RingMatrix r(n);
    for (int i = 0; i < n; ++i) {
        const double hi = d.hop(i);
        const double him = d.hop(i - 1);
        for (int j = 0; j < n; ++j) {
            r(i, j) = q(i, j - 1) * d.hop(j - 1) - q(i, j + 1) * d.hop(j) + him * q(i - 1, j) -
                      hi * q(i + 1, j);
        }
    }
    r.symmetrize();
    return r;
}

inline RingMatrix act_flip_matrix(const RingMatrix& q) {
    const int n = q.size();
    RingMatrix r(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) r.at(i, j) = -4.0 * q.at(i, j);
    return r;
}

inline RingMatrix act_exchange_matrix(const RingMatrix& q) {
    const int n = q.size();
    RingMatrix r(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            // bonds whose transposition moves index i or j
            int cand[4] = {i - 1, i, j - 1, j};
            double acc = 0.0;
            for (int c = 0; c < 4; ++c) {
                int x = q.wrap(cand[c]);
                bool dup = false;
                for (int p = 0; p < c; ++p)
                    if (q.wrap(cand[p]) == x) dup = true;
                if (dup) continue;
                int xp = q.wrap(x + 1);
                int si = (i == x) ? xp : (i == xp ? x : i);
                int sj = (j == x) ? xp : (j == xp ? x : j);
                acc += q.at(si, sj) - q.at(i, j);
            }
            r.at(i, j) = acc;
        }
    }
    return r;
}

inline RingMatrix act_noise_matrix(const RingMatrix& q, const ModelParams& p) {
    RingMatrix r = act_flip_matrix(q);
    r *= p.gamma;
    RingMatrix e = act_exchange_matrix(q);
    e *= p.lambda;
    r += e;
    return r;
}

inline RingMatrix act_generator_matrix(const RingMatrix& q, const DisorderField& d,
                                       const ModelParams& p) {
    RingMatrix r = act_drift_matrix(q, d);
    r += act_noise_matrix(q, p);
    return r;
}

// Observable-level wrappers (compose with the builder so translations stay correct).

inline QuadraticObservable act_drift(const QuadraticObservable& f) {
    return QuadraticObservable(
        [f](const DisorderField& d) { return act_drift_matrix(f.realize(d), d); },
        f.support_radius() + 1);
}

inline QuadraticObservable act_flip(const QuadraticObservable& f) {
    return QuadraticObservable([f](const DisorderField& d) { return act_flip_matrix(f.realize(d)); },
                               f.support_radius());
}

inline QuadraticObservable act_exchange(const QuadraticObservable& f) {
    return QuadraticObservable(
        [f](const DisorderField& d) { return act_exchange_matrix(f.realize(d)); },
        f.support_radius() + 1);
}

inline QuadraticObservable act_noise(const QuadraticObservable& f, const ModelParams& p) {
    return QuadraticObservable(
        [f, p](const DisorderField& d) { return act_noise_matrix(f.realize(d), p); },
        f.support_radius() + 1);
}

inline QuadraticObservable act_generator(const QuadraticObservable& f, const ModelParams& p) {
    return QuadraticObservable(
        [f, p](const DisorderField& d) { return act_generator_matrix(f.realize(d), d, p); },
        f.support_radius() + 1);
}

// --- restricted noise operator ----------------------------------------------
//
// Flip terms at an explicit site list and exchange terms at an explicit bond
// list (a bond is labelled by its left site). Two window conventions are used:
// `outgoing` sums the per-site terms gamma grad_x + lambda grad_{x,x+1} over
// x in the window (the bond sticking out to the right is included), `interior`
// keeps only bonds with both endpoints inside.

struct NoiseRestriction {
    std::vector<int> sites; // flip sites
    std::vector<int> bonds; // exchange bonds (left site labels)

    static NoiseRestriction full_ring(int n) {
        NoiseRestriction r;
        for (int x = 0; x < n; ++x) {
            r.sites.push_back(x);
            r.bonds.push_back(x);
        }
        return r;
    }

    // window {center-ell, ..., center+ell} with the outgoing right bond
    static NoiseRestriction window_outgoing(int n, int ell, int center = 0) {
        NoiseRestriction r;
        for (int x = -ell; x <= ell; ++x) {
            int s = ((center + x) % n + n) % n;
            r.sites.push_back(s);
            r.bonds.push_back(s);
        }
        return r;
    }

    // window with interior bonds only
    static NoiseRestriction window_interior(int n, int ell, int center = 0) {
        NoiseRestriction r;
        for (int x = -ell; x <= ell; ++x) r.sites.push_back(((center + x) % n + n) % n);
        for (int x = -ell; x < ell; ++x) r.bonds.push_back(((center + x) % n + n) % n);
        return r;
    }
};

inline RingMatrix act_noise_restricted(const RingMatrix& q, const ModelParams& p,
                                       const NoiseRestriction& res) {
    const int n = q.size();
    RingMatrix r(n);
    for (int x : res.sites) {
        for (int j = 0; j < n; ++j) {
            if (j == x) continue;
            r(x, j) += -2.0 * p.gamma * q(x, j);
            r(j, x) += -2.0 * p.gamma * q(j, x);
        }
    }
    for (int x : res.bonds) {
        const int xp = q.wrap(x + 1);
        for (int j = 0; j < n; ++j) {
            if (j == x || j == xp) continue;
            double dr = q(xp, j) - q(x, j);
            r(x, j) += p.lambda * dr;
            r(j, x) += p.lambda * dr;
            r(xp, j) -= p.lambda * dr;
            r(j, xp) -= p.lambda * dr;
        }
        double dd = q(xp, xp) - q(x, x);
        r(x, x) += p.lambda * dd;
        r(xp, xp) -= p.lambda * dd;
        // the (x, x+1) entry is fixed by the transposition
    }
    return r;
}

// --- Dirichlet forms ----------------------------------------------------------

// E[(grad_x f)^2] under mu_beta for the flip gradient at site x.
inline double flip_gradient_sq(const RingMatrix& q, int x, double beta) {
    const int n = q.size();
    double s = 0.0;
    for (int j = 0; j < n; ++j)
        if (j != q.wrap(x)) s += q(x, j) * q(x, j);
    return 8.0 / (beta * beta) * s;
}

// E[(grad_{x,x+1} f)^2] under mu_beta for the exchange gradient at bond x.
inline double exchange_gradient_sq(const RingMatrix& q, int x, double beta) {
    const int n = q.size();
    const int a = q.wrap(x), b = q.wrap(x + 1);
    double s = 0.0;
    for (int j = 0; j < n; ++j) {
        if (j == a || j == b) continue;
        double dr = q(b, j) - q(a, j);
        s += 4.0 * dr * dr;
    }
    double dd = q(b, b) - q(a, a);
    s += 2.0 * dd * dd;
    return 2.0 / (beta * beta) * s;
}

inline double dirichlet_form(const RingMatrix& q, const ModelParams& p,
                             const NoiseRestriction& res, double beta) {
    double d = 0.0;
    for (int x : res.sites) d += 0.5 * p.gamma * flip_gradient_sq(q, x, beta);
    for (int x : res.bonds) d += 0.5 * p.lambda * exchange_gradient_sq(q, x, beta);
    return d;
}

// Dirichlet form over the window Lambda_ell with the per-site (outgoing) convention.
inline double dirichlet_form(const QuadraticObservable& f, int ell, const ModelParams& p,
                             const DisorderField& d, double beta) {
    const RingMatrix& q = f.realize(d);
    if (f.support_radius() > ell) throw std::invalid_argument("support exceeds the window");
    return dirichlet_form(q, p, NoiseRestriction::window_outgoing(q.size(), ell), beta);
}

// Single-site Dirichlet form (flip at 0 plus bond (0,1)); this is the D_0 that
// enters the seminorm variational formula.
inline double dirichlet_form_site0(const RingMatrix& q, const ModelParams& p, double beta) {
    return 0.5 * p.gamma * flip_gradient_sq(q, 0, beta) +
           0.5 * p.lambda * exchange_gradient_sq(q, 0, beta);
}

} // namespace chainlab
