#pragma once

#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

#include "disorder.hpp"
#include "generator.hpp"
#include "observable.hpp"
#include "ring_matrix.hpp"

namespace chainlab {

// Matrix of the flip gradient grad_x(F): off-diagonal row/column x negated twice.
inline RingMatrix flip_gradient_matrix(const RingMatrix& q, int x) {
    const int n = q.size();
    RingMatrix r(n);
    for (int j = 0; j < n; ++j) {
        if (j == q.wrap(x)) continue;
        r(x, j) = -2.0 * q(x, j);
        r(j, x) = -2.0 * q(j, x);
    }
    return r;
}

// Matrix of the exchange gradient grad_{x,x+1}(F) = P_x Q P_x - Q.
inline RingMatrix exchange_gradient_matrix(const RingMatrix& q, int x) {
    const int n = q.size();
    const int a = q.wrap(x), b = q.wrap(x + 1);
    RingMatrix r(n);
    for (int j = 0; j < n; ++j) {
        if (j == a || j == b) continue;
        double dr = q(b, j) - q(a, j);
        r(a, j) = dr;
        r(j, a) = dr;
        r(b, j) = -dr;
        r(j, b) = -dr;
    }
    double dd = q(b, b) - q(a, a);
    r(a, a) = dd;
    r(b, b) = -dd;
    return r;
}

// Representation of a fluctuation observable as a sum of noise gradients,
//   phi = sum_i grad_{x_i}(F_i) + grad_{x_i, x_i+1}(G_i),
// the form every member of the gradient sector carries. The aggregates
//   u = sum_i tau_{-x_i} F_i,   v = sum_i tau_{-x_i} G_i
// are what the variance seminorm pairs against.
struct GradientForm {
    struct Part {
        int site = 0;
        QuadraticObservable F; // may be invalid() when absent
        QuadraticObservable G;
    };
    std::vector<Part> parts;

    // phi itself, realized at one disorder sample
    RingMatrix assemble(const DisorderField& d) const {
        RingMatrix out(d.size());
        for (const auto& p : parts) {
            if (p.F.valid()) out += flip_gradient_matrix(p.F.realize(d), p.site);
            if (p.G.valid()) out += exchange_gradient_matrix(p.G.realize(d), p.site);
        }
        return out;
    }

    // tau_x phi realized at d: the builder parts are re-realized on the rotated
    // disorder, then everything is shifted back by x
    RingMatrix assemble_translated(const DisorderField& d, int x) const {
        return assemble(d.rotated(x)).shifted(x);
    }

    RingMatrix aggregate_u(const DisorderField& d) const {
        RingMatrix out(d.size());
        for (const auto& p : parts)
            if (p.F.valid()) out += p.F.translated(-p.site).realize(d);
        return out;
    }

    RingMatrix aggregate_v(const DisorderField& d) const {
        RingMatrix out(d.size());
        for (const auto& p : parts)
            if (p.G.valid()) out += p.G.translated(-p.site).realize(d);
        return out;
    }

    int support_radius() const {
        int r = 1;
        for (const auto& p : parts)
            r = std::max(r, std::abs(p.site) + 1 +
                                std::max(p.F.valid() ? p.F.support_radius() : 0,
                                         p.G.valid() ? p.G.support_radius() : 0));
        return r;
    }

    GradientForm& operator+=(const GradientForm& o) {
        parts.insert(parts.end(), o.parts.begin(), o.parts.end());
        return *this;
    }

    GradientForm scaled(double c) const {
        GradientForm out;
        for (const auto& p : parts) {
            Part q;
            q.site = p.site;
            if (p.F.valid()) q.F = p.F.scaled(c);
            if (p.G.valid()) q.G = p.G.scaled(c);
            out.parts.push_back(std::move(q));
        }
        return out;
    }

    // --- standard representations -------------------------------------------

    // exchange current lambda (w_1^2 - w_0^2) = lambda grad_{0,1}(w_0^2)
    static GradientForm current_noise(int n, double lambda) {
        GradientForm f;
        Part p;
        p.site = 0;
        p.G = QuadraticObservable::pair(n, 0, 0).scaled(lambda);
        f.parts.push_back(std::move(p));
        return f;
    }

    // hamiltonian current 2 w_0 w_1/sqrt(m_0 m_1) = grad_0(F) + grad_{0,1}(G)
    // with F = -w_0 w_1/sqrt(m_0 m_1) and G = (lambda/gamma) F.
    static GradientForm current_ham(int n, const ModelParams& prm) {
        GradientForm f;
        Part p;
        p.site = 0;
        QuadraticObservable h(
            [n](const DisorderField& d) {
                RingMatrix q(n);
                q(0, 1) = -0.5 * d.hop(0);
                q(1, 0) = -0.5 * d.hop(0);
                return q;
            },
            1);
        p.F = h;
        p.G = h.scaled(prm.lambda / prm.gamma);
        f.parts.push_back(std::move(p));
        return f;
    }

    // noise image S g = sum_x grad_x(gamma g) + grad_{x,x+1}(lambda g); sites cover
    // every gradient that can act on the support.
    static GradientForm noise_image(const QuadraticObservable& g, const ModelParams& prm, int n) {
        GradientForm f;
        int r = g.support_radius();
        for (int x = -r - 1; x <= r + 1; ++x) {
            Part p;
            p.site = x;
            p.F = g.scaled(prm.gamma);
            p.G = g.scaled(prm.lambda);
            f.parts.push_back(std::move(p));
        }
        (void)n;
        return f;
    }

    // Canonical representation of an arbitrary traceless coefficient matrix,
    // built per sample: diagonal entries through telescoped exchange gradients,
    // off-diagonal pairs through flip/exchange chains. The input is treated as
    // a quenched (coefficient-frozen) observable.
    static GradientForm from_traceless_matrix(const RingMatrix& q, const ModelParams& prm) {
        const int n = q.size();
        if (std::abs(q.trace()) > 1e-9 * (1.0 + q.max_abs()))
            throw std::invalid_argument("matrix must be traceless");

        std::map<int, std::pair<RingMatrix, RingMatrix>> acc; // site -> (F, G)
        auto fm = [&](int site) -> RingMatrix& {
            auto it = acc.find(site);
            if (it == acc.end())
                it = acc.emplace(site, std::make_pair(RingMatrix(n), RingMatrix(n))).first;
            return it->second.first;
        };
        auto gm = [&](int site) -> RingMatrix& {
            auto it = acc.find(site);
            if (it == acc.end())
                it = acc.emplace(site, std::make_pair(RingMatrix(n), RingMatrix(n))).first;
            return it->second.second;
        };

        // diagonal: d = sum of adjacent gradients, coefficients from prefix sums
        // over the centered window
        const int half = n / 2;
        double prefix = 0.0;
        for (int x = -half; x < -half + n - 1; ++x) {
            prefix += q(x, x);
            if (prefix != 0.0) gm(x)(x, x) += -prefix; // -prefix * grad_{x,x+1}(w_x^2)
        }

        // off-diagonal pairs: w_i w_{i+k} with coefficient a = 2 q(i, i+k)
        for (int i = -half; i < -half + n; ++i) {
            for (int k = 1; k <= half; ++k) {
                if (2 * k == n && i >= 0) break; // antipodal pair counted once
                double a = 2.0 * q(i, i + k);
                if (a == 0.0) continue;
                // leading term: site i, h0 = -a w_i w_{i+1} / (2 gamma)
                fm(i)(i, i + 1) += -a / 4.0;
                fm(i)(i + 1, i) += -a / 4.0;
                gm(i)(i, i + 1) += -a * prm.lambda / (4.0 * prm.gamma);
                gm(i)(i + 1, i) += -a * prm.lambda / (4.0 * prm.gamma);
                // chain terms: site i+l, h = -a w_i w_{i+l+1} / lambda
                for (int l = 1; l < k; ++l) {
                    fm(i + l)(i, i + l + 1) += -a * prm.gamma / (2.0 * prm.lambda);
                    fm(i + l)(i + l + 1, i) += -a * prm.gamma / (2.0 * prm.lambda);
                    gm(i + l)(i, i + l + 1) += -a / 2.0;
                    gm(i + l)(i + l + 1, i) += -a / 2.0;
                }
            }
        }

        GradientForm out;
        for (auto& [site, mats] : acc) {
            Part p;
            p.site = site;
            if (mats.first.frobenius_sq() > 0.0)
                p.F = QuadraticObservable::from_matrix(mats.first,
                                                       matrix_support_radius(mats.first));
            if (mats.second.frobenius_sq() > 0.0)
                p.G = QuadraticObservable::from_matrix(mats.second,
                                                       matrix_support_radius(mats.second));
            if (p.F.valid() || p.G.valid()) out.parts.push_back(std::move(p));
        }
        return out;
    }

    static int matrix_support_radius(const RingMatrix& q) {
        const int n = q.size();
        int r = 0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (q.at(i, j) != 0.0)
                    r = std::max({r, std::abs(signed_coord(i, n)), std::abs(signed_coord(j, n))});
        return r;
    }
};

} // namespace chainlab
