#pragma once

#include <cassert>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace chainlab {

// Dense square matrix indexed periodically (any integer site label is valid).
// Used as the coefficient representation of degree-2 observables on the ring.
class RingMatrix {
  public:
    RingMatrix() = default;
    explicit RingMatrix(int n) : n_(n), a_(static_cast<std::size_t>(n) * n, 0.0) {}

    int size() const { return n_; }

    int wrap(int x) const {
        int r = x % n_;
        return r < 0 ? r + n_ : r;
    }

    double operator()(int i, int j) const { return a_[idx(wrap(i), wrap(j))]; }
    double& operator()(int i, int j) { return a_[idx(wrap(i), wrap(j))]; }

    // raw access for hot loops (indices must already be in [0, n))
    double at(int i, int j) const { return a_[idx(i, j)]; }
    double& at(int i, int j) { return a_[idx(i, j)]; }

    const std::vector<double>& data() const { return a_; }
    std::vector<double>& data() { return a_; }

    double trace() const {
        double t = 0.0;
        for (int i = 0; i < n_; ++i) t += a_[idx(i, i)];
        return t;
    }

    double frobenius_sq() const {
        double s = 0.0;
        for (double v : a_) s += v * v;
        return s;
    }

    void symmetrize() {
        for (int i = 0; i < n_; ++i)
            for (int j = i + 1; j < n_; ++j) {
                double v = 0.5 * (a_[idx(i, j)] + a_[idx(j, i)]);
                a_[idx(i, j)] = v;
                a_[idx(j, i)] = v;
            }
    }

    double max_abs() const {
        double m = 0.0;
        for (double v : a_) m = std::max(m, std::abs(v));
        return m;
    }

    RingMatrix& operator+=(const RingMatrix& o) {
        check_same(o);
        for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
        return *this;
    }
    RingMatrix& operator-=(const RingMatrix& o) {
        check_same(o);
        for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
        return *this;
    }
    RingMatrix& operator*=(double c) {
        for (auto& v : a_) v *= c;
        return *this;
    }

    friend RingMatrix operator+(RingMatrix a, const RingMatrix& b) { return a += b; }
    friend RingMatrix operator-(RingMatrix a, const RingMatrix& b) { return a -= b; }
    friend RingMatrix operator*(double c, RingMatrix a) { return a *= c; }

    // entries shifted by y: result(i, j) = (*this)(i - y, j - y)
    RingMatrix shifted(int y) const {
        RingMatrix r(n_);
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) r.at(i, j) = (*this)(i - y, j - y);
        return r;
    }

    // sum over all ring shifts; the result has constant diagonals
    RingMatrix shift_sum() const {
        RingMatrix r(n_);
        // diagonal-sum representation: r(i, j) depends only on j - i
        std::vector<double> diag(static_cast<std::size_t>(n_), 0.0);
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) diag[static_cast<std::size_t>(wrap(j - i))] += at(i, j);
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) r.at(i, j) = diag[static_cast<std::size_t>(wrap(j - i))];
        return r;
    }

    static double dot(const RingMatrix& a, const RingMatrix& b) {
        a.check_same(b);
        double s = 0.0;
        for (std::size_t k = 0; k < a.a_.size(); ++k) s += a.a_[k] * b.a_[k];
        return s;
    }

  private:
    std::size_t idx(int i, int j) const { return static_cast<std::size_t>(i) * n_ + j; }
    void check_same(const RingMatrix& o) const {
        if (n_ != o.n_) throw std::invalid_argument("ring size mismatch");
    }

    int n_ = 0;
    std::vector<double> a_;
};

// Signed coordinate of a ring site, centered window convention: x in (-n/2, n/2].
inline int signed_coord(int x, int n) {
    int r = x % n;
    if (r < 0) r += n;
    return (2 * r > n) ? r - n : r;
}

} // namespace chainlab
