#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "disorder.hpp"
#include "params.hpp"
#include "rng.hpp"

namespace chainlab {

// Configuration on the ring plus the simulation clock.
struct ChainState {
    std::vector<double> omega;
    double time = 0.0;

    int size() const { return static_cast<int>(omega.size()); }

    int wrap(int x) const {
        int n = size();
        int r = x % n;
        return r < 0 ? r + n : r;
    }

    double energy() const {
        double e = 0.0;
        for (double w : omega) e += w * w;
        return e;
    }

    bool finite() const {
        for (double w : omega)
            if (!std::isfinite(w)) return false;
        return true;
    }
};

// Product Gibbs state: omega_x i.i.d. centered Gaussian with variance 1/beta.
inline ChainState sample_gibbs(const ModelParams& params, std::uint64_t seed,
                               std::uint64_t replica = 0) {
    params.validate();
    CounterRng rng = CounterRng::stream(seed, replica, /*stream_id=*/0x676962627300ULL);
    ChainState s;
    s.omega.resize(static_cast<std::size_t>(params.n));
    const double sigma = 1.0 / std::sqrt(params.beta);
    for (auto& w : s.omega) w = sigma * rng.next_normal();
    s.time = 0.0;
    return s;
}

// Velocity of the skew-linear flow, F_x = omega_{x+1}/sqrt(m_x m_{x+1}) - omega_{x-1}/sqrt(m_{x-1} m_x).
inline std::vector<double> drift_field(const ChainState& state, const DisorderField& disorder) {
    const int n = state.size();
    if (n != disorder.size()) throw std::invalid_argument("state/disorder size mismatch");
    std::vector<double> f(static_cast<std::size_t>(n));
    for (int x = 0; x < n; ++x) {
        int xp = (x + 1 == n) ? 0 : x + 1;
        int xm = (x == 0) ? n - 1 : x - 1;
        f[static_cast<std::size_t>(x)] =
            state.omega[static_cast<std::size_t>(xp)] * disorder.hop(x) -
            state.omega[static_cast<std::size_t>(xm)] * disorder.hop(x - 1);
    }
    return f;
}

struct BondCurrent {
    double total;    // j = j_ham + j_noise
    double ham;      // 2 w_x w_{x+1} / sqrt(m_x m_{x+1})
    double noise;    // lambda (w_{x+1}^2 - w_x^2)
};

// Instantaneous energy current across bond (x, x+1).
inline BondCurrent bond_current(const ChainState& state, const DisorderField& disorder,
                                const ModelParams& params, int x) {
    if (x < 0 || x >= state.size()) throw std::out_of_range("bond index out of range");
    double wx = state.omega[static_cast<std::size_t>(x)];
    double wxp = state.omega[static_cast<std::size_t>(state.wrap(x + 1))];
    BondCurrent j;
    j.ham = 2.0 * wx * wxp * disorder.hop(x);
    j.noise = params.lambda * (wxp * wxp - wx * wx);
    j.total = j.ham + j.noise;
    return j;
}

// Flip noise event: negate omega_x. Conserves energy bit-exactly.
inline void apply_flip(ChainState& state, int x) {
    if (x < 0 || x >= state.size()) throw std::out_of_range("site index out of range");
    state.omega[static_cast<std::size_t>(x)] = -state.omega[static_cast<std::size_t>(x)];
}

// Exchange noise event: swap omega_x and omega_{x+1}. Conserves energy bit-exactly.
inline void apply_exchange(ChainState& state, int x) {
    if (x < 0 || x >= state.size()) throw std::out_of_range("bond index out of range");
    std::swap(state.omega[static_cast<std::size_t>(x)],
              state.omega[static_cast<std::size_t>(state.wrap(x + 1))]);
}

} // namespace chainlab
