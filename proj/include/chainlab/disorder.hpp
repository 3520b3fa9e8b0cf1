#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <vector>

#include "params.hpp"
#include "rng.hpp"

namespace chainlab {

// Quenched i.i.d. mass field on the periodic ring, 1/C <= m_x <= C.
// Carries a unique stamp so realized-observable caches can key on it.
class DisorderField {
  public:
    DisorderField() = default;
    explicit DisorderField(std::vector<double> masses)
        : masses_(std::move(masses)), stamp_(next_stamp()) {}

    int size() const { return static_cast<int>(masses_.size()); }
    std::uint64_t stamp() const { return stamp_; }

    // periodic indexing: any integer is a valid site label
    double mass(int x) const { return masses_[wrap(x)]; }
    const std::vector<double>& masses() const { return masses_; }

    int wrap(int x) const {
        int n = size();
        int r = x % n;
        return r < 0 ? r + n : r;
    }

    // field rotated by y: (rotated)_z = m_{y+z}
    DisorderField rotated(int y) const {
        int n = size();
        std::vector<double> m(n);
        for (int z = 0; z < n; ++z) m[z] = masses_[wrap(y + z)];
        return DisorderField(std::move(m));
    }

    // 1/sqrt(m_x m_{x+1}) appears in every hopping coefficient
    double hop(int x) const { return 1.0 / std::sqrt(mass(x) * mass(x + 1)); }

  private:
    static std::uint64_t next_stamp() {
        static std::atomic<std::uint64_t> counter{1};
        return counter.fetch_add(1);
    }
    std::vector<double> masses_;
    std::uint64_t stamp_ = 0;
};

inline DisorderField sample_disorder(const ModelParams& params, std::uint64_t seed) {
    params.validate();
    CounterRng rng = CounterRng::stream(seed, 0, /*stream_id=*/0x6d61737365735f00ULL);
    const double c = params.c_bound;
    std::vector<double> m(static_cast<std::size_t>(params.n));
    for (auto& v : m) {
        switch (params.mass_law) {
        case MassLaw::Uniform:
            v = 1.0 / c + (c - 1.0 / c) * rng.next_uniform();
            break;
        case MassLaw::TwoPoint:
            v = (rng.next_uniform() <= 0.5) ? 1.0 / c : c;
            break;
        case MassLaw::LogUniform: {
            double u = 2.0 * rng.next_uniform() - 1.0;
            v = std::exp(u * std::log(c));
            break;
        }
        }
    }
    return DisorderField(std::move(m));
}

// Mean of the configured mass law (used by sampling checks).
inline double mass_law_mean(const ModelParams& params) {
    const double c = params.c_bound;
    switch (params.mass_law) {
    case MassLaw::Uniform: return 0.5 * (c + 1.0 / c);
    case MassLaw::TwoPoint: return 0.5 * (c + 1.0 / c);
    case MassLaw::LogUniform: {
        double l = std::log(c);
        return l == 0.0 ? 1.0 : (c - 1.0 / c) / (2.0 * l);
    }
    }
    return 1.0;
}

inline double mass_law_variance(const ModelParams& params) {
    const double c = params.c_bound;
    double mean = mass_law_mean(params);
    double second = 0.0;
    switch (params.mass_law) {
    case MassLaw::Uniform: second = (c * c + 1.0 + 1.0 / (c * c)) / 3.0; break;
    case MassLaw::TwoPoint: second = 0.5 * (c * c + 1.0 / (c * c)); break;
    case MassLaw::LogUniform: {
        double l = std::log(c);
        second = l == 0.0 ? 1.0 : (c * c - 1.0 / (c * c)) / (4.0 * l);
        break;
    }
    }
    return second - mean * mean;
}

// An ensemble of independent disorder samples, all of the same ring size.
inline std::vector<DisorderField> sample_disorder_ensemble(const ModelParams& params,
                                                           std::uint64_t seed, int count) {
    std::vector<DisorderField> fields;
    fields.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i)
        fields.push_back(sample_disorder(params, seed + 0x9e3779b97f4a7c15ULL * (i + 1)));
    return fields;
}

} // namespace chainlab
