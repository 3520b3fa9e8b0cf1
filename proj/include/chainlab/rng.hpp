#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

namespace chainlab {

// Counter-based RNG: every draw is a hash of (key, counter), so streams can
// be derived per (seed, replica, stream) and replayed independently of
// scheduling order.
namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

} // namespace detail

class CounterRng {
  public:
    explicit CounterRng(std::uint64_t key) : key_(key) {}

    // Derive a stream key from (seed, replica, stream) labels.
    static CounterRng stream(std::uint64_t seed, std::uint64_t replica, std::uint64_t stream_id) {
        std::uint64_t k = detail::splitmix64(seed ^ 0x243f6a8885a308d3ULL);
        k = detail::splitmix64(k ^ detail::splitmix64(replica));
        k = detail::splitmix64(k ^ detail::splitmix64(stream_id ^ 0x452821e638d01377ULL));
        return CounterRng(k);
    }

    std::uint64_t next_u64() {
        std::uint64_t z = detail::splitmix64(key_ ^ detail::splitmix64(counter_++));
        return detail::splitmix64(z ^ (key_ >> 32));
    }

    // Uniform in (0, 1]; never returns 0 so log() is safe.
    double next_uniform() {
        const double scale = 1.0 / 9007199254740992.0; // 2^-53
        std::uint64_t bits = next_u64() >> 11;
        return (static_cast<double>(bits) + 1.0) * scale;
    }

    // Uniform integer in [0, n)
    std::uint64_t next_below(std::uint64_t n) {
        // 64-bit multiply-shift; bias is < 2^-53 for the n used here (n <= ~2^20)
        unsigned __int128 wide = static_cast<unsigned __int128>(next_u64()) * n;
        return static_cast<std::uint64_t>(wide >> 64);
    }

    double next_exponential(double rate) { return -std::log(next_uniform()) / rate; }

    // Standard normal via Box-Muller; caches the second value.
    double next_normal() {
        if (have_cached_) {
            have_cached_ = false;
            return cached_;
        }
        double u1 = next_uniform();
        double u2 = next_uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 6.283185307179586476925286766559 * u2;
        cached_ = r * std::sin(a);
        have_cached_ = true;
        return r * std::cos(a);
    }

    std::uint64_t counter() const { return counter_; }

  private:
    std::uint64_t key_ = 0;
    std::uint64_t counter_ = 0;
    double cached_ = 0.0;
    bool have_cached_ = false;
};

} // namespace chainlab
