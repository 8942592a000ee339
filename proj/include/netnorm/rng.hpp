#pragma once

#include "netnorm/types.hpp"

#include <cmath>

namespace netnorm {

namespace detail {

/** Finalizing 64-bit mix (splitmix64 / murmur3-style avalanche) */
inline u64 mix64(u64 x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace detail

/**
 * Counter-based random stream.
 *
 * Each draw hashes (key, counter) and advances the counter, so a stream is a
 * pure function of its key. Child streams are derived by hashing the parent
 * key with a stream index, never by sharing state, which makes any parallel
 * schedule produce the same numbers as a serial one.
 */
class rng_stream {
  public:
    explicit rng_stream(u64 key = 0) : key_(key), counter_(0) {}

    /** Derive an independent child stream; pure in (key, index) */
    rng_stream substream(u64 index) const {
        return rng_stream(detail::mix64(key_ ^ detail::mix64(index + 0x632be59bd9b4e019ULL)));
    }

    /** Next raw 64-bit word */
    u64 next_u64() { return detail::mix64(key_ + 0x9e3779b97f4a7c15ULL * ++counter_); }

    /** Uniform double in [0,1) with 53-bit resolution */
    scalar_t next_uniform() { return static_cast<scalar_t>(next_u64() >> 11) * 0x1.0p-53; }

    /** Fair coin */
    bool next_bool() { return (next_u64() >> 63) != 0; }

    /** Uniform integer in [0, bound) by rejection (bound ≥ 1) */
    u64 next_below(u64 bound) {
        const u64 threshold = (0 - bound) % bound;  // 2^64 mod bound
        for (;;) {
            const u64 x = next_u64();
            if (x >= threshold) return x % bound;
        }
    }

    /** Standard normal via Box-Muller (two uniforms per pair of calls) */
    scalar_t next_normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        scalar_t u = 0;
        do { u = next_uniform(); } while (u <= 0);
        const scalar_t v = next_uniform();
        const scalar_t r = std::sqrt(-2.0 * std::log(u));
        const scalar_t a = 2.0 * M_PI * v;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    u64 key() const { return key_; }

  private:
    u64 key_;
    u64 counter_;
    bool have_spare_ = false;
    scalar_t spare_ = 0;
};

/** Root stream for a user-facing seed */
inline rng_stream seed_stream(u64 seed) { return rng_stream(detail::mix64(seed)); }

}  // namespace netnorm
