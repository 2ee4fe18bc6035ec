#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>

namespace leagueopt {

// Counter-friendly RNG used everywhere randomness is needed. Streams are
// derived from (seed, tag...) tuples so parallel work is order-independent
// and results are bit-identical across platforms; the std <random>
// distributions are implementation-defined and therefore avoided.
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> tags) {
    std::uint64_t s = mix64(base + 0x9E3779B97F4A7C15ull);
    for (std::uint64_t t : tags) {
        s = mix64(s ^ mix64(t + 0x9E3779B97F4A7C15ull));
    }
    return s;
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ull;
        return mix64(state_);
    }

    // uniform in [0, 1)
    double next_unit() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // uniform integer in [0, n); n >= 1
    int next_below(int n) {
        return static_cast<int>(next_u64() % static_cast<std::uint64_t>(n));
    }

    // standard normal via Box-Muller (no cached spare, keeps the stream
    // position a pure function of call count)
    double next_normal() {
        double u1 = next_unit();
        while (u1 <= 0.0) u1 = next_unit();
        double u2 = next_unit();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
    }

private:
    std::uint64_t state_;
};

// Fisher-Yates shuffle of [0, n) producing a permutation.
template <typename T>
void shuffle_indices(T* data, int n, Rng& rng) {
    for (int i = n - 1; i > 0; --i) {
        int j = rng.next_below(i + 1);
        T tmp = data[i];
        data[i] = data[j];
        data[j] = tmp;
    }
}

}  // namespace leagueopt
