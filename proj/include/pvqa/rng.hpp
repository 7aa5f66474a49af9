#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace pvqa {

/// splitmix64 step; used both as a generator seeder and as a cheap hash mixer.
inline std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t hash_str(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

/// Derives an independent substream for (setting, evaluation) pairs so that
/// parallel evaluation order cannot change any sampled record.
inline std::uint64_t derive_stream(std::uint64_t root_seed, std::string_view setting_id,
                                   std::uint64_t eval_index) {
    std::uint64_t x = root_seed ^ (0x9e3779b97f4a7c15ULL * (eval_index + 1));
    x ^= hash_str(setting_id);
    std::uint64_t a = splitmix64(x);
    std::uint64_t b = splitmix64(x);
    return a ^ (b << 1);
}

/// mt19937_64 with a portable uniform double in [0,1); the standard's
/// distribution objects are implementation-defined, so we avoid them.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    double uniform() { return std::ldexp(static_cast<double>(gen_() >> 11), -53); }

    std::uint64_t raw() { return gen_(); }

private:
    std::mt19937_64 gen_;
};

}  // namespace pvqa
