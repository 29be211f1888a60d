#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace qirvm {

// splitmix64 output function.
constexpr std::uint64_t splitmix64_mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Seed of the stream used by shot `shot` of a run seeded with `seed`.
constexpr std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t shot) {
    return splitmix64_mix(seed + (shot + 1) * 0x9E3779B97F4A7C15ULL);
}

// Per-shot random stream. The generator (std::mt19937_64, fully specified
// by the standard) and the derivation above are fixed; kId is written into
// run results so outputs can be reproduced.
class RngStream {
  public:
    static constexpr std::string_view kId = "mt19937_64+splitmix64/1";

    explicit RngStream(std::uint64_t stream_seed) : gen_(stream_seed) {}

    static RngStream for_shot(std::uint64_t seed, std::uint64_t shot) {
        return RngStream(derive_stream_seed(seed, shot));
    }

    std::uint64_t next() { return gen_(); }

    // Uniform double in [0, 1) from the top 53 bits of one draw.
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  private:
    std::mt19937_64 gen_;
};

}  // namespace qirvm
