#pragma once

#include <array>
#include <cstdint>

namespace cusumlab {

// Domain tags keep unrelated consumers of the same seed on disjoint streams.
namespace stream_domain {
inline constexpr std::uint64_t simulation = 0;
inline constexpr std::uint64_t probe_pilot = 1;
inline constexpr std::uint64_t probe_main = 2;
inline constexpr std::uint64_t generic = 3;
} // namespace stream_domain

// Full 192-bit input state of one Philox block.  The five experiment
// coordinates are packed injectively into key/counter words; counter[3] is
// the running block index inside the stream.
struct StreamKey {
    std::array<std::uint64_t, 2> key{};
    std::array<std::uint64_t, 4> counter{};
};

// One keyed block of Philox4x64-10 (counter-based generator of Salmon,
// Moraes, Dror, Shaw; SC 2011 constants).  Pure integer arithmetic, so the
// same key yields the same bits on every platform.
std::array<std::uint64_t, 4> philox4x64(std::array<std::uint64_t, 4> counter,
                                        std::array<std::uint64_t, 2> key);

// Bit pattern of v with -0.0 canonicalized to +0.0, for use in stream keys.
std::uint64_t canonical_bits(double v);

// Deterministic random stream: uniforms come from Philox blocks, normals via
// the inverse-CDF transform (see normal_quantile).  Copyable value type;
// copies continue independently from the copied position.
class StreamRng {
public:
    explicit StreamRng(const StreamKey& key);

    std::uint64_t next_u64();

    // Uniform on (0, 1): ((w >> 11) + 0.5) * 2^-53, never exactly 0 or 1.
    double next_uniform();

    double next_normal();

private:
    void refill();

    std::array<std::uint64_t, 2> key_;
    std::array<std::uint64_t, 4> counter_;
    std::array<std::uint64_t, 4> block_{};
    int pos_;
};

} // namespace cusumlab
