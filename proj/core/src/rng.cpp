#include "cusumlab/rng.hpp"

#include <bit>

#include "cusumlab/special_functions.hpp"

namespace cusumlab {

namespace {

constexpr std::uint64_t kMul0 = 0xD2E7470EE14C6C93ull;
constexpr std::uint64_t kMul1 = 0xCA5A826395121157ull;
constexpr std::uint64_t kWeyl0 = 0x9E3779B97F4A7C15ull;
constexpr std::uint64_t kWeyl1 = 0xBB67AE8584CAA73Bull;

inline void mul_hi_lo(std::uint64_t a, std::uint64_t b, std::uint64_t& hi,
                      std::uint64_t& lo) {
    const unsigned __int128 p =
        static_cast<unsigned __int128>(a) * static_cast<unsigned __int128>(b);
    hi = static_cast<std::uint64_t>(p >> 64);
    lo = static_cast<std::uint64_t>(p);
}

} // namespace

std::array<std::uint64_t, 4> philox4x64(std::array<std::uint64_t, 4> counter,
                                        std::array<std::uint64_t, 2> key) {
    for (int round = 0; round < 10; ++round) {
        std::uint64_t hi0, lo0, hi1, lo1;
        mul_hi_lo(kMul0, counter[0], hi0, lo0);
        mul_hi_lo(kMul1, counter[2], hi1, lo1);
        counter = {hi1 ^ counter[1] ^ key[0], lo1,
                   hi0 ^ counter[3] ^ key[1], lo0};
        key[0] += kWeyl0;
        key[1] += kWeyl1;
    }
    return counter;
}

std::uint64_t canonical_bits(double v) {
    if (v == 0.0) {
        return 0;
    }
    return std::bit_cast<std::uint64_t>(v);
}

StreamRng::StreamRng(const StreamKey& key)
    : key_(key.key), counter_(key.counter), pos_(4) {}

void StreamRng::refill() {
    block_ = philox4x64(counter_, key_);
    ++counter_[3];
    pos_ = 0;
}

std::uint64_t StreamRng::next_u64() {
    if (pos_ >= 4) {
        refill();
    }
    return block_[pos_++];
}

double StreamRng::next_uniform() {
    const std::uint64_t w = next_u64();
    return (static_cast<double>(w >> 11) + 0.5) * 0x1.0p-53;
}

double StreamRng::next_normal() {
    return normal_quantile(next_uniform());
}

} // namespace cusumlab
