#include "lmpred/rng.hpp"

#include <cmath>

namespace lmpred
{
namespace
{
constexpr std::uint32_t philox_m0 = 0xD2511F53u;
constexpr std::uint32_t philox_m1 = 0xCD9E8D57u;
constexpr std::uint32_t philox_w0 = 0x9E3779B9u;
constexpr std::uint32_t philox_w1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi,
                    std::uint32_t& lo)
{
    std::uint64_t p = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(p >> 32);
    lo = static_cast<std::uint32_t>(p);
}
}  // namespace

PhiloxCounter philox4x32_10(PhiloxCounter ctr, PhiloxKey key)
{
    for (int round = 0; round < 10; ++round)
    {
        if (round > 0)
        {
            key[0] += philox_w0;
            key[1] += philox_w1;
        }
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(philox_m0, ctr[0], hi0, lo0);
        mulhilo(philox_m1, ctr[2], hi1, lo1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    }
    return ctr;
}

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t base,
                          std::initializer_list<std::uint64_t> path)
{
    std::uint64_t s = splitmix64(base);
    for (auto v : path)
        s = splitmix64(s ^ splitmix64(v + 0x632BE59BD9B4E019ull));
    return s;
}

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t stream_id)
{
    std::uint64_t k = splitmix64(seed);
    key_ = {static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(k >> 32)};
    std::uint64_t s = splitmix64(stream_id ^ 0xA0761D6478BD642Full);
    stream_lo_ = static_cast<std::uint32_t>(s);
    stream_hi_ = static_cast<std::uint32_t>(s >> 32);
}

// Same output as philox4x32_10 on consecutive counters; four blocks at a
// time so their rounds interleave.
void RandomStream::refill()
{
    for (int g = 0; g < batch; g += 4)
    {
        std::uint32_t c0[4], c1[4], c2[4], c3[4];
        for (int i = 0; i < 4; ++i)
        {
            std::uint64_t b = block_ + g + i;
            c0[i] = static_cast<std::uint32_t>(b);
            c1[i] = static_cast<std::uint32_t>(b >> 32);
            c2[i] = stream_lo_;
            c3[i] = stream_hi_;
        }
        std::uint32_t k0 = key_[0], k1 = key_[1];
#pragma GCC unroll 10
        for (int round = 0; round < 10; ++round)
        {
            if (round > 0)
            {
                k0 += philox_w0;
                k1 += philox_w1;
            }
#pragma GCC unroll 4
            for (int i = 0; i < 4; ++i)
            {
                std::uint64_t p0 = static_cast<std::uint64_t>(philox_m0) * c0[i];
                std::uint64_t p1 = static_cast<std::uint64_t>(philox_m1) * c2[i];
                std::uint32_t n0 = static_cast<std::uint32_t>(p1 >> 32) ^ c1[i] ^ k0;
                std::uint32_t n2 = static_cast<std::uint32_t>(p0 >> 32) ^ c3[i] ^ k1;
                c1[i] = static_cast<std::uint32_t>(p1);
                c3[i] = static_cast<std::uint32_t>(p0);
                c0[i] = n0;
                c2[i] = n2;
            }
        }
        for (int i = 0; i < 4; ++i)
        {
            buf_[4 * (g + i)] = c0[i];
            buf_[4 * (g + i) + 1] = c1[i];
            buf_[4 * (g + i) + 2] = c2[i];
            buf_[4 * (g + i) + 3] = c3[i];
        }
    }
    block_ += batch;
    pos_ = 0;
}

std::uint64_t RandomStream::next_u64()
{
    // every draw takes two words, so pos_ stays even
    if (pos_ == 4 * batch)
        refill();
    std::uint64_t lo = buf_[pos_];
    std::uint64_t hi = buf_[pos_ + 1];
    pos_ += 2;
    return (hi << 32) | lo;
}

double RandomStream::uniform()
{
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RandomStream::uniform_open()
{
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double RandomStream::normal()
{
    if (have_spare_)
    {
        have_spare_ = false;
        return spare_;
    }
    double u, v, s;
    do
    {
        u = 2 * uniform() - 1;
        v = 2 * uniform() - 1;
        s = u * u + v * v;
    } while (s >= 1 || s == 0);
    double f = std::sqrt(-2 * std::log(s) / s);
    spare_ = v * f;
    have_spare_ = true;
    return u * f;
}

double RandomStream::exponential()
{
    return -std::log(uniform_open());
}

}  // namespace lmpred
