#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>

namespace lmpred
{
//---------------------------------------------------------------------------//
/*!
 * Philox4x32-10 block function.
 */
using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

PhiloxCounter philox4x32_10(PhiloxCounter ctr, PhiloxKey key);

std::uint64_t splitmix64(std::uint64_t x);

// Derive an independent seed from a base seed and a path of indices.
std::uint64_t derive_seed(std::uint64_t base,
                          std::initializer_list<std::uint64_t> path);

// Substream identifiers for a single simulated path.
enum class Substream : std::uint64_t
{
    fgn = 0x66676e,
    durations = 0x647572,
    shocks = 0x73686b,
};

//---------------------------------------------------------------------------//
/*!
 * Counter-based random stream.
 *
 * Draws depend only on (seed, stream id, draw index), so a stream can be
 * reconstructed anywhere from its seed.
 */
class RandomStream
{
  public:
    RandomStream(std::uint64_t seed, std::uint64_t stream_id);
    RandomStream(std::uint64_t seed, Substream s)
        : RandomStream(seed, static_cast<std::uint64_t>(s))
    {
    }

    std::uint64_t next_u64();
    // Uniform on [0, 1) with 53 bits
    double uniform();
    // Uniform on (0, 1)
    double uniform_open();
    double normal();
    double exponential();

  private:
    static constexpr int batch = 16;  // Philox blocks per refill

    PhiloxKey key_;
    std::uint32_t stream_hi_;
    std::uint32_t stream_lo_;
    std::uint64_t block_ = 0;
    std::array<std::uint32_t, 4 * batch> buf_{};
    int pos_ = 4 * batch;
    double spare_ = 0;
    bool have_spare_ = false;

    void refill();
};

}  // namespace lmpred
