#pragma once

#include <array>
#include <cstdint>

namespace ara {

/// Counter-based random stream (Philox4x32-10).
///
/// A stream is fully determined by (seed, stream_id) and the number of values
/// drawn so far; the block counter is the only mutable state. Substreams are
/// derived by hashing a child index into the stream id, so parallel tasks can
/// each own an independent stream without any sequential jumping.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id = 0) noexcept
        : seed_(seed), stream_id_(stream_id) {}

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t stream_id() const noexcept { return stream_id_; }

    /// Independent child stream, a pure function of (seed, stream_id, child).
    RngStream derive(std::uint64_t child) const noexcept;

    std::uint32_t next_u32() noexcept;
    std::uint64_t next_u64() noexcept;

    /// Uniform on the open interval (0, 1); never returns 0 or 1.
    double uniform() noexcept;
    double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

    /// Standard normal via Box-Muller; the second variate is cached.
    double normal() noexcept;

private:
    void refill() noexcept;

    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::uint64_t block_ = 0;
    std::array<std::uint32_t, 4> buffer_{};
    unsigned used_ = 4;
    bool has_spare_normal_ = false;
    double spare_normal_ = 0.0;
};

/// SplitMix64 finalizer, used for stream derivation.
std::uint64_t mix64(std::uint64_t x) noexcept;

}  // namespace ara
