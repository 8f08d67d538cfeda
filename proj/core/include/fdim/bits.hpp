#pragma once

#include <cstdint>
#include <cstddef>
#include <string>
#include <vector>

namespace fractal {

// ---------------------------------------------------------------------------
// Seeded PRNG. All randomness in the project flows through this generator so
// that every experiment is reproducible from a single 64-bit seed.
//
// Exact construction (bit-for-bit, platform independent):
//   state <- splitmix64_next(seed)   (one warm-up step; also maps seed 0 to a
//                                     nonzero state, which xorshift requires)
//   each draw: state ^= state >> 12; state ^= state << 25; state ^= state >> 27;
//              output = state * 0x2545F4914F6CDD1D
// ---------------------------------------------------------------------------

// One step of the splitmix64 sequence: advances *state and returns the output.
std::uint64_t splitmix64_next(std::uint64_t& state);

class Prng {
public:
    explicit Prng(std::uint64_t seed);

    std::uint64_t next_u64();

    // Uniform in [0,1) with 53 bits of mantissa (top bits of one draw).
    double next_unit();

    // Uniform in [lo, hi).
    double next_in(double lo, double hi);

    // kth independent substream seed for a given master seed; used to give
    // every campaign sample its own generator regardless of per-sample work.
    static std::uint64_t substream_seed(std::uint64_t master_seed, std::uint64_t k);

private:
    std::uint64_t state_;
};

// ---------------------------------------------------------------------------
// BitString: growable bit sequence, MSB-first append order, index 0 = first
// appended bit. Dense uint8 storage keeps the codec's inner loops simple.
// ---------------------------------------------------------------------------
class BitString {
public:
    BitString() = default;

    // Parse from text like "1100" (useful in tests and tools).
    static BitString from_text(const std::string& text);

    void push_back(bool bit) { bits_.push_back(bit ? 1 : 0); }
    void append(const BitString& other);

    bool operator[](std::size_t i) const { return bits_[i] != 0; }
    std::size_t size() const { return bits_.size(); }
    bool empty() const { return bits_.empty(); }

    bool operator==(const BitString& other) const { return bits_ == other.bits_; }

    std::string to_text() const;

private:
    std::vector<std::uint8_t> bits_;
};

// Elias gamma code for integers k >= 1: floor(log2 k) zeros, then k in binary.
// Self-delimiting; length 2*floor(log2 k) + 1.
void gamma_encode(BitString& out, std::uint64_t k);

// Reads one gamma-coded integer starting at *pos; advances *pos past it.
std::uint64_t gamma_decode(const BitString& bits, std::size_t& pos);

// Length in bits that gamma_encode(k) would emit.
std::size_t gamma_length(std::uint64_t k);

// ---------------------------------------------------------------------------
// BitSource: the binary expansion of one coordinate value in [0,1), queryable
// to arbitrary depth. Point coordinates are dyadic rationals, so their
// expansion beyond the stored precision is exactly zero; pseudorandom points
// draw further bits from a seeded stream instead. This is what lets the
// complexity proxies evaluate precisions far beyond the mantissa width.
// ---------------------------------------------------------------------------
class BitSource {
public:
    virtual ~BitSource() = default;
    // Bit j (1-based) of the binary expansion: x = sum_j bit(j) * 2^-j.
    virtual bool bit(std::size_t j) const = 0;
};

// Expansion of mantissa * 2^-p for mantissa in [0, 2^p); zero beyond bit p.
class DyadicBitSource final : public BitSource {
public:
    DyadicBitSource(std::int64_t mantissa, int precision);
    bool bit(std::size_t j) const override;

private:
    std::int64_t mantissa_;
    int precision_;
};

// Lazily materialized pseudorandom expansion; bits come from Prng draws in
// 64-bit blocks, most significant bit first. Deterministic in the seed.
class PrngBitSource final : public BitSource {
public:
    explicit PrngBitSource(std::uint64_t seed);
    bool bit(std::size_t j) const override;

private:
    mutable Prng prng_;
    mutable std::vector<std::uint64_t> blocks_;
};

} // namespace fractal
