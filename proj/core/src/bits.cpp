#include "fdim/bits.hpp"

#include "fdim/error.hpp"

#include <bit>

namespace fractal {

std::uint64_t splitmix64_next(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

Prng::Prng(std::uint64_t seed) {
    std::uint64_t s = seed;
    state_ = splitmix64_next(s);
    if (state_ == 0) state_ = 0x9E3779B97F4A7C15ULL; // xorshift state must be nonzero
}

std::uint64_t Prng::next_u64() {
    state_ ^= state_ >> 12;
    state_ ^= state_ << 25;
    state_ ^= state_ >> 27;
    return state_ * 0x2545F4914F6CDD1DULL;
}

double Prng::next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Prng::next_in(double lo, double hi) {
    return lo + (hi - lo) * next_unit();
}

std::uint64_t Prng::substream_seed(std::uint64_t master_seed, std::uint64_t k) {
    std::uint64_t s = master_seed ^ (0xA3EC647659359ACDULL * (k + 1));
    return splitmix64_next(s);
}

BitString BitString::from_text(const std::string& text) {
    BitString out;
    out.bits_.reserve(text.size());
    for (char c : text) {
        if (c == '0') out.bits_.push_back(0);
        else if (c == '1') out.bits_.push_back(1);
        else throw Error("bit string text must contain only 0 and 1");
    }
    return out;
}

void BitString::append(const BitString& other) {
    bits_.insert(bits_.end(), other.bits_.begin(), other.bits_.end());
}

std::string BitString::to_text() const {
    std::string s;
    s.reserve(bits_.size());
    for (std::uint8_t b : bits_) s.push_back(b ? '1' : '0');
    return s;
}

void gamma_encode(BitString& out, std::uint64_t k) {
    if (k == 0) throw Error("gamma code requires k >= 1");
    const int top = std::bit_width(k) - 1; // floor(log2 k)
    for (int i = 0; i < top; ++i) out.push_back(false);
    for (int i = top; i >= 0; --i) out.push_back((k >> i) & 1);
}

std::uint64_t gamma_decode(const BitString& bits, std::size_t& pos) {
    int zeros = 0;
    while (pos < bits.size() && !bits[pos]) {
        ++zeros;
        ++pos;
    }
    if (pos >= bits.size() || zeros > 63) throw Error("truncated gamma code");
    std::uint64_t value = 1;
    ++pos; // consume the leading 1
    for (int i = 0; i < zeros; ++i) {
        if (pos >= bits.size()) throw Error("truncated gamma code");
        value = (value << 1) | (bits[pos] ? 1 : 0);
        ++pos;
    }
    return value;
}

std::size_t gamma_length(std::uint64_t k) {
    return 2 * static_cast<std::size_t>(std::bit_width(k) - 1) + 1;
}

DyadicBitSource::DyadicBitSource(std::int64_t mantissa, int precision)
    : mantissa_(mantissa), precision_(precision) {
    if (precision < 1 || precision > 62) throw Error("precision out of range");
    if (mantissa < 0 || mantissa >= (std::int64_t{1} << precision))
        throw Error("normalize to unit cube first");
}

bool DyadicBitSource::bit(std::size_t j) const {
    if (j == 0) throw Error("expansion bits are 1-based");
    if (j > static_cast<std::size_t>(precision_)) return false; // dyadic tail is zero
    return (mantissa_ >> (precision_ - static_cast<int>(j))) & 1;
}

PrngBitSource::PrngBitSource(std::uint64_t seed) : prng_(seed) {}

bool PrngBitSource::bit(std::size_t j) const {
    if (j == 0) throw Error("expansion bits are 1-based");
    const std::size_t block = (j - 1) / 64;
    const std::size_t offset = (j - 1) % 64;
    while (blocks_.size() <= block) blocks_.push_back(prng_.next_u64());
    return (blocks_[block] >> (63 - offset)) & 1;
}

} // namespace fractal
