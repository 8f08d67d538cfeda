#pragma once

#include "fdim/bits.hpp"

#include <span>
#include <vector>

namespace fractal {

// ---------------------------------------------------------------------------
// Self-contained bit-stream compressor used as the computable upper bound on
// description length. Deterministic, dependency-free, and fully decodable, so
// the proxy it provides is itself a tested artifact.
//
// Stream layout: a sequence of segments, each
//     gamma(len + 1) | tokens? | history? | content
// where content is either the raw bits (tokens? = 0) or a token stream over a
// sliding window (tokens? = 1). The window starts at the segment's own first
// bit (history? = 0) or at the start of the whole stream's decoded content
// (history? = 1), which is what lets a later segment compress against an
// earlier one — the segment boundary doubles as the "given q" separator for
// conditional description length.
//
// Token stream:  0 gamma(runlen) <runlen literal bits>
//             |  1 gamma(distance) gamma(length - 15)
// Matches copy `length` bits from `distance` back (self-overlap allowed) and
// are only used when at least kMinMatch bits long and strictly cheaper than
// the literals they replace. The encoder picks, per segment, the cheapest of
// raw / fresh-window tokens / history-window tokens, so a segment never costs
// more than its raw length plus the header — and a two-segment stream never
// costs more than the two single-segment streams combined.
// ---------------------------------------------------------------------------

inline constexpr int kMinMatch = 16;
inline constexpr int kMaxChainWalk = 1024;

// Encode segments into one self-delimiting stream.
BitString compress(std::span<const BitString> segments);

// Inverse of compress; throws Error("corrupt stream") on malformed input.
std::vector<BitString> decompress(const BitString& stream);

// Description-length proxy: exact bit length of compress({s}).
std::size_t klen(const BitString& s);

// Bit length of the multi-segment stream (later segments may reference
// earlier content). klen_joint({q, p}) <= klen(q) + klen(p) always.
std::size_t klen_joint(std::span<const BitString> segments);

} // namespace fractal
