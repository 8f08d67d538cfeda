#include "fdim/compressor.hpp"

#include "fdim/error.hpp"

#include <cstdint>
#include <unordered_map>

namespace fractal {

namespace {

// 16-bit window value at position q, MSB-first; exact key, so chains hold
// only true prefix matches.
std::uint16_t window_key(const std::vector<std::uint8_t>& doc, std::size_t q) {
    std::uint16_t key = 0;
    for (int k = 0; k < kMinMatch; ++k) key = static_cast<std::uint16_t>((key << 1) | doc[q + k]);
    return key;
}

// Token-encode doc[seg_start, seg_end) against the window [window_start, i).
BitString encode_tokens(const std::vector<std::uint8_t>& doc, std::size_t seg_start,
                        std::size_t seg_end, std::size_t window_start) {
    BitString out;
    std::unordered_map<std::uint16_t, std::vector<std::uint32_t>> chains;

    auto insert_pos = [&](std::size_t q) {
        if (q + kMinMatch <= doc.size())
            chains[window_key(doc, q)].push_back(static_cast<std::uint32_t>(q));
    };
    for (std::size_t q = window_start; q < seg_start; ++q) insert_pos(q);

    std::size_t run_start = seg_start; // pending literal run [run_start, i)
    auto flush_run = [&](std::size_t i) {
        if (i == run_start) return;
        out.push_back(false);
        gamma_encode(out, i - run_start);
        for (std::size_t k = run_start; k < i; ++k) out.push_back(doc[k] != 0);
    };

    std::size_t i = seg_start;
    while (i < seg_end) {
        std::size_t best_len = 0, best_q = 0;
        if (i + kMinMatch <= seg_end) {
            auto it = chains.find(window_key(doc, i));
            if (it != chains.end()) {
                const auto& positions = it->second;
                const std::size_t cap = seg_end - i;
                int walked = 0;
                for (auto rit = positions.rbegin();
                     rit != positions.rend() && walked < kMaxChainWalk; ++rit, ++walked) {
                    std::size_t q = *rit;
                    std::size_t l = 0;
                    while (l < cap && doc[q + l] == doc[i + l]) ++l;
                    if (l >= static_cast<std::size_t>(kMinMatch) && l > best_len) {
                        best_len = l;
                        best_q = q;
                        if (best_len == cap) break; // cannot improve further
                    }
                }
            }
        }

        bool take = false;
        std::size_t dist = 0;
        if (best_len > 0) {
            dist = i - best_q;
            std::size_t match_cost = 1 + gamma_length(dist) + gamma_length(best_len - (kMinMatch - 1));
            take = match_cost < best_len;
        }

        if (take) {
            flush_run(i);
            out.push_back(true);
            gamma_encode(out, dist);
            gamma_encode(out, best_len - (kMinMatch - 1));
            for (std::size_t k = 0; k < best_len; ++k) insert_pos(i + k);
            i += best_len;
            run_start = i;
        } else {
            insert_pos(i);
            ++i;
        }
    }
    flush_run(seg_end);
    return out;
}

} // namespace

BitString compress(std::span<const BitString> segments) {
    // Full document layout first: token windows may reach back across
    // segment boundaries.
    std::vector<std::uint8_t> doc;
    std::vector<std::size_t> offsets{0};
    for (const BitString& s : segments) {
        for (std::size_t k = 0; k < s.size(); ++k) doc.push_back(s[k] ? 1 : 0);
        offsets.push_back(doc.size());
    }

    BitString stream;
    for (std::size_t seg = 0; seg < segments.size(); ++seg) {
        const std::size_t s = offsets[seg], e = offsets[seg + 1], len = e - s;

        BitString fresh = encode_tokens(doc, s, e, s);
        BitString history;
        bool have_history = seg > 0;
        if (have_history) history = encode_tokens(doc, s, e, 0);

        bool use_tokens = fresh.size() < len;
        bool use_history = false;
        std::size_t best = use_tokens ? fresh.size() : len;
        if (have_history && history.size() < best) {
            use_tokens = true;
            use_history = true;
            best = history.size();
        }

        gamma_encode(stream, len + 1);
        stream.push_back(use_tokens);
        stream.push_back(use_history);
        if (!use_tokens) {
            for (std::size_t k = s; k < e; ++k) stream.push_back(doc[k] != 0);
        } else {
            stream.append(use_history ? history : fresh);
        }
    }
    return stream;
}

std::vector<BitString> decompress(const BitString& stream) {
    std::vector<BitString> segments;
    std::vector<std::uint8_t> doc;
    std::size_t pos = 0;

    while (pos < stream.size()) {
        std::uint64_t header = gamma_decode(stream, pos);
        const std::size_t len = static_cast<std::size_t>(header - 1);
        if (pos + 2 > stream.size()) throw Error("corrupt stream");
        const bool use_tokens = stream[pos++];
        const bool use_history = stream[pos++];

        const std::size_t seg_start = doc.size();
        const std::size_t target = seg_start + len;
        const std::size_t window_start = use_history ? 0 : seg_start;

        if (!use_tokens) {
            if (pos + len > stream.size()) throw Error("corrupt stream");
            for (std::size_t k = 0; k < len; ++k) doc.push_back(stream[pos++] ? 1 : 0);
        } else {
            while (doc.size() < target) {
                if (pos >= stream.size()) throw Error("corrupt stream");
                const bool is_match = stream[pos++];
                if (!is_match) {
                    std::uint64_t runlen = gamma_decode(stream, pos);
                    if (doc.size() + runlen > target || pos + runlen > stream.size())
                        throw Error("corrupt stream");
                    for (std::uint64_t k = 0; k < runlen; ++k) doc.push_back(stream[pos++] ? 1 : 0);
                } else {
                    std::uint64_t dist = gamma_decode(stream, pos);
                    std::uint64_t mlen = gamma_decode(stream, pos) + (kMinMatch - 1);
                    if (dist == 0 || dist > doc.size() - window_start ||
                        doc.size() + mlen > target)
                        throw Error("corrupt stream");
                    std::size_t q = doc.size() - static_cast<std::size_t>(dist);
                    for (std::uint64_t k = 0; k < mlen; ++k) doc.push_back(doc[q + k]);
                }
            }
        }

        BitString seg;
        for (std::size_t k = seg_start; k < target; ++k) seg.push_back(doc[k] != 0);
        segments.push_back(std::move(seg));
    }
    return segments;
}

std::size_t klen(const BitString& s) {
    std::span<const BitString> one(&s, 1);
    return compress(one).size();
}

std::size_t klen_joint(std::span<const BitString> segments) {
    return compress(segments).size();
}

} // namespace fractal
