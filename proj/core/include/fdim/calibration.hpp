#pragma once

#include <string>
#include <vector>

namespace fractal {

// ---------------------------------------------------------------------------
// Measured compressor constants. The additive terms the theory leaves as
// O(1)/o(r) must be concrete numbers before any tolerance check can run, and
// measuring them on canonical inputs beats guessing. The file is tied to the
// codec version: a codec change invalidates every stored constant.
//
//   header_overhead  max per-segment framing cost (bits) for supported
//                    segment lengths; klen(s) <= |s| + header_overhead.
//   join_overhead    worst measured klen_joint(q,p) - klen(q) - klen(p),
//                    clamped at >= 0 (the encoder guarantees <= 0).
//   c0, c1           slack curve sigma(r) = c0 + c1*sqrt(r), fit to the
//                    self-conditioning cost cond_klen(s|s) so it dominates
//                    the measured o(r) redundancy on the corpus.
// ---------------------------------------------------------------------------
struct Calibration {
    std::string codec_version;
    double header_overhead = 0;
    double join_overhead = 0;
    double c0 = 0;
    double c1 = 0;

    double sigma(int r) const;
};

// Measure the constants on the canonical corpus (all-zeros, seeded
// pseudorandom, periodic strings over a grid of lengths). Deterministic.
Calibration calibrate_compressor();

// Versioned key-value text file. Loading refuses missing files, unknown or
// missing keys, and codec version mismatches — every downstream tolerance
// depends on these numbers matching the compiled codec. Extra comment lines
// (measurement context, run configuration) are written as '#' lines and
// ignored on load.
void save_calibration(const std::string& path, const Calibration& calibration,
                      const std::vector<std::string>& extra_comments = {});
Calibration load_calibration(const std::string& path);

} // namespace fractal
