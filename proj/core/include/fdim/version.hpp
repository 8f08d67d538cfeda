#pragma once

namespace fractal {

// Library version, embedded in every output file's provenance header.
inline constexpr const char* kVersion = "1.0.0";

// Version tag of the bit-level codec. Calibration files record it and are
// rejected on mismatch, since measured constants are codec-specific.
inline constexpr const char* kCodecVersion = "swmatch-1";

} // namespace fractal
