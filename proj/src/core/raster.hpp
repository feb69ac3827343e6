#pragma once

#include <array>
#include <cstdint>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace ordstat {

class Mt19937;

/// 8-bit raster, channel-planar storage: samples[c*w*h + y*w + x].
struct Raster {
    int width = 0;
    int height = 0;
    int channels = 1; // 1 or 3
    std::vector<std::uint8_t> samples;

    std::uint8_t &at(int c, int y, int x) {
        return samples[static_cast<std::size_t>(c) * width * height +
                       static_cast<std::size_t>(y) * width + x];
    }
    std::uint8_t at(int c, int y, int x) const {
        return samples[static_cast<std::size_t>(c) * width * height +
                       static_cast<std::size_t>(y) * width + x];
    }
};

/// 3x3 filter mask, row-major; non-negative, normalized to sum 1.
struct Mask3 {
    std::array<double, 9> weights;

    static Mask3 normalized(std::span<const double> raw);
    /// The Wiener-style default [10,12,9; 12,19,12; 9,12,10] / 105.
    static Mask3 wiener();
};

/// Parses P2/P3 (plain) or P5/P6 (binary) PNM with maxval 255. Comments
/// are tolerated anywhere in the header and, for plain formats, between
/// pixel tokens.
Raster read_pnm(std::span<const std::uint8_t> bytes);
Raster read_pnm_file(const std::string &path);

/// Encodes as P2/P5 (1 channel) or P3/P6 (3 channels); no comments,
/// maxval 255, LF separators.
std::vector<std::uint8_t> write_pnm(const Raster &r, bool binary);
void write_pnm_file(const Raster &r, const std::string &path, bool binary);

/// Sets each sample independently to 0 with probability pnoise/2 and to
/// 255 with probability pnoise/2.
void add_salt_pepper(Raster &r, double pnoise, Mt19937 &rng);

/// Weighted-median 3x3 filter: every interior sample is replaced by the
/// lower weighted median of its neighborhood under the mask; the one-pixel
/// border is copied unchanged. Channels are filtered independently.
Raster weighted_median_filter(const Raster &r, const Mask3 &mask);

} // namespace ordstat
