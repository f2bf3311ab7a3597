#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lumen/image.hpp"

namespace lumen {

enum class Channel { R, G, B, All };

std::string channel_name(Channel c);

// A metric value, or an error code when the metric is undefined for the
// inputs (constant reference, no chromatic pixels, ...).
struct MetricScore {
    std::string name;
    double value = 0.0;
    Channel channel = Channel::All;
    std::string error;

    bool ok() const { return error.empty(); }

    static MetricScore success(std::string name, double value, Channel channel = Channel::All);
    static MetricScore failure(std::string name, std::string code, Channel channel = Channel::All);

    friend bool operator==(const MetricScore&, const MetricScore&) = default;
};

struct ChannelStats {
    double mean = 0.0;
    double stddev = 0.0;  // population
};

ChannelStats channel_stats(std::span<const double> samples);

// Mean SSIM over the luma plane with an 11x11 Gaussian window (sigma 1.5),
// valid-region pooling, K1 = 0.01, K2 = 0.03, dynamic range 1.
MetricScore ssim(const RgbImage& ref, const RgbImage& test);

// Raw SSIM on two equally-sized planes (dynamic range 1).
double ssim_plane(std::span<const double> a, std::span<const double> b, int width, int height);

// FSIMc: phase congruency (log-Gabor, 4 scales x 4 orientations) and
// gradient magnitude similarity on Y, chroma similarity on I and Q, pooled
// by the maximum phase congruency. Computed on the 0..255 scale.
MetricScore fsimc(const RgbImage& ref, const RgbImage& test);

struct FsimResult {
    double fsim = 0.0;
    double fsimc = 0.0;
};

FsimResult feature_similarity(const RgbImage& ref, const RgbImage& test);

// Phase congruency map of a plane (values on any scale).
std::vector<double> phase_congruency(std::span<const double> plane, int width, int height);

// (sd(enh) - sd(ref)) / sd(ref). Error "constant_reference" when sd(ref) == 0.
MetricScore contrast_enhancement(std::span<const double> ref_channel, std::span<const double> enh_channel,
                                 Channel channel = Channel::All);

// (mean(enh) - mean(ref)) / mean(ref). Error "zero_mean_reference" when
// mean(ref) == 0.
MetricScore intensity_enhancement(std::span<const double> ref_channel, std::span<const double> enh_channel,
                                  Channel channel = Channel::All);

// Mean circular hue distance in degrees over pixels chromatic in both.
// Error "no_chromatic_pixels" when there are none.
MetricScore hue_deviation(const RgbImage& ref, const RgbImage& test);

}  // namespace lumen
