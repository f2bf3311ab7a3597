#include <algorithm>
#include <cmath>

#include "lumen/error.hpp"
#include "lumen/metrics.hpp"

namespace lumen {

std::string channel_name(Channel c) {
    switch (c) {
        case Channel::R: return "R";
        case Channel::G: return "G";
        case Channel::B: return "B";
        case Channel::All: return "all";
    }
    return "all";
}

MetricScore MetricScore::success(std::string name, double value, Channel channel) {
    return MetricScore{std::move(name), value, channel, {}};
}

MetricScore MetricScore::failure(std::string name, std::string code, Channel channel) {
    return MetricScore{std::move(name), 0.0, channel, std::move(code)};
}

ChannelStats channel_stats(std::span<const double> samples) {
    ChannelStats s;
    if (samples.empty()) return s;
    // Constant channels are exact: summation error must not fake contrast.
    if (std::all_of(samples.begin(), samples.end(), [&](double v) { return v == samples[0]; })) {
        s.mean = samples[0];
        return s;
    }
    double sum = 0.0;
    for (double v : samples) sum += v;
    s.mean = sum / samples.size();
    double ss = 0.0;
    for (double v : samples) ss += (v - s.mean) * (v - s.mean);
    s.stddev = std::sqrt(ss / samples.size());
    return s;
}

namespace {

void require_same_length(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw DimensionMismatch("channel planes differ in size");
}

}  // namespace

MetricScore contrast_enhancement(std::span<const double> ref_channel, std::span<const double> enh_channel,
                                 Channel channel) {
    require_same_length(ref_channel, enh_channel);
    const ChannelStats ref = channel_stats(ref_channel);
    const ChannelStats enh = channel_stats(enh_channel);
    if (!(ref.stddev > 0.0)) return MetricScore::failure("contrast", "constant_reference", channel);
    return MetricScore::success("contrast", (enh.stddev - ref.stddev) / ref.stddev, channel);
}

MetricScore intensity_enhancement(std::span<const double> ref_channel, std::span<const double> enh_channel,
                                  Channel channel) {
    require_same_length(ref_channel, enh_channel);
    const ChannelStats ref = channel_stats(ref_channel);
    const ChannelStats enh = channel_stats(enh_channel);
    if (!(ref.mean > 0.0)) return MetricScore::failure("intensity", "zero_mean_reference", channel);
    return MetricScore::success("intensity", (enh.mean - ref.mean) / ref.mean, channel);
}

MetricScore hue_deviation(const RgbImage& ref, const RgbImage& test) {
    if (ref.width() != test.width() || ref.height() != test.height())
        throw DimensionMismatch("hue_deviation: image dimensions differ");
    double sum = 0.0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < ref.size(); ++i) {
        const auto a = hue_of(ref.pixels()[i]);
        const auto b = hue_of(test.pixels()[i]);
        if (!a || !b) continue;
        const double d = std::abs(*a - *b);
        sum += std::min(d, 360.0 - d);
        ++n;
    }
    if (n == 0) return MetricScore::failure("hue", "no_chromatic_pixels");
    return MetricScore::success("hue", sum / n);
}

}  // namespace lumen
