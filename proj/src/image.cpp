#include "lumen/image.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lumen/error.hpp"
#include "lumen/params.hpp"

namespace lumen {

namespace {

void require_dims(int width, int height, std::size_t n, const char* what) {
    if (width < 1 || height < 1)
        throw InvalidArgument(std::string(what) + ": dimensions must be positive");
    if (n != static_cast<std::size_t>(width) * static_cast<std::size_t>(height))
        throw InvalidArgument(std::string(what) + ": data length does not match width x height");
}

bool in_unit(double v) { return v >= 0.0 && v <= 1.0; }  // false for NaN

}  // namespace

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

RgbImage::RgbImage(int width, int height, std::vector<Rgb> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
    require_dims(width_, height_, pixels_.size(), "RgbImage");
    for (const Rgb& px : pixels_) {
        if (!in_unit(px.r) || !in_unit(px.g) || !in_unit(px.b))
            throw InvalidArgument("RgbImage: channel sample outside [0,1]");
    }
}

RgbImage RgbImage::filled(int width, int height, Rgb value) {
    if (width < 1 || height < 1) throw InvalidArgument("RgbImage: dimensions must be positive");
    return RgbImage(width, height, std::vector<Rgb>(static_cast<std::size_t>(width) * height, value));
}

std::vector<double> RgbImage::plane(int channel) const {
    std::vector<double> out(pixels_.size());
    std::transform(pixels_.begin(), pixels_.end(), out.begin(), [channel](const Rgb& px) { return px[channel]; });
    return out;
}

ValueMap::ValueMap(int width, int height, std::vector<double> values)
    : width_(width), height_(height), values_(std::move(values)) {
    require_dims(width_, height_, values_.size(), "ValueMap");
}

RegionMask::RegionMask(int width, int height, std::vector<RegionLabel> labels)
    : width_(width), height_(height), labels_(std::move(labels)) {
    require_dims(width_, height_, labels_.size(), "RegionMask");
}

std::size_t RegionMask::count(RegionLabel label) const {
    return static_cast<std::size_t>(std::count(labels_.begin(), labels_.end(), label));
}

ValueMap to_value_map(const RgbImage& img) {
    std::vector<double> v(img.size());
    std::transform(img.pixels().begin(), img.pixels().end(), v.begin(),
                   [](const Rgb& px) { return std::max({px.r, px.g, px.b}); });
    return ValueMap(img.width(), img.height(), std::move(v));
}

RegionMask classify_regions(const ValueMap& vmap, const EnhanceParams& params) {
    validate_structure(params);
    const std::vector<double> edges = params.bin_edges();
    const int m = params.bin_count();

    std::vector<RegionLabel> labels(vmap.values().size(), RegionLabel::darker());
    std::transform(vmap.values().begin(), vmap.values().end(), labels.begin(), [&](double v) {
        if (v < params.delta) return RegionLabel::darker();
        // Bin k covers [edges[k-1], edges[k]); the last bin also takes phi
        // and anything above it.
        int k = 1;
        while (k < m && v >= edges[k]) ++k;
        return RegionLabel::brighter_bin(k);
    });
    return RegionMask(vmap.width(), vmap.height(), std::move(labels));
}

std::optional<double> hue_of(const Rgb& px) {
    const double mx = std::max({px.r, px.g, px.b});
    const double mn = std::min({px.r, px.g, px.b});
    const double d = mx - mn;
    if (d <= 0.0) return std::nullopt;

    double h;
    if (mx == px.r)
        h = 60.0 * ((px.g - px.b) / d);
    else if (mx == px.g)
        h = 60.0 * ((px.b - px.r) / d + 2.0);
    else
        h = 60.0 * ((px.r - px.g) / d + 4.0);
    if (h < 0.0) h += 360.0;
    if (h >= 360.0) h -= 360.0;
    return h;
}

std::vector<std::optional<double>> hue_of(const RgbImage& img) {
    std::vector<std::optional<double>> out(img.size());
    std::transform(img.pixels().begin(), img.pixels().end(), out.begin(),
                   [](const Rgb& px) { return hue_of(px); });
    return out;
}

}  // namespace lumen
