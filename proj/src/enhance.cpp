#include "lumen/enhance.hpp"

#include <algorithm>

#include "lumen/error.hpp"
#include "lumen/parallel.hpp"

namespace lumen {

namespace {

void require_min_size(const RgbImage& img) {
    if (img.width() < 2 || img.height() < 2)
        throw DimensionMismatch("enhancer needs an image of at least 2x2 pixels");
}

// Weights used by the TWB inside the pipeline: the enhancement runs at
// source resolution, so the offsets sit at the group centroid.
const CwbWeights kCentroid = cwb_weights(0.5, 0.5);

}  // namespace

CwbWeights cwb_weights(double dr, double dc) {
    if (!(dr >= 0.0 && dr <= 1.0) || !(dc >= 0.0 && dc <= 1.0))
        throw InvalidArgument("bilinear offsets must lie in [0, 1]");
    CwbWeights w;
    w.dr = dr;
    w.dc = dc;
    w.w = {(1.0 - dr) * (1.0 - dc), dr * (1.0 - dc), (1.0 - dr) * dc, dr * dc};
    return w;
}

double hwb_value(const FourGroup& g) { return (g.p[0] + g.p[1] + g.p[2] + g.p[3]) / 2.0; }

double tw_weight(int n, int k, const CwbWeights& w, const EnhanceParams& params) {
    if (n < 1 || n > 4) throw InvalidArgument("neighbour index must be in 1..4");
    if (k < 1 || k > params.bin_count()) throw InvalidArgument("bin index out of range");
    return (w.w[n - 1] + params.half_unit) / params.denominator(k);
}

double twb_value(const FourGroup& g, int k, const CwbWeights& w, const EnhanceParams& params) {
    double sum = 0.0;
    for (int n = 1; n <= 4; ++n) sum += g.p[n - 1] * tw_weight(n, k, w, params);
    return sum;
}

FourGroup four_group(const RgbImage& img, int row, int col, int channel) {
    const int r1 = std::min(row + 1, img.height() - 1);
    const int c1 = std::min(col + 1, img.width() - 1);
    return FourGroup{{img.at(row, col)[channel], img.at(row, c1)[channel], img.at(r1, col)[channel],
                      img.at(r1, c1)[channel]}};
}

std::string method_name(Method m) {
    switch (m) {
        case Method::Identity: return "identity";
        case Method::Pm: return "pm";
        case Method::HwbOnly: return "hwb";
        case Method::He: return "he";
        case Method::Ahe: return "ahe";
        case Method::Clahe: return "clahe";
    }
    return "unknown";
}

Method parse_method(const std::string& id) {
    for (Method m : {Method::Identity, Method::Pm, Method::HwbOnly, Method::He, Method::Ahe, Method::Clahe})
        if (method_name(m) == id) return m;
    if (id == "m2") return Method::HwbOnly;
    throw InvalidArgument("unknown method '" + id + "'");
}

std::vector<Rgb> pm_intermediate(const RgbImage& img, const EnhanceParams& params, bool all_dark) {
    require_min_size(img);
    validate_structure(params);

    // Regions are decided once, on the reference image.
    const RegionMask mask = classify_regions(to_value_map(img), params);
    const int m = params.bin_count();

    // tw_weight per bin and neighbour, hoisted out of the pixel loop.
    std::vector<std::array<double, 4>> tw(m + 1);
    for (int k = 1; k <= m; ++k)
        for (int n = 1; n <= 4; ++n) tw[k][n - 1] = tw_weight(n, k, kCentroid, params);

    const int width = img.width();
    std::vector<Rgb> out(img.size());
    parallel_for(static_cast<std::size_t>(img.height()), [&](std::size_t r) {
        const int row = static_cast<int>(r);
        for (int col = 0; col < width; ++col) {
            const RegionLabel label = mask.at(row, col);
            Rgb& dst = out[r * width + col];
            for (int c = 0; c < 3; ++c) {
                const FourGroup g = four_group(img, row, col, c);
                if (all_dark || label.is_darker()) {
                    dst[c] = hwb_value(g);
                } else {
                    const auto& wk = tw[label.bin()];
                    dst[c] = g.p[0] * wk[0] + g.p[1] * wk[1] + g.p[2] * wk[2] + g.p[3] * wk[3];
                }
            }
        }
    });
    return out;
}

namespace {

RgbImage blend_with_reference(const RgbImage& img, std::vector<Rgb> intermediate) {
    for (std::size_t i = 0; i < intermediate.size(); ++i) {
        const Rgb& ref = img.pixels()[i];
        Rgb& px = intermediate[i];
        for (int c = 0; c < 3; ++c) px[c] = (clamp01(px[c]) + ref[c]) / 2.0;
    }
    return RgbImage(img.width(), img.height(), std::move(intermediate));
}

}  // namespace

EnhancedImage enhance_pm(const RgbImage& img, const EnhanceParams& params) {
    EnhancedImage out;
    out.image = blend_with_reference(img, pm_intermediate(img, params));
    out.method = Method::Pm;
    out.params = params;
    return out;
}

EnhancedImage enhance_hwb_only(const RgbImage& img) {
    EnhancedImage out;
    out.image = blend_with_reference(img, pm_intermediate(img, EnhanceParams{}, /*all_dark=*/true));
    out.method = Method::HwbOnly;
    return out;
}

}  // namespace lumen
