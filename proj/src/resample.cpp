#include <cmath>
#include <numbers>

#include "lumen/enhance.hpp"
#include "lumen/error.hpp"
#include "lumen/parallel.hpp"

namespace lumen {

namespace {

constexpr double kSupport = 3.0;

double sinc(double x) {
    if (x == 0.0) return 1.0;
    const double px = std::numbers::pi * x;
    return std::sin(px) / px;
}

struct Taps {
    int first = 0;
    std::vector<double> weights;
};

// Normalized filter taps for every output coordinate along one axis.
std::vector<Taps> build_taps(int out, double scale) {
    const double stretch = scale < 1.0 ? 1.0 / scale : 1.0;
    const double reach = kSupport * stretch;
    std::vector<Taps> taps(out);
    for (int o = 0; o < out; ++o) {
        const double center = (o + 0.5) / scale - 0.5;
        const int lo = static_cast<int>(std::floor(center - reach)) + 1;
        const int hi = static_cast<int>(std::floor(center + reach));
        Taps& t = taps[o];
        t.first = lo;
        double sum = 0.0;
        for (int j = lo; j <= hi; ++j) {
            const double w = lanczos3_kernel((center - j) / stretch);
            t.weights.push_back(w);
            sum += w;
        }
        for (double& w : t.weights) w /= sum;
    }
    return taps;
}

int clamp_index(int i, int n) { return i < 0 ? 0 : (i >= n ? n - 1 : i); }

}  // namespace

double lanczos3_kernel(double x) {
    const double ax = std::abs(x);
    if (ax >= kSupport) return 0.0;
    // Exact zeros at the non-zero integers keep scale-1 resampling an
    // identity rather than leaking sin(k*pi) rounding.
    if (ax != 0.0 && ax == std::floor(ax)) return 0.0;
    return sinc(x) * sinc(x / kSupport);
}

RgbImage lanczos3_resize(const RgbImage& img, double scale) {
    if (!(scale > 0.0) || !std::isfinite(scale)) throw InvalidArgument("scale must be a positive finite number");
    const long ow = std::lround(img.width() * scale);
    const long oh = std::lround(img.height() * scale);
    if (ow < 1 || oh < 1 || ow > (1L << 16) || oh > (1L << 16))
        throw InvalidArgument("scale yields a degenerate output size");

    const int w = img.width();
    const int h = img.height();
    const std::vector<Taps> tx = build_taps(static_cast<int>(ow), scale);
    const std::vector<Taps> ty = build_taps(static_cast<int>(oh), scale);

    // Horizontal pass into an unclamped buffer, then vertical.
    std::vector<Rgb> horiz(static_cast<std::size_t>(h) * ow);
    parallel_for(static_cast<std::size_t>(h), [&](std::size_t r) {
        const auto src = img.row(static_cast<int>(r));
        for (long x = 0; x < ow; ++x) {
            const Taps& t = tx[x];
            Rgb acc;
            for (std::size_t k = 0; k < t.weights.size(); ++k) {
                const Rgb& px = src[clamp_index(t.first + static_cast<int>(k), w)];
                acc.r += t.weights[k] * px.r;
                acc.g += t.weights[k] * px.g;
                acc.b += t.weights[k] * px.b;
            }
            horiz[r * ow + x] = acc;
        }
    });

    std::vector<Rgb> out(static_cast<std::size_t>(oh) * ow);
    parallel_for(static_cast<std::size_t>(oh), [&](std::size_t y) {
        const Taps& t = ty[y];
        for (long x = 0; x < ow; ++x) {
            Rgb acc;
            for (std::size_t k = 0; k < t.weights.size(); ++k) {
                const Rgb& px = horiz[static_cast<std::size_t>(clamp_index(t.first + static_cast<int>(k), h)) * ow + x];
                acc.r += t.weights[k] * px.r;
                acc.g += t.weights[k] * px.g;
                acc.b += t.weights[k] * px.b;
            }
            out[y * ow + x] = Rgb{clamp01(acc.r), clamp01(acc.g), clamp01(acc.b)};
        }
    });
    return RgbImage(static_cast<int>(ow), static_cast<int>(oh), std::move(out));
}

}  // namespace lumen
