#include <algorithm>
#include <cmath>
#include <random>

#include "lumen/error.hpp"
#include "lumen/harness.hpp"

namespace lumen {

namespace {

// Portable [0, 1) draw; std::uniform_real_distribution is not specified
// bit-for-bit across standard libraries.
double unit_draw(std::mt19937_64& eng) { return static_cast<double>(eng() >> 11) * 0x1.0p-53; }

}  // namespace

Rgb hsv_to_rgb(double h, double s, double v) {
    h = std::fmod(h, 360.0);
    if (h < 0.0) h += 360.0;
    const double c = v * s;
    const double hp = h / 60.0;
    const double x = c * (1.0 - std::abs(std::fmod(hp, 2.0) - 1.0));
    const double m = v - c;
    double r = 0, g = 0, b = 0;
    switch (static_cast<int>(hp)) {
        case 0: r = c, g = x; break;
        case 1: r = x, g = c; break;
        case 2: g = c, b = x; break;
        case 3: g = x, b = c; break;
        case 4: r = x, b = c; break;
        default: r = c, b = x; break;
    }
    return Rgb{r + m, g + m, b + m};
}

RgbImage synth_vignette(const SyntheticSpec& spec) {
    if (spec.width < 2 || spec.height < 2) throw InvalidArgument("synthetic image must be at least 2x2");
    if (!(spec.falloff >= 0.0)) throw InvalidArgument("falloff must be non-negative");
    if (!(spec.center_level > 0.0 && spec.center_level <= 1.0)) throw InvalidArgument("center_level must be in (0, 1]");
    if (!(spec.noise_amp >= 0.0)) throw InvalidArgument("noise_amp must be non-negative");

    // Full-value colour; every pixel is a scalar multiple of it, so the
    // noiseless frame has one hue.
    const Rgb tint = hsv_to_rgb(spec.base_hue, kSyntheticSaturation, 1.0);
    const double cx = (spec.width - 1) / 2.0;
    const double cy = (spec.height - 1) / 2.0;
    const double rmax = std::hypot(cx, cy);

    std::mt19937_64 eng(spec.seed);
    std::vector<Rgb> px(static_cast<std::size_t>(spec.width) * spec.height);
    for (int y = 0; y < spec.height; ++y) {
        for (int x = 0; x < spec.width; ++x) {
            const double radius = std::hypot(x - cx, y - cy) / rmax;
            const double base = std::max(0.0, 1.0 - radius);
            const double level = spec.center_level * (spec.falloff == 0.0 ? 1.0 : std::pow(base, spec.falloff));
            Rgb& p = px[static_cast<std::size_t>(y) * spec.width + x];
            for (int c = 0; c < 3; ++c) p[c] = level * tint[c];
            if (spec.noise_amp > 0.0)
                for (int c = 0; c < 3; ++c) p[c] = clamp01(p[c] + spec.noise_amp * (2.0 * unit_draw(eng) - 1.0));
            if (spec.specular) {
                const SpecularSpot& s = *spec.specular;
                if (std::hypot(x - s.center_x, y - s.center_y) <= s.radius) p = Rgb{s.level, s.level, s.level};
            }
        }
    }
    return RgbImage(spec.width, spec.height, std::move(px));
}

std::vector<SyntheticSpec> synthetic_suite(int count, int size, std::uint64_t seed) {
    if (count < 0) throw InvalidArgument("synthetic suite count must be non-negative");
    std::vector<SyntheticSpec> out;
    out.reserve(count);
    for (int i = 0; i < count; ++i) {
        SyntheticSpec s;
        s.width = size;
        s.height = size;
        s.base_hue = 4.0 + 7.0 * (i % 5);
        s.falloff = 0.8 + 0.3 * (i % 4);
        s.center_level = 0.80 + 0.04 * (i % 4);
        s.noise_amp = 0.02;
        s.seed = seed * 1000003ULL + static_cast<std::uint64_t>(i);
        if (i % 2 == 1) {
            s.specular = SpecularSpot{size * (0.40 + 0.05 * (i % 3)), size * (0.45 + 0.04 * (i % 4)), size / 14.0, 1.0};
        }
        out.push_back(s);
    }
    return out;
}

}  // namespace lumen
