#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "generators.hpp"
#include "lumen/error.hpp"
#include "lumen/harness.hpp"
#include "lumen/metrics.hpp"
#include "oracles/fsim_oracle.hpp"
#include "oracles/ssim_oracle.hpp"

using namespace lumen;

namespace {

std::vector<double> luma_plane(const RgbImage& img) {
    std::vector<double> v;
    for (const Rgb& p : img.pixels()) v.push_back(luma(p));
    return v;
}

RgbImage tiled_ramp(double gain) {
    std::vector<Rgb> px;
    for (int r = 0; r < 32; ++r)
        for (int c = 0; c < 32; ++c) {
            const double v = gain * ((r % 8) * 8 + (c % 8)) / 63.0;
            px.push_back(Rgb{v, v, v});
        }
    return RgbImage(32, 32, px);
}

RgbImage noisy(const RgbImage& img, double amp, std::uint64_t seed) {
    test::Gen gen(seed);
    std::vector<Rgb> px(img.pixels().begin(), img.pixels().end());
    for (Rgb& p : px)
        for (int c = 0; c < 3; ++c) p[c] = std::clamp(p[c] + gen.range(-amp, amp), 0.0, 1.0);
    return RgbImage(img.width(), img.height(), px);
}

SyntheticSpec vignette(int size, std::uint64_t seed) {
    SyntheticSpec s;
    s.width = s.height = size;
    s.noise_amp = 0.03;
    s.seed = seed;
    return s;
}

// Values frozen from the numpy port of the published FSIM reference code
// (tests/oracles/fsim_reference.py) on fixtures::fsim_pairs().
constexpr double kFrozen[3][2] = {
    {0.967137340354, 0.964697952181},
    {0.772512695334, 0.744724024500},
    {0.748177106294, 0.739754231760},
};

}  // namespace

TEST_CASE("ssim identity, symmetry and errors") {
    for (std::uint64_t s : {1, 2, 3}) {
        const RgbImage x = synth_vignette(vignette(48, s));
        const RgbImage y = noisy(x, 0.1, s + 10);
        CHECK(ssim(x, x).value == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(std::abs(ssim(x, y).value - ssim(y, x).value) <= 1e-12);
        CHECK(ssim(x, y).value < 1.0);
        CHECK(ssim(x, y).name == "ssim");
    }
    const RgbImage a = RgbImage::filled(20, 20, Rgb{});
    CHECK_THROWS_AS(ssim(a, RgbImage::filled(20, 21, Rgb{})), DimensionMismatch);
    CHECK_THROWS_AS(ssim(RgbImage::filled(10, 30, Rgb{}), RgbImage::filled(10, 30, Rgb{})), DimensionMismatch);
    CHECK_NOTHROW(ssim(RgbImage::filled(11, 11, Rgb{}), RgbImage::filled(11, 11, Rgb{})));
}

TEST_CASE("ssim on the tiled ramp matches the brute-force oracle") {
    const RgbImage x = tiled_ramp(1.0), y = tiled_ramp(0.5);
    const double direct = oracle::ssim_direct(luma_plane(x), luma_plane(y), 32, 32);
    CHECK(std::abs(ssim(x, y).value - direct) <= 1e-6);
}

TEST_CASE("ssim matches the oracle on random pairs and falls with noise") {
    test::Gen gen(47);
    for (int t = 0; t < 5; ++t) {
        const int w = gen.integer(11, 30), h = gen.integer(11, 30);
        const RgbImage x = gen.image(w, h), y = gen.image(w, h);
        CHECK(std::abs(ssim(x, y).value - oracle::ssim_direct(luma_plane(x), luma_plane(y), w, h)) <= 1e-9);
        CHECK(ssim(x, y).value >= -1.0);
        CHECK(ssim(x, y).value <= 1.0);
    }
    const RgbImage base = synth_vignette(vignette(40, 5));
    double prev = 1.0;
    for (double amp : {0.02, 0.08, 0.2}) {
        const double v = ssim(base, noisy(base, amp, 99)).value;
        CHECK(v < prev);
        prev = v;
    }
}

TEST_CASE("fsimc identity and range") {
    for (std::uint64_t s : {1, 2, 3}) {
        const RgbImage x = synth_vignette(vignette(64, s));
        CHECK(fsimc(x, x).value == doctest::Approx(1.0).epsilon(1e-12));
        const double v = fsimc(x, noisy(x, 0.15, s)).value;
        CHECK(v > 0.0);
        CHECK(v < 1.0);
    }
    CHECK_THROWS_AS(fsimc(RgbImage::filled(31, 40, Rgb{}), RgbImage::filled(31, 40, Rgb{})), DimensionMismatch);
    CHECK_THROWS_AS(fsimc(RgbImage::filled(40, 40, Rgb{}), RgbImage::filled(41, 40, Rgb{})), DimensionMismatch);
}

TEST_CASE("fsimc on a flat image reports missing phase structure") {
    const RgbImage flat = RgbImage::filled(40, 40, Rgb{0.5, 0.2, 0.1});
    const MetricScore s = fsimc(flat, flat);
    CHECK_FALSE(s.ok());
    CHECK(s.error == "no_phase_structure");
}

TEST_CASE("fsim on the fixed pairs matches the frozen reference values") {
    const auto pairs = test::fsim_pairs();
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const FsimResult r = feature_similarity(pairs[i].first, pairs[i].second);
        CHECK(std::abs(r.fsim - kFrozen[i][0]) <= 1e-6);
        CHECK(std::abs(r.fsimc - kFrozen[i][1]) <= 1e-6);
    }
}

TEST_CASE("fsim on the fixed pairs matches the direct-DFT implementation") {
    const auto pairs = test::fsim_pairs();
    for (const auto& [ref, enh] : pairs) {
        const FsimResult r = feature_similarity(ref, enh);
        const auto o = oracle::fsim_direct(ref, enh);
        CHECK(std::abs(r.fsim - o.fsim) <= 1e-3);
        CHECK(std::abs(r.fsimc - o.fsimc) <= 1e-3);
    }
}

TEST_CASE("fsimc on a downsampled size stays consistent") {
    // 512 px side triggers the 2x box downsampling.
    const RgbImage x = synth_vignette(vignette(512, 4));
    CHECK(fsimc(x, x).value == doctest::Approx(1.0).epsilon(1e-12));
    const double v = fsimc(x, enhance_pm(x).image).value;
    CHECK(v > 0.5);
    CHECK(v < 1.0);
}

TEST_CASE("contrast enhancement") {
    const std::vector<double> ref{0.1, 0.3, 0.5, 0.2, 0.4};
    CHECK(contrast_enhancement(ref, ref).value == 0.0);
    std::vector<double> wide;
    for (double v : ref) wide.push_back(2 * (v - 0.3) + 0.3);
    CHECK(contrast_enhancement(ref, wide).value == doctest::Approx(1.0).epsilon(1e-12));
    const std::vector<double> flat(5, 0.4);
    const MetricScore e = contrast_enhancement(flat, ref);
    CHECK(e.error == "constant_reference");
    CHECK(contrast_enhancement(ref, wide, Channel::G).channel == Channel::G);
}

TEST_CASE("intensity enhancement") {
    const std::vector<double> ref{0.1, 0.3, 0.5, 0.2};
    CHECK(intensity_enhancement(ref, ref).value == 0.0);
    std::vector<double> up;
    for (double v : ref) up.push_back(1.5 * v);
    CHECK(intensity_enhancement(ref, up).value == doctest::Approx(0.5).epsilon(1e-12));
    const std::vector<double> black(4, 0.0);
    CHECK(intensity_enhancement(black, ref).error == "zero_mean_reference");
}

TEST_CASE("channel stats use the population deviation") {
    const std::vector<double> v{0.0, 1.0};
    const ChannelStats s = channel_stats(v);
    CHECK(s.mean == 0.5);
    CHECK(s.stddev == 0.5);
}

TEST_CASE("hue deviation") {
    test::Gen gen(53);
    const RgbImage x = gen.image(9, 9);
    CHECK(hue_deviation(x, x).value == 0.0);
    const RgbImage red = RgbImage::filled(4, 4, Rgb{1, 0, 0});
    const RgbImage green = RgbImage::filled(4, 4, Rgb{0, 1, 0});
    const RgbImage cyan = RgbImage::filled(4, 4, Rgb{0, 1, 1});
    CHECK(hue_deviation(red, green).value == doctest::Approx(120.0));
    CHECK(hue_deviation(red, cyan).value == doctest::Approx(180.0));
    // Circular: 350 vs 10 degrees is 20 apart.
    const RgbImage a = RgbImage::filled(3, 3, hsv_to_rgb(350, 1, 1));
    const RgbImage b = RgbImage::filled(3, 3, hsv_to_rgb(10, 1, 1));
    CHECK(hue_deviation(a, b).value == doctest::Approx(20.0));
    const RgbImage grey = RgbImage::filled(4, 4, Rgb{0.5, 0.5, 0.5});
    CHECK(hue_deviation(red, grey).error == "no_chromatic_pixels");
    CHECK_THROWS_AS(hue_deviation(red, RgbImage::filled(4, 5, Rgb{})), DimensionMismatch);
}
