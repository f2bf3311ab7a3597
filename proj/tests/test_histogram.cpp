#include <doctest.h>

#include <array>
#include <cmath>

#include "generators.hpp"
#include "lumen/enhance.hpp"
#include "lumen/error.hpp"

using namespace lumen;

namespace {

RgbImage gray_from(int w, int h, const std::vector<double>& v) {
    std::vector<Rgb> px;
    for (double x : v) px.push_back(Rgb{x, x, x});
    return RgbImage(w, h, px);
}

// 16x16 image holding every 8-bit level once.
RgbImage ramp256() {
    std::vector<double> v;
    for (int i = 0; i < 256; ++i) v.push_back(i / 255.0);
    return gray_from(16, 16, v);
}

int lvl(double v) { return static_cast<int>(std::lround(v * 255.0)); }

// Brute-force tiled equalization: every pixel recounts its neighbouring
// tiles. Tiles are [t*T, min(n,(t+1)*T)), mapping cdf(level)/count, bilinear
// between tile centres with clamping outside the outermost centres.
std::vector<double> tiled_oracle(const std::vector<int>& levels, int w, int h, int T, double clip) {
    auto tiles = [&](int n) { return (n + T - 1) / T; };
    auto centre = [&](int n, int t) { return (t * T + std::min(n, (t + 1) * T) - 1) / 2.0; };
    auto mapping = [&](int ty, int tx, int q) {
        const int y0 = ty * T, y1 = std::min(h, y0 + T), x0 = tx * T, x1 = std::min(w, x0 + T);
        std::array<double, 256> hist{};
        for (int y = y0; y < y1; ++y)
            for (int x = x0; x < x1; ++x) hist[levels[y * w + x]] += 1;
        const double count = double(y1 - y0) * (x1 - x0);
        if (clip > 0) {
            const double limit = std::max(clip * count, count / 256.0);
            double excess = 0;
            for (double& b : hist)
                if (b > limit) excess += b - limit, b = limit;
            for (double& b : hist) b += excess / 256.0;
        }
        double acc = 0;
        for (int i = 0; i <= q; ++i) acc += hist[i];
        return acc / count;
    };
    auto weights = [&](int n, int x, int& a, int& b, double& f) {
        const int nt = tiles(n);
        a = 0;
        for (int t = 0; t < nt; ++t)
            if (centre(n, t) <= x) a = t;
        b = std::min(nt - 1, a + 1);
        if (x <= centre(n, 0) || x >= centre(n, nt - 1) || a == b) {
            b = a = (x <= centre(n, 0)) ? 0 : a;
            f = 0;
        } else {
            f = (x - centre(n, a)) / (centre(n, b) - centre(n, a));
        }
    };
    std::vector<double> out(levels.size());
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            int ya, yb, xa, xb;
            double fy, fx;
            weights(h, y, ya, yb, fy);
            weights(w, x, xa, xb, fx);
            const int q = levels[y * w + x];
            const double v = (1 - fy) * ((1 - fx) * mapping(ya, xa, q) + fx * mapping(ya, xb, q)) +
                             fy * ((1 - fx) * mapping(yb, xa, q) + fx * mapping(yb, xb, q));
            out[y * w + x] = std::floor(255 * v + 0.5) / 255.0;
        }
    return out;
}

std::vector<int> levels_of(const RgbImage& img, int c) {
    std::vector<int> q;
    for (const Rgb& p : img.pixels()) q.push_back(static_cast<int>(std::floor(p[c] * 255 + 0.5)));
    return q;
}

}  // namespace

TEST_CASE("HE on a 256-level ramp stays within one step of identity") {
    const RgbImage out = hist_equalize(ramp256()).image;
    for (std::size_t i = 0; i < out.size(); ++i) CHECK(std::abs(lvl(out.pixels()[i].r) - static_cast<int>(i)) <= 1);
}

TEST_CASE("HE maps a constant image to white") {
    const RgbImage out = hist_equalize(RgbImage::filled(5, 4, Rgb{0.3, 0.6, 0.0})).image;
    for (const Rgb& p : out.pixels()) CHECK(p == Rgb{1, 1, 1});
}

TEST_CASE("HE on a two-level image") {
    std::vector<double> v(16, 0.0);
    for (int i = 8; i < 16; ++i) v[i] = 1.0;
    const RgbImage out = hist_equalize(gray_from(4, 4, v)).image;
    for (int i = 0; i < 8; ++i) CHECK(out.pixels()[i].r == 128.0 / 255.0);
    for (int i = 8; i < 16; ++i) CHECK(out.pixels()[i].r == 1.0);
}

TEST_CASE("HE output is monotone in the input level") {
    test::Gen gen(23);
    for (int t = 0; t < 20; ++t) {
        const RgbImage img = gen.image();
        const RgbImage out = hist_equalize(img).image;
        for (int c = 0; c < 3; ++c)
            for (std::size_t i = 0; i < img.size(); ++i)
                for (std::size_t j = 0; j < img.size(); ++j)
                    if (lvl(img.pixels()[i][c]) <= lvl(img.pixels()[j][c]))
                        CHECK(out.pixels()[i][c] <= out.pixels()[j][c]);
    }
}

TEST_CASE("AHE on constant images and with a single tile") {
    const RgbImage flat = RgbImage::filled(12, 9, Rgb{0.4, 0.4, 0.4});
    const RgbImage a = adaptive_hist_equalize(flat, 4).image;
    for (const Rgb& p : a.pixels()) CHECK(p == a.pixels()[0]);

    test::Gen gen(29);
    const RgbImage img = gen.image(10, 10);
    CHECK(adaptive_hist_equalize(img, 10).image == hist_equalize(img).image);
}

TEST_CASE("AHE on two flat halves matches the per-tile oracle") {
    std::vector<double> v(64);
    for (int r = 0; r < 8; ++r)
        for (int c = 0; c < 8; ++c) v[r * 8 + c] = c < 4 ? 0.2 : 0.8;
    const RgbImage img = gray_from(8, 8, v);
    const RgbImage out = adaptive_hist_equalize(img, 4).image;
    const auto expect = tiled_oracle(levels_of(img, 0), 8, 8, 4, 0.0);
    for (int i = 0; i < 64; ++i) CHECK(out.pixels()[i].r == expect[i]);
    // Dark half saturates far from the seam and blends towards the bright
    // tiles' zero mapping next to it.
    CHECK(out.at(0, 0).r == 1.0);
    CHECK(out.at(0, 2).r == 223.0 / 255.0);
    CHECK(out.at(0, 3).r == 159.0 / 255.0);
    CHECK(out.at(0, 5).r == 1.0);
}

TEST_CASE("AHE and CLAHE agree with the oracle on random images") {
    test::Gen gen(31);
    for (int t = 0; t < 8; ++t) {
        const int w = gen.integer(6, 30), h = gen.integer(6, 30);
        const RgbImage img = gen.image(w, h);
        const int tile = gen.integer(2, std::min(w, h));
        const double clip = gen.range(0.005, 0.2);
        const RgbImage a = adaptive_hist_equalize(img, tile).image;
        const RgbImage c = clahe(img, tile, clip).image;
        for (int ch = 0; ch < 3; ++ch) {
            const auto ea = tiled_oracle(levels_of(img, ch), w, h, tile, 0.0);
            const auto ec = tiled_oracle(levels_of(img, ch), w, h, tile, clip);
            for (std::size_t i = 0; i < img.size(); ++i) {
                CHECK(std::abs(a.pixels()[i][ch] - ea[i]) <= 1.0 / 255.0 + 1e-12);
                CHECK(std::abs(c.pixels()[i][ch] - ec[i]) <= 1.0 / 255.0 + 1e-12);
            }
        }
    }
}

TEST_CASE("CLAHE with clip 1 equals AHE") {
    test::Gen gen(37);
    const RgbImage img = gen.image(20, 14);
    CHECK(clahe(img, 5, 1.0).image == adaptive_hist_equalize(img, 5).image);
    const RgbImage flat = RgbImage::filled(9, 9, Rgb{0.7, 0.2, 0.1});
    const RgbImage cf = clahe(flat, 3, 0.01).image;
    for (const Rgb& p : cf.pixels()) CHECK(p == cf.pixels()[0]);
}

TEST_CASE("CLAHE on a 16-level ramp is flatter than HE") {
    std::vector<double> v(256);
    for (int r = 0; r < 16; ++r)
        for (int c = 0; c < 16; ++c) v[r * 16 + c] = c * 17 / 255.0;
    const RgbImage img = gray_from(16, 16, v);
    const double clip = 0.02;
    const RgbImage he = hist_equalize(img).image;
    const RgbImage cl = clahe(img, 16, clip).image;
    // Direct clip-and-redistribute: limit 5.12 per bin, 16 bins of 16
    // pixels, excess 16 * 10.88 spread over 256 levels.
    for (int k = 0; k < 16; ++k) {
        const double mapped = ((k + 1) * 5.12 + (k * 17 + 1) * (16 * 10.88 / 256.0)) / 256.0;
        const double expect = std::floor(255 * mapped + 0.5) / 255.0;
        CHECK(cl.at(0, k).r == doctest::Approx(expect).epsilon(1e-12));
        const double in = k * 17 / 255.0;
        CHECK(std::abs(cl.at(0, k).r - in) <= std::abs(he.at(0, k).r - in) + 1e-12);
    }
    CHECK(cl.at(0, 0).r < he.at(0, 0).r);
}

TEST_CASE("CLAHE with one tile and clip 1 matches HE on the ramp") {
    const RgbImage r = ramp256();
    const RgbImage he = hist_equalize(r).image;
    const RgbImage cl = clahe(r, 16, 1.0).image;
    for (std::size_t i = 0; i < r.size(); ++i) CHECK(std::abs(lvl(he.pixels()[i].r) - lvl(cl.pixels()[i].r)) <= 1);
}

TEST_CASE("tile and clip validation") {
    const RgbImage img = RgbImage::filled(10, 8, Rgb{0.5, 0.5, 0.5});
    CHECK_THROWS_AS(adaptive_hist_equalize(img, 1), InvalidArgument);
    CHECK_THROWS_AS(adaptive_hist_equalize(img, 9), InvalidArgument);
    CHECK_THROWS_AS(clahe(img, 4, 0.0), InvalidArgument);
    CHECK_THROWS_AS(clahe(img, 4, 1.5), InvalidArgument);
    CHECK(default_tile(RgbImage::filled(180, 200, Rgb{})) == 23);
    CHECK(default_tile(RgbImage::filled(3, 3, Rgb{})) == 2);
    CHECK(default_tile(RgbImage::filled(2, 9, Rgb{})) == 2);
}
