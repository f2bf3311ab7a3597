#include <algorithm>
#include <array>
#include <cmath>

#include "lumen/enhance.hpp"
#include "lumen/error.hpp"
#include "lumen/parallel.hpp"

namespace lumen {

namespace {

constexpr int kLevels = 256;

int level_of(double v) { return static_cast<int>(std::floor(v * 255.0 + 0.5)); }

double requantize(double v) { return std::floor(255.0 * v + 0.5) / 255.0; }

using Lut = std::array<double, kLevels>;

// Cumulative distribution of a (possibly clipped) histogram, normalized by
// the tile's pixel count.
Lut cdf_lut(const std::array<double, kLevels>& hist, double count) {
    Lut lut{};
    double acc = 0.0;
    for (int q = 0; q < kLevels; ++q) {
        acc += hist[q];
        lut[q] = acc / count;
    }
    return lut;
}

void clip_histogram(std::array<double, kLevels>& hist, double count, double clip) {
    const double limit = std::max(clip * count, count / kLevels);
    double excess = 0.0;
    for (double& h : hist) {
        if (h > limit) {
            excess += h - limit;
            h = limit;
        }
    }
    const double share = excess / kLevels;
    for (double& h : hist) h += share;
}

// Tile grid along one axis: ranges [i * tile, min(n, (i + 1) * tile)).
struct Axis {
    int tiles = 1;
    std::vector<double> centers;

    Axis(int n, int tile) {
        tiles = (n + tile - 1) / tile;
        centers.resize(tiles);
        for (int i = 0; i < tiles; ++i) {
            const int lo = i * tile;
            const int hi = std::min(n, lo + tile);
            centers[i] = (lo + hi - 1) / 2.0;
        }
    }

    // Neighbouring tile indices and the weight of the second.
    void locate(int x, int& i0, int& i1, double& f) const {
        if (x <= centers.front()) {
            i0 = i1 = 0;
            f = 0.0;
            return;
        }
        if (x >= centers.back()) {
            i0 = i1 = tiles - 1;
            f = 0.0;
            return;
        }
        i0 = 0;
        while (i0 + 1 < tiles && centers[i0 + 1] <= x) ++i0;
        i1 = i0 + 1;
        f = (x - centers[i0]) / (centers[i1] - centers[i0]);
    }
};

RgbImage tiled_equalize(const RgbImage& img, int tile, double clip, bool clipped) {
    const int w = img.width();
    const int h = img.height();
    const Axis ax(w, tile);
    const Axis ay(h, tile);

    std::vector<std::array<int, 3>> levels(img.size());
    for (std::size_t i = 0; i < img.size(); ++i)
        for (int c = 0; c < 3; ++c) levels[i][c] = level_of(img.pixels()[i][c]);

    // luts[(ty * tiles_x + tx) * 3 + c]
    std::vector<Lut> luts(static_cast<std::size_t>(ax.tiles) * ay.tiles * 3);
    parallel_for(static_cast<std::size_t>(ax.tiles) * ay.tiles, [&](std::size_t t) {
        const int ty = static_cast<int>(t) / ax.tiles;
        const int tx = static_cast<int>(t) % ax.tiles;
        const int y0 = ty * tile, y1 = std::min(h, y0 + tile);
        const int x0 = tx * tile, x1 = std::min(w, x0 + tile);
        const double count = static_cast<double>(y1 - y0) * (x1 - x0);
        for (int c = 0; c < 3; ++c) {
            std::array<double, kLevels> hist{};
            for (int y = y0; y < y1; ++y)
                for (int x = x0; x < x1; ++x) hist[levels[static_cast<std::size_t>(y) * w + x][c]] += 1.0;
            if (clipped) clip_histogram(hist, count, clip);
            luts[t * 3 + c] = cdf_lut(hist, count);
        }
    });

    std::vector<Rgb> out(img.size());
    parallel_for(static_cast<std::size_t>(h), [&](std::size_t r) {
        const int y = static_cast<int>(r);
        int ty0, ty1;
        double fy;
        ay.locate(y, ty0, ty1, fy);
        for (int x = 0; x < w; ++x) {
            int tx0, tx1;
            double fx;
            ax.locate(x, tx0, tx1, fx);
            const std::size_t idx = r * w + x;
            for (int c = 0; c < 3; ++c) {
                const int q = levels[idx][c];
                auto lut = [&](int ty, int tx) { return luts[(static_cast<std::size_t>(ty) * ax.tiles + tx) * 3 + c][q]; };
                const double top = (1.0 - fx) * lut(ty0, tx0) + fx * lut(ty0, tx1);
                const double bottom = (1.0 - fx) * lut(ty1, tx0) + fx * lut(ty1, tx1);
                out[idx][c] = clamp01(requantize((1.0 - fy) * top + fy * bottom));
            }
        }
    });
    return RgbImage(w, h, std::move(out));
}

void require_tile(const RgbImage& img, int tile) {
    if (tile < 2 || tile > std::min(img.width(), img.height()))
        throw InvalidArgument("tile size must be in [2, min(width, height)]");
}

}  // namespace

EnhancedImage hist_equalize(const RgbImage& img) {
    const double n = static_cast<double>(img.size());
    std::array<Lut, 3> maps{};
    for (int c = 0; c < 3; ++c) {
        std::array<double, kLevels> hist{};
        for (const Rgb& px : img.pixels()) hist[level_of(px[c])] += 1.0;
        maps[c] = cdf_lut(hist, n);
    }
    std::vector<Rgb> out(img.size());
    for (std::size_t i = 0; i < img.size(); ++i)
        for (int c = 0; c < 3; ++c) out[i][c] = clamp01(requantize(maps[c][level_of(img.pixels()[i][c])]));

    EnhancedImage e;
    e.image = RgbImage(img.width(), img.height(), std::move(out));
    e.method = Method::He;
    return e;
}

int default_tile(const RgbImage& img) {
    const int side = std::min(img.width(), img.height());
    return std::min(side, std::max(2, (side + 7) / 8));
}

EnhancedImage adaptive_hist_equalize(const RgbImage& img, int tile) {
    require_tile(img, tile);
    EnhancedImage e;
    e.image = tiled_equalize(img, tile, 1.0, false);
    e.method = Method::Ahe;
    e.tile = tile;
    return e;
}

EnhancedImage clahe(const RgbImage& img, int tile, double clip) {
    require_tile(img, tile);
    if (!(clip > 0.0 && clip <= 1.0)) throw InvalidArgument("clip limit must be in (0, 1]");
    EnhancedImage e;
    e.image = tiled_equalize(img, tile, clip, true);
    e.method = Method::Clahe;
    e.tile = tile;
    e.clip = clip;
    return e;
}

}  // namespace lumen
