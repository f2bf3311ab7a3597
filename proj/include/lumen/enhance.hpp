#pragma once

#include <array>
#include <string>

#include "lumen/image.hpp"
#include "lumen/params.hpp"

namespace lumen {

// One channel of the 2x2 neighbourhood anchored at (r, c), ordered
// (r,c), (r,c+1), (r+1,c), (r+1,c+1).
struct FourGroup {
    std::array<double, 4> p{};
};

// Conventional bilinear weights for fractional offsets (dr, dc).
struct CwbWeights {
    double dr = 0.5;
    double dc = 0.5;
    std::array<double, 4> w{0.25, 0.25, 0.25, 0.25};
};

// Throws InvalidArgument if either offset is outside [0, 1].
CwbWeights cwb_weights(double dr, double dc);

// Half-unit weighted bilinear: sum of the group divided by 2. Not clamped.
double hwb_value(const FourGroup& g);

// TWB weight for neighbour n (1..4) in brighter bin k (1..m):
// (CW_n + half_unit) / H_k.
double tw_weight(int n, int k, const CwbWeights& w, const EnhanceParams& params);

// Thresholded weighted bilinear: sum of p_n * tw_weight(n, k). Not clamped.
double twb_value(const FourGroup& g, int k, const CwbWeights& w, const EnhanceParams& params);

// Group of one channel at (row, col) with edge replication past the last
// row/column.
FourGroup four_group(const RgbImage& img, int row, int col, int channel);

enum class Method { Identity, Pm, HwbOnly, He, Ahe, Clahe };

std::string method_name(Method m);
Method parse_method(const std::string& id);

struct EnhancedImage {
    RgbImage image;
    Method method = Method::Identity;
    EnhanceParams params;   // meaningful for Pm / HwbOnly
    int tile = 0;           // meaningful for Ahe / Clahe
    double clip = 0.0;      // meaningful for Clahe
};

// Unclamped per-channel HWB/TWB plane before blending with the reference,
// stored row-major as (r, g, b) triples. With all_dark the TWB branch is
// never taken.
std::vector<Rgb> pm_intermediate(const RgbImage& img, const EnhanceParams& params, bool all_dark = false);

// HWB on the darker map, TWB on the brighter bins, intermediate clamped to
// [0,1] and averaged with the reference. Requires width, height >= 2.
EnhancedImage enhance_pm(const RgbImage& img, const EnhanceParams& params = {});

// Same pipeline with every pixel on the HWB branch.
EnhancedImage enhance_hwb_only(const RgbImage& img);

// Global per-channel histogram equalization on 256 levels.
EnhancedImage hist_equalize(const RgbImage& img);

// Tile side used when no tile is given: an 8x8 grid over the shorter side,
// never below 2.
int default_tile(const RgbImage& img);

// Per-tile equalization with bilinear interpolation of the tile mappings
// between tile centres. tile is the square tile side in pixels.
EnhancedImage adaptive_hist_equalize(const RgbImage& img, int tile);

// AHE with each tile histogram clipped at clip * tile_pixels (never below
// the uniform level tile_pixels / 256) and the excess spread uniformly.
EnhancedImage clahe(const RgbImage& img, int tile, double clip = 0.01);

// Separable Lanczos-3 resampling; output size round(dim * scale), samples
// clamped to [0,1].
RgbImage lanczos3_resize(const RgbImage& img, double scale);

// sinc(x) * sinc(x / 3) for |x| < 3, else 0.
double lanczos3_kernel(double x);

}  // namespace lumen
