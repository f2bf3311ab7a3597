#include <cmath>
#include <vector>

#include "lumen/error.hpp"
#include "lumen/metrics.hpp"

namespace lumen {

namespace {

constexpr int kWindow = 11;
constexpr double kSigma = 1.5;
constexpr double kC1 = 0.01 * 0.01;
constexpr double kC2 = 0.03 * 0.03;

std::vector<double> gaussian_taps() {
    std::vector<double> g(kWindow);
    double sum = 0.0;
    for (int i = 0; i < kWindow; ++i) {
        const double x = i - kWindow / 2;
        g[i] = std::exp(-(x * x) / (2.0 * kSigma * kSigma));
        sum += g[i];
    }
    for (double& v : g) v /= sum;
    return g;
}

// Separable Gaussian filter over the valid region: output is
// (width - 10) x (height - 10).
std::vector<double> filter_valid(const std::vector<double>& src, int width, int height,
                                 const std::vector<double>& g) {
    const int ow = width - kWindow + 1;
    const int oh = height - kWindow + 1;
    std::vector<double> tmp(static_cast<std::size_t>(height) * ow);
    for (int y = 0; y < height; ++y)
        for (int x = 0; x < ow; ++x) {
            double acc = 0.0;
            for (int k = 0; k < kWindow; ++k) acc += g[k] * src[static_cast<std::size_t>(y) * width + x + k];
            tmp[static_cast<std::size_t>(y) * ow + x] = acc;
        }
    std::vector<double> out(static_cast<std::size_t>(oh) * ow);
    for (int y = 0; y < oh; ++y)
        for (int x = 0; x < ow; ++x) {
            double acc = 0.0;
            for (int k = 0; k < kWindow; ++k) acc += g[k] * tmp[static_cast<std::size_t>(y + k) * ow + x];
            out[static_cast<std::size_t>(y) * ow + x] = acc;
        }
    return out;
}

}  // namespace

double ssim_plane(std::span<const double> a, std::span<const double> b, int width, int height) {
    if (a.size() != b.size() || a.size() != static_cast<std::size_t>(width) * height)
        throw DimensionMismatch("ssim: plane sizes differ");
    if (width < kWindow || height < kWindow) throw DimensionMismatch("ssim: image smaller than the 11x11 window");

    const auto g = gaussian_taps();
    const std::size_t n = a.size();
    std::vector<double> x(a.begin(), a.end()), y(b.begin(), b.end());
    std::vector<double> xx(n), yy(n), xy(n);
    for (std::size_t i = 0; i < n; ++i) {
        xx[i] = x[i] * x[i];
        yy[i] = y[i] * y[i];
        xy[i] = x[i] * y[i];
    }
    const auto mx = filter_valid(x, width, height, g);
    const auto my = filter_valid(y, width, height, g);
    const auto sxx = filter_valid(xx, width, height, g);
    const auto syy = filter_valid(yy, width, height, g);
    const auto sxy = filter_valid(xy, width, height, g);

    double total = 0.0;
    for (std::size_t i = 0; i < mx.size(); ++i) {
        const double mu_x = mx[i], mu_y = my[i];
        const double var_x = sxx[i] - mu_x * mu_x;
        const double var_y = syy[i] - mu_y * mu_y;
        const double cov = sxy[i] - mu_x * mu_y;
        total += ((2.0 * mu_x * mu_y + kC1) * (2.0 * cov + kC2)) /
                 ((mu_x * mu_x + mu_y * mu_y + kC1) * (var_x + var_y + kC2));
    }
    return total / mx.size();
}

MetricScore ssim(const RgbImage& ref, const RgbImage& test) {
    if (ref.width() != test.width() || ref.height() != test.height())
        throw DimensionMismatch("ssim: image dimensions differ");
    std::vector<double> a(ref.size()), b(test.size());
    for (std::size_t i = 0; i < ref.size(); ++i) {
        a[i] = luma(ref.pixels()[i]);
        b[i] = luma(test.pixels()[i]);
    }
    return MetricScore::success("ssim", ssim_plane(a, b, ref.width(), ref.height()));
}

}  // namespace lumen
