#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace lumen {

struct Rgb {
    double r = 0.0;
    double g = 0.0;
    double b = 0.0;

    double operator[](int c) const { return c == 0 ? r : (c == 1 ? g : b); }
    double& operator[](int c) { return c == 0 ? r : (c == 1 ? g : b); }
    friend bool operator==(const Rgb&, const Rgb&) = default;
};

// Normalized three-channel raster, row-major. Every sample is in [0,1];
// construction rejects anything else (including NaN).
class RgbImage {
public:
    RgbImage() = default;
    RgbImage(int width, int height, std::vector<Rgb> pixels);

    static RgbImage filled(int width, int height, Rgb value);

    int width() const { return width_; }
    int height() const { return height_; }
    std::size_t size() const { return pixels_.size(); }
    bool empty() const { return pixels_.empty(); }

    const Rgb& at(int row, int col) const { return pixels_[index(row, col)]; }
    std::span<const Rgb> pixels() const { return pixels_; }
    std::span<const Rgb> row(int r) const {
        return std::span<const Rgb>(pixels_).subspan(static_cast<std::size_t>(r) * width_, width_);
    }

    // One channel (0 = R, 1 = G, 2 = B) as a dense row-major plane.
    std::vector<double> plane(int channel) const;

    friend bool operator==(const RgbImage&, const RgbImage&) = default;

private:
    std::size_t index(int row, int col) const {
        return static_cast<std::size_t>(row) * width_ + col;
    }

    int width_ = 0;
    int height_ = 0;
    std::vector<Rgb> pixels_;
};

// HSV value component V = max(R, G, B), per pixel.
class ValueMap {
public:
    ValueMap(int width, int height, std::vector<double> values);

    int width() const { return width_; }
    int height() const { return height_; }
    double at(int row, int col) const {
        return values_[static_cast<std::size_t>(row) * width_ + col];
    }
    std::span<const double> values() const { return values_; }

private:
    int width_;
    int height_;
    std::vector<double> values_;
};

// Pixel class: the darker map, or one of the m brighter bins (1-based).
// Ordered Darker < Bin(1) < ... < Bin(m).
class RegionLabel {
public:
    static constexpr RegionLabel darker() { return RegionLabel(0); }
    static constexpr RegionLabel brighter_bin(int k) { return RegionLabel(static_cast<std::uint16_t>(k)); }

    constexpr bool is_darker() const { return code_ == 0; }
    constexpr int bin() const { return code_; }

    friend constexpr auto operator<=>(RegionLabel, RegionLabel) = default;

private:
    constexpr explicit RegionLabel(std::uint16_t code) : code_(code) {}
    std::uint16_t code_ = 0;
};

class RegionMask {
public:
    RegionMask(int width, int height, std::vector<RegionLabel> labels);

    int width() const { return width_; }
    int height() const { return height_; }
    RegionLabel at(int row, int col) const {
        return labels_[static_cast<std::size_t>(row) * width_ + col];
    }
    std::span<const RegionLabel> labels() const { return labels_; }

    std::size_t count(RegionLabel label) const;

private:
    int width_;
    int height_;
    std::vector<RegionLabel> labels_;
};

struct EnhanceParams;

ValueMap to_value_map(const RgbImage& img);

RegionMask classify_regions(const ValueMap& vmap, const EnhanceParams& params);

// Hue in degrees, [0, 360). Empty when the pixel is achromatic (max == min).
std::optional<double> hue_of(const Rgb& px);

// Per-pixel hue map of an image; achromatic pixels are std::nullopt.
std::vector<std::optional<double>> hue_of(const RgbImage& img);

// Rec. 601 luma, used by SSIM and the brightening checks.
inline double luma(const Rgb& px) { return 0.299 * px.r + 0.587 * px.g + 0.114 * px.b; }

double clamp01(double v);

}  // namespace lumen
