#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lumen/enhance.hpp"
#include "lumen/image.hpp"
#include "lumen/metrics.hpp"
#include "lumen/params.hpp"

namespace lumen {

struct SpecularSpot {
    double center_x = 0.0;  // pixels
    double center_y = 0.0;
    double radius = 0.0;
    double level = 1.0;
};

// Radially darkening test frame: bright centre, dark periphery, optional
// saturated highlight disc, seeded uniform noise.
struct SyntheticSpec {
    int width = 180;
    int height = 180;
    double base_hue = 10.0;     // degrees
    double falloff = 1.0;       // exponent on (1 - normalized radius)
    double center_level = 0.9;  // HSV value at radius 0
    std::optional<SpecularSpot> specular;
    double noise_amp = 0.0;
    std::uint64_t seed = 0;
};

// Saturation of the synthetic colouring.
inline constexpr double kSyntheticSaturation = 0.5;

// Value V = center_level * (1 - r)^falloff where r is the distance to the
// image centre over the centre-to-corner distance, coloured at base_hue
// with saturation 0.5; then per-channel noise in [-noise_amp, noise_amp]
// (clamped) and the specular disc painted on top.
RgbImage synth_vignette(const SyntheticSpec& spec);

// Deterministic family of `count` vignettes of the given size; parameters
// vary with the index, every other frame carries a highlight spot.
std::vector<SyntheticSpec> synthetic_suite(int count, int size = 180, std::uint64_t seed = 1);

// HSV -> RGB for a single colour (h in degrees, s and v in [0,1]).
Rgb hsv_to_rgb(double h, double s, double v);

enum class Metric { Ssim, Fsimc, Contrast, Intensity, Hue };

std::string metric_name(Metric m);
Metric parse_metric(const std::string& id);

// Per-channel metrics occupy three report slots (R, G, B).
std::vector<Channel> metric_channels(Metric m);

struct MethodSpec {
    Method method = Method::Pm;
    EnhanceParams params;
    int tile = 0;  // 0 = default_tile(image)
    double clip = 0.01;

    std::string id() const { return method_name(method); }
};

EnhancedImage apply_method(const MethodSpec& spec, const RgbImage& img);

// A benchmark input. When image is empty, load_error carries the reason and
// the row is emitted as error cells.
struct BenchImage {
    std::string id;
    std::optional<RgbImage> image;
    std::string load_error;
};

struct ReportTable {
    std::vector<std::string> images;   // sorted lexicographically
    std::vector<std::string> methods;  // invocation order
    std::vector<Metric> metrics;       // invocation order
    // cells[image][method] holds one score per slot, metric-major then
    // channel (see metric_channels).
    std::vector<std::vector<std::vector<MetricScore>>> cells;
    std::map<std::string, std::string> metadata;

    const std::vector<MetricScore>& cell(std::size_t image, std::size_t method) const {
        return cells[image][method];
    }

    friend bool operator==(const ReportTable&, const ReportTable&) = default;
};

// Every image x method is enhanced and scored against the reference image.
// Metric failures become error cells; unknown ids and duplicate image or
// method ids throw InvalidArgument.
ReportTable run_benchmark(std::vector<BenchImage> images, const std::vector<MethodSpec>& methods,
                          const std::vector<Metric>& metrics);

// Scores one (reference, enhanced) pair in slot order.
std::vector<MetricScore> score_pair(const RgbImage& ref, const RgbImage& enhanced,
                                    const std::vector<Metric>& metrics);

enum class ReportFormat { Csv, Json };

ReportFormat parse_report_format(const std::string& id);

// CSV: "image" then one column per (metric, method, channel) slot, one row
// per image, values at 4 decimals, error cells as ERR:<code>, LF endings.
std::string emit_csv(const ReportTable& table);

// JSON: metadata, the method and metric orders, and an image -> method ->
// metric map at full precision; error cells are {"error": code}.
std::string emit_json(const ReportTable& table);

ReportTable parse_json_report(const std::string& text);

// Writes the rendering to path; returns bytes written. Throws IoError.
std::size_t emit_report(const ReportTable& table, ReportFormat format, const std::string& path);

}  // namespace lumen
