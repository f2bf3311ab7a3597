#include <algorithm>
#include <set>

#include "lumen/error.hpp"
#include "lumen/harness.hpp"
#include "lumen/parallel.hpp"

namespace lumen {

std::string metric_name(Metric m) {
    switch (m) {
        case Metric::Ssim: return "ssim";
        case Metric::Fsimc: return "fsimc";
        case Metric::Contrast: return "contrast";
        case Metric::Intensity: return "intensity";
        case Metric::Hue: return "hue";
    }
    return "unknown";
}

Metric parse_metric(const std::string& id) {
    for (Metric m : {Metric::Ssim, Metric::Fsimc, Metric::Contrast, Metric::Intensity, Metric::Hue})
        if (metric_name(m) == id) return m;
    throw InvalidArgument("unknown metric '" + id + "'");
}

std::vector<Channel> metric_channels(Metric m) {
    if (m == Metric::Contrast || m == Metric::Intensity) return {Channel::R, Channel::G, Channel::B};
    return {Channel::All};
}

EnhancedImage apply_method(const MethodSpec& spec, const RgbImage& img) {
    switch (spec.method) {
        case Method::Identity: {
            EnhancedImage e;
            e.image = img;
            return e;
        }
        case Method::Pm: return enhance_pm(img, spec.params);
        case Method::HwbOnly: return enhance_hwb_only(img);
        case Method::He: return hist_equalize(img);
        case Method::Ahe: return adaptive_hist_equalize(img, spec.tile > 0 ? spec.tile : default_tile(img));
        case Method::Clahe: return clahe(img, spec.tile > 0 ? spec.tile : default_tile(img), spec.clip);
    }
    throw InvalidArgument("unknown method");
}

namespace {

std::vector<MetricScore> error_cells(const std::vector<Metric>& metrics, const std::string& code) {
    std::vector<MetricScore> out;
    for (Metric m : metrics)
        for (Channel c : metric_channels(m)) out.push_back(MetricScore::failure(metric_name(m), code, c));
    return out;
}

}  // namespace

std::vector<MetricScore> score_pair(const RgbImage& ref, const RgbImage& enhanced, const std::vector<Metric>& metrics) {
    std::vector<MetricScore> out;
    for (Metric m : metrics) {
        const std::string name = metric_name(m);
        const auto channels = metric_channels(m);
        try {
            switch (m) {
                case Metric::Ssim: out.push_back(ssim(ref, enhanced)); break;
                case Metric::Fsimc: out.push_back(fsimc(ref, enhanced)); break;
                case Metric::Hue: out.push_back(hue_deviation(ref, enhanced)); break;
                case Metric::Contrast:
                case Metric::Intensity:
                    for (Channel c : channels) {
                        const int idx = static_cast<int>(c);
                        const auto a = ref.plane(idx);
                        const auto b = enhanced.plane(idx);
                        out.push_back(m == Metric::Contrast ? contrast_enhancement(a, b, c)
                                                            : intensity_enhancement(a, b, c));
                    }
                    break;
            }
        } catch (const DimensionMismatch&) {
            const bool same = ref.width() == enhanced.width() && ref.height() == enhanced.height();
            // Drop any partial channel results before filling the slots.
            while (!out.empty() && out.back().name == name) out.pop_back();
            for (Channel c : channels)
                out.push_back(MetricScore::failure(name, same ? "too_small" : "dimension_mismatch", c));
        }
    }
    return out;
}

ReportTable run_benchmark(std::vector<BenchImage> images, const std::vector<MethodSpec>& methods,
                          const std::vector<Metric>& metrics) {
    if (images.empty()) throw InvalidArgument("benchmark needs at least one image");
    if (methods.empty()) throw InvalidArgument("benchmark needs at least one method");
    if (metrics.empty()) throw InvalidArgument("benchmark needs at least one metric");

    std::set<std::string> seen;
    for (const auto& m : methods)
        if (!seen.insert(m.id()).second) throw InvalidArgument("duplicate method '" + m.id() + "'");
    seen.clear();
    for (const auto& img : images)
        if (!seen.insert(img.id).second) throw InvalidArgument("duplicate image id '" + img.id + "'");
    std::set<Metric> seen_metric;
    for (Metric m : metrics)
        if (!seen_metric.insert(m).second) throw InvalidArgument("duplicate metric '" + metric_name(m) + "'");

    std::sort(images.begin(), images.end(), [](const BenchImage& a, const BenchImage& b) { return a.id < b.id; });

    ReportTable table;
    table.metrics = metrics;
    for (const auto& m : methods) table.methods.push_back(m.id());
    for (const auto& img : images) table.images.push_back(img.id);
    table.cells.assign(images.size(), std::vector<std::vector<MetricScore>>(methods.size()));

    parallel_for(images.size(), [&](std::size_t i) {
        const BenchImage& entry = images[i];
        for (std::size_t j = 0; j < methods.size(); ++j) {
            auto& cell = table.cells[i][j];
            if (!entry.image) {
                cell = error_cells(metrics, "io");
                continue;
            }
            try {
                const EnhancedImage enhanced = apply_method(methods[j], *entry.image);
                cell = score_pair(*entry.image, enhanced.image, metrics);
            } catch (const Error&) {
                cell = error_cells(metrics, "enhance_failed");
            }
        }
    });

    for (const auto& m : methods) {
        if (m.method == Method::Pm) {
            table.metadata["pm.delta"] = std::to_string(m.params.delta);
            table.metadata["pm.beta"] = std::to_string(m.params.beta);
            table.metadata["pm.omega"] = std::to_string(m.params.omega);
        }
        if (m.method == Method::Ahe || m.method == Method::Clahe)
            table.metadata[m.id() + ".tile"] = m.tile > 0 ? std::to_string(m.tile) : "auto";
        if (m.method == Method::Clahe) table.metadata["clahe.clip"] = std::to_string(m.clip);
    }
    return table;
}

}  // namespace lumen
