#include "lumen/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <ostream>
#include <sstream>

#include "lumen/enhance.hpp"
#include "lumen/error.hpp"
#include "lumen/harness.hpp"
#include "lumen/image_io.hpp"
#include "lumen/metrics.hpp"

namespace lumen::cli {

namespace {

namespace fs = std::filesystem;

struct Config {
    std::string method = "pm";
    std::string input;
    std::string output;
    double delta = 0.4;
    double beta = 1.475;
    double omega = 0.025;
    int tile = 0;
    double clip = 0.01;
    double scale = 3.0;
    std::string methods;
    std::string metrics = "ssim,fsimc";
    std::string format;
    std::string dir;
    int synthetic = 0;
    int size = 180;
    std::uint64_t seed = 1;
    bool split = false;
    std::string reference, test;
};

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

std::string format4(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

MethodSpec method_spec(const std::string& id, const Config& cfg) {
    MethodSpec spec;
    spec.method = parse_method(id);
    spec.params = EnhanceParams::checked(cfg.delta, cfg.beta, cfg.omega);
    spec.tile = cfg.tile;
    spec.clip = cfg.clip;
    return spec;
}

// Rejects out-of-range overrides before any file is touched.
void validate_config(const Config& cfg) {
    validate(EnhanceParams{cfg.delta, cfg.beta, cfg.omega});
    if (cfg.tile != 0 && cfg.tile < 2) throw InvalidArgument("tile must be at least 2");
    if (!(cfg.clip > 0.0 && cfg.clip <= 1.0)) throw InvalidArgument("clip must be in (0, 1]");
}

int cmd_enhance(const Config& cfg, std::ostream&) {
    validate_config(cfg);
    const MethodSpec spec = method_spec(cfg.method, cfg);
    const RgbImage img = load_image(cfg.input);
    save_image(apply_method(spec, img).image, cfg.output);
    return kExitOk;
}

int cmd_resize(const Config& cfg, std::ostream&) {
    if (!(cfg.scale > 0.0)) throw InvalidArgument("scale must be positive");
    const RgbImage img = load_image(cfg.input);
    save_image(lanczos3_resize(img, cfg.scale), cfg.output);
    return kExitOk;
}

RgbImage hconcat(const std::vector<RgbImage>& panels) {
    const int h = panels.front().height();
    int w = 0;
    for (const auto& p : panels) w += p.width();
    std::vector<Rgb> px(static_cast<std::size_t>(w) * h);
    int x0 = 0;
    for (const auto& p : panels) {
        for (int y = 0; y < h; ++y)
            for (int x = 0; x < p.width(); ++x) px[static_cast<std::size_t>(y) * w + x0 + x] = p.at(y, x);
        x0 += p.width();
    }
    return RgbImage(w, h, std::move(px));
}

std::string suffixed(const std::string& path, const std::string& label) {
    const fs::path p(path);
    return (p.parent_path() / (p.stem().string() + "_" + label + p.extension().string())).string();
}

int cmd_compare(const Config& cfg, std::ostream& out) {
    validate_config(cfg);
    const auto ids = split_list(cfg.methods.empty() ? "pm" : cfg.methods);
    std::vector<MethodSpec> specs;
    for (const auto& id : ids) specs.push_back(method_spec(id, cfg));

    const RgbImage ref = load_image(cfg.input);
    std::vector<RgbImage> panels{ref};
    std::vector<std::string> labels{"reference"};
    for (const auto& spec : specs) {
        panels.push_back(apply_method(spec, ref).image);
        labels.push_back(spec.id());
    }
    save_image(hconcat(panels), cfg.output);
    if (cfg.split)
        for (std::size_t i = 0; i < panels.size(); ++i) save_image(panels[i], suffixed(cfg.output, labels[i]));

    out << "panels=";
    for (std::size_t i = 0; i < labels.size(); ++i) out << (i ? "," : "") << labels[i];
    out << '\n';
    return kExitOk;
}

int cmd_metrics(const Config& cfg, std::ostream& out) {
    std::vector<Metric> metrics;
    for (const auto& id : split_list(cfg.metrics)) metrics.push_back(parse_metric(id));
    if (metrics.empty()) throw InvalidArgument("no metrics requested");

    const RgbImage a = load_image(cfg.reference);
    const RgbImage b = load_image(cfg.test);
    if (a.width() != b.width() || a.height() != b.height())
        throw DimensionMismatch("images differ in size: " + std::to_string(a.width()) + "x" +
                                std::to_string(a.height()) + " vs " + std::to_string(b.width()) + "x" +
                                std::to_string(b.height()));
    for (const MetricScore& s : score_pair(a, b, metrics)) {
        out << s.name;
        if (s.channel != Channel::All) out << ':' << channel_name(s.channel);
        out << '=' << (s.ok() ? format4(s.value) : "ERR:" + s.error) << '\n';
    }
    return kExitOk;
}

bool has_image_extension(const fs::path& p) {
    std::string ext = p.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    return ext == ".png" || ext == ".ppm";
}

std::string timestamp() {
    std::time_t t;
    if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH"))
        t = static_cast<std::time_t>(std::strtoll(epoch, nullptr, 10));
    else
        t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

int cmd_bench(const Config& cfg, std::ostream& out) {
    validate_config(cfg);
    std::vector<Metric> metrics;
    for (const auto& id : split_list(cfg.metrics)) metrics.push_back(parse_metric(id));
    if (metrics.empty()) throw InvalidArgument("no metrics requested");
    std::vector<MethodSpec> methods;
    for (const auto& id : split_list(cfg.methods.empty() ? "pm,hwb,he,ahe,clahe" : cfg.methods))
        methods.push_back(method_spec(id, cfg));
    if (cfg.dir.empty() == (cfg.synthetic <= 0))
        throw InvalidArgument("bench needs exactly one of --dir or --synthetic N");
    if (cfg.synthetic > 0 && cfg.size < 2) throw InvalidArgument("--size must be at least 2");

    ReportFormat format = ReportFormat::Csv;
    if (!cfg.format.empty())
        format = parse_report_format(cfg.format);
    else if (fs::path(cfg.output).extension() == ".json")
        format = ReportFormat::Json;

    std::vector<BenchImage> images;
    if (cfg.synthetic > 0) {
        const int digits = static_cast<int>(std::to_string(cfg.synthetic).size());
        const auto specs = synthetic_suite(cfg.synthetic, cfg.size, cfg.seed);
        for (std::size_t i = 0; i < specs.size(); ++i) {
            std::string num = std::to_string(i + 1);
            num.insert(0, std::max(0, digits - static_cast<int>(num.size())), '0');
            images.push_back({"synth" + num, synth_vignette(specs[i]), {}});
        }
    } else {
        std::error_code ec;
        fs::directory_iterator it(cfg.dir, ec);
        if (ec) throw IoError("cannot read directory '" + cfg.dir + "'");
        for (const auto& entry : it) {
            if (!entry.is_regular_file() || !has_image_extension(entry.path())) continue;
            BenchImage b;
            b.id = entry.path().filename().string();
            try {
                b.image = load_image(entry.path().string());
            } catch (const IoError& e) {
                b.load_error = e.what();
            } catch (const InvalidArgument& e) {
                b.load_error = e.what();
            }
            images.push_back(std::move(b));
        }
        if (images.empty()) throw IoError("no .png or .ppm files in '" + cfg.dir + "'");
    }

    ReportTable table = run_benchmark(std::move(images), methods, metrics);
    table.metadata["timestamp"] = timestamp();
    if (cfg.synthetic > 0) {
        table.metadata["synthetic.count"] = std::to_string(cfg.synthetic);
        table.metadata["synthetic.size"] = std::to_string(cfg.size);
        table.metadata["synthetic.seed"] = std::to_string(cfg.seed);
    }

    if (cfg.output.empty() || cfg.output == "-")
        out << (format == ReportFormat::Csv ? emit_csv(table) : emit_json(table));
    else
        emit_report(table, format, cfg.output);
    return kExitOk;
}

void add_param_flags(CLI::App* sub, Config& cfg) {
    sub->add_option("--delta", cfg.delta, "V threshold between darker and brighter maps")->capture_default_str();
    sub->add_option("--beta", cfg.beta, "initial TWB denominator, [1.45, 1.50]")->capture_default_str();
    sub->add_option("--omega", cfg.omega, "TWB denominator step, [0, 0.025]")->capture_default_str();
    sub->add_option("--tile", cfg.tile, "AHE/CLAHE tile side in pixels (0 = 8x8 grid)")->capture_default_str();
    sub->add_option("--clip", cfg.clip, "CLAHE clip limit as a fraction of tile pixels")->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Config cfg;
    CLI::App app{"Capsule-endoscopy contrast enhancement and image quality tools", "lumen"};
    app.require_subcommand(1);

    auto* enhance = app.add_subcommand("enhance", "enhance one image");
    enhance->add_option("--method", cfg.method, "pm, hwb, he, ahe, clahe or identity")->capture_default_str();
    add_param_flags(enhance, cfg);
    enhance->add_option("input", cfg.input, "input PNG/PPM")->required();
    enhance->add_option("output", cfg.output, "output .png or .ppm")->required();

    auto* resize = app.add_subcommand("resize", "Lanczos-3 resampling");
    resize->add_option("--scale", cfg.scale, "scale factor")->capture_default_str();
    resize->add_option("input", cfg.input)->required();
    resize->add_option("output", cfg.output)->required();

    auto* compare = app.add_subcommand("compare", "reference and method outputs side by side");
    compare->add_option("--methods", cfg.methods, "comma-separated method ids (default pm)");
    compare->add_flag("--split", cfg.split, "also write each panel as <output>_<label>.<ext>");
    add_param_flags(compare, cfg);
    compare->add_option("input", cfg.input)->required();
    compare->add_option("output", cfg.output)->required();

    auto* metrics = app.add_subcommand("metrics", "full-reference metrics of test against reference");
    metrics->add_option("--metrics", cfg.metrics, "ssim, fsimc, contrast, intensity, hue")->capture_default_str();
    metrics->add_option("reference", cfg.reference)->required();
    metrics->add_option("test", cfg.test)->required();

    auto* bench = app.add_subcommand("bench", "methods x images x metrics report");
    bench->add_option("--dir", cfg.dir, "directory of PNG/PPM frames");
    bench->add_option("--synthetic", cfg.synthetic, "number of synthetic vignettes");
    bench->add_option("--size", cfg.size, "synthetic frame side")->capture_default_str();
    bench->add_option("--seed", cfg.seed, "synthetic suite seed")->capture_default_str();
    bench->add_option("--methods", cfg.methods, "comma-separated method ids (default pm,hwb,he,ahe,clahe)");
    bench->add_option("--metrics", cfg.metrics, "comma-separated metric ids")->capture_default_str();
    bench->add_option("--format", cfg.format, "csv or json (default from --out extension)");
    bench->add_option("--out", cfg.output, "report path, '-' for stdout");
    add_param_flags(bench, cfg);

    std::vector<std::string> argv_store{"lumen"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& a : argv_store) argv.push_back(a.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "lumen: " << e.what() << '\n';
        return kExitParams;
    }

    try {
        if (*enhance) return cmd_enhance(cfg, out);
        if (*resize) return cmd_resize(cfg, out);
        if (*compare) return cmd_compare(cfg, out);
        if (*metrics) return cmd_metrics(cfg, out);
        if (*bench) return cmd_bench(cfg, out);
    } catch (const IoError& e) {
        err << "lumen: " << e.what() << '\n';
        return kExitIo;
    } catch (const DimensionMismatch& e) {
        err << "lumen: " << e.what() << '\n';
        return kExitMismatch;
    } catch (const InvalidArgument& e) {
        err << "lumen: " << e.what() << '\n';
        return kExitParams;
    } catch (const Error& e) {
        err << "lumen: " << e.what() << '\n';
        return kExitParams;
    }
    return kExitParams;
}

}  // namespace lumen::cli
