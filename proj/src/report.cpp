#include <cstdio>
#include <fstream>
#include <json.hpp>

#include "lumen/error.hpp"
#include "lumen/harness.hpp"

namespace lumen {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string fixed4(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    std::string s(buf);
    if (s == "-0.0000") s = "0.0000";
    return s;
}

struct Slot {
    Metric metric;
    Channel channel;
};

std::vector<Slot> slots_of(const std::vector<Metric>& metrics) {
    std::vector<Slot> out;
    for (Metric m : metrics)
        for (Channel c : metric_channels(m)) out.push_back({m, c});
    return out;
}

// Index of the first slot of metric k inside a cell.
std::size_t slot_offset(const std::vector<Metric>& metrics, std::size_t k) {
    std::size_t off = 0;
    for (std::size_t i = 0; i < k; ++i) off += metric_channels(metrics[i]).size();
    return off;
}

ordered_json score_json(const MetricScore& s) {
    if (!s.ok()) return ordered_json{{"error", s.error}};
    return s.value;
}

MetricScore score_from_json(const ordered_json& j, const std::string& name, Channel c) {
    if (j.is_object()) return MetricScore::failure(name, j.at("error").get<std::string>(), c);
    return MetricScore::success(name, j.get<double>(), c);
}

}  // namespace

ReportFormat parse_report_format(const std::string& id) {
    if (id == "csv") return ReportFormat::Csv;
    if (id == "json") return ReportFormat::Json;
    throw InvalidArgument("unknown report format '" + id + "'");
}

std::string emit_csv(const ReportTable& table) {
    const auto slots = slots_of(table.metrics);
    // Bare method names when the table is a single scalar metric, as in a
    // one-metric results table; qualified labels otherwise.
    const bool bare = slots.size() == 1;

    std::string out = "image";
    for (std::size_t k = 0; k < table.metrics.size(); ++k) {
        const Metric m = table.metrics[k];
        for (const auto& method : table.methods)
            for (Channel c : metric_channels(m)) {
                out += ',';
                if (bare) {
                    out += method;
                } else {
                    out += metric_name(m) + ":" + method;
                    if (c != Channel::All) out += ":" + channel_name(c);
                }
            }
    }
    out += '\n';
    if (slots.empty()) return out;

    for (std::size_t i = 0; i < table.images.size(); ++i) {
        out += table.images[i];
        for (std::size_t k = 0; k < table.metrics.size(); ++k) {
            const std::size_t off = slot_offset(table.metrics, k);
            const std::size_t width = metric_channels(table.metrics[k]).size();
            for (std::size_t j = 0; j < table.methods.size(); ++j)
                for (std::size_t c = 0; c < width; ++c) {
                    const MetricScore& s = table.cells[i][j][off + c];
                    out += ',';
                    out += s.ok() ? fixed4(s.value) : "ERR:" + s.error;
                }
        }
        out += '\n';
    }
    return out;
}

std::string emit_json(const ReportTable& table) {
    ordered_json root;
    ordered_json meta = ordered_json::object();
    for (const auto& [k, v] : table.metadata) meta[k] = v;
    root["metadata"] = meta;
    root["methods"] = table.methods;
    ordered_json metrics = ordered_json::array();
    for (Metric m : table.metrics) metrics.push_back(metric_name(m));
    root["metrics"] = metrics;

    ordered_json images = ordered_json::object();
    for (std::size_t i = 0; i < table.images.size(); ++i) {
        ordered_json per_method = ordered_json::object();
        for (std::size_t j = 0; j < table.methods.size(); ++j) {
            ordered_json per_metric = ordered_json::object();
            for (std::size_t k = 0; k < table.metrics.size(); ++k) {
                const Metric m = table.metrics[k];
                const auto channels = metric_channels(m);
                const std::size_t off = slot_offset(table.metrics, k);
                if (channels.size() == 1) {
                    per_metric[metric_name(m)] = score_json(table.cells[i][j][off]);
                } else {
                    ordered_json per_channel = ordered_json::object();
                    for (std::size_t c = 0; c < channels.size(); ++c)
                        per_channel[channel_name(channels[c])] = score_json(table.cells[i][j][off + c]);
                    per_metric[metric_name(m)] = per_channel;
                }
            }
            per_method[table.methods[j]] = per_metric;
        }
        images[table.images[i]] = per_method;
    }
    root["images"] = images;
    return root.dump(2) + "\n";
}

ReportTable parse_json_report(const std::string& text) {
    ReportTable table;
    try {
        const ordered_json root = ordered_json::parse(text);
        for (const auto& [k, v] : root.at("metadata").items()) table.metadata[k] = v.get<std::string>();
        table.methods = root.at("methods").get<std::vector<std::string>>();
        for (const auto& m : root.at("metrics")) table.metrics.push_back(parse_metric(m.get<std::string>()));

        for (const auto& [id, per_method] : root.at("images").items()) {
            table.images.push_back(id);
            std::vector<std::vector<MetricScore>> row;
            for (const auto& method : table.methods) {
                const auto& per_metric = per_method.at(method);
                std::vector<MetricScore> cell;
                for (Metric m : table.metrics) {
                    const std::string name = metric_name(m);
                    const auto channels = metric_channels(m);
                    const auto& node = per_metric.at(name);
                    if (channels.size() == 1) {
                        cell.push_back(score_from_json(node, name, Channel::All));
                    } else {
                        for (Channel c : channels) cell.push_back(score_from_json(node.at(channel_name(c)), name, c));
                    }
                }
                row.push_back(std::move(cell));
            }
            table.cells.push_back(std::move(row));
        }
    } catch (const nlohmann::json::exception& e) {
        throw InvalidArgument(std::string("malformed report: ") + e.what());
    }
    return table;
}

std::size_t emit_report(const ReportTable& table, ReportFormat format, const std::string& path) {
    const std::string body = format == ReportFormat::Csv ? emit_csv(table) : emit_json(table);
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw IoError("cannot open '" + path + "' for writing");
    os.write(body.data(), static_cast<std::streamsize>(body.size()));
    os.flush();
    if (!os) throw IoError("failed writing '" + path + "'");
    return body.size();
}

}  // namespace lumen
