// harness.cpp — Sweep execution, config ingestion, CSV and PGM emission.

#include "qrabi/harness.hpp"

#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "qrabi/linalg.hpp"

namespace qrabi::sweep {

namespace {

using nlohmann::json;

const std::set<std::string>& axis_names() {
    static const std::set<std::string> names = {"g",      "g1",     "g2", "delta",
                                                "delta1", "delta2", "omega", "T"};
    return names;
}

void apply_axis(model::ModelParams& p, double& temperature, const std::string& name,
                double value) {
    if (name == "g") p.g1 = p.g2 = value;
    else if (name == "g1") p.g1 = value;
    else if (name == "g2") p.g2 = value;
    else if (name == "delta") p.delta1 = p.delta2 = value;
    else if (name == "delta1") p.delta1 = value;
    else if (name == "delta2") p.delta2 = value;
    else if (name == "omega") p.omega = value;
    else if (name == "T") temperature = value;
    else throw std::invalid_argument("unknown axis name: " + name);
}

std::string fmt(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc()) throw std::runtime_error("number formatting failed");
    return std::string(buf, ptr);
}

} // namespace

std::vector<double> AxisSpec::values() const {
    validate();
    std::vector<double> out(points);
    if (scale == AxisScale::Linear) {
        for (int i = 0; i < points; ++i)
            out[i] = min + (max - min) * double(i) / double(points - 1);
    } else {
        const double lo = std::log(min), hi = std::log(max);
        for (int i = 0; i < points; ++i)
            out[i] = std::exp(lo + (hi - lo) * double(i) / double(points - 1));
    }
    return out;
}

void AxisSpec::validate() const {
    if (!axis_names().count(name)) throw std::invalid_argument("axis: unknown name '" + name + "'");
    if (points < 2) throw std::invalid_argument("axis '" + name + "': points must be >= 2");
    if (!(min < max)) throw std::invalid_argument("axis '" + name + "': min must be < max");
    if (scale == AxisScale::Log && !(min > 0))
        throw std::invalid_argument("axis '" + name + "': log scale requires min > 0");
}

void SweepConfig::validate() const {
    base.validate();
    if (temperature < 0) throw std::invalid_argument("config: negative temperature");
    if (axes.empty() || axes.size() > 2)
        throw std::invalid_argument("config: one or two sweep axes required");
    std::set<std::string> seen;
    for (const AxisSpec& a : axes) {
        a.validate();
        if (!seen.insert(a.name).second)
            throw std::invalid_argument("config: duplicate axis '" + a.name + "'");
    }
    if (channels.empty()) throw std::invalid_argument("config: no bath channels");
    if (max_fock < 16) throw std::invalid_argument("config: max_fock too small");
    if (!(prune_tol > 0) || prune_tol > 1e-6)
        throw std::invalid_argument("config: prune_tol must lie in (0, 1e-6]");
    if (workers < 0) throw std::invalid_argument("config: negative worker count");
    if (reference_unit != "omega" && reference_unit != "delta")
        throw std::invalid_argument("config: reference_unit must be 'omega' or 'delta'");
}

SweepResult run_sweep(const SweepConfig& config) {
    config.validate();
    // Per-point results must not depend on BLAS-internal parallelism.
    linalg::ensure_single_threaded_blas();

    std::vector<std::vector<double>> axis_values;
    for (const AxisSpec& a : config.axes) axis_values.push_back(a.values());

    const int n0 = static_cast<int>(axis_values[0].size());
    const int n1 = axis_values.size() > 1 ? static_cast<int>(axis_values[1].size()) : 1;
    const long total = static_cast<long>(n0) * n1;

    quant::EvalOptions opt;
    opt.quantifiers = config.quantifiers;
    opt.include_gap = config.include_gap;
    opt.prune_tol = config.prune_tol;
    opt.cutoff.max_fock = config.max_fock;

    struct Slot {
        std::optional<SweepRow> row;
        std::optional<SweepFailure> failure;
    };
    std::vector<Slot> slots(total);

    auto evaluate_point = [&](long flat) {
        const int i0 = static_cast<int>(flat / n1);
        const int i1 = static_cast<int>(flat % n1);
        std::vector<int> index = {i0};
        std::vector<double> values = {axis_values[0][i0]};
        if (axis_values.size() > 1) {
            index.push_back(i1);
            values.push_back(axis_values[1][i1]);
        }

        model::ModelParams params = config.base;
        double temperature = config.temperature;
        for (size_t a = 0; a < config.axes.size(); ++a)
            apply_axis(params, temperature, config.axes[a].name, values[a]);

        bath::BathParams b;
        b.alpha = config.bath_alpha.value_or(1e-3 * params.omega);
        b.omega_c = config.bath_omega_c.value_or(10.0 * params.omega);
        b.T = temperature;
        b.channels = config.channels;

        const auto t0 = std::chrono::steady_clock::now();
        try {
            quant::QuantifierReport report = quant::evaluate_all(params, b, temperature, opt);
            const auto t1 = std::chrono::steady_clock::now();
            slots[flat].row = SweepRow{std::move(index), std::move(values), std::move(report),
                                       std::chrono::duration<double, std::milli>(t1 - t0).count()};
        } catch (const std::exception& e) {
            std::string where;
            for (size_t a = 0; a < config.axes.size(); ++a)
                where += config.axes[a].name + "=" + fmt(values[a]) + " ";
            slots[flat].failure = SweepFailure{std::move(index), std::move(values),
                                               where + "-> " + e.what()};
        }
    };

    int workers = config.workers > 0
                      ? config.workers
                      : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<int>(std::min<long>(workers, total));

    if (workers <= 1) {
        for (long i = 0; i < total; ++i) evaluate_point(i);
    } else {
        std::atomic<long> next{0};
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (long i = next.fetch_add(1); i < total; i = next.fetch_add(1))
                    evaluate_point(i);
            });
        for (auto& t : pool) t.join();
    }

    SweepResult result;
    result.config = config;
    for (Slot& s : slots) {
        if (s.row) result.rows.push_back(std::move(*s.row));
        else if (s.failure) result.failures.push_back(std::move(*s.failure));
    }
    return result;
}

namespace {

std::vector<quant::Field> ordered_fields(const SweepConfig& config) {
    std::set<quant::Field> requested(config.quantifiers.begin(), config.quantifiers.end());
    std::vector<quant::Field> out;
    for (quant::Field f : quant::all_fields())
        if (requested.count(f)) out.push_back(f);
    return out;
}

} // namespace

void emit_csv(const SweepResult& result, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("emit_csv: cannot open " + path.string());

    const std::vector<quant::Field> fields = ordered_fields(result.config);
    std::string header;
    for (const AxisSpec& a : result.config.axes) header += a.name + ",";
    for (quant::Field f : fields) header += quant::field_name(f) + ",";
    if (result.config.include_gap) header += "gap_ratio,";
    header += "n_fock_used,M_used";
    if (result.config.timing) header += ",wall_ms";
    out << header << "\n";

    for (const SweepRow& row : result.rows) {
        std::string line;
        for (double v : row.axis_values) line += fmt(v) + ",";
        for (quant::Field f : fields) {
            const auto& v = row.report.by_field(f);
            if (v) line += fmt(*v);
            line += ",";
        }
        if (result.config.include_gap) {
            if (row.report.gap_ratio) line += fmt(*row.report.gap_ratio);
            line += ",";
        }
        line += std::to_string(row.report.n_fock_used) + "," + std::to_string(row.report.m_used);
        if (result.config.timing) line += "," + fmt(row.wall_ms);
        out << line << "\n";
    }
    if (!out) throw std::runtime_error("emit_csv: write failed for " + path.string());
}

void emit_heatmap(const SweepResult& result, quant::Field field,
                  const std::filesystem::path& path) {
    if (result.config.axes.size() != 2)
        throw std::invalid_argument("emit_heatmap: requires a two-axis sweep");
    const int width = result.config.axes[0].points;
    const int height = result.config.axes[1].points;

    // Values addressed by (i0, i1); failures and undefined entries stay NaN.
    std::vector<double> grid(static_cast<size_t>(width) * height,
                             std::numeric_limits<double>::quiet_NaN());
    for (const SweepRow& row : result.rows) {
        const auto& v = row.report.by_field(field);
        if (v) grid[static_cast<size_t>(row.axis_index[0]) * height + row.axis_index[1]] = *v;
    }

    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (double v : grid)
        if (std::isfinite(v)) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    const bool any_finite = std::isfinite(lo);
    const bool degenerate = any_finite && !(hi > lo);

    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("emit_heatmap: cannot open " + path.string());
    out << "P5\n" << width << " " << height << "\n255\n";
    for (int r = 0; r < height; ++r) {
        const int i1 = height - 1 - r;  // second axis descends down the image
        for (int c = 0; c < width; ++c) {
            const double v = grid[static_cast<size_t>(c) * height + i1];
            unsigned char pixel = 0;
            if (std::isfinite(v))
                pixel = degenerate ? 255
                                   : static_cast<unsigned char>(
                                         std::lround(255.0 * (v - lo) / (hi - lo)));
            out.put(static_cast<char>(pixel));
        }
    }
    if (!out) throw std::runtime_error("emit_heatmap: write failed for " + path.string());

    std::filesystem::path sidecar = path;
    sidecar.replace_extension(".range.txt");
    std::ofstream side(sidecar, std::ios::binary);
    side << "min=" << (any_finite ? fmt(lo) : "nan") << "\n";
    side << "max=" << (any_finite ? fmt(hi) : "nan") << "\n";
    side << "normalization=linear min->0 max->255, undefined->0\n";
    if (degenerate) side << "degenerate_range=true\n";
}

namespace {

bath::Channel channel_from_name(const std::string& name) {
    if (name == "qubit1") return bath::Channel::Qubit1;
    if (name == "qubit2") return bath::Channel::Qubit2;
    if (name == "cavity") return bath::Channel::Cavity;
    throw std::invalid_argument("unknown bath channel: " + name);
}

std::string channel_name(bath::Channel c) {
    switch (c) {
        case bath::Channel::Qubit1: return "qubit1";
        case bath::Channel::Qubit2: return "qubit2";
        case bath::Channel::Cavity: return "cavity";
    }
    return "?";
}

} // namespace

SweepConfig parse_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("config: invalid JSON: ") + e.what());
    }

    SweepConfig c;
    if (j.contains("model")) {
        const json& m = j.at("model");
        if (m.contains("omega")) c.base.omega = m.at("omega").get<double>();
        if (m.contains("delta")) c.base.delta1 = c.base.delta2 = m.at("delta").get<double>();
        if (m.contains("delta1")) c.base.delta1 = m.at("delta1").get<double>();
        if (m.contains("delta2")) c.base.delta2 = m.at("delta2").get<double>();
        if (m.contains("g")) c.base.g1 = c.base.g2 = m.at("g").get<double>();
        if (m.contains("g1")) c.base.g1 = m.at("g1").get<double>();
        if (m.contains("g2")) c.base.g2 = m.at("g2").get<double>();
        if (m.contains("reference_unit")) c.reference_unit = m.at("reference_unit").get<std::string>();
    }
    if (j.contains("bath")) {
        const json& b = j.at("bath");
        if (b.contains("T")) c.temperature = b.at("T").get<double>();
        if (b.contains("alpha") && !b.at("alpha").is_null())
            c.bath_alpha = b.at("alpha").get<double>();
        if (b.contains("omega_c") && !b.at("omega_c").is_null())
            c.bath_omega_c = b.at("omega_c").get<double>();
        if (b.contains("channels")) {
            c.channels.clear();
            for (const auto& name : b.at("channels"))
                c.channels.push_back(channel_from_name(name.get<std::string>()));
        }
    }
    if (j.contains("sweep")) {
        const json& s = j.at("sweep");
        if (s.contains("axes")) {
            for (const json& a : s.at("axes")) {
                AxisSpec axis;
                axis.name = a.at("name").get<std::string>();
                axis.min = a.at("min").get<double>();
                axis.max = a.at("max").get<double>();
                axis.points = a.at("points").get<int>();
                if (a.contains("scale")) {
                    const std::string sc = a.at("scale").get<std::string>();
                    if (sc == "linear") axis.scale = AxisScale::Linear;
                    else if (sc == "log") axis.scale = AxisScale::Log;
                    else throw std::invalid_argument("config: axis scale must be linear or log");
                }
                c.axes.push_back(std::move(axis));
            }
        }
        if (s.contains("quantifiers"))
            for (const auto& q : s.at("quantifiers"))
                c.quantifiers.push_back(quant::field_from_name(q.get<std::string>()));
        if (s.contains("include_gap")) c.include_gap = s.at("include_gap").get<bool>();
        if (s.contains("workers")) c.workers = s.at("workers").get<int>();
        if (s.contains("max_fock")) c.max_fock = s.at("max_fock").get<int>();
        if (s.contains("prune_tol")) c.prune_tol = s.at("prune_tol").get<double>();
    }
    if (j.contains("output")) {
        const json& o = j.at("output");
        if (o.contains("dir")) c.output_dir = o.at("dir").get<std::string>();
        if (o.contains("heatmaps")) c.heatmaps = o.at("heatmaps").get<bool>();
        if (o.contains("timing")) c.timing = o.at("timing").get<bool>();
    }
    c.validate();
    return c;
}

SweepConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("config: cannot open " + path.string());
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_config(text);
}

std::string config_echo_json(const SweepConfig& c) {
    json j;
    j["model"] = {{"omega", c.base.omega}, {"delta1", c.base.delta1}, {"delta2", c.base.delta2},
                  {"g1", c.base.g1},       {"g2", c.base.g2},
                  {"reference_unit", c.reference_unit}};
    json bathj;
    bathj["T"] = c.temperature;
    if (c.bath_alpha) bathj["alpha"] = *c.bath_alpha;
    else { bathj["alpha"] = nullptr; bathj["alpha_rule"] = "0.001*omega"; }
    if (c.bath_omega_c) bathj["omega_c"] = *c.bath_omega_c;
    else { bathj["omega_c"] = nullptr; bathj["omega_c_rule"] = "10*omega"; }
    json chans = json::array();
    for (bath::Channel ch : c.channels) chans.push_back(channel_name(ch));
    bathj["channels"] = chans;
    j["bath"] = bathj;

    json axes = json::array();
    for (const AxisSpec& a : c.axes)
        axes.push_back({{"name", a.name},
                        {"min", a.min},
                        {"max", a.max},
                        {"points", a.points},
                        {"scale", a.scale == AxisScale::Linear ? "linear" : "log"}});
    json quants = json::array();
    for (quant::Field f : c.quantifiers) quants.push_back(quant::field_name(f));
    j["sweep"] = {{"axes", axes},         {"quantifiers", quants},
                  {"include_gap", c.include_gap}, {"workers", c.workers},
                  {"max_fock", c.max_fock},       {"prune_tol", c.prune_tol}};
    j["output"] = {{"dir", c.output_dir}, {"heatmaps", c.heatmaps}, {"timing", c.timing}};
    return j.dump(2);
}

} // namespace qrabi::sweep
