#include "xxz/cli.hpp"

#include "xxz/emit.hpp"
#include "xxz/error.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

namespace xxz {

namespace {

using nlohmann::json;

double parse_real(std::string_view s) {
    const std::string str(s);
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(str, &used);
    } catch (const std::exception&) {
        throw InvalidInput("'" + str + "' is not a number");
    }
    if (used != str.size()) throw InvalidInput("'" + str + "' is not a number");
    return v;
}

InitialCase parse_case(int c) {
    if (c == 1) return InitialCase::Case1;
    if (c == 2) return InitialCase::Case2;
    throw InvalidInput("case must be 1 or 2, got " + std::to_string(c));
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidInput("cannot read config file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

ParameterSweep parse_sweep_spec(std::string_view spec) {
    const auto eq = spec.find('=');
    if (eq == std::string_view::npos) throw InvalidInput("sweep must look like NAME=v1,v2,...");
    ParameterSweep sweep;
    sweep.param = parse_sweep_param(spec.substr(0, eq));
    std::string_view rest = spec.substr(eq + 1);
    while (!rest.empty()) {
        const auto comma = rest.find(',');
        sweep.values.push_back(parse_real(rest.substr(0, comma)));
        if (comma == std::string_view::npos) break;
        rest = rest.substr(comma + 1);
    }
    if (sweep.values.empty()) throw InvalidInput("sweep over " + std::string(to_string(sweep.param)) + " has no values");
    return sweep;
}

SweepConfig parse_config_json(std::string_view text, SweepConfig cfg) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw InvalidInput(std::string("malformed config JSON: ") + e.what());
    }
    if (!doc.is_object()) throw InvalidInput("config must be a JSON object");

    try {
        for (const auto& [key, value] : doc.items()) {
            if (key == "case") cfg.base.state.which = parse_case(value.get<int>());
            else if (key == "p") cfg.base.state.p = value.get<double>();
            else if (key == "theta") cfg.base.state.theta = value.get<double>();
            else if (key == "J") cfg.base.params.J = value.get<double>();
            else if (key == "Jz") cfg.base.params.Jz = value.get<double>();
            else if (key == "B") cfg.base.params.B = value.get<double>();
            else if (key == "Dz") cfg.base.params.Dz = value.get<double>();
            else if (key == "Gz") cfg.base.params.Gamma_z = value.get<double>();
            else if (key == "gamma") cfg.base.gamma = value.get<double>();
            else if (key == "t_max") cfg.time_axis.t_max = value.get<double>();
            else if (key == "t_points") cfg.time_axis.n_points = value.get<std::size_t>();
            else if (key == "engine") cfg.engine = parse_engine(value.get<std::string>());
            else if (key == "format") cfg.format = parse_format(value.get<std::string>());
            else if (key == "outputs") {
                cfg.outputs.clear();
                for (const auto& m : value) cfg.outputs.push_back(parse_measure(m.get<std::string>()));
            } else if (key == "sweep") {
                if (value.is_null()) {
                    cfg.sweep.reset();
                } else if (value.is_string()) {
                    cfg.sweep = parse_sweep_spec(value.get<std::string>());
                } else {
                    ParameterSweep s;
                    s.param = parse_sweep_param(value.at("param").get<std::string>());
                    s.values = value.at("values").get<std::vector<double>>();
                    cfg.sweep = std::move(s);
                }
            } else {
                throw InvalidInput("unknown config key '" + key + "'");
            }
        }
    } catch (const json::exception& e) {
        throw InvalidInput(std::string("config field has the wrong type: ") + e.what());
    }
    return cfg;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Intrinsic-decoherence dynamics of the two-qubit XXZ model with DM and KSEA couplings", "simulate"};

    std::optional<int> case_id;
    std::optional<double> p, theta, J, Jz, B, Dz, Gz, gamma, t_max;
    std::optional<std::size_t> t_points;
    std::optional<std::string> sweep, engine, format, out_path, figure, config_path;
    bool steady = false;

    app.add_option("--config", config_path, "Flat JSON config; flags override its values");
    app.add_option("--case", case_id, "Initial EWL state: 1 (|dd>,|uu>) or 2 (|du>,|ud>)");
    app.add_option("--p", p, "Purity of the initial state");
    app.add_option("--theta", theta, "Bloch angle in [0, pi)");
    app.add_option("--J", J, "XX+YY exchange");
    app.add_option("--Jz", Jz, "ZZ anisotropy");
    app.add_option("--B", B, "Magnetic field (>= 0)");
    app.add_option("--Dz", Dz, "DM interaction");
    app.add_option("--Gz", Gz, "KSEA interaction");
    app.add_option("--gamma", gamma, "Intrinsic decoherence rate");
    app.add_option("--t-max", t_max, "End of the time grid");
    app.add_option("--t-points", t_points, "Number of time points (>= 2)");
    app.add_option("--sweep", sweep, "NAME=v1,v2,... with NAME in J|Jz|B|Dz|Gz|gamma|p|theta");
    app.add_option("--engine", engine, "closed|spectral");
    app.add_option("--out", out_path, "Output file (default stdout)");
    app.add_option("--format", format, "csv|json");
    app.add_option("--figure", figure, "Figure preset fig1a..fig5b");
    app.add_flag("--steady", steady, "Report the t -> infinity steady state");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "simulate: " << e.what() << '\n';
        return kExitInvalidConfig;
    }

    try {
        SweepConfig cfg;
        if (config_path) cfg = parse_config_json(read_file(*config_path));

        if (case_id) cfg.base.state.which = parse_case(*case_id);
        if (p) cfg.base.state.p = *p;
        if (theta) cfg.base.state.theta = *theta;
        if (J) cfg.base.params.J = *J;
        if (Jz) cfg.base.params.Jz = *Jz;
        if (B) cfg.base.params.B = *B;
        if (Dz) cfg.base.params.Dz = *Dz;
        if (Gz) cfg.base.params.Gamma_z = *Gz;
        if (gamma) cfg.base.gamma = *gamma;
        if (t_max) cfg.time_axis.t_max = *t_max;
        if (t_points) cfg.time_axis.n_points = *t_points;
        if (sweep) cfg.sweep = parse_sweep_spec(*sweep);
        if (engine) cfg.engine = parse_engine(*engine);
        if (format) cfg.format = parse_format(*format);

        std::vector<MeasureRecord> records;
        if (figure) {
            FigurePreset preset = figure_preset(*figure);
            for (SweepConfig& panel : preset.panels) {
                panel.engine = cfg.engine;
                if (steady) {
                    auto recs = steady_state_sweep(panel);
                    records.insert(records.end(), recs.begin(), recs.end());
                }
            }
            if (!steady) records = run_figure(preset);
        } else if (steady) {
            records = steady_state_sweep(cfg);
        } else {
            records = run_sweep(cfg);
        }

        if (out_path) {
            emit_to_file(records, cfg.format, *out_path);
        } else {
            emit(records, cfg.format, out);
        }
    } catch (const DegenerateLimit& e) {
        err << "simulate: degenerate limit: " << e.what() << '\n';
        return kExitDegenerate;
    } catch (const IoError& e) {
        err << "simulate: I/O error: " << e.what() << '\n';
        return kExitIo;
    } catch (const Error& e) {
        err << "simulate: invalid configuration: " << e.what() << '\n';
        return kExitInvalidConfig;
    }
    return kExitOk;
}

} // namespace xxz
