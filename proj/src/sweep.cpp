#include "xxz/sweep.hpp"

#include "xxz/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <numbers>
#include <thread>

namespace xxz {

namespace {

template <typename Enum, std::size_t N>
Enum parse_enum(std::string_view s, const std::array<Enum, N>& all, const char* what) {
    for (Enum e : all) {
        if (to_string(e) == s) return e;
    }
    throw InvalidInput(std::string("unknown ") + what + " '" + std::string(s) + "'");
}

constexpr std::array kAllParams{SweepParam::J,  SweepParam::Jz,    SweepParam::B, SweepParam::Dz,
                                SweepParam::Gz, SweepParam::gamma, SweepParam::p, SweepParam::theta};
constexpr std::array kAllMeasures{Measure::C_l1, Measure::C_cc, Measure::QD, Measure::populations};
constexpr std::array kAllFormats{OutputFormat::csv, OutputFormat::json};
constexpr std::array kAllEngines{Engine::closed_form, Engine::spectral};

MeasureRecord label(const BasePoint& point, const std::optional<ParameterSweep>& sweep, double value) {
    MeasureRecord r;
    r.case_id = point.state.which == InitialCase::Case1 ? 1 : 2;
    r.p = point.state.p;
    r.theta = point.state.theta;
    r.J = point.params.J;
    r.Jz = point.params.Jz;
    r.B = point.params.B;
    r.Dz = point.params.Dz;
    r.Gz = point.params.Gamma_z;
    r.gamma = point.gamma;
    if (sweep) {
        r.sweep_param = std::string(to_string(sweep->param));
        r.sweep_value = value;
    }
    return r;
}

void fill_measures(MeasureRecord& r, const DensityMatrix& rho) {
    r.C_l1 = l1_coherence(rho);
    r.C_cc = correlated_coherence(rho);
    const DiscordBreakdown d = xstate_discord(rho);
    r.QD = d.discord;
    r.qd1 = d.qd1;
    r.qd2 = d.qd2;
    r.lambda = d.lambda;
}

void check_closed_form_gap(const BasePoint& point) {
    if (point.state.which == InitialCase::Case1 && point.params.chi() < 1e-12) {
        throw DegenerateLimit("case 1 closed form is singular at chi = 0 (B = Gz = 0); use engine=spectral");
    }
    if (point.state.which == InitialCase::Case2 && point.params.omega() < 1e-12) {
        throw DegenerateLimit("case 2 closed form is singular at omega = 0 (J = Dz = 0); use engine=spectral");
    }
}

// Golden-section search for a maximum on [a, b].
double golden_max(const std::function<double(double)>& f, double a, double b) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    for (int it = 0; it < 200 && (b - a) > 1e-12 * (1.0 + std::abs(a)); ++it) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    return std::max({fc, fd, f(0.5 * (a + b))});
}

} // namespace

std::string_view to_string(SweepParam p) noexcept {
    switch (p) {
    case SweepParam::J: return "J";
    case SweepParam::Jz: return "Jz";
    case SweepParam::B: return "B";
    case SweepParam::Dz: return "Dz";
    case SweepParam::Gz: return "Gz";
    case SweepParam::gamma: return "gamma";
    case SweepParam::p: return "p";
    case SweepParam::theta: return "theta";
    }
    return "?";
}

std::string_view to_string(Measure m) noexcept {
    switch (m) {
    case Measure::C_l1: return "C_l1";
    case Measure::C_cc: return "C_cc";
    case Measure::QD: return "QD";
    case Measure::populations: return "populations";
    }
    return "?";
}

std::string_view to_string(OutputFormat f) noexcept { return f == OutputFormat::csv ? "csv" : "json"; }

std::string_view to_string(Engine e) noexcept { return e == Engine::closed_form ? "closed_form" : "spectral"; }

SweepParam parse_sweep_param(std::string_view s) { return parse_enum(s, kAllParams, "sweep parameter"); }
Measure parse_measure(std::string_view s) { return parse_enum(s, kAllMeasures, "measure"); }
OutputFormat parse_format(std::string_view s) { return parse_enum(s, kAllFormats, "output format"); }

Engine parse_engine(std::string_view s) {
    if (s == "closed") return Engine::closed_form;
    return parse_enum(s, kAllEngines, "engine");
}

void BasePoint::validate() const {
    params.validate();
    state.validate();
    if (!std::isfinite(gamma) || gamma < 0.0) {
        throw InvalidInput("gamma must be finite and >= 0, got " + std::to_string(gamma));
    }
}

BasePoint with_value(BasePoint base, SweepParam param, double value) {
    switch (param) {
    case SweepParam::J: base.params.J = value; break;
    case SweepParam::Jz: base.params.Jz = value; break;
    case SweepParam::B: base.params.B = value; break;
    case SweepParam::Dz: base.params.Dz = value; break;
    case SweepParam::Gz: base.params.Gamma_z = value; break;
    case SweepParam::gamma: base.gamma = value; break;
    case SweepParam::p: base.state.p = value; break;
    case SweepParam::theta: base.state.theta = value; break;
    }
    return base;
}

void TimeAxis::validate() const {
    if (!std::isfinite(t_max) || t_max <= 0.0) throw InvalidInput("t_max must be finite and > 0");
    if (n_points < 2) throw InvalidInput("time axis needs at least 2 points");
}

std::vector<double> TimeAxis::grid() const {
    std::vector<double> ts(n_points);
    const double denom = static_cast<double>(n_points - 1);
    for (std::size_t i = 0; i < n_points; ++i) ts[i] = t_max * static_cast<double>(i) / denom;
    ts.back() = t_max;
    return ts;
}

void SweepConfig::validate() const {
    time_axis.validate();
    base.validate();
    if (sweep) {
        if (sweep->values.empty()) throw InvalidInput("sweep over " + std::string(to_string(sweep->param)) + " has no values");
        for (const BasePoint& pt : points()) pt.validate();
    }
}

std::vector<BasePoint> SweepConfig::points() const {
    if (!sweep) return {base};
    std::vector<BasePoint> pts;
    pts.reserve(sweep->values.size());
    for (double v : sweep->values) pts.push_back(with_value(base, sweep->param, v));
    return pts;
}

MeasureRecord measure_state(const BasePoint& point, const DensityMatrix& rho, double t) {
    MeasureRecord r = label(point, std::nullopt, 0.0);
    r.t = t;
    fill_measures(r, rho);
    return r;
}

DensityMatrix evolve_point(const BasePoint& point, double t, Engine engine) {
    if (engine == Engine::closed_form) {
        check_closed_form_gap(point);
        return evolve_closed_form(point.state, point.params, point.gamma, t);
    }
    return evolve_spectral(ewl_initial_state(point.state), spectral_decomposition(point.params), point.gamma, t);
}

unsigned sweep_threads() {
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("SIM_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return std::min<unsigned>(hw, static_cast<unsigned>(v));
    }
    return hw;
}

std::vector<MeasureRecord> run_sweep(const SweepConfig& config, unsigned threads) {
    config.validate();
    const std::vector<BasePoint> pts = config.points();
    if (config.engine == Engine::closed_form) {
        for (const BasePoint& pt : pts) check_closed_form_gap(pt);
    }
    const std::vector<double> ts = config.time_axis.grid();

    struct Prepared {
        DensityMatrix rho0;
        Spectrum spectrum;
    };
    std::vector<Prepared> prepared;
    prepared.reserve(pts.size());
    for (const BasePoint& pt : pts) prepared.push_back({ewl_initial_state(pt.state), spectral_decomposition(pt.params)});

    const std::size_t total = pts.size() * ts.size();
    std::vector<MeasureRecord> out(total);
    std::vector<std::exception_ptr> errors(total);

    const auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t job = begin; job < end; ++job) {
            const std::size_t i = job / ts.size();
            const double t = ts[job % ts.size()];
            try {
                const DensityMatrix rho =
                    config.engine == Engine::closed_form
                        ? evolve_closed_form(pts[i].state, pts[i].params, pts[i].gamma, t)
                        : evolve_spectral(prepared[i].rho0, prepared[i].spectrum, pts[i].gamma, t);
                MeasureRecord r = label(pts[i], config.sweep, config.sweep ? config.sweep->values[i] : 0.0);
                r.t = t;
                fill_measures(r, rho);
                out[job] = std::move(r);
            } catch (...) {
                errors[job] = std::current_exception();
            }
        }
    };

    const std::size_t n_threads = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(1, total / 64));
    if (n_threads == 1) {
        work(0, total);
    } else {
        std::vector<std::jthread> pool;
        const std::size_t chunk = (total + n_threads - 1) / n_threads;
        for (std::size_t w = 0; w < n_threads; ++w) {
            const std::size_t b = std::min(total, w * chunk);
            const std::size_t e = std::min(total, b + chunk);
            pool.emplace_back(work, b, e);
        }
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return out;
}

MeasureRecord steady_state_report(const SweepConfig& config) {
    config.base.validate();
    if (config.base.gamma == 0.0) {
        throw NoSteadyState("steady state requires gamma > 0; with gamma = 0 the evolution is unitary");
    }
    const BasePoint& pt = config.base;
    const DensityMatrix rho = steady_state(ewl_initial_state(pt.state), spectral_decomposition(pt.params));
    return measure_state(pt, rho, std::numeric_limits<double>::infinity());
}

std::vector<MeasureRecord> steady_state_sweep(const SweepConfig& config) {
    config.validate();
    if (!config.sweep) return {steady_state_report(config)};
    std::vector<MeasureRecord> out;
    for (double v : config.sweep->values) {
        SweepConfig single = config;
        single.sweep.reset();
        single.base = with_value(config.base, config.sweep->param, v);
        MeasureRecord r = steady_state_report(single);
        r.sweep_param = std::string(to_string(config.sweep->param));
        r.sweep_value = v;
        out.push_back(std::move(r));
    }
    return out;
}

const std::vector<std::string>& figure_names() {
    static const std::vector<std::string> names{"fig1a", "fig1b", "fig2a", "fig2b", "fig3a",
                                                "fig3b", "fig4a", "fig4b", "fig5a", "fig5b"};
    return names;
}

FigurePreset figure_preset(std::string_view name) {
    const auto& names = figure_names();
    if (std::find(names.begin(), names.end(), name) == names.end()) {
        throw InvalidInput("unknown figure preset '" + std::string(name) + "'");
    }
    const int figure = name[3] - '0';
    const Measure measure = name[4] == 'a' ? Measure::C_cc : Measure::QD;
    const double pi = std::numbers::pi;

    // Per case: swept parameter and values.
    std::array<ParameterSweep, 2> sweeps;
    switch (figure) {
    case 1: sweeps = {{{SweepParam::gamma, {0.0, 0.01, 0.05, 0.1}}, {SweepParam::gamma, {0.0, 0.01, 0.05, 0.1}}}}; break;
    case 2: sweeps = {{{SweepParam::B, {0.0, 0.1, 0.3, 0.5}}, {SweepParam::Dz, {0.0, 0.1, 0.3, 0.5}}}}; break;
    case 3: sweeps = {{{SweepParam::Gz, {0.0, 0.25, 0.5, 1.0}}, {SweepParam::J, {0.0, 0.25, 0.5, 1.0}}}}; break;
    case 4: {
        const std::vector<double> angles{pi / 8, pi / 4, 3 * pi / 8, pi / 2};
        sweeps = {{{SweepParam::theta, angles}, {SweepParam::theta, angles}}};
        break;
    }
    default: sweeps = {{{SweepParam::p, {0.0, 0.25, 0.5, 0.75, 1.0}}, {SweepParam::p, {0.0, 0.25, 0.5, 0.75, 1.0}}}}; break;
    }

    FigurePreset preset{std::string(name), {}};
    for (int c = 0; c < 2; ++c) {
        SweepConfig cfg;
        cfg.base.state.which = c == 0 ? InitialCase::Case1 : InitialCase::Case2;
        cfg.time_axis = {30.0, 600};
        cfg.sweep = sweeps[c];
        cfg.outputs = {measure};
        preset.panels.push_back(std::move(cfg));
    }
    return preset;
}

std::vector<MeasureRecord> run_figure(const FigurePreset& preset, unsigned threads) {
    std::vector<MeasureRecord> all;
    for (const SweepConfig& panel : preset.panels) {
        auto recs = run_sweep(panel, threads);
        all.insert(all.end(), recs.begin(), recs.end());
    }
    return all;
}

double measure_value(const MeasureRecord& record, Measure m) {
    switch (m) {
    case Measure::C_l1: return record.C_l1;
    case Measure::C_cc: return record.C_cc;
    case Measure::QD: return record.QD;
    case Measure::populations: break;
    }
    throw InvalidInput("populations is a 4-column measure, not a scalar");
}

double window_maximum(const std::function<double(double)>& f, double lo, double hi, std::size_t samples) {
    if (!(hi > lo) || samples < 3) throw InvalidInput("window needs hi > lo and at least 3 samples");
    std::vector<double> ts(samples);
    std::vector<double> fs(samples);
    for (std::size_t i = 0; i < samples; ++i) {
        ts[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(samples - 1);
        fs[i] = f(ts[i]);
    }
    double best = *std::max_element(fs.begin(), fs.end());
    for (std::size_t i = 0; i < samples; ++i) {
        const bool left_ok = i == 0 || fs[i] >= fs[i - 1];
        const bool right_ok = i + 1 == samples || fs[i] >= fs[i + 1];
        if (!(left_ok && right_ok)) continue;
        const double a = ts[i == 0 ? 0 : i - 1];
        const double b = ts[i + 1 == samples ? i : i + 1];
        best = std::max(best, golden_max(f, a, b));
    }
    return best;
}

double window_minimum(const std::function<double(double)>& f, double lo, double hi, std::size_t samples) {
    return -window_maximum([&](double t) { return -f(t); }, lo, hi, samples);
}

} // namespace xxz
