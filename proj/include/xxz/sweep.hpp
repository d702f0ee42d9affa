// sweep.hpp - batch evaluation of the measures along time grids and
// parameter sweeps, steady-state reports and the figure presets.

#pragma once

#include "xxz/dynamics.hpp"
#include "xxz/measures.hpp"

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace xxz {

enum class SweepParam { J, Jz, B, Dz, Gz, gamma, p, theta };
enum class Measure { C_l1, C_cc, QD, populations };
enum class OutputFormat { csv, json };
enum class Engine { closed_form, spectral };

std::string_view to_string(SweepParam p) noexcept;
std::string_view to_string(Measure m) noexcept;
std::string_view to_string(OutputFormat f) noexcept;
std::string_view to_string(Engine e) noexcept;

// Parsers throw InvalidInput on unknown names. Engine accepts "closed" as an
// alias of "closed_form".
SweepParam parse_sweep_param(std::string_view s);
Measure parse_measure(std::string_view s);
OutputFormat parse_format(std::string_view s);
Engine parse_engine(std::string_view s);

// A single model + preparation + decoherence rate.
struct BasePoint {
    ModelParams params{0.5, 0.5, 0.1, 0.1, 0.5};
    InitialStateSpec state{InitialCase::Case1, 0.7, 0.785398163397448309616};
    double gamma{0.05};

    void validate() const;
};

// Copy of `base` with one parameter replaced.
BasePoint with_value(BasePoint base, SweepParam param, double value);

struct TimeAxis {
    double t_max{30.0};
    std::size_t n_points{600};

    void validate() const;
    // n_points values t_max * i / (n_points - 1).
    std::vector<double> grid() const;
};

struct ParameterSweep {
    SweepParam param{SweepParam::gamma};
    std::vector<double> values;
};

struct SweepConfig {
    BasePoint base;
    TimeAxis time_axis;
    std::optional<ParameterSweep> sweep;
    // Measures the run is meant for; every record carries the full column set.
    std::vector<Measure> outputs{Measure::C_l1, Measure::C_cc, Measure::QD, Measure::populations};
    OutputFormat format{OutputFormat::csv};
    Engine engine{Engine::spectral};

    // Throws InvalidInput for a bad axis or any swept value outside its domain.
    void validate() const;
    // The evaluated points: one per sweep value, or just `base`.
    std::vector<BasePoint> points() const;
};

struct MeasureRecord {
    int case_id{1};
    double p{0.0};
    double theta{0.0};
    double J{0.0};
    double Jz{0.0};
    double B{0.0};
    double Dz{0.0};
    double Gz{0.0};
    double gamma{0.0};
    std::string sweep_param{"none"};
    double sweep_value{0.0};
    double t{0.0}; // +infinity for steady-state records
    double C_l1{0.0};
    double C_cc{0.0};
    double QD{0.0};
    double qd1{0.0};
    double qd2{0.0};
    std::array<double, 4> lambda{};

    bool operator==(const MeasureRecord&) const = default;
};

// Evaluates every measure on `rho` and labels the record with `point`.
MeasureRecord measure_state(const BasePoint& point, const DensityMatrix& rho, double t);

DensityMatrix evolve_point(const BasePoint& point, double t, Engine engine);

// Thread cap from SIM_THREADS (unset or invalid: hardware concurrency).
unsigned sweep_threads();

// Records ordered by (sweep value, t). Output does not depend on `threads`.
std::vector<MeasureRecord> run_sweep(const SweepConfig& config, unsigned threads = sweep_threads());

// Measures on steady_state of the base point; t = +infinity. Throws
// NoSteadyState when gamma == 0.
MeasureRecord steady_state_report(const SweepConfig& config);
// One steady-state record per sweep value (or the base alone).
std::vector<MeasureRecord> steady_state_sweep(const SweepConfig& config);

// One figure is a set of panels, one per initial case; the two cases may
// sweep different parameters.
struct FigurePreset {
    std::string name;
    std::vector<SweepConfig> panels;
};

const std::vector<std::string>& figure_names();
// Throws InvalidInput for an unknown name.
FigurePreset figure_preset(std::string_view name);
std::vector<MeasureRecord> run_figure(const FigurePreset& preset, unsigned threads = sweep_threads());

double measure_value(const MeasureRecord& record, Measure m);

// Maximum of a smooth curve on [lo, hi]: uniform samples, then golden-section
// refinement around every sampled local maximum.
double window_maximum(const std::function<double(double)>& f, double lo, double hi, std::size_t samples = 400);
double window_minimum(const std::function<double(double)>& f, double lo, double hi, std::size_t samples = 400);

} // namespace xxz
