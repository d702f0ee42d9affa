#pragma once

#include "xxz/sweep.hpp"

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace xxz {

// Process exit codes of `simulate`.
enum ExitCode : int {
    kExitOk = 0,
    kExitIo = 1,
    kExitInvalidConfig = 2,
    kExitDegenerate = 3,
};

// Flat JSON configuration document; unknown keys are rejected.
// Keys: case, p, theta, J, Jz, B, Dz, Gz, gamma, t_max, t_points,
// sweep ("NAME=v1,v2" or {"param": NAME, "values": [...]}), engine, format,
// outputs (list of measure names).
SweepConfig parse_config_json(std::string_view text, SweepConfig defaults = {});

// "NAME=v1,v2,..."
ParameterSweep parse_sweep_spec(std::string_view spec);

// args excludes the program name. Records go to `out` unless --out is given.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace xxz
