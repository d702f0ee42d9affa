// emit.hpp - CSV / JSON serialization of measure records.

#pragma once

#include "xxz/sweep.hpp"

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace xxz {

inline constexpr std::string_view kCsvHeader =
    "case,p,theta,J,Jz,B,Dz,Gz,gamma,sweep_param,sweep_value,t,C_l1,C_cc,QD,qd1,qd2,"
    "lambda1,lambda2,lambda3,lambda4";

// Shortest representation that round-trips, capped at 12 significant digits.
// Infinity prints as "inf"; negative zero prints as "0".
std::string format_number(double x);

// Throws InvalidInput on an empty record list.
void emit(const std::vector<MeasureRecord>& records, OutputFormat format, std::ostream& out);
// Throws IoError naming the path when the file cannot be written.
void emit_to_file(const std::vector<MeasureRecord>& records, OutputFormat format, const std::string& path);

std::vector<MeasureRecord> parse_json_records(std::string_view text);

} // namespace xxz
