#include "xxz/emit.hpp"

#include "xxz/error.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

namespace xxz {

namespace {

using json = nlohmann::ordered_json;

// Numeric value as written, so JSON and CSV agree to the same digits.
double rounded(double x) {
    if (!std::isfinite(x)) return x;
    return std::strtod(format_number(x).c_str(), nullptr);
}

json number_json(double x) {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    return rounded(x);
}

double number_from_json(const json& j) {
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "inf") return std::numeric_limits<double>::infinity();
        if (s == "-inf") return -std::numeric_limits<double>::infinity();
        throw InvalidInput("expected a number, got string '" + s + "'");
    }
    return j.get<double>();
}

json to_json(const MeasureRecord& r) {
    json o = json::object();
    o["case"] = r.case_id;
    o["p"] = number_json(r.p);
    o["theta"] = number_json(r.theta);
    o["J"] = number_json(r.J);
    o["Jz"] = number_json(r.Jz);
    o["B"] = number_json(r.B);
    o["Dz"] = number_json(r.Dz);
    o["Gz"] = number_json(r.Gz);
    o["gamma"] = number_json(r.gamma);
    o["sweep_param"] = r.sweep_param;
    o["sweep_value"] = number_json(r.sweep_value);
    o["t"] = number_json(r.t);
    o["C_l1"] = number_json(r.C_l1);
    o["C_cc"] = number_json(r.C_cc);
    o["QD"] = number_json(r.QD);
    o["qd1"] = number_json(r.qd1);
    o["qd2"] = number_json(r.qd2);
    for (int k = 0; k < 4; ++k) o["lambda" + std::to_string(k + 1)] = number_json(r.lambda[k]);
    return o;
}

void write_csv(const std::vector<MeasureRecord>& records, std::ostream& out) {
    out << kCsvHeader << '\n';
    for (const MeasureRecord& r : records) {
        out << r.case_id;
        for (double v : {r.p, r.theta, r.J, r.Jz, r.B, r.Dz, r.Gz, r.gamma}) out << ',' << format_number(v);
        out << ',' << r.sweep_param << ',' << format_number(r.sweep_value);
        for (double v : {r.t, r.C_l1, r.C_cc, r.QD, r.qd1, r.qd2}) out << ',' << format_number(v);
        for (double v : r.lambda) out << ',' << format_number(v);
        out << '\n';
    }
}

} // namespace

std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    if (x == 0.0) return "0";

    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 12);
    const double r = std::strtod(std::string(buf, res.ptr).c_str(), nullptr);
    res = std::to_chars(buf, buf + sizeof buf, r);
    return std::string(buf, res.ptr);
}

void emit(const std::vector<MeasureRecord>& records, OutputFormat format, std::ostream& out) {
    if (records.empty()) throw InvalidInput("no records to emit");
    if (format == OutputFormat::csv) {
        write_csv(records, out);
        return;
    }
    json arr = json::array();
    for (const MeasureRecord& r : records) arr.push_back(to_json(r));
    out << arr.dump(1) << '\n';
}

void emit_to_file(const std::vector<MeasureRecord>& records, OutputFormat format, const std::string& path) {
    std::ostringstream buffer;
    emit(records, format, buffer);
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw IoError(path, "cannot open for writing");
    file << buffer.str();
    file.flush();
    if (!file) throw IoError(path, "write failed");
}

std::vector<MeasureRecord> parse_json_records(std::string_view text) {
    std::vector<MeasureRecord> out;
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw InvalidInput(std::string("malformed record JSON: ") + e.what());
    }
    if (!doc.is_array()) throw InvalidInput("record JSON must be an array");
    try {
        for (const json& o : doc) {
            MeasureRecord r;
            r.case_id = o.at("case").get<int>();
            r.p = number_from_json(o.at("p"));
            r.theta = number_from_json(o.at("theta"));
            r.J = number_from_json(o.at("J"));
            r.Jz = number_from_json(o.at("Jz"));
            r.B = number_from_json(o.at("B"));
            r.Dz = number_from_json(o.at("Dz"));
            r.Gz = number_from_json(o.at("Gz"));
            r.gamma = number_from_json(o.at("gamma"));
            r.sweep_param = o.at("sweep_param").get<std::string>();
            r.sweep_value = number_from_json(o.at("sweep_value"));
            r.t = number_from_json(o.at("t"));
            r.C_l1 = number_from_json(o.at("C_l1"));
            r.C_cc = number_from_json(o.at("C_cc"));
            r.QD = number_from_json(o.at("QD"));
            r.qd1 = number_from_json(o.at("qd1"));
            r.qd2 = number_from_json(o.at("qd2"));
            for (int k = 0; k < 4; ++k) r.lambda[k] = number_from_json(o.at("lambda" + std::to_string(k + 1)));
            out.push_back(std::move(r));
        }
    } catch (const json::exception& e) {
        throw InvalidInput(std::string("record JSON missing or mistyped field: ") + e.what());
    }
    return out;
}

} // namespace xxz
