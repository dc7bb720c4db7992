#pragma once

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "wam/version.hpp"

namespace wam {

// One check row shared by every experiment suite; `measured` and `predicted`
// are whatever scalar the suite compares (a slope, a ratio, an error).
struct ReportRow {
    std::string suite;
    std::string name;
    double predicted = 0.0;
    double measured = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::string detail;
};

struct EstimateReport {
    std::vector<std::pair<std::string, std::string>> config;
    std::vector<ReportRow> rows;

    int passed() const {
        int n = 0;
        for (const ReportRow& r : rows) n += r.pass ? 1 : 0;
        return n;
    }
    bool all_pass() const { return passed() == static_cast<int>(rows.size()); }
};

// Shortest decimal form that round-trips through %.10g; keeps every emitted
// file byte-identical across runs.
inline std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

inline std::string csv_escape(const std::string& s) {
    bool quote = s.find_first_of(",\"\n") != std::string::npos;
    if (!quote) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

inline void write_csv(const std::string& path, const std::vector<std::string>& header,
                      const std::vector<std::vector<std::string>>& rows) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("write_csv: cannot open " + path);
    for (std::size_t i = 0; i < header.size(); ++i)
        os << (i ? "," : "") << csv_escape(header[i]);
    os << "\n";
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            os << (i ? "," : "") << csv_escape(row[i]);
        os << "\n";
    }
    if (!os) throw std::runtime_error("write_csv: write failed for " + path);
}

inline nlohmann::ordered_json report_json(const EstimateReport& rep) {
    nlohmann::ordered_json j;
    j["version"] = version_string;
    nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
    for (const auto& kv : rep.config) cfg[kv.first] = kv.second;
    j["config"] = cfg;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const ReportRow& r : rep.rows) {
        nlohmann::ordered_json row;
        row["suite"] = r.suite;
        row["name"] = r.name;
        row["predicted"] = format_double(r.predicted);
        row["measured"] = format_double(r.measured);
        row["tolerance"] = format_double(r.tolerance);
        row["pass"] = r.pass;
        row["detail"] = r.detail;
        rows.push_back(row);
    }
    j["rows"] = rows;
    j["summary"] = {{"checks", rep.rows.size()},
                    {"passed", rep.passed()},
                    {"all_pass", rep.all_pass()}};
    return j;
}

inline void write_report_json(const std::string& path, const EstimateReport& rep) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("write_report_json: cannot open " + path);
    os << report_json(rep).dump(2) << "\n";
    if (!os) throw std::runtime_error("write_report_json: write failed for " + path);
}

} // namespace wam
