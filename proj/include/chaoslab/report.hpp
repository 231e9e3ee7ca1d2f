#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace chaoslab {

struct ReportRow {
    std::string label;
    double value;
    std::optional<double> bound;
    bool pass;
    std::optional<double> std_error;
};

/// Result of one experiment. Stochastic rows carry a standard error and the
/// report carries the master seed that reproduces them.
struct Report {
    std::string experiment;
    std::vector<std::pair<std::string, std::string>> params;
    std::optional<std::uint64_t> seed;
    std::vector<ReportRow> rows;

    bool passed() const
    {
        for (const auto& r : rows)
            if (!r.pass)
                return false;
        return true;
    }

    std::size_t failures() const
    {
        std::size_t n = 0;
        for (const auto& r : rows)
            n += r.pass ? 0 : 1;
        return n;
    }

    void add(std::string label, double value, std::optional<double> bound, bool pass,
             std::optional<double> std_error = std::nullopt)
    {
        rows.push_back({std::move(label), value, bound, pass, std_error});
    }
};

/// Shortest round-trippable text for a double ("nan", "inf" spelled out).
inline std::string format_double(double x)
{
    if (std::isnan(x))
        return "nan";
    if (std::isinf(x))
        return x > 0 ? "inf" : "-inf";
    char buf[32];
    for (int precision = 6; precision <= 17; ++precision) {
        std::snprintf(buf, sizeof buf, "%.*g", precision, x);
        if (std::strtod(buf, nullptr) == x)
            break;
    }
    return buf;
}

inline nlohmann::ordered_json to_json(const Report& report)
{
    nlohmann::ordered_json j;
    j["experiment"] = report.experiment;
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    for (const auto& [k, v] : report.params)
        params[k] = v;
    j["params"] = params;
    j["seed"] = report.seed ? nlohmann::ordered_json(*report.seed) : nlohmann::ordered_json(nullptr);
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& r : report.rows) {
        nlohmann::ordered_json row;
        row["label"] = r.label;
        row["value"] = std::isfinite(r.value) ? nlohmann::ordered_json(r.value) : nlohmann::ordered_json(nullptr);
        row["bound"] = r.bound ? nlohmann::ordered_json(*r.bound) : nlohmann::ordered_json(nullptr);
        row["pass"] = r.pass;
        row["stderr"] = r.std_error ? nlohmann::ordered_json(*r.std_error) : nlohmann::ordered_json(nullptr);
        rows.push_back(std::move(row));
    }
    j["rows"] = std::move(rows);
    return j;
}

inline std::string to_text(const Report& report)
{
    std::ostringstream out;
    out << "experiment: " << report.experiment << '\n';
    for (const auto& [k, v] : report.params)
        out << "  " << k << " = " << v << '\n';
    out << "seed: " << (report.seed ? std::to_string(*report.seed) : std::string("-")) << '\n';
    for (const auto& r : report.rows) {
        out << (r.pass ? "PASS  " : "FAIL  ") << r.label << "  value=" << format_double(r.value);
        if (r.bound)
            out << "  bound=" << format_double(*r.bound);
        if (r.std_error)
            out << "  stderr=" << format_double(*r.std_error);
        out << '\n';
    }
    out << "summary: " << report.rows.size() << " rows, " << report.failures() << " failed\n";
    return out.str();
}

/// One line of the per-index CSV export. The stderr column is empty for
/// deterministic rows and "NA" for stochastic rows without a standard error.
struct CsvRow {
    std::uint64_t n;
    std::string stat;
    double value;
    std::optional<double> std_error;
    bool stochastic = false;
};

inline std::string to_csv(std::span<const CsvRow> rows)
{
    std::string out = "n,stat,value,stderr\n";
    for (const auto& r : rows) {
        out += std::to_string(r.n);
        out += ',';
        out += r.stat;
        out += ',';
        out += format_double(r.value);
        out += ',';
        if (r.std_error)
            out += format_double(*r.std_error);
        else if (r.stochastic)
            out += "NA";
        out += '\n';
    }
    return out;
}

} // namespace chaoslab
