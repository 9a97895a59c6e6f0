// Deterministic tabular output (CSV and its JSON mirror) and the restricted
// curve-offset expression grammar used on the command line.
#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pseudonorm/errors.hpp"

namespace pseudonorm {

// Fixed float formatting: 17 significant digits round-trip doubles exactly,
// so identical inputs produce byte-identical files.
inline std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct SweepTable {
    std::vector<std::string> meta;     // emitted as '#'-prefixed lines
    std::vector<std::string> columns;  // fixed order
    std::vector<nlohmann::json> rows;  // objects keyed by column name

    std::string csv() const {
        std::ostringstream os;
        for (const auto& m : meta) os << "# " << m << "\n";
        for (std::size_t c = 0; c < columns.size(); ++c)
            os << columns[c] << (c + 1 < columns.size() ? "," : "\n");
        for (const auto& row : rows) {
            for (std::size_t c = 0; c < columns.size(); ++c) {
                os << cell_text(row, columns[c]) << (c + 1 < columns.size() ? "," : "\n");
            }
        }
        return os.str();
    }

    std::string json_text() const {
        nlohmann::json j;
        j["meta"] = meta;
        j["columns"] = columns;
        j["rows"] = rows;
        return j.dump(1) + "\n";
    }

    void write(const std::string& path, const std::string& format) const {
        std::ofstream out(path);
        if (!out) throw config_error("cannot open output file '" + path + "'");
        out << (format == "json" ? json_text() : csv());
    }

  private:
    static std::string cell_text(const nlohmann::json& row, const std::string& col) {
        if (!row.contains(col) || row[col].is_null()) return "";
        const auto& v = row[col];
        if (v.is_number_float()) return format_number(v.get<double>());
        if (v.is_number_integer()) return std::to_string(v.get<long long>());
        if (v.is_boolean()) return v.get<bool>() ? "1" : "0";
        std::string s = v.get<std::string>();
        for (char& ch : s)
            if (ch == ',' || ch == '\n') ch = ';';  // cells must not break the format
        return s;
    }
};

// ---------------------------------------------------------------------------
// curve offsets: "c*param^q*(log(param))^s" products, covering every curve
// family in the estimates without a general expression interpreter

struct CurveExpr {
    double c = 0.0;
    double q = 0.0;
    double s = 0.0;

    double operator()(double p) const {
        if (c == 0.0) return 0.0;
        double v = c * std::pow(p, q);
        if (s != 0.0) {
            if (!(p > 1.0))
                throw numeric_error("curve expression: log factor needs param > 1");
            v *= std::pow(std::log(p), s);
        }
        return v;
    }
};

inline CurveExpr parse_curve_expr(const std::string& text) {
    CurveExpr e;
    e.c = 1.0;
    std::string cleaned;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) cleaned.push_back(ch);
    if (cleaned.empty() || cleaned == "0") return CurveExpr{};

    std::vector<std::string> factors;
    std::string cur;
    int depth = 0;
    for (char ch : cleaned) {
        if (ch == '(') ++depth;
        if (ch == ')') --depth;
        if (ch == '*' && depth == 0) {
            factors.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    factors.push_back(cur);

    auto parse_power = [](const std::string& f, const std::string& base, double& out) {
        if (f == base) {
            out += 1.0;
            return true;
        }
        if (f.rfind(base + "^", 0) == 0) {
            try {
                out += std::stod(f.substr(base.size() + 1));
            } catch (...) {
                throw config_error("curve expression: bad exponent in '" + f + "'");
            }
            return true;
        }
        return false;
    };

    for (const auto& f : factors) {
        if (f.empty()) throw config_error("curve expression: empty factor");
        if (parse_power(f, "param", e.q)) continue;
        if (parse_power(f, "(log(param))", e.s)) continue;
        if (parse_power(f, "log(param)", e.s)) continue;
        try {
            std::size_t used = 0;
            const double v = std::stod(f, &used);
            if (used != f.size()) throw std::invalid_argument(f);
            e.c *= v;
        } catch (...) {
            throw config_error("curve expression: cannot parse factor '" + f + "'");
        }
    }
    return e;
}

} // namespace pseudonorm
