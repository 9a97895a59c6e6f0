#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pseudonorm/table_io.hpp"

using namespace pseudonorm;
using Catch::Matchers::WithinRel;
namespace fs = std::filesystem;

TEST_CASE("curve expression grammar") {
    CHECK(parse_curve_expr("0")(123.0) == 0.0);
    CHECK(parse_curve_expr("")(123.0) == 0.0);

    auto e = parse_curve_expr("2*param^0.5");
    CHECK_THAT(e(16.0), WithinRel(8.0, 1e-14));

    CHECK_THAT(parse_curve_expr("param")(7.0), WithinRel(7.0, 1e-14));
    CHECK_THAT(parse_curve_expr("param^2")(3.0), WithinRel(9.0, 1e-14));

    auto full = parse_curve_expr("1.5*param^0.3333333333333333*(log(param))^0.66");
    const double p = 1e5;
    CHECK_THAT(full(p),
               WithinRel(1.5 * std::pow(p, 1.0 / 3.0) * std::pow(std::log(p), 0.66), 1e-12));

    CHECK_THAT(parse_curve_expr("log(param)")(std::exp(2.0)), WithinRel(2.0, 1e-14));

    CHECK_THROWS_AS(parse_curve_expr("banana*param"), config_error);
    CHECK_THROWS_AS(parse_curve_expr("param^x"), config_error);
}

TEST_CASE("number formatting round-trips doubles") {
    for (double v : {1.0 / 3.0, 1.3337673146731372, 1e-300, 12345.678901234567}) {
        const std::string s = format_number(v);
        CHECK(std::stod(s) == v);
    }
}

TEST_CASE("sweep table: csv layout and json mirror") {
    SweepTable t;
    t.meta = {"tool 0.1.0", "config {}"};
    t.columns = {"param", "value", "flag", "error"};
    nlohmann::json r1;
    r1["param"] = 2.0;
    r1["value"] = 1.0 / 3.0;
    r1["flag"] = true;
    t.rows.push_back(r1);
    nlohmann::json r2;
    r2["param"] = 3.0;
    r2["error"] = "oh, no";  // commas must not break the CSV shape
    t.rows.push_back(r2);

    const std::string csv = t.csv();
    CHECK(csv.find("# tool 0.1.0\n") != std::string::npos);
    CHECK(csv.find("param,value,flag,error\n") != std::string::npos);
    CHECK(csv.find("oh; no") != std::string::npos);

    std::size_t data_lines = 0;
    std::istringstream is(csv);
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        CHECK(std::count(line.begin(), line.end(), ',') == 3);
        ++data_lines;
    }
    CHECK(data_lines == 3);  // header + 2 rows

    auto j = nlohmann::json::parse(t.json_text());
    CHECK(j["columns"].size() == 4);
    CHECK(j["rows"].size() == 2);
    CHECK(j["rows"][0]["value"].get<double>() == 1.0 / 3.0);
}

#ifdef PSEUDONORM_CLI_PATH

namespace {

int run_cli(const std::string& args, const std::string& out_file) {
    const std::string cmd = std::string(PSEUDONORM_CLI_PATH) + " " + args + " > " + out_file +
                            " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

// Parses CSV rows (skipping '#' meta) into column -> cell maps.
std::vector<std::map<std::string, std::string>> parse_csv(const std::string& text) {
    std::vector<std::map<std::string, std::string>> rows;
    std::vector<std::string> cols;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> cells;
        std::string cur;
        for (char ch : line) {
            if (ch == ',') {
                cells.push_back(cur);
                cur.clear();
            } else {
                cur.push_back(ch);
            }
        }
        cells.push_back(cur);
        if (cols.empty()) {
            cols = cells;
        } else {
            std::map<std::string, std::string> row;
            for (std::size_t i = 0; i < cols.size() && i < cells.size(); ++i)
                row[cols[i]] = cells[i];
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

} // namespace

TEST_CASE("cli: identical config produces byte-identical output") {
    const auto dir = fs::temp_directory_path();
    const std::string a = (dir / "pn_sweep_a.csv").string();
    const std::string b = (dir / "pn_sweep_b.csv").string();
    const std::string args =
        "sweep --potential monomial:n=2 --axis imag --mode asym --grid 10:100000:7:log "
        "--force --out ";
    REQUIRE(run_cli(args + a, (dir / "pn_null").string()) == 0);
    REQUIRE(run_cli(args + b, (dir / "pn_null").string()) == 0);
    CHECK(slurp(a) == slurp(b));
    CHECK(!slurp(a).empty());
    fs::remove(a);
    fs::remove(b);
}

TEST_CASE("cli: csv and json sweeps carry identical values") {
    const auto dir = fs::temp_directory_path();
    const std::string csv_path = (dir / "pn_eq.csv").string();
    const std::string json_path = (dir / "pn_eq.json").string();
    const std::string base =
        "sweep --potential monomial:n=2 --axis real --mode asym --grid 100:10000:5:log --force ";
    REQUIRE(run_cli(base + "--format csv --out " + csv_path, (dir / "pn_null").string()) == 0);
    REQUIRE(run_cli(base + "--format json --out " + json_path, (dir / "pn_null").string()) == 0);

    auto csv_rows = parse_csv(slurp(csv_path));
    auto j = nlohmann::json::parse(slurp(json_path));
    REQUIRE(csv_rows.size() == j["rows"].size());
    for (std::size_t i = 0; i < csv_rows.size(); ++i) {
        for (const std::string col : {"param", "asym", "remainder_scale"}) {
            INFO("row " << i << " col " << col);
            REQUIRE(csv_rows[i].count(col) == 1);
            CHECK(std::stod(csv_rows[i][col]) == j["rows"][i][col].get<double>());
        }
    }
    fs::remove(csv_path);
    fs::remove(json_path);
}

TEST_CASE("cli: row errors never abort a sweep") {
    const auto dir = fs::temp_directory_path();
    const std::string out = (dir / "pn_err.csv").string();
    // log potential has no regular-variation index: every real-axis row errors
    REQUIRE(run_cli("sweep --potential log --axis real --mode asym --grid 10:1000:3:log "
                    "--force --out " + out,
                    (dir / "pn_null").string()) == 0);
    auto rows = parse_csv(slurp(out));
    REQUIRE(rows.size() == 3);
    for (auto& row : rows) CHECK(row["error"].find("beta") != std::string::npos);
    fs::remove(out);
}

TEST_CASE("cli: concurrent sweeps emit rows in grid order") {
    const auto dir = fs::temp_directory_path();
    const std::string a = (dir / "pn_jobs1.csv").string();
    const std::string b = (dir / "pn_jobs2.csv").string();
    const std::string base =
        "sweep --potential power:p=2 --axis imag --mode asym --grid 10:100000:9:log --force ";
    REQUIRE(run_cli(base + "--jobs 1 --out " + a, (dir / "pn_null").string()) == 0);
    REQUIRE(run_cli(base + "--jobs 4 --out " + b, (dir / "pn_null").string()) == 0);
    CHECK(slurp(a) == slurp(b));
    fs::remove(a);
    fs::remove(b);
}

TEST_CASE("cli: exit codes") {
    const auto dir = fs::temp_directory_path();
    const std::string null_file = (dir / "pn_null").string();
    CHECK(run_cli("verify --scenario lambert", null_file) == 0);
    CHECK(run_cli("verify --scenario no-such-scenario", null_file) == 64);
    CHECK(run_cli("sweep --potential monomial:n=2 --grid bad-grid", null_file) == 64);
    CHECK(run_cli("check --potential power:p=2 --mode iR", null_file) == 0);
    CHECK(run_cli("norm --potential monomial:n=2 --im 10 --tol 1e-3", null_file) == 0);
}

TEST_CASE("cli: config file fields are overridable by flags") {
    const auto dir = fs::temp_directory_path();
    const std::string cfg_path = (dir / "pn_cfg.json").string();
    {
        std::ofstream cfg(cfg_path);
        cfg << R"({"potential": "monomial:n=2", "axis": "imag", "mode": "asym",)"
            << R"( "grid": "10:1000:3:log", "force": true})";
    }
    const std::string out1 = (dir / "pn_cfg_a.csv").string();
    const std::string out2 = (dir / "pn_cfg_b.csv").string();
    REQUIRE(run_cli("sweep --force --config " + cfg_path + " --out " + out1,
                    (dir / "pn_null").string()) == 0);
    auto rows1 = parse_csv(slurp(out1));
    REQUIRE(rows1.size() == 3);

    // flag overrides the grid count from the config
    REQUIRE(run_cli("sweep --force --config " + cfg_path + " --grid 10:1000:5:log --out " + out2,
                    (dir / "pn_null").string()) == 0);
    auto rows2 = parse_csv(slurp(out2));
    REQUIRE(rows2.size() == 5);
    fs::remove(cfg_path);
    fs::remove(out1);
    fs::remove(out2);
}

#endif  // PSEUDONORM_CLI_PATH
