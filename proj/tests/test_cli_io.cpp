#include <doctest.h>

#include "test_util.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "scmag/config.hpp"
#include "scmag/csv.hpp"
#include "scmag/errors.hpp"
#include "scmag/scenario.hpp"
#include "scmag/sheet_models.hpp"

using namespace scmag;
namespace fs = std::filesystem;

namespace {

const char* kMinimal = R"(
[wire]
model = meissner-thin
half_width = 1 mm
[drive]
current = 1 A
)";

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path scratch(const std::string& name) {
    fs::path p = fs::temp_directory_path() / ("scmag_test_" + name);
    fs::remove_all(p);
    return p;
}

}  // namespace

TEST_CASE("minimal config parses with defaults filled") {
    ScenarioConfig c = parse_config(kMinimal);
    CHECK(c.wire.model == WireModel::MeissnerThin);
    CHECK(c.wire.halfWidth == Rel(1e-3));
    CHECK(c.drive.current == 1.0);
    CHECK(c.drive.bias.x == 0.0);
    CHECK_FALSE(c.drive.biasAuto);
    CHECK(c.trap.atom == "Rb87");
    CHECK(c.trap.gravity == GravityMode::Away);
    CHECK(c.trap.depthThreshold == Rel(10e-6));
    CHECK(c.trap.gradientThreshold == Rel(0.153));
    CHECK_FALSE(c.grid.has_value());
    CHECK(c.output.dir == ".");
    CHECK(c.bean.ratios.size() == 4);
}

TEST_CASE("bias in normalized units converts with the declared current and width") {
    ScenarioConfig c = parse_config(std::string(kMinimal) + "bias_x = -2.5 unit\n");
    CHECK(c.drive.bias.x == Rel(-2.5 * constants::mu0 / (2 * std::numbers::pi * std::numbers::pi * 1e-3)));
    CHECK(c.drive.bias.x / units::gauss == Rel(-2.5 * 2 / std::numbers::pi));
}

TEST_CASE("config errors name the line") {
    auto line_of = [](const std::string& text) {
        try {
            parse_config(text);
        } catch (const ConfigError& e) {
            return e.line();
        }
        return -1;
    };
    CHECK(line_of("[wire]\nmodel = bem\n[wire]\nmodel = bean\n") == 4);
    CHECK(line_of(std::string(kMinimal) + "curent = 2 A\n") == 7);
    CHECK(line_of("[wirre]\nmodel = bem\n") == 2);
    CHECK(line_of("[wire]\nmodel = superduper\nhalf_width = 1 mm\n[drive]\ncurrent = 1 A\n") == 2);
    CHECK(line_of(std::string(kMinimal) + "[grid]\nx_min = 0 w\nx_max = 1 w\nnx = 1\nz_min = 0.1 w\nz_max = 1 w\nnz = 3\n") ==
          10);
    CHECK_THROWS_AS(parse_config("[drive]\ncurrent = 1 A\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("[wire]\nmodel = bean\nhalf_width = 1 mm\nthickness = 1 um\n[drive]\ncurrent = 1 A\n"),
                    ConfigError);
    CHECK_THROWS_AS(parse_config("[wire]\nmodel = meissner-thin\nhalf_width = 1 A\n[drive]\ncurrent = 1 A\n"),
                    UnitError);
    CHECK_THROWS_AS(parse_config(std::string(kMinimal) + "bias_x = auto\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("[wire]\nmodel = meissner-thin\nhalf_width = 1 mm\nmaterial = Kryptonite\n[drive]\ncurrent = 1 A\n"),
                    UnknownEntry);
}

TEST_CASE("relative units: w, R and Ic") {
    auto c = parse_config(
        "[wire]\nmodel = bean\nhalf_width = 5 um\nthickness = 1 um\njc = 1e11 A/m2\n[drive]\ncurrent = 0.5 Ic\n"
        "[trap]\nheight = 0.2 w\n");
    CHECK(c.drive.current == Rel(0.5));
    CHECK(*c.trap.height == Rel(1e-6));
    auto cyl = parse_config("[wire]\nmodel = cylinder\nradius = 2 um\nstate = normal\n[drive]\ncurrent = 1 mA\n"
                            "[trap]\nheight = 3 R\n");
    CHECK(*cyl.trap.height == Rel(6e-6));
    CHECK(cyl.wire.state == WireState::Normal);
}

TEST_CASE("CSV writes a units line and round-trips losslessly") {
    CsvTable t;
    t.columns = {"a", "b", "label"};
    t.units = {"m", "T", "1"};
    t.add_row({1.0, -2.5e-7, std::string("away")});
    t.add_row({std::nan(""), 1.0 / 3.0, std::string("x,y")});
    std::string text = to_csv(t);
    CHECK(text.rfind("# units: m,T,1\na,b,label\n", 0) == 0);
    CHECK(text.find("1.000000000e+00,-2.500000000e-07,away\n") != std::string::npos);
    CHECK(text.find("x;y") != std::string::npos);
    CsvTable back = parse_csv(text);
    CHECK(back.columns == t.columns);
    CHECK(back.units == t.units);
    CHECK(to_csv(back) == text);
    CHECK(back.number(0, "b") == -2.5e-7);
    CHECK(back.text(0, "label") == "away");
    CHECK(std::isnan(back.number(1, "a")));
    CHECK_THROWS_AS(parse_csv("a,b\n1,2\n"), IoError);
    CHECK_THROWS_AS(parse_csv("# units: m,m\na,b\n1\n"), IoError);
    CHECK_THROWS_AS(t.add_row({1.0}), InvalidArgument);
}

TEST_CASE("field-map scenario emits the documented header") {
    auto c = parse_config(std::string(kMinimal) +
                          "bias_x = -2.5 unit\n[grid]\nx_min = -3 w\nx_max = 3 w\nnx = 7\nz_min = 0.1 w\nz_max = 3 w\nnz = 5\n");
    auto out = compute_scenario(c, "field-map");
    REQUIRE(out.tables.size() == 1);
    std::string text = to_csv(out.tables[0].table);
    CHECK(text.rfind("# units: m,m,T,T,T\nx,z,Bx,Bz,Bmod\n", 0) == 0);
    CHECK(out.tables[0].table.rows.size() == 35);
    c.output.normalized = true;
    auto norm = compute_scenario(c, "field-map").tables[0].table;
    CHECK(norm.columns.size() == 10);
    CHECK(norm.number(0, "x_norm") == Rel(-3.0));
    CHECK(norm.number(0, "Bmod_norm") == Rel(norm.number(0, "Bmod") / field_unit(1.0, 1e-3)));
}

TEST_CASE("bean-profile: plateau rows are exactly 1 outside the penetration boundary") {
    auto c = parse_config("[wire]\nmodel = bean\nhalf_width = 5 um\nthickness = 1 um\njc = 1e11 A/m2\n"
                          "[drive]\ncurrent = 0 A\n[bean]\nratios = 0.5\npoints = 201\n");
    auto t = compute_scenario(c, "bean-profile").tables[0].table;
    REQUIRE(t.rows.size() == 201);
    std::string text = to_csv(t);
    std::size_t plateau = 0;
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        double x = t.number(i, "x_w");
        if (std::abs(x) > 0.866) {
            CHECK(t.number(i, "J_Jc") == 1.0);
            ++plateau;
        } else {
            CHECK(t.number(i, "J_Jc") < 1.0);
        }
    }
    CHECK(plateau > 20);
    CHECK(text.find(",1.000000000e+00\n") != std::string::npos);
}

TEST_CASE("scenarios are byte-identical on rerun and across execution modes") {
    const std::string cfg = std::string(kMinimal) +
                            "bias_x = -2.5 unit\n[grid]\nx_min = -2 w\nx_max = 2 w\nnx = 9\nz_min = 0.1 w\nz_max = 2 w\nnz = 6\n[trap]\ngravity = off\n";
    auto c = parse_config(cfg);
    fs::path a = scratch("a"), b = scratch("b"), s = scratch("s");
    c.output.dir = a.string();
    run_scenario(c, "field-map");
    run_scenario(c, "trap");
    c.output.dir = b.string();
    run_scenario(c, "field-map");
    run_scenario(c, "trap");
    c.output.dir = s.string();
    run_scenario(c, "field-map", Execution::Serial);
    run_scenario(c, "trap", Execution::Serial);
    for (const char* f : {"field_map.csv", "trap.csv"}) {
        std::string fa = slurp((a / f).string());
        CHECK_FALSE(fa.empty());
        CHECK(fa == slurp((b / f).string()));
        CHECK(fa == slurp((s / f).string()));
    }
    CsvTable t = read_csv_file((a / "trap.csv").string());
    CHECK(t.number(0, "z_t") == Rel(1e-3 * std::sqrt(std::pow(std::numbers::pi / 2.5, 2) - 1)).epsilon(1e-3));
    CHECK(t.text(0, "valid") == "na");
    for (auto p : {a, b, s}) fs::remove_all(p);
}

TEST_CASE("materials table and subcommand dispatch") {
    ScenarioConfig c;
    auto out = compute_scenario(c, "materials");
    const CsvTable& t = out.tables[0].table;
    CHECK(t.rows.size() == 5);
    CHECK(t.column("Bc1") == 2);
    CHECK_THROWS_AS(compute_scenario(c, "frobnicate"), UnknownEntry);
    CHECK(is_subcommand("trap-scan"));
    CHECK_FALSE(is_subcommand("trapscan"));
    CHECK_THROWS_AS(compute_scenario(parse_config(kMinimal), "bean-profile"), ConfigError);
    CHECK_THROWS_AS(compute_scenario(parse_config(kMinimal), "field-map"), ConfigError);
}

TEST_CASE("auto bias places the trap at the requested height") {
    auto c = parse_config(std::string(kMinimal) + "bias_x = auto\n[trap]\nheight = 0.5 w\ngravity = off\n");
    auto t = compute_scenario(c, "trap").tables[0].table;
    CHECK(t.number(0, "z_t") == Rel(0.5e-3).epsilon(1e-6));
    CHECK(t.number(0, "bias_G") * units::gauss == Rel(on_axis_meissner(1.0, 1e-3, 0.5e-3)).epsilon(1e-6));
}
