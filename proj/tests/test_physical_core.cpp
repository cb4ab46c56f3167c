#include <doctest.h>

#include "test_util.hpp"

#include <cmath>

#include "scmag/errors.hpp"
#include "scmag/keyvalue.hpp"
#include "scmag/physical_core.hpp"
#include "scmag/sheet_models.hpp"

using namespace scmag;

TEST_CASE("builtin materials carry the tabulated critical parameters") {
    const Material& nb = lookup_material("Nb");
    CHECK(nb.Tc == Rel(9.3));
    CHECK(nb.Bc1 == Rel(0.140));
    CHECK(nb.Bc2 == Rel(0.28));
    CHECK(nb.jc == Rel(5e10));
    const Material& y = lookup_material("YBCO");
    CHECK(y.Bc1 == Rel(0.025));
    CHECK(y.jc == Rel(7.2e11));
    REQUIRE(y.Bc1_c.has_value());
    CHECK(*y.Bc1_c == Rel(0.090));
    CHECK(lookup_material("MgB2").jc == Rel(3.5e11));
    CHECK(lookup_material("Nb3Sn").Bc2 == Rel(27.0));
    for (const auto& name : MaterialDatabase::builtin().names()) CHECK_NOTHROW(lookup_material(name).validate());
}

TEST_CASE("unknown material and atom names are UnknownEntry") {
    CHECK_THROWS_AS(lookup_material("Unobtainium"), UnknownEntry);
    CHECK_THROWS_AS(lookup_atom("Cs133"), UnknownEntry);
}

TEST_CASE("materials load from text and are validated") {
    MaterialDatabase db;
    db.load_text("[material NbN]\nTc = 16 K\nBc1 = 20 mT\nBc2 = 15 T\njc = 1e10 A/m2\n");
    REQUIRE(db.contains("NbN"));
    CHECK(db.lookup("NbN").Bc1 == Rel(0.020));
    CHECK(db.lookup("NbN").jc == Rel(1e10));

    MaterialDatabase bad;
    CHECK_THROWS_AS(bad.load_text("[material X]\nTc = 1 K\nBc1 = 2 T\nBc2 = 1 T\njc = 1 A/m2\n"), InvalidArgument);
    CHECK_THROWS_AS(bad.load_text("[material X]\nTc = 1 K\nBc1 = 2 A\nBc2 = 3 T\njc = 1 A/m2\n"), UnitError);
}

TEST_CASE("gravity threshold for Rb87 F=2 mF=2 is about 15.3 G/cm") {
    double g = gravity_gradient_threshold(rubidium87_f2_m2()) / units::gauss_per_cm;
    // m g / (muB) with m = 86.909 u: 1.4432e-25 kg * 9.80665 / 9.274e-24 J/T
    CHECK(g == Rel(15.262).epsilon(1e-3));
    CHECK(std::abs(g - 15.3) / 15.3 < 0.005);
}

TEST_CASE("depth temperature conversion uses kB T = muB B for mF gF = 1") {
    // 1e-5 K * 1.380649e-23 / 9.2740100783e-24 = 1.48873e-5 T
    CHECK(field_for_temperature_depth(rubidium87_f2_m2(), 10e-6) == Rel(1.48873e-5).epsilon(1e-5));
    CHECK_THROWS_AS(field_for_temperature_depth({"strong", 1e-25, 0.5, -2.0}, 1e-6), InvalidArgument);
}

TEST_CASE("the normalization unit is 2/pi gauss for 1 A and 1 mm") {
    CHECK(field_unit(1.0, 1e-3) / units::gauss == Rel(2.0 / std::numbers::pi).epsilon(1e-12));
}

TEST_CASE("quantities parse into SI with absolute and relative units") {
    UnitContext ctx;
    CHECK(parse_quantity("10 um", Dimension::Length, ctx) == Rel(1e-5));
    CHECK(parse_quantity("200 mA", Dimension::Current, ctx) == Rel(0.2));
    CHECK(parse_quantity("15.3 G/cm", Dimension::Gradient, ctx) == Rel(0.153));
    CHECK(parse_quantity("10 uK", Dimension::Temperature, ctx) == Rel(1e-5));
    CHECK(parse_quantity("1e11 A/m2", Dimension::CurrentDensity, ctx) == Rel(1e11));
    CHECK_THROWS_AS(parse_quantity("3 mA", Dimension::Length, ctx), UnitError);
    CHECK_THROWS_AS(parse_quantity("3", Dimension::Length, ctx), UnitError);
    CHECK_THROWS_AS(parse_quantity("0.5 w", Dimension::Length, ctx), UnitError);
    CHECK_THROWS_AS(parse_quantity("3 furlongs", Dimension::Length, ctx), UnitError);
    ctx.halfWidth = 2e-3;
    ctx.fieldUnit = field_unit(1.0, 1e-3);
    CHECK(parse_quantity("0.5 w", Dimension::Length, ctx) == Rel(1e-3));
    CHECK(parse_quantity("2.5 unit", Dimension::Field, ctx) == Rel(2.5 * 2e-4 / std::numbers::pi));
}

TEST_CASE("key/value parser reports the offending line") {
    try {
        parse_key_values("[wire]\nmodel = bem\nmodel = bean\n");
        FAIL("expected a ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.line() == 3);
    }
    CHECK_THROWS_AS(parse_key_values("[wire\n"), ConfigError);
    CHECK_THROWS_AS(parse_key_values("just text\n"), ConfigError);
    auto kv = parse_key_values("# comment\n[Wire]\n Model = bem ; trailing\n");
    REQUIRE(kv.size() == 1);
    CHECK(kv[0].section == "wire");
    CHECK(kv[0].key == "model");
    CHECK(kv[0].value == "bem");
    CHECK(kv[0].line == 3);
}
