#include "scmag/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <limits>
#include <numbers>
#include <sstream>

#include "scmag/bean_model.hpp"
#include "scmag/bem_solver.hpp"
#include "scmag/cylinder_model.hpp"
#include "scmag/errors.hpp"
#include "scmag/geometry.hpp"
#include "scmag/sheet_models.hpp"

namespace scmag {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double nan = std::numeric_limits<double>::quiet_NaN();

void require_model(const ScenarioConfig& cfg, std::string_view sub, std::initializer_list<WireModel> allowed) {
    for (WireModel m : allowed)
        if (cfg.wire.model == m) return;
    std::string list;
    for (WireModel m : allowed) list += (list.empty() ? "" : ", ") + std::string(to_string(m));
    throw ConfigError(0, std::string(sub) + " needs wire model " + list + " (got " + std::string(to_string(cfg.wire.model)) +
                             ")");
}

BeanStripState bean_state(const ScenarioConfig& cfg) {
    auto m = cfg.material();
    double jc = cfg.wire.jc ? *cfg.wire.jc : (m ? m->jc : 0.0);
    return BeanStripState(cfg.wire.halfWidth, cfg.wire.thickness.value_or(0.0), jc);
}

// Scales for the optional normalized columns.
struct Normalization {
    double length = 1.0, field = 1.0;
    std::string lengthUnit, fieldUnit;
};

Normalization normalization(const ScenarioConfig& cfg) {
    const double I = cfg.drive.current;
    if (I == 0.0) throw ConfigError(0, "normalized output needs a nonzero current");
    if (cfg.wire.model == WireModel::Cylinder)
        return {cfg.wire.radius, constants::mu0 * I / (2 * pi * cfg.wire.radius), "R", "mu0I/(2pi R)"};
    return {cfg.wire.halfWidth, field_unit(I, cfg.wire.halfWidth), "w", "mu0I/(2pi^2 w)"};
}

// Meissner validity only means something for a superconductor in the
// Meissner state; mixed-state and normal wires get no verdict.
std::optional<Material> validity_material(const ScenarioConfig& cfg) {
    switch (cfg.wire.model) {
        case WireModel::MeissnerThin:
        case WireModel::Bem: return cfg.material();
        case WireModel::Cylinder:
            return cfg.wire.state == WireState::Superconducting ? cfg.material() : std::nullopt;
        default: return std::nullopt;
    }
}

std::vector<double> log_space(double lo, double hi, std::size_t n) {
    std::vector<double> v(n);
    for (std::size_t k = 0; k < n; ++k)
        v[k] = lo * std::pow(hi / lo, static_cast<double>(k) / static_cast<double>(n - 1));
    v.back() = hi;
    return v;
}

std::string verdict_cell(const std::optional<bool>& v) {
    if (!v) return "na";
    return *v ? "1" : "0";
}

bool meets(const TrapReport& r, const TrapConfig& t) {
    return r.depth >= t.depthThreshold && r.gradientZ >= t.gradientThreshold;
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

// --- subcommands -----------------------------------------------------------

ScenarioOutput field_map_output(const ScenarioConfig& cfg, Execution exec) {
    if (!cfg.grid) throw ConfigError(0, "field-map needs a [grid] section");
    auto src = build_source(cfg, exec);
    TrapScene scene = build_scene(cfg, src);
    auto samples = field_map(*src, scene.bias, *cfg.grid, exec, true);

    CsvTable t;
    t.columns = {"x", "z", "Bx", "Bz", "Bmod"};
    t.units = {"m", "m", "T", "T", "T"};
    std::optional<Normalization> n;
    if (cfg.output.normalized) {
        n = normalization(cfg);
        for (const char* c : {"x_norm", "z_norm"}) {
            t.columns.push_back(c);
            t.units.push_back(n->lengthUnit);
        }
        for (const char* c : {"Bx_norm", "Bz_norm", "Bmod_norm"}) {
            t.columns.push_back(c);
            t.units.push_back(n->fieldUnit);
        }
    }
    for (const auto& s : samples) {
        double mod = norm(s.B);
        std::vector<CsvCell> row{s.position.x, s.position.z, s.B.x, s.B.z, mod};
        if (n) {
            row.insert(row.end(), {s.position.x / n->length, s.position.z / n->length, s.B.x / n->field,
                                   s.B.z / n->field, mod / n->field});
        }
        t.add_row(std::move(row));
    }
    ScenarioOutput out;
    out.tables.push_back({"field_map.csv", std::move(t)});
    out.summary = "field map: " + std::to_string(samples.size()) + " points, " + src->describe();
    return out;
}

ScenarioOutput trap_output(const ScenarioConfig& cfg, Execution exec) {
    auto src = build_source(cfg, exec);
    TrapScene scene = build_scene(cfg, src);
    TrapReport r = find_trap(scene);
    if (auto m = validity_material(cfg)) {
        MeissnerVerdict v = meissner_validity(scene, *m);
        r.valid = v.valid;
        for (const auto& why : v.reasons) r.validityNote += (r.validityNote.empty() ? "" : "; ") + why;
    }
    const double uK = constants::kB / units::microkelvin;
    CsvTable t;
    t.columns = {"z_t", "x_t", "bias_G", "bias_z_G", "Bmin_G", "grad_Gpercm", "grad_x_Gpercm", "depth_uK",
                 "limiting_direction", "barrier_toward_uK", "barrier_away_uK", "barrier_lateral_uK", "valid",
                 "meets_thresholds", "note"};
    t.units = {"m", "m", "G", "G", "G", "G/cm", "G/cm", "uK", "1", "uK", "uK", "uK", "1", "1", "1"};
    t.add_row({r.height, r.position.x, -scene.bias.x / units::gauss, scene.bias.z / units::gauss,
               r.fieldAtMin / units::gauss, r.gradientZ / units::gauss_per_cm, r.gradientX / units::gauss_per_cm,
               r.depth / units::microkelvin, std::string(to_string(r.depthLimitingDirection)),
               r.depthDetail.barrierToward / uK, r.depthDetail.barrierAway / uK, r.depthDetail.barrierLateral / uK,
               verdict_cell(r.valid), meets(r, cfg.trap) ? std::string("1") : std::string("0"), r.validityNote});

    ScenarioOutput out;
    out.tables.push_back({"trap.csv", std::move(t)});
    std::ostringstream os;
    os << "trap at z_t = " << fmt(r.height) << " m (" << fmt(r.height / src->length_scale())
       << " in units of the wire scale), x = " << fmt(r.position.x) << " m\n"
       << "bias (" << fmt(scene.bias.x / units::gauss) << ", " << fmt(scene.bias.z / units::gauss) << ") G, |B|min "
       << fmt(r.fieldAtMin / units::gauss) << " G\n"
       << "gradient z " << fmt(r.gradientZ / units::gauss_per_cm) << " G/cm, x "
       << fmt(r.gradientX / units::gauss_per_cm) << " G/cm\n"
       << "depth " << fmt(r.depth / units::microkelvin) << " uK (limited " << to_string(r.depthLimitingDirection)
       << ")";
    if (r.valid) os << "\nMeissner validity: " << (*r.valid ? "ok" : "violated") << (r.validityNote.empty() ? "" : " (" + r.validityNote + ")");
    out.summary = os.str();
    return out;
}

ScenarioOutput trap_scan_output(const ScenarioConfig& cfg, Execution exec) {
    if (!cfg.scan) throw ConfigError(0, "trap-scan needs a [scan] section");
    auto src = build_source(cfg, exec);
    TrapScene scene = build_scene(cfg, src);
    ScanOptions opt;
    opt.material = validity_material(cfg);
    opt.exec = exec;
    auto heights = cfg.scan->heights();
    auto rows = scan_trap_parameters(scene, heights, opt);

    CsvTable t;
    t.columns = {"z_t", "bias_G", "grad_Gpercm", "depth_uK", "limiting_direction", "valid",
                 "grad_x_Gpercm", "Bmin_G", "x_t", "meets_thresholds", "note"};
    t.units = {"m", "G", "G/cm", "uK", "1", "1", "G/cm", "G", "m", "1", "1"};
    if (cfg.output.normalized) {
        t.columns.push_back("z_t_norm");
        t.units.push_back(cfg.wire.model == WireModel::Cylinder ? "R" : "w");
    }
    double lo = nan, hi = nan;
    std::size_t good = 0;
    for (const auto& row : rows) {
        std::vector<CsvCell> cells;
        if (row.report) {
            const TrapReport& r = *row.report;
            bool ok = meets(r, cfg.trap);
            if (ok) {
                ++good;
                if (std::isnan(lo)) lo = row.zTarget;
                hi = row.zTarget;
            }
            cells = {row.zTarget, row.bias / units::gauss, r.gradientZ / units::gauss_per_cm,
                     r.depth / units::microkelvin, std::string(to_string(r.depthLimitingDirection)),
                     verdict_cell(r.valid), r.gradientX / units::gauss_per_cm, r.fieldAtMin / units::gauss,
                     r.position.x, ok ? std::string("1") : std::string("0"), r.validityNote};
        } else {
            cells = {row.zTarget, row.bias / units::gauss, nan, nan, std::string("none"), std::string("na"),
                     nan, nan, nan, std::string("0"), row.error};
        }
        if (cfg.output.normalized) cells.push_back(row.zTarget / cfg.length_scale());
        t.add_row(std::move(cells));
    }
    ScenarioOutput out;
    out.tables.push_back({"trap_scan.csv", std::move(t)});
    std::ostringstream os;
    os << "trap scan: " << rows.size() << " heights, " << good << " meet depth >= "
       << fmt(cfg.trap.depthThreshold / units::microkelvin) << " uK and gradient >= "
       << fmt(cfg.trap.gradientThreshold / units::gauss_per_cm) << " G/cm";
    if (good) os << "; window " << fmt(lo) << " m to " << fmt(hi) << " m";
    out.summary = os.str();
    return out;
}

ScenarioOutput bean_profile_output(const ScenarioConfig& cfg) {
    require_model(cfg, "bean-profile", {WireModel::Bean});
    BeanStripState state = bean_state(cfg);
    const double w = state.half_width(), Jc = state.sheet_critical_current(), Ic = state.critical_current();
    CsvTable t;
    t.columns = {"I_Ic", "x_w", "J_Jc"};
    t.units = {"1", "w", "1"};
    const std::size_t n = cfg.bean.points;
    for (double ratio : cfg.bean.ratios) {
        SheetCurrentProfile p = virgin_profile(state, ratio * Ic);
        for (std::size_t k = 0; k < n; ++k) {
            double u = -1.0 + 2.0 * static_cast<double>(k) / static_cast<double>(n - 1);
            t.add_row({ratio, u, p(u * w) / Jc});
        }
    }
    ScenarioOutput out;
    out.tables.push_back({"bean_profile.csv", std::move(t)});
    out.summary = "Bean virgin profiles for " + std::to_string(cfg.bean.ratios.size()) + " current ratios, Ic = " +
                  fmt(Ic) + " A";
    return out;
}

ScenarioOutput remnant_output(const ScenarioConfig& cfg, Execution exec) {
    require_model(cfg, "remnant", {WireModel::Bean});
    BeanStripState state = bean_state(cfg);
    const double w = state.half_width(), Jc = state.sheet_critical_current();
    const double Imax = cfg.bean.cycleRatio * state.critical_current();
    if (!(cfg.bean.zMin > 0) || !(cfg.bean.zMax > cfg.bean.zMin))
        throw ConfigError(0, "[bean] needs 0 < z_min < z_max");
    SheetCurrentProfile peak = virgin_profile(state, Imax);
    SheetCurrentProfile rem = cycle_profile(state, Imax, 0.0);

    auto zs = log_space(cfg.bean.zMin, cfg.bean.zMax, cfg.bean.nz);
    std::vector<Vec2> Bp(zs.size()), Br(zs.size());
    for_each_index(zs.size(), exec, [&](std::size_t k) {
        Bp[k] = field_from_profile(peak, {0.0, zs[k]}).B;
        Br[k] = field_from_profile(rem, {0.0, zs[k]}).B;
    });
    CsvTable t;
    t.columns = {"z", "z_w", "Bx_peak", "Bx_remnant", "ratio", "ratio_z2"};
    t.units = {"m", "w", "T", "T", "1", "1"};
    for (std::size_t k = 0; k < zs.size(); ++k) {
        double ratio = norm(Br[k]) / norm(Bp[k]);
        double zw = zs[k] / w;
        t.add_row({zs[k], zw, Bp[k].x, Br[k].x, ratio, ratio * zw * zw});
    }
    CsvTable prof;
    prof.columns = {"x_w", "J_Jc_peak", "J_Jc_remnant"};
    prof.units = {"w", "1", "1"};
    const std::size_t n = cfg.bean.points;
    for (std::size_t k = 0; k < n; ++k) {
        double u = -1.0 + 2.0 * static_cast<double>(k) / static_cast<double>(n - 1);
        prof.add_row({u, peak(u * w) / Jc, rem(u * w) / Jc});
    }
    ScenarioOutput out;
    out.tables.push_back({"remnant.csv", std::move(t)});
    out.tables.push_back({"remnant_profile.csv", std::move(prof)});
    out.summary = "remnant field after 0 -> " + fmt(cfg.bean.cycleRatio) + " Ic -> 0, " + std::to_string(zs.size()) +
                  " heights";
    return out;
}

ScenarioOutput cylinder_output(const ScenarioConfig& cfg, Execution exec) {
    require_model(cfg, "cylinder", {WireModel::Cylinder});
    auto src = build_source(cfg, exec);
    TrapScene scene = build_scene(cfg, src);
    const double R = cfg.wire.radius, I = cfg.drive.current;
    const auto& cc = cfg.cylinder;
    if (!(cc.rMin >= R) || !(cc.rMax > cc.rMin)) throw ConfigError(0, "[cylinder] needs R <= r_min < r_max");

    std::vector<double> rs(cc.nr), ths(cc.ntheta);
    for (std::size_t i = 0; i < cc.nr; ++i)
        rs[i] = cc.rMin + (cc.rMax - cc.rMin) * static_cast<double>(i) / static_cast<double>(cc.nr - 1);
    for (std::size_t j = 0; j < cc.ntheta; ++j)
        ths[j] = 2 * pi * static_cast<double>(j) / static_cast<double>(cc.ntheta - 1);
    std::vector<PolarField> vals(cc.nr * cc.ntheta);
    for_each_index(vals.size(), exec, [&](std::size_t k) {
        double r = rs[k / cc.ntheta], th = ths[k % cc.ntheta];
        Vec2 rhat{std::sin(th), std::cos(th)}, that{std::cos(th), -std::sin(th)};
        Vec2 B = src->field(r * rhat, scene.bias);
        vals[k] = {dot(B, rhat), dot(B, that)};
    });
    CsvTable polar;
    polar.columns = {"r", "theta", "Br", "Btheta", "Bmod"};
    polar.units = {"m", "rad", "T", "T", "T"};
    for (std::size_t k = 0; k < vals.size(); ++k)
        polar.add_row({rs[k / cc.ntheta], ths[k % cc.ntheta], vals[k].Br, vals[k].Btheta,
                       std::hypot(vals[k].Br, vals[k].Btheta)});

    ScenarioOutput out;
    out.tables.push_back({"cylinder_polar.csv", std::move(polar)});
    if (I != 0.0) {
        auto zs = cfg.scan ? cfg.scan->heights() : log_space(0.01 * R, 10 * R, 50);
        CsvTable bias;
        bias.columns = {"z_t", "z_t_R", "B0_normal", "B0_superconducting", "reduction"};
        bias.units = {"m", "R", "T", "T", "1"};
        for (double z : zs) {
            double bn = required_bias_cylinder(z, I, R, WireState::Normal);
            double bs = required_bias_cylinder(z, I, R, WireState::Superconducting);
            bias.add_row({z, z / R, bn, bs, 1.0 - bs / bn});
        }
        out.tables.push_back({"cylinder_bias.csv", std::move(bias)});
    }
    out.summary = "cylinder: " + src->describe() + ", bias (" + fmt(scene.bias.x) + ", " + fmt(scene.bias.z) + ") T";
    return out;
}

ScenarioOutput bem_output(const ScenarioConfig& cfg, Execution exec) {
    require_model(cfg, "bem", {WireModel::Bem});
    auto src = std::static_pointer_cast<const BemSource>(build_source(cfg, exec));
    TrapScene scene = build_scene(cfg, src);
    const BemSolver& solver = src->solver();
    BemSolution sol = solver.solve(scene.bias, cfg.drive.current);
    const SurfaceMesh& mesh = solver.mesh();
    auto s = mesh.midpoint_arclengths();
    auto K = surface_current(sol);
    auto Bs = surface_field(sol);

    CsvTable surf;
    surf.columns = {"panel", "s", "x", "z", "psi", "dAdn", "K", "Bsurf"};
    surf.units = {"1", "m", "m", "m", "T m", "T", "A/m", "T"};
    for (std::size_t i = 0; i < mesh.size(); ++i)
        surf.add_row({static_cast<double>(i), s[i], mesh[i].midpoint.x, mesh[i].midpoint.z, sol.psiSurface[i],
                      sol.dAdnSurface[i], K[i], Bs[i]});

    Grid g;
    if (cfg.grid) {
        g = *cfg.grid;
    } else {
        const double w = cfg.wire.halfWidth, top = src->surface_level();
        g = {-3 * w, 3 * w, 61, top + 0.05 * w, top + 3 * w, 41};
    }
    auto samples = field_map(*src, scene.bias, g, exec, true);
    CsvTable field;
    field.columns = {"x", "z", "Bx", "Bz", "Bmod"};
    field.units = {"m", "m", "T", "T", "T"};
    for (const auto& p : samples) field.add_row({p.position.x, p.position.z, p.B.x, p.B.z, norm(p.B)});

    ScenarioOutput out;
    out.tables.push_back({"bem_surface.csv", std::move(surf)});
    out.tables.push_back({"bem_field.csv", std::move(field)});
    std::ostringstream os;
    os << "BEM: " << mesh.size() << " panels, rcond scalar " << fmt(solver.scalar_rcond()) << ", vector "
       << fmt(solver.vector_rcond());
    try {
        TrapReport r = find_trap(scene);
        os << "\ntrap at " << fmt(r.height) << " m above the top face (" << fmt(r.height / cfg.wire.halfWidth)
           << " w)";
    } catch (const NoTrapError& e) {
        os << "\nno trap: " << e.what();
    }
    out.summary = os.str();
    return out;
}

}  // namespace

bool is_subcommand(std::string_view name) {
    return std::find(std::begin(kSubcommands), std::end(kSubcommands), name) != std::end(kSubcommands);
}

std::shared_ptr<const FieldSource> build_source(const ScenarioConfig& cfg, Execution exec) {
    const auto& w = cfg.wire;
    const double I = cfg.drive.current;
    switch (w.model) {
        case WireModel::MeissnerThin:
            return std::make_shared<SheetSource>(meissner_profile(I, w.halfWidth), w.thickness, true);
        case WireModel::NormalThin:
            return std::make_shared<SheetSource>(normal_profile(I, w.halfWidth), w.thickness, false);
        case WireModel::Bean: {
            BeanStripState state = bean_state(cfg);
            SheetCurrentProfile p = cfg.drive.imax ? cycle_profile(state, *cfg.drive.imax, I) : virgin_profile(state, I);
            return std::make_shared<SheetSource>(std::move(p), w.thickness, false);
        }
        case WireModel::Cylinder:
            return std::make_shared<CylinderSource>(w.radius, I, w.state);
        case WireModel::Bem: {
            StripGeometry g = w.cornerRadius ? StripGeometry{w.halfWidth, *w.thickness, *w.cornerRadius}
                                             : StripGeometry::with_default_rounding(w.halfWidth, *w.thickness);
            g.validate();
            auto solver = std::make_shared<const BemSolver>(mesh_rounded_rectangle(g, w.panels), exec);
            return std::make_shared<BemSource>(std::move(solver), I);
        }
    }
    throw InvalidArgument("unknown wire model");
}

TrapScene build_scene(const ScenarioConfig& cfg, std::shared_ptr<const FieldSource> source) {
    TrapScene scene;
    scene.source = std::move(source);
    scene.atom = lookup_atom(cfg.trap.atom);
    scene.gravity = cfg.trap.gravity != GravityMode::Off;
    scene.gravityDirection = cfg.trap.gravity == GravityMode::Toward ? Vec2{0.0, -1.0} : Vec2{0.0, 1.0};
    scene.bias = cfg.drive.bias;
    if (cfg.drive.biasAuto) {
        scene.bias.x = 0.0;
        scene.bias.x = -required_bias(scene, *cfg.trap.height);
    }
    return scene;
}

CsvTable materials_table(const MaterialDatabase& db) {
    CsvTable t;
    t.columns = {"name", "Tc", "Bc1", "Bc2", "jc", "Bc1_c"};
    t.units = {"1", "K", "T", "T", "A/m2", "T"};
    for (const auto& name : db.names()) {
        const Material& m = db.lookup(name);
        t.add_row({m.name, m.Tc, m.Bc1, m.Bc2, m.jc, m.Bc1_c.value_or(nan)});
    }
    return t;
}

ScenarioOutput compute_scenario(const ScenarioConfig& cfg, std::string_view sub, Execution exec) {
    if (sub == "field-map") return field_map_output(cfg, exec);
    if (sub == "trap") return trap_output(cfg, exec);
    if (sub == "trap-scan") return trap_scan_output(cfg, exec);
    if (sub == "bean-profile") return bean_profile_output(cfg);
    if (sub == "remnant") return remnant_output(cfg, exec);
    if (sub == "cylinder") return cylinder_output(cfg, exec);
    if (sub == "bem") return bem_output(cfg, exec);
    if (sub == "materials") {
        ScenarioOutput out;
        out.tables.push_back({"materials.csv", materials_table(cfg.materials)});
        out.summary = std::to_string(cfg.materials.names().size()) + " materials";
        return out;
    }
    throw UnknownEntry("unknown subcommand '" + std::string(sub) + "'");
}

std::vector<std::string> run_scenario(const ScenarioConfig& cfg, std::string_view sub, Execution exec,
                                      std::string* summary) {
    ScenarioOutput out = compute_scenario(cfg, sub, exec);
    std::error_code ec;
    std::filesystem::create_directories(cfg.output.dir, ec);
    if (ec) throw IoError("cannot create output directory '" + cfg.output.dir + "': " + ec.message());
    std::vector<std::string> paths;
    for (const auto& nt : out.tables) {
        std::string path = (std::filesystem::path(cfg.output.dir) / nt.file).string();
        write_csv_file(path, nt.table);
        paths.push_back(path);
    }
    if (summary) *summary = out.summary;
    return paths;
}

}  // namespace scmag
