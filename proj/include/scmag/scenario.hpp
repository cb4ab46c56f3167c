#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "scmag/config.hpp"
#include "scmag/csv.hpp"
#include "scmag/field_source.hpp"
#include "scmag/parallel.hpp"
#include "scmag/trap_analysis.hpp"

namespace scmag {

inline constexpr std::string_view kSubcommands[] = {"field-map", "trap",     "trap-scan", "bean-profile",
                                                   "remnant",   "cylinder", "bem",       "materials"};
bool is_subcommand(std::string_view name);

struct NamedTable {
    std::string file;  // name inside the output directory
    CsvTable table;
};

struct ScenarioOutput {
    std::vector<NamedTable> tables;
    std::string summary;  // human-readable, printed by the CLI
};

// Field source for the configured wire. The bem model assembles and
// factorizes once here.
std::shared_ptr<const FieldSource> build_source(const ScenarioConfig& cfg, Execution exec = Execution::Parallel);

// Trap scene for a source: atom, gravity and the configured bias (with
// bias_x = auto resolved through required_bias at trap.height).
TrapScene build_scene(const ScenarioConfig& cfg, std::shared_ptr<const FieldSource> source);

CsvTable materials_table(const MaterialDatabase& db);

// Computes the tables for one subcommand without touching the filesystem.
ScenarioOutput compute_scenario(const ScenarioConfig& cfg, std::string_view subcommand,
                                Execution exec = Execution::Parallel);

// compute_scenario plus writing every table into cfg.output.dir (created if
// needed). Returns the written paths.
std::vector<std::string> run_scenario(const ScenarioConfig& cfg, std::string_view subcommand,
                                      Execution exec = Execution::Parallel, std::string* summary = nullptr);

}  // namespace scmag
