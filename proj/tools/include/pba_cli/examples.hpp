#pragma once

#include "pba/pba.hpp"
#include "pba_cli/json_io.hpp"

#include <functional>
#include <string>
#include <vector>

namespace pba::examples {

// Scenarios with two outcomes "0","1" per measurement.
Scenario single_measurement();
Scenario two_compatible();
Scenario two_incompatible();
/// a-b and b-c compatible, a and c not.
Scenario path_three();
Scenario chsh();
/// 3x3 grid m00..m22; same row or same column compatible.
Scenario magic_square();
/// Four parties a..d with two measurements each.
Scenario bell_422();

EmpiricalModel pr_box();
/// PR boxes on (a,b) and on (c,d), independent.
EmpiricalModel two_pr_boxes();
/// Point mass on the all-zero outcome in every context.
EmpiricalModel chsh_deterministic();

GluedContextSpec glued_uv_uw();
/// Nine contexts of four atoms, each atom in exactly two contexts.
GluedContextSpec cabello_18();

/// Magic-square algebra with every row forced even, columns m*0 and m*1
/// forced even and column m*2 forced odd.
ExtensionSpec forced_magic_square_spec();
FinitePBA forced_magic_square();

/// Scenarios with at most four two-outcome measurements.
std::vector<std::pair<std::string, Scenario>> small_scenarios();

} // namespace pba::examples

namespace pba::cli {

struct ExampleEntry {
    std::string name;
    /// pba, scenario, model, state or extension.
    std::string kind;
    std::string summary;
    std::function<Json()> emit;
};

/// Sorted by name.
const std::vector<ExampleEntry>& example_registry();
const ExampleEntry* find_example(const std::string& name);

} // namespace pba::cli
