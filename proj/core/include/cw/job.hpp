#pragma once

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

#include "cw/certify.hpp"
#include "cw/constraints.hpp"
#include "cw/feasibility.hpp"
#include "cw/groupring.hpp"

namespace cw::job {

using json = nlohmann::json;

struct JobSpec {
  std::string command;  // classes | lattice | inequalities | solve | certify | search
  std::string group;    // builder shorthand, inline JSON, or @file / *.json path
  std::string normal;   // "", "cyclic-part" / "base", "group", inline JSON, @file
  std::vector<int> orders;        // empty = all element orders occurring in N
  std::string abelian;            // invariant list for `lattice`, e.g. "3,3" or "3^2,5"
  std::string extra_characters;   // path to a class-function table file
  int jobs = 1;
  std::size_t order_cap = groups::kDefaultOrderCap;
  // search sweep
  std::string family;             // dihedral | gen_dihedral
  long family_min = 1;
  long family_max = 0;
  std::string family_list;        // invariant lists "3,3;9,3" for gen_dihedral
  std::string out_path;
  std::string format = "json";    // json | csv
};

struct LoadedGroup {
  groups::FiniteGroup G;
  std::optional<groups::Subgroup> N;
  std::string name;
  std::string normal_name;
};

/// Parses a group spec (and optional normal-subgroup spec), builds the group
/// and validates the subgroup as normal and nilpotent.
LoadedGroup load_group_spec(const std::string& group_spec,
                            const std::string& normal_spec,
                            std::size_t order_cap);

struct RunResult {
  json report;
  int exit_code = 0;  // 0 settled positive, 2 candidates found, 1 error
};

RunResult run(const JobSpec& job);

/// One line per (group, N, order): order, #variables, #rows, verdict,
/// certificate rule.
std::string report_to_csv(const json& report);

/// Writes JSON or CSV; byte-stable for identical reports.
void export_report(const json& report, const std::string& format,
                   const std::string& out_path);

// ---- serialization (the constraint/solution JSON interfaces) --------------

json system_to_json(const constraints::System& system);
json solutions_to_json(const feasibility::SolutionSet& solutions,
                       const feasibility::Verdict& verdict);
json certificate_to_json(const certify::Certificate& certificate);
json group_ring_element_to_json(const groups::FiniteGroup& G,
                                const groupring::Element& x);
groupring::Element group_ring_element_from_json(const groups::FiniteGroup& G,
                                                const json& j);
/// {"scope": "global" | {"prime": p}, "values": [[...], ...]}
groupring::ClassFunction class_function_from_json(const json& j);

/// Rows of a serialized system, reattached to a candidate-free context for
/// the solver (variable count inferred from the JSON).
constraints::System system_from_json(const json& j);

}  // namespace cw::job
