#include <CLI11.hpp>

#include <iostream>

#include "cw/job.hpp"

namespace {

void add_common(CLI::App* cmd, cw::job::JobSpec& job) {
  cmd->add_option("--group", job.group,
                  "builder shorthand (dihedral:12, gen_dihedral:3,3, "
                  "cyclic:5, abelian:2,4, symmetric:4), inline JSON, or a "
                  ".json / @file path");
  cmd->add_option("--normal", job.normal,
                  "cyclic-part | base | group | inline JSON generator list | "
                  "@file");
  cmd->add_option("--jobs", job.jobs, "worker threads")->check(CLI::Range(1, 256));
  cmd->add_option("--order-cap", job.order_cap, "group order cap");
  cmd->add_option("--out", job.out_path, "write the report to this path");
  cmd->add_option("--format", job.format, "json | csv")
      ->check(CLI::IsMember({"json", "csv"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cliff-Weiss constraint toolkit for torsion units of integral "
               "group rings"};
  app.require_subcommand(1);

  cw::job::JobSpec job;

  auto* classes = app.add_subcommand(
      "classes", "conjugacy classes, centralizer orders and local classes");
  add_common(classes, job);

  auto* lattice = app.add_subcommand(
      "lattice", "cocyclic lattice and m/n values of a finite abelian group");
  lattice->add_option("--abelian", job.abelian,
                      "invariant list, e.g. 3,3 or 3^2,5^2");
  lattice->add_option("--out", job.out_path, "write the report to this path");
  lattice->add_option("--format", job.format, "json | csv");

  auto* inequalities = app.add_subcommand(
      "inequalities", "generate the constraint systems without solving");
  add_common(inequalities, job);
  inequalities->add_option("--order", job.orders, "unit orders (default: all)");
  inequalities->add_option("--extra-characters", job.extra_characters,
                           "JSON file with additional class-function tables");

  auto* solve = app.add_subcommand(
      "solve", "build the systems, enumerate integer solutions, classify");
  add_common(solve, job);
  solve->add_option("--order", job.orders, "unit orders (default: all)");
  solve->add_option("--extra-characters", job.extra_characters,
                    "JSON file with additional class-function tables");

  auto* certify = app.add_subcommand(
      "certify", "apply the theorem-level certificates, solve when none fire");
  add_common(certify, job);
  certify->add_option("--order", job.orders, "unit orders for the fallback");
  certify->add_option("--extra-characters", job.extra_characters,
                      "JSON file with additional class-function tables");

  auto* search = app.add_subcommand("search", "sweep a builder family");
  add_common(search, job);
  search->add_option("--family", job.family,
                     "dihedral | gen_dihedral | semidirect_abelian");
  search->add_option("--min", job.family_min, "first n (dihedral)");
  search->add_option("--max", job.family_max, "last n (dihedral)");
  search->add_option("--list", job.family_list,
                     "semicolon-separated entries: invariant lists for "
                     "gen_dihedral, builder specs for semidirect_abelian");

  CLI11_PARSE(app, argc, argv);

  if (classes->parsed()) job.command = "classes";
  if (lattice->parsed()) job.command = "lattice";
  if (inequalities->parsed()) job.command = "inequalities";
  if (solve->parsed()) job.command = "solve";
  if (certify->parsed()) job.command = "certify";
  if (search->parsed()) job.command = "search";

  // builders default to their distinguished base when a normal subgroup is
  // needed but none was requested
  if (job.normal.empty() &&
      (job.command == "solve" || job.command == "inequalities" ||
       job.command == "certify") &&
      !job.group.empty() && job.group.front() != '{' &&
      job.group.find(".json") == std::string::npos &&
      job.group.front() != '@')
    job.normal = "base";

  cw::job::RunResult result = cw::job::run(job);
  try {
    cw::job::export_report(result.report, job.format, job.out_path);
  } catch (const cw::Error& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
  if (job.out_path.empty()) {
    if (job.format == "csv")
      std::cout << cw::job::report_to_csv(result.report);
    else
      std::cout << result.report.dump(2) << "\n";
  }
  return result.exit_code;
}
