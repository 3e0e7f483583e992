#include "cw/job.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include "cw/abelian.hpp"

namespace cw::job {

using groups::Built;
using groups::FiniteGroup;
using groups::Subgroup;

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty() || !s.empty()) out.push_back(cur);
  return out;
}

long parse_long(const std::string& s) {
  try {
    std::size_t pos = 0;
    long v = std::stol(s, &pos);
    require(pos == s.size(), Errc::ParseError, "bad integer '" + s + "'");
    return v;
  } catch (const std::exception&) {
    fail(Errc::ParseError, "bad integer '" + s + "'");
  }
}

/// "3,9,5" or "3^2,5^2" -> cyclic factor orders.
std::vector<long> parse_invariants(const std::string& s) {
  std::vector<long> out;
  for (const auto& tok : split(s, ',')) {
    require(!tok.empty(), Errc::ParseError, "empty invariant token");
    auto caret = tok.find('^');
    if (caret == std::string::npos) {
      out.push_back(parse_long(tok));
    } else {
      long p = parse_long(tok.substr(0, caret));
      long e = parse_long(tok.substr(caret + 1));
      require(e >= 0 && e <= 62, Errc::ParseError, "exponent out of range");
      out.push_back(power_long(p, static_cast<int>(e)));
    }
  }
  return out;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), Errc::IOError, "cannot open '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    fail(Errc::ParseError, "bad JSON in '" + path + "': " + e.what());
  }
  return j;
}

json parse_spec_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    fail(Errc::ParseError, std::string("bad JSON spec: ") + e.what());
  }
}

std::vector<groups::Permutation> perms_from_json(const json& arr) {
  require(arr.is_array(), Errc::ParseError, "expected an array of permutations");
  std::vector<groups::Permutation> out;
  for (const auto& p : arr) {
    require(p.is_array(), Errc::ParseError, "a permutation must be an array");
    groups::Permutation perm;
    for (const auto& v : p) perm.images.push_back(v.get<int>());
    out.push_back(std::move(perm));
  }
  return out;
}

Built built_from_json(const json& spec, std::size_t cap);

Built built_from_builder(const json& spec, std::size_t cap) {
  const std::string b = spec.at("builder").get<std::string>();
  auto invariants = [&](const char* primary, const char* alias) {
    const json& j = spec.contains(primary) ? spec.at(primary) : spec.at(alias);
    std::vector<long> inv;
    for (const auto& v : j) inv.push_back(v.get<long>());
    return inv;
  };
  if (b == "cyclic") return groups::build_cyclic(spec.at("n").get<long>(), cap);
  if (b == "abelian") return groups::build_abelian(invariants("invariants", "abelian"), cap);
  if (b == "dihedral") return groups::build_dihedral(spec.at("n").get<long>(), cap);
  if (b == "symmetric") return groups::build_symmetric(spec.at("n").get<int>(), cap);
  if (b == "gen_dihedral")
    return groups::build_gen_dihedral(invariants("invariants", "abelian"), cap);
  if (b == "semidirect_abelian") {
    std::vector<std::vector<long>> matrix;
    const json& mj =
        spec.contains("matrix") ? spec.at("matrix") : spec.at("matrices").at(0);
    for (const auto& row : mj) {
      std::vector<long> r;
      for (const auto& v : row) r.push_back(v.get<long>());
      matrix.push_back(std::move(r));
    }
    return groups::build_semidirect_abelian(invariants("invariants", "abelian"),
                                            matrix, spec.at("q").get<long>(),
                                            cap);
  }
  if (b == "direct_product") {
    std::vector<Built> factors;
    for (const auto& f : spec.at("factors")) factors.push_back(built_from_json(f, cap));
    return groups::build_direct_product(factors, cap);
  }
  fail(Errc::ParseError, "unknown builder '" + b + "'");
}

Built built_from_json(const json& spec, std::size_t cap) {
  require(spec.is_object(), Errc::ParseError, "group spec must be an object");
  if (spec.contains("builder")) return built_from_builder(spec, cap);
  require(spec.contains("degree") && spec.contains("generators"),
          Errc::ParseError, "group spec needs degree and generators");
  const int degree = spec.at("degree").get<int>();
  auto gens = perms_from_json(spec.at("generators"));
  FiniteGroup G = FiniteGroup::generate(degree, gens, cap);
  Built b{std::move(G), {}, "", ""};
  b.name = "G" + std::to_string(b.group.order());
  b.base = {b.group.identity()};
  b.base_name = "C1";
  return b;
}

Built built_from_shorthand(const std::string& s, std::size_t cap) {
  auto colon = s.find(':');
  require(colon != std::string::npos, Errc::ParseError,
          "builder shorthand must be name:params");
  const std::string name = s.substr(0, colon);
  const std::string params = s.substr(colon + 1);
  if (name == "cyclic") return groups::build_cyclic(parse_long(params), cap);
  if (name == "dihedral") return groups::build_dihedral(parse_long(params), cap);
  if (name == "symmetric")
    return groups::build_symmetric(static_cast<int>(parse_long(params)), cap);
  if (name == "abelian") return groups::build_abelian(parse_invariants(params), cap);
  if (name == "gen_dihedral")
    return groups::build_gen_dihedral(parse_invariants(params), cap);
  fail(Errc::ParseError, "unknown builder shorthand '" + name + "'");
}

bool looks_like_path(const std::string& s) {
  if (s.empty()) return false;
  if (s[0] == '@') return true;
  return s.size() > 5 && s.compare(s.size() - 5, 5, ".json") == 0;
}

}  // namespace

LoadedGroup load_group_spec(const std::string& group_spec,
                            const std::string& normal_spec,
                            std::size_t order_cap) {
  require(!group_spec.empty(), Errc::ParseError, "empty group spec");
  json spec_json;
  Built built = [&]() -> Built {
    if (looks_like_path(group_spec)) {
      spec_json = read_json_file(group_spec[0] == '@' ? group_spec.substr(1)
                                                      : group_spec);
      return built_from_json(spec_json, order_cap);
    }
    if (group_spec.front() == '{') {
      spec_json = parse_spec_text(group_spec);
      return built_from_json(spec_json, order_cap);
    }
    return built_from_shorthand(group_spec, order_cap);
  }();

  LoadedGroup out{std::move(built.group), std::nullopt, built.name,
                  built.base_name};

  auto set_normal = [&](Subgroup N, std::string name) {
    require(groups::is_subgroup_normal(out.G, N), Errc::NotNormal,
            "the designated subgroup is not normal");
    require(groups::is_nilpotent(out.G, N), Errc::NotNilpotent,
            "the designated subgroup is not nilpotent");
    out.N = std::move(N);
    out.normal_name = std::move(name);
  };

  if (!normal_spec.empty()) {
    if (normal_spec == "cyclic-part" || normal_spec == "base") {
      require(!built.base.empty(), Errc::ParseError,
              "this group spec has no distinguished base subgroup");
      set_normal(built.base, built.base_name);
    } else if (normal_spec == "group") {
      set_normal(groups::whole_group(out.G), out.name);
    } else {
      json j = looks_like_path(normal_spec)
                   ? read_json_file(normal_spec[0] == '@'
                                        ? normal_spec.substr(1)
                                        : normal_spec)
                   : parse_spec_text(normal_spec);
      std::vector<int> gen_ids;
      for (const auto& perm : perms_from_json(j)) {
        int id = out.G.index_of(perm);
        require(id >= 0, Errc::ParseError,
                "normal-subgroup generator is not a group element");
        gen_ids.push_back(id);
      }
      Subgroup N = groups::subgroup_generate(out.G, gen_ids);
      set_normal(N, groups::subgroup_name(out.G, N));
    }
  } else if (spec_json.is_object() && spec_json.contains("normal_subgroup")) {
    std::vector<int> gen_ids;
    for (const auto& perm : perms_from_json(spec_json.at("normal_subgroup"))) {
      int id = out.G.index_of(perm);
      require(id >= 0, Errc::ParseError,
              "normal-subgroup generator is not a group element");
      gen_ids.push_back(id);
    }
    Subgroup N = groups::subgroup_generate(out.G, gen_ids);
    set_normal(N, groups::subgroup_name(out.G, N));
  }
  return out;
}

// ---- serialization ---------------------------------------------------------

json system_to_json(const constraints::System& system) {
  const FiniteGroup& G = *system.candidate.G;
  json vars = json::array();
  for (int cid : system.candidate.variable_classes) {
    const auto& cls = G.classes()[cid];
    vars.push_back(json{{"rep_perm", G.element(cls.rep).images},
                        {"class_size", cls.members.size()},
                        {"centralizer_order", cls.centralizer_order}});
  }
  json rows = json::array();
  for (const auto& row : system.rows) {
    json coeffs = json::array();
    for (const Int& c : row.coeffs) coeffs.push_back(c.get_str());
    rows.push_back(json{{"coeffs", coeffs},
                        {"rel", row.rel == constraints::Rel::EQ ? "EQ" : "GEQ"},
                        {"rhs", row.rhs.get_str()},
                        {"provenance", row.provenance}});
  }
  return json{{"variables", vars}, {"rows", rows}};
}

constraints::System system_from_json(const json& j) {
  constraints::System sys;
  const auto& vars = j.at("variables");
  sys.candidate.variable_classes.resize(vars.size());
  for (std::size_t i = 0; i < vars.size(); ++i)
    sys.candidate.variable_classes[i] = static_cast<int>(i);
  for (const auto& rj : j.at("rows")) {
    constraints::Row row;
    for (const auto& c : rj.at("coeffs"))
      row.coeffs.emplace_back(c.get<std::string>());
    row.rel = rj.at("rel").get<std::string>() == "EQ" ? constraints::Rel::EQ
                                                      : constraints::Rel::GEQ;
    row.rhs = Int(rj.at("rhs").get<std::string>());
    if (rj.contains("provenance"))
      row.provenance = rj.at("provenance").get<std::string>();
    require(row.coeffs.size() == vars.size(), Errc::ParseError,
            "row width does not match the variable count");
    sys.rows.push_back(std::move(row));
  }
  return sys;
}

json solutions_to_json(const feasibility::SolutionSet& solutions,
                       const feasibility::Verdict& verdict) {
  json sols = json::array();
  for (const auto& sol : solutions.solutions) {
    json v = json::array();
    for (const Int& x : sol) v.push_back(x.get_str());
    sols.push_back(std::move(v));
  }
  json out{{"solutions", sols},
           {"verdict", feasibility::verdict_name(verdict.tag)}};
  if (!verdict.note.empty()) out["note"] = verdict.note;
  if (!solutions.unbounded) {
    json bounds = json::array();
    for (const auto& [lo, hi] : solutions.bounds)
      bounds.push_back(json::array({rat_to_string(lo), rat_to_string(hi)}));
    out["lp_bounds"] = bounds;
  }
  return out;
}

json certificate_to_json(const certify::Certificate& certificate) {
  json w = json::object();
  for (const auto& [k, v] : certificate.witnesses) w[k] = v;
  return json{{"rule", certify::rule_name(certificate.rule)},
              {"witnesses", w}};
}

json group_ring_element_to_json(const FiniteGroup& G,
                                const groupring::Element& x) {
  json out = json::array();
  for (const auto& [g, c] : x)
    out.push_back(json{{"perm", G.element(g).images}, {"coeff", c.get_str()}});
  return out;
}

groupring::Element group_ring_element_from_json(const FiniteGroup& G,
                                                const json& j) {
  groupring::Element x;
  for (const auto& term : j) {
    groups::Permutation p;
    for (const auto& v : term.at("perm")) p.images.push_back(v.get<int>());
    const int id = G.index_of(p);
    require(id >= 0, Errc::ParseError, "term is not a group element");
    const json& cj = term.at("coeff");
    Int c = cj.is_string() ? Int(cj.get<std::string>()) : Int(cj.get<long>());
    groupring::add_term(x, id, c);
  }
  return x;
}

groupring::ClassFunction class_function_from_json(const json& j) {
  groupring::ClassFunction f;
  const auto& values = j.at("values");
  require(values.is_array() && !values.empty(), Errc::ParseError,
          "class function needs a non-empty values table");
  f.period = static_cast<int>(values.size());
  for (const auto& rowj : values) {
    std::vector<Rat> row;
    for (const auto& v : rowj)
      row.push_back(v.is_string() ? rat_from_string(v.get<std::string>())
                                  : Rat(v.get<long>()));
    f.values.push_back(std::move(row));
  }
  return f;
}

// ---- command implementations -------------------------------------------------

namespace {

/// Deterministic parallel map: results land by task index.
template <typename F>
void parallel_for(std::size_t count, int jobs, F&& body) {
  jobs = std::max(1, jobs);
  if (jobs == 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  const int workers = std::min<std::size_t>(jobs, count);
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      while (true) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        body(i);
      }
    });
  for (auto& t : pool) t.join();
}

struct ExtraCharacters {
  std::vector<std::pair<std::string, json>> tables;  // (name, table json)
};

ExtraCharacters load_extra_characters(const std::string& path) {
  ExtraCharacters out;
  if (path.empty()) return out;
  json j = read_json_file(path);
  require(j.is_array(), Errc::ParseError,
          "extra characters file must be a JSON array");
  for (const auto& t : j) {
    std::string name = t.contains("name") ? t.at("name").get<std::string>()
                                          : "table" + std::to_string(out.tables.size());
    out.tables.emplace_back(name, t);
  }
  return out;
}

json group_info(const FiniteGroup& G, const std::string& name) {
  return json{{"name", name},
              {"order", G.order()},
              {"degree", G.degree()}};
}

/// Solves one candidate: builds its system (plus any extra character rows),
/// enumerates and classifies.
json solve_candidate(const constraints::Candidate& cand,
                     const ExtraCharacters& extra, bool include_solutions,
                     std::vector<std::string>& errors) {
  const FiniteGroup& G = *cand.G;
  constraints::System sys = constraints::build_system(cand);

  for (const auto& [name, table] : extra.tables) {
    try {
      groupring::ClassFunction psi = class_function_from_json(table);
      const json& scope = table.at("scope");
      if (scope.is_string() && scope.get<std::string>() == "global") {
        if (psi.period != cand.order_m) continue;
        sys.rows.push_back(constraints::global_inequality_row(cand, psi));
        sys.rows.back().provenance = "global_psi(" + name + ")";
      } else if (scope.is_object() && scope.contains("prime")) {
        const long p = scope.at("prime").get<long>();
        const auto ctx = constraints::prime_context(cand, p);
        if (psi.period != ctx.m_pprime) continue;
        sys.rows.push_back(constraints::theorem_inequality_row(cand, p, psi));
        sys.rows.back().provenance = "theorem_psi(" + name + ")";
      } else {
        fail(Errc::ParseError, "table scope must be \"global\" or {\"prime\":p}");
      }
    } catch (const Error& e) {
      errors.push_back("character table '" + name + "': " + e.what());
    }
  }
  sys.rows = constraints::normalize_rows(std::move(sys.rows));

  json out = system_to_json(sys);
  out["anchor_perm"] = G.element(cand.anchor).images;
  json prime_ctx = json::array();
  for (long p : groups::subgroup_primes(G, cand.N)) {
    const auto ctx = constraints::prime_context(cand, p);
    json reps = json::array();
    for (const auto& cls : ctx.np_classes)
      reps.push_back(G.element(cls.rep).images);
    prime_ctx.push_back(json{{"p", p},
                             {"xhat_perm", G.element(ctx.xhat).images},
                             {"m_pprime", ctx.m_pprime},
                             {"np_class_reps", reps}});
  }
  out["prime_contexts"] = prime_ctx;

  if (include_solutions) {
    const auto sols = feasibility::enumerate_integer_solutions(sys);
    const auto verdict = feasibility::classify(sols);
    json sj = solutions_to_json(sols, verdict);
    out.update(sj);
  }
  return out;
}

std::vector<int> default_orders(const FiniteGroup& G, const Subgroup& N) {
  std::set<int> orders;
  for (int n : N) orders.insert(G.element_order(n));
  return std::vector<int>(orders.begin(), orders.end());
}

feasibility::VerdictTag worst(feasibility::VerdictTag a,
                              feasibility::VerdictTag b) {
  using T = feasibility::VerdictTag;
  if (a == T::UNBOUNDED_RELAXATION || b == T::UNBOUNDED_RELAXATION)
    return T::UNBOUNDED_RELAXATION;
  if (a == T::CANDIDATES_FOUND || b == T::CANDIDATES_FOUND)
    return T::CANDIDATES_FOUND;
  return T::SEHGAL_POSITIVE;
}

json run_pipeline(const LoadedGroup& g, const JobSpec& job,
                  bool include_solutions, std::vector<std::string>& errors,
                  feasibility::VerdictTag& verdict) {
  require(g.N.has_value(), Errc::ParseError,
          "this command needs a normal subgroup (--normal)");
  const FiniteGroup& G = g.G;
  const Subgroup& N = *g.N;
  const ExtraCharacters extra = load_extra_characters(job.extra_characters);

  std::vector<int> orders =
      job.orders.empty() ? default_orders(G, N) : job.orders;

  struct Task {
    int order;
    constraints::Candidate cand;
  };
  std::vector<Task> tasks;
  std::vector<std::pair<int, std::size_t>> per_order;  // (order, #candidates)
  for (int m : orders) {
    auto cands = constraints::variable_classes(G, N, m);
    per_order.emplace_back(m, cands.size());
    for (auto& c : cands) tasks.push_back(Task{m, std::move(c)});
  }

  std::vector<json> task_out(tasks.size());
  std::vector<std::vector<std::string>> task_err(tasks.size());
  parallel_for(tasks.size(), job.jobs, [&](std::size_t i) {
    try {
      task_out[i] = solve_candidate(tasks[i].cand, extra, include_solutions,
                                    task_err[i]);
    } catch (const std::exception& e) {
      task_out[i] = json{{"order", tasks[i].order},
                         {"variables", json::array()},
                         {"rows", json::array()},
                         {"verdict", "ERROR"}};
      task_err[i].push_back("order " + std::to_string(tasks[i].order) + ": " +
                            e.what());
    }
  });
  for (auto& errs : task_err)
    for (auto& e : errs) errors.push_back(std::move(e));

  json results = json::array();
  std::size_t cursor = 0;
  verdict = feasibility::VerdictTag::SEHGAL_POSITIVE;
  for (const auto& [m, count] : per_order) {
    json cands = json::array();
    feasibility::VerdictTag order_verdict =
        feasibility::VerdictTag::SEHGAL_POSITIVE;
    for (std::size_t c = 0; c < count; ++c, ++cursor) {
      const json& cj = task_out[cursor];
      if (include_solutions) {
        const std::string v = cj.at("verdict").get<std::string>();
        if (v == "CANDIDATES_FOUND")
          order_verdict = worst(order_verdict,
                                feasibility::VerdictTag::CANDIDATES_FOUND);
        else if (v == "UNBOUNDED_RELAXATION")
          order_verdict = worst(order_verdict,
                                feasibility::VerdictTag::UNBOUNDED_RELAXATION);
      }
      cands.push_back(cj);
    }
    json oj{{"order", m}, {"candidates", cands}};
    if (include_solutions)
      oj["verdict"] = feasibility::verdict_name(order_verdict);
    results.push_back(std::move(oj));
    verdict = worst(verdict, order_verdict);
  }
  return results;
}

json lattice_report(const std::string& invariants) {
  const auto factor_orders = parse_invariants(invariants);
  const abelian::Shape shape = abelian::Shape::from_invariants(factor_orders);
  const abelian::Lattice lattice(shape);
  const abelian::MValues m = lattice.m_values();
  const abelian::NValues n = abelian::n_values(shape);
  json cocyclic = json::array();
  for (const auto& K : lattice.cocyclic())
    cocyclic.push_back(json{{"index", K.index}, {"alpha", K.alpha}});
  return json{{"abelian", shape.to_string()},
              {"order", shape.order().get_str()},
              {"cocyclic", cocyclic},
              {"m_plus", m.m_plus.get_str()},
              {"m_minus", m.m_minus.get_str()},
              {"m_A", m.m_a.get_str()},
              {"alpha_A", n.alpha_a.get_str()},
              {"n_A", n.finite ? rat_to_string(n.n_a) : "inf"},
              {"n_A_minus", n.finite ? rat_to_string(n.n_minus) : "inf"}};
}

json classes_report(const LoadedGroup& g) {
  const FiniteGroup& G = g.G;
  json classes = json::array();
  for (const auto& cls : G.classes())
    classes.push_back(json{{"rep_perm", G.element(cls.rep).images},
                           {"size", cls.members.size()},
                           {"centralizer_order", cls.centralizer_order},
                           {"element_order", cls.element_order}});
  json out{{"group", group_info(G, g.name)}, {"classes", classes}};
  if (g.N.has_value()) {
    out["normal"] = json{{"name", g.normal_name}, {"order", g.N->size()}};
    json locals = json::array();
    for (const auto& local : groups::local_classes(G, *g.N))
      locals.push_back(local.class_ids);
    out["local_classes"] = locals;
  }
  return out;
}

json run_single_instance(const JobSpec& job, const LoadedGroup& g,
                         bool certify_first, int& exit_code);

json search_report(const JobSpec& job, int& exit_code) {
  std::vector<JobSpec> instances;
  if (job.family == "dihedral") {
    require(job.family_max >= job.family_min, Errc::ParseError,
            "search needs --min <= --max");
    for (long n = job.family_min; n <= job.family_max; ++n) {
      JobSpec inst = job;
      inst.command = "certify";
      inst.group = "dihedral:" + std::to_string(n);
      inst.normal = "cyclic-part";
      instances.push_back(std::move(inst));
    }
  } else if (job.family == "gen_dihedral") {
    require(!job.family_list.empty(), Errc::ParseError,
            "gen_dihedral search needs --list \"3,3;9,3\"");
    for (const auto& inv : split(job.family_list, ';')) {
      JobSpec inst = job;
      inst.command = "certify";
      inst.group = "gen_dihedral:" + inv;
      inst.normal = "base";
      instances.push_back(std::move(inst));
    }
  } else if (job.family == "semidirect_abelian") {
    // entries are builder specs (inline JSON or files), builder implied
    require(!job.family_list.empty(), Errc::ParseError,
            "semidirect_abelian search needs --list of specs");
    for (const auto& entry : split(job.family_list, ';')) {
      json spec = entry.front() == '{' ? parse_spec_text(entry)
                                       : read_json_file(entry);
      if (!spec.contains("builder")) spec["builder"] = "semidirect_abelian";
      JobSpec inst = job;
      inst.command = "certify";
      inst.group = spec.dump();
      inst.normal = "base";
      instances.push_back(std::move(inst));
    }
  } else {
    fail(Errc::ParseError, "unknown search family '" + job.family + "'");
  }

  std::vector<json> reports(instances.size());
  std::vector<int> codes(instances.size(), 0);
  parallel_for(instances.size(), job.jobs, [&](std::size_t i) {
    JobSpec inst = instances[i];
    inst.jobs = 1;  // instance-level parallelism only
    try {
      LoadedGroup g = load_group_spec(inst.group, inst.normal, inst.order_cap);
      reports[i] = run_single_instance(inst, g, /*certify_first=*/true,
                                       codes[i]);
    } catch (const Error& e) {
      reports[i] = json{{"group", inst.group}, {"error", e.what()}};
      codes[i] = 1;
    }
  });

  exit_code = 0;
  json results = json::array();
  for (std::size_t i = 0; i < reports.size(); ++i) {
    results.push_back(std::move(reports[i]));
    if (codes[i] == 1) exit_code = 1;
    if (codes[i] == 2 && exit_code != 1) exit_code = 2;
  }
  return json{{"command", "search"}, {"results", results}};
}

json run_single_instance(const JobSpec& job, const LoadedGroup& g,
                         bool certify_first, int& exit_code) {
  json report{{"command", certify_first ? "certify" : job.command},
              {"group", group_info(g.G, g.name)}};
  if (g.N.has_value())
    report["normal"] = json{{"name", g.normal_name}, {"order", g.N->size()}};
  std::vector<std::string> errors;
  exit_code = 0;

  const certify::Certificate zc = certify::certify_zc(g.G);
  report["zc_certificate"] = certificate_to_json(zc);

  certify::SehgalCertification sehgal;
  if (g.N.has_value()) {
    sehgal = certify::certify_sehgal(g.G, *g.N);
    json certs = json::array();
    for (const auto& c : sehgal.fired) certs.push_back(certificate_to_json(c));
    report["certificates"] = certs;
  }

  // a Zassenhaus-level certificate settles every V(ZG, N) instance of G
  const bool settled_by_certificate =
      sehgal.settled() || zc.rule != certify::Rule::NONE;

  if (certify_first && settled_by_certificate) {
    report["verdict"] = "SEHGAL_POSITIVE";
    report["settled_by"] =
        sehgal.settled() ? certify::rule_name(sehgal.primary().rule)
                         : certify::rule_name(zc.rule);
  } else {
    // fall back to (or directly run) the solve pipeline
    feasibility::VerdictTag verdict = feasibility::VerdictTag::SEHGAL_POSITIVE;
    report["results"] =
        run_pipeline(g, job, /*include_solutions=*/true, errors, verdict);
    report["verdict"] = feasibility::verdict_name(verdict);
    if (verdict != feasibility::VerdictTag::SEHGAL_POSITIVE) exit_code = 2;
  }
  report["errors"] = errors;
  if (!errors.empty()) exit_code = 1;
  return report;
}

}  // namespace

RunResult run(const JobSpec& job) {
  RunResult rr;
  try {
    if (job.command == "lattice") {
      require(!job.abelian.empty(), Errc::ParseError,
              "lattice needs --abelian invariants");
      rr.report = lattice_report(job.abelian);
      rr.report["command"] = "lattice";
      return rr;
    }
    if (job.command == "search") {
      rr.report = search_report(job, rr.exit_code);
      return rr;
    }

    LoadedGroup g = load_group_spec(job.group, job.normal, job.order_cap);
    if (job.command == "classes") {
      rr.report = classes_report(g);
      rr.report["command"] = "classes";
      return rr;
    }
    if (job.command == "inequalities") {
      std::vector<std::string> errors;
      feasibility::VerdictTag verdict =
          feasibility::VerdictTag::SEHGAL_POSITIVE;
      rr.report = json{{"command", "inequalities"},
                       {"group", group_info(g.G, g.name)}};
      if (g.N.has_value())
        rr.report["normal"] =
            json{{"name", g.normal_name}, {"order", g.N->size()}};
      rr.report["results"] =
          run_pipeline(g, job, /*include_solutions=*/false, errors, verdict);
      rr.report["errors"] = errors;
      if (!errors.empty()) rr.exit_code = 1;
      return rr;
    }
    if (job.command == "solve") {
      rr.report = run_single_instance(job, g, /*certify_first=*/false,
                                      rr.exit_code);
      rr.report["command"] = "solve";
      return rr;
    }
    if (job.command == "certify") {
      rr.report = run_single_instance(job, g, /*certify_first=*/true,
                                      rr.exit_code);
      return rr;
    }
    fail(Errc::ParseError, "unknown command '" + job.command + "'");
  } catch (const Error& e) {
    rr.report = json{{"command", job.command}, {"errors", json::array({e.what()})}};
    rr.exit_code = 1;
    return rr;
  }
}

// ---- export -------------------------------------------------------------------

namespace {

void csv_lines_for_instance(const json& inst, std::string& out) {
  const std::string group =
      inst.contains("group") && inst.at("group").is_object()
          ? inst.at("group").at("name").get<std::string>()
          : (inst.contains("group") ? inst.at("group").get<std::string>()
                                    : "?");
  const std::string normal =
      inst.contains("normal") ? inst.at("normal").at("name").get<std::string>()
                              : "";
  std::string cert = "NONE";
  if (inst.contains("zc_certificate")) {
    cert = inst.at("zc_certificate").at("rule").get<std::string>();
    if (cert == "NONE" && inst.contains("certificates") &&
        !inst.at("certificates").empty())
      cert = inst.at("certificates").at(0).at("rule").get<std::string>();
  }
  if (inst.contains("error")) {
    out += group + "," + normal + ",,,,ERROR," + cert + "\n";
    return;
  }
  if (!inst.contains("results")) {
    // settled by certificate, no per-order solves
    out += group + "," + normal + ",all,,," +
           inst.at("verdict").get<std::string>() + "," + cert + "\n";
    return;
  }
  for (const auto& res : inst.at("results")) {
    std::size_t vars = 0, rows = 0;
    for (const auto& cand : res.at("candidates")) {
      vars += cand.at("variables").size();
      rows += cand.at("rows").size();
    }
    const std::string verdict = res.contains("verdict")
                                    ? res.at("verdict").get<std::string>()
                                    : inst.at("verdict").get<std::string>();
    out += group + "," + normal + "," +
           std::to_string(res.at("order").get<int>()) + "," +
           std::to_string(vars) + "," + std::to_string(rows) + "," + verdict +
           "," + cert + "\n";
  }
}

}  // namespace

std::string report_to_csv(const json& report) {
  std::string out = "group,normal,order,variables,rows,verdict,certificate\n";
  if (report.contains("results") && report.contains("command") &&
      report.at("command") == "search") {
    for (const auto& inst : report.at("results"))
      csv_lines_for_instance(inst, out);
  } else if (report.contains("group")) {
    csv_lines_for_instance(report, out);
  }
  return out;
}

void export_report(const json& report, const std::string& format,
                   const std::string& out_path) {
  const std::string payload =
      format == "csv" ? report_to_csv(report) : report.dump(2) + "\n";
  if (out_path.empty()) return;
  std::ofstream out(out_path);
  require(out.good(), Errc::IOError, "cannot write '" + out_path + "'");
  out << payload;
  require(out.good(), Errc::IOError, "write failed for '" + out_path + "'");
}

}  // namespace cw::job
