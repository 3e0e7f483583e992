#pragma once

#include <map>
#include <string>
#include <vector>

#include "cw/groups.hpp"

namespace cw::certify {

enum class Rule {
  LOCAL_SEPARATION,
  AT_MOST_ONE_NONCYCLIC,
  MAIN,
  ONE_PRIME,
  SIMPLIFIED_BOUND,
  WEISS_NILPOTENT,
  ZC1,
  ZC2,
  NONE,
};

const char* rule_name(Rule rule);

struct Certificate {
  Rule rule = Rule::NONE;
  std::map<std::string, std::string> witnesses;
};

/// Fires when every local class of N is a single G-class; any hypothetical
/// unit then has exactly one variable, settled by the augmentation.
Certificate local_separation(const groups::FiniteGroup& G,
                             const groups::Subgroup& N);

/// All rules that apply to (G, N), in rule order; the first entry is the
/// primary certificate. Empty when nothing fires.
struct SehgalCertification {
  std::vector<Certificate> fired;

  bool settled() const { return !fired.empty(); }
  Certificate primary() const {
    return fired.empty() ? Certificate{} : fired.front();
  }
};

SehgalCertification certify_sehgal(const groups::FiniteGroup& G,
                                   const groups::Subgroup& N);

/// Zassenhaus-level rules: WEISS_NILPOTENT for nilpotent G, else a scan of
/// the normal nilpotent subgroups for ZC1 / ZC2.
Certificate certify_zc(const groups::FiniteGroup& G);

/// Every normal subgroup (joins of single-class normal closures), ascending.
std::vector<groups::Subgroup> normal_subgroups(const groups::FiniteGroup& G);

/// Number of non-cyclic Sylow subgroups of a nilpotent subgroup.
int noncyclic_sylow_count(const groups::FiniteGroup& G,
                          const groups::Subgroup& N);

/// max over (a, b) in A x B of [C_G(b) : C_G(ab)], with a maximizing pair;
/// computed both over all pairs and over class representatives only, the two
/// scans checked against each other.
struct CentralizerScan {
  long max_index = 1;
  int witness_a = 0;
  int witness_b = 0;
};

CentralizerScan centralizer_index_scan(const groups::FiniteGroup& G,
                                       const groups::Subgroup& N,
                                       const std::vector<long>& pi);

}  // namespace cw::certify
