#include "addchain/report_json.hpp"

#include <bitset>

#include "addchain/chain_format.hpp"

namespace addchain::json {

namespace {

std::string binary(Value v) {
  std::string s = std::bitset<64>(v).to_string();
  return s.substr(std::min(s.find('1'), s.size() - 1));
}

}  // namespace

Json values(const Chain& chain) {
  Json out = Json::array();
  for (const Value v : chain.values()) out.push_back(v);
  return out;
}

Json search_result(const SearchResult& r, bool verbose) {
  Json out;
  out["n"] = r.n;
  out["ell"] = r.ell;
  out["witness"] = values(r.witness);
  if (verbose) {
    out["exact"] = r.exact;
    out["chain"] = format_chain(r.witness);
    out["nodes_expanded"] = r.nodes_expanded;
    Json hits = Json::object();
    for (const auto& hit : r.prunings_applied) hits[hit.name] = hit.count;
    out["prunings"] = hits;
  }
  return out;
}

Json bound_report(const BoundReport& r) {
  Json out;
  out["n"] = r.n;
  out["nu"] = r.nu_n;
  out["log2_n"] = r.log2_n;
  out["binary_ub"] = r.binary_ub;
  out["brauer_ub"] = r.brauer_ub;
  out["brauer_window"] = r.brauer_window;
  out["schonhage_lb"] = r.schonhage_lb;
  out["thurber_lb"] = r.thurber_lb ? Json(*r.thurber_lb) : Json(nullptr);
  out["ell"] = r.actual_ell ? Json(*r.actual_ell) : Json(nullptr);
  return out;
}

Json scholz_report(const ScholzReport& r) {
  return Json{{"n", r.n}, {"lhs", r.lhs}, {"rhs", r.rhs}, {"holds", r.holds}};
}

Json envelope(const TheoremEnvelope& e) {
  return Json{{"m", e.m},
              {"c", e.c},
              {"epsilon", e.epsilon},
              {"log_upper", e.log_upper},
              {"log_lower", e.log_lower}};
}

Json h_result(const HResult& r) {
  Json out{{"k", r.k}, {"h", r.h}};
  if (r.reachable) out["reachable"] = *r.reachable;
  return out;
}

Json count_result(const CountResult& r) { return Json{{"m", r.m}, {"r", r.r}, {"f", r.f}}; }

Json histogram(int m, const EllHistogram& h) {
  Json rows = Json::array();
  std::uint64_t total = 0;
  for (const auto& [l, count] : h) {
    total += count;
    rows.push_back(Json{{"ell", l}, {"count", count}, {"cumulative", total}});
  }
  return Json{{"m", m}, {"total", total}, {"histogram", rows}};
}

Json taxonomy(const StepTaxonomy& tax) {
  std::string kinds;
  for (const StepKind k : tax.kinds) kinds += to_char(k);
  return Json{{"m", tax.m},
              {"delta", tax.delta},
              {"target", tax.target},
              {"length", tax.length()},
              {"kinds", kinds},
              {"A", tax.A},
              {"B", tax.B},
              {"C", tax.C},
              {"D", tax.D}};
}

Json inequality(const InequalityReport& r) {
  return Json{{"lhs", r.lhs}, {"rhs", r.rhs}, {"holds", r.holds}};
}

Json lemma1(const Lemma1Report& r) {
  Json out = inequality(r);
  out["growth_lhs"] = r.growth_lhs;
  out["growth_rhs"] = r.growth_rhs;
  out["growth_holds"] = r.growth_holds;
  return out;
}

Json lemma2(const Lemma2Report& r) {
  Json out = inequality(r);
  out["degenerate"] = r.degenerate;
  return out;
}

Json lemma3(const Lemma3Report& r) {
  return Json{{"violations", r.violations}, {"holds", r.violations.empty()}};
}

Json blocks(const BlockStructure& b) {
  Json rows = Json::array();
  for (const Block& blk : b.blocks) {
    rows.push_back(Json{{"start", blk.start},
                        {"length", blk.length},
                        {"d_count", blk.d_count},
                        {"bc_count", blk.bc_count},
                        {"type", blk.type},
                        {"marked", blk.marked}});
  }
  return Json{{"blocks", rows}, {"K", b.K}, {"K1", b.K1}, {"K2", b.K2}};
}

Json domination(const DominationVerdict& v) {
  Json out{{"dominates", v.dominates}};
  out["first_strict_index"] = v.first_strict_index ? Json(*v.first_strict_index) : Json(nullptr);
  out["reason"] = v.reason;
  return out;
}

Json family_params(const FamilyParams& p) {
  return Json{{"digits", p.digits}, {"u", p.u}, {"k", p.k}, {"budget_r", p.budget_r}};
}

Json family_instance(const FamilyInstance& inst) {
  return Json{{"params", family_params(inst.params)},
              {"s", inst.s},
              {"U", inst.U},
              {"N", inst.N},
              {"N_binary", binary(inst.N)},
              {"length", inst.chain.length()},
              {"length_bound", family_length_bound(inst.params)},
              {"listed_index", inst.listed_index},
              {"note", "U_1 is taken from the initial run rather than listed again"},
              {"chain", format_chain(inst.chain)}};
}

Json family_size(const FamilyParams& p, const FamilySize& s) {
  return Json{{"params", family_params(p)},
              {"count", s.count},
              {"window_choices", s.window_choices},
              {"gap_choices", s.gap_choices},
              {"binomial_k_minus_1", s.binomial_k_minus_1}};
}

Json param_choice(const ParamChoice& c) {
  return Json{{"m", c.m},
              {"c", c.c},
              {"r", c.r},
              {"y", c.y},
              {"params", family_params(c.params)},
              {"failing", c.failing}};
}

}  // namespace addchain::json
