#include "addchain/cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <functional>
#include <memory>
#include <ostream>
#include <set>

#include "addchain/chain_format.hpp"
#include "addchain/report_json.hpp"

namespace addchain::cli {

namespace {

using json::Json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Format { Json, Csv, Plain };

std::string scalar_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "-";
  return v.dump();
}

// "key: value" lines, nested keys joined with '.', scalar arrays joined with ','.
void flatten(const Json& j, const std::string& prefix, std::ostream& out) {
  if (j.is_object()) {
    for (const auto& [key, v] : j.items()) {
      flatten(v, prefix.empty() ? key : prefix + "." + key, out);
    }
    return;
  }
  if (j.is_array()) {
    const bool scalars = std::all_of(j.begin(), j.end(), [](const Json& e) { return e.is_primitive(); });
    if (scalars) {
      std::string line;
      for (const auto& e : j) line += (line.empty() ? "" : ",") + scalar_text(e);
      out << prefix << ": " << line << '\n';
      return;
    }
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", out);
    return;
  }
  out << prefix << ": " << scalar_text(j) << '\n';
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string q = "\"";
  for (const char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + "\"";
}

template <class T>
std::string joined(const std::vector<T>& xs, char sep) {
  std::string s;
  for (const auto& x : xs) s += (s.empty() ? "" : std::string(1, sep)) + std::to_string(x);
  return s;
}

class Printer {
 public:
  Printer(Format format, std::ostream& out) : format_(format), out_(out) {}

  Format format() const { return format_; }

  void emit(const Json& j) {
    if (format_ == Format::Plain) {
      if (count_++ > 0) out_ << '\n';
      flatten(j, "", out_);
    } else {
      out_ << j.dump() << '\n';
    }
  }

  std::ostream& raw() { return out_; }

 private:
  Format format_;
  std::ostream& out_;
  int count_ = 0;
};

Chain first_chain(const std::string& path) {
  auto chains = read_chain_file(path);
  if (chains.empty()) throw Error(ErrorKind::ParseError, path + ": no chain found");
  return chains.front();
}

double require_r(const std::string& text, int m) {
  auto r = parse_r(text, m);
  if (!r) throw UsageError("r: cannot parse '" + text + "' (expected a decimal or c/logm:<c>)");
  return *r;
}

}  // namespace

std::optional<double> parse_r(std::string_view text, int m) {
  constexpr std::string_view kPrefix = "c/logm:";
  const bool scaled = text.starts_with(kPrefix);
  if (scaled) text.remove_prefix(kPrefix.size());
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v)) return std::nullopt;
  if (!scaled) return v;
  if (m < 2) return std::nullopt;
  return v * m / std::log(static_cast<double>(m));
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact computations on addition chains", "addchain"};
  app.fallthrough();
  app.require_subcommand(1);

  std::string format_name = "json";
  int threads = 1;
  std::string cache_path;
  app.add_option("--format", format_name, "Output format")
      ->check(CLI::IsMember({"json", "csv", "plain"}));
  app.add_option("--threads", threads, "Worker threads for interval counts")->check(CLI::PositiveNumber);
  app.add_option("--cache", cache_path, "Shortest-length cache file (n,ell lines)");

  // Each subcommand registers a handler; the parsed one runs after parsing.
  std::vector<std::pair<CLI::App*, std::function<int(Printer&)>>> handlers;
  std::set<CLI::App*> tabular;
  auto add = [&](CLI::App* sub, std::function<int(Printer&)> fn) { handlers.emplace_back(sub, std::move(fn)); };

  auto open_cache = [&]() -> std::unique_ptr<EllCache> {
    if (cache_path.empty()) return nullptr;
    return std::make_unique<EllCache>(EllCache::open(cache_path));
  };

  // ell
  Value ell_n = 0;
  std::optional<std::uint64_t> budget;
  bool no_schonhage = false;
  bool no_gamma = false;
  bool verbose = false;
  auto* ell_cmd = app.add_subcommand("ell", "Shortest chain length with a witness");
  ell_cmd->add_option("n", ell_n)->required();
  ell_cmd->add_option("--budget", budget, "Node budget");
  ell_cmd->add_flag("--no-schonhage", no_schonhage, "Start deepening at floor(log2 n)");
  ell_cmd->add_flag("--no-gamma", no_gamma, "Disable growth-rate pruning");
  ell_cmd->add_flag("--verbose", verbose, "Report search statistics");
  add(ell_cmd, [&](Printer& p) {
    SearchConfig cfg;
    cfg.use_schonhage_pruning = !no_schonhage;
    cfg.use_gamma_pruning = !no_gamma;
    cfg.node_budget = budget;
    try {
      p.emit(json::search_result(ell(ell_n, cfg), verbose));
    } catch (const BudgetExhausted& e) {
      p.emit(json::search_result(e.partial(), true));
      throw;
    }
    return kExitOk;
  });

  // oracle
  Value oracle_n = 0;
  auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force shortest chain length (n <= 2^20)");
  oracle_cmd->add_option("n", oracle_n)->required();
  add(oracle_cmd, [&](Printer& p) {
    p.emit(Json{{"n", oracle_n}, {"ell", ell_oracle(oracle_n)}});
    return kExitOk;
  });

  // bounds
  Value bounds_n = 0;
  bool bounds_skip_ell = false;
  auto* bounds_cmd = app.add_subcommand("bounds", "Classical bounds, checked against the exact length");
  bounds_cmd->add_option("n", bounds_n)->required();
  bounds_cmd->add_flag("--no-ell", bounds_skip_ell, "Skip the exact search");
  add(bounds_cmd, [&](Printer& p) {
    std::optional<int> actual;
    if (!bounds_skip_ell && bounds_n >= 2) actual = ell(bounds_n).ell;
    p.emit(json::bound_report(bound_report(bounds_n, actual)));
    return kExitOk;
  });

  // count-h
  int h_k = 0;
  bool h_list = false;
  auto* h_cmd = app.add_subcommand("count-h", "Integers reachable by chains of length <= k");
  h_cmd->add_option("k", h_k)->required();
  h_cmd->add_flag("--list", h_list, "Include the reachable integers");
  tabular.insert(h_cmd);
  add(h_cmd, [&](Printer& p) {
    const HResult r = count_H(h_k, h_list || p.format() == Format::Csv);
    if (p.format() == Format::Csv) {
      p.raw() << "n\n";
      for (const Value v : *r.reachable) p.raw() << v << '\n';
    } else {
      p.emit(json::h_result(r));
    }
    return kExitOk;
  });

  // count-f
  int f_m = 0;
  std::string f_r;
  auto* f_cmd = app.add_subcommand("count-f", "Count of n in [2^m, 2^{m+1}) with length <= m + r");
  f_cmd->add_option("m", f_m)->required();
  f_cmd->add_option("r", f_r)->required();
  add(f_cmd, [&](Printer& p) {
    const double r = require_r(f_r, f_m);
    auto cache = open_cache();
    p.emit(json::count_result(count_F(f_m, r, cache.get(), threads)));
    return kExitOk;
  });

  // hist
  int hist_m = 0;
  auto* hist_cmd = app.add_subcommand("hist", "Histogram of shortest lengths over [2^m, 2^{m+1})");
  hist_cmd->add_option("m", hist_m)->required();
  tabular.insert(hist_cmd);
  add(hist_cmd, [&](Printer& p) {
    auto cache = open_cache();
    const Json h = json::histogram(hist_m, ell_histogram(hist_m, cache.get(), threads));
    if (p.format() == Format::Csv) {
      p.raw() << "ell,count,cumulative\n";
      for (const auto& row : h["histogram"]) {
        p.raw() << row["ell"].dump() << ',' << row["count"].dump() << ',' << row["cumulative"].dump() << '\n';
      }
    } else {
      p.emit(h);
    }
    return kExitOk;
  });

  // classify / blocks
  std::string classify_file;
  int classify_m = 0;
  std::string classify_r;
  auto* classify_cmd = app.add_subcommand("classify", "Step classes and growth inequalities per chain");
  classify_cmd->add_option("chainfile", classify_file)->required();
  classify_cmd->add_option("--m", classify_m)->required();
  classify_cmd->add_option("--r", classify_r, "Default: length - floor(log2 target)");
  add(classify_cmd, [&](Printer& p) {
    for (const Chain& chain : read_chain_file(classify_file)) {
      const StepTaxonomy tax = classify_steps(chain, classify_m);
      const double r = classify_r.empty()
                           ? static_cast<double>(chain.length()) - floor_log2(chain.target())
                           : require_r(classify_r, classify_m);
      Json j{{"chain", format_chain(chain)}};
      j.update(json::taxonomy(tax));
      j["r"] = r;
      j["lemma1"] = json::lemma1(check_lemma1(tax, r));
      j["lemma2"] = json::lemma2(check_lemma2(tax, r));
      j["lemma3"] = json::lemma3(check_lemma3(chain, classify_m));
      p.emit(j);
    }
    return kExitOk;
  });

  std::string blocks_file;
  int blocks_m = 0;
  auto* blocks_cmd = app.add_subcommand("blocks", "Runs of non-doubling steps, their types and marks");
  blocks_cmd->add_option("chainfile", blocks_file)->required();
  blocks_cmd->add_option("--m", blocks_m)->required();
  add(blocks_cmd, [&](Printer& p) {
    for (const Chain& chain : read_chain_file(blocks_file)) {
      Json j{{"chain", format_chain(chain)}, {"m", blocks_m}};
      j.update(json::blocks(block_structure(chain, blocks_m)));
      p.emit(j);
    }
    return kExitOk;
  });

  // dominates
  std::string dom_a;
  std::string dom_b;
  auto* dom_cmd = app.add_subcommand("dominates", "Whether the first chain of A dominates that of B");
  dom_cmd->add_option("fileA", dom_a)->required();
  dom_cmd->add_option("fileB", dom_b)->required();
  add(dom_cmd, [&](Printer& p) {
    p.emit(json::domination(dominates(first_chain(dom_a), first_chain(dom_b))));
    return kExitOk;
  });

  // marked
  std::string marked_file;
  auto* marked_cmd = app.add_subcommand("marked", "Removable or rewritable steps per chain");
  marked_cmd->add_option("chainfile", marked_file)->required();
  add(marked_cmd, [&](Printer& p) {
    for (const Chain& chain : read_chain_file(marked_file)) {
      const auto marked = find_marked_steps(chain);
      Json rewrites = Json::array();
      for (const std::size_t j : marked) {
        try {
          rewrites.push_back(Json{{"index", j}, {"dominated", format_chain(rewrite_unused_doubling(chain, j))}});
        } catch (const Error&) {
          // removable step, not a doubling rewrite
        }
      }
      p.emit(Json{{"chain", format_chain(chain)}, {"marked", marked}, {"rewrites", rewrites}});
    }
    return kExitOk;
  });

  // family
  auto* family_cmd = app.add_subcommand("family", "Explicit chains to concatenated odd windows");
  family_cmd->require_subcommand(1);
  FamilyParams fam;
  std::string fam_r;
  std::vector<int> fam_s;
  std::vector<Value> fam_U;
  bool fam_count_only = false;
  auto add_params = [&](CLI::App* sub) {
    sub->add_option("--digits", fam.digits)->required();
    sub->add_option("--u", fam.u)->required();
    sub->add_option("--k", fam.k)->required();
    sub->add_option("--r", fam_r, "Budget r; default 2^u + k - u");
  };
  auto resolve_params = [&] {
    fam.budget_r = fam_r.empty() ? std::ldexp(1.0, fam.u) + fam.k - fam.u : require_r(fam_r, fam.digits);
  };
  auto* gen_cmd = family_cmd->add_subcommand("gen", "One chain for given gaps s and windows U");
  add_params(gen_cmd);
  gen_cmd->add_option("--s", fam_s, "Zero-run lengths")->delimiter(',');
  gen_cmd->add_option("--U", fam_U, "Odd u-bit windows")->delimiter(',')->required();
  add(gen_cmd, [&](Printer& p) {
    resolve_params();
    p.emit(json::family_instance(generate_chain(fam, fam_s, fam_U)));
    return kExitOk;
  });
  auto* enum_cmd = family_cmd->add_subcommand("enum", "Every chain of the family");
  add_params(enum_cmd);
  enum_cmd->add_flag("--count-only", fam_count_only, "Omit the instances");
  tabular.insert(enum_cmd);
  add(enum_cmd, [&](Printer& p) {
    resolve_params();
    std::set<Value> targets;
    std::uint64_t count = 0;
    Json instances = Json::array();
    if (p.format() == Format::Csv) p.raw() << "N,N_binary,length,s,U,chain\n";
    enumerate_family(fam, [&](const FamilyInstance& inst) {
      ++count;
      targets.insert(inst.N);
      if (fam_count_only) return true;
      Json j = json::family_instance(inst);
      if (p.format() == Format::Csv) {
        p.raw() << inst.N << ',' << j["N_binary"].get<std::string>() << ',' << inst.chain.length() << ','
                << joined(inst.s, ';') << ',' << joined(inst.U, ';') << ','
                << csv_field(format_chain(inst.chain)) << '\n';
      } else {
        j.erase("params");
        instances.push_back(std::move(j));
      }
      return true;
    });
    if (p.format() != Format::Csv) {
      Json j{{"params", json::family_params(fam)}, {"count", count}, {"distinct", targets.size() == count}};
      if (!fam_count_only) j["instances"] = std::move(instances);
      p.emit(j);
    }
    return kExitOk;
  });
  auto* size_cmd = family_cmd->add_subcommand("size", "Closed-form family size");
  add_params(size_cmd);
  add(size_cmd, [&](Printer& p) {
    resolve_params();
    p.emit(json::family_size(fam, family_size(fam)));
    return kExitOk;
  });
  int auto_m = 0;
  double auto_c = 0.0;
  auto* auto_cmd = family_cmd->add_subcommand("auto", "Asymptotic parameter choice for given m and c");
  auto_cmd->add_option("--m", auto_m)->required();
  auto_cmd->add_option("--c", auto_c)->required();
  add(auto_cmd, [&](Printer& p) {
    p.emit(json::param_choice(choose_params(auto_m, auto_c)));
    return kExitOk;
  });

  // scholz
  int scholz_n = 0;
  auto* scholz_cmd = app.add_subcommand("scholz", "Compare l(2^{n+1}-1) with n + l(n+1)");
  scholz_cmd->add_option("n", scholz_n)->required();
  add(scholz_cmd, [&](Printer& p) {
    p.emit(json::scholz_report(scholz_check(scholz_n)));
    return kExitOk;
  });

  // envelope
  int env_m = 0;
  double env_c = 0.0;
  double env_eps = 0.0;
  bool env_count = false;
  auto* env_cmd = app.add_subcommand("envelope", "Natural-log envelope for the count at r = cm/log m");
  env_cmd->add_option("--m", env_m)->required();
  env_cmd->add_option("--c", env_c)->required();
  env_cmd->add_option("--eps", env_eps)->required();
  env_cmd->add_flag("--with-count", env_count, "Also report the exact log count (small m)");
  add(env_cmd, [&](Printer& p) {
    Json j = json::envelope(theorem_envelope(env_m, env_c, env_eps));
    if (env_count) {
      const double r = env_c * env_m / std::log(static_cast<double>(env_m));
      auto cache = open_cache();
      const CountResult f = count_F(env_m, r, cache.get(), threads);
      j["r"] = r;
      j["f"] = f.f;
      j["log_f"] = f.f > 0 ? Json(std::log(static_cast<double>(f.f))) : Json(nullptr);
    }
    p.emit(j);
    return kExitOk;
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  const Format format = format_name == "csv" ? Format::Csv : format_name == "plain" ? Format::Plain : Format::Json;
  for (auto& [sub, fn] : handlers) {
    if (!sub->parsed()) continue;
    if (format == Format::Csv && !tabular.contains(sub)) {
      err << "usage error: --format csv is only available for hist, count-h and family enum\n";
      return kExitUsage;
    }
    Printer printer(format, out);
    try {
      return fn(printer);
    } catch (const UsageError& e) {
      err << "usage error: " << e.what() << '\n';
      return kExitUsage;
    } catch (const Error& e) {
      err << "error: " << to_string(e.kind()) << ": " << e.what() << '\n';
      return is_resource_error(e.kind()) ? kExitResource : kExitDomain;
    } catch (const std::exception& e) {
      err << "error: " << e.what() << '\n';
      return kExitDomain;
    }
  }
  err << "usage error: no command given\n";
  return kExitUsage;
}

}  // namespace addchain::cli
