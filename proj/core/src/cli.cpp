#include "bll/cli.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

namespace bll {

namespace {

std::string config_path() {
  if (const char* p = std::getenv("BLL_CONFIG")) return p;
  if (const char* x = std::getenv("XDG_CONFIG_HOME")) {
    if (*x) return std::string(x) + "/bll/config.json";
  }
  if (const char* h = std::getenv("HOME")) {
    if (*h) return std::string(h) + "/.config/bll/config.json";
  }
  return "";
}

long long parse_ll(const std::string& s, const std::string& what) {
  try {
    size_t pos = 0;
    long long v = std::stoll(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw invalid_input("bad integer for " + what + ": '" + s + "'");
  }
}

void apply_config_file(RunConfig& cfg, const std::string& path,
                       bool explicit_path) {
  std::ifstream in(path);
  if (!in) {
    if (explicit_path)
      throw invalid_input("config file not readable: " + path);
    return;
  }
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw invalid_input("config file " + path + " is not valid JSON: " +
                        e.what());
  }
  if (!j.is_object())
    throw invalid_input("config file " + path + " must hold a JSON object");
  for (const auto& [key, val] : j.items()) {
    if (key == "g") {
      if (!val.is_number_integer())
        throw invalid_input("config key 'g' must be an integer");
      cfg.g = val.get<int>();
    } else if (key == "v") {
      if (!val.is_string())
        throw invalid_input("config key 'v' must be a comma-separated string");
      cfg.v = parse_rat_csv(val.get<std::string>());
    } else if (key == "format") {
      if (!val.is_string())
        throw invalid_input("config key 'format' must be a string");
      cfg.format = val.get<std::string>();
    } else if (key == "cache_dir") {
      if (!val.is_string())
        throw invalid_input("config key 'cache_dir' must be a string");
      cfg.cache_dir = val.get<std::string>();
    } else if (key == "budget") {
      if (!val.is_number_integer())
        throw invalid_input("config key 'budget' must be an integer");
      cfg.budget = val.get<long long>();
    } else if (key == "threads") {
      if (!val.is_number_integer())
        throw invalid_input("config key 'threads' must be an integer");
      cfg.threads = val.get<int>();
    } else {
      throw invalid_input("unknown config key '" + key + "' in " + path);
    }
  }
}

void apply_env(RunConfig& cfg) {
  if (const char* c = std::getenv("BLL_CACHE_DIR")) cfg.cache_dir = c;
  if (const char* t = std::getenv("BLL_THREADS"))
    cfg.threads = static_cast<int>(parse_ll(t, "BLL_THREADS"));
}

void validate(const RunConfig& cfg) {
  if (cfg.format != "json" && cfg.format != "markdown")
    throw invalid_input("format must be 'json' or 'markdown'");
  if (cfg.threads < 1) throw invalid_input("threads must be >= 1");
  if (cfg.budget < 0) throw invalid_input("budget must be >= 0 (0 = unlimited)");
  const bool needs_g = cfg.command == "qp" || cfg.command == "heegner" ||
                       cfg.command == "orbits" || cfg.command == "search";
  if (needs_g && !cfg.g)
    throw invalid_input(cfg.command + " requires --g");
  const bool needs_v = cfg.command == "qp" || cfg.command == "heegner";
  if (needs_v && !cfg.v)
    throw invalid_input(cfg.command + " requires --v");
}

// loads the shared count cache on entry, saves on exit (also after a budget
// failure: completed walks are still valid)
class CacheSession {
 public:
  CacheSession(const std::string& dir, std::ostream& err) : err_(err) {
    if (dir.empty()) return;
    path_ = dir + "/shells.json";
    global_shell_cache().load_file(path_);
  }
  ~CacheSession() {
    if (path_.empty()) return;
    try {
      std::filesystem::create_directories(
          std::filesystem::path(path_).parent_path());
      global_shell_cache().save_file(path_);
    } catch (const std::exception& e) {
      err_ << "warning: could not save cache: " << e.what() << "\n";
    }
  }

 private:
  std::string path_;
  std::ostream& err_;
};

std::string csv(const QVec& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += rat_str(v[i]);
  }
  return s;
}

std::string csv(const IVec& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += int_str(v[i]);
  }
  return s;
}

void emit_json(std::ostream& out, const nlohmann::ordered_json& j) {
  out << j.dump(2) << "\n";
}

void table_markdown(std::ostream& out,
                    const std::vector<QuasiPullbackReport>& reps) {
  out << "| g |";
  for (const auto& rep : reps) out << " " << rep.g << " |";
  out << "\n|---|";
  for (size_t i = 0; i < reps.size(); ++i) out << "---|";
  out << "\n| n(g) |";
  for (const auto& rep : reps) out << " " << rep.n << " |";
  out << "\n\n";
  out << "| g | v | r | k | n | type | disc_order | crosscheck |\n";
  out << "|---|---|---|---|---|---|---|---|\n";
  for (const auto& rep : reps) {
    out << "| " << rep.g << " | " << csv(rep.v_chart) << " | " << rep.r
        << " | " << rep.k << " | " << rep.n << " | "
        << type_string(rep.root_type) << " | " << rep.disc_order << " | "
        << (rep.crosscheck_passed ? "ok" : "FAIL") << " |\n";
  }
}

void qp_markdown(std::ostream& out, const QuasiPullbackReport& rep) {
  out << "| field | value |\n|---|---|\n";
  out << "| g | " << rep.g << " |\n";
  out << "| v | " << csv(rep.v_chart) << " |\n";
  out << "| v_basis | " << csv(rep.v_basis) << " |\n";
  out << "| r | " << rep.r << " |\n";
  out << "| k | " << rep.k << " |\n";
  out << "| n | " << rep.n << " |\n";
  out << "| type | " << type_string(rep.root_type) << " |\n";
  out << "| is_cusp | " << (rep.is_cusp ? "yes" : "no") << " |\n";
  out << "| disc_order | " << rep.disc_order << " |\n";
  out << "| crosscheck | " << (rep.crosscheck_passed ? "ok" : "FAIL") << " |\n";
  if (rep.dim_vg)
    out << "| dim_vg | " << *rep.dim_vg << " |\n";
}

void heegner_markdown(std::ostream& out, const HeegnerLedger& led) {
  out << "g=" << led.g << ", v=" << csv(led.v_chart) << "\n\n";
  out << "| lambda | q_lambda | x | multiplicity |\n|---|---|---|---|\n";
  for (const auto& e : led.entries) {
    out << "| " << csv(e.lambda) << " | " << rat_str(e.q_lambda) << " | "
        << rat_str(e.x) << " | " << e.multiplicity << " |\n";
  }
  out << "\n| divisor component (lambda, x) | multiplicity |\n|---|---|\n";
  for (const auto& e : led.f_divisor_entries) {
    out << "| (" << csv(e.lambda) << ", " << rat_str(e.x) << ") | "
        << e.multiplicity << " |\n";
  }
}

void orbits_markdown(std::ostream& out, const OrbitCount& oc) {
  out << "| g | divisibilities | count |\n|---|---|---|\n| " << oc.g << " | ";
  for (size_t i = 0; i < oc.divisibilities.size(); ++i) {
    if (i) out << ",";
    out << oc.divisibilities[i];
  }
  out << " | " << oc.count << " |\n";
}

void search_markdown(std::ostream& out, const SearchResult& sr) {
  out << "g=" << sr.g << ", objective="
      << (sr.objective == SearchObjective::maximize_roots ? "maximize"
                                                          : "minimize")
      << ", primitive shell vectors=" << sr.shell_count
      << ", candidates (up to sign)=" << sr.candidates << "\n\n";
  out << "| rank | v | r | type | members |\n|---|---|---|---|---|\n";
  for (size_t i = 0; i < sr.classes.size(); ++i) {
    const auto& c = sr.classes[i];
    out << "| " << (i + 1) << " | " << csv(c.v_chart) << " | " << c.r << " | "
        << type_string(c.root_type) << " | " << c.members << " |\n";
  }
}

int run_selftest(const RunConfig& cfg, std::ostream& out) {
  const OracleSuiteResult oracle = oracle_equivalence_suite(200, 7);
  const auto reps = reference_table(EnumLimits{cfg.budget}, cfg.threads);
  const auto& rows = known_rows();
  int golden_failures = 0;
  for (size_t i = 0; i < rows.size(); ++i) {
    const bool ok = i < reps.size() && reps[i].g == rows[i].g &&
                    reps[i].r == rows[i].r && reps[i].n == rows[i].n &&
                    type_string(reps[i].root_type) == rows[i].root_type &&
                    reps[i].disc_order == 2 * rows[i].g - 2 &&
                    reps[i].crosscheck_passed;
    if (!ok) ++golden_failures;
  }
  const bool pass = oracle.failures == 0 && golden_failures == 0;
  if (cfg.format == "json") {
    nlohmann::ordered_json j;
    j["oracle"] = {{"lattices", oracle.lattices},
                   {"comparisons", oracle.comparisons},
                   {"failures", oracle.failures}};
    j["golden"] = {{"rows", static_cast<int>(rows.size())},
                   {"failures", golden_failures}};
    j["pass"] = pass;
    emit_json(out, j);
  } else {
    out << "oracle equivalence: " << oracle.comparisons
        << " comparisons across " << oracle.lattices << " lattices, "
        << oracle.failures << " failures\n";
    out << "golden rows: " << rows.size() << " rows, " << golden_failures
        << " failures\n";
    out << "selftest: " << (pass ? "PASS" : "FAIL") << "\n";
  }
  return pass ? 0 : 4;
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  validate(cfg);
  const EnumLimits lim{cfg.budget};
  CacheSession cache(cfg.cache_dir, err);

  if (cfg.command == "table") {
    const auto reps = reference_table(lim, cfg.threads);
    if (cfg.format == "json") {
      auto arr = nlohmann::ordered_json::array();
      for (const auto& rep : reps) arr.push_back(report_json(rep));
      emit_json(out, arr);
    } else {
      table_markdown(out, reps);
    }
    return 0;
  }
  if (cfg.command == "qp") {
    const auto rep = quasi_pullback(*cfg.g, *cfg.v, lim);
    if (cfg.format == "json")
      emit_json(out, report_json(rep));
    else
      qp_markdown(out, rep);
    return 0;
  }
  if (cfg.command == "heegner") {
    const auto led = heegner_ledger(*cfg.g, *cfg.v, lim);
    if (cfg.format == "json")
      emit_json(out, ledger_json(led));
    else
      heegner_markdown(out, led);
    return 0;
  }
  if (cfg.command == "orbits") {
    const auto oc = eichler_minus2_orbits(*cfg.g);
    if (cfg.format == "json")
      emit_json(out, orbits_json(oc));
    else
      orbits_markdown(out, oc);
    return 0;
  }
  if (cfg.command == "search") {
    const auto sr = search_v(*cfg.g,
                             cfg.maximize ? SearchObjective::maximize_roots
                                          : SearchObjective::minimize_roots,
                             lim);
    if (cfg.format == "json")
      emit_json(out, search_json(sr));
    else
      search_markdown(out, sr);
    return 0;
  }
  if (cfg.command == "selftest") return run_selftest(cfg, out);
  throw invalid_input("unknown command '" + cfg.command + "'");
}

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"exact lattice computations: orthogonal complements in the "
               "rank-8 chain lattice, root systems, norm-shell counts, "
               "discriminant ledgers, and the genus table"};
  app.require_subcommand(1);

  struct SubFlags {
    CLI::App* sub = nullptr;
    int g = 0;
    std::string v, format, cache_dir;
    long long budget = 0;
    int threads = 0;
    CLI::Option *og = nullptr, *ov = nullptr, *of = nullptr, *oc = nullptr,
                *ob = nullptr, *ot = nullptr, *omin = nullptr, *omax = nullptr;
  };
  const struct {
    const char* name;
    const char* help;
    bool has_v, has_obj;
  } cmds[] = {
      {"table", "emit all 21 genus reports", false, false},
      {"qp", "one quasi-pullback report for --g and --v", true, false},
      {"heegner", "divisor multiplicity ledger for --g and --v", true, false},
      {"orbits", "norm -2 orbit count for --g", false, false},
      {"search", "rank all vector choices of chart norm 2g-2", false, true},
      {"selftest", "oracle-equivalence and golden-row suites", false, false},
  };
  std::vector<SubFlags> subs(std::size(cmds));
  for (size_t i = 0; i < std::size(cmds); ++i) {
    SubFlags& sf = subs[i];
    sf.sub = app.add_subcommand(cmds[i].name, cmds[i].help);
    sf.og = sf.sub->add_option("--g", sf.g, "genus (>= 2)");
    if (cmds[i].has_v)
      sf.ov = sf.sub->add_option(
          "--v", sf.v, "chart coordinates, e.g. 3,1,0,0,0,0,0,0 or 1/2,...");
    sf.of = sf.sub->add_option("--format", sf.format, "json or markdown");
    sf.oc = sf.sub->add_option("--cache-dir", sf.cache_dir,
                               "directory for the shared count cache");
    sf.ob = sf.sub->add_option("--budget", sf.budget,
                               "enumeration node cap (0 = unlimited)");
    sf.ot = sf.sub->add_option("--threads", sf.threads, "worker count");
    if (cmds[i].has_obj) {
      sf.omin = sf.sub->add_flag("--minimize", "rank by ascending root count");
      sf.omax = sf.sub->add_flag("--maximize", "rank by descending root count");
      sf.omin->excludes(sf.omax);
      sf.omax->excludes(sf.omin);
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    RunConfig cfg;
    for (size_t i = 0; i < std::size(cmds); ++i) {
      if (!subs[i].sub->parsed()) continue;
      cfg.command = cmds[i].name;
      const char* explicit_cfg = std::getenv("BLL_CONFIG");
      const std::string cpath = config_path();
      if (!cpath.empty())
        apply_config_file(cfg, cpath, explicit_cfg != nullptr);
      apply_env(cfg);
      const SubFlags& sf = subs[i];
      if (sf.og->count() > 0) cfg.g = sf.g;
      if (sf.ov && sf.ov->count() > 0) cfg.v = parse_rat_csv(sf.v);
      if (sf.of->count() > 0) cfg.format = sf.format;
      if (sf.oc->count() > 0) cfg.cache_dir = sf.cache_dir;
      if (sf.ob->count() > 0) cfg.budget = sf.budget;
      if (sf.ot->count() > 0) cfg.threads = sf.threads;
      if (sf.omax && sf.omax->count() > 0) cfg.maximize = true;
      if (sf.omin && sf.omin->count() > 0) cfg.maximize = false;
      return run(cfg, out, err);
    }
    throw invalid_input("no command given");
  } catch (const invalid_input& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const budget_exceeded& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const internal_error& e) {
    err << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    err << "error: unexpected failure: " << e.what() << "\n";
    return 4;
  }
}

}  // namespace bll
