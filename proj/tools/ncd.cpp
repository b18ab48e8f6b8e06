// Command-line front end: root system data, NC enumeration, decomposition
// numbers, characteristic and zeta polynomials, M- and F-triangles, linear
// system replay and the verification suites.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "ncd/errors.hpp"
#include "ncd/verify.hpp"

using namespace ncd;
using Json = nlohmann::ordered_json;

namespace {

enum class Format { text, csv, json };

struct RunConfig {
  Format format = Format::text;
  std::string cache_dir;
  int threads = 1;
  std::string label;
  std::string tuple;
  std::string suite;
  std::optional<int> m;
  bool symbolic = false;
  bool dual = false;
  bool primal = false;
  bool full_rank_only = false;
  bool extended = false;
  std::string report_path;
};

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitInput = 2;
constexpr int kExitGuard = 3;

std::optional<std::filesystem::path> cache_dir(const RunConfig& cfg) {
  if (!cfg.cache_dir.empty()) return std::filesystem::path(cfg.cache_dir);
  if (const char* env = std::getenv("NCD_CACHE_DIR"); env && *env) return std::filesystem::path(env);
  return std::nullopt;
}

TypeLabel parse_label(const std::string& s) {
  TypeLabel t = TypeLabel::parse(s);
  if (t.empty()) throw InputError("an ambient type must be nonempty");
  return t;
}

Json integer_json(const Integer& v) {
  if (v.fits_slong_p()) return v.get_si();
  return v.get_str();
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

Json poly_terms(const Poly& p) {
  Json terms = Json::array();
  for (const auto& [k, c] : p.terms()) {
    Exponents e = Poly::unpack(k);
    terms.push_back({{"x", e[0]}, {"y", e[1]}, {"z", e[2]}, {"m", e[3]}, {"coefficient", c.get_str()}});
  }
  return terms;
}

void print_poly(const RunConfig& cfg, const std::string& what, const std::string& label, const Poly& p,
                Json extra = Json::object()) {
  switch (cfg.format) {
    case Format::text:
      std::cout << p.str() << "\n";
      break;
    case Format::csv:
      std::cout << "x,y,z,m,coefficient\n";
      for (const auto& [k, c] : p.terms()) {
        Exponents e = Poly::unpack(k);
        std::cout << e[0] << "," << e[1] << "," << e[2] << "," << e[3] << "," << c.get_str() << "\n";
      }
      break;
    case Format::json: {
      Json j;
      j["kind"] = what;
      j["ambient"] = label;
      for (auto& [k, v] : extra.items()) j[k] = v;
      j["polynomial"] = p.str();
      j["terms"] = poly_terms(p);
      std::cout << j.dump(2) << "\n";
      break;
    }
  }
}

int cmd_rootsys_info(const RunConfig& cfg) {
  TypeLabel t = parse_label(cfg.label);
  RootSystem rs = RootSystem::from_label(t);
  std::vector<int> h;
  for (const auto& c : t.components()) h.push_back(coxeter_number_of(c));
  Json j;
  j["label"] = t.str();
  j["rank"] = rs.rank();
  j["positive_roots"] = rs.positive_roots().size();
  j["degrees"] = degrees_of(t);
  j["group_order"] = integer_json(rs.group_order());
  j["coxeter_numbers"] = h;
  Json cartan = Json::array();
  for (int i = 0; i < rs.rank(); ++i) {
    Json row = Json::array();
    for (int k = 0; k < rs.rank(); ++k) row.push_back(rs.cartan(i, k));
    cartan.push_back(row);
  }
  j["cartan"] = cartan;
  j["bipartition"] = {rs.bipartition()[0], rs.bipartition()[1]};
  switch (cfg.format) {
    case Format::json:
      std::cout << j.dump(2) << "\n";
      break;
    case Format::csv:
      std::cout << "field,value\n"
                << "label," << t.str() << "\nrank," << rs.rank() << "\npositive_roots," << rs.positive_roots().size()
                << "\ngroup_order," << rs.group_order().get_str() << "\n";
      break;
    case Format::text: {
      auto join = [](const std::vector<int>& v) {
        std::string s;
        for (int x : v) s += (s.empty() ? "" : " ") + std::to_string(x);
        return s;
      };
      std::cout << "type " << t.str() << "\nrank " << rs.rank() << "\npositive roots " << rs.positive_roots().size()
                << "\ndegrees " << join(degrees_of(t)) << "\ngroup order " << rs.group_order().get_str()
                << "\ncoxeter numbers " << join(h) << "\ncartan matrix\n";
      for (int i = 0; i < rs.rank(); ++i) {
        std::cout << " ";
        for (int k = 0; k < rs.rank(); ++k) std::cout << " " << (rs.cartan(i, k) >= 0 ? " " : "") << rs.cartan(i, k);
        std::cout << "\n";
      }
      std::cout << "bipartition {" << join(rs.bipartition()[0]) << "} {" << join(rs.bipartition()[1]) << "}\n";
      break;
    }
  }
  return kExitOk;
}

int cmd_nc_enumerate(const RunConfig& cfg) {
  TypeLabel t = parse_label(cfg.label);
  NcPoset nc = load_or_enumerate(RootSystem::from_label(t), cache_dir(cfg), cfg.threads);
  auto levels = nc.level_sizes();
  auto census = nc.type_census();
  switch (cfg.format) {
    case Format::json: {
      Json j;
      j["ambient"] = t.str();
      j["size"] = nc.size();
      j["level_sizes"] = levels;
      Json c = Json::object();
      for (const auto& [type, count] : census) c[type.empty() ? "0" : type.str()] = count;
      j["type_census"] = c;
      std::cout << j.dump(2) << "\n";
      break;
    }
    case Format::csv:
      std::cout << "kind,key,count\n";
      for (std::size_t r = 0; r < levels.size(); ++r) std::cout << "level," << r << "," << levels[r] << "\n";
      for (const auto& [type, count] : census) std::cout << "type," << (type.empty() ? "0" : type.str()) << "," << count << "\n";
      break;
    case Format::text:
      std::cout << "NC(" << t.str() << ") has " << nc.size() << " elements\nlevel sizes";
      for (int s : levels) std::cout << " " << s;
      std::cout << "\ntype census\n";
      for (const auto& [type, count] : census) std::cout << "  " << (type.empty() ? "0" : type.str()) << " " << count << "\n";
      break;
  }
  return kExitOk;
}

int cmd_decomp_count(const RunConfig& cfg) {
  TypeLabel t = parse_label(cfg.label);
  TypeTuple tuple = parse_tuple(cfg.tuple);
  NcPoset nc = load_or_enumerate(RootSystem::from_label(t), cache_dir(cfg), cfg.threads);
  Integer v = count_bruteforce(nc, tuple);
  switch (cfg.format) {
    case Format::json:
      std::cout << Json{{"ambient", t.str()}, {"tuple", cfg.tuple}, {"value", integer_json(v)}}.dump(2) << "\n";
      break;
    case Format::csv:
      std::cout << "ambient,tuple,value\n" << t.str() << "," << csv_field(cfg.tuple) << "," << v.get_str() << "\n";
      break;
    case Format::text:
      std::cout << v.get_str() << "\n";
      break;
  }
  return kExitOk;
}

int cmd_decomp_table(const RunConfig& cfg) {
  TypeLabel t = parse_label(cfg.label);
  DecompositionTable table;
  if (t.is_irreducible()) {
    NcPoset nc = load_or_enumerate(RootSystem::from_label(t), cache_dir(cfg), cfg.threads);
    table = full_table(nc, cfg.threads, cfg.full_rank_only);
  } else {
    Workspace ws(cfg.threads, cache_dir(cfg));
    table = cfg.full_rank_only ? ws.table(t).full_rank_only() : ws.table(t);
  }
  switch (cfg.format) {
    case Format::json: {
      Json entries = Json::array();
      for (const auto& [k, e] : table.entries()) {
        Json types = Json::array();
        for (const auto& x : k) types.push_back(x.str());
        entries.push_back({{"tuple", types}, {"value", integer_json(e.value)}, {"provenance", to_string(e.provenance)}});
      }
      std::cout << Json{{"ambient", t.str()}, {"entries", entries}}.dump(2) << "\n";
      break;
    }
    case Format::csv:
      std::cout << "tuple,value,provenance\n";
      for (const auto& [k, e] : table.entries())
        std::cout << csv_field(tuple_str(k)) << "," << e.value.get_str() << "," << to_string(e.provenance) << "\n";
      break;
    case Format::text:
      for (const auto& [k, e] : table.entries()) std::cout << tuple_str(k) << " " << e.value.get_str() << "\n";
      break;
  }
  return kExitOk;
}

int cmd_chi(const RunConfig& cfg) {
  TypeLabel t = parse_label(cfg.label);
  Workspace ws(cfg.threads, cache_dir(cfg));
  Poly chi(1);
  for (const auto& c : t.components()) chi *= ws.chi(TypeLabel::from_components({c}));
  print_poly(cfg, "characteristic", t.str(), chi);
  return kExitOk;
}

std::optional<int> chosen_m(const RunConfig& cfg, int fallback) {
  if (cfg.symbolic) return std::nullopt;
  return cfg.m.value_or(fallback);
}

int cmd_zeta(const RunConfig& cfg) {
  TypeLabel t = parse_label(cfg.label);
  std::optional<int> m = chosen_m(cfg, 1);
  Json extra;
  extra["m"] = m ? Json(*m) : Json("symbolic");
  print_poly(cfg, "zeta", t.str(), zeta_closed(t, m), extra);
  return kExitOk;
}

int cmd_mtriangle(const RunConfig& cfg) {
  TypeLabel t = parse_label(cfg.label);
  if (cfg.dual && cfg.primal) throw InputError("--dual and --primal exclude each other");
  Workspace ws(cfg.threads, cache_dir(cfg));
  MTriangle mt = ws.triangle(t);
  if (cfg.m && !cfg.symbolic) mt = mtriangle_at(mt, *cfg.m);
  Json extra;
  extra["m"] = cfg.m && !cfg.symbolic ? Json(*cfg.m) : Json("symbolic");
  extra["form"] = cfg.dual ? "dual" : "primal";
  print_poly(cfg, "M-triangle", t.str(), cfg.dual ? mt.dual : mt.primal, extra);
  return kExitOk;
}

int cmd_ftriangle(const RunConfig& cfg) {
  TypeLabel t = parse_label(cfg.label);
  Workspace ws(cfg.threads, cache_dir(cfg));
  FTriangleCandidate f = fm_transform(ws.triangle(t), *cfg.m);
  if (cfg.format == Format::json) {
    Json rows = Json::array();
    for (int k = 0; k <= f.n; ++k) {
      Json row = Json::array();
      for (int l = 0; k + l <= f.n; ++l) row.push_back(f.f(k, l).get_str());
      rows.push_back(row);
    }
    Json j{{"ambient", t.str()}, {"m", *cfg.m}, {"exact", f.exact}, {"valid", f.valid()},
           {"polynomial", f.poly.str()}, {"f", rows}};
    if (!f.exact) j["remainder"] = f.remainder.str();
    std::cout << j.dump(2) << "\n";
  } else if (cfg.format == Format::csv) {
    std::cout << "k,l,f\n";
    for (int k = 0; k <= f.n; ++k)
      for (int l = 0; k + l <= f.n; ++l) std::cout << k << "," << l << "," << f.f(k, l).get_str() << "\n";
  } else {
    std::cout << f.poly.str() << "\n";
    if (!f.valid()) std::cerr << "not a valid F-triangle (exact=" << f.exact << ")\n";
  }
  return f.valid() ? kExitOk : kExitFailed;
}

int cmd_linsys_replay(const RunConfig& cfg) {
  TypeLabel t = parse_label(cfg.label);
  Workspace ws(cfg.threads, cache_dir(cfg));
  const ReplayReport& r = ws.replay_report(t);
  std::string json = report_json(r);
  if (!cfg.report_path.empty()) {
    std::ofstream out(cfg.report_path);
    if (!out) throw InputError("cannot write report to " + cfg.report_path);
    out << json << "\n";
  }
  if (cfg.format == Format::json) {
    std::cout << json << "\n";
  } else if (cfg.format == Format::csv) {
    std::cout << "assertion,pass,detail\n";
    for (const auto& a : r.assertions)
      std::cout << csv_field(a.description) << "," << (a.pass ? "true" : "false") << "," << csv_field(a.detail) << "\n";
  } else {
    std::cout << "ambient " << r.ambient.str() << "\nequations " << r.equation_count << " (" << r.distinct_equations
              << " distinct)\nunknowns " << r.variable_count << "\nrank " << r.rank << "\ndimension " << r.dimension;
    if (r.expected_dimension) std::cout << " (expected " << *r.expected_dimension << (r.dimension_relaxed ? ", relaxed" : "") << ")";
    std::cout << "\n";
    for (const auto& [k, v] : r.pins) std::cout << "pin (" << tuple_str(k) << ") = " << v.get_str() << "\n";
    for (const auto& a : r.assertions)
      std::cout << (a.pass ? "PASS " : "FAIL ") << a.description << (a.detail.empty() ? "" : ": " + a.detail) << "\n";
  }
  return r.passed() ? kExitOk : kExitFailed;
}

using SuiteFn = std::function<SuiteReport(Workspace&, bool)>;

const std::map<std::string, SuiteFn>& suites() {
  static const std::map<std::string, SuiteFn> s = {
      {"appendix",
       [](Workspace& ws, bool ext) {
         SuiteReport r = verify_reference_numbers(ws, reference_ambients(false));
         if (ext) r.append(verify_reference_numbers(ws, reference_ambients(true)));
         return r;
       }},
      {"typeA", [](Workspace& ws, bool) { return verify_type_a(ws, 5); }},
      {"chi", [](Workspace& ws, bool) { return verify_characteristic(ws); }},
      {"zeta",
       [](Workspace& ws, bool) {
         SuiteReport r = verify_zeta(ws);
         r.append(verify_zeta_identity(ws, labels({"A2", "A3", "D4"})));
         return r;
       }},
      {"e6",
       [](Workspace& ws, bool) {
         SuiteReport r = verify_reference_numbers(ws, labels({"E6"}));
         r.append(verify_linsys(ws, labels({"E6"})));
         r.append(verify_orbits(labels({"E6"})));
         return r;
       }},
      {"e7",
       [](Workspace& ws, bool) {
         SuiteReport r = verify_counts(ws, TypeLabel::parse("E7"), {{"A1^4,A1^3", 9}, {"A1^2*A2,A1^3", 54}});
         r.append(verify_linsys(ws, labels({"E7"})));
         r.append(verify_reference_triangle(ws, TypeLabel::parse("E7")));
         return r;
       }},
      {"e8",
       [](Workspace& ws, bool) {
         SuiteReport r = verify_counts(ws, TypeLabel::parse("E8"),
                                       {{"D4", 325}, {"D4,A4", 15}, {"A4,A1*A3", 390}, {"A5,A1*A2", 390}, {"D5,A1*A2", 195}});
         r.append(verify_linsys(ws, labels({"E8"})));
         r.append(verify_reference_triangle(ws, TypeLabel::parse("E8")));
         return r;
       }},
      {"reciprocity",
       [](Workspace& ws, bool) {
         SuiteReport r = verify_mtriangle_oracle(ws);
         r.append(verify_reciprocity(ws, labels({"A1", "A2", "A3", "A4", "A5", "D4", "D5", "E6", "E7", "E8"})));
         return r;
       }},
      {"fm",
       [](Workspace& ws, bool) {
         SuiteReport r = verify_f_transform(ws, labels({"E7", "E8"}), 3);
         r.append(verify_f_reciprocity(ws, labels({"A3", "D4", "E6"}), 3));
         return r;
       }},
      {"orbits",
       [](Workspace&, bool) {
         SuiteReport r = verify_orbit_multisets();
         r.append(verify_orbits(labels({"A1", "A2", "A3", "A4", "A5", "A6", "A7", "D4", "D5", "D6", "D7", "E6", "E7", "E8"})));
         return r;
       }},
      {"length", [](Workspace&, bool) { return verify_absolute_length(labels({"A3", "D4"})); }},
  };
  return s;
}

int cmd_verify(const RunConfig& cfg) {
  auto it = suites().find(cfg.suite);
  if (it == suites().end()) throw InputError("unknown suite " + cfg.suite);
  Workspace ws(cfg.threads, cache_dir(cfg));
  SuiteReport r = it->second(ws, cfg.extended);
  r.name = cfg.suite;
  switch (cfg.format) {
    case Format::json: {
      Json checks = Json::array();
      for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
      std::cout << Json{{"suite", r.name}, {"passed", r.passed()}, {"failed", r.failed()}, {"checks", checks}}.dump(2) << "\n";
      break;
    }
    case Format::csv:
      std::cout << "check,pass,detail\n";
      for (const auto& c : r.checks)
        std::cout << csv_field(c.name) << "," << (c.pass ? "true" : "false") << "," << csv_field(c.detail) << "\n";
      break;
    case Format::text:
      for (const auto& c : r.checks)
        std::cout << (c.pass ? "PASS " : "FAIL ") << c.name << (c.detail.empty() ? "" : ": " + c.detail) << "\n";
      std::cout << r.name << ": " << r.passed() << " passed, " << r.failed() << " failed\n";
      break;
  }
  return r.ok() ? kExitOk : kExitFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Noncrossing partitions, decomposition numbers and M-triangles of ADE root systems"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;
  std::string format = "text";
  app.add_option("--format", format, "Output format: text, csv or json")->check(CLI::IsMember({"text", "csv", "json"}));
  app.add_option("--cache-dir", cfg.cache_dir, "Directory for cached NC posets (default: $NCD_CACHE_DIR)");
  app.add_option("--threads", cfg.threads, "Worker threads")->check(CLI::PositiveNumber);

  std::function<int()> action;
  auto bind = [&](CLI::App* sub, int (*fn)(const RunConfig&)) {
    sub->callback([&action, &cfg, fn] { action = [&cfg, fn] { return fn(cfg); }; });
  };

  auto* rootsys = app.add_subcommand("rootsys", "Root system data")->require_subcommand(1);
  auto* info = rootsys->add_subcommand("info", "Rank, degrees, Cartan matrix");
  info->add_option("label", cfg.label)->required();
  bind(info, cmd_rootsys_info);

  auto* nc = app.add_subcommand("nc", "Noncrossing partition posets")->require_subcommand(1);
  auto* enumerate = nc->add_subcommand("enumerate", "Level sizes and type census of NC");
  enumerate->add_option("label", cfg.label)->required();
  bind(enumerate, cmd_nc_enumerate);

  auto* decomp = app.add_subcommand("decomp", "Decomposition numbers")->require_subcommand(1);
  auto* count = decomp->add_subcommand("count", "Count one tuple by brute force");
  count->add_option("label", cfg.label)->required();
  count->add_option("tuple", cfg.tuple, "Comma separated types, e.g. D4,A4")->required();
  bind(count, cmd_decomp_count);
  auto* table = decomp->add_subcommand("table", "All tuples of sub-diagram types");
  table->add_option("label", cfg.label)->required();
  table->add_flag("--full-rank-only", cfg.full_rank_only, "Only tuples of full rank");
  bind(table, cmd_decomp_table);

  auto* chi = app.add_subcommand("chi", "Reciprocal characteristic polynomial of NC");
  chi->add_option("label", cfg.label)->required();
  bind(chi, cmd_chi);

  auto* zeta = app.add_subcommand("zeta", "Zeta polynomial of NC^m");
  zeta->add_option("label", cfg.label)->required();
  auto* zm = zeta->add_option("--m", cfg.m, "Fixed m (default 1)")->check(CLI::PositiveNumber);
  zeta->add_flag("--symbolic", cfg.symbolic, "Keep m symbolic")->excludes(zm);
  bind(zeta, cmd_zeta);

  auto* mtri = app.add_subcommand("mtriangle", "M-triangle of NC^m");
  mtri->add_option("label", cfg.label)->required();
  auto* mm = mtri->add_option("--m", cfg.m, "Fixed m")->check(CLI::PositiveNumber);
  mtri->add_flag("--symbolic", cfg.symbolic, "Keep m symbolic (default)")->excludes(mm);
  auto* dual = mtri->add_flag("--dual", cfg.dual, "Dual form");
  mtri->add_flag("--primal", cfg.primal, "Primal form (default)")->excludes(dual);
  bind(mtri, cmd_mtriangle);

  auto* ftri = app.add_subcommand("ftriangle", "F-triangle through the F=M substitution");
  ftri->add_option("label", cfg.label)->required();
  ftri->add_option("--m", cfg.m, "m")->required()->check(CLI::PositiveNumber);
  bind(ftri, cmd_ftriangle);

  auto* linsys = app.add_subcommand("linsys", "Linear system for decomposition numbers")->require_subcommand(1);
  auto* rep = linsys->add_subcommand("replay", "Generate, solve, pin and check");
  rep->add_option("label", cfg.label)->required();
  rep->add_option("--report", cfg.report_path, "Write the JSON report here");
  bind(rep, cmd_linsys_replay);

  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  std::vector<std::string> names;
  for (const auto& [k, v] : suites()) names.push_back(k);
  verify->add_option("suite", cfg.suite)->required()->check(CLI::IsMember(names));
  verify->add_flag("--extended", cfg.extended, "Include the larger reference tables");
  bind(verify, cmd_verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  cfg.format = format == "json" ? Format::json : format == "csv" ? Format::csv : Format::text;
  try {
    return action ? action() : kExitInput;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const DependencyError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const ResourceGuardError& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return kExitGuard;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << "\n";
    return kExitFailed;
  }
}
