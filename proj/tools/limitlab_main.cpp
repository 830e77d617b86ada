// Batch experiment runner: `run` evaluates a learner against a text and a
// criteria list, `duel` pits a learner against a diagonalizing text builder,
// `report` aggregates verdict files into a learner-by-criterion matrix.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "json.hpp"
#include "limitlab/adversaries.hpp"
#include "limitlab/combinators.hpp"
#include "limitlab/learners.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;
using namespace limitlab;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitPartial = 1;   // report: some inputs skipped
constexpr int kExitBadInput = 2;  // unresolved ids, bad specs

fs::path output_dir(const std::string& flag_value) {
  if (!flag_value.empty()) return flag_value;
  if (const char* env = std::getenv("LIMITLAB_OUT")) return env;
  return ".";
}

void write_file(const fs::path& p, const std::string& content) {
  fs::create_directories(p.parent_path().empty() ? "." : p.parent_path());
  std::ofstream os(p, std::ios::binary | std::ios::trunc);
  if (!os) throw Error("cannot write " + p.string());
  os << content;
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

std::string csv_quote(const std::string& s) {
  std::string r = "\"";
  for (char c : s) {
    if (c == '"') r += '"';
    r += c;
  }
  r += '"';
  return r;
}

std::map<std::string, BenchmarkClass> class_catalog() {
  std::map<std::string, BenchmarkClass> m;
  for (BenchmarkClass& c : benchmark_classes()) m.emplace(c.name, std::move(c));
  BenchmarkClass fin = finite_sets_class();
  m.emplace(fin.name, std::move(fin));
  return m;
}

struct ResolvedTarget {
  Target target;
  std::string class_name;
};

ResolvedTarget resolve_target(const json& spec) {
  ResolvedTarget r;
  if (spec.contains("class")) {
    auto catalog = class_catalog();
    std::string name = spec.at("class").get<std::string>();
    auto it = catalog.find(name);
    if (it == catalog.end()) throw Error("unknown benchmark class: " + name);
    r.class_name = name;
    r.target = it->second.targets(spec.value("index", 0));
    return r;
  }
  if (spec.contains("code")) {
    HypCode code = HypCode::parse(spec.at("code").get<std::string>());
    auto form = periodic_form(code);
    if (!form.has_value()) throw Error("target code must be exactly decidable");
    Target t;
    t.name = spec.value("name", code.to_string());
    PeriodicForm f = *form;
    t.membership = [f](Nat x) { return f.member(x); };
    t.finite = f.is_finite();
    if (t.finite) t.finite_bound = f.threshold;
    t.code = code;
    r.target = std::move(t);
    r.class_name = "custom";
    return r;
  }
  throw Error("target spec needs 'class' or 'code'");
}

Learner resolve_learner(const json& spec) {
  std::string name = spec.at("name").get<std::string>();
  if (!has_learner(name)) throw Error("unknown learner: " + name);
  return make_learner(name, spec.contains("params") ? spec.at("params") : json{});
}

CheckConfig config_from(const json& spec) {
  CheckConfig cfg;
  cfg.horizon = spec.value("horizon", 0);
  cfg.budget = spec.value("budget", 200);
  cfg.window = spec.value("window", 0);
  cfg.domain_bound = spec.value("domain_bound", 64);
  cfg.anomaly_cap = spec.value("anomaly_cap", 1);
  return cfg;
}

TextPrefix resolve_text(const json& spec, const Target& target, const Learner& learner,
                        Nat horizon, Nat budget) {
  std::string source = spec.at("source").get<std::string>();
  if (source == "canonical") return canonical_text(target, horizon);
  if (source == "seeded") return seeded_text(target, spec.value("seed", 0), horizon);
  if (source == "adversary") {
    std::string name = spec.at("name").get<std::string>();
    if (name == "gold") return gold_adversary(learner, spec.value("budget", budget), horizon);
    if (name == "evenodd") {
      EvenOddOptions opt;
      if (spec.contains("approx_stage")) opt.approx_stage = spec.at("approx_stage").get<Nat>();
      return evenodd_adversary(learner, horizon, opt).prefix;
    }
    if (name == "cofinite") {
      HypCode w = HypCode::parse(spec.value("W", "(tail 0)"));
      return cofinite_adversary(target, w, learner, spec.value("budget", budget), horizon).prefix;
    }
    if (name == "separation") {
      LevelAssignment a = separation_levels(spec.value("d", 2), learner,
                                            spec.value("stages", horizon),
                                            spec.value("budget", budget));
      return separation_text(a, horizon);
    }
    throw Error("unknown adversary: " + name);
  }
  throw Error("unknown text source: " + source);
}

Verdict run_criterion(const json& crit, const Trace& trace, const Target& target,
                      const CheckConfig& cfg) {
  std::string name = crit.is_string() ? crit.get<std::string>() : crit.at("name").get<std::string>();
  if (name == "cons") return check_cons(trace, cfg);
  if (name == "part") return check_part(trace, target, cfg);
  if (name == "consv_part") return check_consv_part(trace, target, cfg);
  if (name == "conf_part") return check_conf_part(trace, cfg);
  if (name == "bc") return check_bc_family(trace, target, cfg, 0);
  if (name == "bc_a")
    return check_bc_family(trace, target, cfg, crit.is_object() ? crit.value("a", cfg.anomaly_cap)
                                                                : cfg.anomaly_cap);
  if (name == "bc_star") return check_bc_family(trace, target, cfg, std::nullopt);
  if (name == "ex") return check_ex(trace, target, cfg);
  if (name == "ex_star") return check_exstar(trace, target, cfg);
  if (name == "vac") return check_vac(trace, target, cfg);
  if (name == "vac_star") return check_vacstar(trace, target, cfg);
  if (name == "finapprox") {
    std::vector<Nat> d;
    if (crit.is_object() && crit.contains("D"))
      for (const auto& v : crit.at("D")) d.push_back(v.get<Nat>());
    return check_finapprox(trace, target, FiniteSet(std::move(d)), cfg);
  }
  if (name == "weakapprox") {
    std::string v_spec = crit.is_object() ? crit.value("V", "record_holders")
                                          : std::string("record_holders");
    HypCode v_code = v_spec == "record_holders"
                         ? HypCode::fin(record_holder_set(trace.text))
                         : HypCode::parse(v_spec);
    return check_weakapprox(trace, target, v_code, cfg);
  }
  throw Error("unknown criterion: " + name);
}

int cmd_run(const std::string& spec_path, const std::string& out_flag) {
  json spec;
  {
    std::ifstream is(spec_path);
    if (!is) {
      std::cerr << "cannot read spec file: " << spec_path << "\n";
      return kExitBadInput;
    }
    is >> spec;
  }
  std::string name = spec.value("name", fs::path(spec_path).stem().string());
  CheckConfig cfg = config_from(spec);
  if (cfg.horizon == 0) {
    std::cerr << "spec needs a horizon >= 1\n";
    return kExitBadInput;
  }

  Learner learner = resolve_learner(spec.at("learner"));
  ResolvedTarget rt = resolve_target(spec.at("target"));
  TextPrefix text = resolve_text(spec.at("text"), rt.target, learner, cfg.horizon, cfg.budget);
  Trace trace = build_trace(learner, text);

  fs::path out = output_dir(out_flag);
  ordered_json trace_json = trace_to_json(trace);
  trace_json["target"] = rt.target.name;
  trace_json["class"] = rt.class_name;
  write_file(out / (name + ".trace.json"), dump(trace_json));

  std::string csv = "learner,class,target,criterion,status,witness,horizon,budget\n";
  for (const auto& crit : spec.at("criteria")) {
    Verdict v = run_criterion(crit, trace, rt.target, cfg);
    ordered_json vj;
    vj["learner"] = learner.id();
    vj["class"] = rt.class_name;
    vj["target"] = rt.target.name;
    ordered_json body = v.to_json();
    for (auto& [k, val] : body.items()) vj[k] = val;
    write_file(out / (name + "." + v.criterion + ".verdict.json"), dump(vj));
    csv += learner.id() + "," + rt.class_name + "," + rt.target.name + "," + v.criterion + "," +
           to_string(v.status) + "," + csv_quote(v.witness.dump()) + "," +
           std::to_string(cfg.horizon) + "," + std::to_string(cfg.budget) + "\n";
  }
  write_file(out / (name + ".summary.csv"), csv);
  std::cout << "wrote " << (out / name).string() << ".*\n";
  return kExitOk;
}

std::map<std::string, std::string> parse_kv(const std::vector<std::string>& kvs) {
  std::map<std::string, std::string> m;
  for (const std::string& kv : kvs) {
    auto eq = kv.find('=');
    if (eq == std::string::npos) throw Error("--param expects k=v, got: " + kv);
    m[kv.substr(0, eq)] = kv.substr(eq + 1);
  }
  return m;
}

int cmd_duel(const std::string& learner_name, const std::string& adversary,
             const std::vector<std::string>& kvs, const std::string& learner_params,
             const std::string& out_flag) {
  if (!has_learner(learner_name)) {
    std::cerr << "unknown learner: " << learner_name << "\n";
    return kExitBadInput;
  }
  auto params = parse_kv(kvs);
  auto get = [&](const std::string& k, Nat dflt) {
    auto it = params.find(k);
    return it == params.end() ? dflt : Nat(std::stoull(it->second));
  };
  Learner learner =
      make_learner(learner_name, learner_params.empty() ? json{} : json::parse(learner_params));

  ordered_json outcome;
  outcome["learner"] = learner.id();
  outcome["adversary"] = adversary;
  ordered_json audit = ordered_json::array();
  Nat n = get("n", 400);

  if (adversary == "gold") {
    AuditLog log;
    TextPrefix t = gold_adversary(learner, get("budget", 128), n, &log);
    audit = log.to_json();
    FiniteSet range = t.range();
    bool ascending = range.size() >= n / 2;
    outcome["classification"] = ascending ? "ascending" : "stuck";
    outcome["range_size"] = range.size();
    outcome["prefix"] = t.to_json();
  } else if (adversary == "evenodd") {
    EvenOddOptions opt;
    if (params.count("approx_stage")) opt.approx_stage = get("approx_stage", 0);
    EvenOddResult r = evenodd_adversary(learner, n, opt);
    audit = r.log.to_json();
    outcome["alternations"] = r.alternations;
    outcome["prefix"] = r.prefix.to_json();
  } else if (adversary == "cofinite") {
    auto catalog = class_catalog();
    Target target = catalog.at("cofinite").targets(get("target_index", 5));
    HypCode w = HypCode::parse(params.count("W") ? params.at("W") : "(tail 0)");
    CofiniteResult r = cofinite_adversary(target, w, learner, get("budget", 128), n);
    audit = r.log.to_json();
    outcome["outcome"] = r.outcome == CofiniteOutcome::StuckInA ? "stuck_in_a" : "alternating";
    outcome["alternations"] = r.alternations;
    outcome["withheld"] = r.current_w;
    outcome["prefix"] = r.prefix.to_json();
  } else if (adversary == "separation") {
    LevelAssignment a = separation_levels(get("d", 2), learner, get("stages", n), get("budget", 0));
    Nat max_level = 0;
    for (Nat k = 0; k < a.stages; ++k) max_level = std::max(max_level, a.level(a.d + k));
    outcome["max_level"] = max_level;
    outcome["cancelled"] = a.cancelled.size();
    outcome["prefix"] = separation_text(a, std::min<Nat>(n, a.stages)).to_json();
  } else {
    std::cerr << "unknown adversary: " << adversary << "\n";
    return kExitBadInput;
  }

  fs::path out = output_dir(out_flag);
  std::string stem = learner_name + "__" + adversary;
  write_file(out / (stem + ".audit.json"), dump(audit));
  write_file(out / (stem + ".outcome.json"), dump(outcome));
  std::cout << "wrote " << (out / stem).string() << ".*\n";
  return kExitOk;
}

std::vector<fs::path> expand_glob(const std::string& pattern) {
  fs::path p(pattern);
  std::string fname = p.filename().string();
  if (fname.find('*') == std::string::npos) {
    if (fs::exists(p)) return {p};
    return {};
  }
  fs::path dir = p.parent_path().empty() ? "." : p.parent_path();
  // Match '*' wildcards in the filename component.
  auto matches = [&](const std::string& name) {
    std::size_t ni = 0;
    std::size_t star = std::string::npos, star_ni = 0;
    std::size_t pi = 0;
    while (ni < name.size()) {
      if (pi < fname.size() && (fname[pi] == name[ni])) {
        ++pi;
        ++ni;
      } else if (pi < fname.size() && fname[pi] == '*') {
        star = pi++;
        star_ni = ni;
      } else if (star != std::string::npos) {
        pi = star + 1;
        ni = ++star_ni;
      } else {
        return false;
      }
    }
    while (pi < fname.size() && fname[pi] == '*') ++pi;
    return pi == fname.size();
  };
  std::vector<fs::path> out;
  if (!fs::exists(dir)) return out;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file() && matches(entry.path().filename().string()))
      out.push_back(entry.path());
  std::sort(out.begin(), out.end());
  return out;
}

int cmd_report(const std::vector<std::string>& patterns, const std::string& out_flag) {
  struct Cell {
    std::string status;
    fs::file_time_type mtime;
    std::string cls, target, witness, horizon, budget;
  };
  // (learner, criterion) -> cell; latest file time wins.
  std::map<std::pair<std::string, std::string>, Cell> cells;
  bool any_bad = false;
  Nat files = 0;
  for (const std::string& pattern : patterns) {
    for (const fs::path& p : expand_glob(pattern)) {
      ++files;
      json j;
      try {
        std::ifstream is(p);
        is >> j;
        std::string learner = j.at("learner").get<std::string>();
        std::string criterion = j.at("criterion").get<std::string>();
        Cell cell;
        cell.status = j.at("status").get<std::string>();
        cell.mtime = fs::last_write_time(p);
        cell.cls = j.value("class", "");
        cell.target = j.value("target", "");
        cell.witness = j.contains("witness") ? j.at("witness").dump() : "";
        if (j.contains("config")) {
          cell.horizon = std::to_string(j.at("config").value("horizon", 0));
          cell.budget = std::to_string(j.at("config").value("budget", 0));
        }
        auto key = std::make_pair(learner, criterion);
        auto it = cells.find(key);
        if (it == cells.end()) {
          cells.emplace(key, std::move(cell));
        } else if (cell.mtime >= it->second.mtime) {
          std::cerr << "note: duplicate cell (" << learner << ", " << criterion
                    << "), keeping the newer file " << p.string() << "\n";
          it->second = std::move(cell);
        }
      } catch (const std::exception& e) {
        std::cerr << "skipping malformed verdict file " << p.string() << ": " << e.what() << "\n";
        any_bad = true;
      }
    }
  }

  std::vector<std::string> criteria, learners;
  for (const auto& [key, cell] : cells) {
    if (std::find(learners.begin(), learners.end(), key.first) == learners.end())
      learners.push_back(key.first);
    if (std::find(criteria.begin(), criteria.end(), key.second) == criteria.end())
      criteria.push_back(key.second);
  }

  std::string csv = "learner,class,target,criterion,status,witness,horizon,budget\n";
  for (const auto& [key, cell] : cells)
    csv += key.first + "," + cell.cls + "," + cell.target + "," + key.second + "," + cell.status +
           "," + csv_quote(cell.witness) + "," + cell.horizon + "," + cell.budget + "\n";
  fs::path out = output_dir(out_flag);
  write_file(out / "report.csv", csv);

  // Human-readable matrix.
  std::cout << "criteria x learner matrix (" << files << " files)\n";
  std::size_t name_w = 8;
  for (const auto& l : learners) name_w = std::max(name_w, l.size());
  std::cout << std::string(name_w, ' ');
  for (const auto& c : criteria) std::cout << "  " << c;
  std::cout << "\n";
  for (const auto& l : learners) {
    std::cout << l << std::string(name_w - l.size(), ' ');
    for (const auto& c : criteria) {
      auto it = cells.find({l, c});
      std::string s = it == cells.end() ? "-" : it->second.status;
      std::cout << "  " << s << std::string(c.size() > s.size() ? c.size() - s.size() : 0, ' ');
    }
    std::cout << "\n";
  }
  return any_bad ? kExitPartial : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"limitlab: finite-horizon experiments for limit learners"};
  app.require_subcommand(1);

  std::string out_flag;
  app.add_option("--out", out_flag, "output directory (default $LIMITLAB_OUT or .)");

  auto* run = app.add_subcommand("run", "run an experiment spec");
  std::string spec_path;
  run->add_option("spec", spec_path, "experiment spec json")->required();

  auto* duel = app.add_subcommand("duel", "run an adversary against a learner");
  std::string learner_name, adversary_name, learner_params;
  std::vector<std::string> kvs;
  duel->add_option("learner", learner_name)->required();
  duel->add_option("adversary", adversary_name)->required();
  duel->add_option("--param", kvs, "adversary parameter k=v");
  duel->add_option("--learner-params", learner_params, "learner params as json");

  auto* report = app.add_subcommand("report", "aggregate verdict files");
  std::vector<std::string> patterns;
  report->add_option("glob", patterns, "verdict file globs")->expected(-1);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return cmd_run(spec_path, out_flag);
    if (*duel) return cmd_duel(learner_name, adversary_name, kvs, learner_params, out_flag);
    if (*report) return cmd_report(patterns, out_flag);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  }
  return kExitOk;
}
