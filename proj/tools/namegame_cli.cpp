// Command-line front end for the name-popularity simulation library.
// Subcommands: simulate, closed-form, fit, analyze, mutate.
// Exit codes: 0 success, 1 invalid usage or config, 2 I/O or parse failure.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "namegame/namegame.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

namespace {

// --- Shared file loading.

// Tables arrive as CSV ("name,frequency" header), JSON (one object), or
// raw SSA year files (name,sex,count, no header). Sniff the header first,
// fall back on the extension, treat everything else as SSA.
namegame::NameTable load_table_any(const std::string& path, namegame::SexFilter sex,
                                   namegame::ParseMode mode, std::size_t* skipped) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw namegame::io_error("cannot open: " + path);
  std::string first_line;
  std::getline(in, first_line);
  in.clear();
  in.seekg(0);
  if (namegame::trim(first_line) == "name,frequency") return namegame::from_csv(in);
  if (fs::path(path).extension() == ".json") {
    json obj;
    try {
      obj = json::parse(in);
    } catch (const json::exception& e) {
      throw namegame::parse_error(0, std::string("json: ") + e.what());
    }
    return namegame::from_json(obj);
  }
  namegame::SsaParseResult parsed = namegame::parse_ssa_year(in, mode);
  if (skipped) *skipped = parsed.skipped;
  if (parsed.skipped > 0)
    std::cerr << "warning: skipped " << parsed.skipped << " malformed line(s) in "
              << path << "\n";
  return namegame::build_table(parsed.records, sex);
}

// Explicit preference mass file: CSV with header "mu,mass".
namegame::DiscretePrefMass load_pref_mass(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw namegame::io_error("cannot open: " + path);
  std::string line;
  if (!std::getline(in, line) || namegame::trim(line) != "mu,mass")
    throw namegame::parse_error(1, "preference mass csv: expected header 'mu,mass'");
  std::vector<namegame::PrefPoint> points;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view row = namegame::trim(line);
    if (row.empty()) continue;
    auto fields = namegame::split(row, ',');
    if (fields.size() != 2)
      throw namegame::parse_error(line_no, "preference mass csv: expected 2 fields");
    try {
      points.push_back({namegame::parse_proportion(fields[0], "mu"),
                        namegame::parse_proportion(fields[1], "mass")});
    } catch (const namegame::error& e) {
      throw namegame::parse_error(line_no, e.what());
    }
  }
  return namegame::DiscretePrefMass::from_points(std::move(points));
}

// --- simulate: run configuration.

struct InitialSpec {
  std::string kind = "powerlaw";  // powerlaw | file
  double t = 1.0;
  std::size_t n_ranks = 1000;
  std::string path;
  std::string sex = "all";
};

struct PrefSpec {
  std::string kind = "lognormal";  // lognormal | powerlaw | dweezil | explicit
  double mode = 1e-3;
  double sigma = 1.0;
  double floor = 0.0;  // 0 = resolve a default
  double t_prime = 0.0;
  std::size_t bins = 200;
  std::string path;
};

struct RunConfig {
  InitialSpec initial;
  PrefSpec prefs;
  std::size_t steps = 1;
  std::string mode = "deterministic";  // deterministic | montecarlo
  std::size_t population = 0;
  std::uint64_t seed = 0;
  std::string out;
  bool strict = true;
  std::optional<json> inline_table;  // embedded by a previous run's manifest
};

InitialSpec parse_initial_spec(const std::string& s, const std::string& sex) {
  InitialSpec spec;
  spec.sex = sex;
  auto colon = s.find(':');
  std::string head = s.substr(0, colon);
  std::string rest = colon == std::string::npos ? "" : s.substr(colon + 1);
  if (head == "powerlaw") {
    auto fields = namegame::split(rest, ',');
    if (rest.empty() || fields.size() > 2)
      throw namegame::invalid_input("--initial powerlaw wants 'powerlaw:t[,n_ranks]'");
    spec.t = namegame::parse_double(fields[0], "t");
    if (fields.size() == 2)
      spec.n_ranks = static_cast<std::size_t>(
          namegame::parse_double(fields[1], "n_ranks"));
  } else if (head == "file") {
    if (rest.empty()) throw namegame::invalid_input("--initial file wants 'file:path'");
    spec.kind = "file";
    spec.path = rest;
  } else {
    throw namegame::invalid_input("--initial kind must be powerlaw or file");
  }
  return spec;
}

PrefSpec parse_pref_spec(const std::string& s) {
  PrefSpec spec;
  auto colon = s.find(':');
  std::string head = s.substr(0, colon);
  std::string rest = colon == std::string::npos ? "" : s.substr(colon + 1);
  if (head == "lognormal") {
    auto fields = namegame::split(rest, ',');
    if (rest.empty() || fields.size() > 3)
      throw namegame::invalid_input(
          "--prefs lognormal wants 'lognormal:mode[,sigma[,floor]]'");
    spec.mode = namegame::parse_proportion(fields[0], "mode");
    if (fields.size() >= 2) spec.sigma = namegame::parse_double(fields[1], "sigma");
    if (fields.size() == 3) spec.floor = namegame::parse_proportion(fields[2], "floor");
  } else if (head == "powerlaw") {
    auto fields = namegame::split(rest, ',');
    if (rest.empty() || fields.size() > 3)
      throw namegame::invalid_input(
          "--prefs powerlaw wants 'powerlaw:t_prime[,floor[,bins]]'");
    spec.kind = "powerlaw";
    spec.t_prime = namegame::parse_double(fields[0], "t_prime");
    spec.floor = fields.size() >= 2
                     ? namegame::parse_proportion(fields[1], "floor")
                     : 1e-5;
    if (fields.size() == 3)
      spec.bins = static_cast<std::size_t>(namegame::parse_double(fields[2], "bins"));
  } else if (head == "dweezil") {
    spec.kind = "dweezil";
  } else if (head == "file" || head == "explicit") {
    if (rest.empty()) throw namegame::invalid_input("--prefs file wants 'file:path'");
    spec.kind = "explicit";
    spec.path = rest;
  } else {
    throw namegame::invalid_input(
        "--prefs kind must be lognormal, powerlaw, dweezil, or file");
  }
  return spec;
}

double json_proportion(const json& v, const char* what) {
  if (v.is_string()) return namegame::parse_proportion(v.get<std::string>(), what);
  if (v.is_number()) {
    double d = v.get<double>();
    if (!(d >= 0.0 && d <= 1.0))
      throw namegame::invalid_domain(std::string(what) + " outside [0, 1]");
    return d;
  }
  throw namegame::invalid_input(std::string(what) + ": expected number or string");
}

RunConfig config_from_json(const json& root) {
  const json& j = root.contains("config") ? root.at("config") : root;
  RunConfig cfg;
  if (j.contains("initial")) {
    const json& i = j.at("initial");
    cfg.initial.kind = i.value("kind", "powerlaw");
    if (cfg.initial.kind == "powerlaw") {
      cfg.initial.t = i.value("t", 1.0);
      cfg.initial.n_ranks = i.value("n_ranks", std::size_t{1000});
    } else if (cfg.initial.kind == "file") {
      cfg.initial.path = i.value("path", "");
      cfg.initial.sex = i.value("sex", "all");
    } else {
      throw namegame::invalid_input("config: initial.kind must be powerlaw or file");
    }
  }
  if (j.contains("preferences")) {
    const json& p = j.at("preferences");
    cfg.prefs.kind = p.value("kind", "lognormal");
    if (cfg.prefs.kind == "lognormal") {
      if (p.contains("mode")) cfg.prefs.mode = json_proportion(p.at("mode"), "mode");
      cfg.prefs.sigma = p.value("sigma", 1.0);
      if (p.contains("floor")) cfg.prefs.floor = json_proportion(p.at("floor"), "floor");
    } else if (cfg.prefs.kind == "powerlaw") {
      cfg.prefs.t_prime = p.value("t_prime", 0.0);
      cfg.prefs.floor =
          p.contains("floor") ? json_proportion(p.at("floor"), "floor") : 1e-5;
      cfg.prefs.bins = p.value("bins", std::size_t{200});
    } else if (cfg.prefs.kind == "explicit") {
      cfg.prefs.path = p.value("path", "");
    } else if (cfg.prefs.kind != "dweezil") {
      throw namegame::invalid_input(
          "config: preferences.kind must be lognormal, powerlaw, dweezil, or explicit");
    }
  }
  cfg.steps = j.value("steps", std::size_t{1});
  cfg.mode = j.value("mode", "deterministic");
  cfg.population = j.value("population", std::size_t{0});
  cfg.seed = j.value("seed", std::uint64_t{0});
  cfg.out = j.value("out", "");
  cfg.strict = j.value("strict", true);
  if (root.contains("initial_table")) cfg.inline_table = root.at("initial_table");
  return cfg;
}

ordered_json config_to_json(const RunConfig& cfg, double resolved_floor) {
  ordered_json initial;
  initial["kind"] = cfg.initial.kind;
  if (cfg.initial.kind == "powerlaw") {
    initial["t"] = cfg.initial.t;
    initial["n_ranks"] = cfg.initial.n_ranks;
  } else {
    initial["path"] = cfg.initial.path;
    initial["sex"] = cfg.initial.sex;
  }
  ordered_json prefs;
  prefs["kind"] = cfg.prefs.kind;
  if (cfg.prefs.kind == "lognormal") {
    prefs["mode"] = cfg.prefs.mode;
    prefs["sigma"] = cfg.prefs.sigma;
    prefs["floor"] = resolved_floor;
  } else if (cfg.prefs.kind == "powerlaw") {
    prefs["t_prime"] = cfg.prefs.t_prime;
    prefs["floor"] = cfg.prefs.floor;
    prefs["bins"] = cfg.prefs.bins;
  } else if (cfg.prefs.kind == "explicit") {
    prefs["path"] = cfg.prefs.path;
  }
  ordered_json out;
  out["initial"] = initial;
  out["preferences"] = prefs;
  out["steps"] = cfg.steps;
  out["mode"] = cfg.mode;
  out["population"] = cfg.population;
  out["seed"] = cfg.seed;
  out["strict"] = cfg.strict;
  return out;
}

int run_simulate(const RunConfig& cfg) {
  if (cfg.out.empty())
    throw namegame::invalid_input("simulate: --out directory is required");
  if (cfg.mode != "deterministic" && cfg.mode != "montecarlo")
    throw namegame::invalid_input("simulate: --mode must be deterministic or montecarlo");
  namegame::ParseMode parse_mode =
      cfg.strict ? namegame::ParseMode::strict : namegame::ParseMode::lenient;

  namegame::NameTable initial = [&]() {
    if (cfg.inline_table) return namegame::from_json(*cfg.inline_table);
    if (cfg.initial.kind == "powerlaw") {
      auto params = namegame::powerlaw_normalize(cfg.initial.t, cfg.initial.n_ranks);
      return namegame::powerlaw_table(params, namegame::rank_labels(params.n_ranks));
    }
    if (cfg.initial.path.empty())
      throw namegame::invalid_input("simulate: initial file path missing");
    return load_table_any(cfg.initial.path, namegame::parse_sex_filter(cfg.initial.sex),
                          parse_mode, nullptr);
  }();

  namegame::IterateOptions options;
  options.mode = cfg.mode == "montecarlo" ? namegame::StepMode::montecarlo
                                          : namegame::StepMode::deterministic;
  options.population = cfg.population;
  options.seed = cfg.seed;
  options.lognormal_bins = cfg.prefs.bins;
  if (options.mode == namegame::StepMode::montecarlo && options.population == 0)
    throw namegame::invalid_input("simulate: montecarlo mode needs --population > 0");

  double resolved_floor = cfg.prefs.floor;
  namegame::PreferenceModel model = [&]() -> namegame::PreferenceModel {
    if (cfg.prefs.kind == "lognormal") {
      if (resolved_floor == 0.0)
        resolved_floor = options.mode == namegame::StepMode::montecarlo
                             ? namegame::default_floor(options.population)
                             : 1e-7;
      return namegame::LogNormalPrefs{
          {cfg.prefs.mode, cfg.prefs.sigma, resolved_floor}};
    }
    if (cfg.prefs.kind == "powerlaw")
      return namegame::PowerLawPrefs{cfg.prefs.t_prime, cfg.prefs.floor, cfg.prefs.bins};
    if (cfg.prefs.kind == "dweezil") return namegame::DweezilPrefs{};
    if (cfg.prefs.kind == "explicit") {
      if (cfg.prefs.path.empty())
        throw namegame::invalid_input("simulate: explicit preferences need a path");
      return namegame::ExplicitPrefs{load_pref_mass(cfg.prefs.path)};
    }
    throw namegame::invalid_input("simulate: unknown preferences kind '" +
                                  cfg.prefs.kind + "'");
  }();

  namegame::Trajectory traj = namegame::iterate(initial, model, cfg.steps, options);
  namegame::write_trajectory(traj, cfg.out);

  // One histogram per error measure per Monte Carlo step, on shared log
  // bins wide enough for ratios, absolute gaps, and relative errors alike.
  std::vector<double> edges = namegame::log_edges(1e-8, 1e4, 96);
  for (std::size_t s = 0; s < traj.outcomes.size(); ++s) {
    if (traj.outcomes[s].empty()) continue;
    namegame::ErrorHistograms hists = namegame::error_histograms(
        traj.outcomes[s], edges, namegame::BinScale::log);
    auto write = [&](const char* measure, const namegame::Histogram& h) {
      char name[48];
      std::snprintf(name, sizeof name, "hist_step_%04zu_%s.csv", s + 1, measure);
      std::ofstream hout(fs::path(cfg.out) / name, std::ios::binary);
      if (!hout) throw namegame::io_error(std::string("cannot write ") + name);
      namegame::write_histogram_csv(h, hout);
    };
    write("ratio", hists.ratio);
    write("absdiff", hists.absdiff);
    write("relerror", hists.relerror);
    if (hists.skipped > 0)
      std::cerr << "warning: step " << s + 1 << ": " << hists.skipped
                << " outcome(s) with zero desired popularity skipped\n";
  }

  ordered_json manifest;
  manifest["tool"] = "namegame";
  manifest["version"] = namegame::kVersion;
  manifest["command"] = "simulate";
  manifest["config"] = config_to_json(cfg, resolved_floor);
  manifest["initial_table"] = namegame::to_json(traj.tables.front());
  std::ofstream mout(fs::path(cfg.out) / "manifest.json", std::ios::binary);
  if (!mout) throw namegame::io_error("cannot write manifest.json");
  mout << manifest.dump(2) << '\n';
  std::cout << "wrote " << traj.tables.size() << " step table(s) to " << cfg.out
            << "\n";
  return 0;
}

// --- closed-form: exponent trajectory under repeated composition.

int run_closed_form(double t, double t_prime, std::size_t n_steps,
                    std::size_t n_ranks, const std::string& out_path) {
  if (n_ranks < 2)
    throw namegame::invalid_input("closed-form: --n-ranks must be at least 2");
  auto start = namegame::powerlaw_normalize(t, n_ranks);
  auto laws = namegame::closed_form_iterate(start, t_prime, n_steps);
  std::ostringstream csv;
  csv << "step,exponent,top1_share,orientation\n";
  for (std::size_t k = 0; k < laws.size(); ++k) {
    const auto& p = laws[k];
    const char* orientation =
        p.t > 0 ? "descending" : (p.t < 0 ? "ascending" : "flat");
    csv << k << ',' << namegame::format_double(p.t) << ','
        << namegame::format_double(namegame::powerlaw_pmf(p, 1)) << ','
        << orientation << '\n';
  }
  if (out_path.empty()) {
    std::cout << csv.str();
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw namegame::io_error("cannot open for writing: " + out_path);
    out << csv.str();
    std::cout << "wrote " << out_path << "\n";
  }
  return 0;
}

// --- fit: power-law fit report plus plot-ready rank-frequency data.

int run_fit(const std::string& path, const std::string& sex, bool strict,
            std::string out_path) {
  namegame::NameTable table =
      load_table_any(path, namegame::parse_sex_filter(sex),
                     strict ? namegame::ParseMode::strict : namegame::ParseMode::lenient,
                     nullptr);
  namegame::PowerLawFit fit = namegame::fit_powerlaw(table);
  if (out_path.empty()) out_path = path + ".rankfreq.csv";
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw namegame::io_error("cannot open for writing: " + out_path);
  out << "rank,name,frequency\n";
  for (std::size_t i = 0; i < table.size(); ++i)
    out << i + 1 << ',' << table.entries()[i].name << ','
        << namegame::format_double(table.entries()[i].frequency) << '\n';
  std::cout << "names=" << table.size() << "\n"
            << "t_hat=" << namegame::format_double(fit.t_hat) << "\n"
            << "k_hat=" << namegame::format_double(fit.k_hat) << "\n"
            << "r2=" << namegame::format_double(fit.r2) << "\n"
            << "rank_frequency_csv=" << out_path << "\n";
  return 0;
}

// --- analyze: name-list popularity stats, optional two-list Welch test.

int run_analyze(const std::string& path, const std::string& sex, bool strict,
                bool fold, const std::vector<std::string>& lists) {
  if (lists.empty()) throw namegame::invalid_input("analyze: give at least one --list");
  if (lists.size() > 2)
    throw namegame::invalid_input("analyze: at most two --list groups");
  namegame::NameTable table =
      load_table_any(path, namegame::parse_sex_filter(sex),
                     strict ? namegame::ParseMode::strict : namegame::ParseMode::lenient,
                     nullptr);
  std::vector<namegame::ListStats> stats;
  for (std::size_t i = 0; i < lists.size(); ++i) {
    std::vector<std::string> names;
    for (auto part : namegame::split(lists[i], ','))
      if (!namegame::trim(part).empty()) names.emplace_back(namegame::trim(part));
    namegame::NameListStats s = namegame::name_list_stats(table, names, fold);
    stats.push_back(s.stats);
    std::cout << "list" << i + 1 << ": n=" << s.stats.n << " missing=" << s.missing
              << " mean=" << namegame::format_double(s.stats.mean) << " ("
              << namegame::format_double(s.stats.mean * 100.0) << "%)"
              << " std=" << namegame::format_double(s.stats.std) << " ("
              << namegame::format_double(s.stats.std * 100.0) << "%)\n";
    if (s.missing > 0)
      std::cout << "warning: list" << i + 1 << " has " << s.missing
                << " name(s) absent from the table (scored as 0)\n";
  }
  if (stats.size() == 2) {
    namegame::WelchResult w = namegame::welch_t_test(stats[0], stats[1]);
    std::cout << "welch: t=" << namegame::format_double(w.t)
              << " df=" << namegame::format_double(w.df)
              << " p=" << namegame::format_double(w.p) << "\n";
  }
  return 0;
}

// --- mutate: penalized novel-name choice, optional lambda sweep.

int run_mutate(const std::string& path, double mu, double lambda,
               std::size_t max_edits, const std::string& alphabet, bool sweep,
               double lambda_min, double lambda_max, std::size_t sweep_count,
               const std::string& out_path) {
  namegame::NameTable table = load_table_any(path, namegame::SexFilter::all,
                                             namegame::ParseMode::strict, nullptr);
  namegame::MutationConfig config;
  config.lambda = lambda;
  config.max_edits = max_edits;
  if (!alphabet.empty()) config.alphabet = alphabet;
  if (!sweep) {
    namegame::MutationChoice choice = namegame::choose_mutated_name(table, mu, config);
    std::cout << "base=" << choice.base << "\ncandidate=" << choice.candidate
              << "\ncost=" << namegame::format_double(choice.cost)
              << "\ndistance=" << choice.distance << "\nassumed_freq="
              << namegame::format_double(choice.assumed_freq) << "\n";
    return 0;
  }
  if (sweep_count < 2) throw namegame::invalid_input("mutate: --sweep-count >= 2");
  if (!(lambda_min > 0.0) || !(lambda_max > lambda_min))
    throw namegame::invalid_input("mutate: need 0 < --lambda-min < --lambda-max");
  std::vector<double> lambdas(sweep_count);
  double llo = std::log(lambda_min), lhi = std::log(lambda_max);
  for (std::size_t i = 0; i < sweep_count; ++i)
    lambdas[i] = std::exp(llo + (lhi - llo) * static_cast<double>(i) /
                                    static_cast<double>(sweep_count - 1));
  auto choices = namegame::mutation_sweep(table, mu, lambdas, config);
  std::ostringstream csv;
  csv << "lambda,distance,cost,base,candidate\n";
  for (std::size_t i = 0; i < choices.size(); ++i)
    csv << namegame::format_double(lambdas[i]) << ',' << choices[i].distance << ','
        << namegame::format_double(choices[i].cost) << ',' << choices[i].base << ','
        << choices[i].candidate << '\n';
  if (out_path.empty()) {
    std::cout << csv.str();
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw namegame::io_error("cannot open for writing: " + out_path);
    out << csv.str();
    std::cout << "wrote " << out_path << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"baby-name popularity dynamics: simulate, fit, and analyze"};
  app.set_version_flag("--version", namegame::kVersion);
  app.require_subcommand(1);

  // simulate
  auto* sim = app.add_subcommand("simulate", "run the naming game for n steps");
  std::string cfg_path, initial_str, prefs_str, mode_str, out_dir, sex_str = "all";
  std::size_t steps = 1, population = 0;
  std::uint64_t seed = 0;
  bool lenient = false;
  auto* opt_cfg = sim->add_option("--config", cfg_path, "JSON run config or manifest");
  auto* opt_initial =
      sim->add_option("--initial", initial_str, "powerlaw:t[,n] or file:path");
  auto* opt_prefs = sim->add_option(
      "--prefs", prefs_str,
      "lognormal:mode[,sigma[,floor]] | powerlaw:t'[,floor[,bins]] | dweezil | file:path");
  auto* opt_steps = sim->add_option("--steps", steps, "generations to run");
  auto* opt_mode = sim->add_option("--mode", mode_str, "deterministic or montecarlo");
  auto* opt_pop = sim->add_option("--population", population, "parents per step");
  auto* opt_seed = sim->add_option("--seed", seed, "root seed");
  auto* opt_out = sim->add_option("--out", out_dir, "output directory");
  auto* opt_sex = sim->add_option("--sex", sex_str, "sex filter for SSA input (F/M/all)");
  auto* opt_lenient =
      sim->add_flag("--lenient,!--strict", lenient, "skip malformed SSA lines");

  // closed-form
  auto* cf = app.add_subcommand("closed-form",
                                "exponent trajectory under repeated composition");
  double cf_t = 1.0, cf_tp = 0.0;
  std::size_t cf_n = 1, cf_ranks = 1000;
  std::string cf_out;
  cf->add_option("--t", cf_t, "starting exponent")->required();
  cf->add_option("--t-prime", cf_tp, "preference exponent")->required();
  cf->add_option("--n", cf_n, "number of steps");
  cf->add_option("--n-ranks", cf_ranks, "names in the law (>= 2)");
  cf->add_option("--out", cf_out, "CSV path (default: stdout)");

  // fit
  auto* fit = app.add_subcommand("fit", "power-law fit of a table or SSA file");
  std::string fit_path, fit_sex = "all", fit_out;
  bool fit_lenient = false;
  fit->add_option("path", fit_path, "table CSV/JSON or SSA year file")->required();
  fit->add_option("--sex", fit_sex, "sex filter for SSA input (F/M/all)");
  fit->add_option("--out", fit_out, "rank-frequency CSV (default: <path>.rankfreq.csv)");
  fit->add_flag("--lenient,!--strict", fit_lenient, "skip malformed SSA lines");

  // analyze
  auto* an = app.add_subcommand("analyze", "popularity stats for name lists");
  std::string an_path, an_sex = "all";
  std::vector<std::string> an_lists;
  bool an_fold = false, an_lenient = false;
  an->add_option("--table", an_path, "table CSV/JSON or SSA year file")->required();
  an->add_option("--list", an_lists, "comma-separated names (repeat for two lists)")
      ->required();
  an->add_option("--sex", an_sex, "sex filter for SSA input (F/M/all)");
  an->add_flag("--fold", an_fold, "case-insensitive name matching");
  an->add_flag("--lenient,!--strict", an_lenient, "skip malformed SSA lines");

  // mutate
  auto* mu_cmd = app.add_subcommand("mutate", "penalized novel-name choice");
  std::string mu_path, mu_str = "0", mu_alphabet, mu_out;
  double mu_lambda = 0.0, mu_lmin = 1e-6, mu_lmax = 10.0;
  std::size_t mu_edits = 1, mu_count = 20;
  bool mu_sweep = false;
  mu_cmd->add_option("--table", mu_path, "table CSV/JSON")->required();
  mu_cmd->add_option("--mu", mu_str, "desired popularity (proportion or percent)");
  mu_cmd->add_option("--lambda", mu_lambda, "edit-distance penalty weight");
  mu_cmd->add_option("--max-edits", mu_edits, "candidate search radius");
  mu_cmd->add_option("--alphabet", mu_alphabet, "edit alphabet (default a-zA-Z)");
  mu_cmd->add_flag("--sweep", mu_sweep, "emit chosen distance vs lambda CSV");
  mu_cmd->add_option("--lambda-min", mu_lmin, "sweep start");
  mu_cmd->add_option("--lambda-max", mu_lmax, "sweep end");
  mu_cmd->add_option("--sweep-count", mu_count, "sweep points");
  mu_cmd->add_option("--out", mu_out, "sweep CSV path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (sim->parsed()) {
      RunConfig cfg;
      if (opt_cfg->count() > 0) {
        std::ifstream in(cfg_path, std::ios::binary);
        if (!in) throw namegame::io_error("cannot open: " + cfg_path);
        json root;
        try {
          root = json::parse(in);
        } catch (const json::exception& e) {
          throw namegame::parse_error(0, std::string("config json: ") + e.what());
        }
        cfg = config_from_json(root);
      }
      if (opt_initial->count() > 0)
        cfg.initial = parse_initial_spec(initial_str, sex_str);
      else if (opt_sex->count() > 0)
        cfg.initial.sex = sex_str;
      if (opt_prefs->count() > 0) cfg.prefs = parse_pref_spec(prefs_str);
      if (opt_steps->count() > 0) cfg.steps = steps;
      if (opt_mode->count() > 0) cfg.mode = mode_str;
      if (opt_pop->count() > 0) cfg.population = population;
      if (opt_seed->count() > 0) cfg.seed = seed;
      if (opt_out->count() > 0) cfg.out = out_dir;
      if (opt_lenient->count() > 0) cfg.strict = !lenient;
      return run_simulate(cfg);
    }
    if (cf->parsed()) return run_closed_form(cf_t, cf_tp, cf_n, cf_ranks, cf_out);
    if (fit->parsed()) return run_fit(fit_path, fit_sex, !fit_lenient, fit_out);
    if (an->parsed()) return run_analyze(an_path, an_sex, !an_lenient, an_fold, an_lists);
    if (mu_cmd->parsed())
      return run_mutate(mu_path, namegame::parse_proportion(mu_str, "mu"), mu_lambda,
                        mu_edits, mu_alphabet, mu_sweep, mu_lmin, mu_lmax, mu_count,
                        mu_out);
  } catch (const namegame::parse_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const namegame::io_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const namegame::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
