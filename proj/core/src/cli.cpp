#include "baum/cli.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <numeric>
#include <sstream>
#include <thread>

#include "baum/baselines.hpp"
#include "baum/enrichment.hpp"
#include "baum/inference.hpp"
#include "baum/io.hpp"
#include "baum/sampler.hpp"
#include "baum/simulation.hpp"

namespace fs = std::filesystem;

namespace baum {

namespace {

constexpr const char* kVersion = "0.1.0";

int default_workers() {
  if (const char* env = std::getenv("BAUM_WORKERS")) {
    int n = std::atoi(env);
    if (n >= 1) return n;
  }
  return 1;
}

class ManifestWriter {
 public:
  ManifestWriter(const std::string& dir, const std::string& subcommand)
      : path_(fs::path(dir) / "manifest.txt"), start_(std::chrono::steady_clock::now()) {
    fields_["subcommand"] = subcommand;
    fields_["version"] = kVersion;
  }
  void set(const std::string& k, const std::string& v) { fields_[k] = v; }
  void set(const std::string& k, double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    fields_[k] = os.str();
  }
  void set(const std::string& k, std::uint64_t v) { fields_[k] = std::to_string(v); }
  ~ManifestWriter() {
    auto secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_);
    std::ostringstream os;
    os << secs.count();
    fields_["wall_time_sec"] = os.str();
    try {
      write_manifest(path_.string(), fields_);
    } catch (...) {
    }
  }

 private:
  fs::path path_;
  std::map<std::string, std::string> fields_;
  std::chrono::steady_clock::time_point start_;
};

void echo_config(ManifestWriter& man, const Hyperparameters& hp, const ChainConfig& cfg) {
  man.set("hp.a1", hp.a1); man.set("hp.b1", hp.b1);
  man.set("hp.a2", hp.a2); man.set("hp.b2", hp.b2);
  man.set("hp.a3", hp.a3);
  man.set("hp.a4", hp.a4); man.set("hp.b4", hp.b4);
  man.set("hp.a5", hp.a5); man.set("hp.b5", hp.b5);
  man.set("hp.G", std::to_string(hp.G));
  {
    std::ostringstream os;
    os << std::setprecision(17);
    for (size_t g = 0; g < hp.mu.size(); ++g) os << (g ? "," : "") << hp.mu[g];
    man.set("hp.mu", os.str());
  }
  man.set("hp.degenerate_mean", std::to_string(hp.degenerate_mean ? 1 : 0));
  man.set("hp.pi1", hp.pi1);
  man.set("hp.rho0", hp.rho0); man.set("hp.rho1", hp.rho1);
  man.set("hp.tau", hp.tau);
  man.set("hp.alpha_fdr", hp.alpha_fdr);
  man.set("chain.n_burnin", std::to_string(cfg.n_burnin));
  man.set("chain.n_iter", std::to_string(cfg.n_iter));
  man.set("chain.thinning", std::to_string(cfg.thinning));
  man.set("chain.seed", cfg.rng_seed);
}

void write_truth_files(const std::string& dir, const ProblemInput& input,
                       const ScenarioTruth& truth) {
  {
    std::ofstream out(fs::path(dir) / "truth.tsv");
    out << std::setprecision(17);
    out << "metabolite_id\tz\tscore\n";
    for (size_t j = 0; j < truth.true_z.size(); ++j)
      out << input.metabolite_ids[j] << '\t' << truth.true_z[j] << '\t'
          << truth.true_scores[j] << '\n';
  }
  {
    std::ofstream out(fs::path(dir) / "truth_matches.tsv");
    out << "feature_id\tmetabolite_id\n";
    for (size_t i = 0; i < truth.true_match.size(); ++i)
      out << input.feature_ids[i] << '\t' << input.metabolite_ids[truth.true_match[i]]
          << '\n';
  }
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) lines.push_back(line);
  }
  return lines;
}

std::vector<std::string> split(const std::string& s, char delim) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, delim)) out.push_back(tok);
  return out;
}

struct SelectionTable {
  std::vector<std::string> ids;
  std::vector<double> u;
  std::vector<char> selected;
  std::vector<char> unmatched;
};

SelectionTable load_selection_table(const std::string& path) {
  SelectionTable t;
  auto lines = read_lines(path);
  for (size_t ln = 1; ln < lines.size(); ++ln) {  // skip header
    auto cols = split(lines[ln], '\t');
    if (cols.size() != 5) throw std::runtime_error(path + ": bad selection table row");
    t.ids.push_back(cols[0]);
    t.u.push_back(std::stod(cols[1]));
    t.selected.push_back(cols[2] == "1");
    t.unmatched.push_back(cols[4] == "1");
  }
  return t;
}

struct MatchingTable {
  std::vector<std::string> feature_ids;                 // first-appearance order
  std::vector<std::vector<Candidate>> match_prob;       // indices into met_ids
  std::vector<int> assignment;
  std::vector<std::string> met_ids;
  std::map<std::string, int> met_index;
};

MatchingTable load_matching_table(const std::string& path) {
  MatchingTable t;
  std::map<std::string, int> feat_index;
  auto lines = read_lines(path);
  for (size_t ln = 1; ln < lines.size(); ++ln) {
    auto cols = split(lines[ln], '\t');
    if (cols.size() != 4) throw std::runtime_error(path + ": bad matching table row");
    auto [fit, fnew] = feat_index.try_emplace(cols[0], static_cast<int>(t.feature_ids.size()));
    if (fnew) {
      t.feature_ids.push_back(cols[0]);
      t.match_prob.emplace_back();
      t.assignment.push_back(-1);
    }
    auto [mit, mnew] = t.met_index.try_emplace(cols[1], static_cast<int>(t.met_ids.size()));
    if (mnew) t.met_ids.push_back(cols[1]);
    t.match_prob[fit->second].push_back({mit->second, std::stod(cols[2])});
    if (cols[3] == "1") t.assignment[fit->second] = mit->second;
  }
  return t;
}

// ---- subcommand payloads -------------------------------------------------

struct FitOutputs {
  PosteriorSummary summary;
  std::vector<TraceRecord> trace;
  SelectionResult selection;
  std::vector<int> assignment;
};

FitOutputs fit_pipeline(const ProblemInput& input, const Hyperparameters& hp,
                        const ChainConfig& cfg) {
  FitOutputs out;
  std::tie(out.summary, out.trace) = run_chain(input, hp, cfg);
  out.selection = select_fdr(out.summary.inclusion_prob, hp.alpha_fdr);
  out.assignment = assign_matches(out.summary.match_prob);
  return out;
}

void write_fit_outputs(const std::string& dir, const ProblemInput& input,
                       const FitOutputs& out) {
  write_selection_table((fs::path(dir) / "selection.tsv").string(), input,
                        out.summary.inclusion_prob, out.selection);
  write_matching_table((fs::path(dir) / "matching.tsv").string(), input,
                       out.summary.match_prob, out.assignment);
  write_trace((fs::path(dir) / "trace.tsv").string(), out.trace);
  std::ofstream sc(fs::path(dir) / "scalars.tsv");
  sc << "name\tposterior_mean\n";
  sc << "sigma2\t" << format_number(out.summary.mean_sigma2) << '\n';
  sc << "gamma0\t" << format_number(out.summary.mean_gamma0) << '\n';
  sc << "eta0\t" << format_number(out.summary.mean_eta0) << '\n';
}

struct ReplicateRow {
  std::string method;
  int replicate;
  MetricReport rep;
};

std::vector<ReplicateRow> benchmark_replicate(const ScenarioConfig& base, int replicate,
                                              const std::vector<std::string>& methods,
                                              int sweeps_override) {
  ScenarioConfig cfg = base;
  cfg.rng_seed = base.rng_seed + static_cast<std::uint64_t>(replicate);
  auto [input, truth] = build_scenario(cfg);
  auto scope = matched_scope(input);

  bool want_baum = false, want_loc = false, want_post = false;
  for (const auto& m : methods) {
    if (m == "baum") want_baum = true;
    else if (m == "locfdr") want_loc = true;
    else if (m == "postlocfdr") want_post = true;
    else throw std::runtime_error("unknown method: " + m);
  }

  std::vector<ReplicateRow> rows;
  PosteriorSummary summary;
  if (want_baum || want_post) {
    ChainConfig ccfg;
    ccfg.n_burnin = cfg.hp.n_burnin;
    ccfg.n_iter = sweeps_override > 0 ? sweeps_override : cfg.hp.n_iter;
    ccfg.rng_seed = cfg.rng_seed ^ 0xB5A0u;
    auto [s, trace] = run_chain(input, cfg.hp, ccfg);
    summary = std::move(s);
  }
  // The reported AUC scores the thresholded selection indicator, not the
  // continuous ranking statistic, so it equals (TPR + 1 - FPR)/2.
  auto indicator = [](const std::vector<char>& selected) {
    return std::vector<double>(selected.begin(), selected.end());
  };
  if (want_baum) {
    auto sel = select_fdr(summary.inclusion_prob, cfg.hp.alpha_fdr);
    rows.push_back({"baum", replicate,
                    evaluate_selection(sel.selected, indicator(sel.selected), truth, scope)});
    auto assignment = assign_matches(summary.match_prob);
    rows.push_back({"baum_matching", replicate,
                    evaluate_matching(assignment, summary.match_prob,
                                      summary.inclusion_prob, truth)});
  }
  if (want_loc) {
    auto res = locfdr_baseline(input, LocfdrWeights::Equal, nullptr, cfg.hp.pi0);
    rows.push_back({"locfdr", replicate,
                    evaluate_selection(res.selected, indicator(res.selected), truth, scope)});
  }
  if (want_post) {
    auto res = locfdr_baseline(input, LocfdrWeights::Posterior, &summary.match_prob,
                               cfg.hp.pi0);
    rows.push_back({"postlocfdr", replicate,
                    evaluate_selection(res.selected, indicator(res.selected), truth, scope)});
  }
  return rows;
}

void write_benchmark_tables(const std::string& dir, const std::string& scenario,
                            const std::vector<ReplicateRow>& rows) {
  {
    std::ofstream out(fs::path(dir) / "replicates.tsv");
    out << "scenario\tmethod\treplicate\tacc\tauc\tfpr\ttpr\n";
    for (const auto& r : rows)
      out << scenario << '\t' << r.method << '\t' << r.replicate << '\t'
          << format_number(r.rep.acc) << '\t'
          << (r.rep.auc ? format_number(*r.rep.auc) : std::string("NA")) << '\t'
          << format_number(r.rep.fpr) << '\t' << format_number(r.rep.tpr) << '\n';
  }
  std::map<std::string, std::vector<const MetricReport*>> by_method;
  for (const auto& r : rows) by_method[r.method].push_back(&r.rep);
  std::ofstream out(fs::path(dir) / "aggregate.tsv");
  out << "scenario\tmethod\tmetric\tmean\tsd\n";
  for (const auto& [method, reps] : by_method) {
    auto emit = [&](const std::string& metric, auto getter) {
      RunningMoments mom;
      for (const auto* r : reps) {
        auto v = getter(*r);
        if (v) mom.push(*v);
      }
      if (mom.n == 0) return;
      out << scenario << '\t' << method << '\t' << metric << '\t'
          << format_number(mom.mean) << '\t' << format_number(std::sqrt(mom.variance()))
          << '\n';
    };
    emit("acc", [](const MetricReport& r) { return std::optional<double>(r.acc); });
    emit("auc", [](const MetricReport& r) { return r.auc; });
    emit("fpr", [](const MetricReport& r) { return std::optional<double>(r.fpr); });
    emit("tpr", [](const MetricReport& r) { return std::optional<double>(r.tpr); });
  }
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"BAUM: Bayesian analysis of untargeted metabolomics data"};
  app.require_subcommand(1);

  // shared knobs
  std::string out_dir = ".";
  std::uint64_t seed = 0;
  std::string config_path;
  std::vector<std::string> set_overrides;

  auto add_config_opts = [&](CLI::App* sub) {
    sub->add_option("--out", out_dir, "Output directory");
    sub->add_option("--seed", seed, "RNG seed");
    sub->add_option("--config", config_path, "Flat key=value config file");
    sub->add_option("--set", set_overrides, "Inline key=value override (repeatable)");
  };
  auto collect_overrides = [&]() {
    KeyValueConfig kv;
    if (!config_path.empty()) kv = parse_config_file(config_path);
    for (const auto& s : set_overrides) {
      auto eq = s.find('=');
      if (eq == std::string::npos) throw std::runtime_error("--set expects key=value: " + s);
      kv[s.substr(0, eq)] = s.substr(eq + 1);
    }
    return kv;
  };

  // simulate
  auto* sim = app.add_subcommand("simulate", "Generate a simulation scenario fixture");
  std::string scenario = "GN1";
  std::string network_path, matches_path;
  int sim_p = -1, sim_k = -1;
  double unmatched = -1, sigma_sim = -1;
  sim->add_option("--scenario", scenario, "GN1|GN2|RN1|RN2");
  sim->add_option("--network", network_path, "Edge-list TSV (RN scenarios)");
  sim->add_option("--matches", matches_path, "Candidate TSV (RN scenarios)");
  sim->add_option("--p", sim_p, "Feature count override");
  sim->add_option("--k", sim_k, "Metabolite count override");
  sim->add_option("--unmatched", unmatched, "Unmatched metabolite fraction override");
  sim->add_option("--sigma-sim", sigma_sim, "Simulation noise s.d. override");
  add_config_opts(sim);

  // fit
  auto* fit = app.add_subcommand("fit", "Run the Gibbs sampler on input files");
  InputPaths fit_paths;
  fit->add_option("--stats", fit_paths.stats, "Feature statistics TSV")->required();
  fit->add_option("--matches", fit_paths.matches, "Candidate matches TSV")->required();
  fit->add_option("--network", fit_paths.network, "Network edge-list TSV")->required();
  add_config_opts(fit);

  // evaluate
  auto* eval = app.add_subcommand("evaluate", "Score fit outputs against scenario truth");
  std::string sel_path, matching_path, truth_path, truth_matches_path;
  eval->add_option("--selection", sel_path, "selection.tsv from fit")->required();
  eval->add_option("--matching", matching_path, "matching.tsv from fit")->required();
  eval->add_option("--truth", truth_path, "truth.tsv from simulate")->required();
  eval->add_option("--truth-matches", truth_matches_path, "truth_matches.tsv from simulate")
      ->required();
  add_config_opts(eval);

  // benchmark
  auto* bench = app.add_subcommand("benchmark", "Replicated scenario comparison");
  int replicates = 10;
  std::string methods_csv = "baum";
  int workers = default_workers();
  int sweeps_override = 0;
  bench->add_option("--scenario", scenario, "GN1|GN2|RN1|RN2");
  bench->add_option("--replicates", replicates, "Replicate count");
  bench->add_option("--methods", methods_csv, "Comma list: baum,locfdr,postlocfdr");
  bench->add_option("--workers", workers, "Parallel replicate workers");
  bench->add_option("--sweeps", sweeps_override, "Post-burn-in sweeps override");
  bench->add_option("--network", network_path, "Edge-list TSV (RN scenarios)");
  bench->add_option("--matches", matches_path, "Candidate TSV (RN scenarios)");
  bench->add_option("--p", sim_p, "Feature count override");
  bench->add_option("--k", sim_k, "Metabolite count override");
  add_config_opts(bench);

  // enrich
  auto* enrich = app.add_subcommand("enrich", "Pathway over-representation report");
  std::string pathways_path, enet_path;
  int min_overlap = 3;
  double max_p = 0.05;
  enrich->add_option("--selection", sel_path, "selection.tsv from fit")->required();
  enrich->add_option("--matching", matching_path, "matching.tsv from fit")->required();
  enrich->add_option("--network", enet_path, "Network edge-list TSV")->required();
  enrich->add_option("--pathways", pathways_path, "Pathway TSV")->required();
  enrich->add_option("--min-overlap", min_overlap, "Minimum selected overlap");
  enrich->add_option("--max-p", max_p, "Maximum p-value");
  add_config_opts(enrich);

  // abundance
  auto* abundance = app.add_subcommand("abundance", "Posterior-weighted metabolite abundance");
  std::string features_path;
  abundance->add_option("--matching", matching_path, "matching.tsv from fit")->required();
  abundance->add_option("--features", features_path, "subjects x features TSV")->required();
  add_config_opts(abundance);

  // transform
  auto* transform = app.add_subcommand("transform", "Statistic transforms");
  std::string mode = "pvalue", in_path, out_path;
  transform->add_option("--mode", mode, "pvalue|rank");
  transform->add_option("--in", in_path, "2-column TSV: id, value")->required();
  transform->add_option("--out-file", out_path, "Output TSV")->required();
  add_config_opts(transform);

  try {
    app.parse(argc, const_cast<char**>(argv));
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    fs::create_directories(out_dir);

    if (*sim) {
      ManifestWriter man(out_dir, "simulate");
      ScenarioConfig cfg = default_scenario_config(scenario, seed);
      if (sim_p > 0) cfg.p = sim_p;
      if (sim_k > 0) cfg.k = sim_k;
      if (unmatched >= 0) cfg.unmatched_fraction = unmatched;
      if (sigma_sim >= 0) cfg.sigma_sim = sigma_sim;
      if (!network_path.empty()) {
        cfg.load_network = true;
        cfg.network_path = network_path;
      }
      cfg.matches_path = matches_path;
      if (cfg.load_network && cfg.network_path.empty())
        throw std::runtime_error("scenario " + scenario +
                                 " needs --network (real preprocessed files)");
      ChainConfig ccfg;
      apply_overrides(cfg.hp, ccfg, collect_overrides());
      auto [input, truth] = build_scenario(cfg);
      write_problem_input(input, (fs::path(out_dir) / "stats.tsv").string(),
                          (fs::path(out_dir) / "matches.tsv").string(),
                          (fs::path(out_dir) / "network.tsv").string());
      write_truth_files(out_dir, input, truth);
      man.set("scenario", scenario);
      man.set("seed", seed);
      man.set("p", std::to_string(input.n_features()));
      man.set("k", std::to_string(input.n_metabolites()));
    } else if (*fit) {
      ManifestWriter man(out_dir, "fit");
      ProblemInput input = load_inputs(fit_paths);
      auto violations = validate_input(input);
      if (!violations.empty()) throw std::runtime_error("invalid input: " + violations[0]);
      Hyperparameters hp;  // generic defaults; override via config
      ChainConfig ccfg;
      ccfg.rng_seed = seed;
      apply_overrides(hp, ccfg, collect_overrides());
      if (ccfg.rng_seed == 0) ccfg.rng_seed = seed;
      echo_config(man, hp, ccfg);
      auto out = fit_pipeline(input, hp, ccfg);
      write_fit_outputs(out_dir, input, out);
    } else if (*eval) {
      ManifestWriter man(out_dir, "evaluate");
      auto sel = load_selection_table(sel_path);
      auto match = load_matching_table(matching_path);
      std::map<std::string, int> met_index;
      for (size_t j = 0; j < sel.ids.size(); ++j)
        met_index[sel.ids[j]] = static_cast<int>(j);
      ScenarioTruth truth;
      truth.true_z.assign(sel.ids.size(), 0);
      truth.true_scores.assign(sel.ids.size(), 0.0);
      {
        auto lines = read_lines(truth_path);
        for (size_t ln = 1; ln < lines.size(); ++ln) {
          auto cols = split(lines[ln], '\t');
          if (cols.size() != 3) throw std::runtime_error(truth_path + ": bad row");
          auto it = met_index.find(cols[0]);
          if (it == met_index.end()) continue;
          truth.true_z[it->second] = std::stoi(cols[1]);
          truth.true_scores[it->second] = std::stod(cols[2]);
        }
      }
      std::map<std::string, int> feat_index;
      for (size_t i = 0; i < match.feature_ids.size(); ++i)
        feat_index[match.feature_ids[i]] = static_cast<int>(i);
      truth.true_match.assign(match.feature_ids.size(), -1);
      {
        auto lines = read_lines(truth_matches_path);
        for (size_t ln = 1; ln < lines.size(); ++ln) {
          auto cols = split(lines[ln], '\t');
          if (cols.size() != 2) throw std::runtime_error(truth_matches_path + ": bad row");
          auto fit2 = feat_index.find(cols[0]);
          auto mit = met_index.find(cols[1]);
          if (fit2 == feat_index.end() || mit == met_index.end()) continue;
          truth.true_match[fit2->second] = mit->second;
        }
      }
      // remap the matching table's metabolite indices onto selection order
      std::vector<std::vector<Candidate>> match_prob(match.match_prob.size());
      std::vector<int> assignment(match.assignment.size(), -1);
      for (size_t i = 0; i < match.match_prob.size(); ++i) {
        for (const auto& c : match.match_prob[i]) {
          auto it = met_index.find(match.met_ids[c.metabolite]);
          if (it == met_index.end())
            throw std::runtime_error("matching table references unknown metabolite");
          match_prob[i].push_back({it->second, c.q});
          if (match.assignment[i] == c.metabolite) assignment[i] = it->second;
        }
      }
      std::vector<char> scope(sel.ids.size());
      for (size_t j = 0; j < scope.size(); ++j) scope[j] = sel.unmatched[j] ? 0 : 1;
      auto sel_rep = evaluate_selection(sel.selected, sel.u, truth, scope);
      auto match_rep = evaluate_matching(assignment, match_prob, sel.u, truth);
      std::ofstream out(fs::path(out_dir) / "metrics.tsv");
      out << "task\tacc\tauc\tfpr\ttpr\tn_eval\n";
      auto emit = [&](const std::string& task, const MetricReport& r) {
        out << task << '\t' << format_number(r.acc) << '\t'
            << (r.auc ? format_number(*r.auc) : std::string("NA")) << '\t'
            << format_number(r.fpr) << '\t' << format_number(r.tpr) << '\t' << r.n_eval
            << '\n';
      };
      emit("selection", sel_rep);
      emit("matching", match_rep);
    } else if (*bench) {
      ManifestWriter man(out_dir, "benchmark");
      if ((scenario == "RN1" || scenario == "RN2") && network_path.empty()) {
        std::cerr << "benchmark: scenario " << scenario
                  << " requires --network with the published preprocessed files; skipping\n";
        std::ofstream out(fs::path(out_dir) / "aggregate.tsv");
        out << "scenario\tmethod\tmetric\tmean\tsd\n";
        man.set("scenario", scenario);
        man.set("skipped", "missing real-network files");
        return 0;
      }
      ScenarioConfig cfg = default_scenario_config(scenario, seed);
      if (sim_p > 0) cfg.p = sim_p;
      if (sim_k > 0) cfg.k = sim_k;
      if (!network_path.empty()) {
        cfg.load_network = true;
        cfg.network_path = network_path;
      }
      cfg.matches_path = matches_path;
      ChainConfig dummy;
      apply_overrides(cfg.hp, dummy, collect_overrides());
      auto methods = split(methods_csv, ',');
      std::vector<std::vector<ReplicateRow>> results(replicates);
      std::atomic<int> next{0};
      auto worker = [&] {
        for (;;) {
          int r = next.fetch_add(1);
          if (r >= replicates) break;
          results[r] = benchmark_replicate(cfg, r, methods, sweeps_override);
        }
      };
      std::vector<std::thread> pool;
      for (int t = 1; t < workers; ++t) pool.emplace_back(worker);
      worker();
      for (auto& th : pool) th.join();
      std::vector<ReplicateRow> rows;
      for (auto& rs : results)
        for (auto& r : rs) rows.push_back(std::move(r));
      write_benchmark_tables(out_dir, scenario, rows);
      man.set("scenario", scenario);
      man.set("replicates", std::to_string(replicates));
      man.set("methods", methods_csv);
      man.set("seed", seed);
    } else if (*enrich) {
      ManifestWriter man(out_dir, "enrich");
      auto [net, met_ids] = load_network_file(enet_path);
      std::map<std::string, int> met_index;
      for (size_t j = 0; j < met_ids.size(); ++j) met_index[met_ids[j]] = static_cast<int>(j);
      auto sel = load_selection_table(sel_path);
      std::vector<char> selected(met_ids.size(), 0);
      for (size_t r = 0; r < sel.ids.size(); ++r) {
        auto it = met_index.find(sel.ids[r]);
        if (it != met_index.end() && sel.selected[r]) selected[it->second] = 1;
      }
      auto match = load_matching_table(matching_path);
      std::vector<int> assignment(match.assignment.size(), -1);
      for (size_t i = 0; i < assignment.size(); ++i) {
        if (match.assignment[i] < 0) continue;
        auto it = met_index.find(match.met_ids[match.assignment[i]]);
        if (it != met_index.end()) assignment[i] = it->second;
      }
      auto db = load_pathways_file(pathways_path, met_ids);
      auto hits = rank_pathways(db, selected, static_cast<int>(met_ids.size()), min_overlap,
                                max_p);
      {
        std::ofstream out(fs::path(out_dir) / "pathways.tsv");
        out << "pathway\toverlap\tsize\tp\n";
        for (const auto& h : hits)
          out << h.name << '\t' << h.overlap << '\t' << h.size << '\t'
              << format_number(h.p_value) << '\n';
      }
      auto report = extract_subnetworks(net, selected, assignment);
      {
        std::ofstream out(fs::path(out_dir) / "subnetworks.dot");
        out << "graph subnetworks {\n";
        std::vector<int> comp_of(met_ids.size(), -1);
        for (size_t c = 0; c < report.components.size(); ++c) {
          const auto& sc = report.components[c];
          for (int j : sc.selected) {
            comp_of[j] = static_cast<int>(c);
            out << "  \"" << met_ids[j] << "\" [role=green, component=" << c << "];\n";
          }
          for (int j : sc.connectors) {
            comp_of[j] = static_cast<int>(c);
            out << "  \"" << met_ids[j] << "\" [role=gray, component=" << c << "];\n";
          }
          for (auto [i, j] : sc.features)
            out << "  \"" << match.feature_ids[i] << "\" [role=blue, component=" << c
                << "];\n  \"" << match.feature_ids[i] << "\" -- \"" << met_ids[j] << "\";\n";
        }
        for (auto [j, l] : net.edges())
          if (comp_of[j] >= 0 && comp_of[j] == comp_of[l])
            out << "  \"" << met_ids[j] << "\" -- \"" << met_ids[l] << "\";\n";
        out << "}\n";
      }
      man.set("n_selected", std::to_string(std::count(selected.begin(), selected.end(), 1)));
      man.set("n_components", std::to_string(report.components.size()));
    } else if (*abundance) {
      ManifestWriter man(out_dir, "abundance");
      auto match = load_matching_table(matching_path);
      // subjects x features TSV: header = subject_id, then feature ids
      auto lines = read_lines(features_path);
      if (lines.empty()) throw std::runtime_error(features_path + ": empty");
      auto header = split(lines[0], '\t');
      if (header.size() < 2) throw std::runtime_error(features_path + ": bad header");
      std::vector<int> col_to_feature(header.size() - 1, -1);
      std::map<std::string, int> feat_index;
      for (size_t i = 0; i < match.feature_ids.size(); ++i)
        feat_index[match.feature_ids[i]] = static_cast<int>(i);
      for (size_t c = 1; c < header.size(); ++c) {
        auto it = feat_index.find(header[c]);
        if (it == feat_index.end())
          throw std::runtime_error(features_path + ": unknown feature " + header[c]);
        col_to_feature[c - 1] = it->second;
      }
      std::vector<std::string> subjects;
      std::vector<std::vector<double>> matrix;
      for (size_t ln = 1; ln < lines.size(); ++ln) {
        auto cols = split(lines[ln], '\t');
        if (cols.size() != header.size())
          throw std::runtime_error(features_path + ": ragged row");
        subjects.push_back(cols[0]);
        std::vector<double> row(match.feature_ids.size(), 0.0);
        for (size_t c = 1; c < cols.size(); ++c)
          row[col_to_feature[c - 1]] = std::stod(cols[c]);
        matrix.push_back(std::move(row));
      }
      auto est = estimate_abundance(match.match_prob, matrix,
                                    static_cast<int>(match.met_ids.size()));
      std::ofstream out(fs::path(out_dir) / "abundance.tsv");
      out << "subject_id";
      for (const auto& id : match.met_ids) out << '\t' << id;
      out << '\n';
      for (size_t s = 0; s < subjects.size(); ++s) {
        out << subjects[s];
        for (size_t j = 0; j < match.met_ids.size(); ++j)
          out << '\t' << (est.missing[j] ? std::string("NA") : format_number(est.values[s][j]));
        out << '\n';
      }
      man.set("n_subjects", std::to_string(subjects.size()));
    } else if (*transform) {
      ManifestWriter man(out_dir, "transform");
      auto lines = read_lines(in_path);
      std::vector<std::string> ids;
      std::vector<double> values;
      for (const auto& line : lines) {
        auto cols = split(line, '\t');
        if (cols.size() != 2) throw std::runtime_error(in_path + ": expected 2 columns");
        ids.push_back(cols[0]);
        values.push_back(std::stod(cols[1]));
      }
      std::vector<double> r;
      if (mode == "pvalue") r = transform_pvalues(values);
      else if (mode == "rank") r = transform_rank_normal(values);
      else throw std::runtime_error("transform: mode must be pvalue or rank");
      std::ofstream out(out_path);
      if (!out) throw std::runtime_error("cannot write " + out_path);
      out << std::setprecision(17);
      for (size_t i = 0; i < ids.size(); ++i) out << ids[i] << '\t' << r[i] << '\n';
      man.set("mode", mode);
      man.set("n", std::to_string(ids.size()));
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace baum
