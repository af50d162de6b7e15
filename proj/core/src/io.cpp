#include "baum/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <set>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace baum {

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == '\t') {
      out.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  return out;
}

[[noreturn]] void parse_error(const std::string& path, int line_no, const std::string& what) {
  std::ostringstream os;
  os << path << ":" << line_no << ": " << what;
  throw std::runtime_error(os.str());
}

double parse_double(const std::string& s, const std::string& path, int line_no) {
  try {
    size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    parse_error(path, line_no, "not a number: '" + s + "'");
  }
}

std::ifstream open_or_throw(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return in;
}

struct Interner {
  std::map<std::string, int> index;
  std::vector<std::string> names;
  int get(const std::string& name) {
    auto [it, inserted] = index.try_emplace(name, static_cast<int>(names.size()));
    if (inserted) names.push_back(name);
    return it->second;
  }
  int lookup(const std::string& name) const {
    auto it = index.find(name);
    return it == index.end() ? -1 : it->second;
  }
};

}  // namespace

std::pair<Network, std::vector<std::string>> load_network_file(const std::string& path) {
  auto in = open_or_throw(path);
  Interner ids;
  std::vector<std::pair<int, int>> edges;
  std::string line;
  int line_no = 0;
  int dup = 0;
  std::set<std::pair<int, int>> seen;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    auto cols = split_tabs(line);
    if (cols.size() != 2) parse_error(path, line_no, "expected 2 tab-separated columns");
    int a = ids.get(cols[0]);
    int b = ids.get(cols[1]);
    if (a == b) parse_error(path, line_no, "self-loop on " + cols[0]);
    auto e = std::minmax(a, b);
    if (!seen.insert({e.first, e.second}).second) {
      ++dup;
      continue;
    }
    edges.push_back({e.first, e.second});
  }
  if (dup > 0)
    std::cerr << "warning: " << path << ": " << dup << " duplicate edge lines dropped\n";
  Network net(static_cast<int>(ids.names.size()));
  for (auto [a, b] : edges) net.add_edge(a, b);
  return {std::move(net), std::move(ids.names)};
}

std::vector<std::vector<Candidate>> load_matches_file(
    const std::string& path, std::vector<std::string>& feature_ids,
    const std::vector<std::string>& metabolite_ids) {
  std::map<std::string, int> met_index;
  for (size_t j = 0; j < metabolite_ids.size(); ++j)
    met_index[metabolite_ids[j]] = static_cast<int>(j);

  auto in = open_or_throw(path);
  Interner feats;
  std::vector<std::vector<Candidate>> rows;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    auto cols = split_tabs(line);
    if (cols.size() != 3) parse_error(path, line_no, "expected 3 tab-separated columns");
    int i = feats.get(cols[0]);
    auto mit = met_index.find(cols[1]);
    if (mit == met_index.end())
      parse_error(path, line_no, "unknown metabolite id '" + cols[1] + "'");
    double q = parse_double(cols[2], path, line_no);
    if (q < 0) parse_error(path, line_no, "negative q");
    if (static_cast<int>(rows.size()) <= i) rows.resize(i + 1);
    rows[i].push_back({mit->second, q});
  }
  // renormalize per-feature within tolerance
  for (size_t i = 0; i < rows.size(); ++i) {
    double sum = 0;
    for (const auto& c : rows[i]) sum += c.q;
    if (std::abs(sum - 1.0) > 1e-6)
      throw std::runtime_error(path + ": q row for feature '" + feats.names[i] +
                               "' sums to " + std::to_string(sum));
    for (auto& c : rows[i]) c.q /= sum;
  }
  feature_ids = std::move(feats.names);
  return rows;
}

ProblemInput load_inputs(const InputPaths& paths) {
  ProblemInput input;

  // stats file fixes the feature order
  {
    auto in = open_or_throw(paths.stats);
    Interner feats;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty() || line[0] == '#') continue;
      auto cols = split_tabs(line);
      if (cols.size() != 2) parse_error(paths.stats, line_no, "expected 2 columns");
      int i = feats.get(cols[0]);
      if (i != static_cast<int>(input.feature_stats.size()))
        parse_error(paths.stats, line_no, "duplicate feature id '" + cols[0] + "'");
      input.feature_stats.push_back(parse_double(cols[1], paths.stats, line_no));
    }
    input.feature_ids = std::move(feats.names);
  }

  // metabolites interned by first appearance: matches file, then network file
  Interner mets;
  std::map<std::string, int> feat_index;
  for (size_t i = 0; i < input.feature_ids.size(); ++i)
    feat_index[input.feature_ids[i]] = static_cast<int>(i);
  input.candidates.resize(input.feature_ids.size());
  {
    auto in = open_or_throw(paths.matches);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty() || line[0] == '#') continue;
      auto cols = split_tabs(line);
      if (cols.size() != 3) parse_error(paths.matches, line_no, "expected 3 columns");
      auto fit = feat_index.find(cols[0]);
      if (fit == feat_index.end())
        parse_error(paths.matches, line_no, "feature '" + cols[0] + "' not in stats file");
      int j = mets.get(cols[1]);
      double q = parse_double(cols[2], paths.matches, line_no);
      if (q < 0) parse_error(paths.matches, line_no, "negative q");
      input.candidates[fit->second].push_back({j, q});
    }
  }
  for (size_t i = 0; i < input.candidates.size(); ++i) {
    double sum = 0;
    for (const auto& c : input.candidates[i]) sum += c.q;
    if (std::abs(sum - 1.0) > 1e-6)
      throw std::runtime_error(paths.matches + ": q row for feature '" +
                               input.feature_ids[i] + "' sums to " + std::to_string(sum));
    for (auto& c : input.candidates[i]) c.q /= sum;
  }

  // network file; metabolites unseen in matches are appended here
  {
    auto in = open_or_throw(paths.network);
    std::string line;
    int line_no = 0;
    int dup = 0;
    std::set<std::pair<int, int>> seen;
    std::vector<std::pair<int, int>> edges;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty() || line[0] == '#') continue;
      auto cols = split_tabs(line);
      if (cols.size() != 2) parse_error(paths.network, line_no, "expected 2 columns");
      int a = mets.get(cols[0]);
      int b = mets.get(cols[1]);
      if (a == b) parse_error(paths.network, line_no, "self-loop on " + cols[0]);
      auto e = std::minmax(a, b);
      if (!seen.insert({e.first, e.second}).second) {
        ++dup;
        continue;
      }
      edges.push_back({e.first, e.second});
    }
    if (dup > 0)
      std::cerr << "warning: " << paths.network << ": " << dup
                << " duplicate edge lines dropped\n";
    Network net(static_cast<int>(mets.names.size()));
    for (auto [a, b] : edges) net.add_edge(a, b);
    input.network = std::move(net);
  }
  input.metabolite_ids = std::move(mets.names);
  return input;
}

PathwayDB load_pathways_file(const std::string& path,
                             const std::vector<std::string>& metabolite_ids) {
  std::map<std::string, int> met_index;
  for (size_t j = 0; j < metabolite_ids.size(); ++j)
    met_index[metabolite_ids[j]] = static_cast<int>(j);
  auto in = open_or_throw(path);
  PathwayDB db;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    auto cols = split_tabs(line);
    if (cols.size() != 2) parse_error(path, line_no, "expected 2 columns");
    auto it = met_index.find(cols[1]);
    if (it == met_index.end()) continue;  // outside the analysis universe
    db.pathways[cols[0]].insert(it->second);
  }
  return db;
}

std::vector<double> transform_pvalues(const std::vector<double>& pvalues) {
  std::vector<double> r(pvalues.size());
  for (size_t i = 0; i < pvalues.size(); ++i) {
    double p = pvalues[i];
    if (!(p > 0.0) || p > 1.0)
      throw std::domain_error("transform_pvalues: p must lie in (0, 1]");
    p = std::clamp(p, 1e-15, 1.0 - 1e-15);
    r[i] = normal_quantile(1.0 - p);
  }
  return r;
}

std::vector<double> transform_rank_normal(const std::vector<double>& raw) {
  const int n = static_cast<int>(raw.size());
  if (n < 2) throw std::domain_error("transform_rank_normal: need >= 2 values");
  for (double v : raw)
    if (!std::isfinite(v)) throw std::domain_error("transform_rank_normal: non-finite value");
  if (std::all_of(raw.begin(), raw.end(), [&](double v) { return v == raw[0]; })) {
    std::cerr << "warning: transform_rank_normal: all values equal, emitting zeros\n";
    return std::vector<double>(n, 0.0);
  }
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return raw[a] < raw[b]; });
  std::vector<double> rank(n);
  int i = 0;
  while (i < n) {
    int j = i;
    while (j < n && raw[order[j]] == raw[order[i]]) ++j;
    double avg = 0.5 * (i + j - 1) + 1.0;  // 1-based average rank
    for (int t = i; t < j; ++t) rank[order[t]] = avg;
    i = j;
  }
  std::vector<double> r(n);
  for (int t = 0; t < n; ++t) r[t] = normal_quantile((rank[t] - 0.5) / n);
  return r;
}

KeyValueConfig parse_config_file(const std::string& path) {
  auto in = open_or_throw(path);
  KeyValueConfig kv;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) parse_error(path, line_no, "expected key=value");
    auto trim = [](std::string s) {
      auto a = s.find_first_not_of(" \t\r");
      auto b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return kv;
}

namespace {

double to_double(const std::string& key, const std::string& v) {
  try {
    size_t pos;
    double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw std::runtime_error("config: bad numeric value for " + key + ": '" + v + "'");
  }
}

int to_int(const std::string& key, const std::string& v) {
  double d = to_double(key, v);
  if (d != std::floor(d)) throw std::runtime_error("config: " + key + " must be an integer");
  return static_cast<int>(d);
}

std::vector<double> to_vector(const std::string& key, const std::string& v) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string tok;
  while (std::getline(ss, tok, ','))
    if (!tok.empty()) out.push_back(to_double(key, tok));
  return out;
}

}  // namespace

void apply_overrides(Hyperparameters& hp, ChainConfig& cfg, const KeyValueConfig& kv) {
  for (const auto& [key, v] : kv) {
    if (key == "a1") hp.a1 = to_double(key, v);
    else if (key == "b1") hp.b1 = to_double(key, v);
    else if (key == "a2") hp.a2 = to_double(key, v);
    else if (key == "b2") hp.b2 = to_double(key, v);
    else if (key == "a3") hp.a3 = to_double(key, v);
    else if (key == "a4") hp.a4 = to_double(key, v);
    else if (key == "b4") hp.b4 = to_double(key, v);
    else if (key == "a5") hp.a5 = to_double(key, v);
    else if (key == "b5") hp.b5 = to_double(key, v);
    else if (key == "G") hp.G = to_int(key, v);
    else if (key == "mu") hp.mu = to_vector(key, v);
    else if (key == "degenerate_mean") hp.degenerate_mean = to_int(key, v) != 0;
    else if (key == "pi1") { hp.pi1 = to_double(key, v); hp.pi0 = 1.0 - hp.pi1; }
    else if (key == "pi0") { hp.pi0 = to_double(key, v); hp.pi1 = 1.0 - hp.pi0; }
    else if (key == "rho0") hp.rho0 = to_double(key, v);
    else if (key == "rho1") hp.rho1 = to_double(key, v);
    else if (key == "rho") { hp.rho0 = hp.rho1 = to_double(key, v); }
    else if (key == "w") hp.w = to_vector(key, v);
    else if (key == "tau") hp.tau = to_double(key, v);
    else if (key == "alpha_fdr") hp.alpha_fdr = to_double(key, v);
    else if (key == "n_burnin") { hp.n_burnin = to_int(key, v); cfg.n_burnin = hp.n_burnin; }
    else if (key == "n_iter") { hp.n_iter = to_int(key, v); cfg.n_iter = hp.n_iter; }
    else if (key == "thinning") cfg.thinning = to_int(key, v);
    else if (key == "seed") cfg.rng_seed = static_cast<std::uint64_t>(to_double(key, v));
    else throw std::runtime_error("config: unknown key '" + key + "'");
  }
}

std::string format_number(double v) {
  std::ostringstream os;
  os << std::setprecision(6) << v;
  return os.str();
}

void write_problem_input(const ProblemInput& input, const std::string& stats_path,
                         const std::string& matches_path, const std::string& network_path) {
  {
    std::ofstream out(stats_path);
    if (!out) throw std::runtime_error("cannot write " + stats_path);
    out << std::setprecision(17);
    for (int i = 0; i < input.n_features(); ++i)
      out << input.feature_ids[i] << '\t' << input.feature_stats[i] << '\n';
  }
  {
    std::ofstream out(matches_path);
    if (!out) throw std::runtime_error("cannot write " + matches_path);
    out << std::setprecision(17);
    for (int i = 0; i < input.n_features(); ++i)
      for (const auto& c : input.candidates[i])
        out << input.feature_ids[i] << '\t' << input.metabolite_ids[c.metabolite] << '\t'
            << c.q << '\n';
  }
  {
    std::ofstream out(network_path);
    if (!out) throw std::runtime_error("cannot write " + network_path);
    for (auto [j, l] : input.network.edges())
      out << input.metabolite_ids[j] << '\t' << input.metabolite_ids[l] << '\n';
  }
}

void write_selection_table(const std::string& path, const ProblemInput& input,
                           const std::vector<double>& u, const SelectionResult& sel) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  auto scope = [&] {
    std::vector<char> s(input.n_metabolites(), 0);
    for (const auto& row : input.candidates)
      for (const auto& c : row) s[c.metabolite] = 1;
    return s;
  }();
  std::vector<int> order(u.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return u[a] > u[b]; });
  std::vector<int> rank(u.size());
  for (size_t pos = 0; pos < order.size(); ++pos) rank[order[pos]] = static_cast<int>(pos) + 1;
  out << "metabolite_id\tu\tselected\trank\tunmatched\n";
  for (size_t j = 0; j < u.size(); ++j)
    out << input.metabolite_ids[j] << '\t' << format_number(u[j]) << '\t'
        << int(sel.selected[j]) << '\t' << rank[j] << '\t' << (scope[j] ? 0 : 1) << '\n';
}

void write_matching_table(const std::string& path, const ProblemInput& input,
                          const std::vector<std::vector<Candidate>>& match_prob,
                          const std::vector<int>& assignment) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "feature_id\tmetabolite_id\tlambda_hat\tassigned\n";
  for (size_t i = 0; i < match_prob.size(); ++i)
    for (const auto& c : match_prob[i])
      out << input.feature_ids[i] << '\t' << input.metabolite_ids[c.metabolite] << '\t'
          << format_number(c.q) << '\t' << (assignment[i] == c.metabolite ? 1 : 0) << '\n';
}

void write_trace(const std::string& path, const std::vector<TraceRecord>& trace) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "iteration\tsigma2\tgamma0\teta0\tn_alt\tlog_joint\n";
  for (const auto& t : trace)
    out << t.iteration << '\t' << format_number(t.sigma2) << '\t' << format_number(t.gamma0)
        << '\t' << format_number(t.eta0) << '\t' << t.n_alt << '\t'
        << format_number(t.log_joint) << '\n';
}

void write_manifest(const std::string& path, const std::map<std::string, std::string>& fields) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  for (const auto& [k, v] : fields) out << k << "=" << v << '\n';
}

}  // namespace baum
