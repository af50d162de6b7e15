#include "baum/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace baum {

namespace {

double ig_logpdf(double x, double shape, double rate) {
  return shape * std::log(rate) - std::lgamma(shape) - (shape + 1) * std::log(x) - rate / x;
}

double gamma_logpdf(double x, double shape, double rate) {
  return shape * std::log(rate) - std::lgamma(shape) + (shape - 1) * std::log(x) - rate * x;
}

std::vector<double> sticks_to_probs(const std::vector<double>& v) {
  const int G = static_cast<int>(v.size());
  std::vector<double> p(G);
  double remaining = 1.0;
  for (int g = 0; g < G; ++g) {
    p[g] = v[g] * remaining;
    remaining *= (1.0 - v[g]);
  }
  return p;
}

}  // namespace

std::vector<int> draw_z_prior_exact(const Network& network, const Hyperparameters& hp,
                                    Rng& rng) {
  const int k = network.node_count();
  if (k > 20) throw std::domain_error("draw_z_prior_exact: k too large to enumerate");
  const std::uint64_t n_states = 1ull << k;
  std::vector<double> logw(n_states);
  std::vector<int> z(k);
  for (std::uint64_t s = 0; s < n_states; ++s) {
    for (int j = 0; j < k; ++j) z[j] = (s >> j) & 1;
    logw[s] = potts_log_prior(z, hp, network);
  }
  std::uint64_t pick = sample_categorical_log(logw, rng);
  for (int j = 0; j < k; ++j) z[j] = (pick >> j) & 1;
  return z;
}

GibbsChain::GibbsChain(const ProblemInput& input, const Hyperparameters& hp,
                       std::uint64_t rng_seed)
    : input_(input), hp_(hp), rng_(rng_seed) {
  validate_hyperparameters(hp_, input_.n_metabolites());
  const int p = input_.n_features();
  const int k = input_.n_metabolites();
  const int G = hp_.G;
  wtilde_ = neighborhood_weights(input_.network, hp_);

  state_.lambda.resize(p);
  for (int i = 0; i < p; ++i) {
    const auto& row = input_.candidates[i];
    std::vector<double> q(row.size());
    for (size_t c = 0; c < row.size(); ++c) q[c] = row[c].q;
    state_.lambda[i] = row[sample_categorical(q, rng_)].metabolite;
  }
  state_.z.assign(k, 0);
  state_.eta0 = 0.0;
  state_.m = hp_.mu;
  state_.beta.assign(G, hp_.a4 / hp_.b4);
  state_.gamma.resize(G);
  for (int g = 0; g < G; ++g)
    state_.gamma[g] = hp_.a3 > 1 ? state_.beta[g] / (hp_.a3 - 1) : state_.beta[g];
  state_.sigma_g2.assign(G, hp_.a5 > 1 ? hp_.b5 / (hp_.a5 - 1) : hp_.b5);
  state_.sigma2 = hp_.a1 > 1 ? hp_.b1 / (hp_.a1 - 1) : hp_.b1;
  state_.gamma0 = hp_.a2 > 1 ? hp_.b2 / (hp_.a2 - 1) : hp_.b2;
  state_.stick_p.assign(G, 1.0 / G);

  refresh_matched_features();
  state_.K.resize(k);
  std::uniform_int_distribution<int> rand_cluster(0, G - 1);
  for (int j = 0; j < k; ++j) {
    const auto& feats = matched_features_[j];
    if (feats.empty()) {
      state_.K[j] = rand_cluster(rng_);
      continue;
    }
    double avg = 0;
    for (int i : feats) avg += input_.feature_stats[i];
    avg /= feats.size();
    int best = 0;
    for (int g = 1; g < G; ++g)
      if (std::abs(hp_.mu[g] - avg) < std::abs(hp_.mu[best] - avg)) best = g;
    state_.K[j] = best;
  }
  state_.eta.resize(k);
  for (int j = 0; j < k; ++j) state_.eta[j] = state_.m[state_.K[j]];
}

void GibbsChain::refresh_matched_features() {
  matched_features_.assign(input_.n_metabolites(), {});
  for (int i = 0; i < input_.n_features(); ++i)
    matched_features_[state_.lambda[i]].push_back(i);
}

void GibbsChain::set_lambda(const std::vector<int>& lambda) {
  if (lambda.size() != state_.lambda.size())
    throw std::domain_error("set_lambda: length mismatch");
  state_.lambda = lambda;
  refresh_matched_features();
}

void GibbsChain::update_lambda() {
  std::vector<double> logw;
  for (int i = 0; i < input_.n_features(); ++i) {
    const auto& row = input_.candidates[i];
    if (row.size() == 1) {
      state_.lambda[i] = row[0].metabolite;
      continue;
    }
    logw.resize(row.size());
    for (size_t c = 0; c < row.size(); ++c) {
      int j = row[c].metabolite;
      logw[c] = std::log(row[c].q) +
                normal_logpdf(input_.feature_stats[i], state_.score(j), state_.sigma2);
    }
    state_.lambda[i] = row[sample_categorical_log(logw, rng_)].metabolite;
  }
  refresh_matched_features();
}

void GibbsChain::update_z() {
  BondPartition part = swendsen_wang_bonds(input_.network, state_.z, hp_, rng_);
  const int k = input_.n_metabolites();
  // Per bond-cluster: prior field term plus matched-feature likelihoods.
  std::vector<double> logw0(part.n_clusters, 0.0), logw1(part.n_clusters, 0.0);
  const double lpi0 = std::log(hp_.pi0), lpi1 = std::log(hp_.pi1);
  for (int j = 0; j < k; ++j) {
    int c = part.cluster_id[j];
    logw0[c] += wtilde_[j] * lpi0;
    logw1[c] += wtilde_[j] * lpi1;
    for (int i : matched_features_[j]) {
      double r = input_.feature_stats[i];
      logw0[c] += normal_logpdf(r, state_.eta0, state_.sigma2);
      logw1[c] += normal_logpdf(r, state_.eta[j], state_.sigma2);
    }
  }
  std::vector<int> label(part.n_clusters);
  for (int c = 0; c < part.n_clusters; ++c) {
    double lw[2] = {logw0[c], logw1[c]};
    label[c] = sample_categorical_log(lw, rng_);
  }
  for (int j = 0; j < k; ++j) state_.z[j] = label[part.cluster_id[j]];
}

void GibbsChain::update_eta0() {
  double sum_r = 0;
  int n0 = 0;
  for (int i = 0; i < input_.n_features(); ++i) {
    if (state_.z[state_.lambda[i]] == 0) {
      sum_r += input_.feature_stats[i];
      ++n0;
    }
  }
  double prec = 1.0 / state_.gamma0 + n0 / state_.sigma2;
  double var = 1.0 / prec;
  double mean = var * sum_r / state_.sigma2;
  state_.eta0 = sample_normal(mean, var, rng_);
}

void GibbsChain::update_eta() {
  for (int j = 0; j < input_.n_metabolites(); ++j) {
    const int g = state_.K[j];
    const double m0 = state_.m[g], v0 = state_.gamma[g];
    if (state_.z[j] == 1 && !matched_features_[j].empty()) {
      double sum_r = 0;
      for (int i : matched_features_[j]) sum_r += input_.feature_stats[i];
      double n = static_cast<double>(matched_features_[j].size());
      double prec = 1.0 / v0 + n / state_.sigma2;
      double var = 1.0 / prec;
      double mean = var * (m0 / v0 + sum_r / state_.sigma2);
      state_.eta[j] = sample_normal(mean, var, rng_);
    } else {
      state_.eta[j] = sample_normal(m0, v0, rng_);
    }
  }
}

void GibbsChain::update_clusters() {
  const int k = input_.n_metabolites();
  const int G = hp_.G;
  if (G == 1) {
    std::fill(state_.K.begin(), state_.K.end(), 0);
    state_.stick_p = {1.0};
  } else {
    std::vector<double> logw(G);
    for (int j = 0; j < k; ++j) {
      for (int g = 0; g < G; ++g)
        logw[g] = std::log(state_.stick_p[g]) +
                  normal_logpdf(state_.eta[j], state_.m[g], state_.gamma[g]);
      state_.K[j] = sample_categorical_log(logw, rng_);
    }
  }

  std::vector<int> n_g(G, 0);
  std::vector<double> sum_eta(G, 0.0);
  for (int j = 0; j < k; ++j) {
    n_g[state_.K[j]] += 1;
    sum_eta[state_.K[j]] += state_.eta[j];
  }

  if (G > 1) {
    std::vector<double> sticks(G, 1.0);
    int tail = k;
    for (int g = 0; g < G - 1; ++g) {
      tail -= n_g[g];
      sticks[g] = sample_beta(1.0 + n_g[g], hp_.tau + tail, rng_);
    }
    state_.stick_p = sticks_to_probs(sticks);
  }

  for (int g = 0; g < G; ++g) {
    if (!hp_.degenerate_mean) {
      double prec = 1.0 / state_.sigma_g2[g] + n_g[g] / state_.gamma[g];
      double var = 1.0 / prec;
      double mean = var * (hp_.mu[g] / state_.sigma_g2[g] + sum_eta[g] / state_.gamma[g]);
      state_.m[g] = sample_normal(mean, var, rng_);
    }
    double ss = 0;
    for (int j = 0; j < k; ++j)
      if (state_.K[j] == g) {
        double d = state_.eta[j] - state_.m[g];
        ss += d * d;
      }
    state_.gamma[g] = sample_inverse_gamma(hp_.a3 + 0.5 * n_g[g],
                                           state_.beta[g] + 0.5 * ss, rng_);
    state_.beta[g] =
        sample_gamma(hp_.a4 + hp_.a3, hp_.b4 + 1.0 / state_.gamma[g], rng_);
    if (!hp_.degenerate_mean) {
      double d = state_.m[g] - hp_.mu[g];
      state_.sigma_g2[g] = sample_inverse_gamma(hp_.a5 + 0.5, hp_.b5 + 0.5 * d * d, rng_);
    }
  }
}

void GibbsChain::update_variances() {
  double ss = 0;
  for (int i = 0; i < input_.n_features(); ++i) {
    double d = input_.feature_stats[i] - state_.score(state_.lambda[i]);
    ss += d * d;
  }
  state_.sigma2 =
      sample_inverse_gamma(hp_.a1 + 0.5 * input_.n_features(), hp_.b1 + 0.5 * ss, rng_);
  state_.gamma0 =
      sample_inverse_gamma(hp_.a2 + 0.5, hp_.b2 + 0.5 * state_.eta0 * state_.eta0, rng_);
}

void GibbsChain::sweep() {
  update_lambda();
  update_z();
  update_eta0();
  update_eta();
  update_clusters();
  update_variances();
}

double GibbsChain::log_joint() const {
  double lj = 0;
  for (int i = 0; i < input_.n_features(); ++i) {
    int j = state_.lambda[i];
    lj += normal_logpdf(input_.feature_stats[i], state_.score(j), state_.sigma2);
    for (const auto& c : input_.candidates[i])
      if (c.metabolite == j) {
        lj += std::log(c.q);
        break;
      }
  }
  lj += potts_log_prior(state_.z, hp_, input_.network);
  lj += normal_logpdf(state_.eta0, 0.0, state_.gamma0);
  for (int j = 0; j < input_.n_metabolites(); ++j) {
    int g = state_.K[j];
    lj += normal_logpdf(state_.eta[j], state_.m[g], state_.gamma[g]);
    lj += std::log(state_.stick_p[g]);
  }
  for (int g = 0; g < hp_.G; ++g) {
    lj += ig_logpdf(state_.gamma[g], hp_.a3, state_.beta[g]);
    lj += gamma_logpdf(state_.beta[g], hp_.a4, hp_.b4);
    if (!hp_.degenerate_mean) {
      lj += normal_logpdf(state_.m[g], hp_.mu[g], state_.sigma_g2[g]);
      lj += ig_logpdf(state_.sigma_g2[g], hp_.a5, hp_.b5);
    }
  }
  lj += ig_logpdf(state_.sigma2, hp_.a1, hp_.b1);
  lj += ig_logpdf(state_.gamma0, hp_.a2, hp_.b2);
  return lj;
}

void GibbsChain::resample_data() {
  for (int i = 0; i < input_.n_features(); ++i)
    input_.feature_stats[i] =
        sample_normal(state_.score(state_.lambda[i]), state_.sigma2, rng_);
}

void GibbsChain::draw_sticks_from_prior() {
  const int G = hp_.G;
  if (G == 1) {
    state_.stick_p = {1.0};
    return;
  }
  std::vector<double> sticks(G, 1.0);
  for (int g = 0; g < G - 1; ++g) sticks[g] = sample_beta(1.0, hp_.tau, rng_);
  state_.stick_p = sticks_to_probs(sticks);
}

void GibbsChain::draw_from_prior() {
  const int k = input_.n_metabolites();
  const int G = hp_.G;
  state_.sigma2 = sample_inverse_gamma(hp_.a1, hp_.b1, rng_);
  state_.gamma0 = sample_inverse_gamma(hp_.a2, hp_.b2, rng_);
  state_.eta0 = sample_normal(0.0, state_.gamma0, rng_);
  for (int g = 0; g < G; ++g) {
    state_.beta[g] = sample_gamma(hp_.a4, hp_.b4, rng_);
    state_.gamma[g] = sample_inverse_gamma(hp_.a3, state_.beta[g], rng_);
    if (hp_.degenerate_mean) {
      state_.m[g] = hp_.mu[g];
    } else {
      state_.sigma_g2[g] = sample_inverse_gamma(hp_.a5, hp_.b5, rng_);
      state_.m[g] = sample_normal(hp_.mu[g], state_.sigma_g2[g], rng_);
    }
  }
  draw_sticks_from_prior();
  for (int j = 0; j < k; ++j) {
    state_.K[j] = sample_categorical(state_.stick_p, rng_);
    state_.eta[j] = sample_normal(state_.m[state_.K[j]], state_.gamma[state_.K[j]], rng_);
  }
  state_.z = draw_z_prior_exact(input_.network, hp_, rng_);
  for (int i = 0; i < input_.n_features(); ++i) {
    const auto& row = input_.candidates[i];
    std::vector<double> q(row.size());
    for (size_t c = 0; c < row.size(); ++c) q[c] = row[c].q;
    state_.lambda[i] = row[sample_categorical(q, rng_)].metabolite;
  }
  refresh_matched_features();
}

PosteriorSummary init_summary(const ProblemInput& input) {
  PosteriorSummary s;
  s.inclusion_prob.assign(input.n_metabolites(), 0.0);
  s.match_prob = input.candidates;
  for (auto& row : s.match_prob)
    for (auto& c : row) c.q = 0.0;
  return s;
}

std::pair<PosteriorSummary, std::vector<TraceRecord>> run_chain(const ProblemInput& input,
                                                                const Hyperparameters& hp,
                                                                const ChainConfig& cfg) {
  auto violations = validate_input(input);
  if (!violations.empty())
    throw std::domain_error("run_chain: invalid input: " + violations.front());
  if (cfg.n_burnin < 0 || cfg.n_iter < 1 || cfg.thinning < 1)
    throw std::domain_error("run_chain: bad chain config");

  GibbsChain chain(input, hp, cfg.rng_seed);
  PosteriorSummary summary = init_summary(input);
  std::vector<TraceRecord> trace;
  double sum_sigma2 = 0, sum_gamma0 = 0, sum_eta0 = 0;
  int n_kept = 0;

  const int total = cfg.n_burnin + cfg.n_iter;
  for (int it = 0; it < total; ++it) {
    chain.sweep();
    if (it < cfg.n_burnin) continue;
    if ((it - cfg.n_burnin) % cfg.thinning != 0) continue;
    const ChainState& st = chain.state();
    auto check = [&](double v, const char* name) {
      if (!std::isfinite(v)) {
        std::ostringstream os;
        os << "run_chain: non-finite " << name << " at iteration " << it;
        throw std::runtime_error(os.str());
      }
    };
    check(st.sigma2, "sigma2");
    check(st.gamma0, "gamma0");
    check(st.eta0, "eta0");
    double lj = chain.log_joint();
    check(lj, "log_joint");

    for (int j = 0; j < input.n_metabolites(); ++j) summary.inclusion_prob[j] += st.z[j];
    for (int i = 0; i < input.n_features(); ++i) {
      auto& row = summary.match_prob[i];
      for (auto& c : row)
        if (c.metabolite == st.lambda[i]) {
          c.q += 1.0;
          break;
        }
    }
    sum_sigma2 += st.sigma2;
    sum_gamma0 += st.gamma0;
    sum_eta0 += st.eta0;
    ++n_kept;
    int n_alt = 0;
    for (int zj : st.z) n_alt += zj;
    trace.push_back({it, st.sigma2, st.gamma0, st.eta0, n_alt, lj});
  }

  for (auto& u : summary.inclusion_prob) u /= n_kept;
  for (auto& row : summary.match_prob)
    for (auto& c : row) c.q /= n_kept;
  summary.mean_sigma2 = sum_sigma2 / n_kept;
  summary.mean_gamma0 = sum_gamma0 / n_kept;
  summary.mean_eta0 = sum_eta0 / n_kept;
  return {std::move(summary), std::move(trace)};
}

}  // namespace baum
