#ifndef BAUM_IO_HPP
#define BAUM_IO_HPP

#include <map>
#include <string>
#include <vector>

#include "baum/enrichment.hpp"
#include "baum/inference.hpp"
#include "baum/model.hpp"
#include "baum/sampler.hpp"

namespace baum {

struct InputPaths {
  std::string stats;
  std::string matches;
  std::string network;
  std::string pathways;  // optional
};

// stats TSV: feature_id <TAB> statistic
// matches TSV: feature_id <TAB> metabolite_id <TAB> q  (rows renormalized when
//   the per-feature sum is within 1e-6 of 1, rejected otherwise)
// network TSV: metabolite_id <TAB> metabolite_id  (undirected, deduplicated)
// Features are indexed in stats-file order; metabolites by first appearance in
// the matches file, then the network file.
ProblemInput load_inputs(const InputPaths& paths);

std::pair<Network, std::vector<std::string>> load_network_file(const std::string& path);

std::vector<std::vector<Candidate>> load_matches_file(
    const std::string& path, std::vector<std::string>& feature_ids,
    const std::vector<std::string>& metabolite_ids);

// pathway TSV: pathway_name <TAB> metabolite_id; unknown ids are dropped.
PathwayDB load_pathways_file(const std::string& path,
                             const std::vector<std::string>& metabolite_ids);

// r = Phi^{-1}(1 - p), p clipped at 1e-15.
std::vector<double> transform_pvalues(const std::vector<double>& pvalues);

// r_i = Phi^{-1}((rank_i - 0.5)/n) with average-rank ties.
std::vector<double> transform_rank_normal(const std::vector<double>& raw);

// Flat key=value configuration with typed parsing; '#' starts a comment.
using KeyValueConfig = std::map<std::string, std::string>;
KeyValueConfig parse_config_file(const std::string& path);
void apply_overrides(Hyperparameters& hp, ChainConfig& cfg, const KeyValueConfig& kv);

std::string format_number(double v);  // 6 significant digits

void write_problem_input(const ProblemInput& input, const std::string& stats_path,
                         const std::string& matches_path, const std::string& network_path);
void write_selection_table(const std::string& path, const ProblemInput& input,
                           const std::vector<double>& u, const SelectionResult& sel);
void write_matching_table(const std::string& path, const ProblemInput& input,
                          const std::vector<std::vector<Candidate>>& match_prob,
                          const std::vector<int>& assignment);
void write_trace(const std::string& path, const std::vector<TraceRecord>& trace);
void write_manifest(const std::string& path, const std::map<std::string, std::string>& fields);

}  // namespace baum

#endif
