#ifndef FLB_EXPERIMENTS_HPP
#define FLB_EXPERIMENTS_HPP

#include <cstdint>
#include <map>
#include <string>

namespace flb {

// Flat key=value config files; '#' starts a comment line.
using Config = std::map<std::string, std::string>;
Config parse_config(const std::string& text);
Config load_config(const std::string& path);
double config_num(const Config& cfg, const std::string& key, double fallback);
std::string config_str(const Config& cfg, const std::string& key, const std::string& fallback);

struct ExperimentResult {
  int violations = 0; // certificate/invariant violations encountered
};

// Performance ratio vs exact OPT for every truncation of the worst-case
// geometric family, one CSV row per (m, policy); optional SVG line chart with
// the 1/ln(RD) reference line.
// Config keys: M, R, D, c, policies (comma-separated policy strings or the
// shorthand "flb" = solver parameters for (R, D)).
ExperimentResult experiment_worstcase(const Config& cfg, const std::string& out_dir,
                                      bool emit_svg);

// Mean performance ratio vs exact OPT with 95% normal-approximation
// confidence intervals over seeded Poisson trials, per (c, rate) cell.
// Config keys: n, m, c_list, rate_list, trials, mu, sigma, seed.
ExperimentResult experiment_random(const Config& cfg, const std::string& out_dir, bool emit_svg,
                                   std::uint64_t seed_override);

// Primal-dual certificate suite over seeded random small instances; one CSV
// row per instance (id, alg_reward, opt, dual_objective, max_step_ratio,
// worst_config_slack). Config keys: count, seed, mode (int|real).
ExperimentResult experiment_certificates(const Config& cfg, const std::string& out_dir,
                                         std::uint64_t seed_override);

} // namespace flb

#endif
