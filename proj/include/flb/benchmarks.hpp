#ifndef FLB_BENCHMARKS_HPP
#define FLB_BENCHMARKS_HPP

#include <stdexcept>
#include <vector>

#include "flb/core.hpp"
#include "flb/policies.hpp"

namespace flb {

struct TooLarge : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NegativeAvailability : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Maximum achievable sum of r*d over capacity-feasible offline assignments.
// Regimes: (a) server-interchangeable instances (single server, or every job
// compatible with every server with identical (r,d) across its row) at any
// size via min-cost flow; (b) general instances with m <= 14 via
// branch-and-bound. Throws TooLarge otherwise.
double opt_exact(const Instance& instance);

// The two oracles individually (for cross-checks).
bool opt_flow_applicable(const Instance& instance);
double opt_flow(const Instance& instance);        // regime (a)
double opt_bruteforce(const Instance& instance);  // any heterogeneity, exponential in m

struct Configuration {
  int server = 0;
  std::vector<int> jobs; // 1-based job indices, pairwise-disjoint [t, t+d)
};

// All subsets of the server's compatible jobs with pairwise-disjoint
// occupancy intervals, including the empty set. Throws TooLarge when the
// server has more than 20 compatible jobs.
std::vector<Configuration> enumerate_configurations(const Instance& instance, int server);

struct DualSolution {
  std::vector<double> lambda; // per job, 1-based index -> lambda[index-1]
  std::vector<double> theta;  // per server
  double objective = 0.0;     // sum lambda + sum c_i * theta_i
};

// Replays an FLB trace (finite gamma) applying, at each assignment j -> i:
//   lambda(j) = r d - sum_tau Psi(alpha), theta(i) += sum_tau (Psi(alpha - 1/c_i) - Psi(alpha)).
// Throws NegativeAvailability if the trace over-books a server.
DualSolution construct_dual(const Trace& trace, const FlbParams& params,
                            const Instance& instance);

enum class GammaMode { Int, Real };

struct CertificateReport {
  int step_violations = 0;
  int config_violations = 0;
  bool weak_duality_ok = true;
  double max_step_ratio = 0.0;    // max over assignments of dDual / (r d)
  double worst_config_slack = 0.0; // min over configs of slack*(sum lambda + theta) - sum r d
  double alg_reward = 0.0;
  double opt = 0.0;
  double dual_objective = 0.0;
  double gamma_step = 0.0;  // per-step constant: ln(beta)(1 + [gamma] eta (1 + beta(beta^{1/c_min}-1)))
  double gamma_total = 0.0; // gamma_step, times gamma/(gamma-1) in real mode

  bool ok() const { return step_violations == 0 && config_violations == 0 && weak_duality_ok; }
};

// (1) per assignment, dual increment <= gamma_step * reward increment;
// (2) per server and enumerated configuration, slack*(sum lambda_S + theta_i) >= sum_S r d
//     with slack = 1 (Int) or gamma/(gamma-1) (Real);
// (3) weak duality: dual objective >= opt_exact.
CertificateReport verify_certificate(const DualSolution& dual, const Trace& trace,
                                     const Instance& instance, const FlbParams& params,
                                     GammaMode gamma_mode);

} // namespace flb

#endif
