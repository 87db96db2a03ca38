#ifndef FLB_PARAMS_HPP
#define FLB_PARAMS_HPP

#include <stdexcept>
#include <string>

#include "flb/policies.hpp"

namespace flb {

struct CapacityTooSmall : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

enum class Regime {
  LargeCapCaseI,
  LargeCapCaseII,
  FiniteCap,
  FixedRewardInt,
  FixedRewardReal,
};
const char* to_string(Regime r);

struct SolvedParams {
  double gamma = 1.0; // positive integer value, or kGammaInf
  double eta = 0.0;
  double beta = 1.0;
  double ratio_bound = 0.0; // certified competitive-ratio upper bound
  Regime regime = Regime::LargeCapCaseI;
  // Finite-capacity request where the Lambert-W solvability condition
  // failed but the infinite-capacity parameters still pass the finite
  // feasibility check.
  bool lambert_fallback = false;

  FlbParams flb() const { return FlbParams{gamma, eta, beta}; }
};

enum class WBranch { Principal, MinusOne };

// w * e^w = x within 1e-12. Principal: x >= -1/e, returns w >= -1.
// MinusOne: -1/e <= x < 0, returns w <= -1. Throws DomainError outside.
double lambert_w(WBranch branch, double x);

// W_{-1} evaluated from ln(-x); needed where -x underflows double range.
double lambert_w_minus_one_from_log(double ln_neg_x);

double harmonic(int D);                 // sum_{i=1}^{D} 1/i
double rho_product(double z, int k);    // prod_{l=1}^{k} (1 - z/l), empty product = 1

// Integer-duration program: objective ln(beta)(1 + eta(1 + beta(beta^{1/c_min}-1)))
// subject to the integer feasibility condition, gamma = 1.
// Pass c_min = +infinity for the large-capacity regime.
SolvedParams solve_flbopt_int(double R, int D, double c_min);

// Real-duration program: objective (gamma/(gamma-1)) ln(beta)(1 + gamma eta (...)).
SolvedParams solve_flbopt_real(double R, double D, double c_min);

// Homogeneous rewards, integer durations: eta solves
// prod_{k in [D]} (1 - 1/(k(1+eta))) = 1/e, beta = e, gamma = 1;
// ratio 1 + eta <= H(D) + 2.
SolvedParams solve_fixed_reward_int(int D);

// Homogeneous rewards, real durations: gamma = inf, eta = ln(D)+3, beta = e,
// ratio ln(D)+4, after verifying
//   1 >= -ln(1 - (1/(1+eta)) e^{eta/(1+eta)}) + (1/(1+eta)) ln(D).
SolvedParams solve_fixed_reward_real(double D);

} // namespace flb

#endif
