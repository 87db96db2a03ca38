#ifndef FLB_POLICIES_HPP
#define FLB_POLICIES_HPP

#include <limits>
#include <string>
#include <vector>

#include "flb/core.hpp"

namespace flb {

constexpr double kGammaInf = std::numeric_limits<double>::infinity();

// FLB knobs. gamma is a positive integer stored as double, or kGammaInf
// (continuous inspection).
struct FlbParams {
  double gamma = 1.0;
  double eta = 0.0;
  double beta = 1.0;

  bool gamma_is_inf() const { return gamma == kGammaInf; }
  int gamma_int() const; // throws if gamma == inf
  void validate() const; // gamma >= 1 integer or inf, eta >= 0, beta >= 1
};

// Penalty Psi(x) = eta * (beta^(1-x) - 1). Defined for all finite x
// (hypothetical mode feeds x < 0); Psi(1) = 0 exactly.
double penalty(const FlbParams& params, double x);

// {t + l/gamma : l in N, t + l/gamma < t + d}; size = ceil(gamma*d) except
// when gamma*d is an integer, where it is exactly gamma*d.
std::vector<double> inspection_times(double t, double d, int gamma);

// r*d - sum of Psi(availability) over inspection times (finite gamma).
double reduced_reward_discrete(const FlbParams& params, double r, double d,
                               const AvailabilityTimeline& timeline, double t);

// r*d - exact integral of Psi(availability) over [t, t+d), evaluated
// piecewise between busy-until breakpoints (gamma = inf).
double reduced_reward_continuous(const FlbParams& params, double r, double d,
                                 const AvailabilityTimeline& timeline, double t);

struct Decision {
  int chosen = kReject;
  std::vector<std::pair<int, double>> scores; // (server, score) per compatible server
};

struct Policy {
  enum class Kind { Flb, Balance, Greedy };
  Kind kind = Kind::Greedy;
  FlbParams flb{};      // Kind::Flb
  double R = 1.0;       // Kind::Balance
  double D = 1.0;       // Kind::Balance

  static Policy make_flb(FlbParams p) { return Policy{Kind::Flb, p, 1.0, 1.0}; }
  static Policy make_balance(double R, double D) { return Policy{Kind::Balance, {}, R, D}; }
  static Policy make_greedy() { return Policy{Kind::Greedy, {}, 1.0, 1.0}; }
};

// FLB: argmax of reduced reward over compat, assign iff max > 0.
// BALANCE: argmax of r*d - Psi_B(availability at t) with
//   Psi_B(x) = (RD/(e-1))(e^(1-x)-1); assign iff positive AND a unit is free.
// GREEDY: argmax r*d among servers with a free unit, REJECT if none.
// Ties broken by lowest server index everywhere.
Decision decide(const Policy& policy, const JobArrival& job,
                const std::vector<AvailabilityTimeline>& state);

// "flb:gamma=1,eta=0.58198,beta=2.71828", "flb:gamma=inf,...",
// "balance" / "balance:R=10,D=10", "greedy".
Policy parse_policy(const std::string& text);
std::string policy_name(const Policy& policy);

// Conservative FLB penalty that is capacity feasible at ANY capacity:
// eta = RD/(e-1), beta = e, so Psi(0) = RD >= every r*d and a full server
// can never win the argmax with a positive score.
FlbParams conservative_flb_params(double R, double D, double gamma = 1.0);

} // namespace flb

#endif
