#include "flb/params.hpp"

#include <cmath>
#include <limits>

#include "flb/engine.hpp"

namespace flb {

namespace {
constexpr double kE = 2.718281828459045235360287;
constexpr double kInf = std::numeric_limits<double>::infinity();
} // namespace

const char* to_string(Regime r) {
  switch (r) {
    case Regime::LargeCapCaseI: return "large_cap_case_i";
    case Regime::LargeCapCaseII: return "large_cap_case_ii";
    case Regime::FiniteCap: return "finite_cap";
    case Regime::FixedRewardInt: return "fixed_reward_int";
    case Regime::FixedRewardReal: return "fixed_reward_real";
  }
  return "?";
}

double lambert_w_minus_one_from_log(double y) {
  // Solves w + ln(-w) = y on the w <= -1 branch (y = ln(-x), w e^w = x).
  if (y > -1.0 + 1e-12) throw DomainError("lambert W_{-1}: argument above -1/e");
  double w;
  if (y > -2.0) {
    // branch-point expansion around w = -1 with p = sqrt(2(1 + e x))
    double p = std::sqrt(std::max(0.0, 2.0 * (1.0 - std::exp(y + 1.0))));
    w = -1.0 - p - p * p / 3.0;
  } else {
    w = y - std::log(-y);
  }
  for (int it = 0; it < 100; ++it) {
    double g = w + std::log(-w) - y;
    double gp = 1.0 + 1.0 / w;
    if (gp == 0.0) break;
    double step = g / gp;
    double wn = w - step;
    if (wn >= -1.0) wn = (w - 1.0) / 2.0;
    double done = std::abs(step) < 1e-14 * std::max(1.0, std::abs(wn));
    w = wn;
    if (done) break;
  }
  return std::min(w, -1.0);
}

double lambert_w(WBranch branch, double x) {
  constexpr double kInvE = 1.0 / kE;
  if (branch == WBranch::MinusOne) {
    if (x < -kInvE - 1e-15 || x >= 0.0)
      throw DomainError("lambert W_{-1}: x must lie in [-1/e, 0)");
    if (x <= -kInvE) return -1.0;
    return lambert_w_minus_one_from_log(std::log(-x));
  }
  if (x < -kInvE - 1e-15) throw DomainError("lambert W_0: x must be >= -1/e");
  if (x <= -kInvE) return -1.0;
  if (x == 0.0) return 0.0;
  // seed, then Halley
  double w;
  if (x < -0.25) {
    double p = std::sqrt(2.0 * (1.0 + kE * x));
    w = -1.0 + p - p * p / 3.0;
  } else if (x < kE) {
    w = x / (1.0 + x); // crude but in the basin
  } else {
    double l = std::log(x), ll = std::log(l);
    w = l - ll + ll / l;
  }
  for (int it = 0; it < 100; ++it) {
    double ew = std::exp(w);
    double f = w * ew - x;
    double fp = ew * (w + 1.0);
    double denom = fp - f * (w + 2.0) / (2.0 * (w + 1.0));
    if (denom == 0.0) denom = fp;
    double step = f / denom;
    w -= step;
    if (std::abs(step) < 1e-15 * std::max(1.0, std::abs(w))) break;
  }
  return std::max(w, -1.0);
}

double harmonic(int D) {
  if (D < 1) throw std::invalid_argument("harmonic needs D >= 1");
  double h = 0.0;
  for (int i = 1; i <= D; ++i) h += 1.0 / i;
  return h;
}

double rho_product(double z, int k) {
  if (k < 0) throw std::invalid_argument("rho_product needs k >= 0");
  double p = 1.0;
  for (int l = 1; l <= k; ++l) p *= 1.0 - z / l;
  return p;
}

namespace {

double objective_int(double eta, double beta, double c_min) {
  double grow = std::isinf(c_min) ? 0.0 : beta * (std::pow(beta, 1.0 / c_min) - 1.0);
  return std::log(beta) * (1.0 + eta * (1.0 + grow));
}

double objective_real(int gamma, double eta, double beta, double c_min) {
  double grow = std::isinf(c_min) ? 0.0 : beta * (std::pow(beta, 1.0 / c_min) - 1.0);
  return (static_cast<double>(gamma) / (gamma - 1)) * std::log(beta) *
         (1.0 + gamma * eta * (1.0 + grow));
}

// -ln prod_{k in [D]} (1 - R/(k(R+eta))), the binding ln(beta) at c_min = inf
double binding_log_beta(double R, int D, double eta) {
  double s = 0.0;
  for (int k = 1; k <= D; ++k) s -= std::log(1.0 - R / (k * (R + eta)));
  return s;
}

// Smallest beta >= e passing `feasible`, by geometric expansion + bisection.
template <class Pred>
double smallest_feasible_beta(Pred feasible) {
  if (feasible(kE)) return kE;
  double hi = kE;
  bool found = false;
  for (int it = 0; it < 600; ++it) {
    hi *= 1.3;
    if (feasible(hi)) { found = true; break; }
  }
  if (!found) throw CapacityTooSmall("no feasible beta found (capacity too small)");
  double lo = hi / 1.3;
  for (int it = 0; it < 300; ++it) {
    double mid = std::sqrt(lo * hi);
    if (feasible(mid)) hi = mid;
    else lo = mid;
    if (hi - lo < 1e-12 * hi) break;
  }
  return hi;
}

} // namespace

SolvedParams solve_flbopt_int(double R, int D, double c_min) {
  if (R < 1.0 || D < 1) throw std::invalid_argument("need R >= 1, D >= 1");
  double L = std::log(std::max(R, static_cast<double>(D)));
  SolvedParams sol;
  sol.gamma = 1.0;
  auto feasible = [&](double eta, double beta) {
    return check_feasibility_condition_integer(R, D, c_min, eta, beta) == Feasibility::Feasible;
  };
  if (L >= kE - 1.0) {
    sol.eta = 1.0 / L;
    double B = binding_log_beta(R, D, sol.eta);
    if (std::isinf(c_min)) {
      sol.beta = std::exp(std::max(1.0, B));
      sol.regime = Regime::LargeCapCaseI;
    } else {
      // 1/beta = -A * W_{-1}( -1/(A e^{e^{-B}/A}) ), A = (R L + 1)/(R L c_min);
      // the W argument is computed in log space: ln(-x) = -ln A - e^{-B}/A.
      double A = (R * L + 1.0) / (R * L * c_min);
      double ln_neg_x = -std::log(A) - std::exp(-B) / A;
      if (ln_neg_x <= -1.0) {
        double w = lambert_w_minus_one_from_log(ln_neg_x);
        sol.beta = std::max(kE, -1.0 / (A * w));
        sol.regime = Regime::FiniteCap;
      } else {
        sol.beta = std::exp(std::max(1.0, B));
        sol.regime = Regime::LargeCapCaseI;
        sol.lambert_fallback = true;
      }
      if (!feasible(sol.eta, sol.beta))
        throw CapacityTooSmall("integer program infeasible at c_min = " + std::to_string(c_min));
    }
  } else {
    sol.eta = R / (kE - 1.0);
    sol.regime = Regime::LargeCapCaseII;
    if (std::isinf(c_min)) {
      sol.beta = std::exp(std::max(1.0, binding_log_beta(R, D, sol.eta)));
    } else {
      sol.beta = smallest_feasible_beta([&](double b) { return feasible(sol.eta, b); });
    }
  }
  if (!feasible(sol.eta, sol.beta))
    throw CapacityTooSmall("solved parameters failed the feasibility check");
  sol.ratio_bound = objective_int(sol.eta, sol.beta, c_min);
  return sol;
}

SolvedParams solve_flbopt_real(double R, double D, double c_min) {
  if (R < 1.0 || D < 1.0) throw std::invalid_argument("need R >= 1, D >= 1");
  if (std::max(R, D) <= 1.0) {
    // all durations are 1: the integer program applies verbatim
    return solve_flbopt_int(R, 1, c_min);
  }
  double L = std::log(std::max(R, D));
  SolvedParams sol;
  int gamma;
  if (L >= kE - 1.0) {
    gamma = std::max(2, static_cast<int>(std::ceil(L)));
    sol.eta = 1.0 / (L * L);
    sol.regime = Regime::LargeCapCaseI;
  } else {
    gamma = 2;
    sol.eta = R / (kE - 1.0);
    sol.regime = Regime::LargeCapCaseII;
  }
  sol.gamma = gamma;
  auto feasible = [&](double beta) {
    return check_feasibility_condition_real(R, D, c_min, gamma, sol.eta, beta) ==
           Feasibility::Feasible;
  };
  sol.beta = smallest_feasible_beta(feasible);
  if (!std::isinf(c_min)) sol.regime = Regime::FiniteCap;
  sol.ratio_bound = objective_real(gamma, sol.eta, sol.beta, c_min);
  return sol;
}

SolvedParams solve_fixed_reward_int(int D) {
  if (D < 1) throw std::invalid_argument("need D >= 1");
  // prod_{k in [D]} (1 - 1/(k(1+eta))) is increasing in eta: bisect to 1/e
  auto prod = [&](double eta) {
    double p = 1.0;
    for (int k = 1; k <= D; ++k) p *= 1.0 - 1.0 / (k * (1.0 + eta));
    return p;
  };
  double lo = 1e-12, hi = 1.0;
  while (prod(hi) < 1.0 / kE) hi *= 2.0;
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    if (prod(mid) >= 1.0 / kE) hi = mid;
    else lo = mid;
    if (hi - lo < 1e-13) break;
  }
  SolvedParams sol;
  sol.gamma = 1.0;
  sol.eta = 0.5 * (lo + hi);
  sol.beta = kE;
  sol.ratio_bound = 1.0 + sol.eta;
  sol.regime = Regime::FixedRewardInt;
  return sol;
}

SolvedParams solve_fixed_reward_real(double D) {
  if (D < 1.0) throw std::invalid_argument("need D >= 1");
  double eta = std::log(D) + 3.0;
  double a = 1.0 / (1.0 + eta);
  double rhs = -std::log(1.0 - a * std::exp(eta * a)) + a * std::log(D);
  if (rhs > 1.0 + 1e-12)
    throw std::logic_error("fixed-reward real-duration condition failed numerically");
  SolvedParams sol;
  sol.gamma = kGammaInf;
  sol.eta = eta;
  sol.beta = kE;
  sol.ratio_bound = 1.0 + eta; // = ln(D) + 4
  sol.regime = Regime::FixedRewardReal;
  return sol;
}

} // namespace flb
