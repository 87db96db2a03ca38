#include "flb/policies.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace flb {

int FlbParams::gamma_int() const {
  if (gamma_is_inf()) throw std::invalid_argument("gamma is infinite");
  return static_cast<int>(gamma);
}

void FlbParams::validate() const {
  if (!(eta >= 0.0)) throw std::invalid_argument("eta must be >= 0");
  if (!(beta >= 1.0)) throw std::invalid_argument("beta must be >= 1");
  if (gamma_is_inf()) return;
  if (!(gamma >= 1.0) || gamma != std::floor(gamma))
    throw std::invalid_argument("gamma must be a positive integer or inf");
}

double penalty(const FlbParams& params, double x) {
  return params.eta * (std::pow(params.beta, 1.0 - x) - 1.0);
}

std::vector<double> inspection_times(double t, double d, int gamma) {
  if (d <= 0.0 || gamma < 1) throw std::invalid_argument("need d > 0 and gamma >= 1");
  long long n = static_cast<long long>(std::ceil(gamma * d - 1e-9));
  std::vector<double> times;
  times.reserve(static_cast<size_t>(n));
  for (long long l = 0; l < n; ++l)
    times.push_back(t + static_cast<double>(l) / gamma);
  return times;
}

double reduced_reward_discrete(const FlbParams& params, double r, double d,
                               const AvailabilityTimeline& timeline, double t) {
  double score = r * d;
  for (double tau : inspection_times(t, d, params.gamma_int()))
    score -= penalty(params, timeline.projected_availability(tau));
  return score;
}

double reduced_reward_continuous(const FlbParams& params, double r, double d,
                                 const AvailabilityTimeline& timeline, double t) {
  // availability as a function of tau is a right-continuous step function
  // with jumps at busy-until values; integrate Psi segment by segment.
  double end = t + d;
  std::vector<double> cuts;
  cuts.push_back(t);
  for (double e : timeline.busy_until())
    if (e > t && e < end) cuts.push_back(e);
  cuts.push_back(end);
  std::sort(cuts.begin(), cuts.end());
  double integral = 0.0;
  for (size_t k = 0; k + 1 < cuts.size(); ++k) {
    double len = cuts[k + 1] - cuts[k];
    if (len <= 0.0) continue;
    integral += len * penalty(params, timeline.projected_availability(cuts[k]));
  }
  return r * d - integral;
}

Decision decide(const Policy& policy, const JobArrival& job,
                const std::vector<AvailabilityTimeline>& state) {
  Decision dec;
  double best = 0.0;
  double t = job.arrival_time;
  for (size_t k = 0; k < job.compat.size(); ++k) {
    int i = job.compat[k];
    double r = job.reward[k], d = job.duration[k];
    const AvailabilityTimeline& tl = state[static_cast<size_t>(i)];
    bool free_unit = tl.busy_count(t) < tl.capacity();
    double score;
    bool eligible;
    switch (policy.kind) {
      case Policy::Kind::Flb:
        score = policy.flb.gamma_is_inf()
                    ? reduced_reward_continuous(policy.flb, r, d, tl, t)
                    : reduced_reward_discrete(policy.flb, r, d, tl, t);
        eligible = score > 0.0;
        break;
      case Policy::Kind::Balance: {
        double etaB = policy.R * policy.D / (std::exp(1.0) - 1.0);
        score = r * d - etaB * (std::exp(1.0 - tl.projected_availability(t)) - 1.0);
        eligible = score > 0.0 && free_unit;
        break;
      }
      case Policy::Kind::Greedy:
        score = r * d;
        eligible = free_unit;
        break;
      default:
        throw std::logic_error("unknown policy kind");
    }
    dec.scores.emplace_back(i, score);
    if (eligible && (dec.chosen == kReject || score > best)) {
      dec.chosen = i;
      best = score;
    }
  }
  return dec;
}

std::string policy_name(const Policy& policy) {
  std::ostringstream out;
  switch (policy.kind) {
    case Policy::Kind::Greedy: return "greedy";
    case Policy::Kind::Balance:
      out << "balance:R=" << policy.R << ",D=" << policy.D;
      return out.str();
    case Policy::Kind::Flb:
      out << "flb:gamma=";
      if (policy.flb.gamma_is_inf()) out << "inf";
      else out << policy.flb.gamma_int();
      out << ",eta=" << policy.flb.eta << ",beta=" << policy.flb.beta;
      return out.str();
  }
  return "?";
}

Policy parse_policy(const std::string& text) {
  if (text == "greedy") return Policy::make_greedy();
  auto colon = text.find(':');
  std::string head = text.substr(0, colon);
  std::string args = colon == std::string::npos ? "" : text.substr(colon + 1);
  auto get = [&](const std::string& key, bool required) -> std::string {
    size_t pos = 0;
    while (pos < args.size()) {
      size_t end = args.find(',', pos);
      if (end == std::string::npos) end = args.size();
      std::string kv = args.substr(pos, end - pos);
      auto eq = kv.find('=');
      if (eq != std::string::npos && kv.substr(0, eq) == key) return kv.substr(eq + 1);
      pos = end + 1;
    }
    if (required) throw std::invalid_argument("policy string missing " + key + ": " + text);
    return "";
  };
  if (head == "balance") {
    Policy p = Policy::make_balance(1.0, 1.0);
    std::string r = get("R", false), d = get("D", false);
    if (!r.empty()) p.R = std::stod(r);
    if (!d.empty()) p.D = std::stod(d);
    return p;
  }
  if (head == "flb") {
    FlbParams params;
    std::string g = get("gamma", true);
    params.gamma = (g == "inf") ? kGammaInf : std::stod(g);
    params.eta = std::stod(get("eta", true));
    params.beta = std::stod(get("beta", true));
    params.validate();
    return Policy::make_flb(params);
  }
  throw std::invalid_argument("unknown policy string: " + text);
}

FlbParams conservative_flb_params(double R, double D, double gamma) {
  FlbParams p;
  p.gamma = gamma;
  p.eta = R * D / (std::exp(1.0) - 1.0);
  p.beta = std::exp(1.0);
  return p;
}

} // namespace flb
