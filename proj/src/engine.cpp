#include "flb/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

namespace flb {

Trace run(const Instance& instance, const Policy& policy, Mode mode) {
  Trace trace;
  std::vector<AvailabilityTimeline> state;
  state.reserve(instance.capacities.size());
  for (int c : instance.capacities) state.emplace_back(c);

  for (const JobArrival& job : instance.jobs) {
    Decision dec = decide(policy, job, state);
    DecisionRecord rec;
    rec.job = job.index;
    rec.t = job.arrival_time;
    rec.chosen = dec.chosen;
    rec.scores = std::move(dec.scores);
    if (dec.chosen != kReject) {
      double r = job.reward_on(dec.chosen);
      double d = job.duration_on(dec.chosen);
      if (policy.kind == Policy::Kind::Flb && !policy.flb.gamma_is_inf()) {
        for (double tau : inspection_times(job.arrival_time, d, policy.flb.gamma_int()))
          rec.availability_at_inspections.push_back(
              state[static_cast<size_t>(dec.chosen)].projected_availability(tau));
      }
      try {
        state[static_cast<size_t>(dec.chosen)].commit(job.arrival_time, job.arrival_time + d, mode);
      } catch (const CapacityViolation&) {
        throw CapacityViolation("capacity violated by job " + std::to_string(job.index) +
                                    " on server " + std::to_string(dec.chosen + 1),
                                job.index, dec.chosen);
      }
      rec.reward = r * d;
      trace.total_reward += r * d;
    }
    double min_avail = 1.0;
    for (const auto& tl : state)
      min_avail = std::min(min_avail, tl.projected_availability(job.arrival_time));
    rec.min_availability_after = min_avail;
    trace.decisions.push_back(std::move(rec));
  }
  return trace;
}

const char* to_string(Feasibility f) {
  switch (f) {
    case Feasibility::Feasible: return "feasible";
    case Feasibility::Infeasible: return "infeasible";
    case Feasibility::Undefined: return "undefined";
  }
  return "?";
}

static constexpr double kFeasTol = 1e-9;

Feasibility check_feasibility_condition_integer(double R, int D, double c_min, double eta,
                                                double beta) {
  if (!(eta > 0.0) || !(beta > 1.0)) throw std::invalid_argument("need eta > 0, beta > 1");
  double lnb = std::log(beta);
  double prod = 1.0;
  for (int k = 1; k <= D; ++k) prod *= 1.0 - R / (k * (R + eta));
  double eps = std::isinf(c_min) ? 0.0 : (R + eta) * lnb / (R * c_min);
  double arg = prod - eps;
  if (arg <= 0.0) return Feasibility::Undefined;
  return lnb >= -std::log(arg) - kFeasTol ? Feasibility::Feasible : Feasibility::Infeasible;
}

Feasibility check_feasibility_condition_real(double R, double D, double c_min, int gamma,
                                             double eta, double beta) {
  if (!(eta > 0.0) || !(beta > 1.0)) throw std::invalid_argument("need eta > 0, beta > 1");
  if (gamma < 2) throw std::invalid_argument("real-duration condition needs gamma >= 2");
  double lnb = std::log(beta);
  double ge = gamma * eta;

  long long K = static_cast<long long>(std::ceil(gamma * D - 1e-9));
  double prod1 = 1.0;
  for (long long k = 1; k <= K; ++k) prod1 *= 1.0 - R / (k * (R + ge));
  if (prod1 <= 0.0) return Feasibility::Undefined;
  double term1 = -std::log(prod1);

  double eps = std::isinf(c_min) ? 0.0 : (ge + R) * lnb / (R * c_min);
  double arg2 = 1.0 + (gamma + R / eta) * (1.0 - eps) -
                (R / eta) * std::pow(1.0 + eta / (R + ge), gamma);
  if (arg2 <= 0.0) return Feasibility::Undefined;
  double term2 = -std::log(arg2);

  double term3 = std::log((gamma + 1) * (R + ge) / ge);

  double prod4 = 1.0;
  for (int k = 1; k <= gamma + 1; ++k) prod4 *= 1.0 - R / (k * (R + ge));
  if (prod4 <= 0.0) return Feasibility::Undefined;
  double term4 = std::log(prod4);

  double rhs = term1 + term2 + term3 + term4;
  return lnb >= rhs - kFeasTol ? Feasibility::Feasible : Feasibility::Infeasible;
}

std::vector<InvariantViolation> check_invariant_integer(const Instance& instance,
                                                        const Trace& trace,
                                                        const FlbParams& params, double R,
                                                        double c_min,
                                                        const std::vector<InvariantTriple>& triples) {
  params.validate();
  double lnb = std::log(params.beta);
  double eta = params.eta;
  double eps = std::isinf(c_min) ? 0.0 : (R + eta) * lnb / (R * c_min);

  // rhs(d) = -ln( prod_{k in [d]}(1 - R/(k(R+eta))) - eps )
  int d_max = 0;
  for (const auto& tr : triples) d_max = std::max(d_max, tr.d);
  std::vector<double> rhs(static_cast<size_t>(d_max) + 1);
  double prod = 1.0;
  for (int d = 0; d <= d_max; ++d) {
    if (d > 0) prod *= 1.0 - R / (d * (R + eta));
    double arg = prod - eps;
    if (arg <= 0.0)
      throw PreconditionViolated("product term does not dominate (R+eta)ln(beta)/(R c_min) at d=" +
                                 std::to_string(d));
    rhs[static_cast<size_t>(d)] = -std::log(arg);
  }

  // Replay the trace once; evaluate each triple against the state that
  // includes all assignments with arrival_time <= triple.t.
  std::vector<InvariantTriple> sorted = triples;
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const InvariantTriple& a, const InvariantTriple& b) { return a.t < b.t; });

  std::vector<AvailabilityTimeline> state;
  for (int c : instance.capacities) state.emplace_back(c);
  std::vector<InvariantViolation> violations;
  size_t next = 0;
  auto eval_up_to = [&](double t_limit) {
    while (next < sorted.size() && sorted[next].t <= t_limit) {
      const InvariantTriple& tr = sorted[next++];
      const AvailabilityTimeline& tl = state[static_cast<size_t>(tr.server)];
      double lhs =
          (tl.projected_availability(tr.tau + tr.d) - tl.projected_availability(tr.tau)) * lnb;
      double r = rhs[static_cast<size_t>(tr.d)];
      if (lhs > r + 1e-9) violations.push_back({tr, lhs, r});
    }
  };
  size_t job_pos = 0;
  for (const DecisionRecord& rec : trace.decisions) {
    // triples strictly before this arrival see only earlier assignments;
    // triples at exactly an arrival time see every assignment sharing it
    const double before = rec.t;
    while (next < sorted.size() && sorted[next].t < before) eval_up_to(sorted[next].t);
    const JobArrival& job = instance.jobs[job_pos++];
    if (rec.chosen != kReject)
      state[static_cast<size_t>(rec.chosen)].commit(rec.t, rec.t + job.duration_on(rec.chosen),
                                                    Mode::Hypothetical);
    bool last_at_t =
        job_pos >= instance.jobs.size() || instance.jobs[job_pos].arrival_time > rec.t;
    if (last_at_t) eval_up_to(rec.t);
  }
  eval_up_to(std::numeric_limits<double>::infinity());
  return violations;
}

std::vector<InvariantTriple> full_invariant_grid(const Instance& instance, int D) {
  std::vector<InvariantTriple> triples;
  for (const JobArrival& job : instance.jobs) {
    for (int i = 0; i < instance.num_servers(); ++i)
      for (int off = 1; off <= D; ++off)
        for (int d = 0; d <= D; ++d)
          triples.push_back({i, job.arrival_time, job.arrival_time + off, d});
  }
  return triples;
}

void write_trace_csv(std::ostream& out, const Trace& trace) {
  out << "job,t,server_or_reject,score_chosen,reward_collected,min_availability_after\n";
  for (const DecisionRecord& rec : trace.decisions) {
    double score = 0.0;
    for (const auto& [server, s] : rec.scores)
      if (server == rec.chosen) score = s;
    out << rec.job << ',' << rec.t << ','
        << (rec.chosen == kReject ? std::string("REJECT") : std::to_string(rec.chosen + 1)) << ','
        << (rec.chosen == kReject ? 0.0 : score) << ',' << rec.reward << ','
        << rec.min_availability_after << '\n';
  }
}

} // namespace flb
