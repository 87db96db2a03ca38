#include "flb/benchmarks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <queue>

namespace flb {

bool opt_flow_applicable(const Instance& instance) {
  if (instance.num_servers() == 1) return true;
  for (const JobArrival& job : instance.jobs) {
    if (job.compat.empty()) continue;
    if (static_cast<int>(job.compat.size()) != instance.num_servers()) return false;
    for (size_t k = 1; k < job.compat.size(); ++k)
      if (job.reward[k] != job.reward[0] || job.duration[k] != job.duration[0]) return false;
  }
  return true;
}

namespace {

// Min-cost flow (successive shortest paths with potentials) on the event-time
// graph: consecutive event nodes linked by capacity-C zero-cost timeline arcs,
// one capacity-1 arc per job from its start event to its end event with cost
// -r*d. A min-cost C-unit flow from the first to the last event selects the
// maximum-reward capacity-feasible job subset.
struct FlowGraph {
  struct Arc {
    int to;
    int rev;
    long long cap;
    double cost;
  };
  std::vector<std::vector<Arc>> adj;

  explicit FlowGraph(int n) : adj(static_cast<size_t>(n)) {}

  void add(int from, int to, long long cap, double cost) {
    adj[static_cast<size_t>(from)].push_back({to, static_cast<int>(adj[static_cast<size_t>(to)].size()), cap, cost});
    adj[static_cast<size_t>(to)].push_back({from, static_cast<int>(adj[static_cast<size_t>(from)].size()) - 1, 0, -cost});
  }

  // all original arcs go from lower to higher node index (time order), so the
  // initial potentials come from one topological relaxation pass
  double min_cost_flow(int s, int t, long long flow_target) {
    int n = static_cast<int>(adj.size());
    constexpr double kInf = std::numeric_limits<double>::infinity();
    std::vector<double> pot(static_cast<size_t>(n), kInf);
    pot[static_cast<size_t>(s)] = 0.0;
    for (int u = 0; u < n; ++u) {
      if (pot[static_cast<size_t>(u)] == kInf) continue;
      for (const Arc& a : adj[static_cast<size_t>(u)])
        if (a.cap > 0)
          pot[static_cast<size_t>(a.to)] =
              std::min(pot[static_cast<size_t>(a.to)], pot[static_cast<size_t>(u)] + a.cost);
    }
    double total_cost = 0.0;
    long long flow = 0;
    std::vector<double> dist(static_cast<size_t>(n));
    std::vector<int> prev_node(static_cast<size_t>(n)), prev_arc(static_cast<size_t>(n));
    while (flow < flow_target) {
      std::fill(dist.begin(), dist.end(), kInf);
      dist[static_cast<size_t>(s)] = 0.0;
      using Item = std::pair<double, int>;
      std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
      heap.push({0.0, s});
      while (!heap.empty()) {
        auto [d, u] = heap.top();
        heap.pop();
        if (d > dist[static_cast<size_t>(u)] + 1e-15) continue;
        for (size_t k = 0; k < adj[static_cast<size_t>(u)].size(); ++k) {
          const Arc& a = adj[static_cast<size_t>(u)][k];
          if (a.cap <= 0) continue;
          double nd = d + a.cost + pot[static_cast<size_t>(u)] - pot[static_cast<size_t>(a.to)];
          if (nd < dist[static_cast<size_t>(a.to)] - 1e-15) {
            dist[static_cast<size_t>(a.to)] = nd;
            prev_node[static_cast<size_t>(a.to)] = u;
            prev_arc[static_cast<size_t>(a.to)] = static_cast<int>(k);
            heap.push({nd, a.to});
          }
        }
      }
      if (dist[static_cast<size_t>(t)] == kInf) break;
      for (int u = 0; u < n; ++u)
        if (dist[static_cast<size_t>(u)] != kInf) pot[static_cast<size_t>(u)] += dist[static_cast<size_t>(u)];
      long long push = flow_target - flow;
      for (int v = t; v != s; v = prev_node[static_cast<size_t>(v)])
        push = std::min(push, adj[static_cast<size_t>(prev_node[static_cast<size_t>(v)])]
                                  [static_cast<size_t>(prev_arc[static_cast<size_t>(v)])].cap);
      for (int v = t; v != s; v = prev_node[static_cast<size_t>(v)]) {
        Arc& a = adj[static_cast<size_t>(prev_node[static_cast<size_t>(v)])]
                     [static_cast<size_t>(prev_arc[static_cast<size_t>(v)])];
        a.cap -= push;
        adj[static_cast<size_t>(a.to)][static_cast<size_t>(a.rev)].cap += push;
        total_cost += push * a.cost;
      }
      flow += push;
    }
    return total_cost;
  }
};

} // namespace

double opt_flow(const Instance& instance) {
  if (!opt_flow_applicable(instance)) throw TooLarge("flow oracle needs interchangeable servers");
  long long total_capacity = 0;
  for (int c : instance.capacities) total_capacity += c;

  std::vector<double> events;
  struct JobArcSpec { double start, end, value; };
  std::vector<JobArcSpec> specs;
  for (const JobArrival& job : instance.jobs) {
    if (job.compat.empty()) continue;
    double d = job.duration[0], r = job.reward[0];
    specs.push_back({job.arrival_time, job.arrival_time + d, r * d});
    events.push_back(job.arrival_time);
    events.push_back(job.arrival_time + d);
  }
  if (specs.empty()) return 0.0;
  std::sort(events.begin(), events.end());
  events.erase(std::unique(events.begin(), events.end()), events.end());
  auto node_of = [&](double t) {
    return static_cast<int>(std::lower_bound(events.begin(), events.end(), t) - events.begin());
  };
  int n = static_cast<int>(events.size());
  FlowGraph g(n);
  for (int u = 0; u + 1 < n; ++u) g.add(u, u + 1, total_capacity, 0.0);
  for (const JobArcSpec& s : specs) g.add(node_of(s.start), node_of(s.end), 1, -s.value);
  double cost = g.min_cost_flow(0, n - 1, total_capacity);
  return -cost;
}

double opt_bruteforce(const Instance& instance) {
  int m = static_cast<int>(instance.jobs.size());
  std::vector<AvailabilityTimeline> state;
  for (int c : instance.capacities) state.emplace_back(c);
  // suffix upper bound for pruning: sum of best-per-job values
  std::vector<double> suffix(static_cast<size_t>(m) + 1, 0.0);
  for (int j = m - 1; j >= 0; --j) {
    double best = 0.0;
    const JobArrival& job = instance.jobs[static_cast<size_t>(j)];
    for (size_t k = 0; k < job.compat.size(); ++k)
      best = std::max(best, job.reward[k] * job.duration[k]);
    suffix[static_cast<size_t>(j)] = suffix[static_cast<size_t>(j) + 1] + best;
  }
  double best_total = 0.0;
  auto rec = [&](auto&& self, int j, double acc) -> void {
    if (j == m) {
      best_total = std::max(best_total, acc);
      return;
    }
    if (acc + suffix[static_cast<size_t>(j)] <= best_total) return;
    const JobArrival& job = instance.jobs[static_cast<size_t>(j)];
    for (size_t k = 0; k < job.compat.size(); ++k) {
      int i = job.compat[k];
      AvailabilityTimeline& tl = state[static_cast<size_t>(i)];
      if (tl.busy_count(job.arrival_time) >= tl.capacity()) continue;
      double end = job.arrival_time + job.duration[k];
      tl.commit(job.arrival_time, end, Mode::Enforcing);
      self(self, j + 1, acc + job.reward[k] * job.duration[k]);
      tl.release(end);
    }
    self(self, j + 1, acc); // reject
  };
  rec(rec, 0, 0.0);
  return best_total;
}

double opt_exact(const Instance& instance) {
  if (opt_flow_applicable(instance)) return opt_flow(instance);
  if (instance.jobs.size() <= 14) return opt_bruteforce(instance);
  throw TooLarge("instance too heterogeneous and too large for exact OPT");
}

std::vector<Configuration> enumerate_configurations(const Instance& instance, int server) {
  struct Entry { int job; double start, end; };
  std::vector<Entry> entries;
  for (const JobArrival& job : instance.jobs)
    if (job.is_compatible(server))
      entries.push_back({job.index, job.arrival_time, job.arrival_time + job.duration_on(server)});
  if (entries.size() > 20) throw TooLarge("more than 20 compatible jobs");
  std::vector<Configuration> configs;
  std::vector<int> current;
  std::vector<std::pair<double, double>> intervals;
  auto disjoint = [&](double s, double e) {
    for (auto [a, b] : intervals)
      if (s < b && a < e) return false; // half-open overlap
    return true;
  };
  auto rec = [&](auto&& self, size_t k) -> void {
    if (k == entries.size()) {
      configs.push_back({server, current});
      return;
    }
    self(self, k + 1);
    if (disjoint(entries[k].start, entries[k].end)) {
      current.push_back(entries[k].job);
      intervals.emplace_back(entries[k].start, entries[k].end);
      self(self, k + 1);
      current.pop_back();
      intervals.pop_back();
    }
  };
  rec(rec, 0);
  return configs;
}

DualSolution construct_dual(const Trace& trace, const FlbParams& params,
                            const Instance& instance) {
  params.validate();
  if (params.gamma_is_inf())
    throw std::invalid_argument("construct_dual needs finite gamma");
  int gamma = params.gamma_int();
  DualSolution dual;
  dual.lambda.assign(instance.jobs.size(), 0.0);
  dual.theta.assign(static_cast<size_t>(instance.num_servers()), 0.0);
  std::vector<AvailabilityTimeline> state;
  for (int c : instance.capacities) state.emplace_back(c);
  for (size_t j = 0; j < trace.decisions.size(); ++j) {
    const DecisionRecord& rec = trace.decisions[j];
    if (rec.chosen == kReject) continue;
    const JobArrival& job = instance.jobs[j];
    int i = rec.chosen;
    AvailabilityTimeline& tl = state[static_cast<size_t>(i)];
    double c = tl.capacity();
    double r = job.reward_on(i), d = job.duration_on(i);
    double lam = r * d, dtheta = 0.0;
    for (double tau : inspection_times(job.arrival_time, d, gamma)) {
      double alpha = tl.projected_availability(tau);
      if (alpha < 1.0 / c - 1e-12)
        throw NegativeAvailability("trace not capacity feasible at job " +
                                   std::to_string(job.index));
      lam -= penalty(params, alpha);
      dtheta += penalty(params, alpha - 1.0 / c) - penalty(params, alpha);
    }
    dual.lambda[j] = lam;
    dual.theta[static_cast<size_t>(i)] += dtheta;
    tl.commit(job.arrival_time, job.arrival_time + d, Mode::Enforcing);
  }
  dual.objective = 0.0;
  for (double l : dual.lambda) dual.objective += l;
  for (size_t i = 0; i < dual.theta.size(); ++i)
    dual.objective += instance.capacities[i] * dual.theta[i];
  return dual;
}

CertificateReport verify_certificate(const DualSolution& dual, const Trace& trace,
                                     const Instance& instance, const FlbParams& params,
                                     GammaMode gamma_mode) {
  CertificateReport report;
  double c_min = instance.c_min();
  double lnb = std::log(params.beta);
  double grow = params.beta * (std::pow(params.beta, 1.0 / c_min) - 1.0);
  double gamma = gamma_mode == GammaMode::Real ? params.gamma : 1.0;
  report.gamma_step = lnb * (1.0 + gamma * params.eta * (1.0 + grow));
  double slack = 1.0;
  if (gamma_mode == GammaMode::Real) {
    if (params.gamma_is_inf() || params.gamma_int() < 2)
      throw std::invalid_argument("real-mode certificate needs finite gamma >= 2");
    slack = params.gamma / (params.gamma - 1.0);
  }
  report.gamma_total = slack * report.gamma_step;
  report.alg_reward = trace.total_reward;
  report.dual_objective = dual.objective;

  // (1) per-step increments, recomputed by replay
  std::vector<AvailabilityTimeline> state;
  for (int c : instance.capacities) state.emplace_back(c);
  for (size_t j = 0; j < trace.decisions.size(); ++j) {
    const DecisionRecord& rec = trace.decisions[j];
    if (rec.chosen == kReject) continue;
    const JobArrival& job = instance.jobs[j];
    int i = rec.chosen;
    AvailabilityTimeline& tl = state[static_cast<size_t>(i)];
    double c = tl.capacity();
    double r = job.reward_on(i), d = job.duration_on(i);
    double lam = r * d, dtheta = 0.0;
    for (double tau : inspection_times(job.arrival_time, d, params.gamma_int())) {
      double alpha = tl.projected_availability(tau);
      lam -= penalty(params, alpha);
      dtheta += penalty(params, alpha - 1.0 / c) - penalty(params, alpha);
    }
    tl.commit(job.arrival_time, job.arrival_time + d, Mode::Enforcing);
    double d_dual = lam + c * dtheta;
    double ratio = d_dual / (r * d);
    report.max_step_ratio = std::max(report.max_step_ratio, ratio);
    if (d_dual > report.gamma_step * r * d + 1e-9) ++report.step_violations;
  }

  // (2) configuration feasibility
  bool first_config = true;
  for (int i = 0; i < instance.num_servers(); ++i) {
    for (const Configuration& cfg : enumerate_configurations(instance, i)) {
      double sum_lambda = 0.0, sum_rd = 0.0;
      for (int job_index : cfg.jobs) {
        const JobArrival& job = instance.jobs[static_cast<size_t>(job_index - 1)];
        sum_lambda += dual.lambda[static_cast<size_t>(job_index - 1)];
        sum_rd += job.reward_on(i) * job.duration_on(i);
      }
      double margin = slack * (sum_lambda + dual.theta[static_cast<size_t>(i)]) - sum_rd;
      if (first_config || margin < report.worst_config_slack) {
        report.worst_config_slack = margin;
        first_config = false;
      }
      if (margin < -1e-9) ++report.config_violations;
    }
  }

  // (3) weak duality
  report.opt = opt_exact(instance);
  report.weak_duality_ok = dual.objective >= report.opt - 1e-9;
  return report;
}

} // namespace flb
