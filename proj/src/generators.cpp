#include "flb/generators.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace flb {

Instance gen_worstcase_geometric(int M, double R, double D, int c, int truncate_at) {
  if (truncate_at < 1 || truncate_at > M)
    throw std::invalid_argument("need 1 <= truncate_at <= M");
  Instance inst;
  inst.capacities = {c};
  inst.r_max = R;
  inst.d_max = D;
  inst.duration_mode = DurationMode::Integer;
  for (int j = 1; j <= truncate_at; ++j) {
    double t = static_cast<double>(j - 1) / M;
    JobArrival job;
    job.index = j;
    job.arrival_time = t;
    job.compat = {0};
    job.reward = {std::pow(R, t)};
    job.duration = {std::max(1.0, std::floor(std::pow(D, t)))};
    inst.jobs.push_back(std::move(job));
  }
  inst.validate();
  return inst;
}

std::vector<std::pair<Instance, double>> gen_lowerbound_distribution(int M, double R, double D) {
  if (M < 1) throw std::invalid_argument("need M >= 1");
  std::vector<double> r(static_cast<size_t>(M)), d(static_cast<size_t>(M));
  for (int j = 1; j <= M; ++j) {
    double x = static_cast<double>(j) / M;
    r[static_cast<size_t>(j - 1)] = std::pow(R, x);
    d[static_cast<size_t>(j - 1)] = std::max(1.0, std::floor(std::pow(D, x)));
  }
  double r1d1 = r[0] * d[0];
  std::vector<std::pair<Instance, double>> out;
  out.reserve(static_cast<size_t>(M));
  for (int k = 1; k <= M; ++k) {
    Instance inst;
    inst.capacities = {1};
    inst.r_max = R;
    inst.d_max = D;
    inst.duration_mode = DurationMode::Integer;
    for (int j = 1; j <= M; ++j) {
      JobArrival job;
      job.index = j;
      job.arrival_time = static_cast<double>(j) / M;
      if (j <= k) {
        job.compat = {0};
        job.reward = {r[static_cast<size_t>(j - 1)]};
        job.duration = {d[static_cast<size_t>(j - 1)]};
      }
      inst.jobs.push_back(std::move(job));
    }
    double rd_k = r[static_cast<size_t>(k - 1)] * d[static_cast<size_t>(k - 1)];
    double p = (k == M) ? r1d1 / rd_k : r1d1 / rd_k - r1d1 / (r[static_cast<size_t>(k)] * d[static_cast<size_t>(k)]);
    inst.validate();
    out.emplace_back(std::move(inst), p);
  }
  return out;
}

Instance gen_batch_homogeneous(int D, int batch_size, int c, int truncate_batch) {
  if (truncate_batch < 1 || truncate_batch > D)
    throw std::invalid_argument("need 1 <= truncate_batch <= D");
  if (batch_size <= c) throw std::invalid_argument("need batch_size > c");
  constexpr double kEps = 1e-6;
  Instance inst;
  inst.capacities = {c};
  inst.r_max = 1.0;
  inst.d_max = D;
  inst.duration_mode = DurationMode::Integer;
  int index = 0;
  for (int d = 1; d <= truncate_batch; ++d) {
    for (int b = 0; b < batch_size; ++b) {
      JobArrival job;
      job.index = ++index;
      job.arrival_time = (d - 1) * kEps;
      job.compat = {0};
      job.reward = {1.0};
      job.duration = {static_cast<double>(d)};
      inst.jobs.push_back(std::move(job));
    }
  }
  inst.validate();
  return inst;
}

namespace {

double truncated_normal(std::mt19937_64& rng, double mu, double sigma, double lo, double hi) {
  std::normal_distribution<double> normal(mu, sigma);
  for (int attempt = 0; attempt < 100000; ++attempt) {
    double x = normal(rng);
    if (x >= lo && x <= hi) return x;
  }
  throw std::runtime_error("truncated normal rejection sampling failed");
}

} // namespace

Instance gen_random_poisson(int n, int c, int m, double rate, double mu, double sigma,
                            std::uint64_t seed) {
  if (n < 1 || c < 1 || m < 1 || rate <= 0.0 || sigma <= 0.0)
    throw std::invalid_argument("all parameters must be positive");
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> interarrival(rate);
  Instance inst;
  inst.capacities.assign(static_cast<size_t>(n), c);
  inst.r_max = 10.0;
  inst.d_max = 10.0;
  inst.duration_mode = DurationMode::Integer;
  double t = 0.0;
  for (int j = 1; j <= m; ++j) {
    t += interarrival(rng);
    double r = std::max(1.0, truncated_normal(rng, mu, sigma, 0.0, 10.0));
    double d = std::clamp(std::ceil(truncated_normal(rng, mu, sigma, 0.0, 10.0)), 1.0, 10.0);
    JobArrival job;
    job.index = j;
    job.arrival_time = t;
    for (int i = 0; i < n; ++i) {
      job.compat.push_back(i);
      job.reward.push_back(r);
      job.duration.push_back(d);
    }
    inst.jobs.push_back(std::move(job));
  }
  inst.validate();
  return inst;
}

Instance gen_random_heterogeneous(int m_max, int n_max, int c_lo, int c_hi, double r_max,
                                  double d_max, DurationMode duration_mode, std::uint64_t seed) {
  if (m_max < 1 || n_max < 1 || c_lo < 1 || c_hi < c_lo || r_max < 1.0 || d_max < 1.0)
    throw std::invalid_argument("bad generator bounds");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> m_dist(1, m_max), n_dist(1, n_max), c_dist(c_lo, c_hi);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Instance inst;
  int n = n_dist(rng);
  for (int i = 0; i < n; ++i) inst.capacities.push_back(c_dist(rng));
  inst.r_max = r_max;
  inst.d_max = d_max;
  inst.duration_mode = duration_mode;
  int m = m_dist(rng);
  double t = 0.0;
  std::uniform_int_distribution<int> d_int(1, static_cast<int>(d_max));
  for (int j = 1; j <= m; ++j) {
    t += unit(rng) * 1.5;
    JobArrival job;
    job.index = j;
    job.arrival_time = t;
    for (int i = 0; i < n; ++i) {
      if (n > 1 && unit(rng) < 0.35) continue; // random incompatibility
      job.compat.push_back(i);
      job.reward.push_back(1.0 + unit(rng) * (r_max - 1.0));
      job.duration.push_back(duration_mode == DurationMode::Integer
                                 ? static_cast<double>(d_int(rng))
                                 : 1.0 + unit(rng) * (d_max - 1.0));
    }
    if (job.compat.empty()) {
      int i = std::uniform_int_distribution<int>(0, n - 1)(rng);
      job.compat.push_back(i);
      job.reward.push_back(1.0 + unit(rng) * (r_max - 1.0));
      job.duration.push_back(duration_mode == DurationMode::Integer
                                 ? static_cast<double>(d_int(rng))
                                 : 1.0 + unit(rng) * (d_max - 1.0));
    }
    inst.jobs.push_back(std::move(job));
  }
  inst.validate();
  return inst;
}

} // namespace flb
