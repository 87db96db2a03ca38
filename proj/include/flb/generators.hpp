#ifndef FLB_GENERATORS_HPP
#define FLB_GENERATORS_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "flb/core.hpp"

namespace flb {

// Single server of capacity c; jobs 1..truncate_at with t_j = (j-1)/M,
// r_j = R^{t_j}, d_j = max(1, floor(D^{t_j})). All jobs pairwise overlap.
Instance gen_worstcase_geometric(int M, double R, double D, int c, int truncate_at);

// M instances over a single unit-capacity server. Instance k keeps all M
// arrivals but only jobs 1..k are compatible; r_j = R^{j/M},
// d_j = max(1, floor(D^{j/M})). Probabilities
//   p_k = r1 d1 (1/(r_k d_k) - 1/(r_{k+1} d_{k+1})), p_M = r1 d1/(r_M d_M)
// are strictly positive and telescope to 1.
std::vector<std::pair<Instance, double>> gen_lowerbound_distribution(int M, double R, double D);

// Single server of capacity c; batches d = 1..truncate_batch of batch_size
// unit-reward jobs with duration d, batch d arriving at (d-1)*eps, eps=1e-6.
Instance gen_batch_homogeneous(int D, int batch_size, int c, int truncate_batch);

// n identical servers of capacity c; m jobs; exponential(rate) inter-arrivals;
// rewards ~ truncated normal(mu, sigma) on [0,10] clamped to >= 1; durations =
// ceil of independent same-distribution draws clamped to [1,10]; every job
// compatible with every server with one shared (r, d). RNG: std::mt19937_64.
Instance gen_random_poisson(int n, int c, int m, double rate, double mu, double sigma,
                            std::uint64_t seed);

// Seeded random small instances for property/certificate suites (artifact
// plumbing, not a construction from the analysis): m in [1..m_max] jobs,
// n in [1..n_max] servers with capacities in [c_lo..c_hi], per-server rewards
// in [1, r_max], durations in [1, d_max] (integers in integer mode), random
// compatible subsets, nondecreasing arrivals.
Instance gen_random_heterogeneous(int m_max, int n_max, int c_lo, int c_hi, double r_max,
                                  double d_max, DurationMode duration_mode, std::uint64_t seed);

} // namespace flb

#endif
