#ifndef FLB_ENGINE_HPP
#define FLB_ENGINE_HPP

#include <iosfwd>
#include <vector>

#include "flb/core.hpp"
#include "flb/policies.hpp"

namespace flb {

// Processes jobs in index order; each decision sees only earlier
// assignments. Enforcing mode raises CapacityViolation(job, server);
// hypothetical mode lets availability go negative.
Trace run(const Instance& instance, const Policy& policy, Mode mode);

enum class Feasibility { Feasible, Infeasible, Undefined };
const char* to_string(Feasibility f);

// Integer-duration capacity-feasibility condition (gamma = 1):
//   ln(beta) >= -ln( prod_{k in [D]} (1 - R/(k(R+eta))) - (R+eta)ln(beta)/(R c_min) ).
// Undefined when the log argument is <= 0. c_min may be infinity.
Feasibility check_feasibility_condition_integer(double R, int D, double c_min, double eta,
                                                double beta);

// Real-duration condition for finite integer gamma; four-term RHS:
//   ln(beta) >= -ln( prod_{k in [ceil(gamma D)]} (1 - R/(k(R+gamma eta))) )
//             - ln( 1 + (gamma + R/eta)(1 - (eta gamma + R)ln(beta)/(R c_min))
//                     - (R/eta)(1 + eta/(R+gamma eta))^gamma )
//             + ln( (gamma+1)(R+gamma eta)/(gamma eta) )
//             + ln( prod_{k in [gamma+1]} (1 - R/(k(R+gamma eta))) ).
Feasibility check_feasibility_condition_real(double R, double D, double c_min, int gamma,
                                             double eta, double beta);

struct PreconditionViolated : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A query point for the integer-duration drift invariant
//   (a_{i,t->tau+d} - a_{i,t->tau}) ln(beta)
//     <= -ln( prod_{k in [d]}(1 - R/(k(R+eta))) - (R+eta)ln(beta)/(R c_min) ).
// t must be one of the trace's arrival times; the reconstructed state
// includes every assignment of jobs with arrival_time <= t.
struct InvariantTriple {
  int server = 0;
  double t = 0.0;
  double tau = 0.0; // tau - t must be a positive integer
  int d = 0;        // d >= 0
};

struct InvariantViolation {
  InvariantTriple triple;
  double lhs = 0.0;
  double rhs = 0.0;
};

// Reconstructs hypothetical-mode timelines by replaying the trace and
// evaluates the invariant at every triple. Throws PreconditionViolated if
// the log argument is nonpositive for some requested d.
std::vector<InvariantViolation> check_invariant_integer(const Instance& instance,
                                                        const Trace& trace,
                                                        const FlbParams& params, double R,
                                                        double c_min,
                                                        const std::vector<InvariantTriple>& triples);

// Exhaustive grid for integer durations: every arrival time x every server
// x offsets tau - t in [1..D] x d in [0..D].
std::vector<InvariantTriple> full_invariant_grid(const Instance& instance, int D);

// CSV columns: job, t, server_or_reject, score_chosen, reward_collected,
// min_availability_after.
void write_trace_csv(std::ostream& out, const Trace& trace);

} // namespace flb

#endif
