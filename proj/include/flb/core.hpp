#ifndef FLB_CORE_HPP
#define FLB_CORE_HPP

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace flb {

constexpr int kReject = -1;

enum class Mode { Enforcing, Hypothetical };
enum class DurationMode { Integer, Real };

// Raised when an enforcing-mode commit finds no free unit. Capacity
// feasibility is supposed to be a property of the policy parameters, so
// seeing this means a policy bug or parameters outside the feasible region.
struct CapacityViolation : std::runtime_error {
  int job = -1;    // 1-based job index, -1 if unknown
  int server = -1; // 0-based server index, -1 if unknown
  explicit CapacityViolation(const std::string& what, int job = -1, int server = -1)
      : std::runtime_error(what), job(job), server(server) {}
};

// One arriving job: per-server rewards/durations over its compatible set.
// compat is kept sorted ascending; reward/duration are parallel arrays.
struct JobArrival {
  int index = 0; // 1-based arrival order
  double arrival_time = 0.0;
  std::vector<int> compat;
  std::vector<double> reward;
  std::vector<double> duration;

  bool is_compatible(int server) const;
  double reward_on(int server) const;   // throws std::out_of_range if not compatible
  double duration_on(int server) const; // throws std::out_of_range if not compatible
};

struct Instance {
  std::vector<int> capacities;
  std::vector<JobArrival> jobs;
  double r_max = 1.0;
  double d_max = 1.0;
  DurationMode duration_mode = DurationMode::Real;

  int num_servers() const { return static_cast<int>(capacities.size()); }
  int c_min() const;

  // Throws std::invalid_argument on any violated invariant (bounds,
  // arrival ordering, compat/reward/duration shape, integer durations).
  void validate() const;
};

// Per-server multiset of busy-until times. A unit assigned at t with
// duration d is busy on [t, t+d) and free at exactly t+d.
class AvailabilityTimeline {
 public:
  explicit AvailabilityTimeline(int capacity);

  int capacity() const { return capacity_; }
  const std::vector<double>& busy_until() const { return busy_; }

  // Number of units busy strictly beyond tau.
  int busy_count(double tau) const;

  // 1 - busy_count(tau)/capacity; negative only after hypothetical commits.
  double projected_availability(double tau) const;

  // Adds end_time. Enforcing mode requires a free unit at `at`.
  void commit(double at, double end_time, Mode mode);

  // Removes one previously committed end_time (search/backtracking support).
  void release(double end_time);

 private:
  int capacity_;
  std::vector<double> busy_; // sorted ascending
};

struct DecisionRecord {
  int job = 0;
  double t = 0.0;
  int chosen = kReject;
  std::vector<std::pair<int, double>> scores; // (server, reduced reward)
  double reward = 0.0;                        // r*d if assigned, else 0
  double min_availability_after = 1.0;        // min over servers of availability at t
  std::vector<double> availability_at_inspections; // chosen server, at decision time
};

struct Trace {
  std::vector<DecisionRecord> decisions;
  double total_reward = 0.0;
};

// Line-oriented text format:
//   servers: c_1 c_2 ...
//   t_j ; i:r_ij:d_ij ; i':r_i'j:d_i'j ...
// Server indices are 1-based in the file. Values round-trip within 1e-12.
std::string format_instance(const Instance& instance);
Instance parse_instance(const std::string& text);
Instance load_instance(const std::string& path);
void save_instance(const Instance& instance, const std::string& path);

} // namespace flb

#endif
