#include "flb/core.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace flb {

bool JobArrival::is_compatible(int server) const {
  return std::binary_search(compat.begin(), compat.end(), server);
}

static size_t compat_pos(const JobArrival& j, int server) {
  auto it = std::lower_bound(j.compat.begin(), j.compat.end(), server);
  if (it == j.compat.end() || *it != server)
    throw std::out_of_range("job " + std::to_string(j.index) + " not compatible with server " +
                            std::to_string(server));
  return static_cast<size_t>(it - j.compat.begin());
}

double JobArrival::reward_on(int server) const { return reward[compat_pos(*this, server)]; }
double JobArrival::duration_on(int server) const { return duration[compat_pos(*this, server)]; }

int Instance::c_min() const {
  if (capacities.empty()) throw std::invalid_argument("instance has no servers");
  return *std::min_element(capacities.begin(), capacities.end());
}

void Instance::validate() const {
  if (capacities.empty()) throw std::invalid_argument("instance has no servers");
  for (int c : capacities)
    if (c < 1) throw std::invalid_argument("server capacity must be >= 1");
  if (r_max < 1.0 || d_max < 1.0)
    throw std::invalid_argument("r_max and d_max must be >= 1");
  double prev_t = 0.0;
  int expected_index = 1;
  for (const JobArrival& j : jobs) {
    if (j.index != expected_index++)
      throw std::invalid_argument("job indices must be 1,2,... in order");
    if (j.arrival_time < prev_t)
      throw std::invalid_argument("arrival times must be nondecreasing");
    if (j.arrival_time < 0.0) throw std::invalid_argument("arrival time must be nonnegative");
    prev_t = j.arrival_time;
    if (j.compat.size() != j.reward.size() || j.compat.size() != j.duration.size())
      throw std::invalid_argument("compat/reward/duration must have equal length");
    if (!std::is_sorted(j.compat.begin(), j.compat.end()) ||
        std::adjacent_find(j.compat.begin(), j.compat.end()) != j.compat.end())
      throw std::invalid_argument("compat must be sorted and unique");
    for (size_t k = 0; k < j.compat.size(); ++k) {
      int i = j.compat[k];
      if (i < 0 || i >= num_servers())
        throw std::invalid_argument("compat server index out of range");
      double r = j.reward[k], d = j.duration[k];
      if (r < 1.0 || r > r_max + 1e-12)
        throw std::invalid_argument("reward outside [1, r_max]");
      if (d < 1.0 || d > d_max + 1e-12)
        throw std::invalid_argument("duration outside [1, d_max]");
      if (duration_mode == DurationMode::Integer && std::abs(d - std::round(d)) > 1e-12)
        throw std::invalid_argument("integer duration_mode but non-integer duration");
    }
  }
}

AvailabilityTimeline::AvailabilityTimeline(int capacity) : capacity_(capacity) {
  if (capacity < 1) throw std::invalid_argument("capacity must be >= 1");
}

int AvailabilityTimeline::busy_count(double tau) const {
  // strict >: a unit ending exactly at tau is free at tau
  auto it = std::upper_bound(busy_.begin(), busy_.end(), tau);
  return static_cast<int>(busy_.end() - it);
}

double AvailabilityTimeline::projected_availability(double tau) const {
  return 1.0 - static_cast<double>(busy_count(tau)) / capacity_;
}

void AvailabilityTimeline::commit(double at, double end_time, Mode mode) {
  if (end_time < at) throw std::invalid_argument("end_time must be >= assignment time");
  if (mode == Mode::Enforcing && busy_count(at) >= capacity_)
    throw CapacityViolation("no free unit at assignment time");
  busy_.insert(std::upper_bound(busy_.begin(), busy_.end(), end_time), end_time);
}

void AvailabilityTimeline::release(double end_time) {
  auto it = std::lower_bound(busy_.begin(), busy_.end(), end_time);
  if (it == busy_.end() || *it != end_time)
    throw std::invalid_argument("release: no assignment ends at the given time");
  busy_.erase(it);
}

static std::string fmt_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_instance(const Instance& instance) {
  std::ostringstream out;
  out << "servers:";
  for (int c : instance.capacities) out << ' ' << c;
  out << '\n';
  out << "r_max: " << fmt_real(instance.r_max) << '\n';
  out << "d_max: " << fmt_real(instance.d_max) << '\n';
  out << "durations: " << (instance.duration_mode == DurationMode::Integer ? "integer" : "real")
      << '\n';
  for (const JobArrival& j : instance.jobs) {
    out << fmt_real(j.arrival_time);
    for (size_t k = 0; k < j.compat.size(); ++k)
      out << " ; " << (j.compat[k] + 1) << ':' << fmt_real(j.reward[k]) << ':'
          << fmt_real(j.duration[k]);
    out << '\n';
  }
  return out.str();
}

Instance parse_instance(const std::string& text) {
  Instance inst;
  std::istringstream in(text);
  std::string line;
  int job_index = 0;
  bool seen_servers = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    if (line.rfind("servers:", 0) == 0) {
      ls.ignore(8);
      int c;
      while (ls >> c) inst.capacities.push_back(c);
      seen_servers = true;
      continue;
    }
    if (line.rfind("r_max:", 0) == 0) { ls.ignore(6); ls >> inst.r_max; continue; }
    if (line.rfind("d_max:", 0) == 0) { ls.ignore(6); ls >> inst.d_max; continue; }
    if (line.rfind("durations:", 0) == 0) {
      std::string w;
      ls.ignore(10); ls >> w;
      if (w == "integer") inst.duration_mode = DurationMode::Integer;
      else if (w == "real") inst.duration_mode = DurationMode::Real;
      else throw std::invalid_argument("bad durations flag: " + w);
      continue;
    }
    if (!seen_servers) throw std::invalid_argument("job line before servers header");
    JobArrival j;
    j.index = ++job_index;
    if (!(ls >> j.arrival_time)) throw std::invalid_argument("bad job line: " + line);
    std::string tok;
    while (ls >> tok) {
      if (tok == ";") continue;
      int server;
      double r, d;
      if (std::sscanf(tok.c_str(), "%d:%lf:%lf", &server, &r, &d) != 3)
        throw std::invalid_argument("bad compat token: " + tok);
      j.compat.push_back(server - 1);
      j.reward.push_back(r);
      j.duration.push_back(d);
    }
    // keep compat sorted (writers emit it sorted already)
    std::vector<size_t> order(j.compat.size());
    for (size_t k = 0; k < order.size(); ++k) order[k] = k;
    std::sort(order.begin(), order.end(),
              [&](size_t a, size_t b) { return j.compat[a] < j.compat[b]; });
    JobArrival sorted = j;
    for (size_t k = 0; k < order.size(); ++k) {
      sorted.compat[k] = j.compat[order[k]];
      sorted.reward[k] = j.reward[order[k]];
      sorted.duration[k] = j.duration[order[k]];
    }
    inst.jobs.push_back(std::move(sorted));
  }
  inst.validate();
  return inst;
}

Instance load_instance(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open instance file: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_instance(ss.str());
}

void save_instance(const Instance& instance, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write instance file: " + path);
  f << format_instance(instance);
}

} // namespace flb
