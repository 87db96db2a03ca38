#include "flb/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <future>
#include <limits>
#include <queue>
#include <sstream>
#include <vector>

#include "flb/benchmarks.hpp"
#include "flb/engine.hpp"
#include "flb/generators.hpp"
#include "flb/params.hpp"

namespace flb {

Config parse_config(const std::string& text) {
  Config cfg;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("bad config line: " + line);
    auto trim = [](std::string s) {
      size_t a = s.find_first_not_of(" \t\r");
      size_t b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    cfg[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return cfg;
}

Config load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open config file: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str());
}

double config_num(const Config& cfg, const std::string& key, double fallback) {
  auto it = cfg.find(key);
  return it == cfg.end() ? fallback : std::stod(it->second);
}

std::string config_str(const Config& cfg, const std::string& key, const std::string& fallback) {
  auto it = cfg.find(key);
  return it == cfg.end() ? fallback : it->second;
}

namespace {

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  size_t pos = 0;
  while (pos <= s.size()) {
    size_t end = s.find(',', pos);
    if (end == std::string::npos) end = s.size();
    std::string item = s.substr(pos, end - pos);
    if (!item.empty()) out.push_back(item);
    pos = end + 1;
  }
  return out;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  std::uint64_t h = seed;
  for (std::uint64_t v : {a, b, c}) {
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

struct Series {
  std::string name;
  std::vector<std::pair<double, double>> points;
};

// Minimal hand-rolled line chart; CSV stays the ground-truth artifact.
void write_svg_chart(const std::string& path, const std::string& title,
                     const std::vector<Series>& series, double reference_y) {
  const double width = 860, height = 520, ml = 70, mr = 30, mt = 50, mb = 50;
  double xmin = 1e300, xmax = -1e300, ymin = 0.0, ymax = -1e300;
  for (const Series& s : series)
    for (auto [x, y] : s.points) {
      xmin = std::min(xmin, x);
      xmax = std::max(xmax, x);
      ymax = std::max(ymax, y);
    }
  if (series.empty() || xmax <= xmin) { xmin = 0; xmax = 1; }
  if (reference_y > 0) ymax = std::max(ymax, reference_y);
  if (ymax <= ymin) ymax = 1.0;
  ymax *= 1.05;
  auto X = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * (width - ml - mr); };
  auto Y = [&](double y) { return height - mb - (y - ymin) / (ymax - ymin) * (height - mt - mb); };
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write svg: " + path);
  out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << width << "' height='" << height
      << "'>\n<rect width='100%' height='100%' fill='white'/>\n";
  out << "<text x='" << width / 2 << "' y='25' text-anchor='middle' font-size='16'>" << title
      << "</text>\n";
  // axes
  out << "<line x1='" << ml << "' y1='" << height - mb << "' x2='" << width - mr << "' y2='"
      << height - mb << "' stroke='black'/>\n";
  out << "<line x1='" << ml << "' y1='" << mt << "' x2='" << ml << "' y2='" << height - mb
      << "' stroke='black'/>\n";
  for (int k = 0; k <= 5; ++k) {
    double xv = xmin + k * (xmax - xmin) / 5, yv = ymin + k * (ymax - ymin) / 5;
    out << "<text x='" << X(xv) << "' y='" << height - mb + 18
        << "' text-anchor='middle' font-size='11'>" << xv << "</text>\n";
    out << "<text x='" << ml - 8 << "' y='" << Y(yv) + 4
        << "' text-anchor='end' font-size='11'>" << yv << "</text>\n";
    out << "<line x1='" << ml << "' y1='" << Y(yv) << "' x2='" << width - mr << "' y2='" << Y(yv)
        << "' stroke='#dddddd'/>\n";
  }
  if (reference_y > 0) {
    out << "<line x1='" << ml << "' y1='" << Y(reference_y) << "' x2='" << width - mr << "' y2='"
        << Y(reference_y) << "' stroke='black' stroke-dasharray='6,4'/>\n";
  }
  for (size_t s = 0; s < series.size(); ++s) {
    out << "<polyline fill='none' stroke='" << colors[s % 6] << "' stroke-width='1.5' points='";
    for (auto [x, y] : series[s].points) out << X(x) << ',' << Y(y) << ' ';
    out << "'/>\n";
    out << "<text x='" << width - mr - 5 << "' y='" << mt + 18 * (s + 1)
        << "' text-anchor='end' font-size='12' fill='" << colors[s % 6] << "'>" << series[s].name
        << "</text>\n";
  }
  out << "</svg>\n";
}

Policy policy_from_name(const std::string& name, double R, double D) {
  if (name == "flb") {
    SolvedParams sp = solve_flbopt_int(R, static_cast<int>(std::llround(D)),
                                       std::numeric_limits<double>::infinity());
    return Policy::make_flb(sp.flb());
  }
  if (name == "balance") return Policy::make_balance(R, D);
  return parse_policy(name);
}

} // namespace

ExperimentResult experiment_worstcase(const Config& cfg, const std::string& out_dir,
                                      bool emit_svg) {
  int M = static_cast<int>(config_num(cfg, "M", 1000));
  double R = config_num(cfg, "R", 10.0);
  double D = config_num(cfg, "D", 10.0);
  int c = static_cast<int>(config_num(cfg, "c", 200));
  std::vector<std::string> names = split_list(config_str(cfg, "policies", "flb,balance,greedy"));

  Instance inst = gen_worstcase_geometric(M, R, D, c, M);

  // OPT per truncation. Every pair of jobs overlaps (all arrive within one
  // duration), so OPT(m) is the sum of the top-c values among the first m,
  // maintained incrementally; cross-checked against opt_exact in the tests.
  for (size_t j = 0; j + 1 < inst.jobs.size(); ++j) {
    if (inst.jobs[j].arrival_time + inst.jobs[j].duration[0] <= inst.jobs.back().arrival_time)
      throw std::logic_error("worst-case family lost its pairwise-overlap structure");
  }
  std::vector<double> opt(static_cast<size_t>(M) + 1, 0.0);
  {
    std::priority_queue<double, std::vector<double>, std::greater<>> top;
    double sum = 0.0;
    for (int m = 1; m <= M; ++m) {
      double v = inst.jobs[static_cast<size_t>(m - 1)].reward[0] *
                 inst.jobs[static_cast<size_t>(m - 1)].duration[0];
      top.push(v);
      sum += v;
      if (static_cast<int>(top.size()) > c) {
        sum -= top.top();
        top.pop();
      }
      opt[static_cast<size_t>(m)] = sum;
    }
  }

  std::filesystem::create_directories(out_dir);
  std::ofstream csv(out_dir + "/worstcase.csv");
  csv << "m,policy,reward,opt,ratio\n";
  std::vector<Series> series;
  for (const std::string& name : names) {
    Policy policy = policy_from_name(name, R, D);
    Trace trace = run(inst, policy, Mode::Enforcing);
    Series s{name, {}};
    double cum = 0.0;
    for (int m = 1; m <= M; ++m) {
      cum += trace.decisions[static_cast<size_t>(m - 1)].reward;
      double ratio = cum / opt[static_cast<size_t>(m)];
      csv << m << ',' << name << ',' << cum << ',' << opt[static_cast<size_t>(m)] << ',' << ratio
          << '\n';
      s.points.emplace_back(m, ratio);
    }
    series.push_back(std::move(s));
  }
  if (emit_svg)
    write_svg_chart(out_dir + "/worstcase.svg", "performance ratio vs truncation", series,
                    1.0 / std::log(R * D));
  return {};
}

ExperimentResult experiment_random(const Config& cfg, const std::string& out_dir, bool emit_svg,
                                   std::uint64_t seed_override) {
  int n = static_cast<int>(config_num(cfg, "n", 3));
  int m = static_cast<int>(config_num(cfg, "m", 500));
  double mu = config_num(cfg, "mu", 2.0);
  double sigma = config_num(cfg, "sigma", 3.0);
  int trials = static_cast<int>(config_num(cfg, "trials", 30));
  std::uint64_t seed = seed_override ? seed_override
                                     : static_cast<std::uint64_t>(config_num(cfg, "seed", 1));
  std::vector<std::string> c_items = split_list(config_str(cfg, "c_list", "10,50"));
  std::vector<std::string> rate_items = split_list(config_str(cfg, "rate_list", "1,5,20,50"));

  SolvedParams sp = solve_flbopt_int(10.0, 10, std::numeric_limits<double>::infinity());
  std::vector<Policy> policies = {Policy::make_flb(sp.flb()), Policy::make_balance(10.0, 10.0),
                                  Policy::make_greedy()};
  std::vector<std::string> policy_names = {"flb", "balance", "greedy"};

  struct Cell {
    int c;
    double rate;
    std::vector<double> mean, half; // per policy
  };
  std::vector<std::future<Cell>> futures;
  for (const std::string& cs : c_items) {
    int c = std::stoi(cs);
    for (const std::string& rs : rate_items) {
      double rate = std::stod(rs);
      futures.push_back(std::async(std::launch::async, [=]() {
        Cell cell{c, rate, {}, {}};
        std::vector<std::vector<double>> ratios(policies.size());
        for (int trial = 0; trial < trials; ++trial) {
          Instance inst = gen_random_poisson(
              n, c, m, rate, mu, sigma,
              mix_seed(seed, static_cast<std::uint64_t>(c),
                       static_cast<std::uint64_t>(std::llround(rate * 1000)),
                       static_cast<std::uint64_t>(trial)));
          double opt = opt_exact(inst);
          for (size_t p = 0; p < policies.size(); ++p) {
            Trace trace = run(inst, policies[p], Mode::Enforcing);
            ratios[p].push_back(opt > 0 ? trace.total_reward / opt : 1.0);
          }
        }
        for (const std::vector<double>& rs2 : ratios) {
          double mean = 0.0;
          for (double v : rs2) mean += v;
          mean /= rs2.size();
          double var = 0.0;
          for (double v : rs2) var += (v - mean) * (v - mean);
          double sd = rs2.size() > 1 ? std::sqrt(var / (rs2.size() - 1)) : 0.0;
          cell.mean.push_back(mean);
          cell.half.push_back(1.96 * sd / std::sqrt(static_cast<double>(rs2.size())));
        }
        return cell;
      }));
    }
  }
  std::vector<Cell> cells;
  for (auto& f : futures) cells.push_back(f.get());

  std::filesystem::create_directories(out_dir);
  std::ofstream csv(out_dir + "/random.csv");
  csv << "c,rate,policy,mean_ratio,ci_low,ci_high,trials\n";
  for (const Cell& cell : cells)
    for (size_t p = 0; p < policy_names.size(); ++p)
      csv << cell.c << ',' << cell.rate << ',' << policy_names[p] << ',' << cell.mean[p] << ','
          << cell.mean[p] - cell.half[p] << ',' << cell.mean[p] + cell.half[p] << ',' << trials
          << '\n';
  if (emit_svg) {
    for (const std::string& cs : c_items) {
      int c = std::stoi(cs);
      std::vector<Series> series(policy_names.size());
      for (size_t p = 0; p < policy_names.size(); ++p) {
        series[p].name = policy_names[p];
        for (const Cell& cell : cells)
          if (cell.c == c) series[p].points.emplace_back(cell.rate, cell.mean[p]);
        std::sort(series[p].points.begin(), series[p].points.end());
      }
      write_svg_chart(out_dir + "/random_c" + cs + ".svg",
                      "mean ratio vs arrival rate, c=" + cs, series, 0.0);
    }
  }
  return {};
}

ExperimentResult experiment_certificates(const Config& cfg, const std::string& out_dir,
                                         std::uint64_t seed_override) {
  int count = static_cast<int>(config_num(cfg, "count", 200));
  std::uint64_t seed = seed_override ? seed_override
                                     : static_cast<std::uint64_t>(config_num(cfg, "seed", 7));
  std::string mode = config_str(cfg, "mode", "int");
  bool real_mode = mode == "real";
  double r_max = config_num(cfg, "r_max", 2.0);
  double d_max = config_num(cfg, "d_max", 3.0);

  std::filesystem::create_directories(out_dir);
  std::ofstream csv(out_dir + "/certificates.csv");
  csv << "instance,alg_reward,opt,dual_objective,max_step_ratio,worst_config_slack,"
         "step_violations,config_violations,weak_duality_ok\n";
  ExperimentResult result;
  for (int id = 0; id < count; ++id) {
    Instance inst = gen_random_heterogeneous(
        10, 2, 1, 3, r_max, d_max,
        real_mode ? DurationMode::Real : DurationMode::Integer,
        mix_seed(seed, static_cast<std::uint64_t>(id), 0, real_mode ? 1 : 0));
    FlbParams params = conservative_flb_params(r_max, d_max, real_mode ? 2.0 : 1.0);
    Trace trace = run(inst, Policy::make_flb(params), Mode::Enforcing);
    DualSolution dual = construct_dual(trace, params, inst);
    CertificateReport rep = verify_certificate(dual, trace, inst, params,
                                               real_mode ? GammaMode::Real : GammaMode::Int);
    csv << id << ',' << rep.alg_reward << ',' << rep.opt << ',' << rep.dual_objective << ','
        << rep.max_step_ratio << ',' << rep.worst_config_slack << ',' << rep.step_violations
        << ',' << rep.config_violations << ',' << (rep.weak_duality_ok ? 1 : 0) << '\n';
    if (!rep.ok()) ++result.violations;
    if (rep.alg_reward < rep.opt / rep.gamma_total - 1e-9) ++result.violations;
  }
  return result;
}

} // namespace flb
