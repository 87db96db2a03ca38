#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>

#include <CLI11.hpp>

#include "flb/benchmarks.hpp"
#include "flb/engine.hpp"
#include "flb/experiments.hpp"
#include "flb/generators.hpp"
#include "flb/params.hpp"

namespace {

double parse_cmin(const std::string& s) {
  if (s == "inf" || s == "infinity") return std::numeric_limits<double>::infinity();
  return std::stod(s);
}

void print_solved(const flb::SolvedParams& sp) {
  std::cout.precision(15);
  std::cout << "gamma=";
  if (sp.gamma == flb::kGammaInf) std::cout << "inf";
  else std::cout << static_cast<long long>(sp.gamma);
  std::cout << "\neta=" << sp.eta << "\nbeta=" << sp.beta << "\nratio_bound=" << sp.ratio_bound
            << "\nregime=" << flb::to_string(sp.regime)
            << "\nlambert_fallback=" << (sp.lambert_fallback ? 1 : 0) << "\n";
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"online job-assignment laboratory"};
  app.require_subcommand(1);

  // simulate
  std::string sim_instance, sim_policy, sim_mode = "enforcing", sim_trace_out;
  auto* sim = app.add_subcommand("simulate", "run a policy over an instance");
  sim->add_option("--instance", sim_instance, "instance file")->required();
  sim->add_option("--policy", sim_policy, "policy string")->required();
  sim->add_option("--mode", sim_mode)->check(CLI::IsMember({"enforcing", "hypothetical"}));
  sim->add_option("--trace-out", sim_trace_out, "trace CSV output path");

  // solve-params
  double sp_R = 1.0, sp_D = 1.0;
  std::string sp_cmin = "inf", sp_mode = "int";
  auto* sp = app.add_subcommand("solve-params", "solve the parameter programs");
  sp->add_option("--R", sp_R)->required();
  sp->add_option("--D", sp_D)->required();
  sp->add_option("--cmin", sp_cmin, "integer or 'inf'");
  sp->add_option("--mode", sp_mode)->check(CLI::IsMember({"int", "real", "fixed-int", "fixed-real"}));

  // gen
  auto* gen = app.add_subcommand("gen", "generate instances");
  gen->require_subcommand(1);
  int g_M = 1000, g_c = 200, g_trunc = 0, g_D = 10, g_batch = 0, g_n = 3, g_m = 500;
  double g_R = 10.0, g_Dr = 10.0, g_rate = 10.0, g_mu = 2.0, g_sigma = 3.0;
  std::uint64_t g_seed = 1;
  std::string g_out = "instance.txt", g_outdir = "lowerbound";
  auto* gw = gen->add_subcommand("worstcase", "geometric adversarial family");
  gw->add_option("--M", g_M);
  gw->add_option("--R", g_R);
  gw->add_option("--D", g_Dr);
  gw->add_option("--c", g_c);
  gw->add_option("--truncate", g_trunc, "default M");
  gw->add_option("--out", g_out);
  auto* gl = gen->add_subcommand("lowerbound", "distribution over truncated instances");
  gl->add_option("--M", g_M);
  gl->add_option("--R", g_R);
  gl->add_option("--D", g_Dr);
  gl->add_option("--out-dir", g_outdir);
  auto* gb = gen->add_subcommand("batch", "homogeneous-reward batches");
  gb->add_option("--D", g_D);
  gb->add_option("--batch-size", g_batch)->required();
  gb->add_option("--c", g_c);
  gb->add_option("--truncate", g_trunc, "default D");
  gb->add_option("--out", g_out);
  auto* gp = gen->add_subcommand("poisson", "random Poisson arrivals");
  gp->add_option("--n", g_n);
  gp->add_option("--c", g_c);
  gp->add_option("--m", g_m);
  gp->add_option("--rate", g_rate);
  gp->add_option("--mu", g_mu);
  gp->add_option("--sigma", g_sigma);
  gp->add_option("--seed", g_seed);
  gp->add_option("--out", g_out);

  // experiment
  std::string ex_config, ex_outdir = "out", ex_format = "csv";
  std::uint64_t ex_seed = 0;
  auto* ex = app.add_subcommand("experiment", "reproduce experiment data files");
  ex->require_subcommand(1);
  auto add_ex_opts = [&](CLI::App* sub) {
    sub->add_option("--config", ex_config, "key=value config file");
    sub->add_option("--out-dir", ex_outdir);
    sub->add_option("--seed", ex_seed, "override config seed");
    sub->add_option("--format", ex_format)->check(CLI::IsMember({"csv", "svg"}));
  };
  auto* ex_w = ex->add_subcommand("worstcase", "ratio vs truncation");
  auto* ex_r = ex->add_subcommand("random", "Poisson trials with confidence intervals");
  auto* ex_c = ex->add_subcommand("certificates", "primal-dual certificate suite");
  add_ex_opts(ex_w);
  add_ex_opts(ex_r);
  add_ex_opts(ex_c);

  // check
  auto* check = app.add_subcommand("check", "feasibility and invariant checks");
  check->require_subcommand(1);
  double ch_R = 1.0, ch_Dr = 1.0, ch_eta = 0.0, ch_beta = 1.0;
  int ch_D = 1, ch_gamma = 1;
  std::string ch_cmin = "inf", ch_instance;
  auto* chf = check->add_subcommand("feasibility", "capacity-feasibility condition");
  chf->add_option("--R", ch_R)->required();
  chf->add_option("--D", ch_Dr)->required();
  chf->add_option("--cmin", ch_cmin);
  chf->add_option("--gamma", ch_gamma, "1 = integer condition, >= 2 = real condition");
  chf->add_option("--eta", ch_eta)->required();
  chf->add_option("--beta", ch_beta)->required();
  auto* chi = check->add_subcommand("invariant", "drift invariant over a hypothetical run");
  chi->add_option("--instance", ch_instance)->required();
  chi->add_option("--R", ch_R)->required();
  chi->add_option("--D", ch_D, "grid depth (default instance d_max)");
  chi->add_option("--cmin", ch_cmin);
  chi->add_option("--eta", ch_eta)->required();
  chi->add_option("--beta", ch_beta)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sim) {
      flb::Instance inst = flb::load_instance(sim_instance);
      flb::Policy policy = flb::parse_policy(sim_policy);
      flb::Mode mode = sim_mode == "enforcing" ? flb::Mode::Enforcing : flb::Mode::Hypothetical;
      flb::Trace trace = flb::run(inst, policy, mode);
      int accepted = 0;
      for (const auto& d : trace.decisions)
        if (d.chosen != flb::kReject) ++accepted;
      std::cout << "jobs=" << trace.decisions.size() << " accepted=" << accepted
                << " total_reward=" << trace.total_reward << "\n";
      if (!sim_trace_out.empty()) {
        std::ofstream f(sim_trace_out);
        flb::write_trace_csv(f, trace);
      }
      return 0;
    }
    if (*sp) {
      flb::SolvedParams solved;
      if (sp_mode == "int")
        solved = flb::solve_flbopt_int(sp_R, static_cast<int>(sp_D), parse_cmin(sp_cmin));
      else if (sp_mode == "real")
        solved = flb::solve_flbopt_real(sp_R, sp_D, parse_cmin(sp_cmin));
      else if (sp_mode == "fixed-int")
        solved = flb::solve_fixed_reward_int(static_cast<int>(sp_D));
      else
        solved = flb::solve_fixed_reward_real(sp_D);
      print_solved(solved);
      return 0;
    }
    if (*gen) {
      if (*gw) {
        if (g_trunc == 0) g_trunc = g_M;
        flb::save_instance(flb::gen_worstcase_geometric(g_M, g_R, g_Dr, g_c, g_trunc), g_out);
      } else if (*gl) {
        auto dist = flb::gen_lowerbound_distribution(g_M, g_R, g_Dr);
        std::filesystem::create_directories(g_outdir);
        std::ofstream manifest(g_outdir + "/manifest.csv");
        manifest << "k,file,probability\n";
        manifest.precision(17);
        for (size_t k = 0; k < dist.size(); ++k) {
          std::string file = "inst_" + std::to_string(k + 1) + ".txt";
          flb::save_instance(dist[k].first, g_outdir + "/" + file);
          manifest << (k + 1) << ',' << file << ',' << dist[k].second << '\n';
        }
      } else if (*gb) {
        if (g_trunc == 0) g_trunc = g_D;
        flb::save_instance(flb::gen_batch_homogeneous(g_D, g_batch, g_c, g_trunc), g_out);
      } else {
        flb::save_instance(flb::gen_random_poisson(g_n, g_c, g_m, g_rate, g_mu, g_sigma, g_seed),
                           g_out);
      }
      return 0;
    }
    if (*ex) {
      flb::Config cfg = ex_config.empty() ? flb::Config{} : flb::load_config(ex_config);
      bool svg = ex_format == "svg";
      flb::ExperimentResult result;
      if (*ex_w) result = flb::experiment_worstcase(cfg, ex_outdir, svg);
      else if (*ex_r) result = flb::experiment_random(cfg, ex_outdir, svg, ex_seed);
      else result = flb::experiment_certificates(cfg, ex_outdir, ex_seed);
      if (result.violations > 0) {
        std::cerr << "violations: " << result.violations << "\n";
        return 2;
      }
      return 0;
    }
    if (*chf) {
      flb::Feasibility verdict =
          ch_gamma <= 1
              ? flb::check_feasibility_condition_integer(ch_R, static_cast<int>(ch_Dr),
                                                         parse_cmin(ch_cmin), ch_eta, ch_beta)
              : flb::check_feasibility_condition_real(ch_R, ch_Dr, parse_cmin(ch_cmin), ch_gamma,
                                                      ch_eta, ch_beta);
      std::cout << flb::to_string(verdict) << "\n";
      return verdict == flb::Feasibility::Feasible ? 0 : 1;
    }
    if (*chi) {
      flb::Instance inst = flb::load_instance(ch_instance);
      if (chi->count("--D") == 0) ch_D = static_cast<int>(inst.d_max);
      flb::FlbParams params{1.0, ch_eta, ch_beta};
      flb::Trace trace = flb::run(inst, flb::Policy::make_flb(params), flb::Mode::Hypothetical);
      auto violations = flb::check_invariant_integer(inst, trace, params, ch_R,
                                                     parse_cmin(ch_cmin),
                                                     flb::full_invariant_grid(inst, ch_D));
      std::cout << "violations=" << violations.size() << "\n";
      for (size_t v = 0; v < std::min<size_t>(violations.size(), 10); ++v)
        std::cout << "  server=" << violations[v].triple.server + 1 << " t=" << violations[v].triple.t
                  << " tau=" << violations[v].triple.tau << " d=" << violations[v].triple.d
                  << " lhs=" << violations[v].lhs << " rhs=" << violations[v].rhs << "\n";
      return violations.empty() ? 0 : 2;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
