// softcover: curve computation, simulation, and verification front end.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "softcover/achievability.hpp"
#include "softcover/converse.hpp"
#include "softcover/errors.hpp"
#include "softcover/prob.hpp"
#include "softcover/sim.hpp"
#include "softcover/verify.hpp"

namespace sc = softcover;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvariant = 1;
constexpr int kExitConfig = 2;
constexpr int kExitBudget = 3;

struct ExperimentConfig {
  sc::Channel channel;
  sc::Pmf input_dist;   // exactly one of input_dist / target_output in the file
  sc::Pmf target;       // always resolved: given or pushed forward
  bool has_input = false;
  std::vector<double> rates;
  int qx_resolution = 33;
  int v_resolution = 64;
  int polytope_resolution = 33;
  double s_tol = 1e-6;
  double lambda_tol = 1e-7;
  std::uint64_t seed = 1;
  std::vector<int> sim_n_list = {8, 12, 16};
  int sim_trials = 50;
  bool sim_enabled = false;
};

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw sc::ConfigError("cannot open config file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw sc::ConfigError(std::string("config parse error: ") + e.what());
  }

  ExperimentConfig cfg;
  try {
    auto rows = j.at("channel").get<std::vector<std::vector<double>>>();
    for (const auto& r : rows) {
      double s = 0.0;
      for (double v : r) s += v;
      if (std::abs(s - 1.0) > 1e-9)
        throw sc::ConfigError("channel row does not sum to 1 (field: channel)");
    }
    cfg.channel = sc::Channel(rows);

    bool has_in = j.contains("input_dist"), has_out = j.contains("target_output");
    if (has_in == has_out)
      throw sc::ConfigError("exactly one of input_dist / target_output required");
    if (has_in) {
      cfg.input_dist = sc::Pmf(j.at("input_dist").get<std::vector<double>>());
      cfg.has_input = true;
      cfg.target = sc::push_forward(cfg.input_dist, cfg.channel);
    } else {
      cfg.target = sc::Pmf(j.at("target_output").get<std::vector<double>>());
    }

    if (j.contains("rate_grid")) {
      const auto& g = j.at("rate_grid");
      double start = g.at("start"), stop = g.at("stop"), step = g.at("step");
      if (!(step > 0.0) || stop < start)
        throw sc::ConfigError("rate_grid requires step > 0 and stop >= start");
      for (double r = start; r <= stop + 1e-12; r += step)
        cfg.rates.push_back(std::round(r * 1e9) / 1e9);
      if (cfg.rates.empty()) throw sc::ConfigError("rate_grid is empty");
    }
    if (j.contains("resolutions")) {
      const auto& r = j.at("resolutions");
      cfg.qx_resolution = r.value("qx", cfg.qx_resolution);
      cfg.v_resolution = r.value("v", cfg.v_resolution);
      cfg.polytope_resolution = r.value("polytope", cfg.polytope_resolution);
    }
    if (j.contains("tolerances")) {
      const auto& t = j.at("tolerances");
      cfg.s_tol = t.value("s_tol", cfg.s_tol);
      cfg.lambda_tol = t.value("lambda_tol", cfg.lambda_tol);
    }
    cfg.seed = j.value("seed", cfg.seed);
    if (j.contains("sim")) {
      const auto& s = j.at("sim");
      if (s.contains("n_list")) cfg.sim_n_list = s.at("n_list").get<std::vector<int>>();
      cfg.sim_trials = s.value("trials", cfg.sim_trials);
      cfg.sim_enabled = s.value("enabled", cfg.sim_enabled);
    }
  } catch (const json::exception& e) {
    throw sc::ConfigError(std::string("config field error: ") + e.what());
  }
  return cfg;
}

int thread_budget() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("SOFTCOVER_THREADS")) {
    int cap = std::atoi(env);
    if (cap >= 1) hw = std::min(hw, static_cast<unsigned>(cap));
  }
  return static_cast<int>(hw);
}

// deterministic parallel map over indices: output slot i is always task i
void parallel_for(int count, const std::function<void(int)>& fn) {
  int threads = std::min(thread_budget(), count);
  if (threads <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
    });
  for (auto& th : pool) th.join();
}

void atomic_write(const std::string& path, const std::string& content) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + tmp);
    out << content;
  }
  std::filesystem::rename(tmp, path);
}

std::string fmt_double(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9f", v);
  return buf;
}

sc::ExponentCurve compute_merged_curve(const ExperimentConfig& cfg) {
  sc::ConverseInstance inst{cfg.channel, cfg.target, cfg.qx_resolution,
                            cfg.v_resolution, cfg.s_tol};
  const int n = static_cast<int>(cfg.rates.size());
  std::vector<sc::ExponentRow> rows(n);
  parallel_for(n, [&](int i) {
    double rate = cfg.rates[i];
    sc::ExponentCurve ea = sc::ea_curve(cfg.channel, cfg.target, {rate},
                                        cfg.polytope_resolution, cfg.lambda_tol);
    sc::BalancedSolution ec = sc::ec_at_rate(inst, rate);
    sc::ExponentRow row;
    row.rate = rate;
    row.e_a = ea.rows[0].e_a;
    row.alpha_star = ea.rows[0].alpha_star;
    row.px_digest = ea.rows[0].px_digest;
    row.e_c = ec.value;
    row.s_star = ec.s_star;
    row.qx_digest = sc::pmf_digest(ec.qx.probs());
    rows[i] = std::move(row);
  });
  return {std::move(rows)};
}

std::string curve_csv(const sc::ExponentCurve& curve) {
  std::ostringstream os;
  os << "rate,e_c,e_a,alpha_star,s_star,qx_star,px_star\n";
  for (const auto& r : curve.rows)
    os << fmt_double(r.rate) << ',' << fmt_double(r.e_c) << ',' << fmt_double(r.e_a)
       << ',' << fmt_double(r.alpha_star) << ',' << fmt_double(r.s_star) << ','
       << r.qx_digest << ',' << r.px_digest << '\n';
  return os.str();
}

// row-wise sandwich + monotonicity contract on a merged curve
bool curve_invariants_ok(const sc::ExponentCurve& curve, std::string& why) {
  for (std::size_t i = 0; i < curve.rows.size(); ++i) {
    const auto& r = curve.rows[i];
    if (r.e_c > r.e_a + 1e-6) {
      why = "e_c > e_a + 1e-6 at rate " + fmt_double(r.rate);
      return false;
    }
    if (i > 0) {
      if (r.e_a > curve.rows[i - 1].e_a + 1e-6 ||
          r.e_c > curve.rows[i - 1].e_c + 1e-6) {
        why = "curve not non-increasing at rate " + fmt_double(r.rate);
        return false;
      }
    }
  }
  return true;
}

std::string figure_svg(const sc::ExponentCurve& curve) {
  const double w = 640, h = 440, ml = 70, mr = 20, mt = 20, mb = 50;
  double rmax = 0.0, vmax = 0.0;
  for (const auto& r : curve.rows) {
    rmax = std::max(rmax, r.rate);
    vmax = std::max({vmax, r.e_a, r.e_c});
  }
  if (vmax <= 0.0) vmax = 1.0;
  auto X = [&](double rate) { return ml + (w - ml - mr) * rate / rmax; };
  auto Y = [&](double v) { return h - mb - (h - mt - mb) * v / vmax; };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\""
     << h << "\" viewBox=\"0 0 " << w << ' ' << h << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<line x1=\"" << ml << "\" y1=\"" << h - mb << "\" x2=\"" << w - mr
     << "\" y2=\"" << h - mb << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\""
     << h - mb << "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 6; ++i) {
    double rate = rmax * i / 6.0, x = X(rate);
    os << "<line x1=\"" << x << "\" y1=\"" << h - mb << "\" x2=\"" << x << "\" y2=\""
       << h - mb + 5 << "\" stroke=\"black\"/>\n";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", rate);
    os << "<text x=\"" << x << "\" y=\"" << h - mb + 20
       << "\" font-size=\"11\" text-anchor=\"middle\">" << buf << "</text>\n";
  }
  for (int i = 0; i <= 5; ++i) {
    double v = vmax * i / 5.0, y = Y(v);
    os << "<line x1=\"" << ml - 5 << "\" y1=\"" << y << "\" x2=\"" << ml << "\" y2=\""
       << y << "\" stroke=\"black\"/>\n";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    os << "<text x=\"" << ml - 8 << "\" y=\"" << y + 4
       << "\" font-size=\"11\" text-anchor=\"end\">" << buf << "</text>\n";
  }
  os << "<text x=\"" << (ml + w - mr) / 2 << "\" y=\"" << h - 12
     << "\" font-size=\"13\" text-anchor=\"middle\">R (bits)</text>\n";
  os << "<text x=\"16\" y=\"" << (mt + h - mb) / 2
     << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
     << (mt + h - mb) / 2 << ")\">exponent (bits)</text>\n";

  auto polyline = [&](bool upper, const char* color) {
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
    for (const auto& r : curve.rows)
      os << X(r.rate) << ',' << Y(upper ? r.e_a : r.e_c) << ' ';
    os << "\"/>\n";
  };
  polyline(true, "#c0392b");
  polyline(false, "#2471a3");
  os << "<text x=\"" << w - 170 << "\" y=\"" << mt + 20
     << "\" font-size=\"13\" fill=\"#c0392b\">E_a(R) upper bound</text>\n";
  os << "<text x=\"" << w - 170 << "\" y=\"" << mt + 40
     << "\" font-size=\"13\" fill=\"#2471a3\">E_c(R) lower bound</text>\n";
  os << "</svg>\n";
  return os.str();
}

int cmd_exponents(const std::string& config_path, const std::string& out_path) {
  ExperimentConfig cfg = load_config(config_path);
  if (cfg.rates.empty()) throw sc::ConfigError("rate_grid required for exponents");
  sc::ExponentCurve curve = compute_merged_curve(cfg);
  atomic_write(out_path, curve_csv(curve));
  std::string why;
  if (!curve_invariants_ok(curve, why)) {
    std::cerr << "invariant violation: " << why << '\n';
    return kExitInvariant;
  }
  std::cout << "wrote " << out_path << " (" << curve.rows.size() << " rates)\n";
  return kExitOk;
}

int cmd_simulate(const std::string& config_path, const std::string& out_path) {
  ExperimentConfig cfg = load_config(config_path);
  if (!cfg.sim_enabled) {
    std::cout << "simulation disabled in config (sim.enabled=false); nothing to do\n";
    return kExitOk;
  }
  if (!cfg.has_input)
    throw sc::ConfigError("simulate requires input_dist (codewords are drawn from it)");
  if (cfg.rates.empty()) throw sc::ConfigError("rate_grid required for simulate");
  double rate = cfg.rates.front();

  std::vector<sc::SimReport> reports = sc::empirical_exponent(
      cfg.channel, cfg.target, cfg.input_dist, rate, cfg.sim_n_list, cfg.sim_trials,
      cfg.seed);

  std::ostringstream os;
  os << "n,M,rate,trial,trials,tv,exponent_estimate,seed\n";
  for (const auto& r : reports)
    os << r.n << ',' << r.M << ',' << fmt_double(r.rate) << ',' << r.trial << ','
       << r.trials << ',' << fmt_double(r.tv) << ',' << fmt_double(r.exponent_estimate)
       << ',' << r.seed << '\n';
  atomic_write(out_path, os.str());
  std::cout << "wrote " << out_path << " (" << reports.size() << " trials)\n";
  return kExitOk;
}

int cmd_verify(const std::string& suite) {
  std::vector<sc::SuiteResult> results = sc::run_verify_suites(suite);
  if (results.empty()) {
    std::cerr << "unknown suite: " << suite << '\n';
    return kExitConfig;
  }
  int failed_total = 0;
  for (const auto& r : results) {
    std::cout << r.name << ": " << r.passed << " passed, " << r.failed << " failed\n";
    for (const auto& f : r.failures) std::cout << "  FAIL " << f << '\n';
    failed_total += r.failed;
  }
  return failed_total == 0 ? kExitOk : kExitInvariant;
}

int cmd_renyi(const std::string& config_path, const std::string& alphas,
              const std::string& out_path) {
  ExperimentConfig cfg = load_config(config_path);
  if (!cfg.has_input) throw sc::ConfigError("renyi requires input_dist");
  double start, stop, step;
  if (std::sscanf(alphas.c_str(), "%lf:%lf:%lf", &start, &stop, &step) != 3 ||
      step <= 0.0)
    throw sc::ConfigError("--alphas expects start:stop:step");

  std::ostringstream os;
  os << "alpha,renyi_mi\n";
  for (double a = start; a <= stop + 1e-12; a += step)
    os << fmt_double(a) << ',' << fmt_double(sc::renyi_mi(a, cfg.input_dist, cfg.channel))
       << '\n';
  atomic_write(out_path, os.str());
  std::cout << "wrote " << out_path << '\n';
  return kExitOk;
}

int cmd_figure1(const std::string& out_dir) {
  ExperimentConfig cfg;
  cfg.channel = sc::Channel::bsc(0.1);
  cfg.input_dist = sc::Pmf({0.48, 0.52});
  cfg.has_input = true;
  cfg.target = sc::push_forward(cfg.input_dist, cfg.channel);
  for (double r = 0.0; r <= 0.6 + 1e-12; r += 0.025)
    cfg.rates.push_back(std::round(r * 1e9) / 1e9);

  sc::ExponentCurve curve = compute_merged_curve(cfg);
  std::filesystem::create_directories(out_dir);
  atomic_write(out_dir + "/figure1.csv", curve_csv(curve));
  atomic_write(out_dir + "/figure1.svg", figure_svg(curve));
  std::string why;
  if (!curve_invariants_ok(curve, why)) {
    std::cerr << "invariant violation: " << why << '\n';
    return kExitInvariant;
  }
  std::cout << "wrote " << out_dir << "/figure1.csv and figure1.svg\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"soft covering strong-converse exponent bounds"};
  app.require_subcommand(1);

  std::string config_path, out_path = "out.csv", out_dir = "figure1_out";
  std::string suite, alphas = "0.5:0.99:0.01";

  auto* exp = app.add_subcommand("exponents", "compute E_c / E_a over a rate grid");
  exp->add_option("--config", config_path, "experiment config (json)")->required();
  exp->add_option("--out", out_path, "output csv");

  auto* sim = app.add_subcommand("simulate", "random-code tv simulation");
  sim->add_option("--config", config_path, "experiment config (json)")->required();
  sim->add_option("--out", out_path, "output csv");

  auto* ver = app.add_subcommand("verify", "run verification suites");
  ver->add_option("--suite", suite, "run a single suite by name");

  auto* ren = app.add_subcommand("renyi", "Renyi mutual information sweep");
  ren->add_option("--config", config_path, "experiment config (json)")->required();
  ren->add_option("--alphas", alphas, "start:stop:step");
  ren->add_option("--out", out_path, "output csv");

  auto* fig = app.add_subcommand("figure1", "reproduce the BSC(0.1) two-curve figure");
  fig->add_option("--out-dir", out_dir, "output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (exp->parsed()) return cmd_exponents(config_path, out_path);
    if (sim->parsed()) return cmd_simulate(config_path, out_path);
    if (ver->parsed()) return cmd_verify(suite);
    if (ren->parsed()) return cmd_renyi(config_path, alphas, out_path);
    if (fig->parsed()) return cmd_figure1(out_dir);
  } catch (const sc::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const sc::BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << '\n';
    return kExitBudget;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvariant;
  }
  return kExitOk;
}
