#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pcmc/channel.hpp"
#include "pcmc/config.hpp"
#include "pcmc/link.hpp"
#include "pcmc/montecarlo.hpp"
#include "pcmc/optimize.hpp"
#include "pcmc/quadrature.hpp"
#include "pcmc/table.hpp"

namespace {

namespace cfg = pcmc::config;
namespace chan = pcmc::channel;
namespace mc = pcmc::montecarlo;
namespace opt = pcmc::optimize;
using pcmc::table::Cell;
using pcmc::table::Table;

constexpr double kPi = std::numbers::pi;

struct CliOptions {
  std::string config_path;
  std::string format;
  std::string out;
  long long seed = -1;
};

std::string resolve_config_path(const std::string& path) {
  namespace fs = std::filesystem;
  if (fs::exists(path) || fs::path(path).is_absolute()) return path;
  if (const char* dir = std::getenv("PCMC_CONFIG_DIR")) {
    const fs::path candidate = fs::path(dir) / path;
    if (fs::exists(candidate)) return candidate.string();
  }
  return path;
}

cfg::ExperimentConfig load(const CliOptions& opts) {
  cfg::ExperimentConfig c;
  if (!opts.config_path.empty())
    c = cfg::load_file(resolve_config_path(opts.config_path));
  if (opts.seed >= 0) c.seed = static_cast<std::uint64_t>(opts.seed);
  if (!opts.format.empty()) c.format = opts.format;
  if (!opts.out.empty()) c.path = opts.out;
  c.validate();
  return c;
}

void emit(const Table& t, const cfg::ExperimentConfig& c) {
  const std::string text = c.format == "json" ? t.to_json() : t.to_csv();
  if (c.path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(c.path, std::ios::binary);
  if (!out) throw std::ios_base::failure("cannot open output file: " + c.path);
  out << text;
  if (!out) throw std::ios_base::failure("write failed: " + c.path);
}

std::size_t tap_count(const cfg::ExperimentConfig& c,
                      const chan::ChannelGeometry& g, double alpha) {
  if (c.taps_len > 0) return c.taps_len;
  return chan::memory_length(g, alpha, c.t_s, c.tap_tol, c.max_taps);
}

int cmd_cdf(const cfg::ExperimentConfig& c) {
  const chan::ChannelGeometry g = c.geometry();
  const std::vector<double> alphas = c.alphas_rad();
  const std::vector<double> times = c.cdf_times();

  mc::SimConfig sim{g, c.dt, c.t_max, c.n_molecules, c.seed};
  const auto records = mc::simulate(sim);
  const auto ecdf = mc::empirical_cdf(records, c.n_molecules, alphas, times);

  Table t{{"alpha_rad", "t_s", "F_analytic", "F_empirical", "n_molecules"}, {}};
  for (std::size_t ai = 0; ai < alphas.size(); ++ai)
    for (std::size_t ti = 0; ti < times.size(); ++ti)
      t.add_row({alphas[ai], times[ti],
                 chan::f_alpha_t(g, alphas[ai], times[ti]), ecdf.at(ai, ti),
                 static_cast<long long>(c.n_molecules)});
  emit(t, c);
  return 0;
}

int cmd_taps(const cfg::ExperimentConfig& c) {
  const chan::ChannelGeometry g = c.geometry();
  Table t{{"alpha_rad", "n", "p_n"}, {}};
  for (double alpha : c.alphas_rad()) {
    const chan::TapVector tv =
        chan::taps(g, alpha, c.t_s, tap_count(c, g, alpha));
    for (std::size_t n = 0; n < tv.taps.size(); ++n)
      t.add_row({alpha, static_cast<long long>(n + 1), tv.taps[n]});
  }
  emit(t, c);
  return 0;
}

int cmd_ber(const cfg::ExperimentConfig& c) {
  const chan::ChannelGeometry g = c.geometry();
  const std::vector<double> alphas = c.alphas_rad();

  std::vector<std::uint64_t> m_values;
  if (c.sweep == "molecules") {
    if (c.m_grid.empty())
      throw cfg::ConfigError("link.m_grid: required for sweep = molecules");
    for (double m : c.m_grid)
      m_values.push_back(static_cast<std::uint64_t>(m));
  } else {
    m_values.push_back(c.n1);
  }

  Table t{{"alpha_rad", "n1", "threshold", "ber", "ci_halfwidth"}, {}};
  for (std::uint64_t m : m_values) {
    opt::LinkParams params{m, c.n0, c.n_bits, c.seed, c.prior1, c.max_taps};
    if (c.threshold >= 0) {
      // Fixed threshold: bypass the per-point optimizer.
      for (double alpha : alphas) {
        pcmc::link::LinkConfig lc{
            chan::taps(g, alpha, c.t_s, tap_count(c, g, alpha)),
            m,
            c.n0,
            static_cast<std::uint64_t>(c.threshold),
            c.n_bits,
            c.seed,
            c.prior1,
            true};
        const auto r = pcmc::link::ber_monte_carlo(lc);
        t.add_row({alpha, static_cast<long long>(m), c.threshold, r.ber,
                   r.confidence_halfwidth_95});
      }
    } else {
      const opt::SweepResult sweep =
          opt::sweep_ber_vs_alpha(g, c.t_s, alphas, params);
      for (const auto& row : sweep.rows)
        t.add_row({row.alpha, static_cast<long long>(row.n1),
                   static_cast<long long>(row.threshold), row.ber,
                   row.ci_halfwidth});
    }
  }
  emit(t, c);
  return 0;
}

int cmd_optimize(const cfg::ExperimentConfig& c) {
  const chan::ChannelGeometry g = c.geometry();

  const opt::AlphaStar closed = opt::alpha_star_closed_form(g, c.t_s);
  const opt::AlphaStar series = opt::alpha_star_series(g, c.t_s);
  const double sid_grid = opt::sid_grid_argmax(g, c.t_s, 0.1 * kPi / 180.0);

  const std::vector<double> alphas = c.alphas_rad();
  opt::LinkParams params{c.n1, c.n0, c.n_bits, c.seed, c.prior1, c.max_taps};
  const opt::SweepResult sweep =
      opt::sweep_ber_vs_alpha(g, c.t_s, alphas, params);
  std::vector<double> bers;
  bers.reserve(sweep.rows.size());
  for (const auto& row : sweep.rows) bers.push_back(row.ber);
  const double ber_grid = opt::fitted_argmin(alphas, bers);

  const char* outcome =
      closed.outcome == opt::AlphaStarOutcome::interior        ? "interior"
      : closed.outcome == opt::AlphaStarOutcome::saturated_full ? "saturated_full"
                                                                : "saturated_zero";
  Table t{{"alpha_star_closed_form", "closed_form_outcome", "alpha_star_series",
           "alpha_star_sid_grid", "alpha_star_ber_grid", "gap_closed_vs_sid",
           "gap_sid_vs_ber"},
          {}};
  t.add_row({closed.alpha, std::string(outcome), series.alpha, sid_grid,
             ber_grid, std::fabs(closed.alpha - sid_grid),
             std::fabs(sid_grid - ber_grid)});
  emit(t, c);
  return 0;
}

int cmd_peak(const cfg::ExperimentConfig& c) {
  Table t{{"d", "alpha_rad", "t_peak_s", "loglog_slope"}, {}};
  for (double alpha : c.alphas_rad()) {
    std::vector<double> logd, logt;
    for (double d : c.d_grid) {
      const chan::ChannelGeometry g{c.rr + d, c.rr, c.D};
      const double tp = chan::peak_time(g, alpha);
      logd.push_back(std::log(d));
      logt.push_back(std::log(tp));
      const bool last = (d == c.d_grid.back());
      if (last && c.d_grid.size() >= 2) {
        // Least-squares slope of log t_peak against log d over the group.
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        const double n = static_cast<double>(logd.size());
        for (std::size_t i = 0; i < logd.size(); ++i) {
          sx += logd[i];
          sy += logt[i];
          sxx += logd[i] * logd[i];
          sxy += logd[i] * logt[i];
        }
        const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        t.add_row({d, alpha, std::exp(logt.back()), slope});
      } else {
        t.add_row({d, alpha, std::exp(logt.back()), Cell{}});
      }
    }
  }
  emit(t, c);
  return 0;
}

int cmd_simulate(const cfg::ExperimentConfig& c) {
  mc::SimConfig sim{c.geometry(), c.dt, c.t_max, c.n_molecules, c.seed};
  const auto records = mc::simulate(sim);
  Table t{{"molecule_id", "hit_time_s", "hit_angle_rad"}, {}};
  for (const auto& r : records)
    t.add_row({static_cast<long long>(r.molecule_id), r.hit_time, r.hit_angle});
  emit(t, c);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Partially counting molecular communication channel toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  CliOptions opts;
  app.add_option("--config", opts.config_path, "Experiment config file");
  app.add_option("--seed", opts.seed, "Override the configured RNG seed");
  app.add_option("--format", opts.format, "Output format: csv or json");
  app.add_option("--out", opts.out, "Output path ('-' for stdout)");

  int (*run)(const cfg::ExperimentConfig&) = nullptr;
  app.add_subcommand("cdf", "Analytical vs empirical hitting CDF grid")
      ->callback([&] { run = cmd_cdf; });
  app.add_subcommand("taps", "Channel tap vectors per counting angle")
      ->callback([&] { run = cmd_taps; });
  app.add_subcommand("ber", "Link BER sweep (alpha or molecule count)")
      ->callback([&] { run = cmd_ber; });
  app.add_subcommand("optimize", "Optimal counting angle estimates and gaps")
      ->callback([&] { run = cmd_optimize; });
  app.add_subcommand("peak", "Hitting-rate peak time over a distance grid")
      ->callback([&] { run = cmd_peak; });
  app.add_subcommand("simulate", "Raw Monte Carlo hit records")
      ->callback([&] { run = cmd_simulate; });

  CLI11_PARSE(app, argc, argv);

  try {
    return run(load(opts));
  } catch (const cfg::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const pcmc::quad::NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 3;
  } catch (const std::domain_error& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 3;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
