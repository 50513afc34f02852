// qtherm: tables, figures and checks for the two-level Gibbs families.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "qtherm/duality.hpp"
#include "qtherm/error.hpp"
#include "qtherm/kernels.hpp"
#include "qtherm/magnetics.hpp"
#include "qtherm/models.hpp"
#include "qtherm/oracles.hpp"
#include "qtherm/spectra.hpp"
#include "qtherm/verify.hpp"

namespace {

using namespace qtherm;
using Cell = std::variant<double, std::string>;

enum Exit { kOk = 0, kVerifyFailed = 1, kUsage = 2, kNumerical = 3 };

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;
};

std::string format_cell(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return fmt::format("{:.17g}", *d);
  return std::get<std::string>(c);
}

std::string to_csv(const Table& t) {
  std::string out;
  for (std::size_t i = 0; i < t.header.size(); ++i) out += (i ? "," : "") + t.header[i];
  out += '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + format_cell(row[i]);
    out += '\n';
  }
  return out;
}

nlohmann::json to_json(const Table& t) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : t.rows) {
    nlohmann::json r = nlohmann::json::object();
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (const auto* d = std::get_if<double>(&row[i]))
        r[t.header[i]] = std::isfinite(*d) ? nlohmann::json(*d) : nlohmann::json(nullptr);
      else
        r[t.header[i]] = std::get<std::string>(row[i]);
    }
    rows.push_back(std::move(r));
  }
  return {{"schema", 1}, {"columns", t.header}, {"rows", rows}};
}

struct Grid {
  double min = 0.0;
  double max = 0.0;
  int points = 0;
  bool log = false;

  std::vector<double> values() const {
    if (!(min < max) || points < 2 || (log && !(min > 0.0)))
      throw DomainError("grid needs min < max, points >= 2, and min > 0 for --log");
    std::vector<double> v(points);
    for (int i = 0; i < points; ++i) {
      const double s = static_cast<double>(i) / (points - 1);
      v[i] = log ? std::exp(std::log(min) + s * (std::log(max) - std::log(min)))
                 : min + s * (max - min);
    }
    return v;
  }
};

std::vector<double> logspace(double lo_exp, double hi_exp, int points) {
  return Grid{std::pow(10.0, lo_exp), std::pow(10.0, hi_exp), points, true}.values();
}

// Evaluates row(i) for every grid index in parallel, keeping index order.
Table build_table(std::vector<std::string> header, std::size_t n,
                  const std::function<std::vector<Cell>(std::size_t)>& row) {
  Table t{std::move(header), std::vector<std::vector<Cell>>(n)};
  kernels::for_each_index(n, [&](std::size_t i) { t.rows[i] = row(i); },
                          kernels::Execution::parallel);
  return t;
}

struct Output {
  std::string path;
  std::string format = "csv";
};

void emit(const std::string& text, const Output& out) {
  if (out.path.empty() || out.path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream f(out.path, std::ios::binary);
  if (!f) throw std::ios_base::failure("cannot open " + out.path);
  f << text;
  if (!f) throw std::ios_base::failure("write failed: " + out.path);
}

void emit_table(const Table& t, const Output& out) {
  emit(out.format == "json" ? to_json(t).dump(2) + "\n" : to_csv(t), out);
}

std::vector<Model> select_models(const std::string& name) {
  if (name == "all") return {kAllModels.begin(), kAllModels.end()};
  const auto m = parse_model(name);
  if (!m) throw DomainError("unknown model: " + name);
  return {*m};
}

Table sweep_table(const std::vector<Model>& models, const std::vector<double>& betas,
                  double tol, std::size_t samples, std::uint64_t seed) {
  std::vector<std::string> header = {"model", "beta", "partition", "mean_energy", "var_energy",
                                     "mean_polarization"};
  const bool oracle = tol > 0.0;
  if (oracle) header.insert(header.end(), {"quad_mean_energy", "quad_mean_polarization"});
  if (samples > 0) header.push_back("mc_mean_energy");
  const std::size_t n = models.size() * betas.size();
  return build_table(header, n, [&](std::size_t i) {
    const Model m = models[i / betas.size()];
    const double b = betas[i % betas.size()];
    std::vector<Cell> row = {std::string(to_string(m)), b, partition(m, b), mean_energy(m, b),
                             var_energy(m, b), mean_polarization(m, b)};
    if (oracle) {
      SemiInfiniteOptions opts;
      opts.upper = quadrature_cutoff(b);
      opts.rel_tol = tol;
      opts.tail_bound = gibbs_tail_bound(m, b, opts.upper, 1);
      const RealFunction fe = [&](double E) { return E * pdf(m, b, E); };
      const RealFunction fr = [&](double E) { return polarization_radius(E) * pdf(m, b, E); };
      row.emplace_back(integrate_semiinfinite(fe, tol, opts).value);
      row.emplace_back(integrate_semiinfinite(fr, tol, opts).value);
    }
    if (samples > 0) {
      const CdfTable table(GibbsPoint(m, b));
      const auto xs = kernels::sample_batch(table, seed + i, samples, kernels::Execution::serial);
      double mean = 0.0;
      for (double x : xs) mean += x;
      row.emplace_back(mean / static_cast<double>(xs.size()));
    }
    return row;
  });
}

Table figure_table(const std::string& id, const Grid* beta_override) {
  auto beta_grid = [&](double lo, double hi) {
    return beta_override ? beta_override->values() : logspace(lo, hi, 400);
  };
  if (id == "fig1" || id == "fig2" || id == "fig3") {
    const auto betas = beta_grid(-2, 3);
    std::vector<std::string> header = {"beta", "quat", "complex", "real", "classical"};
    if (id == "fig1") header.push_back("brosseau");
    return build_table(header, betas.size(), [&](std::size_t i) {
      const double b = betas[i];
      std::vector<Cell> row = {b};
      for (Model m : kPowerLawModels) {
        const double v = id == "fig1"   ? mean_polarization(m, b)
                         : id == "fig2" ? mean_energy(m, b)
                                        : var_energy(m, b);
        row.emplace_back(v);
      }
      if (id == "fig1") row.emplace_back(brosseau_polarization(b));
      return row;
    });
  }
  if (id == "fig4") {
    const auto es = logspace(-5, 1.7, 400);
    return build_table({"E0", "kmb", "classical", "real", "complex", "quat"}, es.size(),
                       [&](std::size_t i) {
                         const double e = es[i];
                         return std::vector<Cell>{e,
                                                  integrated_density(Model::kmb, e),
                                                  integrated_density(Model::classical, e),
                                                  integrated_density(Model::real, e),
                                                  integrated_density(Model::complex, e),
                                                  integrated_density(Model::quaternionic, e)};
                       });
  }
  if (id == "fig5") {
    const auto betas = beta_grid(-2, 3);
    return build_table({"beta", "kmb", "complex", "difference"}, betas.size(), [&](std::size_t i) {
      const double b = betas[i];
      const double k = mean_polarization(Model::kmb, b), c = mean_polarization(Model::complex, b);
      return std::vector<Cell>{b, k, c, k - c};
    });
  }
  if (id == "fig6") {
    const auto betas = beta_grid(-2, 5);
    return build_table({"ln_beta", "ln_x"}, betas.size(), [&](std::size_t i) {
      return std::vector<Cell>{std::log(betas[i]), std::log(reduced_temperature(betas[i]))};
    });
  }
  throw DomainError("unknown figure id: " + id + " (expected fig1..fig6)");
}

Table spectrum_csv(const SpectrumTable& s) {
  Table t{{"n", "beta", "d", "lambda", "multiplicity"}, {}};
  for (const auto& e : s.entries)
    t.rows.push_back({static_cast<double>(s.n), s.beta, static_cast<double>(e.d), e.lambda,
                      e.multiplicity});
  return t;
}

Table solve_table(const std::string& what, const std::string& model_name, double mean_e) {
  Table t{{"quantity", "value"}, {}};
  if (what == "stationary") {
    const auto sp = solve_stationary_point();
    t.rows = {{std::string("beta"), sp.beta}, {std::string("E"), sp.E},
              {std::string("residual"), sp.residual}};
  } else if (what == "maximin") {
    t.rows = {{std::string("beta"), solve_maximin_beta().beta},
              {std::string("beta_large_beta_variance"),
               solve_maximin_beta(VarianceLaw::large_beta).beta}};
  } else if (what == "brosseau") {
    for (Model m : kPowerLawModels)
      t.rows.push_back({std::string(to_string(m)), intersect_brosseau(m).beta_star});
  } else if (what == "kmb-gap") {
    const auto g = kmb_gap_maximum();
    t.rows = {{std::string("beta"), g.beta}, {std::string("gap"), g.gap}};
  } else if (what == "critical") {
    t.rows = {{std::string("beta_c"), critical_beta(1.0)}};
  } else if (what == "beta") {
    const auto models = select_models(model_name);
    for (Model m : models)
      t.rows.push_back({std::string(to_string(m)), beta_for_mean_energy(m, mean_e)});
  } else {
    throw DomainError("unknown solve target: " + what +
                      " (expected stationary|maximin|brosseau|kmb-gap|critical|beta)");
  }
  return t;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gibbs families of two-level quantum systems: tables, figures and checks"};
  app.require_subcommand(1);

  Output out;
  auto add_output = [&](CLI::App* sub) {
    sub->add_option("--out", out.path, "Output path (default stdout)");
    sub->add_option("--format", out.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
  };
  Grid grid{0.01, 1000.0, 50, false};
  bool grid_given = false;
  auto add_grid = [&](CLI::App* sub) {
    sub->add_option("--beta-min", grid.min, "Smallest beta");
    sub->add_option("--beta-max", grid.max, "Largest beta");
    sub->add_option("--points", grid.points, "Number of grid points");
    sub->add_flag("--log", grid.log, "Logarithmic spacing");
  };
  std::string model_name = "all";
  std::uint64_t seed = 0;
  double tol = 0.0;
  std::size_t samples = 0;

  auto* sweep = app.add_subcommand("sweep", "Z, <E>, var E and <r> over a beta grid");
  sweep->add_option("--model", model_name, "real|complex|quat|class|kmb|all");
  add_grid(sweep);
  sweep->add_option("--tol", tol, "Add quadrature cross-check columns at this tolerance");
  sweep->add_option("--samples", samples, "Add a Monte Carlo mean-energy column");
  sweep->add_option("--seed", seed, "Seed for --samples");
  add_output(sweep);

  std::string figure_id;
  auto* figure = app.add_subcommand("figure", "Data behind one figure");
  figure->add_option("id", figure_id, "fig1..fig6")->required();
  add_grid(figure);
  add_output(figure);

  std::string dual_model = "complex";
  double mean_e = 16.3;
  auto* duality = app.add_subcommand("duality", "Dual-density round trip");
  duality->add_option("--model", dual_model, "complex|quat");
  duality->add_option("--mean-e", mean_e, "Fixed mean energy");
  add_output(duality);

  int spec_n = 2;
  double spec_beta = 1.0;
  auto* spectrum_cmd = app.add_subcommand("spectrum", "Eigenvalues and multiplicities");
  spectrum_cmd->add_option("--n", spec_n, "Tensor power")->check(CLI::PositiveNumber);
  spectrum_cmd->add_option("--beta", spec_beta, "beta > 0");
  add_output(spectrum_cmd);

  std::string solve_what;
  auto* solve = app.add_subcommand("solve", "Roots and extrema");
  solve->add_option("what", solve_what, "stationary|maximin|brosseau|kmb-gap|critical|beta")
      ->required();
  solve->add_option("--model", model_name, "Family for 'beta'");
  solve->add_option("--mean-e", mean_e, "Mean energy for 'beta'");
  add_output(solve);

  std::string suite = "all";
  std::string perturb;
  auto* verify = app.add_subcommand("verify", "Run the check suites; JSON report");
  verify->add_option("--suite", suite, "all|specfun|models|spectra|duality|magnetics|priors");
  verify->add_option("--perturb", perturb, "Shift one check's target so it must fail");
  verify->add_option("--out", out.path, "Report path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }
  for (auto* sub : {sweep, figure}) {
    for (const char* name : {"--beta-min", "--beta-max", "--points", "--log"})
      if (sub->parsed() && sub->count(name) > 0) grid_given = true;
  }

  try {
    if (sweep->parsed()) {
      if (!grid_given) grid = {0.01, 1000.0, 50, true};
      emit_table(sweep_table(select_models(model_name), grid.values(), tol, samples, seed), out);
    } else if (figure->parsed()) {
      emit_table(figure_table(figure_id, grid_given ? &grid : nullptr), out);
    } else if (duality->parsed()) {
      const auto m = parse_model(dual_model);
      if (!m) throw DomainError("unknown model: " + dual_model);
      const auto r = run_duality_experiment(*m, mean_e);
      Table t{{"model", "target_meanE", "normalizer", "mean_beta", "roundtrip_meanE"},
              {{std::string(to_string(r.model)), r.target_meanE, r.normalizer, r.mean_beta,
                r.roundtrip_meanE}}};
      emit_table(t, out);
    } else if (spectrum_cmd->parsed()) {
      const auto s = spectrum(spec_n, spec_beta);
      if (out.format == "json") {
        nlohmann::json j = s;
        emit(j.dump(2) + "\n", out);
      } else {
        emit_table(spectrum_csv(s), out);
      }
    } else if (solve->parsed()) {
      emit_table(solve_table(solve_what, model_name, mean_e), out);
    } else if (verify->parsed()) {
      VerifyOptions options;
      if (!perturb.empty()) options.perturb = perturb;
      const auto report = run_verify(suite, options);
      emit(report.to_json().dump(2) + "\n", out);
      for (const auto& c : report.checks)
        if (!c.pass && !c.known_defect)
          std::cerr << fmt::format("FAIL {}: got {:.17g}, target {:.17g}, tolerance {:.3g}\n",
                                   c.check, c.got, c.target, c.tolerance);
      return report.passed() ? kOk : kVerifyFailed;
    }
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ConvergenceError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  } catch (const OverflowError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  }
  return kOk;
}
