#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "lagspec/autocorr.hpp"
#include "lagspec/convergence.hpp"
#include "lagspec/errors.hpp"
#include "lagspec/hs_operator.hpp"
#include "lagspec/io.hpp"
#include "lagspec/koopman.hpp"
#include "lagspec/signal.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitInsufficientData = 3;
constexpr int kExitNumerical = 4;

using nlohmann::json;
using namespace lagspec;

void write_manifest(const std::string& command, const std::vector<std::string>& inputs,
                    const std::vector<std::string>& outputs, const json& config,
                    std::uint64_t seed, double wall_seconds) {
  json manifest{{"command", command}, {"inputs", inputs},       {"outputs", outputs},
                {"config", config},   {"seed", seed},           {"tool_version", kVersion},
                {"wall_clock_seconds", wall_seconds}};
  const std::string path = outputs.front() + ".manifest.json";
  std::ofstream out(path);
  out << manifest.dump(2) << "\n";
}

std::vector<double> parse_ladder(const std::string& text) {
  std::vector<double> ladder;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t next = text.find(',', pos);
    if (next == std::string::npos) next = text.size();
    ladder.push_back(std::stod(text.substr(pos, next - pos)));
    pos = next + 1;
  }
  return ladder;
}

int cmd_generate(const std::string& spec_path, const std::string& out_path) {
  const auto start = std::chrono::steady_clock::now();
  const SignalSpec spec = load_spec(spec_path);
  const TimeSeries ts = synthesize(spec);
  save_timeseries_csv(ts, out_path);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  write_manifest("generate", {spec_path}, {out_path}, spec_to_json(spec), spec.seed, wall);
  std::cout << "wrote " << ts.values.size() << " samples to " << out_path << "\n";
  return kExitOk;
}

int cmd_analyze(const std::optional<std::string>& spec_path,
                const std::optional<std::string>& series_path, bool empirical, double tau,
                Eigen::Index n, int k, const std::string& out_path) {
  const auto start = std::chrono::steady_clock::now();
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  if (n < 1) throw std::invalid_argument("n must be at least 1");
  if (k > n) throw std::invalid_argument("k must not exceed n");
  if (!spec_path && !series_path)
    throw std::invalid_argument("either --spec or --series is required");

  std::vector<std::string> inputs;
  std::uint64_t seed = 0;
  AutocorrTable table = [&] {
    if (series_path) {
      inputs.push_back(*series_path);
      const TimeSeries ts = load_timeseries_csv(*series_path);
      const double grid = tau / static_cast<double>(n);
      const double ratio = grid / ts.sample_step;
      const auto stride = static_cast<Eigen::Index>(std::round(ratio));
      if (stride < 1 || std::abs(ratio - stride) > 1e-9)
        throw std::invalid_argument("series sample step must divide tau/n exactly");
      return estimate_autocorr(ts, (n - 1) * stride);
    }
    inputs.push_back(*spec_path);
    const SignalSpec spec = load_spec(*spec_path);
    seed = spec.seed;
    if (empirical) {
      const TimeSeries ts = synthesize(spec);
      const double grid = tau / static_cast<double>(n);
      const double ratio = grid / spec.sample_step;
      const auto stride = static_cast<Eigen::Index>(std::round(ratio));
      if (stride < 1 || std::abs(ratio - stride) > 1e-9)
        throw std::invalid_argument("spec dt must divide tau/n exactly");
      return estimate_autocorr(ts, (n - 1) * stride);
    }
    return analytic_autocorr(spec, tau / static_cast<double>(n), n);
  }();

  const KernelMatrix kernel = build_kernel(table, tau, n);
  const EigenResult decomposition = eigh(kernel.entries);

  const double nyquist = M_PI / kernel.step;
  json eigenvalues = json::array();
  json alignments = json::array();
  json frequencies = json::array();
  for (int i = 0; i < k; ++i) {
    eigenvalues.push_back(decomposition.eigenvalues[i]);
    const Eigen::VectorXcd v = decomposition.eigenvectors.col(i);
    const double freq =
        estimate_frequency(v, kernel.step, FrequencyBand{-nyquist * (1.0 - 1e-9), nyquist});
    frequencies.push_back(freq);
    alignments.push_back(alignment(v, freq, kernel.step));
  }

  json result{{"tau", tau},
              {"n", n},
              {"eigenvalues", eigenvalues},
              {"alignments", alignments},
              {"frequencies", frequencies}};
  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot open for writing: " + out_path);
  out << result.dump(2) << "\n";

  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  write_manifest("analyze", inputs, {out_path},
                 json{{"tau", tau}, {"n", n}, {"k", k}, {"empirical", empirical || series_path.has_value()}},
                 seed, wall);
  std::cout << result.dump(2) << "\n";
  return kExitOk;
}

int cmd_sweep(const std::string& spec_path, const std::string& ladder_text, double dt, int k,
              bool with_oracle, bool empirical, const std::string& out_path) {
  const auto start = std::chrono::steady_clock::now();
  const SignalSpec spec = load_spec(spec_path);

  SweepConfig config;
  config.tau_ladder = parse_ladder(ladder_text);
  config.step = dt > 0.0 ? dt : default_grid_step(spec);
  config.k = k;
  config.with_oracle = with_oracle;

  const ConvergenceReport report = empirical
                                       ? sweep_empirical(spec, synthesize(spec), config)
                                       : sweep_analytic(spec, config);

  const std::string json_path = out_path + ".json";
  const std::string csv_path = out_path + ".csv";
  save_report_json(report, json_path);
  save_report_csv(report, csv_path);

  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  write_manifest("sweep", {spec_path}, {json_path, csv_path},
                 json{{"ladder", config.tau_ladder},
                      {"dt", config.step},
                      {"k", config.k},
                      {"oracle", with_oracle},
                      {"empirical", empirical}},
                 spec.seed, wall);
  for (const auto& row : report.rows)
    std::cout << "tau=" << row.tau << "  lambda_1=" << row.lambda.front()
              << "  sup_error=" << row.sup_error << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral analysis of the autocorrelation lag-kernel operator"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  auto* generate = app.add_subcommand("generate", "Synthesize a time series from a spec JSON");
  std::string gen_spec, gen_out;
  generate->add_option("--spec", gen_spec, "SignalSpec JSON path")->required();
  generate->add_option("--out", gen_out, "Output CSV path")->required();

  auto* analyze = app.add_subcommand("analyze", "Eigenvalues and mode frequencies at one tau");
  std::string an_spec, an_series, an_out = "analysis.json";
  double an_tau = 0.0;
  Eigen::Index an_n = 0;
  int an_k = 5;
  bool an_empirical = false, an_analytic = false;
  analyze->add_option("--spec", an_spec, "SignalSpec JSON path");
  analyze->add_option("--series", an_series, "Time series CSV path");
  analyze->add_option("--tau", an_tau, "Window length tau")->required();
  analyze->add_option("--n", an_n, "Kernel dimension N (grid step = tau/N)")->required();
  analyze->add_option("--k", an_k, "Eigenpairs reported (default 5)");
  analyze->add_option("--out", an_out, "Output JSON path (default analysis.json)");
  analyze->add_flag("--empirical", an_empirical, "Estimate the lag table from a synthesized path");
  analyze->add_flag("--analytic", an_analytic, "Use the closed-form lag table (default with --spec)");

  auto* sweep = app.add_subcommand("sweep", "tau ladder convergence report");
  std::string sw_spec, sw_ladder, sw_out = "report";
  double sw_dt = 0.0;
  int sw_k = 2;
  bool sw_oracle = false, sw_empirical = false, sw_analytic = false;
  sweep->add_option("--spec", sw_spec, "SignalSpec JSON path")->required();
  sweep->add_option("--ladder", sw_ladder, "Comma-separated ascending tau values")->required();
  sweep->add_option("--dt", sw_dt, "Grid step (default: min(0.1, pi/(4 max|x|)))");
  sweep->add_option("--k", sw_k, "Eigenvalues tracked (default 2)");
  sweep->add_option("--out", sw_out, "Output basename; writes <out>.json and <out>.csv");
  sweep->add_flag("--oracle", sw_oracle, "Attach Gram-oracle eigenvalue columns");
  sweep->add_flag("--empirical", sw_empirical, "Estimate lag table from a synthesized path");
  sweep->add_flag("--analytic", sw_analytic, "Use the closed-form lag table (default)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return kExitValidation;
  }

  try {
    if (generate->parsed()) return cmd_generate(gen_spec, gen_out);
    if (analyze->parsed()) {
      if (an_empirical && an_analytic)
        throw std::invalid_argument("--empirical and --analytic are mutually exclusive");
      return cmd_analyze(an_spec.empty() ? std::nullopt : std::optional<std::string>(an_spec),
                         an_series.empty() ? std::nullopt : std::optional<std::string>(an_series),
                         an_empirical, an_tau, an_n, an_k, an_out);
    }
    if (sweep->parsed()) {
      if (sw_empirical && sw_analytic)
        throw std::invalid_argument("--empirical and --analytic are mutually exclusive");
      return cmd_sweep(sw_spec, sw_ladder, sw_dt, sw_k, sw_oracle, sw_empirical, sw_out);
    }
  } catch (const InsufficientDataError& e) {
    std::cerr << "error (insufficient data): " << e.what() << "\n";
    return kExitInsufficientData;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error (invalid input): " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error (numerical): " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitOk;
}
