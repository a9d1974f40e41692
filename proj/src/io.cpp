#include "lagspec/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace lagspec {

using nlohmann::json;

namespace {

std::string fmt17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double require_number(const json& j, const char* field) {
  if (!j.contains(field) || !j[field].is_number())
    throw std::invalid_argument(std::string("missing or non-numeric field: ") + field);
  return j[field].get<double>();
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  return in;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  return out;
}

}  // namespace

json spec_to_json(const SignalSpec& spec) {
  json modes = json::array();
  for (const auto& m : spec.modes) {
    modes.push_back({{"re", m.amplitude.real()}, {"im", m.amplitude.imag()}, {"freq", m.frequency}});
  }
  json continuous;
  switch (spec.continuous.kind) {
    case ContinuousComponentSpec::Kind::none:
      continuous = {{"kind", "none"}};
      break;
    case ContinuousComponentSpec::Kind::ornstein_uhlenbeck:
      continuous = {{"kind", "ornstein_uhlenbeck"},
                    {"sigma", spec.continuous.sigma},
                    {"theta", spec.continuous.theta}};
      break;
    case ContinuousComponentSpec::Kind::white:
      continuous = {{"kind", "white"}, {"sigma", spec.continuous.sigma}};
      break;
  }
  json transient;
  switch (spec.transient.kind) {
    case TransientKernelSpec::Kind::none:
      transient = {{"kind", "none"}};
      break;
    case TransientKernelSpec::Kind::exponential:
      transient = {{"kind", "exponential"}, {"c", spec.transient.scale}, {"rate", spec.transient.rate}};
      break;
  }
  return json{{"modes", modes},      {"continuous", continuous}, {"transient", transient},
              {"dt", spec.sample_step}, {"T", spec.duration},    {"seed", spec.seed}};
}

SignalSpec spec_from_json(const json& j) {
  SignalSpec spec;
  if (!j.contains("modes") || !j["modes"].is_array())
    throw std::invalid_argument("missing or malformed field: modes");
  for (const auto& m : j["modes"]) {
    DiscreteMode mode;
    mode.amplitude = Complex(require_number(m, "re"), require_number(m, "im"));
    mode.frequency = require_number(m, "freq");
    spec.modes.push_back(mode);
  }
  if (j.contains("continuous") && !j["continuous"].is_null()) {
    const auto& c = j["continuous"];
    const std::string kind = c.value("kind", "none");
    if (kind == "ornstein_uhlenbeck") {
      spec.continuous.kind = ContinuousComponentSpec::Kind::ornstein_uhlenbeck;
      spec.continuous.sigma = require_number(c, "sigma");
      spec.continuous.theta = require_number(c, "theta");
    } else if (kind == "white") {
      spec.continuous.kind = ContinuousComponentSpec::Kind::white;
      spec.continuous.sigma = require_number(c, "sigma");
    } else if (kind != "none") {
      throw std::invalid_argument("continuous.kind must be none, ornstein_uhlenbeck, or white");
    }
  }
  if (j.contains("transient") && !j["transient"].is_null()) {
    const auto& t = j["transient"];
    const std::string kind = t.value("kind", "none");
    if (kind == "exponential") {
      spec.transient.kind = TransientKernelSpec::Kind::exponential;
      spec.transient.scale = require_number(t, "c");
      spec.transient.rate = require_number(t, "rate");
    } else if (kind != "none") {
      throw std::invalid_argument("transient.kind must be none or exponential");
    }
  }
  spec.sample_step = require_number(j, "dt");
  spec.duration = require_number(j, "T");
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned())
      throw std::invalid_argument("seed must be a nonnegative integer");
    spec.seed = j["seed"].get<std::uint64_t>();
  }
  validate(spec);
  return spec;
}

SignalSpec load_spec(const std::string& path) {
  auto in = open_input(path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("malformed JSON in " + path + ": " + e.what());
  }
  return spec_from_json(j);
}

void save_spec(const SignalSpec& spec, const std::string& path) {
  auto out = open_output(path);
  out << spec_to_json(spec).dump(2) << "\n";
}

std::string spec_hash(const SignalSpec& spec) {
  const std::string dump = spec_to_json(spec).dump();
  std::uint64_t h = 1469598103934665603ull;  // FNV-1a
  for (unsigned char c : dump) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void save_timeseries_csv(const TimeSeries& ts, const std::string& path) {
  auto out = open_output(path);
  out << "t,re,im\n";
  for (Eigen::Index i = 0; i < ts.values.size(); ++i) {
    const double t = static_cast<double>(i) * ts.sample_step;
    out << fmt17(t) << ',' << fmt17(ts.values[i].real()) << ',' << fmt17(ts.values[i].imag())
        << '\n';
  }
}

TimeSeries load_timeseries_csv(const std::string& path) {
  auto in = open_input(path);
  std::string line;
  if (!std::getline(in, line) || line.rfind("t,re,im", 0) != 0)
    throw std::invalid_argument("time series CSV must start with header t,re,im");

  std::vector<double> times;
  std::vector<Complex> values;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    double t, re, im;
    if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &t, &re, &im) != 3)
      throw std::invalid_argument("malformed CSV row: " + line);
    times.push_back(t);
    values.emplace_back(re, im);
  }
  if (values.size() < 2) throw std::invalid_argument("time series must hold at least 2 samples");
  const double dt = times[1] - times[0];
  if (!(dt > 0.0)) throw std::invalid_argument("time column must be strictly increasing");
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (std::abs(times[i] - times[0] - static_cast<double>(i) * dt) > 1e-9 * std::max(1.0, times.back()))
      throw std::invalid_argument("time series must be uniformly sampled");
  }
  TimeSeries ts;
  ts.sample_step = dt;
  ts.values = Eigen::Map<const Eigen::VectorXcd>(values.data(), static_cast<Eigen::Index>(values.size()));
  return ts;
}

void save_autocorr_csv(const AutocorrTable& table, const std::string& path) {
  auto out = open_output(path);
  out << "lag,re,im\n";
  for (Eigen::Index k = 0; k < table.size(); ++k) {
    const double lag = static_cast<double>(k) * table.lag_step;
    out << fmt17(lag) << ',' << fmt17(table.values[k].real()) << ','
        << fmt17(table.values[k].imag()) << '\n';
  }
  json meta{{"lag_step", table.lag_step},
            {"provenance",
             table.provenance == AutocorrTable::Provenance::analytic ? "analytic" : "empirical"}};
  if (table.provenance == AutocorrTable::Provenance::empirical) meta["t_used"] = table.t_used;
  auto side = open_output(path + ".meta.json");
  side << meta.dump(2) << "\n";
}

AutocorrTable load_autocorr_csv(const std::string& path) {
  auto meta_in = open_input(path + ".meta.json");
  json meta;
  meta_in >> meta;
  const double lag_step = require_number(meta, "lag_step");
  const std::string prov = meta.value("provenance", "analytic");
  const double t_used = meta.value("t_used", 0.0);

  auto in = open_input(path);
  std::string line;
  if (!std::getline(in, line) || line.rfind("lag,re,im", 0) != 0)
    throw std::invalid_argument("autocorr CSV must start with header lag,re,im");
  std::vector<Complex> values;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    double lag, re, im;
    if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &lag, &re, &im) != 3)
      throw std::invalid_argument("malformed CSV row: " + line);
    values.emplace_back(re, im);
  }
  Eigen::VectorXcd v =
      Eigen::Map<const Eigen::VectorXcd>(values.data(), static_cast<Eigen::Index>(values.size()));
  return make_autocorr_table(lag_step, std::move(v),
                             prov == "empirical" ? AutocorrTable::Provenance::empirical
                                                 : AutocorrTable::Provenance::analytic,
                             t_used);
}

json report_to_json(const ConvergenceReport& report) {
  json rows = json::array();
  for (const auto& row : report.rows) {
    json r{{"tau", row.tau}, {"lambda", row.lambda}, {"truth", row.truth},
           {"sup_error", row.sup_error}};
    if (!row.oracle.empty()) r["oracle"] = row.oracle;
    rows.push_back(std::move(r));
  }
  json j{{"rows", rows},
         {"metadata",
          {{"spec_hash", report.spec_hash},
           {"seed", report.seed},
           {"step", report.step},
           {"created_at", report.created_at}}}};
  if (report.decay)
    j["decay"] = {{"exponent", report.decay->exponent}, {"r2", report.decay->r2}};
  return j;
}

void save_report_json(const ConvergenceReport& report, const std::string& path) {
  auto out = open_output(path);
  out << report_to_json(report).dump(2) << "\n";
}

void save_report_csv(const ConvergenceReport& report, const std::string& path) {
  auto out = open_output(path);
  const std::size_t k = report.rows.empty() ? 0 : report.rows.front().lambda.size();
  const bool oracle = !report.rows.empty() && !report.rows.front().oracle.empty();
  out << "tau";
  for (std::size_t i = 1; i <= k; ++i) out << ",lambda_" << i;
  for (std::size_t i = 1; i <= k; ++i) out << ",truth_" << i;
  if (oracle)
    for (std::size_t i = 1; i <= k; ++i) out << ",oracle_" << i;
  out << ",sup_error\n";
  for (const auto& row : report.rows) {
    out << fmt17(row.tau);
    for (double v : row.lambda) out << ',' << fmt17(v);
    for (double v : row.truth) out << ',' << fmt17(v);
    if (oracle)
      for (double v : row.oracle) out << ',' << fmt17(v);
    out << ',' << fmt17(row.sup_error) << '\n';
  }
}

json kernel_to_json(const KernelMatrix& kernel) {
  json entries = json::array();
  for (Eigen::Index j = 0; j < kernel.n; ++j) {
    for (Eigen::Index k = 0; k < kernel.n; ++k) {
      entries.push_back(kernel.entries(j, k).real());
      entries.push_back(kernel.entries(j, k).imag());
    }
  }
  return json{{"n", kernel.n}, {"step", kernel.step}, {"tau", kernel.tau},
              {"entries_re_im", entries}};
}

}  // namespace lagspec
