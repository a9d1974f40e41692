#ifndef LAGSPEC_IO_HPP
#define LAGSPEC_IO_HPP

#include <string>

#include <nlohmann/json_fwd.hpp>

#include "lagspec/autocorr.hpp"
#include "lagspec/convergence.hpp"
#include "lagspec/hs_operator.hpp"
#include "lagspec/signal.hpp"

namespace lagspec {

// SignalSpec <-> JSON
// { "modes": [{"re":..,"im":..,"freq":..}], "continuous": {..}, "transient": {..},
//   "dt":.., "T":.., "seed":.. }
nlohmann::json spec_to_json(const SignalSpec& spec);
SignalSpec spec_from_json(const nlohmann::json& j);
SignalSpec load_spec(const std::string& path);
void save_spec(const SignalSpec& spec, const std::string& path);

/// FNV-1a hash of the canonical JSON dump, as a hex string.
std::string spec_hash(const SignalSpec& spec);

// TimeSeries <-> CSV with header "t,re,im", 17 significant digits.
void save_timeseries_csv(const TimeSeries& ts, const std::string& path);
TimeSeries load_timeseries_csv(const std::string& path);

// AutocorrTable <-> CSV "lag,re,im" plus a JSON sidecar (<path>.meta.json)
// holding { "lag_step":.., "provenance":.., "t_used":.. }.
void save_autocorr_csv(const AutocorrTable& table, const std::string& path);
AutocorrTable load_autocorr_csv(const std::string& path);

// ConvergenceReport as JSON and as a flat CSV
// "tau,lambda_1..k,truth_1..k[,oracle_1..k],sup_error".
nlohmann::json report_to_json(const ConvergenceReport& report);
void save_report_json(const ConvergenceReport& report, const std::string& path);
void save_report_csv(const ConvergenceReport& report, const std::string& path);

// KernelMatrix debug export: row-major re/im pairs.
nlohmann::json kernel_to_json(const KernelMatrix& kernel);

}  // namespace lagspec

#endif
