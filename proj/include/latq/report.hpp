#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "latq/nsm.hpp"
#include "latq/oracle.hpp"

// Run descriptions shared by the CLI and the integration tests. The JSON
// report keeps every deterministic quantity under "report" and everything
// run-dependent (wall time, worker count) under "execution", so two runs
// with the same inputs and seed serialize the report bytes identically.

namespace latq {

struct RunReport {
  std::string lattice;
  Descriptor descriptor;
  NsmEstimate estimate;
  const TableRow* reference = nullptr;  // matching reference row, if any
  // Present for product (xZ) runs: the base measurement behind the scale a,
  // and the analytic prediction for the extended lattice.
  std::optional<NsmEstimate> base_estimate;
  std::optional<double> product_a;
  std::optional<double> analytic_g_hat;
  double wall_seconds = 0.0;
};

// Resolves a grammar name (measuring the base lattice first for xZ names)
// and runs the estimator.
RunReport run_nsm(const std::string& name, const SamplerConfig& cfg);

nlohmann::ordered_json report_json(const RunReport& r);
std::string report_text(const RunReport& r);
std::string report_csv(const RunReport& r);  // header line + one data row

struct CvpReport {
  std::string lattice;
  std::vector<double> input;
  QuantizeResult result;
};

CvpReport run_cvp(const std::string& name, std::vector<double> input);
nlohmann::ordered_json cvp_json(const CvpReport& r);
std::string cvp_text(const CvpReport& r);

struct TableRunRow {
  int n = 0;
  std::string lattice;
  double g_hat = 0.0;
  double sigma_hat = 0.0;
  double paper_value = 0.0;
  double abs_delta = 0.0;
  bool pass = false;
};

// Reference-table reproduction for n = 2..24: even rows measured with the
// fast decoders, odd rows derived through the analytic product formula from
// the measured even-dimensional value.
std::vector<TableRunRow> run_table(const SamplerConfig& cfg);
std::string table_csv(const std::vector<TableRunRow>& rows);

nlohmann::ordered_json equivalence_json(const std::string& name_a,
                                        const std::string& name_b,
                                        const EquivalenceReport& rep);
std::string equivalence_text(const std::string& name_a, const std::string& name_b,
                             const EquivalenceReport& rep);

// Resolves a lattice name or a reference-basis name to a realized basis.
RealBasis resolve_basis(const std::string& name);

}  // namespace latq
