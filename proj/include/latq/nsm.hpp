#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "latq/lattice.hpp"
#include "latq/quantize.hpp"
#include "latq/rng.hpp"

// Monte Carlo NSM estimation: uniform samples on the fundamental
// parallelepiped, squared quantization error through the fast decoders, and
// a grouped-means standard error. The sample stream is counter-based, so
// the result is a pure function of (descriptor, T, g, seed) no matter how
// many workers share the load.

namespace latq {

struct SamplerConfig {
  long long samples = 1'000'000;  // T = g * h
  int groups = 50;                // g
  std::uint64_t seed = 0;
  int workers = 0;  // 0 = hardware default

  long long per_group() const;  // h
  void validate() const;
};

struct NsmEstimate {
  double g_hat = 0.0;    // NSM estimate: i_hat / (n Vol^(1+2/n))
  double sigma_hat = 0.0;
  double i_hat = 0.0;    // second-moment integral over the Voronoi region
  double volume = 0.0;
  int n = 0;
  SamplerConfig config;

  double ci_low() const { return g_hat - 2.0 * sigma_hat; }
  double ci_high() const { return g_hat + 2.0 * sigma_hat; }
};

// y = B u, uniform over the fundamental parallelepiped when u is uniform
// over [0,1)^n.
Eigen::VectorXd sample_point(const Descriptor& d, std::span<const double> u);

NsmEstimate estimate_nsm(const Descriptor& d, const SamplerConfig& cfg);

// Core estimator over an arbitrary basis and error functional; exposed so
// properties like scale invariance can be tested directly.
template <class SqErrFn>
NsmEstimate estimate_nsm_basis(const Eigen::MatrixXd& basis, double volume,
                               SqErrFn&& sq_err, const SamplerConfig& cfg);

// NSM of the product lattice with one optimally scaled integer coordinate,
// from the NSM of the even-dimensional base: g^(2m/(2m+1)) * 12^(-1/(2m+1)).
double product_nsm_analytic(double g_2m, int m);
// Same formula for a base of any real dimension n.
double product_nsm_analytic_dim(double g_n, int n);

// One row of the built-in reference table of best reported quantizers.
struct TableRow {
  int n;
  double best_prev_nsm;
  const char* best_prev_name;
  double lower_bound;
  double upper_bound;
  double proposed_nsm;        // 0 when no proposed lattice exists for n
  const char* proposed_name;  // grammar name, "" when absent
  bool better_than_reported;
};

std::span<const TableRow> table1_reference();
const TableRow* table1_row(int n);

}  // namespace latq

#include "latq/nsm_impl.hpp"
