#include "latq/nsm.hpp"

#include <cmath>
#include <stdexcept>

namespace latq {

long long SamplerConfig::per_group() const { return samples / groups; }

void SamplerConfig::validate() const {
  if (groups < 2) throw std::invalid_argument("need at least 2 groups");
  if (samples < groups) throw std::invalid_argument("need at least one sample per group");
  if (samples % groups != 0)
    throw std::invalid_argument("samples must be a multiple of groups");
  if (workers < 0) throw std::invalid_argument("workers must be >= 0");
}

Eigen::VectorXd sample_point(const Descriptor& d, std::span<const double> u) {
  const RealBasis basis = realize(d);
  if (u.size() != static_cast<std::size_t>(basis.rows()))
    throw std::invalid_argument("sample_point: dimension mismatch");
  return basis * Eigen::Map<const Eigen::VectorXd>(u.data(), basis.rows());
}

NsmEstimate estimate_nsm(const Descriptor& d, const SamplerConfig& cfg) {
  const RealBasis basis = realize(d);
  const double vol = std::abs(basis.determinant());
  const Quantizer q(d);
  return estimate_nsm_basis(
      basis, vol, [&q](std::span<const double> y) { return q.squared_error(y); }, cfg);
}

double product_nsm_analytic_dim(double g_n, int n) {
  if (!(g_n > 0.0)) throw std::invalid_argument("NSM must be positive");
  if (n < 1) throw std::invalid_argument("base dimension must be >= 1");
  const double nn = static_cast<double>(n);
  return std::pow(g_n, nn / (nn + 1.0)) * std::pow(12.0, -1.0 / (nn + 1.0));
}

double product_nsm_analytic(double g_2m, int m) {
  return product_nsm_analytic_dim(g_2m, 2 * m);
}

namespace {

// Best reported lattice quantizers in dimensions 1..24: previously
// published value, generic lower/upper bounds, and the checkerboard-family
// value with its grammar name.
constexpr TableRow kTable[] = {
    {1, 0.083333333, "Z", 0.083333333, 0.500000000, 0.0, "", false},
    {2, 0.080187537, "A2", 0.080187537, 0.159154943, 0.080187537, "E1", false},
    {3, 0.078543281, "A3*", 0.077874985, 0.115802581, 0.081222715, "E1xZ", false},
    {4, 0.076603235, "D4", 0.076087080, 0.099735570, 0.076603235, "G2", false},
    {5, 0.075625443, "D5*", 0.074654327, 0.091319469, 0.077904301, "G2xZ", false},
    {6, 0.074243697, "E6*", 0.073474906, 0.086084334, 0.074240000, "E3", false},
    {7, 0.073116493, "E7*", 0.072483503, 0.082478806, 0.075480000, "E3xZ", false},
    {8, 0.071682099, "E8", 0.071636064, 0.079824101, 0.071682099, "G4_1i+", false},
    {9, 0.071622594, "AE9", 0.070901661, 0.077775626, 0.072891732, "G4_1i+xZ", false},
    {10, 0.070813818, "D10+", 0.070257874, 0.076139300, 0.071620000, "E5_1w+", false},
    {11, 0.070426259, "A11^3", 0.069688002, 0.074797093, 0.072610000, "E5_1w+xZ", false},
    {12, 0.070095600, "K12", 0.069179323, 0.073672867, 0.070090000, "E6_1w+", false},
    {13, 0.071034583, "K12xZ", 0.068721956, 0.072715163, 0.071030000, "E6_1w+xZ", false},
    {14, 0.071455542, "K12xA2", 0.068308096, 0.071887858, 0.069520000, "E7_2+", true},
    {15, 0.071709124, "K12xA3*", 0.067931488, 0.071164794, 0.070370000, "E7_2+xZ", true},
    {16, 0.068300000, "Lambda16", 0.067587055, 0.070526523, 0.068950000, "E8_2+", false},
    {17, 0.069100000, "Lambda16xZ", 0.067270625, 0.069958259, 0.069720000, "E8_2+xZ", false},
    {18, 0.069530000, "Lambda16xA2", 0.066978741, 0.069448546, 0.068660000, "E9_2+", true},
    {19, 0.069820000, "Lambda16xA3*", 0.066708503, 0.068988355, 0.069360000, "E9_2+xZ", true},
    {20, 0.067690000, "(32,31)", 0.066457468, 0.068570467, 0.068540000, "E10_2+", false},
    {21, 0.068360000, "(32,31)xZ", 0.066223553, 0.068189035, 0.069180000, "E10_2+xZ", false},
    {22, 0.069870000, "Lambda16xE6*", 0.066004976, 0.067839266, 0.068530000, "E11_2+", true},
    {23, 0.069730000, "Lambda16xE7*", 0.065800200, 0.067517194, 0.069120000, "E11_2+xZ", true},
    {24, 0.065770000, "Lambda24", 0.065607893, 0.067219503, 0.068580000, "E12_2+", false},
};

}  // namespace

std::span<const TableRow> table1_reference() { return kTable; }

const TableRow* table1_row(int n) {
  for (const TableRow& row : kTable)
    if (row.n == n) return &row;
  return nullptr;
}

}  // namespace latq
