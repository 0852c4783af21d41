#pragma once

#include <span>
#include <vector>

#include "latq/lattice.hpp"
#include "latq/ring.hpp"

// Fast closest-vector decoders for the checkerboard families: component
// rounding plus a bounded unit-perturbation repair for E_m and G_m, coset
// enumeration on top of those for the + families and the K-type, and the
// standard decoders for Z^n / D_n. Every decoder reports the number of full
// candidate vectors whose distance it evaluated.

namespace latq {

// Exact closest point of E_m (resp. G_m) in ring coordinates.
template <class Ring>
struct RingQuantizeResult {
  std::vector<Ring> point;
  double squared_error = 0.0;
  long long visited = 0;
};

RingQuantizeResult<Eisenstein> quantize_em(std::span<const Complex> y);
RingQuantizeResult<Gaussian> quantize_gm(std::span<const Complex> y);

// Closest point of a coset union: the base decoder runs once per shift on
// the translated input, the nearest result wins (smallest shift index on
// ties). base_point is exact; the lattice point is embed(base) + shift.
template <class Ring>
struct CosetQuantizeResult {
  std::vector<Ring> base_point;
  int shift_index = 0;
  double squared_error = 0.0;
  long long visited = 0;
};

template <class Ring>
CosetQuantizeResult<Ring> quantize_coset_union(std::span<const Complex> y,
                                               const CosetDecomposition& dec);

// Realized-domain result for the real-native and dispatched decoders.
struct QuantizeResult {
  std::vector<double> point;
  double squared_error = 0.0;
  long long visited = 0;
};

QuantizeResult quantize_zn(std::span<const double> y);
QuantizeResult quantize_dn(std::span<const double> y);

// One extra coordinate on a*Z appended to the inner lattice.
QuantizeResult quantize_product(std::span<const double> y, const Descriptor& d);

// Universal entry point: de-interleaves into the complex domain for the
// complex families and returns the realized closest point.
QuantizeResult quantize_real(std::span<const double> y, const Descriptor& d);

// Prepared decoder bound to one descriptor; precomputes the coset shifts so
// repeated calls stay allocation-light.
class Quantizer {
 public:
  explicit Quantizer(const Descriptor& d);

  QuantizeResult operator()(std::span<const double> y) const;
  // Error-only fast path used by the Monte Carlo estimator.
  double squared_error(std::span<const double> y) const;

  const Descriptor& descriptor() const { return desc_; }

 private:
  Descriptor desc_;
  Descriptor inner_;  // desc_ without the product coordinate
  CosetDecomposition dec_;
  bool coset_ = false;
};

}  // namespace latq
