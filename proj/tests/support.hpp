#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "latq/lattice.hpp"
#include "latq/rng.hpp"

// Shared input generators for the seeded property tests.

namespace latq::testing {

inline Complex random_complex(CounterRng& rng, double box) {
  return {rng.next_in(-box, box), rng.next_in(-box, box)};
}

inline ComplexVector random_complex_vector(CounterRng& rng, int m, double box) {
  ComplexVector v(static_cast<std::size_t>(m));
  for (auto& z : v) z = random_complex(rng, box);
  return v;
}

inline std::vector<double> random_real_vector(CounterRng& rng, int n, double box) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (auto& x : v) x = rng.next_in(-box, box);
  return v;
}

// Uniform sample on the fundamental parallelepiped of a basis.
inline Eigen::VectorXd random_in_parallelepiped(CounterRng& rng, const Eigen::MatrixXd& basis) {
  Eigen::VectorXd u(basis.cols());
  for (Eigen::Index k = 0; k < u.size(); ++k) u[k] = rng.next_unit();
  return basis * u;
}

// Random lattice point with small integer coefficients.
inline Eigen::VectorXd random_lattice_point(CounterRng& rng, const Eigen::MatrixXd& basis,
                                            std::int64_t coeff_box) {
  Eigen::VectorXd z(basis.cols());
  for (Eigen::Index k = 0; k < z.size(); ++k)
    z[k] = static_cast<double>(rng.next_int(-coeff_box, coeff_box));
  return basis * z;
}

inline Eisenstein random_eisenstein(CounterRng& rng, std::int64_t box) {
  return {rng.next_int(-box, box), rng.next_int(-box, box)};
}

inline Gaussian random_gaussian(CounterRng& rng, std::int64_t box) {
  return {rng.next_int(-box, box), rng.next_int(-box, box)};
}

// Exact divisibility of x by d in the respective ring.
inline bool divides_eisenstein(Eisenstein d, Eisenstein x) {
  const auto n = d.norm();
  const Eisenstein p = x * d.conj();
  return n != 0 && p.a % n == 0 && p.b % n == 0;
}

inline bool divides_gaussian(Gaussian d, Gaussian x) {
  const auto n = d.norm();
  const Gaussian p = x * d.conj();
  return n != 0 && p.a % n == 0 && p.b % n == 0;
}

}  // namespace latq::testing
