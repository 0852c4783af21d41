#pragma once

#include <Eigen/Dense>
#include <vector>

#include "latq/lattice.hpp"

// Ground-truth machinery: exhaustive closest-vector search on arbitrary
// real bases, short-vector enumeration for theta-series prefixes, and
// numerical equivalence reports. Everything here is exponential in the
// dimension and guarded at n <= 16; it exists to check the fast decoders,
// not to replace them.

namespace latq {

struct CvpResult {
  Eigen::VectorXd point;
  double squared_distance = 0.0;
};

// Exact closest lattice point by depth-first enumeration; the radius starts
// at the Babai rounding candidate and shrinks on every improvement, so the
// search is exhaustive within the final radius.
CvpResult cvp_bruteforce(const RealBasis& basis, const Eigen::VectorXd& y);

struct ThetaShell {
  double sq_norm = 0.0;
  long long count = 0;  // includes both signs of every vector
};

// All nonzero lattice vectors with squared norm <= max_sq_norm, aggregated
// into ascending (norm, multiplicity) shells.
std::vector<ThetaShell> short_vectors(const RealBasis& basis, double max_sq_norm);

// Smallest nonzero squared norm.
double minimal_sq_norm(const RealBasis& basis);

struct EquivalenceReport {
  double volume_ratio = 1.0;
  double min_sq_norm_a = 0.0, min_sq_norm_b = 0.0;  // after unit-volume scaling
  long long kissing_a = 0, kissing_b = 0;
  std::vector<ThetaShell> theta_a, theta_b;  // prefix up to 3x the minimal norm
  bool consistent = false;
};

// Necessary-condition evidence for lattice equivalence: both bases are
// scaled to unit volume, then minimal norm, kissing number and the theta
// prefix must agree. A consistent verdict is evidence, not a certificate.
EquivalenceReport check_equivalence(const RealBasis& a, const RealBasis& b);
EquivalenceReport check_equivalence(const Descriptor& a, const Descriptor& b);

}  // namespace latq
