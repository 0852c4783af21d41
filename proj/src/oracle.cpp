#include "latq/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>

namespace latq {

namespace {

constexpr int kMaxDim = 16;

// Upper-triangular factor with positive diagonal, so the enumeration tree
// is well ordered.
Eigen::MatrixXd upper_factor(const RealBasis& basis, Eigen::MatrixXd* q_out) {
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(basis);
  Eigen::MatrixXd q = qr.householderQ();
  Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int k = 0; k < r.rows(); ++k) {
    if (r(k, k) < 0.0) {
      r.row(k) = -r.row(k);
      q.col(k) = -q.col(k);
    }
    if (r(k, k) == 0.0) throw std::invalid_argument("singular basis");
  }
  if (q_out) *q_out = q;
  return r;
}

// Depth-first Schnorr-Euchner walk over integer coefficient vectors z with
// ||R z - target||^2 <= bound(). Children at each level are visited in
// nondecreasing distance-to-center order, so a level can cut off as soon as
// one child exceeds the bound.
template <class Visit>
void enumerate_tree(const Eigen::MatrixXd& r, const Eigen::VectorXd& target,
                    const std::function<double()>& bound, Visit visit) {
  const int n = static_cast<int>(r.rows());
  Eigen::VectorXi z = Eigen::VectorXi::Zero(n);
  std::vector<double> partial(static_cast<std::size_t>(n) + 1, 0.0);

  struct Level {
    std::int64_t center_round = 0;
    int step = 0;          // 0, 1, -1, 2, -2, ... offsets visited so far
    double center = 0.0;
  };
  std::vector<Level> lv(static_cast<std::size_t>(n));

  int k = n - 1;
  bool descending = true;
  while (k < n) {
    auto& l = lv[static_cast<std::size_t>(k)];
    if (descending) {
      double dot = 0.0;
      for (int j = k + 1; j < n; ++j) dot += r(k, j) * z[j];
      l.center = (target[k] - dot) / r(k, k);
      l.center_round = std::llround(l.center);
      l.step = 0;
    }

    bool advanced = false;
    while (true) {
      // Zig-zag offset sequence around the rounded center.
      const int s = l.step;
      std::int64_t offset;
      if (s == 0) offset = 0;
      else {
        const int half = (s + 1) / 2;
        const bool toward = (s % 2) == 1;  // first move toward the center side
        const double frac = l.center - static_cast<double>(l.center_round);
        const int dir = frac >= 0.0 ? 1 : -1;
        offset = static_cast<std::int64_t>(toward ? dir * half : -dir * half);
      }
      ++l.step;
      const std::int64_t zk = l.center_round + offset;
      const double diff = (static_cast<double>(zk) - l.center) * r(k, k);
      const double dist = partial[static_cast<std::size_t>(k) + 1] + diff * diff;
      if (dist > bound()) {
        // Distances are nondecreasing along the zig-zag; after both sides
        // exceeded the bound the level is exhausted.
        if (s == 0 || s % 2 == 0) break;
        continue;
      }
      z[k] = static_cast<int>(zk);
      partial[static_cast<std::size_t>(k)] = dist;
      advanced = true;
      break;
    }

    if (!advanced) {
      ++k;  // backtrack
      descending = false;
      continue;
    }
    if (k == 0) {
      visit(z, partial[0]);
      descending = false;  // stay on this level, try the next sibling
    } else {
      --k;
      descending = true;
    }
  }
}

}  // namespace

CvpResult cvp_bruteforce(const RealBasis& basis, const Eigen::VectorXd& y) {
  const int n = static_cast<int>(basis.rows());
  if (n > kMaxDim) throw std::invalid_argument("cvp_bruteforce: dimension over ceiling");
  if (basis.cols() != n || y.size() != n)
    throw std::invalid_argument("cvp_bruteforce: shape mismatch");

  Eigen::MatrixXd q;
  const Eigen::MatrixXd r = upper_factor(basis, &q);
  const Eigen::VectorXd target = q.transpose() * y;

  // Babai rounding seeds the radius; a small slack keeps ties inside.
  Eigen::VectorXd zr = r.triangularView<Eigen::Upper>().solve(target);
  Eigen::VectorXi z0(n);
  for (int k = 0; k < n; ++k) z0[k] = static_cast<int>(std::llround(zr[k]));
  Eigen::VectorXi best_z = z0;
  double best = (basis * z0.cast<double>() - y).squaredNorm();

  const double slack = 1e-9 * (1.0 + best);
  enumerate_tree(r, target, [&] { return best + slack; },
                 [&](const Eigen::VectorXi& z, double) {
                   const double d = (basis * z.cast<double>() - y).squaredNorm();
                   if (d < best) {
                     best = d;
                     best_z = z;
                   }
                 });

  return {basis * best_z.cast<double>(), best};
}

std::vector<ThetaShell> short_vectors(const RealBasis& basis, double max_sq_norm) {
  const int n = static_cast<int>(basis.rows());
  if (n > kMaxDim) throw std::invalid_argument("short_vectors: dimension over ceiling");
  if (basis.cols() != n) throw std::invalid_argument("short_vectors: shape mismatch");
  if (!(max_sq_norm > 0.0)) return {};

  const Eigen::MatrixXd r = upper_factor(basis, nullptr);
  const Eigen::VectorXd target = Eigen::VectorXd::Zero(n);
  std::vector<double> norms;
  enumerate_tree(r, target, [&] { return max_sq_norm * (1.0 + 1e-12) + 1e-12; },
                 [&](const Eigen::VectorXi& z, double) {
                   if (z.isZero()) return;
                   const double d = (basis * z.cast<double>()).squaredNorm();
                   if (d <= max_sq_norm * (1.0 + 1e-9)) norms.push_back(d);
                 });
  std::sort(norms.begin(), norms.end());

  std::vector<ThetaShell> shells;
  for (double d : norms) {
    if (!shells.empty() &&
        d - shells.back().sq_norm <= 1e-6 * std::max(1.0, d)) {
      ++shells.back().count;
    } else {
      shells.push_back({d, 1});
    }
  }
  return shells;
}

double minimal_sq_norm(const RealBasis& basis) {
  double cap = basis.colwise().squaredNorm().minCoeff();
  const auto shells = short_vectors(basis, cap);
  if (shells.empty()) throw std::logic_error("minimal_sq_norm: no vector under column cap");
  return shells.front().sq_norm;
}

EquivalenceReport check_equivalence(const RealBasis& a, const RealBasis& b) {
  if (a.rows() != b.rows())
    throw std::invalid_argument("check_equivalence: dimension mismatch");
  const int n = static_cast<int>(a.rows());
  if (n > kMaxDim) throw std::invalid_argument("check_equivalence: dimension over ceiling");

  const double vol_a = std::abs(a.determinant());
  const double vol_b = std::abs(b.determinant());
  const RealBasis na = a / std::pow(vol_a, 1.0 / n);
  const RealBasis nb = b / std::pow(vol_b, 1.0 / n);

  EquivalenceReport rep;
  rep.volume_ratio = vol_a / vol_b;
  rep.min_sq_norm_a = minimal_sq_norm(na);
  rep.min_sq_norm_b = minimal_sq_norm(nb);
  rep.theta_a = short_vectors(na, 3.0 * rep.min_sq_norm_a);
  rep.theta_b = short_vectors(nb, 3.0 * rep.min_sq_norm_a);
  rep.kissing_a = rep.theta_a.empty() ? 0 : rep.theta_a.front().count;
  rep.kissing_b = rep.theta_b.empty() ? 0 : rep.theta_b.front().count;

  rep.consistent =
      std::abs(rep.min_sq_norm_a - rep.min_sq_norm_b) <= 1e-6 * std::max(1.0, rep.min_sq_norm_a) &&
      rep.theta_a.size() == rep.theta_b.size();
  if (rep.consistent) {
    for (std::size_t s = 0; s < rep.theta_a.size(); ++s) {
      if (rep.theta_a[s].count != rep.theta_b[s].count ||
          std::abs(rep.theta_a[s].sq_norm - rep.theta_b[s].sq_norm) >
              1e-6 * std::max(1.0, rep.theta_a[s].sq_norm)) {
        rep.consistent = false;
        break;
      }
    }
  }
  return rep;
}

EquivalenceReport check_equivalence(const Descriptor& a, const Descriptor& b) {
  return check_equivalence(realize(a), realize(b));
}

}  // namespace latq
