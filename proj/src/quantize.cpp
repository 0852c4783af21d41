#include "latq/quantize.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace latq {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class Ring>
Ring round_scalar(Complex y);
template <>
Eisenstein round_scalar<Eisenstein>(Complex y) { return round_to_eisenstein(y); }
template <>
Gaussian round_scalar<Gaussian>(Complex y) { return round_to_gaussian(y); }

// Scan for the best single perturbation: at each position the nearest unit
// of the admissible class, then the position with the smallest incremental
// distance (smallest index on ties).
template <class Ring>
struct BestSingle {
  int k = -1;
  Ring unit{};
  double incr = kInf;
};

template <class Ring>
BestSingle<Ring> best_single(std::span<const Complex> y,
                             const std::vector<Ring>& x,
                             std::span<const Ring> units) {
  BestSingle<Ring> best;
  for (int k = 0; k < static_cast<int>(y.size()); ++k) {
    const Complex cur = embed(x[static_cast<std::size_t>(k)]);
    const Ring r = nearest_in_set<Ring>(y[static_cast<std::size_t>(k)] - cur, units);
    const double incr =
        std::norm(embed(x[static_cast<std::size_t>(k)] + r) - y[static_cast<std::size_t>(k)]) -
        std::norm(cur - y[static_cast<std::size_t>(k)]);
    if (incr < best.incr) best = {k, r, incr};
  }
  return best;
}

}  // namespace

RingQuantizeResult<Eisenstein> quantize_em(std::span<const Complex> y) {
  if (y.empty()) throw std::invalid_argument("quantize_em: empty input");
  const auto m = y.size();
  RingQuantizeResult<Eisenstein> out;
  out.point.resize(m);
  Eisenstein sum{0, 0};
  double base_err = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    out.point[k] = round_to_eisenstein(y[k]);
    sum += out.point[k];
    base_err += std::norm(embed(out.point[k]) - y[k]);
  }
  const int res = residue_one_plus_omega(sum);
  if (res == 0) {
    out.squared_error = base_err;
    out.visited = 1;
    return out;
  }

  // The perturbation sum must cancel the residue: class 2 (the units of S2)
  // when the sum sits in the coset of 1, class 1 (S1) when it sits in the
  // coset of w. Two perturbations from the other set reach the same class.
  const std::span<const Eisenstein> single =
      res == 1 ? std::span<const Eisenstein>(kUnitsS2) : std::span<const Eisenstein>(kUnitsS1);
  const std::span<const Eisenstein> twice =
      res == 1 ? std::span<const Eisenstein>(kUnitsS1) : std::span<const Eisenstein>(kUnitsS2);

  const BestSingle<Eisenstein> one = best_single(y, out.point, single);
  if (m == 1) {
    out.point[0] += one.unit;
    out.squared_error = base_err + one.incr;
    out.visited = 2;
    return out;
  }

  // Two smallest incremental distances of the paired class.
  int k1 = -1, k2 = -1;
  Eisenstein r1{}, r2{};
  double l1 = kInf, l2 = kInf;
  for (int k = 0; k < static_cast<int>(m); ++k) {
    const Complex cur = embed(out.point[static_cast<std::size_t>(k)]);
    const Eisenstein r =
        nearest_in_set<Eisenstein>(y[static_cast<std::size_t>(k)] - cur, twice);
    const double incr =
        std::norm(embed(out.point[static_cast<std::size_t>(k)] + r) - y[static_cast<std::size_t>(k)]) -
        std::norm(cur - y[static_cast<std::size_t>(k)]);
    if (incr < l1) {
      l2 = l1; k2 = k1; r2 = r1;
      l1 = incr; k1 = k; r1 = r;
    } else if (incr < l2) {
      l2 = incr; k2 = k; r2 = r;
    }
  }

  const double err_one = base_err + one.incr;
  const double err_two = base_err + l1 + l2;
  if (err_one <= err_two) {
    out.point[static_cast<std::size_t>(one.k)] += one.unit;
    out.squared_error = err_one;
  } else {
    out.point[static_cast<std::size_t>(k1)] += r1;
    out.point[static_cast<std::size_t>(k2)] += r2;
    out.squared_error = err_two;
  }
  out.visited = 3;
  return out;
}

RingQuantizeResult<Gaussian> quantize_gm(std::span<const Complex> y) {
  if (y.empty()) throw std::invalid_argument("quantize_gm: empty input");
  const auto m = y.size();
  RingQuantizeResult<Gaussian> out;
  out.point.resize(m);
  Gaussian sum{0, 0};
  double base_err = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    out.point[k] = round_to_gaussian(y[k]);
    sum += out.point[k];
    base_err += std::norm(embed(out.point[k]) - y[k]);
  }
  if (residue_one_plus_i(sum) == 0) {
    out.squared_error = base_err;
    out.visited = 1;
    return out;
  }
  const BestSingle<Gaussian> one =
      best_single(y, out.point, std::span<const Gaussian>(kGaussianUnits));
  out.point[static_cast<std::size_t>(one.k)] += one.unit;
  out.squared_error = base_err + one.incr;
  out.visited = 2;
  return out;
}

template <class Ring>
CosetQuantizeResult<Ring> quantize_coset_union(std::span<const Complex> y,
                                               const CosetDecomposition& dec) {
  constexpr bool eis = std::is_same_v<Ring, Eisenstein>;
  if ((dec.base == Family::EM) != eis)
    throw std::invalid_argument("coset decomposition does not match the ring");
  if (y.size() != static_cast<std::size_t>(dec.m))
    throw std::invalid_argument("quantize_coset_union: dimension mismatch");

  CosetQuantizeResult<Ring> best;
  best.squared_error = kInf;
  ComplexVector shifted(y.size());
  for (int t = 0; t < static_cast<int>(dec.shifts.size()); ++t) {
    const ComplexVector& g = dec.shifts[static_cast<std::size_t>(t)];
    for (std::size_t k = 0; k < y.size(); ++k) shifted[k] = y[k] - g[k];
    RingQuantizeResult<Ring> r;
    if constexpr (eis) r = quantize_em(shifted);
    else r = quantize_gm(shifted);
    best.visited += r.visited;
    if (r.squared_error < best.squared_error) {
      best.base_point = std::move(r.point);
      best.shift_index = t;
      best.squared_error = r.squared_error;
    }
  }
  return best;
}

template CosetQuantizeResult<Eisenstein> quantize_coset_union<Eisenstein>(
    std::span<const Complex>, const CosetDecomposition&);
template CosetQuantizeResult<Gaussian> quantize_coset_union<Gaussian>(
    std::span<const Complex>, const CosetDecomposition&);

QuantizeResult quantize_zn(std::span<const double> y) {
  if (y.empty()) throw std::invalid_argument("quantize_zn: empty input");
  QuantizeResult out;
  out.point.resize(y.size());
  for (std::size_t k = 0; k < y.size(); ++k) {
    out.point[k] = detail::round_half_in(y[k]);
    const double e = y[k] - out.point[k];
    out.squared_error += e * e;
  }
  out.visited = 1;
  return out;
}

QuantizeResult quantize_dn(std::span<const double> y) {
  if (y.size() < 2) throw std::invalid_argument("quantize_dn: need n >= 2");
  QuantizeResult out = quantize_zn(y);
  long long parity = 0;
  for (double v : out.point) parity += static_cast<long long>(v);
  if (parity % 2 == 0) return out;

  // Odd coordinate sum: flip the worst-rounded coordinate to its second
  // nearest integer.
  std::size_t worst = 0;
  double worst_err = -1.0;
  for (std::size_t k = 0; k < y.size(); ++k) {
    const double e = std::abs(y[k] - out.point[k]);
    if (e > worst_err) {
      worst_err = e;
      worst = k;
    }
  }
  double& r = out.point[worst];
  const double diff = y[worst] - r;
  if (diff > 0.0) r += 1.0;
  else if (diff < 0.0) r -= 1.0;
  else r += (r > 0.0) ? -1.0 : (r < 0.0 ? 1.0 : -1.0);
  out.squared_error = 0.0;
  for (std::size_t k = 0; k < y.size(); ++k) {
    const double e = y[k] - out.point[k];
    out.squared_error += e * e;
  }
  out.visited = 2;
  return out;
}

QuantizeResult quantize_product(std::span<const double> y, const Descriptor& d) {
  if (!d.product_a) throw std::invalid_argument("descriptor is not product-extended");
  if (y.size() != static_cast<std::size_t>(d.real_dim()))
    throw std::invalid_argument("quantize_product: dimension mismatch");
  Descriptor inner = d;
  inner.product_a.reset();
  QuantizeResult out = quantize_real(y.first(y.size() - 1), inner);
  const double a = *d.product_a;
  const double last = a * detail::round_half_in(y.back() / a);
  const double e = y.back() - last;
  out.point.push_back(last);
  out.squared_error += e * e;
  return out;
}

namespace {

QuantizeResult dispatch_complex(std::span<const double> y, const Descriptor& d,
                                const CosetDecomposition& dec) {
  const auto m = static_cast<std::size_t>(d.m);
  ComplexVector yc(m);
  for (std::size_t k = 0; k < m; ++k) yc[k] = Complex{y[k], y[k + m]};

  ComplexVector point(m);
  QuantizeResult out;
  if (d.family == Family::EM) {
    auto r = quantize_em(yc);
    for (std::size_t k = 0; k < m; ++k) point[k] = embed(r.point[k]);
    out.squared_error = r.squared_error;
    out.visited = r.visited;
  } else if (d.family == Family::GM) {
    auto r = quantize_gm(yc);
    for (std::size_t k = 0; k < m; ++k) point[k] = embed(r.point[k]);
    out.squared_error = r.squared_error;
    out.visited = r.visited;
  } else if (dec.base == Family::EM) {
    auto r = quantize_coset_union<Eisenstein>(yc, dec);
    const ComplexVector& g = dec.shifts[static_cast<std::size_t>(r.shift_index)];
    for (std::size_t k = 0; k < m; ++k) point[k] = embed(r.base_point[k]) + g[k];
    out.squared_error = r.squared_error;
    out.visited = r.visited;
  } else {
    auto r = quantize_coset_union<Gaussian>(yc, dec);
    const ComplexVector& g = dec.shifts[static_cast<std::size_t>(r.shift_index)];
    for (std::size_t k = 0; k < m; ++k) point[k] = embed(r.base_point[k]) + g[k];
    out.squared_error = r.squared_error;
    out.visited = r.visited;
  }
  out.point.resize(2 * m);
  for (std::size_t k = 0; k < m; ++k) {
    out.point[k] = point[k].real();
    out.point[k + m] = point[k].imag();
  }
  return out;
}

}  // namespace

QuantizeResult quantize_real(std::span<const double> y, const Descriptor& d) {
  d.validate();
  if (y.size() != static_cast<std::size_t>(d.real_dim()))
    throw std::invalid_argument("quantize_real: dimension mismatch");
  if (d.product_a) return quantize_product(y, d);
  switch (d.family) {
    case Family::ZN: return quantize_zn(y);
    case Family::DN: return quantize_dn(y);
    default: return dispatch_complex(y, d, coset_shifts(d.family, d.m));
  }
}

Quantizer::Quantizer(const Descriptor& d) : desc_(d), inner_(d) {
  desc_.validate();
  inner_.product_a.reset();
  if (is_complex_family(inner_.family)) {
    dec_ = coset_shifts(inner_.family, inner_.m);
    coset_ = true;
  }
}

QuantizeResult Quantizer::operator()(std::span<const double> y) const {
  if (y.size() != static_cast<std::size_t>(desc_.real_dim()))
    throw std::invalid_argument("quantize: dimension mismatch");
  auto decode_inner = [&](std::span<const double> v) {
    if (!coset_) {
      return inner_.family == Family::ZN ? quantize_zn(v) : quantize_dn(v);
    }
    return dispatch_complex(v, inner_, dec_);
  };
  if (!desc_.product_a) return decode_inner(y);

  QuantizeResult out = decode_inner(y.first(y.size() - 1));
  const double a = *desc_.product_a;
  const double last = a * detail::round_half_in(y.back() / a);
  const double e = y.back() - last;
  out.point.push_back(last);
  out.squared_error += e * e;
  return out;
}

double Quantizer::squared_error(std::span<const double> y) const {
  return (*this)(y).squared_error;
}

}  // namespace latq
