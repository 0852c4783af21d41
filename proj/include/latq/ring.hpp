#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>

// Exact arithmetic in the rings Z[w] (Eisenstein integers, w the sixth root
// of unity) and Z[i] (Gaussian integers), plus scalar nearest-point rounding
// onto each ring. Ring elements are exact integer pairs; only embed() maps
// into floating point.

namespace latq {

using Complex = std::complex<double>;

inline constexpr double kHalfSqrt3 = 0.8660254037844386467637232;  // sqrt(3)/2

// a + b*w with w = (1+sqrt(-3))/2, so w^2 = w - 1 and w^6 = 1.
struct Eisenstein {
  std::int64_t a = 0;
  std::int64_t b = 0;

  friend constexpr Eisenstein operator+(Eisenstein x, Eisenstein y) {
    return {x.a + y.a, x.b + y.b};
  }
  friend constexpr Eisenstein operator-(Eisenstein x, Eisenstein y) {
    return {x.a - y.a, x.b - y.b};
  }
  constexpr Eisenstein operator-() const { return {-a, -b}; }
  // (a+bw)(c+dw) = (ac - bd) + (ad + bc + bd) w
  friend constexpr Eisenstein operator*(Eisenstein x, Eisenstein y) {
    return {x.a * y.a - x.b * y.b, x.a * y.b + x.b * y.a + x.b * y.b};
  }
  Eisenstein& operator+=(Eisenstein y) { a += y.a; b += y.b; return *this; }
  Eisenstein& operator-=(Eisenstein y) { a -= y.a; b -= y.b; return *this; }

  // |a+bw|^2 = a^2 + ab + b^2, always a nonnegative integer.
  constexpr std::int64_t norm() const { return a * a + a * b + b * b; }
  constexpr Eisenstein conj() const { return {a + b, -b}; }

  friend constexpr bool operator==(Eisenstein, Eisenstein) = default;
};

// a + b*i
struct Gaussian {
  std::int64_t a = 0;
  std::int64_t b = 0;

  friend constexpr Gaussian operator+(Gaussian x, Gaussian y) {
    return {x.a + y.a, x.b + y.b};
  }
  friend constexpr Gaussian operator-(Gaussian x, Gaussian y) {
    return {x.a - y.a, x.b - y.b};
  }
  constexpr Gaussian operator-() const { return {-a, -b}; }
  friend constexpr Gaussian operator*(Gaussian x, Gaussian y) {
    return {x.a * y.a - x.b * y.b, x.a * y.b + x.b * y.a};
  }
  Gaussian& operator+=(Gaussian y) { a += y.a; b += y.b; return *this; }
  Gaussian& operator-=(Gaussian y) { a -= y.a; b -= y.b; return *this; }

  constexpr std::int64_t norm() const { return a * a + b * b; }
  constexpr Gaussian conj() const { return {a, -b}; }

  friend constexpr bool operator==(Gaussian, Gaussian) = default;
};

inline Complex embed(Eisenstein x) {
  return {static_cast<double>(x.a) + 0.5 * static_cast<double>(x.b),
          kHalfSqrt3 * static_cast<double>(x.b)};
}

inline Complex embed(Gaussian x) {
  return {static_cast<double>(x.a), static_cast<double>(x.b)};
}

// Powers w^0..w^5; the full unit group of Z[w].
inline constexpr std::array<Eisenstein, 6> kEisensteinUnits = {{
    {1, 0}, {0, 1}, {-1, 1}, {-1, 0}, {0, -1}, {1, -1},
}};

// Perturbation sets of the E_m decoder, in ascending-power order.
inline constexpr std::array<Eisenstein, 3> kUnitsS1 = {{{1, 0}, {-1, 1}, {0, -1}}};   // w^0, w^2, w^4
inline constexpr std::array<Eisenstein, 3> kUnitsS2 = {{{0, 1}, {-1, 0}, {1, -1}}};   // w^1, w^3, w^5

// i^1..i^4; the unit group of Z[i] and the G_m perturbation set.
inline constexpr std::array<Gaussian, 4> kGaussianUnits = {{{0, 1}, {-1, 0}, {0, -1}, {1, 0}}};

// Class of x in Z[w] / (1+w)Z[w] ~ Z/3. Since w = -1 (mod 1+w), a+bw
// reduces to a-b; class 0 is the ideal, class 1 the coset of 1, class 2
// the coset of w.
constexpr int residue_one_plus_omega(Eisenstein x) {
  return static_cast<int>(((x.a - x.b) % 3 + 3) % 3);
}

// Class of x in Z[i] / (1+i)Z[i] ~ Z/2: a+b mod 2.
constexpr int residue_one_plus_i(Gaussian x) {
  return static_cast<int>(((x.a + x.b) % 2 + 2) % 2);
}

namespace detail {

inline void require_finite(Complex y) {
  if (!std::isfinite(y.real()) || !std::isfinite(y.imag()))
    throw std::domain_error("non-finite input to ring rounding");
}

// Round halves toward the integer of smaller magnitude.
inline double round_half_in(double v) {
  if (std::abs(v - std::trunc(v)) == 0.5) return std::trunc(v);
  return std::round(v);
}

}  // namespace detail

// Nearest Z[w] point under the complex embedding. Exact ties go to the
// candidate of smallest ring norm, then lexicographically smallest (a, b).
// The skew-rounded seed can miss the hexagonal cell winner, but never by
// more than one step per coordinate, so a 3x3 sweep is exhaustive.
inline Eisenstein round_to_eisenstein(Complex y) {
  detail::require_finite(y);
  const double b0 = y.imag() / kHalfSqrt3;
  const double a0 = y.real() - 0.5 * b0;
  const std::int64_t ac = std::llround(a0);
  const std::int64_t bc = std::llround(b0);
  Eisenstein best{ac, bc};
  double best_d = std::norm(embed(best) - y);
  for (std::int64_t da = -1; da <= 1; ++da) {
    for (std::int64_t db = -1; db <= 1; ++db) {
      const Eisenstein c{ac + da, bc + db};
      const double d = std::norm(embed(c) - y);
      if (d < best_d ||
          (d == best_d && (c.norm() < best.norm() ||
                           (c.norm() == best.norm() &&
                            (c.a < best.a || (c.a == best.a && c.b < best.b)))))) {
        best = c;
        best_d = d;
      }
    }
  }
  return best;
}

// Nearest Z[i] point: component-wise rounding, halves toward the smaller
// magnitude (which is also the smaller ring norm).
inline Gaussian round_to_gaussian(Complex y) {
  detail::require_finite(y);
  return {static_cast<std::int64_t>(detail::round_half_in(y.real())),
          static_cast<std::int64_t>(detail::round_half_in(y.imag()))};
}

// Element of S closest to y under the embedding; ties keep the earliest
// element, so the canonical set order is the tie-break.
template <class Ring>
Ring nearest_in_set(Complex y, std::span<const Ring> s) {
  if (s.empty()) throw std::invalid_argument("nearest_in_set: empty set");
  detail::require_finite(y);
  Ring best = s[0];
  double best_d = std::norm(embed(s[0]) - y);
  for (std::size_t k = 1; k < s.size(); ++k) {
    const double d = std::norm(embed(s[k]) - y);
    if (d < best_d) {
      best = s[k];
      best_d = d;
    }
  }
  return best;
}

}  // namespace latq
