#include "latq/lattice.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <stdexcept>

namespace latq {

namespace {

const Complex kOmega{0.5, kHalfSqrt3};
const Complex kI{0.0, 1.0};

Complex ring_unit(Family f) { return is_eisenstein_family(f) ? kOmega : kI; }

// d = [1, ..., 1, m*xi + 1]^T, the column sum of the base checkerboard basis.
ComplexVector sum_vector(Family f, int m) {
  const Complex xi = ring_unit(f);
  ComplexVector d(static_cast<std::size_t>(m), Complex{1.0, 0.0});
  d[static_cast<std::size_t>(m - 1)] = static_cast<double>(m) * xi + 1.0;
  return d;
}

Eigen::MatrixXcd base_checkerboard(Family f, int m) {
  const Complex xi = ring_unit(f);
  Eigen::MatrixXcd b = Eigen::MatrixXcd::Zero(m, m);
  for (int k = 0; k + 1 < m; ++k) {
    b(k, k) = 1.0;
    b(m - 1, k) = xi;
  }
  b(m - 1, m - 1) = 1.0 + xi;
  return b;
}

// Real basis of the realized complex lattice: [[Re, -Im], [Im, Re]] followed
// by the ring's coordinate change (identity for Z[i], the skew hexagonal
// basis for Z[w]).
RealBasis realize_complex(const ComplexBasis& cb) {
  const int m = cb.m;
  RealBasis r(2 * m, 2 * m);
  r.topLeftCorner(m, m) = cb.cols.real();
  r.topRightCorner(m, m) = -cb.cols.imag();
  r.bottomLeftCorner(m, m) = cb.cols.imag();
  r.bottomRightCorner(m, m) = cb.cols.real();
  if (cb.eisenstein) {
    for (int j = 0; j < m; ++j)
      r.col(m + j) = 0.5 * r.col(j) + kHalfSqrt3 * r.col(m + j);
  }
  return r;
}

// The K-type union E_m u (E_m + s) u (E_m - s) is an index-3 extension of
// E_m as a plain Z-module (3s lands in E_m). Its basis is the E_m basis
// with one column swapped for s, expressed through the coefficient vector
// of 3s reduced mod 3.
RealBasis realize_k2m(int m) {
  const RealBasis base = realize(Descriptor{Family::EM, m, std::nullopt});
  const CosetDecomposition dec = coset_shifts(Family::K2M, m);
  const Eigen::VectorXd s = psi(dec.shifts[1]);
  const Eigen::VectorXd w = base.fullPivLu().solve(s);
  const int n = 2 * m;
  Eigen::VectorXd reduced = Eigen::VectorXd::Zero(n);
  int pivot = -1;
  for (int j = 0; j < n; ++j) {
    const double vj = 3.0 * w[j];
    const auto ij = std::llround(vj);
    if (std::abs(vj - static_cast<double>(ij)) > 1e-9)
      throw std::logic_error("K2m shift has non-integral triple coordinates");
    auto rj = ij % 3;
    if (rj == 2) rj = -1;
    if (rj == -2) rj = 1;
    reduced[j] = static_cast<double>(rj);
    if (pivot < 0 && rj != 0) pivot = j;
  }
  if (pivot < 0) throw std::logic_error("K2m shift lies in the base lattice");
  Eigen::MatrixXd coeff = Eigen::MatrixXd::Identity(n, n);
  coeff.col(pivot) = reduced / 3.0;
  return base * coeff;
}

RealBasis dn_basis(int n) {
  RealBasis b = Eigen::MatrixXd::Zero(n, n);
  b(0, 0) = -1.0;
  b(1, 0) = -1.0;
  b(0, 1) = 1.0;
  b(1, 1) = -1.0;
  for (int j = 2; j < n; ++j) {
    b(j - 1, j) = 1.0;
    b(j, j) = -1.0;
  }
  return b;
}

Eisenstein div_exact(Eisenstein num, Eisenstein den) {
  const std::int64_t n = den.norm();
  const Eisenstein p = num * den.conj();
  if (n == 0 || p.a % n != 0 || p.b % n != 0)
    throw std::logic_error("inexact Eisenstein division");
  return {p.a / n, p.b / n};
}

}  // namespace

std::string_view family_tag(Family f) {
  switch (f) {
    case Family::EM: return "E";
    case Family::EM2P: return "E2+";
    case Family::EM1WP: return "E1w+";
    case Family::GM: return "G";
    case Family::GM2P: return "G2+";
    case Family::GM1IP: return "G1i+";
    case Family::K2M: return "K";
    case Family::ZN: return "Z";
    case Family::DN: return "D";
  }
  return "?";
}

void Descriptor::validate() const {
  if (m < 1) throw std::invalid_argument("lattice dimension must be >= 1");
  if (family == Family::DN && m < 2)
    throw std::invalid_argument("D_n requires n >= 2");
  if (product_a && !(*product_a > 0.0 && std::isfinite(*product_a)))
    throw std::invalid_argument("product extension requires a > 0");
}

std::vector<Eisenstein> em_basis_exact(int m) {
  std::vector<Eisenstein> cols(static_cast<std::size_t>(m) * m, Eisenstein{0, 0});
  auto at = [&](int r, int c) -> Eisenstein& { return cols[c * m + r]; };
  for (int k = 0; k + 1 < m; ++k) {
    at(k, k) = {1, 0};
    at(m - 1, k) = {0, 1};
  }
  at(m - 1, m - 1) = {1, 1};
  return cols;
}

ComplexBasis build_complex_basis(Family f, int m) {
  if (m < 1) throw std::invalid_argument("complex dimension must be >= 1");
  if (!is_complex_family(f))
    throw std::invalid_argument("Z^n and D_n are real-native lattices");
  if (f == Family::K2M)
    throw std::invalid_argument("the K-type union has no ring basis; use realize()");

  ComplexBasis cb;
  cb.eisenstein = is_eisenstein_family(f);
  cb.m = m;
  cb.cols = base_checkerboard(f, m);
  if (f == Family::EM || f == Family::GM) return cb;

  const ComplexVector d = sum_vector(f, m);
  Complex divisor;
  switch (f) {
    case Family::EM2P:
    case Family::GM2P: divisor = 2.0; break;
    case Family::EM1WP: divisor = 1.0 + kOmega; break;
    case Family::GM1IP: divisor = 1.0 + kI; break;
    default: throw std::logic_error("unreachable");
  }
  for (int k = 0; k < m; ++k)
    cb.cols(k, 0) = d[static_cast<std::size_t>(k)] / divisor;
  return cb;
}

CosetDecomposition coset_shifts(Family f, int m) {
  if (m < 1) throw std::invalid_argument("complex dimension must be >= 1");
  if (!is_complex_family(f))
    throw std::invalid_argument("coset decompositions are defined for the complex families");

  CosetDecomposition dec;
  dec.base = is_eisenstein_family(f) ? Family::EM : Family::GM;
  dec.m = m;
  const ComplexVector zero(static_cast<std::size_t>(m), Complex{0.0, 0.0});
  dec.shifts.push_back(zero);
  if (f == Family::EM || f == Family::GM) return dec;

  auto scaled = [&](const ComplexVector& v, Complex c) {
    ComplexVector out(v.size());
    for (std::size_t k = 0; k < v.size(); ++k) out[k] = c * v[k];
    return out;
  };

  if (f == Family::K2M) {
    const ComplexVector ones(static_cast<std::size_t>(m), Complex{1.0, 0.0});
    const Complex s = kOmega / (1.0 + kOmega);
    dec.shifts.push_back(scaled(ones, s));
    dec.shifts.push_back(scaled(ones, -s));
    return dec;
  }

  const ComplexVector d = sum_vector(f, m);
  switch (f) {
    case Family::EM2P:
      dec.shifts.push_back(scaled(d, 0.5));
      dec.shifts.push_back(scaled(d, 0.5 * kOmega));
      dec.shifts.push_back(scaled(d, 0.5 * std::conj(kOmega)));
      break;
    case Family::EM1WP:
      dec.shifts.push_back(scaled(d, 1.0 / (1.0 + kOmega)));
      dec.shifts.push_back(scaled(d, kOmega / (1.0 + kOmega)));
      break;
    case Family::GM2P:
      dec.shifts.push_back(scaled(d, 0.5));
      dec.shifts.push_back(scaled(d, 0.5 * kI));
      dec.shifts.push_back(scaled(d, 0.5 * (1.0 + kI)));
      break;
    case Family::GM1IP:
      dec.shifts.push_back(scaled(d, 1.0 / (1.0 + kI)));
      break;
    default: throw std::logic_error("unreachable");
  }
  return dec;
}

Eigen::VectorXd psi(const ComplexVector& v) {
  const auto m = static_cast<Eigen::Index>(v.size());
  Eigen::VectorXd out(2 * m);
  for (Eigen::Index k = 0; k < m; ++k) {
    out[k] = v[static_cast<std::size_t>(k)].real();
    out[m + k] = v[static_cast<std::size_t>(k)].imag();
  }
  return out;
}

RealBasis realize(const Descriptor& d) {
  d.validate();
  RealBasis base;
  switch (d.family) {
    case Family::ZN:
      base = Eigen::MatrixXd::Identity(d.m, d.m);
      break;
    case Family::DN:
      base = dn_basis(d.m);
      break;
    case Family::K2M:
      base = realize_k2m(d.m);
      break;
    default:
      base = realize_complex(build_complex_basis(d.family, d.m));
      break;
  }
  if (!d.product_a) return base;
  const int n = static_cast<int>(base.rows());
  RealBasis ext = Eigen::MatrixXd::Zero(n + 1, n + 1);
  ext.topLeftCorner(n, n) = base;
  ext(n, n) = *d.product_a;
  return ext;
}

double volume(const Descriptor& d) { return std::abs(realize(d).determinant()); }

Eisenstein eisenstein_determinant(const std::vector<Eisenstein>& cols_major, int m) {
  if (m < 1 || cols_major.size() != static_cast<std::size_t>(m) * m)
    throw std::invalid_argument("determinant: bad matrix shape");
  if (m > 8)
    throw std::invalid_argument("exact determinant supported for m <= 8");
  std::vector<Eisenstein> a = cols_major;
  auto at = [&](int r, int c) -> Eisenstein& { return a[c * m + r]; };
  // Bareiss fraction-free elimination; every division is exact.
  Eisenstein prev{1, 0};
  int sign = 1;
  for (int k = 0; k + 1 < m; ++k) {
    if (at(k, k) == Eisenstein{0, 0}) {
      int r = k + 1;
      while (r < m && at(r, k) == Eisenstein{0, 0}) ++r;
      if (r == m) return {0, 0};
      for (int c = 0; c < m; ++c) std::swap(at(k, c), at(r, c));
      sign = -sign;
    }
    for (int i = k + 1; i < m; ++i) {
      for (int j = k + 1; j < m; ++j)
        at(i, j) = div_exact(at(i, j) * at(k, k) - at(i, k) * at(k, j), prev);
      at(i, k) = {0, 0};
    }
    prev = at(k, k);
  }
  Eisenstein det = at(m - 1, m - 1);
  return sign > 0 ? det : -det;
}

bool validate_em_basis(const std::vector<Eisenstein>& cols_major, int m) {
  if (m < 1 || cols_major.size() != static_cast<std::size_t>(m) * m)
    throw std::invalid_argument("validate_em_basis: bad matrix shape");
  for (int c = 0; c < m; ++c) {
    Eisenstein sum{0, 0};
    for (int r = 0; r < m; ++r) sum += cols_major[c * m + r];
    if (residue_one_plus_omega(sum) != 0) return false;
  }
  if (m <= 8) return eisenstein_determinant(cols_major, m).norm() == 3;
  Eigen::MatrixXcd mat(m, m);
  for (int c = 0; c < m; ++c)
    for (int r = 0; r < m; ++r) mat(r, c) = embed(cols_major[c * m + r]);
  return std::abs(std::norm(mat.determinant()) - 3.0) <= 1e-9 * 3.0;
}

bool validate_em_basis(const ComplexBasis& candidate) {
  if (!candidate.eisenstein)
    throw std::invalid_argument("validate_em_basis: not an Eisenstein matrix");
  const int m = candidate.m;
  std::vector<Eisenstein> cols(static_cast<std::size_t>(m) * m);
  for (int c = 0; c < m; ++c) {
    for (int r = 0; r < m; ++r) {
      const Complex z = candidate.cols(r, c);
      const Eisenstein snapped = round_to_eisenstein(z);
      if (std::abs(embed(snapped) - z) > 1e-9)
        throw std::invalid_argument("validate_em_basis: entry is not an Eisenstein integer");
      cols[c * m + r] = snapped;
    }
  }
  return validate_em_basis(cols, m);
}

Descriptor product_extend(const Descriptor& base, double nsm_of_base) {
  base.validate();
  if (base.product_a)
    throw std::invalid_argument("lattice is already product-extended");
  if (!(nsm_of_base > 0.0) || !std::isfinite(nsm_of_base))
    throw std::invalid_argument("product_extend requires a positive NSM");
  const int n = base.base_real_dim();
  const double a = std::sqrt(12.0 * nsm_of_base) *
                   std::pow(volume(base), 1.0 / static_cast<double>(n));
  Descriptor out = base;
  out.product_a = a;
  return out;
}

std::optional<ParsedName> parse_lattice_name(std::string_view name) {
  ParsedName parsed;
  if (name.ends_with("xZ")) {
    parsed.product = true;
    name.remove_suffix(2);
  }
  if (name.size() < 2) return std::nullopt;

  std::string_view tag;
  for (std::string_view t : {"1w+", "1i+", "2+"}) {
    if (name.ends_with(t)) {
      tag = t;
      name.remove_suffix(t.size());
      if (name.ends_with("_")) name.remove_suffix(1);
      break;
    }
  }

  const char kind = name.front();
  name.remove_prefix(1);
  int num = 0;
  const auto [ptr, ec] = std::from_chars(name.data(), name.data() + name.size(), num);
  if (ec != std::errc{} || ptr != name.data() + name.size() || num < 1)
    return std::nullopt;

  Descriptor& d = parsed.base;
  switch (kind) {
    case 'E':
      d.family = tag.empty()  ? Family::EM
                 : tag == "2+" ? Family::EM2P
                 : tag == "1w+" ? Family::EM1WP
                               : Family::ZN;
      if (!tag.empty() && tag != "2+" && tag != "1w+") return std::nullopt;
      d.m = num;
      break;
    case 'G':
      d.family = tag.empty()  ? Family::GM
                 : tag == "2+" ? Family::GM2P
                 : tag == "1i+" ? Family::GM1IP
                               : Family::ZN;
      if (!tag.empty() && tag != "2+" && tag != "1i+") return std::nullopt;
      d.m = num;
      break;
    case 'K':
      if (!tag.empty() || num % 2 != 0) return std::nullopt;
      d.family = Family::K2M;
      d.m = num / 2;
      break;
    case 'Z':
      if (!tag.empty()) return std::nullopt;
      d.family = Family::ZN;
      d.m = num;
      break;
    case 'D':
      if (!tag.empty() || num < 2) return std::nullopt;
      d.family = Family::DN;
      d.m = num;
      break;
    default:
      return std::nullopt;
  }
  try {
    d.validate();
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
  return parsed;
}

std::string lattice_name(const Descriptor& d) {
  std::string out;
  switch (d.family) {
    case Family::EM: out = "E" + std::to_string(d.m); break;
    case Family::EM2P: out = "E" + std::to_string(d.m) + "_2+"; break;
    case Family::EM1WP: out = "E" + std::to_string(d.m) + "_1w+"; break;
    case Family::GM: out = "G" + std::to_string(d.m); break;
    case Family::GM2P: out = "G" + std::to_string(d.m) + "_2+"; break;
    case Family::GM1IP: out = "G" + std::to_string(d.m) + "_1i+"; break;
    case Family::K2M: out = "K" + std::to_string(2 * d.m); break;
    case Family::ZN: out = "Z" + std::to_string(d.m); break;
    case Family::DN: out = "D" + std::to_string(d.m); break;
  }
  if (d.product_a) out += "xZ";
  return out;
}

std::optional<RealBasis> reference_basis(std::string_view name) {
  if (name == "D4") return realize(Descriptor{Family::DN, 4, std::nullopt});
  if (name == "E8ref") {
    // A known Z[i]-basis of a scaled E8 (columns are generators).
    ComplexBasis cb;
    cb.eisenstein = false;
    cb.m = 4;
    cb.cols = Eigen::MatrixXcd::Zero(4, 4);
    const Complex one_i{1.0, 1.0};
    for (int r = 0; r < 4; ++r) cb.cols(r, 0) = one_i;
    cb.cols(1, 1) = -2.0;
    cb.cols(2, 1) = Complex{0.0, 2.0};
    cb.cols(2, 2) = -2.0;
    cb.cols(3, 2) = Complex{0.0, 2.0};
    cb.cols(3, 3) = Complex{2.0, 2.0};
    return realize_complex(cb);
  }
  if (name == "E6sref") {
    // A known Z[w]-basis of the dual E6 lattice; sqrt(-3) = 2w - 1.
    ComplexBasis cb;
    cb.eisenstein = true;
    cb.m = 3;
    cb.cols = Eigen::MatrixXcd::Zero(3, 3);
    cb.cols(0, 0) = embed(Eisenstein{-1, 2});
    cb.cols(0, 1) = 1.0;
    cb.cols(1, 1) = -1.0;
    cb.cols(0, 2) = 1.0;
    cb.cols(2, 2) = -1.0;
    return realize_complex(cb);
  }
  return std::nullopt;
}

}  // namespace latq
