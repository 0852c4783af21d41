#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "latq/lattice.hpp"
#include "latq/quantize.hpp"
#include "support.hpp"

using namespace latq;
using namespace latq::testing;

namespace {

const Complex kW{0.5, kHalfSqrt3};
const Complex kI{0.0, 1.0};

bool complex_close(Complex a, Complex b, double tol = 1e-12) {
  return std::abs(a - b) <= tol;
}

double volume_by_complex_det(Family f, int m) {
  const ComplexBasis cb = build_complex_basis(f, m);
  const double det_phi = cb.eisenstein ? kHalfSqrt3 : 1.0;
  return std::norm(cb.cols.determinant()) * std::pow(det_phi, m);
}

}  // namespace

TEST_CASE("base checkerboard bases match the closed forms") {
  const ComplexBasis e2 = build_complex_basis(Family::EM, 2);
  CHECK(complex_close(e2.cols(0, 0), 1.0));
  CHECK(complex_close(e2.cols(1, 0), kW));
  CHECK(complex_close(e2.cols(0, 1), 0.0));
  CHECK(complex_close(e2.cols(1, 1), 1.0 + kW));

  const ComplexBasis e1 = build_complex_basis(Family::EM, 1);
  CHECK(complex_close(e1.cols(0, 0), 1.0 + kW));

  const ComplexBasis g3 = build_complex_basis(Family::GM, 3);
  CHECK(complex_close(g3.cols(2, 0), kI));
  CHECK(complex_close(g3.cols(2, 2), 1.0 + kI));
}

TEST_CASE("coset-family bases replace the first column") {
  const ComplexBasis e42 = build_complex_basis(Family::EM2P, 4);
  for (int r = 0; r < 3; ++r) CHECK(complex_close(e42.cols(r, 0), 0.5));
  CHECK(complex_close(e42.cols(3, 0), (4.0 * kW + 1.0) / 2.0));
  // Trailing columns are those of E_4.
  const ComplexBasis e4 = build_complex_basis(Family::EM, 4);
  for (int c = 1; c < 4; ++c)
    for (int r = 0; r < 4; ++r) CHECK(complex_close(e42.cols(r, c), e4.cols(r, c)));

  const ComplexBasis g41 = build_complex_basis(Family::GM1IP, 4);
  for (int r = 0; r < 3; ++r) CHECK(complex_close(g41.cols(r, 0), 1.0 / (1.0 + kI)));
  CHECK(complex_close(g41.cols(3, 0), (1.0 + 4.0 * kI) / (1.0 + kI)));
}

TEST_CASE("build_complex_basis rejects real-native and K-type families") {
  CHECK_THROWS_AS(build_complex_basis(Family::ZN, 3), std::invalid_argument);
  CHECK_THROWS_AS(build_complex_basis(Family::DN, 4), std::invalid_argument);
  CHECK_THROWS_AS(build_complex_basis(Family::K2M, 2), std::invalid_argument);
  CHECK_THROWS_AS(build_complex_basis(Family::EM, 0), std::invalid_argument);
}

TEST_CASE("coset shifts") {
  const CosetDecomposition gm1 = coset_shifts(Family::GM1IP, 3);
  REQUIRE(gm1.shifts.size() == 2);
  CHECK(gm1.base == Family::GM);
  for (const Complex& z : gm1.shifts[0]) CHECK(complex_close(z, 0.0));
  CHECK(complex_close(gm1.shifts[1][0], 1.0 / (1.0 + kI)));
  CHECK(complex_close(gm1.shifts[1][2], (1.0 + 3.0 * kI) / (1.0 + kI)));

  CHECK(coset_shifts(Family::EM, 5).shifts.size() == 1);
  CHECK(coset_shifts(Family::EM2P, 1).shifts.size() == 4);
  CHECK(coset_shifts(Family::EM1WP, 2).shifts.size() == 3);
  CHECK(coset_shifts(Family::GM2P, 2).shifts.size() == 4);

  const CosetDecomposition k = coset_shifts(Family::K2M, 3);
  REQUIRE(k.shifts.size() == 3);
  for (int j = 0; j < 3; ++j) {
    CHECK(complex_close(k.shifts[1][static_cast<std::size_t>(j)], kW / (1.0 + kW)));
    CHECK(complex_close(k.shifts[2][static_cast<std::size_t>(j)], -kW / (1.0 + kW)));
  }
  CHECK_THROWS_AS(coset_shifts(Family::ZN, 2), std::invalid_argument);
}

TEST_CASE("realized G_2 basis") {
  const RealBasis b = realize(Descriptor{Family::GM, 2, std::nullopt});
  Eigen::MatrixXd expect(4, 4);
  expect << 1, 0, 0, 0,
            0, 1, -1, -1,
            0, 0, 1, 0,
            1, 1, 0, 1;
  CHECK((b - expect).cwiseAbs().maxCoeff() == 0.0);

  // Conjugating the complex basis (a reflection of the lattice) gives the
  // known D4-equivalent form: negate the imaginary block rows and columns.
  Eigen::MatrixXd known(4, 4);
  known << 1, 0, 0, 0,
           0, 1, 1, 1,
           0, 0, 1, 0,
           -1, -1, 0, 1;
  Eigen::MatrixXd flip = Eigen::MatrixXd::Identity(4, 4);
  flip(2, 2) = flip(3, 3) = -1.0;
  CHECK(((flip * b * flip) - known).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("realized E_1 basis and Gram") {
  const RealBasis b = realize(Descriptor{Family::EM, 1, std::nullopt});
  CHECK(b(0, 0) == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(b(1, 0) == doctest::Approx(kHalfSqrt3).epsilon(1e-15));
  // Gram proportional to the hexagonal [[1, 1/2], [1/2, 1]].
  const Eigen::MatrixXd gram = b.transpose() * b;
  const double s = gram(0, 0);
  CHECK(gram(1, 1) == doctest::Approx(s).epsilon(1e-12));
  CHECK(gram(0, 1) == doctest::Approx(0.5 * s).epsilon(1e-12));
}

TEST_CASE("realize of the real-native families") {
  CHECK(realize(Descriptor{Family::ZN, 3, std::nullopt}).isIdentity(0.0));
  const RealBasis d4 = realize(Descriptor{Family::DN, 4, std::nullopt});
  CHECK(std::abs(d4.determinant()) == doctest::Approx(2.0).epsilon(1e-12));
  // Every column has an even coordinate sum.
  for (int c = 0; c < 4; ++c)
    CHECK(static_cast<long long>(d4.col(c).sum()) % 2 == 0);
}

TEST_CASE("realized columns are the psi images of the complex columns") {
  for (Family f : {Family::EM, Family::EM2P, Family::GM2P}) {
    const int m = 3;
    const ComplexBasis cb = build_complex_basis(f, m);
    const RealBasis rb = realize(Descriptor{f, m, std::nullopt});
    const Complex xi = cb.eisenstein ? kW : kI;
    for (int k = 0; k < m; ++k) {
      ComplexVector col(static_cast<std::size_t>(m));
      ComplexVector col_w(static_cast<std::size_t>(m));
      for (int r = 0; r < m; ++r) {
        col[static_cast<std::size_t>(r)] = cb.cols(r, k);
        col_w[static_cast<std::size_t>(r)] = cb.cols(r, k) * xi;
      }
      CHECK((psi(col) - rb.col(k)).cwiseAbs().maxCoeff() <= 1e-12);
      CHECK((psi(col_w) - rb.col(m + k)).cwiseAbs().maxCoeff() <= 1e-12);
    }
  }
}

TEST_CASE("volumes match the closed forms up to m = 12") {
  for (int m = 1; m <= 12; ++m) {
    const double em = 3.0 * std::pow(kHalfSqrt3, m);
    CHECK(volume({Family::EM, m, std::nullopt}) == doctest::Approx(em).epsilon(1e-9));
    CHECK(volume({Family::EM2P, m, std::nullopt}) ==
          doctest::Approx(0.75 * std::pow(kHalfSqrt3, m)).epsilon(1e-9));
    CHECK(volume({Family::EM1WP, m, std::nullopt}) ==
          doctest::Approx(std::pow(kHalfSqrt3, m)).epsilon(1e-9));
    CHECK(volume({Family::GM, m, std::nullopt}) == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(volume({Family::GM2P, m, std::nullopt}) == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(volume({Family::GM1IP, m, std::nullopt}) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(volume({Family::K2M, m, std::nullopt}) ==
          doctest::Approx(std::pow(kHalfSqrt3, m)).epsilon(1e-9));
    CHECK(volume({Family::ZN, m, std::nullopt}) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("real determinant agrees with the complex determinant route") {
  for (Family f : {Family::EM, Family::EM2P, Family::EM1WP, Family::GM, Family::GM2P,
                   Family::GM1IP}) {
    for (int m = 1; m <= 12; ++m) {
      const double via_complex = volume_by_complex_det(f, m);
      CHECK(volume({f, m, std::nullopt}) ==
            doctest::Approx(via_complex).epsilon(1e-9));
    }
  }
}

TEST_CASE("coset index equals the volume ratio") {
  for (int m : {1, 2, 3, 5, 8}) {
    const double base_e = volume({Family::EM, m, std::nullopt});
    CHECK(base_e / volume({Family::EM2P, m, std::nullopt}) == doctest::Approx(4.0).epsilon(1e-9));
    CHECK(base_e / volume({Family::EM1WP, m, std::nullopt}) == doctest::Approx(3.0).epsilon(1e-9));
    CHECK(base_e / volume({Family::K2M, m, std::nullopt}) == doctest::Approx(3.0).epsilon(1e-9));
    const double base_g = volume({Family::GM, m, std::nullopt});
    CHECK(base_g / volume({Family::GM2P, m, std::nullopt}) == doctest::Approx(4.0).epsilon(1e-9));
    CHECK(base_g / volume({Family::GM1IP, m, std::nullopt}) == doctest::Approx(2.0).epsilon(1e-9));
  }
}

TEST_CASE("nonzero coset shifts stay outside the base lattice") {
  for (Family f : {Family::EM2P, Family::EM1WP, Family::GM2P, Family::GM1IP, Family::K2M}) {
    for (int m = 1; m <= 4; ++m) {
      const CosetDecomposition dec = coset_shifts(f, m);
      const Descriptor base{dec.base, m, std::nullopt};
      for (std::size_t t = 1; t < dec.shifts.size(); ++t) {
        const Eigen::VectorXd s = psi(dec.shifts[t]);
        const std::vector<double> sv(s.data(), s.data() + s.size());
        const QuantizeResult q = quantize_real(sv, base);
        CHECK(q.squared_error > 1e-6);
      }
    }
  }
}

TEST_CASE("exact Eisenstein determinants") {
  for (int m = 1; m <= 8; ++m) {
    const Eisenstein det = eisenstein_determinant(em_basis_exact(m), m);
    CHECK(det.norm() == 3);
  }
  std::vector<Eisenstein> id = {{1, 0}, {0, 0}, {0, 0}, {1, 0}};
  CHECK(eisenstein_determinant(id, 2) == Eisenstein{1, 0});
  std::vector<Eisenstein> swapped = {{0, 0}, {1, 0}, {1, 0}, {0, 0}};
  CHECK(eisenstein_determinant(swapped, 2) == Eisenstein{-1, 0});
}

TEST_CASE("E_m basis checker accepts the construction and rejects corruptions") {
  for (int m = 1; m <= 8; ++m) CHECK(validate_em_basis(em_basis_exact(m), m));

  // The identity fails both conditions.
  std::vector<Eisenstein> id(9, Eisenstein{0, 0});
  id[0] = id[4] = id[8] = {1, 0};
  CHECK_FALSE(validate_em_basis(id, 3));

  // Doubling the first column bumps |det|^2 to 12.
  std::vector<Eisenstein> doubled = em_basis_exact(4);
  for (int r = 0; r < 4; ++r)
    doubled[static_cast<std::size_t>(r)] = doubled[static_cast<std::size_t>(r)] * Eisenstein{2, 0};
  CHECK_FALSE(validate_em_basis(doubled, 4));

  CounterRng rng(77);
  int accepted_after_unimodular = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int m = static_cast<int>(rng.next_int(2, 6));
    std::vector<Eisenstein> basis = em_basis_exact(m);
    auto col = [&](int c, int r) -> Eisenstein& {
      return basis[static_cast<std::size_t>(c * m + r)];
    };
    // A few unimodular column operations keep the basis valid.
    for (int op = 0; op < 4; ++op) {
      const int ci = static_cast<int>(rng.next_int(0, m - 1));
      int cj = static_cast<int>(rng.next_int(0, m - 1));
      if (cj == ci) cj = (cj + 1) % m;
      const Eisenstein u = kEisensteinUnits[static_cast<std::size_t>(rng.next_int(0, 5))];
      for (int r = 0; r < m; ++r) col(ci, r) += u * col(cj, r);
    }
    if (validate_em_basis(basis, m)) ++accepted_after_unimodular;
    // Scaling one column by a non-unit breaks the determinant condition.
    const Eisenstein scales[] = {{1, 1}, {2, 0}, {2, 1}, {0, 2}};
    const Eisenstein s = scales[rng.next_int(0, 3)];
    const int cs = static_cast<int>(rng.next_int(0, m - 1));
    for (int r = 0; r < m; ++r) col(cs, r) = col(cs, r) * s;
    CHECK_FALSE(validate_em_basis(basis, m));
  }
  CHECK(accepted_after_unimodular == 100);
}

TEST_CASE("validate_em_basis on floating candidates") {
  CHECK(validate_em_basis(build_complex_basis(Family::EM, 3)));
  // Half-integer entries are not Eisenstein integers.
  CHECK_THROWS_AS(validate_em_basis(build_complex_basis(Family::EM2P, 3)),
                  std::invalid_argument);
  CHECK_THROWS_AS(validate_em_basis(build_complex_basis(Family::GM, 3)),
                  std::invalid_argument);
}

TEST_CASE("product extension") {
  const Descriptor z1{Family::ZN, 1, std::nullopt};
  CHECK(*product_extend(z1, 1.0 / 12.0).product_a == doctest::Approx(1.0).epsilon(1e-12));

  // With G = 1/12 the formula reduces to Vol^(1/n).
  const Descriptor g1{Family::GM, 1, std::nullopt};
  CHECK(*product_extend(g1, 1.0 / 12.0).product_a ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));

  const Descriptor e72{Family::EM2P, 7, std::nullopt};
  const double g14 = 0.06952;
  const double expect = std::sqrt(12.0 * g14) * std::pow(volume(e72), 1.0 / 14.0);
  const Descriptor ext = product_extend(e72, g14);
  CHECK(*ext.product_a == doctest::Approx(expect).epsilon(1e-12));
  CHECK(volume(ext) == doctest::Approx(*ext.product_a * volume(e72)).epsilon(1e-12));
  CHECK(ext.real_dim() == 15);

  CHECK_THROWS_AS(product_extend(z1, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(product_extend(ext, 0.07), std::invalid_argument);
}

TEST_CASE("name grammar round trips") {
  const std::pair<const char*, Descriptor> cases[] = {
      {"E7", {Family::EM, 7, std::nullopt}},
      {"E7_2+", {Family::EM2P, 7, std::nullopt}},
      {"E72+", {Family::EM2P, 7, std::nullopt}},
      {"E6_1w+", {Family::EM1WP, 6, std::nullopt}},
      {"G4_1i+", {Family::GM1IP, 4, std::nullopt}},
      {"G12_2+", {Family::GM2P, 12, std::nullopt}},
      {"K12", {Family::K2M, 6, std::nullopt}},
      {"Z1", {Family::ZN, 1, std::nullopt}},
      {"D4", {Family::DN, 4, std::nullopt}},
  };
  for (const auto& [name, want] : cases) {
    const auto parsed = parse_lattice_name(name);
    REQUIRE(parsed.has_value());
    CHECK(parsed->base.family == want.family);
    CHECK(parsed->base.m == want.m);
    CHECK_FALSE(parsed->product);
  }
  const auto prod = parse_lattice_name("E7_2+xZ");
  REQUIRE(prod.has_value());
  CHECK(prod->product);
  CHECK(prod->base.family == Family::EM2P);

  CHECK(lattice_name({Family::EM2P, 7, std::nullopt}) == "E7_2+");
  CHECK(lattice_name({Family::K2M, 6, std::nullopt}) == "K12");
  CHECK(lattice_name({Family::EM2P, 7, 1.0}) == "E7_2+xZ");

  for (const char* bad : {"K11", "D1", "Q5", "E0", "", "E7_1i+", "G3_1w+", "Z", "E", "xZ"})
    CHECK_FALSE(parse_lattice_name(bad).has_value());
}

TEST_CASE("reference bases") {
  const auto d4 = reference_basis("D4");
  REQUIRE(d4.has_value());
  CHECK((*d4 - realize({Family::DN, 4, std::nullopt})).cwiseAbs().maxCoeff() == 0.0);

  const auto e8 = reference_basis("E8ref");
  REQUIRE(e8.has_value());
  CHECK(std::abs(e8->determinant()) == doctest::Approx(256.0).epsilon(1e-9));

  const auto e6s = reference_basis("E6sref");
  REQUIRE(e6s.has_value());
  CHECK(std::abs(e6s->determinant()) ==
        doctest::Approx(3.0 * std::pow(kHalfSqrt3, 3)).epsilon(1e-9));

  CHECK_FALSE(reference_basis("E9ref").has_value());
}

TEST_CASE("descriptor validation") {
  CHECK_THROWS_AS(realize({Family::DN, 1, std::nullopt}), std::invalid_argument);
  CHECK_THROWS_AS(realize({Family::EM, 0, std::nullopt}), std::invalid_argument);
  CHECK_THROWS_AS(realize({Family::ZN, 2, -1.0}), std::invalid_argument);
  CHECK(Descriptor{Family::EM2P, 7, 1.5}.real_dim() == 15);
  CHECK(Descriptor{Family::ZN, 5, std::nullopt}.real_dim() == 5);
}
