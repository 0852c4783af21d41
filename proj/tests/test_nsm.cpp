#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstring>

#include "latq/nsm.hpp"
#include "support.hpp"

using namespace latq;
using namespace latq::testing;

namespace {

bool bit_identical(double a, double b) {
  return std::memcmp(&a, &b, sizeof(double)) == 0;
}

}  // namespace

TEST_CASE("sample_point basics") {
  const std::vector<double> zero(2, 0.0);
  CHECK(sample_point({Family::EM, 1, std::nullopt}, zero).isZero(0.0));

  const std::vector<double> ones = {1.0, 1.0};
  const Eigen::VectorXd corner = sample_point({Family::ZN, 2, std::nullopt}, ones);
  CHECK(corner[0] == 1.0);
  CHECK(corner[1] == 1.0);

  const std::vector<double> u10 = {1.0, 0.0};
  const Eigen::VectorXd p = sample_point({Family::EM, 1, std::nullopt}, u10);
  CHECK(p[0] == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(p[1] == doctest::Approx(kHalfSqrt3).epsilon(1e-15));

  CHECK_THROWS_AS(sample_point({Family::ZN, 2, std::nullopt}, std::vector<double>(3)),
                  std::invalid_argument);
}

TEST_CASE("complex-form sampling identity") {
  // B u equals psi(sum_k b_k (u_k + xi u_{k+m})) for the ring unit xi.
  const Descriptor d{Family::EM2P, 3, std::nullopt};
  const ComplexBasis cb = build_complex_basis(d.family, d.m);
  const Complex xi{0.5, kHalfSqrt3};
  CounterRng rng(9);
  for (int it = 0; it < 200; ++it) {
    std::vector<double> u(6);
    for (auto& x : u) x = rng.next_unit();
    ComplexVector acc(3, Complex{0.0, 0.0});
    for (int k = 0; k < 3; ++k) {
      const Complex coeff = u[static_cast<std::size_t>(k)] +
                            xi * u[static_cast<std::size_t>(k + 3)];
      for (int r = 0; r < 3; ++r) acc[static_cast<std::size_t>(r)] += cb.cols(r, k) * coeff;
    }
    const Eigen::VectorXd via_real = sample_point(d, u);
    CHECK((psi(acc) - via_real).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("sampler configuration is validated") {
  SamplerConfig cfg;
  cfg.groups = 1;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.groups = 3;
  cfg.samples = 1000;  // not a multiple of 3
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.samples = 999;
  CHECK_NOTHROW(cfg.validate());
  cfg.workers = -1;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("Z^1 estimate lands on 1/12") {
  SamplerConfig cfg;
  cfg.samples = 200000;
  cfg.groups = 50;
  cfg.seed = 11;
  const NsmEstimate est = estimate_nsm({Family::ZN, 1, std::nullopt}, cfg);
  CHECK(std::abs(est.g_hat - 1.0 / 12.0) <= 4.0 * est.sigma_hat);
  CHECK(est.sigma_hat > 0.0);
  CHECK(est.n == 1);
  CHECK(est.volume == 1.0);
}

TEST_CASE("mean squared error of Z^n is n/12") {
  SamplerConfig cfg;
  cfg.samples = 200000;
  cfg.groups = 50;
  cfg.seed = 12;
  const NsmEstimate est = estimate_nsm({Family::ZN, 3, std::nullopt}, cfg);
  // For Z^n the integral estimate is the plain mean error (volume 1).
  CHECK(std::abs(est.i_hat - 3.0 / 12.0) <= 3.0 * est.sigma_hat * 3.0);
}

TEST_CASE("estimate is independent of the worker count, bit for bit") {
  SamplerConfig cfg;
  cfg.samples = 60000;
  cfg.groups = 12;
  cfg.seed = 13;
  cfg.workers = 1;
  const NsmEstimate one = estimate_nsm({Family::GM, 2, std::nullopt}, cfg);
  cfg.workers = 4;
  const NsmEstimate four = estimate_nsm({Family::GM, 2, std::nullopt}, cfg);
  CHECK(bit_identical(one.g_hat, four.g_hat));
  CHECK(bit_identical(one.sigma_hat, four.sigma_hat));
  CHECK(bit_identical(one.i_hat, four.i_hat));
}

TEST_CASE("sigma shrinks like one over sqrt(T)") {
  SamplerConfig small;
  small.samples = 40000;
  small.groups = 40;
  small.seed = 14;
  SamplerConfig big = small;
  big.samples = 160000;
  const NsmEstimate s = estimate_nsm({Family::ZN, 2, std::nullopt}, small);
  const NsmEstimate b = estimate_nsm({Family::ZN, 2, std::nullopt}, big);
  const double ratio = s.sigma_hat / b.sigma_hat;
  CHECK(ratio >= 2.0 / 1.5);
  CHECK(ratio <= 2.0 * 1.5);
}

TEST_CASE("the estimate is scale-invariant") {
  SamplerConfig cfg;
  cfg.samples = 100000;
  cfg.groups = 50;
  cfg.seed = 15;
  const Descriptor z3{Family::ZN, 3, std::nullopt};
  const NsmEstimate plain = estimate_nsm(z3, cfg);

  const double c = 3.7;
  const Eigen::MatrixXd scaled = c * Eigen::MatrixXd::Identity(3, 3);
  const Quantizer q(z3);
  const NsmEstimate on_scaled = estimate_nsm_basis(
      scaled, std::abs(scaled.determinant()),
      [&](std::span<const double> y) {
        std::vector<double> inner(y.size());
        for (std::size_t k = 0; k < y.size(); ++k) inner[k] = y[k] / c;
        return c * c * q.squared_error(inner);
      },
      cfg);
  const double band = 3.0 * std::hypot(plain.sigma_hat, on_scaled.sigma_hat);
  CHECK(std::abs(plain.g_hat - on_scaled.g_hat) <= band);
}

TEST_CASE("a broken decoder trips the error bound guard") {
  SamplerConfig cfg;
  cfg.samples = 100;
  cfg.groups = 2;
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(2, 2);
  CHECK_THROWS_AS(
      estimate_nsm_basis(id, 1.0, [](std::span<const double>) { return 1e9; }, cfg),
      std::runtime_error);
}

TEST_CASE("analytic product formula") {
  CHECK(product_nsm_analytic(1.0 / 12.0, 3) == doctest::Approx(1.0 / 12.0).epsilon(1e-15));
  CHECK(product_nsm_analytic(0.070095600, 6) == doctest::Approx(0.071034583).epsilon(1e-7));
  CHECK(product_nsm_analytic(0.06952, 7) == doctest::Approx(0.07037).epsilon(2e-4));
  CHECK(product_nsm_analytic_dim(1.0 / 12.0, 1) ==
        doctest::Approx(1.0 / 12.0).epsilon(1e-15));
  CHECK_THROWS_AS(product_nsm_analytic(0.0, 3), std::invalid_argument);
}

TEST_CASE("reference table rows") {
  CHECK(table1_reference().size() == 24);
  const TableRow* r14 = table1_row(14);
  REQUIRE(r14 != nullptr);
  CHECK(r14->proposed_nsm == 0.06952);
  CHECK(std::string(r14->proposed_name) == "E7_2+");
  CHECK(r14->better_than_reported);

  const TableRow* r8 = table1_row(8);
  CHECK(r8->proposed_nsm == 0.071682099);
  CHECK_FALSE(r8->better_than_reported);

  const TableRow* r24 = table1_row(24);
  CHECK(r24->proposed_nsm == doctest::Approx(0.06858));
  CHECK(r24->best_prev_nsm == doctest::Approx(0.06577));
  CHECK_FALSE(r24->better_than_reported);

  const TableRow* r1 = table1_row(1);
  CHECK(r1->proposed_nsm == 0.0);
  CHECK(table1_row(25) == nullptr);

  for (int n : {14, 15, 18, 19, 22, 23}) CHECK(table1_row(n)->better_than_reported);
  for (int n : {2, 4, 6, 8, 16, 20, 24}) CHECK_FALSE(table1_row(n)->better_than_reported);
}
