#pragma once

#include <exception>
#include <stdexcept>
#include <thread>
#include <vector>

// Template body of the Monte Carlo core. Groups are never split between
// workers: each group's compensated sum is accumulated sequentially in
// sample order by exactly one worker, which makes the estimate independent
// of the worker count, bit for bit.

namespace latq {

namespace detail {

struct KahanSum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double v) {
    const double y = v - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

inline int resolve_workers(int requested, int groups) {
  int w = requested > 0 ? requested
                        : static_cast<int>(std::thread::hardware_concurrency());
  if (w < 1) w = 1;
  return w < groups ? w : groups;
}

}  // namespace detail

template <class SqErrFn>
NsmEstimate estimate_nsm_basis(const Eigen::MatrixXd& basis, double volume,
                               SqErrFn&& sq_err, const SamplerConfig& cfg) {
  cfg.validate();
  const int n = static_cast<int>(basis.rows());
  const int g = cfg.groups;
  const long long h = cfg.per_group();
  // Loose parallelepiped bound on any sample's quantization error; a
  // violation means a decoder bug, not noise.
  const double error_cap =
      0.25 * basis.colwise().squaredNorm().sum() * (1.0 + 1e-9) + 1e-12;

  std::vector<double> group_sum(static_cast<std::size_t>(g), 0.0);
  const int workers = detail::resolve_workers(cfg.workers, g);

  auto run_groups = [&](int first_group, int stride) {
    std::vector<double> u(static_cast<std::size_t>(n));
    Eigen::VectorXd y(n);
    for (int s = first_group; s < g; s += stride) {
      detail::KahanSum acc;
      const long long t0 = static_cast<long long>(s) * h;
      for (long long t = t0; t < t0 + h; ++t) {
        const auto base = static_cast<std::uint64_t>(t) * static_cast<std::uint64_t>(n);
        for (int j = 0; j < n; ++j)
          u[static_cast<std::size_t>(j)] = uniform01(cfg.seed, base + static_cast<std::uint64_t>(j));
        y.noalias() = basis * Eigen::Map<const Eigen::VectorXd>(u.data(), n);
        const double e2 = sq_err(std::span<const double>(y.data(), static_cast<std::size_t>(n)));
        if (!(e2 <= error_cap))
          throw std::runtime_error("sample error exceeds the parallelepiped bound");
        acc.add(e2);
      }
      group_sum[static_cast<std::size_t>(s)] = acc.sum;
    }
  };

  if (workers == 1) {
    run_groups(0, 1);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          run_groups(w, workers);
        } catch (...) {
          errors[static_cast<std::size_t>(w)] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (const auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  detail::KahanSum total;
  for (double s : group_sum) total.add(s);
  const double t_count = static_cast<double>(cfg.samples);
  // The sample mean of ||e||^2 estimates I / Vol, so the Voronoi integral
  // estimate carries one volume factor.
  const double i_hat = volume * (total.sum / t_count);

  const double scale =
      static_cast<double>(n) * std::pow(volume, 1.0 + 2.0 / static_cast<double>(n));
  double dev = 0.0;
  for (double s : group_sum) {
    const double diff = volume * (s / static_cast<double>(h)) - i_hat;
    dev += diff * diff;
  }
  const double sigma = std::sqrt(dev / (static_cast<double>(g) * (g - 1.0))) / scale;

  NsmEstimate est;
  est.g_hat = i_hat / scale;
  est.sigma_hat = sigma;
  est.i_hat = i_hat;
  est.volume = volume;
  est.n = n;
  est.config = cfg;
  return est;
}

}  // namespace latq
