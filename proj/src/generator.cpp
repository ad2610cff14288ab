#include <algorithm>
#include <numeric>
#include <random>

#include <fmt/format.h>

#include "arcipm/lp_model.hpp"

namespace arcipm {

namespace {

constexpr int kMaxDraws = 100;
constexpr double kMinSingularRatio = 1e-6;

}  // namespace

GeneratedInstance generate_random_lp(Index m, Index n, std::uint64_t seed) {
  if (m < 1 || n <= m) {
    throw ModelError(fmt::format("generator needs 1 <= m < n, got m={} n={}", m, n));
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> entry(-1.0, 1.0);
  std::uniform_real_distribution<double> positive(0.5, 1.5);

  Eigen::MatrixXd a(m, n);
  bool full_rank = false;
  for (int draw = 0; draw < kMaxDraws && !full_rank; ++draw) {
    for (Index j = 0; j < n; ++j) {
      for (Index i = 0; i < m; ++i) a(i, j) = entry(rng);
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
    const auto& sv = svd.singularValues();
    full_rank = sv(m - 1) > kMinSingularRatio * sv(0);
  }
  if (!full_rank) {
    throw std::runtime_error(
        fmt::format("generator could not draw a full-row-rank {}x{} matrix (seed {})", m, n, seed));
  }

  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::shuffle(order.begin(), order.end(), rng);

  Vector x_star = Vector::Zero(n);
  Vector s_star = Vector::Zero(n);
  for (Index k = 0; k < n; ++k) {
    const Index j = order[static_cast<std::size_t>(k)];
    if (k < m) {
      x_star(j) = positive(rng);
    } else {
      s_star(j) = positive(rng);
    }
  }
  Vector y_star(m);
  for (Index i = 0; i < m; ++i) y_star(i) = entry(rng);

  Matrix a_real = to_real(a);
  Vector b = a_real * x_star;
  Vector c = a_real.transpose() * y_star + s_star;
  return {StandardLP(std::move(a_real), std::move(b), std::move(c)), std::move(x_star),
          std::move(y_star), std::move(s_star), seed};
}

}  // namespace arcipm
