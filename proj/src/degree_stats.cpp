#include "socnet/degree_stats.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace socnet {

double hurwitz_zeta(double s, double q) {
  if (!(s > 1.0) || !(q > 0.0)) throw std::invalid_argument("hurwitz_zeta needs s > 1, q > 0");
  // Direct sum of the first terms, Euler-Maclaurin for the remainder.
  constexpr int kDirect = 12;
  double sum = 0.0;
  for (int k = 0; k < kDirect; ++k) sum += std::pow(q + k, -s);
  const double a = q + kDirect;
  sum += std::pow(a, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(a, -s);
  // B_2j / (2j)!
  constexpr std::array<double, 6> kBernoulli = {1.0 / 12.0,         -1.0 / 720.0,
                                                1.0 / 30240.0,      -1.0 / 1209600.0,
                                                1.0 / 47900160.0,   -691.0 / 1307674368000.0};
  double rising = s;  // s (s+1) ... (s + 2j - 2)
  double power = std::pow(a, -s - 1.0);
  for (std::size_t j = 0; j < kBernoulli.size(); ++j) {
    sum += kBernoulli[j] * rising * power;
    rising *= (s + 2.0 * j + 1.0) * (s + 2.0 * j + 2.0);
    power /= a * a;
  }
  return sum;
}

double power_law_exponent(std::span<const std::uint32_t> values, std::uint32_t k_min) {
  if (k_min < 1) throw std::invalid_argument("k_min must be at least 1");
  double log_sum = 0.0;
  std::size_t count = 0;
  for (std::uint32_t k : values) {
    if (k >= k_min) {
      log_sum += std::log(static_cast<double>(k));
      ++count;
    }
  }
  if (count == 0) throw std::invalid_argument("no values at or above k_min");
  const double q = static_cast<double>(k_min);
  auto loglik = [&](double alpha) {
    return -alpha * log_sum - static_cast<double>(count) * std::log(hurwitz_zeta(alpha, q));
  };
  // Concave in alpha: golden-section search.
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = 1.0 + 1e-6;
  double hi = 10.0;
  double x1 = hi - phi * (hi - lo);
  double x2 = lo + phi * (hi - lo);
  double f1 = loglik(x1);
  double f2 = loglik(x2);
  while (hi - lo > 1e-9) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + phi * (hi - lo);
      f2 = loglik(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - phi * (hi - lo);
      f1 = loglik(x1);
    }
  }
  return 0.5 * (lo + hi);
}

double mean_clustering(const AttributedGraph& g) {
  if (g.directed()) throw std::invalid_argument("mean_clustering expects an undirected graph");
  const std::size_t n = g.num_nodes();
  std::vector<std::uint32_t> stamp(n, 0);
  double total = 0.0;
  for (NodeId v = 0; v < n; ++v) {
    const auto nbrs = g.neighbors(v);
    const std::size_t k = nbrs.size();
    if (k < 2) continue;
    for (NodeId u : nbrs) stamp[u] = v + 1;
    std::size_t links = 0;
    for (NodeId u : nbrs) {
      for (NodeId w : g.neighbors(u)) {
        if (stamp[w] == v + 1) ++links;
      }
    }
    // Each triangle edge among neighbors is seen twice.
    total += static_cast<double>(links) / static_cast<double>(k * (k - 1));
  }
  return total / static_cast<double>(n);
}

}  // namespace socnet
