#include "anchored/formulas.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace anchored {

namespace {

void require_positive(double h) {
  if (!(h > 0.0) || !std::isfinite(h)) throw std::domain_error("h must be a positive real");
}

double xlogy_ratio(double x, double y) { return x == 0.0 ? 0.0 : x * std::log(x / y); }

}  // namespace

double log_psi(double h) {
  require_positive(h);
  return (1.0 + 1.0 / h) * std::log1p(h) - std::log(h);
}

double psi(double h) {
  require_positive(h);
  // pow keeps integer-valued cases such as psi(1) = 4 exact.
  return std::pow(1.0 + h, 1.0 + 1.0 / h) / h;
}

double rate_function(double p, double alpha) {
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("rate function needs 0 < p < 1");
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::domain_error("rate function needs 0 <= alpha <= 1");
  return xlogy_ratio(alpha, p) + xlogy_ratio(1.0 - alpha, 1.0 - p);
}

double binomial_tail(std::uint64_t n, double p, std::uint64_t m) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("binomial p must be in [0,1]");
  if (m >= n) return 1.0;
  if (p == 0.0) return 1.0;
  if (p == 1.0) return 0.0;
  const double lp = std::log(p);
  const double lq = std::log1p(-p);
  const double lgn = std::lgamma(static_cast<double>(n) + 1.0);
  double sum = 0.0;
  double comp = 0.0;
  for (std::uint64_t k = 0; k <= m; ++k) {
    const double dk = static_cast<double>(k);
    const double log_term = lgn - std::lgamma(dk + 1.0) - std::lgamma(static_cast<double>(n - k) + 1.0) + dk * lp +
                            static_cast<double>(n - k) * lq;
    const double term = std::exp(log_term);
    const double t = sum + term;
    comp += std::abs(sum) >= std::abs(term) ? (sum - t) + term : (term - t) + sum;
    sum = t;
  }
  return std::min(1.0, sum + comp);
}

Thresholds thresholds(double h) {
  require_positive(h);
  Thresholds t;
  t.pc_bound = 1.0 / (1.0 + h);
  t.survival_threshold = t.pc_bound;
  t.expansion_threshold = 1.0 - h / std::pow(1.0 + h, 1.0 + 1.0 / h);
  return t;
}

bool within_psi_bound(std::uint64_t count, std::uint64_t n, double h) {
  if (count == 0) return true;
  return std::log(static_cast<double>(count)) <= static_cast<double>(n) * log_psi(h);
}

std::uint64_t catalan(std::uint32_t n) {
  if (n > 35) throw std::overflow_error("catalan number does not fit in 64 bits");
  // C_{k+1} = C_k * 2(2k+1) / (k+2); the product stays exact in 128 bits.
  unsigned __int128 c = 1;
  for (std::uint32_t k = 0; k < n; ++k) c = c * 2 * (2 * k + 1) / (k + 2);
  return static_cast<std::uint64_t>(c);
}

}  // namespace anchored
