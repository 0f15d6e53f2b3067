#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace anchored {

struct MeanCI {
  double mean = 0.0;
  double stddev = 0.0;       // sample standard deviation
  double half_width = 0.0;  // normal-approximation 95% half width
  std::size_t n = 0;

  double lower() const noexcept { return mean - half_width; }
  double upper() const noexcept { return mean + half_width; }
};

MeanCI mean_ci(const std::vector<double>& values, double z = 1.959963984540054);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_se = 0.0;
  std::size_t n = 0;

  double slope_lower(double z = 1.959963984540054) const noexcept { return slope - z * slope_se; }
  double slope_upper(double z = 1.959963984540054) const noexcept { return slope + z * slope_se; }
};

// Weighted least squares y ~ a + b x. With unit weights the standard error is
// the classical residual-based one; with weights w_i = 1/var_i it is the
// inverse-variance one. Needs at least two distinct x values (three for the
// residual-based error).
LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y,
                     const std::vector<double>& weights = {});

struct ChiSquareResult {
  double statistic = 0.0;
  std::size_t dof = 0;
  double p_value = 1.0;
};

// Two-sample homogeneity test on categorical counts. Categories whose pooled
// expected count is below `min_expected` in either sample are merged into one
// residual category.
ChiSquareResult chi_square_homogeneity(const std::map<std::string, std::uint64_t>& a,
                                       const std::map<std::string, std::uint64_t>& b, double min_expected = 5.0);

// Goodness of fit of observed counts against expected probabilities.
ChiSquareResult chi_square_goodness(const std::vector<std::uint64_t>& observed, const std::vector<double>& probs);

// Total-variation distance between the two empirical distributions.
template <class K>
double total_variation(const std::map<K, std::uint64_t>& a, const std::map<K, std::uint64_t>& b) {
  double na = 0, nb = 0;
  for (const auto& [k, c] : a) na += static_cast<double>(c);
  for (const auto& [k, c] : b) nb += static_cast<double>(c);
  if (na == 0 || nb == 0) return na == nb ? 0.0 : 1.0;
  std::map<K, std::pair<double, double>> joint;
  for (const auto& [k, c] : a) joint[k].first = static_cast<double>(c) / na;
  for (const auto& [k, c] : b) joint[k].second = static_cast<double>(c) / nb;
  double tv = 0.0;
  for (const auto& [k, pq] : joint) tv += pq.first > pq.second ? pq.first - pq.second : pq.second - pq.first;
  return tv / 2.0;
}

}  // namespace anchored
