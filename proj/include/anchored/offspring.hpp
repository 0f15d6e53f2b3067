#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace anchored {

// Offspring law p_0..p_K with K <= 64.
class OffspringDistribution {
 public:
  static constexpr std::size_t kMaxSupport = 64;

  // Throws std::invalid_argument unless probs are nonnegative, K <= 64 and
  // the sum is 1 within 1e-12.
  explicit OffspringDistribution(std::vector<double> probs);

  // Parses "0.25,0,0.75".
  static OffspringDistribution parse(const std::string& csv);

  const std::vector<double>& probs() const noexcept { return probs_; }
  double prob(std::size_t k) const noexcept { return k < probs_.size() ? probs_[k] : 0.0; }
  std::size_t max_offspring() const noexcept { return probs_.size() - 1; }

  double mean() const noexcept { return mean_; }
  bool supercritical() const noexcept { return mean_ > 1.0; }

  // f(s) = sum p_i s^i (Horner).
  double generating_function(double s) const noexcept;

  // Inverse-CDF draw from a uniform in [0,1).
  std::size_t sample(double u) const noexcept;

 private:
  std::vector<double> probs_;
  std::vector<double> cdf_;
  double mean_ = 0.0;
};

}  // namespace anchored
