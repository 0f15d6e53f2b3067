#include "anchored/offspring.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace anchored {

OffspringDistribution::OffspringDistribution(std::vector<double> probs) : probs_(std::move(probs)) {
  if (probs_.empty()) throw std::invalid_argument("offspring law is empty");
  while (probs_.size() > 1 && probs_.back() == 0.0) probs_.pop_back();
  if (probs_.size() > kMaxSupport + 1) throw std::invalid_argument("offspring support exceeds 64");
  double sum = 0.0;
  for (double p : probs_) {
    if (!(p >= 0.0) || !std::isfinite(p)) throw std::invalid_argument("offspring probability must be nonnegative");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-12) throw std::invalid_argument("offspring probabilities must sum to 1");
  cdf_.resize(probs_.size());
  double acc = 0.0;
  for (std::size_t k = 0; k < probs_.size(); ++k) {
    acc += probs_[k];
    cdf_[k] = acc;
    mean_ += static_cast<double>(k) * probs_[k];
  }
  cdf_.back() = 1.0;
}

OffspringDistribution OffspringDistribution::parse(const std::string& csv) {
  std::vector<double> probs;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      probs.push_back(std::stod(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw std::invalid_argument("bad offspring probability: '" + item + "'");
    }
  }
  return OffspringDistribution(std::move(probs));
}

double OffspringDistribution::generating_function(double s) const noexcept {
  double acc = 0.0;
  for (auto it = probs_.rbegin(); it != probs_.rend(); ++it) acc = acc * s + *it;
  return acc;
}

std::size_t OffspringDistribution::sample(double u) const noexcept {
  auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  auto k = static_cast<std::size_t>(it - cdf_.begin());
  k = std::min(k, probs_.size() - 1);
  // Never return a zero-probability class at a flat CDF step.
  while (probs_[k] == 0.0 && k + 1 < probs_.size()) ++k;
  return k;
}

}  // namespace anchored
