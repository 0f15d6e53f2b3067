#include "anchored/stats.hpp"

#include <boost/math/distributions/chi_squared.hpp>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace anchored {

MeanCI mean_ci(const std::vector<double>& values, double z) {
  MeanCI r;
  r.n = values.size();
  if (r.n == 0) return r;
  // Welford keeps the variance accurate when the mean is large.
  double mean = 0.0, m2 = 0.0;
  std::size_t k = 0;
  for (double v : values) {
    ++k;
    const double delta = v - mean;
    mean += delta / static_cast<double>(k);
    m2 += delta * (v - mean);
  }
  r.mean = mean;
  if (r.n > 1) {
    r.stddev = std::sqrt(m2 / static_cast<double>(r.n - 1));
    r.half_width = z * r.stddev / std::sqrt(static_cast<double>(r.n));
  }
  return r;
}

LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y, const std::vector<double>& weights) {
  if (x.size() != y.size()) throw std::invalid_argument("linear_fit: x and y differ in length");
  if (!weights.empty() && weights.size() != x.size()) throw std::invalid_argument("linear_fit: bad weight count");
  const bool weighted = !weights.empty();
  LinearFit f;
  f.n = x.size();
  double sw = 0, sx = 0, sy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double w = weighted ? weights[i] : 1.0;
    sw += w;
    sx += w * x[i];
    sy += w * y[i];
  }
  if (sw <= 0) throw std::invalid_argument("linear_fit: no data");
  const double mx = sx / sw, my = sy / sw;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double w = weighted ? weights[i] : 1.0;
    sxx += w * (x[i] - mx) * (x[i] - mx);
    sxy += w * (x[i] - mx) * (y[i] - my);
  }
  if (sxx <= 0) throw std::invalid_argument("linear_fit: need two distinct x values");
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  if (weighted) {
    f.slope_se = std::sqrt(1.0 / sxx);
  } else if (f.n > 2) {
    double rss = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double r = y[i] - f.intercept - f.slope * x[i];
      rss += r * r;
    }
    f.slope_se = std::sqrt(rss / static_cast<double>(f.n - 2) / sxx);
  }
  return f;
}

namespace {

double chi_square_sf(double statistic, std::size_t dof) {
  if (dof == 0) return 1.0;
  boost::math::chi_squared dist(static_cast<double>(dof));
  return boost::math::cdf(boost::math::complement(dist, statistic));
}

}  // namespace

ChiSquareResult chi_square_homogeneity(const std::map<std::string, std::uint64_t>& a,
                                       const std::map<std::string, std::uint64_t>& b, double min_expected) {
  double na = 0, nb = 0;
  for (const auto& [k, c] : a) na += static_cast<double>(c);
  for (const auto& [k, c] : b) nb += static_cast<double>(c);
  ChiSquareResult r;
  if (na == 0 || nb == 0) return r;
  std::map<std::string, std::pair<double, double>> joint;
  for (const auto& [k, c] : a) joint[k].first += static_cast<double>(c);
  for (const auto& [k, c] : b) joint[k].second += static_cast<double>(c);
  const double total = na + nb;
  std::vector<std::pair<double, double>> cells;
  std::pair<double, double> rest{0, 0};
  for (const auto& [k, ab] : joint) {
    const double pooled = ab.first + ab.second;
    if (pooled * std::min(na, nb) / total < min_expected) {
      rest.first += ab.first;
      rest.second += ab.second;
    } else {
      cells.push_back(ab);
    }
  }
  if (rest.first + rest.second > 0) cells.push_back(rest);
  if (cells.size() < 2) return r;
  for (const auto& [oa, ob] : cells) {
    const double pooled = oa + ob;
    const double ea = pooled * na / total, eb = pooled * nb / total;
    r.statistic += (oa - ea) * (oa - ea) / ea + (ob - eb) * (ob - eb) / eb;
  }
  r.dof = cells.size() - 1;
  r.p_value = chi_square_sf(r.statistic, r.dof);
  return r;
}

ChiSquareResult chi_square_goodness(const std::vector<std::uint64_t>& observed, const std::vector<double>& probs) {
  if (observed.size() != probs.size()) throw std::invalid_argument("chi_square_goodness: size mismatch");
  double n = 0;
  for (auto c : observed) n += static_cast<double>(c);
  ChiSquareResult r;
  std::size_t cells = 0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    if (probs[i] <= 0) {
      if (observed[i] != 0) return ChiSquareResult{INFINITY, observed.size() - 1, 0.0};
      continue;
    }
    const double e = n * probs[i];
    const double d = static_cast<double>(observed[i]) - e;
    r.statistic += d * d / e;
    ++cells;
  }
  r.dof = cells > 0 ? cells - 1 : 0;
  r.p_value = chi_square_sf(r.statistic, r.dof);
  return r;
}

}  // namespace anchored
