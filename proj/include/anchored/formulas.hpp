#pragma once

#include <cstdint>

namespace anchored {

// Psi(h) = (1+h)^(1+1/h) / h, the growth bound for animals in a graph with
// anchored expansion h. Throws std::domain_error for h <= 0.
double psi(double h);
double log_psi(double h);

// I_p(alpha) = alpha log(alpha/p) + (1-alpha) log((1-alpha)/(1-p)), with
// 0 log 0 = 0. Throws std::domain_error unless 0 < p < 1 and 0 <= alpha <= 1.
double rate_function(double p, double alpha);

// P(Binom(n, p) <= m), summed term by term with Neumaier compensation.
// Terms are formed in log space, so large n does not overflow.
double binomial_tail(std::uint64_t n, double p, std::uint64_t m);

struct Thresholds {
  double pc_bound = 0.0;             // p_c <= 1/(1+h)
  double expansion_threshold = 0.0;  // above it, an anchored-expansion cluster: 1 - h/(1+h)^(1+1/h)
  double survival_threshold = 0.0;   // above it, an infinite cluster: 1/(1+h)
};

Thresholds thresholds(double h);

// Compares an exact count against Psi(h)^n without forming the power:
// log(count) <= n log Psi(h).
bool within_psi_bound(std::uint64_t count, std::uint64_t n, double h);

std::uint64_t catalan(std::uint32_t n);

}  // namespace anchored
