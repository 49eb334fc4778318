#pragma once

// Brute-force oracles for the test suites. These deliberately avoid the
// library's own code paths: plain trial division, divisor enumeration and
// hand convolution, so expected values come from an independent route.

#include <cstdint>
#include <numeric>
#include <vector>

#include "heckelab/util.hpp"

namespace oracles {

inline std::vector<std::pair<std::uint64_t, unsigned>> naive_factor(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      unsigned e = 0;
      while (n % p == 0) n /= p, ++e;
      out.emplace_back(p, e);
    }
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

inline heckelab::Int divisor_power_sum(std::uint64_t n, unsigned k) {
  heckelab::Int acc = 0;
  for (std::uint64_t d = 1; d <= n; ++d)
    if (n % d == 0) acc += heckelab::pow_int(heckelab::Int(d), k);
  return acc;
}

inline std::uint64_t divisor_sum_u64(std::uint64_t n) {
  std::uint64_t acc = 0;
  for (std::uint64_t d = 1; d <= n; ++d)
    if (n % d == 0) acc += d;
  return acc;
}

inline std::uint64_t count_units(std::uint64_t n) {
  std::uint64_t c = 0;
  for (std::uint64_t a = 1; a <= n; ++a)
    if (std::gcd(a, n) == 1) ++c;
  return c;
}

// Truncated Cauchy product of integer coefficient vectors.
inline std::vector<heckelab::Int> convolve(const std::vector<heckelab::Int>& a,
                                           const std::vector<heckelab::Int>& b, std::size_t n) {
  std::vector<heckelab::Int> out(n, heckelab::Int(0));
  for (std::size_t i = 0; i < a.size() && i < n; ++i)
    for (std::size_t j = 0; j < b.size() && i + j < n; ++j) out[i + j] += a[i] * b[j];
  return out;
}

// Delta coefficients by expanding q * prod (1-q^m)^24 one factor at a time.
inline std::vector<heckelab::Int> delta_coeffs(std::size_t n) {
  std::vector<heckelab::Int> acc(n, heckelab::Int(0));
  acc[0] = 1;
  for (std::size_t m = 1; m < n; ++m) {
    for (int rep = 0; rep < 24; ++rep) {
      // multiply by (1 - q^m) in place
      for (std::size_t i = n; i-- > m;) acc[i] -= acc[i - m];
    }
  }
  std::vector<heckelab::Int> shifted(n, heckelab::Int(0));
  for (std::size_t i = 0; i + 1 < n; ++i) shifted[i + 1] = acc[i];
  return shifted;
}

}  // namespace oracles
