#include "gt/applications/probability.hpp"

#include <cmath>

#include "gt/core/errors.hpp"

namespace gt {

namespace {

double choose(std::uint64_t d, std::uint64_t i) {
  const double dd = static_cast<double>(d);
  const double ii = static_cast<double>(i);
  return std::exp(std::lgamma(dd + 1) - std::lgamma(ii + 1) - std::lgamma(dd - ii + 1));
}

}  // namespace

double p_mac(std::uint64_t i, std::uint64_t d, double p) {
  if (i > d) throw InvalidArgument("i: exceeds d");
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("p: must lie in [0, 1]");
  const double k = static_cast<double>(i);
  return choose(d, i) * std::pow(p, k) * std::pow(1.0 - p, static_cast<double>(d - i));
}

double p_test(std::uint64_t i, std::uint64_t n, std::uint64_t d, double p) {
  if (i > d || d > n) throw InvalidArgument("i, d: need 0 <= i <= d <= n");
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("p: must lie in [0, 1]");
  const double nn = static_cast<double>(n);
  const double pn = p * nn;
  double prod = choose(d, i);
  for (std::uint64_t j = 0; j < i; ++j) {
    prod *= (pn - static_cast<double>(j)) / (nn - static_cast<double>(j));
  }
  for (std::uint64_t j = i; j < d; ++j) {
    prod *= (nn - pn - static_cast<double>(j) + static_cast<double>(i)) / (nn - static_cast<double>(j));
  }
  return prod;
}

}  // namespace gt
