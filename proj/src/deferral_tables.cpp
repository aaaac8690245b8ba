#include <cmath>

#include "gt/core/errors.hpp"
#include "gt/deferral.hpp"

namespace gt {

double bucket_occupancy(std::uint64_t k, double s) {
  if (!(s > 0.0)) throw InvalidArgument("s: spread factor must be positive");
  const double kk = static_cast<double>(k);
  return std::exp(-std::lgamma(kk + 1) - kk * std::log(s) - 1.0 / s);
}

DeferralTables deferral_tables(double p) {
  if (!(p > 0.0 && p < 1.0)) throw InvalidArgument("p: must lie in (0, 1)");
  const double q = 1.0 - p;
  auto pw = [](double x, int k) { return std::pow(x, k); };
  DeferralTables t;
  t.p = p;
  auto& E = t.e;
  E[2] = (1 + 2 * p * q) / (2 * p * q);
  E[3] = (1 + 3 * p * q * q + (3 * p * p * q + 3 * p * q * q) * E[2]) / (1 - pw(p, 3) - pw(q, 3));
  E[4] = (1 + 4 * p * pw(q, 3) + (4 * pw(p, 3) * q + 4 * p * pw(q, 3)) * E[3] + 6 * p * p * q * q * E[2]) /
         (1 - pw(p, 4) - pw(q, 4));
  E[5] = (1 + 5 * p * pw(q, 4) + (5 * pw(p, 4) * q + 5 * p * pw(q, 4)) * E[4] + 10 * pw(p, 3) * q * q * E[3] +
          10 * p * p * pw(q, 3) * E[2]) /
         (1 - pw(p, 5) - pw(q, 5));
  E[6] = (1 + 6 * p * pw(q, 5) + (6 * pw(p, 5) * q + 6 * p * pw(q, 5)) * E[5] + 15 * pw(p, 4) * q * q * E[4] +
          20 * pw(p, 3) * pw(q, 3) * E[3] + 15 * p * p * pw(q, 4) * E[2]) /
         (1 - pw(p, 6) - pw(q, 6));
  E[7] = (1 + 7 * p * pw(q, 6) + (7 * pw(p, 6) * q + 7 * p * pw(q, 6)) * E[6] + 21 * pw(p, 5) * q * q * E[5] +
          35 * pw(p, 4) * pw(q, 3) * E[4] + 35 * pw(p, 3) * pw(q, 4) * E[3] + 21 * p * p * pw(q, 5) * E[2]) /
         (1 - pw(p, 7) - pw(q, 7));

  auto& D = t.d;
  D[3] = 3 * p * p * q / (1 - pw(p, 3) - pw(q, 3));
  D[4] = (4 * pw(p, 3) * q + 12 * p * p * q * q + (4 * pw(p, 3) * q + 4 * p * pw(q, 3)) * D[3]) /
         (1 - pw(p, 4) - pw(q, 4));
  D[5] = (5 * pw(p, 4) * q + 20 * pw(p, 3) * q * q + 30 * p * p * pw(q, 3) +
          (5 * pw(p, 4) * q + 5 * p * pw(q, 4)) * D[4] + 10 * pw(p, 3) * q * q * D[3]) /
         (1 - pw(p, 5) - pw(q, 5));
  D[6] = (6 * pw(p, 5) * q + 30 * pw(p, 4) * q * q + 60 * pw(p, 3) * pw(q, 3) + 60 * p * p * pw(q, 4) +
          (6 * pw(p, 5) * q + 6 * p * pw(q, 5)) * D[5] + 15 * pw(p, 4) * q * q * D[4] +
          20 * pw(p, 3) * pw(q, 3) * D[3]) /
         (1 - pw(p, 6) - pw(q, 6));
  return t;
}

TotalEstimate expected_total_estimate(double s, double p) {
  const DeferralTables t = deferral_tables(p);
  double tests = 1.0;
  double deferred = 0.0;
  double mass = 0.0;
  for (std::uint64_t k = 0; k <= 7; ++k) {
    const double pk = bucket_occupancy(k, s);
    mass += pk;
    tests += pk * t.e[k];
    const double dk = k == 7 ? 5.0 : k < t.d.size() ? t.d[k] : 0.0;
    deferred += pk * dk;
  }
  if (!(s * deferred < 1.0)) throw InvalidArgument("s: deferred mass does not shrink between rounds");
  return TotalEstimate{s * tests / (1.0 - s * deferred), std::max(0.0, 1.0 - mass)};
}

}  // namespace gt
