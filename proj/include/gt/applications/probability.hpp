#pragma once

#include <cstdint>

namespace gt {

/// C(d, i) p^i (1 - p)^(d - i): exactly i of d devices transmit.
double p_mac(std::uint64_t i, std::uint64_t d, double p);

/// Probability that a random subset of size p n holds exactly i of the d
/// defectives, by the double product
///   C(d, i) prod_{j<i} (pn - j)/(n - j) prod_{i<=j<d} (n - pn - j + i)/(n - j).
/// pn may be fractional.
double p_test(std::uint64_t i, std::uint64_t n, std::uint64_t d, double p);

}  // namespace gt
