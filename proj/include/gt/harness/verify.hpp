#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace gt {

/// Algorithms verify_small enumerates.
const std::vector<std::string>& verifiable_algorithms();

bool is_randomized(const std::string& algorithm);

struct VerifyReport {
  std::string algorithm;
  std::uint64_t n = 0;
  std::uint64_t configurations = 0;
  std::uint64_t runs = 0;
  std::uint64_t failures = 0;
  std::uint64_t worst_tests = 0;
  std::string first_failure;  // "d=.. {..} seed=..: reason"
};

/// Runs `algorithm` on every configuration of [0, n) for every d in
/// [d_min, min(d_max, n)], `seeds` times for randomized algorithms.
/// Requires n <= 12.
VerifyReport verify_small(const std::string& algorithm, std::uint64_t n, std::uint64_t seeds, std::uint64_t d_min = 0,
                          std::uint64_t d_max = ~std::uint64_t{0});

}  // namespace gt
