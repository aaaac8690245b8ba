#include "gt/core/expression.hpp"

#include <cmath>
#include <cstring>
#include <string>

#include "gt/core/errors.hpp"
#include "gt/core/permutation.hpp"
#include "gt/core/rng.hpp"

namespace gt {

namespace {
__extension__ using u128 = unsigned __int128;
}

// ---- types.hpp helpers --------------------------------------------------

std::string_view to_string(OracleMode m) {
  switch (m) {
    case OracleMode::TernaryIdentifying: return "ternary-identifying";
    case OracleMode::TernaryAnonymous: return "ternary-anonymous";
    case OracleMode::CountingIdentifying: return "counting-identifying";
    case OracleMode::CountingAnonymous: return "counting-anonymous";
  }
  return "?";
}

OracleMode parse_oracle_mode(std::string_view text) {
  for (auto m : {OracleMode::TernaryIdentifying, OracleMode::TernaryAnonymous, OracleMode::CountingIdentifying,
                 OracleMode::CountingAnonymous}) {
    if (to_string(m) == text) return m;
  }
  throw InvalidArgument("mode: unknown oracle mode '" + std::string(text) + "'");
}

std::vector<ItemId> to_items(const std::vector<std::uint64_t>& ranks) {
  std::vector<ItemId> out;
  out.reserve(ranks.size());
  for (auto r : ranks) out.push_back(ItemId{r});
  return out;
}

// ---- HashFn -------------------------------------------------------------

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

}  // namespace

std::uint64_t HashFn::residue(std::uint64_t x) const {
  const std::uint64_t xr = x % r;
  std::uint64_t acc = a3 % r;
  acc = (mulmod(acc, xr, r) + a2) % r;
  acc = (mulmod(acc, xr, r) + a1) % r;
  acc = (mulmod(acc, xr, r) + b) % r;
  return acc;
}

// Deterministic Miller-Rabin; these bases are exact for all 64-bit inputs.
bool is_prime(std::uint64_t v) {
  if (v < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (v % p == 0) return v == p;
  }
  std::uint64_t d = v - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod(a, d, v);
    if (x == 1 || x == v - 1) continue;
    bool composite = true;
    for (unsigned i = 1; i < s; ++i) {
      x = mulmod(x, x, v);
      if (x == v - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::uint64_t next_prime_above(std::uint64_t v) {
  std::uint64_t c = v + 1;
  while (!is_prime(c)) ++c;
  return c;
}

// ---- expressions --------------------------------------------------------

RangeUnion::RangeUnion(Interval a) : parts{a, {}, {}}, count(1) {}
RangeUnion::RangeUnion(Interval a, Interval b) : parts{a, b, {}}, count(2) {}
RangeUnion::RangeUnion(Interval a, Interval b, Interval c) : parts{a, b, c}, count(3) {}

std::uint64_t RangeUnion::size() const {
  std::uint64_t total = 0;
  for (std::uint8_t i = 0; i < count; ++i) total += parts[i].size();
  return total;
}

bool RangeUnion::contains_rank(std::uint64_t rank) const {
  for (std::uint8_t i = 0; i < count; ++i) {
    if (parts[i].contains(rank)) return true;
  }
  return false;
}

double PrfSubset::inclusion_probability() const {
  return std::exp2(-static_cast<double>(level) / static_cast<double>(denominator));
}

std::uint64_t PrfSubset::threshold() const {
  const long double scaled =
      std::ldexp(static_cast<long double>(std::exp2(-static_cast<long double>(level) / denominator)), 64);
  if (scaled >= 18446744073709551615.0L) return ~std::uint64_t{0};
  return static_cast<std::uint64_t>(scaled);
}

bool operator==(const RangeUnion& a, const RangeUnion& b) {
  if (a.count != b.count) return false;
  for (std::uint8_t i = 0; i < a.count; ++i) {
    if (!(a.parts[i] == b.parts[i])) return false;
  }
  return true;
}
bool operator==(const HashBucket& a, const HashBucket& b) {
  return a.fn == b.fn && a.target == b.target && a.epoch == b.epoch;
}
bool operator==(const Singleton& a, const Singleton& b) { return a.id == b.id; }
bool operator==(const PrfSubset& a, const PrfSubset& b) {
  return a.seed == b.seed && a.level == b.level && a.denominator == b.denominator && a.epoch == b.epoch;
}
bool operator==(const PermutedRange& a, const PermutedRange& b) {
  return a.seed == b.seed && a.domain == b.domain && a.range == b.range && a.epoch == b.epoch;
}

namespace {

void check_epoch(std::uint32_t expected, const ItemState& state) {
  if (state.epoch != expected) {
    throw StaleExpression("expression epoch " + std::to_string(expected) + " does not match item epoch " +
                          std::to_string(state.epoch));
  }
}

}  // namespace

bool contains(const TestExpression& expr, ItemId id, const ItemState& state) {
  if (state.removed) return false;
  return std::visit(
      [&](const auto& e) -> bool {
        using T = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<T, RangeUnion>) {
          return e.contains_rank(id.rank);
        } else if constexpr (std::is_same_v<T, Singleton>) {
          return e.id == id;
        } else if constexpr (std::is_same_v<T, HashBucket>) {
          check_epoch(e.epoch, state);
          return e.fn(id.rank) == e.target;
        } else if constexpr (std::is_same_v<T, PrfSubset>) {
          check_epoch(e.epoch, state);
          return prf(e.seed, id.rank) < e.threshold();
        } else {
          check_epoch(e.epoch, state);
          if (state.local >= e.domain) return false;
          return e.range.contains(Permutation(e.seed, e.domain).forward(state.local));
        }
      },
      expr);
}

// ---- binary layout ------------------------------------------------------

namespace {

enum Tag : std::uint8_t {
  kRangeUnion = 1,
  kHashBucket = 2,
  kSingleton = 3,
  kPrfSubset = 4,
  kPermutedRange = 5,
};

class Writer {
 public:
  void u8(std::uint8_t v) { out_.push_back(std::byte{v}); }
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out_.push_back(std::byte{static_cast<std::uint8_t>(v >> (8 * i))});
  }
  void u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out_.push_back(std::byte{static_cast<std::uint8_t>(v >> (8 * i))});
  }
  std::vector<std::byte> take() { return std::move(out_); }

 private:
  std::vector<std::byte> out_;
};

class Reader {
 public:
  explicit Reader(std::span<const std::byte> in) : in_(in) {}
  std::uint8_t u8() {
    need(1);
    return static_cast<std::uint8_t>(in_[pos_++]);
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(in_[pos_++]) << (8 * i);
    return v;
  }
  std::uint64_t u64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(in_[pos_++]) << (8 * i);
    return v;
  }
  void finish() const {
    if (pos_ != in_.size()) throw DataCorruption("expression: trailing bytes");
  }

 private:
  void need(std::size_t k) const {
    if (pos_ + k > in_.size()) throw DataCorruption("expression: truncated input");
  }
  std::span<const std::byte> in_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<std::byte> serialize(const TestExpression& expr) {
  Writer w;
  std::visit(
      [&](const auto& e) {
        using T = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<T, RangeUnion>) {
          w.u8(kRangeUnion);
          w.u8(e.count);
          for (std::uint8_t i = 0; i < 3; ++i) {
            w.u64(i < e.count ? e.parts[i].lo : 0);
            w.u64(i < e.count ? e.parts[i].hi : 0);
          }
        } else if constexpr (std::is_same_v<T, HashBucket>) {
          w.u8(kHashBucket);
          w.u64(e.fn.a3);
          w.u64(e.fn.a2);
          w.u64(e.fn.a1);
          w.u64(e.fn.b);
          w.u64(e.fn.r);
          w.u32(e.fn.m);
          w.u32(e.target);
          w.u32(e.epoch);
        } else if constexpr (std::is_same_v<T, Singleton>) {
          w.u8(kSingleton);
          w.u64(e.id.rank);
        } else if constexpr (std::is_same_v<T, PrfSubset>) {
          w.u8(kPrfSubset);
          w.u64(e.seed);
          w.u32(e.level);
          w.u32(e.denominator);
          w.u32(e.epoch);
        } else {
          w.u8(kPermutedRange);
          w.u64(e.seed);
          w.u64(e.domain);
          w.u64(e.range.lo);
          w.u64(e.range.hi);
          w.u32(e.epoch);
        }
      },
      expr);
  return w.take();
}

std::size_t serialized_size(const TestExpression& expr) {
  switch (expr.index()) {
    case 0: return 1 + 1 + 3 * 16;
    case 1: return 1 + 5 * 8 + 3 * 4;
    case 2: return 1 + 8;
    case 3: return 1 + 8 + 3 * 4;
    default: return 1 + 4 * 8 + 4;
  }
}

TestExpression deserialize(std::span<const std::byte> bytes) {
  Reader r(bytes);
  const std::uint8_t tag = r.u8();
  TestExpression out;
  switch (tag) {
    case kRangeUnion: {
      RangeUnion u;
      u.count = r.u8();
      if (u.count > 3) throw DataCorruption("expression: range union with more than 3 parts");
      for (std::uint8_t i = 0; i < 3; ++i) {
        const Interval iv{r.u64(), r.u64()};
        if (i < u.count) u.parts[i] = iv;
      }
      out = u;
      break;
    }
    case kHashBucket: {
      HashBucket h;
      h.fn.a3 = r.u64();
      h.fn.a2 = r.u64();
      h.fn.a1 = r.u64();
      h.fn.b = r.u64();
      h.fn.r = r.u64();
      h.fn.m = r.u32();
      h.target = r.u32();
      h.epoch = r.u32();
      out = h;
      break;
    }
    case kSingleton: out = Singleton{ItemId{r.u64()}}; break;
    case kPrfSubset: {
      PrfSubset s;
      s.seed = r.u64();
      s.level = r.u32();
      s.denominator = r.u32();
      s.epoch = r.u32();
      out = s;
      break;
    }
    case kPermutedRange: {
      PermutedRange p;
      p.seed = r.u64();
      p.domain = r.u64();
      p.range.lo = r.u64();
      p.range.hi = r.u64();
      p.epoch = r.u32();
      out = p;
      break;
    }
    default: throw DataCorruption("expression: unknown tag " + std::to_string(tag));
  }
  r.finish();
  return out;
}

// ---- JSON debug form ----------------------------------------------------

nlohmann::json to_json(const TestExpression& expr) {
  using nlohmann::json;
  return std::visit(
      [](const auto& e) -> json {
        using T = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<T, RangeUnion>) {
          json parts = json::array();
          for (std::uint8_t i = 0; i < e.count; ++i) parts.push_back({e.parts[i].lo, e.parts[i].hi});
          return {{"type", "range_union"}, {"intervals", parts}};
        } else if constexpr (std::is_same_v<T, HashBucket>) {
          return {{"type", "hash_bucket"}, {"a3", e.fn.a3}, {"a2", e.fn.a2}, {"a1", e.fn.a1}, {"b", e.fn.b},
                  {"r", e.fn.r},           {"m", e.fn.m},   {"target", e.target}, {"epoch", e.epoch}};
        } else if constexpr (std::is_same_v<T, Singleton>) {
          return {{"type", "singleton"}, {"id", e.id.rank}};
        } else if constexpr (std::is_same_v<T, PrfSubset>) {
          return {{"type", "prf_subset"}, {"seed", e.seed}, {"level", e.level}, {"denominator", e.denominator},
                  {"epoch", e.epoch}};
        } else {
          return {{"type", "permuted_range"}, {"seed", e.seed},         {"domain", e.domain},
                  {"lo", e.range.lo},         {"hi", e.range.hi},       {"epoch", e.epoch}};
        }
      },
      expr);
}

TestExpression expression_from_json(const nlohmann::json& j) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "range_union") {
    RangeUnion u;
    const auto& parts = j.at("intervals");
    if (parts.size() > 3) throw InvalidArgument("range_union: more than 3 intervals");
    for (const auto& p : parts) {
      u.parts[u.count++] = Interval{p.at(0).get<std::uint64_t>(), p.at(1).get<std::uint64_t>()};
    }
    return u;
  }
  if (type == "hash_bucket") {
    HashBucket h;
    h.fn = HashFn{j.at("a3"), j.at("a2"), j.at("a1"), j.at("b"), j.at("r"), j.at("m")};
    h.target = j.at("target");
    h.epoch = j.at("epoch");
    return h;
  }
  if (type == "singleton") return Singleton{ItemId{j.at("id").get<std::uint64_t>()}};
  if (type == "prf_subset") {
    return PrfSubset{j.at("seed"), j.at("level"), j.at("denominator"), j.at("epoch")};
  }
  if (type == "permuted_range") {
    return PermutedRange{j.at("seed"), j.at("domain"), Interval{j.at("lo"), j.at("hi")}, j.at("epoch")};
  }
  throw InvalidArgument("expression: unknown type '" + type + "'");
}

}  // namespace gt
