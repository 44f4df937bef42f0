#pragma once

// Test-side reference computations. Nothing here uses the library: indices
// are plain integers and collapse terms are a small standalone model.
//
//   identity: index x, norm x+1, D(n) = {0,...,n-1}
//   pow2:     index b read as a bit set, norm = bit width, D(n) = [0, 2^n)

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

enum class Sys { identity, pow2 };

std::uint64_t norm(Sys s, std::uint64_t beta);
/// |D(n)|, saturating.
std::uint64_t count_below(Sys s, std::uint64_t n);

struct Overflow {};

class BValues {
public:
  BValues(Sys s, std::uint64_t cap) : s_(s), cap_(cap) {}
  /// B_beta(n); nullopt beta is the top. Throws Overflow beyond the cap.
  std::uint64_t value(std::optional<std::uint64_t> beta, std::uint64_t n);
  std::uint64_t top(std::uint64_t n) { return value(std::nullopt, n); }
  Sys sys() const { return s_; }

private:
  Sys s_;
  std::uint64_t cap_;
  std::map<std::pair<std::uint64_t, std::uint64_t>, std::uint64_t> memo_;
};

struct NF {
  std::optional<std::uint64_t> constant;
  std::vector<std::uint64_t> chain;  // alpha_1 > alpha_2 > ...
  std::uint64_t value = 0;
};

/// Every normal form of base n (constants, the empty chain and all chains
/// satisfying the norm conditions).
std::vector<NF> all_normal_forms(BValues& b, std::uint64_t n);

/// Closure of the collapse rules over the order {0,...,a-1}; texts in
/// increasing order, in the library's canonical syntax.
std::vector<std::string> collapse_closure(Sys s, std::size_t a, std::size_t limit = 100000);

}  // namespace oracle
