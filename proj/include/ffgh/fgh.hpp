#pragma once

// The fast-growing hierarchy B_α relative to a weakly finite denotation
// system D, its normal forms and its action on strictly increasing maps.
//
//   B_α(n) = max({n+1} ∪ {B_β(B_β(n)) : β < α, Nβ <= n})
//
// Indices are terms of D over natural numbers; the index "Top" stands for
// the whole of D, so B_Top = B_D.

#include <cstdint>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "ffgh/denotation.hpp"
#include "ffgh/order.hpp"

namespace ffgh {

inline constexpr std::uint64_t kDefaultResourceCap = std::uint64_t{1} << 20;

/// An index α ∈ D(ω) or Top.
struct AlphaBound {
  std::optional<OrdinalTerm> term;  // nullopt means Top
  static AlphaBound top() { return {}; }
  static AlphaBound of(OrdinalTerm t) { return {std::move(t)}; }
  bool is_top() const noexcept { return !term.has_value(); }
};

/// (n, α)-normal form. A constant form m < n has `constant` set; otherwise
/// the value is B_{α_k} ... B_{α_1}(n), chain = {α_1, ..., α_k} with
/// α_k < ... < α_1 < α and Nα_{i+1} <= B_{α_i} ... B_{α_1}(n).
struct NormalForm {
  std::uint64_t base = 0;
  std::optional<std::uint64_t> constant;
  std::vector<OrdinalTerm> chain;
};

class Hierarchy {
public:
  /// Throws WeakFinitenessViolation unless `d` is weakly finite.
  explicit Hierarchy(System d, std::uint64_t resource_cap = kDefaultResourceCap);

  const DenotationSystem& system() const noexcept { return *d_; }
  const System& system_ptr() const noexcept { return d_; }
  std::uint64_t resource_cap() const noexcept { return cap_; }

  /// B_α(n). Throws CapExceeded when a value or intermediate exceeds the cap.
  std::uint64_t value(const AlphaBound& alpha, std::uint64_t n);
  std::uint64_t value(const OrdinalTerm& alpha, std::uint64_t n);
  /// B_D(n).
  std::uint64_t top(std::uint64_t n) { return value(AlphaBound::top(), n); }

  /// {β ∈ D(n) : β < α}, increasing.
  std::vector<OrdinalTerm> below(std::uint64_t n, const AlphaBound& alpha) const;

  /// Greedy normal form of m < B_α(n).
  NormalForm normal_form(std::uint64_t n, std::uint64_t m, const AlphaBound& alpha);
  /// Checks the normal-form invariants; throws InvalidTerm.
  void validate(const NormalForm& nf, const AlphaBound& alpha);
  std::uint64_t eval(const NormalForm& nf);

  /// B_D(f): B_D(n) -> B_D(n') for f: n -> n'. Every image of a normal form
  /// is checked to be a normal form (InternalError otherwise).
  Morphism morphism(const Morphism& f);

  std::string to_string(const NormalForm& nf) const;

  /// Number of memoized values.
  std::size_t memo_size() const;

private:
  std::uint64_t compute(const AlphaBound& alpha, std::uint64_t n, int depth);

  System d_;
  std::uint64_t cap_;
  mutable std::mutex memo_mutex_;
  std::unordered_map<std::string, std::uint64_t> memo_;
};

/// Comparison of normal forms with the same base: constants below chains,
/// chains lexicographically by α_1, α_2, ...
std::strong_ordering nf_compare(const DenotationSystem& d, const NormalForm& a,
                                const NormalForm& b);

} // namespace ffgh
