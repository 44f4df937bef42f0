#pragma once

// Finite linear orders, strictly increasing maps, lexicographic comparison,
// formal base-2 Cantor normal forms and staged (lazily materialized) orders.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace ffgh {

/// Lexicographic comparison: a proper prefix precedes its extensions, and
/// otherwise the first differing position decides.
template <class Seq, class Cmp>
std::strong_ordering compare_lex(const Seq& xs, const Seq& ys, Cmp&& cmp) {
  const std::size_t n = std::min(std::size(xs), std::size(ys));
  for (std::size_t i = 0; i < n; ++i) {
    const std::strong_ordering c = cmp(xs[i], ys[i]);
    if (c != 0) return c;
  }
  return std::size(xs) <=> std::size(ys);
}

template <class Seq>
std::strong_ordering compare_lex(const Seq& xs, const Seq& ys) {
  return compare_lex(xs, ys, [](const auto& a, const auto& b) {
    return a <=> b;
  });
}

/// Opaque element identifier. The tag separates element kinds that live in
/// one order (e.g. the natural-number part and the lifted part of ω+A).
struct Elem {
  std::uint32_t tag = 0;
  std::uint64_t id = 0;
  friend bool operator==(const Elem&, const Elem&) = default;
};

struct ElemHash {
  std::size_t operator()(const Elem& e) const noexcept {
    return std::hash<std::uint64_t>{}(e.id * 0x9E3779B97F4A7C15ull ^ e.tag);
  }
};

/// A finite linear order; comparison is sequence position.
class FiniteOrder {
public:
  FiniteOrder() = default;
  FiniteOrder(std::vector<Elem> elems, std::vector<std::string> names);

  /// The order n = {0 < 1 < ... < n-1}.
  static FiniteOrder of_size(std::size_t n);
  /// Custom labels in increasing order.
  static FiniteOrder labelled(const std::vector<std::string>& names);

  std::size_t size() const noexcept { return elems_.size(); }
  bool empty() const noexcept { return elems_.empty(); }
  const Elem& elem(std::size_t pos) const { return elems_.at(pos); }
  const std::string& name(std::size_t pos) const { return names_.at(pos); }
  const std::vector<Elem>& elems() const noexcept { return elems_; }
  const std::vector<std::string>& names() const noexcept { return names_; }

  std::optional<std::size_t> position(const Elem& e) const;
  std::optional<std::size_t> position_of_name(std::string_view name) const;
  /// Position of `e`; throws InvalidTerm when absent.
  std::size_t require(const Elem& e) const;
  bool contains(const Elem& e) const { return position(e).has_value(); }

  std::strong_ordering compare(const Elem& a, const Elem& b) const;

  /// Suborder consisting of the given positions (any order, duplicates ignored).
  FiniteOrder suborder(std::vector<std::size_t> positions) const;

  /// "n" when the order is literally of_size(n), otherwise "a<b<c".
  std::string to_string() const;

  friend bool operator==(const FiniteOrder& a, const FiniteOrder& b) {
    return a.elems_ == b.elems_;
  }

private:
  std::vector<Elem> elems_;
  std::vector<std::string> names_;
  std::unordered_map<Elem, std::size_t, ElemHash> index_;
};

/// Parses "n" or "a<b<c".
FiniteOrder parse_order(std::string_view text);

/// The initial segment {x in A : x < a}.
FiniteOrder restrict(const FiniteOrder& order, const Elem& bound);

/// Intersection of two suborders of a common order (by element identity).
FiniteOrder intersect(const FiniteOrder& a, const FiniteOrder& b);

/// Strictly increasing total map between finite orders, stored as target
/// positions indexed by source position.
class Morphism {
public:
  Morphism(FiniteOrder source, FiniteOrder target,
           std::vector<std::size_t> image);

  static Morphism identity(const FiniteOrder& order);
  /// Inclusion of a suborder; every element of `sub` must occur in `super`.
  static Morphism inclusion(const FiniteOrder& sub, const FiniteOrder& super);

  const FiniteOrder& source() const noexcept { return source_; }
  const FiniteOrder& target() const noexcept { return target_; }
  const std::vector<std::size_t>& image() const noexcept { return image_; }

  std::size_t operator()(std::size_t source_pos) const {
    return image_.at(source_pos);
  }
  Elem apply(const Elem& e) const;

  std::string to_string() const;

  friend bool operator==(const Morphism&, const Morphism&) = default;

private:
  FiniteOrder source_;
  FiniteOrder target_;
  std::vector<std::size_t> image_;
};

/// g ∘ f.
Morphism compose(const Morphism& g, const Morphism& f);

/// Parses "0->0,1->2" using element names of `source` and `target`.
Morphism parse_morphism(std::string_view text, const FiniteOrder& source,
                        const FiniteOrder& target);

/// Every strictly increasing map source -> target.
std::vector<Morphism> all_morphisms(const FiniteOrder& source,
                                    const FiniteOrder& target);

/// Formal sum 2^{e_1} + ... + 2^{e_k} with e_1 > ... > e_k.
struct Cnf2Term {
  std::vector<Elem> exponents;
  friend bool operator==(const Cnf2Term&, const Cnf2Term&) = default;
};

/// Validates exponents against `order`; throws InvalidTerm.
void cnf2_validate(const Cnf2Term& t, const FiniteOrder& order);
std::strong_ordering cnf2_compare(const Cnf2Term& t, const Cnf2Term& u,
                                  const FiniteOrder& order);
Cnf2Term cnf2_map(const Morphism& f, const Cnf2Term& t);
/// All 2^|A| terms over A, in increasing order.
std::vector<Cnf2Term> cnf2_terms(const FiniteOrder& order);
std::string cnf2_to_string(const Cnf2Term& t, const FiniteOrder& order);
Cnf2Term parse_cnf2(std::string_view text, const FiniteOrder& order);

/// An order materialized stage by stage. Elements produced at a stage are
/// never removed and comparisons never change. Extension is single-writer.
class StagedOrder {
public:
  using Generator = std::function<std::vector<Elem>(std::size_t stage)>;
  using Comparator =
      std::function<std::strong_ordering(const Elem&, const Elem&)>;
  using Namer = std::function<std::string(const Elem&)>;

  StagedOrder(Generator generator, Comparator comparator, Namer namer,
              std::size_t stage_cap, std::size_t size_cap);

  /// Materializes all stages <= `stage` (clamped to the stage cap). Returns
  /// false if the size cap cut the materialization short.
  bool extend_to(std::size_t stage);

  std::size_t stages_built() const noexcept { return stages_built_; }
  std::size_t stage_cap() const noexcept { return stage_cap_; }
  std::size_t size_cap() const noexcept { return size_cap_; }
  bool truncated() const noexcept { return truncated_; }
  std::optional<std::size_t> stage_of(const Elem& e) const;

  /// The materialized elements, in order.
  const FiniteOrder& fragment() const noexcept { return fragment_; }
  std::strong_ordering compare(const Elem& a, const Elem& b) const;

  /// Same generator, keeping only elements below `bound`.
  StagedOrder restricted(const Elem& bound) const;

private:
  Generator generator_;
  Comparator comparator_;
  Namer namer_;
  std::size_t stage_cap_;
  std::size_t size_cap_;
  std::size_t stages_built_ = 0;
  bool started_ = false;
  bool truncated_ = false;
  std::vector<Elem> sorted_;
  std::unordered_map<Elem, std::size_t, ElemHash> stage_;
  FiniteOrder fragment_;
};

/// Element kinds of ω+A.
inline constexpr std::uint32_t kNatTag = 0;
inline constexpr std::uint32_t kLiftedTag = 1;

inline Elem nat_elem(std::uint64_t k) { return {kNatTag, k}; }
inline Elem lifted_elem(std::size_t pos_in_base) { return {kLiftedTag, pos_in_base}; }

/// ω+A: Nat(k) below every Lifted(a); Nat by k, Lifted by A. Stage 0
/// produces Nat(0) and all of A, stage k produces Nat(k).
StagedOrder omega_plus(const FiniteOrder& base, std::size_t stage_cap,
                       std::size_t size_cap);

/// The suborder {0,...,nat_count-1} + A of ω+A.
FiniteOrder omega_plus_fragment(const FiniteOrder& base, std::size_t nat_count);

/// Exhaustive trichotomy/transitivity check of `cmp` over `count` items.
/// Returns a description of the first violation, if any.
std::optional<std::string> check_strict_total_order(
    std::size_t count,
    const std::function<std::strong_ordering(std::size_t, std::size_t)>& cmp);

} // namespace ffgh
