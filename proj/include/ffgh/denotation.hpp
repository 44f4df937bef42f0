#pragma once

// Denotation systems: term presentations of ⊆-preserving pre-dilators.
//
// A term t(a_1,...,a_n) is a constructor applied to a strictly decreasing
// list of elements of some base order. Elements are opaque `Key`s; whoever
// holds a term also knows how to turn its keys into order keys (integers
// whose numeric order is the order of the base). Systems never see order
// keys directly: comparisons hand them dense ranks within the merged
// argument set of the two terms.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "ffgh/order.hpp"

namespace ffgh {

using Key = std::uint64_t;

/// Constructor of a denotation system. The meaning of the fields is private
/// to the system that produced it; combinators nest their components' ctors
/// in `kids` and use `mask` for the interleaving of two argument blocks.
struct Ctor {
  std::uint32_t tag = 0;
  std::uint64_t param = 0;
  std::vector<std::uint8_t> mask;
  std::vector<Ctor> kids;
};

bool operator==(const Ctor& a, const Ctor& b);
std::strong_ordering operator<=>(const Ctor& a, const Ctor& b);
/// Canonical structural encoding, injective on ctors.
std::string encode(const Ctor& c);

struct OrdinalTerm {
  Ctor ctor;
  std::vector<Key> args;  // strictly decreasing in the base order
  friend bool operator==(const OrdinalTerm&, const OrdinalTerm&) = default;
};

/// Canonical encoding of a term (ctor plus raw keys).
std::string term_key(const OrdinalTerm& t);

/// The set of order keys arguments may be drawn from: either an interval
/// [lo, hi) or an explicit sorted list.
class KeySpace {
public:
  static KeySpace interval(Key lo, Key hi);
  explicit KeySpace(std::vector<Key> sorted_keys);

  std::size_t size() const noexcept;
  Key operator[](std::size_t i) const;
  /// Index of the first key >= k.
  std::size_t lower_bound(Key k) const;
  std::optional<std::size_t> index_of(Key k) const;
  bool contains(Key k) const { return index_of(k).has_value(); }

private:
  KeySpace() = default;
  bool is_interval_ = true;
  Key lo_ = 0, hi_ = 0;
  std::vector<Key> keys_;
};

struct EnumLimits {
  std::size_t max_terms = 1u << 16;
  /// Bound on the numeric parameters of systems with infinitely many
  /// constructors of some arity (e.g. Λ+n, (ω+1)α+a).
  std::uint64_t param_cap = 4;
};

struct Enumeration {
  std::vector<OrdinalTerm> terms;
  bool param_truncated = false;  // the param cap removed terms
  bool overflow = false;         // max_terms reached; `terms` is partial
};

/// Collects enumerated terms up to a limit.
class TermSink {
public:
  explicit TermSink(EnumLimits limits) : limits_(limits) {}
  /// False once the limit is reached (the term is dropped, overflow set).
  bool add(OrdinalTerm t);
  bool full() const noexcept { return out_.overflow; }
  void mark_param_truncated() noexcept { out_.param_truncated = true; }
  std::uint64_t param_cap() const noexcept { return limits_.param_cap; }
  std::size_t remaining() const noexcept { return limits_.max_terms - out_.terms.size(); }
  EnumLimits limits() const noexcept { return limits_; }
  /// A sink for a sub-enumeration sharing this sink's remaining budget.
  TermSink child() const { return TermSink({remaining(), limits_.param_cap}); }
  void absorb_flags(const Enumeration& e) {
    out_.param_truncated |= e.param_truncated;
    out_.overflow |= e.overflow;
  }
  Enumeration take() { return std::move(out_); }
  const std::vector<OrdinalTerm>& terms() const noexcept { return out_.terms; }

private:
  EnumLimits limits_;
  Enumeration out_;
};

class DenotationSystem {
public:
  virtual ~DenotationSystem() = default;

  /// DSL text of the system.
  virtual std::string dsl() const = 0;
  virtual std::size_t arity(const Ctor& c) const = 0;
  /// Comparison of c(xs) and d(ys), where xs and ys are dense ranks within
  /// the union of both argument lists.
  virtual std::strong_ordering compare_shapes(const Ctor& c, std::span<const Key> xs,
                                              const Ctor& d,
                                              std::span<const Key> ys) const = 0;
  /// All terms with arguments from `allowed` (optionally only those strictly
  /// below `bound`, whose arguments are order keys of the same space).
  virtual void enumerate(const KeySpace& allowed, const OrdinalTerm* bound,
                         TermSink& sink) const = 0;
  /// Claim: D(n) is finite for every finite n.
  virtual bool weakly_finite() const = 0;
  /// Whether there are infinitely many constructors.
  virtual bool infinite() const = 0;
  /// Constructors are enumerated weight-major; each weight class is finite.
  virtual std::size_t weight(const Ctor& c) const = 0;
  virtual std::vector<Ctor> ctors_of_weight(std::size_t w) const = 0;
  /// Largest weight with constructors, for finite systems.
  virtual std::size_t max_weight() const = 0;
  /// Whether terms print as formal base-2 sums.
  virtual bool pow2_sugar() const { return false; }

  /// Compares two terms whose arguments are order keys.
  std::strong_ordering compare(const OrdinalTerm& a, const OrdinalTerm& b) const;

  /// Compares two terms whose arguments are mapped to order keys by `key`.
  template <class KeyFn>
  std::strong_ordering compare_by(const OrdinalTerm& a, const OrdinalTerm& b,
                                  KeyFn&& key) const {
    OrdinalTerm ka{a.ctor, {}}, kb{b.ctor, {}};
    ka.args.reserve(a.args.size());
    kb.args.reserve(b.args.size());
    for (Key x : a.args) ka.args.push_back(key(x));
    for (Key x : b.args) kb.args.push_back(key(x));
    return compare(ka, kb);
  }

  /// The i-th constructor of the weight-major enumeration d_0, d_1, ...
  std::optional<Ctor> ctor_at(std::size_t index) const;
  std::size_t index_of(const Ctor& c) const;
  /// Total number of constructors, for finite systems.
  std::optional<std::size_t> ctor_count() const;

  Enumeration enumerate(const KeySpace& allowed, const OrdinalTerm* bound,
                        EnumLimits limits) const;

  /// Throws InvalidTerm unless args match the arity and strictly decrease.
  void validate(const OrdinalTerm& t) const;

private:
  mutable std::mutex ctor_cache_mutex_;
  mutable std::vector<Ctor> ctor_cache_;
  mutable std::size_t ctor_cache_weight_ = 0;  // weights < this are cached
};

using System = std::shared_ptr<const DenotationSystem>;

// ---------------------------------------------------------------------------
// Combinators.

/// The identity dilator: one unary constructor.
System identity_system();
/// k argumentless constructors c_0 < ... < c_{k-1}.
System constant_system(std::size_t k);
/// 2^A: formal base-2 Cantor normal forms, one constructor per length.
System pow2_system();
/// Disjoint union, every term of `lower` below every term of `upper`.
System sum_system(System lower, System upper);
/// Ordinal product minor·major: pairs ordered with the `major` component
/// first. product(pow2, D) realizes 2^A·D(A).
System product_system(System minor, System major);
/// Infinitely many argumentless constructors c_0 < c_1 < ... (not weakly
/// finite).
System constant_stream_system();

// ---------------------------------------------------------------------------
// Operations on terms over finite orders. Arguments are positions in the
// order.

struct TermsOf {
  std::vector<OrdinalTerm> terms;  // sorted increasingly
  bool truncated = false;
};

/// D(A). Errors: a weakly finite claim with more than max_terms terms gives
/// WeakFinitenessViolation; other systems report truncation.
TermsOf terms_of(const DenotationSystem& d, const FiniteOrder& order,
                 EnumLimits limits);

/// D(f): argumentwise image.
OrdinalTerm map_term(const Morphism& f, const OrdinalTerm& t);

/// Strict supremum of the (natural number) arguments.
std::uint64_t norm(const OrdinalTerm& t);

std::set<Key> support(const OrdinalTerm& t);

/// Term text: `c[i]`, `t[i](a1,...,ak)` with i the constructor index, or
/// `0` / `2^{a}+2^{b}` for pow2. `name` renders an argument.
std::string format_term(const DenotationSystem& d, const OrdinalTerm& t,
                        const std::function<std::string(Key)>& name);
std::string format_term(const DenotationSystem& d, const OrdinalTerm& t);

/// |D(n)| if at most `cap`, nullopt on overflow (including any system whose
/// enumeration had to be parameter-truncated).
std::optional<std::size_t> weak_finiteness_probe(const DenotationSystem& d,
                                                 std::size_t n, std::size_t cap,
                                                 std::uint64_t param_cap = 8);

// ---------------------------------------------------------------------------
// Pre-dilator verification on finite orders.

/// Model of a term system over natural-number labels. `terms_over` gets an
/// increasing list of labels; `compare_labeled` compares terms whose
/// arguments are labels.
template <class M>
concept TermModel = requires(const M& m, const std::vector<Key>& labels,
                             const OrdinalTerm& t) {
  { m.terms_over(labels) } -> std::same_as<Enumeration>;
  { m.compare_labeled(t, t) } -> std::same_as<std::strong_ordering>;
};

/// Adapter of a DenotationSystem to TermModel.
class SystemModel {
public:
  SystemModel(const DenotationSystem& d, EnumLimits limits) : d_(d), limits_(limits) {}
  Enumeration terms_over(const std::vector<Key>& labels) const {
    return d_.enumerate(KeySpace(labels), nullptr, limits_);
  }
  std::strong_ordering compare_labeled(const OrdinalTerm& a, const OrdinalTerm& b) const {
    return d_.compare(a, b);
  }

private:
  const DenotationSystem& d_;
  EnumLimits limits_;
};

struct PredilatorReport {
  bool passed = true;
  bool truncated = false;  // some enumeration was parameter-truncated
  std::size_t orders_checked = 0;
  std::size_t terms_checked = 0;
  std::size_t morphisms_checked = 0;
  std::size_t pullbacks_checked = 0;
  std::vector<std::string> failures;

  void fail(std::string why) {
    passed = false;
    if (failures.size() < 16) failures.push_back(std::move(why));
  }
};

namespace detail {

std::string describe(const OrdinalTerm& t);
std::vector<Key> labels_of_mask(unsigned mask);
std::vector<Key> iota_labels(std::size_t n, Key offset = 0);
OrdinalTerm relabel(const OrdinalTerm& t, const std::vector<Key>& from,
                    const std::vector<Key>& to);

// Two argument blocks sharing one strictly decreasing list. mask[i] has bit
// 1 set if args[i] belongs to the first block and bit 2 for the second.
inline constexpr std::uint8_t kFirstBlock = 1;
inline constexpr std::uint8_t kSecondBlock = 2;

void merge_blocks(std::span<const Key> first, std::span<const Key> second,
                  std::vector<Key>& args, std::vector<std::uint8_t>& mask);
std::vector<Key> split_block(std::span<const Key> args,
                             const std::vector<std::uint8_t>& mask, std::uint8_t bit);
/// Every mask interleaving blocks of sizes p and q.
std::vector<std::vector<std::uint8_t>> block_masks(std::size_t p, std::size_t q);
/// Every strictly decreasing k-subset of `allowed` (all of them, unbounded).
void decreasing_subsets(const KeySpace& allowed, std::size_t k,
                        const std::function<bool(const std::vector<Key>&)>& visit);
/// Those lexicographically below `bound` (a decreasing k-sequence of keys),
/// or all of them when `bound` is null.
void decreasing_subsets_below(const KeySpace& allowed, std::size_t k,
                              const std::vector<Key>* bound,
                              const std::function<bool(const std::vector<Key>&)>& visit);

} // namespace detail

/// Verifies on all orders of size <= max_size: strict total order on D(n),
/// D(f) strictly increasing and label-invariant for every f: m -> n, the
/// functor laws, ⊆-preservation and D(B∩C) = D(B)∩D(C).
template <TermModel M>
PredilatorReport check_predilator(const M& model, std::size_t max_size) {
  PredilatorReport report;
  auto key_set = [](const Enumeration& e) {
    std::set<std::string> s;
    for (const auto& t : e.terms) s.insert(term_key(t));
    return s;
  };

  std::vector<Enumeration> by_size;
  for (std::size_t n = 0; n <= max_size; ++n) {
    const auto labels = detail::iota_labels(n);
    Enumeration e = model.terms_over(labels);
    report.truncated |= e.param_truncated;
    if (e.overflow) report.fail("enumeration overflow at size " + std::to_string(n));
    ++report.orders_checked;
    report.terms_checked += e.terms.size();
    for (const auto& t : e.terms) {
      for (std::size_t i = 0; i < t.args.size(); ++i) {
        if (t.args[i] >= n || (i > 0 && t.args[i - 1] <= t.args[i]))
          report.fail("ill-formed term " + detail::describe(t) + " over " + std::to_string(n));
      }
    }
    if (key_set(e).size() != e.terms.size())
      report.fail("duplicate terms over " + std::to_string(n));
    const auto& ts = e.terms;
    if (auto bad = check_strict_total_order(ts.size(), [&](std::size_t i, std::size_t j) {
          return model.compare_labeled(ts[i], ts[j]);
        })) {
      report.fail("not a strict total order over " + std::to_string(n) + ": " + *bad);
    }
    by_size.push_back(std::move(e));
  }

  // Morphisms: strictly increasing, images are terms, comparisons depend only
  // on relative order, composition law.
  for (std::size_t a = 0; a <= max_size; ++a) {
    for (std::size_t b = a; b <= max_size; ++b) {
      const auto src = detail::iota_labels(a);
      const auto target_keys = key_set(by_size[b]);
      for (const Morphism& f : all_morphisms(FiniteOrder::of_size(a), FiniteOrder::of_size(b))) {
        ++report.morphisms_checked;
        std::vector<Key> dst;
        for (std::size_t i = 0; i < a; ++i) dst.push_back(f(i));
        const auto& ts = by_size[a].terms;
        std::vector<OrdinalTerm> img;
        for (const auto& t : ts) {
          img.push_back(detail::relabel(t, src, dst));
          if (!target_keys.count(term_key(img.back())) && !by_size[b].param_truncated)
            report.fail("image of " + detail::describe(t) + " under " + f.to_string() + " is not a term");
        }
        if (map_term(Morphism::identity(FiniteOrder::of_size(a)), ts.empty() ? OrdinalTerm{} : ts.front()) !=
            (ts.empty() ? OrdinalTerm{} : ts.front()))
          report.fail("identity law fails");
        for (std::size_t i = 0; i < ts.size(); ++i)
          for (std::size_t j = 0; j < ts.size(); ++j) {
            if (model.compare_labeled(ts[i], ts[j]) != model.compare_labeled(img[i], img[j])) {
              report.fail("comparison of " + detail::describe(ts[i]) + " and " + detail::describe(ts[j]) +
                          " changes under relabeling " + f.to_string());
              i = ts.size();
              break;
            }
          }
        for (std::size_t c = b; c <= max_size; ++c) {
          for (const Morphism& g : all_morphisms(FiniteOrder::of_size(b), FiniteOrder::of_size(c))) {
            const Morphism gf = compose(g, f);
            for (const auto& t : ts) {
              if (map_term(gf, t) != map_term(g, map_term(f, t))) {
                report.fail("composition law fails for " + detail::describe(t));
                break;
              }
            }
          }
        }
      }
    }
  }

  // ⊆-preservation and pullbacks over every pair of suborders of max_size.
  const std::size_t n = max_size;
  const auto all = key_set(by_size[n]);
  std::vector<std::set<std::string>> sub(std::size_t{1} << n);
  for (unsigned m = 0; m < sub.size(); ++m) {
    Enumeration e = model.terms_over(detail::labels_of_mask(m));
    sub[m] = key_set(e);
    std::size_t with_support = 0;
    for (const auto& t : by_size[n].terms) {
      bool inside = true;
      for (Key x : t.args) inside = inside && ((m >> x) & 1u);
      if (inside) {
        ++with_support;
        if (!sub[m].count(term_key(t))) report.fail("term " + detail::describe(t) + " missing over suborder");
      }
    }
    for (const auto& k : sub[m])
      if (!all.count(k)) report.fail("term over suborder is not a term over the order: " + k);
    if (with_support != sub[m].size() && !e.param_truncated)
      report.fail("suborder term count mismatch for mask " + std::to_string(m));
  }
  for (unsigned b = 0; b < sub.size(); ++b)
    for (unsigned c = 0; c < sub.size(); ++c) {
      ++report.pullbacks_checked;
      std::set<std::string> inter;
      for (const auto& k : sub[b])
        if (sub[c].count(k)) inter.insert(k);
      if (inter != sub[b & c])
        report.fail("pullback identity fails for masks " + std::to_string(b) + "," + std::to_string(c));
    }
  return report;
}

inline PredilatorReport check_predilator(const DenotationSystem& d, std::size_t max_size,
                                         EnumLimits limits = {}) {
  return check_predilator(SystemModel(d, limits), max_size);
}

} // namespace ffgh
