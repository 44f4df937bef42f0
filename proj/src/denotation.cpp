#include "ffgh/denotation.hpp"

#include <algorithm>

#include "ffgh/error.hpp"

namespace ffgh {

bool operator==(const Ctor& a, const Ctor& b) {
  return a.tag == b.tag && a.param == b.param && a.mask == b.mask && a.kids == b.kids;
}

std::strong_ordering operator<=>(const Ctor& a, const Ctor& b) {
  if (auto c = a.tag <=> b.tag; c != 0) return c;
  if (auto c = a.param <=> b.param; c != 0) return c;
  if (auto c = compare_lex(a.mask, b.mask); c != 0) return c;
  return compare_lex(a.kids, b.kids, [](const Ctor& x, const Ctor& y) { return x <=> y; });
}

std::string encode(const Ctor& c) {
  std::string out = std::to_string(c.tag) + ":" + std::to_string(c.param);
  if (!c.mask.empty()) {
    out += '/';
    for (auto m : c.mask) out += static_cast<char>('0' + m);
  }
  if (!c.kids.empty()) {
    out += '{';
    for (std::size_t i = 0; i < c.kids.size(); ++i) {
      if (i) out += ',';
      out += encode(c.kids[i]);
    }
    out += '}';
  }
  return out;
}

std::string term_key(const OrdinalTerm& t) {
  std::string out = encode(t.ctor) + "(";
  for (std::size_t i = 0; i < t.args.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(t.args[i]);
  }
  return out + ")";
}

// ---------------------------------------------------------------------------

KeySpace KeySpace::interval(Key lo, Key hi) {
  KeySpace s;
  s.lo_ = lo;
  s.hi_ = std::max(lo, hi);
  return s;
}

KeySpace::KeySpace(std::vector<Key> sorted_keys) : is_interval_(false), keys_(std::move(sorted_keys)) {
  for (std::size_t i = 1; i < keys_.size(); ++i)
    if (keys_[i - 1] >= keys_[i]) throw InvalidTerm("key space must be strictly increasing");
}

std::size_t KeySpace::size() const noexcept {
  return is_interval_ ? static_cast<std::size_t>(hi_ - lo_) : keys_.size();
}

Key KeySpace::operator[](std::size_t i) const {
  return is_interval_ ? lo_ + i : keys_[i];
}

std::size_t KeySpace::lower_bound(Key k) const {
  if (is_interval_) return k <= lo_ ? 0 : static_cast<std::size_t>(std::min(k, hi_) - lo_);
  return static_cast<std::size_t>(std::lower_bound(keys_.begin(), keys_.end(), k) - keys_.begin());
}

std::optional<std::size_t> KeySpace::index_of(Key k) const {
  const std::size_t i = lower_bound(k);
  if (i < size() && (*this)[i] == k) return i;
  return std::nullopt;
}

bool TermSink::add(OrdinalTerm t) {
  if (out_.terms.size() >= limits_.max_terms) {
    out_.overflow = true;
    return false;
  }
  out_.terms.push_back(std::move(t));
  return true;
}

// ---------------------------------------------------------------------------

std::strong_ordering DenotationSystem::compare(const OrdinalTerm& a, const OrdinalTerm& b) const {
  std::vector<Key> merged(a.args);
  merged.insert(merged.end(), b.args.begin(), b.args.end());
  std::sort(merged.begin(), merged.end());
  merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
  auto rank = [&](Key k) {
    return static_cast<Key>(std::lower_bound(merged.begin(), merged.end(), k) - merged.begin());
  };
  std::vector<Key> xs, ys;
  xs.reserve(a.args.size());
  ys.reserve(b.args.size());
  for (Key k : a.args) xs.push_back(rank(k));
  for (Key k : b.args) ys.push_back(rank(k));
  return compare_shapes(a.ctor, xs, b.ctor, ys);
}

std::optional<Ctor> DenotationSystem::ctor_at(std::size_t index) const {
  std::lock_guard lock(ctor_cache_mutex_);
  const std::size_t limit = infinite() ? std::size_t(-1) : max_weight();
  while (ctor_cache_.size() <= index) {
    if (ctor_cache_weight_ > limit) return std::nullopt;
    auto group = ctors_of_weight(ctor_cache_weight_++);
    std::sort(group.begin(), group.end());
    for (auto& c : group) ctor_cache_.push_back(std::move(c));
  }
  return ctor_cache_[index];
}

std::size_t DenotationSystem::index_of(const Ctor& c) const {
  const std::size_t w = weight(c);
  std::size_t i = 0;
  while (true) {
    auto d = ctor_at(i);
    if (!d) break;
    if (*d == c) return i;
    if (weight(*d) > w) break;
    ++i;
  }
  throw InvalidTerm("constructor " + encode(c) + " does not belong to " + dsl());
}

std::optional<std::size_t> DenotationSystem::ctor_count() const {
  if (infinite()) return std::nullopt;
  std::size_t n = 0;
  while (ctor_at(n)) ++n;
  return n;
}

Enumeration DenotationSystem::enumerate(const KeySpace& allowed, const OrdinalTerm* bound,
                                        EnumLimits limits) const {
  TermSink sink(limits);
  enumerate(allowed, bound, sink);
  return sink.take();
}

void DenotationSystem::validate(const OrdinalTerm& t) const {
  if (arity(t.ctor) != t.args.size())
    throw InvalidTerm("constructor expects " + std::to_string(arity(t.ctor)) + " arguments, got " +
                      std::to_string(t.args.size()));
  for (std::size_t i = 1; i < t.args.size(); ++i)
    if (t.args[i - 1] <= t.args[i]) throw InvalidTerm("arguments must be strictly decreasing");
}

// ---------------------------------------------------------------------------

namespace detail {

std::string describe(const OrdinalTerm& t) { return term_key(t); }

std::vector<Key> labels_of_mask(unsigned mask) {
  std::vector<Key> out;
  for (unsigned i = 0; i < 32; ++i)
    if ((mask >> i) & 1u) out.push_back(i);
  return out;
}

std::vector<Key> iota_labels(std::size_t n, Key offset) {
  std::vector<Key> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = offset + i;
  return out;
}

OrdinalTerm relabel(const OrdinalTerm& t, const std::vector<Key>& from, const std::vector<Key>& to) {
  OrdinalTerm out{t.ctor, {}};
  for (Key k : t.args) {
    auto it = std::lower_bound(from.begin(), from.end(), k);
    if (it == from.end() || *it != k) throw InvalidTerm("relabel: label outside domain");
    out.args.push_back(to[static_cast<std::size_t>(it - from.begin())]);
  }
  return out;
}

void merge_blocks(std::span<const Key> first, std::span<const Key> second, std::vector<Key>& args,
                  std::vector<std::uint8_t>& mask) {
  args.clear();
  mask.clear();
  std::size_t i = 0, j = 0;
  while (i < first.size() || j < second.size()) {
    if (j == second.size() || (i < first.size() && first[i] > second[j])) {
      args.push_back(first[i++]);
      mask.push_back(kFirstBlock);
    } else if (i == first.size() || second[j] > first[i]) {
      args.push_back(second[j++]);
      mask.push_back(kSecondBlock);
    } else {
      args.push_back(first[i]);
      mask.push_back(kFirstBlock | kSecondBlock);
      ++i;
      ++j;
    }
  }
}

std::vector<Key> split_block(std::span<const Key> args, const std::vector<std::uint8_t>& mask,
                             std::uint8_t bit) {
  std::vector<Key> out;
  for (std::size_t i = 0; i < args.size() && i < mask.size(); ++i)
    if (mask[i] & bit) out.push_back(args[i]);
  return out;
}

std::vector<std::vector<std::uint8_t>> block_masks(std::size_t p, std::size_t q) {
  std::vector<std::vector<std::uint8_t>> out;
  std::vector<std::uint8_t> cur;
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t a, std::size_t b) {
    if (a == 0 && b == 0) {
      out.push_back(cur);
      return;
    }
    for (std::uint8_t m : {kFirstBlock, kSecondBlock, std::uint8_t(kFirstBlock | kSecondBlock)}) {
      const std::size_t da = (m & kFirstBlock) ? 1 : 0, db = (m & kSecondBlock) ? 1 : 0;
      if (da > a || db > b) continue;
      cur.push_back(m);
      rec(a - da, b - db);
      cur.pop_back();
    }
  };
  rec(p, q);
  return out;
}

void decreasing_subsets(const KeySpace& allowed, std::size_t k,
                        const std::function<bool(const std::vector<Key>&)>& visit) {
  std::vector<Key> cur;
  bool stop = false;
  std::function<void(std::size_t)> rec = [&](std::size_t hi) {
    if (stop) return;
    if (cur.size() == k) {
      stop = !visit(cur);
      return;
    }
    const std::size_t need = k - cur.size();
    for (std::size_t j = hi; j-- > 0 && j + 1 >= need && !stop;) {
      cur.push_back(allowed[j]);
      rec(j);
      cur.pop_back();
    }
  };
  rec(allowed.size());
}

void decreasing_subsets_below(const KeySpace& allowed, std::size_t k, const std::vector<Key>* bound,
                              const std::function<bool(const std::vector<Key>&)>& visit) {
  if (!bound) return decreasing_subsets(allowed, k, visit);
  if (bound->size() != k) throw InvalidTerm("lex bound of the wrong length");
  std::vector<Key> cur;
  bool stop = false;
  std::function<void(std::size_t)> free = [&](std::size_t hi) {
    if (stop) return;
    if (cur.size() == k) {
      stop = !visit(cur);
      return;
    }
    const std::size_t need = k - cur.size();
    for (std::size_t j = hi; j-- > 0 && j + 1 >= need && !stop;) {
      cur.push_back(allowed[j]);
      free(j);
      cur.pop_back();
    }
  };
  // cur equals the first cur.size() entries of the bound.
  std::function<void(std::size_t)> tight = [&](std::size_t hi) {
    const std::size_t i = cur.size();
    if (i == k || stop) return;
    const std::size_t need = k - i;
    const std::size_t lim = std::min(hi, allowed.lower_bound((*bound)[i]));
    for (std::size_t j = lim; j-- > 0 && j + 1 >= need && !stop;) {
      cur.push_back(allowed[j]);
      free(j);
      cur.pop_back();
    }
    if (auto at = allowed.index_of((*bound)[i]); at && *at < hi && !stop) {
      cur.push_back((*bound)[i]);
      tight(*at);
      cur.pop_back();
    }
  };
  tight(allowed.size());
}

} // namespace detail

// ---------------------------------------------------------------------------
// Combinators.

namespace {

class IdentitySystem final : public DenotationSystem {
public:
  std::string dsl() const override { return "id"; }
  std::size_t arity(const Ctor&) const override { return 1; }
  std::strong_ordering compare_shapes(const Ctor&, std::span<const Key> xs, const Ctor&,
                                      std::span<const Key> ys) const override {
    return xs[0] <=> ys[0];
  }
  void enumerate(const KeySpace& allowed, const OrdinalTerm* bound, TermSink& sink) const override {
    const std::size_t hi = bound ? allowed.lower_bound(bound->args.at(0)) : allowed.size();
    for (std::size_t i = 0; i < hi; ++i)
      if (!sink.add({Ctor{}, {allowed[i]}})) return;
  }
  bool weakly_finite() const override { return true; }
  bool infinite() const override { return false; }
  std::size_t weight(const Ctor&) const override { return 1; }
  std::vector<Ctor> ctors_of_weight(std::size_t w) const override {
    if (w == 1) return {Ctor{}};
    return {};
  }
  std::size_t max_weight() const override { return 1; }
};

class ConstantSystem final : public DenotationSystem {
public:
  explicit ConstantSystem(std::size_t k) : k_(k) {}
  std::string dsl() const override { return "const(" + std::to_string(k_) + ")"; }
  std::size_t arity(const Ctor&) const override { return 0; }
  std::strong_ordering compare_shapes(const Ctor& c, std::span<const Key>, const Ctor& d,
                                      std::span<const Key>) const override {
    return c.param <=> d.param;
  }
  void enumerate(const KeySpace&, const OrdinalTerm* bound, TermSink& sink) const override {
    const std::uint64_t hi = bound ? std::min<std::uint64_t>(bound->ctor.param, k_) : k_;
    for (std::uint64_t i = 0; i < hi; ++i)
      if (!sink.add({Ctor{0, i, {}, {}}, {}})) return;
  }
  bool weakly_finite() const override { return true; }
  bool infinite() const override { return false; }
  std::size_t weight(const Ctor&) const override { return 0; }
  std::vector<Ctor> ctors_of_weight(std::size_t w) const override {
    std::vector<Ctor> out;
    if (w == 0)
      for (std::uint64_t i = 0; i < k_; ++i) out.push_back(Ctor{0, i, {}, {}});
    return out;
  }
  std::size_t max_weight() const override { return 0; }

private:
  std::size_t k_;
};

class Pow2System final : public DenotationSystem {
public:
  std::string dsl() const override { return "pow2"; }
  std::size_t arity(const Ctor& c) const override { return static_cast<std::size_t>(c.param); }
  std::strong_ordering compare_shapes(const Ctor&, std::span<const Key> xs, const Ctor&,
                                      std::span<const Key> ys) const override {
    return compare_lex(xs, ys);
  }
  void enumerate(const KeySpace& allowed, const OrdinalTerm* bound, TermSink& sink) const override {
    std::vector<Key> cur;
    bool stop = false;
    auto emit = [&] {
      if (!sink.add({Ctor{0, cur.size(), {}, {}}, cur})) stop = true;
    };
    // Every extension of cur by keys at indices < hi.
    std::function<void(std::size_t)> free = [&](std::size_t hi) {
      emit();
      for (std::size_t j = hi; j-- > 0 && !stop;) {
        cur.push_back(allowed[j]);
        free(j);
        cur.pop_back();
      }
    };
    if (!bound) {
      free(allowed.size());
      return;
    }
    const auto& b = bound->args;
    // cur equals b[0..i); emit everything below b extending cur.
    std::function<void(std::size_t, std::size_t)> tight = [&](std::size_t i, std::size_t hi) {
      if (i == b.size() || stop) return;
      emit();
      const std::size_t lim = std::min(hi, allowed.lower_bound(b[i]));
      for (std::size_t j = 0; j < lim && !stop; ++j) {
        cur.push_back(allowed[j]);
        free(j);
        cur.pop_back();
      }
      if (auto at = allowed.index_of(b[i]); at && *at < hi && !stop) {
        cur.push_back(b[i]);
        tight(i + 1, *at);
        cur.pop_back();
      }
    };
    tight(0, allowed.size());
  }
  bool weakly_finite() const override { return true; }
  bool infinite() const override { return true; }
  std::size_t weight(const Ctor& c) const override { return static_cast<std::size_t>(c.param); }
  std::vector<Ctor> ctors_of_weight(std::size_t w) const override { return {Ctor{0, w, {}, {}}}; }
  std::size_t max_weight() const override { return 0; }
  bool pow2_sugar() const override { return true; }
};

class SumSystem final : public DenotationSystem {
public:
  SumSystem(System lower, System upper) : sides_{std::move(lower), std::move(upper)} {}
  std::string dsl() const override {
    return "sum(" + sides_[0]->dsl() + "," + sides_[1]->dsl() + ")";
  }
  std::size_t arity(const Ctor& c) const override { return side(c).arity(c.kids.at(0)); }
  std::strong_ordering compare_shapes(const Ctor& c, std::span<const Key> xs, const Ctor& d,
                                      std::span<const Key> ys) const override {
    if (c.tag != d.tag) return c.tag <=> d.tag;
    return side(c).compare_shapes(c.kids[0], xs, d.kids[0], ys);
  }
  void enumerate(const KeySpace& allowed, const OrdinalTerm* bound, TermSink& sink) const override {
    for (std::uint32_t s = 0; s < 2; ++s) {
      if (bound && s > bound->ctor.tag) break;
      TermSink sub = sink.child();
      if (bound && s == bound->ctor.tag) {
        OrdinalTerm inner{bound->ctor.kids.at(0), bound->args};
        sides_[s]->enumerate(allowed, &inner, sub);
      } else {
        sides_[s]->enumerate(allowed, nullptr, sub);
      }
      Enumeration e = sub.take();
      sink.absorb_flags(e);
      for (auto& t : e.terms)
        if (!sink.add({Ctor{s, 0, {}, {std::move(t.ctor)}}, std::move(t.args)})) return;
      if (sink.full()) return;
    }
  }
  bool weakly_finite() const override {
    return sides_[0]->weakly_finite() && sides_[1]->weakly_finite();
  }
  bool infinite() const override { return sides_[0]->infinite() || sides_[1]->infinite(); }
  std::size_t weight(const Ctor& c) const override { return side(c).weight(c.kids.at(0)); }
  std::vector<Ctor> ctors_of_weight(std::size_t w) const override {
    std::vector<Ctor> out;
    for (std::uint32_t s = 0; s < 2; ++s) {
      if (!sides_[s]->infinite() && w > sides_[s]->max_weight()) continue;
      for (auto& c : sides_[s]->ctors_of_weight(w)) out.push_back(Ctor{s, 0, {}, {std::move(c)}});
    }
    return out;
  }
  std::size_t max_weight() const override {
    return std::max(sides_[0]->max_weight(), sides_[1]->max_weight());
  }

private:
  const DenotationSystem& side(const Ctor& c) const {
    if (c.tag > 1) throw InvalidTerm("sum: bad constructor " + encode(c));
    return *sides_[c.tag];
  }
  System sides_[2];
};

bool has_ctors(const DenotationSystem& d) { return d.infinite() || d.ctor_at(0).has_value(); }

class ProductSystem final : public DenotationSystem {
public:
  ProductSystem(System minor, System major) : minor_(std::move(minor)), major_(std::move(major)) {}
  std::string dsl() const override { return "prod(" + minor_->dsl() + "," + major_->dsl() + ")"; }
  std::size_t arity(const Ctor& c) const override { return c.mask.size(); }
  std::strong_ordering compare_shapes(const Ctor& c, std::span<const Key> xs, const Ctor& d,
                                      std::span<const Key> ys) const override {
    const auto x2 = detail::split_block(xs, c.mask, detail::kSecondBlock);
    const auto y2 = detail::split_block(ys, d.mask, detail::kSecondBlock);
    if (auto r = major_->compare_shapes(c.kids.at(1), x2, d.kids.at(1), y2); r != 0) return r;
    const auto x1 = detail::split_block(xs, c.mask, detail::kFirstBlock);
    const auto y1 = detail::split_block(ys, d.mask, detail::kFirstBlock);
    return minor_->compare_shapes(c.kids.at(0), x1, d.kids.at(0), y1);
  }
  void enumerate(const KeySpace& allowed, const OrdinalTerm* bound, TermSink& sink) const override {
    auto run = [&](const DenotationSystem& d, const OrdinalTerm* b) {
      TermSink sub = sink.child();
      d.enumerate(allowed, b, sub);
      Enumeration e = sub.take();
      sink.absorb_flags(e);
      return e;
    };
    auto combine = [&](const std::vector<OrdinalTerm>& mins, const std::vector<OrdinalTerm>& majs) {
      for (const auto& y : majs)
        for (const auto& x : mins) {
          OrdinalTerm t{Ctor{0, 0, {}, {x.ctor, y.ctor}}, {}};
          detail::merge_blocks(x.args, y.args, t.args, t.ctor.mask);
          if (!sink.add(std::move(t))) return false;
        }
      return true;
    };
    const Enumeration all_minor = run(*minor_, nullptr);
    if (!bound) {
      combine(all_minor.terms, run(*major_, nullptr).terms);
      return;
    }
    const OrdinalTerm b1{bound->ctor.kids.at(0), detail::split_block(bound->args, bound->ctor.mask, detail::kFirstBlock)};
    const OrdinalTerm b2{bound->ctor.kids.at(1), detail::split_block(bound->args, bound->ctor.mask, detail::kSecondBlock)};
    if (!combine(all_minor.terms, run(*major_, &b2).terms)) return;
    for (Key k : b2.args)
      if (!allowed.contains(k)) return;
    combine(run(*minor_, &b1).terms, {b2});
  }
  bool weakly_finite() const override { return minor_->weakly_finite() && major_->weakly_finite(); }
  bool infinite() const override {
    return (minor_->infinite() || major_->infinite()) && has_ctors(*minor_) && has_ctors(*major_);
  }
  std::size_t weight(const Ctor& c) const override {
    return minor_->weight(c.kids.at(0)) + major_->weight(c.kids.at(1));
  }
  std::vector<Ctor> ctors_of_weight(std::size_t w) const override {
    std::vector<Ctor> out;
    for (std::size_t w1 = 0; w1 <= w; ++w1) {
      if (!minor_->infinite() && w1 > minor_->max_weight()) break;
      if (!major_->infinite() && w - w1 > major_->max_weight()) continue;
      for (const auto& c1 : minor_->ctors_of_weight(w1))
        for (const auto& c2 : major_->ctors_of_weight(w - w1))
          for (auto& m : detail::block_masks(minor_->arity(c1), major_->arity(c2)))
            out.push_back(Ctor{0, 0, std::move(m), {c1, c2}});
    }
    return out;
  }
  std::size_t max_weight() const override { return minor_->max_weight() + major_->max_weight(); }

private:
  System minor_, major_;
};

class ConstantStreamSystem final : public DenotationSystem {
public:
  std::string dsl() const override { return "cstream"; }
  std::size_t arity(const Ctor&) const override { return 0; }
  std::strong_ordering compare_shapes(const Ctor& c, std::span<const Key>, const Ctor& d,
                                      std::span<const Key>) const override {
    return c.param <=> d.param;
  }
  void enumerate(const KeySpace&, const OrdinalTerm* bound, TermSink& sink) const override {
    std::uint64_t hi = sink.param_cap();
    if (bound && bound->ctor.param <= hi) hi = bound->ctor.param;
    else sink.mark_param_truncated();
    for (std::uint64_t i = 0; i < hi; ++i)
      if (!sink.add({Ctor{0, i, {}, {}}, {}})) return;
  }
  bool weakly_finite() const override { return false; }
  bool infinite() const override { return true; }
  std::size_t weight(const Ctor& c) const override { return static_cast<std::size_t>(c.param); }
  std::vector<Ctor> ctors_of_weight(std::size_t w) const override { return {Ctor{0, w, {}, {}}}; }
  std::size_t max_weight() const override { return 0; }
};

} // namespace

System identity_system() { return std::make_shared<IdentitySystem>(); }
System constant_system(std::size_t k) { return std::make_shared<ConstantSystem>(k); }
System pow2_system() { return std::make_shared<Pow2System>(); }
System sum_system(System lower, System upper) {
  return std::make_shared<SumSystem>(std::move(lower), std::move(upper));
}
System product_system(System minor, System major) {
  return std::make_shared<ProductSystem>(std::move(minor), std::move(major));
}
System constant_stream_system() { return std::make_shared<ConstantStreamSystem>(); }

// ---------------------------------------------------------------------------

TermsOf terms_of(const DenotationSystem& d, const FiniteOrder& order, EnumLimits limits) {
  Enumeration e = d.enumerate(KeySpace::interval(0, order.size()), nullptr, limits);
  TermsOf out;
  if (d.weakly_finite() && (e.overflow || e.param_truncated))
    throw WeakFinitenessViolation(d.dsl() + " claims weak finiteness but D(" + order.to_string() +
                                  ") exceeds " + std::to_string(limits.max_terms) + " terms");
  out.truncated = e.overflow || e.param_truncated;
  out.terms = std::move(e.terms);
  std::sort(out.terms.begin(), out.terms.end(),
            [&](const OrdinalTerm& a, const OrdinalTerm& b) { return d.compare(a, b) < 0; });
  return out;
}

OrdinalTerm map_term(const Morphism& f, const OrdinalTerm& t) {
  OrdinalTerm out{t.ctor, {}};
  out.args.reserve(t.args.size());
  for (Key k : t.args) {
    if (k >= f.source().size()) throw InvalidTerm("argument outside the domain of the map");
    out.args.push_back(f(static_cast<std::size_t>(k)));
  }
  return out;
}

std::uint64_t norm(const OrdinalTerm& t) {
  std::uint64_t n = 0;
  for (Key k : t.args) n = std::max<std::uint64_t>(n, k + 1);
  return n;
}

std::set<Key> support(const OrdinalTerm& t) { return {t.args.begin(), t.args.end()}; }

std::string format_term(const DenotationSystem& d, const OrdinalTerm& t,
                        const std::function<std::string(Key)>& name) {
  std::string out;
  if (d.pow2_sugar()) {
    if (t.args.empty()) return "0";
    for (std::size_t i = 0; i < t.args.size(); ++i) {
      if (i) out += '+';
      out += "2^{" + name(t.args[i]) + "}";
    }
    return out;
  }
  const std::string index = std::to_string(d.index_of(t.ctor));
  if (t.args.empty()) return "c[" + index + "]";
  out = "t[" + index + "](";
  for (std::size_t i = 0; i < t.args.size(); ++i) {
    if (i) out += ',';
    out += name(t.args[i]);
  }
  return out + ")";
}

std::string format_term(const DenotationSystem& d, const OrdinalTerm& t) {
  return format_term(d, t, [](Key k) { return std::to_string(k); });
}

std::optional<std::size_t> weak_finiteness_probe(const DenotationSystem& d, std::size_t n,
                                                 std::size_t cap, std::uint64_t param_cap) {
  Enumeration e = d.enumerate(KeySpace::interval(0, n), nullptr, {cap, param_cap});
  if (e.overflow || e.param_truncated) return std::nullopt;
  return e.terms.size();
}

} // namespace ffgh
