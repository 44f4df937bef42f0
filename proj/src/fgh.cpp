#include "ffgh/fgh.hpp"

#include <algorithm>

#include "ffgh/error.hpp"

namespace ffgh {

namespace {

std::string memo_key(const AlphaBound& alpha, std::uint64_t n) {
  return (alpha.is_top() ? std::string("T") : term_key(*alpha.term)) + "@" + std::to_string(n);
}

} // namespace

Hierarchy::Hierarchy(System d, std::uint64_t resource_cap) : d_(std::move(d)), cap_(resource_cap) {
  if (!d_) throw InvalidTerm("hierarchy: null system");
  if (!d_->weakly_finite())
    throw WeakFinitenessViolation(d_->dsl() + " is not weakly finite; B_D is undefined");
  if (cap_ == 0) throw InvalidTerm("resource cap must be >= 1");
}

std::vector<OrdinalTerm> Hierarchy::below(std::uint64_t n, const AlphaBound& alpha) const {
  const OrdinalTerm* bound = alpha.is_top() ? nullptr : &*alpha.term;
  Enumeration e = d_->enumerate(KeySpace::interval(0, n), bound,
                                {static_cast<std::size_t>(std::min<std::uint64_t>(cap_, SIZE_MAX)), 0});
  if (e.param_truncated)
    throw WeakFinitenessViolation(d_->dsl() + " needed a parameter cap over " + std::to_string(n));
  if (e.overflow)
    throw CapExceeded("more than " + std::to_string(cap_) + " indices below the bound over " +
                      std::to_string(n));
  std::sort(e.terms.begin(), e.terms.end(),
            [&](const OrdinalTerm& a, const OrdinalTerm& b) { return d_->compare(a, b) < 0; });
  return std::move(e.terms);
}

std::uint64_t Hierarchy::value(const AlphaBound& alpha, std::uint64_t n) {
  if (alpha.term) d_->validate(*alpha.term);
  return compute(alpha, n, 0);
}

std::uint64_t Hierarchy::value(const OrdinalTerm& alpha, std::uint64_t n) {
  return value(AlphaBound::of(alpha), n);
}

std::uint64_t Hierarchy::compute(const AlphaBound& alpha, std::uint64_t n, int depth) {
  if (n >= cap_) throw CapExceeded("B argument " + std::to_string(n) + " exceeds resource cap " + std::to_string(cap_));
  const std::string key = memo_key(alpha, n);
  {
    std::lock_guard lock(memo_mutex_);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  }
  if (depth > 100000) throw CapExceeded("recursion depth exceeded");
  std::uint64_t best = n + 1;
  for (const OrdinalTerm& beta : below(n, alpha)) {
    const AlphaBound b = AlphaBound::of(beta);
    const std::uint64_t once = compute(b, n, depth + 1);
    best = std::max(best, compute(b, once, depth + 1));
  }
  if (best > cap_)
    throw CapExceeded("B value " + std::to_string(best) + " exceeds resource cap " + std::to_string(cap_));
  std::lock_guard lock(memo_mutex_);
  memo_.emplace(key, best);
  return best;
}

std::size_t Hierarchy::memo_size() const {
  std::lock_guard lock(memo_mutex_);
  return memo_.size();
}

NormalForm Hierarchy::normal_form(std::uint64_t n, std::uint64_t m, const AlphaBound& alpha) {
  const std::uint64_t limit = value(alpha, n);
  if (m >= limit)
    throw InvalidTerm("no normal form: " + std::to_string(m) + " >= B(" + std::to_string(n) + ") = " +
                      std::to_string(limit));
  NormalForm nf{n, std::nullopt, {}};
  if (m < n) {
    nf.constant = m;
    return nf;
  }
  std::uint64_t v = n;
  AlphaBound upper = alpha;
  while (v < m) {
    const auto cands = below(v, upper);
    const OrdinalTerm* pick = nullptr;
    std::uint64_t next = 0;
    for (auto it = cands.rbegin(); it != cands.rend(); ++it) {
      const std::uint64_t w = compute(AlphaBound::of(*it), v, 0);
      if (w <= m) {
        pick = &*it;
        next = w;
        break;
      }
    }
    if (!pick) throw InternalError("normal form search stuck at " + std::to_string(v));
    nf.chain.push_back(*pick);
    upper = AlphaBound::of(*pick);
    v = next;
  }
  return nf;
}

void Hierarchy::validate(const NormalForm& nf, const AlphaBound& alpha) {
  if (nf.constant) {
    if (*nf.constant >= nf.base || !nf.chain.empty())
      throw InvalidTerm("constant normal form must be below its base");
    return;
  }
  std::uint64_t v = nf.base;
  for (std::size_t i = 0; i < nf.chain.size(); ++i) {
    const OrdinalTerm& a = nf.chain[i];
    d_->validate(a);
    if (norm(a) > v)
      throw InvalidTerm("normal form: N(alpha_" + std::to_string(i + 1) + ") = " + std::to_string(norm(a)) +
                        " exceeds " + std::to_string(v));
    const OrdinalTerm* upper = i == 0 ? (alpha.term ? &*alpha.term : nullptr) : &nf.chain[i - 1];
    if (upper && d_->compare(a, *upper) >= 0)
      throw InvalidTerm("normal form: alpha_" + std::to_string(i + 1) + " is not below its predecessor");
    v = compute(AlphaBound::of(a), v, 0);
  }
}

std::uint64_t Hierarchy::eval(const NormalForm& nf) {
  if (nf.constant) return *nf.constant;
  std::uint64_t v = nf.base;
  for (const auto& a : nf.chain) v = value(a, v);
  return v;
}

Morphism Hierarchy::morphism(const Morphism& f) {
  const FiniteOrder& src = f.source();
  const FiniteOrder& tgt = f.target();
  const std::uint64_t n = src.size(), n2 = tgt.size();
  if (!(src == FiniteOrder::of_size(n)) || !(tgt == FiniteOrder::of_size(n2)))
    throw InvalidTerm("B_D(f) needs a map between natural numbers");
  const std::uint64_t size = top(n), size2 = top(n2);
  std::vector<std::size_t> g(size);
  for (std::uint64_t m = 0; m < size; ++m) {
    const NormalForm nf = normal_form(n, m, AlphaBound::top());
    if (nf.constant) {
      g[m] = f(*nf.constant);
      continue;
    }
    NormalForm image{n2, std::nullopt, {}};
    for (const auto& a : nf.chain) {
      OrdinalTerm b{a.ctor, {}};
      for (Key k : a.args) b.args.push_back(g.at(k));
      image.chain.push_back(std::move(b));
    }
    try {
      validate(image, AlphaBound::top());
    } catch (const InvalidTerm& e) {
      throw InternalError("image of the normal form of " + std::to_string(m) + " is not normal: " + e.what());
    }
    g[m] = eval(image);
    if (g[m] >= size2) throw InternalError("image out of range");
  }
  try {
    return Morphism(FiniteOrder::of_size(size), FiniteOrder::of_size(size2), std::move(g));
  } catch (const InvalidTerm& e) {
    throw InternalError(std::string("B_D(f) is not strictly increasing: ") + e.what());
  }
}

std::string Hierarchy::to_string(const NormalForm& nf) const {
  if (nf.constant) return std::to_string(*nf.constant);
  std::string out;
  for (auto it = nf.chain.rbegin(); it != nf.chain.rend(); ++it)
    out += "B_{" + format_term(*d_, *it) + "}";
  if (nf.chain.empty()) return std::to_string(nf.base);
  return out + "(" + std::to_string(nf.base) + ")";
}

std::strong_ordering nf_compare(const DenotationSystem& d, const NormalForm& a, const NormalForm& b) {
  if (a.base != b.base) throw InvalidTerm("normal forms over different bases");
  if (a.constant && b.constant) return *a.constant <=> *b.constant;
  if (a.constant) return std::strong_ordering::less;
  if (b.constant) return std::strong_ordering::greater;
  return compare_lex(a.chain, b.chain,
                     [&](const OrdinalTerm& x, const OrdinalTerm& y) { return d.compare(x, y); });
}

} // namespace ffgh
