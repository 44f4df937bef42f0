#include "oracles.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>

namespace oracle {

std::uint64_t norm(Sys s, std::uint64_t beta) {
  if (s == Sys::identity) return beta + 1;
  std::uint64_t w = 0;
  while (beta) {
    ++w;
    beta >>= 1;
  }
  return w;
}

std::uint64_t count_below(Sys s, std::uint64_t n) {
  if (s == Sys::identity) return n;
  return n >= 63 ? UINT64_MAX : (std::uint64_t{1} << n);
}

std::uint64_t BValues::value(std::optional<std::uint64_t> beta, std::uint64_t n) {
  if (n > cap_) throw Overflow{};
  const std::uint64_t key = beta ? *beta : UINT64_MAX;
  if (auto it = memo_.find({key, n}); it != memo_.end()) return it->second;
  std::uint64_t best = n + 1;
  const std::uint64_t hi = std::min(key, count_below(s_, n));
  for (std::uint64_t c = 0; c < hi; ++c) best = std::max(best, value(c, value(c, n)));
  if (best > cap_) throw Overflow{};
  memo_[{key, n}] = best;
  return best;
}

std::vector<NF> all_normal_forms(BValues& b, std::uint64_t n) {
  std::vector<NF> out;
  for (std::uint64_t m = 0; m < n; ++m) out.push_back({m, {}, m});
  std::vector<std::uint64_t> chain;
  std::function<void(std::uint64_t, std::optional<std::uint64_t>)> walk =
      [&](std::uint64_t v, std::optional<std::uint64_t> last) {
        out.push_back({std::nullopt, chain, v});
        const std::uint64_t hi = std::min(last ? *last : UINT64_MAX, count_below(b.sys(), v));
        for (std::uint64_t a = 0; a < hi; ++a) {
          chain.push_back(a);
          walk(b.value(a, v), a);
          chain.pop_back();
        }
      };
  walk(n, std::nullopt);
  return out;
}

namespace {

struct Term {
  bool star = false;
  std::size_t a = 0;
  std::vector<std::vector<std::size_t>> exps;  // each exponent: decreasing argument list
};

class Model {
public:
  Model(Sys s, std::size_t a) : s_(s) {
    for (std::size_t i = 0; i < a; ++i) add({true, i, {}});
    add({false, 0, {}});
  }

  int cmp(std::size_t x, std::size_t y) const {
    if (x == y) return 0;
    const Term& p = terms_[x];
    const Term& q = terms_[y];
    if (p.star != q.star) return p.star ? -1 : 1;
    if (p.star) return p.a < q.a ? -1 : p.a > q.a ? 1 : 0;
    return lex(p.exps, q.exps, [&](const auto& u, const auto& v) {
      return lex(u, v, [&](std::size_t i, std::size_t j) { return cmp(i, j); });
    });
  }

  bool add(Term t) {
    const std::string k = text_of(t);
    if (index_.count(k)) return false;
    index_[k] = terms_.size();
    texts_.push_back(k);
    terms_.push_back(std::move(t));
    return true;
  }

  std::size_t size() const { return terms_.size(); }
  const Term& term(std::size_t i) const { return terms_[i]; }
  const std::string& text(std::size_t i) const { return texts_[i]; }

  /// Decreasing argument lists over `below` (increasing), lexicographically
  /// less than `bound` when given.
  void exponents(const std::vector<std::size_t>& below, const std::vector<std::size_t>* bound,
                 const std::function<void(const std::vector<std::size_t>&)>& visit) const {
    std::vector<std::size_t> cur;
    // hi: indices of `below` still usable; tight: cur equals a prefix of bound.
    std::function<void(std::size_t, bool)> go = [&](std::size_t hi, bool tight) {
      const bool length_ok = s_ == Sys::pow2 || cur.size() == 1;
      const bool is_less = !tight || (bound && cur.size() < bound->size());
      if (length_ok && (is_less || !bound)) visit(cur);
      if (s_ == Sys::identity && cur.size() == 1) return;
      const std::size_t i = cur.size();
      for (std::size_t j = hi; j-- > 0;) {
        int c = -1;
        if (tight && bound) {
          if (i >= bound->size()) return;
          c = cmp(below[j], (*bound)[i]);
          if (c > 0) continue;
        }
        cur.push_back(below[j]);
        go(j, tight && bound && c == 0);
        cur.pop_back();
      }
    };
    go(below.size(), true);
  }

private:
  template <class V, class F>
  static int lex(const V& u, const V& v, F&& f) {
    const std::size_t n = std::min(u.size(), v.size());
    for (std::size_t i = 0; i < n; ++i)
      if (int c = f(u[i], v[i])) return c;
    return u.size() < v.size() ? -1 : u.size() > v.size() ? 1 : 0;
  }

  std::string text_of(const Term& t) const {
    if (t.star) return "s(" + std::to_string(t.a) + ")";
    if (t.exps.empty()) return "psi(0)";
    std::string out = "psi(";
    for (std::size_t i = 0; i < t.exps.size(); ++i) {
      if (i) out += "+";
      out += "2^{" + exp_text(t.exps[i]) + "}";
    }
    return out + ")";
  }

  std::string exp_text(const std::vector<std::size_t>& args) const {
    if (s_ == Sys::identity) return "t[0](" + texts_[args.at(0)] + ")";
    if (args.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < args.size(); ++i) out += (i ? "+2^{" : "2^{") + texts_[args[i]] + "}";
    return out;
  }

  Sys s_;
  std::vector<Term> terms_;
  std::vector<std::string> texts_;
  std::map<std::string, std::size_t> index_;
};

}  // namespace

std::vector<std::string> collapse_closure(Sys s, std::size_t a, std::size_t limit) {
  Model m(s, a);
  bool grew = true;
  while (grew) {
    grew = false;
    const std::size_t n = m.size();
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return m.cmp(x, y) < 0; });
    for (std::size_t p = 0; p < n; ++p) {
      const Term prefix = m.term(p);
      if (prefix.star) continue;
      std::vector<std::size_t> below;
      for (std::size_t x : order)
        if (m.cmp(x, p) < 0) below.push_back(x);
      const std::vector<std::size_t>* bound = prefix.exps.empty() ? nullptr : &prefix.exps.back();
      std::vector<std::vector<std::size_t>> found;
      m.exponents(below, bound, [&](const std::vector<std::size_t>& e) { found.push_back(e); });
      for (auto& e : found) {
        Term t = prefix;
        t.exps.push_back(std::move(e));
        if (m.add(std::move(t))) grew = true;
        if (m.size() > limit) throw std::runtime_error("collapse closure exceeds limit");
      }
    }
  }
  std::vector<std::size_t> order(m.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return m.cmp(x, y) < 0; });
  std::vector<std::string> out;
  for (std::size_t i : order) out.push_back(m.text(i));
  return out;
}

}  // namespace oracle
