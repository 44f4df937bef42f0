#include "ffgh/collapse.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include "ffgh/error.hpp"

namespace ffgh {

namespace {

std::string star_text(const FiniteOrder& base, std::size_t pos) { return "s(" + base.name(pos) + ")"; }

std::string psi_text(const DenotationSystem& d, const std::vector<OrdinalTerm>& exps,
                     const std::function<std::string(Key)>& name) {
  if (exps.empty()) return "psi(0)";
  std::string out = "psi(";
  for (std::size_t i = 0; i < exps.size(); ++i) {
    if (i) out += '+';
    out += "2^{" + format_term(d, exps[i], name) + "}";
  }
  return out + ")";
}

} // namespace

CollapseFragment::CollapseFragment(System d, FiniteOrder base, CollapseCaps caps)
    : d_(std::move(d)), base_(std::move(base)), caps_(caps) {
  if (!d_) throw InvalidTerm("collapse: null system");
  if (caps_.size_cap == 0 || caps_.param_cap == 0) throw InvalidTerm("collapse: caps must be >= 1");
  for (std::size_t a = 0; a < base_.size(); ++a) {
    if (nodes_.size() >= caps_.size_cap) {
      size_truncated_ = true;
      first_truncated_stage_ = 0;
      break;
    }
    CollapseNode n;
    n.star = true;
    n.base_pos = a;
    stars_.push_back(add(std::move(n)));
  }
  if (!size_truncated_) {
    if (nodes_.size() >= caps_.size_cap) {
      size_truncated_ = true;
      first_truncated_stage_ = 0;
    } else {
      add(CollapseNode{});
    }
  }
  resort();
  for (std::size_t n = 1; n <= caps_.stage_cap && !size_truncated_ && !stabilized_; ++n)
    build_stage(n);
}

NodeId CollapseFragment::add(CollapseNode node) {
  const NodeId id = static_cast<NodeId>(nodes_.size());
  std::string text;
  if (node.star) {
    text = star_text(base_, node.base_pos);
  } else {
    by_exps_.emplace(exps_key(node.exps), id);
    text = psi_text(*d_, node.exps, [&](Key k) { return text_.at(k); });
  }
  by_text_.emplace(text, id);
  text_.push_back(std::move(text));
  nodes_.push_back(std::move(node));
  return id;
}

std::string CollapseFragment::exps_key(const std::vector<OrdinalTerm>& exps) const {
  std::string key;
  for (const auto& t : exps) key += term_key(t) + "+";
  return key;
}

void CollapseFragment::resort() {
  const std::size_t old = sorted_.size();
  std::vector<NodeId> fresh;
  for (NodeId id = static_cast<NodeId>(old); id < nodes_.size(); ++id) fresh.push_back(id);
  // Arguments of every exponent are older than this round, so their
  // positions are valid keys.
  auto less = [&](NodeId a, NodeId b) {
    const auto& x = nodes_[a];
    const auto& y = nodes_[b];
    if (x.star != y.star) return x.star;
    if (x.star) return x.base_pos < y.base_pos;
    return compare_lex(x.exps, y.exps, [&](const OrdinalTerm& s, const OrdinalTerm& t) {
             return d_->compare_by(s, t, [&](Key k) { return static_cast<Key>(position_.at(k)); });
           }) < 0;
  };
  std::sort(fresh.begin(), fresh.end(), less);
  std::vector<NodeId> merged;
  merged.reserve(nodes_.size());
  std::merge(sorted_.begin(), sorted_.end(), fresh.begin(), fresh.end(), std::back_inserter(merged), less);
  sorted_ = std::move(merged);
  position_.assign(nodes_.size(), 0);
  for (std::size_t i = 0; i < sorted_.size(); ++i) position_[sorted_[i]] = i;
}

bool CollapseFragment::build_stage(std::size_t n) {
  const std::vector<NodeId> snapshot = sorted_;
  bool added = false;
  bool param_cut = false;
  for (NodeId p : snapshot) {
    if (nodes_[p].star) continue;
    const std::vector<OrdinalTerm> prefix = nodes_[p].exps;
    const std::size_t pos = position_[p];
    std::optional<OrdinalTerm> bound;
    if (!prefix.empty()) {
      bound = prefix.back();
      for (Key& k : bound->args) k = position_.at(k);
    }
    Enumeration e = d_->enumerate(KeySpace::interval(0, pos), bound ? &*bound : nullptr,
                                  {caps_.size_cap, caps_.param_cap});
    param_cut |= e.param_truncated;
    if (e.overflow) size_truncated_ = true;
    // Deterministic insertion order: increasing exponent.
    std::sort(e.terms.begin(), e.terms.end(),
              [&](const OrdinalTerm& a, const OrdinalTerm& b) { return d_->compare(a, b) < 0; });
    for (auto& t : e.terms) {
      for (Key& k : t.args) k = snapshot.at(k);
      std::vector<OrdinalTerm> exps = prefix;
      exps.push_back(std::move(t));
      if (by_exps_.count(exps_key(exps))) continue;
      if (nodes_.size() >= caps_.size_cap) {
        size_truncated_ = true;
        break;
      }
      CollapseNode node;
      node.exps = std::move(exps);
      node.stage = n;
      node.prefix = p;
      add(std::move(node));
      added = true;
    }
    if (size_truncated_) break;
  }
  resort();
  stages_built_ = n;
  if (param_cut) param_truncated_ = true;
  if ((param_cut || size_truncated_) && !first_truncated_stage_) first_truncated_stage_ = n;
  if (!added && !param_cut && !size_truncated_) stabilized_ = true;
  return added;
}

bool CollapseFragment::complete_through(std::size_t n) const {
  if (first_truncated_stage_ && *first_truncated_stage_ <= n) return false;
  return stabilized_ || n <= stages_built_;
}

std::strong_ordering CollapseFragment::compare(NodeId a, NodeId b) const {
  return position_.at(a) <=> position_.at(b);
}

std::strong_ordering CollapseFragment::compare_structural(NodeId a, NodeId b) const {
  const auto& x = nodes_.at(a);
  const auto& y = nodes_.at(b);
  if (x.star && y.star) return x.base_pos <=> y.base_pos;
  if (x.star) return std::strong_ordering::less;
  if (y.star) return std::strong_ordering::greater;
  auto term_cmp = [&](const OrdinalTerm& s, const OrdinalTerm& t) {
    std::vector<Key> all(s.args);
    all.insert(all.end(), t.args.begin(), t.args.end());
    auto less = [&](Key u, Key v) { return compare_structural(static_cast<NodeId>(u), static_cast<NodeId>(v)) < 0; };
    std::sort(all.begin(), all.end(), less);
    all.erase(std::unique(all.begin(), all.end(),
                          [&](Key u, Key v) { return compare_structural(static_cast<NodeId>(u), static_cast<NodeId>(v)) == 0; }),
              all.end());
    auto rank = [&](Key k) {
      return static_cast<Key>(std::lower_bound(all.begin(), all.end(), k, less) - all.begin());
    };
    std::vector<Key> xs, ys;
    for (Key k : s.args) xs.push_back(rank(k));
    for (Key k : t.args) ys.push_back(rank(k));
    return d_->compare_shapes(s.ctor, xs, t.ctor, ys);
  };
  return compare_lex(x.exps, y.exps, term_cmp);
}

std::optional<NodeId> CollapseFragment::find_text(std::string_view text) const {
  auto it = by_text_.find(std::string(text));
  if (it == by_text_.end()) return std::nullopt;
  return it->second;
}

std::optional<NodeId> CollapseFragment::find_star(std::size_t base_pos) const {
  if (base_pos >= stars_.size()) return std::nullopt;
  return stars_[base_pos];
}

std::optional<NodeId> CollapseFragment::find_psi(const std::vector<OrdinalTerm>& exps) const {
  auto it = by_exps_.find(exps_key(exps));
  if (it == by_exps_.end()) return std::nullopt;
  return it->second;
}

std::vector<NodeId> CollapseFragment::stage_members(std::size_t n) const {
  std::vector<NodeId> out;
  for (NodeId id : sorted_)
    if (nodes_[id].stage <= n) out.push_back(id);
  return out;
}

std::string CollapseFragment::to_dot() const {
  std::ostringstream out;
  out << "digraph collapse {\n  rankdir=LR;\n  node [shape=box];\n";
  for (std::size_t i = 0; i < sorted_.size(); ++i) {
    const NodeId id = sorted_[i];
    std::string label = text_[id];
    std::string escaped;
    for (char c : label) {
      if (c == '"' || c == '\\') escaped += '\\';
      escaped += c;
    }
    out << "  n" << i << " [label=\"" << escaped << "\\nstage " << nodes_[id].stage << "\"];\n";
  }
  for (std::size_t i = 1; i < sorted_.size(); ++i) out << "  n" << i - 1 << " -> n" << i << ";\n";
  out << "}\n";
  return out.str();
}

FragmentPtr build_fragment(System d, FiniteOrder base, CollapseCaps caps) {
  return std::make_shared<const CollapseFragment>(std::move(d), std::move(base), caps);
}

// ---------------------------------------------------------------------------

CollapseExpr to_expr(const CollapseFragment& frag, NodeId id) {
  const auto& n = frag.node(id);
  CollapseExpr e;
  e.star = n.star;
  e.base_pos = n.base_pos;
  for (const auto& t : n.exps) {
    ExprTerm et{t.ctor, {}};
    for (Key k : t.args) et.args.push_back(to_expr(frag, static_cast<NodeId>(k)));
    e.exps.push_back(std::move(et));
  }
  return e;
}

std::string expr_text(const DenotationSystem& d, const FiniteOrder& base, const CollapseExpr& e) {
  if (e.star) {
    if (e.base_pos >= base.size()) return "s(?" + std::to_string(e.base_pos) + ")";
    return star_text(base, e.base_pos);
  }
  std::vector<OrdinalTerm> exps;
  std::vector<std::string> names;
  for (const auto& t : e.exps) {
    OrdinalTerm o{t.ctor, {}};
    for (const auto& a : t.args) {
      o.args.push_back(names.size());
      names.push_back(expr_text(d, base, a));
    }
    exps.push_back(std::move(o));
  }
  return psi_text(d, exps, [&](Key k) { return names.at(k); });
}

std::string to_string(Membership::Status s) {
  switch (s) {
    case Membership::Status::certified: return "certified";
    case Membership::Status::rejected: return "rejected";
    case Membership::Status::insufficient: return "insufficient stages";
  }
  return "?";
}

namespace {

Membership rejected(std::string condition, std::string reason) {
  Membership m;
  m.status = Membership::Status::rejected;
  m.condition = std::move(condition);
  m.reason = std::move(reason);
  return m;
}

Membership membership(const CollapseFragment& frag, const CollapseExpr& e) {
  const auto& d = frag.system();
  const auto text = [&](const CollapseExpr& x) { return expr_text(d, frag.base(), x); };
  Membership out;
  if (e.star) {
    if (e.base_pos >= frag.base().size())
      return rejected("star", "base element outside the order");
    out.status = Membership::Status::certified;
    out.id = frag.find_star(e.base_pos);
    if (!out.id) {
      out.status = Membership::Status::insufficient;
      out.reason = "size cap cut the stars";
      return out;
    }
    out.witness.push_back(text(e) + " by clause 1");
    return out;
  }
  if (e.exps.empty()) {
    out.id = frag.find_psi({});
    if (!out.id) {
      out.status = Membership::Status::insufficient;
      out.reason = "size cap cut psi(0)";
      return out;
    }
    out.status = Membership::Status::certified;
    out.witness.push_back("psi(0) by clause 2");
    return out;
  }

  // (a) every exponent is a term of D over C.
  std::vector<OrdinalTerm> exps;
  std::size_t arg_stage = 0;
  for (std::size_t i = 0; i < e.exps.size(); ++i) {
    const auto& et = e.exps[i];
    OrdinalTerm t{et.ctor, {}};
    for (const auto& a : et.args) {
      Membership m = membership(frag, a);
      if (m.status == Membership::Status::rejected)
        return rejected("a", "argument " + text(a) + " of exponent " + std::to_string(i + 1) +
                                 " is not in C (condition (" + m.condition + "): " + m.reason + ")");
      if (m.status == Membership::Status::insufficient) return m;
      t.args.push_back(*m.id);
      if (i + 1 == e.exps.size()) arg_stage = std::max(arg_stage, frag.node(*m.id).stage);
    }
    if (d.arity(t.ctor) != t.args.size())
      return rejected("a", "exponent " + std::to_string(i + 1) + " has the wrong number of arguments");
    for (std::size_t j = 1; j < t.args.size(); ++j)
      if (frag.compare(static_cast<NodeId>(t.args[j - 1]), static_cast<NodeId>(t.args[j])) <= 0)
        return rejected("a", "arguments of exponent " + std::to_string(i + 1) + " are not strictly decreasing");
    exps.push_back(std::move(t));
  }

  // (b) the prefix is in C.
  CollapseExpr prefix_expr = e;
  prefix_expr.exps.pop_back();
  Membership pm = membership(frag, prefix_expr);
  if (pm.status == Membership::Status::rejected)
    return rejected("b", "prefix " + text(prefix_expr) + " is not in C (condition (" + pm.condition +
                             "): " + pm.reason + ")");
  if (pm.status == Membership::Status::insufficient) return pm;
  const NodeId prefix = *pm.id;

  auto key = [&](Key k) { return static_cast<Key>(frag.position(static_cast<NodeId>(k))); };
  // (c) the new exponent is below the previous one.
  if (exps.size() >= 2 && d.compare_by(exps.back(), exps[exps.size() - 2], key) >= 0)
    return rejected("c", "exponent " + std::to_string(exps.size()) + " is not below exponent " +
                             std::to_string(exps.size() - 1));
  // (d) its arguments lie below the prefix.
  for (std::size_t j = 0; j < exps.back().args.size(); ++j) {
    const auto arg = static_cast<NodeId>(exps.back().args[j]);
    if (frag.compare(arg, prefix) >= 0)
      return rejected("d", "argument " + frag.text(arg) + " is not below " + frag.text(prefix));
  }

  out.witness = pm.witness;
  out.witness.push_back("prefix " + frag.text(prefix) + " at stage " + std::to_string(frag.node(prefix).stage));
  for (Key k : exps.back().args)
    out.witness.push_back(frag.text(static_cast<NodeId>(k)) + " < " + frag.text(prefix));
  const std::size_t stage = std::max(frag.node(prefix).stage, arg_stage) + 1;
  out.id = frag.find_psi(exps);
  out.stage = stage;
  if (!out.id) {
    if (frag.complete_through(stage))
      throw InternalError("term satisfies (a)-(d) but is missing from a complete stage");
    out.status = Membership::Status::insufficient;
    out.reason = "needs stage " + std::to_string(stage) + ", fragment complete through fewer stages";
    return out;
  }
  if (frag.node(*out.id).stage != stage) throw InternalError("stage bookkeeping mismatch");
  out.status = Membership::Status::certified;
  return out;
}

} // namespace

Membership validate_membership(const CollapseFragment& frag, const CollapseExpr& e) {
  Membership m = membership(frag, e);
  if (m.status == Membership::Status::certified && m.id) m.stage = frag.node(*m.id).stage;
  return m;
}

// ---------------------------------------------------------------------------

CollapseMap collapse_morphism(const CollapseFragment& src, const CollapseFragment& tgt, const Morphism& f) {
  if (!(f.source() == src.base()) || !(f.target() == tgt.base()))
    throw InvalidTerm("collapse morphism: map does not match the fragments' base orders");
  if (src.caps().stage_cap != tgt.caps().stage_cap || src.caps().param_cap != tgt.caps().param_cap)
    throw InvalidTerm("collapse morphism: cap mismatch between fragments");
  CollapseMap g;
  g.image.resize(src.size());
  for (NodeId id = 0; id < src.size(); ++id) {
    const auto& n = src.node(id);
    std::optional<NodeId> img;
    if (n.star) {
      img = tgt.find_star(f(n.base_pos));
    } else {
      std::vector<OrdinalTerm> exps;
      for (const auto& t : n.exps) {
        OrdinalTerm u{t.ctor, {}};
        for (Key k : t.args) u.args.push_back(g.image.at(k));
        exps.push_back(std::move(u));
      }
      img = tgt.find_psi(exps);
    }
    if (!img) {
      if (!tgt.complete_through(n.stage))
        throw CapExceeded("collapse morphism: target fragment incomplete at stage " + std::to_string(n.stage));
      throw InternalError("collapse morphism: image of " + src.text(id) + " missing");
    }
    if (tgt.node(*img).stage > n.stage) throw InternalError("collapse morphism raised a stage");
    g.image[id] = *img;
  }
  return g;
}

bool strictly_increasing(const CollapseFragment& src, const CollapseFragment& tgt, const CollapseMap& g) {
  const auto& order = src.sorted();
  for (std::size_t i = 1; i < order.size(); ++i)
    if (tgt.compare(g.image.at(order[i - 1]), g.image.at(order[i])) >= 0) return false;
  return true;
}

IsoReport natural_iso(Hierarchy& h, std::uint64_t n, CollapseCaps caps) {
  IsoReport r;
  r.n = n;
  r.size = h.top(n);
  r.fragment = build_fragment(h.system_ptr(), FiniteOrder::of_size(n), caps);
  const auto& frag = *r.fragment;
  if (!frag.stabilized()) {
    r.failures.push_back("collapse fragment did not stabilize within caps");
    return r;
  }
  bool all_found = true;
  for (std::uint64_t m = 0; m < r.size; ++m) {
    const NormalForm nf = h.normal_form(n, m, AlphaBound::top());
    std::optional<NodeId> id;
    if (nf.constant) {
      id = frag.find_star(*nf.constant);
    } else {
      std::vector<OrdinalTerm> exps;
      for (const auto& a : nf.chain) {
        OrdinalTerm t{a.ctor, {}};
        for (Key k : a.args) t.args.push_back(r.eta.at(k));
        exps.push_back(std::move(t));
      }
      id = frag.find_psi(exps);
    }
    if (!id) {
      r.failures.push_back("no collapse term for " + std::to_string(m));
      all_found = false;
      break;
    }
    r.eta.push_back(*id);
  }
  if (!all_found) return r;
  std::set<NodeId> distinct(r.eta.begin(), r.eta.end());
  r.bijective = distinct.size() == r.size && r.size == frag.size();
  r.order_preserving = true;
  for (std::size_t m = 1; m < r.eta.size(); ++m)
    if (frag.compare(r.eta[m - 1], r.eta[m]) >= 0) r.order_preserving = false;
  if (!r.bijective) r.failures.push_back("eta is not a bijection onto the fragment");
  if (!r.order_preserving) r.failures.push_back("eta is not order preserving");
  return r;
}

std::optional<std::string> check_naturality(Hierarchy& h, const Morphism& f, CollapseCaps caps) {
  const IsoReport a = natural_iso(h, f.source().size(), caps);
  const IsoReport b = natural_iso(h, f.target().size(), caps);
  if (!a.passed() || !b.passed()) return std::string("eta is not an isomorphism");
  const Morphism bf = h.morphism(f);
  const CollapseMap g = collapse_morphism(*a.fragment, *b.fragment, f);
  for (std::uint64_t m = 0; m < a.size; ++m) {
    if (g.image.at(a.eta[m]) != b.eta.at(bf(m)))
      return "naturality fails at " + std::to_string(m) + " for " + f.to_string();
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------

namespace {

std::set<std::string> texts_through(const CollapseFragment& frag, std::size_t stage) {
  std::set<std::string> out;
  for (NodeId id = 0; id < frag.size(); ++id)
    if (frag.node(id).stage <= stage) out.insert(frag.text(id));
  return out;
}

std::set<std::size_t> base_support(const CollapseFragment& frag, NodeId id) {
  std::set<std::size_t> out;
  const auto& n = frag.node(id);
  if (n.star) return {n.base_pos};
  for (const auto& t : n.exps)
    for (Key k : t.args) {
      auto s = base_support(frag, static_cast<NodeId>(k));
      out.insert(s.begin(), s.end());
    }
  return out;
}

void check_pullback(const CollapseFragment& f1, const CollapseFragment& f2, const CollapseFragment& f12,
                    const CollapseFragment& whole, std::size_t stage_cap, const std::string& label,
                    CollapseCheckReport& r) {
  for (std::size_t s = 0; s <= stage_cap; ++s) {
    if (!f1.complete_through(s) || !f2.complete_through(s) || !f12.complete_through(s) ||
        !whole.complete_through(s)) {
      r.truncated = true;
      break;
    }
    ++r.checks;
    const auto t1 = texts_through(f1, s), t2 = texts_through(f2, s), t12 = texts_through(f12, s);
    const auto all = texts_through(whole, s);
    std::set<std::string> inter;
    std::set_intersection(t1.begin(), t1.end(), t2.begin(), t2.end(), std::inserter(inter, inter.end()));
    if (inter != t12) r.fail("pullback identity fails for " + label + " at stage " + std::to_string(s));
    for (const auto* t : {&t1, &t2, &t12})
      if (!std::includes(all.begin(), all.end(), t->begin(), t->end()))
        r.fail("suborder fragment not contained in the whole for " + label + " at stage " + std::to_string(s));
  }
}

} // namespace

CollapseCheckReport check_collapse_pullbacks(
    System d, const FiniteOrder& order,
    const std::vector<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>>& pairs,
    CollapseCaps caps) {
  CollapseCheckReport r;
  const auto whole = build_fragment(d, order, caps);
  for (const auto& [p1, p2] : pairs) {
    const FiniteOrder a = order.suborder(p1), b = order.suborder(p2);
    const auto f1 = build_fragment(d, a, caps);
    const auto f2 = build_fragment(d, b, caps);
    const auto f12 = build_fragment(d, intersect(a, b), caps);
    check_pullback(*f1, *f2, *f12, *whole, caps.stage_cap, a.to_string() + " / " + b.to_string(), r);
  }
  return r;
}

CollapseCheckReport check_collapse_functor(System d, std::size_t max_size, CollapseCaps caps) {
  CollapseCheckReport r;
  std::vector<FragmentPtr> full;
  for (std::size_t n = 0; n <= max_size; ++n) full.push_back(build_fragment(d, FiniteOrder::of_size(n), caps));

  for (std::size_t n = 0; n <= max_size; ++n) {
    const FiniteOrder order = FiniteOrder::of_size(n);
    std::vector<FragmentPtr> sub(std::size_t{1} << n);
    for (unsigned m = 0; m < sub.size(); ++m) {
      std::vector<std::size_t> pos;
      for (std::size_t i = 0; i < n; ++i)
        if ((m >> i) & 1u) pos.push_back(i);
      sub[m] = build_fragment(d, order.suborder(pos), caps);
    }
    for (unsigned a = 0; a < sub.size(); ++a)
      for (unsigned b = a; b < sub.size(); ++b)
        check_pullback(*sub[a], *sub[b], *sub[a & b], *full[n], caps.stage_cap,
                       "masks " + std::to_string(a) + "," + std::to_string(b) + " of " + std::to_string(n), r);
    // Union: every term lies in the fragment over its own support.
    const auto& whole = *full[n];
    for (NodeId id = 0; id < whole.size(); ++id) {
      unsigned mask = 0;
      for (std::size_t p : base_support(whole, id)) mask |= 1u << p;
      const auto& own = *sub[mask];
      if (!own.complete_through(whole.node(id).stage)) {
        r.truncated = true;
        continue;
      }
      ++r.checks;
      if (!own.find_text(whole.text(id))) r.fail("union identity fails for " + whole.text(id));
    }
  }

  // Functor laws.
  auto run = [&](const Morphism& f) -> std::optional<CollapseMap> {
    const auto& src = *full[f.source().size()];
    const auto& tgt = *full[f.target().size()];
    try {
      CollapseMap g = collapse_morphism(src, tgt, f);
      ++r.checks;
      if (!strictly_increasing(src, tgt, g)) r.fail("B_D(" + f.to_string() + ") is not strictly increasing");
      return g;
    } catch (const CapExceeded&) {
      r.truncated = true;
      return std::nullopt;
    }
  };
  for (std::size_t a = 0; a <= max_size; ++a) {
    const auto id_map = run(Morphism::identity(FiniteOrder::of_size(a)));
    if (id_map)
      for (NodeId i = 0; i < id_map->image.size(); ++i)
        if (id_map->image[i] != i) r.fail("identity law fails at size " + std::to_string(a));
    for (std::size_t b = a; b <= max_size; ++b)
      for (const Morphism& f : all_morphisms(FiniteOrder::of_size(a), FiniteOrder::of_size(b))) {
        const auto gf = run(f);
        if (!gf) continue;
        for (std::size_t c = b; c <= max_size; ++c)
          for (const Morphism& g : all_morphisms(FiniteOrder::of_size(b), FiniteOrder::of_size(c))) {
            const auto gg = run(g);
            const auto gc = run(compose(g, f));
            if (!gg || !gc) continue;
            for (NodeId i = 0; i < gf->image.size(); ++i) {
              const NodeId mid = gf->image[i];
              if (mid >= gg->image.size() || gg->image[mid] != gc->image[i]) {
                r.fail("composition law fails for " + g.to_string() + " after " + f.to_string());
                break;
              }
            }
          }
      }
  }
  return r;
}

} // namespace ffgh
