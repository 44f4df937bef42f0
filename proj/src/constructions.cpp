#include "ffgh/constructions.hpp"

#include <algorithm>
#include <map>

#include "ffgh/error.hpp"

namespace ffgh {

namespace {

using detail::kFirstBlock;
using detail::kSecondBlock;

class HatSystem final : public DenotationSystem {
public:
  explicit HatSystem(System d) : d_(std::move(d)) {}
  std::string dsl() const override { return "hat(" + d_->dsl() + ")"; }
  std::size_t arity(const Ctor& c) const override { return c.mask.size(); }

  std::strong_ordering compare_shapes(const Ctor& c, std::span<const Key> xs, const Ctor& e,
                                      std::span<const Key> ys) const override {
    const auto x1 = detail::split_block(xs, c.mask, kFirstBlock);
    const auto y1 = detail::split_block(ys, e.mask, kFirstBlock);
    if (auto r = d_->compare_shapes(c.kids.at(0), x1, e.kids.at(0), y1); r != 0) return r;
    return compare_lex(detail::split_block(xs, c.mask, kSecondBlock),
                       detail::split_block(ys, e.mask, kSecondBlock));
  }

  void enumerate(const KeySpace& allowed, const OrdinalTerm* bound, TermSink& sink) const override {
    auto emit = [&](const OrdinalTerm& base, std::size_t i, const std::vector<Key>* below) {
      bool go = true;
      detail::decreasing_subsets_below(allowed, i, below, [&](const std::vector<Key>& tail) {
        OrdinalTerm t{Ctor{0, i, {}, {base.ctor}}, {}};
        detail::merge_blocks(base.args, tail, t.args, t.ctor.mask);
        go = sink.add(std::move(t));
        return go;
      });
      return go;
    };
    std::optional<OrdinalTerm> head;
    if (bound) head = OrdinalTerm{bound->ctor.kids.at(0), detail::split_block(bound->args, bound->ctor.mask, kFirstBlock)};
    TermSink sub = sink.child();
    d_->enumerate(allowed, head ? &*head : nullptr, sub);
    Enumeration heads = sub.take();
    sink.absorb_flags(heads);
    for (const auto& t : heads.terms) {
      const std::size_t i = d_->index_of(t.ctor);
      if (i <= allowed.size() && !emit(t, i, nullptr)) return;
    }
    if (!bound) return;
    for (Key k : head->args)
      if (!allowed.contains(k)) return;
    const auto tail = detail::split_block(bound->args, bound->ctor.mask, kSecondBlock);
    emit(*head, static_cast<std::size_t>(bound->ctor.param), &tail);
  }

  bool weakly_finite() const override { return true; }
  bool infinite() const override { return d_->infinite(); }
  std::size_t weight(const Ctor& c) const override {
    return static_cast<std::size_t>(c.param) + d_->weight(c.kids.at(0));
  }
  std::vector<Ctor> ctors_of_weight(std::size_t w) const override {
    std::vector<Ctor> out;
    for (std::size_t i = 0; i <= w; ++i) {
      const auto c = d_->ctor_at(i);
      if (!c) break;
      if (i + d_->weight(*c) != w) continue;
      for (auto& m : detail::block_masks(d_->arity(*c), i)) out.push_back(Ctor{0, i, std::move(m), {*c}});
    }
    return out;
  }
  std::size_t max_weight() const override {
    std::size_t best = 0;
    for (std::size_t i = 0;; ++i) {
      const auto c = d_->ctor_at(i);
      if (!c) break;
      best = std::max(best, i + d_->weight(*c));
    }
    return best;
  }

private:
  System d_;
};

class BachmannF final : public DenotationSystem {
public:
  explicit BachmannF(System d) : d_(std::move(d)) {}
  std::string dsl() const override { return "bhF(" + d_->dsl() + ")"; }
  std::size_t arity(const Ctor& c) const override { return c.tag == 0 ? d_->arity(c.kids.at(0)) : 0; }

  std::strong_ordering compare_shapes(const Ctor& c, std::span<const Key> xs, const Ctor& e,
                                      std::span<const Key> ys) const override {
    if (c.tag != e.tag) return c.tag <=> e.tag;
    if (c.tag == 1) return c.param <=> e.param;
    if (auto r = d_->compare_shapes(c.kids.at(0), xs, e.kids.at(0), ys); r != 0) return r;
    return c.param <=> e.param;
  }

  void enumerate(const KeySpace& allowed, const OrdinalTerm* bound, TermSink& sink) const override {
    const std::uint64_t cap = sink.param_cap();
    auto emit_first = [&](const OrdinalTerm& alpha, std::uint64_t below) {
      // a ranges over [0, below) ∪ ({ω} if below is ω)
      std::uint64_t hi = below == kOmega ? cap : std::min(below, cap);
      if (below == kOmega || below > cap) sink.mark_param_truncated();
      for (std::uint64_t a = 0; a < hi; ++a)
        if (!sink.add(bh_first(alpha, a))) return false;
      return true;
    };
    auto all_first = [&](const OrdinalTerm& alpha) {
      if (!emit_first(alpha, kOmega)) return false;
      return sink.add(bh_first(alpha, kOmega));
    };
    auto run = [&](const OrdinalTerm* b) {
      TermSink sub = sink.child();
      d_->enumerate(allowed, b, sub);
      Enumeration e = sub.take();
      sink.absorb_flags(e);
      return e;
    };

    if (bound && bound->ctor.tag == 0) {
      const OrdinalTerm alpha{bound->ctor.kids.at(0), bound->args};
      for (const auto& t : run(&alpha).terms)
        if (!all_first(t)) return;
      for (Key k : alpha.args)
        if (!allowed.contains(k)) return;
      emit_first(alpha, bound->ctor.param);
      return;
    }
    for (const auto& t : run(nullptr).terms)
      if (!all_first(t)) return;
    std::uint64_t hi = cap;
    if (bound && bound->ctor.param <= cap) hi = bound->ctor.param;
    else sink.mark_param_truncated();
    for (std::uint64_t n = 0; n < hi; ++n)
      if (!sink.add(bh_lambda(n))) return;
  }

  bool weakly_finite() const override { return false; }
  bool infinite() const override { return true; }
  std::size_t weight(const Ctor& c) const override {
    if (c.tag == 1) return static_cast<std::size_t>(c.param);
    return d_->weight(c.kids.at(0)) + (c.param == kOmega ? 0 : static_cast<std::size_t>(c.param) + 1);
  }
  std::vector<Ctor> ctors_of_weight(std::size_t w) const override {
    std::vector<Ctor> out;
    for (std::size_t wd = 0; wd <= w; ++wd) {
      if (!d_->infinite() && wd > d_->max_weight()) break;
      const std::size_t rest = w - wd;
      for (auto& c : d_->ctors_of_weight(wd))
        out.push_back(Ctor{0, rest == 0 ? kOmega : rest - 1, {}, {std::move(c)}});
    }
    out.push_back(Ctor{1, w, {}, {}});
    return out;
  }
  std::size_t max_weight() const override { return 0; }

private:
  System d_;
};

} // namespace

System hat_system(System d) { return std::make_shared<HatSystem>(std::move(d)); }
System bachmann_F_system(System d) { return std::make_shared<BachmannF>(std::move(d)); }

OrdinalTerm bh_first(const OrdinalTerm& alpha, std::uint64_t a) {
  return {Ctor{0, a, {}, {alpha.ctor}}, alpha.args};
}

OrdinalTerm bh_lambda(std::uint64_t n) { return {Ctor{1, n, {}, {}}, {}}; }

OrdinalTerm hat_to_product(const OrdinalTerm& hat_term) {
  const auto base = detail::split_block(hat_term.args, hat_term.ctor.mask, kFirstBlock);
  const auto tail = detail::split_block(hat_term.args, hat_term.ctor.mask, kSecondBlock);
  OrdinalTerm out{Ctor{0, 0, {}, {Ctor{0, tail.size(), {}, {}}, hat_term.ctor.kids.at(0)}}, {}};
  detail::merge_blocks(tail, base, out.args, out.ctor.mask);
  return out;
}

HatEmbedding hat_embed(System d, const FiniteOrder& order, EnumLimits limits) {
  HatEmbedding r;
  r.hat = hat_system(d);
  r.target = product_system(pow2_system(), d);
  r.domain = terms_of(*r.hat, order, limits).terms;
  for (const auto& t : r.domain) r.image.push_back(hat_to_product(t));
  r.strictly_increasing = true;
  for (std::size_t i = 1; i < r.image.size(); ++i)
    if (r.target->compare(r.image[i - 1], r.image[i]) >= 0) r.strictly_increasing = false;
  return r;
}

// ---------------------------------------------------------------------------

namespace {

struct EStage {
  FragmentPtr source, target;
  std::size_t nat_count = 0;
  std::vector<std::optional<NodeId>> image;
  std::vector<std::string> issues;
};

EStage compute_e(const System& d, const System& hat, const FiniteOrder& order, CollapseCaps caps) {
  EStage s;
  s.source = build_fragment(d, order, caps);
  const auto& src = *s.source;
  for (NodeId id = 0; id < src.size(); ++id)
    for (const auto& t : src.node(id).exps) s.nat_count = std::max(s.nat_count, d->index_of(t.ctor));
  s.target = build_fragment(hat, omega_plus_fragment(order, s.nat_count), caps);
  const auto& tgt = *s.target;
  const std::size_t k = s.nat_count;
  s.image.assign(src.size(), std::nullopt);
  for (NodeId id = 0; id < src.size(); ++id) {
    const auto& n = src.node(id);
    if (n.star) {
      s.image[id] = tgt.find_star(k + n.base_pos);
      if (!s.image[id]) s.issues.push_back("target lacks the star of " + src.text(id));
      continue;
    }
    std::vector<OrdinalTerm> exps;
    bool ok = true;
    for (const auto& t : n.exps) {
      const std::size_t j = d->index_of(t.ctor);
      std::vector<Key> base, tail;
      for (Key a : t.args) {
        const auto img = s.image.at(a);
        if (!img) {
          ok = false;
          break;
        }
        base.push_back(tgt.position(*img));
      }
      for (std::size_t i = j; ok && i-- > 0;) {
        const auto star = tgt.find_star(i);
        if (!star) {
          ok = false;
          break;
        }
        tail.push_back(tgt.position(*star));
      }
      if (!ok) break;
      OrdinalTerm u{Ctor{0, j, {}, {t.ctor}}, {}};
      detail::merge_blocks(base, tail, u.args, u.ctor.mask);
      for (Key& a : u.args) a = tgt.sorted().at(a);
      exps.push_back(std::move(u));
    }
    if (ok) s.image[id] = tgt.find_psi(exps);
    if (!s.image[id]) s.issues.push_back("no image for " + src.text(id) + " within target caps");
  }
  return s;
}

} // namespace

EEmbedding e_embed(System d, const FiniteOrder& order, CollapseCaps caps) {
  const System hat = hat_system(d);
  EStage full = compute_e(d, hat, order, caps);
  EEmbedding r;
  r.source = full.source;
  r.target = full.target;
  r.nat_count = full.nat_count;
  r.image = full.image;
  r.issues = full.issues;
  const auto& src = *r.source;
  const auto& tgt = *r.target;
  r.sufficient = std::all_of(r.image.begin(), r.image.end(), [](const auto& x) { return x.has_value(); });

  r.strictly_increasing = true;
  std::optional<std::size_t> last;
  for (NodeId id : src.sorted()) {
    if (!r.image[id]) continue;
    const std::size_t p = tgt.position(*r.image[id]);
    if (last && *last >= p) r.strictly_increasing = false;
    last = p;
  }
  r.stages_preserved = true;
  for (NodeId id = 0; id < src.size(); ++id)
    if (r.image[id] && tgt.node(*r.image[id]).stage != src.node(id).stage) r.stages_preserved = false;

  // Lockstep: the map computed with stage cap n restricts to the one with n-1.
  r.chain_consistent = true;
  std::map<std::string, std::string> previous;
  for (std::size_t n = 0; n <= std::min(caps.stage_cap, src.stages_built()); ++n) {
    CollapseCaps c = caps;
    c.stage_cap = n;
    EStage s = compute_e(d, hat, order, c);
    std::map<std::string, std::string> current;
    for (NodeId id = 0; id < s.source->size(); ++id)
      if (s.image[id]) current[s.source->text(id)] = s.target->text(*s.image[id]);
    for (const auto& [from, to] : previous) {
      auto it = current.find(from);
      if (it == current.end() || it->second != to) {
        r.chain_consistent = false;
        r.issues.push_back("stage " + std::to_string(n) + " map disagrees on " + from);
        break;
      }
    }
    previous = std::move(current);
  }
  return r;
}

// ---------------------------------------------------------------------------

std::size_t BhResult::stabilized_count() const {
  return static_cast<std::size_t>(
      std::count_if(thetas.begin(), thetas.end(), [](const ThetaEntry& t) { return t.stabilized; }));
}

std::optional<NodeId> theta_in(const CollapseFragment& frag, const OrdinalTerm& alpha, std::size_t skip) {
  const OrdinalTerm shape = bh_first(alpha, kOmega);
  for (NodeId id : frag.sorted()) {
    const auto& n = frag.node(id);
    if (n.star || n.exps.empty() || !(n.exps.back() == shape)) continue;
    if (skip == 0) return id;
    --skip;
  }
  return std::nullopt;
}

BhResult bh_fixed_point(System d, CollapseCaps caps, std::size_t max_domain) {
  BhResult r{d, bachmann_F_system(d), caps, {}, {}, {}, {}};
  r.fragment = build_fragment(r.f, FiniteOrder{}, caps);
  CollapseCaps stages = caps, params = caps;
  stages.stage_cap += 1;
  params.param_cap += 1;
  r.more_stages = build_fragment(r.f, FiniteOrder{}, stages);
  r.more_params = build_fragment(r.f, FiniteOrder{}, params);
  const auto& frag = *r.fragment;

  Enumeration dom = d->enumerate(KeySpace::interval(0, frag.size()), nullptr, {max_domain, caps.param_cap});
  std::sort(dom.terms.begin(), dom.terms.end(),
            [&](const OrdinalTerm& a, const OrdinalTerm& b) { return d->compare(a, b) < 0; });
  // θ(α) read off in a larger fragment, α transported by canonical text.
  auto theta_text_in = [&](const CollapseFragment& big, const OrdinalTerm& alpha) -> std::optional<std::string> {
    OrdinalTerm moved{alpha.ctor, {}};
    for (Key k : alpha.args) {
      const auto b = big.find_text(frag.text(static_cast<NodeId>(k)));
      if (!b) return std::nullopt;
      moved.args.push_back(*b);
    }
    const auto t = theta_in(big, moved);
    if (!t) return std::nullopt;
    return big.text(*t);
  };
  for (auto& t : dom.terms) {
    ThetaEntry e;
    for (Key& k : t.args) k = frag.sorted().at(k);
    e.alpha = t;
    e.alpha_text = format_term(*d, t, [&](Key k) { return frag.text(static_cast<NodeId>(k)); });
    e.theta = theta_in(frag, t);
    if (e.theta) {
      e.theta_text = frag.text(*e.theta);
      e.stabilized = theta_text_in(*r.more_stages, t) == e.theta_text &&
                     theta_text_in(*r.more_params, t) == e.theta_text;
    }
    r.thetas.push_back(std::move(e));
  }
  return r;
}

BhReport check_bh_properties(const BhResult& r) {
  BhReport rep;
  const auto& frag = *r.fragment;
  const auto& d = *r.d;
  auto fail = [&](bool& flag, std::string why) {
    flag = false;
    if (rep.failures.size() < 16) rep.failures.push_back(std::move(why));
  };
  std::vector<const ThetaEntry*> good;
  for (const auto& e : r.thetas) {
    if (e.stabilized && e.theta) good.push_back(&e);
    else ++rep.unstabilized;
  }
  rep.stabilized = good.size();
  for (const ThetaEntry* e : good) {
    for (Key k : e->alpha.args)
      if (frag.compare_structural(static_cast<NodeId>(k), *e->theta) >= 0)
        fail(rep.property2, "supp(" + e->alpha_text + ") is not below " + e->theta_text);
    // Leastness audit, independent of the sorted order.
    const OrdinalTerm shape = bh_first(e->alpha, kOmega);
    for (NodeId id = 0; id < frag.size(); ++id) {
      const auto& n = frag.node(id);
      if (n.star || n.exps.empty() || !(n.exps.back() == shape)) continue;
      if (frag.compare_structural(id, *e->theta) < 0)
        fail(rep.least, frag.text(id) + " has the shape of theta(" + e->alpha_text + ") and is smaller");
    }
  }
  auto key = [&](Key k) { return static_cast<Key>(frag.position(static_cast<NodeId>(k))); };
  for (const ThetaEntry* a : good)
    for (const ThetaEntry* b : good) {
      if (d.compare_by(a->alpha, b->alpha, key) >= 0) continue;
      bool below = true;
      for (Key k : a->alpha.args) below = below && frag.compare(static_cast<NodeId>(k), *b->theta) < 0;
      if (!below) continue;
      ++rep.pairs_checked;
      if (frag.compare(*a->theta, *b->theta) >= 0)
        fail(rep.property1, "theta(" + a->alpha_text + ") is not below theta(" + b->alpha_text + ")");
    }
  return rep;
}

} // namespace ffgh
