// One line per acceptance criterion; exit status is nonzero if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include "ffgh/collapse.hpp"
#include "ffgh/constructions.hpp"
#include "ffgh/error.hpp"
#include "ffgh/fgh.hpp"
#include "oracles.hpp"

using namespace ffgh;

namespace {

constexpr CollapseCaps kCaps{16, 1u << 14, 4};

std::vector<FragmentPtr> produced;

FragmentPtr keep(FragmentPtr f) {
  produced.push_back(f);
  return f;
}

struct Verdict {
  bool ok = true;
  std::string detail;
  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

System system_of(oracle::Sys s) { return s == oracle::Sys::identity ? identity_system() : pow2_system(); }
const char* name_of(oracle::Sys s) { return s == oracle::Sys::identity ? "id" : "pow2"; }

OrdinalTerm index_term(const System& d, oracle::Sys s, std::uint64_t beta) {
  if (s == oracle::Sys::identity) return {*d->ctor_at(0), {beta}};
  std::vector<Key> exps;
  for (std::uint64_t e = 64; e-- > 0;)
    if (beta >> e & 1) exps.push_back(e);
  return {Ctor{0, exps.size(), {}, {}}, exps};
}

const std::vector<oracle::Sys> kSystems{oracle::Sys::identity, oracle::Sys::pow2};

Verdict normal_form_bijection() {
  Verdict v;
  std::size_t forms = 0;
  for (auto s : kSystems) {
    const System d = system_of(s);
    Hierarchy h(d);
    oracle::BValues b(s, kDefaultResourceCap);
    for (std::uint64_t n = 1; n <= 3; ++n) {
      const std::uint64_t size = h.top(n);
      std::vector<NormalForm> by_value(size);
      std::vector<bool> hit(size, false);
      for (const auto& o : oracle::all_normal_forms(b, n)) {
        NormalForm nf{n, o.constant, {}};
        for (auto beta : o.chain) nf.chain.push_back(index_term(d, s, beta));
        const std::string where = std::string(name_of(s)) + " n=" + std::to_string(n) + " " + h.to_string(nf);
        try {
          h.validate(nf, AlphaBound::top());
        } catch (const Error& e) {
          v.fail(where + ": " + e.what());
          continue;
        }
        const std::uint64_t m = h.eval(nf);
        if (m >= size || hit[m]) {
          v.fail(where + ": value " + std::to_string(m) + " out of range or repeated");
          continue;
        }
        hit[m] = true;
        by_value[m] = nf;
        ++forms;
      }
      for (std::uint64_t m = 0; m < size; ++m)
        if (!hit[m]) v.fail(std::string(name_of(s)) + " n=" + std::to_string(n) + ": no form for " + std::to_string(m));
      if (!v.ok) return v;
      for (std::uint64_t x = 0; x < size; ++x)
        for (std::uint64_t y = 0; y < size; ++y)
          if (nf_compare(*d, by_value[x], by_value[y]) != (x <=> y))
            v.fail(std::string(name_of(s)) + ": nf_compare disagrees at " + std::to_string(x) + "," + std::to_string(y));
    }
  }
  v.detail = std::to_string(forms) + " forms";
  return v;
}

Verdict concrete_values() {
  Verdict v;
  const System d = identity_system();
  Hierarchy h(d);
  oracle::BValues b(oracle::Sys::identity, kDefaultResourceCap);
  const std::uint64_t expected[] = {0, 3, 6, 11};
  for (std::uint64_t n = 1; n <= 3; ++n) {
    const auto f = keep(build_fragment(d, FiniteOrder::of_size(n), kCaps));
    const std::uint64_t lib = h.top(n), rec = b.top(n);
    const std::size_t closure = oracle::collapse_closure(oracle::Sys::identity, n).size();
    if (lib != expected[n] || rec != expected[n] || !f->stabilized() || f->size() != expected[n] || closure != expected[n])
      v.fail("n=" + std::to_string(n) + ": B=" + std::to_string(lib) + " recursion=" + std::to_string(rec) +
             " fragment=" + std::to_string(f->size()) + " closure=" + std::to_string(closure));
  }
  if (v.ok) v.detail = "B_D(1..3) = 3, 6, 11";
  return v;
}

Verdict functor_laws() {
  Verdict v;
  std::size_t checked = 0;
  for (auto s : kSystems) {
    Hierarchy h(system_of(s));
    for (std::size_t a = 0; a <= 3; ++a) {
      const FiniteOrder A = FiniteOrder::of_size(a);
      if (h.morphism(Morphism::identity(A)) != Morphism::identity(FiniteOrder::of_size(h.top(a))))
        v.fail(std::string(name_of(s)) + ": identity law fails at " + std::to_string(a));
      for (std::size_t b = a; b <= 3; ++b)
        for (std::size_t c = b; c <= 3; ++c) {
          const FiniteOrder B = FiniteOrder::of_size(b), C = FiniteOrder::of_size(c);
          for (const auto& f : all_morphisms(A, B))
            for (const auto& g : all_morphisms(B, C)) {
              ++checked;
              if (h.morphism(compose(g, f)) != compose(h.morphism(g), h.morphism(f)))
                v.fail(std::string(name_of(s)) + ": composition fails for " + g.to_string() + " after " + f.to_string());
            }
        }
    }
  }
  if (v.ok) v.detail = std::to_string(checked) + " composable pairs";
  return v;
}

Verdict natural_isomorphism() {
  Verdict v;
  std::size_t squares = 0;
  for (auto s : kSystems) {
    Hierarchy h(system_of(s));
    for (std::uint64_t n = 0; n <= 3; ++n) {
      const IsoReport r = natural_iso(h, n, kCaps);
      keep(r.fragment);
      if (!r.passed())
        v.fail(std::string(name_of(s)) + " n=" + std::to_string(n) + ": " +
               (r.failures.empty() ? std::string("not an isomorphism") : r.failures.front()));
      for (std::uint64_t m = n; m <= 3; ++m)
        for (const auto& f : all_morphisms(FiniteOrder::of_size(n), FiniteOrder::of_size(m))) {
          ++squares;
          if (auto why = check_naturality(h, f, kCaps)) v.fail(std::string(name_of(s)) + " " + f.to_string() + ": " + *why);
        }
    }
  }
  if (v.ok) v.detail = std::to_string(squares) + " naturality squares";
  return v;
}

Verdict predilators() {
  Verdict v;
  const std::vector<System> systems{identity_system(),
                                    constant_system(0),
                                    constant_system(1),
                                    constant_system(3),
                                    pow2_system(),
                                    sum_system(identity_system(), pow2_system()),
                                    product_system(pow2_system(), identity_system()),
                                    product_system(pow2_system(), constant_system(2)),
                                    hat_system(identity_system()),
                                    hat_system(pow2_system()),
                                    hat_system(constant_system(1)),
                                    bachmann_F_system(identity_system()),
                                    constant_stream_system()};
  for (const System& d : systems) {
    const PredilatorReport r = check_predilator(*d, 3, {1u << 16, 3});
    if (!r.passed) v.fail(d->dsl() + ": " + r.failures.front());
  }
  std::size_t checks = 0;
  for (const System& d : {identity_system(), pow2_system()})
    for (std::size_t stages = 0; stages <= 4; ++stages) {
      const CollapseCheckReport r = check_collapse_functor(d, 3, {stages, 1u << 14, 4});
      checks += r.checks;
      if (!r.passed) v.fail("collapse " + d->dsl() + " stages " + std::to_string(stages) + ": " + r.failures.front());
      if (r.truncated) v.fail("collapse " + d->dsl() + " stages " + std::to_string(stages) + ": truncated");
    }
  if (v.ok) v.detail = std::to_string(systems.size()) + " systems, " + std::to_string(checks) + " collapse checks";
  return v;
}

Verdict embeddings() {
  Verdict v;
  const System d = identity_system();
  std::size_t images = 0;
  for (std::size_t a = 0; a <= 2; ++a) {
    const HatEmbedding h = hat_embed(d, FiniteOrder::of_size(a));
    images += h.image.size();
    if (!h.strictly_increasing) v.fail("hat_embed over " + std::to_string(a));
    for (std::size_t stages = 1; stages <= 3; ++stages) {
      const EEmbedding e = e_embed(d, FiniteOrder::of_size(a), {stages, 1u << 16, 4});
      keep(e.source);
      keep(e.target);
      images += e.source->size();
      const std::string where = "e_embed A=" + std::to_string(a) + " stages " + std::to_string(stages);
      if (!e.sufficient) v.fail(where + ": images missing");
      if (!e.strictly_increasing) v.fail(where + ": not strictly increasing");
      if (!e.chain_consistent || !e.stages_preserved) v.fail(where + ": stage maps inconsistent");
    }
  }
  if (v.ok) v.detail = std::to_string(images) + " images";
  return v;
}

Verdict bachmann_howard() {
  Verdict v;
  const BhResult r = bh_fixed_point(identity_system(), {4, 200000, 2});
  const BhReport rep = check_bh_properties(r);
  if (rep.stabilized < 30) v.fail("only " + std::to_string(rep.stabilized) + " stabilized values");
  if (!rep.property1) v.fail("condition (1) fails");
  if (!rep.property2) v.fail("condition (2) fails");
  if (!rep.least) v.fail("leastness audit found a smaller candidate");
  if (!rep.failures.empty()) v.fail(rep.failures.front());
  if (v.ok)
    v.detail = std::to_string(rep.stabilized) + " stabilized values, " + std::to_string(rep.pairs_checked) +
               " pairs, fragment " + std::to_string(r.fragment->size());
  return v;
}

Verdict order_sanity() {
  Verdict v;
  // Further fragments from the settings above that were built inside the
  // library checks.
  for (const System& d : {identity_system(), pow2_system()})
    for (std::size_t a = 0; a <= 3; ++a)
      for (std::size_t stages = 0; stages <= 4; ++stages) keep(build_fragment(d, FiniteOrder::of_size(a), {stages, 1u << 14, 4}));
  keep(build_fragment(identity_system(), FiniteOrder::of_size(4), kCaps));
  keep(build_fragment(bachmann_F_system(identity_system()), FiniteOrder::of_size(0), {2, 1u << 14, 2}));
  std::size_t checked = 0, largest = 0;
  std::set<const CollapseFragment*> seen;
  for (const auto& f : produced) {
    if (!f || f->size() > 200 || !seen.insert(f.get()).second) continue;
    ++checked;
    largest = std::max(largest, f->size());
    if (auto why = check_strict_total_order(f->size(), [&](std::size_t i, std::size_t j) {
          return f->compare_structural(static_cast<NodeId>(i), static_cast<NodeId>(j));
        }))
      v.fail(*why);
    for (NodeId x = 0; x < f->size(); ++x)
      for (NodeId y = 0; y < f->size(); ++y)
        if (f->compare(x, y) != f->compare_structural(x, y)) v.fail("positions disagree with the defining rules");
  }
  if (v.ok) v.detail = std::to_string(checked) + " fragments, largest " + std::to_string(largest);
  return v;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"1 normal-form bijection", normal_form_bijection},
      {"2 concrete values", concrete_values},
      {"3 functor laws", functor_laws},
      {"4 natural isomorphism", natural_isomorphism},
      {"5 pre-dilator properties", predilators},
      {"6 embeddings", embeddings},
      {"7 Bachmann-Howard properties", bachmann_howard},
      {"8 order sanity", order_sanity},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = run();
    } catch (const std::exception& e) {
      v.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %s (%.2f s): %s\n", v.ok ? "PASS" : "FAIL", name.c_str(), secs, v.detail.c_str());
    std::fflush(stdout);
    if (!v.ok) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
