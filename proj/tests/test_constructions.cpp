#include <doctest.h>

#include "ffgh/constructions.hpp"
#include "ffgh/error.hpp"
#include "helpers.hpp"

using namespace ffgh;

TEST_CASE("hat systems are weakly finite") {
  const std::vector<std::pair<System, std::vector<std::size_t>>> cases = {
      {identity_system(), {0, 1, 2, 3}},
      {constant_system(2), {1, 2, 3, 4}},
      {pow2_system(), {1, 2, 6, 20}},
      {constant_system(1), {1, 1, 1, 1}},
  };
  for (const auto& [d, sizes] : cases) {
    const System hat = hat_system(d);
    INFO(hat->dsl());
    CHECK(hat->weakly_finite());
    for (std::size_t n = 0; n < sizes.size(); ++n) CHECK(weak_finiteness_probe(*hat, n, 10000) == sizes[n]);
  }
}

TEST_CASE("hat embedding into 2^A.D(A)") {
  for (const System& d : {identity_system(), pow2_system(), constant_system(2)})
    for (std::size_t a = 0; a <= 3; ++a) {
      const HatEmbedding e = hat_embed(d, FiniteOrder::of_size(a));
      INFO(d->dsl(), " over ", a);
      CHECK(e.strictly_increasing);
      CHECK(e.image.size() == e.domain.size());
    }
}

TEST_CASE("e embedding") {
  EEmbedding e = e_embed(identity_system(), FiniteOrder::of_size(2), {3, 100000, 4});
  CHECK(e.sufficient);
  CHECK(e.strictly_increasing);
  CHECK(e.chain_consistent);
  CHECK(e.stages_preserved);
  CHECK(e.source->size() == 6);
  for (NodeId id = 0; id < e.source->size(); ++id) CHECK(e.image[id].has_value());

  e = e_embed(pow2_system(), FiniteOrder::of_size(1), {3, 100000, 4});
  CHECK(e.strictly_increasing);
  CHECK(e.nat_count == 1);
}

TEST_CASE("the dilator F") {
  const System f = bachmann_F_system(identity_system());
  CHECK(!f->weakly_finite());
  CHECK(weak_finiteness_probe(*f, 1, 1000) == std::nullopt);
  const OrdinalTerm a = bh_first(testing::term(identity_system(), "t[0](0)"), 2);
  const OrdinalTerm w = bh_first(testing::term(identity_system(), "t[0](0)"), kOmega);
  const OrdinalTerm b = bh_first(testing::term(identity_system(), "t[0](1)"), 0);
  CHECK(f->compare(a, w) < 0);
  CHECK(f->compare(w, b) < 0);
  CHECK(f->compare(b, bh_lambda(0)) < 0);
  CHECK(f->compare(bh_lambda(0), bh_lambda(3)) < 0);
  const Morphism g = parse_morphism("0->2,1->3", FiniteOrder::of_size(2), FiniteOrder::of_size(4));
  CHECK(map_term(g, bh_lambda(5)) == bh_lambda(5));
  CHECK(map_term(g, b) == bh_first(testing::term(identity_system(), "t[0](3)"), 0));
}

TEST_CASE("Bachmann-Howard fixed point on a small fragment") {
  const BhResult r = bh_fixed_point(identity_system(), {3, 200000, 2});
  const BhReport rep = check_bh_properties(r);
  CHECK(rep.passed());
  CHECK(rep.stabilized == r.stabilized_count());
  CHECK(rep.stabilized > 0);
  CHECK(rep.pairs_checked > 0);
}

TEST_CASE("a perturbed theta fails the leastness audit") {
  BhResult r = bh_fixed_point(identity_system(), {3, 200000, 2});
  bool perturbed = false;
  for (auto& t : r.thetas) {
    if (!t.stabilized) continue;
    if (auto later = theta_in(*r.fragment, t.alpha, 1)) {
      t.theta = later;
      t.theta_text = r.fragment->text(*later);
      perturbed = true;
      break;
    }
  }
  REQUIRE(perturbed);
  const BhReport rep = check_bh_properties(r);
  CHECK(!rep.least);
  CHECK(rep.property2);
  CHECK(!rep.passed());
}
