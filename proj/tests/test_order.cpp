#include <doctest.h>

#include "ffgh/error.hpp"
#include "ffgh/order.hpp"

using namespace ffgh;

TEST_CASE("lexicographic comparison") {
  std::vector<int> a{1, 2}, b{1, 2, 0}, c{1, 3}, e{};
  CHECK(compare_lex(a, b) < 0);
  CHECK(compare_lex(b, c) < 0);
  CHECK(compare_lex(e, a) < 0);
  CHECK(compare_lex(a, a) == 0);
}

TEST_CASE("finite orders") {
  const FiniteOrder three = FiniteOrder::of_size(3);
  CHECK(three.size() == 3);
  CHECK(three.to_string() == "3");
  CHECK(three.position_of_name("2") == 2u);
  CHECK(three.compare(three.elem(0), three.elem(2)) < 0);

  const FiniteOrder named = parse_order("a<b<c");
  CHECK(named.size() == 3);
  CHECK(named.to_string() == "a<b<c");
  CHECK(named.position_of_name("b") == 1u);
  CHECK(parse_order("4") == FiniteOrder::of_size(4));
  CHECK(parse_order("0").empty());

  const FiniteOrder sub = three.suborder({2, 0, 2});
  CHECK(sub.size() == 2);
  CHECK(restrict(three, three.elem(2)).size() == 2);
  CHECK(intersect(three.suborder({0, 1}), three.suborder({1, 2})).size() == 1);
}

TEST_CASE("morphisms") {
  const FiniteOrder two = FiniteOrder::of_size(2), three = FiniteOrder::of_size(3);
  const Morphism f = parse_morphism("0->1,1->2", two, three);
  CHECK(f(0) == 1);
  CHECK(f.to_string() == "0->1,1->2");
  CHECK_THROWS_AS(Morphism(two, three, {2, 1}), InvalidTerm);
  CHECK_THROWS(parse_morphism("0->1", two, three));

  CHECK(all_morphisms(three, FiniteOrder::of_size(5)).size() == 10);
  CHECK(all_morphisms(FiniteOrder::of_size(4), three).empty());
  CHECK(all_morphisms(FiniteOrder::of_size(0), three).size() == 1);

  const FiniteOrder four = FiniteOrder::of_size(4);
  for (const auto& g : all_morphisms(three, four))
    for (const auto& h : all_morphisms(two, three)) {
      const Morphism gh = compose(g, h);
      for (std::size_t i = 0; i < 2; ++i) CHECK(gh(i) == g(h(i)));
    }
  const Morphism id = Morphism::identity(three);
  CHECK(compose(id, f) == f);
}

TEST_CASE("base-2 normal forms") {
  const FiniteOrder three = FiniteOrder::of_size(3);
  const auto ts = cnf2_terms(three);
  REQUIRE(ts.size() == 8);
  auto value = [&](const Cnf2Term& t) {
    unsigned v = 0;
    for (const Elem& e : t.exponents) v += 1u << three.require(e);
    return v;
  };
  for (std::size_t i = 0; i < ts.size(); ++i) CHECK(value(ts[i]) == i);
  for (std::size_t i = 0; i < ts.size(); ++i)
    for (std::size_t j = 0; j < ts.size(); ++j)
      CHECK((cnf2_compare(ts[i], ts[j], three) < 0) == (value(ts[i]) < value(ts[j])));

  CHECK(cnf2_to_string(ts[5], three) == "2^{2}+2^{0}");
  CHECK(parse_cnf2("2^{2}+2^{0}", three) == ts[5]);
  CHECK(parse_cnf2("0", three) == ts[0]);
  CHECK_THROWS(parse_cnf2("2^{0}+2^{2}", three));
  CHECK_THROWS(parse_cnf2("2^{1}+2^{1}", three));

  const FiniteOrder four = FiniteOrder::of_size(4), six = FiniteOrder::of_size(6);
  for (const auto& f : all_morphisms(three, four))
    for (const auto& g : all_morphisms(four, six))
      for (const auto& t : ts) CHECK(cnf2_map(compose(g, f), t) == cnf2_map(g, cnf2_map(f, t)));
}

TEST_CASE("omega plus a finite order") {
  const FiniteOrder two = FiniteOrder::of_size(2);
  StagedOrder w = omega_plus(two, 5, 100);
  w.extend_to(5);
  const FiniteOrder& frag = w.fragment();
  CHECK(frag.size() == 8);
  for (std::size_t i = 0; i + 1 < frag.size(); ++i) CHECK(w.compare(frag.elem(i), frag.elem(i + 1)) < 0);
  CHECK(w.compare(nat_elem(5), lifted_elem(0)) < 0);
  CHECK(w.stage_of(nat_elem(3)) == 3u);
  CHECK(w.stage_of(lifted_elem(1)) == 0u);

  const FiniteOrder part = omega_plus_fragment(two, 3);
  CHECK(part.size() == 5);
  CHECK(!check_strict_total_order(part.size(), [&](std::size_t i, std::size_t j) { return i <=> j; }));

  StagedOrder capped = omega_plus(two, 10, 4);
  CHECK(!capped.extend_to(10));
  CHECK(capped.truncated());
}

TEST_CASE("staged order restriction commutes with stage truncation") {
  const FiniteOrder two = FiniteOrder::of_size(2);
  StagedOrder w = omega_plus(two, 6, 100);
  StagedOrder r = w.restricted(lifted_elem(1));
  for (std::size_t s = 0; s <= 6; ++s) {
    StagedOrder ws = omega_plus(two, s, 100);
    ws.extend_to(s);
    r.extend_to(s);
    std::vector<Elem> expect;
    for (const Elem& e : ws.fragment().elems())
      if (ws.compare(e, lifted_elem(1)) < 0) expect.push_back(e);
    CHECK(r.fragment().elems() == expect);
  }
}

TEST_CASE("total order checker finds violations") {
  CHECK(!check_strict_total_order(5, [](std::size_t i, std::size_t j) { return i <=> j; }));
  CHECK(check_strict_total_order(3, [](std::size_t i, std::size_t j) {
    if (i == j) return std::strong_ordering::equal;
    return ((j + 3 - i) % 3 == 1) ? std::strong_ordering::less : std::strong_ordering::greater;
  }));
}
