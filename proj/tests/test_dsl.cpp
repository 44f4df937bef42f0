#include <doctest.h>

#include "ffgh/error.hpp"
#include "helpers.hpp"

using namespace ffgh;
using testing::kCaps;

TEST_CASE("system syntax") {
  CHECK(parse_system("id")->dsl() == "id");
  CHECK(parse_system(" pow2 ")->dsl() == "pow2");
  CHECK(parse_system("const(3)")->dsl() == "const(3)");
  CHECK(parse_system("prod(pow2, id)")->dsl() == "prod(pow2,id)");
  CHECK(parse_system("hat(sum(const(1),id))")->dsl() == "hat(sum(const(1),id))");
  CHECK(parse_system("bhF(id)")->dsl() == "bhF(id)");

  const Presets presets{{"P", "prod(pow2,id)"}};
  CHECK(parse_system("hat(P)", presets)->dsl() == "hat(prod(pow2,id))");
}

TEST_CASE("system syntax errors carry a position") {
  try {
    parse_system("prod(pow2 id)");
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 10);
  }
  CHECK_THROWS_AS(parse_system("nothing"), ParseError);
  CHECK_THROWS_AS(parse_system("id id"), ParseError);
  CHECK_THROWS_AS(parse_system("const(x)"), ParseError);
}

TEST_CASE("term syntax") {
  const System p = pow2_system();
  const FiniteOrder order = parse_order("a<b<c");
  const OrdinalTerm t = parse_term("2^{c}+2^{a}", *p, order);
  CHECK(t.args == std::vector<Key>{2, 0});
  CHECK(format_term(*p, t, [&](Key k) { return order.name(k); }) == "2^{c}+2^{a}");
  CHECK_THROWS_AS(parse_term("2^{a}+2^{c}", *p, order), InvalidTerm);
  CHECK_THROWS_AS(parse_term("2^{d}", *p, order), ParseError);

  const System id = identity_system();
  CHECK(parse_term("t[0](b)", *id, order).args == std::vector<Key>{1});
  CHECK_THROWS_AS(parse_term("t[0](a,b)", *id, order), InvalidTerm);
  CHECK_THROWS_AS(parse_term("t[4](a)", *id, order), ParseError);
  CHECK(parse_term("c[1]", *constant_system(2), order).ctor == *constant_system(2)->ctor_at(1));
}

TEST_CASE("collapse syntax round trips") {
  const System d = identity_system();
  const auto f = build_fragment(d, FiniteOrder::of_size(2), kCaps);
  for (NodeId id : f->sorted()) {
    const CollapseExpr e = parse_collapse(f->text(id), *d, f->base());
    CHECK(expr_text(*d, f->base(), e) == f->text(id));
    CHECK(expr_text(*d, f->base(), to_expr(*f, id)) == f->text(id));
  }
}
