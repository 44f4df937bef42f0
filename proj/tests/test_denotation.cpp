#include <doctest.h>

#include "ffgh/constructions.hpp"
#include "ffgh/error.hpp"
#include "helpers.hpp"

using namespace ffgh;
using testing::term;

namespace {

std::vector<std::string> texts_over(const System& d, std::size_t n) {
  std::vector<std::string> out;
  for (const auto& t : terms_of(*d, FiniteOrder::of_size(n), {}).terms) out.push_back(format_term(*d, t));
  return out;
}

/// Compares by the parity of the largest label before anything else, so
/// the result depends on absolute labels.
class ParityModel {
public:
  explicit ParityModel(const DenotationSystem& d) : inner_(d, {}) {}
  Enumeration terms_over(const std::vector<Key>& labels) const { return inner_.terms_over(labels); }
  std::strong_ordering compare_labeled(const OrdinalTerm& a, const OrdinalTerm& b) const {
    const int pa = a.args.empty() ? -1 : static_cast<int>(a.args.front() % 2);
    const int pb = b.args.empty() ? -1 : static_cast<int>(b.args.front() % 2);
    if (pa != pb) return pb <=> pa;
    return inner_.compare_labeled(a, b);
  }

private:
  SystemModel inner_;
};

}  // namespace

TEST_CASE("pow2 terms over 2") {
  const System d = pow2_system();
  CHECK(texts_over(d, 2) == std::vector<std::string>{"0", "2^{0}", "2^{1}", "2^{1}+2^{0}"});
  CHECK(d->weakly_finite());
  CHECK(d->infinite());
}

TEST_CASE("identity and constant systems") {
  CHECK(texts_over(identity_system(), 3) == std::vector<std::string>{"t[0](0)", "t[0](1)", "t[0](2)"});
  CHECK(texts_over(constant_system(3), 5) == std::vector<std::string>{"c[0]", "c[1]", "c[2]"});
  CHECK(texts_over(constant_system(0), 2).empty());
  CHECK(!constant_system(2)->infinite());
}

TEST_CASE("term images, norm and support") {
  const System d = pow2_system();
  const Morphism f = parse_morphism("0->1,1->2", FiniteOrder::of_size(2), FiniteOrder::of_size(3));
  const OrdinalTerm t = term(d, "2^{1}+2^{0}");
  CHECK(format_term(*d, map_term(f, t)) == "2^{2}+2^{1}");

  CHECK(norm(term(d, "2^{3}+2^{0}")) == 4);
  CHECK(norm(term(d, "0")) == 0);
  CHECK(support(term(d, "2^{3}+2^{0}")) == std::set<Key>{0, 3});
  for (std::uint64_t n = 0; n <= 5; ++n) {
    bool member = false;
    for (const auto& u : terms_of(*d, FiniteOrder::of_size(n), {}).terms)
      member = member || u == term(d, "2^{3}+2^{0}");
    CHECK(member == (n >= 4));
  }
}

TEST_CASE("D(f) preserves the order of terms") {
  const System d = pow2_system();
  const FiniteOrder three = FiniteOrder::of_size(3), five = FiniteOrder::of_size(5);
  const auto ts = terms_of(*d, three, {}).terms;
  for (const auto& f : all_morphisms(three, five))
    for (std::size_t i = 0; i + 1 < ts.size(); ++i) CHECK(d->compare(map_term(f, ts[i]), map_term(f, ts[i + 1])) < 0);
}

TEST_CASE("sums and products") {
  const System p = product_system(pow2_system(), constant_system(2));
  CHECK(terms_of(*p, FiniteOrder::of_size(1), {}).terms.size() == 4);
  const System s = sum_system(constant_system(2), identity_system());
  const auto ts = terms_of(*s, FiniteOrder::of_size(2), {}).terms;
  REQUIRE(ts.size() == 4);
  CHECK(ts[0].args.empty());
  CHECK(ts[3].args == std::vector<Key>{1});
  CHECK(terms_of(*product_system(identity_system(), identity_system()), FiniteOrder::of_size(3), {}).terms.size() == 9);
}

TEST_CASE("weak finiteness probe") {
  CHECK(weak_finiteness_probe(*pow2_system(), 3, 1000) == 8u);
  CHECK(weak_finiteness_probe(*identity_system(), 4, 1000) == 4u);
  CHECK(weak_finiteness_probe(*pow2_system(), 12, 1000) == std::nullopt);
  CHECK(weak_finiteness_probe(*constant_stream_system(), 1, 1000) == std::nullopt);
  CHECK(!constant_stream_system()->weakly_finite());
}

TEST_CASE("weakly finite claims are enforced") {
  CHECK_THROWS_AS(terms_of(*pow2_system(), FiniteOrder::of_size(12), {100, 4}), WeakFinitenessViolation);
  const TermsOf ts = terms_of(*constant_stream_system(), FiniteOrder::of_size(1), {100, 3});
  CHECK(ts.truncated);
}

TEST_CASE("pre-dilator checks pass for the built-in systems") {
  for (const System& d : {identity_system(), constant_system(0), constant_system(2), pow2_system(),
                          sum_system(identity_system(), pow2_system()),
                          product_system(pow2_system(), identity_system()), hat_system(identity_system()),
                          hat_system(constant_system(1)), bachmann_F_system(identity_system()),
                          constant_stream_system()}) {
    const PredilatorReport r = check_predilator(*d, 3, {1u << 16, 3});
    INFO(d->dsl());
    CHECK(r.passed);
    CHECK(r.failures.empty());
  }
}

TEST_CASE("a label-dependent comparison fails the pre-dilator check") {
  const System d = pow2_system();
  const PredilatorReport r = check_predilator(ParityModel(*d), 3);
  CHECK(!r.passed);
  CHECK(!r.failures.empty());
}

TEST_CASE("term validation") {
  const System d = pow2_system();
  CHECK_THROWS_AS(d->validate(OrdinalTerm{Ctor{0, 2, {}, {}}, {0, 1}}), InvalidTerm);
  CHECK_THROWS_AS(d->validate(OrdinalTerm{Ctor{0, 2, {}, {}}, {1}}), InvalidTerm);
  CHECK_NOTHROW(d->validate(OrdinalTerm{Ctor{0, 2, {}, {}}, {1, 0}}));
  const System id = identity_system();
  CHECK(id->ctor_count() == 1u);
  CHECK(id->index_of(*id->ctor_at(0)) == 0);
}
