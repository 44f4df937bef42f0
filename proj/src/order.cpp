#include "ffgh/order.hpp"

#include <cctype>
#include <charconv>
#include <numeric>
#include <sstream>

#include "ffgh/error.hpp"

namespace ffgh {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::optional<std::size_t> parse_size(std::string_view s) {
  std::size_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size()) return std::nullopt;
  return v;
}

} // namespace

FiniteOrder::FiniteOrder(std::vector<Elem> elems, std::vector<std::string> names)
    : elems_(std::move(elems)), names_(std::move(names)) {
  if (names_.size() != elems_.size()) throw InvalidTerm("order: names/elements size mismatch");
  index_.reserve(elems_.size());
  for (std::size_t i = 0; i < elems_.size(); ++i) {
    if (!index_.emplace(elems_[i], i).second)
      throw InvalidTerm("order: duplicate element '" + names_[i] + "'");
  }
}

FiniteOrder FiniteOrder::of_size(std::size_t n) {
  std::vector<Elem> elems(n);
  std::vector<std::string> names(n);
  for (std::size_t i = 0; i < n; ++i) {
    elems[i] = Elem{0, i};
    names[i] = std::to_string(i);
  }
  return FiniteOrder(std::move(elems), std::move(names));
}

FiniteOrder FiniteOrder::labelled(const std::vector<std::string>& names) {
  std::vector<Elem> elems(names.size());
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i].empty()) throw InvalidTerm("order: empty label");
    for (std::size_t j = 0; j < i; ++j)
      if (names[j] == names[i]) throw InvalidTerm("order: duplicate label '" + names[i] + "'");
    elems[i] = Elem{0, i};
  }
  return FiniteOrder(std::move(elems), names);
}

std::optional<std::size_t> FiniteOrder::position(const Elem& e) const {
  auto it = index_.find(e);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> FiniteOrder::position_of_name(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  return std::nullopt;
}

std::size_t FiniteOrder::require(const Elem& e) const {
  auto p = position(e);
  if (!p) {
    throw InvalidTerm("element (" + std::to_string(e.tag) + "," + std::to_string(e.id) +
                      ") is not in order " + to_string());
  }
  return *p;
}

std::strong_ordering FiniteOrder::compare(const Elem& a, const Elem& b) const {
  return require(a) <=> require(b);
}

FiniteOrder FiniteOrder::suborder(std::vector<std::size_t> positions) const {
  std::sort(positions.begin(), positions.end());
  positions.erase(std::unique(positions.begin(), positions.end()), positions.end());
  std::vector<Elem> elems;
  std::vector<std::string> names;
  for (std::size_t p : positions) {
    elems.push_back(elem(p));
    names.push_back(name(p));
  }
  return FiniteOrder(std::move(elems), std::move(names));
}

std::string FiniteOrder::to_string() const {
  if (*this == of_size(size())) {
    bool plain = true;
    for (std::size_t i = 0; i < size() && plain; ++i) plain = names_[i] == std::to_string(i);
    if (plain) return std::to_string(size());
  }
  if (empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < size(); ++i) {
    if (i) out += '<';
    out += names_[i];
  }
  return out;
}

FiniteOrder parse_order(std::string_view text) {
  text = trim(text);
  if (text.empty()) throw ParseError("empty order", 0);
  if (auto n = parse_size(text)) return FiniteOrder::of_size(*n);
  std::vector<std::string> names;
  std::size_t start = 0;
  while (true) {
    std::size_t lt = text.find('<', start);
    std::string_view part = trim(text.substr(start, lt == std::string_view::npos ? std::string_view::npos : lt - start));
    if (part.empty()) throw ParseError("empty label in order", start);
    for (char c : part) {
      if (c == ',' || c == '(' || c == ')' || c == '{' || c == '}' || std::isspace(static_cast<unsigned char>(c)))
        throw ParseError("invalid character in order label", start);
    }
    names.emplace_back(part);
    if (lt == std::string_view::npos) break;
    start = lt + 1;
  }
  return FiniteOrder::labelled(names);
}

FiniteOrder restrict(const FiniteOrder& order, const Elem& bound) {
  const std::size_t p = order.require(bound);
  std::vector<std::size_t> below(p);
  std::iota(below.begin(), below.end(), std::size_t{0});
  return order.suborder(std::move(below));
}

FiniteOrder intersect(const FiniteOrder& a, const FiniteOrder& b) {
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (b.contains(a.elem(i))) keep.push_back(i);
  return a.suborder(std::move(keep));
}

// ---------------------------------------------------------------------------

Morphism::Morphism(FiniteOrder source, FiniteOrder target, std::vector<std::size_t> image)
    : source_(std::move(source)), target_(std::move(target)), image_(std::move(image)) {
  if (image_.size() != source_.size()) throw InvalidTerm("morphism: not total on its source");
  for (std::size_t i = 0; i < image_.size(); ++i) {
    if (image_[i] >= target_.size()) throw InvalidTerm("morphism: image outside target");
    if (i > 0 && image_[i - 1] >= image_[i])
      throw InvalidTerm("morphism: not strictly increasing at " + source_.name(i));
  }
}

Morphism Morphism::identity(const FiniteOrder& order) {
  std::vector<std::size_t> image(order.size());
  std::iota(image.begin(), image.end(), std::size_t{0});
  return Morphism(order, order, std::move(image));
}

Morphism Morphism::inclusion(const FiniteOrder& sub, const FiniteOrder& super) {
  std::vector<std::size_t> image(sub.size());
  for (std::size_t i = 0; i < sub.size(); ++i) image[i] = super.require(sub.elem(i));
  return Morphism(sub, super, std::move(image));
}

Elem Morphism::apply(const Elem& e) const {
  return target_.elem(image_.at(source_.require(e)));
}

std::string Morphism::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < image_.size(); ++i) {
    if (i) out += ',';
    out += source_.name(i) + "->" + target_.name(image_[i]);
  }
  return out;
}

Morphism compose(const Morphism& g, const Morphism& f) {
  if (!(f.target() == g.source())) throw InvalidTerm("compose: target/source mismatch");
  std::vector<std::size_t> image(f.source().size());
  for (std::size_t i = 0; i < image.size(); ++i) image[i] = g(f(i));
  return Morphism(f.source(), g.target(), std::move(image));
}

Morphism parse_morphism(std::string_view text, const FiniteOrder& source, const FiniteOrder& target) {
  std::vector<std::optional<std::size_t>> image(source.size());
  std::size_t start = 0;
  text = trim(text);
  while (!text.empty() && start <= text.size()) {
    std::size_t comma = text.find(',', start);
    std::string_view pair = trim(text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    std::size_t arrow = pair.find("->");
    if (arrow == std::string_view::npos) throw ParseError("expected 'a->b' in morphism", start);
    auto from = source.position_of_name(trim(pair.substr(0, arrow)));
    auto to = target.position_of_name(trim(pair.substr(arrow + 2)));
    if (!from) throw ParseError("unknown source element in morphism", start);
    if (!to) throw ParseError("unknown target element in morphism", start);
    if (image[*from]) throw ParseError("element mapped twice in morphism", start);
    image[*from] = *to;
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < image.size(); ++i) {
    if (!image[i]) throw InvalidTerm("morphism: no image for " + source.name(i));
    out.push_back(*image[i]);
  }
  return Morphism(source, target, std::move(out));
}

std::vector<Morphism> all_morphisms(const FiniteOrder& source, const FiniteOrder& target) {
  std::vector<Morphism> out;
  const std::size_t k = source.size(), n = target.size();
  if (k > n) return out;
  std::vector<std::size_t> image(k);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t from) {
    if (i == k) {
      out.emplace_back(source, target, image);
      return;
    }
    for (std::size_t v = from; v + (k - i) <= n; ++v) {
      image[i] = v;
      rec(i + 1, v + 1);
    }
  };
  rec(0, 0);
  return out;
}

// ---------------------------------------------------------------------------

void cnf2_validate(const Cnf2Term& t, const FiniteOrder& order) {
  for (std::size_t i = 0; i < t.exponents.size(); ++i) {
    if (!order.contains(t.exponents[i])) throw InvalidTerm("cnf2: exponent not in base order");
    if (i > 0 && order.compare(t.exponents[i - 1], t.exponents[i]) != std::strong_ordering::greater)
      throw InvalidTerm("cnf2: exponents not strictly decreasing");
  }
}

std::strong_ordering cnf2_compare(const Cnf2Term& t, const Cnf2Term& u, const FiniteOrder& order) {
  cnf2_validate(t, order);
  cnf2_validate(u, order);
  return compare_lex(t.exponents, u.exponents,
                     [&](const Elem& a, const Elem& b) { return order.compare(a, b); });
}

Cnf2Term cnf2_map(const Morphism& f, const Cnf2Term& t) {
  cnf2_validate(t, f.source());
  Cnf2Term out;
  out.exponents.reserve(t.exponents.size());
  for (const Elem& e : t.exponents) out.exponents.push_back(f.apply(e));
  return out;
}

std::vector<Cnf2Term> cnf2_terms(const FiniteOrder& order) {
  std::vector<Cnf2Term> out;
  Cnf2Term cur;
  // Lexicographic order on decreasing exponent sequences; a prefix first.
  std::function<void(std::size_t)> rec = [&](std::size_t below) {
    out.push_back(cur);
    for (std::size_t p = below; p-- > 0;) {
      cur.exponents.push_back(order.elem(p));
      rec(p);
      cur.exponents.pop_back();
    }
  };
  rec(order.size());
  std::sort(out.begin(), out.end(), [&](const Cnf2Term& a, const Cnf2Term& b) {
    return cnf2_compare(a, b, order) < 0;
  });
  return out;
}

std::string cnf2_to_string(const Cnf2Term& t, const FiniteOrder& order) {
  if (t.exponents.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < t.exponents.size(); ++i) {
    if (i) out += '+';
    out += "2^{" + order.name(order.require(t.exponents[i])) + "}";
  }
  return out;
}

Cnf2Term parse_cnf2(std::string_view text, const FiniteOrder& order) {
  text = trim(text);
  Cnf2Term out;
  if (text == "0") return out;
  std::size_t i = 0;
  while (true) {
    if (text.substr(i, 3) != "2^{") throw ParseError("expected '2^{'", i);
    i += 3;
    std::size_t close = text.find('}', i);
    if (close == std::string_view::npos) throw ParseError("unterminated exponent", i);
    auto pos = order.position_of_name(trim(text.substr(i, close - i)));
    if (!pos) throw ParseError("unknown exponent '" + std::string(text.substr(i, close - i)) + "'", i);
    out.exponents.push_back(order.elem(*pos));
    i = close + 1;
    if (i == text.size()) break;
    if (text[i] != '+') throw ParseError("expected '+'", i);
    ++i;
  }
  cnf2_validate(out, order);
  return out;
}

// ---------------------------------------------------------------------------

StagedOrder::StagedOrder(Generator generator, Comparator comparator, Namer namer,
                         std::size_t stage_cap, std::size_t size_cap)
    : generator_(std::move(generator)),
      comparator_(std::move(comparator)),
      namer_(std::move(namer)),
      stage_cap_(stage_cap),
      size_cap_(size_cap) {
  if (size_cap_ == 0) throw InvalidTerm("staged order: size cap must be >= 1");
}

bool StagedOrder::extend_to(std::size_t stage) {
  stage = std::min(stage, stage_cap_);
  std::size_t next = started_ ? stages_built_ + 1 : 0;
  bool changed = false;
  for (; next <= stage && !truncated_; ++next) {
    for (const Elem& e : generator_(next)) {
      if (stage_.count(e)) continue;
      if (sorted_.size() >= size_cap_) {
        truncated_ = true;
        break;
      }
      stage_.emplace(e, next);
      auto it = std::lower_bound(sorted_.begin(), sorted_.end(), e, [&](const Elem& a, const Elem& b) {
        return comparator_(a, b) < 0;
      });
      sorted_.insert(it, e);
      changed = true;
    }
    started_ = true;
    stages_built_ = next;
  }
  if (changed || fragment_.size() != sorted_.size()) {
    std::vector<std::string> names;
    names.reserve(sorted_.size());
    for (const Elem& e : sorted_) names.push_back(namer_(e));
    fragment_ = FiniteOrder(sorted_, std::move(names));
  }
  return !truncated_;
}

std::optional<std::size_t> StagedOrder::stage_of(const Elem& e) const {
  auto it = stage_.find(e);
  if (it == stage_.end()) return std::nullopt;
  return it->second;
}

std::strong_ordering StagedOrder::compare(const Elem& a, const Elem& b) const {
  auto pa = fragment_.position(a), pb = fragment_.position(b);
  if (pa && pb) return *pa <=> *pb;
  return comparator_(a, b);
}

StagedOrder StagedOrder::restricted(const Elem& bound) const {
  auto gen = generator_;
  auto cmp = comparator_;
  Generator filtered = [gen, cmp, bound](std::size_t stage) {
    std::vector<Elem> out;
    for (const Elem& e : gen(stage))
      if (cmp(e, bound) < 0) out.push_back(e);
    return out;
  };
  return StagedOrder(std::move(filtered), comparator_, namer_, stage_cap_, size_cap_);
}

StagedOrder omega_plus(const FiniteOrder& base, std::size_t stage_cap, std::size_t size_cap) {
  auto gen = [n = base.size()](std::size_t stage) {
    std::vector<Elem> out{nat_elem(stage)};
    if (stage == 0)
      for (std::size_t a = 0; a < n; ++a) out.push_back(lifted_elem(a));
    return out;
  };
  auto cmp = [](const Elem& x, const Elem& y) {
    if (x.tag != y.tag) return x.tag <=> y.tag;
    return x.id <=> y.id;
  };
  auto namer = [base](const Elem& e) {
    if (e.tag == kNatTag) return std::to_string(e.id);
    return "w+" + base.name(e.id);
  };
  return StagedOrder(gen, cmp, namer, stage_cap, size_cap);
}

FiniteOrder omega_plus_fragment(const FiniteOrder& base, std::size_t nat_count) {
  std::vector<Elem> elems;
  std::vector<std::string> names;
  for (std::size_t k = 0; k < nat_count; ++k) {
    elems.push_back(nat_elem(k));
    names.push_back(std::to_string(k));
  }
  for (std::size_t a = 0; a < base.size(); ++a) {
    elems.push_back(lifted_elem(a));
    names.push_back("w+" + base.name(a));
  }
  return FiniteOrder(std::move(elems), std::move(names));
}

std::optional<std::string> check_strict_total_order(
    std::size_t count, const std::function<std::strong_ordering(std::size_t, std::size_t)>& cmp) {
  std::vector<signed char> m(count * count);
  auto at = [&](std::size_t i, std::size_t j) -> signed char& { return m[i * count + j]; };
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j = 0; j < count; ++j) {
      auto c = cmp(i, j);
      at(i, j) = c < 0 ? -1 : (c > 0 ? 1 : 0);
    }
  }
  std::ostringstream why;
  for (std::size_t i = 0; i < count; ++i) {
    if (at(i, i) != 0) {
      why << "irreflexivity fails at " << i;
      return why.str();
    }
    for (std::size_t j = 0; j < count; ++j) {
      if (i != j && at(i, j) == 0) {
        why << "distinct items " << i << "," << j << " compare equal";
        return why.str();
      }
      if (at(i, j) != -at(j, i)) {
        why << "asymmetry fails at " << i << "," << j;
        return why.str();
      }
    }
  }
  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t j = 0; j < count; ++j) {
      if (at(i, j) >= 0) continue;
      for (std::size_t k = 0; k < count; ++k) {
        if (at(j, k) < 0 && at(i, k) >= 0) {
          why << "transitivity fails at " << i << "<" << j << "<" << k;
          return why.str();
        }
      }
    }
  return std::nullopt;
}

} // namespace ffgh
