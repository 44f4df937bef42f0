#include "ffgh/dsl.hpp"

#include <cctype>

#include "ffgh/constructions.hpp"
#include "ffgh/error.hpp"

namespace ffgh {

namespace {

class Cursor {
public:
  explicit Cursor(std::string_view text) : text_(text) {}

  std::size_t pos() const { return pos_; }
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() {
    skip_ws();
    return pos_ == text_.size();
  }
  bool peek(std::string_view tok) {
    skip_ws();
    return text_.substr(pos_, tok.size()) == tok;
  }
  bool eat(std::string_view tok) {
    if (!peek(tok)) return false;
    pos_ += tok.size();
    return true;
  }
  void expect(std::string_view tok) {
    if (!eat(tok)) throw ParseError("expected '" + std::string(tok) + "'", pos_);
  }
  std::string identifier() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    if (start == pos_) throw ParseError("expected a name", pos_);
    return std::string(text_.substr(start, pos_ - start));
  }
  std::uint64_t number() {
    skip_ws();
    const std::size_t start = pos_;
    std::uint64_t v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      const std::uint64_t digit = static_cast<std::uint64_t>(text_[pos_] - '0');
      if (v > (UINT64_MAX - digit) / 10) throw ParseError("number too large", start);
      v = v * 10 + digit;
      ++pos_;
    }
    if (start == pos_) throw ParseError("expected a number", pos_);
    return v;
  }
  /// Raw text up to (not including) the first of `stops`, trimmed.
  std::string until(std::string_view stops) {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && stops.find(text_[pos_]) == std::string_view::npos) ++pos_;
    std::size_t end = pos_;
    while (end > start && std::isspace(static_cast<unsigned char>(text_[end - 1]))) --end;
    if (end == start) throw ParseError("expected an element name", start);
    return std::string(text_.substr(start, end - start));
  }

private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

System parse_system_at(Cursor& c, const Presets& presets, int depth) {
  if (depth > 64) throw ParseError("system nesting too deep", c.pos());
  const std::size_t start = c.pos();
  const std::string name = c.identifier();
  auto one = [&] {
    c.expect("(");
    System s = parse_system_at(c, presets, depth + 1);
    c.expect(")");
    return s;
  };
  auto two = [&] {
    c.expect("(");
    System a = parse_system_at(c, presets, depth + 1);
    c.expect(",");
    System b = parse_system_at(c, presets, depth + 1);
    c.expect(")");
    return std::make_pair(a, b);
  };
  if (name == "id") return identity_system();
  if (name == "pow2") return pow2_system();
  if (name == "const") {
    c.expect("(");
    const std::uint64_t k = c.number();
    c.expect(")");
    return constant_system(static_cast<std::size_t>(k));
  }
  if (name == "sum") {
    auto [a, b] = two();
    return sum_system(a, b);
  }
  if (name == "prod") {
    auto [a, b] = two();
    return product_system(a, b);
  }
  if (name == "hat") return hat_system(one());
  if (name == "bhF") return bachmann_F_system(one());
  if (auto it = presets.find(name); it != presets.end()) {
    Cursor inner(it->second);
    System s = parse_system_at(inner, presets, depth + 1);
    if (!inner.at_end()) throw ParseError("trailing input in preset '" + name + "'", inner.pos());
    return s;
  }
  throw ParseError("unknown system '" + name + "'", start);
}

/// Constructor and raw arguments of a term; `arg` parses one argument.
template <class Arg, class ArgFn>
std::pair<Ctor, std::vector<Arg>> parse_generic(Cursor& c, const DenotationSystem& d, ArgFn&& arg) {
  std::vector<Arg> args;
  const std::size_t start = c.pos();
  if (d.pow2_sugar()) {
    if (c.eat("2^{")) {
      while (true) {
        args.push_back(arg(c));
        c.expect("}");
        if (!c.eat("+")) break;
        c.expect("2^{");
      }
    } else if (!c.eat("0")) {
      throw ParseError("expected '0' or '2^{'", c.pos());
    }
    return {Ctor{0, args.size(), {}, {}}, std::move(args)};
  }
  bool nullary = false;
  if (c.eat("c[")) nullary = true;
  else if (!c.eat("t[")) throw ParseError("expected 'c[' or 't['", c.pos());
  const std::uint64_t index = c.number();
  c.expect("]");
  auto ctor = d.ctor_at(static_cast<std::size_t>(index));
  if (!ctor) throw ParseError("no constructor with index " + std::to_string(index) + " in " + d.dsl(), start);
  if (!nullary) {
    c.expect("(");
    if (!c.peek(")")) {
      while (true) {
        args.push_back(arg(c));
        if (!c.eat(",")) break;
      }
    }
    c.expect(")");
  }
  if (d.arity(*ctor) != args.size())
    throw InvalidTerm("constructor " + std::to_string(index) + " expects " + std::to_string(d.arity(*ctor)) +
                      " arguments, got " + std::to_string(args.size()));
  return {*ctor, std::move(args)};
}

CollapseExpr parse_collapse_at(Cursor& c, const DenotationSystem& d, const FiniteOrder& base) {
  CollapseExpr e;
  if (c.eat("s(")) {
    const std::size_t at = c.pos();
    const std::string name = c.until(")");
    const auto pos = base.position_of_name(name);
    if (!pos) throw ParseError("unknown base element '" + name + "'", at);
    c.expect(")");
    e.star = true;
    e.base_pos = *pos;
    return e;
  }
  if (!c.eat("psi(")) throw ParseError("expected 's(' or 'psi('", c.pos());
  if (c.eat("0")) {
    c.expect(")");
    return e;
  }
  while (true) {
    c.expect("2^{");
    auto [ctor, args] = parse_generic<CollapseExpr>(
        c, d, [&](Cursor& cc) { return parse_collapse_at(cc, d, base); });
    e.exps.push_back(ExprTerm{std::move(ctor), std::move(args)});
    c.expect("}");
    if (!c.eat("+")) break;
  }
  c.expect(")");
  return e;
}

} // namespace

System parse_system_unchecked(std::string_view text, const Presets& presets) {
  Cursor c(text);
  System s = parse_system_at(c, presets, 0);
  if (!c.at_end()) throw ParseError("trailing input", c.pos());
  return s;
}

System parse_system(std::string_view text, const Presets& presets) {
  System s = parse_system_unchecked(text, presets);
  const PredilatorReport r = check_predilator(*s, 2, EnumLimits{1u << 16, 3});
  if (!r.passed)
    throw InvalidTerm("system " + s->dsl() + " failed validation: " +
                      (r.failures.empty() ? std::string("unknown") : r.failures.front()));
  return s;
}

OrdinalTerm parse_term(std::string_view text, const DenotationSystem& d, const FiniteOrder& order) {
  Cursor c(text);
  auto [ctor, args] = parse_generic<Key>(c, d, [&](Cursor& cc) {
    const std::size_t at = cc.pos();
    const std::string name = cc.until(",)}");
    const auto pos = order.position_of_name(name);
    if (!pos) throw ParseError("unknown element '" + name + "'", at);
    return static_cast<Key>(*pos);
  });
  if (!c.at_end()) throw ParseError("trailing input", c.pos());
  OrdinalTerm t{std::move(ctor), std::move(args)};
  d.validate(t);
  return t;
}

CollapseExpr parse_collapse(std::string_view text, const DenotationSystem& d, const FiniteOrder& base) {
  Cursor c(text);
  CollapseExpr e = parse_collapse_at(c, d, base);
  if (!c.at_end()) throw ParseError("trailing input", c.pos());
  return e;
}

} // namespace ffgh
