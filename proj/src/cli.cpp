#include "ffgh/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>

#include "ffgh/constructions.hpp"
#include "ffgh/error.hpp"

namespace ffgh {

using Json = nlohmann::ordered_json;

void Config::validate() const {
  if (resource_cap == 0 || stage_cap == 0 || size_cap == 0 || param_cap == 0)
    throw UsageError("caps must be >= 1");
}

Config::Format parse_format(std::string_view text) {
  if (text == "text") return Config::Format::text;
  if (text == "json") return Config::Format::json;
  if (text == "dot") return Config::Format::dot;
  throw UsageError("unknown output format '" + std::string(text) + "' (text, json, dot)");
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::uint64_t parse_u64(std::string_view text, const std::string& what) {
  std::uint64_t v = 0;
  const auto* end = text.data() + text.size();
  auto [p, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || p != end) throw UsageError(what + ": expected a natural number, got '" + std::string(text) + "'");
  return v;
}

} // namespace

Config parse_seed_config(std::string_view text, Config base) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    std::string_view l = line;
    if (auto hash = l.find('#'); hash != std::string_view::npos) l = l.substr(0, hash);
    l = trim(l);
    if (l.empty()) continue;
    const auto eq = l.find('=');
    if (eq == std::string_view::npos) throw UsageError("seed config line " + std::to_string(number) + ": expected key=value");
    const std::string key(trim(l.substr(0, eq)));
    const std::string_view value = trim(l.substr(eq + 1));
    const std::string where = "seed config line " + std::to_string(number);
    if (key == "resource_cap") base.resource_cap = parse_u64(value, where);
    else if (key == "stage_cap") base.stage_cap = parse_u64(value, where);
    else if (key == "size_cap") base.size_cap = parse_u64(value, where);
    else if (key == "param_cap") base.param_cap = parse_u64(value, where);
    else if (key == "format") base.format = parse_format(value);
    else if (key.rfind("system.", 0) == 0 && key.size() > 7) base.presets[key.substr(7)] = std::string(value);
    else throw UsageError(where + ": unknown key '" + key + "'");
  }
  return base;
}

Config load_seed_config(const std::string& path, Config base) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read seed config " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_seed_config(ss.str(), std::move(base));
}

// ---------------------------------------------------------------------------

namespace {

struct Outcome {
  Json results = Json::object();
  Json truncation = Json::object();
  Json counterexamples = Json::array();
  std::string text;
  std::string dot;
  int code = 0;
};

struct Args {
  std::string system;
  std::string alpha = "top";
  std::string f;
  std::string order;
  std::string dot;
  std::string report;
  std::uint64_t n = 0, m = 0, n2 = 0;
  std::size_t size = 3;
  bool collapse = false;
  std::vector<std::string> terms;
};

const FiniteOrder& naturals() {
  static const FiniteOrder order = FiniteOrder::of_size(4096);
  return order;
}

std::string nat_term(const DenotationSystem& d, const OrdinalTerm& t) { return format_term(d, t); }

void fragment_flags(const CollapseFragment& frag, Json& truncation) {
  truncation["size_cap"] = frag.size_truncated();
  truncation["param_cap"] = frag.param_truncated();
  truncation["stage_cap"] = !frag.stabilized();
}

Json fragment_json(const CollapseFragment& frag) {
  Json terms = Json::array();
  for (NodeId id : frag.sorted())
    terms.push_back({{"position", frag.position(id)}, {"text", frag.text(id)}, {"stage", frag.node(id).stage}});
  return {{"size", frag.size()},
          {"stages_built", frag.stages_built()},
          {"stabilized", frag.stabilized()},
          {"terms", terms}};
}

std::string yes(bool b) { return b ? "yes" : "no"; }

NodeId require_member(const CollapseFragment& frag, const std::string& text) {
  const CollapseExpr e = parse_collapse(text, frag.system(), frag.base());
  const Membership m = validate_membership(frag, e);
  if (m.status == Membership::Status::rejected)
    throw InvalidTerm(text + " is not a collapse term: condition (" + m.condition + "): " + m.reason);
  if (m.status == Membership::Status::insufficient)
    throw CapExceeded(text + ": insufficient stages (" + m.reason + ")");
  return *m.id;
}

// --- commands --------------------------------------------------------------

Outcome fgh_eval(const Args& a, const Config& cfg) {
  const System d = parse_system(a.system, cfg.presets);
  Hierarchy h(d, cfg.resource_cap);
  const AlphaBound alpha = a.alpha == "top" ? AlphaBound::top() : AlphaBound::of(parse_term(a.alpha, *d, naturals()));
  const std::uint64_t v = h.value(alpha, a.n);
  Outcome o;
  o.results = {{"system", d->dsl()}, {"alpha", alpha.is_top() ? "top" : nat_term(*d, *alpha.term)}, {"n", a.n}, {"value", v}};
  o.truncation["resource_cap"] = false;
  o.text = std::to_string(v) + "\n";
  return o;
}

Outcome fgh_nf(const Args& a, const Config& cfg) {
  const System d = parse_system(a.system, cfg.presets);
  Hierarchy h(d, cfg.resource_cap);
  const AlphaBound alpha = a.alpha == "top" ? AlphaBound::top() : AlphaBound::of(parse_term(a.alpha, *d, naturals()));
  const NormalForm nf = h.normal_form(a.n, a.m, alpha);
  h.validate(nf, alpha);
  Outcome o;
  Json chain = Json::array();
  for (const auto& t : nf.chain) chain.push_back(nat_term(*d, t));
  o.results = {{"system", d->dsl()}, {"n", a.n}, {"m", a.m}, {"normal_form", h.to_string(nf)}, {"constant", nf.constant.has_value()}, {"chain", chain}};
  o.truncation["resource_cap"] = false;
  o.text = h.to_string(nf) + "\n";
  return o;
}

Outcome fgh_map(const Args& a, const Config& cfg) {
  const System d = parse_system(a.system, cfg.presets);
  Hierarchy h(d, cfg.resource_cap);
  const Morphism f = parse_morphism(a.f, FiniteOrder::of_size(a.n), FiniteOrder::of_size(a.n2));
  const Morphism g = h.morphism(f);
  Outcome o;
  o.results = {{"system", d->dsl()}, {"f", f.to_string()}, {"source_size", g.source().size()}, {"target_size", g.target().size()}, {"map", g.image()}};
  o.truncation["resource_cap"] = false;
  o.text = g.to_string() + "\n";
  return o;
}

Outcome collapse_enum(const Args& a, const Config& cfg) {
  const System d = parse_system(a.system, cfg.presets);
  const auto frag = build_fragment(d, parse_order(a.order), cfg.caps());
  Outcome o;
  o.results = fragment_json(*frag);
  fragment_flags(*frag, o.truncation);
  std::ostringstream text;
  for (NodeId id : frag->sorted())
    text << frag->position(id) << " " << frag->text(id) << " stage " << frag->node(id).stage << "\n";
  text << frag->size() << " terms, " << (frag->stabilized() ? "stabilized" : "not stabilized") << " at stage "
       << frag->stages_built() << "\n";
  if (frag->size_truncated()) text << "truncated: size cap " << cfg.size_cap << "\n";
  if (frag->param_truncated()) text << "truncated: parameter cap " << cfg.param_cap << "\n";
  o.text = text.str();
  o.dot = frag->to_dot();
  if (!a.dot.empty()) {
    std::ofstream file(a.dot);
    if (!file) throw UsageError("cannot write " + a.dot);
    file << o.dot;
  }
  return o;
}

Outcome collapse_cmp(const Args& a, const Config& cfg) {
  if (a.terms.size() != 2) throw UsageError("collapse cmp needs two terms");
  const System d = parse_system(a.system, cfg.presets);
  const auto frag = build_fragment(d, parse_order(a.order), cfg.caps());
  const NodeId x = require_member(*frag, a.terms[0]);
  const NodeId y = require_member(*frag, a.terms[1]);
  const auto c = frag->compare(x, y);
  const std::string word = c < 0 ? "less" : c > 0 ? "greater" : "equal";
  Outcome o;
  o.results = {{"left", frag->text(x)}, {"right", frag->text(y)}, {"order", word}};
  fragment_flags(*frag, o.truncation);
  o.text = word + "\n";
  return o;
}

Outcome collapse_validate(const Args& a, const Config& cfg) {
  if (a.terms.size() != 1) throw UsageError("collapse validate needs one term");
  const System d = parse_system(a.system, cfg.presets);
  const auto frag = build_fragment(d, parse_order(a.order), cfg.caps());
  const CollapseExpr e = parse_collapse(a.terms[0], *d, frag->base());
  const Membership m = validate_membership(*frag, e);
  Outcome o;
  o.results = {{"term", expr_text(*d, frag->base(), e)}, {"status", to_string(m.status)}};
  fragment_flags(*frag, o.truncation);
  std::ostringstream text;
  switch (m.status) {
    case Membership::Status::certified:
      o.results["stage"] = m.stage;
      o.results["witness"] = m.witness;
      text << "certified at stage " << m.stage << "\n";
      for (const auto& w : m.witness) text << "  " << w << "\n";
      break;
    case Membership::Status::rejected:
      o.results["condition"] = m.condition;
      o.results["reason"] = m.reason;
      o.counterexamples.push_back({{"condition", m.condition}, {"reason", m.reason}});
      text << "rejected: condition (" << m.condition << "): " << m.reason << "\n";
      o.code = static_cast<int>(ExitCode::validation);
      break;
    case Membership::Status::insufficient:
      o.results["reason"] = m.reason;
      o.truncation["insufficient_stages"] = true;
      text << "insufficient stages: " << m.reason << "\n";
      o.code = static_cast<int>(ExitCode::cap);
      break;
  }
  o.text = text.str();
  return o;
}

Outcome iso_check(const Args& a, const Config& cfg) {
  const System d = parse_system(a.system, cfg.presets);
  Hierarchy h(d, cfg.resource_cap);
  const IsoReport r = natural_iso(h, a.n, cfg.caps());
  Outcome o;
  Json pairs = Json::array();
  std::ostringstream text;
  text << (r.passed() ? "pass" : "fail") << ": " << r.eta.size() << " pairs\n";
  for (std::size_t m = 0; m < r.eta.size(); ++m) {
    pairs.push_back({{"value", m}, {"term", r.fragment->text(r.eta[m])}});
    text << m << " -> " << r.fragment->text(r.eta[m]) << "\n";
  }
  for (const auto& f : r.failures) {
    o.counterexamples.push_back(f);
    text << "failure: " << f << "\n";
  }
  o.results = {{"n", a.n}, {"size", r.size}, {"bijective", r.bijective}, {"order_preserving", r.order_preserving}, {"passed", r.passed()}, {"pairs", pairs}};
  fragment_flags(*r.fragment, o.truncation);
  o.text = text.str();
  if (!r.passed()) o.code = r.fragment->stabilized() ? static_cast<int>(ExitCode::validation) : static_cast<int>(ExitCode::cap);
  return o;
}

Outcome construct_hat(const Args& a, const Config& cfg) {
  const System d = parse_system(a.system, cfg.presets);
  const System hat = hat_system(d);
  const TermsOf ts = terms_of(*hat, FiniteOrder::of_size(a.n), {cfg.size_cap, cfg.param_cap});
  Outcome o;
  Json terms = Json::array();
  std::ostringstream text;
  text << ts.terms.size() << " terms in " << hat->dsl() << "(" << a.n << ")\n";
  for (const auto& t : ts.terms) {
    terms.push_back(nat_term(*hat, t));
    text << nat_term(*hat, t) << "\n";
  }
  o.results = {{"system", hat->dsl()}, {"n", a.n}, {"size", ts.terms.size()}, {"terms", terms}};
  o.truncation["size_cap"] = ts.truncated;
  o.text = text.str();
  return o;
}

Outcome construct_embed_hat(const Args& a, const Config& cfg) {
  const System d = parse_system(a.system, cfg.presets);
  const FiniteOrder order = parse_order(a.order);
  const HatEmbedding e = hat_embed(d, order, {cfg.size_cap, cfg.param_cap});
  auto name = [&](Key k) { return order.name(static_cast<std::size_t>(k)); };
  Outcome o;
  Json pairs = Json::array();
  std::ostringstream text;
  for (std::size_t i = 0; i < e.domain.size(); ++i) {
    const std::string from = format_term(*e.hat, e.domain[i], name);
    const std::string to = format_term(*e.target, e.image[i], name);
    pairs.push_back({{"hat", from}, {"product", to}});
    text << from << " -> " << to << "\n";
  }
  text << "strictly increasing: " << yes(e.strictly_increasing) << "\n";
  o.results = {{"size", e.domain.size()}, {"strictly_increasing", e.strictly_increasing}, {"pairs", pairs}};
  o.truncation["size_cap"] = false;
  o.text = text.str();
  if (!e.strictly_increasing) o.code = static_cast<int>(ExitCode::validation);
  return o;
}

Outcome construct_e_embed(const Args& a, const Config& cfg) {
  const System d = parse_system(a.system, cfg.presets);
  const EEmbedding e = e_embed(d, parse_order(a.order), cfg.caps());
  Outcome o;
  Json pairs = Json::array();
  std::ostringstream text;
  for (NodeId id : e.source->sorted()) {
    const std::string to = e.image[id] ? e.target->text(*e.image[id]) : std::string("(missing)");
    pairs.push_back({{"source", e.source->text(id)}, {"target", to}});
    text << e.source->text(id) << " -> " << to << "\n";
  }
  text << "nat part: " << e.nat_count << "\n"
       << "strictly increasing: " << yes(e.strictly_increasing) << "\n"
       << "stages preserved: " << yes(e.stages_preserved) << "\n"
       << "stage maps form a chain: " << yes(e.chain_consistent) << "\n"
       << "all images found: " << yes(e.sufficient) << "\n";
  for (const auto& i : e.issues) {
    o.counterexamples.push_back(i);
    text << "issue: " << i << "\n";
  }
  o.results = {{"nat_count", e.nat_count},
               {"strictly_increasing", e.strictly_increasing},
               {"stages_preserved", e.stages_preserved},
               {"chain_consistent", e.chain_consistent},
               {"sufficient", e.sufficient},
               {"pairs", pairs}};
  o.truncation["source_size_cap"] = e.source->size_truncated();
  o.truncation["target_size_cap"] = e.target->size_truncated();
  o.truncation["insufficient_target"] = !e.sufficient;
  o.text = text.str();
  if (!e.strictly_increasing || !e.chain_consistent || !e.stages_preserved) o.code = static_cast<int>(ExitCode::validation);
  else if (!e.sufficient) o.code = static_cast<int>(ExitCode::cap);
  return o;
}

Outcome bh_run(const Args& a, const Config& cfg) {
  const System d = parse_system(a.system, cfg.presets);
  const BhResult r = bh_fixed_point(d, cfg.caps(), cfg.size_cap);
  const BhReport rep = check_bh_properties(r);
  Outcome o;
  Json thetas = Json::array();
  for (const auto& t : r.thetas)
    thetas.push_back({{"alpha", t.alpha_text}, {"theta", t.theta ? Json(t.theta_text) : Json(nullptr)}, {"stabilized", t.stabilized}});
  o.results = {{"system", d->dsl()},
               {"fragment_size", r.fragment->size()},
               {"domain", r.thetas.size()},
               {"stabilized", rep.stabilized},
               {"unstabilized", rep.unstabilized},
               {"pairs_checked", rep.pairs_checked},
               {"property1", rep.property1},
               {"property2", rep.property2},
               {"least", rep.least},
               {"thetas", thetas}};
  fragment_flags(*r.fragment, o.truncation);
  o.truncation["domain_cap"] = r.thetas.size() >= cfg.size_cap;
  for (const auto& f : rep.failures) o.counterexamples.push_back(f);
  std::ostringstream text;
  text << "fragment of B_F(0): " << r.fragment->size() << " terms\n"
       << "domain: " << r.thetas.size() << ", stabilized theta: " << rep.stabilized << "\n"
       << "pairs checked: " << rep.pairs_checked << "\n"
       << "property (1): " << (rep.property1 ? "pass" : "fail") << "\n"
       << "property (2): " << (rep.property2 ? "pass" : "fail") << "\n"
       << "leastness: " << (rep.least ? "pass" : "fail") << "\n";
  for (const auto& f : rep.failures) text << "failure: " << f << "\n";
  o.text = text.str();
  if (!rep.passed()) o.code = static_cast<int>(ExitCode::validation);
  if (!a.report.empty()) {
    std::ofstream file(a.report);
    if (!file) throw UsageError("cannot write " + a.report);
    file << Json{{"results", o.results}, {"truncation", o.truncation}, {"counterexamples", o.counterexamples}}.dump(2) << "\n";
  }
  return o;
}

Outcome sys_check(const Args& a, const Config& cfg) {
  const System d = parse_system_unchecked(a.system, cfg.presets);
  const PredilatorReport r = check_predilator(*d, a.size, {cfg.size_cap, cfg.param_cap});
  Outcome o;
  std::ostringstream text;
  text << (r.passed ? "pass" : "fail") << ": " << r.orders_checked << " orders, " << r.terms_checked << " terms, "
       << r.morphisms_checked << " maps, " << r.pullbacks_checked << " pullbacks\n";
  for (const auto& f : r.failures) {
    o.counterexamples.push_back(f);
    text << "failure: " << f << "\n";
  }
  o.results = {{"system", d->dsl()}, {"max_size", a.size}, {"passed", r.passed}, {"orders", r.orders_checked}, {"terms", r.terms_checked}, {"maps", r.morphisms_checked}, {"pullbacks", r.pullbacks_checked}};
  o.truncation["param_cap"] = r.truncated;
  bool passed = r.passed;
  if (a.collapse) {
    const CollapseCheckReport c = check_collapse_functor(d, a.size, cfg.caps());
    text << "collapse functor: " << (c.passed ? "pass" : "fail") << ": " << c.checks << " checks\n";
    for (const auto& f : c.failures) {
      o.counterexamples.push_back(f);
      text << "failure: " << f << "\n";
    }
    o.results["collapse"] = {{"passed", c.passed}, {"checks", c.checks}};
    o.truncation["collapse"] = c.truncated;
    passed = passed && c.passed;
  }
  o.text = text.str();
  if (!passed) o.code = static_cast<int>(ExitCode::validation);
  return o;
}

Outcome sys_probe(const Args& a, const Config& cfg) {
  const System d = parse_system(a.system, cfg.presets);
  const auto count = weak_finiteness_probe(*d, a.n, cfg.size_cap, cfg.param_cap);
  Outcome o;
  o.results = {{"system", d->dsl()}, {"n", a.n}, {"count", count ? Json(*count) : Json(nullptr)}};
  o.truncation["overflow"] = !count;
  if (count) {
    o.text = std::to_string(*count) + "\n";
  } else {
    o.text = "overflow: more than " + std::to_string(cfg.size_cap) + " terms or parameter-capped\n";
    o.code = static_cast<int>(ExitCode::cap);
  }
  return o;
}

const char* kind(ExitCode c) {
  switch (c) {
    case ExitCode::ok: return "ok";
    case ExitCode::usage: return "usage";
    case ExitCode::validation: return "validation";
    case ExitCode::cap: return "cap";
  }
  return "?";
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Binary fast-growing hierarchy, ordinal collapse and Bachmann-Howard fixed points", "ffgh"};
  app.require_subcommand(1, 1);
  app.fallthrough();

  bool json = false;
  std::optional<std::size_t> stages, size_cap;
  std::optional<std::uint64_t> param_cap, resource_cap;
  std::string seed, format;
  app.add_flag("--json", json, "machine-readable output");
  app.add_option("--format", format, "text, json or dot");
  app.add_option("--stages", stages, "stage cap");
  app.add_option("--size-cap", size_cap, "size cap");
  app.add_option("--param-cap", param_cap, "parameter cap");
  app.add_option("--resource-cap", resource_cap, "bound on hierarchy values");
  app.add_option("--seed-config", seed, "key=value configuration file");

  Args a;
  std::map<CLI::App*, std::function<Outcome(const Args&, const Config&)>> leaves;
  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help, auto fn) {
    CLI::App* sub = parent->add_subcommand(name, help);
    leaves[sub] = fn;
    return sub;
  };
  auto group = [&](const std::string& name, const std::string& help) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->require_subcommand(1, 1);
    return sub;
  };
  auto system = [&](CLI::App* s) { s->add_option("--system", a.system, "system DSL")->required(); };

  CLI::App* fgh = group("fgh", "binary fast-growing hierarchy");
  CLI::App* s = leaf(fgh, "eval", "B_alpha(n)", fgh_eval);
  system(s);
  s->add_option("--alpha", a.alpha, "index term or top");
  s->add_option("--n", a.n)->required();
  s = leaf(fgh, "nf", "normal form of m below B_D(n)", fgh_nf);
  system(s);
  s->add_option("--alpha", a.alpha, "index term or top");
  s->add_option("--n", a.n)->required();
  s->add_option("--m", a.m)->required();
  s = leaf(fgh, "map", "B_D(f)", fgh_map);
  system(s);
  s->add_option("--f", a.f, "map, e.g. 0->0,1->2")->required();
  s->add_option("--n", a.n)->required();
  s->add_option("--n2", a.n2)->required();

  CLI::App* col = group("collapse", "collapse presentation");
  s = leaf(col, "enum", "enumerate a fragment", collapse_enum);
  system(s);
  s->add_option("--order", a.order)->required();
  s->add_option("--dot", a.dot, "write DOT to file");
  s = leaf(col, "cmp", "compare two terms", collapse_cmp);
  system(s);
  s->add_option("--order", a.order)->required();
  s->add_option("terms", a.terms)->expected(2);
  s = leaf(col, "validate", "membership certificate", collapse_validate);
  system(s);
  s->add_option("--order", a.order)->required();
  s->add_option("terms", a.terms)->expected(1);

  CLI::App* iso = group("iso", "natural isomorphism");
  s = leaf(iso, "check", "eta_n", iso_check);
  system(s);
  s->add_option("--n", a.n)->required();

  CLI::App* con = group("construct", "hat system and embeddings");
  s = leaf(con, "hat", "enumerate hat(D)(n)", construct_hat);
  system(s);
  s->add_option("--n", a.n)->required();
  s = leaf(con, "embed-hat", "hat(D)(A) into 2^A.D(A)", construct_embed_hat);
  system(s);
  s->add_option("--order", a.order)->required();
  s = leaf(con, "e-embed", "B_D(A) into B_hat(D)(w+A)", construct_e_embed);
  system(s);
  s->add_option("--order", a.order)->required();

  CLI::App* bh = group("bh", "Bachmann-Howard fixed point");
  s = leaf(bh, "run", "theta on a fragment of B_F(0)", bh_run);
  system(s);
  s->add_option("--report", a.report, "write JSON report");

  CLI::App* sys = group("sys", "denotation systems");
  s = leaf(sys, "check", "pre-dilator checks", sys_check);
  system(s);
  s->add_option("--size", a.size, "largest order size");
  s->add_flag("--collapse", a.collapse, "also check the collapse functor");
  s = leaf(sys, "probe", "count D(n)", sys_probe);
  system(s);
  s->add_option("--n", a.n)->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return static_cast<int>(ExitCode::usage);
  }

  std::string command;
  for (const auto& x : args) command += (command.empty() ? "" : " ") + x;
  const auto start = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  };
  Config cfg;
  try {
    if (!seed.empty()) cfg = load_seed_config(seed, cfg);
    if (stages) cfg.stage_cap = *stages;
    if (size_cap) cfg.size_cap = *size_cap;
    if (param_cap) cfg.param_cap = *param_cap;
    if (resource_cap) cfg.resource_cap = *resource_cap;
    if (!format.empty()) cfg.format = parse_format(format);
    if (json) cfg.format = Config::Format::json;
    cfg.validate();

    std::function<Outcome(const Args&, const Config&)> fn;
    for (auto& [sub, f] : leaves)
      if (sub->parsed()) fn = f;
    if (!fn) throw UsageError("no command");
    Outcome o = fn(a, cfg);
    switch (cfg.format) {
      case Config::Format::json:
        out << Json{{"command", command},
                    {"results", o.results},
                    {"truncation", o.truncation},
                    {"timing_ms", elapsed()},
                    {"counterexamples", o.counterexamples}}
                   .dump(2)
            << "\n";
        break;
      case Config::Format::dot:
        if (o.dot.empty()) throw UsageError("dot output is only available for collapse enum");
        out << o.dot;
        break;
      case Config::Format::text:
        out << o.text;
        break;
    }
    return o.code;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    if (cfg.format == Config::Format::json) {
      Json truncation = Json::object();
      if (e.exit_code() == ExitCode::cap) truncation["cap"] = true;
      out << Json{{"command", command},
                  {"error", {{"kind", kind(e.exit_code())}, {"message", e.what()}}},
                  {"truncation", truncation},
                  {"timing_ms", elapsed()}}
                 .dump(2)
          << "\n";
    }
    return static_cast<int>(e.exit_code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return static_cast<int>(ExitCode::validation);
  }
}

} // namespace ffgh
