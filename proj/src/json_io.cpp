#include "equidist/json_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>

#include "equidist/error.hpp"
#include "equidist/numeric.hpp"

namespace equidist::json_io {
namespace {

const Json& only_entry(const Json& j, std::string& key) {
  if (!j.is_object() || j.size() != 1) {
    fail(ErrorCode::Parse, "expected an object with exactly one key, got " + j.dump());
  }
  key = j.begin().key();
  return j.begin().value();
}

std::uint64_t parse_uint(const Json& j, const char* what) {
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  if (j.is_number_integer() && j.get<std::int64_t>() >= 0) return static_cast<std::uint64_t>(j.get<std::int64_t>());
  if (j.is_string()) {
    std::uint64_t v = 0;
    const std::string s = j.get<std::string>();
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec == std::errc{} && ptr == s.data() + s.size()) return v;
  }
  fail(ErrorCode::Parse, std::string("expected a non-negative integer for ") + what + ", got " + j.dump());
}

const Json& field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) {
    fail(ErrorCode::Parse, std::string("missing field '") + name + "' in " + j.dump());
  }
  return j.at(name);
}

long double named_alpha(const std::string& name, bool& known) {
  known = true;
  if (name == "sqrt2") return std::sqrt(2.0L);
  if (name == "sqrt3") return std::sqrt(3.0L);
  if (name == "sqrt5") return std::sqrt(5.0L);
  if (name == "golden") return (1.0L + std::sqrt(5.0L)) / 2.0L;
  known = false;
  return 0.0L;
}

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  fail(ErrorCode::Parse, std::string("bad hex digit '") + c + "'");
}

Json real_list(const std::vector<double>& values) {
  Json out = Json::array();
  for (const double v : values) out.push_back(real_string(v));
  return out;
}

}  // namespace

Json parse_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    fail(ErrorCode::Parse, std::string("malformed JSON: ") + e.what());
  }
}

double parse_real(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s.find('/') != std::string::npos) return Rational::parse(s).to_double();
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (!s.empty() && end == s.c_str() + s.size() && std::isfinite(v)) return v;
  }
  fail(ErrorCode::Parse, "expected a real number, got " + j.dump());
}

std::string real_string(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

Json report_real(double v) { return Json(round15(v)); }

IntegerSet parse_set(const Json& j) {
  std::string key;
  const Json& body = only_entry(j, key);
  if (key == "ap") {
    if (!body.is_array() || body.size() != 2) fail(ErrorCode::Parse, "ap expects [modulus, residue]");
    const std::uint64_t a = parse_uint(body[0], "modulus");
    const std::uint64_t b = parse_uint(body[1], "residue");
    if (a == 0) fail(ErrorCode::Parse, "AP modulus must be at least 1");
    return IntegerSet::ap(a, b);
  }
  if (key == "finite") {
    if (!body.is_array()) fail(ErrorCode::Parse, "finite expects a list");
    std::vector<std::uint64_t> elements;
    for (const auto& e : body) elements.push_back(parse_uint(e, "element"));
    return IntegerSet::finite(std::move(elements));
  }
  auto children = [&](std::size_t min) {
    if (!body.is_array() || body.size() < min) fail(ErrorCode::Parse, key + " expects a list of sets");
    std::vector<IntegerSet> out;
    for (const auto& c : body) out.push_back(parse_set(c));
    return out;
  };
  if (key == "union") return IntegerSet::unite(children(1));
  if (key == "inter" || key == "intersection") return IntegerSet::intersect(children(1));
  if (key == "diff") {
    auto c = children(2);
    if (c.size() != 2) fail(ErrorCode::Parse, "diff expects [A, B]");
    return IntegerSet::difference(c[0], c[1]);
  }
  if (key == "complement") return IntegerSet::complement(parse_set(body));
  if (key == "blocks") return IntegerSet::blocks(block_rule_from_string(field(body, "kind").get<std::string>()));
  if (key == "bitmask") {
    const std::uint64_t n = parse_uint(field(body, "n"), "bitmask horizon");
    const std::string hex = field(body, "hex").get<std::string>();
    if (hex.size() * 4 < n) fail(ErrorCode::Parse, "bitmask hex is shorter than its horizon");
    std::vector<std::uint64_t> words((n + 63) / 64, 0);
    for (std::size_t i = 0; i < hex.size(); ++i) {
      const int v = hex_value(hex[i]);
      for (int b = 0; b < 4; ++b) {
        const std::uint64_t k = 4 * i + static_cast<std::uint64_t>(b);
        if (((v >> b) & 1) && k < n) words[k / 64] |= std::uint64_t{1} << (k % 64);
      }
    }
    return IntegerSet::bitmask(n, std::move(words));
  }
  fail(ErrorCode::Parse, "unknown set node '" + key + "'");
}

std::string to_hex(const IntegerSet& bitmask) {
  const std::uint64_t n = bitmask.bitmask_horizon();
  const auto words = bitmask.bitmask_words();
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string hex;
  for (std::uint64_t i = 0; 4 * i < n; ++i) {
    int v = 0;
    for (int b = 0; b < 4; ++b) {
      const std::uint64_t k = 4 * i + static_cast<std::uint64_t>(b);
      if (k < n && ((words[k / 64] >> (k % 64)) & 1U)) v |= 1 << b;
    }
    hex.push_back(kDigits[v]);
  }
  return hex;
}

Json to_json(const IntegerSet& s) {
  using K = IntegerSet::Kind;
  auto kids = [&] {
    Json out = Json::array();
    for (const auto& c : s.children()) out.push_back(to_json(c));
    return out;
  };
  switch (s.kind()) {
    case K::AP: return {{"ap", {s.modulus(), s.residue()}}};
    case K::Finite: {
      Json list = Json::array();
      for (const auto e : s.elements()) list.push_back(e);
      return {{"finite", list}};
    }
    case K::Blocks: return {{"blocks", {{"kind", to_string(s.rule())}}}};
    case K::Union: return {{"union", kids()}};
    case K::Intersection: return {{"inter", kids()}};
    case K::Difference: return {{"diff", kids()}};
    case K::Complement: return {{"complement", to_json(s.children()[0])}};
    case K::Bitmask: return {{"bitmask", {{"n", s.bitmask_horizon()}, {"hex", to_hex(s)}}}};
  }
  return nullptr;
}

Measure parse_measure(const Json& j) {
  std::string key;
  const Json& body = only_entry(j, key);
  if (key == "uniform") return Measure::uniform();
  if (key == "cantor") return Measure::cantor();
  if (key == "binomial") return Measure::binomial(parse_real(field(body, "r")));
  if (key == "multinomial") {
    const Json& r = field(body, "r");
    if (!r.is_array()) fail(ErrorCode::Parse, "multinomial r must be a list");
    std::vector<double> weights;
    for (const auto& w : r) weights.push_back(parse_real(w));
    if (body.contains("q") && parse_uint(body.at("q"), "q") != weights.size()) {
      fail(ErrorCode::Parse, "multinomial q does not match the number of weights");
    }
    return Measure::multinomial(std::move(weights));
  }
  fail(ErrorCode::Parse, "unknown measure '" + key + "'");
}

Json to_json(const Measure& m) {
  switch (m.kind()) {
    case Measure::Kind::Uniform: return {{"uniform", Json::object()}};
    case Measure::Kind::Cantor: return {{"cantor", Json::object()}};
    case Measure::Kind::Binomial: return {{"binomial", {{"r", real_string(m.r())}}}};
    case Measure::Kind::Multinomial: {
      const auto w = m.weights();
      return {{"multinomial", {{"q", m.base()}, {"r", real_list({w.begin(), w.end()})}}}};
    }
  }
  return nullptr;
}

Generator parse_generator(const Json& j) {
  std::string key;
  const Json& body = only_entry(j, key);
  if (key == "radical") return Generator::radical_inverse(static_cast<unsigned>(parse_uint(field(body, "q"), "q")));
  if (key == "kronecker") {
    const Json& a = field(body, "alpha");
    if (a.is_string()) {
      bool known = false;
      const long double alpha = named_alpha(a.get<std::string>(), known);
      if (known) return Generator::kronecker(alpha, a.get<std::string>());
    }
    const double alpha = parse_real(a);
    return Generator::kronecker(alpha, real_string(alpha));
  }
  if (key == "transport") return transport_mapping(parse_generator(field(body, "inner")), parse_measure(field(body, "measure")));
  if (key == "cantor") return cantor_mapping(parse_generator(field(body, "inner")));
  if (key == "constant") return Generator::constant(parse_real(field(body, "v")));
  if (key == "decomposition") {
    const auto q = static_cast<unsigned>(parse_uint(field(body, "q"), "q"));
    const auto depth = static_cast<unsigned>(parse_uint(field(body, "depth"), "depth"));
    return theorem1_mapping(residue_decomposition(q, depth));
  }
  const auto schedule_of = [&] {
    const std::string blocks = body.value("blocks", std::string("factorial"));
    if (blocks != "factorial") fail(ErrorCode::Parse, "unknown block schedule '" + blocks + "'");
    const auto max_blocks = body.contains("max_blocks") ? parse_uint(body.at("max_blocks"), "max_blocks") : 20;
    return BlockSchedule::factorial(static_cast<unsigned>(max_blocks));
  };
  if (key == "interleaved") {
    return Generator::interleaved(parse_generator(field(body, "a")), parse_generator(field(body, "b")), schedule_of());
  }
  if (key == "adversarial") {
    const BoundedFunction f = parse_function(field(body, "function"));
    const Domain d = domain_from_string(body.value("domain", std::string("rationals")));
    const Generator base = body.contains("base") ? parse_generator(body.at("base")) : Generator::radical_inverse(2);
    const auto seq = adversarial_sequence(f, d, base, schedule_of(), body.value("override", false));
    const std::string stream = body.value("stream", std::string("combined"));
    if (stream == "combined") return seq.combined;
    if (stream == "upper") return seq.upper;
    if (stream == "lower") return seq.lower;
    fail(ErrorCode::Parse, "unknown adversarial stream '" + stream + "'");
  }
  fail(ErrorCode::Parse, "unknown generator '" + key + "'");
}

Json to_json(const Generator& g) {
  using K = Generator::Kind;
  switch (g.kind()) {
    case K::RadicalInverse: return {{"radical", {{"q", g.base()}}}};
    case K::Kronecker: return {{"kronecker", {{"alpha", g.label()}}}};
    case K::Transport: return {{"transport", {{"inner", to_json(g.inner())}, {"measure", to_json(g.measure())}}}};
    case K::CantorCode: return {{"cantor", {{"inner", to_json(g.inner())}}}};
    case K::Constant: return {{"constant", {{"v", real_string(g.constant_value())}}}};
    case K::Interleaved:
      return {{"interleaved",
               {{"a", to_json(g.first())},
                {"b", to_json(g.second())},
                {"blocks", g.schedule().name()},
                {"max_blocks", g.schedule().max_blocks()}}}};
    case K::Custom: return {{"custom", g.describe()}};
  }
  return nullptr;
}

BoundedFunction parse_function(const Json& j) {
  std::string key;
  const Json& body = only_entry(j, key);
  if (key == "constant") return BoundedFunction::constant(parse_real(field(body, "c")));
  if (key == "affine") {
    const double slope = body.contains("slope") ? parse_real(body.at("slope")) : 1.0;
    const double intercept = body.contains("intercept") ? parse_real(body.at("intercept")) : 0.0;
    return BoundedFunction::affine(slope, intercept);
  }
  if (key == "step") {
    std::vector<Rational> breaks;
    for (const auto& b : field(body, "breaks")) {
      if (b.is_string()) breaks.push_back(Rational::parse(b.get<std::string>()));
      else if (b.is_number_integer()) breaks.push_back(Rational(b.get<std::int64_t>()));
      else fail(ErrorCode::Parse, "step breakpoints must be exact rationals such as \"1/3\"");
    }
    std::vector<double> values;
    for (const auto& v : field(body, "values")) values.push_back(parse_real(v));
    return BoundedFunction::step(std::move(breaks), std::move(values));
  }
  if (key == "dyadic_indicator") return BoundedFunction::dyadic_indicator();
  if (key == "interval_indicator") {
    const auto exact = [](const Json& v) {
      if (v.is_string()) return Rational::parse(v.get<std::string>());
      if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
      fail(ErrorCode::Parse, "indicator endpoints must be exact rationals");
    };
    return BoundedFunction::interval_indicator(exact(field(body, "a")), exact(field(body, "b")));
  }
  fail(ErrorCode::Parse, "unknown function '" + key + "'");
}

Json to_json(const BoundedFunction& f) {
  using K = BoundedFunction::Kind;
  switch (f.kind()) {
    case K::Constant: return {{"constant", {{"c", real_string(f.intercept())}}}};
    case K::Affine: return {{"affine", {{"slope", real_string(f.slope())}, {"intercept", real_string(f.intercept())}}}};
    case K::Step: {
      Json breaks = Json::array();
      for (const auto& b : f.breaks()) breaks.push_back(b.str());
      return {{"step", {{"breaks", breaks}, {"values", real_list(f.values())}}}};
    }
    case K::DyadicIndicator: return {{"dyadic_indicator", Json::object()}};
    case K::IntervalIndicator:
      return {{"interval_indicator", {{"a", f.interval_start().str()}, {"b", f.interval_end().str()}}}};
    case K::Custom: return {{"custom", f.name()}};
  }
  return nullptr;
}

WeightSequence parse_weights(const Json& j) {
  if (j.is_string()) {
    const std::string name = j.get<std::string>();
    if (name == "constant") return WeightSequence::constant();
    if (name == "log" || name == "logarithmic") return WeightSequence::logarithmic();
    fail(ErrorCode::Parse, "unknown weights '" + name + "'");
  }
  std::string key;
  const Json& body = only_entry(j, key);
  if (key == "power") return WeightSequence::power(parse_real(body));
  fail(ErrorCode::Parse, "unknown weights '" + key + "'");
}

IndexSequence parse_index(const std::string& text) {
  if (text == "identity") return IndexSequence::identity();
  if (text.rfind("shift:", 0) == 0) {
    return IndexSequence::shifted(parse_uint(Json(text.substr(6)), "shift"));
  }
  if (text.rfind("list:", 0) == 0) {
    std::vector<std::uint64_t> values;
    std::size_t pos = 5;
    while (pos < text.size()) {
      const std::size_t comma = text.find(',', pos);
      values.push_back(parse_uint(Json(text.substr(pos, comma - pos)), "list entry"));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    return IndexSequence::explicit_list(std::move(values));
  }
  fail(ErrorCode::Parse, "unknown index sequence '" + text + "' (identity, shift:c, list:a,b,...)");
}

Interval parse_interval(const std::string& text) {
  const std::size_t comma = text.find(',');
  if (comma == std::string::npos) fail(ErrorCode::Parse, "interval must be written a,b");
  return Interval::make(parse_real(Json(text.substr(0, comma))), parse_real(Json(text.substr(comma + 1))));
}

Json to_json(const DensityEstimate& e) {
  Json j{{"lower", report_real(e.lower)},
         {"upper", report_real(e.upper)},
         {"horizon", e.horizon},
         {"converged", e.converged},
         {"exact", e.exact ? Json(e.exact->str()) : Json(nullptr)}};
  if (e.window != 0) j["window"] = e.window;
  return j;
}

Json to_json(const BuckMeasurability& b) {
  Json j{{"verdict", to_string(b.verdict)}, {"value", b.value ? Json(b.value->str()) : Json(nullptr)}};
  if (b.bounds) j["bounds"] = to_json(*b.bounds);
  return j;
}

Json to_json(const QAlgebraReport& r) {
  return {{"horizon", r.horizon},
          {"density_a", report_real(r.density_a)},
          {"density_b", report_real(r.density_b)},
          {"density_union", report_real(r.density_union)},
          {"gap", report_real(r.gap)},
          {"additive", r.additive},
          {"exact_union", r.exact_union ? Json(r.exact_union->str()) : Json(nullptr)}};
}

Json to_json(const DecompositionReport& r) {
  Json levels = Json::array();
  for (const auto& c : r.levels) {
    levels.push_back({{"level", c.level},
                      {"partition", c.partition},
                      {"refinement", c.refinement},
                      {"measure", c.measure},
                      {"detail", c.detail}});
  }
  return {{"horizon", r.horizon}, {"levels", levels}, {"pass", r.pass()}};
}

Json to_json(const IntervalCheck& c) {
  return {{"interval", c.interval.str()},
          {"index", c.index},
          {"n", c.count},
          {"empirical", report_real(c.empirical)},
          {"target", report_real(c.target)},
          {"gap", report_real(c.gap)},
          {"tolerance", report_real(c.tolerance)},
          {"pass", c.pass}};
}

Json to_json(const Corollary1Report& r) {
  Json runs = Json::array();
  for (const auto& c : r.runs) runs.push_back(to_json(c));
  return {{"runs", runs}, {"pass", r.pass}};
}

Json to_json(const AverageReport& r) {
  return {{"n", r.count},
          {"average", report_real(r.average)},
          {"integral", r.integral ? report_real(*r.integral) : Json(nullptr)},
          {"gap", r.gap ? report_real(*r.gap) : Json(nullptr)}};
}

Json to_json(const DiscrepancyReport& r) {
  Json weyl = Json::object();
  for (const auto& [h, v] : r.weyl) weyl[std::to_string(h)] = report_real(v);
  Json checks = Json::array();
  for (const auto& c : r.interval_checks) checks.push_back(to_json(c));
  Json j{{"N", r.count},
         {"star_discrepancy", report_real(r.star_discrepancy)},
         {"weyl", weyl},
         {"ks_distance", r.ks_distance ? report_real(*r.ks_distance) : Json(nullptr)},
         {"interval_checks", checks}};
  if (!r.running.empty()) {
    Json running = Json::array();
    for (const auto& s : r.running) {
      running.push_back({{"n", s.n},
                         {"star_discrepancy", report_real(s.star_discrepancy)},
                         {"weyl_1", report_real(s.weyl_1)},
                         {"ks", s.ks ? report_real(*s.ks) : Json(nullptr)}});
    }
    j["running"] = running;
  }
  return j;
}

Json to_json(const Envelope& e) {
  return {{"level", e.level},
          {"lower", report_real(e.lower)},
          {"upper", report_real(e.upper)},
          {"gap", report_real(e.gap())},
          {"approximate", e.approximate}};
}

Json to_json(const IntegrabilityVerdict& v) {
  Json history = Json::array();
  for (const auto& e : v.history) history.push_back(to_json(e));
  return {{"verdict", to_string(v.verdict)},
          {"value", v.value ? report_real(*v.value) : Json(nullptr)},
          {"gap", report_real(v.gap)},
          {"level", v.level},
          {"approximate", v.approximate},
          {"history", history}};
}

}  // namespace equidist::json_io
