#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "equidist/error.hpp"
#include "equidist/json_io.hpp"
#include "equidist/verify.hpp"

using namespace equidist;
using json_io::Json;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("set specs round-trip") {
  for (const char* text : {R"({"ap":[3,1]})", R"({"finite":[0,4,9]})", R"({"blocks":{"kind":"pow2-even"}})",
                           R"({"union":[{"ap":[2,0]},{"ap":[3,0]}]})", R"({"diff":[{"ap":[2,0]},{"ap":[6,0]}]})",
                           R"({"complement":{"ap":[4,1]}})", R"({"inter":[{"ap":[4,1]},{"ap":[6,3]}]})"}) {
    const Json j = Json::parse(text);
    CHECK(json_io::to_json(json_io::parse_set(j)) == j);
  }
  const auto s = json_io::parse_set(Json::parse(R"({"intersection":[{"ap":[2,0]}]})"));
  CHECK(s.kind() == IntegerSet::Kind::Intersection);
}

TEST_CASE("bitmask hex keeps elements low nibble first") {
  const auto s = json_io::parse_set(Json::parse(R"({"bitmask":{"n":12,"hex":"a51"}})"));
  // a = 1010 -> 1, 3; 5 = 0101 -> 4, 6; 1 -> 8
  for (std::uint64_t k = 0; k < 12; ++k) CHECK(s.contains(k) == (k == 1 || k == 3 || k == 4 || k == 6 || k == 8));
  CHECK(json_io::to_hex(s) == "a51");
  CHECK(code_of([] { (void)json_io::parse_set(Json::parse(R"({"bitmask":{"n":12,"hex":"a5"}})")); }) == ErrorCode::Parse);
}

TEST_CASE("malformed set specs") {
  CHECK(code_of([] { (void)json_io::parse_set(Json::parse(R"({"ap":[0,0]})")); }) == ErrorCode::Parse);
  CHECK(code_of([] { (void)json_io::parse_set(Json::parse(R"({"ap":[3]})")); }) == ErrorCode::Parse);
  CHECK(code_of([] { (void)json_io::parse_set(Json::parse(R"({"cone":[3]})")); }) == ErrorCode::Parse);
  CHECK(code_of([] { (void)json_io::parse_text("{\"ap\":"); }) == ErrorCode::Parse);
}

TEST_CASE("measures serialize reals as strings") {
  const auto m = json_io::parse_measure(Json::parse(R"({"binomial":{"r":0.3}})"));
  CHECK(json_io::to_json(m).dump() == R"({"binomial":{"r":"0.3"}})");
  const auto t = json_io::parse_measure(Json::parse(R"({"multinomial":{"q":3,"r":["0.2","0.5","0.3"]}})"));
  CHECK(t.base() == 3);
  CHECK(json_io::to_json(json_io::parse_measure(json_io::to_json(t))) == json_io::to_json(t));
  CHECK(code_of([] { (void)json_io::parse_measure(Json::parse(R"({"multinomial":{"q":2,"r":[0.2,0.5,0.3]}})")); }) == ErrorCode::Parse);
  CHECK(json_io::parse_measure(Json::parse(R"({"cantor":{}})")).kind() == Measure::Kind::Cantor);
}

TEST_CASE("generator specs") {
  const auto r = json_io::parse_generator(Json::parse(R"({"radical":{"q":3}})"));
  CHECK(r(1) == doctest::Approx(1.0 / 3));
  const auto k = json_io::parse_generator(Json::parse(R"({"kronecker":{"alpha":"sqrt2"}})"));
  CHECK(json_io::to_json(k).dump() == R"({"kronecker":{"alpha":"sqrt2"}})");
  const auto t = json_io::parse_generator(
      Json::parse(R"({"transport":{"inner":{"radical":{"q":2}},"measure":{"binomial":{"r":"0.3"}}}})"));
  CHECK(t(1) == doctest::Approx(quantile(Measure::binomial(0.3), 0.5)));
  const auto i = json_io::parse_generator(
      Json::parse(R"({"interleaved":{"a":{"constant":{"v":1}},"b":{"constant":{"v":0}},"blocks":"factorial","max_blocks":5}})"));
  CHECK(i(2) == 0.0);
  CHECK(json_io::to_json(i)["interleaved"]["max_blocks"] == 5);
  const auto adv = json_io::parse_generator(Json::parse(R"({"adversarial":{"function":{"dyadic_indicator":{}}}})"));
  CHECK(adv(1) == 0.5);
  CHECK(code_of([] { (void)json_io::parse_generator(Json::parse(R"({"adversarial":{"function":{"affine":{}}}})")); }) ==
        ErrorCode::Precondition);
  const auto d = json_io::parse_generator(Json::parse(R"({"decomposition":{"q":2,"depth":8}})"));
  CHECK(d(3) == 0.75);
}

TEST_CASE("function specs") {
  const auto s = json_io::parse_function(Json::parse(R"({"step":{"breaks":["1/3"],"values":[0,1]}})"));
  CHECK(json_io::to_json(s).dump() == R"({"step":{"breaks":["1/3"],"values":["0","1"]}})");
  CHECK(code_of([] { (void)json_io::parse_function(Json::parse(R"({"step":{"breaks":[0.3],"values":[0,1]}})")); }) ==
        ErrorCode::Parse);
  const auto a = json_io::parse_function(Json::parse(R"({"affine":{"slope":"2","intercept":"-0.5"}})"));
  CHECK(a(0.5) == 0.5);
  const auto ind = json_io::parse_function(Json::parse(R"({"interval_indicator":{"a":"1/4","b":"3/4"}})"));
  CHECK(ind(0.5) == 1.0);
}

TEST_CASE("index and interval strings") {
  CHECK(json_io::parse_index("identity").at(3) == 3);
  CHECK(json_io::parse_index("shift:17").at(1) == 18);
  CHECK(json_io::parse_index("list:5,2,9").at(3) == 9);
  CHECK(code_of([] { (void)json_io::parse_index("squares"); }) == ErrorCode::Parse);
  const auto iv = json_io::parse_interval("0.25,1");
  CHECK(iv.closed_hi);
  CHECK(iv.lo == 0.25);
}

TEST_CASE("reports use 15 significant digits and p/q rationals") {
  DensityEstimate e;
  e.lower = 1.0 / 3;
  e.upper = 0.1 + 0.2;
  e.horizon = 10;
  e.exact = Rational(1, 3);
  const Json j = json_io::to_json(e);
  CHECK(j["lower"].get<double>() == 0.333333333333333);
  CHECK(j["upper"].get<double>() == 0.3);
  CHECK(j["exact"] == "1/3");
  e.exact.reset();
  CHECK(json_io::to_json(e)["exact"].is_null());
  CHECK(json_io::real_string(0.1) == "0.1");
}

TEST_CASE("verification suites pass and are deterministic") {
  VerifyOptions opts;
  opts.depth = 8;
  opts.horizon = 1 << 12;
  opts.count = 4096;
  for (const char* suite : {"density", "decomposition", "preimage", "cantor", "riemann"}) {
    const auto a = run_verify(suite, opts);
    CHECK_MESSAGE(a.pass, a.report.dump(1));
    CHECK(a.report.dump() == run_verify(suite, opts).report.dump());
  }
  CHECK(code_of([] { (void)run_verify("nope"); }) == ErrorCode::InvalidArgument);
  CHECK(verify_suites().back() == "all");
}
