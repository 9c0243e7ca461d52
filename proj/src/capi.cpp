#include "equidist/equidist.h"

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "equidist/density.hpp"
#include "equidist/error.hpp"
#include "equidist/harness.hpp"
#include "equidist/json_io.hpp"
#include "equidist/measure.hpp"
#include "equidist/numeric.hpp"
#include "equidist/riemann.hpp"
#include "equidist/verify.hpp"

#ifndef EQUIDIST_VERSION
#define EQUIDIST_VERSION "0.0.0"
#endif

struct eq_set {
  equidist::IntegerSet value;
};
struct eq_measure {
  equidist::Measure value;
};
struct eq_generator {
  equidist::Generator value;
};

namespace {

using equidist::ErrorCode;
using equidist::json_io::Json;
namespace jio = equidist::json_io;

thread_local std::string g_last_error;

template <typename F>
eq_status guard(F&& body) {
  try {
    body();
    g_last_error.clear();
    return EQ_OK;
  } catch (const equidist::Error& e) {
    g_last_error = e.what();
    return static_cast<eq_status>(e.code());
  } catch (const Json::exception& e) {
    g_last_error = std::string("bad JSON value: ") + e.what();
    return EQ_ERR_PARSE;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return EQ_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return EQ_ERR_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  if (p == nullptr) equidist::fail(ErrorCode::InvalidArgument, std::string(what) + " is null");
}

char* dup_string(const std::string& s) {
  auto* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

char* emit(const Json& j) { return dup_string(j.dump(2)); }

Json options_of(const char* text) {
  if (text == nullptr || *text == '\0') return Json::object();
  Json j = jio::parse_text(text);
  if (!j.is_object()) equidist::fail(ErrorCode::Parse, "options must be a JSON object");
  return j;
}

std::uint64_t opt_uint(const Json& o, const char* key, std::uint64_t fallback) {
  if (!o.contains(key)) return fallback;
  const Json& v = o.at(key);
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer() && v.get<std::int64_t>() >= 0) return static_cast<std::uint64_t>(v.get<std::int64_t>());
  equidist::fail(ErrorCode::Parse, std::string("option '") + key + "' must be a non-negative integer");
}

double opt_real(const Json& o, const char* key, double fallback) {
  return o.contains(key) ? jio::parse_real(o.at(key)) : fallback;
}

std::string opt_string(const Json& o, const char* key, const std::string& fallback) {
  return o.contains(key) ? o.at(key).get<std::string>() : fallback;
}

std::vector<std::uint64_t> powers_of_two_upto(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 1; p < n; p <<= 1) out.push_back(p);
  out.push_back(n);
  return out;
}

std::string csv_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

}  // namespace

extern "C" {

const char* eq_last_error(void) { return g_last_error.c_str(); }

const char* eq_status_name(eq_status status) {
  switch (status) {
    case EQ_OK: return "ok";
    case EQ_ERR_INTERNAL: return "internal";
    default: return equidist::to_string(static_cast<ErrorCode>(status));
  }
}

const char* eq_version(void) { return EQUIDIST_VERSION; }

void eq_string_free(char* s) { std::free(s); }

eq_status eq_set_parse(const char* json, eq_set** out) {
  return guard([&] {
    need(json, "json");
    need(out, "out");
    *out = new eq_set{jio::parse_set(jio::parse_text(json))};
  });
}

void eq_set_free(eq_set* set) { delete set; }

eq_status eq_set_contains(const eq_set* set, uint64_t k, int* out) {
  return guard([&] {
    need(set, "set");
    need(out, "out");
    *out = set->value.contains(k) ? 1 : 0;
  });
}

eq_status eq_density_report(const eq_set* set, const char* options_json, char** out_json) {
  return guard([&] {
    need(set, "set");
    need(out_json, "out_json");
    const Json o = options_of(options_json);
    const std::uint64_t horizon = opt_uint(o, "horizon", 1000000);
    const double tol = opt_real(o, "tolerance", equidist::kDefaultDensityTolerance);
    const std::string mode = opt_string(o, "mode", "asymptotic");
    equidist::DensityEstimate est;
    Json extra = Json::object();
    if (mode == "asymptotic") {
      est = equidist::estimate_asymptotic_density(set->value, horizon, tol);
    } else if (mode == "uniform") {
      est = equidist::estimate_uniform_density(set->value, horizon, tol);
    } else if (mode == "weighted") {
      const auto w = jio::parse_weights(o.contains("weights") ? o.at("weights") : Json("log"));
      est = equidist::estimate_weighted_density(set->value, w, horizon, tol);
      extra["weights"] = w.name();
    } else {
      equidist::fail(ErrorCode::InvalidArgument, "unknown density mode '" + mode + "'");
    }
    Json j = jio::to_json(est);
    j["spec"] = jio::to_json(set->value);
    j["mode"] = mode;
    j["tolerance"] = jio::report_real(tol);
    for (auto& [k, v] : extra.items()) j[k] = v;
    if (o.value("buck", false)) j["buck"] = jio::to_json(equidist::is_buck_measurable(set->value, horizon));
    *out_json = emit(j);
  });
}

eq_status eq_buck_density(const eq_set* set, int64_t* num, int64_t* den) {
  return guard([&] {
    need(set, "set");
    need(num, "num");
    need(den, "den");
    const auto r = equidist::buck_density_exact(set->value);
    *num = r.num();
    *den = r.den();
  });
}

eq_status eq_measure_parse(const char* json, eq_measure** out) {
  return guard([&] {
    need(json, "json");
    need(out, "out");
    *out = new eq_measure{jio::parse_measure(jio::parse_text(json))};
  });
}

void eq_measure_free(eq_measure* m) { delete m; }

eq_status eq_measure_cell(const eq_measure* m, unsigned base, unsigned level, uint64_t index, double* out) {
  return guard([&] {
    need(m, "measure");
    need(out, "out");
    *out = equidist::cell_measure(m->value, equidist::QadicCell::make(base, level, index));
  });
}

eq_status eq_measure_cdf(const eq_measure* m, double x, double* out) {
  return guard([&] {
    need(m, "measure");
    need(out, "out");
    *out = equidist::cdf(m->value, x);
  });
}

eq_status eq_measure_quantile(const eq_measure* m, double u, double* out) {
  return guard([&] {
    need(m, "measure");
    need(out, "out");
    *out = equidist::quantile(m->value, u);
  });
}

eq_status eq_measure_interval(const eq_measure* m, double a, double b, double* out) {
  return guard([&] {
    need(m, "measure");
    need(out, "out");
    *out = equidist::interval_measure(m->value, a, b);
  });
}

eq_status eq_measure_is_continuity(const eq_measure* m, double a, double b, int* out) {
  return guard([&] {
    need(m, "measure");
    need(out, "out");
    *out = equidist::is_continuity_interval(m->value, a, b) ? 1 : 0;
  });
}

eq_status eq_measure_report(const eq_measure* m, const char* options_json, char** out_json) {
  return guard([&] {
    need(m, "measure");
    need(out_json, "out_json");
    const Json o = options_of(options_json);
    const auto& mv = m->value;
    Json j{{"measure", jio::to_json(mv)}, {"base", mv.base()}};
    if (o.contains("level")) {
      const auto level = static_cast<unsigned>(opt_uint(o, "level", 0));
      const auto first = equidist::QadicCell::make(mv.base(), level, 0);
      const std::uint64_t cells = first.count();
      equidist::CompensatedSum<double> sum;
      Json masses = Json::array();
      for (std::uint64_t i = 0; i < cells; ++i) {
        const double v = equidist::cell_measure(mv, equidist::QadicCell::make(mv.base(), level, i));
        sum.add(v);
        if (cells <= 4096) masses.push_back(jio::report_real(v));
      }
      j["level"] = level;
      j["level_sum"] = jio::report_real(sum.value());
      if (cells <= 4096) j["cells"] = masses;
    }
    if (o.contains("cdf")) {
      Json rows = Json::array();
      for (const auto& x : o.at("cdf")) {
        const double xv = jio::parse_real(x);
        rows.push_back({{"x", jio::report_real(xv)}, {"F", jio::report_real(equidist::cdf(mv, xv))}});
      }
      j["cdf"] = rows;
    }
    if (o.contains("quantile")) {
      Json rows = Json::array();
      for (const auto& u : o.at("quantile")) {
        const double uv = jio::parse_real(u);
        rows.push_back({{"u", jio::report_real(uv)}, {"x", jio::report_real(equidist::quantile(mv, uv))}});
      }
      j["quantile"] = rows;
    }
    *out_json = emit(j);
  });
}

eq_status eq_generator_parse(const char* json, eq_generator** out) {
  return guard([&] {
    need(json, "json");
    need(out, "out");
    *out = new eq_generator{jio::parse_generator(jio::parse_text(json))};
  });
}

void eq_generator_free(eq_generator* g) { delete g; }

eq_status eq_generator_describe(const eq_generator* g, char** out_json) {
  return guard([&] {
    need(g, "generator");
    need(out_json, "out_json");
    *out_json = emit(jio::to_json(g->value));
  });
}

eq_status eq_generator_eval(const eq_generator* g, uint64_t k, double* out) {
  return guard([&] {
    need(g, "generator");
    need(out, "out");
    *out = g->value(k);
  });
}

eq_status eq_generator_eval_range(const eq_generator* g, uint64_t start, uint64_t count, double* out) {
  return guard([&] {
    need(g, "generator");
    if (count > 0) need(out, "out");
    for (uint64_t i = 0; i < count; ++i) out[i] = g->value(start + i);
  });
}

eq_status eq_generator_transport(const eq_generator* g, const eq_measure* m, eq_generator** out) {
  return guard([&] {
    need(g, "generator");
    need(m, "measure");
    need(out, "out");
    *out = new eq_generator{equidist::transport_mapping(g->value, m->value)};
  });
}

eq_status eq_discrepancy_report(const eq_generator* g, const char* options_json, char** out_json, char** out_csv) {
  return guard([&] {
    need(g, "generator");
    need(out_json, "out_json");
    const Json o = options_of(options_json);
    equidist::DiscrepancyOptions opts;
    opts.count = opt_uint(o, "n", opts.count);
    opts.h_max = static_cast<unsigned>(opt_uint(o, "h_max", opts.h_max));
    opts.tolerance = opt_real(o, "tolerance", opts.tolerance);
    opts.running = o.value("running", false) || out_csv != nullptr;
    if (o.contains("measure") && !o.at("measure").is_null()) opts.target = jio::parse_measure(o.at("measure"));
    if (o.contains("intervals")) {
      for (const auto& s : o.at("intervals")) opts.intervals.push_back(jio::parse_interval(s.get<std::string>()));
    }
    const auto idx = jio::parse_index(opt_string(o, "index", "identity"));
    const auto report = equidist::discrepancy_report(g->value, idx, opts);
    Json j = jio::to_json(report);
    j["generator"] = jio::to_json(g->value);
    j["index"] = idx.describe();
    if (opts.target) j["measure"] = jio::to_json(*opts.target);
    if (!o.value("running", false)) j.erase("running");
    std::string csv;
    if (out_csv != nullptr) {
      csv = "n,star_discrepancy,weyl_1,ks\n";
      for (const auto& r : report.running) {
        csv += std::to_string(r.n) + "," + csv_real(r.star_discrepancy) + "," + csv_real(r.weyl_1) + "," +
               (r.ks ? csv_real(*r.ks) : std::string()) + "\n";
      }
    }
    char* json_out = emit(j);
    if (out_csv != nullptr) *out_csv = dup_string(csv);
    *out_json = json_out;
  });
}

eq_status eq_weyl_report(const eq_generator* g, const char* options_json, char** out_json) {
  return guard([&] {
    need(g, "generator");
    need(out_json, "out_json");
    const Json o = options_of(options_json);
    const std::uint64_t n = opt_uint(o, "n", 1024);
    const auto h_max = static_cast<unsigned>(opt_uint(o, "h_max", 8));
    const auto idx = jio::parse_index(opt_string(o, "index", "identity"));
    Json weyl = Json::object();
    for (unsigned h = 1; h <= h_max; ++h) {
      weyl[std::to_string(h)] = jio::report_real(equidist::weyl_sum(g->value, idx, h, n));
    }
    *out_json = emit({{"generator", jio::to_json(g->value)}, {"index", idx.describe()}, {"N", n}, {"weyl", weyl}});
  });
}

eq_status eq_riemann_report(const char* function_json, const char* options_json, char** out_json, char** out_csv) {
  return guard([&] {
    need(function_json, "function_json");
    need(out_json, "out_json");
    const Json o = options_of(options_json);
    const auto f = jio::parse_function(jio::parse_text(function_json));
    const auto domain = equidist::domain_from_string(opt_string(o, "domain", "rationals"));
    const double tol = opt_real(o, "tolerance", 1e-6);
    const auto max_level = static_cast<unsigned>(opt_uint(o, "max_level", 20));
    const auto verdict = equidist::integrability_verdict(f, domain, tol, max_level);
    Json j = jio::to_json(verdict);
    j["function"] = jio::to_json(f);
    j["domain"] = equidist::to_string(domain);
    j["tolerance"] = jio::report_real(tol);
    const auto exact = f.exact_integral();
    j["exact_integral"] = exact ? jio::report_real(*exact) : Json(nullptr);
    std::string csv = "n,average\n";
    if (o.contains("trace")) {
      const Json& t = o.at("trace");
      const auto g = jio::parse_generator(t.contains("generator") ? t.at("generator") : Json{{"radical", {{"q", 2}}}});
      const std::uint64_t n = opt_uint(t, "n", 1024);
      require(n >= 1, ErrorCode::InvalidArgument, "trace length must be positive");
      Json rows = Json::array();
      for (const auto& [count, avg] : equidist::cesaro_trace(f, g, powers_of_two_upto(n))) {
        rows.push_back({{"n", count}, {"average", jio::report_real(avg)}});
        csv += std::to_string(count) + "," + csv_real(avg) + "\n";
      }
      j["trace"] = {{"generator", jio::to_json(g)}, {"rows", rows}};
    }
    char* json_out = emit(j);
    if (out_csv != nullptr) *out_csv = dup_string(csv);
    *out_json = json_out;
  });
}

eq_status eq_verify(const char* suite, const char* options_json, char** out_json, int* passed) {
  return guard([&] {
    need(suite, "suite");
    need(out_json, "out_json");
    const Json o = options_of(options_json);
    equidist::VerifyOptions opts;
    opts.depth = static_cast<unsigned>(opt_uint(o, "depth", opts.depth));
    opts.horizon = opt_uint(o, "horizon", opts.horizon);
    opts.count = opt_uint(o, "count", opts.count);
    const auto result = equidist::run_verify(suite, opts);
    *out_json = emit(result.report);
    if (passed != nullptr) *passed = result.pass ? 1 : 0;
  });
}

}  // extern "C"
