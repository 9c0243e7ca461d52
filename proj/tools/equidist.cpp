#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <openssl/evp.h>

#include "CLI11.hpp"
#include "equidist/equidist.h"
#include "json.hpp"

namespace {

using Json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitConfig = 2;
constexpr int kExitVerification = 3;

struct Failure {
  int exit_code;
  std::string message;
};

struct Common {
  std::string out;
  std::string manifest;
  unsigned threads = 1;
};

struct Output {
  std::string path;
  std::string sha256;
};

struct Run {
  Json config = Json::object();
  std::vector<Output> outputs;
  int exit_code = kExitOk;
};

void check(eq_status st) {
  if (st == EQ_OK) return;
  throw Failure{st == EQ_ERR_INTERNAL ? kExitInternal : kExitConfig,
                std::string(eq_status_name(st)) + ": " + eq_last_error()};
}

// Owns a string returned by the library.
std::string take(char* s) {
  std::unique_ptr<char, decltype(&eq_string_free)> guard(s, &eq_string_free);
  return s == nullptr ? std::string() : std::string(s);
}

std::string read_arg(const std::string& value) {
  if (value.empty() || value[0] != '@') return value;
  std::ifstream in(value.substr(1), std::ios::binary);
  if (!in) throw Failure{kExitConfig, "cannot read " + value.substr(1)};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json json_arg(const std::string& value, const char* what) {
  try {
    return Json::parse(read_arg(value));
  } catch (const Json::parse_error& e) {
    throw Failure{kExitConfig, std::string("malformed JSON in ") + what + ": " + e.what()};
  }
}

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Failure{kExitInternal, "SHA-256 failed"};
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 15]);
  }
  return out;
}

void write_output(Run& run, const std::string& path, const std::string& data) {
  if (path.empty() || path == "-") {
    std::cout << data;
    std::cout.flush();
  } else {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Failure{kExitConfig, "cannot write " + path};
    out << data;
  }
  run.outputs.push_back({path.empty() ? "-" : path, sha256_hex(data)});
}

template <typename Handle>
using Owned = std::unique_ptr<Handle, void (*)(Handle*)>;

Owned<eq_set> parse_set(const std::string& text) {
  eq_set* s = nullptr;
  check(eq_set_parse(text.c_str(), &s));
  return {s, &eq_set_free};
}

Owned<eq_measure> parse_measure(const std::string& text) {
  eq_measure* m = nullptr;
  check(eq_measure_parse(text.c_str(), &m));
  return {m, &eq_measure_free};
}

Owned<eq_generator> parse_generator(const std::string& text) {
  eq_generator* g = nullptr;
  check(eq_generator_parse(text.c_str(), &g));
  return {g, &eq_generator_free};
}

std::string format_real(double v, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", precision, v);
  return buf;
}

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--out", c.out, "Report path (default: stdout)");
  sub->add_option("--manifest", c.manifest, "Write a run manifest to this path");
  sub->add_option("--threads", c.threads, "Cap on internal parallelism")->check(CLI::PositiveNumber);
}

void write_manifest(const std::string& path, const std::string& subcommand, const Run& run, const Common& c,
                    double seconds) {
  const char* seedless = std::getenv("EQUIDIST_SEEDLESS");
  Json outputs = Json::array();
  for (const auto& o : run.outputs) outputs.push_back({{"path", o.path}, {"sha256", o.sha256}});
  Json m{{"subcommand", subcommand},
         {"config", run.config},
         {"version", eq_version()},
         {"seedless", seedless != nullptr && std::string(seedless) == "1"},
         {"threads", c.threads},
         {"exit_code", run.exit_code},
         {"wall_clock_seconds", seconds},
         {"outputs", outputs}};
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Failure{kExitConfig, "cannot write " + path};
  out << m.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Density, equidistribution and Riemann-integrability experiments"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(eq_version()));

  Common common;
  Run run;
  std::function<void()> action;

  // density
  auto* density = app.add_subcommand("density", "Density estimates of an integer set");
  std::string d_spec, d_mode = "asymptotic", d_weights;
  std::uint64_t d_horizon = 1000000;
  double d_tol = 1e-3;
  bool d_buck = false;
  density->add_option("--spec", d_spec, "Integer set JSON (or @file)")->required();
  density->add_option("--horizon", d_horizon, "Largest n examined")->check(CLI::PositiveNumber);
  density->add_option("--mode", d_mode, "asymptotic, uniform or weighted")
      ->check(CLI::IsMember({"asymptotic", "uniform", "weighted"}));
  density->add_option("--weights", d_weights, "log, constant or {\"power\":s} for weighted mode");
  density->add_option("--tolerance", d_tol, "Convergence tolerance");
  density->add_flag("--buck", d_buck, "Include the Buck measurability verdict");
  add_common(density, common);
  density->callback([&] {
    action = [&] {
      const Json spec = json_arg(d_spec, "--spec");
      Json opts{{"mode", d_mode}, {"horizon", d_horizon}, {"tolerance", d_tol}, {"buck", d_buck}};
      if (!d_weights.empty()) {
        opts["weights"] = d_weights.front() == '{' ? json_arg(d_weights, "--weights") : Json(d_weights);
      }
      run.config = opts;
      run.config["spec"] = spec;
      auto set = parse_set(spec.dump());
      char* out = nullptr;
      check(eq_density_report(set.get(), opts.dump().c_str(), &out));
      write_output(run, common.out, take(out) + "\n");
    };
  });

  // measure
  auto* measure = app.add_subcommand("measure", "Cell masses, CDF and quantiles of a digit measure");
  std::string m_spec;
  std::optional<unsigned> m_level;
  std::vector<std::string> m_cdf, m_quantile;
  measure->add_option("--measure", m_spec, "Measure JSON (or @file)")->required();
  measure->add_option("--level", m_level, "Report every cell mass at this level");
  measure->add_option("--cdf", m_cdf, "Points x for F(x)")->delimiter(',');
  measure->add_option("--quantile", m_quantile, "Levels u for the quantile")->delimiter(',');
  add_common(measure, common);
  measure->callback([&] {
    action = [&] {
      const Json spec = json_arg(m_spec, "--measure");
      Json opts = Json::object();
      if (m_level) opts["level"] = *m_level;
      if (!m_cdf.empty()) opts["cdf"] = m_cdf;
      if (!m_quantile.empty()) opts["quantile"] = m_quantile;
      run.config = opts;
      run.config["measure"] = spec;
      auto m = parse_measure(spec.dump());
      char* out = nullptr;
      check(eq_measure_report(m.get(), opts.dump().c_str(), &out));
      write_output(run, common.out, take(out) + "\n");
    };
  });

  // generate
  auto* generate = app.add_subcommand("generate", "Stream k,x(k) as CSV");
  std::string g_spec;
  std::uint64_t g_n = 0, g_start = 0;
  int g_precision = 15;
  generate->add_option("--gen", g_spec, "Generator JSON (or @file)")->required();
  generate->add_option("--n", g_n, "Number of points")->required();
  generate->add_option("--start", g_start, "First index k");
  generate->add_option("--precision", g_precision, "Significant digits")->check(CLI::Range(1, 17));
  add_common(generate, common);
  generate->callback([&] {
    action = [&] {
      const Json spec = json_arg(g_spec, "--gen");
      run.config = {{"gen", spec}, {"n", g_n}, {"start", g_start}, {"precision", g_precision}};
      auto g = parse_generator(spec.dump());
      std::vector<double> xs(g_n);
      check(eq_generator_eval_range(g.get(), g_start, g_n, xs.data()));
      std::string csv = "k,x\n";
      for (std::uint64_t i = 0; i < g_n; ++i) {
        csv += std::to_string(g_start + i) + "," + format_real(xs[i], g_precision) + "\n";
      }
      write_output(run, common.out, csv);
    };
  });

  // transport
  auto* transport = app.add_subcommand("transport", "Push a generator through a measure's quantile");
  std::string t_gen, t_measure, t_csv;
  std::uint64_t t_n = 1024;
  int t_precision = 15;
  transport->add_option("--gen", t_gen, "Inner generator JSON (or @file)")->required();
  transport->add_option("--measure", t_measure, "Target measure JSON (or @file)")->required();
  transport->add_option("--n", t_n, "Number of points")->check(CLI::PositiveNumber);
  transport->add_option("--csv", t_csv, "Also write k,x,y rows here");
  transport->add_option("--precision", t_precision, "Significant digits in CSV")->check(CLI::Range(1, 17));
  add_common(transport, common);
  transport->callback([&] {
    action = [&] {
      const Json gen = json_arg(t_gen, "--gen");
      const Json mspec = json_arg(t_measure, "--measure");
      run.config = {{"gen", gen}, {"measure", mspec}, {"n", t_n}, {"csv", t_csv}, {"precision", t_precision}};
      auto inner = parse_generator(gen.dump());
      auto m = parse_measure(mspec.dump());
      eq_generator* raw = nullptr;
      check(eq_generator_transport(inner.get(), m.get(), &raw));
      Owned<eq_generator> y(raw, &eq_generator_free);
      const Json opts{{"n", t_n}, {"h_max", 1}, {"measure", mspec}};
      char* out = nullptr;
      check(eq_discrepancy_report(y.get(), opts.dump().c_str(), &out, nullptr));
      write_output(run, common.out, take(out) + "\n");
      if (!t_csv.empty()) {
        std::vector<double> xs(t_n), ys(t_n);
        check(eq_generator_eval_range(inner.get(), 1, t_n, xs.data()));
        check(eq_generator_eval_range(y.get(), 1, t_n, ys.data()));
        std::string csv = "k,x,y\n";
        for (std::uint64_t i = 0; i < t_n; ++i) {
          csv += std::to_string(i + 1) + "," + format_real(xs[i], t_precision) + "," + format_real(ys[i], t_precision) + "\n";
        }
        write_output(run, t_csv, csv);
      }
    };
  });

  // discrepancy
  auto* discrepancy = app.add_subcommand("discrepancy", "Star discrepancy, Weyl sums, KS distance, interval checks");
  std::string q_gen, q_measure, q_index = "identity", q_csv;
  std::uint64_t q_n = 1024;
  unsigned q_hmax = 8;
  double q_tol = 1e-2;
  std::vector<std::string> q_intervals;
  discrepancy->add_option("--gen", q_gen, "Generator JSON (or @file)")->required();
  discrepancy->add_option("--n", q_n, "Number of points")->check(CLI::PositiveNumber);
  discrepancy->add_option("--h-max", q_hmax, "Largest Weyl frequency");
  discrepancy->add_option("--interval", q_intervals, "Interval a,b to check (repeatable)");
  discrepancy->add_option("--measure", q_measure, "Target measure JSON (default uniform)");
  discrepancy->add_option("--index", q_index, "identity, shift:c or list:a,b,...");
  discrepancy->add_option("--tolerance", q_tol, "Interval check tolerance");
  discrepancy->add_option("--csv", q_csv, "Write running statistics at powers of two here");
  add_common(discrepancy, common);
  discrepancy->callback([&] {
    action = [&] {
      const Json gen = json_arg(q_gen, "--gen");
      Json opts{{"n", q_n}, {"h_max", q_hmax}, {"index", q_index}, {"tolerance", q_tol}, {"intervals", q_intervals},
                {"running", !q_csv.empty()}};
      if (!q_measure.empty()) opts["measure"] = json_arg(q_measure, "--measure");
      run.config = opts;
      run.config["gen"] = gen;
      run.config["csv"] = q_csv;
      auto g = parse_generator(gen.dump());
      char* out = nullptr;
      char* csv = nullptr;
      check(eq_discrepancy_report(g.get(), opts.dump().c_str(), &out, q_csv.empty() ? nullptr : &csv));
      const std::string report = take(out);
      const std::string rows = take(csv);
      write_output(run, common.out, report + "\n");
      if (!q_csv.empty()) write_output(run, q_csv, rows);
    };
  });

  // weyl
  auto* weyl = app.add_subcommand("weyl", "Normalised Weyl sums for h = 1..h_max");
  std::string w_gen, w_index = "identity";
  std::uint64_t w_n = 1024;
  unsigned w_hmax = 8;
  weyl->add_option("--gen", w_gen, "Generator JSON (or @file)")->required();
  weyl->add_option("--n", w_n, "Number of points")->check(CLI::PositiveNumber);
  weyl->add_option("--h-max", w_hmax, "Largest frequency");
  weyl->add_option("--index", w_index, "identity, shift:c or list:a,b,...");
  add_common(weyl, common);
  weyl->callback([&] {
    action = [&] {
      const Json gen = json_arg(w_gen, "--gen");
      const Json opts{{"n", w_n}, {"h_max", w_hmax}, {"index", w_index}};
      run.config = opts;
      run.config["gen"] = gen;
      auto g = parse_generator(gen.dump());
      char* out = nullptr;
      check(eq_weyl_report(g.get(), opts.dump().c_str(), &out));
      write_output(run, common.out, take(out) + "\n");
    };
  });

  // riemann
  auto* riemann = app.add_subcommand("riemann", "Darboux envelopes and integrability verdict");
  std::string r_function, r_domain = "rationals", r_trace_gen, r_csv;
  double r_tol = 1e-6;
  unsigned r_max_level = 20;
  std::uint64_t r_trace_n = 0;
  riemann->add_option("--function", r_function, "Function JSON (or @file)")->required();
  riemann->add_option("--domain", r_domain, "full, dyadic or rationals")
      ->check(CLI::IsMember({"full", "dyadic", "rationals"}));
  riemann->add_option("--tolerance", r_tol, "Envelope gap deciding integrability");
  riemann->add_option("--max-level", r_max_level, "Deepest dyadic level")->check(CLI::Range(0, 30));
  riemann->add_option("--trace-gen", r_trace_gen, "Generator for the Cesaro trace (default radical inverse)");
  riemann->add_option("--trace-n", r_trace_n, "Length of the Cesaro trace");
  riemann->add_option("--csv", r_csv, "Write the Cesaro trace here");
  add_common(riemann, common);
  riemann->callback([&] {
    action = [&] {
      const Json f = json_arg(r_function, "--function");
      Json opts{{"domain", r_domain}, {"tolerance", r_tol}, {"max_level", r_max_level}};
      if (r_trace_n > 0 || !r_csv.empty() || !r_trace_gen.empty()) {
        Json trace{{"n", r_trace_n > 0 ? r_trace_n : 1024}};
        if (!r_trace_gen.empty()) trace["generator"] = json_arg(r_trace_gen, "--trace-gen");
        opts["trace"] = trace;
      }
      run.config = opts;
      run.config["function"] = f;
      run.config["csv"] = r_csv;
      char* out = nullptr;
      char* csv = nullptr;
      check(eq_riemann_report(f.dump().c_str(), opts.dump().c_str(), &out, r_csv.empty() ? nullptr : &csv));
      const std::string report = take(out);
      const std::string rows = take(csv);
      write_output(run, common.out, report + "\n");
      if (!r_csv.empty()) write_output(run, r_csv, rows);
    };
  });

  // verify
  auto* verify = app.add_subcommand("verify", "Run the bundled verification suites");
  std::string v_suite = "all";
  unsigned v_depth = 12;
  std::uint64_t v_horizon = std::uint64_t{1} << 20, v_count = std::uint64_t{1} << 14;
  verify->add_option("--suite", v_suite, "density, decomposition, preimage, measure, transport, cantor, weyl, riemann, all");
  verify->add_option("--depth", v_depth, "Decomposition depth")->check(CLI::Range(1, 24));
  verify->add_option("--horizon", v_horizon, "Decomposition and density horizon")->check(CLI::PositiveNumber);
  verify->add_option("--count", v_count, "Sample size for sequence checks")->check(CLI::PositiveNumber);
  add_common(verify, common);
  verify->callback([&] {
    action = [&] {
      const Json opts{{"depth", v_depth}, {"horizon", v_horizon}, {"count", v_count}};
      run.config = opts;
      run.config["suite"] = v_suite;
      char* out = nullptr;
      int passed = 0;
      check(eq_verify(v_suite.c_str(), opts.dump().c_str(), &out, &passed));
      write_output(run, common.out, take(out) + "\n");
      if (!passed) {
        std::cerr << "verification failed: suite " << v_suite << "\n";
        run.exit_code = kExitVerification;
      }
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help();
    return kExitConfig;
  }

  std::string subcommand;
  for (const auto* sub : app.get_subcommands()) subcommand = sub->get_name();
  const auto start = std::chrono::steady_clock::now();
  try {
    action();
    run.config["threads"] = common.threads;
    if (!common.manifest.empty()) {
      const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      write_manifest(common.manifest, subcommand, run, common, seconds);
    }
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << "\n";
    return f.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInternal;
  }
  return run.exit_code;
}
