#include "equidist/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "equidist/construction.hpp"
#include "equidist/density.hpp"
#include "equidist/error.hpp"
#include "equidist/generator.hpp"
#include "equidist/harness.hpp"
#include "equidist/measure.hpp"
#include "equidist/numeric.hpp"
#include "equidist/riemann.hpp"

namespace equidist {
namespace {

using json_io::Json;
using json_io::report_real;

class Suite {
 public:
  explicit Suite(std::string name) : name_(std::move(name)) {}

  void check(const std::string& name, bool ok, Json detail = Json::object()) {
    detail["name"] = name;
    detail["pass"] = ok;
    checks_.push_back(std::move(detail));
    pass_ = pass_ && ok;
  }

  bool pass() const { return pass_; }
  Json json() const { return {{"suite", name_}, {"pass", pass_}, {"checks", checks_}}; }

 private:
  std::string name_;
  Json checks_ = Json::array();
  bool pass_ = true;
};

std::uint64_t lcm_of(const std::vector<std::uint64_t>& moduli) {
  std::uint64_t l = 1;
  for (const auto m : moduli) l = l / gcd_u64(l, m) * m;
  return l;
}

// Share of residues mod lcm whose far representatives belong to the set.
Rational residue_count_density(const IntegerSet& s, std::uint64_t far) {
  const std::uint64_t l = lcm_of(s.moduli());
  const std::uint64_t shift = (far / l + 1) * l;
  std::int64_t hits = 0;
  for (std::uint64_t r = 0; r < l; ++r) hits += s.contains(r + shift) ? 1 : 0;
  return Rational(hits, static_cast<std::int64_t>(l));
}

Suite density_suite(const VerifyOptions& opts) {
  Suite s("density");
  const std::uint64_t n = opts.horizon;
  double worst = 0.0;
  bool exact_ok = true;
  unsigned cases = 0;
  for (std::uint64_t a = 1; a <= 64; ++a) {
    for (const std::uint64_t b : {std::uint64_t{0}, a - 1}) {
      const auto est = estimate_asymptotic_density(IntegerSet::ap(a, b), n);
      const double target = 1.0 / static_cast<double>(a);
      const double dev = std::max(std::fabs(est.lower - target), std::fabs(est.upper - target));
      worst = std::max(worst, dev * static_cast<double>(n) / static_cast<double>(a));
      exact_ok = exact_ok && est.exact && *est.exact == Rational(1, static_cast<std::int64_t>(a));
      ++cases;
    }
  }
  s.check("ap_density_within_a_over_n", worst <= 1.0 && exact_ok,
          {{"cases", cases}, {"horizon", n}, {"worst_scaled_deviation", report_real(worst)}, {"exact_fields", exact_ok}});

  const std::vector<IntegerSet> specs = {
      IntegerSet::unite({IntegerSet::ap(2, 0), IntegerSet::ap(3, 0)}),
      IntegerSet::difference(IntegerSet::ap(2, 0), IntegerSet::ap(6, 0)),
      IntegerSet::complement(IntegerSet::ap(4, 1)),
      IntegerSet::intersect({IntegerSet::ap(4, 1), IntegerSet::ap(6, 3)}),
      IntegerSet::unite({IntegerSet::ap(2, 0), IntegerSet::finite({1, 3, 5})}),
      IntegerSet::difference(IntegerSet::unite({IntegerSet::ap(5, 2), IntegerSet::ap(7, 3), IntegerSet::ap(9, 0)}),
                             IntegerSet::intersect({IntegerSet::ap(3, 0), IntegerSet::complement(IntegerSet::ap(7, 3))})),
  };
  for (const auto& spec : specs) {
    const Rational buck = buck_density_exact(spec);
    const Rational oracle = residue_count_density(spec, 64);
    s.check("buck_matches_residue_count", buck == oracle,
            {{"spec", json_io::to_json(spec)}, {"buck", buck.str()}, {"residues", oracle.str()}});
  }

  const auto blocks = estimate_asymptotic_density(IntegerSet::blocks(BlockRule::Pow2Even), n);
  s.check("block_union_oscillates", !blocks.converged && blocks.upper - blocks.lower > 0.25,
          {{"estimate", json_io::to_json(blocks)}});
  const auto verdict = is_buck_measurable(IntegerSet::blocks(BlockRule::Pow2Even), n);
  s.check("block_union_not_buck_measurable", verdict.verdict != Verdict::Measurable,
          {{"verdict", json_io::to_json(verdict)}});

  const auto q = q_algebra_witness(IntegerSet::ap(4, 1), IntegerSet::ap(4, 3), n);
  s.check("disjoint_aps_additive", q.additive, {{"report", json_io::to_json(q)}});
  return s;
}

Suite decomposition_suite(const VerifyOptions& opts) {
  Suite s("decomposition");
  const auto d = residue_decomposition(2, opts.depth);
  const auto report = verify_decomposition(d, std::max(opts.horizon, ipow(2, opts.depth)));
  s.check("partition_refinement_measure", report.pass(), json_io::to_json(report));

  const Generator x = theorem1_mapping(d);
  const unsigned bits = 16;
  std::uint64_t mismatches = 0;
  for (std::uint64_t k = 0; k < (std::uint64_t{1} << bits); ++k) {
    std::uint64_t rev = 0;
    for (unsigned i = 0; i < bits; ++i) rev |= ((k >> i) & 1U) << (bits - 1 - i);
    if (x(k) != std::ldexp(static_cast<double>(rev), -static_cast<int>(bits))) ++mismatches;
  }
  s.check("mapping_is_bit_reversal", mismatches == 0, {{"k_below", std::uint64_t{1} << bits}, {"mismatches", mismatches}});
  return s;
}

Suite preimage_suite(const VerifyOptions& opts) {
  Suite s("preimage");
  const Generator x = Generator::radical_inverse(2);
  const unsigned max_level = std::min(opts.depth, 10U);
  const std::uint64_t k_end = std::uint64_t{1} << 16;
  for (unsigned n = 0; n <= max_level; ++n) {
    const std::uint64_t cells = std::uint64_t{1} << n;
    std::vector<std::uint64_t> residue(cells);
    std::vector<bool> seen(cells, false);
    bool shape_ok = true;
    for (std::uint64_t j = 0; j < cells; ++j) {
      const IntegerSet pre = preimage_of_cell(x, QadicCell::make(2, n, j));
      shape_ok = shape_ok && pre.kind() == IntegerSet::Kind::AP && pre.modulus() == cells &&
                 buck_density_exact(pre) == Rational(1, static_cast<std::int64_t>(cells));
      if (!shape_ok) break;
      residue[j] = pre.residue();
      shape_ok = !seen[pre.residue()];
      seen[pre.residue()] = true;
    }
    std::uint64_t disagreements = 0;
    if (shape_ok) {
      for (std::uint64_t k = 0; k < k_end; ++k) {
        const auto j = static_cast<std::uint64_t>(std::ldexp(x(k), static_cast<int>(n)));
        if (residue[std::min(j, cells - 1)] != k % cells) ++disagreements;
      }
    }
    s.check("level_" + std::to_string(n), shape_ok && disagreements == 0,
            {{"cells", cells}, {"exact_density", shape_ok}, {"disagreements", disagreements}});
  }
  return s;
}

// Sums every level-n mass up to max_level and checks m(child) = w_d m(parent).
Json measure_levels(const Measure& m, unsigned max_level, bool& ok) {
  const unsigned q = m.base();
  const auto w = m.weights();
  double worst_sum = 0.0;
  double worst_rec = 0.0;
  std::vector<double> parent{1.0};
  for (unsigned n = 1; n <= max_level; ++n) {
    std::vector<double> level(parent.size() * q);
    CompensatedSum<double> sum;
    for (std::uint64_t j = 0; j < level.size(); ++j) {
      level[j] = cell_measure(m, QadicCell::make(q, n, j));
      sum.add(level[j]);
      const double expect = w[j % q] * parent[j / q];
      if (expect != 0.0) worst_rec = std::max(worst_rec, std::fabs(level[j] - expect) / expect);
      else if (level[j] != 0.0) worst_rec = 1.0;
    }
    worst_sum = std::max(worst_sum, std::fabs(sum.value() - 1.0));
    parent = std::move(level);
  }
  ok = worst_sum <= 1e-12 && worst_rec <= 1e-15;
  return {{"measure", json_io::to_json(m)},
          {"max_level", max_level},
          {"worst_level_sum_error", report_real(worst_sum)},
          {"worst_recursion_error", report_real(worst_rec)}};
}

Suite measure_suite(const VerifyOptions&) {
  Suite s("measure");
  for (const double r : {0.1, 0.3, 0.5, 0.7}) {
    bool ok = false;
    auto detail = measure_levels(Measure::binomial(r), 20, ok);
    s.check("binomial_levels", ok, std::move(detail));
  }
  bool ok = false;
  auto detail = measure_levels(Measure::multinomial({0.2, 0.5, 0.3}), 13, ok);
  s.check("multinomial_levels", ok, std::move(detail));

  for (const auto& m : {Measure::binomial(0.3), Measure::multinomial({0.2, 0.5, 0.3}), Measure::cantor()}) {
    double worst = 0.0;
    bool monotone = true;
    double prev = 0.0;
    for (int i = 1; i < 1000; ++i) {
      const double u = i / 1000.0;
      const double x = quantile(m, u);
      monotone = monotone && x >= prev;
      prev = x;
      const double below = x > 0.0 ? cdf(m, std::nextafter(x, 0.0)) : 0.0;
      const double above = x < 1.0 ? cdf(m, std::nextafter(x, 1.0)) : 1.0;
      worst = std::max({worst, u - above, below - u});
    }
    s.check("quantile_brackets_level", worst <= 1e-12 && monotone,
            {{"measure", json_io::to_json(m)}, {"worst", report_real(worst)}, {"monotone", monotone}});
  }
  return s;
}

Suite transport_suite(const VerifyOptions&) {
  Suite s("transport");
  const Measure m = Measure::binomial(0.3);
  const Generator y = transport_mapping(Generator::radical_inverse(2), m);
  Json curve = Json::array();
  bool ok = true;
  double last = 1.0;
  for (unsigned k = 6; k <= 14; ++k) {
    const std::uint64_t n = std::uint64_t{1} << k;
    const double ks = ks_distance(sample(y, IndexSequence::identity(), n), m);
    const double bound = std::ldexp(1.0, -static_cast<int>(k));
    ok = ok && ks <= bound + 1e-9 && ks <= last;
    curve.push_back({{"n", n}, {"ks", report_real(ks)}, {"bound", report_real(bound)}});
    last = ks;
  }
  s.check("ks_below_oracle_curve", ok, {{"curve", curve}});
  s.check("ks_at_2_14", last <= 0.05, {{"ks", report_real(last)}, {"threshold", 0.05}});
  return s;
}

// First `digits` ternary digits of p/3^m, or nullopt when one of them is 1.
std::optional<std::uint64_t> cantor_word(const Rational& x, unsigned digits) {
  __int128 num = x.num();
  const __int128 den = x.den();
  std::uint64_t word = 0;
  for (unsigned i = 0; i < digits; ++i) {
    num *= 3;
    const auto d = static_cast<unsigned>(num / den);
    num -= static_cast<__int128>(d) * den;
    if (d == 1 && num == 0) {
      // ...1 terminating equals ...0222...
      const unsigned rest = digits - i - 1;
      return (word << (rest + 1)) | ((std::uint64_t{1} << rest) - 1);
    }
    if (d == 1 || d > 2) return std::nullopt;
    word = (word << 1) | (d / 2);
  }
  return word;
}

Suite cantor_suite(const VerifyOptions& opts) {
  Suite s("cantor");
  const Generator c = cantor_mapping(Generator::radical_inverse(2));
  const std::uint64_t n = opts.count;
  std::uint64_t outside = 0;
  std::vector<std::vector<std::uint64_t>> freq(7);
  for (unsigned k = 1; k <= 6; ++k) freq[k].assign(std::size_t{1} << k, 0);
  for (std::uint64_t i = 1; i <= n; ++i) {
    const Point p = c.point(i);
    const auto word = p.exact ? cantor_word(*p.exact, 12) : std::nullopt;
    if (!word) {
      ++outside;
      continue;
    }
    for (unsigned k = 1; k <= 6; ++k) ++freq[k][*word >> (12 - k)];
  }
  s.check("points_in_c12", outside == 0, {{"n", n}, {"outside", outside}});
  double worst = 0.0;
  for (unsigned k = 1; k <= 6; ++k) {
    for (const auto f : freq[k]) {
      worst = std::max(worst, std::fabs(static_cast<double>(f) / static_cast<double>(n) - std::ldexp(1.0, -static_cast<int>(k))));
    }
  }
  s.check("cylinder_frequencies", worst <= 0.02, {{"worst_gap", report_real(worst)}, {"tolerance", 0.02}});
  return s;
}

Suite weyl_suite(const VerifyOptions& opts) {
  Suite s("weyl");
  const Generator kr = Generator::kronecker(std::sqrt(2.0L), "sqrt2");
  const std::uint64_t n = 100000;
  Json rows = Json::array();
  bool ok = true;
  for (unsigned h = 1; h <= 8; ++h) {
    const double w = weyl_sum(kr, IndexSequence::identity(), h, n);
    const long double theta = std::numbers::pi_v<long double> * h * std::sqrt(2.0L);
    const double bound = static_cast<double>(1.0L / (static_cast<long double>(n) * std::fabs(std::sin(theta))));
    ok = ok && w <= bound;
    rows.push_back({{"h", h}, {"weyl", report_real(w)}, {"bound", report_real(bound)}});
  }
  s.check("kronecker_geometric_bound", ok, {{"n", n}, {"rows", rows}});

  const Generator x = Generator::radical_inverse(2);
  const auto points = sample(x, IndexSequence::identity(), std::uint64_t{1} << 20);
  rows = Json::array();
  ok = true;
  for (unsigned k = 1; k <= 20; ++k) {
    const std::uint64_t m = std::uint64_t{1} << k;
    const double nd = static_cast<double>(m) * star_discrepancy(std::span(points).first(m));
    ok = ok && nd <= k + 2.0;
    rows.push_back({{"n", m}, {"n_dstar", report_real(nd)}});
  }
  s.check("radical_inverse_discrepancy", ok, {{"rows", rows}});

  const auto cor = corollary1_suite(Interval::make(0.25, 0.5), 0.25, x, default_index_battery(), opts.count, 1e-2);
  s.check("density_along_index_sequences", cor.pass, json_io::to_json(cor));

  const auto avg = theorem3_average(x, IndexSequence::identity(), BoundedFunction::affine(), opts.count);
  s.check("affine_average", avg.gap && *avg.gap <= 1e-3, json_io::to_json(avg));
  return s;
}

Suite riemann_suite(const VerifyOptions&) {
  Suite s("riemann");
  const auto affine = integrability_verdict(BoundedFunction::affine(), Domain::Rationals, 1e-4, 20);
  s.check("affine_integrable",
          affine.verdict == Integrability::Integrable && affine.value && std::fabs(*affine.value - 0.5) <= 1e-4,
          json_io::to_json(affine));
  const auto step = integrability_verdict(BoundedFunction::step({Rational(1, 3)}, {0.0, 1.0}), Domain::Rationals, 1e-4, 20);
  s.check("step_integrable",
          step.verdict == Integrability::Integrable && step.value && std::fabs(*step.value - 2.0 / 3.0) <= 1e-4,
          json_io::to_json(step));
  const auto dyadic = integrability_verdict(BoundedFunction::dyadic_indicator(), Domain::Rationals, 1e-4, 12);
  s.check("dyadic_indicator_not_integrable",
          dyadic.verdict == Integrability::NotIntegrable && dyadic.gap == 1.0, json_io::to_json(dyadic));

  const BlockSchedule schedule = BlockSchedule::factorial(8);
  std::vector<std::uint64_t> ends;
  for (unsigned b = 1; b <= 8; ++b) ends.push_back(schedule.end(b));
  const Generator base = Generator::radical_inverse(2);

  const auto adv = adversarial_sequence(BoundedFunction::dyadic_indicator(), Domain::Rationals, base, schedule);
  const auto trace = cesaro_trace(BoundedFunction::dyadic_indicator(), adv.combined, ends);
  Json rows = Json::array();
  bool ok = true;
  for (unsigned b = 1; b <= 8; ++b) {
    const double share = static_cast<double>(schedule.length(b)) / static_cast<double>(schedule.end(b));
    const double avg = trace[b - 1].second;
    ok = ok && (b % 2 == 1 ? avg >= share : avg <= 1.0 - share);
    rows.push_back({{"block", b}, {"n", trace[b - 1].first}, {"average", report_real(avg)}, {"last_block_share", report_real(share)}});
  }
  s.check("adversarial_blocks_dominate", ok, {{"rows", rows}});

  const auto adv_affine = adversarial_sequence(BoundedFunction::affine(), Domain::Rationals, base, schedule, true);
  const auto trace_affine = cesaro_trace(BoundedFunction::affine(), adv_affine.combined, ends);
  rows = Json::array();
  double worst = 0.0;
  for (const auto& [n, avg] : trace_affine) {
    worst = std::max(worst, std::fabs(avg - 0.5));
    rows.push_back({{"n", n}, {"average", report_real(avg)}});
  }
  s.check("adversarial_affine_tracks_integral", worst <= 0.05, {{"rows", rows}, {"worst_gap", report_real(worst)}});
  return s;
}

using SuiteFn = Suite (*)(const VerifyOptions&);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> r = {
      {"density", density_suite},     {"decomposition", decomposition_suite},
      {"preimage", preimage_suite},   {"measure", measure_suite},
      {"transport", transport_suite}, {"cantor", cantor_suite},
      {"weyl", weyl_suite},           {"riemann", riemann_suite},
  };
  return r;
}

}  // namespace

const std::vector<std::string>& verify_suites() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, fn] : registry()) out.push_back(name);
    out.emplace_back("all");
    return out;
  }();
  return names;
}

VerifyResult run_verify(const std::string& suite, const VerifyOptions& opts) {
  require(opts.depth >= 1 && opts.depth <= 24, ErrorCode::InvalidArgument, "depth must lie in [1, 24]");
  require(opts.count >= 1, ErrorCode::InvalidArgument, "count must be positive");
  Json suites = Json::array();
  bool pass = true;
  bool found = false;
  for (const auto& [name, fn] : registry()) {
    if (suite != "all" && suite != name) continue;
    found = true;
    const Suite s = fn(opts);
    pass = pass && s.pass();
    suites.push_back(s.json());
  }
  if (!found) fail(ErrorCode::InvalidArgument, "unknown suite '" + suite + "'");
  Json options{{"depth", opts.depth}, {"horizon", opts.horizon}, {"count", opts.count}};
  return {pass, {{"suite", suite}, {"options", options}, {"pass", pass}, {"suites", suites}}};
}

}  // namespace equidist
