#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "equidist/integer_set.hpp"
#include "equidist/rational.hpp"

namespace equidist {

inline constexpr double kDefaultDensityTolerance = 1e-3;

/// Finite-horizon view of a density: the smallest and largest counting
/// ratio seen on the checkpoints, plus the exact value when it is computable.
struct DensityEstimate {
  double lower = 0.0;
  double upper = 0.0;
  std::uint64_t horizon = 0;
  bool converged = false;
  std::optional<Rational> exact;
  /// Window length, only set by the uniform-density estimator.
  std::uint64_t window = 0;
};

/// Positive weights c_k, k >= 0, for weighted densities.
class WeightSequence {
 public:
  enum class Kind { Constant, Logarithmic, Power, Custom };

  static WeightSequence constant();
  /// c_k = 1/(k+1).
  static WeightSequence logarithmic();
  /// c_k = (k+1)^(-exponent); divergent for exponent <= 1.
  static WeightSequence power(double exponent);
  static WeightSequence custom(std::function<double(std::uint64_t)> rule, std::string name = "custom");

  Kind kind() const noexcept { return kind_; }
  const std::string& name() const noexcept { return name_; }
  double exponent() const noexcept { return exponent_; }

  /// Throws ErrorCode::InvalidWeight for a non-positive or non-finite value.
  double operator()(std::uint64_t k) const;

 private:
  Kind kind_ = Kind::Constant;
  double exponent_ = 0.0;
  std::string name_ = "constant";
  std::function<double(std::uint64_t)> rule_;
};

/// Geometric checkpoints in the tail half [horizon/2, horizon], both ends
/// included, increasing, deduplicated.
std::vector<std::uint64_t> tail_checkpoints(std::uint64_t horizon);

DensityEstimate estimate_asymptotic_density(const IntegerSet& set, std::uint64_t horizon,
                                            double tolerance = kDefaultDensityTolerance);

DensityEstimate estimate_weighted_density(const IntegerSet& set, const WeightSequence& weights,
                                          std::uint64_t horizon,
                                          double tolerance = kDefaultDensityTolerance);

/// Extremes of the counting ratio over every window [s, s+h), h = floor(sqrt(horizon)).
DensityEstimate estimate_uniform_density(const IntegerSet& set, std::uint64_t horizon,
                                         double tolerance = kDefaultDensityTolerance);

/// Buck's measure density of a boolean combination of AP and Finite nodes:
/// the share of residues mod lcm covered by the periodic part.
/// Throws ErrorCode::NotRepresentable for BlockUnion or Bitmask nodes.
Rational buck_density_exact(const IntegerSet& set);

enum class Verdict { Measurable, NotMeasurable, UnknownAtHorizon };
const char* to_string(Verdict v) noexcept;

struct BuckMeasurability {
  Verdict verdict = Verdict::UnknownAtHorizon;
  std::optional<Rational> value;
  /// Empirical bounds; only filled when the verdict is withheld.
  std::optional<DensityEstimate> bounds;
};

BuckMeasurability is_buck_measurable(const IntegerSet& set, std::uint64_t horizon = 1U << 20);

struct QAlgebraReport {
  double density_a = 0.0;
  double density_b = 0.0;
  double density_union = 0.0;
  double gap = 0.0;
  bool additive = false;
  std::uint64_t horizon = 0;
  std::optional<Rational> exact_union;
};

/// Throws ErrorCode::Precondition naming a common element if A and B meet
/// below the horizon.
QAlgebraReport q_algebra_witness(const IntegerSet& a, const IntegerSet& b, std::uint64_t horizon,
                                 double tolerance = kDefaultDensityTolerance);

/// Symbolic inclusion of AP nodes: true iff inner is a sub-progression of outer.
bool ap_contains(const IntegerSet& outer, const IntegerSet& inner);

}  // namespace equidist
