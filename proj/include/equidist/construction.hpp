#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "equidist/generator.hpp"
#include "equidist/integer_set.hpp"
#include "equidist/measure.hpp"

namespace equidist {

/// sigma_n(j): the residue labelling cell j at level n.
using Labeling = std::function<std::uint64_t(unsigned level, std::uint64_t index)>;

/// Reverses the n base-q digits of j (leading zeros included).
std::uint64_t digit_reverse(std::uint64_t j, unsigned base, unsigned digits);

/// Cells U(j, q^n) = {k : k = sigma_n(j) mod q^n} for 0 <= n <= depth.
class NestedDecomposition {
 public:
  /// An empty labeling selects digit reversal.
  NestedDecomposition(unsigned base, unsigned depth, Labeling labeling = {});

  unsigned base() const noexcept { return base_; }
  unsigned depth() const noexcept { return depth_; }
  bool canonical() const noexcept { return !labeling_; }

  std::uint64_t cells(unsigned level) const;  ///< q^level
  std::uint64_t label(unsigned level, std::uint64_t index) const;
  IntegerSet cell(unsigned level, std::uint64_t index) const;

  /// Index j of the level-n cell holding k. Throws ErrorCode::Construction
  /// if the labeling leaves the residue of k uncovered.
  std::uint64_t cell_of(unsigned level, std::uint64_t k) const;

 private:
  unsigned base_;
  unsigned depth_;
  Labeling labeling_;
  // Inverse labeling tables, only for custom labelings.
  std::shared_ptr<const std::vector<std::vector<std::uint64_t>>> inverse_;
};

NestedDecomposition residue_decomposition(unsigned base, unsigned depth);

struct LevelCheck {
  unsigned level = 0;
  bool partition = false;
  bool refinement = false;
  bool measure = false;
  std::string detail;
};

struct DecompositionReport {
  std::uint64_t horizon = 0;
  std::vector<LevelCheck> levels;
  bool pass() const;
};

/// Exhaustive partition / refinement / measure checks on [0, horizon) for
/// every level 1..depth. Refinement at level n compares with level n-1.
DecompositionReport verify_decomposition(const NestedDecomposition& d, std::uint64_t horizon);

/// x(k) = the point shared by the intervals I(j, q^n) of the cells holding
/// k. Digit reversal yields the radical inverse; other labelings resolve x
/// to the left end of the deepest cell.
Generator theorem1_mapping(const NestedDecomposition& d);

/// Exact residue class {k : x(k) in cell} for a radical-inverse generator.
IntegerSet preimage_of_cell(const Generator& g, const QadicCell& cell);

/// y(k) = quantile(m, inner(k)).
Generator transport_mapping(Generator inner, const Measure& m);

/// Re-reads the binary digits of inner(k) as ternary digits in {0, 2}.
Generator cantor_mapping(Generator inner);

/// Subset of a finite disjoint union of APs whose density is exactly
/// numerator/denominator of the original. Throws ErrorCode::Unsupported for
/// other set shapes.
IntegerSet darboux_split(const IntegerSet& set, std::uint64_t numerator, std::uint64_t denominator);

/// Same for a ratio given as a double; only short dyadic ratios are
/// representable, anything else raises ErrorCode::Unsupported.
IntegerSet darboux_split(const IntegerSet& set, double fraction);

}  // namespace equidist
