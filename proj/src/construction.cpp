#include "equidist/construction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "equidist/density.hpp"
#include "equidist/error.hpp"
#include "equidist/numeric.hpp"

namespace equidist {
namespace {

constexpr std::uint64_t kUnset = std::numeric_limits<std::uint64_t>::max();
constexpr std::uint64_t kMaxCustomCells = std::uint64_t{1} << 22;

class DecompositionSource final : public PointSource {
 public:
  explicit DecompositionSource(NestedDecomposition d) : d_(std::move(d)) {}

  Point point(std::uint64_t k) const override {
    const std::uint64_t cells = d_.cells(d_.depth());
    const std::uint64_t j = d_.cell_of(d_.depth(), k);
    Point p;
    p.exact = Rational(static_cast<std::int64_t>(j), static_cast<std::int64_t>(cells));
    p.value = p.exact->to_double();
    return p;
  }

  std::string describe() const override {
    return "decomposition(q=" + std::to_string(d_.base()) + ", depth=" + std::to_string(d_.depth()) + ")";
  }

 private:
  NestedDecomposition d_;
};

std::vector<IntegerSet> ap_parts(const IntegerSet& set) {
  if (set.kind() == IntegerSet::Kind::AP) return {set};
  if (set.kind() == IntegerSet::Kind::Union) {
    std::vector<IntegerSet> parts;
    for (const auto& c : set.children()) {
      if (c.kind() != IntegerSet::Kind::AP) {
        fail(ErrorCode::Unsupported, "darboux_split needs a union of APs, found " + c.describe());
      }
      parts.push_back(c);
    }
    return parts;
  }
  fail(ErrorCode::Unsupported, "darboux_split needs an AP or a union of APs, got " + set.describe());
}

bool aps_meet(const IntegerSet& a, const IntegerSet& b) {
  const std::uint64_t g = gcd_u64(a.modulus(), b.modulus());
  return a.residue() % g == b.residue() % g;
}

}  // namespace

std::uint64_t digit_reverse(std::uint64_t j, unsigned base, unsigned digits) {
  std::uint64_t out = 0;
  for (unsigned i = 0; i < digits; ++i) {
    out = out * base + j % base;
    j /= base;
  }
  return out;
}

NestedDecomposition::NestedDecomposition(unsigned base, unsigned depth, Labeling labeling)
    : base_(base), depth_(depth), labeling_(std::move(labeling)) {
  require(base >= 2, ErrorCode::InvalidArgument, "decomposition base must be at least 2");
  require(depth >= 1, ErrorCode::InvalidArgument, "decomposition depth must be at least 1");
  require(checked_pow(base, depth) != 0, ErrorCode::Overflow, "decomposition too deep");
  if (!labeling_) return;
  require(ipow(base, depth) <= kMaxCustomCells, ErrorCode::InvalidArgument,
          "custom labelings are limited to 2^22 cells per level");
  auto tables = std::make_shared<std::vector<std::vector<std::uint64_t>>>(depth + 1);
  for (unsigned n = 0; n <= depth; ++n) {
    const std::uint64_t count = ipow(base, n);
    auto& inv = (*tables)[n];
    inv.assign(count, kUnset);
    for (std::uint64_t j = 0; j < count; ++j) {
      const std::uint64_t r = n == 0 ? 0 : labeling_(n, j) % count;
      if (inv[r] == kUnset) inv[r] = j;
    }
  }
  inverse_ = std::move(tables);
}

std::uint64_t NestedDecomposition::cells(unsigned level) const {
  require(level <= depth_, ErrorCode::InvalidArgument, "level beyond decomposition depth");
  return ipow(base_, level);
}

std::uint64_t NestedDecomposition::label(unsigned level, std::uint64_t index) const {
  const std::uint64_t count = cells(level);
  require(index < count, ErrorCode::InvalidArgument, "cell index out of range");
  if (level == 0) return 0;
  if (!labeling_) return digit_reverse(index, base_, level);
  return labeling_(level, index) % count;
}

IntegerSet NestedDecomposition::cell(unsigned level, std::uint64_t index) const {
  return IntegerSet::ap(cells(level), label(level, index));
}

std::uint64_t NestedDecomposition::cell_of(unsigned level, std::uint64_t k) const {
  const std::uint64_t count = cells(level);
  const std::uint64_t r = k % count;
  if (!labeling_) return digit_reverse(r, base_, level);
  const std::uint64_t j = (*inverse_)[level][r];
  if (j == kUnset) {
    fail(ErrorCode::Construction, "labeling leaves residue " + std::to_string(r) + " mod " +
                                      std::to_string(count) + " uncovered");
  }
  return j;
}

NestedDecomposition residue_decomposition(unsigned base, unsigned depth) {
  return NestedDecomposition(base, depth);
}

bool DecompositionReport::pass() const {
  return std::all_of(levels.begin(), levels.end(),
                     [](const LevelCheck& c) { return c.partition && c.refinement && c.measure; });
}

DecompositionReport verify_decomposition(const NestedDecomposition& d, std::uint64_t horizon) {
  require(horizon >= d.cells(d.depth()), ErrorCode::Precondition,
          "verification horizon must be at least q^depth");
  DecompositionReport report;
  report.horizon = horizon;

  std::vector<std::uint64_t> coarse(horizon, 0);  // owners at level 0
  std::vector<std::uint64_t> owner(horizon);
  for (unsigned n = 1; n <= d.depth(); ++n) {
    LevelCheck check;
    check.level = n;
    const std::uint64_t count = d.cells(n);

    std::fill(owner.begin(), owner.end(), kUnset);
    check.partition = true;
    for (std::uint64_t j = 0; j < count && check.partition; ++j) {
      for (std::uint64_t k = d.label(n, j); k < horizon; k += count) {
        if (owner[k] != kUnset) {
          check.partition = false;
          check.detail = std::to_string(k) + " lies in cells " + std::to_string(owner[k]) + " and " +
                         std::to_string(j);
          break;
        }
        owner[k] = j;
      }
    }
    if (check.partition) {
      const auto hole = std::find(owner.begin(), owner.end(), kUnset);
      if (hole != owner.end()) {
        check.partition = false;
        check.detail = std::to_string(hole - owner.begin()) + " is not covered";
      }
    }

    check.refinement = check.partition;
    if (check.partition) {
      for (std::uint64_t k = 0; k < horizon; ++k) {
        if (owner[k] / d.base() != coarse[k]) {
          check.refinement = false;
          check.detail = std::to_string(k) + " is in U(" + std::to_string(owner[k]) + ") but not in its parent U(" +
                         std::to_string(owner[k] / d.base()) + ")";
          break;
        }
      }
    }

    check.measure = true;
    const Rational expected(1, static_cast<std::int64_t>(count));
    const std::uint64_t floor_count = horizon / count;
    const std::uint64_t ceil_count = (horizon + count - 1) / count;
    for (std::uint64_t j = 0; j < count; ++j) {
      const IntegerSet cell = d.cell(n, j);
      const std::uint64_t hits = cell.count_below(horizon);
      if (buck_density_exact(cell) != expected || hits < floor_count || hits > ceil_count) {
        check.measure = false;
        if (check.detail.empty()) check.detail = "cell " + std::to_string(j) + " has the wrong density";
        break;
      }
    }

    report.levels.push_back(check);
    if (check.partition) coarse.swap(owner);
    else break;
  }
  return report;
}

Generator theorem1_mapping(const NestedDecomposition& d) {
  if (d.canonical()) return Generator::radical_inverse(d.base());
  return Generator::custom(std::make_shared<DecompositionSource>(d));
}

IntegerSet preimage_of_cell(const Generator& g, const QadicCell& cell) {
  if (g.kind() != Generator::Kind::RadicalInverse) {
    fail(ErrorCode::Unsupported, "exact preimages are only available for radical-inverse generators");
  }
  if (g.base() != cell.base) {
    fail(ErrorCode::IncompatibleCell, "cell base " + std::to_string(cell.base) +
                                          " differs from generator base " + std::to_string(g.base()));
  }
  return IntegerSet::ap(cell.count(), digit_reverse(cell.index, cell.base, cell.level));
}

Generator transport_mapping(Generator inner, const Measure& m) {
  return Generator::transport(std::move(inner), m);
}

Generator cantor_mapping(Generator inner) { return Generator::cantor_code(std::move(inner)); }

IntegerSet darboux_split(const IntegerSet& set, std::uint64_t numerator, std::uint64_t denominator) {
  require(denominator >= 1, ErrorCode::InvalidArgument, "split denominator must be positive");
  require(numerator <= denominator, ErrorCode::InvalidArgument, "split fraction must not exceed 1");
  const auto parts = ap_parts(set);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    for (std::size_t j = i + 1; j < parts.size(); ++j) {
      if (aps_meet(parts[i], parts[j])) {
        fail(ErrorCode::Unsupported, "darboux_split needs disjoint parts; " + parts[i].describe() +
                                         " meets " + parts[j].describe());
      }
    }
  }
  if (numerator == 0) return IntegerSet::finite({});
  const std::uint64_t g = gcd_u64(numerator, denominator);
  numerator /= g;
  denominator /= g;

  std::vector<IntegerSet> pieces;
  for (const auto& part : parts) {
    const std::uint64_t a = part.modulus();
    if (a > (std::uint64_t{1} << 62) / denominator) fail(ErrorCode::Overflow, "split modulus overflows");
    for (std::uint64_t i = 0; i < numerator; ++i) {
      pieces.push_back(IntegerSet::ap(a * denominator, part.residue() + i * a));
    }
  }
  if (pieces.size() == 1) return pieces.front();
  return IntegerSet::unite(std::move(pieces));
}

IntegerSet darboux_split(const IntegerSet& set, double fraction) {
  require(fraction >= 0.0 && fraction <= 1.0, ErrorCode::InvalidArgument, "split fraction must lie in [0,1]");
  for (unsigned m = 0; m <= 40; ++m) {
    const double scaled = std::ldexp(fraction, static_cast<int>(m));
    if (scaled == std::floor(scaled)) {
      return darboux_split(set, static_cast<std::uint64_t>(scaled), std::uint64_t{1} << m);
    }
  }
  fail(ErrorCode::Unsupported,
       "ratio is not a short dyadic fraction; irrational proportions are only reached through transport");
}

}  // namespace equidist
