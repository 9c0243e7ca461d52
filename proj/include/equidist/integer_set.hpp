#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace equidist {

/// Closed-form rules for BlockUnion sets.
enum class BlockRule {
  Pow2Even,  ///< union over k of [4^k, 2*4^k)
  Pow2Odd,   ///< union over k of [2*4^k, 4^(k+1))
};

const char* to_string(BlockRule rule) noexcept;
BlockRule block_rule_from_string(const std::string& name);

/// Symbolic subset of the non-negative integers. Immutable; copies share the
/// underlying expression tree.
class IntegerSet {
 public:
  enum class Kind { AP, Finite, Blocks, Union, Intersection, Difference, Complement, Bitmask };

  /// {k : k = residue (mod modulus)}; the residue is reduced.
  static IntegerSet ap(std::uint64_t modulus, std::uint64_t residue);
  static IntegerSet finite(std::vector<std::uint64_t> elements);
  static IntegerSet blocks(BlockRule rule);
  static IntegerSet unite(std::vector<IntegerSet> parts);
  static IntegerSet intersect(std::vector<IntegerSet> parts);
  static IntegerSet difference(IntegerSet a, IntegerSet b);
  static IntegerSet complement(IntegerSet a);
  /// Bits over [0, horizon); bit k of the packed words is membership of k.
  static IntegerSet bitmask(std::uint64_t horizon, std::vector<std::uint64_t> words);

  Kind kind() const noexcept;

  std::uint64_t modulus() const;
  std::uint64_t residue() const;
  std::span<const std::uint64_t> elements() const;
  BlockRule rule() const;
  std::span<const IntegerSet> children() const;
  std::uint64_t bitmask_horizon() const;
  std::span<const std::uint64_t> bitmask_words() const;

  bool contains(std::uint64_t k) const;

  /// Number of members in [0, n).
  std::uint64_t count_below(std::uint64_t n) const;

  /// Indicator of the set over [0, n), one byte per integer.
  std::vector<std::uint8_t> materialize(std::uint64_t n) const;

  /// True when the tree holds only AP and Finite leaves (exact densities are
  /// available).
  bool is_periodic_combination() const;

  /// Smallest horizon any Bitmask node in the tree supports (UINT64_MAX if
  /// there is none).
  std::uint64_t horizon_limit() const;

  /// Every AP modulus that appears in the tree.
  std::vector<std::uint64_t> moduli() const;

  std::string describe() const;

 private:
  struct Node;
  explicit IntegerSet(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

}  // namespace equidist
