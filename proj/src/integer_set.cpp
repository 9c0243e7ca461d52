#include "equidist/integer_set.hpp"

#include <algorithm>
#include <bit>
#include <limits>

#include "equidist/error.hpp"

namespace equidist {

struct IntegerSet::Node {
  Kind kind = Kind::AP;
  std::uint64_t a = 1;  // modulus, or bitmask horizon
  std::uint64_t b = 0;  // residue
  std::vector<std::uint64_t> data;  // finite elements or bitmask words
  BlockRule rule = BlockRule::Pow2Even;
  std::vector<IntegerSet> children;
};

namespace {

// Members of the block rule inside [0, n).
std::uint64_t block_count_below(BlockRule rule, std::uint64_t n) {
  std::uint64_t count = 0;
  // Level e covers [2^e, 2^(e+1)); Pow2Even keeps even e, Pow2Odd odd e.
  const unsigned first = rule == BlockRule::Pow2Even ? 0 : 1;
  for (unsigned e = first; e < 64; e += 2) {
    const std::uint64_t lo = std::uint64_t{1} << e;
    if (lo >= n) break;
    const std::uint64_t hi = e == 63 ? std::numeric_limits<std::uint64_t>::max() : (lo << 1);
    count += std::min(hi, n) - lo;
  }
  return count;
}

bool block_contains(BlockRule rule, std::uint64_t k) {
  if (k == 0) return false;
  const unsigned e = static_cast<unsigned>(std::bit_width(k) - 1);
  return (e % 2 == 0) == (rule == BlockRule::Pow2Even);
}

}  // namespace

const char* to_string(BlockRule rule) noexcept {
  return rule == BlockRule::Pow2Even ? "pow2-even" : "pow2-odd";
}

BlockRule block_rule_from_string(const std::string& name) {
  if (name == "pow2-even") return BlockRule::Pow2Even;
  if (name == "pow2-odd") return BlockRule::Pow2Odd;
  fail(ErrorCode::Parse, "unknown block rule '" + name + "'");
}

IntegerSet IntegerSet::ap(std::uint64_t modulus, std::uint64_t residue) {
  require(modulus >= 1, ErrorCode::InvalidArgument, "AP modulus must be at least 1");
  auto n = std::make_shared<Node>();
  n->kind = Kind::AP;
  n->a = modulus;
  n->b = residue % modulus;
  return IntegerSet(std::move(n));
}

IntegerSet IntegerSet::finite(std::vector<std::uint64_t> elements) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  auto n = std::make_shared<Node>();
  n->kind = Kind::Finite;
  n->data = std::move(elements);
  return IntegerSet(std::move(n));
}

IntegerSet IntegerSet::blocks(BlockRule rule) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Blocks;
  n->rule = rule;
  return IntegerSet(std::move(n));
}

IntegerSet IntegerSet::unite(std::vector<IntegerSet> parts) {
  require(!parts.empty(), ErrorCode::InvalidArgument, "union needs at least one part");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Union;
  n->children = std::move(parts);
  return IntegerSet(std::move(n));
}

IntegerSet IntegerSet::intersect(std::vector<IntegerSet> parts) {
  require(!parts.empty(), ErrorCode::InvalidArgument, "intersection needs at least one part");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Intersection;
  n->children = std::move(parts);
  return IntegerSet(std::move(n));
}

IntegerSet IntegerSet::difference(IntegerSet a, IntegerSet b) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Difference;
  n->children = {std::move(a), std::move(b)};
  return IntegerSet(std::move(n));
}

IntegerSet IntegerSet::complement(IntegerSet a) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Complement;
  n->children = {std::move(a)};
  return IntegerSet(std::move(n));
}

IntegerSet IntegerSet::bitmask(std::uint64_t horizon, std::vector<std::uint64_t> words) {
  require(horizon >= 1, ErrorCode::InvalidArgument, "bitmask horizon must be positive");
  words.resize((horizon + 63) / 64, 0);
  if (horizon % 64 != 0) words.back() &= (std::uint64_t{1} << (horizon % 64)) - 1;
  auto n = std::make_shared<Node>();
  n->kind = Kind::Bitmask;
  n->a = horizon;
  n->data = std::move(words);
  return IntegerSet(std::move(n));
}

IntegerSet::Kind IntegerSet::kind() const noexcept { return node_->kind; }

std::uint64_t IntegerSet::modulus() const {
  require(node_->kind == Kind::AP, ErrorCode::InvalidArgument, "not an AP node");
  return node_->a;
}

std::uint64_t IntegerSet::residue() const {
  require(node_->kind == Kind::AP, ErrorCode::InvalidArgument, "not an AP node");
  return node_->b;
}

std::span<const std::uint64_t> IntegerSet::elements() const {
  require(node_->kind == Kind::Finite, ErrorCode::InvalidArgument, "not a finite node");
  return node_->data;
}

BlockRule IntegerSet::rule() const {
  require(node_->kind == Kind::Blocks, ErrorCode::InvalidArgument, "not a block-union node");
  return node_->rule;
}

std::span<const IntegerSet> IntegerSet::children() const { return node_->children; }

std::uint64_t IntegerSet::bitmask_horizon() const {
  require(node_->kind == Kind::Bitmask, ErrorCode::InvalidArgument, "not a bitmask node");
  return node_->a;
}

std::span<const std::uint64_t> IntegerSet::bitmask_words() const {
  require(node_->kind == Kind::Bitmask, ErrorCode::InvalidArgument, "not a bitmask node");
  return node_->data;
}

bool IntegerSet::contains(std::uint64_t k) const {
  const Node& n = *node_;
  switch (n.kind) {
    case Kind::AP: return k % n.a == n.b;
    case Kind::Finite: return std::binary_search(n.data.begin(), n.data.end(), k);
    case Kind::Blocks: return block_contains(n.rule, k);
    case Kind::Union:
      return std::any_of(n.children.begin(), n.children.end(),
                         [k](const IntegerSet& c) { return c.contains(k); });
    case Kind::Intersection:
      return std::all_of(n.children.begin(), n.children.end(),
                         [k](const IntegerSet& c) { return c.contains(k); });
    case Kind::Difference: return n.children[0].contains(k) && !n.children[1].contains(k);
    case Kind::Complement: return !n.children[0].contains(k);
    case Kind::Bitmask:
      if (k >= n.a) {
        fail(ErrorCode::Precondition,
             "membership query " + std::to_string(k) + " beyond bitmask horizon " + std::to_string(n.a));
      }
      return (n.data[k / 64] >> (k % 64)) & 1U;
  }
  return false;
}

std::uint64_t IntegerSet::count_below(std::uint64_t n) const {
  const Node& node = *node_;
  switch (node.kind) {
    case Kind::AP: return n > node.b ? (n - node.b - 1) / node.a + 1 : 0;
    case Kind::Finite:
      return static_cast<std::uint64_t>(std::lower_bound(node.data.begin(), node.data.end(), n) -
                                        node.data.begin());
    case Kind::Blocks: return block_count_below(node.rule, n);
    case Kind::Complement: return n - node.children[0].count_below(n);
    default: break;
  }
  const auto bits = materialize(n);
  return static_cast<std::uint64_t>(std::count(bits.begin(), bits.end(), std::uint8_t{1}));
}

std::vector<std::uint8_t> IntegerSet::materialize(std::uint64_t n) const {
  const Node& node = *node_;
  std::vector<std::uint8_t> out;
  switch (node.kind) {
    case Kind::AP:
      out.assign(n, 0);
      for (std::uint64_t k = node.b; k < n; k += node.a) out[k] = 1;
      return out;
    case Kind::Finite:
      out.assign(n, 0);
      for (const auto e : node.data) {
        if (e >= n) break;
        out[e] = 1;
      }
      return out;
    case Kind::Blocks:
      out.assign(n, 0);
      for (std::uint64_t k = 1; k < n; ++k) out[k] = block_contains(node.rule, k) ? 1 : 0;
      return out;
    case Kind::Bitmask:
      if (n > node.a) {
        fail(ErrorCode::Precondition,
             "horizon " + std::to_string(n) + " exceeds bitmask horizon " + std::to_string(node.a));
      }
      out.assign(n, 0);
      for (std::uint64_t k = 0; k < n; ++k) out[k] = (node.data[k / 64] >> (k % 64)) & 1U;
      return out;
    case Kind::Union:
      out = node.children[0].materialize(n);
      for (std::size_t i = 1; i < node.children.size(); ++i) {
        const auto other = node.children[i].materialize(n);
        for (std::uint64_t k = 0; k < n; ++k) out[k] |= other[k];
      }
      return out;
    case Kind::Intersection:
      out = node.children[0].materialize(n);
      for (std::size_t i = 1; i < node.children.size(); ++i) {
        const auto other = node.children[i].materialize(n);
        for (std::uint64_t k = 0; k < n; ++k) out[k] &= other[k];
      }
      return out;
    case Kind::Difference: {
      out = node.children[0].materialize(n);
      const auto other = node.children[1].materialize(n);
      for (std::uint64_t k = 0; k < n; ++k) out[k] &= static_cast<std::uint8_t>(1U - other[k]);
      return out;
    }
    case Kind::Complement:
      out = node.children[0].materialize(n);
      for (auto& v : out) v = static_cast<std::uint8_t>(1U - v);
      return out;
  }
  return out;
}

bool IntegerSet::is_periodic_combination() const {
  switch (node_->kind) {
    case Kind::AP:
    case Kind::Finite: return true;
    case Kind::Blocks:
    case Kind::Bitmask: return false;
    default:
      return std::all_of(node_->children.begin(), node_->children.end(),
                         [](const IntegerSet& c) { return c.is_periodic_combination(); });
  }
}

std::uint64_t IntegerSet::horizon_limit() const {
  if (node_->kind == Kind::Bitmask) return node_->a;
  std::uint64_t limit = std::numeric_limits<std::uint64_t>::max();
  for (const auto& c : node_->children) limit = std::min(limit, c.horizon_limit());
  return limit;
}

std::vector<std::uint64_t> IntegerSet::moduli() const {
  std::vector<std::uint64_t> out;
  if (node_->kind == Kind::AP) out.push_back(node_->a);
  for (const auto& c : node_->children) {
    const auto sub = c.moduli();
    out.insert(out.end(), sub.begin(), sub.end());
  }
  return out;
}

std::string IntegerSet::describe() const {
  const Node& n = *node_;
  auto join = [&](const char* op) {
    std::string s = std::string(op) + "(";
    for (std::size_t i = 0; i < n.children.size(); ++i) {
      if (i) s += ", ";
      s += n.children[i].describe();
    }
    return s + ")";
  };
  switch (n.kind) {
    case Kind::AP: return "AP(" + std::to_string(n.a) + "," + std::to_string(n.b) + ")";
    case Kind::Finite: return "Finite[" + std::to_string(n.data.size()) + "]";
    case Kind::Blocks: return std::string("Blocks(") + to_string(n.rule) + ")";
    case Kind::Union: return join("Union");
    case Kind::Intersection: return join("Intersection");
    case Kind::Difference: return join("Difference");
    case Kind::Complement: return join("Complement");
    case Kind::Bitmask: return "Bitmask(" + std::to_string(n.a) + ")";
  }
  return "?";
}

}  // namespace equidist
