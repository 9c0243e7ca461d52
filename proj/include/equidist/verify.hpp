#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "equidist/json_io.hpp"

namespace equidist {

struct VerifyOptions {
  unsigned depth = 12;
  std::uint64_t horizon = std::uint64_t{1} << 20;
  std::uint64_t count = std::uint64_t{1} << 14;
};

struct VerifyResult {
  bool pass = false;
  json_io::Json report;
};

/// density, decomposition, preimage, measure, transport, cantor, weyl,
/// riemann, or all.
const std::vector<std::string>& verify_suites();

/// Throws ErrorCode::InvalidArgument for an unknown suite name.
VerifyResult run_verify(const std::string& suite, const VerifyOptions& opts = {});

}  // namespace equidist
