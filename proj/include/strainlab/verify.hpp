#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace strainlab {

struct PropertyResult {
  std::string suite;
  std::string name;
  bool passed;
  std::string detail;
  double seconds;
};

struct VerifyOptions {
  std::string suite = "all";  // all | metric | geodesy | strain | oracle
  std::uint64_t seed = 20240917;
  bool quick = false;
};

bool is_known_suite(std::string_view name) noexcept;

/// Runs the property suites. Throws InvalidArgument for an unknown suite name.
std::vector<PropertyResult> run_verification(const VerifyOptions& options);

std::string verification_table(const std::vector<PropertyResult>& results);
std::string verification_json(const VerifyOptions& options,
                               const std::vector<PropertyResult>& results);

}  // namespace strainlab
