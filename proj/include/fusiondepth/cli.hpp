#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

namespace fusiondepth::cli {

/// Environment variable that overrides the character cache path.
inline constexpr const char* kCacheEnv = "FUSIONDEPTH_CACHE";

struct Config {
  std::size_t character_cap = 1'000'000;
  std::size_t weyl_cap = 1'000'000;
  /// Empty means no on-disk cache.
  std::filesystem::path cache_path;
  /// "rounding": Verlinde rounding residual. "pf": beta against the quantum
  /// dimension of W.
  std::map<std::string, double> tolerances{{"rounding", 1e-6}, {"pf", 1e-5}};

  /// Throws InvalidConfig unless caps are positive and every tolerance lies in (0, 1e-3).
  void validate() const;
  double tolerance(const std::string& name) const;

  /// Overlays the keys present in `j` onto `base`. Unknown keys are rejected.
  static Config from_json(const nlohmann::json& j, Config base);
  static Config from_json(const nlohmann::json& j);
  static Config from_file(const std::filesystem::path& path, Config base);
};

/// Runs one command line (without the program name). Returns 0 on success,
/// 1 on a computation error or failed verification, 2 on a usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fusiondepth::cli
