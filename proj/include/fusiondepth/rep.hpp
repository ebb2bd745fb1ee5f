#pragma once

#include "fusiondepth/lie.hpp"
#include "fusiondepth/numeric.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <unordered_map>
#include <utility>
#include <vector>

namespace fusiondepth::rep {

using lie::RootSystem;
using lie::Weight;

/// Finite map weight -> multiplicity. For characters of modules only the
/// dominant part is stored; virtual characters may carry negative entries.
using Character = std::map<Weight, std::int64_t>;

/// Highest weights of simple summands with their multiplicities.
using Decomposition = std::map<Weight, std::int64_t>;

/// Every weight of a module with its multiplicity (the Weyl-orbit expansion).
using WeightSystem = std::vector<std::pair<Weight, std::int64_t>>;

inline constexpr std::size_t kDefaultCharacterCap = 1'000'000;

/// dim V(lambda) by the Weyl dimension formula, exact.
BigInt weyl_dimension(const RootSystem& rs, const Weight& lambda);

/// Dominant part of the character of V(lambda) via Freudenthal's recursion.
/// Throws ResourceCapExceeded once more than `cap` dominant weights appear.
Character dominant_character(const RootSystem& rs, const Weight& lambda, std::size_t cap = kDefaultCharacterCap);

/// Expands a dominant character over Weyl orbits. `cap` bounds the number of
/// distinct weights.
WeightSystem expand_orbits(const RootSystem& rs, const Character& dominant, std::size_t cap = kDefaultCharacterCap);

/// On-disk store of fundamental characters, keyed by (type, fundamental index).
///
/// Text format, one record per fundamental, all integers in decimal:
///
///     fusiondepth-characters 1
///     character <type> <index> <count>
///     <labels> <multiplicity>        (count lines, labels comma separated)
///     end
///
/// Index is 1-based (omega_1 ... omega_n). Records may appear in any order.
class CharacterCache {
 public:
  CharacterCache() = default;
  explicit CharacterCache(std::filesystem::path path);

  /// Reads the file if it exists. Throws CacheFormatError on malformed data.
  void load();
  /// Writes all records (atomically via a temporary file).
  void save() const;

  std::shared_ptr<const Character> find(const std::string& type, std::size_t index) const;
  void insert(const std::string& type, std::size_t index, Character character);
  bool dirty() const;
  std::size_t size() const;
  const std::filesystem::path& path() const noexcept { return path_; }

  void read_from(std::istream& in);
  void write_to(std::ostream& out) const;

 private:
  std::filesystem::path path_;
  mutable std::shared_mutex mutex_;
  std::map<std::pair<std::string, std::size_t>, std::shared_ptr<const Character>> records_;
  bool dirty_ = false;
};

/// Memoizing access to characters of one root system. Entries are immutable
/// once inserted and may be read concurrently.
class CharacterStore {
 public:
  explicit CharacterStore(const RootSystem& rs, std::size_t cap = kDefaultCharacterCap,
                          std::shared_ptr<CharacterCache> cache = nullptr);

  const RootSystem& root_system() const noexcept { return rs_; }
  std::size_t cap() const noexcept { return cap_; }

  const Character& dominant(const Weight& lambda);
  const WeightSystem& weights(const Weight& lambda);
  const BigInt& dimension(const Weight& lambda);

 private:
  const RootSystem& rs_;
  std::size_t cap_;
  std::shared_ptr<CharacterCache> cache_;
  std::shared_mutex mutex_;
  std::unordered_map<Weight, std::unique_ptr<Character>, lie::WeightHash> dominant_;
  std::unordered_map<Weight, std::unique_ptr<WeightSystem>, lie::WeightHash> weights_;
  std::unordered_map<Weight, std::unique_ptr<BigInt>, lie::WeightHash> dimensions_;
};

/// V(lambda) (x) V(mu) by Racah-Speiser folding over the weights of the
/// smaller factor.
Decomposition tensor_decompose(CharacterStore& store, const Weight& lambda, const Weight& mu);

/// Independent check of tensor_decompose: multiply full characters, then
/// peel off irreducible characters from the top.
Decomposition tensor_oracle(CharacterStore& store, const Weight& lambda, const Weight& mu);

/// sum_nu m_nu dim V(nu).
BigInt decomposition_dimension(CharacterStore& store, const Decomposition& d);

}  // namespace fusiondepth::rep
