#include "fusiondepth/rep.hpp"

#include "fusiondepth/errors.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <sstream>
#include <unordered_set>

namespace fusiondepth::rep {

using lie::to_dominant_fold;

namespace {

void require_dominant(const RootSystem& rs, const Weight& w, const char* what) {
  if (w.rank() != rs.rank()) {
    throw DimensionMismatch(std::string(what) + ": weight " + w.to_string() + " has wrong rank for " +
                            rs.type().name());
  }
  if (!w.is_dominant()) {
    throw NonDominantInput(std::string(what) + ": weight " + w.to_string() + " is not dominant");
  }
}

std::optional<std::size_t> fundamental_index(const Weight& w) {
  std::optional<std::size_t> index;
  for (std::size_t i = 0; i < w.rank(); ++i) {
    if (w[i] == 0) continue;
    if (w[i] != 1 || index) return std::nullopt;
    index = i;
  }
  return index;
}

}  // namespace

BigInt weyl_dimension(const RootSystem& rs, const Weight& lambda) {
  require_dominant(rs, lambda, "weyl_dimension");
  const Weight shifted = lambda + rs.rho();
  BigInt num = 1;
  BigInt den = 1;
  for (const auto& alpha : rs.positive_roots()) {
    num *= rs.scaled_product(shifted, alpha);
    den *= rs.scaled_product(rs.rho(), alpha);
  }
  return num / den;
}

Character dominant_character(const RootSystem& rs, const Weight& lambda, std::size_t cap) {
  require_dominant(rs, lambda, "dominant_character");
  const auto& roots = rs.positive_roots();
  std::vector<std::int64_t> root_norm(roots.size());
  for (std::size_t r = 0; r < roots.size(); ++r) root_norm[r] = rs.scaled_product(roots[r], roots[r]);

  // Dominant weights of V(lambda): close {lambda} under alpha-string descent.
  std::unordered_set<Weight, lie::WeightHash> seen{lambda};
  std::vector<Weight> order{lambda};
  for (std::size_t head = 0; head < order.size(); ++head) {
    const Weight mu = order[head];
    for (std::size_t r = 0; r < roots.size(); ++r) {
      const std::int64_t steps = 2 * rs.scaled_product(mu, roots[r]) / root_norm[r];
      Weight nu = mu;
      for (std::int64_t k = 1; k <= steps; ++k) {
        nu -= roots[r];
        Weight d = to_dominant_fold(rs, nu).dominant;
        if (seen.insert(d).second) {
          order.push_back(d);
          if (order.size() > cap) {
            throw ResourceCapExceeded("character of " + rs.type().name() + " V(" + lambda.to_string() +
                                      ") has more than " + std::to_string(cap) + " dominant weights");
          }
        }
      }
    }
  }

  // Freudenthal needs every weight above mu first; (mu, rho) orders them.
  std::vector<std::pair<std::int64_t, Weight>> ranked;
  ranked.reserve(order.size());
  for (const auto& mu : order) ranked.emplace_back(rs.scaled_product(mu, rs.rho()), mu);
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    return a.first != b.first ? a.first > b.first : a.second > b.second;
  });

  const Weight top = lambda + rs.rho();
  const std::int64_t top_norm = rs.scaled_product(top, top);
  std::unordered_map<Weight, std::int64_t, lie::WeightHash> mult;
  mult.reserve(order.size() * 2);
  for (const auto& [key, mu] : ranked) {
    if (mu == lambda) {
      mult[mu] = 1;
      continue;
    }
    const Weight shifted = mu + rs.rho();
    const std::int64_t lhs = top_norm - rs.scaled_product(shifted, shifted);
    __int128 rhs = 0;
    for (std::size_t r = 0; r < roots.size(); ++r) {
      Weight up = mu;
      while (true) {
        up += roots[r];
        const auto it = mult.find(to_dominant_fold(rs, up).dominant);
        if (it == mult.end()) break;
        rhs += static_cast<__int128>(rs.scaled_product(up, roots[r])) * it->second;
      }
    }
    rhs *= 2;
    if (lhs <= 0 || rhs % lhs != 0) {
      throw InternalError("Freudenthal recursion produced a non-integral multiplicity at " + mu.to_string());
    }
    mult[mu] = static_cast<std::int64_t>(rhs / lhs);
  }

  Character out;
  for (const auto& [w, m] : mult) {
    if (m != 0) out.emplace(w, m);
  }
  return out;
}

WeightSystem expand_orbits(const RootSystem& rs, const Character& dominant, std::size_t cap) {
  WeightSystem out;
  for (const auto& [mu, m] : dominant) {
    lie::for_each_orbit_element(rs, mu, [&](const Weight& w, int) {
      out.emplace_back(w, m);
      if (out.size() > cap) {
        throw ResourceCapExceeded("weight system of " + rs.type().name() + " exceeds " + std::to_string(cap) +
                                  " distinct weights");
      }
    });
  }
  return out;
}

// ---------------------------------------------------------------------------
// CharacterCache

CharacterCache::CharacterCache(std::filesystem::path path) : path_(std::move(path)) {}

void CharacterCache::load() {
  if (path_.empty() || !std::filesystem::exists(path_)) return;
  std::ifstream in(path_);
  if (!in) throw CacheFormatError("cannot open character cache " + path_.string());
  read_from(in);
  std::unique_lock lock(mutex_);
  dirty_ = false;
}

void CharacterCache::save() const {
  if (path_.empty()) return;
  const auto tmp = std::filesystem::path(path_.string() + ".tmp");
  {
    std::ofstream out(tmp);
    if (!out) throw CacheFormatError("cannot write character cache " + tmp.string());
    write_to(out);
  }
  std::filesystem::rename(tmp, path_);
}

void CharacterCache::read_from(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "fusiondepth-characters 1") {
    throw CacheFormatError("missing or unsupported cache header");
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream head(line);
    std::string tag, type_name;
    std::size_t index = 0, count = 0;
    if (!(head >> tag >> type_name >> index >> count) || tag != "character") {
      throw CacheFormatError("bad record header: " + line);
    }
    const lie::SimpleType type = lie::SimpleType::parse(type_name);
    const auto rank = static_cast<std::size_t>(type.rank());
    if (index < 1 || index > rank) throw CacheFormatError("fundamental index out of range: " + line);
    Character ch;
    for (std::size_t k = 0; k < count; ++k) {
      if (!std::getline(in, line)) throw CacheFormatError("truncated record for " + type_name);
      std::istringstream body(line);
      std::string labels;
      std::int64_t m = 0;
      if (!(body >> labels >> m) || m <= 0) throw CacheFormatError("bad character entry: " + line);
      const Weight w = Weight::parse(labels, rank);
      if (!w.is_dominant()) throw CacheFormatError("non-dominant cached weight: " + line);
      ch.emplace(w, m);
    }
    if (!std::getline(in, line) || line != "end") throw CacheFormatError("missing 'end' for " + type_name);
    if (ch.find(Weight::fundamental(rank, index - 1)) == ch.end()) {
      throw CacheFormatError("cached character lacks its highest weight");
    }
    insert(type.name(), index, std::move(ch));
  }
}

void CharacterCache::write_to(std::ostream& out) const {
  std::shared_lock lock(mutex_);
  out << "fusiondepth-characters 1\n";
  for (const auto& [key, ch] : records_) {
    out << "character " << key.first << ' ' << key.second << ' ' << ch->size() << '\n';
    for (const auto& [w, m] : *ch) out << w.to_string() << ' ' << m << '\n';
    out << "end\n";
  }
}

std::shared_ptr<const Character> CharacterCache::find(const std::string& type, std::size_t index) const {
  std::shared_lock lock(mutex_);
  const auto it = records_.find({type, index});
  return it == records_.end() ? nullptr : it->second;
}

void CharacterCache::insert(const std::string& type, std::size_t index, Character character) {
  std::unique_lock lock(mutex_);
  records_[{type, index}] = std::make_shared<const Character>(std::move(character));
  dirty_ = true;
}

bool CharacterCache::dirty() const {
  std::shared_lock lock(mutex_);
  return dirty_;
}

std::size_t CharacterCache::size() const {
  std::shared_lock lock(mutex_);
  return records_.size();
}

// ---------------------------------------------------------------------------
// CharacterStore

CharacterStore::CharacterStore(const RootSystem& rs, std::size_t cap, std::shared_ptr<CharacterCache> cache)
    : rs_(rs), cap_(cap), cache_(std::move(cache)) {}

const Character& CharacterStore::dominant(const Weight& lambda) {
  {
    std::shared_lock lock(mutex_);
    const auto it = dominant_.find(lambda);
    if (it != dominant_.end()) return *it->second;
  }
  require_dominant(rs_, lambda, "dominant_character");
  const auto fundamental = fundamental_index(lambda);
  std::unique_ptr<Character> ch;
  if (fundamental && cache_) {
    if (auto cached = cache_->find(rs_.type().name(), *fundamental + 1)) {
      ch = std::make_unique<Character>(*cached);
    }
  }
  if (!ch) {
    ch = std::make_unique<Character>(dominant_character(rs_, lambda, cap_));
    if (fundamental && cache_) cache_->insert(rs_.type().name(), *fundamental + 1, *ch);
  }
  std::unique_lock lock(mutex_);
  auto [it, inserted] = dominant_.try_emplace(lambda, std::move(ch));
  return *it->second;
}

const WeightSystem& CharacterStore::weights(const Weight& lambda) {
  {
    std::shared_lock lock(mutex_);
    const auto it = weights_.find(lambda);
    if (it != weights_.end()) return *it->second;
  }
  auto ws = std::make_unique<WeightSystem>(expand_orbits(rs_, dominant(lambda), cap_));
  std::unique_lock lock(mutex_);
  auto [it, inserted] = weights_.try_emplace(lambda, std::move(ws));
  return *it->second;
}

const BigInt& CharacterStore::dimension(const Weight& lambda) {
  {
    std::shared_lock lock(mutex_);
    const auto it = dimensions_.find(lambda);
    if (it != dimensions_.end()) return *it->second;
  }
  auto d = std::make_unique<BigInt>(weyl_dimension(rs_, lambda));
  std::unique_lock lock(mutex_);
  auto [it, inserted] = dimensions_.try_emplace(lambda, std::move(d));
  return *it->second;
}

// ---------------------------------------------------------------------------
// Tensor products

Decomposition tensor_decompose(CharacterStore& store, const Weight& lambda, const Weight& mu) {
  const RootSystem& rs = store.root_system();
  require_dominant(rs, lambda, "tensor_decompose");
  require_dominant(rs, mu, "tensor_decompose");
  // Fold over the weights of the smaller factor.
  const bool swap = store.dimension(mu) > store.dimension(lambda);
  const Weight& big = swap ? mu : lambda;
  const Weight& small = swap ? lambda : mu;

  std::unordered_map<Weight, std::int64_t, lie::WeightHash> acc;
  const Weight base = big + rs.rho();
  for (const auto& [nu, m] : store.weights(small)) {
    const auto f = to_dominant_fold(rs, base + nu);
    if (f.on_wall) continue;
    acc[f.dominant - rs.rho()] += f.sign * m;
  }
  Decomposition out;
  for (const auto& [w, m] : acc) {
    if (m < 0) throw InternalError("negative Racah-Speiser multiplicity at " + w.to_string());
    if (m != 0) out.emplace(w, m);
  }
  return out;
}

Decomposition tensor_oracle(CharacterStore& store, const Weight& lambda, const Weight& mu) {
  const RootSystem& rs = store.root_system();
  require_dominant(rs, lambda, "tensor_oracle");
  require_dominant(rs, mu, "tensor_oracle");

  // Product character; W-invariance lets us keep only its dominant part.
  std::unordered_map<Weight, std::int64_t, lie::WeightHash> product;
  const auto& left = store.weights(lambda);
  const auto& right = store.weights(mu);
  for (const auto& [a, ma] : left) {
    for (const auto& [b, mb] : right) {
      Weight s = a + b;
      if (s.is_dominant()) product[s] += ma * mb;
    }
  }

  Decomposition out;
  while (true) {
    const Weight* top = nullptr;
    std::int64_t top_key = 0;
    for (const auto& [w, m] : product) {
      if (m == 0) continue;
      const std::int64_t key = rs.scaled_product(w, rs.rho());
      if (!top || key > top_key || (key == top_key && w > *top)) {
        top = &w;
        top_key = key;
      }
    }
    if (!top) break;
    const Weight highest = *top;
    const std::int64_t m = product[highest];
    if (m < 0) throw InternalError("character peeling went negative at " + highest.to_string());
    out.emplace(highest, m);
    for (const auto& [w, c] : store.dominant(highest)) product[w] -= m * c;
  }
  return out;
}

BigInt decomposition_dimension(CharacterStore& store, const Decomposition& d) {
  BigInt total = 0;
  for (const auto& [w, m] : d) total += store.dimension(w) * m;
  return total;
}

}  // namespace fusiondepth::rep
