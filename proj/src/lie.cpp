#include "fusiondepth/lie.hpp"

#include "fusiondepth/errors.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <numeric>
#include <queue>
#include <set>
#include <utility>

namespace fusiondepth::lie {

namespace {

bool admissible(Family f, int n) {
  switch (f) {
    case Family::A: return n >= 1;
    case Family::B: return n >= 2;
    case Family::C: return n >= 2;
    case Family::D: return n >= 4;
    case Family::E: return n >= 6 && n <= 8;
    case Family::F: return n == 4;
    case Family::G: return n == 2;
  }
  return false;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Edge list (i, j, A_ij, A_ji) of the Dynkin diagram, zero based.
struct Edge {
  std::size_t i, j;
  int a_ij, a_ji;
};

std::vector<Edge> dynkin_edges(const SimpleType& t) {
  const auto n = static_cast<std::size_t>(t.rank());
  std::vector<Edge> edges;
  auto chain = [&](std::size_t upto) {
    for (std::size_t i = 0; i + 1 < upto; ++i) edges.push_back({i, i + 1, -1, -1});
  };
  switch (t.family()) {
    case Family::A:
      chain(n);
      break;
    case Family::B:
      // alpha_n short.
      chain(n - 1);
      edges.push_back({n - 2, n - 1, -2, -1});
      break;
    case Family::C:
      // alpha_n long.
      chain(n - 1);
      edges.push_back({n - 2, n - 1, -1, -2});
      break;
    case Family::D:
      chain(n - 1);
      edges.push_back({n - 3, n - 1, -1, -1});
      break;
    case Family::E:
      // 1-3-4-5-6-7-8 with 2 attached to 4.
      edges.push_back({0, 2, -1, -1});
      edges.push_back({1, 3, -1, -1});
      for (std::size_t i = 2; i + 1 < n; ++i) edges.push_back({i, i + 1, -1, -1});
      break;
    case Family::F:
      edges.push_back({0, 1, -1, -1});
      edges.push_back({1, 2, -2, -1});
      edges.push_back({2, 3, -1, -1});
      break;
    case Family::G:
      // alpha_1 short, alpha_2 long.
      edges.push_back({0, 1, -1, -3});
      break;
  }
  return edges;
}

std::vector<Rational> invert(const std::vector<int>& m, std::size_t n) {
  std::vector<Rational> a(n * 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i * 2 * n + j] = m[i * n + j];
    a[i * 2 * n + n + i] = 1;
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot * 2 * n + col] == 0) ++pivot;
    if (pivot == n) throw InternalError("singular Cartan matrix");
    if (pivot != col) {
      for (std::size_t k = 0; k < 2 * n; ++k) std::swap(a[pivot * 2 * n + k], a[col * 2 * n + k]);
    }
    const Rational p = a[col * 2 * n + col];
    for (std::size_t k = 0; k < 2 * n; ++k) a[col * 2 * n + k] /= p;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r * 2 * n + col] == 0) continue;
      const Rational f = a[r * 2 * n + col];
      for (std::size_t k = 0; k < 2 * n; ++k) a[r * 2 * n + k] -= f * a[col * 2 * n + k];
    }
  }
  std::vector<Rational> inv(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv[i * n + j] = a[i * 2 * n + n + j];
  return inv;
}

BigInt factorial(int n) {
  BigInt r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------
// SimpleType

SimpleType::SimpleType(Family family, int rank) : family_(family), rank_(rank) {
  if (!admissible(family, rank)) {
    throw InvalidRank(std::string("no simple type ") + static_cast<char>(family) + std::to_string(rank));
  }
  if (static_cast<std::size_t>(rank) > Weight::kMaxRank) {
    throw InvalidRank("rank " + std::to_string(rank) + " exceeds the supported maximum " +
                      std::to_string(Weight::kMaxRank));
  }
  if (family_ == Family::C && rank_ == 2) family_ = Family::B;
}

SimpleType SimpleType::parse(std::string_view text) {
  text = trim(text);
  if (text.size() < 2) throw ParseError("bad type string '" + std::string(text) + "'");
  const char letter = static_cast<char>(std::toupper(static_cast<unsigned char>(text.front())));
  if (letter < 'A' || letter > 'G') throw ParseError("bad type family in '" + std::string(text) + "'");
  int rank = 0;
  const auto digits = text.substr(1);
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), rank);
  if (ec != std::errc() || ptr != digits.data() + digits.size()) {
    throw ParseError("bad type rank in '" + std::string(text) + "'");
  }
  return SimpleType(static_cast<Family>(letter), rank);
}

std::string SimpleType::name() const { return static_cast<char>(family_) + std::to_string(rank_); }

// ---------------------------------------------------------------------------
// Weight

Weight::Weight(std::size_t rank) : rank_(rank) {
  if (rank > kMaxRank) throw InvalidRank("weight rank " + std::to_string(rank) + " too large");
}

Weight::Weight(std::initializer_list<int> labels) : Weight(std::span<const int>(labels.begin(), labels.size())) {}

Weight::Weight(std::span<const int> labels) : Weight(labels.size()) {
  std::copy(labels.begin(), labels.end(), labels_.begin());
}

Weight Weight::fundamental(std::size_t rank, std::size_t i) {
  Weight w(rank);
  w[i] = 1;
  return w;
}

Weight Weight::parse(std::string_view text, std::size_t rank) {
  std::vector<int> labels;
  text = trim(text);
  while (true) {
    const auto comma = text.find(',');
    const auto piece = trim(text.substr(0, comma));
    int value = 0;
    auto [ptr, ec] = std::from_chars(piece.data(), piece.data() + piece.size(), value);
    if (piece.empty() || ec != std::errc() || ptr != piece.data() + piece.size()) {
      throw ParseError("bad weight label '" + std::string(piece) + "'");
    }
    labels.push_back(value);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  if (labels.size() != rank) {
    throw DimensionMismatch("weight has " + std::to_string(labels.size()) + " labels, expected " +
                            std::to_string(rank));
  }
  return Weight(std::span<const int>(labels));
}

bool Weight::is_dominant() const noexcept {
  return std::all_of(labels_.begin(), labels_.begin() + rank_, [](int x) { return x >= 0; });
}

bool Weight::is_zero() const noexcept {
  return std::all_of(labels_.begin(), labels_.begin() + rank_, [](int x) { return x == 0; });
}

long Weight::label_sum() const noexcept { return std::accumulate(labels_.begin(), labels_.begin() + rank_, 0L); }

Weight& Weight::operator+=(const Weight& other) {
  if (other.rank_ != rank_) throw DimensionMismatch("adding weights of different rank");
  for (std::size_t i = 0; i < rank_; ++i) labels_[i] += other.labels_[i];
  return *this;
}

Weight& Weight::operator-=(const Weight& other) {
  if (other.rank_ != rank_) throw DimensionMismatch("subtracting weights of different rank");
  for (std::size_t i = 0; i < rank_; ++i) labels_[i] -= other.labels_[i];
  return *this;
}

Weight operator*(int s, Weight a) {
  for (std::size_t i = 0; i < a.rank_; ++i) a.labels_[i] *= s;
  return a;
}

Weight Weight::operator-() const { return -1 * *this; }

std::string Weight::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < rank_; ++i) {
    if (i) out += ',';
    out += std::to_string(labels_[i]);
  }
  return out;
}

std::size_t WeightHash::operator()(const Weight& w) const noexcept {
  std::uint64_t h = 1469598103934665603ULL ^ w.rank();
  for (int x : w.labels()) {
    h ^= static_cast<std::uint32_t>(x);
    h *= 1099511628211ULL;
  }
  return static_cast<std::size_t>(h ^ (h >> 29));
}

// ---------------------------------------------------------------------------
// RootSystem

RootSystem::RootSystem(SimpleType type) : type_(type), rank_(static_cast<std::size_t>(type.rank())) {
  const std::size_t n = rank_;
  cartan_.assign(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) cartan_[i * n + i] = 2;
  const auto edges = dynkin_edges(type_);
  for (const auto& e : edges) {
    cartan_[e.i * n + e.j] = e.a_ij;
    cartan_[e.j * n + e.i] = e.a_ji;
  }
  simple_roots_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Weight a(n);
    for (std::size_t j = 0; j < n; ++j) a[j] = cartan_[i * n + j];
    simple_roots_.push_back(a);
  }

  // |alpha_i|^2 / |alpha_j|^2 = A_ij / A_ji along each edge; longest norm is 2.
  root_norms_.assign(n, Rational(0));
  root_norms_[0] = 1;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& e : edges) {
      if (root_norms_[e.i] != 0 && root_norms_[e.j] == 0) {
        root_norms_[e.j] = root_norms_[e.i] * Rational(e.a_ji) / Rational(e.a_ij);
        changed = true;
      } else if (root_norms_[e.j] != 0 && root_norms_[e.i] == 0) {
        root_norms_[e.i] = root_norms_[e.j] * Rational(e.a_ij) / Rational(e.a_ji);
        changed = true;
      }
    }
  }
  const Rational longest = *std::max_element(root_norms_.begin(), root_norms_.end());
  for (auto& r : root_norms_) r = r * 2 / longest;

  const auto inverse = invert(cartan_, n);
  quad_form_.resize(n * n);
  BigInt denominator = 1;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      quad_form_[i * n + j] = inverse[i * n + j] * root_norms_[j] / 2;
      denominator = boost::multiprecision::lcm(denominator, boost::multiprecision::denominator(quad_form_[i * n + j]));
    }
  }
  form_denominator_ = denominator.convert_to<std::int64_t>();
  scaled_form_.resize(n * n);
  for (std::size_t k = 0; k < n * n; ++k) {
    const Rational scaled = quad_form_[k] * form_denominator_;
    scaled_form_[k] = boost::multiprecision::numerator(scaled).convert_to<std::int64_t>();
  }

  rho_ = Weight(n);
  for (std::size_t i = 0; i < n; ++i) rho_[i] = 1;

  // Roots are the Weyl orbits of the simple roots.
  std::set<Weight> dominant_roots;
  for (const auto& a : simple_roots_) dominant_roots.insert(to_dominant_fold(*this, a).dominant);
  auto height = [&](const Weight& w) {
    Rational h = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) h += Rational(w[j]) * inverse[j * n + i];
    return h;
  };
  std::vector<std::pair<Rational, Weight>> positive;
  for (const auto& d : dominant_roots) {
    for_each_orbit_element(*this, d, [&](const Weight& w, int) {
      if (scaled_product(w, rho_) > 0) positive.emplace_back(height(w), w);
    });
  }
  std::sort(positive.begin(), positive.end());
  for (auto& [h, w] : positive) positive_roots_.push_back(w);
  highest_root_ = positive.back().second;

  marks_.resize(n);
  comarks_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    Rational c = 0;
    for (std::size_t j = 0; j < n; ++j) c += Rational(highest_root_[j]) * inverse[j * n + i];
    if (boost::multiprecision::denominator(c) != 1) throw InternalError("non-integral mark");
    marks_[i] = boost::multiprecision::numerator(c).convert_to<int>();
    const Rational co = c * root_norms_[i] / 2;
    if (boost::multiprecision::denominator(co) != 1) throw InternalError("non-integral comark");
    comarks_[i] = boost::multiprecision::numerator(co).convert_to<int>();
  }
  dual_coxeter_ = 1 + static_cast<int>(level_of(rho_));
}

void RootSystem::check_rank(const Weight& w) const {
  if (w.rank() != rank_) {
    throw DimensionMismatch("weight of rank " + std::to_string(w.rank()) + " used with " + type_.name());
  }
}

long RootSystem::level_of(const Weight& w) const {
  check_rank(w);
  long s = 0;
  for (std::size_t i = 0; i < rank_; ++i) s += static_cast<long>(comarks_[i]) * w[i];
  return s;
}

std::int64_t RootSystem::scaled_product(const Weight& a, const Weight& b) const {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < rank_; ++i) {
    if (a[i] == 0) continue;
    std::int64_t row = 0;
    for (std::size_t j = 0; j < rank_; ++j) row += scaled_form_[i * rank_ + j] * b[j];
    s += row * a[i];
  }
  return s;
}

void RootSystem::reflect(Weight& mu, std::size_t i) const {
  const int c = mu[i];
  if (c == 0) return;
  const int* row = &cartan_[i * rank_];
  for (std::size_t j = 0; j < rank_; ++j) mu[j] -= c * row[j];
}

BigInt RootSystem::weyl_group_order() const {
  const int n = type_.rank();
  switch (type_.family()) {
    case Family::A: return factorial(n + 1);
    case Family::B:
    case Family::C: return (BigInt(1) << n) * factorial(n);
    case Family::D: return (BigInt(1) << (n - 1)) * factorial(n);
    case Family::E: return n == 6 ? BigInt(51840) : n == 7 ? BigInt(2903040) : BigInt(696729600);
    case Family::F: return 1152;
    case Family::G: return 12;
  }
  return 0;
}

RootSystem build_root_system(SimpleType type) { return RootSystem(type); }

Rational inner_product(const RootSystem& rs, const Weight& lambda, const Weight& mu) {
  rs.check_rank(lambda);
  rs.check_rank(mu);
  return Rational(rs.scaled_product(lambda, mu)) / rs.form_denominator();
}

FoldResult to_dominant_fold(const RootSystem& rs, Weight mu) {
  int sign = 1;
  const std::size_t n = rs.rank();
  while (true) {
    std::size_t i = 0;
    while (i < n && mu[i] >= 0) ++i;
    if (i == n) break;
    rs.reflect(mu, i);
    sign = -sign;
  }
  const bool wall = std::any_of(mu.labels().begin(), mu.labels().end(), [](int x) { return x == 0; });
  return {mu, sign, wall};
}

Weight dual_weight(const RootSystem& rs, const Weight& lambda) {
  if (lambda.rank() != rs.rank()) throw DimensionMismatch("dual_weight: rank mismatch");
  if (!lambda.is_dominant()) throw NonDominantInput("dual_weight needs a dominant weight, got " + lambda.to_string());
  return to_dominant_fold(rs, -lambda).dominant;
}

void for_each_orbit_element(const RootSystem& rs, const Weight& dominant,
                            const std::function<void(const Weight&, int)>& visit) {
  const std::size_t n = rs.rank();
  // Each non-dominant element's parent is its reflection at the lowest-index
  // negative label, which makes the orbit a tree rooted at `dominant`.
  std::vector<std::pair<Weight, int>> stack{{dominant, 1}};
  while (!stack.empty()) {
    auto [w, sign] = stack.back();
    stack.pop_back();
    visit(w, sign);
    for (std::size_t i = 0; i < n; ++i) {
      if (w[i] <= 0) continue;
      Weight child = w;
      rs.reflect(child, i);
      std::size_t first_negative = 0;
      while (first_negative < n && child[first_negative] >= 0) ++first_negative;
      if (first_negative == i) stack.emplace_back(child, -sign);
    }
  }
}

}  // namespace fusiondepth::lie
