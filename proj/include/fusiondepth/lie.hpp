#pragma once

#include "fusiondepth/numeric.hpp"

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fusiondepth::lie {

enum class Family : char { A = 'A', B = 'B', C = 'C', D = 'D', E = 'E', F = 'F', G = 'G' };

/// A simple type such as A3 or E8. Construction validates the rank;
/// C2 is folded into B2 (Bourbaki B2 numbering: alpha_1 long, alpha_2 short).
class SimpleType {
 public:
  SimpleType(Family family, int rank);

  /// Parses "A3", "e8", "G2", ...
  static SimpleType parse(std::string_view text);

  Family family() const noexcept { return family_; }
  int rank() const noexcept { return rank_; }
  std::string name() const;

  friend bool operator==(const SimpleType&, const SimpleType&) = default;

 private:
  Family family_;
  int rank_;
};

/// Integral weight in Dynkin-label coordinates. Storage is inline; ranks up
/// to kMaxRank are supported.
class Weight {
 public:
  static constexpr std::size_t kMaxRank = 16;

  Weight() = default;
  explicit Weight(std::size_t rank);
  Weight(std::initializer_list<int> labels);
  explicit Weight(std::span<const int> labels);

  static Weight zero(std::size_t rank) { return Weight(rank); }
  static Weight fundamental(std::size_t rank, std::size_t i);
  /// Comma separated labels, e.g. "1,0,2". Length must equal `rank`.
  static Weight parse(std::string_view text, std::size_t rank);

  std::size_t rank() const noexcept { return rank_; }
  int operator[](std::size_t i) const noexcept { return labels_[i]; }
  int& operator[](std::size_t i) noexcept { return labels_[i]; }
  std::span<const int> labels() const noexcept { return {labels_.data(), rank_}; }

  bool is_dominant() const noexcept;
  bool is_zero() const noexcept;
  /// Sum of the labels.
  long label_sum() const noexcept;

  Weight& operator+=(const Weight& other);
  Weight& operator-=(const Weight& other);
  friend Weight operator+(Weight a, const Weight& b) { return a += b; }
  friend Weight operator-(Weight a, const Weight& b) { return a -= b; }
  friend Weight operator*(int s, Weight a);
  Weight operator-() const;

  std::string to_string() const;

  friend bool operator==(const Weight&, const Weight&) = default;
  /// Lexicographic on labels.
  friend std::strong_ordering operator<=>(const Weight&, const Weight&) = default;

 private:
  std::array<int, kMaxRank> labels_{};
  std::size_t rank_ = 0;
};

struct WeightHash {
  std::size_t operator()(const Weight& w) const noexcept;
};

struct FoldResult {
  Weight dominant;
  int sign = 1;
  bool on_wall = false;
};

/// Immutable Cartan data for one simple type, normalized so that the highest
/// root has squared length 2. Simple roots follow Bourbaki numbering; for G2
/// omega_1 is the highest weight of the 7-dimensional representation.
class RootSystem {
 public:
  explicit RootSystem(SimpleType type);

  const SimpleType& type() const noexcept { return type_; }
  std::size_t rank() const noexcept { return rank_; }

  /// A_ij = <alpha_i, alpha_j> = 2 (alpha_i, alpha_j) / (alpha_j, alpha_j).
  /// Row i holds the Dynkin labels of alpha_i.
  int cartan(std::size_t i, std::size_t j) const { return cartan_[i * rank_ + j]; }
  const Weight& simple_root(std::size_t i) const { return simple_roots_[i]; }

  const std::vector<Rational>& root_norms() const noexcept { return root_norms_; }
  /// (omega_i, omega_j).
  const Rational& quad_form(std::size_t i, std::size_t j) const { return quad_form_[i * rank_ + j]; }

  const Weight& highest_root() const noexcept { return highest_root_; }
  /// theta = sum_i marks[i] alpha_i.
  const std::vector<int>& marks() const noexcept { return marks_; }
  /// comarks[i] = marks[i] |alpha_i|^2 / 2 = (omega_i, theta); always integral.
  const std::vector<int>& comarks() const noexcept { return comarks_; }
  int dual_coxeter() const noexcept { return dual_coxeter_; }
  const Weight& rho() const noexcept { return rho_; }
  /// Positive roots in Dynkin labels, ordered by increasing height.
  const std::vector<Weight>& positive_roots() const noexcept { return positive_roots_; }

  /// (lambda, theta) = sum_i comarks[i] lambda_i.
  long level_of(const Weight& w) const;

  /// Integer-scaled form: (a, b) = scaled_product(a, b) / form_denominator().
  std::int64_t scaled_product(const Weight& a, const Weight& b) const;
  std::int64_t form_denominator() const noexcept { return form_denominator_; }

  /// s_i(mu) = mu - mu_i alpha_i.
  void reflect(Weight& mu, std::size_t i) const;

  /// Order of the Weyl group.
  BigInt weyl_group_order() const;

 private:
  void check_rank(const Weight& w) const;
  friend Rational inner_product(const RootSystem&, const Weight&, const Weight&);

  SimpleType type_;
  std::size_t rank_;
  std::vector<int> cartan_;
  std::vector<Weight> simple_roots_;
  std::vector<Rational> root_norms_;
  std::vector<Rational> quad_form_;
  std::vector<std::int64_t> scaled_form_;
  std::int64_t form_denominator_ = 1;
  Weight highest_root_;
  std::vector<int> marks_;
  std::vector<int> comarks_;
  int dual_coxeter_ = 0;
  Weight rho_;
  std::vector<Weight> positive_roots_;
};

RootSystem build_root_system(SimpleType type);

/// Exact (lambda, mu); throws DimensionMismatch on rank mismatch.
Rational inner_product(const RootSystem& rs, const Weight& lambda, const Weight& mu);

/// Folds mu into the dominant chamber, always reflecting at the lowest-index
/// negative label. `sign` is (-1)^(reflections applied); `on_wall` is true
/// when the result has a zero label.
FoldResult to_dominant_fold(const RootSystem& rs, Weight mu);

/// -w0(lambda) for dominant lambda.
Weight dual_weight(const RootSystem& rs, const Weight& lambda);

/// Visits every element of the Weyl orbit of a dominant weight exactly once.
/// The callback receives the orbit element and the parity (+1/-1) of the
/// tree path that produced it; for regular weights that parity is det(w).
void for_each_orbit_element(const RootSystem& rs, const Weight& dominant,
                            const std::function<void(const Weight&, int)>& visit);

}  // namespace fusiondepth::lie
