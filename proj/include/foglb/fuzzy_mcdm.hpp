// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The foglb Authors

#ifndef FOGLB_FUZZY_MCDM_HPP
#define FOGLB_FUZZY_MCDM_HPP

#include <cstddef>
#include <span>
#include <vector>

/// Triangular fuzzy numbers, fuzzy AHP criteria weighting and fuzzy TOPSIS
/// ranking. Nothing in here knows about fog devices.
namespace foglb::mcdm {

/// Triangular fuzzy number (l, m, u) with l <= m <= u.
struct Tfn {
  double l = 0.0;
  double m = 0.0;
  double u = 0.0;

  /// Validating constructor; throws std::invalid_argument unless l <= m <= u
  /// and all three are finite.
  static Tfn make(double l, double m, double u);
  static Tfn crisp(double v) { return make(v, v, v); }

  bool degenerate() const { return l == m && m == u; }
  double centroid() const { return (l + m + u) / 3.0; }

  friend bool operator==(const Tfn&, const Tfn&) = default;
};

/// Membership grade of x. Zero outside [l, u], one at m, linear in between.
double membership(const Tfn& tfn, double x);

/// Vertex distance sqrt(((al-bl)^2 + (am-bm)^2 + (au-bu)^2) / 3).
double vertex_distance(const Tfn& a, const Tfn& b);

/// Maps a crisp Saaty judgment onto a TFN. v >= 1 gives
/// (max(1, v-1), v, min(9, v+1)); v < 1 gives the reciprocal of the image
/// of 1/v with the bounds swapped.
Tfn fuzzify_saaty(double v);

/// Square matrix of positive reciprocal judgments.
class ComparisonMatrix {
 public:
  static constexpr double kReciprocityTolerance = 1e-6;

  /// Throws std::invalid_argument on non-square input, non-positive entries,
  /// a diagonal entry other than 1, or a_ij * a_ji off 1 by more than 1e-6.
  explicit ComparisonMatrix(std::vector<std::vector<double>> entries);

  std::size_t size() const { return entries_.size(); }
  double operator()(std::size_t i, std::size_t j) const { return entries_[i][j]; }
  const std::vector<std::vector<double>>& entries() const { return entries_; }

 private:
  std::vector<std::vector<double>> entries_;
};

enum class Direction { kBenefit, kCost };

/// Crisp criteria weights that sum to one, one direction per criterion.
struct CriteriaWeights {
  std::vector<double> weights;
  std::vector<Direction> directions;

  /// Throws std::invalid_argument when lengths differ, a weight is negative
  /// or the weights do not sum to 1 within 1e-9.
  void validate() const;
  std::size_t size() const { return weights.size(); }
};

/// How pairwise judgments are lifted into fuzzy numbers before weighting.
enum class Fuzzification {
  kSaaty,  ///< fuzzify_saaty on every entry
  kCrisp,  ///< degenerate TFNs (v, v, v)
};

/// Buckley fuzzy geometric mean weights, centroid-defuzzified and
/// renormalized. Directions are left for the caller; the returned object has
/// every criterion marked as benefit.
CriteriaWeights fahp_weights(const ComparisonMatrix& matrix,
                             Fuzzification mode = Fuzzification::kSaaty);

/// Saaty's random consistency indices for n = 1..10.
inline constexpr double kRandomIndex[10] = {0.0,  0.0,  0.58, 0.90, 1.12,
                                            1.24, 1.32, 1.41, 1.45, 1.49};

/// CR = CI / RI of the crisp matrix with lambda_max from the power method.
/// Zero for n <= 2. Throws std::invalid_argument for n > 10.
double consistency_ratio(const ComparisonMatrix& matrix);

/// Alternatives (rows) by criteria (columns) of fuzzy ratings.
class DecisionMatrix {
 public:
  DecisionMatrix(std::size_t alternatives, std::size_t criteria);
  /// Row-major cells; throws std::invalid_argument on a size mismatch or an
  /// invalid cell.
  DecisionMatrix(std::size_t alternatives, std::size_t criteria,
                 std::vector<Tfn> cells);

  std::size_t alternatives() const { return rows_; }
  std::size_t criteria() const { return cols_; }

  Tfn& at(std::size_t alt, std::size_t crit) { return cells_[alt * cols_ + crit]; }
  const Tfn& at(std::size_t alt, std::size_t crit) const {
    return cells_[alt * cols_ + crit];
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Tfn> cells_;
};

struct RankingResult {
  /// Closeness coefficient per alternative, in [0, 1].
  std::vector<double> closeness;
  /// Alternative indices by descending closeness, ties by ascending index.
  std::vector<std::size_t> order;
};

/// Fuzzy TOPSIS. Columns are normalized (benefit: divide by the column's
/// largest u; cost: min l over the cell, reciprocal form), weighted, and each
/// alternative is scored by its vertex distance to the column-wise best and
/// worst weighted cells. Identical rows everywhere give CC = 0.5 for all.
RankingResult ftopsis_rank(const DecisionMatrix& dm, const CriteriaWeights& w);

}  // namespace foglb::mcdm

#endif  // FOGLB_FUZZY_MCDM_HPP
