// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The foglb Authors

#include "foglb/fuzzy_mcdm.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace foglb::mcdm {

Tfn Tfn::make(double l, double m, double u) {
  if (!std::isfinite(l) || !std::isfinite(m) || !std::isfinite(u)) {
    throw std::invalid_argument("triangular fuzzy number must be finite");
  }
  if (!(l <= m && m <= u)) {
    throw std::invalid_argument("triangular fuzzy number requires l <= m <= u, got (" +
                                std::to_string(l) + ", " + std::to_string(m) + ", " +
                                std::to_string(u) + ")");
  }
  return Tfn{l, m, u};
}

double membership(const Tfn& tfn, double x) {
  if (x < tfn.l || x > tfn.u) return 0.0;
  if (x == tfn.m) return 1.0;
  if (x < tfn.m) return (x - tfn.l) / (tfn.m - tfn.l);
  return (tfn.u - x) / (tfn.u - tfn.m);
}

double vertex_distance(const Tfn& a, const Tfn& b) {
  const double dl = a.l - b.l;
  const double dm = a.m - b.m;
  const double du = a.u - b.u;
  return std::sqrt((dl * dl + dm * dm + du * du) / 3.0);
}

Tfn fuzzify_saaty(double v) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw std::invalid_argument("Saaty judgment must be positive, got " + std::to_string(v));
  }
  if (v >= 1.0) {
    return Tfn{std::max(1.0, v - 1.0), v, std::min(9.0, v + 1.0)};
  }
  const Tfn inv = fuzzify_saaty(1.0 / v);
  return Tfn{1.0 / inv.u, 1.0 / inv.m, 1.0 / inv.l};
}

ComparisonMatrix::ComparisonMatrix(std::vector<std::vector<double>> entries)
    : entries_(std::move(entries)) {
  const std::size_t n = entries_.size();
  if (n == 0) throw std::invalid_argument("comparison matrix is empty");
  for (std::size_t i = 0; i < n; ++i) {
    if (entries_[i].size() != n) {
      throw std::invalid_argument("comparison matrix must be square");
    }
    for (std::size_t j = 0; j < n; ++j) {
      const double a = entries_[i][j];
      if (!(a > 0.0) || !std::isfinite(a)) {
        throw std::invalid_argument("comparison matrix entry (" + std::to_string(i) + "," +
                                    std::to_string(j) + ") must be positive");
      }
    }
    if (std::abs(entries_[i][i] - 1.0) > kReciprocityTolerance) {
      throw std::invalid_argument("comparison matrix diagonal entry " + std::to_string(i) +
                                  " must be 1");
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (std::abs(entries_[i][j] * entries_[j][i] - 1.0) > kReciprocityTolerance) {
        throw std::invalid_argument("comparison matrix violates reciprocity at (" +
                                    std::to_string(i) + "," + std::to_string(j) + ")");
      }
    }
  }
}

void CriteriaWeights::validate() const {
  if (weights.size() != directions.size()) {
    throw std::invalid_argument("criteria weights and directions differ in length");
  }
  double sum = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw std::invalid_argument("criteria weight must be non-negative");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw std::invalid_argument("criteria weights must sum to 1, got " + std::to_string(sum));
  }
}

CriteriaWeights fahp_weights(const ComparisonMatrix& matrix, Fuzzification mode) {
  const std::size_t n = matrix.size();
  const double inv_n = 1.0 / static_cast<double>(n);

  // Row geometric means, component by component.
  std::vector<Tfn> row_mean(n);
  for (std::size_t i = 0; i < n; ++i) {
    double pl = 1.0, pm = 1.0, pu = 1.0;
    for (std::size_t j = 0; j < n; ++j) {
      const Tfn a = mode == Fuzzification::kSaaty ? fuzzify_saaty(matrix(i, j))
                                                  : Tfn::crisp(matrix(i, j));
      pl *= a.l;
      pm *= a.m;
      pu *= a.u;
    }
    row_mean[i] = Tfn{std::pow(pl, inv_n), std::pow(pm, inv_n), std::pow(pu, inv_n)};
  }

  Tfn total{0.0, 0.0, 0.0};
  for (const Tfn& r : row_mean) {
    total.l += r.l;
    total.m += r.m;
    total.u += r.u;
  }

  // r_i (x) total^-1, then centroid.
  CriteriaWeights out;
  out.weights.resize(n);
  out.directions.assign(n, Direction::kBenefit);
  for (std::size_t i = 0; i < n; ++i) {
    const Tfn w{row_mean[i].l / total.u, row_mean[i].m / total.m, row_mean[i].u / total.l};
    out.weights[i] = w.centroid();
  }
  const double sum = std::accumulate(out.weights.begin(), out.weights.end(), 0.0);
  for (double& w : out.weights) w /= sum;
  return out;
}

double consistency_ratio(const ComparisonMatrix& matrix) {
  const std::size_t n = matrix.size();
  if (n > 10) {
    throw std::invalid_argument("consistency ratio is tabulated for n <= 10, got " +
                                std::to_string(n));
  }
  if (n <= 2) return 0.0;

  constexpr int kIterations = 50;
  constexpr double kTolerance = 1e-10;

  std::vector<double> v(n, 1.0 / static_cast<double>(n));
  std::vector<double> next(n);
  double lambda = 0.0;
  for (int it = 0; it < kIterations; ++it) {
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < n; ++j) s += matrix(i, j) * v[j];
      next[i] = s;
    }
    // v sums to one, so the sum of A v estimates lambda_max.
    const double norm = std::accumulate(next.begin(), next.end(), 0.0);
    double delta = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      next[i] /= norm;
      delta = std::max(delta, std::abs(next[i] - v[i]));
    }
    v.swap(next);
    const bool converged = std::abs(norm - lambda) < kTolerance && delta < kTolerance;
    lambda = norm;
    if (converged) break;
  }

  const double ci = (lambda - static_cast<double>(n)) / static_cast<double>(n - 1);
  // Rounding can push a perfectly consistent matrix a hair below n.
  return std::max(0.0, ci / kRandomIndex[n - 1]);
}

DecisionMatrix::DecisionMatrix(std::size_t alternatives, std::size_t criteria)
    : rows_(alternatives), cols_(criteria), cells_(alternatives * criteria) {
  if (alternatives == 0 || criteria == 0) {
    throw std::invalid_argument("decision matrix needs at least one alternative and criterion");
  }
}

DecisionMatrix::DecisionMatrix(std::size_t alternatives, std::size_t criteria,
                               std::vector<Tfn> cells)
    : DecisionMatrix(alternatives, criteria) {
  if (cells.size() != alternatives * criteria) {
    throw std::invalid_argument("decision matrix cell count mismatch");
  }
  for (const Tfn& c : cells) Tfn::make(c.l, c.m, c.u);
  cells_ = std::move(cells);
}

namespace {

// a / x with the 0 / 0 case read as "this cell attains the minimum cost".
double cost_ratio(double best, double x) {
  if (x == 0.0) return 1.0;
  return best / x;
}

}  // namespace

RankingResult ftopsis_rank(const DecisionMatrix& dm, const CriteriaWeights& w) {
  const std::size_t rows = dm.alternatives();
  const std::size_t cols = dm.criteria();
  if (w.weights.size() != cols || w.directions.size() != cols) {
    throw std::invalid_argument("decision matrix has " + std::to_string(cols) +
                                " criteria but " + std::to_string(w.weights.size()) +
                                " weights were given");
  }
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      const Tfn& t = dm.at(r, c);
      Tfn::make(t.l, t.m, t.u);
      if (w.directions[c] == Direction::kCost && t.l < 0.0) {
        throw std::invalid_argument("cost criterion ratings must be non-negative");
      }
    }
  }

  DecisionMatrix weighted(rows, cols);
  for (std::size_t c = 0; c < cols; ++c) {
    if (w.directions[c] == Direction::kBenefit) {
      double top = dm.at(0, c).u;
      for (std::size_t r = 1; r < rows; ++r) top = std::max(top, dm.at(r, c).u);
      if (!(top > 0.0)) {
        throw std::invalid_argument("benefit criterion " + std::to_string(c) +
                                    " has no positive rating");
      }
      for (std::size_t r = 0; r < rows; ++r) {
        const Tfn& t = dm.at(r, c);
        weighted.at(r, c) = Tfn{w.weights[c] * t.l / top, w.weights[c] * t.m / top,
                                w.weights[c] * t.u / top};
      }
    } else {
      double best = dm.at(0, c).l;
      for (std::size_t r = 1; r < rows; ++r) best = std::min(best, dm.at(r, c).l);
      for (std::size_t r = 0; r < rows; ++r) {
        const Tfn& t = dm.at(r, c);
        weighted.at(r, c) = Tfn{w.weights[c] * cost_ratio(best, t.u),
                                w.weights[c] * cost_ratio(best, t.m),
                                w.weights[c] * cost_ratio(best, t.l)};
      }
    }
  }

  std::vector<Tfn> positive(cols), negative(cols);
  for (std::size_t c = 0; c < cols; ++c) {
    Tfn hi = weighted.at(0, c), lo = weighted.at(0, c);
    for (std::size_t r = 1; r < rows; ++r) {
      const Tfn& t = weighted.at(r, c);
      hi = Tfn{std::max(hi.l, t.l), std::max(hi.m, t.m), std::max(hi.u, t.u)};
      lo = Tfn{std::min(lo.l, t.l), std::min(lo.m, t.m), std::min(lo.u, t.u)};
    }
    positive[c] = hi;
    negative[c] = lo;
  }

  RankingResult out;
  out.closeness.resize(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    double to_best = 0.0, to_worst = 0.0;
    for (std::size_t c = 0; c < cols; ++c) {
      to_best += vertex_distance(weighted.at(r, c), positive[c]);
      to_worst += vertex_distance(weighted.at(r, c), negative[c]);
    }
    const double span = to_best + to_worst;
    out.closeness[r] = span > 0.0 ? to_worst / span : 0.5;
  }

  out.order.resize(rows);
  std::iota(out.order.begin(), out.order.end(), std::size_t{0});
  std::stable_sort(out.order.begin(), out.order.end(), [&](std::size_t a, std::size_t b) {
    return out.closeness[a] > out.closeness[b];
  });
  return out;
}

}  // namespace foglb::mcdm
