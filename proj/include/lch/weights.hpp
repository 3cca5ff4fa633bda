#pragma once

#include <string>
#include <vector>

#include "lch/common.hpp"
#include "lch/resolution.hpp"

namespace lch {

// A geometric realization of the resolved diagram in the exact sense needed
// by the disk search: every crossing c gets an action (the height difference
// of its two branches) and every complementary region a signed area, with
//
//   area(R) = sum over corners (c, q) of R of sign(q) * action(c),
//
// where a corner is a crossing sector lying in R and sign(q) is the corner
// sign from ResolvedDiagram::quadrantPositive. Stokes' theorem then gives,
// for any disk with region multiplicities mult,
//
//   sum_R mult(R) * area(R) = action(positive corner) - sum action(negative),
//
// because a straight boundary pass through a crossing covers one positive
// and one negative sector (no height jump) while a corner covers exactly
// one sector. Weights are chosen so that every crossing action and every
// bounded region area is a positive integer, which makes the disk search
// budget exact.
struct AreaWeights {
  std::vector<BigInt> action;      // per crossing, >= 1
  std::vector<BigInt> regionArea;  // per region; meaningful when bounded
  BigInt minBoundedArea{1};        // 1 when the diagram has no bounded region
  BigInt maxAction{0};
};

namespace detail {

// Exact feasibility of { A y >= b, y >= 0 } via Phase-1 simplex with
// Bland's rule (anti-cycling, so termination is guaranteed). On success a
// feasible point is stored in y.
inline bool lp_feasible(std::vector<std::vector<BigRat>> A,
                        std::vector<BigRat> b, int nvars,
                        std::vector<BigRat>& y) {
  const int m = static_cast<int>(A.size());
  y.assign(nvars, BigRat(0));
  if (m == 0) return true;

  // Columns: 0..nvars-1 structural, nvars..nvars+m-1 surplus, then one
  // artificial per row that needs it. Rows are normalized to rhs >= 0.
  std::vector<std::vector<BigRat>> T(m);
  std::vector<BigRat> rhs(m);
  std::vector<int> basis(m);
  std::vector<char> isArtificial;
  int cols = nvars + m;

  for (int i = 0; i < m; ++i) {
    T[i].assign(cols, BigRat(0));
    for (int j = 0; j < nvars; ++j) T[i][j] = A[i][j];
    T[i][nvars + i] = BigRat(-1);  // surplus: A y - s = b
    rhs[i] = b[i];
    if (rhs[i] <= 0) {
      for (auto& v : T[i]) v = -v;
      rhs[i] = -rhs[i];
      basis[i] = nvars + i;  // surplus is basic with coefficient +1
    } else {
      basis[i] = -1;  // artificial added below
    }
  }
  isArtificial.assign(cols, 0);
  for (int i = 0; i < m; ++i) {
    if (basis[i] >= 0) continue;
    for (int r = 0; r < m; ++r) T[r].push_back(BigRat(r == i ? 1 : 0));
    isArtificial.push_back(1);
    basis[i] = cols++;
  }

  for (;;) {
    // Reduced objective row for min(sum of artificials): d_j is the sum of
    // T[i][j] over rows whose basic variable is artificial.
    int enter = -1;
    for (int j = 0; j < cols && enter < 0; ++j) {
      if (isArtificial[j]) continue;
      bool basic = false;
      for (int i = 0; i < m; ++i) basic = basic || basis[i] == j;
      if (basic) continue;
      BigRat dj(0);
      for (int i = 0; i < m; ++i)
        if (isArtificial[basis[i]]) dj += T[i][j];
      if (dj > 0) enter = j;  // Bland: first improving column
    }
    if (enter < 0) break;

    int leave = -1;
    BigRat best(0);
    for (int i = 0; i < m; ++i) {
      if (T[i][enter] <= 0) continue;
      BigRat ratio = rhs[i] / T[i][enter];
      if (leave < 0 || ratio < best ||
          (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave < 0) return false;  // unbounded improving ray: cannot happen
                                  // with artificials, defensive only

    const BigRat piv = T[leave][enter];
    for (auto& v : T[leave]) v /= piv;
    rhs[leave] /= piv;
    for (int i = 0; i < m; ++i) {
      if (i == leave || T[i][enter] == 0) continue;
      const BigRat f = T[i][enter];
      for (int j = 0; j < cols; ++j) T[i][j] -= f * T[leave][j];
      rhs[i] -= f * rhs[leave];
    }
    basis[leave] = enter;
  }

  BigRat w(0);
  for (int i = 0; i < m; ++i)
    if (isArtificial[basis[i]]) w += rhs[i];
  if (w != 0) return false;
  for (int i = 0; i < m; ++i)
    if (basis[i] < nvars) y[basis[i]] = rhs[i];
  return true;
}

}  // namespace detail

inline AreaWeights compute_area_weights(const ResolvedDiagram& d) {
  const int n = static_cast<int>(d.crossings.size());

  // Signed corner-count matrix: coef[r][c] accumulates the signs of the
  // sectors of crossing c that lie in region r.
  std::vector<std::vector<long long>> coef(
      d.regionCount, std::vector<long long>(n, 0));
  for (int c = 0; c < n; ++c) {
    const int v = d.crossings[c].vertex;
    for (int q = 0; q < 4; ++q) {
      const int r = d.regionOf[d.sectorFace(v, q)];
      coef[r][c] += d.quadrantPositive(c, q) ? 1 : -1;
    }
  }

  // Feasibility problem in x (actions): x_c >= 1 and, for every bounded
  // region, sum coef * x >= 1. Substituting x = 1 + y reduces it to
  // A y >= b, y >= 0.
  std::vector<std::vector<BigRat>> A;
  std::vector<BigRat> b;
  std::vector<int> rowRegion;
  for (int r = 0; r < d.regionCount; ++r) {
    if (d.regionUnbounded[r]) continue;
    std::vector<BigRat> row(n);
    BigRat shift(0);
    for (int c = 0; c < n; ++c) {
      row[c] = BigRat(coef[r][c]);
      shift += row[c];
    }
    A.push_back(std::move(row));
    b.push_back(BigRat(1) - shift);
    rowRegion.push_back(r);
  }

  std::vector<BigRat> y;
  if (!detail::lp_feasible(A, b, n, y))
    fail("area-infeasible",
         "no positive-area geometric realization exists for this diagram");

  // Scale to integers: multiplying every action by a common denominator
  // scales every region area by the same factor.
  BigInt scale(1);
  std::vector<BigRat> x(n);
  for (int c = 0; c < n; ++c) {
    x[c] = BigRat(1) + y[c];
    scale = boost::multiprecision::lcm(scale,
                                       boost::multiprecision::denominator(x[c]));
  }

  AreaWeights w;
  w.action.resize(n);
  for (int c = 0; c < n; ++c) {
    const BigRat scaled = x[c] * BigRat(scale);
    w.action[c] = boost::multiprecision::numerator(scaled);
    if (w.action[c] > w.maxAction) w.maxAction = w.action[c];
  }
  w.regionArea.assign(d.regionCount, BigInt(0));
  bool haveBounded = false;
  for (int r = 0; r < d.regionCount; ++r) {
    BigInt area(0);
    for (int c = 0; c < n; ++c) area += BigInt(coef[r][c]) * w.action[c];
    w.regionArea[r] = area;
    if (!d.regionUnbounded[r]) {
      check(area >= 1, "internal-error",
            "realized area of a bounded region is not positive");
      if (!haveBounded || area < w.minBoundedArea) w.minBoundedArea = area;
      haveBounded = true;
    }
  }
  if (!haveBounded) w.minBoundedArea = 1;
  return w;
}

}  // namespace lch
