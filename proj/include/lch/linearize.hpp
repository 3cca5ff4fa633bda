#pragma once

// Augmentations of the Z2 algebra, the linearized differential they induce,
// linearized homology, and the set of Chekanov-Poincare polynomials — the
// computable invariant this tool exists to produce. An augmentation sends
// each generator a_i to a_i + c_i with c_i in Z2 (supported on degree-0
// generators in graded mode) such that the conjugated differential has no
// constant term. Linearizing at an augmentation gives a differential on the
// span of the generators whose homology dimensions, encoded as a Laurent
// polynomial in λ, form an isotopy-invariant set as the augmentation varies.

#include <algorithm>
#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "lch/common.hpp"
#include "lch/dga.hpp"
#include "lch/front.hpp"
#include "lch/grading.hpp"
#include "lch/resolution.hpp"
#include "lch/surface.hpp"
#include "lch/weights.hpp"

namespace lch {

struct Augmentation {
  std::vector<char> values;  // one 0/1 entry per generator
  bool graded = true;

  bool operator==(const Augmentation&) const = default;
};

// Exhaustive search over 2^k assignments is refused beyond this many
// support generators.
inline constexpr int kAugmentationSearchBits = 25;

namespace detail {

// One Z2 polynomial equation: a constant plus a set of square-free
// monomials in the support variables, each present with odd parity.
struct AugEquation {
  int constant = 0;
  std::vector<std::vector<int>> monomials;  // sorted variable lists
};

struct AugSearch {
  std::vector<AugEquation> equations;
  int varCount = 0;
  std::vector<int> assign;           // -1 unknown, else 0/1
  std::vector<std::vector<char>> solutions;

  // Reduce an equation under the current partial assignment. Variables
  // assigned 1 drop out of their monomial; a variable assigned 0 kills it;
  // equal reduced monomials cancel in pairs.
  AugEquation reduce(const AugEquation& eq) const {
    std::map<std::vector<int>, int> parity;
    int constant = eq.constant;
    for (const auto& mono : eq.monomials) {
      std::vector<int> left;
      bool dead = false;
      for (int v : mono) {
        if (assign[v] == 0) dead = true;
        if (assign[v] == -1) left.push_back(v);
      }
      if (dead) continue;
      if (left.empty())
        constant ^= 1;
      else
        parity[std::move(left)] ^= 1;
    }
    AugEquation out;
    out.constant = constant;
    for (auto& [mono, p] : parity)
      if (p) out.monomials.push_back(mono);
    return out;
  }

  // Apply every forced assignment; returns false on contradiction.
  bool propagate(std::vector<int>& trail) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (const AugEquation& raw : equations) {
        const AugEquation eq = reduce(raw);
        if (eq.monomials.empty()) {
          if (eq.constant) return false;
          continue;
        }
        if (eq.constant == 1 && eq.monomials.size() == 1) {
          // The lone product must be 1, so every factor is 1.
          for (int v : eq.monomials[0]) {
            assign[v] = 1;
            trail.push_back(v);
          }
          changed = true;
        } else if (eq.constant == 0 && eq.monomials.size() == 1 &&
                   eq.monomials[0].size() == 1) {
          assign[eq.monomials[0][0]] = 0;
          trail.push_back(eq.monomials[0][0]);
          changed = true;
        }
      }
    }
    return true;
  }

  void solve() {
    std::vector<int> trail;
    if (!propagate(trail)) {
      for (int v : trail) assign[v] = -1;
      return;
    }
    int branch = -1;
    for (int v = 0; v < varCount && branch < 0; ++v)
      if (assign[v] == -1) branch = v;
    if (branch < 0) {
      std::vector<char> sol(assign.begin(), assign.end());
      solutions.push_back(std::move(sol));
    } else {
      for (int value : {0, 1}) {
        assign[branch] = value;
        solve();
        assign[branch] = -1;
      }
    }
    for (int v : trail) assign[v] = -1;
  }
};

}  // namespace detail

// All augmentations of the differential, exhaustively. In graded mode the
// support is restricted to generators of degree 0 (mod the grading period).
inline std::vector<Augmentation> find_augmentations(const Dga& dga,
                                                    bool graded = true) {
  const int n = dga.generatorCount();
  std::vector<int> varOf(n, -1);
  std::vector<int> support;
  for (int i = 0; i < n; ++i) {
    if (graded && dga.degrees.degrees[i] != 0) continue;
    varOf[i] = static_cast<int>(support.size());
    support.push_back(i);
  }
  if (static_cast<int>(support.size()) > kAugmentationSearchBits)
    fail("budget-exceeded",
         "augmentation search over 2^" + std::to_string(support.size()) +
             " assignments exceeds the 2^" +
             std::to_string(kAugmentationSearchBits) + " cap");

  detail::AugSearch search;
  search.varCount = static_cast<int>(support.size());
  search.assign.assign(support.size(), -1);
  for (int a = 0; a < n; ++a) {
    std::map<std::vector<int>, int> parity;
    int constant = 0;
    for (const Term& t : dga.differential[a].terms) {
      if (emod(t.coefficient, 2) == 0) continue;
      std::vector<int> mono;
      bool dead = false;
      for (int g : t.word) {
        if (varOf[g] < 0) dead = true;  // unsupported generator maps to 0
        else mono.push_back(varOf[g]);
      }
      if (dead) continue;
      std::sort(mono.begin(), mono.end());
      mono.erase(std::unique(mono.begin(), mono.end()), mono.end());
      if (mono.empty())
        constant ^= 1;
      else
        parity[std::move(mono)] ^= 1;
    }
    detail::AugEquation eq;
    eq.constant = constant;
    for (auto& [mono, p] : parity)
      if (p) eq.monomials.push_back(mono);
    if (eq.constant == 0 && eq.monomials.empty()) continue;
    search.equations.push_back(std::move(eq));
  }
  search.solve();
  std::sort(search.solutions.begin(), search.solutions.end());

  std::vector<Augmentation> out;
  for (const auto& sol : search.solutions) {
    Augmentation aug;
    aug.graded = graded;
    aug.values.assign(n, 0);
    for (std::size_t v = 0; v < support.size(); ++v)
      aug.values[support[v]] = sol[v];
    out.push_back(std::move(aug));
  }
  return out;
}

// The differential induced on the span of the generators by conjugating
// with a_i -> a_i + c_i and keeping the word-length-1 part.
struct LinearizedDifferential {
  long long maslov = 0;
  std::vector<long long> degrees;          // canonical generator degrees
  std::vector<std::vector<char>> matrix;   // matrix[a][g]: g-coefficient of d1(a)
};

inline LinearizedDifferential linearized_differential(const Dga& dga,
                                                      const Augmentation& aug) {
  const int n = dga.generatorCount();
  check(static_cast<int>(aug.values.size()) == n, "invalid-augmentation",
        "augmentation has the wrong number of generators");
  LinearizedDifferential lin;
  lin.maslov = dga.maslov;
  lin.degrees = dga.degrees.degrees;
  lin.matrix.assign(n, std::vector<char>(n, 0));
  for (int a = 0; a < n; ++a) {
    int constant = 0;
    for (const Term& t : dga.differential[a].terms) {
      if (emod(t.coefficient, 2) == 0) continue;
      // Substituting g -> g + c_g into the word and expanding, the constant
      // part is the product of the c's and the linear part in position i is
      // g_i times the product of the other letters' c's.
      int zeros = 0;
      for (int g : t.word) zeros += aug.values[g] ? 0 : 1;
      if (zeros == 0) constant ^= 1;
      if (zeros <= 1)
        for (int g : t.word)
          if (zeros == 0 || !aug.values[g]) lin.matrix[a][g] ^= 1;
    }
    if (constant)
      fail("invalid-augmentation",
           "substitution leaves a constant term in d(" + dga.names[a] + ")");
  }
  return lin;
}

namespace detail {

inline int gf2_rank(std::vector<std::vector<char>> rows) {
  const std::size_t m = rows.size();
  const std::size_t cols = m == 0 ? 0 : rows[0].size();
  int rank = 0;
  for (std::size_t c = 0; c < cols; ++c) {
    std::size_t pivot = m;
    for (std::size_t r = rank; r < m; ++r)
      if (rows[r][c]) {
        pivot = r;
        break;
      }
    if (pivot == m) continue;
    std::swap(rows[pivot], rows[rank]);
    for (std::size_t r = 0; r < m; ++r)
      if (r != static_cast<std::size_t>(rank) && rows[r][c])
        for (std::size_t k = c; k < cols; ++k) rows[r][k] ^= rows[rank][k];
    ++rank;
  }
  return rank;
}

}  // namespace detail

// Dimensions of ker(d1)/im(d1) per degree class. Degrees are the canonical
// representatives mod the grading period, so the class below k is the
// canonical representative of k - 1.
inline std::map<long long, int> homology(const LinearizedDifferential& lin) {
  const long long M = lin.maslov;
  const auto canon = [M](long long x) {
    if (M == 0) return x;
    long long r = emod(x, M);
    if (2 * r > M) r -= M;
    return r;
  };
  std::map<long long, std::vector<int>> byDegree;
  const int n = static_cast<int>(lin.degrees.size());
  for (int i = 0; i < n; ++i) byDegree[lin.degrees[i]].push_back(i);

  for (int a = 0; a < n; ++a)
    for (int g = 0; g < n; ++g)
      if (lin.matrix[a][g])
        check(lin.degrees[g] == canon(lin.degrees[a] - 1),
              "invalid-augmentation",
              "linearized differential is not graded; homology by degree "
              "needs a graded augmentation");

  // rank of the block mapping degree class k into class k-1
  std::map<long long, int> rank;
  for (const auto& [k, rows] : byDegree) {
    const auto below = byDegree.find(canon(k - 1));
    if (below == byDegree.end()) {
      rank[k] = 0;
      continue;
    }
    std::vector<std::vector<char>> block;
    for (int a : rows) {
      std::vector<char> row;
      for (int g : below->second) row.push_back(lin.matrix[a][g]);
      block.push_back(std::move(row));
    }
    rank[k] = detail::gf2_rank(std::move(block));
  }

  std::map<long long, int> dims;
  for (const auto& [k, rows] : byDegree) {
    int dim = static_cast<int>(rows.size()) - rank[k];
    const auto above = rank.find(canon(k + 1));
    if (above != rank.end()) dim -= above->second;
    if (dim != 0) dims[k] = dim;
  }
  return dims;
}

// A Laurent polynomial in λ with positive integer coefficients: the
// dimension of each graded component of the linearized homology. Exponents
// are canonical representatives in (-M/2, M/2] when the grading period M is
// positive, plain integers when it is zero.
struct PoincarePolynomial {
  long long maslov = 0;
  std::map<long long, int> coeff;

  bool operator==(const PoincarePolynomial&) const = default;
  friend bool operator<(const PoincarePolynomial& a,
                        const PoincarePolynomial& b) {
    if (a.maslov != b.maslov) return a.maslov < b.maslov;
    return std::lexicographical_compare(a.coeff.begin(), a.coeff.end(),
                                        b.coeff.begin(), b.coeff.end());
  }

  // Terms printed with descending exponents, e.g. "λ^2 + 2 + λ^-2".
  std::string str() const {
    if (coeff.empty()) return "0";
    std::string out;
    for (auto it = coeff.rbegin(); it != coeff.rend(); ++it) {
      const auto [e, k] = *it;
      if (!out.empty()) out += " + ";
      if (e == 0) {
        out += std::to_string(k);
        continue;
      }
      const std::string base = e == 1 ? "λ" : "λ^" + std::to_string(e);
      out += k == 1 ? base : std::to_string(k) + base;
    }
    return out;
  }
};

inline PoincarePolynomial poincare(const LinearizedDifferential& lin) {
  PoincarePolynomial p;
  p.maslov = lin.maslov;
  p.coeff = homology(lin);
  return p;
}

// The invariant: Chekanov-Poincare polynomials over all augmentations,
// sorted and deduplicated.
inline std::vector<PoincarePolynomial> polynomial_set(const Dga& dga,
                                                      bool graded = true) {
  std::vector<PoincarePolynomial> out;
  for (const Augmentation& aug : find_augmentations(dga, graded))
    out.push_back(poincare(linearized_differential(dga, aug)));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Reports and comparison.

struct InvariantReport {
  H1Class homologyClass;
  long long maslov = 0;
  std::vector<long long> twists;           // trivialization, one per handle
  std::vector<long long> generatorDegrees;  // canonical
  bool graded = true;
  int augmentationCount = 0;
  std::vector<PoincarePolynomial> polynomialSet;
};

inline InvariantReport invariant_report(const ResolvedDiagram& d,
                                        bool graded = true) {
  InvariantReport r;
  r.homologyClass = homology_class(d.cf);
  for (const HandleSpec& h : d.cf.front.surface.handles)
    r.twists.push_back(h.twist);
  const AreaWeights w = compute_area_weights(d);
  const DegreeTable deg = grade(d);
  r.maslov = deg.maslov;
  r.generatorDegrees = deg.degrees;
  r.graded = graded;
  const Dga dga = compute_dga(d, w, deg, Ring::Z2);
  const auto augs = find_augmentations(dga, graded);
  r.augmentationCount = static_cast<int>(augs.size());
  for (const Augmentation& aug : augs)
    r.polynomialSet.push_back(poincare(linearized_differential(dga, aug)));
  std::sort(r.polynomialSet.begin(), r.polynomialSet.end());
  r.polynomialSet.erase(
      std::unique(r.polynomialSet.begin(), r.polynomialSet.end()),
      r.polynomialSet.end());
  return r;
}

struct CompareVerdict {
  bool distinguished = false;
  std::string field;  // which invariant differs; empty when none do

  std::string str() const {
    return distinguished ? "distinguished (" + field + ")"
                         : "indistinguishable-by-these-invariants";
  }
};

// Invariants are only comparable for knots on the same surface with the
// same trivialization twists.
inline CompareVerdict compare(const InvariantReport& a,
                              const InvariantReport& b) {
  if (a.twists != b.twists)
    fail("twist-mismatch",
         "reports use different surfaces or trivialization twists");
  if (!(a.homologyClass == b.homologyClass))
    return {true, "homology-class"};
  if (a.maslov != b.maslov) return {true, "maslov"};
  if (a.polynomialSet != b.polynomialSet) return {true, "polynomial-set"};
  return {false, ""};
}

}  // namespace lch
