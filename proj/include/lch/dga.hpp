#pragma once

// The free unital noncommutative differential graded algebra generated by
// the crossings of a resolved diagram. Elements are formal sums of words in
// the generators with integer coefficients (reduced mod 2 when the ring is
// Z2). The differential of a generator counts the admissible disks with
// their positive corner at that generator: each disk contributes its word
// of negative corners, read along the boundary with the disk on the left,
// starting after the positive corner. Over Z2 every disk counts once; over
// the integers a disk contributes (-1)^(number of shaded corners), where
// two of the four quadrants of every crossing are shaded by an
// orientation-dependent rule fixed below.

#include <algorithm>
#include <array>
#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "lch/common.hpp"
#include "lch/disks.hpp"
#include "lch/grading.hpp"
#include "lch/resolution.hpp"
#include "lch/weights.hpp"

namespace lch {

enum class Ring { Z2, Z };

inline std::string ring_name(Ring r) { return r == Ring::Z2 ? "Z2" : "Z"; }

// One term of an algebra element: coefficient times a word of generator
// indices. The empty word is the unit 1.
struct Term {
  long long coefficient = 0;
  std::vector<int> word;
  bool operator==(const Term&) const = default;
};

namespace detail {

// Canonical term order: shorter words first, then lexicographic.
struct WordLess {
  bool operator()(const std::vector<int>& a, const std::vector<int>& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

}  // namespace detail

// A formal sum of terms in canonical form: words sorted (length, then
// lexicographic), equal words merged, zero coefficients dropped, and
// coefficients in {0,1} when the ring is Z2.
struct AlgebraElement {
  std::vector<Term> terms;

  bool isZero() const { return terms.empty(); }
  bool operator==(const AlgebraElement&) const = default;

  static AlgebraElement zero() { return {}; }
  static AlgebraElement unit(long long c = 1) {
    return c == 0 ? zero() : AlgebraElement{{Term{c, {}}}};
  }
  static AlgebraElement generator(int g, long long c = 1) {
    return c == 0 ? zero() : AlgebraElement{{Term{c, {g}}}};
  }

  std::string str(const std::vector<std::string>& names) const {
    if (terms.empty()) return "0";
    std::string out;
    for (const Term& t : terms) {
      if (!out.empty()) out += " + ";
      std::string word;
      for (int g : t.word) {
        if (!word.empty()) word += " ";
        word += names[g];
      }
      if (t.word.empty())
        out += std::to_string(t.coefficient);
      else if (t.coefficient == 1)
        out += word;
      else if (t.coefficient == -1)
        out += "-" + word;
      else
        out += std::to_string(t.coefficient) + " " + word;
    }
    return out;
  }
};

// Merge raw terms into canonical form for the given ring.
inline AlgebraElement canonicalized(std::vector<Term> raw, Ring ring) {
  std::map<std::vector<int>, long long, detail::WordLess> acc;
  for (Term& t : raw) acc[std::move(t.word)] += t.coefficient;
  AlgebraElement out;
  for (auto& [word, coef] : acc) {
    if (ring == Ring::Z2) coef = emod(coef, 2);
    if (coef != 0) out.terms.push_back(Term{coef, word});
  }
  return out;
}

inline AlgebraElement add(const AlgebraElement& a, const AlgebraElement& b,
                          Ring ring) {
  std::vector<Term> raw = a.terms;
  raw.insert(raw.end(), b.terms.begin(), b.terms.end());
  return canonicalized(std::move(raw), ring);
}

inline AlgebraElement mul(const AlgebraElement& a, const AlgebraElement& b,
                          Ring ring) {
  std::vector<Term> raw;
  raw.reserve(a.terms.size() * b.terms.size());
  for (const Term& ta : a.terms)
    for (const Term& tb : b.terms) {
      Term t;
      t.coefficient = ta.coefficient * tb.coefficient;
      t.word = ta.word;
      t.word.insert(t.word.end(), tb.word.begin(), tb.word.end());
      raw.push_back(std::move(t));
    }
  return canonicalized(std::move(raw), ring);
}

inline AlgebraElement reduced_mod2(const AlgebraElement& x) {
  return canonicalized(x.terms, Ring::Z2);
}

// ---------------------------------------------------------------------------
// Signs over the integers.
//
// At every crossing two opposite quadrants are shaded. The shading rule is a
// side-of-strand convention: orient the knot, take one of the two strands
// through the crossing (upper or lower), and shade the two quadrants on one
// side of it. Travelling out of germ gOut the left side is the quadrant
// pair {gOut, gOut+1} and the right side is {gIn, gIn+1} (germ rays are
// 0=NE 1=NW 2=SW 3=SE and quadrant q spans rays q..q+1 counterclockwise).
// Which strand and which side is a convention the sources leave to a
// picture; it is pinned here by requiring d(d(a)) = 0 over the integers on
// the whole test corpus. Any such convention makes the two teardrops of the
// standard flying-saucer unknot cancel.

enum class ShadingVariant { LeftOfUpper, RightOfUpper, LeftOfLower, RightOfLower };

inline constexpr ShadingVariant kShadingVariant = ShadingVariant::LeftOfUpper;

using ShadingTable = std::vector<std::array<bool, 4>>;

inline ShadingTable shaded_quadrants(const ResolvedDiagram& d,
                                     ShadingVariant variant = kShadingVariant) {
  const std::size_t n = d.crossings.size();
  std::vector<std::array<bool, 4>> arrives(n, {false, false, false, false});
  for (int h : d.knotSeq) {
    const int v = d.head(h);
    if (d.vertices[v].kind == VertexKind::Crossing)
      arrives[d.vertices[v].crossing][d.headGerm(h)] = true;
  }
  ShadingTable out(n, {false, false, false, false});
  const bool wantUpper = variant == ShadingVariant::LeftOfUpper ||
                         variant == ShadingVariant::RightOfUpper;
  const bool wantLeft = variant == ShadingVariant::LeftOfUpper ||
                        variant == ShadingVariant::LeftOfLower;
  for (std::size_t c = 0; c < n; ++c) {
    // The chosen strand runs along the NE and SW rays exactly when it is
    // the upper strand of a crossing whose upper branch is NE (or the lower
    // strand of one whose upper branch is NW).
    const int g0 = (wantUpper == d.crossings[c].upperIsNE) ? 0 : 1;
    const int gIn = arrives[c][g0] ? g0 : g0 + 2;
    check(arrives[c][gIn], "internal-error",
          "knot traversal misses a strand of crossing " + d.crossings[c].name);
    const int base = wantLeft ? (gIn + 2) % 4 : gIn;
    out[c][base] = out[c][(base + 1) % 4] = true;
  }
  return out;
}

// (-1)^(number of corners of the polygon lying in shaded quadrants).
inline int sign_of_disk(const ResolvedDiagram& d, const ShadingTable& shaded,
                        const Polygon& poly) {
  int count = 0;
  for (const Polygon::Step& s : poly.walk) {
    if (s.corner < 0) continue;
    const int c = d.vertices[d.head(s.halfedge)].crossing;
    if (shaded[c][s.corner]) ++count;
  }
  return count % 2 == 0 ? 1 : -1;
}

// ---------------------------------------------------------------------------
// The differential.

// Negative-corner words are read in boundary order with the disk on the
// left, starting after the positive corner; set false per the worked
// examples (flipping this constant reverses every word).
inline constexpr bool kNegativeWordReversed = false;

inline AlgebraElement differential(const ResolvedDiagram& d,
                                   const AreaWeights& w, const DegreeTable& deg,
                                   Ring ring, int a,
                                   const ShadingTable* shading = nullptr) {
  ShadingTable local;
  if (ring == Ring::Z && shading == nullptr) {
    local = shaded_quadrants(d);
    shading = &local;
  }
  std::vector<Term> raw;
  for (const Polygon& p : enumerate_disks(d, w, deg, a)) {
    Term t;
    t.coefficient = ring == Ring::Z ? sign_of_disk(d, *shading, p) : 1;
    t.word = p.negativeWord;
    if (kNegativeWordReversed) std::reverse(t.word.begin(), t.word.end());
    raw.push_back(std::move(t));
  }
  return canonicalized(std::move(raw), ring);
}

struct Dga {
  Ring ring = Ring::Z2;
  long long maslov = 0;
  std::vector<std::string> names;
  DegreeTable degrees;
  std::vector<AlgebraElement> differential;

  int generatorCount() const { return static_cast<int>(names.size()); }
};

inline Dga compute_dga(const ResolvedDiagram& d, const AreaWeights& w,
                       const DegreeTable& deg, Ring ring = Ring::Z2) {
  Dga out;
  out.ring = ring;
  out.maslov = deg.maslov;
  out.degrees = deg;
  const ShadingTable shading =
      ring == Ring::Z ? shaded_quadrants(d) : ShadingTable{};
  for (std::size_t i = 0; i < d.crossings.size(); ++i) {
    out.names.push_back(d.crossings[i].name);
    out.differential.push_back(differential(d, w, deg, ring,
                                            static_cast<int>(i), &shading));
  }
  return out;
}

inline Dga compute_dga(const ResolvedDiagram& d, Ring ring = Ring::Z2) {
  const AreaWeights w = compute_area_weights(d);
  const DegreeTable deg = grade(d);
  return compute_dga(d, w, deg, ring);
}

// Linear extension of the differential by the signed Leibniz rule
// d(xy) = (dx)y + (-1)^{|x|} x (dy), with d(1) = 0. Signs read the parity
// of the raw degree of the prefix; the grading period is always even, so
// the parity is independent of the choice of capping path.
inline AlgebraElement extend(const Dga& dga, const AlgebraElement& x) {
  check(dga.ring == Ring::Z2 || dga.maslov % 2 == 0, "internal-error",
        "signed Leibniz extension needs an even grading period");
  std::vector<Term> raw;
  for (const Term& t : x.terms) {
    long long prefixDeg = 0;
    for (std::size_t i = 0; i < t.word.size(); ++i) {
      const int g = t.word[i];
      long long sgn = 1;
      if (dga.ring == Ring::Z && emod(prefixDeg, 2) != 0) sgn = -1;
      for (const Term& dt : dga.differential[g].terms) {
        Term nt;
        nt.coefficient = t.coefficient * sgn * dt.coefficient;
        nt.word.reserve(t.word.size() - 1 + dt.word.size());
        nt.word.insert(nt.word.end(), t.word.begin(), t.word.begin() + i);
        nt.word.insert(nt.word.end(), dt.word.begin(), dt.word.end());
        nt.word.insert(nt.word.end(), t.word.begin() + i + 1, t.word.end());
        raw.push_back(std::move(nt));
      }
      prefixDeg += dga.degrees.raw[g];
    }
  }
  return canonicalized(std::move(raw), dga.ring);
}

struct DgaReport {
  bool ok = true;
  std::string firstFailure;
  explicit operator bool() const { return ok; }
};

// Checks that every term of every differential drops the degree by exactly
// one (mod the grading period) and that d(d(a)) = 0 for every generator;
// reports the first counterexample.
inline DgaReport verify_dga(const Dga& dga) {
  const long long M = dga.maslov;
  const auto sameDegree = [M](long long a, long long b) {
    return M == 0 ? a == b : emod(a - b, M) == 0;
  };
  for (int i = 0; i < dga.generatorCount(); ++i) {
    const long long want = dga.degrees.raw[i] - 1;
    for (const Term& t : dga.differential[i].terms) {
      long long wd = 0;
      for (int g : t.word) wd += dga.degrees.raw[g];
      if (!sameDegree(wd, want)) {
        const AlgebraElement one{{t}};
        return {false, "d(" + dga.names[i] + ") contains " +
                           one.str(dga.names) + " of degree " +
                           std::to_string(wd) + ", expected " +
                           std::to_string(want) + " (mod " +
                           std::to_string(M) + ")"};
      }
    }
    const AlgebraElement dd = extend(dga, dga.differential[i]);
    if (!dd.isZero())
      return {false,
              "d(d(" + dga.names[i] + ")) = " + dd.str(dga.names)};
  }
  return {};
}

}  // namespace lch
