#pragma once

#include <vector>

#include "lch/resolution.hpp"

namespace lch {

// Degrees of the diagram's generators. maslov == 0 encodes an honest
// integer grading; otherwise degrees live in Z/maslov and the stored
// representative is the one in (-M/2, M/2].
struct DegreeTable {
  long long maslov = 0;
  std::vector<long long> raw;      // via the forward capping path
  std::vector<long long> degrees;  // canonical representative mod maslov
};

namespace detail {

// Tangent directions are tracked in eighth turns (quanta), counted
// counterclockwise with 0 pointing east. A knot arc leaves its vertex in
// the germ direction, flattens to horizontal, and bends into the far
// germ; each bend is at most one quantum.
inline int horizontalize(int octant) {
  if (octant == 7 || octant == 0 || octant == 1) return 0;
  if (octant == 3 || octant == 4 || octant == 5) return 4;
  fail("internal-error", "knot arc germ is vertical");
}

inline int octantTurn(int from, int to) {
  const int d = ((to - from + 4) % 8 + 8) % 8 - 4;
  check(d >= -1 && d <= 1, "internal-error", "arc bends by more than an octant");
  return d;
}

inline long long edgeQuanta(const ResolvedDiagram& d, int h) {
  const int a = d.vertices[d.tail(h)].rot[d.tailGerm(h)].octant;
  const int b = (d.vertices[d.head(h)].rot[d.headGerm(h)].octant + 4) % 8;
  const int h1 = horizontalize(a), h2 = horizontalize(b);
  check(h1 == h2, "internal-error", "knot arc reverses direction");
  return octantTurn(a, h1) + octantTurn(h2, b);
}

// Rotation picked up while passing through the head vertex of a halfedge:
// zero straight through a crossing, a half turn at the cusp apexes, and a
// half turn plus the framing twist through a handle. The rule depends
// only on the arrival germ, so it serves both traversal directions.
inline long long vertexQuanta(const ResolvedDiagram& d, int h,
                              const std::vector<int>& twists) {
  const auto& vx = d.vertices[d.head(h)];
  const int g = d.headGerm(h);
  switch (vx.kind) {
    case VertexKind::Crossing:
      return 0;
    case VertexKind::CapApex:
      return g == 0 ? -4 : 4;
    case VertexKind::CupApex:
      return g == 0 ? -4 : 4;
    case VertexKind::PortPair: {
      const long long t = twists[vx.handle];
      return g == 2 ? -(4 + 8 * t) : (4 + 8 * t);
    }
    default:
      fail("internal-error", "knot passed through a border vertex");
  }
}

inline std::vector<int> effectiveTwists(const ResolvedDiagram& d,
                                        std::vector<int> twists) {
  const auto& handles = d.cf.front.surface.handles;
  if (twists.empty())
    for (const auto& h : handles) twists.push_back(h.twist);
  check(static_cast<int>(twists.size()) == static_cast<int>(handles.size()),
        "twist-mismatch", "twist list does not match the handle count");
  return twists;
}

// Quanta along the capping path of a crossing: follow the sequence from
// the departure on the upper branch until the first return to the
// crossing, which lands on the lower branch.
inline long long cappingQuanta(const ResolvedDiagram& d,
                               const std::vector<int>& seq, int vertex,
                               bool upperIsNE,
                               const std::vector<int>& twists) {
  const int n = static_cast<int>(seq.size());
  int start = -1;
  for (int k = 0; k < n; ++k) {
    const int h = seq[k];
    if (d.head(h) != vertex) continue;
    const int g = d.headGerm(h);
    const bool onUpper = (g % 2 == 0) == upperIsNE;
    if (onUpper) start = (k + 1) % n;
  }
  check(start >= 0, "internal-error", "crossing missing from traversal");
  long long q = 0;
  for (int k = start;; k = (k + 1) % n) {
    const int h = seq[k];
    q += edgeQuanta(d, h);
    if (d.head(h) == vertex) {
      const int g = d.headGerm(h);
      check((g % 2 == 0) != upperIsNE, "internal-error",
            "capping path returned on the upper branch");
      return q;
    }
    q += vertexQuanta(d, h, twists);
  }
}

}  // namespace detail

// Total tangent rotation of the knot, against the square model's
// horizontal framing twisted t_h times through handle h. The result is a
// full count of half turns, even by orientability of the glued surface.
inline long long maslov_number(const ResolvedDiagram& d,
                               std::vector<int> twists = {}) {
  twists = detail::effectiveTwists(d, std::move(twists));
  long long q = 0;
  for (int h : d.knotSeq)
    q += detail::edgeQuanta(d, h) + detail::vertexQuanta(d, h, twists);
  check(q % 8 == 0, "internal-error", "knot tangent winding is fractional");
  return q < 0 ? -q / 4 : q / 4;
}

inline DegreeTable grade(const ResolvedDiagram& d,
                         std::vector<int> twists = {}) {
  twists = detail::effectiveTwists(d, std::move(twists));
  DegreeTable t;
  t.maslov = maslov_number(d, twists);

  std::vector<int> rev(d.knotSeq.rbegin(), d.knotSeq.rend());
  for (int& h : rev) h ^= 1;

  for (const auto& c : d.crossings) {
    const long long qf =
        detail::cappingQuanta(d, d.knotSeq, c.vertex, c.upperIsNE, twists);
    const long long qb =
        detail::cappingQuanta(d, rev, c.vertex, c.upperIsNE, twists);
    // The capping path runs between transverse branches, so its tangent
    // ends a quarter turn short of closing; closing it up positively
    // gives degree (q + 2) / 4 half turns, less one for the grading.
    check(emod(qf, 4) == 2 && emod(qb, 4) == 2, "internal-error",
          "capping path tangent does not end transverse to its start");
    const long long degF = fdiv(qf - 2, 4);
    const long long degB = fdiv(qb - 2, 4);
    if (t.maslov == 0)
      check(degF == degB, "internal-error",
            "capping paths disagree in the integer grading");
    else
      check(emod(degF - degB, t.maslov) == 0, "internal-error",
            "capping paths disagree mod the Maslov number");
    t.raw.push_back(degF);
    long long deg = degF;
    if (t.maslov > 0) {
      deg = emod(deg, t.maslov);
      if (2 * deg > t.maslov) deg -= t.maslov;
    }
    t.degrees.push_back(deg);
  }
  return t;
}

struct ClassicalReport {
  H1Class homologyClass;
  long long maslov = 0;
  int generatorCount = 0;
};

inline ClassicalReport classical_report(const ResolvedDiagram& d,
                                        std::vector<int> twists = {}) {
  ClassicalReport r;
  r.homologyClass = homology_class(d.cf);
  r.maslov = maslov_number(d, std::move(twists));
  r.generatorCount = static_cast<int>(d.crossings.size());
  return r;
}

}  // namespace lch
