#pragma once

#include <cstdlib>
#include <map>
#include <string>
#include <vector>

#include "lch/grading.hpp"
#include "lch/resolution.hpp"
#include "lch/weights.hpp"

namespace lch {

// An immersed convex polygon with boundary on the diagram, encoded by its
// boundary walk. Each step travels one knot halfedge with the disk on its
// left; at the head vertex the walk either continues through the vertex
// (corner = -1: straight at a crossing, U-turn at an apex, pass-through at
// a port pair) or turns through the convex corner occupying quadrant
// `corner` of the head crossing. walk[0] departs the distinguished corner,
// which therefore sits on the last step. Corners are single quadrants, so
// local convexity holds by construction.
struct Polygon {
  struct Step {
    int halfedge = -1;
    int corner = -1;
    bool operator==(const Step&) const = default;
  };
  std::vector<Step> walk;
  int positiveCorner = -1;           // crossing index of the distinguished corner
  std::vector<int> negativeWord;     // negative corners in boundary order
  std::vector<int> positiveCorners;  // every positive corner, boundary order
  std::vector<long long> mult;       // winding number per fine face
  int cornerCount = 0;

  // Canonical key: corner count first, then the walk encoding, so that
  // sorting by key orders polygons by corner count and then boundary walk.
  std::vector<int> key() const {
    std::vector<int> k;
    k.reserve(2 * walk.size() + 1);
    k.push_back(cornerCount);
    for (const Step& s : walk) {
      k.push_back(s.halfedge);
      k.push_back(s.corner);
    }
    return k;
  }
};

struct PolygonCheck {
  bool ok = false;
  std::string reason;
  explicit operator bool() const { return ok; }
};

namespace detail {

// Sectors covered at the head of a walk step: the ccw fan from the
// departure germ to the arrival germ.
inline int coveredSectors(int gIn, int gOut, int n) {
  return static_cast<int>(emod(gIn - gOut, n));
}

inline int stepDepartGerm(const ResolvedDiagram& d, const Polygon::Step& s) {
  const int v = d.head(s.halfedge), g = d.headGerm(s.halfedge);
  const auto& vx = d.vertices[v];
  if (s.corner >= 0) return s.corner;
  switch (vx.kind) {
    case VertexKind::Crossing: return (g + 2) % 4;
    case VertexKind::CapApex:
    case VertexKind::CupApex: return g == 0 ? 1 : 0;
    case VertexKind::PortPair: return (g + 2) % 4;
    default: return -1;
  }
}

}  // namespace detail

// Full validator for a candidate boundary walk. Checks, in order: the steps
// chain along the diagram; corner quadrants match their arrivals; corner
// signs (exactly one positive when requireSinglePositive); winding numbers
// exist (the walk is null-homologous), are nonnegative, and vanish on
// unbounded regions; every arc carries enough winding for its boundary
// traversals; the local sheet model at every vertex is consistent; the
// pulled-back complex is a single disk (Euler characteristic 1); the area
// identity and positivity; and the degree identity
// |positive| - sum |negative| = 1 (mod M).
inline PolygonCheck check_polygon(const ResolvedDiagram& d,
                                  const AreaWeights& w, const DegreeTable& deg,
                                  const Polygon& poly,
                                  bool requireSinglePositive = true) {
  auto bad = [](const std::string& r) { return PolygonCheck{false, r}; };
  const int L = static_cast<int>(poly.walk.size());
  if (L == 0) return bad("empty boundary walk");
  const int E = static_cast<int>(d.edges.size());

  // Structural chain.
  for (int i = 0; i < L; ++i) {
    const Polygon::Step& s = poly.walk[i];
    if (s.halfedge < 0 || s.halfedge >= 2 * E)
      return bad("step leaves the diagram");
    if (d.edge(s.halfedge).kind != EdgeKind::Knot)
      return bad("boundary walk leaves the knot");
    const int v = d.head(s.halfedge), g = d.headGerm(s.halfedge);
    if (s.corner >= 0) {
      if (d.vertices[v].kind != VertexKind::Crossing)
        return bad("corner at a vertex that is not a crossing");
      if (s.corner != (g + 3) % 4)
        return bad("corner quadrant does not match the arrival ray");
    }
    const int gOut = detail::stepDepartGerm(d, s);
    if (gOut < 0) return bad("walk stuck at a vertex with no continuation");
    if (d.vertices[v].rot[gOut].depart != poly.walk[(i + 1) % L].halfedge)
      return bad("steps do not chain");
  }

  // Corners and signs.
  std::vector<int> negs, poss;
  int cornerTotal = 0;
  for (int i = 0; i < L; ++i) {
    const Polygon::Step& s = poly.walk[i];
    if (s.corner < 0) continue;
    ++cornerTotal;
    const int c = d.vertices[d.head(s.halfedge)].crossing;
    (d.quadrantPositive(c, s.corner) ? poss : negs).push_back(c);
  }
  if (poss.empty()) return bad("no positive corner");
  if (requireSinglePositive) {
    if (poss.size() != 1) return bad("more than one positive corner");
    if (poly.walk[L - 1].corner < 0 ||
        !d.quadrantPositive(
            d.vertices[d.head(poly.walk[L - 1].halfedge)].crossing,
            poly.walk[L - 1].corner))
      return bad("distinguished corner is not the last step");
    if (poly.positiveCorner != poss[0])
      return bad("positiveCorner field does not match the walk");
    if (poly.negativeWord != negs)
      return bad("negativeWord field does not match the walk");
  }
  if (poly.cornerCount != cornerTotal)
    return bad("cornerCount field does not match the walk");

  // Winding numbers from the jump relations. Knot arcs jump by the
  // difference of boundary traversals; seam and aux edges do not jump;
  // unbounded faces are pinned at zero through the border.
  std::vector<long long> t(2 * E, 0);
  for (const Polygon::Step& s : poly.walk) t[s.halfedge]++;
  constexpr long long kUnset = -(1LL << 62);
  std::vector<long long> mult(d.faceCount, kUnset);
  std::vector<int> stack;
  for (int e = 0; e < E; ++e)
    if (d.edges[e].kind == EdgeKind::Border && mult[d.faceOf[2 * e]] == kUnset) {
      mult[d.faceOf[2 * e]] = 0;
      stack.push_back(d.faceOf[2 * e]);
    }
  struct Rel {
    int other;
    long long delta;  // mult[this] = mult[other] + delta
  };
  std::vector<std::vector<Rel>> rel(d.faceCount);
  for (int e = 0; e < E; ++e) {
    const EdgeKind k = d.edges[e].kind;
    if (k == EdgeKind::Border) continue;
    const int a = d.faceOf[2 * e], b = d.faceOf[2 * e + 1];
    const long long delta =
        k == EdgeKind::Knot ? t[2 * e] - t[2 * e + 1] : 0;
    rel[a].push_back({b, delta});
    rel[b].push_back({a, -delta});
  }
  while (!stack.empty()) {
    const int f = stack.back();
    stack.pop_back();
    for (const Rel& r : rel[f]) {
      const long long want = mult[f] - r.delta;
      if (mult[r.other] == kUnset) {
        mult[r.other] = want;
        stack.push_back(r.other);
      } else if (mult[r.other] != want) {
        return bad("winding numbers are inconsistent (walk is not null-homologous)");
      }
    }
  }
  for (int f = 0; f < d.faceCount; ++f) {
    if (mult[f] == kUnset) return bad("face graph unreachable from the border");
    if (mult[f] < 0) return bad("negative winding number");
    if (d.regionUnbounded[d.regionOf[f]] && mult[f] != 0)
      return bad("positive winding on an unbounded region");
  }
  if (!poly.mult.empty() && poly.mult != mult)
    return bad("regionMultiplicities field does not match the walk");

  // Interior arc counts per edge.
  std::vector<long long> interior(E, 0);
  for (int e = 0; e < E; ++e) {
    switch (d.edges[e].kind) {
      case EdgeKind::Knot: {
        const long long iL = mult[d.faceOf[2 * e]] - t[2 * e];
        const long long iR = mult[d.faceOf[2 * e + 1]] - t[2 * e + 1];
        check(iL == iR, "internal-error", "edge jump relation broke");
        if (iL < 0) return bad("more boundary traversals than winding allows");
        interior[e] = iL;
        break;
      }
      case EdgeKind::Seam:
      case EdgeKind::Aux:
        interior[e] = mult[d.faceOf[2 * e]];
        break;
      case EdgeKind::Border:
        interior[e] = 0;
        break;
    }
  }

  // Local sheet model: at every vertex the sector windings minus the
  // boundary coverage must be a single nonnegative count of interior
  // sheets. Sectors with no face (outside the border) are skipped.
  const int V = static_cast<int>(d.vertices.size());
  std::vector<std::vector<long long>> cover(V);
  std::vector<long long> passages(V, 0);
  for (int v = 0; v < V; ++v)
    cover[v].assign(d.vertices[v].rot.size(), 0);
  for (const Polygon::Step& s : poly.walk) {
    const int v = d.head(s.halfedge), gIn = d.headGerm(s.halfedge);
    const int n = static_cast<int>(d.vertices[v].rot.size());
    const int gOut = detail::stepDepartGerm(d, s);
    const int cnt = detail::coveredSectors(gIn, gOut, n);
    for (int j = 0; j < cnt; ++j) cover[v][(gOut + j) % n]++;
    passages[v]++;
  }
  std::vector<long long> nu(V, 0);
  for (int v = 0; v < V; ++v) {
    const int n = static_cast<int>(d.vertices[v].rot.size());
    long long val = kUnset;
    for (int i = 0; i < n; ++i) {
      const int f = d.sectorFace(v, i);
      if (f < 0) continue;
      const long long res = mult[f] - cover[v][i];
      if (res < 0) return bad("boundary coverage exceeds winding at a vertex");
      if (val == kUnset) val = res;
      else if (val != res)
        return bad("sheet counts disagree around a vertex");
    }
    nu[v] = val == kUnset ? 0 : val;
  }

  // The pulled-back complex must be one disk.
  long long vt = 0, et = 0, ft = 0;
  for (int v = 0; v < V; ++v) vt += nu[v] + passages[v];
  for (int e = 0; e < E; ++e)
    et += interior[e] + t[2 * e] + t[2 * e + 1];
  for (int f = 0; f < d.faceCount; ++f) ft += mult[f];
  if (vt - et + ft != 1)
    return bad("pulled-back complex is not a disk (chi = " +
               std::to_string(vt - et + ft) + ")");

  // Area identity and positivity.
  BigInt lhs(0);
  std::vector<char> seen(d.regionCount, 0);
  for (int f = 0; f < d.faceCount; ++f) {
    const int r = d.regionOf[f];
    if (seen[r]) continue;
    seen[r] = 1;
    if (!d.regionUnbounded[r]) lhs += BigInt(mult[f]) * w.regionArea[r];
  }
  BigInt rhs(0);
  for (int c : poss) rhs += w.action[c];
  for (int c : negs) rhs -= w.action[c];
  check(lhs == rhs, "internal-error", "area identity violated");
  if (lhs <= 0) return bad("nonpositive area");

  // Degree identity for admissible one-positive polygons.
  if (requireSinglePositive) {
    long long lhsDeg = deg.degrees[poss[0]] - 1;
    for (int c : negs) lhsDeg -= deg.degrees[c];
    if (deg.maslov == 0 ? lhsDeg != 0 : emod(lhsDeg, deg.maslov) != 0)
      return bad("degree identity |a| - sum|b| = 1 (mod M) fails");
  }

  return PolygonCheck{true, ""};
}

namespace detail {

// Depth-first boundary-walk search. The search is rooted at a positive
// corner; at every crossing it branches between a straight pass and the
// convex corner turn, and it closes when the root corner becomes available
// again. Termination is forced by the exact area budget: every step's
// left face must lie in a bounded region (a boundary traversal needs
// winding there), and t traversals of an arc force t sheets of that
// region, whose area is already committed.
class DiskSearch {
 public:
  DiskSearch(const ResolvedDiagram& d, const AreaWeights& w,
             const DegreeTable& deg, int maxPositive, bool fastPrunes,
             long long nodeLimit)
      : d_(d),
        w_(w),
        deg_(deg),
        maxPositive_(maxPositive),
        fastPrunes_(fastPrunes),
        nodeLimit_(nodeLimit) {
    tCount_.assign(2 * d.edges.size(), 0);
    lastRun_.assign(2 * d.edges.size(), -1);
  }

  // Enumerate all polygons whose distinguished corner is the given quadrant
  // of the given crossing, with at most maxPositive positive corners in
  // total (the root included).
  void runRoot(int crossing, int quadrant) {
    rootCrossing_ = crossing;
    rootQuadrant_ = quadrant;
    rootVertex_ = d_.crossings[crossing].vertex;
    positivesUsed_ = 1;
    creditPos_ = 0;
    spentNeg_ = 0;
    corners_ = 0;
    dfs(d_.vertices[rootVertex_].rot[quadrant].depart);
  }

  std::map<std::vector<int>, Polygon>& found() { return found_; }

 private:
  BigInt capRemaining() const {
    return w_.action[rootCrossing_] + creditPos_ +
           BigInt(maxPositive_ - positivesUsed_) * w_.maxAction - spentNeg_;
  }

  void dfs(int h) {
    if (++nodes_ > nodeLimit_)
      fail("budget-exceeded", "disk search exceeded the node limit of " +
                                  std::to_string(nodeLimit_) + " nodes");
    // A boundary traversal needs winding on its left, so the left face
    // must be bounded, and one more sheet of its region must fit in the
    // remaining area budget.
    const int r = d_.regionOf[d_.faceOf[h]];
    if (d_.regionUnbounded[r]) return;
    if (BigInt(tCount_[h] + 1) * w_.regionArea[r] > capRemaining()) return;
    // Fast-only prune: re-traversing an arc with no corner in between
    // spins without consuming budget; the oracle keeps exploring these.
    const int savedRun = lastRun_[h];
    if (fastPrunes_) {
      if (savedRun == corners_) return;
      lastRun_[h] = corners_;
    }

    tCount_[h]++;
    walk_.push_back({h, -1});

    const int v = d_.head(h), g = d_.headGerm(h);
    const auto& vx = d_.vertices[v];
    if (vx.kind != VertexKind::Crossing) {
      dfs(d_.knotNextHalfedge(h));
    } else {
      const int q = (g + 3) % 4;
      const int c = vx.crossing;
      // Close at the root corner.
      if (v == rootVertex_ && q == rootQuadrant_) emit();
      // Straight pass.
      dfs(vx.rot[(g + 2) % 4].depart);
      // Corner turn.
      if (d_.quadrantPositive(c, q)) {
        if (positivesUsed_ < maxPositive_) {
          ++positivesUsed_;
          creditPos_ += w_.action[c];
          walk_.back().corner = q;
          ++corners_;
          dfs(vx.rot[q].depart);
          --corners_;
          walk_.back().corner = -1;
          creditPos_ -= w_.action[c];
          --positivesUsed_;
        }
      } else if (capRemaining() - w_.action[c] >= w_.minBoundedArea) {
        spentNeg_ += w_.action[c];
        walk_.back().corner = q;
        ++corners_;
        dfs(vx.rot[q].depart);
        --corners_;
        walk_.back().corner = -1;
        spentNeg_ -= w_.action[c];
      }
    }

    walk_.pop_back();
    tCount_[h]--;
    if (fastPrunes_) lastRun_[h] = savedRun;
  }

  void emit() {
    Polygon p;
    p.walk = walk_;
    p.walk.back().corner = rootQuadrant_;
    p.positiveCorner = rootCrossing_;
    p.cornerCount = 0;
    for (const Polygon::Step& s : p.walk) {
      if (s.corner < 0) continue;
      p.cornerCount++;
      const int c = d_.vertices[d_.head(s.halfedge)].crossing;
      (d_.quadrantPositive(c, s.corner) ? p.positiveCorners : p.negativeWord)
          .push_back(c);
    }
    const bool single = maxPositive_ == 1;
    PolygonCheck chk = check_polygon(d_, w_, deg_, p, single);
    if (!chk.ok) return;
    // Fill winding numbers for consumers (check_polygon validated them).
    p.mult = windingOf(p);
    if (single) {
      std::vector<int> k = p.key();
      found_.emplace(std::move(k), std::move(p));
    } else {
      // The same polygon closes once per positive corner: keep the
      // rotation with the smallest key as the canonical representative.
      Polygon best = p;
      std::vector<int> bestKey = p.key();
      for (size_t i = 0; i + 1 < p.walk.size(); ++i) {
        const Polygon::Step& s = p.walk[i];
        if (s.corner < 0) continue;
        const int c = d_.vertices[d_.head(s.halfedge)].crossing;
        if (!d_.quadrantPositive(c, s.corner)) continue;
        Polygon rot;
        rot.walk.assign(p.walk.begin() + i + 1, p.walk.end());
        rot.walk.insert(rot.walk.end(), p.walk.begin(), p.walk.begin() + i + 1);
        rot.positiveCorner = c;
        rot.cornerCount = p.cornerCount;
        rot.mult = p.mult;
        for (const Polygon::Step& s2 : rot.walk) {
          if (s2.corner < 0) continue;
          const int c2 = d_.vertices[d_.head(s2.halfedge)].crossing;
          (d_.quadrantPositive(c2, s2.corner) ? rot.positiveCorners
                                              : rot.negativeWord)
              .push_back(c2);
        }
        std::vector<int> k = rot.key();
        if (k < bestKey) {
          bestKey = std::move(k);
          best = std::move(rot);
        }
      }
      found_.emplace(std::move(bestKey), std::move(best));
    }
  }

  std::vector<long long> windingOf(const Polygon& p) const {
    std::vector<long long> t(2 * d_.edges.size(), 0);
    for (const Polygon::Step& s : p.walk) t[s.halfedge]++;
    constexpr long long kUnset = -(1LL << 62);
    std::vector<long long> mult(d_.faceCount, kUnset);
    std::vector<int> stack;
    const int E = static_cast<int>(d_.edges.size());
    for (int e = 0; e < E; ++e)
      if (d_.edges[e].kind == EdgeKind::Border &&
          mult[d_.faceOf[2 * e]] == kUnset) {
        mult[d_.faceOf[2 * e]] = 0;
        stack.push_back(d_.faceOf[2 * e]);
      }
    while (!stack.empty()) {
      const int f = stack.back();
      stack.pop_back();
      for (int e = 0; e < E; ++e) {
        if (d_.edges[e].kind == EdgeKind::Border) continue;
        const int a = d_.faceOf[2 * e], b = d_.faceOf[2 * e + 1];
        const long long delta =
            d_.edges[e].kind == EdgeKind::Knot ? t[2 * e] - t[2 * e + 1] : 0;
        if (a == f && mult[b] == kUnset) {
          mult[b] = mult[a] - delta;
          stack.push_back(b);
        } else if (b == f && mult[a] == kUnset) {
          mult[a] = mult[b] + delta;
          stack.push_back(a);
        }
      }
    }
    return mult;
  }

  const ResolvedDiagram& d_;
  const AreaWeights& w_;
  const DegreeTable& deg_;
  const int maxPositive_;
  const bool fastPrunes_;
  const long long nodeLimit_;

  long long nodes_ = 0;
  int rootCrossing_ = -1, rootQuadrant_ = -1, rootVertex_ = -1;
  int positivesUsed_ = 1;
  int corners_ = 0;
  BigInt creditPos_{0}, spentNeg_{0};
  std::vector<long long> tCount_;
  std::vector<int> lastRun_;
  std::vector<Polygon::Step> walk_;
  std::map<std::vector<int>, Polygon> found_;
};

inline long long diskNodeLimit() {
  if (const char* env = std::getenv("LCH_NODE_LIMIT")) {
    char* end = nullptr;
    const long long v = std::strtoll(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
  }
  return 50'000'000;
}

inline std::vector<Polygon> collect(std::map<std::vector<int>, Polygon>& m) {
  std::vector<Polygon> out;
  out.reserve(m.size());
  for (auto& [k, p] : m) out.push_back(std::move(p));
  return out;
}

}  // namespace detail

// All admissible polygons whose distinguished positive corner is the given
// crossing: the fast enumerator.
inline std::vector<Polygon> enumerate_disks(const ResolvedDiagram& d,
                                            const AreaWeights& w,
                                            const DegreeTable& deg,
                                            int crossing) {
  detail::DiskSearch s(d, w, deg, 1, true, detail::diskNodeLimit());
  for (int q = 0; q < 4; ++q)
    if (d.quadrantPositive(crossing, q)) s.runRoot(crossing, q);
  return detail::collect(s.found());
}

// Independent exhaustive oracle for the same set: identical area budget,
// no fast-only prunes. The optional node budget guards against runaway
// input; the default is derived from the environment as for the fast path.
inline std::vector<Polygon> oracle_enumerate_disks(const ResolvedDiagram& d,
                                                   const AreaWeights& w,
                                                   const DegreeTable& deg,
                                                   int crossing,
                                                   long long nodeBudget = -1) {
  detail::DiskSearch s(d, w, deg, 1, false,
                       nodeBudget > 0 ? nodeBudget : detail::diskNodeLimit());
  for (int q = 0; q < 4; ++q)
    if (d.quadrantPositive(crossing, q)) s.runRoot(crossing, q);
  return detail::collect(s.found());
}

// Unrestricted corner-sign search: every immersed convex polygon with at
// most maxPositive positive corners, rooted anywhere. Polygons with no
// positive corner cannot exist (their area would be nonpositive), so
// rooting at positive corners loses nothing.
inline std::vector<Polygon> enumerate_polygons_unrestricted(
    const ResolvedDiagram& d, const AreaWeights& w, const DegreeTable& deg,
    int maxPositive = 2) {
  detail::DiskSearch s(d, w, deg, maxPositive, true, detail::diskNodeLimit());
  for (int c = 0; c < static_cast<int>(d.crossings.size()); ++c)
    for (int q = 0; q < 4; ++q)
      if (d.quadrantPositive(c, q)) s.runRoot(c, q);
  return detail::collect(s.found());
}

// Certificate that every immersed convex polygon on the diagram has at
// least two positive corners (so every differential vanishes for a
// structural reason, not merely by an empty search).
struct TwoPositiveCertificate {
  bool holds = false;
  std::vector<Polygon> polygons;  // everything the unrestricted search found
};

inline TwoPositiveCertificate two_positive_certificate(
    const ResolvedDiagram& d, const AreaWeights& w, const DegreeTable& deg) {
  TwoPositiveCertificate cert;
  cert.polygons = enumerate_polygons_unrestricted(d, w, deg, 2);
  cert.holds = true;
  for (const Polygon& p : cert.polygons)
    if (p.positiveCorners.size() < 2) cert.holds = false;
  return cert;
}

}  // namespace lch
