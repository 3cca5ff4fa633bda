#pragma once

#include <algorithm>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "lch/front.hpp"

namespace lch {

// When a front crossing is resolved, one strand keeps the higher z
// coordinate. With this flag set, the strand that descends (northwest to
// southeast) is the upper branch. This is a global calibration constant:
// flipping it mirrors the over/under choice at every front crossing.
inline constexpr bool kFrontCrossingUpperIsDescending = true;

enum class VertexKind { Crossing, CapApex, CupApex, PortPair, IntervalEnd, Corner, AuxAnchor };
enum class EdgeKind { Knot, Seam, Border, Aux };
enum class CrossingOrigin { FrontCrossing, CuspLoop, HandleBraid };

// The resolved Lagrangian diagram as a cell complex on the glued square.
//
// Vertices carry a counterclockwise rotation of germs (edge ends). Fixed
// germ layouts per kind:
//   Crossing:    0=NE 1=NW 2=SW 3=SE rays (octants 1,3,5,7)
//   CapApex:     0=lower-east 1=upper-east [2=aux-west on the anchor apex]
//   CupApex:     0=upper-west 1=lower-west
//   PortPair:    0=lower-copy knot edge, 1=seam above (E_A),
//                2=upper-copy knot edge, 3=seam below (E_B)
//                (order is ccw in the glued chart; both knot germs point
//                 west in the square chart, octant 4)
//   IntervalEnd: 0=departing free arc, 1=seam, 2=arriving free arc
//   Corner:      two border germs, ccw
//   AuxAnchor:   0=aux-east, 1=left-edge-up, 2=left-edge-down
//
// Edges are stored once; halfedge 2e runs from->to and 2e+1 is its twin.
// Border edges are one-sided: only halfedge 2e is traced.
struct ResolvedDiagram {
  struct Germ {
    int arrive = -1;  // halfedge whose head germ is this one
    int depart = -1;  // halfedge leaving through this germ
    int octant = -1;  // direction in the square chart, 0=E ccw to 7=SE
  };
  struct Vertex {
    VertexKind kind;
    std::vector<Germ> rot;  // ccw germ order
    double x = 0, y = 0;
    int crossing = -1;  // index into crossings for Crossing vertices
    int handle = -1;    // for PortPair / IntervalEnd
    int portPos = 0;    // 1-based seam position for PortPair
  };
  struct Edge {
    EdgeKind kind;
    int from = -1, to = -1;
    int fromGerm = -1, toGerm = -1;
    int piece = -1;  // front piece carried by a knot edge
  };
  struct Crossing {
    int vertex = -1;
    CrossingOrigin origin;
    int eventIndex = -1;  // front event for FrontCrossing / CuspLoop
    int handle = -1;      // for HandleBraid
    int braidIndex = -1;  // position within the handle's half twist
    bool upperIsNE = true;  // upper branch occupies the NE+SW rays
    std::string name;
  };

  CompletedFront cf;
  std::vector<Vertex> vertices;
  std::vector<Edge> edges;
  std::vector<Crossing> crossings;

  // Face structure. faceOf is indexed by halfedge (-1 for the unused twin
  // of a border edge). Fine faces never cross seam or aux edges; coarse
  // regions merge fine faces across them and are the true complementary
  // regions of the diagram on the glued surface.
  std::vector<int> faceOf;
  int faceCount = 0;
  std::vector<int> regionOf;  // fine face -> region
  int regionCount = 0;
  std::vector<char> regionUnbounded;

  // Knot traversal: halfedges of knot edges in traversal order, starting
  // eastward along the upper strand of the first left cusp.
  std::vector<int> knotSeq;

  int head(int h) const { return h % 2 == 0 ? edges[h / 2].to : edges[h / 2].from; }
  int tail(int h) const { return h % 2 == 0 ? edges[h / 2].from : edges[h / 2].to; }
  int headGerm(int h) const { return h % 2 == 0 ? edges[h / 2].toGerm : edges[h / 2].fromGerm; }
  int tailGerm(int h) const { return h % 2 == 0 ? edges[h / 2].fromGerm : edges[h / 2].toGerm; }
  const Edge& edge(int h) const { return edges[h / 2]; }

  bool validHalfedge(int h) const {
    return h % 2 == 0 || edges[h / 2].kind != EdgeKind::Border;
  }

  // Face tracing keeps the face on the left: continue through the germ
  // clockwise-next from the arrival germ.
  int nextHalfedge(int h) const {
    const int v = head(h), g = headGerm(h);
    const int n = static_cast<int>(vertices[v].rot.size());
    return vertices[v].rot[(g + n - 1) % n].depart;
  }

  // Fine face filling the ccw sector between rot germs i and i+1 of v.
  int sectorFace(int v, int i) const {
    const int n = static_cast<int>(vertices[v].rot.size());
    const int a = vertices[v].rot[(i + 1) % n].arrive;
    return a < 0 ? -1 : faceOf[a];
  }

  // Quadrant q of a crossing is the sector ccw from ray q to ray q+1
  // (rays 0=NE 1=NW 2=SW 3=SE). A disk corner in that quadrant arrives
  // along ray q+1 and departs along ray q, so its action jump is
  // z(branch of ray q) - z(branch of ray q+1): the corner is positive
  // (the disk gains the crossing's action) exactly when the departing
  // ray lies on the upper branch.
  bool quadrantPositive(int crossingIdx, int q) const {
    return (q % 2 == 0) == crossings[crossingIdx].upperIsNE;
  }

  // The knot continues through vertices: straight at crossings and port
  // pairs, U-turn at cap/cup apexes.
  int knotNextHalfedge(int h) const {
    const int v = head(h), g = headGerm(h);
    const Vertex& vx = vertices[v];
    int g2 = -1;
    switch (vx.kind) {
      case VertexKind::Crossing: g2 = (g + 2) % 4; break;
      case VertexKind::CapApex:
      case VertexKind::CupApex: g2 = g == 0 ? 1 : 0; break;
      case VertexKind::PortPair: g2 = g == 0 ? 2 : 0; break;
      default: fail("internal-error", "knot ran into a non-knot vertex");
    }
    return vx.rot[g2].depart;
  }

  int eulerCharacteristic() const {
    return static_cast<int>(vertices.size()) - static_cast<int>(edges.size()) + faceCount;
  }
};

namespace detail {

struct DiagramBuilder {
  ResolvedDiagram d;
  std::vector<int> blockStart;  // per interval, 1-based first slot

  struct Lane {
    int vertex, germ, piece;
  };
  std::vector<Lane> lanes;

  int newVertex(VertexKind kind, int germs, double x, double y) {
    ResolvedDiagram::Vertex v;
    v.kind = kind;
    v.rot.resize(germs);
    v.x = x;
    v.y = y;
    d.vertices.push_back(std::move(v));
    return static_cast<int>(d.vertices.size()) - 1;
  }

  int addEdge(EdgeKind kind, int u, int gu, int v, int gv, int piece = -1) {
    d.edges.push_back({kind, u, v, gu, gv, piece});
    const int e = static_cast<int>(d.edges.size()) - 1;
    d.vertices[u].rot[gu].depart = 2 * e;
    d.vertices[v].rot[gv].arrive = 2 * e;
    if (kind != EdgeKind::Border) {
      d.vertices[v].rot[gv].depart = 2 * e + 1;
      d.vertices[u].rot[gu].arrive = 2 * e + 1;
    }
    return e;
  }

  void setOctants(int v, std::initializer_list<int> octs) {
    int i = 0;
    for (int o : octs) d.vertices[v].rot[i++].octant = o;
  }

  // --- columns -----------------------------------------------------------

  int column = 0;
  int firstApex = -1;

  double laneY(int slot) const { return -static_cast<double>(slot); }

  void cap(int slot) {
    const bool anchor = firstApex < 0;
    const int v = newVertex(VertexKind::CapApex, anchor ? 3 : 2, column + 1,
                            laneY(slot) - 0.5);
    if (anchor) {
      firstApex = v;
      setOctants(v, {0, 0, 4});
    } else {
      setOctants(v, {0, 0});
    }
    const int a = pieceCounter++, b = pieceCounter++;
    lanes.insert(lanes.begin() + (slot - 1), {{v, 1, a}, {v, 0, b}});
    ++column;
  }

  void cup(int slot) {
    const int v =
        newVertex(VertexKind::CupApex, 2, column + 1, laneY(slot) - 0.5);
    setOctants(v, {4, 4});
    addEdge(EdgeKind::Knot, lanes[slot - 1].vertex, lanes[slot - 1].germ, v, 0,
            lanes[slot - 1].piece);
    addEdge(EdgeKind::Knot, lanes[slot].vertex, lanes[slot].germ, v, 1,
            lanes[slot].piece);
    lanes.erase(lanes.begin() + (slot - 1), lanes.begin() + (slot + 1));
    ++column;
  }

  void cross(int slot, CrossingOrigin origin, int eventIndex, int handle,
             int braidIndex) {
    const int v =
        newVertex(VertexKind::Crossing, 4, column + 1, laneY(slot) - 0.5);
    setOctants(v, {1, 3, 5, 7});
    const Lane up = lanes[slot - 1], lo = lanes[slot];
    addEdge(EdgeKind::Knot, up.vertex, up.germ, v, 1, up.piece);
    addEdge(EdgeKind::Knot, lo.vertex, lo.germ, v, 2, lo.piece);
    lanes[slot - 1] = {v, 0, lo.piece};
    lanes[slot] = {v, 3, up.piece};

    ResolvedDiagram::Crossing c;
    c.vertex = v;
    c.origin = origin;
    c.eventIndex = eventIndex;
    c.handle = handle;
    c.braidIndex = braidIndex;
    switch (origin) {
      case CrossingOrigin::CuspLoop:
        // The strand entering the loop from the upper front strand keeps
        // the greater z coordinate and descends through the crossing, so
        // the loop's teardrop disk has a positive corner.
        c.upperIsNE = false;
        break;
      case CrossingOrigin::FrontCrossing:
        c.upperIsNE = !kFrontCrossingUpperIsDescending;
        break;
      case CrossingOrigin::HandleBraid: {
        // Heights are carried through the handle in final-slot order: the
        // strand that entered nearer the top keeps the greater z and
        // passes over.
        const int zUp = d.cf.sim.eastPortSlot[up.piece];
        const int zLo = d.cf.sim.eastPortSlot[lo.piece];
        c.upperIsNE = !(zUp < zLo);
        break;
      }
    }
    d.vertices[v].crossing = static_cast<int>(d.crossings.size());
    c.name = "c" + std::to_string(d.crossings.size() + 1);
    d.crossings.push_back(std::move(c));
    ++column;
  }

  int pieceCounter = 0;

  void buildColumns() {
    for (int t = 0; t < static_cast<int>(d.cf.front.events.size()); ++t) {
      const Event& e = d.cf.front.events[t];
      switch (e.type) {
        case EventType::LeftCusp: cap(e.slot); break;
        case EventType::Crossing:
          cross(e.slot, CrossingOrigin::FrontCrossing, t, -1, -1);
          break;
        case EventType::RightCusp:
          cross(e.slot, CrossingOrigin::CuspLoop, t, -1, -1);
          cup(e.slot);
          break;
      }
    }
    // Half-twist braids, one per handle, acting on the upper-interval
    // block so that the order-reversing seam identification reconnects
    // each strand with its own continuation.
    const auto order = d.cf.front.surface.intervalOrder();
    for (size_t i = 0; i < order.size(); ++i) {
      if (!order[i].upper) continue;
      const int k = d.cf.front.ports[i], bs = blockStart[i];
      int bi = 0;
      for (int r = 1; r < k; ++r)
        for (int m = r; m >= 1; --m)
          cross(bs + m - 1, CrossingOrigin::HandleBraid, -1, order[i].handle,
                bi++);
    }
  }

  // --- the glued right edge ----------------------------------------------

  std::vector<int> portVertexTop;     // per interval: vertex at its top end
  std::vector<int> portVertexBottom;  // per interval: vertex at its bottom end

  void buildSeams() {
    const auto& surf = d.cf.front.surface;
    const auto order = surf.intervalOrder();
    const double xSeam = column + 1;
    portVertexTop.assign(order.size(), -1);
    portVertexBottom.assign(order.size(), -1);

    for (int h = 0; h < surf.handleCount(); ++h) {
      const int iu = surf.intervalIndexOf(h, true);
      const int il = surf.intervalIndexOf(h, false);
      const int k = d.cf.front.ports[iu];

      // Fused interval ends: top of the upper copy with bottom of the
      // lower copy and vice versa.
      const int w0 = newVertex(VertexKind::IntervalEnd, 3, xSeam,
                               laneY(blockStart[iu]) + 0.5);
      const int w1 = newVertex(VertexKind::IntervalEnd, 3, xSeam,
                               laneY(blockStart[iu] + k - 1) - 0.5);
      d.vertices[w0].handle = h;
      d.vertices[w1].handle = h;
      portVertexTop[iu] = w0;
      portVertexBottom[il] = w0;
      portVertexBottom[iu] = w1;
      portVertexTop[il] = w1;

      // Fused port pairs: seam position m on the upper copy meets seam
      // position k+1-m on the lower copy.
      std::vector<int> port(k + 2, -1);
      for (int m = 1; m <= k; ++m) {
        const int v = newVertex(VertexKind::PortPair, 4, xSeam,
                                laneY(blockStart[iu] + m - 1));
        setOctants(v, {4, -1, 4, -1});
        d.vertices[v].handle = h;
        d.vertices[v].portPos = m;
        port[m] = v;
        const Lane& upLane = lanes[blockStart[iu] + m - 2];
        const Lane& lowLane = lanes[blockStart[il] + k - m - 1];
        addEdge(EdgeKind::Knot, upLane.vertex, upLane.germ, v, 2, upLane.piece);
        addEdge(EdgeKind::Knot, lowLane.vertex, lowLane.germ, v, 0,
                lowLane.piece);
      }
      for (int j = 0; j <= k; ++j) {
        const int u = j == 0 ? w0 : port[j];
        const int gu = j == 0 ? 1 : 3;
        const int v = j == k ? w1 : port[j + 1];
        const int gv = 1;
        addEdge(EdgeKind::Seam, u, gu, v, gv);
      }
    }
  }

  int cornerNE = -1, cornerNW = -1, cornerSW = -1, cornerSE = -1, auxAnchor = -1;

  void buildBorder() {
    const auto order = d.cf.front.surface.intervalOrder();
    const double xR = column + 1, xL = 0;
    double yBot = -1.0;
    for (const auto& v : d.vertices) yBot = std::min(yBot, v.y - 1.0);

    cornerNE = newVertex(VertexKind::Corner, 2, xR, 0);
    cornerNW = newVertex(VertexKind::Corner, 2, xL, 0);
    cornerSW = newVertex(VertexKind::Corner, 2, xL, yBot);
    cornerSE = newVertex(VertexKind::Corner, 2, xR, yBot);
    auxAnchor = newVertex(VertexKind::AuxAnchor, 3, xL,
                          d.vertices[firstApex].y);

    // Right edge: free arcs point north; arc i sits above interval i.
    const int n = static_cast<int>(order.size());
    for (int i = 0; i <= n; ++i) {
      const int south = i < n ? portVertexTop[i] : cornerSE;
      const int southGerm = 0;
      const int north = i == 0 ? cornerNE : portVertexBottom[i - 1];
      const int northGerm = i == 0 ? 1 : 2;
      addEdge(EdgeKind::Border, south, southGerm, north, northGerm);
    }
    addEdge(EdgeKind::Border, cornerNE, 0, cornerNW, 0);      // top, westward
    addEdge(EdgeKind::Border, cornerNW, 1, auxAnchor, 1);     // left, upper
    addEdge(EdgeKind::Border, auxAnchor, 2, cornerSW, 1);     // left, lower
    addEdge(EdgeKind::Border, cornerSW, 0, cornerSE, 1);      // bottom, eastward
    addEdge(EdgeKind::Aux, auxAnchor, 0, firstApex, 2);
  }

  // --- faces, regions, traversal ------------------------------------------

  void traceFaces() {
    d.faceOf.assign(2 * d.edges.size(), -1);
    for (int h = 0; h < static_cast<int>(2 * d.edges.size()); ++h) {
      if (!d.validHalfedge(h) || d.faceOf[h] != -1) continue;
      const int f = d.faceCount++;
      int cur = h;
      do {
        d.faceOf[cur] = f;
        cur = d.nextHalfedge(cur);
        check(cur >= 0, "internal-error", "face trace fell off the complex");
      } while (cur != h);
    }
  }

  void buildRegions() {
    std::vector<int> parent(d.faceCount);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int a) {
      while (parent[a] != a) a = parent[a] = parent[parent[a]];
      return a;
    };
    for (int e = 0; e < static_cast<int>(d.edges.size()); ++e) {
      const EdgeKind k = d.edges[e].kind;
      if (k == EdgeKind::Seam || k == EdgeKind::Aux)
        parent[find(d.faceOf[2 * e])] = find(d.faceOf[2 * e + 1]);
    }
    d.regionOf.assign(d.faceCount, -1);
    for (int f = 0; f < d.faceCount; ++f) {
      const int r = find(f);
      if (d.regionOf[r] == -1) d.regionOf[r] = d.regionCount++;
      d.regionOf[f] = d.regionOf[r];
    }
    d.regionUnbounded.assign(d.regionCount, 0);
    for (int e = 0; e < static_cast<int>(d.edges.size()); ++e)
      if (d.edges[e].kind == EdgeKind::Border)
        d.regionUnbounded[d.regionOf[d.faceOf[2 * e]]] = 1;
  }

  void traceKnot() {
    const int start = d.vertices[firstApex].rot[1].depart;
    int cur = start;
    do {
      d.knotSeq.push_back(cur);
      cur = d.knotNextHalfedge(cur);
    } while (cur != start);
    std::vector<int> seen(d.edges.size(), 0);
    for (int h : d.knotSeq) {
      check(d.edge(h).kind == EdgeKind::Knot, "internal-error",
            "knot traversal left the knot");
      seen[h / 2]++;
    }
    int knotEdges = 0;
    for (int e = 0; e < static_cast<int>(d.edges.size()); ++e)
      if (d.edges[e].kind == EdgeKind::Knot) {
        ++knotEdges;
        check(seen[e] == 1, "internal-error",
              "knot traversal missed or repeated an arc");
      }
    check(knotEdges == static_cast<int>(d.knotSeq.size()), "internal-error",
          "knot traversal length mismatch");
  }

  void run() {
    const auto order = d.cf.front.surface.intervalOrder();
    blockStart.assign(order.size(), 0);
    int at = 1;
    for (size_t i = 0; i < order.size(); ++i) {
      blockStart[i] = at;
      at += d.cf.front.ports[i];
    }
    buildColumns();
    buildSeams();
    buildBorder();
    traceFaces();
    buildRegions();
    traceKnot();

    const int expectedChi = 1 - d.cf.front.surface.handleCount();
    check(d.eulerCharacteristic() == expectedChi, "internal-error",
          "cell complex Euler characteristic " +
              std::to_string(d.eulerCharacteristic()) + " != " +
              std::to_string(expectedChi));
  }
};

}  // namespace detail

inline ResolvedDiagram resolve(const CompletedFront& cf) {
  detail::DiagramBuilder b;
  b.d.cf = cf;
  b.run();
  return std::move(b.d);
}

}  // namespace lch
