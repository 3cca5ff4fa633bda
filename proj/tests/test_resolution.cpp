#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "lch/front_io.hpp"
#include "lch/resolution.hpp"

namespace {

lch::CompletedFront completed(const std::string& text) {
  return lch::complete_prefront(lch::parse_front(text));
}

// Pieces appear along the knot traversal in contiguous runs; collapsing
// the runs must reproduce the traversal computed on the front itself.
void checkPieceOrder(const lch::ResolvedDiagram& d) {
  std::vector<int> seq;
  for (int h : d.knotSeq) {
    const int p = d.edge(h).piece;
    if (seq.empty() || seq.back() != p) seq.push_back(p);
  }
  while (seq.size() > 1 && seq.front() == seq.back()) seq.pop_back();
  std::vector<int> expect;
  for (const auto& leg : d.cf.pieceOrder) expect.push_back(leg);
  REQUIRE(seq == expect);
}

const char* kUnknot =
    "surface genus=0 punctures=0\n"
    "events: L1 R1\n"
    "ports:\n";

const char* kCurveC =
    "surface genus=0 punctures=1\n"
    "handle c kind=annulus twist=0\n"
    "events: L1\n"
    "ports: c.upper=1 c.lower=1\n";

const char* kCurveA =
    "surface genus=1 punctures=0\n"
    "handle u kind=torus twist=0\n"
    "handle v kind=torus twist=0\n"
    "events: L1 L2\n"
    "ports: u.upper=1 v.upper=1 u.lower=1 v.lower=1\n";

const char* kThreeStrand =
    "surface genus=0 punctures=1\n"
    "handle c kind=annulus twist=0\n"
    "events: L1 L1 L1\n"
    "ports: c.upper=3 c.lower=3\n";

const char* kAffineWord =
    "surface genus=0 punctures=0\n"
    "events: L1 L2 X2 X1 X2 R2 R1\n"
    "ports:\n";

}  // namespace

TEST_CASE("unknot resolves to the one-crossing loop diagram") {
  const auto d = lch::resolve(completed(kUnknot));

  REQUIRE(d.crossings.size() == 1);
  CHECK(d.crossings[0].origin == lch::CrossingOrigin::CuspLoop);
  CHECK_FALSE(d.crossings[0].upperIsNE);
  CHECK(d.crossings[0].name == "c1");

  CHECK(d.vertices.size() == 8);
  CHECK(d.edges.size() == 10);
  CHECK(d.faceCount == 3);
  CHECK(d.eulerCharacteristic() == 1);

  REQUIRE(d.regionCount == 3);
  int unbounded = 0;
  for (char u : d.regionUnbounded) unbounded += u;
  CHECK(unbounded == 1);

  // Both teardrop quadrants (east and west) are positive and bounded; the
  // north and south quadrants open into the unbounded region.
  const int v = d.crossings[0].vertex;
  CHECK(d.quadrantPositive(0, 1));
  CHECK(d.quadrantPositive(0, 3));
  CHECK_FALSE(d.quadrantPositive(0, 0));
  CHECK_FALSE(d.quadrantPositive(0, 2));
  for (int q = 0; q < 4; ++q) {
    const int f = d.sectorFace(v, q);
    REQUIRE(f >= 0);
    const bool unb = d.regionUnbounded[d.regionOf[f]];
    CHECK(unb == !d.quadrantPositive(0, q));
  }

  CHECK(d.knotSeq.size() == 4);
  checkPieceOrder(d);
}

TEST_CASE("annulus core curve resolves without crossings") {
  const auto d = lch::resolve(completed(kCurveC));

  CHECK(d.crossings.empty());
  CHECK(d.vertices.size() == 9);
  CHECK(d.edges.size() == 12);
  CHECK(d.eulerCharacteristic() == 0);
  REQUIRE(d.regionCount == 2);
  CHECK(d.regionUnbounded[0]);
  CHECK(d.regionUnbounded[1]);
  CHECK(d.knotSeq.size() == 2);
  checkPieceOrder(d);
}

TEST_CASE("torus diagonal curve resolves without crossings") {
  const auto d = lch::resolve(completed(kCurveA));

  CHECK(d.crossings.empty());
  CHECK(d.eulerCharacteristic() == -1);
  REQUIRE(d.regionCount == 1);
  CHECK(d.regionUnbounded[0]);
  CHECK(d.knotSeq.size() == 4);
  checkPieceOrder(d);
}

TEST_CASE("handle with k strands inserts a half twist of k(k-1)/2 crossings") {
  const auto cf = completed(kThreeStrand);
  const auto d = lch::resolve(cf);

  REQUIRE(d.crossings.size() == 3);
  for (int i = 0; i < 3; ++i) {
    CHECK(d.crossings[i].origin == lch::CrossingOrigin::HandleBraid);
    CHECK(d.crossings[i].handle == 0);
    CHECK(d.crossings[i].braidIndex == i);
    // Every pair enters the braid already sorted by height, so the strand
    // from the smaller final slot passes over at each crossing.
    CHECK_FALSE(d.crossings[i].upperIsNE);
  }
  CHECK(d.eulerCharacteristic() == 0);
  CHECK(d.knotSeq.size() == 12);
  checkPieceOrder(d);
}

TEST_CASE("front crossings and cusp loops both become generators") {
  const auto cf = completed(kAffineWord);
  const auto d = lch::resolve(cf);

  REQUIRE(d.crossings.size() == 5);
  int fromX = 0, fromR = 0;
  for (const auto& c : d.crossings) {
    if (c.origin == lch::CrossingOrigin::FrontCrossing) {
      ++fromX;
      CHECK(c.upperIsNE == !lch::kFrontCrossingUpperIsDescending);
    }
    if (c.origin == lch::CrossingOrigin::CuspLoop) {
      ++fromR;
      CHECK_FALSE(c.upperIsNE);
    }
  }
  CHECK(fromX == 3);
  CHECK(fromR == 2);
  CHECK(d.eulerCharacteristic() == 1);
  checkPieceOrder(d);

  // Four distinct sectors meet every crossing.
  for (const auto& c : d.crossings) {
    std::set<int> faces;
    for (int q = 0; q < 4; ++q) {
      const int f = d.sectorFace(c.vertex, q);
      REQUIRE(f >= 0);
      faces.insert(f);
    }
    CHECK(faces.size() >= 2);
  }
}

TEST_CASE("resolution is deterministic") {
  for (const char* text : {kUnknot, kCurveC, kCurveA, kThreeStrand, kAffineWord}) {
    const auto a = lch::resolve(completed(text));
    const auto b = lch::resolve(completed(text));
    CHECK(a.vertices.size() == b.vertices.size());
    CHECK(a.edges.size() == b.edges.size());
    CHECK(a.faceCount == b.faceCount);
    CHECK(a.regionCount == b.regionCount);
    REQUIRE(a.crossings.size() == b.crossings.size());
    for (size_t i = 0; i < a.crossings.size(); ++i) {
      CHECK(a.crossings[i].name == b.crossings[i].name);
      CHECK(a.crossings[i].upperIsNE == b.crossings[i].upperIsNE);
    }
    CHECK(a.knotSeq == b.knotSeq);
  }
}
