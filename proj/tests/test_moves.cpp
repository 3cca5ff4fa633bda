#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "lch/front_io.hpp"
#include "lch/grading.hpp"
#include "lch/linearize.hpp"
#include "lch/moves.hpp"
#include "lch/resolution.hpp"

using namespace lch;
using namespace fixtures;

namespace {

InvariantReport reportOf(const FrontDiagram& f) {
  return invariant_report(resolve(complete_prefront(f)));
}

void requireSameInvariants(const FrontDiagram& a, const FrontDiagram& b) {
  const auto ra = reportOf(a), rb = reportOf(b);
  INFO("left:  " << serialize_front(a));
  INFO("right: " << serialize_front(b));
  const auto verdict = compare(ra, rb);
  CHECK_FALSE(verdict.distinguished);
  CHECK(verdict.str() == "indistinguishable-by-these-invariants");
}

}  // namespace

TEST_CASE("the unknot admits exactly the four kink insertions") {
  const FrontDiagram unknot = parse_front(kUnknot);
  const auto sites = available_moves(unknot);
  REQUIRE(sites.size() == 4);
  for (const auto& s : sites) {
    CHECK(s.kind == MoveKind::FrontR1);
    CHECK_FALSE(s.reverse);
    CHECK(s.position == 1);
  }

  const FrontDiagram kinked = apply_move(unknot, sites[0]);
  REQUIRE(kinked.events ==
          std::vector<Event>{L(1), L(2), X(1), R(2), R(1)});
  int lefts = 0, rights = 0, crossings = 0;
  for (const auto& e : kinked.events) {
    lefts += e.type == EventType::LeftCusp;
    rights += e.type == EventType::RightCusp;
    crossings += e.type == EventType::Crossing;
  }
  CHECK(lefts == 2);
  CHECK(rights == 2);
  CHECK(crossings == 1);

  const auto classical = classical_report(resolve(complete_prefront(kinked)));
  CHECK(classical.generatorCount == 3);
  requireSameInvariants(unknot, kinked);

  const auto inverse = inverse_site(sites[0], kinked);
  CHECK(apply_move(kinked, inverse) == unknot);
}

TEST_CASE("a cusp slide expands and contracts around both cusp types") {
  // Give the affine front a cusp with a neighbouring strand and walk every
  // expansion/contraction pair found on it.
  const FrontDiagram base = parse_front(kAffineWord);
  const auto sites = available_moves(base);
  int expansions = 0;
  for (const auto& s : sites) {
    if (s.kind != MoveKind::FrontR2 || s.reverse) continue;
    ++expansions;
    const FrontDiagram wide = apply_move(base, s);
    CHECK(wide.events.size() == base.events.size() + 2);
    const auto back = inverse_site(s, wide);
    CHECK(back.reverse);
    CHECK(apply_move(wide, back) == base);
    requireSameInvariants(base, wide);
  }
  REQUIRE(expansions > 0);
}

TEST_CASE("the braid relation slides a strand across a crossing") {
  // L1 L1 gives four strands; crossings 2,3,2 form a sliding triple.
  FrontDiagram f = parse_front(kUnknot);
  f.events = {L(1), L(1), X(2), X(3), X(2), R(3), R(1)};
  complete_prefront(f);

  const auto sites = available_moves(f);
  const auto it = std::find_if(sites.begin(), sites.end(), [](const MoveSite& s) {
    return s.kind == MoveKind::FrontR3;
  });
  REQUIRE(it != sites.end());
  CHECK(it->position == 2);
  CHECK(it->slot == 2);
  CHECK(it->variant == 0);

  const FrontDiagram slid = apply_move(f, *it);
  CHECK(slid.events ==
        std::vector<Event>{L(1), L(1), X(3), X(2), X(3), R(3), R(1)});
  CHECK(apply_move(slid, inverse_site(*it, slid)) == f);
  requireSameInvariants(f, slid);
}

TEST_CASE("a trailing crossing rides through the handle and back") {
  const FrontDiagram spiral = parse_front(kSpiralThree);
  const auto sites = available_moves(spiral);
  const auto it = std::find_if(sites.begin(), sites.end(), [](const MoveSite& s) {
    return s.kind == MoveKind::HandleCross;
  });
  REQUIRE(it != sites.end());
  CHECK(it->variant == 1);  // the crossing starts between lower endpoints
  CHECK(it->handle == 0);

  const FrontDiagram moved = apply_move(spiral, *it);
  CHECK(moved.events == std::vector<Event>{L(1), L(2), L(3), X(1)});
  CHECK(moved.ports == spiral.ports);

  const auto back = inverse_site(*it, moved);
  CHECK(back.variant == 0);
  CHECK(back.slot == 1);
  CHECK(apply_move(moved, back) == spiral);
  requireSameInvariants(spiral, moved);
}

TEST_CASE("a trailing right cusp transfers across the identification") {
  // Kink the annulus core curve so that the word ends with a right cusp.
  const FrontDiagram curve = parse_front(kCurveC);
  FrontDiagram kinked = curve;
  kinked.events = {L(1), L(2), X(1), R(2)};
  complete_prefront(kinked);
  requireSameInvariants(curve, kinked);

  const auto sites = available_moves(kinked);
  std::vector<MoveSite> pushes;
  for (const auto& s : sites)
    if (s.kind == MoveKind::HandleCusp) pushes.push_back(s);
  REQUIRE(pushes.size() == 2);  // the cusp can enter either mouth
  for (const auto& s : pushes) {
    CHECK_FALSE(s.reverse);
    const FrontDiagram through = apply_move(kinked, s);
    CHECK(through.events.back().type == EventType::LeftCusp);
    CHECK(through.ports == std::vector<int>{3, 3});
    requireSameInvariants(curve, through);

    const auto back = inverse_site(s, through);
    CHECK(back.reverse);
    CHECK(apply_move(through, back) == kinked);
  }

  // Into the upper mouth: strands stay at slots 2,3 and the new left cusp
  // lands on the lower block.
  const FrontDiagram up = apply_move(kinked, pushes[0]);
  CHECK(up.events == std::vector<Event>{L(1), L(2), X(1), L(5)});
  const FrontDiagram down = apply_move(kinked, pushes[1]);
  CHECK(down.events == std::vector<Event>{L(1), L(2), X(1), L(1)});
}

TEST_CASE("sites that do not match the front are rejected") {
  const FrontDiagram unknot = parse_front(kUnknot);

  CHECK_THROWS_MATCHES(
      apply_move(unknot, MoveSite{MoveKind::FrontR1, true, 0, 1, 0, -1}),
      Error, Catch::Matchers::Predicate<Error>([](const Error& e) {
        return e.kind() == "inapplicable-site";
      }));
  CHECK_THROWS_MATCHES(
      apply_move(unknot, MoveSite{MoveKind::HandleCross, false, 1, 1, 0, 0}),
      Error, Catch::Matchers::Predicate<Error>([](const Error& e) {
        return e.kind() == "inapplicable-site";
      }));

  // A site harvested from another front does not transfer.
  const auto spiralSites = available_moves(parse_front(kSpiralThree));
  const auto it = std::find_if(
      spiralSites.begin(), spiralSites.end(),
      [](const MoveSite& s) { return s.kind == MoveKind::HandleCross; });
  REQUIRE(it != spiralSites.end());
  CHECK_THROWS_MATCHES(
      apply_move(unknot, *it), Error,
      Catch::Matchers::Predicate<Error>(
          [](const Error& e) { return e.kind() == "inapplicable-site"; }));
}

TEST_CASE("every reported site applies and undoes itself") {
  const std::vector<const char*> corpus = {kUnknot, kCurveC, kCurveA,
                                           kSpiralThree, kAffineWord};
  std::mt19937 rng(0x5eed);
  int pairs = 0;
  for (const char* text : corpus) {
    FrontDiagram cur = parse_front(text);
    for (int step = 0; step < 25; ++step) {
      const auto sites = available_moves(cur);
      REQUIRE_FALSE(sites.empty());
      const MoveSite pick = sites[rng() % sites.size()];
      INFO("front " << serialize_front(cur));
      INFO("site  " << pick.str());
      const FrontDiagram next = apply_move(cur, pick);
      const MoveSite back = inverse_site(pick, next);
      REQUIRE(apply_move(next, back) == cur);
      ++pairs;
      cur = next;
    }
  }
  CHECK(pairs == 125);
}

TEST_CASE("random move sequences leave every invariant unchanged") {
  struct Case {
    const char* text;
    int steps;
    unsigned seed;
  };
  const std::vector<Case> cases = {{kUnknot, 10, 2026},
                                   {kCurveC, 10, 814},
                                   {kSpiralThree, 8, 41}};
  for (const auto& c : cases) {
    const FrontDiagram base = parse_front(c.text);
    const auto baseReport = reportOf(base);
    const auto trace = fuzz(base, c.steps, c.seed);
    REQUIRE(trace.fronts.size() == static_cast<size_t>(c.steps) + 1);
    for (size_t k = 1; k < trace.fronts.size(); ++k) {
      INFO("step " << k << " site " << trace.sites[k - 1].str());
      INFO("front " << serialize_front(trace.fronts[k]));
      const auto moved = reportOf(trace.fronts[k]);
      const auto verdict = compare(baseReport, moved);
      REQUIRE_FALSE(verdict.distinguished);
      CHECK(moved.homologyClass == baseReport.homologyClass);
      CHECK(moved.maslov == baseReport.maslov);
      CHECK(moved.polynomialSet == baseReport.polynomialSet);
    }
  }
}

TEST_CASE("fuzz traces are reproducible from their seed") {
  const FrontDiagram base = parse_front(kCurveC);
  const auto a = fuzz(base, 6, 97);
  const auto b = fuzz(base, 6, 97);
  REQUIRE(a.fronts.size() == b.fronts.size());
  for (size_t k = 0; k < a.fronts.size(); ++k)
    CHECK(serialize_front(a.fronts[k]) == serialize_front(b.fronts[k]));
  REQUIRE(a.sites.size() == b.sites.size());
  for (size_t k = 0; k < a.sites.size(); ++k)
    CHECK(a.sites[k] == b.sites[k]);
}
