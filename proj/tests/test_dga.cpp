#include <string>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "fixtures.hpp"
#include "lch/dga.hpp"
#include "lch/disks.hpp"
#include "lch/grading.hpp"
#include "lch/resolution.hpp"
#include "lch/weights.hpp"

namespace {

using namespace fixtures;
using lch::AlgebraElement;
using lch::Ring;
using lch::Term;

const std::vector<const char*> kAllFixtures = {
    kUnknot,     kCurveC,      kCurveA,     kNestedCable,
    kSpiralThree, kSpiralFour, kAffineWord};

}  // namespace

TEST_CASE("algebra elements canonicalize, add, and multiply") {
  const Ring z = Ring::Z;

  SECTION("merging and ordering") {
    AlgebraElement x = lch::canonicalized(
        {Term{1, {2, 0}}, Term{1, {}}, Term{2, {1}}, Term{-1, {2, 0}},
         Term{1, {0}}, Term{3, {2, 0}}},
        z);
    REQUIRE(x.terms.size() == 4);
    CHECK(x.terms[0] == Term{1, {}});
    CHECK(x.terms[1] == Term{1, {0}});
    CHECK(x.terms[2] == Term{2, {1}});
    CHECK(x.terms[3] == Term{3, {2, 0}});
  }

  SECTION("zero coefficients vanish") {
    CHECK(lch::canonicalized({Term{1, {0}}, Term{-1, {0}}}, z).isZero());
    CHECK(lch::canonicalized({Term{1, {0}}, Term{1, {0}}}, Ring::Z2).isZero());
    CHECK(AlgebraElement::unit(0).isZero());
  }

  SECTION("multiplication concatenates words") {
    const AlgebraElement a =
        lch::add(AlgebraElement::unit(), AlgebraElement::generator(0), z);
    const AlgebraElement b =
        lch::add(AlgebraElement::generator(1), AlgebraElement::generator(2), z);
    const AlgebraElement p = lch::mul(a, b, z);
    REQUIRE(p.terms.size() == 4);
    CHECK(p.terms[0] == Term{1, {1}});
    CHECK(p.terms[1] == Term{1, {2}});
    CHECK(p.terms[2] == Term{1, {0, 1}});
    CHECK(p.terms[3] == Term{1, {0, 2}});
    CHECK(lch::mul(a, AlgebraElement::zero(), z).isZero());
  }

  SECTION("printing") {
    const std::vector<std::string> names = {"c1", "c2", "c3"};
    AlgebraElement x = lch::canonicalized(
        {Term{1, {}}, Term{-1, {0, 2}}, Term{2, {1}}}, z);
    CHECK(x.str(names) == "1 + 2 c2 + -c1 c3");
    CHECK(AlgebraElement::zero().str(names) == "0");
  }
}

TEST_CASE("unknot differential vanishes over both rings") {
  const auto d = resolved(kUnknot);
  const auto w = lch::compute_area_weights(d);
  const auto deg = lch::grade(d);

  const auto disks = lch::enumerate_disks(d, w, deg, 0);
  REQUIRE(disks.size() == 2);
  const auto shading = lch::shaded_quadrants(d);
  CHECK(lch::sign_of_disk(d, shading, disks[0]) *
            lch::sign_of_disk(d, shading, disks[1]) ==
        -1);

  CHECK(lch::differential(d, w, deg, Ring::Z2, 0).isZero());
  CHECK(lch::differential(d, w, deg, Ring::Z, 0).isZero());
}

TEST_CASE("teardrops contribute constant terms") {
  const auto d = resolved(kNestedCable);
  const auto dga = lch::compute_dga(d, Ring::Z2);
  REQUIRE(dga.generatorCount() == 3);
  CHECK(dga.differential[0] == AlgebraElement::unit());
  CHECK(dga.differential[1].isZero());
  CHECK(dga.differential[2] == AlgebraElement::unit());
}

TEST_CASE("spiral knots have zero differential") {
  for (const char* text : {kSpiralThree, kSpiralFour}) {
    const auto d = resolved(text);
    const auto dga = lch::compute_dga(d, Ring::Z);
    for (const auto& da : dga.differential) CHECK(da.isZero());
  }
}

TEST_CASE("the differential assembles exactly the enumerated disks") {
  const auto d = resolved(kAffineWord);
  const auto w = lch::compute_area_weights(d);
  const auto deg = lch::grade(d);
  const auto shading = lch::shaded_quadrants(d);
  for (Ring ring : {Ring::Z2, Ring::Z}) {
    for (int i = 0; i < static_cast<int>(d.crossings.size()); ++i) {
      std::vector<Term> raw;
      for (const auto& p : lch::enumerate_disks(d, w, deg, i)) {
        const long long c =
            ring == Ring::Z ? lch::sign_of_disk(d, shading, p) : 1;
        raw.push_back(Term{c, p.negativeWord});
      }
      CHECK(lch::differential(d, w, deg, ring, i) ==
            lch::canonicalized(std::move(raw), ring));
    }
  }
}

TEST_CASE("the differential verifies on every fixture over both rings") {
  for (const char* text : kAllFixtures) {
    for (Ring ring : {Ring::Z2, Ring::Z}) {
      const auto d = resolved(text);
      const auto dga = lch::compute_dga(d, ring);
      const auto report = lch::verify_dga(dga);
      INFO(std::string(text) + " over " + lch::ring_name(ring) + ": " +
           report.firstFailure);
      CHECK(report.ok);
      CHECK(report.firstFailure.empty());
    }
  }
}

TEST_CASE("the integral differential reduces mod 2 to the Z2 differential") {
  for (const char* text : kAllFixtures) {
    const auto d = resolved(text);
    const auto overZ = lch::compute_dga(d, Ring::Z);
    const auto overZ2 = lch::compute_dga(d, Ring::Z2);
    REQUIRE(overZ.generatorCount() == overZ2.generatorCount());
    for (int i = 0; i < overZ.generatorCount(); ++i)
      CHECK(lch::reduced_mod2(overZ.differential[i]) == overZ2.differential[i]);
  }
}

TEST_CASE("no differential contains its own generator as a length-1 term") {
  for (const char* text : kAllFixtures) {
    const auto d = resolved(text);
    const auto dga = lch::compute_dga(d, Ring::Z2);
    for (int i = 0; i < dga.generatorCount(); ++i)
      for (const Term& t : dga.differential[i].terms)
        CHECK(t.word != std::vector<int>{i});
  }
}

TEST_CASE("extension is linear and obeys the signed Leibniz rule") {
  const auto d = resolved(kAffineWord);

  for (Ring ring : {Ring::Z2, Ring::Z}) {
    const auto dga = lch::compute_dga(d, ring);
    const int n = dga.generatorCount();

    CHECK(lch::extend(dga, AlgebraElement::unit()).isZero());
    CHECK(lch::extend(dga, AlgebraElement::zero()).isZero());

    for (int a = 0; a < n; ++a) {
      CHECK(lch::extend(dga, AlgebraElement::generator(a)) ==
            dga.differential[a]);
      for (int b = 0; b < n; ++b) {
        const AlgebraElement ab = lch::mul(AlgebraElement::generator(a),
                                           AlgebraElement::generator(b), ring);
        const long long sgn =
            ring == Ring::Z && lch::emod(dga.degrees.raw[a], 2) != 0 ? -1 : 1;
        const AlgebraElement want = lch::add(
            lch::mul(dga.differential[a], AlgebraElement::generator(b), ring),
            lch::mul(AlgebraElement::generator(a, sgn), dga.differential[b],
                     ring),
            ring);
        CHECK(lch::extend(dga, ab) == want);
      }
    }

    // Linearity on a sum with coefficients.
    const AlgebraElement x =
        lch::add(AlgebraElement::unit(),
                 lch::mul(AlgebraElement::generator(0, 2),
                          AlgebraElement::generator(1), ring),
                 ring);
    const AlgebraElement viaSum = lch::extend(dga, x);
    const AlgebraElement direct = lch::extend(
        dga, lch::mul(AlgebraElement::generator(0, 2),
                      AlgebraElement::generator(1), ring));
    CHECK(viaSum == direct);
  }
}

TEST_CASE("verification reports the first counterexample") {
  lch::Dga dga;
  dga.ring = Ring::Z;
  dga.maslov = 0;
  dga.names = {"a", "b"};
  dga.degrees.maslov = 0;
  dga.degrees.raw = {2, 1};
  dga.degrees.degrees = {2, 1};

  SECTION("a consistent toy passes") {
    dga.differential = {AlgebraElement::generator(1), AlgebraElement::zero()};
    const auto report = lch::verify_dga(dga);
    CHECK(report.ok);
  }

  SECTION("a differential that fails to square to zero is caught") {
    dga.differential = {AlgebraElement::generator(1), AlgebraElement::unit()};
    const auto report = lch::verify_dga(dga);
    CHECK_FALSE(report.ok);
    CHECK(report.firstFailure == "d(d(a)) = 1");
  }

  SECTION("a degree slip is caught") {
    dga.differential = {AlgebraElement::unit(), AlgebraElement::zero()};
    const auto report = lch::verify_dga(dga);
    CHECK_FALSE(report.ok);
    CHECK(report.firstFailure.find("degree") != std::string::npos);
  }

  SECTION("a sign slip that breaks the square is caught") {
    // d(a) = b + b is zero over Z2 but not over Z; squaring d(a) = 2b
    // against d(b) = 1 leaves a constant.
    dga.differential = {
        lch::canonicalized({Term{2, {1}}}, Ring::Z),
        AlgebraElement::unit()};
    const auto report = lch::verify_dga(dga);
    CHECK_FALSE(report.ok);
    CHECK(report.firstFailure.find("d(d(") != std::string::npos);
  }
}
