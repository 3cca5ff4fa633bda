#pragma once

// Shared front-word fixtures for the test suite.

#include <string>

#include "lch/front_io.hpp"
#include "lch/resolution.hpp"

namespace fixtures {

inline lch::ResolvedDiagram resolved(const std::string& text) {
  return lch::resolve(lch::complete_prefront(lch::parse_front(text)));
}

inline const char* kUnknot =
    "surface genus=0 punctures=0\n"
    "events: L1 R1\n"
    "ports:\n";

inline const char* kCurveC =
    "surface genus=0 punctures=1\n"
    "handle c kind=annulus twist=0\n"
    "events: L1\n"
    "ports: c.upper=1 c.lower=1\n";

inline const char* kCurveA =
    "surface genus=1 punctures=0\n"
    "handle u kind=torus twist=0\n"
    "handle v kind=torus twist=0\n"
    "events: L1 L2\n"
    "ports: u.upper=1 v.upper=1 u.lower=1 v.lower=1\n";

// Nested caps feeding straight into the half twist: has teardrops, one of
// them passing through the handle.
inline const char* kNestedCable =
    "surface genus=0 punctures=1\n"
    "handle c kind=annulus twist=0\n"
    "events: L1 L1 L1\n"
    "ports: c.upper=3 c.lower=3\n";

// The spiral three-strand knot in three times the core class: each cap
// joins one turn of the spiral to the next.
inline const char* kSpiralThree =
    "surface genus=0 punctures=1\n"
    "handle c kind=annulus twist=0\n"
    "events: L1 L2 L3 X4\n"
    "ports: c.upper=3 c.lower=3\n";

// The same spiral with four strands.
inline const char* kSpiralFour =
    "surface genus=0 punctures=1\n"
    "handle c kind=annulus twist=0\n"
    "events: L1 L2 L3 L4 X5 X6 X5\n"
    "ports: c.upper=4 c.lower=4\n";

inline const char* kAffineWord =
    "surface genus=0 punctures=0\n"
    "events: L1 L2 X2 X1 X2 R2 R1\n"
    "ports:\n";

}  // namespace fixtures
