#pragma once

#include <string>
#include <vector>

#include "lch/common.hpp"

namespace lch {

enum class HandleKind { Annulus, Torus };

struct HandleSpec {
  std::string id;
  HandleKind kind = HandleKind::Annulus;
  long long twist = 0;  // trivialization twist t_h along the handle

  bool operator==(const HandleSpec&) const = default;
};

// One end of a handle. Every handle owns two marked intervals on the right
// edge of the square; the global top-to-bottom interval order is fixed by
// intervalOrder() below.
struct IntervalRef {
  int handle = -1;
  bool upper = true;

  bool operator==(const IntervalRef&) const = default;
};

// The square model of the surface: a square with handleCount() = p + 2g
// attached handles. Annulus handles sit above torus handles; each annulus
// handle contributes an adjacent [upper, lower] interval pair, while the
// two handles of a torus pair interleave their intervals (U1 U2 L1 L2) so
// that each pair adds a genus instead of a puncture.
struct SurfaceSpec {
  int genus = 0;
  int punctures = 0;  // p; the surface itself has p + 1 ends
  std::vector<HandleSpec> handles;

  bool operator==(const SurfaceSpec&) const = default;

  int handleCount() const { return static_cast<int>(handles.size()); }

  void validate() const {
    check(genus >= 0 && punctures >= 0, "bad-surface",
          "genus and punctures must be nonnegative");
    check(handleCount() == punctures + 2 * genus, "bad-surface",
          "expected " + std::to_string(punctures + 2 * genus) +
              " handles, got " + std::to_string(handleCount()));
    for (int i = 0; i < handleCount(); ++i) {
      const bool wantAnnulus = i < punctures;
      check((handles[i].kind == HandleKind::Annulus) == wantAnnulus,
            "bad-surface",
            "handle '" + handles[i].id +
                "': annulus handles must precede torus handles");
      check(!handles[i].id.empty(), "bad-surface", "handle id must be nonempty");
      for (int j = 0; j < i; ++j)
        check(handles[j].id != handles[i].id, "bad-surface",
              "duplicate handle id '" + handles[i].id + "'");
    }
  }

  // Global top-to-bottom order of the marked intervals on the right edge.
  std::vector<IntervalRef> intervalOrder() const {
    std::vector<IntervalRef> order;
    for (int i = 0; i < punctures; ++i) {
      order.push_back({i, true});
      order.push_back({i, false});
    }
    for (int g = 0; g < genus; ++g) {
      const int h1 = punctures + 2 * g, h2 = h1 + 1;
      order.push_back({h1, true});
      order.push_back({h2, true});
      order.push_back({h1, false});
      order.push_back({h2, false});
    }
    return order;
  }

  int intervalCount() const { return 2 * handleCount(); }

  int intervalIndexOf(int handle, bool upper) const {
    auto order = intervalOrder();
    for (int i = 0; i < static_cast<int>(order.size()); ++i)
      if (order[i].handle == handle && order[i].upper == upper) return i;
    fail("bad-surface", "interval not found");
  }

  int handleIndexOf(const std::string& id) const {
    for (int i = 0; i < handleCount(); ++i)
      if (handles[i].id == id) return i;
    return -1;
  }

  std::string intervalName(const IntervalRef& ref) const {
    return handles[ref.handle].id + (ref.upper ? ".upper" : ".lower");
  }
};

// First homology of the thickened surface: one free factor per annulus
// handle, one (a, b) pair per torus handle pair. Entries are signed handle
// passage counts of an oriented curve.
struct H1Class {
  std::vector<long long> coords;  // c_1..c_p, a_1, b_1, .., a_g, b_g

  bool operator==(const H1Class&) const = default;

  bool isZero() const {
    for (long long c : coords)
      if (c != 0) return false;
    return true;
  }

  H1Class negated() const {
    H1Class out = *this;
    for (auto& c : out.coords) c = -c;
    return out;
  }

  std::string str() const {
    std::string s = "(";
    for (size_t i = 0; i < coords.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(coords[i]);
    }
    return s + ")";
  }
};

}  // namespace lch
