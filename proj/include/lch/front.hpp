#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lch/surface.hpp"

namespace lch {

enum class EventType { LeftCusp, RightCusp, Crossing };

// One elementary column of a front word, acting on 1-based strand slots
// counted from the top. LeftCusp(i) inserts two strands at slots i, i+1;
// RightCusp(i) joins and removes slots i, i+1; Crossing(i) transposes them.
struct Event {
  EventType type = EventType::LeftCusp;
  int slot = 1;

  bool operator==(const Event&) const = default;
};

inline Event L(int i) { return {EventType::LeftCusp, i}; }
inline Event R(int i) { return {EventType::RightCusp, i}; }
inline Event X(int i) { return {EventType::Crossing, i}; }

inline std::string eventToken(const Event& e) {
  const char* k = e.type == EventType::LeftCusp
                      ? "L"
                      : (e.type == EventType::RightCusp ? "R" : "X");
  return k + std::to_string(e.slot);
}

// A combinatorial front: surface, event word, and the number of final
// strand endpoints terminating on each marked interval (top-to-bottom
// consecutive blocks, listed in the global interval order).
struct FrontDiagram {
  SurfaceSpec surface;
  std::vector<Event> events;
  std::vector<int> ports;

  bool operator==(const FrontDiagram&) const = default;

  int portTotal() const {
    int t = 0;
    for (int c : ports) t += c;
    return t;
  }
};

struct Diagnostic {
  std::string tag;
  std::string message;
};

struct ValidationReport {
  bool admissible = false;
  int completedComponents = 0;
  std::vector<Diagnostic> errors;

  std::string summary() const {
    if (admissible) return "admissible";
    std::string s;
    for (const auto& d : errors) {
      if (!s.empty()) s += "; ";
      s += d.tag + ": " + d.message;
    }
    return s;
  }
};

namespace detail {

// Runs the event word. A "piece" is a maximal smooth strand segment: born
// at a left cusp (its west end) and ending either at a right cusp or on a
// marked interval (its east end).
struct FrontSimulation {
  int pieceCount = 0;
  std::vector<int> finalSlots;       // piece id per final slot, top-down
  std::vector<int> westSibling;      // piece joined at the birth cusp
  std::vector<int> eastCuspPartner;  // piece joined at a right cusp, or -1
  std::vector<int> eastPortSlot;     // 1-based final slot, or -1
  std::vector<int> birthEvent;       // event index of the west cusp
  std::vector<int> deathEvent;       // event index of the east cusp, or -1
  std::optional<Diagnostic> problem;
};

inline FrontSimulation simulate(const std::vector<Event>& events) {
  FrontSimulation sim;
  std::vector<int> slots;
  auto bad = [&](int at, const std::string& msg) {
    sim.problem = Diagnostic{"ill-formed-event",
                             "event " + std::to_string(at + 1) + " (" +
                                 eventToken(events[at]) + "): " + msg};
  };
  for (int t = 0; t < static_cast<int>(events.size()); ++t) {
    const Event& e = events[t];
    const int n = static_cast<int>(slots.size());
    if (e.type == EventType::LeftCusp) {
      if (e.slot < 1 || e.slot > n + 1) {
        bad(t, "cusp slot out of range 1.." + std::to_string(n + 1));
        return sim;
      }
      const int a = sim.pieceCount++, b = sim.pieceCount++;
      slots.insert(slots.begin() + (e.slot - 1), {a, b});
      sim.westSibling.insert(sim.westSibling.end(), {b, a});
      sim.eastCuspPartner.insert(sim.eastCuspPartner.end(), {-1, -1});
      sim.eastPortSlot.insert(sim.eastPortSlot.end(), {-1, -1});
      sim.birthEvent.insert(sim.birthEvent.end(), {t, t});
      sim.deathEvent.insert(sim.deathEvent.end(), {-1, -1});
    } else {
      if (e.slot < 1 || e.slot + 1 > n) {
        bad(t, "needs strands at slots " + std::to_string(e.slot) + "," +
                   std::to_string(e.slot + 1) + " but only " +
                   std::to_string(n) + " present");
        return sim;
      }
      if (e.type == EventType::Crossing) {
        std::swap(slots[e.slot - 1], slots[e.slot]);
      } else {
        const int a = slots[e.slot - 1], b = slots[e.slot];
        sim.eastCuspPartner[a] = b;
        sim.eastCuspPartner[b] = a;
        sim.deathEvent[a] = sim.deathEvent[b] = t;
        slots.erase(slots.begin() + (e.slot - 1), slots.begin() + (e.slot + 1));
      }
    }
  }
  sim.finalSlots = slots;
  for (int s = 0; s < static_cast<int>(slots.size()); ++s)
    sim.eastPortSlot[slots[s]] = s + 1;
  return sim;
}

}  // namespace detail

// A front whose interval endpoints have been identified: for each handle
// the j-th endpoint from the top of the upper interval is matched with the
// j-th endpoint from the top of the lower interval (heights are carried
// through the handle, so the matching preserves the top-to-bottom order),
// and the resulting closed traversal is a single circle.
struct CompletedFront {
  FrontDiagram front;
  detail::FrontSimulation sim;
  std::vector<int> blockStart;    // per interval: first final slot (1-based)
  std::vector<int> partnerSlot;   // per final slot (1-based values)
  std::vector<int> handleOfSlot;  // handle index per final slot
  std::vector<bool> slotOnUpper;  // whether the slot sits on an upper interval

  // Traversal in the canonical orientation (east along the upper strand of
  // the first left cusp): pieces in visit order with their direction.
  std::vector<int> pieceOrder;
  std::vector<bool> pieceEast;

  int strandCount() const { return static_cast<int>(sim.finalSlots.size()); }

  // Signed handle passages in traversal order: (handle, +1 if the
  // traversal enters the handle at its upper interval).
  std::vector<std::pair<int, int>> passages(bool reversed = false) const {
    std::vector<std::pair<int, int>> out;
    for (size_t k = 0; k < pieceOrder.size(); ++k) {
      const int p = pieceOrder[k];
      if (pieceEast[k] && sim.eastPortSlot[p] != -1 &&
          sim.eastCuspPartner[p] == -1) {
        const int s = sim.eastPortSlot[p] - 1;
        out.push_back({handleOfSlot[s], slotOnUpper[s] ? 1 : -1});
      }
    }
    if (reversed) {
      std::reverse(out.begin(), out.end());
      for (auto& pr : out) pr.second = -pr.second;
    }
    return out;
  }
};

namespace detail {

// Fills the port pairing tables of a CompletedFront whose front and sim
// are already set. Assumes per-handle counts match.
inline void buildPairing(CompletedFront& cf) {
  const auto& front = cf.front;
  const auto order = front.surface.intervalOrder();
  cf.blockStart.assign(order.size(), 0);
  int at = 1;
  for (size_t i = 0; i < order.size(); ++i) {
    cf.blockStart[i] = at;
    at += front.ports[i];
  }
  const int n = cf.strandCount();
  cf.partnerSlot.assign(n, 0);
  cf.handleOfSlot.assign(n, -1);
  cf.slotOnUpper.assign(n, false);
  for (int h = 0; h < front.surface.handleCount(); ++h) {
    const int iu = front.surface.intervalIndexOf(h, true);
    const int il = front.surface.intervalIndexOf(h, false);
    const int k = front.ports[iu];
    for (int j = 0; j < k; ++j) {
      const int su = cf.blockStart[iu] + j, sl = cf.blockStart[il] + j;
      cf.partnerSlot[su - 1] = sl;
      cf.partnerSlot[sl - 1] = su;
      cf.handleOfSlot[su - 1] = h;
      cf.handleOfSlot[sl - 1] = h;
      cf.slotOnUpper[su - 1] = true;
      cf.slotOnUpper[sl - 1] = false;
    }
  }
}

// Cycles of the completed curve as (piece, heading east) runs.
inline std::vector<std::vector<std::pair<int, bool>>> curveCycles(
    const CompletedFront& cf) {
  const auto& sim = cf.sim;
  std::vector<std::vector<std::pair<int, bool>>> cycles;
  std::vector<bool> seen(sim.pieceCount, false);
  for (int start = 0; start < sim.pieceCount; ++start) {
    if (seen[start]) continue;
    std::vector<std::pair<int, bool>> cyc;
    int p = start;
    bool east = true;
    do {
      seen[p] = true;
      cyc.push_back({p, east});
      if (east) {
        if (sim.eastCuspPartner[p] != -1) {
          p = sim.eastCuspPartner[p];
        } else {
          const int s = sim.eastPortSlot[p] - 1;
          p = cf.sim.finalSlots[cf.partnerSlot[s] - 1];
        }
        east = false;
      } else {
        p = sim.westSibling[p];
        east = true;
      }
    } while (p != start || !east);
    cycles.push_back(std::move(cyc));
  }
  return cycles;
}

}  // namespace detail

inline ValidationReport validate_prefront(const FrontDiagram& front) {
  ValidationReport rep;
  try {
    front.surface.validate();
  } catch (const Error& e) {
    rep.errors.push_back({"bad-surface", e.what()});
    return rep;
  }
  if (static_cast<int>(front.ports.size()) != front.surface.intervalCount()) {
    rep.errors.push_back(
        {"port-mismatch", "expected one port count per interval (" +
                              std::to_string(front.surface.intervalCount()) +
                              "), got " + std::to_string(front.ports.size())});
    return rep;
  }
  for (int c : front.ports)
    if (c < 0) {
      rep.errors.push_back({"port-mismatch", "negative port count"});
      return rep;
    }

  auto sim = detail::simulate(front.events);
  if (sim.problem) {
    rep.errors.push_back(*sim.problem);
    return rep;
  }
  const int n = static_cast<int>(sim.finalSlots.size());
  if (n != front.portTotal())
    rep.errors.push_back(
        {"port-mismatch", "front ends with " + std::to_string(n) +
                              " strands but intervals carry " +
                              std::to_string(front.portTotal()) + " endpoints"});

  const auto order = front.surface.intervalOrder();
  std::vector<int> upperCnt(front.surface.handleCount(), 0);
  std::vector<int> lowerCnt(front.surface.handleCount(), 0);
  for (size_t i = 0; i < order.size(); ++i)
    (order[i].upper ? upperCnt : lowerCnt)[order[i].handle] += front.ports[i];
  for (int h = 0; h < front.surface.handleCount(); ++h)
    if (upperCnt[h] != lowerCnt[h])
      rep.errors.push_back(
          {"port-mismatch",
           "handle '" + front.surface.handles[h].id + "' has " +
               std::to_string(upperCnt[h]) + " endpoints on the upper and " +
               std::to_string(lowerCnt[h]) + " on the lower interval"});

  rep.admissible = rep.errors.empty();
  if (rep.admissible && sim.pieceCount > 0) {
    CompletedFront cf;
    cf.front = front;
    cf.sim = std::move(sim);
    detail::buildPairing(cf);
    rep.completedComponents =
        static_cast<int>(detail::curveCycles(cf).size());
  }
  return rep;
}

inline CompletedFront complete_prefront(const FrontDiagram& front) {
  auto rep = validate_prefront(front);
  check(rep.admissible, "not-admissible", rep.summary());

  CompletedFront cf;
  cf.front = front;
  cf.sim = detail::simulate(front.events);
  check(cf.sim.pieceCount > 0, "empty-front", "front has no strands");
  detail::buildPairing(cf);

  auto cycles = detail::curveCycles(cf);
  if (cycles.size() != 1)
    fail("multiple-components",
         "prefront completes to " + std::to_string(cycles.size()) +
             " components, expected a knot");
  for (auto& [p, east] : cycles[0]) {
    cf.pieceOrder.push_back(p);
    cf.pieceEast.push_back(east);
  }
  return cf;
}

// Signed handle passage counts with respect to the canonical traversal
// orientation (or its reverse).
inline H1Class homology_class(const CompletedFront& cf, bool reversed = false) {
  H1Class cls;
  cls.coords.assign(cf.front.surface.handleCount(), 0);
  for (auto [h, sgn] : cf.passages(reversed)) cls.coords[h] += sgn;
  return cls;
}

}  // namespace lch
