#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "lch/front.hpp"

namespace lch {

// Local rewrites of the event word that preserve the isotopy class of the
// completed knot.  The three Front* kinds are the classical front moves on
// a strip of the square; the two Handle* kinds carry a cusp or a crossing
// across an interval identification.
enum class MoveKind {
  FrontR1,     // birth/death of a kink: a cusp pair plus one crossing
  FrontR2,     // a cusp slides through a transverse strand (two crossings)
  FrontR3,     // a strand slides across a crossing (braid relation)
  HandleCusp,  // a trailing right cusp becomes a left cusp on the partner
               // interval; both paired endpoint counts grow together
  HandleCross  // a trailing crossing between two same-interval endpoints
               // re-emerges between their partner endpoints
};

inline const char* move_kind_name(MoveKind k) {
  switch (k) {
    case MoveKind::FrontR1: return "front-r1";
    case MoveKind::FrontR2: return "front-r2";
    case MoveKind::FrontR3: return "front-r3";
    case MoveKind::HandleCusp: return "handle-cusp";
    case MoveKind::HandleCross: return "handle-cross";
  }
  return "?";
}

// One applicable rewrite, anchored on the event word of a specific front.
//
//   FrontR1   forward: insert a kink at event position `position` on the
//             strand at `slot`; `variant` 0 opens the kink below the
//             strand, 1 above.  reverse: delete the three-event kink
//             window starting at `position`.
//   FrontR2   forward: expand the single cusp event at `position` into its
//             three-event form (cusp pushed through the neighbouring
//             strand); reverse contracts the window back.  `slot` stores
//             the schema parameter i, `variant` selects one of the four
//             left/right × above/below forms.
//   FrontR3   rewrite the crossing triple at `position` by the braid
//             relation; self-inverse (reverse stays false), `variant`
//             records which of the two forms is present.
//   HandleCusp forward ("push"): the word ends with a right cusp whose two
//             strands sit at the mouth of the `variant`-side interval of
//             `handle` (0 = upper, 1 = lower); they become identified
//             endpoints and a left cusp is appended on the partner side.
//             reverse ("pull") undoes this from a trailing left cusp.
//   HandleCross the word ends with a crossing of two adjacent endpoints of
//             the `variant`-side interval of `handle`; the crossing moves
//             to the partner endpoints.  Self-inverse with `variant`
//             flipped.
struct MoveSite {
  MoveKind kind = MoveKind::FrontR1;
  bool reverse = false;
  int position = 0;
  int slot = 0;
  int variant = 0;
  int handle = -1;

  bool operator==(const MoveSite&) const = default;

  std::string str() const {
    std::string s = move_kind_name(kind);
    s += reverse ? " reverse" : " forward";
    s += " @" + std::to_string(position) + " slot " + std::to_string(slot) +
         " variant " + std::to_string(variant);
    if (handle >= 0) s += " handle " + std::to_string(handle);
    return s;
  }
};

namespace detail {

// Strand count before each event position (size events.size() + 1).
inline std::vector<int> strandCounts(const std::vector<Event>& events) {
  std::vector<int> counts(events.size() + 1, 0);
  for (size_t t = 0; t < events.size(); ++t) {
    int d = 0;
    if (events[t].type == EventType::LeftCusp) d = 2;
    if (events[t].type == EventType::RightCusp) d = -2;
    counts[t + 1] = counts[t] + d;
  }
  return counts;
}

inline bool isL(const Event& e) { return e.type == EventType::LeftCusp; }
inline bool isR(const Event& e) { return e.type == EventType::RightCusp; }
inline bool isX(const Event& e) { return e.type == EventType::Crossing; }

// Block start of each interval under the given per-interval counts.
inline std::vector<int> blockStarts(const std::vector<int>& ports) {
  std::vector<int> bs(ports.size(), 0);
  int at = 1;
  for (size_t i = 0; i < ports.size(); ++i) {
    bs[i] = at;
    at += ports[i];
  }
  return bs;
}

// Builds the rewritten front for a site, or nullopt when the site does
// not match the word.  Performs exact structural checks so that the
// result, whenever present, differs from `front` by one legal move; the
// caller still re-validates by completing the result.
inline std::optional<FrontDiagram> rewritten(const FrontDiagram& front,
                                             const CompletedFront& cf,
                                             const MoveSite& site) {
  const auto& ev = front.events;
  const int E = static_cast<int>(ev.size());
  const int p = site.position;
  FrontDiagram out = front;

  auto spliceIn = [&](int at, std::vector<Event> add) {
    out.events.insert(out.events.begin() + at, add.begin(), add.end());
  };
  auto replaceWindow = [&](int at, int len, std::vector<Event> add) {
    out.events.erase(out.events.begin() + at, out.events.begin() + at + len);
    spliceIn(at, std::move(add));
  };

  switch (site.kind) {
    case MoveKind::FrontR1: {
      if (site.handle != -1) return std::nullopt;
      const int s = site.slot;
      if (!site.reverse) {
        if (p < 0 || p > E) return std::nullopt;
        const auto counts = strandCounts(ev);
        if (s < 1 || s > counts[p]) return std::nullopt;
        if (site.variant == 0)
          spliceIn(p, {L(s + 1), X(s), R(s + 1)});
        else if (site.variant == 1)
          spliceIn(p, {L(s), X(s + 1), R(s)});
        else
          return std::nullopt;
        return out;
      }
      if (p < 0 || p + 3 > E) return std::nullopt;
      if (!isL(ev[p]) || !isX(ev[p + 1]) || !isR(ev[p + 2])) return std::nullopt;
      const int l = ev[p].slot, x = ev[p + 1].slot, r = ev[p + 2].slot;
      const bool v0 = site.variant == 0 && x == l - 1 && r == l && s == x;
      const bool v1 = site.variant == 1 && x == l + 1 && r == l && s == l;
      if (!v0 && !v1) return std::nullopt;
      replaceWindow(p, 3, {});
      return out;
    }

    case MoveKind::FrontR2: {
      if (site.handle != -1) return std::nullopt;
      const int i = site.slot;
      if (!site.reverse) {
        if (p < 0 || p >= E) return std::nullopt;
        const auto counts = strandCounts(ev);
        const Event& e = ev[p];
        switch (site.variant) {
          case 0:
            if (!isL(e) || e.slot < 2 || i != e.slot - 1) return std::nullopt;
            replaceWindow(p, 1, {L(i), X(i + 1), X(i)});
            return out;
          case 1:
            if (!isL(e) || e.slot > counts[p] || i != e.slot) return std::nullopt;
            replaceWindow(p, 1, {L(i + 1), X(i), X(i + 1)});
            return out;
          case 2:
            if (!isR(e) || counts[p] < e.slot + 2 || i != e.slot)
              return std::nullopt;
            replaceWindow(p, 1, {X(i + 1), X(i), R(i + 1)});
            return out;
          case 3:
            if (!isR(e) || e.slot < 2 || i != e.slot - 1) return std::nullopt;
            replaceWindow(p, 1, {X(i), X(i + 1), R(i)});
            return out;
          default:
            return std::nullopt;
        }
      }
      if (p < 0 || p + 3 > E) return std::nullopt;
      const Event &a = ev[p], &b = ev[p + 1], &c = ev[p + 2];
      switch (site.variant) {
        case 0:
          if (!(isL(a) && isX(b) && isX(c) && b.slot == a.slot + 1 &&
                c.slot == a.slot && i == a.slot))
            return std::nullopt;
          replaceWindow(p, 3, {L(i + 1)});
          return out;
        case 1:
          if (!(isL(a) && isX(b) && isX(c) && b.slot == a.slot - 1 &&
                c.slot == a.slot && i == a.slot - 1))
            return std::nullopt;
          replaceWindow(p, 3, {L(i)});
          return out;
        case 2:
          if (!(isX(a) && isX(b) && isR(c) && b.slot == a.slot - 1 &&
                c.slot == a.slot && i == b.slot))
            return std::nullopt;
          replaceWindow(p, 3, {R(i)});
          return out;
        case 3:
          if (!(isX(a) && isX(b) && isR(c) && b.slot == a.slot + 1 &&
                c.slot == a.slot && i == a.slot))
            return std::nullopt;
          replaceWindow(p, 3, {R(i + 1)});
          return out;
        default:
          return std::nullopt;
      }
    }

    case MoveKind::FrontR3: {
      if (site.handle != -1 || site.reverse) return std::nullopt;
      if (p < 0 || p + 3 > E) return std::nullopt;
      if (!isX(ev[p]) || !isX(ev[p + 1]) || !isX(ev[p + 2])) return std::nullopt;
      const int a = ev[p].slot, b = ev[p + 1].slot;
      if (ev[p + 2].slot != a || (b != a + 1 && b != a - 1)) return std::nullopt;
      if (site.slot != a || site.variant != (b > a ? 0 : 1)) return std::nullopt;
      replaceWindow(p, 3, {X(b), X(a), X(b)});
      return out;
    }

    case MoveKind::HandleCusp: {
      const int h = site.handle;
      if (h < 0 || h >= front.surface.handleCount()) return std::nullopt;
      if (site.variant != 0 && site.variant != 1) return std::nullopt;
      if (p != E - 1 || E == 0) return std::nullopt;
      const int iA = front.surface.intervalIndexOf(h, site.variant == 0);
      const int iB = front.surface.intervalIndexOf(h, site.variant == 1);
      if (!site.reverse) {
        // Push: the trailing right cusp crosses into interval A; a left
        // cusp appears whose strands are the new partner endpoints on B.
        if (!isR(ev.back()) || site.slot != ev.back().slot) return std::nullopt;
        const int i = ev.back().slot;
        auto ports2 = front.ports;
        ports2[iA] += 2;
        ports2[iB] += 2;
        const auto bs2 = blockStarts(ports2);
        int m = 0, j = 0;
        if (bs2[iB] > bs2[iA]) {
          m = i - bs2[iA] + 1;
          j = bs2[iB] + m - 1;
          if (j < i + 2) return std::nullopt;
        } else {
          m = i + 2 - bs2[iA] + 1;
          j = bs2[iB] + m - 1;
          if (j > i) return std::nullopt;
        }
        if (m < 1 || m + 1 > ports2[iA]) return std::nullopt;
        out.events.pop_back();
        out.events.push_back(L(j));
        out.ports = ports2;
        return out;
      }
      // Pull: the trailing left cusp sits on interval B; its two strands
      // leave the identification and close up at a right cusp.
      if (!isL(ev.back()) || site.slot != ev.back().slot) return std::nullopt;
      const int j = ev.back().slot;
      const int mB = j - cf.blockStart[iB] + 1;
      if (mB < 1 || mB + 1 > front.ports[iB]) return std::nullopt;
      const int pa = cf.blockStart[iA] + mB - 1;
      const int i = pa - (pa > j + 1 ? 2 : 0);
      out.events.pop_back();
      out.events.push_back(R(i));
      out.ports[iA] -= 2;
      out.ports[iB] -= 2;
      return out;
    }

    case MoveKind::HandleCross: {
      const int h = site.handle;
      if (h < 0 || h >= front.surface.handleCount()) return std::nullopt;
      if (site.variant != 0 && site.variant != 1) return std::nullopt;
      if (site.reverse || p != E - 1 || E == 0) return std::nullopt;
      if (!isX(ev.back()) || site.slot != ev.back().slot) return std::nullopt;
      const int iT = front.surface.intervalIndexOf(h, site.variant == 0);
      const int iP = front.surface.intervalIndexOf(h, site.variant == 1);
      const int i = ev.back().slot;
      const int bsT = cf.blockStart[iT];
      if (i < bsT || i + 1 > bsT + front.ports[iT] - 1) return std::nullopt;
      out.events.back() = X(cf.blockStart[iP] + (i - bsT));
      return out;
    }
  }
  return std::nullopt;
}

// Full application: structural rewrite plus re-validation of the result.
inline std::optional<FrontDiagram> appliedSite(const FrontDiagram& front,
                                               const CompletedFront& cf,
                                               const MoveSite& site) {
  auto out = rewritten(front, cf, site);
  if (!out) return std::nullopt;
  try {
    const CompletedFront done = complete_prefront(*out);
    if (site.kind == MoveKind::HandleCusp && !site.reverse) {
      // The two surviving cusp strands must be identified with the two
      // strands of the appended left cusp, in order.
      const int j = done.front.events.back().slot;
      const int i = front.events.back().slot;
      const int a = i >= j ? i + 2 : i;
      if (done.partnerSlot[a - 1] != j || done.partnerSlot[a] != j + 1)
        return std::nullopt;
    }
  } catch (const Error&) {
    return std::nullopt;
  }
  return out;
}

}  // namespace detail

// Every applicable move site on the given front, in a deterministic order.
// The front must complete to a knot.
inline std::vector<MoveSite> available_moves(const FrontDiagram& front) {
  const CompletedFront cf = complete_prefront(front);
  const auto& ev = front.events;
  const int E = static_cast<int>(ev.size());
  const auto counts = detail::strandCounts(ev);

  std::vector<MoveSite> sites;
  auto offer = [&](MoveSite s) {
    if (detail::appliedSite(front, cf, s)) sites.push_back(s);
  };

  for (int p = 0; p <= E; ++p)
    for (int s = 1; s <= counts[p]; ++s)
      for (int v = 0; v < 2; ++v)
        offer({MoveKind::FrontR1, false, p, s, v, -1});
  for (int p = 0; p + 3 <= E; ++p) {
    if (!detail::isL(ev[p]) || !detail::isX(ev[p + 1]) ||
        !detail::isR(ev[p + 2]))
      continue;
    const int l = ev[p].slot, x = ev[p + 1].slot;
    if (x == l - 1)
      offer({MoveKind::FrontR1, true, p, x, 0, -1});
    else if (x == l + 1)
      offer({MoveKind::FrontR1, true, p, l, 1, -1});
  }

  for (int p = 0; p < E; ++p) {
    const Event& e = ev[p];
    if (detail::isL(e)) {
      offer({MoveKind::FrontR2, false, p, e.slot - 1, 0, -1});
      offer({MoveKind::FrontR2, false, p, e.slot, 1, -1});
    } else if (detail::isR(e)) {
      offer({MoveKind::FrontR2, false, p, e.slot, 2, -1});
      offer({MoveKind::FrontR2, false, p, e.slot - 1, 3, -1});
    }
  }
  for (int p = 0; p + 3 <= E; ++p) {
    const Event &a = ev[p], &b = ev[p + 1], &c = ev[p + 2];
    if (detail::isL(a) && detail::isX(b) && detail::isX(c)) {
      if (b.slot == a.slot + 1 && c.slot == a.slot)
        offer({MoveKind::FrontR2, true, p, a.slot, 0, -1});
      if (b.slot == a.slot - 1 && c.slot == a.slot)
        offer({MoveKind::FrontR2, true, p, a.slot - 1, 1, -1});
    }
    if (detail::isX(a) && detail::isX(b) && detail::isR(c)) {
      if (b.slot == a.slot - 1 && c.slot == a.slot)
        offer({MoveKind::FrontR2, true, p, b.slot, 2, -1});
      if (b.slot == a.slot + 1 && c.slot == a.slot)
        offer({MoveKind::FrontR2, true, p, a.slot, 3, -1});
    }
  }

  for (int p = 0; p + 3 <= E; ++p) {
    if (!detail::isX(ev[p]) || !detail::isX(ev[p + 1]) ||
        !detail::isX(ev[p + 2]))
      continue;
    const int a = ev[p].slot, b = ev[p + 1].slot;
    if (ev[p + 2].slot == a && (b == a + 1 || b == a - 1))
      offer({MoveKind::FrontR3, false, p, a, b > a ? 0 : 1, -1});
  }

  if (E > 0) {
    const Event& last = ev.back();
    for (int h = 0; h < front.surface.handleCount(); ++h)
      for (int v = 0; v < 2; ++v) {
        if (detail::isR(last))
          offer({MoveKind::HandleCusp, false, E - 1, last.slot, v, h});
        if (detail::isL(last))
          offer({MoveKind::HandleCusp, true, E - 1, last.slot, v, h});
        if (detail::isX(last))
          offer({MoveKind::HandleCross, false, E - 1, last.slot, v, h});
      }
  }
  return sites;
}

// Applies one move site.  The site must describe a rewrite of exactly this
// front (as produced by available_moves on it); otherwise the call fails
// with kind "inapplicable-site".
inline FrontDiagram apply_move(const FrontDiagram& front,
                               const MoveSite& site) {
  const CompletedFront cf = complete_prefront(front);
  auto out = detail::appliedSite(front, cf, site);
  if (!out)
    fail("inapplicable-site",
         "move does not match this front: " + site.str());
  return *out;
}

// The site that undoes `site`, expressed on the rewritten front `after`.
inline MoveSite inverse_site(const MoveSite& site, const FrontDiagram& after) {
  MoveSite inv = site;
  switch (site.kind) {
    case MoveKind::FrontR1:
    case MoveKind::FrontR2:
      inv.reverse = !site.reverse;
      return inv;
    case MoveKind::FrontR3:
      inv.slot = after.events[site.position].slot;
      inv.variant = 1 - site.variant;
      return inv;
    case MoveKind::HandleCusp:
      inv.reverse = !site.reverse;
      inv.position = static_cast<int>(after.events.size()) - 1;
      inv.slot = after.events.back().slot;
      return inv;
    case MoveKind::HandleCross:
      inv.position = static_cast<int>(after.events.size()) - 1;
      inv.slot = after.events.back().slot;
      inv.variant = 1 - site.variant;
      return inv;
  }
  return inv;
}

// A reproducible random walk over moves: `steps` applications starting
// from `front`.  fronts[0] is the start; sites[k] applied to fronts[k]
// yields fronts[k + 1].  Each step first draws one of the move kinds that
// currently has applicable sites, then a site of that kind, so that rare
// kinds are still exercised.
struct FuzzTrace {
  std::vector<FrontDiagram> fronts;
  std::vector<MoveSite> sites;
};

inline FuzzTrace fuzz(const FrontDiagram& front, int steps, unsigned seed) {
  std::mt19937 rng(seed);
  FuzzTrace trace;
  trace.fronts.push_back(front);
  for (int k = 0; k < steps; ++k) {
    const auto sites = available_moves(trace.fronts.back());
    if (sites.empty()) break;
    std::vector<MoveKind> kinds;
    for (const auto& s : sites)
      if (kinds.empty() || std::find(kinds.begin(), kinds.end(), s.kind) ==
                               kinds.end())
        kinds.push_back(s.kind);
    const MoveKind want = kinds[rng() % kinds.size()];
    std::vector<MoveSite> pool;
    for (const auto& s : sites)
      if (s.kind == want) pool.push_back(s);
    const MoveSite pick = pool[rng() % pool.size()];
    trace.fronts.push_back(apply_move(trace.fronts.back(), pick));
    trace.sites.push_back(pick);
  }
  return trace;
}

}  // namespace lch
