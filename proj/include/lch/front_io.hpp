#pragma once

#include <cctype>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "lch/front.hpp"

namespace lch {

namespace detail {

struct Token {
  std::string text;
  int line = 0;
  int col = 0;  // 1-based column of the first character

  std::string where() const {
    return "line " + std::to_string(line) + ", col " + std::to_string(col) +
           ": ";
  }
};

inline std::vector<Token> splitTokens(const std::string& line, int lineNo) {
  std::vector<Token> toks;
  size_t i = 0;
  while (i < line.size()) {
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    size_t j = i;
    while (j < line.size() &&
           !std::isspace(static_cast<unsigned char>(line[j])))
      ++j;
    toks.push_back({line.substr(i, j - i), lineNo, static_cast<int>(i + 1)});
    i = j;
  }
  return toks;
}

// Parses "key=value"; fails with a located message otherwise.
inline std::pair<std::string, std::string> keyValue(const Token& tok) {
  const auto eq = tok.text.find('=');
  check(eq != std::string::npos && eq > 0 && eq + 1 < tok.text.size(),
        "parse-error",
        tok.where() + "expected key=value, got '" + tok.text + "'");
  return {tok.text.substr(0, eq), tok.text.substr(eq + 1)};
}

inline long long parseInt(const std::string& s, const Token& tok,
                          const std::string& what) {
  try {
    size_t used = 0;
    const long long v = std::stoll(s, &used);
    check(used == s.size(), "parse-error", "");
    return v;
  } catch (...) {
    fail("parse-error",
         tok.where() + what + " must be an integer, got '" + s + "'");
  }
}

}  // namespace detail

// Text format, one directive per line ('#' starts a comment):
//   surface genus=<g> punctures=<p>
//   handle <id> kind=<annulus|torus> twist=<t>     (declaration order matters)
//   events: L1 X2 R1 ...
//   ports: u.upper=2 u.lower=2 ...                 (omitted intervals are 0)
inline FrontDiagram parse_front(const std::string& text) {
  FrontDiagram front;
  bool sawSurface = false, sawEvents = false, sawPorts = false;
  std::vector<std::pair<detail::Token, int>> portEntries;  // (name tok, count)

  std::istringstream in(text);
  std::string raw;
  int lineNo = 0;
  while (std::getline(in, raw)) {
    ++lineNo;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    auto toks = detail::splitTokens(raw, lineNo);
    if (toks.empty()) continue;
    const auto& head = toks[0];

    if (head.text == "surface") {
      check(!sawSurface, "parse-error", head.where() + "duplicate surface line");
      check(!sawEvents && !sawPorts && front.surface.handles.empty(),
            "parse-error", head.where() + "surface must be the first directive");
      sawSurface = true;
      bool g = false, p = false;
      for (size_t i = 1; i < toks.size(); ++i) {
        auto [k, v] = detail::keyValue(toks[i]);
        if (k == "genus") {
          front.surface.genus =
              static_cast<int>(detail::parseInt(v, toks[i], "genus"));
          g = true;
        } else if (k == "punctures") {
          front.surface.punctures =
              static_cast<int>(detail::parseInt(v, toks[i], "punctures"));
          p = true;
        } else {
          fail("parse-error",
               toks[i].where() + "unknown surface field '" + k + "'");
        }
      }
      check(g && p, "parse-error",
            head.where() + "surface needs genus=<g> punctures=<p>");
    } else if (head.text == "handle") {
      check(sawSurface, "parse-error", head.where() + "handle before surface");
      check(!sawEvents && !sawPorts, "parse-error",
            head.where() + "handles must precede events and ports");
      check(toks.size() >= 2, "parse-error", head.where() + "handle needs an id");
      HandleSpec h;
      h.id = toks[1].text;
      check(h.id.find('=') == std::string::npos &&
                h.id.find('.') == std::string::npos,
            "parse-error", toks[1].where() + "invalid handle id '" + h.id + "'");
      bool kind = false;
      for (size_t i = 2; i < toks.size(); ++i) {
        auto [k, v] = detail::keyValue(toks[i]);
        if (k == "kind") {
          if (v == "annulus")
            h.kind = HandleKind::Annulus;
          else if (v == "torus")
            h.kind = HandleKind::Torus;
          else
            fail("parse-error",
                 toks[i].where() + "kind must be annulus or torus");
          kind = true;
        } else if (k == "twist") {
          h.twist = detail::parseInt(v, toks[i], "twist");
        } else {
          fail("parse-error",
               toks[i].where() + "unknown handle field '" + k + "'");
        }
      }
      check(kind, "parse-error",
            head.where() + "handle needs kind=<annulus|torus>");
      front.surface.handles.push_back(h);
    } else if (head.text == "events:") {
      check(sawSurface, "parse-error", head.where() + "events before surface");
      check(!sawEvents, "parse-error", head.where() + "duplicate events line");
      sawEvents = true;
      for (size_t i = 1; i < toks.size(); ++i) {
        const std::string& t = toks[i].text;
        EventType ty;
        if (t[0] == 'L')
          ty = EventType::LeftCusp;
        else if (t[0] == 'R')
          ty = EventType::RightCusp;
        else if (t[0] == 'X')
          ty = EventType::Crossing;
        else
          fail("parse-error", toks[i].where() +
                                  "event token must start with L, R or X: '" +
                                  t + "'");
        const long long slot =
            detail::parseInt(t.substr(1), toks[i], "event slot");
        check(slot >= 1, "parse-error",
              toks[i].where() + "event slot must be positive: '" + t + "'");
        front.events.push_back({ty, static_cast<int>(slot)});
      }
    } else if (head.text == "ports:") {
      check(sawSurface, "parse-error", head.where() + "ports before surface");
      check(!sawPorts, "parse-error", head.where() + "duplicate ports line");
      sawPorts = true;
      for (size_t i = 1; i < toks.size(); ++i) {
        auto [k, v] = detail::keyValue(toks[i]);
        detail::Token nameTok = toks[i];
        nameTok.text = k;
        portEntries.push_back(
            {nameTok,
             static_cast<int>(detail::parseInt(v, toks[i], "port count"))});
      }
    } else {
      fail("parse-error", head.where() + "unknown directive '" + head.text + "'");
    }
  }
  check(sawSurface, "parse-error", "missing surface line");

  // Resolve port names against the declared interval order.
  front.surface.validate();
  const auto order = front.surface.intervalOrder();
  front.ports.assign(order.size(), 0);
  std::vector<bool> given(order.size(), false);
  for (const auto& [tok, count] : portEntries) {
    const std::string& name = tok.text;
    const auto dot = name.rfind('.');
    check(dot != std::string::npos, "parse-error",
          tok.where() + "port name must look like <handle>.<upper|lower>: '" +
              name + "'");
    const std::string hid = name.substr(0, dot), side = name.substr(dot + 1);
    check(side == "upper" || side == "lower", "parse-error",
          tok.where() + "port side must be upper or lower: '" + name + "'");
    const int h = front.surface.handleIndexOf(hid);
    check(h >= 0, "parse-error", tok.where() + "unknown handle '" + hid + "'");
    const int idx = front.surface.intervalIndexOf(h, side == "upper");
    check(!given[idx], "parse-error",
          tok.where() + "duplicate port entry '" + name + "'");
    given[idx] = true;
    front.ports[idx] = count;
  }
  return front;
}

// Canonical serialization: parse_front(serialize_front(f)) == f for any
// front whose surface validates.
inline std::string serialize_front(const FrontDiagram& front) {
  std::ostringstream out;
  out << "surface genus=" << front.surface.genus
      << " punctures=" << front.surface.punctures << "\n";
  for (const auto& h : front.surface.handles)
    out << "handle " << h.id << " kind="
        << (h.kind == HandleKind::Annulus ? "annulus" : "torus")
        << " twist=" << h.twist << "\n";
  out << "events:";
  for (const auto& e : front.events) out << " " << eventToken(e);
  out << "\n";
  out << "ports:";
  const auto order = front.surface.intervalOrder();
  for (size_t i = 0; i < order.size() && i < front.ports.size(); ++i)
    if (front.ports[i] != 0)
      out << " " << front.surface.intervalName(order[i]) << "="
          << front.ports[i];
  out << "\n";
  return out.str();
}

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  check(static_cast<bool>(in), "io-error", "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline FrontDiagram load_front(const std::string& path) {
  return parse_front(slurp(path));
}

}  // namespace lch
