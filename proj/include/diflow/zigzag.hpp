#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <diflow/errors.hpp>
#include <diflow/poset.hpp>

namespace diflow {

inline constexpr std::size_t default_zigzag_depth = 6;
inline constexpr std::size_t default_zigzag_size = 12;

/// One step of the move system: insert into a cover pair, remove an inserted
/// element, or relabel along an isomorphism. Isomorphisms never appear in
/// generated traces (canonical forms absorb them) but replay supports them.
struct zigzag_move {
  enum class kind_t { iso, subdivide, unsubdivide };
  kind_t kind = kind_t::subdivide;
  std::map<std::string, std::string> iso_map; // kind iso
  std::string x, y;                           // kind subdivide: the cover pair
  std::string z;                              // subdivide: fresh label; unsubdivide: removed
};

enum class zigzag_verdict { reachable, unreachable_at_bound, impossible };

/// Search outcome. A reachable trace replays from the source to a poset
/// isomorphic to the target; impossible carries the witness statement;
/// unreachable-at-bound is explicitly weaker than impossible.
struct zigzag_certificate {
  zigzag_verdict verdict = zigzag_verdict::unreachable_at_bound;
  std::vector<zigzag_move> trace;
  std::string witness_argument;
  std::size_t max_depth = 0;
  std::size_t max_size = 0;
};

inline poset apply_move(const poset& p, const zigzag_move& m) {
  switch (m.kind) {
    case zigzag_move::kind_t::subdivide:
      return subdivide(p, m.x, m.y, m.z);
    case zigzag_move::kind_t::unsubdivide:
      return unsubdivide(p, m.z);
    case zigzag_move::kind_t::iso: {
      std::vector<std::string> elems;
      std::vector<std::pair<std::string, std::string>> pairs;
      for (const auto& l : p.labels()) elems.push_back(m.iso_map.at(l));
      for (const auto& a : p.labels())
        for (const auto& b : p.labels())
          if (p.less(a, b)) pairs.emplace_back(m.iso_map.at(a), m.iso_map.at(b));
      return make_poset(std::move(elems), pairs);
    }
  }
  throw validation_error("unknown move kind");
}

inline poset replay_trace(poset p, const std::vector<zigzag_move>& trace) {
  for (const auto& m : trace) p = apply_move(p, m);
  return p;
}

/// First label of the form z0, z1, ... that is not taken.
inline std::string fresh_zigzag_label(const poset& p) {
  for (std::size_t k = 0;; ++k) {
    std::string cand = "z" + std::to_string(k);
    if (!p.contains(cand)) return cand;
  }
}

/// Every single-step neighbour: one subdivision per cover pair, then one
/// unsubdivision per removable element, in label order.
inline std::vector<std::pair<zigzag_move, poset>> legal_moves(const poset& p) {
  if (!is_bounded(p)) throw not_bounded("move system needs a bounded poset");
  std::vector<std::pair<zigzag_move, poset>> out;
  const std::string fresh = fresh_zigzag_label(p);
  for (const auto& [x, y] : covers(p)) {
    zigzag_move m;
    m.kind = zigzag_move::kind_t::subdivide;
    m.x = x;
    m.y = y;
    m.z = fresh;
    out.emplace_back(m, subdivide(p, x, y, fresh));
  }
  for (const auto& z : p.labels()) {
    try {
      poset next = unsubdivide(p, z);
      zigzag_move m;
      m.kind = zigzag_move::kind_t::unsubdivide;
      m.z = z;
      out.emplace_back(std::move(m), std::move(next));
    } catch (const not_removable&) {
    } catch (const unknown_label&) {
    }
  }
  return out;
}

/// Breadth-first search over canonical forms. Reachable means some explored
/// poset is isomorphic to the target within the depth and size bounds.
inline zigzag_certificate bfs_equivalent(const poset& p, const poset& q,
                                         std::size_t max_depth = default_zigzag_depth,
                                         std::size_t max_size = default_zigzag_size) {
  if (!is_bounded(p) || !is_bounded(q))
    throw not_bounded("zig-zag search needs bounded posets");

  zigzag_certificate cert;
  cert.max_depth = max_depth;
  cert.max_size = max_size;

  const std::string goal = canonical_key(q);

  struct node {
    poset state;
    std::size_t parent;
    zigzag_move via;
    std::size_t depth;
  };
  std::vector<node> nodes;
  std::set<std::string> seen;

  auto emit_trace = [&](std::size_t i) {
    std::vector<zigzag_move> trace;
    while (i != SIZE_MAX && nodes[i].parent != SIZE_MAX) {
      trace.push_back(nodes[i].via);
      i = nodes[i].parent;
    }
    std::reverse(trace.begin(), trace.end());
    return trace;
  };

  nodes.push_back({p, SIZE_MAX, {}, 0});
  seen.insert(canonical_key(p));
  if (canonical_key(p) == goal) {
    cert.verdict = zigzag_verdict::reachable;
    return cert;
  }

  std::deque<std::size_t> frontier{0};
  while (!frontier.empty()) {
    std::size_t cur = frontier.front();
    frontier.pop_front();
    if (nodes[cur].depth >= max_depth) continue;
    for (auto& [move, next] : legal_moves(nodes[cur].state)) {
      if (next.size() > max_size) continue;
      std::string key = canonical_key(next);
      if (!seen.insert(key).second) continue;
      nodes.push_back({next, cur, move, nodes[cur].depth + 1});
      if (key == goal) {
        cert.verdict = zigzag_verdict::reachable;
        cert.trace = emit_trace(nodes.size() - 1);
        return cert;
      }
      frontier.push_back(nodes.size() - 1);
    }
  }

  cert.verdict = zigzag_verdict::unreachable_at_bound;
  return cert;
}

/// Equivalence probe for the n-cube against the directed segment. For n >= 3
/// the witness scan yields the impossibility certificate; smaller n only get
/// the bounded search, which can never certify impossibility.
inline zigzag_certificate pasiso_check(std::size_t n) {
  if (n == 0) throw invalid_size("cube dimension must be positive");
  poset c = cube(n);
  if (n >= 3) {
    std::vector<std::string> witnesses = witness_elements(c);
    if (witnesses.empty()) {
      zigzag_certificate cert;
      cert.verdict = zigzag_verdict::impossible;
      cert.witness_argument =
          "witness_elements(cube(" + std::to_string(n) +
          ")) = {}: every inserted element has a least strict successor and a "
          "greatest strict predecessor, and no interior element of the " +
          std::to_string(n) + "-cube has both";
      return cert;
    }
  }
  return bfs_equivalent(c, chain(2));
}

} // namespace diflow
