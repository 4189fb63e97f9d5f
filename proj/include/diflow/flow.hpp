#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <diflow/errors.hpp>
#include <diflow/poset.hpp>

namespace diflow {

struct path_ends {
  std::string source;
  std::string target;
  bool operator==(const path_ends& o) const {
    return source == o.source && target == o.target;
  }
};

/// Finite combinatorial flow: a state set, a set of path classes with
/// endpoints, and a composition law defined on every composable pair.
class flow {
public:
  using table = std::map<std::pair<std::string, std::string>, std::string>;

  const std::vector<std::string>& states() const { return states_; }
  const std::map<std::string, path_ends>& paths() const { return paths_; }
  const table& compose_table() const { return compose_; }

  bool has_state(const std::string& s) const {
    return std::binary_search(states_.begin(), states_.end(), s);
  }
  bool has_path(const std::string& p) const { return paths_.count(p) != 0; }

  const std::string& source(const std::string& p) const { return ends(p).source; }
  const std::string& target(const std::string& p) const { return ends(p).target; }

  std::vector<std::string> path_ids() const {
    std::vector<std::string> out;
    for (const auto& [id, e] : paths_) out.push_back(id);
    return out;
  }

  /// Path classes from a to b, sorted by id.
  std::vector<std::string> classes(const std::string& a, const std::string& b) const {
    std::vector<std::string> out;
    for (const auto& [id, e] : paths_)
      if (e.source == a && e.target == b) out.push_back(id);
    return out;
  }

  const std::string& compose(const std::string& p, const std::string& q) const {
    auto it = compose_.find({p, q});
    if (it == compose_.end())
      throw missing_composite("no composite for (" + p + "," + q + ")");
    return it->second;
  }

  bool operator==(const flow& o) const {
    return states_ == o.states_ && paths_ == o.paths_ && compose_ == o.compose_;
  }
  bool operator!=(const flow& o) const { return !(*this == o); }

  friend flow make_flow(std::vector<std::string> states,
                        std::map<std::string, path_ends> paths, table compose);

private:
  flow(std::vector<std::string> states, std::map<std::string, path_ends> paths,
       table compose)
      : states_(std::move(states)), paths_(std::move(paths)),
        compose_(std::move(compose)) {}

  const path_ends& ends(const std::string& p) const {
    auto it = paths_.find(p);
    if (it == paths_.end()) throw unknown_label("unknown path class: " + p);
    return it->second;
  }

  std::vector<std::string> states_;
  std::map<std::string, path_ends> paths_;
  table compose_;
};

/// Validating constructor: endpoints must be states, the table must cover
/// exactly the composable pairs, and composition must be associative.
inline flow make_flow(std::vector<std::string> states,
                      std::map<std::string, path_ends> paths, flow::table compose) {
  std::sort(states.begin(), states.end());
  states.erase(std::unique(states.begin(), states.end()), states.end());

  auto is_state = [&](const std::string& s) {
    return std::binary_search(states.begin(), states.end(), s);
  };
  for (const auto& [id, e] : paths) {
    if (!is_state(e.source))
      throw unknown_state("path " + id + " starts at unknown state " + e.source);
    if (!is_state(e.target))
      throw unknown_state("path " + id + " ends at unknown state " + e.target);
  }

  auto ends_of = [&](const std::string& p) -> const path_ends& {
    auto it = paths.find(p);
    if (it == paths.end()) throw unknown_label("table references unknown path: " + p);
    return it->second;
  };

  for (const auto& [key, r] : compose) {
    const auto& [p, q] = key;
    const path_ends& pe = ends_of(p);
    const path_ends& qe = ends_of(q);
    if (pe.target != qe.source)
      throw endpoint_error("(" + p + "," + q + ") is not a composable pair");
    const path_ends& re = ends_of(r);
    if (re.source != pe.source || re.target != qe.target)
      throw endpoint_error("composite " + r + " of (" + p + "," + q +
                           ") has wrong endpoints");
  }

  for (const auto& [p, pe] : paths)
    for (const auto& [q, qe] : paths)
      if (pe.target == qe.source && !compose.count({p, q}))
        throw missing_composite("composable pair (" + p + "," + q +
                                ") has no composite");

  for (const auto& [key, pq] : compose) {
    const auto& [p, q] = key;
    for (const auto& [r, re] : paths) {
      if (ends_of(q).target != re.source) continue;
      const std::string& qr = compose.at({q, r});
      if (compose.at({pq, r}) != compose.at({p, qr}))
        throw associativity_error("associativity fails on (" + p + "," + q + "," +
                                  r + ")");
    }
  }

  return flow(std::move(states), std::move(paths), std::move(compose));
}

/// Flow with the given states and no paths at all.
inline flow flow_from_set(std::vector<std::string> states) {
  return make_flow(std::move(states), {}, {});
}

/// F(P): one path class (a,b) per strict pair a < b, composed by
/// (a,b)*(b,c) = (a,c).
inline flow flow_from_poset(const poset& p) {
  auto lbl = [](const std::string& a, const std::string& b) {
    return "(" + a + "," + b + ")";
  };
  std::map<std::string, path_ends> paths;
  flow::table compose;
  const auto& ls = p.labels();
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < p.size(); ++j)
      if (p.less(i, j)) paths[lbl(ls[i], ls[j])] = {ls[i], ls[j]};
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < p.size(); ++j)
      for (std::size_t k = 0; k < p.size(); ++k)
        if (p.less(i, j) && p.less(j, k))
          compose[{lbl(ls[i], ls[j]), lbl(ls[j], ls[k])}] = lbl(ls[i], ls[k]);
  return make_flow(ls, std::move(paths), std::move(compose));
}

/// Globe over a set of path classes: two states, all paths in parallel,
/// trivial composition law.
inline flow globe(std::vector<std::string> path_classes) {
  std::map<std::string, path_ends> paths;
  for (auto& z : path_classes) paths[z] = {"0", "1"};
  return make_flow({"0", "1"}, std::move(paths), {});
}

/// Restriction to a state subset: keeps exactly the paths with both
/// endpoints inside, with the inherited composition law.
inline flow restriction(const flow& x, const std::vector<std::string>& a) {
  std::vector<std::string> keep = a;
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  for (const auto& s : keep)
    if (!x.has_state(s)) throw unknown_state("not a state: " + s);

  auto inside = [&](const std::string& s) {
    return std::binary_search(keep.begin(), keep.end(), s);
  };
  std::map<std::string, path_ends> paths;
  for (const auto& [id, e] : x.paths())
    if (inside(e.source) && inside(e.target)) paths[id] = e;
  flow::table compose;
  for (const auto& [key, r] : x.compose_table())
    if (paths.count(key.first) && paths.count(key.second)) compose[key] = r;
  return make_flow(keep, std::move(paths), std::move(compose));
}

/// A is surrounded by B: every state of A lies in B or sits between a path
/// from B and a path back into B.
inline bool surrounded(const flow& x, const std::vector<std::string>& a,
                       const std::vector<std::string>& b) {
  for (const auto& s : a)
    if (!x.has_state(s)) throw unknown_state("not a state: " + s);
  for (const auto& s : b)
    if (!x.has_state(s)) throw unknown_state("not a state: " + s);
  std::set<std::string> bset(b.begin(), b.end());
  for (const auto& alpha : a) {
    if (bset.count(alpha)) continue;
    bool incoming = false, outgoing = false;
    for (const auto& [id, e] : x.paths()) {
      if (e.target == alpha && bset.count(e.source)) incoming = true;
      if (e.source == alpha && bset.count(e.target)) outgoing = true;
    }
    if (!incoming || !outgoing) return false;
  }
  return true;
}

/// True iff no state loops back to itself through path classes.
inline bool is_loopless(const flow& x) {
  const auto& st = x.states();
  const std::size_t n = st.size();
  std::vector<bool> reach(n * n, false);
  auto idx = [&](const std::string& s) {
    return static_cast<std::size_t>(
        std::lower_bound(st.begin(), st.end(), s) - st.begin());
  };
  for (const auto& [id, e] : x.paths())
    reach[idx(e.source) * n + idx(e.target)] = true;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (reach[i * n + k])
        for (std::size_t j = 0; j < n; ++j)
          if (reach[k * n + j]) reach[i * n + j] = true;
  for (std::size_t i = 0; i < n; ++i)
    if (reach[i * n + i]) return false;
  return true;
}

/// Partial order induced on states by non-empty path classes.
inline poset state_order(const flow& x) {
  const auto& st = x.states();
  const std::size_t n = st.size();
  std::vector<bool> reach(n * n, false);
  auto idx = [&](const std::string& s) {
    return static_cast<std::size_t>(
        std::lower_bound(st.begin(), st.end(), s) - st.begin());
  };
  for (const auto& [id, e] : x.paths())
    reach[idx(e.source) * n + idx(e.target)] = true;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (reach[i * n + k])
        for (std::size_t j = 0; j < n; ++j)
          if (reach[k * n + j]) reach[i * n + j] = true;
  for (std::size_t i = 0; i < n; ++i)
    if (reach[i * n + i])
      throw loop_error("state " + st[i] + " has a non-empty loop class");

  std::vector<std::pair<std::string, std::string>> pairs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (reach[i * n + j]) pairs.emplace_back(st[i], st[j]);
  return make_poset(st, pairs);
}

/// States with no incoming path class.
inline std::vector<std::string> initial_states(const flow& x) {
  std::set<std::string> targets;
  for (const auto& [id, e] : x.paths()) targets.insert(e.target);
  std::vector<std::string> out;
  for (const auto& s : x.states())
    if (!targets.count(s)) out.push_back(s);
  return out;
}

/// States with no outgoing path class.
inline std::vector<std::string> final_states(const flow& x) {
  std::set<std::string> sources;
  for (const auto& [id, e] : x.paths()) sources.insert(e.source);
  std::vector<std::string> out;
  for (const auto& s : x.states())
    if (!sources.count(s)) out.push_back(s);
  return out;
}

/// Same states, every path reversed, composition read backwards.
inline flow opposite(const flow& x) {
  std::map<std::string, path_ends> paths;
  for (const auto& [id, e] : x.paths()) paths[id] = {e.target, e.source};
  flow::table compose;
  for (const auto& [key, r] : x.compose_table())
    compose[{key.second, key.first}] = r;
  return make_flow(x.states(), std::move(paths), std::move(compose));
}

/// Morphism of flows; endpoint and composition preservation are checked on
/// construction.
class flow_morphism {
public:
  flow_morphism(flow source, flow target, std::map<std::string, std::string> state_map,
                std::map<std::string, std::string> path_map)
      : source_(std::move(source)), target_(std::move(target)),
        state_map_(std::move(state_map)), path_map_(std::move(path_map)) {
    for (const auto& s : source_.states()) {
      auto it = state_map_.find(s);
      if (it == state_map_.end())
        throw morphism_error("state map misses " + s);
      if (!target_.has_state(it->second))
        throw morphism_error("state map sends " + s + " outside the target");
    }
    for (const auto& [p, e] : source_.paths()) {
      auto it = path_map_.find(p);
      if (it == path_map_.end())
        throw morphism_error("path map misses " + p);
      if (!target_.has_path(it->second))
        throw morphism_error("path map sends " + p + " outside the target");
      if (target_.source(it->second) != state_map_.at(e.source) ||
          target_.target(it->second) != state_map_.at(e.target))
        throw morphism_error("path map breaks endpoints of " + p);
    }
    for (const auto& [key, r] : source_.compose_table()) {
      const auto& [p, q] = key;
      if (target_.compose(path_map_.at(p), path_map_.at(q)) != path_map_.at(r))
        throw morphism_error("composition not preserved on (" + p + "," + q + ")");
    }
  }

  const flow& source() const { return source_; }
  const flow& target() const { return target_; }
  const std::map<std::string, std::string>& state_map() const { return state_map_; }
  const std::map<std::string, std::string>& path_map() const { return path_map_; }
  const std::string& apply_state(const std::string& s) const { return state_map_.at(s); }
  const std::string& apply_path(const std::string& p) const { return path_map_.at(p); }

private:
  flow source_, target_;
  std::map<std::string, std::string> state_map_, path_map_;
};

/// Shadow of weak S-homotopy equivalence: both structure maps bijective.
inline bool weak_s_homotopy_shadow(const flow_morphism& f) {
  std::set<std::string> simage;
  for (const auto& [a, b] : f.state_map()) simage.insert(b);
  if (simage.size() != f.source().states().size() ||
      simage.size() != f.target().states().size())
    return false;
  std::set<std::string> pimage;
  for (const auto& [a, b] : f.path_map()) pimage.insert(b);
  if (pimage.size() != f.source().paths().size() ||
      pimage.size() != f.target().paths().size())
    return false;
  return true;
}

} // namespace diflow
