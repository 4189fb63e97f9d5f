#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <diflow/errors.hpp>
#include <diflow/flow.hpp>
#include <diflow/poset.hpp>

namespace diflow {

/// Composable sequence of edge ids.
using word = std::vector<std::string>;

inline std::string joined(const word& w) {
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += ".";
    s += w[i];
  }
  return s;
}

inline word split_word(const std::string& s) {
  word w;
  std::string token;
  for (char c : s) {
    if (c == '.') {
      w.push_back(token);
      token.clear();
    } else {
      token += c;
    }
  }
  w.push_back(token);
  return w;
}

/// Flow presented by generating edges and relations between parallel words.
/// The underlying graph must be acyclic so realization terminates.
class flow_presentation {
public:
  using relation = std::pair<word, word>;

  const std::vector<std::string>& states() const { return states_; }
  const std::map<std::string, path_ends>& edges() const { return edges_; }
  const std::vector<relation>& relations() const { return relations_; }

  bool has_state(const std::string& s) const {
    return std::binary_search(states_.begin(), states_.end(), s);
  }
  bool has_edge(const std::string& e) const { return edges_.count(e) != 0; }

  const path_ends& edge(const std::string& e) const {
    auto it = edges_.find(e);
    if (it == edges_.end()) throw unknown_edge("unknown edge: " + e);
    return it->second;
  }

  /// Endpoints of a composable word; rejects broken words.
  path_ends word_ends(const word& w) const {
    if (w.empty()) throw endpoint_mismatch("empty edge word");
    path_ends out = edge(w[0]);
    for (std::size_t i = 1; i < w.size(); ++i) {
      const path_ends& e = edge(w[i]);
      if (e.source != out.target)
        throw endpoint_mismatch("word breaks at " + w[i - 1] + "." + w[i]);
      out.target = e.target;
    }
    return out;
  }

  bool operator==(const flow_presentation& o) const {
    return states_ == o.states_ && edges_ == o.edges_ && relations_ == o.relations_;
  }
  bool operator!=(const flow_presentation& o) const { return !(*this == o); }

  friend flow_presentation make_presentation(std::vector<std::string> states,
                                             std::map<std::string, path_ends> edges,
                                             std::vector<relation> relations);

private:
  flow_presentation(std::vector<std::string> states,
                    std::map<std::string, path_ends> edges,
                    std::vector<relation> relations)
      : states_(std::move(states)), edges_(std::move(edges)),
        relations_(std::move(relations)) {}

  std::vector<std::string> states_;
  std::map<std::string, path_ends> edges_;
  std::vector<relation> relations_;
};

inline flow_presentation make_presentation(
    std::vector<std::string> states, std::map<std::string, path_ends> edges,
    std::vector<flow_presentation::relation> relations) {
  std::sort(states.begin(), states.end());
  states.erase(std::unique(states.begin(), states.end()), states.end());

  auto is_state = [&](const std::string& s) {
    return std::binary_search(states.begin(), states.end(), s);
  };
  for (const auto& [id, e] : edges) {
    if (id.empty() || id.find('.') != std::string::npos)
      throw validation_error("bad edge id: '" + id + "'");
    if (!is_state(e.source))
      throw unknown_state("edge " + id + " starts at unknown state " + e.source);
    if (!is_state(e.target))
      throw unknown_state("edge " + id + " ends at unknown state " + e.target);
  }

  // Cycle check on the generating graph.
  {
    const std::size_t n = states.size();
    std::vector<bool> reach(n * n, false);
    auto idx = [&](const std::string& s) {
      return static_cast<std::size_t>(
          std::lower_bound(states.begin(), states.end(), s) - states.begin());
    };
    for (const auto& [id, e] : edges) reach[idx(e.source) * n + idx(e.target)] = true;
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i)
        if (reach[i * n + k])
          for (std::size_t j = 0; j < n; ++j)
            if (reach[k * n + j]) reach[i * n + j] = true;
    for (std::size_t i = 0; i < n; ++i)
      if (reach[i * n + i])
        throw cyclic_presentation("generating graph has a cycle through " + states[i]);
  }

  flow_presentation pr(std::move(states), std::move(edges), {});
  for (auto& [w1, w2] : relations) {
    path_ends e1 = pr.word_ends(w1);
    path_ends e2 = pr.word_ends(w2);
    if (!(e1 == e2))
      throw endpoint_mismatch("relation sides " + joined(w1) + " and " + joined(w2) +
                              " are not parallel");
    if (joined(w2) < joined(w1)) std::swap(w1, w2);
  }
  std::sort(relations.begin(), relations.end());
  relations.erase(std::unique(relations.begin(), relations.end()), relations.end());
  pr.relations_ = std::move(relations);
  return pr;
}

namespace detail {

struct union_find {
  std::vector<std::size_t> parent;
  explicit union_find(std::size_t n) : parent(n) {
    for (std::size_t i = 0; i < n; ++i) parent[i] = i;
  }
  std::size_t find(std::size_t i) {
    while (parent[i] != i) {
      parent[i] = parent[parent[i]];
      i = parent[i];
    }
    return i;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[b] = a;
    return true;
  }
};

/// Every nonempty composable word over the generating edges, depth-first in
/// edge-id order. Acyclicity bounds the recursion.
inline std::vector<word> enumerate_words(const flow_presentation& pr) {
  std::vector<word> out;
  std::map<std::string, std::vector<std::string>> from;
  for (const auto& [id, e] : pr.edges()) from[e.source].push_back(id);
  word cur;
  auto rec = [&](auto&& self, const std::string& at) -> void {
    out.push_back(cur);
    auto it = from.find(at);
    if (it == from.end()) return;
    for (const auto& next : it->second) {
      cur.push_back(next);
      self(self, pr.edge(next).target);
      cur.pop_back();
    }
  };
  for (const auto& [id, e] : pr.edges()) {
    cur.push_back(id);
    rec(rec, e.target);
    cur.pop_back();
  }
  return out;
}

/// Smallest congruence containing the relations, over a given processing
/// order of the full word set.
struct congruence {
  std::vector<word> words;
  std::map<std::string, std::size_t> index;   // joined word -> position
  std::map<std::string, std::string> classes; // joined word -> class id

  const std::string& class_of(const word& w) const { return classes.at(joined(w)); }
};

inline congruence close_congruence(const flow_presentation& pr,
                                   std::vector<word> words) {
  congruence out;
  out.words = std::move(words);
  for (std::size_t i = 0; i < out.words.size(); ++i)
    out.index[joined(out.words[i])] = i;

  union_find uf(out.words.size());
  for (const auto& [w1, w2] : pr.relations())
    uf.unite(out.index.at(joined(w1)), out.index.at(joined(w2)));

  std::map<std::string, std::vector<std::string>> from, into;
  for (const auto& [id, e] : pr.edges()) {
    from[e.source].push_back(id);
    into[e.target].push_back(id);
  }

  bool changed = true;
  while (changed) {
    changed = false;
    std::map<std::size_t, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < out.words.size(); ++i)
      groups[uf.find(i)].push_back(i);
    for (const auto& [root, members] : groups) {
      if (members.size() < 2) continue;
      const word& m0 = out.words[members[0]];
      path_ends e0 = pr.word_ends(m0);
      for (std::size_t k = 1; k < members.size(); ++k) {
        const word& mk = out.words[members[k]];
        auto il = into.find(e0.source);
        if (il != into.end())
          for (const auto& e : il->second) {
            word a = {e}, b = {e};
            a.insert(a.end(), m0.begin(), m0.end());
            b.insert(b.end(), mk.begin(), mk.end());
            if (uf.unite(out.index.at(joined(a)), out.index.at(joined(b))))
              changed = true;
          }
        auto ir = from.find(e0.target);
        if (ir != from.end())
          for (const auto& f : ir->second) {
            word a = m0, b = mk;
            a.push_back(f);
            b.push_back(f);
            if (uf.unite(out.index.at(joined(a)), out.index.at(joined(b))))
              changed = true;
          }
      }
    }
  }

  std::map<std::size_t, std::string> class_id;
  for (std::size_t i = 0; i < out.words.size(); ++i) {
    std::size_t r = uf.find(i);
    std::string j = joined(out.words[i]);
    auto it = class_id.find(r);
    if (it == class_id.end() || j < it->second) class_id[r] = j;
  }
  for (std::size_t i = 0; i < out.words.size(); ++i)
    out.classes[joined(out.words[i])] = class_id.at(uf.find(i));
  return out;
}

} // namespace detail

/// Realization with an explicit word processing order (must be a permutation
/// of the full word set). The congruence is order-independent; the parameter
/// exists so that confluence is observable from the outside.
inline flow realize(const flow_presentation& pr, const std::vector<word>& order) {
  {
    std::vector<std::string> a, b;
    for (const auto& w : detail::enumerate_words(pr)) a.push_back(joined(w));
    for (const auto& w : order) b.push_back(joined(w));
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b)
      throw validation_error("word order is not a permutation of the word set");
  }

  detail::congruence cg = detail::close_congruence(pr, order);

  std::map<std::string, path_ends> paths;
  for (const auto& [w, cls] : cg.classes)
    if (w == cls) paths[cls] = pr.word_ends(split_word(w));

  flow::table compose;
  for (const auto& [wi, ci] : cg.classes) {
    if (wi != ci) continue;
    for (const auto& [wj, cj] : cg.classes) {
      if (wj != cj) continue;
      word a = split_word(wi);
      word b = split_word(wj);
      if (pr.word_ends(a).target != pr.word_ends(b).source) continue;
      a.insert(a.end(), b.begin(), b.end());
      compose[{ci, cj}] = cg.classes.at(joined(a));
    }
  }

  return make_flow(pr.states(), std::move(paths), std::move(compose));
}

/// Quotient of the free composition of edges by the smallest congruence
/// containing the relations.
inline flow realize(const flow_presentation& pr) {
  return realize(pr, detail::enumerate_words(pr));
}

/// Adds one fresh generating edge a -> b.
inline flow_presentation attach_edge(const flow_presentation& pr, const std::string& a,
                                     const std::string& b, const std::string& id) {
  if (!pr.has_state(a)) throw unknown_state("not a state: " + a);
  if (!pr.has_state(b)) throw unknown_state("not a state: " + b);
  if (pr.has_edge(id)) throw label_clash("edge id already used: " + id);
  auto edges = pr.edges();
  edges[id] = {a, b};
  return make_presentation(pr.states(), std::move(edges), pr.relations());
}

/// Declares two parallel words equal.
inline flow_presentation add_relation(const flow_presentation& pr, const word& w1,
                                      const word& w2) {
  path_ends e1 = pr.word_ends(w1);
  path_ends e2 = pr.word_ends(w2);
  if (!(e1 == e2)) throw endpoint_mismatch("relation sides are not parallel");
  auto rels = pr.relations();
  rels.emplace_back(w1, w2);
  return make_presentation(pr.states(), pr.edges(), std::move(rels));
}

namespace detail {

inline std::string fresh_state_label(const flow_presentation& pr, std::string base) {
  while (pr.has_state(base)) base += "'";
  return base;
}

inline std::string fresh_edge_id(const std::map<std::string, path_ends>& edges,
                                 std::string base) {
  while (edges.count(base)) base += "'";
  return base;
}

} // namespace detail

/// Replaces edge e by a chain of n fresh edges through n-1 fresh states and
/// rewrites all relations; also returns the induced morphism of realizations,
/// which sends the class of e to the class of the whole chain.
inline std::pair<flow_presentation, flow_morphism>
subdivide_edge(const flow_presentation& pr, const std::string& e, std::size_t n) {
  if (!pr.has_edge(e)) throw unknown_edge("unknown edge: " + e);
  if (n < 2) throw invalid_size("subdivision needs n >= 2");

  const path_ends ends = pr.edge(e);

  std::vector<std::string> mids;
  for (std::size_t i = 1; i < n; ++i)
    mids.push_back(detail::fresh_state_label(pr, e + "#" + std::to_string(i)));

  auto edges = pr.edges();
  edges.erase(e);
  std::vector<std::string> chain_ids;
  for (std::size_t i = 1; i <= n; ++i)
    chain_ids.push_back(detail::fresh_edge_id(edges, e + "_" + std::to_string(i)));
  for (std::size_t i = 0; i < n; ++i) {
    const std::string& src = (i == 0) ? ends.source : mids[i - 1];
    const std::string& tgt = (i + 1 == n) ? ends.target : mids[i];
    edges[chain_ids[i]] = {src, tgt};
  }

  auto subst = [&](const word& w) {
    word out;
    for (const auto& id : w) {
      if (id == e)
        out.insert(out.end(), chain_ids.begin(), chain_ids.end());
      else
        out.push_back(id);
    }
    return out;
  };

  std::vector<flow_presentation::relation> rels;
  for (const auto& [w1, w2] : pr.relations()) rels.emplace_back(subst(w1), subst(w2));

  std::vector<std::string> states = pr.states();
  states.insert(states.end(), mids.begin(), mids.end());
  flow_presentation out = make_presentation(std::move(states), std::move(edges),
                                            std::move(rels));

  flow before = realize(pr);
  flow after = realize(out);
  detail::congruence after_cg =
      detail::close_congruence(out, detail::enumerate_words(out));

  std::map<std::string, std::string> state_map, path_map;
  for (const auto& s : pr.states()) state_map[s] = s;
  for (const auto& [id, pe] : before.paths())
    path_map[id] = after_cg.class_of(subst(split_word(id)));

  flow_morphism f(before, after, std::move(state_map), std::move(path_map));
  return {std::move(out), std::move(f)};
}

/// Presentation of F(P): cover edges plus one relation per pair of parallel
/// saturated chains.
inline flow_presentation poset_presentation(const poset& p) {
  auto cov = covers(p);
  std::map<std::string, path_ends> edges;
  auto lbl = [](const std::string& a, const std::string& b) {
    return "(" + a + "," + b + ")";
  };
  std::map<std::string, std::vector<std::pair<std::string, std::string>>> from;
  for (const auto& [a, b] : cov) {
    edges[lbl(a, b)] = {a, b};
    from[a].emplace_back(b, lbl(a, b));
  }

  std::vector<flow_presentation::relation> rels;
  for (const auto& a : p.labels()) {
    for (const auto& b : p.labels()) {
      if (!p.less(a, b)) continue;
      std::vector<word> chains;
      word cur;
      auto rec = [&](auto&& self, const std::string& at) -> void {
        if (at == b) {
          chains.push_back(cur);
          return;
        }
        auto it = from.find(at);
        if (it == from.end()) return;
        for (const auto& [next, eid] : it->second) {
          if (!p.leq(next, b)) continue;
          cur.push_back(eid);
          self(self, next);
          cur.pop_back();
        }
      };
      rec(rec, a);
      for (std::size_t i = 0; i < chains.size(); ++i)
        for (std::size_t j = i + 1; j < chains.size(); ++j)
          rels.emplace_back(chains[i], chains[j]);
    }
  }
  return make_presentation(p.labels(), std::move(edges), std::move(rels));
}

} // namespace diflow
