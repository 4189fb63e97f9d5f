#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <diflow/branchmerge.hpp>
#include <diflow/errors.hpp>
#include <diflow/flow.hpp>
#include <diflow/poset.hpp>
#include <diflow/presentation.hpp>

namespace diflow {

/// Outcome of the three-part check behind the old notion of T-homotopy.
/// A false verdict refutes; a true verdict is a necessary condition only.
struct tdi_report {
  bool restriction_iso = false;
  std::map<std::string, std::pair<std::size_t, std::size_t>> singleton_germs;
  bool surrounded_ok = false;

  bool germs_ok() const {
    for (const auto& [s, counts] : singleton_germs)
      if (counts.first != 1 || counts.second != 1) return false;
    return true;
  }
  bool verdict() const { return restriction_iso && germs_ok() && surrounded_ok; }
};

/// Checks the three conditions: source isomorphic (through f) to the
/// restriction of the target to the image states, singleton branch and merge
/// germs at every new state, and the image surrounding all target states.
inline tdi_report tdi_shadow(const flow_morphism& f) {
  tdi_report report;
  const flow& x = f.source();
  const flow& y = f.target();

  std::vector<std::string> image;
  for (const auto& [a, b] : f.state_map()) image.push_back(b);
  std::sort(image.begin(), image.end());
  image.erase(std::unique(image.begin(), image.end()), image.end());

  bool states_injective = image.size() == x.states().size();

  std::set<std::string> path_image;
  for (const auto& [p, q] : f.path_map()) path_image.insert(q);
  bool paths_injective = path_image.size() == x.paths().size();

  std::set<std::string> restricted;
  flow r = restriction(y, image);
  for (const auto& [id, e] : r.paths()) restricted.insert(id);
  report.restriction_iso =
      states_injective && paths_injective && path_image == restricted;

  germ_quotient branch = branching_space(y);
  germ_quotient merge = merging_space(y);
  for (const auto& s : y.states()) {
    if (std::binary_search(image.begin(), image.end(), s)) continue;
    report.singleton_germs[s] = {germs_at(branch, s).size(),
                                 germs_at(merge, s).size()};
  }

  report.surrounded_ok = surrounded(y, y.states(), image);
  return report;
}

/// Path classes that are not composites; the generating edges of a loopless
/// flow.
inline std::vector<std::string> minimal_classes(const flow& x) {
  std::set<std::string> composite;
  for (const auto& [key, r] : x.compose_table()) composite.insert(r);
  std::vector<std::string> out;
  for (const auto& [id, e] : x.paths())
    if (!composite.count(id)) out.push_back(id);
  return out;
}

/// Data of a pure subdivision: how many fresh pieces each generating class
/// of the source was cut into, and the states created along the way.
struct subdivision_data {
  std::map<std::string, std::size_t> subdivided_edges;
  std::vector<std::string> new_states;
};

namespace detail {

/// Everything the subdivision recognizer discovers, kept so that the
/// factorization can reuse it.
struct subdivision_analysis {
  subdivision_data form;
  std::optional<flow> middle;                   // realize of the rewritten presentation
  std::map<std::string, std::string> g_paths;   // source class -> middle class
  std::map<std::string, std::string> h_paths;   // middle class -> target class
};

inline std::string sanitize_edge_id(std::string id, const std::set<std::string>& used) {
  std::replace(id.begin(), id.end(), '.', ':');
  if (id.empty()) id = ":";
  while (used.count(id)) id += "'";
  return id;
}

/// All words over the minimal classes of x, bucketed by the class they
/// compose to.
inline std::map<std::string, std::vector<word>> minimal_words_by_class(const flow& x) {
  std::vector<std::string> mins = minimal_classes(x);
  std::map<std::string, std::vector<std::string>> from;
  for (const auto& m : mins) from[x.source(m)].push_back(m);
  std::map<std::string, std::vector<word>> out;
  word cur;
  auto rec = [&](auto&& self, const std::string& at, const std::string& cls) -> void {
    out[cls].push_back(cur);
    auto it = from.find(at);
    if (it == from.end()) return;
    for (const auto& m : it->second) {
      cur.push_back(m);
      self(self, x.target(m), x.compose(cls, m));
      cur.pop_back();
    }
  };
  for (const auto& m : mins) {
    cur.push_back(m);
    rec(rec, x.target(m), m);
    cur.pop_back();
  }
  return out;
}

inline std::optional<subdivision_analysis> analyze_subdivision(const flow_morphism& f) {
  const flow& x = f.source();
  const flow& y = f.target();
  if (!is_loopless(x) || !is_loopless(y))
    throw loop_error("subdivision analysis needs loopless flows");

  std::set<std::string> image;
  for (const auto& [a, b] : f.state_map()) image.insert(b);
  if (image.size() != x.states().size()) return std::nullopt;
  {
    std::set<std::string> pimage;
    for (const auto& [p, q] : f.path_map()) pimage.insert(q);
    if (pimage.size() != x.paths().size()) return std::nullopt;
  }

  std::vector<std::string> fresh;
  for (const auto& s : y.states())
    if (!image.count(s)) fresh.push_back(s);

  // Fresh states of a subdivision carry exactly one germ on each side.
  {
    germ_quotient branch = branching_space(y);
    germ_quotient merge = merging_space(y);
    for (const auto& s : fresh)
      if (germs_at(branch, s).size() != 1 || germs_at(merge, s).size() != 1)
        return std::nullopt;
  }

  std::vector<std::string> mx = minimal_classes(x);
  std::vector<std::string> my = minimal_classes(y);
  std::set<std::string> fresh_set(fresh.begin(), fresh.end());
  std::map<std::string, std::vector<std::string>> my_from;
  for (const auto& m : my) my_from[y.source(m)].push_back(m);

  // For each generating class of the source, the unique chain of generating
  // classes of the target running through fresh states and composing to its
  // image.
  std::map<std::string, word> chains;
  for (const auto& p : mx) {
    const std::string start = f.apply_state(x.source(p));
    const std::string goal = f.apply_state(x.target(p));
    const std::string want = f.apply_path(p);
    std::vector<word> found;
    word cur;
    auto rec = [&](auto&& self, const std::string& at,
                   const std::string& prod) -> void {
      if (!fresh_set.count(at)) {
        if (at == goal && prod == want) found.push_back(cur);
        return;
      }
      auto it = my_from.find(at);
      if (it == my_from.end()) return;
      for (const auto& m : it->second) {
        cur.push_back(m);
        self(self, y.target(m), y.compose(prod, m));
        cur.pop_back();
      }
    };
    auto it = my_from.find(start);
    if (it != my_from.end())
      for (const auto& m : it->second) {
        cur.push_back(m);
        rec(rec, y.target(m), m);
        cur.pop_back();
      }
    if (found.size() != 1) return std::nullopt;
    chains[p] = found[0];
  }

  // Chains must use every generating class of the target exactly once and
  // sweep out exactly the fresh states.
  {
    std::vector<std::string> used_edges;
    std::vector<std::string> used_states;
    for (const auto& [p, ch] : chains) {
      for (const auto& m : ch) used_edges.push_back(m);
      for (std::size_t i = 0; i + 1 < ch.size(); ++i)
        used_states.push_back(y.target(ch[i]));
    }
    std::sort(used_edges.begin(), used_edges.end());
    if (std::adjacent_find(used_edges.begin(), used_edges.end()) != used_edges.end())
      return std::nullopt;
    std::vector<std::string> my_sorted = my;
    std::sort(my_sorted.begin(), my_sorted.end());
    if (used_edges != my_sorted) return std::nullopt;
    std::sort(used_states.begin(), used_states.end());
    if (std::adjacent_find(used_states.begin(), used_states.end()) !=
        used_states.end())
      return std::nullopt;
    std::vector<std::string> fresh_sorted = fresh;
    std::sort(fresh_sorted.begin(), fresh_sorted.end());
    if (used_states != fresh_sorted) return std::nullopt;
  }

  // Present the source on its generating classes.
  auto words_by_class = minimal_words_by_class(x);
  for (const auto& [id, e] : x.paths())
    if (!words_by_class.count(id)) return std::nullopt;

  std::map<std::string, std::string> x_edge_name; // minimal class -> edge id
  std::set<std::string> used_x;
  for (const auto& p : mx) {
    std::string n = sanitize_edge_id(p, used_x);
    used_x.insert(n);
    x_edge_name[p] = n;
  }
  std::map<std::string, std::string> y_edge_name, y_edge_back;
  std::set<std::string> used_y;
  for (const auto& m : my) {
    std::string n = sanitize_edge_id(m, used_y);
    used_y.insert(n);
    y_edge_name[m] = n;
    y_edge_back[n] = m;
  }

  auto rename = [](const word& w, const std::map<std::string, std::string>& tr) {
    word out;
    for (const auto& id : w) out.push_back(tr.at(id));
    return out;
  };
  auto substitute = [&](const word& w_over_x) {
    word out;
    for (const auto& p : w_over_x) {
      const word& ch = chains.at(p);
      for (const auto& m : ch) out.push_back(y_edge_name.at(m));
    }
    return out;
  };

  std::vector<flow_presentation::relation> x_rels, y_rels;
  for (const auto& [cls, ws] : words_by_class)
    for (std::size_t i = 1; i < ws.size(); ++i) {
      x_rels.emplace_back(rename(ws[0], x_edge_name), rename(ws[i], x_edge_name));
      y_rels.emplace_back(substitute(ws[0]), substitute(ws[i]));
    }

  std::map<std::string, path_ends> y_edges;
  for (const auto& m : my) y_edges[y_edge_name.at(m)] = {y.source(m), y.target(m)};
  flow_presentation py = make_presentation(y.states(), std::move(y_edges),
                                           std::move(y_rels));

  flow middle = realize(py);
  congruence cg = close_congruence(py, enumerate_words(py));

  // Evaluate a middle class back in the target by composing its word.
  auto evaluate = [&](const std::string& class_id) {
    word w = split_word(class_id);
    std::string prod = y_edge_back.at(w[0]);
    for (std::size_t i = 1; i < w.size(); ++i)
      prod = y.compose(prod, y_edge_back.at(w[i]));
    return prod;
  };

  subdivision_analysis res;
  for (const auto& [id, e] : middle.paths()) res.h_paths[id] = evaluate(id);
  {
    std::set<std::string> hit;
    for (const auto& [z, v] : res.h_paths)
      if (!hit.insert(v).second) return std::nullopt;
    if (hit.size() != y.paths().size()) return std::nullopt;
  }

  for (const auto& [id, e] : x.paths()) {
    const word& w0 = words_by_class.at(id).front();
    res.g_paths[id] = cg.class_of(substitute(w0));
  }

  for (const auto& [id, e] : x.paths())
    if (res.h_paths.at(res.g_paths.at(id)) != f.apply_path(id)) return std::nullopt;

  for (const auto& p : mx) res.form.subdivided_edges[p] = chains.at(p).size();
  res.form.new_states = fresh;
  res.middle = std::move(middle);
  return res;
}

} // namespace detail

/// Recognizes f as a pure subdivision of generating classes: each one is
/// replaced by a chain of fresh pieces, relations rewritten accordingly.
inline std::optional<subdivision_data> subdivision_form(const flow_morphism& f) {
  auto a = detail::analyze_subdivision(f);
  if (!a) return std::nullopt;
  return a->form;
}

/// Loopless, bounded state order, exactly one path class per strictly
/// ordered pair of states and none otherwise.
inline bool is_full_directed_ball(const flow& x) {
  if (x.states().empty()) return false;
  if (!is_loopless(x)) return false;
  poset ord = state_order(x);
  if (!is_bounded(ord)) return false;
  for (const auto& a : x.states())
    for (const auto& b : x.states()) {
      std::size_t want = ord.less(a, b) ? 1 : 0;
      if (x.classes(a, b).size() != want) return false;
    }
  return true;
}

/// The flow morphism F(f) induced by a generating poset map: full directed
/// balls refining full directed balls.
inline flow_morphism generalized_generator(const poset_morphism& f) {
  if (!class_t_check(f))
    throw not_in_class_t("map is not in the generating class");
  flow fx = flow_from_poset(f.source());
  flow fy = flow_from_poset(f.target());
  std::map<std::string, std::string> state_map, path_map;
  for (const auto& l : f.source().labels()) state_map[l] = f.apply(l);
  for (const auto& [id, e] : fx.paths())
    path_map[id] = "(" + f.apply(e.source) + "," + f.apply(e.target) + ")";
  return flow_morphism(std::move(fx), std::move(fy), std::move(state_map),
                       std::move(path_map));
}

/// Splits a subdivision f = h ∘ g: g performs the refinement into the
/// rewritten realization, h renames its classes back into the target and is
/// bijective on states and classes.
inline std::pair<flow_morphism, flow_morphism> factorize_old(const flow_morphism& f) {
  auto a = detail::analyze_subdivision(f);
  if (!a) throw not_a_subdivision("morphism is not a pure subdivision");

  std::map<std::string, std::string> g_states;
  for (const auto& [s, t] : f.state_map()) g_states[s] = t;
  std::map<std::string, std::string> h_states;
  for (const auto& s : f.target().states()) h_states[s] = s;

  flow_morphism g(f.source(), *a->middle, std::move(g_states), a->g_paths);
  flow_morphism h(*a->middle, f.target(), std::move(h_states), a->h_paths);
  return {std::move(g), std::move(h)};
}

} // namespace diflow
