#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <diflow/errors.hpp>

namespace diflow {

/// Finite partially ordered set over opaque string labels.
///
/// The relation is stored in full (reflexive-transitive closure); labels are
/// kept sorted so that index order coincides with lexicographic label order,
/// which keeps every set-valued result deterministic.
class poset {
public:
  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }

  bool contains(const std::string& l) const {
    return std::binary_search(labels_.begin(), labels_.end(), l);
  }

  std::size_t index(const std::string& l) const {
    auto it = std::lower_bound(labels_.begin(), labels_.end(), l);
    if (it == labels_.end() || *it != l)
      throw unknown_label("unknown element: " + l);
    return static_cast<std::size_t>(it - labels_.begin());
  }

  bool leq(std::size_t i, std::size_t j) const { return leq_[i * size() + j]; }
  bool leq(const std::string& a, const std::string& b) const {
    return leq(index(a), index(b));
  }
  bool less(std::size_t i, std::size_t j) const { return i != j && leq(i, j); }
  bool less(const std::string& a, const std::string& b) const {
    return less(index(a), index(b));
  }

  bool operator==(const poset& o) const {
    return labels_ == o.labels_ && leq_ == o.leq_;
  }
  bool operator!=(const poset& o) const { return !(*this == o); }

  friend poset make_poset(std::vector<std::string> elements,
                          const std::vector<std::pair<std::string, std::string>>& pairs);

private:
  poset(std::vector<std::string> labels, std::vector<bool> leq)
      : labels_(std::move(labels)), leq_(std::move(leq)) {}

  std::vector<std::string> labels_;
  std::vector<bool> leq_; // n*n row-major closure
};

/// Builds the poset generated by `pairs` on `elements`: the relation is the
/// reflexive-transitive closure of the given pairs.
inline poset make_poset(std::vector<std::string> elements,
                        const std::vector<std::pair<std::string, std::string>>& pairs) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  if (elements.empty()) throw empty_poset("poset needs at least one element");

  const std::size_t n = elements.size();
  auto idx = [&](const std::string& l) {
    auto it = std::lower_bound(elements.begin(), elements.end(), l);
    if (it == elements.end() || *it != l)
      throw unknown_label("pair references unknown element: " + l);
    return static_cast<std::size_t>(it - elements.begin());
  };

  std::vector<bool> leq(n * n, false);
  for (std::size_t i = 0; i < n; ++i) leq[i * n + i] = true;
  for (const auto& [a, b] : pairs) leq[idx(a) * n + idx(b)] = true;

  // Warshall closure.
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (leq[i * n + k])
        for (std::size_t j = 0; j < n; ++j)
          if (leq[k * n + j]) leq[i * n + j] = true;

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (leq[i * n + j] && leq[j * n + i])
        throw cycle_error("antisymmetry violated: " + elements[i] + " <= " +
                          elements[j] + " <= " + elements[i]);

  return poset(std::move(elements), std::move(leq));
}

/// Totally ordered poset 0 < 1 < ... < k-1.
inline poset chain(std::size_t k) {
  if (k == 0) throw invalid_size("chain needs at least one element");
  std::vector<std::string> elems;
  std::vector<std::pair<std::string, std::string>> pairs;
  for (std::size_t i = 0; i < k; ++i) elems.push_back(std::to_string(i));
  for (std::size_t i = 0; i + 1 < k; ++i)
    pairs.emplace_back(std::to_string(i), std::to_string(i + 1));
  return make_poset(std::move(elems), pairs);
}

/// Cartesian product with coordinatewise order; elements are labeled "(a,b)".
inline poset product(const poset& p, const poset& q) {
  std::vector<std::string> elems;
  std::vector<std::pair<std::string, std::string>> pairs;
  auto lbl = [](const std::string& a, const std::string& b) {
    return "(" + a + "," + b + ")";
  };
  for (const auto& a : p.labels())
    for (const auto& b : q.labels()) elems.push_back(lbl(a, b));
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < q.size(); ++j)
      for (std::size_t k = 0; k < p.size(); ++k)
        for (std::size_t l = 0; l < q.size(); ++l)
          if (p.leq(i, k) && q.leq(j, l))
            pairs.emplace_back(lbl(p.labels()[i], q.labels()[j]),
                               lbl(p.labels()[k], q.labels()[l]));
  return make_poset(std::move(elems), pairs);
}

/// Boolean n-cube: n-fold product of the two-chain, flat tuple labels
/// "(b1,...,bn)" for n >= 2, the two-chain itself for n = 1.
inline poset cube(std::size_t n) {
  if (n == 0) throw invalid_size("cube dimension must be positive");
  if (n == 1) return chain(2);
  const std::size_t count = std::size_t{1} << n;
  auto lbl = [&](std::size_t bits) {
    std::string s = "(";
    for (std::size_t c = 0; c < n; ++c) {
      if (c) s += ",";
      s += ((bits >> c) & 1) ? "1" : "0";
    }
    return s + ")";
  };
  std::vector<std::string> elems;
  std::vector<std::pair<std::string, std::string>> pairs;
  for (std::size_t b = 0; b < count; ++b) elems.push_back(lbl(b));
  for (std::size_t a = 0; a < count; ++a)
    for (std::size_t b = 0; b < count; ++b)
      if ((a & b) == a) pairs.emplace_back(lbl(a), lbl(b));
  return make_poset(std::move(elems), pairs);
}

/// Index of the global minimum, if there is one.
inline std::optional<std::size_t> minimum_index(const poset& p) {
  for (std::size_t i = 0; i < p.size(); ++i) {
    bool below_all = true;
    for (std::size_t j = 0; j < p.size(); ++j)
      if (!p.leq(i, j)) { below_all = false; break; }
    if (below_all) return i;
  }
  return std::nullopt;
}

inline std::optional<std::size_t> maximum_index(const poset& p) {
  for (std::size_t i = 0; i < p.size(); ++i) {
    bool above_all = true;
    for (std::size_t j = 0; j < p.size(); ++j)
      if (!p.leq(j, i)) { above_all = false; break; }
    if (above_all) return i;
  }
  return std::nullopt;
}

/// True iff the poset has a global minimum and maximum and they differ.
inline bool is_bounded(const poset& p) {
  auto lo = minimum_index(p), hi = maximum_index(p);
  return lo && hi && *lo != *hi;
}

inline std::string minimum_of(const poset& p) {
  auto lo = minimum_index(p);
  if (!lo) throw not_bounded("poset has no minimum");
  return p.labels()[*lo];
}

inline std::string maximum_of(const poset& p) {
  auto hi = maximum_index(p);
  if (!hi) throw not_bounded("poset has no maximum");
  return p.labels()[*hi];
}

/// All covering pairs (x,y): x < y with empty open interval, sorted.
inline std::vector<std::pair<std::string, std::string>> covers(const poset& p) {
  std::vector<std::pair<std::string, std::string>> out;
  const std::size_t n = p.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (!p.less(i, j)) continue;
      bool gap = false;
      for (std::size_t k = 0; k < n; ++k)
        if (p.less(i, k) && p.less(k, j)) { gap = true; break; }
      if (!gap) out.emplace_back(p.labels()[i], p.labels()[j]);
    }
  std::sort(out.begin(), out.end());
  return out;
}

/// Inserts a fresh element z into the covering pair (x,y), generating the
/// order by x < z < y.
inline poset subdivide(const poset& p, const std::string& x, const std::string& y,
                       const std::string& z) {
  const std::size_t xi = p.index(x), yi = p.index(y);
  if (p.contains(z)) throw label_clash("element already present: " + z);
  if (!p.less(xi, yi)) throw not_a_cover(x + " is not strictly below " + y);
  for (std::size_t k = 0; k < p.size(); ++k)
    if (p.less(xi, k) && p.less(k, yi))
      throw not_a_cover("open interval ]" + x + "," + y + "[ is non-empty");

  std::vector<std::string> elems = p.labels();
  elems.push_back(z);
  std::vector<std::pair<std::string, std::string>> pairs;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < p.size(); ++j)
      if (p.less(i, j)) pairs.emplace_back(p.labels()[i], p.labels()[j]);
  pairs.emplace_back(x, z);
  pairs.emplace_back(z, y);
  return make_poset(std::move(elems), pairs);
}

/// Removes z when it sits alone strictly between a unique covering pair;
/// the inverse move of subdivide.
inline poset unsubdivide(const poset& p, const std::string& z) {
  const std::size_t zi = p.index(z);
  const std::size_t n = p.size();

  std::vector<std::size_t> lower, upper;
  for (std::size_t i = 0; i < n; ++i) {
    if (p.less(i, zi)) {
      bool cover = true;
      for (std::size_t k = 0; k < n; ++k)
        if (p.less(i, k) && p.less(k, zi)) { cover = false; break; }
      if (cover) lower.push_back(i);
    }
    if (p.less(zi, i)) {
      bool cover = true;
      for (std::size_t k = 0; k < n; ++k)
        if (p.less(zi, k) && p.less(k, i)) { cover = false; break; }
      if (cover) upper.push_back(i);
    }
  }
  if (lower.size() != 1 || upper.size() != 1)
    throw not_removable(z + " does not have unique covers on both sides");
  const std::size_t xi = lower[0], yi = upper[0];
  for (std::size_t k = 0; k < n; ++k)
    if (k != zi && p.less(xi, k) && p.less(k, yi))
      throw not_removable("open interval around " + z + " holds other elements");
  if (is_bounded(p) && (p.labels()[zi] == minimum_of(p) || p.labels()[zi] == maximum_of(p)))
    throw not_removable(z + " is an extreme element");

  std::vector<std::string> elems;
  std::vector<std::pair<std::string, std::string>> pairs;
  for (std::size_t i = 0; i < n; ++i)
    if (i != zi) elems.push_back(p.labels()[i]);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != zi && j != zi && p.less(i, j))
        pairs.emplace_back(p.labels()[i], p.labels()[j]);
  return make_poset(std::move(elems), pairs);
}

/// Interior elements whose strict up-set has a minimum and strict down-set
/// has a maximum: the footprint any single subdivision move leaves behind.
inline std::vector<std::string> witness_elements(const poset& p) {
  if (!is_bounded(p)) throw not_bounded("witness scan needs a bounded poset");
  const std::size_t lo = *minimum_index(p), hi = *maximum_index(p);
  const std::size_t n = p.size();
  std::vector<std::string> out;
  for (std::size_t z = 0; z < n; ++z) {
    if (z == lo || z == hi) continue;
    std::vector<std::size_t> up, down;
    for (std::size_t w = 0; w < n; ++w) {
      if (p.less(z, w)) up.push_back(w);
      if (p.less(w, z)) down.push_back(w);
    }
    auto has_min = [&](const std::vector<std::size_t>& s) {
      for (std::size_t m : s) {
        bool ok = true;
        for (std::size_t w : s)
          if (!p.leq(m, w)) { ok = false; break; }
        if (ok) return true;
      }
      return false;
    };
    auto has_max = [&](const std::vector<std::size_t>& s) {
      for (std::size_t m : s) {
        bool ok = true;
        for (std::size_t w : s)
          if (!p.leq(w, m)) { ok = false; break; }
        if (ok) return true;
      }
      return false;
    };
    if (has_min(up) && has_max(down)) out.push_back(p.labels()[z]);
  }
  return out;
}

/// Monotone map between posets; validated on construction.
class poset_morphism {
public:
  poset_morphism(poset source, poset target, const std::map<std::string, std::string>& map)
      : source_(std::move(source)), target_(std::move(target)) {
    map_.resize(source_.size());
    for (std::size_t i = 0; i < source_.size(); ++i) {
      auto it = map.find(source_.labels()[i]);
      if (it == map.end())
        throw unknown_label("morphism misses element: " + source_.labels()[i]);
      map_[i] = target_.index(it->second);
    }
    for (std::size_t i = 0; i < source_.size(); ++i)
      for (std::size_t j = 0; j < source_.size(); ++j)
        if (source_.leq(i, j) && !target_.leq(map_[i], map_[j]))
          throw not_monotone("map does not preserve " + source_.labels()[i] +
                             " <= " + source_.labels()[j]);
  }

  const poset& source() const { return source_; }
  const poset& target() const { return target_; }
  std::size_t apply_index(std::size_t i) const { return map_[i]; }
  std::string apply(const std::string& l) const {
    return target_.labels()[map_[source_.index(l)]];
  }

private:
  poset source_, target_;
  std::vector<std::size_t> map_;
};

namespace detail {

/// Iterated neighbourhood refinement: assigns each element a structural
/// signature id; isomorphic posets get the same multiset of signatures.
inline std::vector<std::string> refine_signatures(const poset& p) {
  const std::size_t n = p.size();
  std::vector<std::string> sig(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t up = 0, down = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (p.less(i, j)) ++up;
      if (p.less(j, i)) ++down;
    }
    sig[i] = std::to_string(up) + "/" + std::to_string(down);
  }
  for (std::size_t round = 0; round < n; ++round) {
    std::vector<std::string> next(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<std::string> ups, downs;
      for (std::size_t j = 0; j < n; ++j) {
        if (p.less(i, j)) ups.push_back(sig[j]);
        if (p.less(j, i)) downs.push_back(sig[j]);
      }
      std::sort(ups.begin(), ups.end());
      std::sort(downs.begin(), downs.end());
      std::string s = sig[i] + "|U";
      for (auto& u : ups) s += "{" + u + "}";
      s += "|D";
      for (auto& d : downs) s += "{" + d + "}";
      next[i] = std::move(s);
    }
    // Re-encode to keep signatures short across rounds.
    std::vector<std::string> sorted = next;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<std::string> encoded(n);
    for (std::size_t i = 0; i < n; ++i) {
      auto it = std::lower_bound(sorted.begin(), sorted.end(), next[i]);
      encoded[i] = std::to_string(it - sorted.begin());
    }
    if (encoded == sig) break;
    std::size_t old_classes =
        std::set<std::string>(sig.begin(), sig.end()).size();
    sig = std::move(encoded);
    std::size_t new_classes =
        std::set<std::string>(sig.begin(), sig.end()).size();
    if (new_classes == old_classes && round > 0) break;
  }
  // Final stabilizing pass with full context so ids sort consistently.
  std::vector<std::string> final_sig(n);
  std::vector<std::string> keys(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::string> ups, downs;
    for (std::size_t j = 0; j < n; ++j) {
      if (p.less(i, j)) ups.push_back(sig[j]);
      if (p.less(j, i)) downs.push_back(sig[j]);
    }
    std::sort(ups.begin(), ups.end());
    std::sort(downs.begin(), downs.end());
    std::string s = sig[i] + "|";
    for (auto& u : ups) s += "u" + u;
    for (auto& d : downs) s += "d" + d;
    keys[i] = std::move(s);
  }
  return keys;
}

/// Signature-ordered blocks of interchangeable-looking elements.
inline std::vector<std::vector<std::size_t>> signature_blocks(const poset& p) {
  auto sig = refine_signatures(p);
  std::map<std::string, std::vector<std::size_t>> by_sig;
  for (std::size_t i = 0; i < p.size(); ++i) by_sig[sig[i]].push_back(i);
  std::vector<std::vector<std::size_t>> blocks;
  for (auto& [k, v] : by_sig) blocks.push_back(v);
  return blocks;
}

// A block whose members are pairwise incomparable and have identical
// relation rows elsewhere contributes the same matrix under any internal
// ordering, so only one ordering needs to be tried.
inline bool block_is_twin(const poset& p, const std::vector<std::size_t>& b) {
  for (std::size_t a = 0; a < b.size(); ++a)
    for (std::size_t c = 0; c < b.size(); ++c)
      if (a != c && p.leq(b[a], b[c])) return false;
  for (std::size_t a = 1; a < b.size(); ++a)
    for (std::size_t j = 0; j < p.size(); ++j) {
      bool in_block = std::find(b.begin(), b.end(), j) != b.end();
      if (in_block) continue;
      if (p.leq(b[0], j) != p.leq(b[a], j)) return false;
      if (p.leq(j, b[0]) != p.leq(j, b[a])) return false;
    }
  return true;
}

} // namespace detail

/// Label-free canonical key: equal keys iff the posets are isomorphic.
/// Lexicographically minimal relation matrix over all orderings that respect
/// the refinement blocks.
inline std::string canonical_key(const poset& p) {
  const std::size_t n = p.size();
  auto blocks = detail::signature_blocks(p);

  std::vector<bool> frozen(blocks.size(), false);
  for (std::size_t b = 0; b < blocks.size(); ++b)
    frozen[b] = blocks[b].size() == 1 || detail::block_is_twin(p, blocks[b]);

  std::vector<std::vector<std::size_t>> perms(blocks.size());
  for (auto& bl : blocks) std::sort(bl.begin(), bl.end());

  std::string best;
  std::vector<std::size_t> order(n);

  // Odometer over per-block permutations; frozen blocks stay put.
  std::vector<std::vector<std::size_t>> cur = blocks;
  auto emit = [&]() {
    std::size_t pos = 0;
    for (const auto& bl : cur)
      for (std::size_t e : bl) order[pos++] = e;
    std::string bits(n * n, '0');
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (p.leq(order[i], order[j])) bits[i * n + j] = '1';
    if (best.empty() || bits < best) best = std::move(bits);
  };

  std::size_t nb = blocks.size();
  std::vector<std::size_t> active;
  for (std::size_t b = 0; b < nb; ++b)
    if (!frozen[b] && blocks[b].size() > 1) active.push_back(b);

  // Recursive enumeration over the active blocks.
  auto rec = [&](auto&& self, std::size_t k) -> void {
    if (k == active.size()) { emit(); return; }
    std::size_t b = active[k];
    std::sort(cur[b].begin(), cur[b].end());
    do {
      self(self, k + 1);
    } while (std::next_permutation(cur[b].begin(), cur[b].end()));
    std::sort(cur[b].begin(), cur[b].end());
  };
  rec(rec, 0);

  std::ostringstream key;
  key << n << ":";
  for (const auto& bl : blocks) key << bl.size() << ",";
  key << ":" << best;
  return key.str();
}

/// Searches for an order-isomorphism; candidates are pruned by refinement
/// signature and tried in label order, so the result is deterministic.
inline std::optional<poset_morphism> is_isomorphic(const poset& p, const poset& q) {
  const std::size_t n = p.size();
  if (n != q.size()) return std::nullopt;

  auto sp = detail::refine_signatures(p);
  auto sq = detail::refine_signatures(q);
  {
    auto a = sp, b = sq;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) return std::nullopt;
  }

  std::vector<std::size_t> assign(n, SIZE_MAX);
  std::vector<bool> used(n, false);
  auto rec = [&](auto&& self, std::size_t i) -> bool {
    if (i == n) return true;
    for (std::size_t j = 0; j < n; ++j) {
      if (used[j] || sp[i] != sq[j]) continue;
      bool ok = true;
      for (std::size_t k = 0; k < i; ++k) {
        if (p.leq(i, k) != q.leq(j, assign[k]) ||
            p.leq(k, i) != q.leq(assign[k], j)) { ok = false; break; }
      }
      if (!ok) continue;
      assign[i] = j;
      used[j] = true;
      if (self(self, i + 1)) return true;
      used[j] = false;
      assign[i] = SIZE_MAX;
    }
    return false;
  };
  if (!rec(rec, 0)) return std::nullopt;

  std::map<std::string, std::string> m;
  for (std::size_t i = 0; i < n; ++i)
    m[p.labels()[i]] = q.labels()[assign[i]];
  return poset_morphism(p, q, m);
}

/// Membership test for the generating class of refinement maps: injective
/// strictly monotone maps of finite bounded posets preserving both extremes.
inline bool class_t_check(const poset_morphism& f) {
  const poset& s = f.source();
  const poset& t = f.target();
  if (!is_bounded(s) || !is_bounded(t)) return false;
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (i != j && f.apply_index(i) == f.apply_index(j)) return false;
      if (s.less(i, j) && !t.less(f.apply_index(i), f.apply_index(j))) return false;
    }
  if (f.apply(minimum_of(s)) != minimum_of(t)) return false;
  if (f.apply(maximum_of(s)) != maximum_of(t)) return false;
  return true;
}

} // namespace diflow
