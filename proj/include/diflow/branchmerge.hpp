#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include <diflow/errors.hpp>
#include <diflow/flow.hpp>
#include <diflow/presentation.hpp>

namespace diflow {

enum class germ_side { branching, merging };

/// Universal quotient of the path classes of a flow: on the branching side
/// x and x*y are glued, on the merging side y and x*y are.
class germ_quotient {
public:
  germ_quotient(flow f, germ_side side, std::map<std::string, std::string> projection)
      : flow_(std::move(f)), side_(side), projection_(std::move(projection)) {
    for (const auto& [p, c] : projection_) members_[c].push_back(p);
    for (auto& [c, ms] : members_) std::sort(ms.begin(), ms.end());
  }

  const flow& underlying() const { return flow_; }
  germ_side side() const { return side_; }

  /// Path id -> germ class id (the least member).
  const std::map<std::string, std::string>& projection() const { return projection_; }
  const std::string& project(const std::string& path_id) const {
    auto it = projection_.find(path_id);
    if (it == projection_.end()) throw unknown_label("unknown path class: " + path_id);
    return it->second;
  }

  /// Class id -> sorted members.
  const std::map<std::string, std::vector<std::string>>& classes() const {
    return members_;
  }
  std::size_t class_count() const { return members_.size(); }

private:
  flow flow_;
  germ_side side_;
  std::map<std::string, std::string> projection_;
  std::map<std::string, std::vector<std::string>> members_;
};

/// Branching space: smallest identification with h(x) = h(x*y).
inline germ_quotient branching_space(const flow& x) {
  std::vector<std::string> ids = x.path_ids();
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < ids.size(); ++i) index[ids[i]] = i;

  detail::union_find uf(ids.size());
  for (const auto& [key, r] : x.compose_table())
    uf.unite(index.at(key.first), index.at(r));

  std::map<std::size_t, std::string> class_id;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    std::size_t root = uf.find(i);
    auto it = class_id.find(root);
    if (it == class_id.end() || ids[i] < it->second) class_id[root] = ids[i];
  }
  std::map<std::string, std::string> projection;
  for (std::size_t i = 0; i < ids.size(); ++i)
    projection[ids[i]] = class_id.at(uf.find(i));
  return germ_quotient(x, germ_side::branching, std::move(projection));
}

/// Merging space: smallest identification with h(y) = h(x*y); computed as
/// the branching space of the opposite flow.
inline germ_quotient merging_space(const flow& x) {
  germ_quotient op = branching_space(opposite(x));
  return germ_quotient(x, germ_side::merging, op.projection());
}

/// Germ classes attached to one state: classes starting there on the
/// branching side, ending there on the merging side.
inline std::vector<std::string> germs_at(const germ_quotient& q, const std::string& alpha) {
  if (!q.underlying().has_state(alpha)) throw unknown_state("not a state: " + alpha);
  std::vector<std::string> out;
  for (const auto& [cls, members] : q.classes()) {
    const std::string& anchor = (q.side() == germ_side::branching)
                                    ? q.underlying().source(members.front())
                                    : q.underlying().target(members.front());
    if (anchor == alpha) out.push_back(cls);
  }
  return out;
}

} // namespace diflow
