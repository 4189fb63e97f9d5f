#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <diflow/errors.hpp>
#include <diflow/flow.hpp>
#include <diflow/poset.hpp>
#include <diflow/presentation.hpp>

namespace diflow {

/// Raw content of a morphism file; which maps apply depends on the verb.
struct morphism_data {
  std::map<std::string, std::string> state_map;
  std::map<std::string, std::string> path_map;
};

struct named_object {
  std::string name;
  // morphism_data first: it is the only default-constructible alternative.
  std::variant<morphism_data, poset, flow, flow_presentation> value;
};

namespace detail {

/// Whitespace-splits one line; a token beginning with '#' starts a comment.
inline std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> tokens;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) {
    if (tok[0] == '#') break;
    tokens.push_back(tok);
  }
  return tokens;
}

struct line_reader {
  std::string path;
  std::vector<std::vector<std::string>> lines; // token lists, 0-based
  std::vector<std::size_t> numbers;            // original line numbers

  [[noreturn]] void fail(std::size_t i, const std::string& msg) const {
    std::size_t n = i < numbers.size() ? numbers[i] : (numbers.empty() ? 1 : numbers.back());
    throw parse_error(path + ":" + std::to_string(n) + ": " + msg);
  }
};

inline line_reader read_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error(path + ": cannot open file");
  line_reader r;
  r.path = path;
  std::string line;
  std::size_t num = 0;
  while (std::getline(in, line)) {
    ++num;
    auto tokens = tokenize(line);
    if (tokens.empty()) continue;
    r.lines.push_back(std::move(tokens));
    r.numbers.push_back(num);
  }
  if (r.lines.empty()) throw parse_error(path + ": empty input");
  return r;
}

} // namespace detail

/// Parses one of the four text grammars, dispatching on the first keyword.
/// Module validation errors surface as ValidationError with the original
/// message attached.
inline named_object parse_input(const std::string& path) {
  detail::line_reader r = detail::read_lines(path);
  const auto& head = r.lines[0];
  const std::string& kind = head[0];
  if (head.size() != 2)
    r.fail(0, "expected '" + kind + " <name>'");
  named_object out;
  out.name = head[1];

  auto wrap = [&](std::size_t i, auto&& build) {
    try {
      return build();
    } catch (const parse_error&) {
      throw;
    } catch (const error& e) {
      r.fail(i, std::string("validation: ") + e.what());
    }
  };

  if (kind == "poset") {
    std::vector<std::string> elements;
    std::vector<std::pair<std::string, std::string>> pairs;
    for (std::size_t i = 1; i < r.lines.size(); ++i) {
      const auto& t = r.lines[i];
      if (t[0] == "elements") {
        elements.insert(elements.end(), t.begin() + 1, t.end());
      } else if (t[0] == "rel") {
        if (t.size() != 4 || t[2] != "<")
          r.fail(i, "expected 'rel <a> < <b>'");
        pairs.emplace_back(t[1], t[3]);
      } else {
        r.fail(i, "unexpected keyword '" + t[0] + "' in poset file");
      }
    }
    out.value = wrap(0, [&] { return make_poset(elements, pairs); });
    return out;
  }

  if (kind == "flow") {
    std::vector<std::string> states;
    std::map<std::string, path_ends> paths;
    flow::table compose;
    for (std::size_t i = 1; i < r.lines.size(); ++i) {
      const auto& t = r.lines[i];
      if (t[0] == "states") {
        states.insert(states.end(), t.begin() + 1, t.end());
      } else if (t[0] == "path") {
        if (t.size() != 6 || t[2] != ":" || t[4] != "->")
          r.fail(i, "expected 'path <id> : <a> -> <b>'");
        if (paths.count(t[1])) r.fail(i, "duplicate path id '" + t[1] + "'");
        paths[t[1]] = {t[3], t[5]};
      } else if (t[0] == "compose") {
        if (t.size() != 5 || t[3] != "=")
          r.fail(i, "expected 'compose <p> <q> = <r>'");
        compose[{t[1], t[2]}] = t[4];
      } else {
        r.fail(i, "unexpected keyword '" + t[0] + "' in flow file");
      }
    }
    out.value = wrap(0, [&] { return make_flow(states, paths, compose); });
    return out;
  }

  if (kind == "presentation") {
    std::vector<std::string> states;
    std::map<std::string, path_ends> edges;
    std::vector<flow_presentation::relation> relations;
    for (std::size_t i = 1; i < r.lines.size(); ++i) {
      const auto& t = r.lines[i];
      if (t[0] == "states") {
        states.insert(states.end(), t.begin() + 1, t.end());
      } else if (t[0] == "edge") {
        if (t.size() != 6 || t[2] != ":" || t[4] != "->")
          r.fail(i, "expected 'edge <id> : <a> -> <b>'");
        if (edges.count(t[1])) r.fail(i, "duplicate edge id '" + t[1] + "'");
        edges[t[1]] = {t[3], t[5]};
      } else if (t[0] == "relation") {
        if (t.size() != 4 || t[2] != "=")
          r.fail(i, "expected 'relation <w1> = <w2>'");
        relations.emplace_back(split_word(t[1]), split_word(t[3]));
      } else {
        r.fail(i, "unexpected keyword '" + t[0] + "' in presentation file");
      }
    }
    out.value = wrap(0, [&] { return make_presentation(states, edges, relations); });
    return out;
  }

  if (kind == "morphism") {
    morphism_data m;
    for (std::size_t i = 1; i < r.lines.size(); ++i) {
      const auto& t = r.lines[i];
      if (t[0] == "state" || t[0] == "path") {
        if (t.size() != 4 || t[2] != "->")
          r.fail(i, "expected '" + t[0] + " <from> -> <to>'");
        auto& target = (t[0] == "state") ? m.state_map : m.path_map;
        if (!target.emplace(t[1], t[3]).second)
          r.fail(i, "duplicate " + t[0] + " mapping for '" + t[1] + "'");
      } else {
        r.fail(i, "unexpected keyword '" + t[0] + "' in morphism file");
      }
    }
    out.value = std::move(m);
    return out;
  }

  r.fail(0, "unknown object kind '" + kind + "'");
}

/// Canonical text form; covers suffice because construction closes them.
inline std::string emit_poset(const poset& p, const std::string& name) {
  std::ostringstream out;
  out << "poset " << name << "\n";
  out << "elements";
  for (const auto& l : p.labels()) out << " " << l;
  out << "\n";
  for (const auto& [a, b] : covers(p)) out << "rel " << a << " < " << b << "\n";
  return out.str();
}

inline std::string emit_flow(const flow& f, const std::string& name) {
  std::ostringstream out;
  out << "flow " << name << "\n";
  out << "states";
  for (const auto& s : f.states()) out << " " << s;
  out << "\n";
  for (const auto& [id, e] : f.paths())
    out << "path " << id << " : " << e.source << " -> " << e.target << "\n";
  for (const auto& [key, r] : f.compose_table())
    out << "compose " << key.first << " " << key.second << " = " << r << "\n";
  return out.str();
}

inline std::string emit_presentation(const flow_presentation& pr,
                                     const std::string& name) {
  std::ostringstream out;
  out << "presentation " << name << "\n";
  out << "states";
  for (const auto& s : pr.states()) out << " " << s;
  out << "\n";
  for (const auto& [id, e] : pr.edges())
    out << "edge " << id << " : " << e.source << " -> " << e.target << "\n";
  for (const auto& [w1, w2] : pr.relations())
    out << "relation " << joined(w1) << " = " << joined(w2) << "\n";
  return out.str();
}

} // namespace diflow
