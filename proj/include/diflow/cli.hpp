#pragma once

#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include <diflow/branchmerge.hpp>
#include <diflow/errors.hpp>
#include <diflow/flow.hpp>
#include <diflow/io.hpp>
#include <diflow/poset.hpp>
#include <diflow/presentation.hpp>
#include <diflow/thomotopy.hpp>
#include <diflow/zigzag.hpp>

namespace diflow {

struct cli_result {
  int exit_code = 0;
  std::string report;
};

namespace detail {

inline const char* bool_word(bool b) { return b ? "true" : "false"; }

inline flow as_flow(const named_object& o) {
  if (const poset* p = std::get_if<poset>(&o.value)) return flow_from_poset(*p);
  if (const flow* f = std::get_if<flow>(&o.value)) return *f;
  if (const flow_presentation* pr = std::get_if<flow_presentation>(&o.value))
    return realize(*pr);
  throw validation_error(o.name + ": expected a poset, flow, or presentation");
}

inline const poset& as_poset(const named_object& o) {
  if (const poset* p = std::get_if<poset>(&o.value)) return *p;
  throw validation_error(o.name + ": expected a poset");
}

inline const flow_presentation& as_presentation(const named_object& o) {
  if (const flow_presentation* pr = std::get_if<flow_presentation>(&o.value))
    return *pr;
  throw validation_error(o.name + ": expected a presentation");
}

inline const morphism_data& as_morphism(const named_object& o) {
  if (const morphism_data* m = std::get_if<morphism_data>(&o.value)) return *m;
  throw validation_error(o.name + ": expected a morphism");
}

inline std::string verdict_word(zigzag_verdict v) {
  switch (v) {
    case zigzag_verdict::reachable: return "reachable";
    case zigzag_verdict::unreachable_at_bound: return "unreachable-at-bound";
    case zigzag_verdict::impossible: return "impossible";
  }
  return "unknown";
}

inline std::string format_certificate(const std::string& head,
                                      const zigzag_certificate& cert) {
  std::ostringstream out;
  out << head << " verdict=" << verdict_word(cert.verdict);
  if (cert.verdict != zigzag_verdict::impossible)
    out << " depth=" << cert.max_depth << " size=" << cert.max_size;
  out << "\n";
  if (cert.verdict == zigzag_verdict::impossible)
    out << "witness: " << cert.witness_argument << "\n";
  if (cert.verdict == zigzag_verdict::reachable) {
    out << "trace:\n";
    for (const auto& m : cert.trace) {
      switch (m.kind) {
        case zigzag_move::kind_t::subdivide:
          out << "  subdivide " << m.x << " " << m.y << " -> " << m.z << "\n";
          break;
        case zigzag_move::kind_t::unsubdivide:
          out << "  unsubdivide " << m.z << "\n";
          break;
        case zigzag_move::kind_t::iso:
          out << "  iso\n";
          break;
      }
    }
  }
  return out.str();
}

} // namespace detail

/// Executes one command line (without the program name) and returns the exit
/// code plus the full report text. Exit codes: 0 verdict computed, 1 negative
/// verdict under --strict, 2 any error.
inline cli_result run_command(const std::vector<std::string>& args) {
  CLI::App app{"finite combinatorial flows and zig-zag search"};
  app.name("diflow");
  app.require_subcommand(1);

  std::string format = "text";
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"text"}));

  std::string file, source_file, target_file, map_file;
  std::string sub_x, sub_y, sub_label, sub_edge;
  std::size_t sub_n = 2, opt_n = 0;
  std::size_t depth = default_zigzag_depth, size = default_zigzag_size;
  bool emit = false, strict = false;

  CLI::App* c_check = app.add_subcommand("check-flow", "validate a flow file");
  c_check->add_option("file", file)->required();
  c_check->add_flag("--emit", emit, "print the parsed object");

  CLI::App* c_branch = app.add_subcommand("branch", "branching germ counts");
  c_branch->add_option("file", file)->required();

  CLI::App* c_merge = app.add_subcommand("merge", "merging germ counts");
  c_merge->add_option("file", file)->required();

  CLI::App* c_tdi = app.add_subcommand("tdi", "refinement-morphism check");
  c_tdi->add_option("source", source_file)->required();
  c_tdi->add_option("target", target_file)->required();
  c_tdi->add_option("map", map_file)->required();
  c_tdi->add_flag("--strict", strict, "exit 1 on a false verdict");

  CLI::App* c_ball = app.add_subcommand("ball", "full directed ball check");
  c_ball->add_option("file", file)->required();
  c_ball->add_flag("--strict", strict, "exit 1 on a false verdict");

  CLI::App* c_sub = app.add_subcommand("subdivide", "insert a fresh element or edge chain");
  c_sub->add_option("file", file)->required();
  c_sub->add_option("--x", sub_x, "lower end of the cover pair (poset input)");
  c_sub->add_option("--y", sub_y, "upper end of the cover pair (poset input)");
  c_sub->add_option("--label", sub_label, "fresh element label (poset input)");
  c_sub->add_option("--edge", sub_edge, "edge to split (presentation input)");
  c_sub->add_option("--n", sub_n, "number of pieces (presentation input)");

  CLI::App* c_realize = app.add_subcommand("realize", "realize a presentation");
  c_realize->add_option("file", file)->required();
  c_realize->add_flag("--emit", emit, "print the realized flow");

  CLI::App* c_zigzag = app.add_subcommand("zigzag", "bounded move search");
  c_zigzag->add_option("--from", source_file)->required();
  c_zigzag->add_option("--to", target_file)->required();
  c_zigzag->add_option("--depth", depth, "move bound");
  c_zigzag->add_option("--size", size, "poset size bound");
  c_zigzag->add_flag("--strict", strict, "exit 1 unless reachable");

  CLI::App* c_pasiso = app.add_subcommand("pasiso", "cube-versus-segment certificate");
  c_pasiso->add_option("--n", opt_n, "cube dimension")->required();

  CLI::App* c_classt = app.add_subcommand("class-t", "generating class membership");
  c_classt->add_option("source", source_file)->required();
  c_classt->add_option("target", target_file)->required();
  c_classt->add_option("map", map_file)->required();
  c_classt->add_flag("--strict", strict, "exit 1 on a false verdict");

  std::vector<const char*> argv;
  argv.push_back("diflow");
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return {0, app.help()};
    return {2, std::string("error: ") + e.what() + "\n"};
  }

  try {
    std::ostringstream out;
    int code = 0;

    if (app.got_subcommand(c_check)) {
      named_object o = parse_input(file);
      const flow* f = std::get_if<flow>(&o.value);
      if (!f) throw validation_error(o.name + ": expected a flow");
      if (emit) {
        out << emit_flow(*f, o.name);
      } else {
        out << "flow: states=" << f->states().size() << " paths=" << f->paths().size()
            << " loopless=" << detail::bool_word(is_loopless(*f)) << "\n";
      }
    } else if (app.got_subcommand(c_branch) || app.got_subcommand(c_merge)) {
      const bool branching = app.got_subcommand(c_branch);
      flow f = detail::as_flow(parse_input(file));
      germ_quotient q = branching ? branching_space(f) : merging_space(f);
      for (const auto& s : f.states())
        out << "state " << s << ": " << (branching ? "branch" : "merge") << "="
            << germs_at(q, s).size() << "\n";
    } else if (app.got_subcommand(c_tdi)) {
      flow src = detail::as_flow(parse_input(source_file));
      flow tgt = detail::as_flow(parse_input(target_file));
      morphism_data m = detail::as_morphism(parse_input(map_file));
      flow_morphism fm(std::move(src), std::move(tgt), m.state_map, m.path_map);
      tdi_report rep = tdi_shadow(fm);
      out << "tdi: restriction_iso=" << detail::bool_word(rep.restriction_iso)
          << " germs_ok=" << detail::bool_word(rep.germs_ok())
          << " surrounded=" << detail::bool_word(rep.surrounded_ok)
          << " verdict=" << detail::bool_word(rep.verdict()) << "\n";
      if (strict && !rep.verdict()) code = 1;
    } else if (app.got_subcommand(c_ball)) {
      flow f = detail::as_flow(parse_input(file));
      bool b = is_full_directed_ball(f);
      out << "full_directed_ball: " << detail::bool_word(b) << "\n";
      if (strict && !b) code = 1;
    } else if (app.got_subcommand(c_sub)) {
      named_object o = parse_input(file);
      if (const poset* p = std::get_if<poset>(&o.value)) {
        if (sub_x.empty() || sub_y.empty() || sub_label.empty())
          throw validation_error("poset subdivision needs --x, --y and --label");
        out << emit_poset(subdivide(*p, sub_x, sub_y, sub_label), o.name);
      } else if (const flow_presentation* pr =
                     std::get_if<flow_presentation>(&o.value)) {
        if (sub_edge.empty())
          throw validation_error("presentation subdivision needs --edge");
        auto [next, fm] = subdivide_edge(*pr, sub_edge, sub_n);
        out << emit_presentation(next, o.name);
      } else {
        throw validation_error(o.name + ": expected a poset or presentation");
      }
    } else if (app.got_subcommand(c_realize)) {
      named_object o = parse_input(file);
      flow f = realize(detail::as_presentation(o));
      if (emit) {
        out << emit_flow(f, o.name);
      } else {
        out << "flow: states=" << f.states().size() << " paths=" << f.paths().size()
            << "\n";
      }
    } else if (app.got_subcommand(c_zigzag)) {
      poset a = detail::as_poset(parse_input(source_file));
      poset b = detail::as_poset(parse_input(target_file));
      zigzag_certificate cert = bfs_equivalent(a, b, depth, size);
      out << detail::format_certificate("zigzag:", cert);
      if (strict && cert.verdict != zigzag_verdict::reachable) code = 1;
    } else if (app.got_subcommand(c_pasiso)) {
      zigzag_certificate cert = pasiso_check(opt_n);
      out << detail::format_certificate("pasiso: n=" + std::to_string(opt_n), cert);
    } else if (app.got_subcommand(c_classt)) {
      poset s = detail::as_poset(parse_input(source_file));
      poset t = detail::as_poset(parse_input(target_file));
      morphism_data m = detail::as_morphism(parse_input(map_file));
      if (!m.path_map.empty())
        throw validation_error("poset morphism files must not contain path lines");
      poset_morphism pm(s, t, m.state_map);
      bool ok = class_t_check(pm);
      out << "class_t: " << detail::bool_word(ok) << "\n";
      if (strict && !ok) code = 1;
    }

    return {code, out.str()};
  } catch (const error& e) {
    return {2, std::string("error: ") + e.what() + "\n"};
  }
}

} // namespace diflow
