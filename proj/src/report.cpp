#include <cmath>
#include <cstdio>
#include <sstream>

#include "eqd/cli.hpp"
#include "eqd/svg.hpp"

namespace eqd {

std::string format_number(double value) {
  if (value == 0.0) return "0";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string format_complex(Complex value) {
  if (value.imag() == 0.0) return format_number(value.real());
  const std::string im = format_number(std::abs(value.imag()));
  return format_number(value.real()) + (value.imag() < 0 ? "-" : "+") + im + "i";
}

namespace {

std::string vname(int v) { return "v" + std::to_string(v + 1); }

std::string int_list(const IntPoly& p) {
  std::string s = "[";
  for (std::size_t k = 0; k < p.size(); ++k) s += (k ? ", " : "") + p[k].get_str();
  return s + "]";
}

std::string symmetry_name(BoundarySymmetry s) {
  switch (s) {
    case BoundarySymmetry::none: return "none";
    case BoundarySymmetry::rotations: return "rotations";
    case BoundarySymmetry::dihedral: return "dihedral";
  }
  return "none";
}

std::string exact_hint(double value) {
  const Rational q = rationalize(value, 1000000);
  if (std::abs(q.get_d() - value) <= 1e-12 * std::max(1.0, std::abs(value))) return to_string(q);
  return {};
}

struct Prepared {
  ProblemFile problem;
  std::optional<Polygon> polygon;
  std::vector<Instance> instances;
};

// Parses and expands; fills `result` and returns false on failure.
bool prepare(const std::string& text, const CliOptions& options, Prepared& out, CommandResult& result) {
  try {
    out.problem = parse_problem(text);
    out.polygon.emplace(out.problem.polygon);
  } catch (const ParseError& e) {
    result = {kParseError, {}, std::string("parse error: ") + e.what()};
    return false;
  }
  try {
    EnumerationLimits limits;
    limits.max_interior = options.max_i;
    out.instances = instances(out.problem, *out.polygon, limits);
  } catch (const ResourceCapExceeded& e) {
    result = {kError, {}, e.what()};
    return false;
  }
  return true;
}

// Maps 1-based face numbers onto positions in the system's equation list.
std::optional<std::vector<std::size_t>> square_positions(const Instance& inst, const Polygon& polygon) {
  if (!inst.square_faces) return std::nullopt;
  const PolynomialSystem s = build_system(inst.type, polygon, inst.areas);
  std::vector<std::size_t> out;
  for (int f : *inst.square_faces) {
    const auto it = std::find(s.face_of.begin(), s.face_of.end(), static_cast<std::size_t>(f - 1));
    if (it == s.face_of.end())
      throw ParseError("square_faces", "face " + std::to_string(f) + " has no unknowns");
    out.push_back(static_cast<std::size_t>(it - s.face_of.begin()));
  }
  return out;
}

std::string faces_by_position(const CombinatorialType& g, const PolynomialSystem& s,
                              const std::vector<std::size_t>& positions) {
  std::string out;
  for (std::size_t k : positions) {
    const std::size_t f = s.face_of[k];
    const Face& face = g.faces[f];
    out += (out.empty() ? "" : " ") + std::string("(") + std::to_string(face[0] + 1) + "," +
           std::to_string(face[1] + 1) + "," + std::to_string(face[2] + 1) + ")";
  }
  return out.empty() ? "(random combination)" : out;
}

void write_header(std::ostringstream& os, const char* command, const Prepared& prep, const CliOptions& options) {
  os << "eqd " << command << " report\n";
  os << "seed: " << options.solve.seed << "\n";
  os << "polygon:";
  for (const auto& q : prep.problem.polygon) os << " (" << to_string(q.x) << "," << to_string(q.y) << ")";
  os << "\npolygon_area: " << to_string(prep.polygon->area()) << "\n";
  os << "types: " << prep.instances.size() << "\n";
}

void write_type_head(std::ostringstream& os, std::size_t index, const Instance& inst, const SolutionSet& ss) {
  os << "\ntype " << index + 1 << ":\n";
  os << "  faces: " << describe_faces(inst.type) << "\n";
  os << "  canonical: " << canonical_form(inst.type) << "\n";
  os << "  areas:";
  for (const auto& a : inst.areas.areas) os << ' ' << to_string(a);
  os << "\n";
  os << "  status: " << (ss.infeasible ? "infeasible (" + ss.reason + ")" : std::string("feasible")) << "\n";
  os << "  constants:";
  if (ss.system.constants_report.empty()) os << " none";
  for (const auto& c : ss.system.constants_report) {
    const Face& f = inst.type.faces[c.face];
    os << " (" << f[0] + 1 << "," << f[1] + 1 << "," << f[2] + 1 << ")=" << to_string(c.residual);
  }
  os << "\n";
  if (ss.infeasible) return;
  if (ss.system.unknown_count > 0)
    os << "  square_faces: " << faces_by_position(inst.type, ss.system, ss.square_equations) << "\n";
  os << "  paths: total=" << ss.paths.total << " converged=" << ss.paths.converged
     << " diverged=" << ss.paths.diverged << " failed=" << ss.paths.failed << "\n";
  for (const auto& w : ss.warnings) os << "  warning: " << w << "\n";
}

int combine_exit(const std::vector<SolutionSet>& sets) {
  bool failures = false, all_infeasible = !sets.empty();
  for (const auto& s : sets) {
    failures = failures || s.paths.failed > 0;
    all_infeasible = all_infeasible && s.infeasible;
  }
  if (failures) return kPathFailures;
  if (all_infeasible) return kInfeasible;
  return kOk;
}

SolveConfig config_for(const Instance& inst, const Polygon& polygon, const CliOptions& options) {
  SolveConfig config = options.solve;
  if (auto positions = square_positions(inst, polygon)) config.square_equations = std::move(positions);
  return config;
}

}  // namespace

CommandResult cmd_solve(const std::string& text, const CliOptions& options) {
  CommandResult result;
  Prepared prep;
  if (!prepare(text, options, prep, result)) return result;

  std::ostringstream os;
  write_header(os, "solve", prep, options);
  std::vector<SolutionSet> sets;
  std::size_t geometric_total = 0;
  std::ostringstream body;
  for (std::size_t t = 0; t < prep.instances.size(); ++t) {
    const Instance& inst = prep.instances[t];
    SolveConfig config;
    try {
      config = config_for(inst, *prep.polygon, options);
    } catch (const ParseError& e) {
      return {kParseError, {}, std::string("parse error: ") + e.what()};
    }
    SolutionSet ss = solve(inst.type, *prep.polygon, inst.areas, config);
    write_type_head(body, t, inst, ss);
    if (!ss.infeasible) {
      std::size_t geometric = 0, real = 0;
      for (const auto& s : ss.solutions) {
        geometric += s.is_geometric;
        real += s.is_real;
      }
      geometric_total += geometric;
      body << "  solutions: " << ss.solutions.size() << " (real " << real << ", geometric " << geometric << ")\n";

      std::vector<SolutionCertificate> certs;
      std::string cert_error;
      if (options.certify && !ss.solutions.empty()) {
        if (inst.type.interior_count() > options.certify_config.max_interior) {
          cert_error = "skipped: " + std::to_string(inst.type.interior_count()) +
                       " interior vertices exceed the certification cap of " +
                       std::to_string(options.certify_config.max_interior);
        } else {
          try {
            certs = certify(inst.type, *prep.polygon, inst.areas, ss, options.certify_config);
          } catch (const EliminationFailure& e) {
            cert_error = std::string("failed: ") + e.what();
          }
        }
      }
      if (!cert_error.empty()) body << "  certificates: " << cert_error << "\n";

      for (std::size_t k = 0; k < ss.solutions.size(); ++k) {
        const Solution& s = ss.solutions[k];
        body << "  solution " << k + 1 << ":\n";
        body << "    real: " << (s.is_real ? "true" : "false") << "\n";
        body << "    geometric: " << (s.is_geometric ? "true" : "false") << "\n";
        body << "    residual: " << format_number(s.residual) << "\n";
        body << "    rank: " << s.isolation.rank << "/" << s.isolation.unknowns
             << (s.isolation.isolated ? " isolated" : " not isolated") << "\n";
        for (std::size_t v = 0; v < s.coordinates.size(); ++v) {
          const auto& q = s.coordinates[v];
          body << "    " << vname(inst.type.n + static_cast<int>(v)) << ": " << format_complex(q.x) << ' '
               << format_complex(q.y);
          if (s.is_real) {
            const std::string ex = exact_hint(q.x.real()), ey = exact_hint(q.y.real());
            if (!ex.empty() && !ey.empty()) body << " exact " << ex << ' ' << ey;
          }
          body << "\n";
        }
        for (const auto& d : s.diagnostics) body << "    diagnostic: " << d << "\n";
        if (k < certs.size())
          for (const auto& c : certs[k].coordinates)
            body << "    certificate " << c.variable << ": " << to_string(c.polynomial) << ' '
                 << int_list(c.polynomial) << " root " << c.root_index << " distance "
                 << format_number(c.distance) << (c.matched ? " matched" : " MISMATCH") << "\n";
      }
      body << "  divergences: " << ss.divergences.size() << "\n";
      for (const auto& d : ss.divergences) {
        body << "    path " << d.index + 1 << ": t=" << format_number(d.t_final);
        for (std::size_t v = 0; v < d.limits.size(); ++v) {
          const auto& l = d.limits[v];
          body << ' ' << vname(inst.type.n + static_cast<int>(v)) << "=[" << format_complex(l.x()) << ':'
               << format_complex(l.y()) << ':' << format_complex(l.z()) << ']';
        }
        body << "\n";
      }
    }
    sets.push_back(std::move(ss));
  }
  os << "geometric_total: " << geometric_total << "\n";
  os << body.str();
  result.output = os.str();
  result.exit_code = combine_exit(sets);
  return result;
}

CommandResult cmd_inspect(const std::string& text, const CliOptions& options) {
  CommandResult result;
  Prepared prep;
  if (!prepare(text, options, prep, result)) return result;

  std::ostringstream os;
  write_header(os, "inspect", prep, options);
  std::vector<SolutionSet> sets;
  for (std::size_t t = 0; t < prep.instances.size(); ++t) {
    const Instance& inst = prep.instances[t];
    SolveConfig config;
    try {
      config = config_for(inst, *prep.polygon, options);
    } catch (const ParseError& e) {
      return {kParseError, {}, std::string("parse error: ") + e.what()};
    }
    SolutionSet ss = solve(inst.type, *prep.polygon, inst.areas, config);
    write_type_head(os, t, inst, ss);
    os << "  divergences: " << ss.divergences.size() << "\n";
    for (const auto& path : ss.divergences) {
      os << "  path " << path.index + 1 << ":\n";
      DegenerationReport rep;
      try {
        rep = inspect(inst.type, *prep.polygon, inst.areas, path, options.degen);
      } catch (const std::logic_error& e) {
        os << "    error: " << e.what() << "\n";
        continue;
      }
      for (std::size_t v = 0; v < rep.limits.size(); ++v) {
        const auto& l = rep.limits[v];
        const int label = inst.type.n + static_cast<int>(v);
        const bool inf = std::find(rep.at_infinity.begin(), rep.at_infinity.end(), label) != rep.at_infinity.end();
        os << "    limit " << vname(label) << ": [" << format_complex(l.x()) << ':' << format_complex(l.y()) << ':'
           << format_complex(l.z()) << "] " << (inf ? "at infinity" : "finite") << "\n";
      }
      os << "    H vertices:";
      for (int v : rep.h_vertices) os << ' ' << v + 1;
      os << "\n    H edges:";
      for (const auto& [a, b] : rep.h_edges) os << ' ' << a + 1 << '-' << b + 1;
      os << "\n    mixed_rate_warning: " << (rep.mixed_rate_warning ? "true" : "false") << "\n";
      for (std::size_t f = 0; f < rep.faces.size(); ++f) {
        const HFace& face = rep.faces[f];
        os << "    face " << f + 1 << ": walk";
        for (int v : face.walk) os << ' ' << v + 1;
        os << "; " << (face.g_face >= 0 ? "face of G" : "not a face of G") << "; S_f " << to_string(face.prescribed)
           << "; S'_f " << format_complex(face.limit_area);
        if (face.collinearity) os << "; collinearity " << format_number(*face.collinearity);
        os << "\n";
      }
      const AreaAudit audit = area_sum_audit(rep, *prep.polygon);
      os << "    audit: sum S_f " << to_string(audit.prescribed_sum) << "; sum S'_f " << format_complex(audit.limit_sum)
         << "; polygon area " << to_string(audit.polygon_area) << "; defect " << format_complex(audit.defect)
         << "; collapsed defect " << format_complex(audit.collapsed_defect)
         << "; leftover excess " << format_complex(audit.leftover_excess) << "; near_solution " << (audit.near_solution ? "true" : "false") << "\n";
    }
    sets.push_back(std::move(ss));
  }
  result.output = os.str();
  result.exit_code = combine_exit(sets);
  return result;
}

CommandResult cmd_render(const std::string& text, std::size_t solution_index, std::size_t type_index,
                         const CliOptions& options) {
  CommandResult result;
  Prepared prep;
  if (!prepare(text, options, prep, result)) return result;
  if (type_index < 1 || type_index > prep.instances.size())
    return {kError, {}, "type index " + std::to_string(type_index) + " out of range (" +
                            std::to_string(prep.instances.size()) + " types)"};
  const Instance& inst = prep.instances[type_index - 1];
  SolveConfig config;
  try {
    config = config_for(inst, *prep.polygon, options);
  } catch (const ParseError& e) {
    return {kParseError, {}, std::string("parse error: ") + e.what()};
  }
  const SolutionSet ss = solve(inst.type, *prep.polygon, inst.areas, config);
  if (ss.infeasible) return {kInfeasible, {}, "problem is infeasible: " + ss.reason};
  if (solution_index < 1 || solution_index > ss.solutions.size())
    return {kError, {}, "solution index " + std::to_string(solution_index) + " out of range (" +
                            std::to_string(ss.solutions.size()) + " solutions)"};
  const Solution& s = ss.solutions[solution_index - 1];
  if (!s.is_geometric) {
    std::string why = s.diagnostics.empty() ? std::string("not geometric") : s.diagnostics.front();
    return {kError, {}, "solution " + std::to_string(solution_index) + " is not geometric: " + why};
  }
  result.output = render_svg(inst.type, *prep.polygon, inst.areas, s.coordinates);
  return result;
}

CommandResult cmd_enumerate(int n, int interior, BoundarySymmetry symmetry, const CliOptions& options) {
  EnumerationLimits limits;
  limits.max_interior = options.max_i;
  std::vector<CombinatorialType> types;
  try {
    types = enumerate_types(n, interior, symmetry, limits);
  } catch (const std::exception& e) {
    return {kError, {}, e.what()};
  }
  std::ostringstream os;
  os << "eqd enumerate-types report\n";
  os << "n: " << n << "\ni: " << interior << "\nsymmetry: " << symmetry_name(symmetry) << "\n";
  os << "count: " << types.size() << "\n";
  for (std::size_t k = 0; k < types.size(); ++k) {
    os << "type " << k + 1 << ": " << describe_faces(types[k]) << "\n";
    os << "  canonical: " << canonical_form(types[k], symmetry) << "\n";
  }
  return {kOk, os.str(), {}};
}

}  // namespace eqd
