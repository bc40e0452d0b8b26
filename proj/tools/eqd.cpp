#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "eqd/cli.hpp"

namespace {

bool read_file(const std::string& path, std::string& text) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  text = ss.str();
  return true;
}

int emit(const eqd::CommandResult& r, const std::string& out_path) {
  if (!r.error.empty()) std::cerr << "eqd: " << r.error << "\n";
  if (r.output.empty()) return r.exit_code;
  if (out_path.empty()) {
    std::cout << r.output;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::cerr << "eqd: cannot write " << out_path << "\n";
      return eqd::kError;
    }
    out << r.output;
  }
  return r.exit_code;
}

void add_tolerances(CLI::App* app, eqd::CliOptions& o) {
  auto& s = o.solve;
  auto& t = s.tracker;
  app->add_option("--seed", s.seed, "Seed for gamma and sampling")->capture_default_str();
  app->add_option("--max-i", o.max_i, "Largest interior vertex count accepted")->capture_default_str();
  app->add_flag("--serial", [&s](std::int64_t) { s.parallel = false; }, "Track paths on one thread");
  app->add_option("--tol-filter", s.filter_tolerance, "Leftover-equation filter")->capture_default_str();
  app->add_option("--tol-refine", s.refine_tolerance, "Gauss-Newton step tolerance")->capture_default_str();
  app->add_option("--tol-residual", s.residual_tolerance, "Accepted residual")->capture_default_str();
  app->add_option("--tol-dedup", s.dedup_tolerance, "Duplicate-solution distance")->capture_default_str();
  app->add_option("--tol-real", s.real_tolerance, "Imaginary part treated as zero")->capture_default_str();
  app->add_option("--tol-rank", s.rank_threshold, "Relative singular-value cut for rank")->capture_default_str();
  app->add_option("--tol-corrector", t.corrector_tolerance, "Corrector tolerance")->capture_default_str();
  app->add_option("--tol-endpoint", t.endpoint_tolerance, "Endpoint residual for convergence")->capture_default_str();
  app->add_option("--tol-min-step", t.min_step, "Smallest step before a path fails")->capture_default_str();
  app->add_option("--tol-divergence", t.divergence_threshold, "Coordinate magnitude marking divergence")
      ->capture_default_str();
  app->add_option("--tol-stall", t.stall_divergence_threshold, "Magnitude at which a stalled path counts as diverged")
      ->capture_default_str();
  app->add_option("--tol-infinity", o.degen.infinity_tolerance, "|z| below which a limit is at infinity")
      ->capture_default_str();
  app->add_option("--tol-mixed-rate", o.degen.mixed_rate_magnitude, "Magnitude flagged as near truncation")
      ->capture_default_str();
  app->add_option("--tol-match", o.certify_config.match_tolerance, "Certificate root match distance")
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Triangulations of polygons with prescribed face areas"};
  app.require_subcommand(1);
  eqd::CliOptions options;
  std::string file, out_path;
  std::size_t index = 1, type_index = 1;
  int n = 0, interior = 0;
  std::string symmetry = "none";

  auto* solve = app.add_subcommand("solve", "Solve every type in a problem file");
  solve->add_option("file", file, "Problem file")->required();
  solve->add_flag("--certify", options.certify, "Attach algebraicity certificates (i <= 2)");
  solve->add_option("--out", out_path, "Write the report here instead of stdout");
  add_tolerances(solve, options);

  auto* render = app.add_subcommand("render", "Draw one solution as SVG");
  render->add_option("file", file, "Problem file")->required();
  render->add_option("--index", index, "1-based solution number")->capture_default_str();
  render->add_option("--type", type_index, "1-based type number")->capture_default_str();
  render->add_option("--out", out_path, "Write the SVG here instead of stdout");
  add_tolerances(render, options);

  auto* inspect = app.add_subcommand("inspect", "Report the degeneration of every diverged path");
  inspect->add_option("file", file, "Problem file")->required();
  inspect->add_option("--out", out_path, "Write the report here instead of stdout");
  add_tolerances(inspect, options);

  auto* enumerate = app.add_subcommand("enumerate-types", "List combinatorial types");
  enumerate->add_option("n", n, "Polygon vertex count")->required()->check(CLI::Range(3, 64));
  enumerate->add_option("i", interior, "Interior vertex count")->required()->check(CLI::NonNegativeNumber);
  enumerate->add_option("--symmetry", symmetry, "none, rotations or dihedral")
      ->check(CLI::IsMember({"none", "rotations", "dihedral"}))
      ->capture_default_str();
  enumerate->add_option("--max-i", options.max_i, "Largest interior vertex count accepted")->capture_default_str();
  enumerate->add_option("--out", out_path, "Write the list here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : eqd::kParseError;
  }

  if (enumerate->parsed()) {
    const auto sym = symmetry == "rotations"  ? eqd::BoundarySymmetry::rotations
                     : symmetry == "dihedral" ? eqd::BoundarySymmetry::dihedral
                                              : eqd::BoundarySymmetry::none;
    return emit(eqd::cmd_enumerate(n, interior, sym, options), out_path);
  }

  std::string text;
  if (!read_file(file, text)) {
    std::cerr << "eqd: cannot read " << file << "\n";
    return eqd::kError;
  }
  try {
    if (solve->parsed()) return emit(eqd::cmd_solve(text, options), out_path);
    if (render->parsed()) return emit(eqd::cmd_render(text, index, type_index, options), out_path);
    return emit(eqd::cmd_inspect(text, options), out_path);
  } catch (const std::exception& e) {
    std::cerr << "eqd: " << e.what() << "\n";
    return eqd::kError;
  }
}
