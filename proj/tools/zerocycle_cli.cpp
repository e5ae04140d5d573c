// Command-line front end. Parses polynomial and family JSON, runs the
// requested analysis with a deterministic seed, and emits a report envelope
// (JSON) plus optional CSV plot data. Exit status: 0 when the verdict holds or
// a value was computed, 1 when a verdict fails, 2 on any error.

#include <CLI11.hpp>
#include <zerocycle/zerocycle.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

using namespace zerocycle;

namespace {

struct RunResult {
  json payload;
  std::optional<bool> verdict;
  std::optional<LojReport> loj;
  std::optional<ConvergenceReport> conv;
};

std::vector<cdouble> point_or_origin(const std::string& text, int dim, const std::string& what) {
  if (text.empty()) return std::vector<cdouble>(std::size_t(dim), cdouble(0.0, 0.0));
  std::vector<cdouble> p = parse_point_arg(text, what);
  require(int(p.size()) == dim, errc::dimension_mismatch,
          what + ": expected " + std::to_string(dim) + " coordinates, got " +
              std::to_string(p.size()));
  return p;
}

Region window_region(const std::string& region_path, const std::string& center_text,
                     double radius, int dim) {
  if (!region_path.empty()) {
    Region r = load_region(region_path);
    require(r.dim() == dim, errc::dimension_mismatch,
            region_path + ": region arity does not match the polynomial");
    return r;
  }
  Region r;
  r.center = point_or_origin(center_text, dim, "center");
  r.radii.assign(std::size_t(dim), radius);
  return r;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  require(out.good(), errc::bad_input, "cannot write " + path);
  out << text;
}

int finish(const std::string& command, const std::string& input, const std::string& input2,
           std::uint64_t seed, json options, const RunResult& res, const std::string& out_path,
           const std::string& csv_path, bool timing, double wall_ms) {
  ReportEnvelope env;
  env.request = json{{"command", command}, {"options", std::move(options)}, {"seed", seed}};
  if (!input.empty()) env.request["input"] = input;
  if (!input2.empty()) env.request["input2"] = input2;
  env.payload = res.payload;
  if (timing) env.wall_time_ms = wall_ms;

  std::string text = to_json(env).dump(2) + "\n";
  if (out_path.empty())
    std::cout << text;
  else
    write_text(out_path, text);

  if (!csv_path.empty()) {
    std::string csv;
    if (res.loj)
      csv = shell_profile_csv(*res.loj);
    else if (res.conv)
      csv = per_t_csv(*res.conv);
    else
      fail(errc::bad_input, command + " has no tabular payload for --csv");
    write_text(csv_path, csv);
  }
  return res.verdict && !*res.verdict ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"effective local invariants of polynomial zero sets"};
  app.require_subcommand(1);

  std::string input, input2, output_path, csv_path;
  bool timing = false;
  std::uint64_t seed = 0;
  std::string at_text, point_text, center_text, anchor_text, direction_text, base_text;
  std::string tgrid_text, region_path, probes_joined;
  std::vector<std::string> probe_texts;
  std::string t0_text = "0";
  double drop_tol = 1e-12;
  double radius = 0.5;
  double disc_radius = 0.5;
  double alpha = 0.0;
  int samples = 512;
  int shells = 8;
  int directions = 16;
  int trials = 3;
  int base_points = 4;
  int grid_density = 24;

  auto add_common = [&](CLI::App* cmd, bool needs_input = true) {
    if (needs_input)
      cmd->add_option("--input", input, "polynomial or family JSON file")->required();
    cmd->add_option("--seed", seed, "seed for all randomized probing")->capture_default_str();
    cmd->add_option("--output", output_path, "write the report envelope here instead of stdout");
    cmd->add_option("--csv", csv_path, "write tabular payload data as CSV");
    cmd->add_flag("--timing", timing, "include wall time in the report (breaks byte identity)");
  };

  CLI::App* cmd_order = app.add_subcommand("order", "order of vanishing at a point");
  add_common(cmd_order);
  cmd_order->add_option("--at", at_text, "base point, coordinates re,im separated by ;");
  cmd_order
      ->add_option("--drop-tol", drop_tol, "relative size below which float terms are noise")
      ->capture_default_str();

  CLI::App* cmd_degree = app.add_subcommand("degree", "local degree of the zero cycle at a point");
  add_common(cmd_degree);
  cmd_degree->add_option("--at", at_text, "base point on the zero set");
  cmd_degree->add_option("--radius", radius, "probe radius")->capture_default_str();
  cmd_degree->add_option("--trials", trials, "independent probe rounds")->capture_default_str();

  CLI::App* cmd_dist = app.add_subcommand("dist", "distance from a point to the zero set");
  add_common(cmd_dist);
  cmd_dist->add_option("--point", point_text, "query point, coordinates re,im separated by ;")
      ->required();
  cmd_dist->add_option("--directions", directions, "seeded sweep directions")->capture_default_str();

  CLI::App* cmd_slice = app.add_subcommand(
      "slice-degree", "Weierstrass slice degree over a polydisc (last variable is the fibre)");
  add_common(cmd_slice);
  cmd_slice->add_option("--radius", radius, "uniform polydisc radius")->capture_default_str();
  cmd_slice->add_option("--center", center_text, "polydisc center (default origin)");
  cmd_slice->add_option("--region", region_path, "polydisc JSON file (overrides radius/center)");
  cmd_slice->add_option("--base-points", base_points, "generic base points to compare")->capture_default_str();

  CLI::App* cmd_verify = app.add_subcommand("loj-verify",
                                            "verify |f| >= c dist^alpha on shells around a point");
  add_common(cmd_verify);
  cmd_verify->add_option("--alpha", alpha, "exponent to test")->required();
  cmd_verify->add_option("--at", at_text, "center point");
  cmd_verify->add_option("--radius", radius, "outer shell radius")->capture_default_str();
  cmd_verify->add_option("--samples", samples, "total shell samples")->capture_default_str();
  cmd_verify->add_option("--shells", shells, "dyadic shells")->capture_default_str();
  cmd_verify->add_option("--directions", directions, "distance sweep directions")->capture_default_str();

  CLI::App* cmd_estimate =
      app.add_subcommand("loj-estimate", "estimate the sharp exponent from shell minima");
  add_common(cmd_estimate);
  cmd_estimate->add_option("--at", at_text, "center point");
  cmd_estimate->add_option("--radius", radius, "outer shell radius")->capture_default_str();
  cmd_estimate->add_option("--samples", samples, "total shell samples")->capture_default_str();
  cmd_estimate->add_option("--shells", shells, "dyadic shells")->capture_default_str();
  cmd_estimate->add_option("--directions", directions, "distance sweep directions")->capture_default_str();

  CLI::App* cmd_orders =
      app.add_subcommand("family-orders", "order of vanishing along a parameter grid");
  add_common(cmd_orders);
  cmd_orders->add_option("--t0", t0_text, "parameter center")->capture_default_str();
  cmd_orders->add_option("--base", base_text, "base point (default origin)");
  cmd_orders->add_option("--tgrid", tgrid_text, "geometric:<ratio>,<count>[,<start>] or list:...")
      ->required();
  cmd_orders->add_option("--drop-tol", drop_tol, "term noise threshold")->capture_default_str();

  CLI::App* cmd_kura = app.add_subcommand(
      "family-kuratowski", "sampled Hausdorff gap between member zero sets and the limit");
  add_common(cmd_kura);
  cmd_kura->add_option("--t0", t0_text, "parameter center")->capture_default_str();
  cmd_kura->add_option("--base", base_text, "base point (default origin)");
  cmd_kura->add_option("--tgrid", tgrid_text, "parameter sequence")->required();
  cmd_kura->add_option("--radius", radius, "window radius")->capture_default_str();
  cmd_kura->add_option("--center", center_text, "window center (default origin)");
  cmd_kura->add_option("--region", region_path, "window JSON file");
  cmd_kura->add_option("--grid-density", grid_density, "slicing lines per axis")->capture_default_str();

  CLI::App* cmd_twor = app.add_subcommand(
      "family-tworzewski", "testing-disc degree stabilization along a parameter sequence");
  add_common(cmd_twor);
  cmd_twor->add_option("--t0", t0_text, "parameter center")->capture_default_str();
  cmd_twor->add_option("--base", base_text, "base point (default origin)");
  cmd_twor->add_option("--tgrid", tgrid_text, "parameter sequence")->required();
  cmd_twor->add_option("--anchor", anchor_text, "disc anchor on the limit zero set")->required();
  cmd_twor->add_option("--direction", direction_text, "transversal complex direction")->required();
  cmd_twor->add_option("--disc-radius", disc_radius, "testing disc radius")->capture_default_str();

  CLI::App* cmd_fibres = app.add_subcommand(
      "family-fibres", "fibre cycle convergence for g(x) = s as s approaches a value");
  add_common(cmd_fibres);
  cmd_fibres->add_option("--t0", t0_text, "limit fibre value s0")->capture_default_str();
  cmd_fibres->add_option("--tgrid", tgrid_text, "fibre value sequence")->required();
  cmd_fibres->add_option("--anchor", anchor_text, "disc anchor on the limit fibre")->required();
  cmd_fibres->add_option("--direction", direction_text, "transversal complex direction")
      ->required();
  cmd_fibres->add_option("--disc-radius", disc_radius, "testing disc radius")->capture_default_str();

  CLI::App* cmd_fdist = app.add_subcommand(
      "family-distance", "continuity of dist(x, zero set) in the parameter");
  add_common(cmd_fdist);
  cmd_fdist->add_option("--t0", t0_text, "parameter center")->capture_default_str();
  cmd_fdist->add_option("--base", base_text, "base point (default origin)");
  cmd_fdist->add_option("--tgrid", tgrid_text, "parameter sequence")->required();
  cmd_fdist->add_option("--probe", probe_texts, "probe point, repeatable")->required();
  cmd_fdist->add_option("--directions", directions, "distance sweep directions")->capture_default_str();

  CLI::App* cmd_proper = app.add_subcommand(
      "family-properness", "persistence of finite plane-curve intersection");
  add_common(cmd_proper);
  cmd_proper->add_option("--input2", input2, "second plane-curve family JSON file")->required();
  cmd_proper->add_option("--t0", t0_text, "parameter center")->capture_default_str();
  cmd_proper->add_option("--tgrid", tgrid_text, "parameter sequence")->required();
  cmd_proper->add_option("--radius", radius, "window radius")->capture_default_str();
  cmd_proper->add_option("--center", center_text, "window center (default origin)");
  cmd_proper->add_option("--region", region_path, "window JSON file");

  CLI::App* cmd_uniform = app.add_subcommand(
      "family-uniform-loj", "uniform exponent for the family inequality near t0");
  add_common(cmd_uniform);
  cmd_uniform->add_option("--t0", t0_text, "parameter center")->capture_default_str();
  cmd_uniform->add_option("--base", base_text, "common zero of all members (default origin)");
  cmd_uniform->add_option("--tgrid", tgrid_text, "parameter grid")->required();
  cmd_uniform->add_option("--samples", samples, "shell samples per member")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  const auto started = std::chrono::steady_clock::now();
  try {
    RunResult res;
    std::string command;
    json options = json::object();

    if (app.got_subcommand(cmd_order)) {
      command = "order";
      PolyDocument doc = load_poly_document(input);
      std::vector<cdouble> a = point_or_origin(at_text, doc.poly.nvars(), "at");
      bool at_origin = true;
      for (const cdouble& c : a) at_origin = at_origin && std::abs(c) == 0.0;
      std::optional<std::uint32_t> ord;
      std::string mode = "float";
      if (doc.exact && at_origin) {
        ord = order_at_origin(*doc.exact);
        mode = "exact";
      } else {
        ord = order_at(doc.poly, a, drop_tol);
      }
      require(ord.has_value(), errc::zero_polynomial, "order of the zero polynomial");
      options = json{{"at", to_json(a)}, {"drop_tol", drop_tol}};
      res.payload = json{{"mode", mode}, {"order", *ord}};
    } else if (app.got_subcommand(cmd_degree)) {
      command = "degree";
      PolyDocument doc = load_poly_document(input);
      std::vector<cdouble> a = point_or_origin(at_text, doc.poly.nvars(), "at");
      int deg = local_degree_cycle(doc.poly, a, radius, trials, seed);
      options = json{{"at", to_json(a)}, {"radius", radius}, {"trials", trials}};
      res.payload = json{{"degree", deg}};
    } else if (app.got_subcommand(cmd_dist)) {
      command = "dist";
      PolyDocument doc = load_poly_document(input);
      std::vector<cdouble> z = point_or_origin(point_text, doc.poly.nvars(), "point");
      DistanceEstimate d = dist_to_zero_set(doc.poly, z, directions, seed);
      options = json{{"directions", directions}, {"point", to_json(z)}};
      res.payload = to_json(d);
    } else if (app.got_subcommand(cmd_slice)) {
      command = "slice-degree";
      PolyDocument doc = load_poly_document(input);
      Region box = window_region(region_path, center_text, radius, doc.poly.nvars());
      SliceCycleReport rep = weierstrass_slice_degree(doc.poly, box, base_points, seed);
      options = json{{"base_points", base_points},
                     {"region", json{{"center", to_json(box.center)}, {"radii", box.radii}}}};
      res.payload = to_json(rep);
    } else if (app.got_subcommand(cmd_verify)) {
      command = "loj-verify";
      PolyDocument doc = load_poly_document(input);
      std::vector<cdouble> a = point_or_origin(at_text, doc.poly.nvars(), "at");
      Region region;
      region.center = a;
      region.radii.assign(a.size(), radius);
      LojOptions opt;
      opt.n_shells = shells;
      opt.dist_directions = directions;
      LojReport rep = verify_inequality(doc.poly, a, alpha, region, samples, seed, opt);
      options = json{{"alpha", alpha},          {"at", to_json(a)},
                     {"decay_factor", opt.decay_factor}, {"directions", directions},
                     {"radius", radius},        {"samples", samples},
                     {"shells", shells}};
      res.payload = to_json(rep);
      res.verdict = rep.holds;
      res.loj = std::move(rep);
    } else if (app.got_subcommand(cmd_estimate)) {
      command = "loj-estimate";
      PolyDocument doc = load_poly_document(input);
      std::vector<cdouble> a = point_or_origin(at_text, doc.poly.nvars(), "at");
      Region region;
      region.center = a;
      region.radii.assign(a.size(), radius);
      LojOptions opt;
      opt.n_shells = shells;
      opt.dist_directions = directions;
      double est = estimate_exponent(doc.poly, a, region, samples, seed, opt);
      options = json{{"at", to_json(a)},   {"directions", directions}, {"radius", radius},
                     {"samples", samples}, {"shells", shells}};
      res.payload = json{{"alpha_estimate", est}};
    } else if (app.got_subcommand(cmd_orders)) {
      command = "family-orders";
      PolyDocument doc = load_poly_document(input);
      cdouble t0 = parse_complex_arg(t0_text, "t0");
      ParamFamily fam = doc.family(t0, base_text.empty()
                                           ? std::vector<cdouble>{}
                                           : parse_point_arg(base_text, "base"));
      std::vector<cdouble> grid = parse_parameter_grid(tgrid_text, t0);
      ConvergenceReport rep = order_profile(fam, grid, drop_tol);
      options = json{{"base", to_json(fam.base_point)},
                     {"drop_tol", drop_tol},
                     {"t0", to_json(t0)},
                     {"tgrid", tgrid_text}};
      res.payload = to_json(rep);
      res.verdict = rep.holds;
      res.conv = std::move(rep);
    } else if (app.got_subcommand(cmd_kura)) {
      command = "family-kuratowski";
      PolyDocument doc = load_poly_document(input);
      cdouble t0 = parse_complex_arg(t0_text, "t0");
      ParamFamily fam = doc.family(t0, base_text.empty()
                                           ? std::vector<cdouble>{}
                                           : parse_point_arg(base_text, "base"));
      Region window = window_region(region_path, center_text, radius, fam.space_dim());
      std::vector<cdouble> grid = parse_parameter_grid(tgrid_text, t0);
      ConvergenceReport rep = kuratowski_check(fam, grid, window, grid_density);
      options = json{{"base", to_json(fam.base_point)},
                     {"grid_density", grid_density},
                     {"t0", to_json(t0)},
                     {"tgrid", tgrid_text},
                     {"window", json{{"center", to_json(window.center)}, {"radii", window.radii}}}};
      res.payload = to_json(rep);
      res.verdict = rep.holds;
      res.conv = std::move(rep);
    } else if (app.got_subcommand(cmd_twor)) {
      command = "family-tworzewski";
      PolyDocument doc = load_poly_document(input);
      cdouble t0 = parse_complex_arg(t0_text, "t0");
      ParamFamily fam = doc.family(t0, base_text.empty()
                                           ? std::vector<cdouble>{}
                                           : parse_point_arg(base_text, "base"));
      std::vector<cdouble> anchor = point_or_origin(anchor_text, fam.space_dim(), "anchor");
      std::vector<cdouble> direction = point_or_origin(direction_text, fam.space_dim(),
                                                       "direction");
      std::vector<cdouble> grid = parse_parameter_grid(tgrid_text, t0);
      ConvergenceReport rep = tworzewski_check(fam, anchor, direction, disc_radius, grid);
      options = json{{"anchor", to_json(anchor)},
                     {"base", to_json(fam.base_point)},
                     {"direction", to_json(direction)},
                     {"disc_radius", disc_radius},
                     {"t0", to_json(t0)},
                     {"tgrid", tgrid_text}};
      res.payload = to_json(rep);
      res.verdict = rep.holds;
      res.conv = std::move(rep);
    } else if (app.got_subcommand(cmd_fibres)) {
      command = "family-fibres";
      PolyDocument doc = load_poly_document(input);
      require(!doc.is_family(), errc::bad_input,
              "family-fibres expects a plain polynomial map, not a family");
      cdouble s0 = parse_complex_arg(t0_text, "t0");
      std::vector<cdouble> anchor = point_or_origin(anchor_text, doc.poly.nvars(), "anchor");
      std::vector<cdouble> direction = point_or_origin(direction_text, doc.poly.nvars(),
                                                       "direction");
      std::vector<cdouble> grid = parse_parameter_grid(tgrid_text, s0);
      ConvergenceReport rep =
          fibre_cycle_convergence(doc.poly, s0, anchor, direction, disc_radius, grid);
      options = json{{"anchor", to_json(anchor)},
                     {"direction", to_json(direction)},
                     {"disc_radius", disc_radius},
                     {"t0", to_json(s0)},
                     {"tgrid", tgrid_text}};
      res.payload = to_json(rep);
      res.verdict = rep.holds;
      res.conv = std::move(rep);
    } else if (app.got_subcommand(cmd_fdist)) {
      command = "family-distance";
      PolyDocument doc = load_poly_document(input);
      cdouble t0 = parse_complex_arg(t0_text, "t0");
      ParamFamily fam = doc.family(t0, base_text.empty()
                                           ? std::vector<cdouble>{}
                                           : parse_point_arg(base_text, "base"));
      std::vector<std::vector<cdouble>> probes;
      for (const std::string& text : probe_texts)
        probes.push_back(point_or_origin(text, fam.space_dim(), "probe"));
      std::vector<cdouble> grid = parse_parameter_grid(tgrid_text, t0);
      ConvergenceReport rep = distance_continuity_check(fam, probes, grid, directions, seed);
      json probes_json = json::array();
      for (const auto& p : probes) probes_json.push_back(to_json(p));
      options = json{{"base", to_json(fam.base_point)},
                     {"directions", directions},
                     {"probes", probes_json},
                     {"t0", to_json(t0)},
                     {"tgrid", tgrid_text}};
      res.payload = to_json(rep);
      res.verdict = rep.holds;
      res.conv = std::move(rep);
    } else if (app.got_subcommand(cmd_proper)) {
      command = "family-properness";
      PolyDocument doc_x = load_poly_document(input);
      PolyDocument doc_y = load_poly_document(input2);
      cdouble t0 = parse_complex_arg(t0_text, "t0");
      ParamFamily fam_x = doc_x.family(t0);
      ParamFamily fam_y = doc_y.family(t0);
      Region window = window_region(region_path, center_text, radius, 2);
      std::vector<cdouble> grid = parse_parameter_grid(tgrid_text, t0);
      ConvergenceReport rep = properness_persistence_check(fam_x, fam_y, window, grid);
      options = json{{"t0", to_json(t0)},
                     {"tgrid", tgrid_text},
                     {"window", json{{"center", to_json(window.center)}, {"radii", window.radii}}}};
      res.payload = to_json(rep);
      res.verdict = rep.holds;
      res.conv = std::move(rep);
    } else if (app.got_subcommand(cmd_uniform)) {
      command = "family-uniform-loj";
      PolyDocument doc = load_poly_document(input);
      cdouble t0 = parse_complex_arg(t0_text, "t0");
      ParamFamily fam = doc.family(t0, base_text.empty()
                                           ? std::vector<cdouble>{}
                                           : parse_point_arg(base_text, "base"));
      std::vector<cdouble> grid = parse_parameter_grid(tgrid_text, t0);
      ConvergenceReport rep = uniform_exponent_verify(fam, grid, samples, seed);
      options = json{{"base", to_json(fam.base_point)},
                     {"samples", samples},
                     {"t0", to_json(t0)},
                     {"tgrid", tgrid_text}};
      res.payload = to_json(rep);
      res.verdict = rep.holds;
      res.conv = std::move(rep);
    }

    const double wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started)
            .count();
    return finish(command, input, input2, seed, std::move(options), res, output_path, csv_path,
                  timing, wall_ms);
  } catch (const error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
