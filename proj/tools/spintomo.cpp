#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "spintomo/equivalence.hpp"
#include "spintomo/kernels.hpp"
#include "spintomo/serialization.hpp"
#include "spintomo/verify.hpp"

namespace st = spintomo;
using nlohmann::json;

namespace {

constexpr int kExitConfig = 2;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<double> parse_numbers(const std::string &spec) {
  std::vector<double> out;
  std::stringstream ss(spec);
  std::string field;
  while (std::getline(ss, field, ','))
    out.push_back(std::stod(field));
  return out;
}

// Axis spec: "theta,phi" (angles, radians unless --degrees) or "x,y,z"
// (Cartesian, normalized with a warning when off unit length).
st::UnitAxis parse_axis(const std::string &name, const std::string &spec,
                        bool degrees) {
  std::vector<double> v;
  try {
    v = parse_numbers(spec);
  } catch (const std::exception &) {
    throw ConfigError(name + ": cannot parse '" + spec + "'");
  }
  if (v.size() == 2) {
    double scale = degrees ? st::kPi / 180.0 : 1.0;
    return st::UnitAxis::from_angles(v[0] * scale, v[1] * scale);
  }
  if (v.size() == 3) {
    double norm = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    if (std::abs(norm - 1.0) > 1e-10)
      std::cerr << "warning: " << name << " has |n| = " << norm
                << ", normalizing\n";
    return st::UnitAxis::from_cartesian(v[0], v[1], v[2]);
  }
  throw ConfigError(name + ": expected 'theta,phi' or 'x,y,z'");
}

std::string resolve_out_path(const std::string &out) {
  namespace fs = std::filesystem;
  const char *dir = std::getenv("SPINTOMO_OUT_DIR");
  if (dir != nullptr && *dir != '\0' && !fs::path(out).is_absolute())
    return (fs::path(dir) / out).string();
  return out;
}

void require_projection(st::SpinQuantum j, int twice_m, const std::string &name) {
  if (((j.twice() - twice_m) % 2) != 0)
    throw ConfigError(name + ": parity of 2m=" + std::to_string(twice_m) +
                      " does not match 2j=" + std::to_string(j.twice()));
}

json complex_json(st::Complex v) {
  return json{{"re", v.real()}, {"im", v.imag()}};
}

// ---------------------------------------------------------------- kernel --
struct KernelArgs {
  int twice_j = 1;
  int twice_m1 = 0, twice_m2 = 0, twice_m3 = 0;
  std::string n1 = "0,0", n2 = "0,0", n3 = "0,0";
  std::vector<std::string> methods{"trace", "explicit", "cg", "recurrence"};
  bool degrees = false;
  std::string out;
  std::string format = "json";
};

int run_kernel(const KernelArgs &args) {
  st::SpinQuantum j(args.twice_j);
  require_projection(j, args.twice_m1, "--m1");
  require_projection(j, args.twice_m2, "--m2");
  require_projection(j, args.twice_m3, "--m3");

  st::KernelPoint point{
      st::PhasePoint{st::SpinProjection(args.twice_m3),
                     parse_axis("--n3", args.n3, args.degrees)},
      st::PhasePoint{st::SpinProjection(args.twice_m2),
                     parse_axis("--n2", args.n2, args.degrees)},
      st::PhasePoint{st::SpinProjection(args.twice_m1),
                     parse_axis("--n1", args.n1, args.degrees)}};

  std::vector<std::pair<std::string, st::Complex>> values;
  for (const std::string &method : args.methods) {
    if (method == "trace")
      values.emplace_back(method, st::kernel_trace(j, point));
    else if (method == "explicit")
      values.emplace_back(method, st::kernel_explicit(j, point));
    else if (method == "cg")
      values.emplace_back(method, st::kernel_cg(j, point));
    else if (method == "recurrence")
      values.emplace_back(method, st::kernel_via_recurrence(j, point));
    else
      throw ConfigError("unknown kernel method: " + method);
  }

  for (const auto &[name, v] : values)
    std::printf("%-10s  % .17g  %+.17g i\n", name.c_str(), v.real(), v.imag());
  json gaps = json::object();
  for (std::size_t a = 0; a < values.size(); ++a)
    for (std::size_t b = a + 1; b < values.size(); ++b) {
      double gap = std::abs(values[a].second - values[b].second);
      std::printf("|%s - %s| = %.3e\n", values[a].first.c_str(),
                  values[b].first.c_str(), gap);
      gaps[values[a].first + "_vs_" + values[b].first] = gap;
    }

  if (!args.out.empty()) {
    std::string path = resolve_out_path(args.out);
    if (args.format == "json") {
      json methods = json::object();
      for (const auto &[name, v] : values)
        methods[name] = complex_json(v);
      json doc{{"type", "kernel_values"},
               {"twice_j", args.twice_j},
               {"point",
                {{"twice_m1", args.twice_m1},
                 {"twice_m2", args.twice_m2},
                 {"twice_m3", args.twice_m3},
                 {"theta1", point.x1.n.theta()},
                 {"phi1", point.x1.n.phi()},
                 {"theta2", point.x2.n.theta()},
                 {"phi2", point.x2.n.phi()},
                 {"theta3", point.x3.n.theta()},
                 {"phi3", point.x3.n.phi()}}},
               {"methods", methods},
               {"gaps", gaps}};
      st::write_text_file(path, doc.dump(2) + "\n");
    } else {
      std::string csv = "method,re,im\n";
      for (const auto &[name, v] : values)
        csv += name + "," + st::format_full(v.real()) + "," +
               st::format_full(v.imag()) + "\n";
      st::write_text_file(path, csv);
    }
    std::printf("wrote %s\n", path.c_str());
  }
  return 0;
}

// ---------------------------------------------------------------- figure --
struct FigureArgs {
  std::string id;
  int grid_theta = 90;
  int grid_phi = 180;
  std::string out;
  std::string format = "json";
};

struct FigureSpec {
  int twice_j;
  bool is_delta; // delta kernel (two-point) vs star-product kernel
  st::UnitAxis n2, n3;
  int twice_m1, twice_m2, twice_m3;
};

FigureSpec figure_spec(const std::string &id) {
  const double r2 = std::sqrt(2.0), r3 = std::sqrt(3.0);
  if (id == "fig1a")
    return {1, true, st::UnitAxis::from_cartesian(0.0, -r3 / 2.0, 0.5),
            st::UnitAxis::z(), 1, -1, 0};
  if (id == "fig1b")
    return {2, true,
            st::UnitAxis::from_cartesian(-1.0 / (2.0 * r2), r3 / (2.0 * r2),
                                         1.0 / r2),
            st::UnitAxis::z(), 0, 2, 0};
  if (id == "fig1c_e")
    return {1, false,
            st::UnitAxis::from_cartesian(-r3 / (2.0 * r2), -r3 / (2.0 * r2),
                                         -1.0 / r2),
            st::UnitAxis::from_cartesian(-0.5, -r3 / 2.0, 0.0), 1, 1, 1};
  if (id == "fig1d_f")
    return {2, false, st::UnitAxis::from_cartesian(0.5, -0.5, 1.0 / r2),
            st::UnitAxis::from_cartesian(0.0, 1.0, 0.0), 0, 2, -2};
  throw ConfigError("unknown figure id: " + id +
                    " (expected fig1a, fig1b, fig1c_e, fig1d_f)");
}

int run_figure(const FigureArgs &args) {
  FigureSpec spec = figure_spec(args.id);
  st::SpinQuantum j(spec.twice_j);
  if (args.grid_theta < 2 || args.grid_phi < 1)
    throw ConfigError("figure grid must be at least 2 x 1");

  json rows = json::array();
  std::string csv = "theta1,phi1,re,im\n";
  for (int it = 0; it < args.grid_theta; ++it) {
    double theta = st::kPi * it / (args.grid_theta - 1);
    for (int ip = 0; ip < args.grid_phi; ++ip) {
      double phi = st::kTwoPi * ip / args.grid_phi;
      st::PhasePoint x1{st::SpinProjection(spec.twice_m1),
                        st::UnitAxis::from_angles(theta, phi)};
      st::Complex v;
      if (spec.is_delta) {
        st::PhasePoint x2{st::SpinProjection(spec.twice_m2), spec.n2};
        v = st::delta_kernel(j, x2, x1);
      } else {
        st::KernelPoint p{st::PhasePoint{st::SpinProjection(spec.twice_m3),
                                         spec.n3},
                          st::PhasePoint{st::SpinProjection(spec.twice_m2),
                                         spec.n2},
                          x1};
        v = st::kernel_explicit(j, p);
      }
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw std::runtime_error("figure grid produced a non-finite value");
      rows.push_back({{"theta", theta},
                      {"phi", phi},
                      {"re", v.real()},
                      {"im", v.imag()}});
      csv += st::format_full(theta) + "," + st::format_full(phi) + "," +
             st::format_full(v.real()) + "," + st::format_full(v.imag()) +
             "\n";
    }
  }

  json fixed{{"twice_m1", spec.twice_m1},
             {"twice_m2", spec.twice_m2},
             {"n2", {spec.n2.cartesian().x(), spec.n2.cartesian().y(),
                     spec.n2.cartesian().z()}}};
  if (!spec.is_delta) {
    fixed["twice_m3"] = spec.twice_m3;
    fixed["n3"] = {spec.n3.cartesian().x(), spec.n3.cartesian().y(),
                   spec.n3.cartesian().z()};
  }

  std::string out = args.out.empty()
                        ? args.id + (args.format == "json" ? ".json" : ".csv")
                        : args.out;
  std::string path = resolve_out_path(out);
  if (args.format == "json") {
    json doc{{"type", "kernel_grid"},
             {"figure", args.id},
             {"twice_j", spec.twice_j},
             {"kind", spec.is_delta ? "delta" : "star"},
             {"fixed", fixed},
             {"grid_theta", args.grid_theta},
             {"grid_phi", args.grid_phi},
             {"rows", rows}};
    st::write_text_file(path, doc.dump(2) + "\n");
  } else {
    std::string header = "# figure=" + args.id +
                         " twice_j=" + std::to_string(spec.twice_j) +
                         " fixed=" + fixed.dump() + "\n";
    st::write_text_file(path, header + csv);
  }
  std::printf("wrote %s (%d x %d grid)\n", path.c_str(), args.grid_theta,
              args.grid_phi);
  return 0;
}

// ---------------------------------------------------------------- verify --
struct VerifyArgs {
  std::string suite = "all";
  std::vector<int> twice_js;
  std::uint64_t seed = 20090401;
  int samples = 0;
  double tol = -1.0;
  int quad_polar = 0;
  int quad_azimuthal = 0;
  bool slow = false;
  std::string out;
};

int run_verify(const VerifyArgs &args) {
  st::VerifyOptions opt;
  if (!args.twice_js.empty())
    opt.twice_js = args.twice_js;
  opt.seed = args.seed;
  opt.samples = args.samples;
  if (args.tol >= 0.0)
    opt.tolerance = args.tol;
  if (args.quad_polar > 0)
    opt.quad_polar = args.quad_polar;
  if (args.quad_azimuthal > 0)
    opt.quad_azimuthal = args.quad_azimuthal;
  opt.slow = args.slow;

  st::VerifyReport report;
  try {
    report = st::run_verify_suite(args.suite, opt);
  } catch (const std::invalid_argument &e) {
    throw ConfigError(e.what());
  }

  for (const auto &c : report.checks)
    std::printf("[%s] %-60s gap=%.3e tol=%.1e\n", c.pass ? "PASS" : "FAIL",
                c.name.c_str(), c.gap, c.tolerance);
  std::printf("%zu checks, %s\n", report.checks.size(),
              report.all_pass() ? "all passed" : "FAILURES present");

  if (!args.out.empty()) {
    std::string path = resolve_out_path(args.out);
    st::write_text_file(path, st::to_json(report, opt).dump(2) + "\n");
    std::printf("wrote %s\n", path.c_str());
  }
  return report.all_pass() ? 0 : 1;
}

// -------------------------------------------------- tomogram/reconstruct --
struct TomogramArgs {
  std::string state;
  std::string in;
  int quad_polar = 0;
  int quad_azimuthal = 0;
  std::uint64_t seed = 20090401;
  std::string out = "tomogram.json";
  std::string format = "json";
};

st::DensityMatrix state_from_spec(const std::string &spec, std::uint64_t seed) {
  auto fail = [&] {
    throw ConfigError("bad state spec '" + spec +
                      "' (expected pure:2j,2m | mixed:2j | random:2j)");
  };
  auto colon = spec.find(':');
  if (colon == std::string::npos)
    fail();
  std::string kind = spec.substr(0, colon);
  std::vector<double> nums;
  try {
    nums = parse_numbers(spec.substr(colon + 1));
  } catch (const std::exception &) {
    fail();
  }
  try {
    if (kind == "pure" && nums.size() == 2)
      return st::DensityMatrix::pure(st::SpinQuantum(int(nums[0])),
                                     st::SpinProjection(int(nums[1])));
    if (kind == "mixed" && nums.size() == 1)
      return st::DensityMatrix::maximally_mixed(st::SpinQuantum(int(nums[0])));
    if (kind == "random" && nums.size() == 1) {
      st::Rng rng(seed);
      return st::DensityMatrix::random(st::SpinQuantum(int(nums[0])), rng);
    }
  } catch (const std::exception &e) {
    throw ConfigError(std::string("bad state spec: ") + e.what());
  }
  fail();
  throw ConfigError("unreachable");
}

int run_tomogram(const TomogramArgs &args) {
  std::optional<st::DensityMatrix> rho;
  if (!args.in.empty()) {
    try {
      rho = st::density_matrix_from_json(st::read_json_file(args.in));
    } catch (const std::exception &e) {
      throw ConfigError(std::string("cannot load density matrix: ") + e.what());
    }
  } else if (!args.state.empty()) {
    rho = state_from_spec(args.state, args.seed);
  } else {
    throw ConfigError("tomogram: provide --state or --in");
  }

  st::SpinQuantum j = rho->spin();
  int polar = args.quad_polar > 0 ? args.quad_polar : j.twice() + 2;
  int azimuthal =
      args.quad_azimuthal > 0 ? args.quad_azimuthal : 2 * j.twice() + 2;
  st::Tomogram w = st::tomogram(
      *rho, st::SphereQuadrature::product_rule(polar, azimuthal));

  std::string path = resolve_out_path(args.out);
  if (args.format == "json")
    st::write_text_file(path, st::to_json(w).dump(2) + "\n");
  else
    st::write_text_file(path, st::to_csv(w));
  std::printf("wrote %s (2j=%d, %d nodes)\n", path.c_str(), j.twice(),
              w.node_count());
  return 0;
}

struct ReconstructArgs {
  std::string in;
  std::string out = "density_matrix.json";
};

int run_reconstruct(const ReconstructArgs &args) {
  st::Tomogram w = [&] {
    try {
      return st::symbol_table_from_json(st::read_json_file(args.in));
    } catch (const std::exception &e) {
      throw ConfigError(std::string("cannot load tomogram: ") + e.what());
    }
  }();
  st::DensityMatrix rho = st::reconstruct(w);
  std::string path = resolve_out_path(args.out);
  st::write_text_file(path, st::to_json(rho).dump(2) + "\n");
  std::printf("wrote %s (dim %d)\n", path.c_str(), rho.spin().dimension());
  return 0;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"spin-tomographic star-product toolkit"};
  app.require_subcommand(1);

  KernelArgs kernel_args;
  auto *kernel = app.add_subcommand(
      "kernel", "evaluate the star-product kernel by several methods");
  kernel->add_option("--twice-j", kernel_args.twice_j, "2j")->required();
  kernel->add_option("--m1", kernel_args.twice_m1, "2*m1")->required();
  kernel->add_option("--m2", kernel_args.twice_m2, "2*m2")->required();
  kernel->add_option("--m3", kernel_args.twice_m3, "2*m3")->required();
  kernel->add_option("--n1", kernel_args.n1, "axis 1: 'theta,phi' or 'x,y,z'");
  kernel->add_option("--n2", kernel_args.n2, "axis 2");
  kernel->add_option("--n3", kernel_args.n3, "axis 3");
  kernel->add_option("--methods", kernel_args.methods,
                     "subset of trace, explicit, cg, recurrence");
  kernel->add_flag("--degrees", kernel_args.degrees, "angles in degrees");
  kernel->add_option("--out", kernel_args.out, "write values to file");
  kernel->add_option("--format", kernel_args.format, "json|csv")
      ->check(CLI::IsMember({"json", "csv"}));

  FigureArgs figure_args;
  auto *figure =
      app.add_subcommand("figure", "export a kernel grid at one of the "
                                   "preset fixed-parameter sets");
  figure->add_option("--id", figure_args.id,
                     "fig1a | fig1b | fig1c_e | fig1d_f")
      ->required();
  figure->add_option("--grid-theta", figure_args.grid_theta, "polar samples");
  figure->add_option("--grid-phi", figure_args.grid_phi, "azimuthal samples");
  figure->add_option("--out", figure_args.out, "output path");
  figure->add_option("--format", figure_args.format, "json|csv")
      ->check(CLI::IsMember({"json", "csv"}));

  VerifyArgs verify_args;
  auto *verify =
      app.add_subcommand("verify", "run the numerical verification batteries");
  verify->add_option("--suite", verify_args.suite,
                     "all|tomography|kernels|equivalence|recurrence");
  verify->add_option("--twice-j", verify_args.twice_js,
                     "spins to check (doubled); default 1 2 3");
  verify->add_option("--seed", verify_args.seed, "random seed");
  verify->add_option("--samples", verify_args.samples,
                     "sample count override (0 = defaults)");
  verify->add_option("--tol", verify_args.tol,
                     "tolerance override for every check");
  verify->add_option("--quad-L", verify_args.quad_polar, "polar order");
  verify->add_option("--quad-M", verify_args.quad_azimuthal,
                     "azimuthal order");
  verify->add_flag("--slow", verify_args.slow,
                   "include the 64^3 brute-force Fourier check");
  verify->add_option("--out", verify_args.out, "write JSON report");

  TomogramArgs tomogram_args;
  auto *tomo = app.add_subcommand("tomogram", "sample a state's tomogram");
  tomo->add_option("--state", tomogram_args.state,
                   "pure:2j,2m | mixed:2j | random:2j");
  tomo->add_option("--in", tomogram_args.in, "density matrix JSON file");
  tomo->add_option("--quad-L", tomogram_args.quad_polar, "polar order");
  tomo->add_option("--quad-M", tomogram_args.quad_azimuthal,
                   "azimuthal order");
  tomo->add_option("--seed", tomogram_args.seed, "seed for random:2j");
  tomo->add_option("--out", tomogram_args.out, "output path");
  tomo->add_option("--format", tomogram_args.format, "json|csv")
      ->check(CLI::IsMember({"json", "csv"}));

  ReconstructArgs reconstruct_args;
  auto *rec = app.add_subcommand(
      "reconstruct", "rebuild the density matrix from a tomogram file");
  rec->add_option("--in", reconstruct_args.in, "tomogram JSON file")
      ->required();
  rec->add_option("--out", reconstruct_args.out, "output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (kernel->parsed())
      return run_kernel(kernel_args);
    if (figure->parsed())
      return run_figure(figure_args);
    if (verify->parsed())
      return run_verify(verify_args);
    if (tomo->parsed())
      return run_tomogram(tomogram_args);
    if (rec->parsed())
      return run_reconstruct(reconstruct_args);
  } catch (const ConfigError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
