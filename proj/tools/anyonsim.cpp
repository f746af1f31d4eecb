// anyonsim: winding classification, resolved lattice kernels, exchange-phase
// sweeps and dephasing fits from the command line.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "anyonsim/amplitudes.hpp"
#include "anyonsim/config_space.hpp"
#include "anyonsim/exchange.hpp"
#include "anyonsim/homotopy.hpp"
#include "anyonsim/io.hpp"

namespace {

using namespace anyonsim;
using nlohmann::json;

constexpr int kExitError = 2;

enum class Format { Json, Csv };

struct CommonOptions {
  unsigned workers = 1;
  std::uint64_t budget = 0;  // 0: take ANYONSIM_BUDGET or the default
  double mass = 1.0;
  double hbar = 1.0;

  PhysicsParams physics() const { return {mass, hbar}; }
};

std::uint64_t resolve_budget(std::uint64_t flag) {
  if (flag > 0) return flag;
  if (const char* env = std::getenv("ANYONSIM_BUDGET")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0' || v == 0) {
      throw Error(ErrorCode::InvalidArgument,
                  fmt::format("ANYONSIM_BUDGET must be a positive integer, got '{}'", env));
    }
    return v;
  }
  return kDefaultWalkBudget;
}

std::string read_input(const std::string& file) {
  if (file == "-") {
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  }
  std::ifstream in(file);
  if (!in) throw Error(ErrorCode::ParseError, fmt::format("cannot open '{}'", file));
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

TwoParticleConfig config_from_flag(const std::vector<double>& v, const char* name) {
  if (v.size() != 4) {
    throw Error(ErrorCode::InvalidArgument, fmt::format("--{} expects x1,y1,x2,y2", name));
  }
  return {{v[0], v[1]}, {v[2], v[3]}};
}

json amplitude_json(Amplitude z) { return {{"re", z.real()}, {"im", z.imag()}}; }

void add_format_option(CLI::App* cmd, Format& format) {
  cmd->add_option("--format", format, "Output format")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, Format>{{"json", Format::Json}, {"csv", Format::Csv}},
          CLI::ignore_case));
}

void add_physics_options(CLI::App* cmd, CommonOptions& common) {
  cmd->add_option("--mass", common.mass, "Particle mass")->capture_default_str();
  cmd->add_option("--hbar", common.hbar, "Reduced Planck constant")->capture_default_str();
}

// ---------------------------------------------------------------------------

struct WindingArgs {
  std::string file;
  Format format = Format::Json;
};

int cmd_winding(const WindingArgs& args) {
  const DiscretePath path = io::parse_path_json(read_input(args.file));
  const HomotopyClass cls = classify(path);
  const double angle = total_angle(path).radians;
  if (args.format == Format::Csv) {
    std::cout << "kind,winding,total_angle\n"
              << to_string(cls.kind()) << ',' << io::format_number(cls.winding()) << ','
              << io::format_number(angle) << '\n';
  } else {
    json out = {{"kind", to_string(cls.kind())}, {"winding", cls.winding()}, {"total_angle", angle}};
    std::cout << out.dump() << '\n';
  }
  return 0;
}

struct KernelArgs {
  int extent = 2;
  double spacing = 1.0;
  double dt = 1.0;
  int steps = 1;
  std::vector<double> start;
  std::vector<double> end;
  std::optional<double> theta;
  bool resolve = false;
  Format format = Format::Json;
};

int cmd_kernel(const KernelArgs& args, const CommonOptions& common) {
  LatticeSpec lattice;
  lattice.extent = args.extent;
  lattice.spacing = args.spacing;
  lattice.time_step = args.dt;
  const EndpointPair endpoints{config_from_flag(args.start, "start"),
                               config_from_flag(args.end, "end")};
  const KernelOptions options{resolve_budget(common.budget), common.workers};
  const PhysicsParams params = common.physics();

  const WalkSum total = walk_sum(lattice, endpoints, args.steps, params, options);
  std::optional<ResolvedKernel> resolved;
  if (args.resolve || args.theta) {
    resolved = resolved_kernel(lattice, endpoints, args.steps, params, options);
  }

  if (args.format == Format::Csv) {
    std::cout << "row,kind,winding,re,im\n";
    if (resolved && args.resolve) {
      for (const auto& [cls, k] : resolved->partials) {
        std::cout << "partial," << to_string(cls.kind()) << ',' << io::format_number(cls.winding())
                  << ',' << io::format_number(k.real()) << ',' << io::format_number(k.imag())
                  << '\n';
      }
    }
    std::cout << "total,,," << io::format_number(total.total.real()) << ','
              << io::format_number(total.total.imag()) << '\n';
    if (args.theta) {
      const Amplitude w = anyonic_kernel(*resolved, *args.theta);
      std::cout << "weighted,,," << io::format_number(w.real()) << ','
                << io::format_number(w.imag()) << '\n';
    }
    return 0;
  }

  json out;
  if (resolved && args.resolve) {
    out = io::kernel_to_json(*resolved);
  } else {
    const EndpointPair snapped = snap_to_lattice(lattice, endpoints);
    out = {{"endpoints",
            {{"start", io::config_to_json(snapped.start)}, {"end", io::config_to_json(snapped.end)}}},
           {"n_steps", args.steps}};
  }
  out["walk_count"] = total.walk_count;
  out["total"] = amplitude_json(total.total);
  if (args.theta) {
    out["theta"] = *args.theta;
    out["weighted"] = amplitude_json(anyonic_kernel(*resolved, *args.theta));
  }
  std::cout << out.dump() << '\n';
  return 0;
}

struct GeometryArgs {
  double distance = 2.0;
  int steps = 16;
  double dt = 0.1;
  std::string direction = "ccw";

  ExchangeGeometry geometry() const {
    ExchangeGeometry g;
    g.radius = distance / 2.0;
    g.n_steps = steps;
    g.dt = dt;
    g.direction = direction == "cw" ? Direction::CW : Direction::CCW;
    return g;
  }
};

void add_geometry_options(CLI::App* cmd, GeometryArgs& geom) {
  cmd->add_option("--distance", geom.distance, "Inter-particle distance D")->capture_default_str();
  cmd->add_option("--steps", geom.steps, "Time steps along the exchange")->capture_default_str();
  cmd->add_option("--dt", geom.dt, "Time step of the exchange path")->capture_default_str();
  cmd->add_option("--direction", geom.direction, "Exchange sense")
      ->check(CLI::IsMember({"ccw", "cw"}, CLI::ignore_case))
      ->capture_default_str();
}

struct SweepArgs {
  double theta_min = 0.0;
  double theta_max = 2.0 * std::numbers::pi;
  int points = 3;
  std::string op_class = "both";
  GeometryArgs geom;
  Format format = Format::Csv;
};

int cmd_sweep(const SweepArgs& args, const CommonOptions& common) {
  if (args.points < 1 || !std::isfinite(args.theta_min) || !std::isfinite(args.theta_max) ||
      args.theta_max < args.theta_min) {
    throw Error(ErrorCode::BadRange,
                fmt::format("need --points >= 1 and finite theta-min <= theta-max, got {} points "
                            "over [{}, {}]",
                            args.points, args.theta_min, args.theta_max));
  }
  std::vector<OpClass> classes;
  if (args.op_class != "fermion") classes.push_back(OpClass::Boson);
  if (args.op_class != "boson") classes.push_back(OpClass::Fermion);

  std::vector<StatisticsSpec> grid;
  for (int i = 0; i < args.points; ++i) {
    const double t = args.points == 1 ? 0.0 : static_cast<double>(i) / (args.points - 1);
    const double theta = i + 1 == args.points && args.points > 1
                             ? args.theta_max
                             : args.theta_min + t * (args.theta_max - args.theta_min);
    for (OpClass op : classes) grid.push_back({theta, op});
  }
  const auto rows = theta_sweep(args.geom.geometry(), common.physics(), grid);

  if (args.format == Format::Json) {
    json out = json::array();
    for (const auto& r : rows) {
      out.push_back({{"theta", r.theta},
                     {"op_class", to_string(r.op_class)},
                     {"phi", r.phi},
                     {"re_amp", r.amplitude.real()},
                     {"im_amp", r.amplitude.imag()}});
    }
    std::cout << out.dump() << '\n';
  } else {
    std::cout << io::sweep_csv(rows);
  }
  return 0;
}

struct DephaseArgs {
  std::vector<double> dt_grid{0.1, 0.05, 0.025, 0.0125, 0.01};
  GeometryArgs geom;
  Format format = Format::Json;
};

int cmd_dephase(const DephaseArgs& args, const CommonOptions& common) {
  const DephasingFit fit = dephasing_exponent(args.geom.geometry(), common.physics(), args.dt_grid);
  if (args.format == Format::Csv) {
    std::cout << "dt,phase_op,phase_dir\n";
    for (const auto& s : fit.samples) {
      std::cout << io::format_number(s.dt) << ',' << io::format_number(s.phase_op) << ','
                << io::format_number(s.phase_dir) << '\n';
    }
    return 0;
  }
  json out = {{"slope", fit.slope},
              {"intercept", fit.intercept},
              {"residual", fit.residual},
              {"predicted", fit.predicted},
              {"relative_error", fit.relative_error},
              {"direct_rate", fit.direct_rate},
              {"direct_intercept", fit.direct_intercept}};
  std::cout << out.dump() << '\n';
  return 0;
}

void report(std::string_view code, std::string_view message) {
  std::string line(message);
  for (char& c : line) {
    if (c == '\n' || c == '\r') c = ' ';
  }
  std::cerr << "error: " << code << ": " << line << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Homotopy-resolved two-particle propagators and anyonic exchange phases"};
  app.require_subcommand(1);
  app.fallthrough();

  CommonOptions common;
  app.add_option("--workers", common.workers, "Worker threads for lattice enumeration")
      ->check(CLI::Range(1u, 1024u))
      ->capture_default_str();
  app.add_option("--budget", common.budget,
                 "Maximum walks to enumerate (default: $ANYONSIM_BUDGET or 10000000)")
      ->check(CLI::PositiveNumber);

  WindingArgs winding;
  auto* w = app.add_subcommand("winding", "Classify a path from a Path JSON file ('-' for stdin)");
  w->add_option("path_file", winding.file, "Path JSON file")->required();
  add_format_option(w, winding.format);

  KernelArgs kernel;
  auto* k = app.add_subcommand("kernel", "Enumerate lattice walks and sum amplitudes");
  k->add_option("--extent", kernel.extent, "Lattice half-width in sites")->capture_default_str();
  k->add_option("--spacing", kernel.spacing, "Lattice spacing")->capture_default_str();
  k->add_option("--steps", kernel.steps, "Number of time steps")->capture_default_str();
  k->add_option("--dt", kernel.dt, "Time step")->capture_default_str();
  k->add_option("--start", kernel.start, "Start config x1,y1,x2,y2")->delimiter(',')->required();
  k->add_option("--end", kernel.end, "End config x1,y1,x2,y2")->delimiter(',')->required();
  k->add_option("--theta", kernel.theta, "Statistics angle for the weighted total");
  k->add_flag("--resolve", kernel.resolve, "Emit per-class partial amplitudes");
  add_format_option(k, kernel.format);
  add_physics_options(k, common);

  SweepArgs sweep;
  auto* s = app.add_subcommand("sweep", "Exchange phase over a range of statistics angles");
  s->add_option("--theta-min", sweep.theta_min)->capture_default_str();
  s->add_option("--theta-max", sweep.theta_max)->capture_default_str();
  s->add_option("--points", sweep.points)->capture_default_str();
  s->add_option("--op-class", sweep.op_class)
      ->check(CLI::IsMember({"boson", "fermion", "both"}, CLI::ignore_case))
      ->capture_default_str();
  add_geometry_options(s, sweep.geom);
  add_format_option(s, sweep.format);
  add_physics_options(s, common);

  DephaseArgs dephase;
  auto* d = app.add_subcommand("dephase", "Fit the opposite-step phase against 1/dt");
  d->add_option("--dt-grid", dephase.dt_grid, "Time steps")->delimiter(',');
  add_geometry_options(d, dephase.geom);
  add_format_option(d, dephase.format);
  add_physics_options(d, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    report("ParseError", e.what());
    return kExitError;
  }

  try {
    if (w->parsed()) return cmd_winding(winding);
    if (k->parsed()) return cmd_kernel(kernel, common);
    if (s->parsed()) return cmd_sweep(sweep, common);
    if (d->parsed()) return cmd_dephase(dephase, common);
  } catch (const Error& e) {
    std::string message = e.what();
    if (e.step()) message = fmt::format("step {}: {}", *e.step(), message);
    report(to_string(e.code()), message);
    return kExitError;
  } catch (const std::exception& e) {
    report("InternalError", e.what());
    return kExitError;
  }
  return kExitError;
}
