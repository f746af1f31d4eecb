#include "anyonsim/exchange.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <numbers>

namespace anyonsim {

namespace {

constexpr double kPi = std::numbers::pi;

double operational_sign(OpClass op) { return op == OpClass::Boson ? 1.0 : -1.0; }

double reduce(double angle, double period) {
  double r = angle - period * std::floor(angle / period);
  if (r >= period || r < 0.0) r = 0.0;
  return r;
}

}  // namespace

void require_valid(const ExchangeGeometry& geom) {
  if (!is_finite(geom.center)) throw Error(ErrorCode::InvalidArgument, "center must be finite");
  if (!(std::isfinite(geom.radius) && geom.radius > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "radius must be finite and positive");
  }
  if (geom.n_steps < 2) throw Error(ErrorCode::InvalidArgument, "exchange needs n_steps >= 2");
  if (!(std::isfinite(geom.dt) && geom.dt > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "dt must be finite and positive");
  }
}

TwoParticleConfig exchange_config(const ExchangeGeometry& geom, double angle) {
  double c = std::cos(angle);
  double s = std::sin(angle);
  const double quarters = angle / (kPi / 2.0);
  if (std::abs(quarters - std::round(quarters)) < 1e-12) {
    constexpr double cosines[] = {1.0, 0.0, -1.0, 0.0};
    constexpr double sines[] = {0.0, 1.0, 0.0, -1.0};
    const auto q = static_cast<long>(std::round(quarters));
    const auto idx = static_cast<std::size_t>(((q % 4) + 4) % 4);
    c = cosines[idx];
    s = sines[idx];
  }
  const Vec2 arm{geom.radius * c, geom.radius * s};
  return {geom.center + arm, geom.center - arm};
}

DiscretePath build_exchange_path(const ExchangeGeometry& geom) {
  require_valid(geom);
  const double sense = geom.direction == Direction::CCW ? 1.0 : -1.0;
  DiscretePath path{geom.dt, {}};
  path.configs.reserve(static_cast<std::size_t>(geom.n_steps) + 1);
  for (int k = 0; k < geom.n_steps; ++k) {
    path.configs.push_back(exchange_config(geom, sense * kPi * k / geom.n_steps));
  }
  path.configs.push_back(swap(path.configs.front()));
  return path;
}

bool in_upper_half_domain(const TwoParticleConfig& c) noexcept {
  const Vec2 r = c.relative();
  return r.y > 0.0 || (r.y == 0.0 && r.x > 0.0);
}

FundamentalDomain::FundamentalDomain() : rule_(in_upper_half_domain) {}

std::size_t StepFactors::flip_count() const {
  return static_cast<std::size_t>(
      std::count_if(steps.begin(), steps.end(), [](const StepFactor& f) { return f.flipped; }));
}

StepFactors step_factors(const DiscretePath& path, const PhysicsParams& params,
                         const FundamentalDomain& domain) {
  require_valid(path);
  require_valid(params);
  StepFactors out;
  out.steps.reserve(path.steps());
  for (std::size_t k = 1; k < path.configs.size(); ++k) {
    const auto& from = path.configs[k - 1];
    const auto& to = path.configs[k];
    StepFactor f;
    f.phase_dir = step_action(from, to, path.dt, params) / params.hbar;
    f.phase_op = step_action(from, swap(to), path.dt, params) / params.hbar;
    f.alpha_dir = std::polar(1.0, f.phase_dir);
    f.alpha_op = std::polar(1.0, f.phase_op);
    f.flipped = domain.contains(from) != domain.contains(to);
    out.steps.push_back(f);
  }
  return out;
}

Amplitude operational_product(const StepFactors& factors, OpClass op) {
  const double s = operational_sign(op);
  Amplitude prod{1.0, 0.0};
  for (const auto& f : factors.steps) {
    const Amplitude term = f.flipped ? f.alpha_op + s * f.alpha_dir : f.alpha_dir + s * f.alpha_op;
    prod = feynman_product(prod, term);
  }
  return prod;
}

Amplitude dephased_product(const StepFactors& factors, OpClass op) {
  const double s = operational_sign(op);
  Amplitude prod{1.0, 0.0};
  for (const auto& f : factors.steps) {
    prod = feynman_product(prod, f.flipped ? s * f.alpha_dir : f.alpha_dir);
  }
  return prod;
}

DephasingFit dephasing_exponent(const ExchangeGeometry& geom, const PhysicsParams& params,
                                std::span<const double> dt_grid) {
  require_valid(geom);
  require_valid(params);
  if (dt_grid.size() < 3) {
    throw Error(ErrorCode::DegenerateGrid,
                fmt::format("need at least 3 time steps, got {}", dt_grid.size()));
  }
  for (double dt : dt_grid) {
    if (!(std::isfinite(dt) && dt > 0.0)) {
      throw Error(ErrorCode::DegenerateGrid, "time steps must be finite and positive");
    }
  }
  const auto [lo, hi] = std::minmax_element(dt_grid.begin(), dt_grid.end());
  if (*lo == *hi) throw Error(ErrorCode::DegenerateGrid, "time steps are all equal");

  const double sense = geom.direction == Direction::CCW ? 1.0 : -1.0;
  const double angular_speed = kPi / geom.duration();
  const TwoParticleConfig from = exchange_config(geom, 0.0);

  DephasingFit fit;
  fit.predicted = params.mass * geom.separation() * geom.separation() / params.hbar;
  for (double dt : dt_grid) {
    const TwoParticleConfig to = exchange_config(geom, sense * angular_speed * dt);
    fit.samples.push_back({dt, step_action(from, swap(to), dt, params) / params.hbar,
                           step_action(from, to, dt, params) / params.hbar});
  }

  // Ordinary least squares y = a x + b.
  auto line = [](const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      mx += x[i];
      my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      sxx += (x[i] - mx) * (x[i] - mx);
      sxy += (x[i] - mx) * (y[i] - my);
    }
    const double a = sxy / sxx;
    return std::pair{a, my - a * mx};
  };

  std::vector<double> inv_dt, op, dts, dir;
  for (const auto& s : fit.samples) {
    inv_dt.push_back(1.0 / s.dt);
    op.push_back(s.phase_op);
    dts.push_back(s.dt);
    dir.push_back(s.phase_dir);
  }
  std::tie(fit.slope, fit.intercept) = line(inv_dt, op);
  std::tie(fit.direct_rate, fit.direct_intercept) = line(dts, dir);

  double ss = 0.0;
  for (std::size_t i = 0; i < inv_dt.size(); ++i) {
    const double r = op[i] - (fit.slope * inv_dt[i] + fit.intercept);
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / static_cast<double>(inv_dt.size()));
  fit.relative_error = std::abs(fit.slope - fit.predicted) / fit.predicted;
  return fit;
}

double canonical_theta(double theta) { return reduce(theta, 4.0 * kPi); }

double wrap_phase(double angle) { return reduce(angle, 2.0 * kPi); }

ExchangePhase exchange_phase(const ResolvedKernel& resolved, const StatisticsSpec& stats) {
  bool exchange = false;
  try {
    exchange = resolved.kind() == PathKind::Exchange;
  } catch (const Error&) {
  }
  if (!exchange) throw Error(ErrorCode::NotExchangeKernel, "kernel endpoints are not exchanged");

  const auto half = HomotopyClass::from_half_turns(1);
  const auto it = resolved.partials.find(half);
  double others = 0.0;
  for (const auto& [cls, k] : resolved.partials) {
    if (cls != half) others += std::abs(k);
  }
  if (it == resolved.partials.end() || !(std::abs(it->second) > others)) {
    throw Error(ErrorCode::NoDominantClass,
                "the counter-clockwise half-turn class does not dominate the kernel");
  }

  const double s = operational_sign(stats.op_class);
  ExchangePhase out;
  // Same angle as arg(anyonic_weight(+1/2, theta) * s), without arg's branch cut.
  out.phi = wrap_phase(stats.theta * half.winding() + (s < 0.0 ? kPi : 0.0));
  out.amplitude = s * anyonic_kernel(resolved, stats.theta);
  return out;
}

ResolvedKernel designated_kernel(const DiscretePath& path, const PhysicsParams& params) {
  const auto factors = step_factors(path, params);
  Amplitude direct{1.0, 0.0};
  for (const auto& f : factors.steps) direct = feynman_product(direct, f.alpha_dir);
  ResolvedKernel out;
  out.endpoints = {path.front(), path.back()};
  out.n_steps = static_cast<int>(path.steps());
  out.partials.emplace(classify(path), direct);
  out.walk_count = 1;
  return out;
}

std::vector<SweepRow> theta_sweep(const ExchangeGeometry& geom, const PhysicsParams& params,
                                  std::span<const StatisticsSpec> grid) {
  std::vector<SweepRow> rows;
  if (grid.empty()) return rows;
  const ResolvedKernel kernel = designated_kernel(build_exchange_path(geom), params);
  rows.reserve(grid.size());
  for (const auto& stats : grid) {
    const auto phase = exchange_phase(kernel, stats);
    rows.push_back({canonical_theta(stats.theta), stats.op_class, phase.phi, phase.amplitude});
  }
  return rows;
}

}  // namespace anyonsim
