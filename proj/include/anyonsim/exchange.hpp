#pragma once

// Exchange of two identical particles along a designated semicircular path.
// Each time step admits a direct transition (labels kept) and an opposite one
// (labels swapped); the operational rule combines them as
// alpha_dir +/- alpha_op per step. Opposite steps carry a phase of order
// m D^2 / (hbar dt) and dephase as dt -> 0, leaving the direct product. The
// step that crosses the boundary of the chosen fundamental domain swaps the
// roles of the two transitions and contributes the operational sign.

#include <functional>
#include <span>
#include <vector>

#include "anyonsim/amplitudes.hpp"
#include "anyonsim/config_space.hpp"
#include "anyonsim/homotopy.hpp"

namespace anyonsim {

enum class Direction { CCW, CW };

struct ExchangeGeometry {
  Vec2 center{};
  double radius = 1.0;  ///< half the inter-particle distance D
  int n_steps = 16;
  double dt = 0.1;
  Direction direction = Direction::CCW;

  double separation() const { return 2.0 * radius; }
  double duration() const { return n_steps * dt; }
};

void require_valid(const ExchangeGeometry& geom);

/// Config with particle 1 at center + R(cos a, sin a) and particle 2 antipodal.
/// Angles that are multiples of pi/2 are placed exactly.
TwoParticleConfig exchange_config(const ExchangeGeometry& geom, double angle);

/// Both particles traverse antipodal semicircles in n_steps equal angular
/// increments. The last config is exactly swap(first).
DiscretePath build_exchange_path(const ExchangeGeometry& geom);

/// Set of configs treated as the measurable representatives of unordered
/// pairs. The default keeps configs whose relative vector has polar angle in
/// [0, pi).
class FundamentalDomain {
 public:
  using Rule = std::function<bool(const TwoParticleConfig&)>;

  FundamentalDomain();
  explicit FundamentalDomain(Rule rule) : rule_(std::move(rule)) {}

  bool contains(const TwoParticleConfig& c) const { return rule_(c); }

 private:
  Rule rule_;
};

bool in_upper_half_domain(const TwoParticleConfig& c) noexcept;

struct StepFactor {
  Amplitude alpha_dir;
  Amplitude alpha_op;
  double phase_dir = 0.0;  ///< unwrapped dS_dir / hbar
  double phase_op = 0.0;   ///< unwrapped dS_op / hbar
  bool flipped = false;    ///< step crosses the domain boundary
};

struct StepFactors {
  std::vector<StepFactor> steps;

  std::size_t flip_count() const;
};

StepFactors step_factors(const DiscretePath& path, const PhysicsParams& params,
                         const FundamentalDomain& domain = {});

/// prod_k (alpha_dir +/- alpha_op), with the two terms exchanged on flipped
/// steps.
Amplitude operational_product(const StepFactors& factors, OpClass op);

/// The product after dropping every opposite-step contribution:
/// prod_k alpha_dir times the operational sign once per flipped step.
Amplitude dephased_product(const StepFactors& factors, OpClass op);

struct DephasingSample {
  double dt = 0.0;
  double phase_op = 0.0;
  double phase_dir = 0.0;
};

struct DephasingFit {
  double slope = 0.0;      ///< of phase_op against 1/dt
  double intercept = 0.0;
  double residual = 0.0;   ///< RMS of the fit
  double predicted = 0.0;  ///< m D^2 / hbar
  double relative_error = 0.0;
  double direct_rate = 0.0;       ///< least-squares phase_dir / dt
  double direct_intercept = 0.0;  ///< of phase_dir against dt
  std::vector<DephasingSample> samples;
};

/// Fits the opposite-step phase against 1/dt for one step of the exchange
/// at the geometry's angular speed pi / (n_steps * dt). Throws DegenerateGrid
/// for fewer than three positive time steps or a grid with a single value.
DephasingFit dephasing_exponent(const ExchangeGeometry& geom, const PhysicsParams& params,
                                std::span<const double> dt_grid);

struct StatisticsSpec {
  double theta = 0.0;  ///< phase e^{i theta} of one full CCW rotation
  OpClass op_class = OpClass::Boson;
};

/// theta reduced to [0, 4pi).
double canonical_theta(double theta);
/// Angle reduced to [0, 2pi).
double wrap_phase(double angle);

struct ExchangePhase {
  double phi = 0.0;     ///< in [0, 2pi)
  Amplitude amplitude;  ///< operational sign times anyonic_kernel
};

/// Total exchange phase phi = arg(e^{i theta/2} s) with s = +1 for bosons and
/// -1 for fermions. Requires an Exchange kernel whose +1/2 class dominates
/// all others combined. Throws NotExchangeKernel or NoDominantClass.
ExchangePhase exchange_phase(const ResolvedKernel& resolved, const StatisticsSpec& stats);

/// Single-class kernel of the designated path: its class mapped to the
/// product of direct step amplitudes.
ResolvedKernel designated_kernel(const DiscretePath& path, const PhysicsParams& params);

struct SweepRow {
  double theta = 0.0;  ///< canonical, [0, 4pi)
  OpClass op_class = OpClass::Boson;
  double phi = 0.0;
  Amplitude amplitude;
};

std::vector<SweepRow> theta_sweep(const ExchangeGeometry& geom, const PhysicsParams& params,
                                  std::span<const StatisticsSpec> grid);

}  // namespace anyonsim
