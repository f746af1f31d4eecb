#include <doctest.h>

#include <numbers>
#include <random>

#include "anyonsim/amplitudes.hpp"
#include "support.hpp"

using namespace anyonsim;
using std::numbers::pi;

namespace {

TwoParticleConfig cfg(double x1, double y1, double x2, double y2) { return {{x1, y1}, {x2, y2}}; }

bool close(Amplitude a, Amplitude b, double tol) { return std::abs(a - b) <= tol; }

Amplitude random_amplitude(std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  return {g(rng), g(rng)};
}

const PhysicsParams kUnit{};

}  // namespace

TEST_CASE("action examples") {
  CHECK(action({1.0, {cfg(0, 0, 1, 0), cfg(0, 0, 1, 0)}}, kUnit) == 0.0);
  CHECK(action({1.0, {cfg(0, 0, 3, 0), cfg(1, 0, 3, 1)}}, kUnit) == 1.0);
  CHECK(action({0.5, {cfg(0, 0, 5, 0), cfg(2, 0, 5, 0)}}, kUnit) == 4.0);
  CHECK(action({0.5, {cfg(0, 0, 5, 0), cfg(2, 0, 5, 0)}}, {3.0, 1.0}) == 12.0);
}

TEST_CASE("path_amplitude examples") {
  CHECK(path_amplitude({1.0, {cfg(0, 0, 1, 0), cfg(0, 0, 1, 0)}}, kUnit) == Amplitude{1.0, 0.0});
  // S = 1, so hbar = 1/pi gives S/hbar = pi and hbar = 2/pi gives pi/2.
  DiscretePath unit_step{1.0, {cfg(0, 0, 3, 0), cfg(1, 0, 3, 1)}};
  CHECK(close(path_amplitude(unit_step, {1.0, 1.0 / pi}), {-1.0, 0.0}, 1e-15));
  CHECK(close(path_amplitude(unit_step, {1.0, 2.0 / pi}), {0.0, 1.0}, 1e-15));
  CHECK(std::abs(path_amplitude(unit_step, kUnit)) == doctest::Approx(1.0));
}

TEST_CASE("physics params validation") {
  CHECK_THROWS_AS(require_valid(PhysicsParams{0.0, 1.0}), Error);
  CHECK_THROWS_AS(require_valid(PhysicsParams{1.0, -1.0}), Error);
}

TEST_CASE("resolved_kernel: single closed step") {
  LatticeSpec lattice{2, 1.0};
  auto k = resolved_kernel(lattice, {cfg(0, 0, 2, 0), cfg(0, 0, 2, 0)}, 1, kUnit);
  REQUIRE(k.partials.size() == 1);
  CHECK(k.partials.begin()->first == HomotopyClass::from_half_turns(0));
  CHECK(k.partials.begin()->second == Amplitude{1.0, 0.0});
  CHECK(k.walk_count == 1);
}

TEST_CASE("resolved_kernel: half turns on a small lattice match direct summation") {
  LatticeSpec lattice{1, 1.0};
  EndpointPair ends{cfg(0, 0, 1, 0), cfg(1, 0, 0, 0)};
  auto k = resolved_kernel(lattice, ends, 3, kUnit);
  const auto plus = HomotopyClass::from_half_turns(1);
  const auto minus = HomotopyClass::from_half_turns(-1);
  REQUIRE(k.partials.size() == 2);
  REQUIRE(k.partials.count(plus) == 1);
  REQUIRE(k.partials.count(minus) == 1);
  CHECK(k.walk_count == 46);

  // Frozen from oracle_walk_sums (odometer over 25^3 joint move sequences).
  const Amplitude frozen{-19.32675346149043, 7.8548246979718357};
  CHECK(close(k.partials.at(plus), frozen, 1e-12));
  CHECK(close(k.partials.at(minus), frozen, 1e-12));

  const auto oracle = testing::oracle_walk_sums(1, 1.0, 1.0, 1.0, 1.0, {0, 0, 1, 0}, {1, 0, 0, 0}, 3);
  CHECK(close(k.partials.at(plus), oracle.by_half_turns.at(1), 1e-12));
  CHECK(close(k.partials.at(minus), oracle.by_half_turns.at(-1), 1e-12));
}

TEST_CASE("resolved_kernel matches the oracle with non-unit parameters") {
  LatticeSpec lattice{2, 0.7, 0.3};
  PhysicsParams params{1.3, 0.9};
  auto k = resolved_kernel(lattice, {cfg(0, 0, 0.7, 0), cfg(0, 0, 0.7, 0)}, 4, params);
  const auto oracle = testing::oracle_walk_sums(2, 0.7, 0.3, 1.3, 0.9, {0, 0, 1, 0}, {0, 0, 1, 0}, 4);
  REQUIRE(k.partials.size() == oracle.by_half_turns.size());
  for (const auto& [half_turns, value] : oracle.by_half_turns) {
    CAPTURE(half_turns);
    const auto it = k.partials.find(HomotopyClass::from_half_turns(half_turns));
    REQUIRE(it != k.partials.end());
    CHECK(close(it->second, value, 1e-11 * std::max(1.0, std::abs(value))));
  }
}

TEST_CASE("resolved_kernel: unreachable endpoints give an empty map") {
  LatticeSpec lattice{3, 1.0};
  auto k = resolved_kernel(lattice, {cfg(-3, 0, 3, 0), cfg(3, 0, -3, 0)}, 2, kUnit);
  CHECK(k.partials.empty());
  CHECK(anyonic_kernel(k, 1.0) == Amplitude{0.0, 0.0});
}

TEST_CASE("resolved_kernel rejects generic endpoints and enforces the budget") {
  LatticeSpec lattice{2, 1.0};
  try {
    resolved_kernel(lattice, {cfg(0, 0, 1, 0), cfg(0, 1, 1, 0)}, 2, kUnit);
    FAIL("expected EndpointsNotClosedOrExchanged");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EndpointsNotClosedOrExchanged);
  }
  try {
    resolved_kernel(lattice, {cfg(0, 0, 1, 0), cfg(0, 0, 1, 0)}, 3, kUnit, {50, 1});
    FAIL("expected BudgetExceeded");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BudgetExceeded);
  }
  CHECK_THROWS_AS(walk_sum(lattice, {cfg(0, 0, 1, 0), cfg(0, 0, 1, 0)}, 3, kUnit, {50, 3}), Error);
}

TEST_CASE("kernels are identical across worker counts") {
  LatticeSpec lattice{2, 1.0};
  EndpointPair ends{cfg(-1, 0, 1, 0), cfg(1, 0, -1, 0)};
  auto serial = resolved_kernel(lattice, ends, 4, kUnit, {kDefaultWalkBudget, 1});
  auto total_serial = walk_sum(lattice, ends, 4, kUnit, {kDefaultWalkBudget, 1});
  for (unsigned workers : {2u, 3u, 8u}) {
    auto parallel = resolved_kernel(lattice, ends, 4, kUnit, {kDefaultWalkBudget, workers});
    CHECK(parallel.partials == serial.partials);
    CHECK(parallel.walk_count == serial.walk_count);
    CHECK(walk_sum(lattice, ends, 4, kUnit, {kDefaultWalkBudget, workers}).total ==
          total_serial.total);
  }
}

TEST_CASE("partition identity on closed and exchanged endpoints") {
  LatticeSpec lattice{2, 1.0};
  for (const EndpointPair& ends :
       {EndpointPair{cfg(0, 0, 1, 0), cfg(0, 0, 1, 0)}, EndpointPair{cfg(0, 0, 1, 1), cfg(1, 1, 0, 0)},
        EndpointPair{cfg(-1, 0, 1, 0), cfg(1, 0, -1, 0)}}) {
    for (int n = 1; n <= 4; ++n) {
      auto k = resolved_kernel(lattice, ends, n, kUnit);
      auto t = walk_sum(lattice, ends, n, kUnit);
      CHECK(k.walk_count == t.walk_count);
      CHECK(std::abs(partition_total(k) - t.total) <= 1e-12 * std::max(1.0, std::abs(t.total)));
      CHECK(std::abs(anyonic_kernel(k, 0.0) - t.total) <= 1e-12 * std::max(1.0, std::abs(t.total)));
    }
  }
}

TEST_CASE("anyonic_weight examples") {
  CHECK(close(anyonic_weight(HomotopyClass::from_half_turns(2), pi), {-1.0, 0.0}, 1e-15));
  CHECK(close(anyonic_weight(HomotopyClass::from_half_turns(1), pi), {0.0, 1.0}, 1e-15));
  CHECK(anyonic_weight(HomotopyClass::from_half_turns(0), 2.7) == Amplitude{1.0, 0.0});
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> th(-20.0, 20.0);
  for (int i = -6; i <= 6; ++i) {
    CHECK(std::abs(anyonic_weight(HomotopyClass::from_half_turns(i), th(rng))) ==
          doctest::Approx(1.0).epsilon(1e-15));
  }
}

TEST_CASE("anyonic_kernel examples and periodicity") {
  ResolvedKernel k;
  k.endpoints = {cfg(0, 0, 1, 0), cfg(1, 0, 0, 0)};
  const Amplitude a{0.3, -1.2}, b{2.0, 0.5};
  k.partials[HomotopyClass::from_half_turns(-1)] = a;
  k.partials[HomotopyClass::from_half_turns(1)] = b;
  const Amplitude i{0.0, 1.0};
  CHECK(close(anyonic_kernel(k, pi), -i * a + i * b, 1e-14));
  CHECK(close(anyonic_kernel(k, 0.0), a + b, 1e-15));

  k.partials[HomotopyClass::from_half_turns(3)] = {0.1, 0.1};
  for (double theta : {0.0, 0.4, 1.7, 5.0}) {
    CHECK(close(anyonic_kernel(k, theta + 4 * pi), anyonic_kernel(k, theta), 1e-13));
    CHECK(close(anyonic_kernel(k, theta + 2 * pi), -anyonic_kernel(k, theta), 1e-13));
  }

  ResolvedKernel direct;
  direct.endpoints = {cfg(0, 0, 1, 0), cfg(0, 0, 1, 0)};
  direct.partials[HomotopyClass::from_half_turns(0)] = a;
  direct.partials[HomotopyClass::from_half_turns(2)] = b;
  direct.partials[HomotopyClass::from_half_turns(-4)] = {1.0, 1.0};
  for (double theta : {0.0, 0.4, 1.7}) {
    CHECK(close(anyonic_kernel(direct, theta + 2 * pi), anyonic_kernel(direct, theta), 1e-13));
  }
}

TEST_CASE("Feynman rule examples") {
  const Amplitude i{0.0, 1.0};
  const Amplitude z{0.25, -3.5};
  CHECK(feynman_product(i, i) == Amplitude{-1.0, 0.0});
  CHECK(feynman_product(z, 1.0) == z);
  CHECK(feynman_product({1, 1}, {1, -1}) == Amplitude{2.0, 0.0});
  CHECK(feynman_sum(1.0, -1.0) == Amplitude{0.0, 0.0});
  CHECK(feynman_sum(i, i) == 2.0 * i);
  CHECK(feynman_sum(z, 0.0) == z);
  CHECK(probability(Amplitude{1.0, 1.0} / std::sqrt(2.0)) == doctest::Approx(1.0));
  CHECK(probability(0.0) == 0.0);
  CHECK(probability(Amplitude{0.5, 0.5}) == 0.5);
}

TEST_CASE("Feynman rules on generic amplitudes") {
  std::mt19937_64 rng(99);
  for (int n = 0; n < 1000; ++n) {
    const auto a = random_amplitude(rng), b = random_amplitude(rng), c = random_amplitude(rng);
    const auto lhs = feynman_product(feynman_product(a, b), c);
    const auto rhs = feynman_product(a, feynman_product(b, c));
    CHECK(std::abs(lhs - rhs) <= 1e-14 * std::abs(lhs));
    CHECK(feynman_sum(a, b) == feynman_sum(b, a));
    CHECK(probability(feynman_product(a, b)) ==
          doctest::Approx(probability(a) * probability(b)).epsilon(1e-14));
  }
}

TEST_CASE("permutations") {
  auto perms = all_permutations(3);
  REQUIRE(perms.size() == 6);
  CHECK(perms.front() == Permutation::identity(3));
  CHECK(perms.back().images() == std::vector<int>{2, 1, 0});
  CHECK(std::is_sorted(perms.begin(), perms.end()));
  int sign_sum = 0;
  for (const auto& p : perms) sign_sum += p.sign();
  CHECK(sign_sum == 0);
  CHECK(Permutation::transposition(4, 1, 3).sign() == -1);
  CHECK(Permutation(std::vector<int>{1, 2, 0}).sign() == 1);
  CHECK(all_permutations(8).size() == 40320);
  CHECK_THROWS_AS(all_permutations(9), Error);
  CHECK_THROWS_AS(Permutation(std::vector<int>{0, 0}), Error);
  for (const auto& p : all_permutations(4)) {
    for (const auto& q : all_permutations(4)) CHECK((p * q).sign() == p.sign() * q.sign());
  }
}

TEST_CASE("operational_combine examples") {
  PermutationAmplitudes ones{3, {}};
  for (auto& p : all_permutations(3)) ones.alpha.emplace(p, 1.0);
  CHECK(operational_combine(ones, OpClass::Fermion) == Amplitude{0.0, 0.0});
  CHECK(operational_combine(ones, OpClass::Boson) == Amplitude{6.0, 0.0});

  auto two = two_particle_alphas(1.0, {0.0, 1.0});
  CHECK(operational_combine(two, OpClass::Fermion) == Amplitude{1.0, -1.0});
  CHECK(operational_combine(two, OpClass::Boson) == Amplitude{1.0, 1.0});

  ones.alpha.erase(ones.alpha.begin());
  try {
    operational_combine(ones, OpClass::Boson);
    FAIL("expected IncompleteMap");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::IncompleteMap);
  }
}

TEST_CASE("relabelling direct and opposite flips only the fermion sign") {
  std::mt19937_64 rng(5);
  for (int n = 2; n <= 4; ++n) {
    PermutationAmplitudes perms{n, {}};
    for (auto& p : all_permutations(n)) perms.alpha.emplace(p, random_amplitude(rng));
    const auto tau = Permutation::transposition(n, 0, 1);
    PermutationAmplitudes relabelled{n, {}};
    for (const auto& [sigma, a] : perms.alpha) relabelled.alpha.emplace(sigma, perms.alpha.at(sigma * tau));
    const auto boson = operational_combine(perms, OpClass::Boson);
    const auto fermion = operational_combine(perms, OpClass::Fermion);
    CHECK(close(operational_combine(relabelled, OpClass::Boson), boson, 1e-12));
    CHECK(close(operational_combine(relabelled, OpClass::Fermion), -fermion, 1e-12));
    CHECK(probability(operational_combine(relabelled, OpClass::Fermion)) ==
          doctest::Approx(probability(fermion)));
  }
}

TEST_CASE("noninteracting_alpha") {
  AmplitudeMatrix id{{1.0, 0.0}, {0.0, 1.0}};
  auto alpha = noninteracting_alpha(id);
  CHECK(alpha.alpha.at(Permutation::identity(2)) == Amplitude{1.0, 0.0});
  CHECK(alpha.alpha.at(Permutation::transposition(2, 0, 1)) == Amplitude{0.0, 0.0});

  const Amplitude a{1, 2}, b{-0.5, 1}, c{3, 0}, d{0, -1};
  auto two = noninteracting_alpha(AmplitudeMatrix{{a, b}, {c, d}});
  CHECK(operational_combine(two, OpClass::Boson) == a * d + b * c);
  CHECK(operational_combine(two, OpClass::Fermion) == a * d - b * c);

  try {
    noninteracting_alpha(AmplitudeMatrix(2, 3));
    FAIL("expected NonSquare");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonSquare);
  }
}

TEST_CASE("boson and fermion combinations equal permanent and determinant") {
  std::mt19937_64 rng(17);
  for (int n = 1; n <= 4; ++n) {
    for (int trial = 0; trial < 10; ++trial) {
      AmplitudeMatrix m(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
      std::vector<std::vector<testing::cplx>> rows(static_cast<std::size_t>(n),
                                                   std::vector<testing::cplx>(static_cast<std::size_t>(n)));
      for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t c = 0; c < rows.size(); ++c) rows[r][c] = m(r, c) = random_amplitude(rng);
      }
      auto alpha = noninteracting_alpha(m);
      const auto perm = testing::permanent_ryser(rows);
      const auto det = testing::determinant_lu(rows);
      CHECK(std::abs(operational_combine(alpha, OpClass::Boson) - perm) <= 1e-10 * std::abs(perm));
      CHECK(std::abs(operational_combine(alpha, OpClass::Fermion) - det) <= 1e-10 * std::abs(det));
    }
  }
}

TEST_CASE("ComplexSum compensates cancellation") {
  ComplexSum s;
  s.add({1e16, 1.0});
  s.add({1.0, 1e-16});
  s.add({-1e16, -1.0});
  CHECK(s.value() == Amplitude{1.0, 1e-16});
}
