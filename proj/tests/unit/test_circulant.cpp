#include <gtest/gtest.h>

#include <cmath>

#include "uhw/circulant/convolution.hpp"
#include "uhw/circulant/operator.hpp"
#include "uhw/circulant/rip.hpp"
#include "uhw/core/rng.hpp"

using namespace uhw;
using namespace uhw::circulant;

namespace {

Vector random_vector(Eigen::Index n, Rng& rng) {
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = rng.normal();
  return v;
}

// Definition-level oracle: (z*x)_j = sum_k z_{(j-k) mod n} x_k.
Vector oracle_convolve(const Vector& z, const Vector& x) {
  const Eigen::Index n = z.size();
  Vector out = Vector::Zero(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = 0; k < n; ++k) out[j] += z[((j - k) % n + n) % n] * x[k];
  }
  return out;
}

// Dense Phi built row-by-row from H_z.
DenseMatrix oracle_phi(const Vector& z, const std::vector<std::size_t>& omega) {
  const Eigen::Index n = z.size();
  DenseMatrix h(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = 0; k < n; ++k) h(j, k) = z[((j - k) % n + n) % n];
  }
  DenseMatrix phi(static_cast<Eigen::Index>(omega.size()), n);
  for (std::size_t r = 0; r < omega.size(); ++r) phi.row(static_cast<Eigen::Index>(r)) = h.row(static_cast<Eigen::Index>(omega[r]));
  return phi / std::sqrt(static_cast<double>(omega.size()));
}

}  // namespace

TEST(Convolution, Examples) {
  Vector z(2), x(2);
  z << 1, 2;
  x << 3, 4;
  const Vector expect = (Vector(2) << 11, 10).finished();
  EXPECT_EQ(circ_convolve_direct(z, x), expect);
  EXPECT_NEAR((circ_convolve_fft(z, x) - expect).cwiseAbs().maxCoeff(), 0.0, 1e-12);

  Rng rng(41);
  const Vector y = random_vector(100, rng);
  EXPECT_NEAR((circ_convolve(Vector::Unit(100, 0), y) - y).cwiseAbs().maxCoeff(), 0.0, 1e-12);
  EXPECT_THROW(circ_convolve(Vector::Zero(3), Vector::Zero(4)), std::invalid_argument);
}

TEST(Convolution, PathsAgreeWithOracle) {
  Rng rng(42);
  for (Eigen::Index n : {1, 2, 7, 8, 64, 65, 128, 1000, 1024, 4096}) {
    const Vector z = random_vector(n, rng), x = random_vector(n, rng);
    const Vector o = oracle_convolve(z, x);
    EXPECT_LT((circ_convolve_fft(z, x) - o).cwiseAbs().maxCoeff(), 1e-9) << n;
    EXPECT_LT((circ_convolve_direct(z, x) - o).cwiseAbs().maxCoeff(), 1e-9) << n;
    EXPECT_LT((circ_convolve(z, x) - o).cwiseAbs().maxCoeff(), 1e-9) << n;
  }
}

TEST(Operator, Validation) {
  EXPECT_THROW(CirculantOperator(Vector::Zero(4), {}), std::invalid_argument);
  EXPECT_THROW(CirculantOperator(Vector::Zero(4), {1, 1}), std::invalid_argument);
  EXPECT_THROW(CirculantOperator(Vector::Zero(4), {2, 1}), std::invalid_argument);
  EXPECT_THROW(CirculantOperator(Vector::Zero(4), {4}), std::invalid_argument);
  EXPECT_NO_THROW(CirculantOperator(Vector::Zero(4), {0, 3}));
}

TEST(Operator, PhiApplyExamples) {
  const Eigen::Index n = 16;
  std::vector<std::size_t> all(n);
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  const CirculantOperator id(Vector::Unit(n, 0), all);
  Rng rng(43);
  const Vector x = random_vector(n, rng);
  EXPECT_LT((phi_apply(id, x) - x / 4.0).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_EQ(phi_apply(id, Vector::Zero(n)), Vector::Zero(n));

  for (int rep = 0; rep < 20; ++rep) {
    const std::size_t nn = 2 + rng.below(80), m = 1 + rng.below(nn);
    const CirculantOperator op(random_vector(static_cast<Eigen::Index>(nn), rng), random_support(nn, m, rng));
    const Vector v = random_vector(static_cast<Eigen::Index>(nn), rng);
    const DenseMatrix phi = oracle_phi(op.z(), op.omega());
    EXPECT_LT((phi_apply(op, v) - phi * v).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_LT((dense_phi(op) - phi).cwiseAbs().maxCoeff(), 1e-15);
  }
}

TEST(Operator, RandomSupportIsSortedSubset) {
  Rng rng(44);
  for (int rep = 0; rep < 50; ++rep) {
    const auto s = random_support(30, 1 + rng.below(30), rng);
    for (std::size_t i = 1; i < s.size(); ++i) ASSERT_LT(s[i - 1], s[i]);
    ASSERT_LT(s.back(), 30u);
  }
  EXPECT_THROW(random_support(3, 4, rng), std::invalid_argument);
}

TEST(Vx, IdentityOnRandomInstances) {
  Rng rng(45);
  double worst = 0.0;
  for (int rep = 0; rep < 100; ++rep) {
    const std::size_t n = 1 + rng.below(32), m = 1 + rng.below(n);
    const auto omega = random_support(n, m, rng);
    const Vector x = random_vector(static_cast<Eigen::Index>(n), rng);
    const Vector eta = random_vector(static_cast<Eigen::Index>(n), rng);
    const Vector full = oracle_convolve(x, eta);
    Vector restricted(static_cast<Eigen::Index>(m));
    for (std::size_t r = 0; r < m; ++r) restricted[static_cast<Eigen::Index>(r)] = full[static_cast<Eigen::Index>(omega[r])];
    restricted /= std::sqrt(static_cast<double>(m));
    worst = std::max(worst, (build_vx(x, omega, n) * eta - restricted).cwiseAbs().maxCoeff());
  }
  EXPECT_LT(worst, 1e-10);
}

TEST(Vx, NormsAndBasisCase) {
  Rng rng(46);
  const auto omega = random_support(20, 7, rng);
  const Vector x = random_vector(20, rng);
  EXPECT_NEAR(build_vx(x, omega, 20).norm(), x.norm(), 1e-12);
  const DenseMatrix e = build_vx(Vector::Unit(20, 0), omega, 20);
  EXPECT_NEAR(Eigen::JacobiSVD<DenseMatrix>(e).singularValues()(0), 1.0 / std::sqrt(7.0), 1e-14);
  for (Eigen::Index r = 0; r < e.rows(); ++r) EXPECT_NEAR(e.row(r).cwiseAbs().sum(), 1.0 / std::sqrt(7.0), 1e-15);
}

TEST(Vx, FamilyOfUnitVectorsHasUnitFrobenius) {
  Rng rng(47);
  const auto omega = random_support(16, 8, rng);
  const MatrixFamily fam = vx_family(omega, 16, 3, 12, rng);
  EXPECT_NEAR(fam.norms().frobenius, 1.0, 1e-12);
  for (const auto& p : fam.profiles()) EXPECT_NEAR(p.frobenius, 1.0, 1e-12);
}

TEST(Energy, Examples) {
  Rng rng(48);
  const std::size_t n = 32;
  const CirculantOperator op(Vector::Zero(n), random_support(n, 8, rng));
  const weibull::AlphaLaw law(1.0, true);
  const McPlan plan{100000, 9, 1};
  EXPECT_EQ(expected_energy_check(op, Vector::Zero(n), law, plan).estimate, 0.0);

  Vector x = random_vector(n, rng);
  x /= x.norm();
  const auto r = expected_energy_check(op, x, law, plan);
  EXPECT_NEAR(r.estimate, 1.0, 3 * r.std_error);
  const auto r2 = expected_energy_check(op, 2.0 * x, law, plan);
  EXPECT_NEAR(r2.estimate, 4.0 * r.estimate, 1e-12 * r2.estimate);
  EXPECT_THROW(expected_energy_check(op, x, law.raw(), plan), std::invalid_argument);
}

TEST(OperatorJson, RoundTrip) {
  Rng rng(49);
  const CirculantOperator op(random_vector(12, rng), random_support(12, 5, rng));
  nlohmann::json j = op;
  const auto back = operator_from_json(nlohmann::json::parse(j.dump()));
  EXPECT_EQ(back.z(), op.z());
  EXPECT_EQ(back.omega(), op.omega());
}

TEST(Rip, ExactExamples) {
  DenseMatrix d(2, 2);
  d << 1, 0, 0, 0.5;
  const auto e = rip_exact(d, {1, 2});
  EXPECT_EQ(e.delta, 0.75);
  EXPECT_EQ(e.argmax_support, (std::vector<std::size_t>{1}));

  Rng rng(50);
  DenseMatrix g(10, 6);
  for (Eigen::Index i = 0; i < g.rows(); ++i) {
    for (Eigen::Index j = 0; j < g.cols(); ++j) g(i, j) = rng.normal();
  }
  const DenseMatrix q = Eigen::HouseholderQR<DenseMatrix>(g).householderQ() * DenseMatrix::Identity(10, 6);
  for (std::size_t s = 1; s <= 4; ++s) EXPECT_NEAR(rip_exact(q, {s, 6}).delta, 0.0, 1e-13);

  for (double c : {0.5, 1.0, 1.7}) {
    EXPECT_NEAR(rip_exact(c * DenseMatrix::Identity(5, 5), {3, 5}).delta, std::abs(c * c - 1.0), 1e-14);
  }
}

TEST(Rip, CapEnforced) {
  const DenseMatrix phi = DenseMatrix::Identity(40, 40);
  EXPECT_THROW(rip_exact(phi, {10, 40}), std::invalid_argument);
  EXPECT_EQ(binomial(8, 2), 28u);
  EXPECT_EQ(binomial(5, 0), 1u);
  EXPECT_EQ(binomial(3, 5), 0u);
}

TEST(Rip, SampledEqualsExactWhenExhaustive) {
  Rng rng(51);
  for (int rep = 0; rep < 10; ++rep) {
    const CirculantOperator op(random_generator(weibull::AlphaLaw(1.0, true), 8, rng), random_support(8, 5, rng));
    const DenseMatrix phi = dense_phi(op);
    const auto exact = rip_exact(phi, {2, 8});
    const auto sampled = rip_sampled(phi, {2, 8}, 1000, 3);
    EXPECT_EQ(sampled.supports_examined, 28u);
    EXPECT_EQ(sampled.delta, exact.delta);
    EXPECT_EQ(sampled.method, RipMethod::support_sampling);
  }
}

TEST(Rip, SampledIsLowerBoundAndMonotone) {
  Rng rng(52);
  const CirculantOperator op(random_generator(weibull::AlphaLaw(0.5, true), 20, rng), random_support(20, 10, rng));
  const DenseMatrix phi = dense_phi(op);
  const double exact = rip_exact(phi, {3, 20}).delta;
  double previous = 0.0;
  for (std::size_t k : {1, 5, 50, 500}) {
    const double v = rip_sampled(phi, {3, 20}, k, 77).delta;
    EXPECT_LE(v, exact);
    EXPECT_GE(v, previous);
    previous = v;
  }
  EXPECT_EQ(rip_sampled(DenseMatrix::Identity(6, 6), {2, 6}, 1, 1).delta, 0.0);
}

TEST(Rip, NonDecreasingInS) {
  Rng rng(53);
  for (int rep = 0; rep < 10; ++rep) {
    const CirculantOperator op(random_generator(weibull::AlphaLaw(1.0, true), 12, rng), random_support(12, 6, rng));
    const DenseMatrix phi = dense_phi(op);
    double previous = 0.0;
    for (std::size_t s = 1; s <= 4; ++s) {
      const double d = rip_exact(phi, {s, 12}).delta;
      EXPECT_GE(d, previous);
      previous = d;
    }
  }
}

TEST(Rip, CyclicShiftCovariance) {
  Rng rng(54);
  const std::size_t n = 10;
  const Vector z = random_vector(n, rng);
  const auto omega = random_support(n, 5, rng);
  Vector z_shift(n);
  for (std::size_t i = 0; i < n; ++i) z_shift[static_cast<Eigen::Index>((i + 1) % n)] = z[static_cast<Eigen::Index>(i)];
  std::vector<std::size_t> omega_shift;
  for (std::size_t j : omega) omega_shift.push_back((j + 1) % n);
  std::sort(omega_shift.begin(), omega_shift.end());
  const double a = rip_exact(dense_phi(CirculantOperator(z, omega)), {2, n}).delta;
  const double b = rip_exact(dense_phi(CirculantOperator(z_shift, omega_shift)), {2, n}).delta;
  EXPECT_NEAR(a, b, 1e-12);
}

TEST(RipExperiment, SmallTableAndDeterminism) {
  RipExperimentParams p;
  p.alpha = 1.0;
  p.n = 16;
  p.m_grid = {4, 8, 12, 16};
  p.s = 2;
  p.trials = 200;
  p.seed = 5;
  const auto rows = rip_experiment(p);
  ASSERT_EQ(rows.size(), 4u);
  for (const auto& r : rows) {
    EXPECT_EQ(r.trials, 200u);
    EXPECT_LE(r.ci_low, r.success_rate());
    EXPECT_GE(r.ci_high, r.success_rate());
    EXPECT_EQ(r.master_seed, 5u);
  }
  p.workers = 8;
  EXPECT_EQ(rip_rows_csv(rip_experiment(p)), rip_rows_csv(rows));
  EXPECT_EQ(rip_rows_csv(rows).substr(0, rip_rows_csv(rows).find('\n')),
            "alpha,n,m,s,delta_target,trials,successes,ci_low,ci_high,master_seed");
}
