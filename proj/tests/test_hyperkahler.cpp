#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <random>

#include "hyperq/errors.hpp"
#include "hyperq/hyperkahler.hpp"
#include "hyperq/qhilbert.hpp"
#include "hyperq/quaternion.hpp"

using namespace hyperq;
using hyperkahler::RealPoint;
using hyperkahler::RealVector;

namespace {

Eigen::VectorXd to_eigen(const RealPoint& p) {
  return Eigen::Map<const Eigen::VectorXd>(p.data(), static_cast<Eigen::Index>(p.size()));
}

Quaternion random_quaternion(std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  return {u(rng), u(rng), u(rng), u(rng)};
}

hilbert::QuaternionMatrix random_antihermitian(int n, std::mt19937& rng) {
  hilbert::QuaternionMatrix m(n, std::vector<Quaternion>(n));
  for (auto& row : m)
    for (auto& q : row) q = random_quaternion(rng);
  const hilbert::QuaternionMatrix ad = hilbert::adjoint(m);
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j) m[k][j] = m[k][j] - ad[k][j];
  return m;
}

// Rotation matrix of v -> r v conj(r) on imaginary coordinates, for unit r.
algebra::CanonicalFrame frame_from_unit(Quaternion r) {
  r = r / r.norm();
  const double w = r.w, x = r.x, y = r.y, z = r.z;
  algebra::CanonicalFrame f;
  f.rotation = {{{1 - 2 * (y * y + z * z), 2 * (x * y - z * w), 2 * (x * z + y * w)},
                 {2 * (x * y + z * w), 1 - 2 * (x * x + z * z), 2 * (y * z - x * w)},
                 {2 * (x * z - y * w), 2 * (y * z + x * w), 1 - 2 * (x * x + y * y)}}};
  return f;
}

RealPoint random_point(int dim, std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  RealPoint p(dim);
  for (double& v : p) v = u(rng);
  return p;
}

}  // namespace

TEST_CASE("realify blocks coordinates per entry and roundtrips") {
  const hilbert::QuaternionTuple phi{Quaternion{1, 2, 3, 4}, Quaternion{-5, 6, -7, 8}};
  const RealPoint p = hyperkahler::realify(phi);
  CHECK(p == RealPoint{1, 2, 3, 4, -5, 6, -7, 8});
  const hilbert::QuaternionTuple back = hyperkahler::derealify(p);
  REQUIRE(back.size() == 2);
  CHECK(back[0] == phi[0]);
  CHECK(back[1] == phi[1]);
}

TEST_CASE("realify in a rotated frame projects onto the rotated basis") {
  // Row p holds the coordinates of i'_p, so c_p = sum_q rotation[p][q] imag_q.
  algebra::CanonicalFrame f;
  f.rotation = {{{0.0, -1.0, 0.0}, {1.0, 0.0, 0.0}, {0.0, 0.0, 1.0}}};
  REQUIRE(f.is_valid());
  const hilbert::QuaternionTuple phi{Quaternion{1, 2, 3, 4}};
  CHECK(hyperkahler::realify(phi, f) == RealPoint{1, -3, 2, 4});
  CHECK(hyperkahler::derealify(hyperkahler::realify(phi, f), f)[0] == phi[0]);
}

TEST_CASE("roundtrip through a generic frame") {
  std::mt19937 rng(23);
  const algebra::CanonicalFrame f = frame_from_unit({0.4, -0.3, 0.8, 0.1});
  REQUIRE(f.is_valid(1e-12));
  for (int trial = 0; trial < 10; ++trial) {
    hilbert::QuaternionTuple phi{random_quaternion(rng), random_quaternion(rng)};
    const hilbert::QuaternionTuple back =
        hyperkahler::derealify(hyperkahler::realify(phi, f), f);
    CHECK(max_abs_diff(back[0], phi[0]) < 1e-14);
    CHECK(max_abs_diff(back[1], phi[1]) < 1e-14);
  }
}

TEST_CASE("the flat metric is the identity in frame coordinates") {
  for (int n : {1, 2, 3}) {
    const auto s = hyperkahler::build_structure(n);
    CHECK((s.g() - Eigen::MatrixXd::Identity(4 * n, 4 * n)).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("symplectic pairing of i against 1 is +1") {
  const auto s = hyperkahler::build_structure(1);
  const Eigen::VectorXd u = to_eigen(hyperkahler::realify({Quaternion::unit(1)}));
  const Eigen::VectorXd v = to_eigen(hyperkahler::realify({Quaternion{1, 0, 0, 0}}));
  CHECK(u.dot(s.omega(1) * v) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("complex triple: squares, product and metric compatibility") {
  const auto s = hyperkahler::build_structure(2);
  const int d = s.dim();
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(d, d);
  for (int p = 1; p <= 3; ++p) {
    CHECK((s.cplx(p) * s.cplx(p) + id).cwiseAbs().maxCoeff() < 1e-15);
    CHECK((s.cplx(p).transpose() * s.cplx(p) - id).cwiseAbs().maxCoeff() < 1e-15);
    CHECK((s.omega(p) - s.g() * s.cplx(p)).cwiseAbs().maxCoeff() < 1e-15);
    CHECK((s.omega(p).transpose() + s.omega(p)).cwiseAbs().maxCoeff() < 1e-15);
  }
  CHECK((s.cplx(1) * s.cplx(2) - s.cplx(3)).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("frame change acts on the symplectic triple through the relative rotation") {
  const algebra::CanonicalFrame a = frame_from_unit({0.9, 0.1, -0.2, 0.4});
  const algebra::CanonicalFrame b = frame_from_unit({-0.3, 0.7, 0.5, -0.1});
  const int n = 2, d = 4 * n;

  // Relative rotation R = B A^T and its realified block action Q.
  Eigen::Matrix3d ra, rb;
  for (int p = 0; p < 3; ++p)
    for (int q = 0; q < 3; ++q) {
      ra(p, q) = a.rotation[p][q];
      rb(p, q) = b.rotation[p][q];
    }
  const Eigen::Matrix3d r = rb * ra.transpose();
  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(d, d);
  for (int block = 0; block < n; ++block) {
    q(4 * block, 4 * block) = 1.0;
    q.block<3, 3>(4 * block + 1, 4 * block + 1) = r;
  }

  // Coordinates transform by Q...
  std::mt19937 rng(29);
  const hilbert::QuaternionTuple phi{random_quaternion(rng), random_quaternion(rng)};
  const Eigen::VectorXd in_b = to_eigen(hyperkahler::realify(phi, b));
  const Eigen::VectorXd in_a = to_eigen(hyperkahler::realify(phi, a));
  CHECK((in_b - q * in_a).cwiseAbs().maxCoeff() < 1e-13);

  // ...so pulling the B-frame forms back to A-coordinates rotates the triple.
  const auto s = hyperkahler::build_structure(n);
  for (int p = 1; p <= 3; ++p) {
    const Eigen::MatrixXd pulled = q.transpose() * s.omega(p) * q;
    Eigen::MatrixXd expected = Eigen::MatrixXd::Zero(d, d);
    for (int k = 1; k <= 3; ++k) expected += r(p - 1, k - 1) * s.omega(k);
    CHECK((pulled - expected).cwiseAbs().maxCoeff() < 1e-13);
  }
}

TEST_CASE("metric and symplectic sharps solve their defining equations") {
  std::mt19937 rng(31);
  const auto s = hyperkahler::build_structure(2);
  const int d = s.dim();
  const RealPoint cov = random_point(d, rng);
  const Eigen::VectorXd cov_e = to_eigen(cov);

  const Eigen::VectorXd flat = to_eigen(s.metric_sharp(cov));
  CHECK((s.g() * flat - cov_e).cwiseAbs().maxCoeff() < 1e-12);

  for (int p = 1; p <= 3; ++p) {
    const Eigen::VectorXd f = to_eigen(s.symplectic_sharp(p, cov));
    // omega^p(f, v) = cov . v for all v.
    CHECK((s.omega(p).transpose() * f - cov_e).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("euclidean sharp of the first-coordinate differential is constant") {
  const auto s = hyperkahler::build_structure(1);
  const hyperkahler::GradientMap grad = [](const RealPoint&) {
    return RealVector{1.0, 0.0, 0.0, 0.0};
  };
  const auto sample = hyperkahler::hyperhamiltonian_field(grad, s, {0.3, -0.7, 0.2, 0.9});
  CHECK(to_eigen(sample.vector).isApprox(Eigen::Vector4d(1, 0, 0, 0), 1e-14));
}

TEST_CASE("finite-difference gradient of a quadratic is near exact") {
  const hyperkahler::ScalarMap f = [](const RealPoint& p) {
    double s = 0.0;
    for (double v : p) s += v * v;
    return s;
  };
  const RealPoint p{0.4, -1.1, 0.6, 0.0};
  const RealVector g = hyperkahler::fd_gradient(f, p);
  for (int k = 0; k < 4; ++k) CHECK(std::abs(g[k] - 2.0 * p[k]) < 1e-9);
}

TEST_CASE("hyperfield of [[i]] right-multiplies and negates") {
  const hilbert::QuaternionMatrix m{{Quaternion::unit(1)}};
  const auto at_one = hyperkahler::hyperfield(m, {1, 0, 0, 0});
  CHECK(to_eigen(at_one.vector).isApprox(Eigen::Vector4d(0, -1, 0, 0), 1e-15));
  const auto at_j = hyperkahler::hyperfield(m, {0, 0, 1, 0});
  // -(j i) = k
  CHECK(to_eigen(at_j.vector).isApprox(Eigen::Vector4d(0, 0, 0, 1), 1e-15));
}

TEST_CASE("the generating triple reassembles the hyperfield") {
  std::mt19937 rng(37);
  for (int n : {1, 2}) {
    const auto s = hyperkahler::build_structure(n);
    for (int trial = 0; trial < 5; ++trial) {
      const hilbert::QuaternionMatrix m = random_antihermitian(n, rng);
      const auto triple = hyperkahler::generating_triple(m, s);
      for (int rep = 0; rep < 3; ++rep) {
        const RealPoint p = random_point(4 * n, rng);
        const auto pieces = hyperkahler::decompose_field(triple, s, p);
        Eigen::VectorXd sum = Eigen::VectorXd::Zero(4 * n);
        for (const auto& piece : pieces) sum += to_eigen(piece.vector);
        const Eigen::VectorXd target = to_eigen(hyperkahler::hyperfield(m, p).vector);
        const double scale = std::max(1.0, target.norm());
        CHECK((sum - target).norm() / scale < 1e-6);
      }
    }
  }
}

TEST_CASE("analytic and finite-difference decompositions agree") {
  std::mt19937 rng(41);
  const auto s = hyperkahler::build_structure(1);
  const RealPoint c1 = random_point(4, rng), c2 = random_point(4, rng),
                  c3 = random_point(4, rng);
  auto lin = [](const RealPoint& c) {
    return hyperkahler::ScalarMap([c](const RealPoint& p) {
      double s = 0.0;
      for (std::size_t k = 0; k < p.size(); ++k) s += c[k] * p[k];
      return s;
    });
  };
  auto grad = [](const RealPoint& c) {
    return hyperkahler::GradientMap([c](const RealPoint&) { return c; });
  };
  const RealPoint p = random_point(4, rng);
  const auto fd = hyperkahler::decompose_field({lin(c1), lin(c2), lin(c3)}, s, p);
  const auto an = hyperkahler::decompose_field_gradients({grad(c1), grad(c2), grad(c3)}, s, p);
  for (int k = 0; k < 3; ++k) {
    CHECK((to_eigen(fd[k].vector) - to_eigen(an[k].vector)).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("regularity residual of the identity map") {
  const auto s = hyperkahler::build_structure(1);
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(4, 4);

  algebra::CanonicalFrame flip;
  flip.rotation = {{{-1.0, 0.0, 0.0}, {0.0, -1.0, 0.0}, {0.0, 0.0, 1.0}}};
  REQUIRE(flip.is_valid());
  CHECK(hyperkahler::regularity_residual(id, flip, s, s) <= 1e-12);
  CHECK(std::abs(hyperkahler::regularity_residual(id, {}, s, s) - 4.0) < 1e-9);
}

TEST_CASE("structure construction rejects bad arguments") {
  CHECK_THROWS_AS((void)hyperkahler::build_structure(0), ValidationError);
  const auto s = hyperkahler::build_structure(1);
  CHECK_THROWS_AS((void)s.omega(0), ValidationError);
  CHECK_THROWS_AS((void)s.cplx(4), ValidationError);
  CHECK_THROWS_AS((void)hyperkahler::derealify({1.0, 2.0, 3.0}), ValidationError);
}
