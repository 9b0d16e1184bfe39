#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "hyperq/algebra.hpp"
#include "hyperq/errors.hpp"
#include "hyperq/quaternion.hpp"

using namespace hyperq;
using algebra::AlgebraElement;
using algebra::CanonicalFrame;
using algebra::StructureTensor;

namespace {

AlgebraElement unit_element(int beta) {
  AlgebraElement e(4, 0.0);
  e[beta] = 1.0;
  return e;
}

CanonicalFrame rotation_z(double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  CanonicalFrame f;
  f.rotation = {{{c, -s, 0.0}, {s, c, 0.0}, {0.0, 0.0, 1.0}}};
  return f;
}

double element_norm(const AlgebraElement& a) {
  double s = 0.0;
  for (double v : a) s += v * v;
  return std::sqrt(s);
}

// The dual numbers a + b*eps with eps^2 = 0: unital, associative, eps a zero divisor.
StructureTensor dual_numbers() {
  return StructureTensor(2, {1, 0, 0, 0,   // gamma = 0: only e0*e0 has a real part
                             0, 1, 1, 0}); // gamma = 1: e0*e1 = e1*e0 = e1
}

}  // namespace

TEST_CASE("canonical tensor reproduces the basis products integer-exact") {
  const StructureTensor t = StructureTensor::quaternion();
  REQUIRE(t.dim() == 4);
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      const Quaternion expected = Quaternion::unit(a) * Quaternion::unit(b);
      const AlgebraElement got = algebra::multiply(unit_element(a), unit_element(b), t);
      for (int g = 0; g < 4; ++g) {
        CHECK(got[g] == expected[g]);
        CHECK(t.at(g, a, b) == expected[g]);
      }
    }
  }
}

TEST_CASE("tensor product agrees with the hand-written quaternion product") {
  const StructureTensor t = StructureTensor::quaternion();
  const Quaternion a{0.3, -1.2, 0.77, 2.5};
  const Quaternion b{-0.9, 0.4, -3.1, 0.05};
  const AlgebraElement got = algebra::multiply(algebra::to_element(a), algebra::to_element(b), t);
  const Quaternion expected = a * b;
  CHECK(max_abs_diff(algebra::to_quaternion(got), expected) < 1e-14);
}

TEST_CASE("structure tensor validation") {
  CHECK_THROWS_AS(StructureTensor(0, {}), ValidationError);
  CHECK_THROWS_AS(StructureTensor(4, std::vector<double>(63, 0.0)), ValidationError);
  const double nan = std::nan("");
  CHECK_THROWS_AS(StructureTensor(1, {nan}), ValidationError);
  CHECK_THROWS_AS(
      (void)algebra::multiply({1.0, 0.0}, {1.0, 0.0}, StructureTensor::quaternion()),
      ValidationError);
}

TEST_CASE("conjugate, norm and inverse of a generic quaternion element") {
  const AlgebraElement a{1.0, 2.0, 3.0, 4.0};
  const auto pack = algebra::conjugate_norm_inverse(a);
  CHECK(pack.conjugate == AlgebraElement{1.0, -2.0, -3.0, -4.0});
  CHECK(std::abs(pack.norm - std::sqrt(30.0)) < 1e-15);
  REQUIRE(pack.inverse.has_value());

  const StructureTensor t = StructureTensor::quaternion();
  const AlgebraElement left = algebra::multiply(*pack.inverse, a, t);
  const AlgebraElement right = algebra::multiply(a, *pack.inverse, t);
  for (int g = 0; g < 4; ++g) {
    const double want = g == 0 ? 1.0 : 0.0;
    CHECK(std::abs(left[g] - want) < 1e-15);
    CHECK(std::abs(right[g] - want) < 1e-15);
  }
}

TEST_CASE("the zero element has no inverse but keeps conjugate and norm") {
  const auto pack = algebra::conjugate_norm_inverse({0.0, 0.0, 0.0, 0.0});
  CHECK(!pack.inverse.has_value());
  CHECK(pack.norm == 0.0);
  CHECK(pack.conjugate == AlgebraElement{0.0, 0.0, 0.0, 0.0});
}

TEST_CASE("conjugate_norm_inverse rejects non-quaternionic dimensions") {
  CHECK_THROWS_AS((void)algebra::conjugate_norm_inverse({1.0, 2.0}), ValidationError);
}

TEST_CASE("the identity frame produces the standard basis") {
  const auto basis = algebra::frame_basis(CanonicalFrame::identity());
  for (int b = 0; b < 4; ++b) CHECK(basis[b] == unit_element(b));
  CHECK(algebra::is_canonical(basis, StructureTensor::quaternion()));
}

TEST_CASE("rotated frames stay canonical") {
  const auto basis = algebra::frame_basis(rotation_z(0.7));
  CHECK(algebra::is_canonical(basis, StructureTensor::quaternion()));

  // The rotated basis obeys the same product table: i' * j' = k'.
  const StructureTensor t = StructureTensor::quaternion();
  const AlgebraElement prod = algebra::multiply(basis[1], basis[2], t);
  double diff = 0.0;
  for (int g = 0; g < 4; ++g) diff = std::fmax(diff, std::abs(prod[g] - basis[3][g]));
  CHECK(diff < 1e-15);
}

TEST_CASE("improper and non-orthogonal frames are rejected") {
  CanonicalFrame reflect;
  reflect.rotation = {{{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, -1.0}}};
  CHECK(!reflect.is_valid());
  CHECK_THROWS_AS((void)algebra::frame_basis(reflect), ValidationError);

  CanonicalFrame skew;
  skew.rotation = {{{1.0, 0.5, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}}};
  CHECK(!skew.is_valid());
}

TEST_CASE("scaled or mirrored bases are not canonical") {
  const StructureTensor t = StructureTensor::quaternion();
  std::array<AlgebraElement, 4> scaled{unit_element(0), unit_element(1), unit_element(2),
                                       unit_element(3)};
  scaled[1][1] = 2.0;
  CHECK(!algebra::is_canonical(scaled, t));

  // Swapping i and j flips orientation: j * i = -k breaks the table.
  std::array<AlgebraElement, 4> mirrored{unit_element(0), unit_element(2), unit_element(1),
                                         unit_element(3)};
  CHECK(!algebra::is_canonical(mirrored, t));
}

TEST_CASE("classification of the quaternions: a division candidate") {
  const auto rep = algebra::classify(StructureTensor::quaternion());
  CHECK(rep.unital);
  REQUIRE(rep.identity.has_value());
  for (int g = 0; g < 4; ++g) {
    CHECK(std::abs((*rep.identity)[g] - (g == 0 ? 1.0 : 0.0)) < 1e-12);
  }
  CHECK(rep.associative);
  CHECK(!rep.zero_divisor_witness.has_value());
  CHECK(rep.division_candidate);
  CHECK(rep.trials == 1000);
  CHECK(rep.seed == 0);
}

TEST_CASE("classification of the dual numbers finds a zero divisor") {
  const StructureTensor dual = dual_numbers();
  const auto rep = algebra::classify(dual);
  CHECK(rep.unital);
  REQUIRE(rep.identity.has_value());
  CHECK(std::abs((*rep.identity)[0] - 1.0) < 1e-9);
  CHECK(std::abs((*rep.identity)[1]) < 1e-9);
  CHECK(rep.associative);
  REQUIRE(rep.zero_divisor_witness.has_value());
  CHECK(!rep.division_candidate);

  const auto& [wa, wb] = *rep.zero_divisor_witness;
  CHECK(element_norm(wa) > 1e-9);
  CHECK(element_norm(wb) > 1e-9);
  const AlgebraElement prod = algebra::multiply(wa, wb, dual);
  CHECK(element_norm(prod) < 1e-9 * element_norm(wa) * element_norm(wb) + 1e-12);
}

TEST_CASE("classification is deterministic for a fixed seed") {
  const StructureTensor dual = dual_numbers();
  const auto a = algebra::classify(dual, 500, 42);
  const auto b = algebra::classify(dual, 500, 42);
  CHECK(a.unital == b.unital);
  CHECK(a.associative == b.associative);
  REQUIRE(a.zero_divisor_witness.has_value());
  REQUIRE(b.zero_divisor_witness.has_value());
  CHECK(a.zero_divisor_witness->first == b.zero_divisor_witness->first);
  CHECK(a.zero_divisor_witness->second == b.zero_divisor_witness->second);
  // trials reports the randomized budget actually consumed; the dual-number
  // witness falls out of the exhaustive phase, so none of the 500 is used.
  CHECK(a.trials == b.trials);
  CHECK(a.trials <= 500);
  CHECK(a.seed == 42);
}

TEST_CASE("the zero algebra is neither unital nor a division candidate") {
  const StructureTensor zero(2, std::vector<double>(8, 0.0));
  const auto rep = algebra::classify(zero);
  CHECK(!rep.unital);
  CHECK(!rep.identity.has_value());
  CHECK(rep.associative);  // all triple products vanish
  CHECK(rep.zero_divisor_witness.has_value());
  CHECK(!rep.division_candidate);
}
