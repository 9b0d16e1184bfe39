#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "hyperq/errors.hpp"
#include "hyperq/quaternion.hpp"

namespace hyperq::algebra {

/// Element of a finite-dimensional real algebra, coordinates in the ambient basis.
using AlgebraElement = std::vector<double>;

/**
 * @brief Multiplication tensor of a finite-dimensional real algebra.
 *
 * Stored dense, row-major, indexed [gamma][alpha][beta]; the product rule is
 * (ab)^gamma = sum_{alpha,beta} H[gamma][alpha][beta] a^alpha b^beta.
 */
class StructureTensor {
public:
  /// @param dim ambient dimension, at least 1
  /// @param components flattened dim^3 array, index ((gamma*dim)+alpha)*dim+beta
  /// @throws ValidationError on size mismatch or non-finite entries
  StructureTensor(int dim, std::vector<double> components);

  /// The quaternion algebra: the four canonical 4x4 matrices with i*j = k.
  [[nodiscard]] static StructureTensor quaternion();

  [[nodiscard]] int dim() const { return dim_; }

  [[nodiscard]] double at(int gamma, int alpha, int beta) const {
    return components_[(static_cast<std::size_t>(gamma) * dim_ + alpha) * dim_ + beta];
  }

  [[nodiscard]] const std::vector<double>& components() const { return components_; }

private:
  int dim_;
  std::vector<double> components_;
};

/// Bilinear product under the tensor.
/// @throws ValidationError when the dimensions of a, b, t disagree
[[nodiscard]] AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b,
                                      const StructureTensor& t);

struct ConjugateNormInverse {
  AlgebraElement conjugate;
  double norm = 0.0;
  std::optional<AlgebraElement> inverse;  ///< absent exactly for the zero element
};

/// Quaternion involution package: conjugate, euclidean norm, inverse.
/// @throws ValidationError unless dim(a) = 4
[[nodiscard]] ConjugateNormInverse conjugate_norm_inverse(const AlgebraElement& a);

/**
 * @brief Rotation parametrizing a canonical quaternion basis.
 *
 * The basis is (1, i'_1, i'_2, i'_3) with i'_p = sum_q rotation[p][q] i_q.
 * Canonical bases form exactly the orbit of the standard basis under SO(3).
 */
struct CanonicalFrame {
  std::array<std::array<double, 3>, 3> rotation{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};

  [[nodiscard]] static CanonicalFrame identity() { return {}; }

  /// Orthogonality and det = +1, both within tol.
  [[nodiscard]] bool is_valid(double tol = 1e-12) const;
};

/// The four basis elements (as dim-4 coordinate vectors) of the frame.
/// @throws ValidationError when the rotation is not special orthogonal
[[nodiscard]] std::array<AlgebraElement, 4> frame_basis(const CanonicalFrame& f);

/// True iff products of the given basis elements under t, re-expanded in that
/// same basis, reproduce the four canonical matrices within tol.
/// @throws ValidationError unless dim = 4 everywhere
[[nodiscard]] bool is_canonical(const std::array<AlgebraElement, 4>& basis,
                                const StructureTensor& t, double tol = 1e-12);

struct ClassificationReport {
  bool unital = false;
  std::optional<AlgebraElement> identity;
  bool associative = false;
  std::optional<std::pair<AlgebraElement, AlgebraElement>> zero_divisor_witness;
  bool division_candidate = false;  ///< unital && associative && no witness found
  int trials = 0;                   ///< randomized search budget actually used
  std::uint64_t seed = 0;
};

/**
 * @brief Structural classification of the algebra.
 *
 * Unitality and associativity are decided exactly on basis elements (the
 * identity is found by solving the left-identity linear system; a candidate
 * must also act as a right identity). The zero-divisor search is exhaustive
 * sign-pattern probing of one- and two-term basis combinations plus a seeded
 * randomized singularity probe of left/right multiplication operators, so the
 * absence of a witness is probabilistic while a returned witness is exact.
 */
[[nodiscard]] ClassificationReport classify(const StructureTensor& t, int trials = 1000,
                                            std::uint64_t seed = 0);

/// Quaternion <-> AlgebraElement bridges for the dim-4 case.
[[nodiscard]] AlgebraElement to_element(const Quaternion& q);
[[nodiscard]] Quaternion to_quaternion(const AlgebraElement& a);

}  // namespace hyperq::algebra
