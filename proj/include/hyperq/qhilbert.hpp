#pragma once

#include <vector>

#include "hyperq/errors.hpp"
#include "hyperq/quaternion.hpp"

namespace hyperq::hilbert {

/// Vector in a finite-dimensional left quaternionic Hilbert space.
using QuaternionTuple = std::vector<Quaternion>;

/**
 * @brief Quaternion-linear operator, stored as entries[k][j].
 *
 * The operator acts by right contraction, (F phi)_j = sum_k phi_k * M[k][j],
 * which makes left homogeneity F(a phi) = a F(phi) an exact identity.
 */
using QuaternionMatrix = std::vector<std::vector<Quaternion>>;

/// @throws ValidationError when the matrix is empty or not square
void validate_matrix(const QuaternionMatrix& m);

/// Hermitian inner product <phi|psi> = sum_j phi_j * conj(psi_j).
/// @throws ValidationError on length mismatch or empty tuples
[[nodiscard]] Quaternion inner(const QuaternionTuple& phi, const QuaternionTuple& psi);

/// @throws ValidationError on dimension mismatch
[[nodiscard]] QuaternionTuple apply(const QuaternionMatrix& f, const QuaternionTuple& phi);

/// Conjugate transpose: out[j][k] = conj(m[k][j]).
[[nodiscard]] QuaternionMatrix adjoint(const QuaternionMatrix& m);

/// Expectation <phi|F phi>. For antihermitian F the real part vanishes.
[[nodiscard]] Quaternion expectation(const QuaternionMatrix& f, const QuaternionTuple& phi);

/// True iff adjoint(m) = -m within tol, entrywise.
[[nodiscard]] bool is_antihermitian(const QuaternionMatrix& m, double tol = 1e-12);

}  // namespace hyperq::hilbert
