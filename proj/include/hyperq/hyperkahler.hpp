#pragma once

#include <Eigen/Dense>

#include <array>
#include <functional>
#include <vector>

#include "hyperq/algebra.hpp"
#include "hyperq/errors.hpp"
#include "hyperq/qhilbert.hpp"

namespace hyperq::hyperkahler {

/// Point of the realified state space, 4n coordinates blocked per quaternionic
/// entry in the basis order (1, i, j, k) of the chosen frame.
using RealPoint = std::vector<double>;
using RealVector = std::vector<double>;

/// Scalar map on the realified space, e.g. a generator constituent.
using ScalarMap = std::function<double(const RealPoint&)>;
/// Differential of a scalar map, returned as the gradient coordinates.
using GradientMap = std::function<RealVector(const RealPoint&)>;

struct FieldSample {
  RealPoint point;
  RealVector vector;
};

/// Coordinates of phi in the basis generated by frame_basis(f), blocked per entry.
[[nodiscard]] RealPoint realify(const hilbert::QuaternionTuple& phi,
                                const algebra::CanonicalFrame& f = {});

/// Inverse of realify.
/// @throws ValidationError when the length is not a positive multiple of 4
[[nodiscard]] hilbert::QuaternionTuple derealify(const RealPoint& p,
                                                 const algebra::CanonicalFrame& f = {});

/**
 * @brief Flat hyperkähler package on the realified space of quaternionic n-tuples.
 *
 * Holds the metric g, the symplectic triple omega(1..3) and the complex triple
 * cplx(1..3), all constant 4n x 4n matrices, defined by decomposing the
 * hermitian inner product in the frame's basis:
 *
 *   inner(u, v) = g(u, v) * 1 + sum_p omega^p(u, v) * i'_p
 *
 * and by I_p = realified left multiplication by i'_p. In frame coordinates
 * every one of these matrices is frame independent (the frame only enters
 * through realify/derealify); g is the identity.
 */
class HyperkahlerStructure {
public:
  HyperkahlerStructure(int n, algebra::CanonicalFrame frame);

  [[nodiscard]] int n() const { return n_; }
  [[nodiscard]] int dim() const { return 4 * n_; }
  [[nodiscard]] const algebra::CanonicalFrame& frame() const { return frame_; }

  [[nodiscard]] const Eigen::MatrixXd& g() const { return g_; }
  /// @param p symplectic index in {1,2,3}
  [[nodiscard]] const Eigen::MatrixXd& omega(int p) const;
  /// @param p complex index in {1,2,3}
  [[nodiscard]] const Eigen::MatrixXd& cplx(int p) const;

  /// Solves g(out, .) = covector.
  [[nodiscard]] RealVector metric_sharp(const RealVector& covector) const;
  /// Solves omega^p(out, .) = covector.
  [[nodiscard]] RealVector symplectic_sharp(int p, const RealVector& covector) const;

private:
  int n_;
  algebra::CanonicalFrame frame_;
  Eigen::MatrixXd g_;
  std::array<Eigen::MatrixXd, 3> omega_;
  std::array<Eigen::MatrixXd, 3> cplx_;
  Eigen::PartialPivLU<Eigen::MatrixXd> g_lu_;
  std::array<Eigen::PartialPivLU<Eigen::MatrixXd>, 3> omega_t_lu_;
};

/// @throws ValidationError when n < 1 or the frame is invalid
[[nodiscard]] HyperkahlerStructure build_structure(int n, const algebra::CanonicalFrame& f = {});

/**
 * @brief Deviation of df from quaternionic regularity for the rotation B.
 *
 * Returns the operator norm of sum_{p,q} B_pq I^dst_q * df * I^src_p - df;
 * df maps source tangent vectors (4m) to target tangent vectors (4n) and B
 * plays the role of the SO(3) element selecting the canonical basis.
 *
 * @throws ValidationError on dimension mismatch or invalid B
 */
[[nodiscard]] double regularity_residual(const Eigen::MatrixXd& df,
                                         const algebra::CanonicalFrame& b,
                                         const HyperkahlerStructure& src,
                                         const HyperkahlerStructure& dst);

/// Central-difference gradient, default step 1e-5.
[[nodiscard]] RealVector fd_gradient(const ScalarMap& f, const RealPoint& p, double step = 1e-5);

/// Field f with g(f, u) = df0(u) for all u, evaluated at p.
[[nodiscard]] FieldSample hyperhamiltonian_field(const GradientMap& f0_grad,
                                                 const HyperkahlerStructure& s,
                                                 const RealPoint& p);

/// The three omega-sharp pieces f_p with df_p(u) = omega^p(f_p, u), one per
/// imaginary constituent, with analytic differentials supplied by the caller.
[[nodiscard]] std::array<FieldSample, 3> decompose_field_gradients(
    const std::array<GradientMap, 3>& grads, const HyperkahlerStructure& s, const RealPoint& p);

/// Same, with differentials taken by central finite differences of the
/// scalar constituents (step fd_step).
[[nodiscard]] std::array<FieldSample, 3> decompose_field(
    const std::array<ScalarMap, 3>& f_constituents, const HyperkahlerStructure& s,
    const RealPoint& p, double fd_step = 1e-5);

/// Realification of -apply(F, derealify(p)), the flow generator of psi' = -F(psi).
/// @throws ValidationError on dimension mismatch
[[nodiscard]] FieldSample hyperfield(const hilbert::QuaternionMatrix& f, const RealPoint& p,
                                     const algebra::CanonicalFrame& frame = {});

/**
 * @brief Scalar constituents of the generating map of the hyperfield of F.
 *
 * The returned callables are the imaginary constituents (in the frame of S) of
 * expectation(F, .) divided by 6. With that normalization the omega-sharp
 * pieces from decompose_field sum to hyperfield(F, .): each raw expectation
 * constituent alone would contribute exactly twice the hyperfield, so the
 * three of them together overcount by a factor of 6.
 */
[[nodiscard]] std::array<ScalarMap, 3> generating_triple(const hilbert::QuaternionMatrix& f,
                                                         const HyperkahlerStructure& s);

}  // namespace hyperq::hyperkahler
