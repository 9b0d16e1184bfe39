#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "hyperq/errors.hpp"
#include "hyperq/hyperkahler.hpp"
#include "hyperq/qhilbert.hpp"
#include "hyperq/quaternion.hpp"

namespace hyperq::dynamics {

using hyperkahler::FieldSample;
using hyperkahler::RealPoint;
using hyperkahler::RealVector;

/// Physical system over the punctured realified state space.
struct SystemConfig {
  int n = 1;
  hyperkahler::HyperkahlerStructure structure;
  hyperkahler::ScalarMap ambient_time;                        ///< T
  std::optional<hyperkahler::GradientMap> ambient_time_grad;  ///< dT, finite-differenced if absent
};

/// @throws ValidationError when n < 1 or the structure dimension is not 4n
void check_config(const SystemConfig& cfg);

/// Quaternion-valued perceptible. When the map is the expectation of an
/// operator, supply the operator as `generator`: its realified linear map then
/// serves as the differential in the regularity gate of measure(), and its
/// hyperfield as the f-field.
struct Observable {
  std::function<Quaternion(const RealPoint&)> value;
  std::optional<hilbert::QuaternionMatrix> generator;
};

/// Expectation observable of an operator, generator included.
[[nodiscard]] Observable make_operator_observable(const hilbert::QuaternionMatrix& f,
                                                  const algebra::CanonicalFrame& frame = {});

struct Observation {
  Observable observable;
  RealPoint initial;
  RealPoint final;
};

struct MeasurementOutcome {
  bool success = false;
  std::optional<Quaternion> world_witness;  ///< q with initial = q * final, when in one world
  double present_time = 0.0;                ///< ambient time at the final state
  std::optional<Quaternion> property;       ///< f(final) on success
  std::optional<double> propensity;         ///< may be infinity (same world)
};

/// Positive real or infinity.
using PropensityValue = double;

using VectorField = std::function<RealVector(const RealPoint&)>;

struct TrajectorySample {
  double t = 0.0;
  RealPoint state;
};

/// Temporal evolution field f_T with g(f_T, u) = dT(u), evaluated at p.
[[nodiscard]] FieldSample evolution_field(const SystemConfig& cfg, const RealPoint& p);

/**
 * @brief Fixed-step classical RK4 from t = 0 to t_end, sampled every step.
 *
 * First sample is the start state at t = 0; a shorter final step lands exactly
 * on t_end. Deterministic for fixed inputs.
 *
 * @throws ValidationError for dt <= 0 or t_end < 0
 * @throws NumericError when the state turns non-finite, naming the step index
 */
[[nodiscard]] std::vector<TrajectorySample> integrate(const VectorField& field, RealPoint start,
                                                      double t_end, double dt);

/// Left ray test: q with phi = q * psi componentwise, if one exists.
/// The candidate comes from the first entry of psi with norm above tol and is
/// verified on all entries within 1e-9.
/// @throws ValidationError when both points are zero
[[nodiscard]] std::optional<Quaternion> same_world(const RealPoint& phi, const RealPoint& psi,
                                                   double tol = 1e-12);

/// True iff the sample's vector lies in the vertical space
/// span{realify(u * psi) : u in a basis of the quaternions} at the sample's
/// point, within angular tolerance 1e-8.
/// @throws ValidationError when the sample's point is zero
[[nodiscard]] bool is_proper_state(const SystemConfig& cfg, const FieldSample& field_value);

/// Infinity within one world, otherwise the reciprocal euclidean distance.
/// @throws ValidationError when both points are zero
/// @throws NumericError when the connecting segment passes through the origin
[[nodiscard]] PropensityValue propensity(const SystemConfig& cfg, const RealPoint& phi,
                                         const RealPoint& psi);

/**
 * @brief Runs the observation against the three success gates.
 *
 * Success requires (a) regularity residual of the observable below 1e-6 for B,
 * (b) a propensity value (no puncture crossing), (c) the final state f-proper.
 * On success the optional fields are filled; on failure they stay absent and
 * only present_time is reported.
 */
[[nodiscard]] MeasurementOutcome measure(const SystemConfig& cfg, const Observation& obs,
                                         const algebra::CanonicalFrame& b);

/// Hamiltonian check: the observable's field matches the temporal evolution
/// field at every sample point within tol. Verification only, no construction.
[[nodiscard]] bool matches_evolution_field(const SystemConfig& cfg, const Observable& obs,
                                           const std::vector<RealPoint>& points,
                                           double tol = 1e-8);

}  // namespace hyperq::dynamics
