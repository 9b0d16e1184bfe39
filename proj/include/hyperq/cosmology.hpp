#pragma once

#include <Eigen/Dense>

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hyperq/errors.hpp"
#include "hyperq/quaternion.hpp"

namespace hyperq::cosmology {

/// Perceptible time as a function of conformal time eta, with its derivative.
struct TimeProfile {
  std::function<double(double)> T;
  std::function<double(double)> dT;
};

/// T(eta) = eta.
[[nodiscard]] TimeProfile linear_profile();

/**
 * @brief Monotone cubic (Fritsch-Carlson) interpolant through (x, y) samples.
 *
 * Slopes are limited so the interpolant preserves the monotonicity of the
 * data on every subinterval. Evaluation outside the sample range is refused.
 */
class MonotoneCubic {
public:
  /// @throws ValidationError for fewer than 2 samples or non-increasing xs
  MonotoneCubic(std::vector<double> xs, std::vector<double> ys);

  /// @throws ValidationError when x is outside the sample range
  [[nodiscard]] double value(double x) const;
  [[nodiscard]] double derivative(double x) const;

private:
  [[nodiscard]] std::size_t interval(double x) const;
  std::vector<double> xs_, ys_, slopes_;
};

/// Profile interpolating a sampled (eta, T) table.
[[nodiscard]] TimeProfile table_profile(std::vector<double> etas, std::vector<double> values);

/// @throws ValidationError when dT vanishes or changes sign on [lo, hi],
/// sampled at `samples` points (perceptible time must be monotone in eta).
void validate_time_profile(const TimeProfile& profile, double lo, double hi, int samples = 129);

struct CosmologyConfig {
  TimeProfile profile;
  int branch = +1;     ///< sign of the R exponent denominator
  double eta0 = 0.0;   ///< R(eta0) = R0
  double R0 = 1.0;
};

/// @throws ValidationError for branch not in {-1,+1} or R0 <= 0
void check_config(const CosmologyConfig& cfg);

/// Components in the spherical frame (d/d eta, d/d chi, d/d theta, d/d phi).
struct FrameComponents {
  Eigen::Matrix4d metric;
  std::array<Eigen::Matrix4d, 4> structure;
  std::array<double, 4> ether;
};

/// Spherical point. theta/phi may be absent exactly when degenerate, in which
/// case `degenerate` names them ("theta", "phi").
struct SphericalCoords {
  double eta = 0.0;
  double chi = 0.0;
  std::optional<double> theta;
  std::optional<double> phi;
  std::vector<std::string> degenerate;
};

enum class Chirality { left, right };

/// Integral-curve request: direction u through viewpoint a.
struct VistaSpec {
  Quaternion u;
  Quaternion a;
  Chirality chirality = Chirality::left;
};

/// R(eta) = R0 * exp of the adaptive Simpson integral of 1/(branch*sqrt|dT|)
/// from eta0, absolute quadrature tolerance 1e-10.
/// @throws NumericError when dT vanishes or flips sign on the interval
[[nodiscard]] double scale_factor(const CosmologyConfig& cfg, double eta);

/// w = R cos chi, x = R sin chi sin theta cos phi,
/// y = R sin chi sin theta sin phi, z = R sin chi cos theta.
/// @throws ValidationError when a needed angle is absent off its degeneracy
[[nodiscard]] Quaternion canonical_from_spherical(const CosmologyConfig& cfg,
                                                  const SphericalCoords& s);

/// Inverts the scale factor for eta (monotone R), then reads the angles.
/// On-axis points come back with the degenerate angles absent and named.
/// @throws ValidationError for the zero point
[[nodiscard]] SphericalCoords spherical_from_canonical(const CosmologyConfig& cfg,
                                                       const Quaternion& p);

/// Metric, structure and ether components at (eta, chi, theta);
/// lambda = branch / sqrt|dT|.
/// @throws ValidationError on the angle singularities sin(chi) = 0, sin(theta) = 0
[[nodiscard]] FrameComponents frame_components(const CosmologyConfig& cfg, double eta, double chi,
                                               double theta);

/// Left-invariant field value at a: componentwise the quaternion product a*u.
[[nodiscard]] std::array<double, 4> left_invariant_field(const Quaternion& u,
                                                         const Quaternion& a);

/// Closed-form vista at parameter t. The degenerate direction (imaginary part
/// below 1e-8) uses the series limit of the printed formulas.
/// @throws ValidationError when the viewpoint a is zero
[[nodiscard]] Quaternion vista(const VistaSpec& spec, double t);

}  // namespace hyperq::cosmology
