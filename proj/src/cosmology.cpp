#include "hyperq/cosmology.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <utility>

namespace hyperq::cosmology {

namespace {

// Integrand of the R exponent; the derivative must stay away from zero and
// keep the sign it had at the start of the interval.
struct Integrand {
  const TimeProfile& profile;
  int branch;
  mutable int seen_sign = 0;

  double operator()(double eta) const {
    const double d = profile.dT(eta);
    if (!std::isfinite(d) || d == 0.0) {
      throw NumericError("time profile derivative vanishes at eta = " + std::to_string(eta));
    }
    const int sign = d > 0.0 ? 1 : -1;
    if (seen_sign == 0) seen_sign = sign;
    if (sign != seen_sign) {
      throw NumericError("time profile derivative changes sign at eta = " + std::to_string(eta));
    }
    return 1.0 / (static_cast<double>(branch) * std::sqrt(std::abs(d)));
  }
};

double simpson(double fa, double fm, double fb, double a, double b) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

template <typename F>
double adaptive_simpson(const F& f, double a, double m, double b, double fa, double fm, double fb,
                        double whole, double tol, int depth) {
  if (depth > 60) throw NumericError("quadrature failed to converge");
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = simpson(fa, flm, fm, a, m);
  const double right = simpson(fm, frm, fb, m, b);
  const double delta = left + right - whole;
  if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return adaptive_simpson(f, a, lm, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
         adaptive_simpson(f, m, rm, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
}

template <typename F>
double integrate_simpson(const F& f, double a, double b, double tol) {
  if (a == b) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  return adaptive_simpson(f, a, m, b, fa, fm, fb, simpson(fa, fm, fb, a, b), tol, 0);
}

int sign_of(double v) { return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0); }

}  // namespace

TimeProfile linear_profile() {
  return {[](double eta) { return eta; }, [](double) { return 1.0; }};
}

MonotoneCubic::MonotoneCubic(std::vector<double> xs, std::vector<double> ys)
    : xs_(std::move(xs)), ys_(std::move(ys)) {
  const std::size_t n = xs_.size();
  if (n < 2 || ys_.size() != n) {
    throw ValidationError("interpolation needs at least two samples with matching lengths");
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (!(xs_[i] < xs_[i + 1])) {
      throw ValidationError("interpolation abscissae must be strictly increasing");
    }
  }

  std::vector<double> h(n - 1), delta(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    h[i] = xs_[i + 1] - xs_[i];
    delta[i] = (ys_[i + 1] - ys_[i]) / h[i];
  }

  slopes_.assign(n, 0.0);
  if (n == 2) {
    slopes_[0] = slopes_[1] = delta[0];
    return;
  }
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (delta[i - 1] == 0.0 || delta[i] == 0.0 || sign_of(delta[i - 1]) != sign_of(delta[i])) {
      slopes_[i] = 0.0;
    } else {
      // Weighted harmonic mean of the neighboring secants.
      const double w1 = 2.0 * h[i] + h[i - 1];
      const double w2 = h[i] + 2.0 * h[i - 1];
      slopes_[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
    }
  }
  auto endpoint = [](double h0, double h1, double d0, double d1) {
    double m = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if (sign_of(m) != sign_of(d0)) return 0.0;
    if (sign_of(d0) != sign_of(d1) && std::abs(m) > 3.0 * std::abs(d0)) return 3.0 * d0;
    return m;
  };
  slopes_[0] = endpoint(h[0], h[1], delta[0], delta[1]);
  slopes_[n - 1] = endpoint(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
}

std::size_t MonotoneCubic::interval(double x) const {
  const double slack = 1e-12 * std::max(1.0, std::abs(xs_.front()) + std::abs(xs_.back()));
  if (x < xs_.front() - slack || x > xs_.back() + slack) {
    throw ValidationError("argument " + std::to_string(x) + " is outside the tabulated range [" +
                          std::to_string(xs_.front()) + ", " + std::to_string(xs_.back()) + "]");
  }
  const auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
  std::size_t i = it == xs_.begin() ? 0 : static_cast<std::size_t>(it - xs_.begin()) - 1;
  return std::min(i, xs_.size() - 2);
}

double MonotoneCubic::value(double x) const {
  const std::size_t i = interval(x);
  const double h = xs_[i + 1] - xs_[i];
  const double s = (x - xs_[i]) / h;
  const double h00 = (1.0 + 2.0 * s) * (1.0 - s) * (1.0 - s);
  const double h10 = s * (1.0 - s) * (1.0 - s);
  const double h01 = s * s * (3.0 - 2.0 * s);
  const double h11 = s * s * (s - 1.0);
  return h00 * ys_[i] + h10 * h * slopes_[i] + h01 * ys_[i + 1] + h11 * h * slopes_[i + 1];
}

double MonotoneCubic::derivative(double x) const {
  const std::size_t i = interval(x);
  const double h = xs_[i + 1] - xs_[i];
  const double s = (x - xs_[i]) / h;
  const double d00 = 6.0 * s * (s - 1.0) / h;
  const double d10 = (1.0 - s) * (1.0 - 3.0 * s);
  const double d01 = -d00;
  const double d11 = s * (3.0 * s - 2.0);
  return d00 * ys_[i] + d10 * slopes_[i] + d01 * ys_[i + 1] + d11 * slopes_[i + 1];
}

TimeProfile table_profile(std::vector<double> etas, std::vector<double> values) {
  auto spline = std::make_shared<MonotoneCubic>(std::move(etas), std::move(values));
  TimeProfile p;
  p.T = [spline](double eta) { return spline->value(eta); };
  p.dT = [spline](double eta) { return spline->derivative(eta); };
  return p;
}

void validate_time_profile(const TimeProfile& profile, double lo, double hi, int samples) {
  if (!profile.T || !profile.dT) throw ValidationError("time profile callables must be set");
  if (samples < 2) throw ValidationError("profile validation needs at least 2 samples");
  if (hi < lo) std::swap(lo, hi);
  int seen = 0;
  for (int k = 0; k < samples; ++k) {
    const double eta = lo + (hi - lo) * k / (samples - 1);
    const double d = profile.dT(eta);
    if (!std::isfinite(d) || d == 0.0) {
      throw ValidationError("perceptible time is not monotone: derivative vanishes at eta = " +
                            std::to_string(eta));
    }
    const int sign = d > 0.0 ? 1 : -1;
    if (seen == 0) seen = sign;
    if (sign != seen) {
      throw ValidationError("perceptible time is not monotone: derivative changes sign at eta = " +
                            std::to_string(eta));
    }
  }
}

void check_config(const CosmologyConfig& cfg) {
  if (cfg.branch != 1 && cfg.branch != -1) throw ValidationError("branch must be +1 or -1");
  if (!(cfg.R0 > 0.0)) throw ValidationError("R0 must be positive");
  if (!cfg.profile.T || !cfg.profile.dT) throw ValidationError("time profile callables must be set");
}

double scale_factor(const CosmologyConfig& cfg, double eta) {
  check_config(cfg);
  const Integrand f{cfg.profile, cfg.branch};
  const double lo = std::min(cfg.eta0, eta), hi = std::max(cfg.eta0, eta);
  double integral = integrate_simpson(f, lo, hi, 1e-10);
  if (eta < cfg.eta0) integral = -integral;
  return cfg.R0 * std::exp(integral);
}

Quaternion canonical_from_spherical(const CosmologyConfig& cfg, const SphericalCoords& s) {
  const double r = scale_factor(cfg, s.eta);
  const double sin_chi = std::sin(s.chi), cos_chi = std::cos(s.chi);
  double theta = 0.0, phi = 0.0;
  if (s.theta) {
    theta = *s.theta;
  } else if (sin_chi != 0.0) {
    throw ValidationError("theta required away from the polar axis sin(chi) = 0");
  }
  const double sin_theta = std::sin(theta), cos_theta = std::cos(theta);
  if (s.phi) {
    phi = *s.phi;
  } else if (sin_chi * sin_theta != 0.0) {
    throw ValidationError("phi required away from the axis sin(chi) sin(theta) = 0");
  }
  return {r * cos_chi, r * sin_chi * sin_theta * std::cos(phi),
          r * sin_chi * sin_theta * std::sin(phi), r * sin_chi * cos_theta};
}

SphericalCoords spherical_from_canonical(const CosmologyConfig& cfg, const Quaternion& p) {
  check_config(cfg);
  const double r = p.norm();
  if (r == 0.0) throw ValidationError("the zero point has no spherical coordinates");

  // R is strictly monotone (log R' = branch / sqrt|dT| keeps one sign), so the
  // radius is inverted by bracketing from eta0 and bisecting.
  const bool increasing = cfg.branch > 0;
  double lo = cfg.eta0, hi = cfg.eta0;
  double step = 1.0;
  const bool go_up = (r > cfg.R0) == increasing;
  int expansions = 0;
  auto reaches = [&](double eta) {
    const double value = scale_factor(cfg, eta);
    return go_up == increasing ? value >= r : value <= r;
  };
  double probe = cfg.eta0;
  while (true) {
    if (++expansions > 64) throw NumericError("scale factor never reaches the point's radius");
    probe = go_up ? probe + step : probe - step;
    step *= 2.0;
    if (reaches(probe)) break;
  }
  lo = std::min(cfg.eta0, probe);
  hi = std::max(cfg.eta0, probe);
  for (int it = 0; it < 200 && hi - lo > 1e-14 * std::max(1.0, std::abs(lo) + std::abs(hi));
       ++it) {
    const double mid = 0.5 * (lo + hi);
    const bool above = scale_factor(cfg, mid) >= r;
    if (above == increasing) {
      hi = mid;
    } else {
      lo = mid;
    }
  }

  SphericalCoords out;
  out.eta = 0.5 * (lo + hi);
  const double spatial = std::sqrt(p.x * p.x + p.y * p.y + p.z * p.z);
  out.chi = std::atan2(spatial, p.w);
  if (p.x == 0.0 && p.y == 0.0 && p.z == 0.0) {
    out.degenerate = {"theta", "phi"};
    return out;
  }
  const double planar = std::sqrt(p.x * p.x + p.y * p.y);
  out.theta = std::atan2(planar, p.z);
  if (p.x == 0.0 && p.y == 0.0) {
    out.degenerate = {"phi"};
    return out;
  }
  out.phi = std::atan2(p.y, p.x);
  return out;
}

FrameComponents frame_components(const CosmologyConfig& cfg, double eta, double chi,
                                 double theta) {
  check_config(cfg);
  const double sin_chi = std::sin(chi), sin_theta = std::sin(theta);
  if (sin_chi == 0.0) throw ValidationError("angle singularity: sin(chi) = 0");
  if (sin_theta == 0.0) throw ValidationError("angle singularity: sin(theta) = 0");
  const double d = cfg.profile.dT(eta);
  if (!std::isfinite(d) || d == 0.0) {
    throw NumericError("time profile derivative vanishes at eta = " + std::to_string(eta));
  }
  const double a2 = std::abs(d);
  const double lambda = static_cast<double>(cfg.branch) / std::sqrt(a2);
  const double s2 = sin_chi * sin_chi;

  FrameComponents out;
  out.metric = Eigen::Matrix4d::Zero();
  out.metric.diagonal() << 1.0, -a2, -a2 * s2, -a2 * s2 * sin_theta * sin_theta;

  Eigen::Matrix4d h0 = Eigen::Matrix4d::Zero();
  h0.diagonal() << lambda, -1.0 / lambda, -s2 / lambda, -s2 * sin_theta * sin_theta / lambda;

  Eigen::Matrix4d h1 = Eigen::Matrix4d::Zero();
  h1(0, 1) = lambda;
  h1(1, 0) = lambda;
  h1(2, 3) = s2 * sin_theta;
  h1(3, 2) = -s2 * sin_theta;

  Eigen::Matrix4d h2 = Eigen::Matrix4d::Zero();
  h2(0, 2) = lambda;
  h2(2, 0) = lambda;
  h2(1, 3) = -sin_theta;
  h2(3, 1) = sin_theta;

  Eigen::Matrix4d h3 = Eigen::Matrix4d::Zero();
  h3(0, 3) = lambda;
  h3(3, 0) = lambda;
  h3(1, 2) = 1.0 / sin_theta;
  h3(2, 1) = -1.0 / sin_theta;

  out.structure = {h0, h1, h2, h3};
  out.ether = {d, 0.0, 0.0, 0.0};
  return out;
}

std::array<double, 4> left_invariant_field(const Quaternion& u, const Quaternion& a) {
  const double w = a.w, x = a.x, y = a.y, z = a.z;
  return {w * u.w - x * u.x - y * u.y - z * u.z, w * u.x + x * u.w + y * u.z - z * u.y,
          w * u.y - x * u.z + y * u.w + z * u.x, w * u.z + x * u.y - y * u.x + z * u.w};
}

Quaternion vista(const VistaSpec& spec, double t) {
  if (spec.a.is_zero()) throw ValidationError("vista viewpoint must be nonzero");
  const Quaternion& u = spec.u;
  const Quaternion& a = spec.a;
  const double omega = std::sqrt(u.x * u.x + u.y * u.y + u.z * u.z);
  // sin(omega t)/omega and cos(omega t), with the omega -> 0 series limit.
  const double s = omega < 1e-8 ? t : std::sin(omega * t) / omega;
  const double c = omega < 1e-8 ? 1.0 : std::cos(omega * t);
  const double e = std::exp(u.w * t);
  // Left flow is a * exp(u t); the right flow transposes the factors, which
  // flips the sign of the cross terms below.
  const double cross = spec.chirality == Chirality::left ? 1.0 : -1.0;
  return {e * ((-u.x * a.x - u.y * a.y - u.z * a.z) * s + a.w * c),
          e * ((u.x * a.w + cross * (u.z * a.y - u.y * a.z)) * s + a.x * c),
          e * ((u.y * a.w + cross * (u.x * a.z - u.z * a.x)) * s + a.y * c),
          e * ((u.z * a.w + cross * (u.y * a.x - u.x * a.y)) * s + a.z * c)};
}

}  // namespace hyperq::cosmology
