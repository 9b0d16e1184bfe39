#include "hyperq/dynamics.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace hyperq::dynamics {

namespace {

double norm2(const RealPoint& p) {
  double s = 0.0;
  for (double v : p) s += v * v;
  return s;
}

bool all_finite(const RealPoint& p) {
  for (double v : p) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

// Realified linear map of the operator: column c is the image of the c-th
// coordinate basis vector. Quaternion-linear, so it doubles as the observable
// differential in the regularity gate.
Eigen::MatrixXd realified_operator(const hilbert::QuaternionMatrix& f,
                                   const algebra::CanonicalFrame& frame) {
  const int dim = 4 * static_cast<int>(f.size());
  Eigen::MatrixXd m(dim, dim);
  RealPoint basis(dim, 0.0);
  for (int c = 0; c < dim; ++c) {
    basis[c] = 1.0;
    const RealPoint col =
        hyperkahler::realify(hilbert::apply(f, hyperkahler::derealify(basis, frame)), frame);
    basis[c] = 0.0;
    for (int r = 0; r < dim; ++r) m(r, c) = col[r];
  }
  return m;
}

FieldSample observable_field(const SystemConfig& cfg, const Observable& obs, const RealPoint& p) {
  if (obs.generator) {
    return hyperkahler::hyperfield(*obs.generator, p, cfg.structure.frame());
  }
  // Main generator of the perceptible is its real constituent.
  const auto& value = obs.value;
  hyperkahler::ScalarMap f0 = [&value](const RealPoint& q) { return value(q).w; };
  const RealVector grad = hyperkahler::fd_gradient(f0, p);
  return {p, cfg.structure.metric_sharp(grad)};
}

double observable_residual(const SystemConfig& cfg, const Observable& obs, const RealPoint& p,
                           const algebra::CanonicalFrame& b) {
  const algebra::CanonicalFrame frame = cfg.structure.frame();
  if (obs.generator) {
    const Eigen::MatrixXd df = realified_operator(*obs.generator, frame);
    return hyperkahler::regularity_residual(df, b, cfg.structure, cfg.structure);
  }
  // Pointwise finite-difference Jacobian of the frame constituents of the value.
  const double step = 1e-5;
  const int cols = cfg.structure.dim();
  Eigen::MatrixXd df(4, cols);
  RealPoint probe = p;
  for (int c = 0; c < cols; ++c) {
    probe[c] = p[c] + step;
    const RealPoint hi = hyperkahler::realify({obs.value(probe)}, frame);
    probe[c] = p[c] - step;
    const RealPoint lo = hyperkahler::realify({obs.value(probe)}, frame);
    probe[c] = p[c];
    for (int r = 0; r < 4; ++r) df(r, c) = (hi[r] - lo[r]) / (2.0 * step);
  }
  const hyperkahler::HyperkahlerStructure dst = hyperkahler::build_structure(1, frame);
  return hyperkahler::regularity_residual(df, b, cfg.structure, dst);
}

}  // namespace

void check_config(const SystemConfig& cfg) {
  if (cfg.n < 1) throw ValidationError("system needs at least one quaternionic dimension");
  if (cfg.structure.n() != cfg.n) {
    throw ValidationError("system structure dimension mismatch: structure has n = " +
                          std::to_string(cfg.structure.n()) + ", config says n = " +
                          std::to_string(cfg.n));
  }
  if (!cfg.ambient_time) throw ValidationError("system needs an ambient time function");
}

Observable make_operator_observable(const hilbert::QuaternionMatrix& f,
                                    const algebra::CanonicalFrame& frame) {
  hilbert::validate_matrix(f);
  Observable obs;
  obs.value = [f, frame](const RealPoint& p) {
    return hilbert::expectation(f, hyperkahler::derealify(p, frame));
  };
  obs.generator = f;
  return obs;
}

FieldSample evolution_field(const SystemConfig& cfg, const RealPoint& p) {
  check_config(cfg);
  if (static_cast<int>(p.size()) != cfg.structure.dim()) {
    throw ValidationError("evolution_field: point has wrong dimension");
  }
  const RealVector grad = cfg.ambient_time_grad ? (*cfg.ambient_time_grad)(p)
                                                : hyperkahler::fd_gradient(cfg.ambient_time, p);
  if (grad.size() != p.size()) {
    throw NumericError("evolution_field: ambient time gradient has wrong dimension");
  }
  return {p, cfg.structure.metric_sharp(grad)};
}

std::vector<TrajectorySample> integrate(const VectorField& field, RealPoint start, double t_end,
                                        double dt) {
  if (dt <= 0.0) throw ValidationError("integrate: dt must be positive");
  if (t_end < 0.0) throw ValidationError("integrate: t_end must be nonnegative");
  const std::size_t dim = start.size();
  if (dim == 0) throw ValidationError("integrate: empty start state");

  auto eval = [&](const RealPoint& y, std::size_t step_index) {
    RealVector k = field(y);
    if (k.size() != dim) {
      throw ValidationError("integrate: field returned wrong dimension at step " +
                            std::to_string(step_index));
    }
    return k;
  };

  std::vector<TrajectorySample> traj;
  traj.push_back({0.0, start});
  RealPoint y = std::move(start);
  RealPoint scratch(dim);
  double t = 0.0;
  std::size_t step = 0;
  while (t < t_end) {
    const double remaining = t_end - t;
    const bool last = remaining <= dt * (1.0 + 1e-12);
    const double h = last ? remaining : dt;
    ++step;

    const RealVector k1 = eval(y, step);
    for (std::size_t i = 0; i < dim; ++i) scratch[i] = y[i] + 0.5 * h * k1[i];
    const RealVector k2 = eval(scratch, step);
    for (std::size_t i = 0; i < dim; ++i) scratch[i] = y[i] + 0.5 * h * k2[i];
    const RealVector k3 = eval(scratch, step);
    for (std::size_t i = 0; i < dim; ++i) scratch[i] = y[i] + h * k3[i];
    const RealVector k4 = eval(scratch, step);
    for (std::size_t i = 0; i < dim; ++i) {
      y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    if (!all_finite(y)) {
      throw NumericError("integrate: non-finite state at step " + std::to_string(step));
    }
    // Full steps land on exact multiples of dt, the final one exactly on t_end.
    t = last ? t_end : static_cast<double>(step) * dt;
    traj.push_back({t, y});
  }
  return traj;
}

std::optional<Quaternion> same_world(const RealPoint& phi, const RealPoint& psi, double tol) {
  const hilbert::QuaternionTuple a = hyperkahler::derealify(phi);
  const hilbert::QuaternionTuple b = hyperkahler::derealify(psi);
  if (a.size() != b.size()) throw ValidationError("same_world: dimension mismatch");

  auto tuple_zero = [tol](const hilbert::QuaternionTuple& v) {
    for (const Quaternion& q : v) {
      if (q.norm() > tol) return false;
    }
    return true;
  };
  const bool a_zero = tuple_zero(a), b_zero = tuple_zero(b);
  if (a_zero && b_zero) throw ValidationError("same_world: both points are zero");
  if (b_zero) return std::nullopt;

  std::size_t pivot = 0;
  while (b[pivot].norm() <= tol) ++pivot;
  const Quaternion q = a[pivot] * b[pivot].inverse();
  if (q.norm() <= tol) return std::nullopt;  // the witness must stay in the punctured group
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (max_abs_diff(a[j], q * b[j]) > 1e-9) return std::nullopt;
  }
  return q;
}

bool is_proper_state(const SystemConfig& cfg, const FieldSample& field_value) {
  check_config(cfg);
  const int dim = cfg.structure.dim();
  if (static_cast<int>(field_value.point.size()) != dim ||
      static_cast<int>(field_value.vector.size()) != dim) {
    throw ValidationError("is_proper_state: sample has wrong dimension");
  }
  if (norm2(field_value.point) == 0.0) {
    throw ValidationError("is_proper_state: the point must be nonzero");
  }
  const double vnorm = std::sqrt(norm2(field_value.vector));
  if (vnorm == 0.0) return true;

  const algebra::CanonicalFrame frame = cfg.structure.frame();
  const hilbert::QuaternionTuple psi = hyperkahler::derealify(field_value.point, frame);
  Eigen::MatrixXd vertical(dim, 4);
  for (int beta = 0; beta < 4; ++beta) {
    hilbert::QuaternionTuple shifted(psi.size());
    for (std::size_t j = 0; j < psi.size(); ++j) shifted[j] = Quaternion::unit(beta) * psi[j];
    const RealPoint col = hyperkahler::realify(shifted, frame);
    for (int r = 0; r < dim; ++r) vertical(r, beta) = col[r];
  }
  const Eigen::VectorXd v = Eigen::Map<const Eigen::VectorXd>(field_value.vector.data(), dim);
  const Eigen::VectorXd coeffs = vertical.colPivHouseholderQr().solve(v);
  const double resid = (vertical * coeffs - v).norm();
  return resid / vnorm <= 1e-8;
}

PropensityValue propensity(const SystemConfig& cfg, const RealPoint& phi, const RealPoint& psi) {
  check_config(cfg);
  if (same_world(phi, psi)) return std::numeric_limits<double>::infinity();

  // Geodesics of the flat punctured space are straight segments; one through
  // the origin has no length-minimizing replacement, so that case is an error.
  const std::size_t dim = phi.size();
  double seg2 = 0.0, dot = 0.0;
  for (std::size_t i = 0; i < dim; ++i) {
    const double d = psi[i] - phi[i];
    seg2 += d * d;
    dot += phi[i] * d;
  }
  const double t = seg2 > 0.0 ? std::clamp(-dot / seg2, 0.0, 1.0) : 0.0;
  double closest2 = 0.0;
  for (std::size_t i = 0; i < dim; ++i) {
    const double c = phi[i] + t * (psi[i] - phi[i]);
    closest2 += c * c;
  }
  if (std::sqrt(closest2) < 1e-12) throw NumericError("puncture crossing");
  return 1.0 / std::sqrt(seg2);
}

MeasurementOutcome measure(const SystemConfig& cfg, const Observation& obs,
                           const algebra::CanonicalFrame& b) {
  check_config(cfg);
  if (!obs.observable.value) throw ValidationError("measure: observable has no value map");
  if (norm2(obs.initial) == 0.0 || norm2(obs.final) == 0.0) {
    throw ValidationError("measure: observation states must be nonzero");
  }

  MeasurementOutcome out;
  out.present_time = cfg.ambient_time(obs.final);

  const bool regular = observable_residual(cfg, obs.observable, obs.final, b) < 1e-6;

  std::optional<double> rho;
  try {
    rho = propensity(cfg, obs.initial, obs.final);
  } catch (const NumericError&) {
    rho.reset();
  }

  const FieldSample f_field = observable_field(cfg, obs.observable, obs.final);
  const bool proper = is_proper_state(cfg, f_field);

  out.success = regular && rho.has_value() && proper;
  if (out.success) {
    out.propensity = rho;
    out.property = obs.observable.value(obs.final);
    out.world_witness = same_world(obs.initial, obs.final);
  }
  return out;
}

bool matches_evolution_field(const SystemConfig& cfg, const Observable& obs,
                             const std::vector<RealPoint>& points, double tol) {
  check_config(cfg);
  for (const RealPoint& p : points) {
    const RealVector ev = evolution_field(cfg, p).vector;
    const RealVector ob = observable_field(cfg, obs, p).vector;
    for (std::size_t i = 0; i < ev.size(); ++i) {
      if (std::abs(ev[i] - ob[i]) > tol) return false;
    }
  }
  return true;
}

}  // namespace hyperq::dynamics
