#include "hyperq/hyperkahler.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace hyperq::hyperkahler {

namespace {

void require_valid_frame(const algebra::CanonicalFrame& f, const char* what) {
  if (!f.is_valid()) {
    throw ValidationError(std::string(what) + ": rotation must be orthogonal with determinant +1");
  }
}

void require_realified(const RealPoint& p, const char* what) {
  if (p.empty() || p.size() % 4 != 0) {
    throw ValidationError(std::string(what) + ": length must be a positive multiple of 4, got " +
                          std::to_string(p.size()));
  }
}

// In frame coordinates every 4x4 block below is frame independent, so the
// canonical units stand in for the frame basis.
Eigen::Matrix4d left_mult_block(int p) {
  Eigen::Matrix4d m;
  const Quaternion u = Quaternion::unit(p);
  for (int beta = 0; beta < 4; ++beta) {
    const Quaternion col = u * Quaternion::unit(beta);
    for (int gamma = 0; gamma < 4; ++gamma) m(gamma, beta) = col[gamma];
  }
  return m;
}

// Constituent along basis index c of inner(e_alpha, e_beta) for one entry.
Eigen::Matrix4d inner_constituent_block(int c) {
  Eigen::Matrix4d m;
  for (int alpha = 0; alpha < 4; ++alpha)
    for (int beta = 0; beta < 4; ++beta) {
      const Quaternion q = Quaternion::unit(alpha) * Quaternion::unit(beta).conjugate();
      m(alpha, beta) = q[c];
    }
  return m;
}

Eigen::MatrixXd tile_diag(const Eigen::Matrix4d& block, int n) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(4 * n, 4 * n);
  for (int j = 0; j < n; ++j) m.block<4, 4>(4 * j, 4 * j) = block;
  return m;
}

int check_sym_index(int p) {
  if (p < 1 || p > 3) throw ValidationError("constituent index must be 1, 2 or 3");
  return p - 1;
}

}  // namespace

RealPoint realify(const hilbert::QuaternionTuple& phi, const algebra::CanonicalFrame& f) {
  require_valid_frame(f, "realify");
  RealPoint out(4 * phi.size());
  for (std::size_t j = 0; j < phi.size(); ++j) {
    const Quaternion& q = phi[j];
    out[4 * j] = q.w;
    for (int p = 0; p < 3; ++p) {
      out[4 * j + 1 + p] =
          f.rotation[p][0] * q.x + f.rotation[p][1] * q.y + f.rotation[p][2] * q.z;
    }
  }
  return out;
}

hilbert::QuaternionTuple derealify(const RealPoint& p, const algebra::CanonicalFrame& f) {
  require_valid_frame(f, "derealify");
  require_realified(p, "derealify");
  hilbert::QuaternionTuple out(p.size() / 4);
  for (std::size_t j = 0; j < out.size(); ++j) {
    const double c1 = p[4 * j + 1], c2 = p[4 * j + 2], c3 = p[4 * j + 3];
    out[j].w = p[4 * j];
    out[j].x = f.rotation[0][0] * c1 + f.rotation[1][0] * c2 + f.rotation[2][0] * c3;
    out[j].y = f.rotation[0][1] * c1 + f.rotation[1][1] * c2 + f.rotation[2][1] * c3;
    out[j].z = f.rotation[0][2] * c1 + f.rotation[1][2] * c2 + f.rotation[2][2] * c3;
  }
  return out;
}

HyperkahlerStructure::HyperkahlerStructure(int n, algebra::CanonicalFrame frame)
    : n_(n), frame_(frame) {
  if (n_ < 1) throw ValidationError("structure needs at least one quaternionic dimension");
  require_valid_frame(frame_, "build_structure");
  g_ = tile_diag(inner_constituent_block(0), n_);
  for (int p = 1; p <= 3; ++p) {
    omega_[p - 1] = tile_diag(inner_constituent_block(p), n_);
    cplx_[p - 1] = tile_diag(left_mult_block(p), n_);
  }
  g_lu_.compute(g_);
  for (int p = 0; p < 3; ++p) omega_t_lu_[p].compute(omega_[p].transpose());
}

const Eigen::MatrixXd& HyperkahlerStructure::omega(int p) const {
  return omega_[check_sym_index(p)];
}

const Eigen::MatrixXd& HyperkahlerStructure::cplx(int p) const {
  return cplx_[check_sym_index(p)];
}

RealVector HyperkahlerStructure::metric_sharp(const RealVector& covector) const {
  if (static_cast<int>(covector.size()) != dim()) {
    throw ValidationError("metric sharp: covector length must be " + std::to_string(dim()));
  }
  const Eigen::VectorXd rhs = Eigen::Map<const Eigen::VectorXd>(covector.data(), dim());
  const Eigen::VectorXd x = g_lu_.solve(rhs);
  return {x.data(), x.data() + x.size()};
}

RealVector HyperkahlerStructure::symplectic_sharp(int p, const RealVector& covector) const {
  const int idx = check_sym_index(p);
  if (static_cast<int>(covector.size()) != dim()) {
    throw ValidationError("symplectic sharp: covector length must be " + std::to_string(dim()));
  }
  // omega^p(out, u) = covector(u) for all u reads out^T Omega_p = covector^T.
  const Eigen::VectorXd rhs = Eigen::Map<const Eigen::VectorXd>(covector.data(), dim());
  const Eigen::VectorXd x = omega_t_lu_[idx].solve(rhs);
  return {x.data(), x.data() + x.size()};
}

HyperkahlerStructure build_structure(int n, const algebra::CanonicalFrame& f) {
  return {n, f};
}

double regularity_residual(const Eigen::MatrixXd& df, const algebra::CanonicalFrame& b,
                           const HyperkahlerStructure& src, const HyperkahlerStructure& dst) {
  require_valid_frame(b, "regularity_residual");
  if (df.rows() != dst.dim() || df.cols() != src.dim()) {
    throw ValidationError("regularity_residual: df must be " + std::to_string(dst.dim()) + "x" +
                          std::to_string(src.dim()) + ", got " + std::to_string(df.rows()) + "x" +
                          std::to_string(df.cols()));
  }
  Eigen::MatrixXd twisted = Eigen::MatrixXd::Zero(df.rows(), df.cols());
  for (int p = 1; p <= 3; ++p)
    for (int q = 1; q <= 3; ++q) {
      const double c = b.rotation[p - 1][q - 1];
      if (c == 0.0) continue;
      twisted.noalias() += c * (dst.cplx(q) * df * src.cplx(p));
    }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(twisted - df);
  return svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
}

RealVector fd_gradient(const ScalarMap& f, const RealPoint& p, double step) {
  if (step <= 0.0) throw ValidationError("finite-difference step must be positive");
  RealVector grad(p.size());
  RealPoint probe = p;
  for (std::size_t k = 0; k < p.size(); ++k) {
    probe[k] = p[k] + step;
    const double hi = f(probe);
    probe[k] = p[k] - step;
    const double lo = f(probe);
    probe[k] = p[k];
    grad[k] = (hi - lo) / (2.0 * step);
  }
  return grad;
}

FieldSample hyperhamiltonian_field(const GradientMap& f0_grad, const HyperkahlerStructure& s,
                                   const RealPoint& p) {
  const RealVector grad = f0_grad(p);
  return {p, s.metric_sharp(grad)};
}

std::array<FieldSample, 3> decompose_field_gradients(const std::array<GradientMap, 3>& grads,
                                                     const HyperkahlerStructure& s,
                                                     const RealPoint& p) {
  std::array<FieldSample, 3> out;
  for (int idx = 0; idx < 3; ++idx) {
    const RealVector grad = grads[idx](p);
    out[idx] = {p, s.symplectic_sharp(idx + 1, grad)};
  }
  return out;
}

std::array<FieldSample, 3> decompose_field(const std::array<ScalarMap, 3>& f_constituents,
                                           const HyperkahlerStructure& s, const RealPoint& p,
                                           double fd_step) {
  std::array<GradientMap, 3> grads;
  for (int idx = 0; idx < 3; ++idx) {
    const ScalarMap& f = f_constituents[idx];
    grads[idx] = [&f, fd_step](const RealPoint& q) { return fd_gradient(f, q, fd_step); };
  }
  return decompose_field_gradients(grads, s, p);
}

FieldSample hyperfield(const hilbert::QuaternionMatrix& f, const RealPoint& p,
                       const algebra::CanonicalFrame& frame) {
  hilbert::QuaternionTuple phi = derealify(p, frame);
  if (phi.size() != f.size()) {
    throw ValidationError("hyperfield: operator is " + std::to_string(f.size()) +
                          "-dimensional, point has " + std::to_string(phi.size()) + " entries");
  }
  hilbert::QuaternionTuple image = hilbert::apply(f, phi);
  for (Quaternion& q : image) q = -q;
  return {p, realify(image, frame)};
}

std::array<ScalarMap, 3> generating_triple(const hilbert::QuaternionMatrix& f,
                                           const HyperkahlerStructure& s) {
  hilbert::validate_matrix(f);
  if (static_cast<int>(f.size()) != s.n()) {
    throw ValidationError("generating_triple: operator dimension must match the structure");
  }
  std::array<ScalarMap, 3> out;
  const algebra::CanonicalFrame frame = s.frame();
  for (int p = 0; p < 3; ++p) {
    out[p] = [f, frame, p](const RealPoint& point) {
      const Quaternion e = hilbert::expectation(f, derealify(point, frame));
      const double constituent = frame.rotation[p][0] * e.x + frame.rotation[p][1] * e.y +
                                 frame.rotation[p][2] * e.z;
      return constituent / 6.0;
    };
  }
  return out;
}

}  // namespace hyperq::hyperkahler
