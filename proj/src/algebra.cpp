#include "hyperq/algebra.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <random>

namespace hyperq::algebra {

namespace {

void require_dim(const AlgebraElement& a, int dim, const char* what) {
  if (static_cast<int>(a.size()) != dim) {
    throw ValidationError(std::string(what) + ": expected dimension " + std::to_string(dim) +
                          ", got " + std::to_string(a.size()));
  }
}

// Matrix of left multiplication by a: (L_a)[gamma][beta] = sum_alpha H[gamma][alpha][beta] a^alpha.
Eigen::MatrixXd left_mult_matrix(const AlgebraElement& a, const StructureTensor& t) {
  const int d = t.dim();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(d, d);
  for (int gamma = 0; gamma < d; ++gamma)
    for (int beta = 0; beta < d; ++beta) {
      double s = 0.0;
      for (int alpha = 0; alpha < d; ++alpha) s += t.at(gamma, alpha, beta) * a[alpha];
      m(gamma, beta) = s;
    }
  return m;
}

// Matrix of right multiplication by a: (R_a)[gamma][alpha] = sum_beta H[gamma][alpha][beta] a^beta.
Eigen::MatrixXd right_mult_matrix(const AlgebraElement& a, const StructureTensor& t) {
  const int d = t.dim();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(d, d);
  for (int gamma = 0; gamma < d; ++gamma)
    for (int alpha = 0; alpha < d; ++alpha) {
      double s = 0.0;
      for (int beta = 0; beta < d; ++beta) s += t.at(gamma, alpha, beta) * a[beta];
      m(gamma, alpha) = s;
    }
  return m;
}

double max_abs(const AlgebraElement& a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace

StructureTensor::StructureTensor(int dim, std::vector<double> components)
    : dim_(dim), components_(std::move(components)) {
  if (dim_ < 1) throw ValidationError("structure tensor dimension must be positive");
  const std::size_t want = static_cast<std::size_t>(dim_) * dim_ * dim_;
  if (components_.size() != want) {
    throw ValidationError("structure tensor needs dim^3 = " + std::to_string(want) +
                          " components, got " + std::to_string(components_.size()));
  }
  for (double v : components_) {
    if (!std::isfinite(v)) throw ValidationError("structure tensor has a non-finite component");
  }
}

StructureTensor StructureTensor::quaternion() {
  // Rows alpha, columns beta of each 4x4 constituent; i*j = k orientation.
  static const double h[4][4][4] = {
      {{1, 0, 0, 0}, {0, -1, 0, 0}, {0, 0, -1, 0}, {0, 0, 0, -1}},
      {{0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, -1, 0}},
      {{0, 0, 1, 0}, {0, 0, 0, -1}, {1, 0, 0, 0}, {0, 1, 0, 0}},
      {{0, 0, 0, 1}, {0, 0, 1, 0}, {0, -1, 0, 0}, {1, 0, 0, 0}},
  };
  std::vector<double> c(64);
  for (int g = 0; g < 4; ++g)
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) c[(static_cast<std::size_t>(g) * 4 + a) * 4 + b] = h[g][a][b];
  return {4, std::move(c)};
}

AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b,
                        const StructureTensor& t) {
  const int d = t.dim();
  require_dim(a, d, "multiply, left factor");
  require_dim(b, d, "multiply, right factor");
  AlgebraElement out(d, 0.0);
  for (int gamma = 0; gamma < d; ++gamma) {
    double s = 0.0;
    for (int alpha = 0; alpha < d; ++alpha) {
      if (a[alpha] == 0.0) continue;
      for (int beta = 0; beta < d; ++beta) s += t.at(gamma, alpha, beta) * a[alpha] * b[beta];
    }
    out[gamma] = s;
  }
  return out;
}

ConjugateNormInverse conjugate_norm_inverse(const AlgebraElement& a) {
  require_dim(a, 4, "conjugate_norm_inverse");
  ConjugateNormInverse r;
  r.conjugate = {a[0], -a[1], -a[2], -a[3]};
  const double n2 = a[0] * a[0] + a[1] * a[1] + a[2] * a[2] + a[3] * a[3];
  r.norm = std::sqrt(n2);
  if (n2 > 0.0) {
    r.inverse = AlgebraElement{a[0] / n2, -a[1] / n2, -a[2] / n2, -a[3] / n2};
  }
  return r;
}

bool CanonicalFrame::is_valid(double tol) const {
  const auto& b = rotation;
  for (int p = 0; p < 3; ++p)
    for (int q = 0; q < 3; ++q) {
      double dot = 0.0;
      for (int k = 0; k < 3; ++k) dot += b[p][k] * b[q][k];
      if (std::abs(dot - (p == q ? 1.0 : 0.0)) > tol) return false;
    }
  const double det = b[0][0] * (b[1][1] * b[2][2] - b[1][2] * b[2][1]) -
                     b[0][1] * (b[1][0] * b[2][2] - b[1][2] * b[2][0]) +
                     b[0][2] * (b[1][0] * b[2][1] - b[1][1] * b[2][0]);
  return std::abs(det - 1.0) <= tol;
}

std::array<AlgebraElement, 4> frame_basis(const CanonicalFrame& f) {
  if (!f.is_valid()) {
    throw ValidationError("frame rotation must be orthogonal with determinant +1");
  }
  std::array<AlgebraElement, 4> basis;
  basis[0] = {1.0, 0.0, 0.0, 0.0};
  for (int p = 0; p < 3; ++p) {
    basis[p + 1] = {0.0, f.rotation[p][0], f.rotation[p][1], f.rotation[p][2]};
  }
  return basis;
}

bool is_canonical(const std::array<AlgebraElement, 4>& basis, const StructureTensor& t,
                  double tol) {
  if (t.dim() != 4) throw ValidationError("is_canonical requires a dimension-4 tensor");
  for (const auto& b : basis) require_dim(b, 4, "is_canonical basis element");

  // Re-expand products in the candidate basis: coefficients solve P c = product,
  // where the columns of P are the basis vectors.
  Eigen::Matrix4d p;
  for (int col = 0; col < 4; ++col)
    for (int row = 0; row < 4; ++row) p(row, col) = basis[col][row];
  Eigen::FullPivLU<Eigen::Matrix4d> lu(p);
  if (!lu.isInvertible()) return false;

  const StructureTensor canon = StructureTensor::quaternion();
  for (int alpha = 0; alpha < 4; ++alpha)
    for (int beta = 0; beta < 4; ++beta) {
      const AlgebraElement prod = multiply(basis[alpha], basis[beta], t);
      Eigen::Vector4d rhs(prod[0], prod[1], prod[2], prod[3]);
      Eigen::Vector4d c = lu.solve(rhs);
      for (int gamma = 0; gamma < 4; ++gamma) {
        if (std::abs(c(gamma) - canon.at(gamma, alpha, beta)) > tol) return false;
      }
    }
  return true;
}

ClassificationReport classify(const StructureTensor& t, int trials, std::uint64_t seed) {
  if (trials < 0) throw ValidationError("classify trial budget must be nonnegative");
  const int d = t.dim();
  ClassificationReport rep;
  rep.seed = seed;

  std::vector<AlgebraElement> basis(d, AlgebraElement(d, 0.0));
  for (int k = 0; k < d; ++k) basis[k][k] = 1.0;

  // Left identity is a linear system: sum_alpha H[gamma][alpha][beta] e^alpha = delta[gamma][beta].
  Eigen::MatrixXd m(d * d, d);
  Eigen::VectorXd rhs(d * d);
  for (int gamma = 0; gamma < d; ++gamma)
    for (int beta = 0; beta < d; ++beta) {
      const int row = gamma * d + beta;
      rhs(row) = (gamma == beta) ? 1.0 : 0.0;
      for (int alpha = 0; alpha < d; ++alpha) m(row, alpha) = t.at(gamma, alpha, beta);
    }
  Eigen::VectorXd e = m.colPivHouseholderQr().solve(rhs);
  const double left_resid = (m * e - rhs).lpNorm<Eigen::Infinity>();
  if (left_resid < 1e-9) {
    AlgebraElement cand(d);
    for (int k = 0; k < d; ++k) cand[k] = e(k);
    // A left identity qualifies only if it is also a right identity.
    double right_resid = 0.0;
    for (int k = 0; k < d; ++k) {
      const AlgebraElement prod = multiply(basis[k], cand, t);
      for (int g = 0; g < d; ++g) {
        right_resid = std::max(right_resid, std::abs(prod[g] - basis[k][g]));
      }
    }
    if (right_resid < 1e-9) {
      rep.unital = true;
      rep.identity = std::move(cand);
    }
  }

  // Associativity on basis triples decides it for the whole algebra by bilinearity.
  rep.associative = true;
  for (int i = 0; i < d && rep.associative; ++i)
    for (int j = 0; j < d && rep.associative; ++j)
      for (int k = 0; k < d && rep.associative; ++k) {
        const AlgebraElement lhs = multiply(multiply(basis[i], basis[j], t), basis[k], t);
        const AlgebraElement rhsv = multiply(basis[i], multiply(basis[j], basis[k], t), t);
        for (int g = 0; g < d; ++g) {
          if (std::abs(lhs[g] - rhsv[g]) > 1e-9) {
            rep.associative = false;
            break;
          }
        }
      }

  // Zero-divisor search. Exact phase: all +-1 sign patterns on one or two basis
  // slots for each factor. Probabilistic phase: random elements whose left or
  // right multiplication operator is numerically singular yield a null vector,
  // which is then verified exactly through multiply().
  auto record_witness = [&](const AlgebraElement& a, const AlgebraElement& b) -> bool {
    if (max_abs(a) < 1e-12 || max_abs(b) < 1e-12) return false;
    const AlgebraElement prod = multiply(a, b, t);
    if (max_abs(prod) > 1e-9 * std::max(1.0, max_abs(a) * max_abs(b))) return false;
    rep.zero_divisor_witness = std::make_pair(a, b);
    return true;
  };

  std::vector<AlgebraElement> probes;
  for (int i = 0; i < d; ++i)
    for (int si = 0; si < 2; ++si) {
      AlgebraElement a(d, 0.0);
      a[i] = si ? -1.0 : 1.0;
      probes.push_back(a);
      for (int j = i + 1; j < d; ++j)
        for (int sj = 0; sj < 2; ++sj) {
          AlgebraElement b = a;
          b[j] = sj ? -1.0 : 1.0;
          probes.push_back(b);
        }
    }
  bool found = false;
  for (std::size_t i = 0; i < probes.size() && !found; ++i)
    for (std::size_t j = 0; j < probes.size() && !found; ++j) {
      found = record_witness(probes[i], probes[j]);
    }

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  int used = 0;
  for (; used < trials && !found; ++used) {
    AlgebraElement a(d);
    for (int k = 0; k < d; ++k) a[k] = gauss(rng);
    for (const bool left : {true, false}) {
      const Eigen::MatrixXd op = left ? left_mult_matrix(a, t) : right_mult_matrix(a, t);
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(op, Eigen::ComputeFullV);
      const double smin = svd.singularValues()(d - 1);
      const double smax = svd.singularValues()(0);
      if (smin > 1e-10 * std::max(1.0, smax)) continue;
      const Eigen::VectorXd nullvec = svd.matrixV().col(d - 1);
      AlgebraElement b(d);
      for (int k = 0; k < d; ++k) b[k] = nullvec(k);
      found = left ? record_witness(a, b) : record_witness(b, a);
      if (found) break;
    }
  }
  rep.trials = used;
  rep.division_candidate = rep.unital && rep.associative && !rep.zero_divisor_witness;
  return rep;
}

AlgebraElement to_element(const Quaternion& q) { return {q.w, q.x, q.y, q.z}; }

Quaternion to_quaternion(const AlgebraElement& a) {
  require_dim(a, 4, "to_quaternion");
  return {a[0], a[1], a[2], a[3]};
}

}  // namespace hyperq::algebra
