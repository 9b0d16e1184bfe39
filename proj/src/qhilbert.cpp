#include "hyperq/qhilbert.hpp"

#include <cmath>

namespace hyperq::hilbert {

void validate_matrix(const QuaternionMatrix& m) {
  if (m.empty()) throw ValidationError("operator matrix must be nonempty");
  const std::size_t n = m.size();
  for (const auto& row : m) {
    if (row.size() != n) throw ValidationError("operator matrix must be square");
  }
}

Quaternion inner(const QuaternionTuple& phi, const QuaternionTuple& psi) {
  if (phi.empty() || psi.empty()) throw ValidationError("inner product needs nonempty tuples");
  if (phi.size() != psi.size()) {
    throw ValidationError("inner product length mismatch: " + std::to_string(phi.size()) +
                          " vs " + std::to_string(psi.size()));
  }
  Quaternion acc{0, 0, 0, 0};
  for (std::size_t j = 0; j < phi.size(); ++j) acc = acc + phi[j] * psi[j].conjugate();
  return acc;
}

QuaternionTuple apply(const QuaternionMatrix& f, const QuaternionTuple& phi) {
  validate_matrix(f);
  if (phi.size() != f.size()) {
    throw ValidationError("operator/vector dimension mismatch: " + std::to_string(f.size()) +
                          " vs " + std::to_string(phi.size()));
  }
  const std::size_t n = phi.size();
  QuaternionTuple out(n, Quaternion{0, 0, 0, 0});
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = 0; j < n; ++j) out[j] = out[j] + phi[k] * f[k][j];
  return out;
}

QuaternionMatrix adjoint(const QuaternionMatrix& m) {
  validate_matrix(m);
  const std::size_t n = m.size();
  QuaternionMatrix out(n, std::vector<Quaternion>(n));
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = 0; j < n; ++j) out[j][k] = m[k][j].conjugate();
  return out;
}

Quaternion expectation(const QuaternionMatrix& f, const QuaternionTuple& phi) {
  return inner(phi, apply(f, phi));
}

bool is_antihermitian(const QuaternionMatrix& m, double tol) {
  validate_matrix(m);
  const QuaternionMatrix adj = adjoint(m);
  for (std::size_t k = 0; k < m.size(); ++k)
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (max_abs_diff(adj[k][j], -m[k][j]) > tol) return false;
    }
  return true;
}

}  // namespace hyperq::hilbert
