#pragma once

#include <string>

#include "roc/linalg.hpp"
#include "roc/matrix_json.hpp"

namespace roc::test {

inline json fixture(const std::string& name) { return read_json_file(std::string(ROC_FIXTURE_DIR) + "/" + name); }

/// (1 + p) 1/d - p |psi+><psi+|, a state for p <= 1/(d-1).
inline DensityMatrix rho_p(int d, double p) {
  const DensityMatrix plus(maximally_coherent(d));
  return DensityMatrix(HermitianMatrix::identity(d) * ((1.0 + p) / d) - plus.hermitian() * p);
}

inline ComplexMatrix pauli_x() {
  ComplexMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

inline ComplexMatrix pauli_y() {
  ComplexMatrix m(2, 2);
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}

inline ComplexMatrix pauli_z() {
  ComplexMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

inline ComplexMatrix random_hermitian(int d, std::uint64_t seed) {
  const ComplexMatrix g = random_gaussian(d, d, seed);
  return 0.5 * (g + g.adjoint());
}

}  // namespace roc::test
