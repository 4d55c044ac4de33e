// Copyright 2026 The gramian-place Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "gplace/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "gplace/error.hpp"

namespace gplace {
namespace {

// Pade coefficients b_0..b_m for degrees 3, 5, 7, 9 and 13.
constexpr std::array<double, 4> kPade3 = {120.0, 60.0, 12.0, 1.0};
constexpr std::array<double, 6> kPade5 = {30240.0, 15120.0, 3360.0,
                                          420.0,   30.0,    1.0};
constexpr std::array<double, 8> kPade7 = {17297280.0, 8648640.0, 1995840.0,
                                          277200.0,   25200.0,   1512.0,
                                          56.0,       1.0};
constexpr std::array<double, 10> kPade9 = {
    17643225600.0, 8821612800.0, 2075673600.0, 302702400.0, 30270240.0,
    2162160.0,     110880.0,     3960.0,       90.0,        1.0};
constexpr std::array<double, 14> kPade13 = {
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
    1187353796428800.0,  129060195264000.0,   10559470521600.0,
    670442572800.0,      33522128640.0,       1323241920.0,
    40840800.0,          960960.0,            16380.0,
    182.0,               1.0};

// Largest 1-norms for which each degree meets unit roundoff.
constexpr double kTheta3 = 1.495585217958292e-2;
constexpr double kTheta5 = 2.539398330063230e-1;
constexpr double kTheta7 = 9.504178996162932e-1;
constexpr double kTheta9 = 2.097847961257068e0;
constexpr double kTheta13 = 5.371920351148152e0;

double OneNorm(const Matrix& a) {
  return a.cwiseAbs().colwise().sum().maxCoeff();
}

template <std::size_t N>
Matrix PadeLowDegree(const Matrix& a, const std::array<double, N>& b) {
  const auto n = a.rows();
  const Matrix ident = Matrix::Identity(n, n);
  const Matrix a2 = a * a;
  Matrix odd = b[1] * ident;
  Matrix even = b[0] * ident;
  Matrix power = ident;
  for (std::size_t k = 2; k < N; k += 2) {
    power = power * a2;
    even += b[k] * power;
    odd += b[k + 1] * power;
  }
  const Matrix u = a * odd;
  return (even - u).partialPivLu().solve(even + u);
}

Matrix Pade13(const Matrix& a) {
  const auto& b = kPade13;
  const auto n = a.rows();
  const Matrix ident = Matrix::Identity(n, n);
  const Matrix a2 = a * a;
  const Matrix a4 = a2 * a2;
  const Matrix a6 = a4 * a2;
  const Matrix u =
      a * (a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 +
           b[5] * a4 + b[3] * a2 + b[1] * ident);
  const Matrix v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 +
                   b[4] * a4 + b[2] * a2 + b[0] * ident;
  return (v - u).partialPivLu().solve(v + u);
}

}  // namespace

Matrix MakeMatrix(std::size_t rows, std::size_t cols,
                  std::span<const double> row_major) {
  if (row_major.size() != rows * cols) {
    throw Error(ErrorCode::kDimension,
                "expected " + std::to_string(rows * cols) + " entries, got " +
                    std::to_string(row_major.size()));
  }
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      const double x = row_major[i * cols + j];
      if (!std::isfinite(x)) {
        throw Error(ErrorCode::kNonFinite,
                    "entry (" + std::to_string(i) + ", " + std::to_string(j) +
                        ") is not finite");
      }
      m(i, j) = x;
    }
  }
  return m;
}

bool AllFinite(const Matrix& m) { return m.allFinite(); }

void RequireSquare(const Matrix& m, const char* what) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::kDimension,
                std::string(what) + " must be square, got " +
                    std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

Matrix MatrixExp(const Matrix& a) {
  RequireSquare(a, "matrix_exp input");
  if (!a.allFinite()) throw Error(ErrorCode::kNonFinite, "matrix_exp input");
  if (a.rows() == 0) return a;

  const double norm = OneNorm(a);
  if (norm <= kTheta3) return PadeLowDegree(a, kPade3);
  if (norm <= kTheta5) return PadeLowDegree(a, kPade5);
  if (norm <= kTheta7) return PadeLowDegree(a, kPade7);
  if (norm <= kTheta9) return PadeLowDegree(a, kPade9);

  const int squarings =
      std::max(0, static_cast<int>(std::ceil(std::log2(norm / kTheta13))));
  Matrix result = Pade13(a / std::ldexp(1.0, squarings));
  for (int s = 0; s < squarings; ++s) result = result * result;
  return result;
}

double SpectralAbscissa(const Matrix& a) {
  RequireSquare(a, "spectral abscissa input");
  if (a.rows() == 0) return 0.0;
  Eigen::EigenSolver<Matrix> solver(a, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::kNumericalConditioning,
                "eigenvalue iteration did not converge");
  }
  return solver.eigenvalues().real().maxCoeff();
}

bool IsHurwitz(const Matrix& a, const NumericTolerances& tol) {
  return SpectralAbscissa(a) < -tol.hurwitz_margin;
}

LyapunovSolver::LyapunovSolver(const Matrix& a, const NumericTolerances& tol) {
  RequireSquare(a, "Lyapunov state matrix");
  Eigen::ComplexSchur<Eigen::MatrixXcd> schur(a.cast<std::complex<double>>());
  if (schur.info() != Eigen::Success) {
    throw Error(ErrorCode::kNumericalConditioning,
                "Schur iteration did not converge");
  }
  u_ = schur.matrixU();
  t_ = schur.matrixT();
  const double abscissa =
      a.rows() == 0 ? 0.0 : t_.diagonal().real().maxCoeff();
  if (a.rows() > 0 && abscissa >= -tol.hurwitz_margin) {
    throw Error(ErrorCode::kStability,
                "state matrix is not Hurwitz (max Re(lambda) = " +
                    FormatValue(abscissa) + ")",
                abscissa);
  }
}

Matrix LyapunovSolver::Solve(const Matrix& q) const {
  const auto n = t_.rows();
  if (q.rows() != n || q.cols() != n) {
    throw Error(ErrorCode::kDimension, "Lyapunov right-hand side size");
  }
  // With A = U T U^*, Y = U^* G U satisfies T Y + Y T^* = -U^* Q U. Columns
  // of Y are recovered from the last to the first, each by a triangular
  // solve against T + conj(t_jj) I.
  const Eigen::MatrixXcd c = -(u_.adjoint() * q.cast<std::complex<double>>() * u_);
  Eigen::MatrixXcd y(n, n);
  for (Eigen::Index j = n - 1; j >= 0; --j) {
    Eigen::VectorXcd rhs = c.col(j);
    for (Eigen::Index k = j + 1; k < n; ++k) {
      rhs -= std::conj(t_(j, k)) * y.col(k);
    }
    Eigen::MatrixXcd shifted = t_;
    shifted.diagonal().array() += std::conj(t_(j, j));
    y.col(j) = shifted.triangularView<Eigen::Upper>().solve(rhs);
  }
  const Matrix g = (u_ * y * u_.adjoint()).real();
  return 0.5 * (g + g.transpose());
}

Matrix SolveLyapunov(const Matrix& a, const Matrix& q,
                     const NumericTolerances& tol) {
  return LyapunovSolver(a, tol).Solve(q);
}

SymEig SymmetricEigen(const Matrix& m, const NumericTolerances& tol) {
  RequireSquare(m, "symmetric eigensolver input");
  const double scale = 1.0 + (m.size() ? m.cwiseAbs().maxCoeff() : 0.0);
  const double asym =
      m.size() ? (m - m.transpose()).cwiseAbs().maxCoeff() : 0.0;
  if (asym > tol.symmetry * scale) {
    throw Error(ErrorCode::kPrecondition,
                "matrix is not symmetric (max asymmetry " +
                    FormatValue(asym) + ")");
  }
  const Matrix sym = 0.5 * (m + m.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::kNumericalConditioning,
                "symmetric eigensolver did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

double MinEigenvalue(const Matrix& m) {
  RequireSquare(m, "symmetric eigensolver input");
  if (m.rows() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (m + m.transpose()),
                                               Eigen::EigenvaluesOnly);
  return solver.eigenvalues()(0);
}

Matrix NullBasis(const Vector& v, const NumericTolerances& tol) {
  const auto n = v.size();
  if (n == 0 || !v.allFinite()) {
    throw Error(ErrorCode::kNormalization, "direction vector is empty");
  }
  const double norm = v.norm();
  if (std::abs(norm - 1.0) > tol.unit_norm) {
    throw Error(ErrorCode::kNormalization,
                "direction vector is not unit length (norm " +
                    std::to_string(norm) + ")",
                norm);
  }
  // Reflector H = I - 2 w w^T / (w^T w) with w = v + sign(v_0) e_0 maps v to
  // -sign(v_0) e_0, so H e_0 is parallel to v and the remaining columns span
  // its complement.
  const double sign = v(0) >= 0.0 ? 1.0 : -1.0;
  Vector w = v;
  w(0) += sign;
  const double wnorm2 = w.squaredNorm();
  Matrix h = Matrix::Identity(n, n) - (2.0 / wnorm2) * (w * w.transpose());
  return h.rightCols(n - 1);
}

}  // namespace gplace
