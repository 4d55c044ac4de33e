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

#ifndef GPLACE_NUMERICS_HPP_
#define GPLACE_NUMERICS_HPP_

#include <complex>
#include <cstddef>
#include <span>

#include <Eigen/Dense>

namespace gplace {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Module-level numerical tolerances. Every operation takes a default-built
// instance; callers override individual fields where needed.
struct NumericTolerances {
  // A is Hurwitz iff max Re(lambda) < -hurwitz_margin.
  double hurwitz_margin = 1e-9;
  // Largest accepted |M - M^T| entry, relative to 1 + max|M|.
  double symmetry = 1e-10;
  // Largest accepted | ||v|| - 1 | for unit-vector inputs.
  double unit_norm = 1e-12;
};

// Builds a matrix from row-major entries, rejecting size mismatches and
// non-finite values.
Matrix MakeMatrix(std::size_t rows, std::size_t cols,
                  std::span<const double> row_major);

bool AllFinite(const Matrix& m);
void RequireSquare(const Matrix& m, const char* what);

// e^A by scaling and squaring with diagonal Pade approximants of degree
// 3, 5, 7, 9 or 13 (Higham 2005), selected from the 1-norm of A.
Matrix MatrixExp(const Matrix& a);

// Largest real part over the spectrum of a square matrix.
double SpectralAbscissa(const Matrix& a);

bool IsHurwitz(const Matrix& a, const NumericTolerances& tol = {});

// Solves A G + G A^T = -Q for Hurwitz A by complex Schur reduction
// (Bartels-Stewart). The Schur form is computed once, so one solver serves
// many right-hand sides.
class LyapunovSolver {
 public:
  explicit LyapunovSolver(const Matrix& a, const NumericTolerances& tol = {});

  // Returns the symmetrized solution G for a symmetric Q.
  Matrix Solve(const Matrix& q) const;

  std::size_t dim() const { return static_cast<std::size_t>(t_.rows()); }

 private:
  Eigen::MatrixXcd u_;
  Eigen::MatrixXcd t_;
};

Matrix SolveLyapunov(const Matrix& a, const Matrix& q,
                     const NumericTolerances& tol = {});

struct SymEig {
  Vector eigenvalues;   // ascending
  Matrix eigenvectors;  // orthonormal columns, matching eigenvalues
};

SymEig SymmetricEigen(const Matrix& m, const NumericTolerances& tol = {});

// Smallest eigenvalue of a symmetric matrix.
double MinEigenvalue(const Matrix& m);

// Orthonormal basis of the orthogonal complement of the unit vector v, as
// the n-1 columns of the returned matrix. Built deterministically from the
// Householder reflector that maps v onto a signed multiple of e_1.
Matrix NullBasis(const Vector& v, const NumericTolerances& tol = {});

}  // namespace gplace

#endif  // GPLACE_NUMERICS_HPP_
