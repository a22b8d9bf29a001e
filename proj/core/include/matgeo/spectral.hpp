#pragma once

// Eigendecomposition of self-adjoint and normal operators, characteristic
// polynomials, polynomial functional calculus, and power reduction modulo the
// characteristic polynomial.

#include <vector>

#include "matgeo/linalg.hpp"

namespace matgeo {

// Orthonormal eigendecomposition A = basis * diag(values) * adjoint(basis).
// values are real (imaginary part exactly zero) for self-adjoint inputs and
// sorted ascending; for normal inputs they are sorted lexicographically by
// (real, imaginary) part.
struct EigenDecomposition {
    std::vector<Cplx> values;
    Matrix basis;
};

// Cyclic Jacobi for self-adjoint matrices (real symmetric or complex
// Hermitian).  Input must be self-adjoint to 1e-10 * hs_norm; sweeps stop when
// the off-diagonal mass is at most 1e-12 * hs_norm, and more than 100 sweeps
// throws convergence_error.
EigenDecomposition eigh(const Matrix& a);

// Unitary diagonalization of a normal complex matrix: splits T into its
// self-adjoint and anti-self-adjoint parts, diagonalizes the first, then
// diagonalizes the second on each eigenvalue cluster (cluster tolerance
// 1e-8 * op_norm of the self-adjoint part).
EigenDecomposition eig_normal(const Matrix& t);

// Dense polynomial with degree-ascending coefficients.
struct Polynomial {
    std::vector<Cplx> coefficients;

    int degree() const { return static_cast<int>(coefficients.size()) - 1; }
};

// Monic characteristic polynomial det(zI - A), coefficients by the
// Faddeev-LeVerrier trace recursion (exact on small integer inputs).
Polynomial char_poly(const Matrix& a);

// Horner evaluation of p in the matrix algebra.  A Real-tagged matrix
// requires real coefficients.
Matrix poly_eval(const Polynomial& p, const Matrix& a);
Cplx poly_eval(const Polynomial& p, const Cplx& z);

// hs_norm(q_A(A)) / max(1, op_norm(A)^n) with q_A the characteristic
// polynomial; small for well-conditioned inputs.
double cayley_hamilton_residual(const Matrix& a);

// Remainder of z^m modulo char_poly(A): a polynomial of degree < n with
// p(A) = A^m.
Polynomial power_reduce(const Matrix& a, long long m);

// All eigenvalues (with multiplicity) as roots of the characteristic
// polynomial, found by Durand-Kerner iteration capped at 500 rounds.
// Conditionally accurate: clustered roots of non-normal matrices can carry
// visible error.
std::vector<Cplx> eigenvalues_general(const Matrix& a);

// Orthonormal basis of the (numerical) kernel of a rectangular matrix:
// eigenvectors of adjoint(M) M whose singular value is at most
// tol * (largest singular value).
std::vector<Vector> null_space(const Matrix& m, double tol = 1e-8);

}  // namespace matgeo
