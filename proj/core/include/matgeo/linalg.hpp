#pragma once

// Dense real/complex vectors and matrices with the inner products, adjoints,
// norms, determinants, and orthogonalization routines the rest of the library
// is built on.  Matrices are row-major and desk-scale; there is no sparse or
// blocked storage.

#include <complex>
#include <initializer_list>
#include <vector>

#include "matgeo/error.hpp"

namespace matgeo {

using Cplx = std::complex<double>;

// Scalar field tag.  Real-tagged values keep imaginary parts exactly zero;
// conversions between fields are explicit (complexify / realify), never
// implicit coercions.
enum class Field { Real, Complex };

class Vector {
public:
    Vector(Field field, std::vector<Cplx> entries);

    static Vector zero(Field field, int dim);
    static Vector real(std::vector<double> entries);
    static Vector complex(std::vector<Cplx> entries);
    static Vector basis(Field field, int dim, int j);  // j-th standard basis vector

    int dim() const { return static_cast<int>(entries_.size()); }
    Field field() const { return field_; }

    const Cplx& operator[](int i) const { return entries_[static_cast<size_t>(i)]; }
    Cplx& operator[](int i) { return entries_[static_cast<size_t>(i)]; }

    const std::vector<Cplx>& entries() const { return entries_; }

private:
    Field field_;
    std::vector<Cplx> entries_;
};

class Matrix {
public:
    Matrix(int rows, int cols, Field field);  // zero matrix

    static Matrix identity(int n, Field field = Field::Real);
    static Matrix real(std::initializer_list<std::initializer_list<double>> rows);
    static Matrix real(const std::vector<std::vector<double>>& rows);
    static Matrix complex(std::initializer_list<std::initializer_list<Cplx>> rows);
    static Matrix complex(const std::vector<std::vector<Cplx>>& rows);
    static Matrix diagonal(Field field, const std::vector<Cplx>& d);
    static Matrix from_columns(const std::vector<Vector>& cols);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Field field() const { return field_; }
    bool square() const { return rows_ == cols_; }

    const Cplx& operator()(int i, int j) const { return a_[idx(i, j)]; }
    Cplx& operator()(int i, int j) { return a_[idx(i, j)]; }

    Vector row(int i) const;
    Vector column(int j) const;

private:
    size_t idx(int i, int j) const {
        return static_cast<size_t>(i) * static_cast<size_t>(cols_) + static_cast<size_t>(j);
    }

    int rows_;
    int cols_;
    Field field_;
    std::vector<Cplx> a_;  // row-major, length rows*cols
};

// ---- vector arithmetic ----

Vector operator+(const Vector& v, const Vector& w);
Vector operator-(const Vector& v, const Vector& w);
Vector operator*(double t, const Vector& v);
Vector operator*(const Cplx& t, const Vector& v);  // complex field only

// Sum of v_j * conj(w_j); conjugation acts on the second slot.
Cplx inner_product(const Vector& v, const Vector& w);
double norm(const Vector& v);

// ---- matrix arithmetic ----

Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(double t, const Matrix& a);
Matrix operator*(const Cplx& t, const Matrix& a);  // complex field only
Matrix operator*(const Matrix& a, const Matrix& b);
Vector apply(const Matrix& a, const Vector& v);

// A^k for k >= 0 by repeated multiplication; negative k uses inverse(A).
Matrix matrix_power(const Matrix& a, long long k);

// ---- adjoint, trace, determinant ----

// Transpose in the real case, conjugate transpose in the complex case;
// characterized by <adjoint(T) v, w> = <v, T w>.
Matrix adjoint(const Matrix& t);
Cplx trace(const Matrix& t);

struct LuDecomposition {
    Matrix lu;               // packed L (unit diagonal, below) and U (on and above)
    std::vector<int> perm;   // row permutation applied to the input
    int parity;              // +1 or -1, sign of the permutation
    bool singular;           // an exactly unusable pivot was hit
};

LuDecomposition lu_factor(const Matrix& a);

// Determinant by LU with partial pivoting.  Exact zeros are a value, not an
// error; only non-square input throws.
Cplx det(const Matrix& t);

Vector solve(const Matrix& a, const Vector& b);
Matrix solve(const Matrix& a, const Matrix& b);
Matrix inverse(const Matrix& a);

// op_norm(a) * op_norm(inverse(a)); +infinity when a is singular.  Stalled
// power iterations fall back to HS norms, so the estimate is total (and then
// overestimates by at most the dimension).
double condition_estimate(const Matrix& a);

// ---- norms ----

// Entrywise Euclidean norm, equal to sqrt(trace(adjoint(T) T)).
double hs_norm(const Matrix& t);

// Largest singular value via power iteration on adjoint(T) T.  Throws
// convergence_error (with the bracketing interval in the message) if the
// Rayleigh quotient has not settled within max_iterations.
double op_norm(const Matrix& t, double tol = 1e-12, int max_iterations = 10000);

// ---- orthogonalization ----

// Orthonormalizes in order; inputs whose residual after projection is at most
// 1e-10 times the largest input norm are dropped, so the output size reveals
// the numerical rank.  All-zero input yields an empty sequence.
std::vector<Vector> gram_schmidt(const std::vector<Vector>& vs);

// Projection of u onto the span of an orthonormal basis (checked to 1e-10).
Vector orthogonal_projection(const std::vector<Vector>& basis, const Vector& u);

// ---- field conversions ----

// Same entries, Complex tag: the linear map acting on complexified vectors.
Matrix complexify(const Matrix& a);
Vector complexify(const Vector& v);

// C^n as R^(2n) with interleaved (re, im) coordinates.  Each complex entry
// x + iy becomes the 2x2 block [[x, -y], [y, x]].
Matrix realify(const Matrix& a);
Vector realify(const Vector& v);

// Inverse of the vector realification: R^(2n) with interleaved coordinates
// back to C^n.
Vector unrealify(const Vector& v);

}  // namespace matgeo
