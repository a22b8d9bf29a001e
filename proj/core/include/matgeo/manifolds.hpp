#pragma once

// Matrix groups as manifolds: validated group membership and tangent
// directions, the semi-Riemannian metric tr(T^-1 A T^-1 B) on the invertible
// matrices, differentials of det and inversion, closed-form geodesics
// Y expm(tA), the positive-definite cone with its Riemannian geodesics, polar
// decomposition, the orthogonal quotient representative T*T, and flag
// (block-upper-triangular) patterns.

#include <vector>

#include "matgeo/expmlog.hpp"
#include "matgeo/linalg.hpp"

namespace matgeo {

enum class Group { GL, SL, O, U, SO, SU, SPD, GLFlag, SLFlag };

// Self-adjoint positive-definite matrix: self-adjoint to 1e-10 relative and
// smallest eigenvalue above 1e-12 times the largest, checked at construction.
class SpdMatrix {
public:
    explicit SpdMatrix(Matrix value);

    const Matrix& value() const { return value_; }

private:
    Matrix value_;
};

// A matrix together with the group it claims to live in; membership is
// checked to 1e-9 (relative to the identity where a scale is needed) at
// construction.  Flag groups carry the ascending subspace dimensions.
class GroupPoint {
public:
    GroupPoint(Matrix value, Group group);
    GroupPoint(Matrix value, Group group, std::vector<int> flag);

    const Matrix& value() const { return value_; }
    Group group() const { return group_; }
    const std::vector<int>& flag() const { return flag_; }

private:
    Matrix value_;
    Group group_;
    std::vector<int> flag_;
};

// Ambient tangent direction at a group point; the per-group linear
// constraints (traceless pullback for SL, T*A + A*T = 0 for the isometry
// groups, self-adjointness for SPD, the flag pattern for flag groups) are
// checked to 1e-9 relative to the direction's size.
class TangentVector {
public:
    TangentVector(GroupPoint at, Matrix direction);

    const GroupPoint& at() const { return at_; }
    const Matrix& direction() const { return direction_; }

private:
    GroupPoint at_;
    Matrix direction_;
};

// tr(T^-1 A T^-1 B), real part in the complex case: the invariant
// semi-Riemannian pairing of two ambient directions at T.
double metric_gl(const GroupPoint& t, const Matrix& a, const Matrix& b);

// The full complex bilinear trace form (no real part taken); complex field
// only, no metric-axioms contract.
Cplx metric_gl_holomorphic(const GroupPoint& t, const Matrix& a, const Matrix& b);

// Differential of det at T in direction A: (det T) tr(T^-1 A).
Cplx det_differential(const Matrix& t, const Matrix& a);

// Differential of T -> T^-1 at T in direction A: -T^-1 A T^-1.
Matrix inverse_differential(const Matrix& t, const Matrix& a);

// The geodesic t -> Y expm(tA) through Y with body direction A (for SPD
// points, A is instead the ambient self-adjoint velocity and the curve stays
// in the cone).  The direction must be admissible for Y's group; the result
// carries the same group tag.
GroupPoint geodesic(const GroupPoint& y, const Matrix& a, double t);

// Riemannian geodesic in the positive-definite cone through P with ambient
// self-adjoint velocity S at t = 0: with Z = sqrtm_spd(P), returns
// Z expm(t Z^-1 S Z^-1) Z, which is certified SPD.
SpdMatrix geodesic_spd(const SpdMatrix& p, const Matrix& s, double t);

struct PolarDecomposition {
    GroupPoint rotation;  // O (real) or U (complex) factor
    SpdMatrix stretch;    // sqrtm_spd(T*T)
};

// T = R P with R orthogonal/unitary and P = sqrtm_spd(T*T); requires a
// condition estimate at most 1e12.
PolarDecomposition polar_decompose(const Matrix& t);

// T*T: the canonical positive-definite representative of the orbit of T
// under left multiplication by the isometry group.
SpdMatrix quotient_representative(const Matrix& t);

// True iff A is block-upper-triangular for the coordinate flag with the
// given strictly ascending dimensions (every entry below the pattern at most
// 1e-12 times the HS norm).
bool flag_check(const Matrix& a, const std::vector<int>& flag);

}  // namespace matgeo
