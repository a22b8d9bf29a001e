#pragma once

// Projective spaces and Grassmannians: normalized points (lines through the
// origin), affine charts, induced projective-linear maps, graph charts around
// a subspace, annihilators (orthogonal complements), and homogeneous
// polynomial maps on the projective line with a Sylvester-resultant
// nonvanishing test.

#include <vector>

#include "matgeo/linalg.hpp"

namespace matgeo {

// Point of projective space: a unit representative whose first component of
// largest modulus (modulus ties within 1e-12 relative resolve to the
// earliest real-positive entry) is exactly real and positive.  The
// normalization makes equality of points equality of representatives.
class ProjPoint {
public:
    explicit ProjPoint(Vector rep);

    const Vector& rep() const { return rep_; }
    int dim() const { return rep_.dim(); }  // ambient dimension n+1
    Field field() const { return rep_.field(); }

private:
    Vector rep_;
};

// The line through v; the same line yields the same representative.
// Scalings by exactly representable factors (powers of two, sign flips) of a
// raw input reproduce it bitwise, arbitrary scalings to 1e-12; an input that
// is already normalized passes through unchanged, so proj_from is
// idempotent.
ProjPoint proj_from(const Vector& v);

// The point with 1 inserted at slot j (0-based) and x in the remaining
// slots: the affine chart of the hyperplane complement.  The points missed
// by chart j are exactly those with rep_j = 0.
ProjPoint affine_chart(int j, const Vector& x);

// Inverse chart: divides out rep_j and removes slot j.  Throws NotInChart
// when |rep_j| <= 1e-12.
Vector chart_extract(int j, const ProjPoint& p);

// k-dimensional linear subspace of an n-dimensional space, stored as k
// orthonormal columns (checked to 1e-10) with the projector basis basis*
// cached; an empty basis is the zero subspace, so k = 0 is representable
// even though Matrix shapes are not.
class GrassPoint {
public:
    explicit GrassPoint(const Matrix& basis);
    GrassPoint(Field field, int ambient_dim);  // the zero subspace

    const std::vector<Vector>& basis() const { return basis_; }
    const Matrix& projector() const { return projector_; }
    int ambient_dim() const { return projector_.rows(); }
    int subspace_dim() const { return static_cast<int>(basis_.size()); }
    Field field() const { return projector_.field(); }

private:
    std::vector<Vector> basis_;
    Matrix projector_;
};

// The span of the given vectors; throws if gram_schmidt drops any of them
// (linear dependence).
GrassPoint grass_from(const std::vector<Vector>& vectors);

// Basis-independent equality: HS distance of the projectors at most 1e-9.
bool same_subspace(const GrassPoint& a, const GrassPoint& b);

// The subspace spanned by {l_i + M.basis A e_i}: the graph of A over L in
// the splitting L + M.  Requires the stacked basis [L | M] to be invertible
// (condition at most 1e9) and A to be (n-k) x k; A = 0 returns L.
GrassPoint graph_chart(const GrassPoint& l, const GrassPoint& m, const Matrix& a);

// Orthogonal complement, dimension n - k; an involution.
GrassPoint annihilator(const GrassPoint& l);

// The induced map on projective space: proj_from(A rep).  A and alpha A
// induce the same map; requires A invertible.
ProjPoint apply_projective(const Matrix& a, const ProjPoint& p);

// Pair of bivariate homogeneous forms of common formal degree a >= 1 with no
// common projective zero (Sylvester resultant bounded away from 0 relative
// to the coefficient scale).  coefficients[i] multiplies w1^i w2^(a-i), so
// restricting to the affine chart w2 = 1 reads the vectors as ascending
// polynomials in z = w1.
class HomogeneousMapP1 {
public:
    HomogeneousMapP1(Field field, std::vector<Cplx> first, std::vector<Cplx> second);

    Field field() const { return field_; }
    int degree() const { return static_cast<int>(first_.size()) - 1; }
    const std::vector<Cplx>& first() const { return first_; }
    const std::vector<Cplx>& second() const { return second_; }

private:
    Field field_;
    std::vector<Cplx> first_;
    std::vector<Cplx> second_;
};

// Evaluates both forms at the representative and renormalizes: the induced
// self-map of the projective line.  Fields must match.
ProjPoint apply_homogeneous(const HomogeneousMapP1& f, const ProjPoint& p);

// Substitution (f o g): degree is the product of the degrees, and the
// induced maps compose pointwise.
HomogeneousMapP1 compose(const HomogeneousMapP1& f, const HomogeneousMapP1& g);

struct NormalizedRealLinear {
    Cplx theta;  // nonzero scale
    Cplx mu;     // |mu| < 1
};

// Writes the real-linear map z -> alpha z + beta conj(z) as
// theta (z + mu conj(z)) with theta = alpha, mu = beta / alpha; requires the
// majorization |beta| < |alpha|, which makes the map invertible.
NormalizedRealLinear normalize_real_linear_c1(const Cplx& alpha, const Cplx& beta);

}  // namespace matgeo
