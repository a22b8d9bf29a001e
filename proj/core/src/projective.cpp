#include "matgeo/projective.hpp"

#include <cmath>
#include <utility>

namespace matgeo {

namespace {

void require(bool ok, const char* what) {
    if (!ok) throw precondition_error(what);
}

double max_modulus(const Vector& v) {
    double m = 0.0;
    for (int i = 0; i < v.dim(); ++i) m = std::max(m, std::abs(v[i]));
    return m;
}

int first_max_index(const Vector& v) {
    int best = 0;
    double m = std::abs(v[0]);
    for (int i = 1; i < v.dim(); ++i) {
        const double mi = std::abs(v[i]);
        if (mi > m) {
            best = i;
            m = mi;
        }
    }
    return best;
}

// Unit norm to 1e-12 and the first entry of (1e-12-relative) largest modulus
// exactly real and positive.
bool satisfies_normalization(const Vector& v) {
    if (std::abs(norm(v) - 1.0) > 1e-12) return false;
    const double m = max_modulus(v);
    for (int i = 0; i < v.dim(); ++i) {
        if (std::abs(v[i]) < m * (1.0 - 1e-12)) continue;
        return v[i].imag() == 0.0 && v[i].real() > 0.0;
    }
    return false;
}

}  // namespace

ProjPoint::ProjPoint(Vector rep) : rep_(std::move(rep)) {
    require(satisfies_normalization(rep_),
            "representative is not normalized (unit norm, leading positive-real pivot)");
}

ProjPoint proj_from(const Vector& v) {
    const double m = max_modulus(v);
    require(m > 0.0, "the zero vector spans no line");
    // already-normalized input passes through bitwise, so proj_from is
    // idempotent and the identity matrix induces the identity on points
    if (satisfies_normalization(v)) return ProjPoint(v);
    const int p = first_max_index(v);
    Vector w = v;
    for (int i = 0; i < v.dim(); ++i) w[i] = v[i] / v[p];
    w[p] = Cplx(1.0, 0.0);  // exact: the pivot divides itself
    const double nw = norm(w);
    for (int i = 0; i < w.dim(); ++i) w[i] = Cplx(w[i].real() / nw, w[i].imag() / nw);
    w[p] = Cplx(1.0 / nw, 0.0);
    return ProjPoint(std::move(w));
}

ProjPoint affine_chart(int j, const Vector& x) {
    const int n = x.dim();
    require(0 <= j && j <= n, "chart slot out of range");
    std::vector<Cplx> entries;
    entries.reserve(static_cast<size_t>(n) + 1);
    for (int i = 0; i < j; ++i) entries.push_back(x[i]);
    entries.emplace_back(1.0, 0.0);
    for (int i = j; i < n; ++i) entries.push_back(x[i]);
    return proj_from(Vector(x.field(), std::move(entries)));
}

Vector chart_extract(int j, const ProjPoint& p) {
    require(0 <= j && j < p.dim(), "chart slot out of range");
    const Vector& r = p.rep();
    if (std::abs(r[j]) <= 1e-12) throw precondition_error("NotInChart");
    std::vector<Cplx> entries;
    entries.reserve(static_cast<size_t>(p.dim()) - 1);
    for (int i = 0; i < p.dim(); ++i) {
        if (i != j) entries.push_back(r[i] / r[j]);
    }
    return Vector(r.field(), std::move(entries));
}

namespace {

Matrix projector_of(Field field, int n, const std::vector<Vector>& basis) {
    Matrix proj(n, n, field);
    for (const Vector& b : basis) {
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) proj(i, j) += b[i] * std::conj(b[j]);
        }
    }
    return proj;
}

}  // namespace

GrassPoint::GrassPoint(const Matrix& basis) : projector_(basis.rows(), basis.rows(), basis.field()) {
    const int n = basis.rows();
    const int k = basis.cols();
    require(k <= n, "more basis columns than ambient dimensions");
    const double residual = hs_norm(adjoint(basis) * basis - Matrix::identity(k, basis.field()));
    require(residual <= 1e-10 * std::sqrt(static_cast<double>(k)),
            "basis columns are not orthonormal");
    basis_.reserve(static_cast<size_t>(k));
    for (int j = 0; j < k; ++j) basis_.push_back(basis.column(j));
    projector_ = projector_of(basis.field(), n, basis_);
}

GrassPoint::GrassPoint(Field field, int ambient_dim) : projector_(ambient_dim, ambient_dim, field) {}

GrassPoint grass_from(const std::vector<Vector>& vectors) {
    require(!vectors.empty(), "a subspace needs at least one spanning vector");
    const std::vector<Vector> basis = gram_schmidt(vectors);
    require(basis.size() == vectors.size(), "spanning vectors are linearly dependent");
    return GrassPoint(Matrix::from_columns(basis));
}

bool same_subspace(const GrassPoint& a, const GrassPoint& b) {
    require(a.ambient_dim() == b.ambient_dim() && a.field() == b.field(),
            "subspaces live in different spaces");
    return hs_norm(a.projector() - b.projector()) <= 1e-9;
}

GrassPoint graph_chart(const GrassPoint& l, const GrassPoint& m, const Matrix& a) {
    const int n = l.ambient_dim();
    const int k = l.subspace_dim();
    require(m.ambient_dim() == n && m.field() == l.field(), "subspaces live in different spaces");
    require(k >= 1 && m.subspace_dim() == n - k, "subspace dimensions do not split the space");
    require(a.rows() == n - k && a.cols() == k && a.field() == l.field(),
            "graph matrix must map L coordinates to M coordinates");

    std::vector<Vector> stacked = l.basis();
    stacked.insert(stacked.end(), m.basis().begin(), m.basis().end());
    require(condition_estimate(Matrix::from_columns(stacked)) <= 1e9,
            "subspaces are not complementary");

    const Matrix graph = Matrix::from_columns(l.basis()) + Matrix::from_columns(m.basis()) * a;
    std::vector<Vector> cols;
    cols.reserve(static_cast<size_t>(k));
    for (int j = 0; j < k; ++j) cols.push_back(graph.column(j));
    return grass_from(cols);
}

GrassPoint annihilator(const GrassPoint& l) {
    const int n = l.ambient_dim();
    std::vector<Vector> candidates = l.basis();
    candidates.reserve(static_cast<size_t>(n + l.subspace_dim()));
    for (int j = 0; j < n; ++j) candidates.push_back(Vector::basis(l.field(), n, j));
    const std::vector<Vector> full = gram_schmidt(candidates);
    // the first k survivors re-span L; the tail spans its complement
    std::vector<Vector> tail(full.begin() + l.subspace_dim(), full.end());
    if (tail.empty()) return GrassPoint(l.field(), n);
    return GrassPoint(Matrix::from_columns(tail));
}

ProjPoint apply_projective(const Matrix& a, const ProjPoint& p) {
    require(a.square() && a.rows() == p.dim(), "matrix shape does not match the point");
    require(a.field() == p.field(), "field mismatch");
    require(!lu_factor(a).singular, "projective maps come from invertible matrices");
    return proj_from(apply(a, p.rep()));
}

namespace {

double coefficient_scale(const std::vector<Cplx>& c) {
    double m = 0.0;
    for (const Cplx& z : c) m = std::max(m, std::abs(z));
    return m;
}

// Sylvester determinant of two formal degree-a polynomials (ascending
// coefficients); zero exactly when they share a root, including the root at
// infinity when both leading coefficients vanish.
Cplx sylvester_resultant(const std::vector<Cplx>& u, const std::vector<Cplx>& v) {
    const int a = static_cast<int>(u.size()) - 1;
    Matrix s(2 * a, 2 * a, Field::Complex);
    for (int r = 0; r < a; ++r) {
        for (int c = 0; c <= a; ++c) {
            s(r, r + c) = u[static_cast<size_t>(a - c)];
            s(a + r, r + c) = v[static_cast<size_t>(a - c)];
        }
    }
    return det(s);
}

std::vector<Cplx> convolve(const std::vector<Cplx>& u, const std::vector<Cplx>& v) {
    std::vector<Cplx> out(u.size() + v.size() - 1, Cplx(0.0, 0.0));
    for (size_t i = 0; i < u.size(); ++i) {
        for (size_t j = 0; j < v.size(); ++j) out[i + j] += u[i] * v[j];
    }
    return out;
}

std::vector<Cplx> form_power(const std::vector<Cplx>& u, int k) {
    std::vector<Cplx> out{Cplx(1.0, 0.0)};
    for (int i = 0; i < k; ++i) out = convolve(out, u);
    return out;
}

// The substituted form f(g1, g2) for one coefficient vector f of degree a.
std::vector<Cplx> substitute(const std::vector<Cplx>& f, const std::vector<Cplx>& g1,
                             const std::vector<Cplx>& g2) {
    const int a = static_cast<int>(f.size()) - 1;
    const int b = static_cast<int>(g1.size()) - 1;
    std::vector<Cplx> out(static_cast<size_t>(a * b) + 1, Cplx(0.0, 0.0));
    for (int i = 0; i <= a; ++i) {
        // f_i g1^i g2^(a-i), homogeneous of degree a*b throughout
        const std::vector<Cplx> term = convolve(form_power(g1, i), form_power(g2, a - i));
        for (size_t j = 0; j < out.size(); ++j) out[j] += f[static_cast<size_t>(i)] * term[j];
    }
    return out;
}

}  // namespace

HomogeneousMapP1::HomogeneousMapP1(Field field, std::vector<Cplx> first, std::vector<Cplx> second)
    : field_(field), first_(std::move(first)), second_(std::move(second)) {
    require(first_.size() == second_.size(), "forms must have a common degree");
    require(first_.size() >= 2, "forms must have degree at least one");
    if (field_ == Field::Real) {
        for (const Cplx& z : first_) require(z.imag() == 0.0, "Real-tagged coefficients must be real");
        for (const Cplx& z : second_) require(z.imag() == 0.0, "Real-tagged coefficients must be real");
    }
    const int a = degree();
    const double scale =
        std::pow(coefficient_scale(first_), a) * std::pow(coefficient_scale(second_), a);
    if (std::abs(sylvester_resultant(first_, second_)) <= 1e-12 * scale) {
        throw precondition_error("ResultantZero");
    }
}

ProjPoint apply_homogeneous(const HomogeneousMapP1& f, const ProjPoint& p) {
    require(p.dim() == 2, "homogeneous maps act on the projective line");
    require(p.field() == f.field(), "field mismatch");
    const int a = f.degree();
    const Cplx x = p.rep()[0];
    const Cplx y = p.rep()[1];
    std::vector<Cplx> xp(static_cast<size_t>(a) + 1), yp(static_cast<size_t>(a) + 1);
    xp[0] = yp[0] = Cplx(1.0, 0.0);
    for (int i = 1; i <= a; ++i) {
        xp[static_cast<size_t>(i)] = xp[static_cast<size_t>(i - 1)] * x;
        yp[static_cast<size_t>(i)] = yp[static_cast<size_t>(i - 1)] * y;
    }
    Cplx v1(0.0, 0.0), v2(0.0, 0.0);
    for (int i = 0; i <= a; ++i) {
        const Cplx monomial = xp[static_cast<size_t>(i)] * yp[static_cast<size_t>(a - i)];
        v1 += f.first()[static_cast<size_t>(i)] * monomial;
        v2 += f.second()[static_cast<size_t>(i)] * monomial;
    }
    return proj_from(Vector(f.field(), {v1, v2}));
}

HomogeneousMapP1 compose(const HomogeneousMapP1& f, const HomogeneousMapP1& g) {
    require(f.field() == g.field(), "field mismatch");
    return HomogeneousMapP1(f.field(), substitute(f.first(), g.first(), g.second()),
                            substitute(f.second(), g.first(), g.second()));
}

NormalizedRealLinear normalize_real_linear_c1(const Cplx& alpha, const Cplx& beta) {
    require(std::abs(beta) < std::abs(alpha),
            "majorization |beta| < |alpha| fails; the map may be non-invertible");
    return NormalizedRealLinear{alpha, beta / alpha};
}

}  // namespace matgeo
