#include "matgeo/manifolds.hpp"

#include <cmath>
#include <utility>

#include "matgeo/spectral.hpp"

namespace matgeo {

namespace {

void require(bool ok, const char* what) {
    if (!ok) throw precondition_error(what);
}

bool flag_shape_valid(const std::vector<int>& flag, int n) {
    if (flag.empty()) return false;
    int prev = 0;
    for (const int d : flag) {
        if (d <= prev || d >= n) return false;
        prev = d;
    }
    return true;
}

// Entrywise mass below the block-upper-triangular pattern of the flag.
double off_pattern_mass(const Matrix& a, const std::vector<int>& flag) {
    double mass = 0.0;
    for (const int d : flag) {
        for (int i = d; i < a.rows(); ++i) {
            for (int j = 0; j < d; ++j) mass += std::norm(a(i, j));
        }
    }
    return std::sqrt(mass);
}

double det_distance_from_one(const Matrix& a) { return std::abs(det(a) - Cplx(1.0, 0.0)); }

double orthogonality_residual(const Matrix& a) {
    return hs_norm(adjoint(a) * a - Matrix::identity(a.rows(), a.field()));
}

}  // namespace

SpdMatrix::SpdMatrix(Matrix value) : value_(std::move(value)) {
    require(value_.square(), "non-square");
    const EigenDecomposition d = eigh(value_);  // rejects non-self-adjoint input
    const double lambda_min = d.values.front().real();
    const double op = std::max(std::abs(lambda_min), std::abs(d.values.back().real()));
    require(lambda_min > 1e-12 * op, "not positive definite");
}

GroupPoint::GroupPoint(Matrix value, Group group) : GroupPoint(std::move(value), group, {}) {}

GroupPoint::GroupPoint(Matrix value, Group group, std::vector<int> flag)
    : value_(std::move(value)), group_(group), flag_(std::move(flag)) {
    require(value_.square(), "non-square");
    const int n = value_.rows();
    const double id_scale = std::sqrt(static_cast<double>(n));

    const bool is_flag_group = group_ == Group::GLFlag || group_ == Group::SLFlag;
    require(is_flag_group == !flag_.empty(), "flag dimensions only apply to flag groups");

    switch (group_) {
        case Group::GL:
            require(std::isfinite(condition_estimate(value_)), "not invertible");
            break;
        case Group::SL:
            require(det_distance_from_one(value_) <= 1e-9, "determinant is not 1");
            break;
        case Group::O:
            require(value_.field() == Field::Real, "O requires the real field");
            require(orthogonality_residual(value_) <= 1e-9 * id_scale, "not orthogonal");
            break;
        case Group::U:
            require(value_.field() == Field::Complex, "U requires the complex field");
            require(orthogonality_residual(value_) <= 1e-9 * id_scale, "not unitary");
            break;
        case Group::SO:
            require(value_.field() == Field::Real, "SO requires the real field");
            require(orthogonality_residual(value_) <= 1e-9 * id_scale, "not orthogonal");
            require(det_distance_from_one(value_) <= 1e-9, "determinant is not 1");
            break;
        case Group::SU:
            require(value_.field() == Field::Complex, "SU requires the complex field");
            require(orthogonality_residual(value_) <= 1e-9 * id_scale, "not unitary");
            require(det_distance_from_one(value_) <= 1e-9, "determinant is not 1");
            break;
        case Group::SPD:
            (void)SpdMatrix(value_);  // validates
            break;
        case Group::GLFlag:
        case Group::SLFlag: {
            require(flag_shape_valid(flag_, n), "malformed flag");
            require(off_pattern_mass(value_, flag_) <= 1e-9 * hs_norm(value_),
                    "does not respect the flag");
            if (group_ == Group::SLFlag) {
                require(det_distance_from_one(value_) <= 1e-9, "determinant is not 1");
            } else {
                require(std::isfinite(condition_estimate(value_)), "not invertible");
            }
            break;
        }
    }
}

TangentVector::TangentVector(GroupPoint at, Matrix direction)
    : at_(std::move(at)), direction_(std::move(direction)) {
    const Matrix& t = at_.value();
    const Matrix& a = direction_;
    require(a.rows() == t.rows() && a.cols() == t.cols() && a.field() == t.field(),
            "direction shape or field mismatch");
    const double size = hs_norm(a);

    const Group g = at_.group();
    const bool traceless = g == Group::SL || g == Group::SLFlag || g == Group::SU;
    const bool anti_self_adjoint = g == Group::O || g == Group::U || g == Group::SO || g == Group::SU;
    const bool flagged = g == Group::GLFlag || g == Group::SLFlag;

    if (traceless) {
        require(std::abs(trace(solve(t, a))) <= 1e-9 * size, "direction is not traceless at T");
    }
    if (anti_self_adjoint) {
        require(hs_norm(adjoint(t) * a + adjoint(a) * t) <= 1e-9 * size,
                "direction is not anti-self-adjoint at T");
    }
    if (g == Group::SPD) {
        require(hs_norm(a - adjoint(a)) <= 1e-9 * size, "direction is not self-adjoint");
    }
    if (flagged) {
        require(off_pattern_mass(a, at_.flag()) <= 1e-9 * size, "direction does not respect the flag");
    }
}

double metric_gl(const GroupPoint& t, const Matrix& a, const Matrix& b) {
    const Matrix& tv = t.value();
    require(a.rows() == tv.rows() && a.cols() == tv.cols() && a.field() == tv.field() &&
                b.rows() == tv.rows() && b.cols() == tv.cols() && b.field() == tv.field(),
            "shape or field mismatch");
    const Matrix ti = inverse(tv);
    return trace(ti * a * ti * b).real();
}

Cplx metric_gl_holomorphic(const GroupPoint& t, const Matrix& a, const Matrix& b) {
    require(t.value().field() == Field::Complex, "complex field required");
    const Matrix ti = inverse(t.value());
    return trace(ti * a * ti * b);
}

Cplx det_differential(const Matrix& t, const Matrix& a) {
    require(t.square() && a.rows() == t.rows() && a.cols() == t.cols() && a.field() == t.field(),
            "shape or field mismatch");
    return det(t) * trace(solve(t, a));
}

Matrix inverse_differential(const Matrix& t, const Matrix& a) {
    require(t.square() && a.rows() == t.rows() && a.cols() == t.cols() && a.field() == t.field(),
            "shape or field mismatch");
    const Matrix ti = inverse(t);
    return -1.0 * (ti * a * ti);
}

GroupPoint geodesic(const GroupPoint& y, const Matrix& a, double t) {
    if (y.group() == Group::SPD) {
        return GroupPoint(geodesic_spd(SpdMatrix(y.value()), a, t).value(), Group::SPD);
    }
    // the body direction is admissible iff the ambient direction Y A is a
    // tangent vector at Y
    (void)TangentVector(y, y.value() * a);
    return GroupPoint(y.value() * expm(t * a).value, y.group(), y.flag());
}

SpdMatrix geodesic_spd(const SpdMatrix& p, const Matrix& s, double t) {
    const Matrix& pv = p.value();
    require(s.rows() == pv.rows() && s.cols() == pv.cols() && s.field() == pv.field(),
            "direction shape or field mismatch");
    require(hs_norm(s - adjoint(s)) <= 1e-9 * std::max(1.0, hs_norm(s)),
            "direction is not self-adjoint");

    const Matrix z = sqrtm_spd(pv);
    const Matrix zi = inverse(z);
    Matrix body = zi * s * zi;
    body = 0.5 * (body + adjoint(body));
    Matrix value = z * expm(t * body).value * z;
    return SpdMatrix(0.5 * (value + adjoint(value)));
}

PolarDecomposition polar_decompose(const Matrix& t) {
    require(t.square(), "non-square");
    require(condition_estimate(t) <= 1e12, "singular or ill-conditioned");

    Matrix gram = adjoint(t) * t;
    gram = 0.5 * (gram + adjoint(gram));
    const Matrix p = sqrtm_spd(gram);
    const Matrix r = t * inverse(p);
    const Group g = t.field() == Field::Real ? Group::O : Group::U;
    return PolarDecomposition{GroupPoint(r, g), SpdMatrix(p)};
}

SpdMatrix quotient_representative(const Matrix& t) {
    require(t.square(), "non-square");
    require(condition_estimate(t) <= 1e12, "singular or ill-conditioned");
    Matrix gram = adjoint(t) * t;
    return SpdMatrix(0.5 * (gram + adjoint(gram)));
}

bool flag_check(const Matrix& a, const std::vector<int>& flag) {
    require(a.square(), "non-square");
    require(flag_shape_valid(flag, a.rows()), "malformed flag");
    const double tol = 1e-12 * hs_norm(a);
    for (const int d : flag) {
        for (int i = d; i < a.rows(); ++i) {
            for (int j = 0; j < d; ++j) {
                if (std::abs(a(i, j)) > tol) return false;
            }
        }
    }
    return true;
}

}  // namespace matgeo
