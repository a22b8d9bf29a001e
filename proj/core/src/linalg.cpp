#include "matgeo/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <utility>

namespace matgeo {

namespace {

void require(bool ok, const char* message) {
    if (!ok) throw precondition_error(message);
}

void require_real_entries(const std::vector<Cplx>& entries) {
    for (const Cplx& z : entries) {
        require(z.imag() == 0.0, "Real-tagged value must have exactly zero imaginary parts");
    }
}

void require_same_shape(const Matrix& a, const Matrix& b) {
    require(a.rows() == b.rows() && a.cols() == b.cols(), "shape mismatch");
    require(a.field() == b.field(), "field mismatch");
}

}  // namespace

// ---- construction ----

Vector::Vector(Field field, std::vector<Cplx> entries) : field_(field), entries_(std::move(entries)) {
    require(!entries_.empty(), "vector dimension must be positive");
    if (field_ == Field::Real) require_real_entries(entries_);
}

Vector Vector::zero(Field field, int dim) {
    require(dim > 0, "vector dimension must be positive");
    return Vector(field, std::vector<Cplx>(static_cast<size_t>(dim), Cplx(0.0, 0.0)));
}

Vector Vector::real(std::vector<double> entries) {
    std::vector<Cplx> zs(entries.begin(), entries.end());
    return Vector(Field::Real, std::move(zs));
}

Vector Vector::complex(std::vector<Cplx> entries) {
    return Vector(Field::Complex, std::move(entries));
}

Vector Vector::basis(Field field, int dim, int j) {
    require(0 <= j && j < dim, "basis index out of range");
    Vector e = Vector::zero(field, dim);
    e[j] = 1.0;
    return e;
}

Matrix::Matrix(int rows, int cols, Field field)
    : rows_(rows),
      cols_(cols),
      field_(field),
      a_(static_cast<size_t>(rows) * static_cast<size_t>(cols), Cplx(0.0, 0.0)) {
    require(rows > 0 && cols > 0, "matrix dimensions must be positive");
}

Matrix Matrix::identity(int n, Field field) {
    Matrix m(n, n, field);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::real(std::initializer_list<std::initializer_list<double>> rows) {
    std::vector<std::vector<double>> copied;
    for (const auto& r : rows) copied.emplace_back(r);
    return Matrix::real(copied);
}

Matrix Matrix::real(const std::vector<std::vector<double>>& rows) {
    require(!rows.empty() && !rows.front().empty(), "matrix dimensions must be positive");
    Matrix m(static_cast<int>(rows.size()), static_cast<int>(rows.front().size()), Field::Real);
    for (int i = 0; i < m.rows(); ++i) {
        require(static_cast<int>(rows[static_cast<size_t>(i)].size()) == m.cols(), "ragged rows");
        for (int j = 0; j < m.cols(); ++j) m(i, j) = rows[static_cast<size_t>(i)][static_cast<size_t>(j)];
    }
    return m;
}

Matrix Matrix::complex(std::initializer_list<std::initializer_list<Cplx>> rows) {
    std::vector<std::vector<Cplx>> copied;
    for (const auto& r : rows) copied.emplace_back(r);
    return Matrix::complex(copied);
}

Matrix Matrix::complex(const std::vector<std::vector<Cplx>>& rows) {
    require(!rows.empty() && !rows.front().empty(), "matrix dimensions must be positive");
    Matrix m(static_cast<int>(rows.size()), static_cast<int>(rows.front().size()), Field::Complex);
    for (int i = 0; i < m.rows(); ++i) {
        require(static_cast<int>(rows[static_cast<size_t>(i)].size()) == m.cols(), "ragged rows");
        for (int j = 0; j < m.cols(); ++j) m(i, j) = rows[static_cast<size_t>(i)][static_cast<size_t>(j)];
    }
    return m;
}

Matrix Matrix::diagonal(Field field, const std::vector<Cplx>& d) {
    Matrix m(static_cast<int>(d.size()), static_cast<int>(d.size()), field);
    for (int i = 0; i < m.rows(); ++i) {
        if (field == Field::Real) require(d[static_cast<size_t>(i)].imag() == 0.0, "Real-tagged value must have exactly zero imaginary parts");
        m(i, i) = d[static_cast<size_t>(i)];
    }
    return m;
}

Matrix Matrix::from_columns(const std::vector<Vector>& cols) {
    require(!cols.empty(), "matrix dimensions must be positive");
    const int n = cols.front().dim();
    Matrix m(n, static_cast<int>(cols.size()), cols.front().field());
    for (int j = 0; j < m.cols(); ++j) {
        const Vector& c = cols[static_cast<size_t>(j)];
        require(c.dim() == n && c.field() == m.field(), "column shape or field mismatch");
        for (int i = 0; i < n; ++i) m(i, j) = c[i];
    }
    return m;
}

Vector Matrix::row(int i) const {
    std::vector<Cplx> r(static_cast<size_t>(cols_));
    for (int j = 0; j < cols_; ++j) r[static_cast<size_t>(j)] = (*this)(i, j);
    return Vector(field_, std::move(r));
}

Vector Matrix::column(int j) const {
    std::vector<Cplx> c(static_cast<size_t>(rows_));
    for (int i = 0; i < rows_; ++i) c[static_cast<size_t>(i)] = (*this)(i, j);
    return Vector(field_, std::move(c));
}

// ---- vector arithmetic ----

Vector operator+(const Vector& v, const Vector& w) {
    require(v.dim() == w.dim(), "dimension mismatch");
    require(v.field() == w.field(), "field mismatch");
    Vector out = v;
    for (int i = 0; i < v.dim(); ++i) out[i] += w[i];
    return out;
}

Vector operator-(const Vector& v, const Vector& w) {
    require(v.dim() == w.dim(), "dimension mismatch");
    require(v.field() == w.field(), "field mismatch");
    Vector out = v;
    for (int i = 0; i < v.dim(); ++i) out[i] -= w[i];
    return out;
}

Vector operator*(double t, const Vector& v) {
    Vector out = v;
    for (int i = 0; i < v.dim(); ++i) out[i] *= t;
    return out;
}

Vector operator*(const Cplx& t, const Vector& v) {
    require(v.field() == Field::Complex, "complex scalar on a Real-tagged vector; complexify first");
    Vector out = v;
    for (int i = 0; i < v.dim(); ++i) out[i] *= t;
    return out;
}

Cplx inner_product(const Vector& v, const Vector& w) {
    require(v.dim() == w.dim(), "dimension mismatch");
    require(v.field() == w.field(), "field mismatch");
    Cplx s(0.0, 0.0);
    for (int i = 0; i < v.dim(); ++i) s += v[i] * std::conj(w[i]);
    return s;
}

double norm(const Vector& v) {
    double s = 0.0;
    for (int i = 0; i < v.dim(); ++i) s += std::norm(v[i]);
    return std::sqrt(s);
}

// ---- matrix arithmetic ----

Matrix operator+(const Matrix& a, const Matrix& b) {
    require_same_shape(a, b);
    Matrix out = a;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) out(i, j) += b(i, j);
    return out;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
    require_same_shape(a, b);
    Matrix out = a;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) out(i, j) -= b(i, j);
    return out;
}

Matrix operator*(double t, const Matrix& a) {
    Matrix out = a;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) out(i, j) *= t;
    return out;
}

Matrix operator*(const Cplx& t, const Matrix& a) {
    require(a.field() == Field::Complex, "complex scalar on a Real-tagged matrix; complexify first");
    Matrix out = a;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) out(i, j) *= t;
    return out;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    require(a.cols() == b.rows(), "shape mismatch");
    require(a.field() == b.field(), "field mismatch");
    Matrix out(a.rows(), b.cols(), a.field());
    for (int i = 0; i < a.rows(); ++i) {
        for (int k = 0; k < a.cols(); ++k) {
            const Cplx aik = a(i, k);
            if (aik == Cplx(0.0, 0.0)) continue;
            for (int j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
        }
    }
    return out;
}

Vector apply(const Matrix& a, const Vector& v) {
    require(a.cols() == v.dim(), "dimension mismatch");
    require(a.field() == v.field(), "field mismatch");
    std::vector<Cplx> out(static_cast<size_t>(a.rows()), Cplx(0.0, 0.0));
    for (int i = 0; i < a.rows(); ++i) {
        Cplx s(0.0, 0.0);
        for (int j = 0; j < a.cols(); ++j) s += a(i, j) * v[j];
        out[static_cast<size_t>(i)] = s;
    }
    return Vector(a.field(), std::move(out));
}

Matrix matrix_power(const Matrix& a, long long k) {
    require(a.square(), "non-square");
    Matrix base = k < 0 ? inverse(a) : a;
    unsigned long long e = k < 0 ? static_cast<unsigned long long>(-k) : static_cast<unsigned long long>(k);
    Matrix acc = Matrix::identity(a.rows(), a.field());
    while (e != 0) {
        if (e & 1ull) acc = acc * base;
        e >>= 1;
        if (e != 0) base = base * base;
    }
    return acc;
}

// ---- adjoint, trace, determinant ----

Matrix adjoint(const Matrix& t) {
    Matrix out(t.cols(), t.rows(), t.field());
    for (int i = 0; i < t.rows(); ++i)
        for (int j = 0; j < t.cols(); ++j) out(j, i) = std::conj(t(i, j));
    return out;
}

Cplx trace(const Matrix& t) {
    require(t.square(), "non-square");
    Cplx s(0.0, 0.0);
    for (int i = 0; i < t.rows(); ++i) s += t(i, i);
    return s;
}

LuDecomposition lu_factor(const Matrix& a) {
    require(a.square(), "non-square");
    const int n = a.rows();
    LuDecomposition d{a, std::vector<int>(static_cast<size_t>(n)), 1, false};
    for (int i = 0; i < n; ++i) d.perm[static_cast<size_t>(i)] = i;

    for (int k = 0; k < n; ++k) {
        int pivot_row = k;
        double pivot_mag = std::abs(d.lu(k, k));
        for (int i = k + 1; i < n; ++i) {
            const double m = std::abs(d.lu(i, k));
            if (m > pivot_mag) {
                pivot_mag = m;
                pivot_row = i;
            }
        }
        if (pivot_mag == 0.0) {
            d.singular = true;
            continue;
        }
        if (pivot_row != k) {
            for (int j = 0; j < n; ++j) std::swap(d.lu(k, j), d.lu(pivot_row, j));
            std::swap(d.perm[static_cast<size_t>(k)], d.perm[static_cast<size_t>(pivot_row)]);
            d.parity = -d.parity;
        }
        const Cplx pivot = d.lu(k, k);
        for (int i = k + 1; i < n; ++i) {
            const Cplx factor = d.lu(i, k) / pivot;
            d.lu(i, k) = factor;
            if (factor == Cplx(0.0, 0.0)) continue;
            for (int j = k + 1; j < n; ++j) d.lu(i, j) -= factor * d.lu(k, j);
        }
    }
    return d;
}

Cplx det(const Matrix& t) {
    const LuDecomposition d = lu_factor(t);
    if (d.singular) return Cplx(0.0, 0.0);
    Cplx p(static_cast<double>(d.parity), 0.0);
    for (int i = 0; i < t.rows(); ++i) p *= d.lu(i, i);
    return p;
}

namespace {

double lu_scale(const Matrix& a) {
    double s = 0.0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) s = std::max(s, std::abs(a(i, j)));
    return s;
}

Matrix lu_solve(const Matrix& a, const LuDecomposition& d, const Matrix& b) {
    const int n = a.rows();
    const double floor = lu_scale(a) * 1e-15 * static_cast<double>(n);
    if (d.singular) throw precondition_error("singular matrix");
    for (int i = 0; i < n; ++i) {
        if (std::abs(d.lu(i, i)) <= floor) throw precondition_error("singular matrix");
    }
    Matrix x(n, b.cols(), b.field());
    for (int c = 0; c < b.cols(); ++c) {
        // forward substitution on the permuted right-hand side
        std::vector<Cplx> y(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) {
            Cplx s = b(d.perm[static_cast<size_t>(i)], c);
            for (int j = 0; j < i; ++j) s -= d.lu(i, j) * y[static_cast<size_t>(j)];
            y[static_cast<size_t>(i)] = s;
        }
        for (int i = n - 1; i >= 0; --i) {
            Cplx s = y[static_cast<size_t>(i)];
            for (int j = i + 1; j < n; ++j) s -= d.lu(i, j) * x(j, c);
            x(i, c) = s / d.lu(i, i);
        }
    }
    return x;
}

}  // namespace

Vector solve(const Matrix& a, const Vector& b) {
    require(a.square(), "non-square");
    require(a.rows() == b.dim(), "dimension mismatch");
    require(a.field() == b.field(), "field mismatch");
    Matrix rhs(b.dim(), 1, b.field());
    for (int i = 0; i < b.dim(); ++i) rhs(i, 0) = b[i];
    const Matrix x = lu_solve(a, lu_factor(a), rhs);
    std::vector<Cplx> out(static_cast<size_t>(b.dim()));
    for (int i = 0; i < b.dim(); ++i) out[static_cast<size_t>(i)] = x(i, 0);
    return Vector(b.field(), std::move(out));
}

Matrix solve(const Matrix& a, const Matrix& b) {
    require(a.square(), "non-square");
    require(a.rows() == b.rows(), "shape mismatch");
    require(a.field() == b.field(), "field mismatch");
    return lu_solve(a, lu_factor(a), b);
}

Matrix inverse(const Matrix& a) {
    require(a.square(), "non-square");
    return solve(a, Matrix::identity(a.rows(), a.field()));
}

double condition_estimate(const Matrix& a) {
    try {
        const Matrix ai = inverse(a);
        // power-iteration stalls (near-degenerate top singular values) fall
        // back to the HS norm, an upper bound within a factor of the dimension
        double na, nai;
        try {
            na = op_norm(a);
        } catch (const convergence_error&) {
            na = hs_norm(a);
        }
        try {
            nai = op_norm(ai);
        } catch (const convergence_error&) {
            nai = hs_norm(ai);
        }
        return na * nai;
    } catch (const precondition_error&) {
        return std::numeric_limits<double>::infinity();
    }
}

// ---- norms ----

double hs_norm(const Matrix& t) {
    double s = 0.0;
    for (int i = 0; i < t.rows(); ++i)
        for (int j = 0; j < t.cols(); ++j) s += std::norm(t(i, j));
    return std::sqrt(s);
}

double op_norm(const Matrix& t, double tol, int max_iterations) {
    const double hs = hs_norm(t);
    if (hs == 0.0) return 0.0;

    const Matrix b = adjoint(t) * t;  // self-adjoint, nonnegative
    const int n = b.rows();

    // All-ones start with a deterministic perturbation so the iterate is not
    // orthogonal to the top eigenspace.
    std::mt19937_64 rng(0x5eedu);
    std::uniform_real_distribution<double> u(-1e-3, 1e-3);
    Vector v = Vector::zero(t.field(), n);
    for (int i = 0; i < n; ++i) v[i] = 1.0 + u(rng);
    v = (1.0 / norm(v)) * v;

    double lambda = 0.0;
    bool have_lambda = false;
    for (int it = 0; it < max_iterations; ++it) {
        Vector w = apply(b, v);
        const double wn = norm(w);
        if (wn == 0.0) return 0.0;  // iterate landed exactly in the kernel
        const double next = inner_product(w, v).real();
        v = (1.0 / wn) * w;
        if (have_lambda && std::abs(next - lambda) <= tol * std::max(1.0, std::abs(next))) {
            return std::sqrt(std::max(next, 0.0));
        }
        lambda = next;
        have_lambda = true;
    }
    std::ostringstream msg;
    msg << "operator norm power iteration did not converge; bracket ["
        << std::sqrt(std::max(lambda, 0.0)) << ", " << hs << "]";
    throw convergence_error(msg.str());
}

// ---- orthogonalization ----

std::vector<Vector> gram_schmidt(const std::vector<Vector>& vs) {
    require(!vs.empty(), "empty input");
    const int dim = vs.front().dim();
    const Field field = vs.front().field();
    double max_norm = 0.0;
    for (const Vector& v : vs) {
        require(v.dim() == dim && v.field() == field, "common dimension and field required");
        max_norm = std::max(max_norm, norm(v));
    }
    std::vector<Vector> basis;
    if (max_norm == 0.0) return basis;
    const double drop_tol = 1e-10 * max_norm;
    for (const Vector& v : vs) {
        Vector r = v;
        // two projection passes: the second removes the residue the first
        // leaves when v is nearly dependent on the accepted set
        for (int pass = 0; pass < 2; ++pass) {
            for (const Vector& u : basis) {
                const Cplx c = inner_product(r, u);
                for (int i = 0; i < r.dim(); ++i) r[i] -= c * u[i];
            }
        }
        const double rn = norm(r);
        if (rn > drop_tol) basis.push_back((1.0 / rn) * r);
    }
    return basis;
}

Vector orthogonal_projection(const std::vector<Vector>& basis, const Vector& u) {
    require(!basis.empty(), "empty basis");
    for (size_t i = 0; i < basis.size(); ++i) {
        require(basis[i].dim() == u.dim() && basis[i].field() == u.field(),
                "basis and target must share dimension and field");
        for (size_t j = i; j < basis.size(); ++j) {
            const Cplx g = inner_product(basis[i], basis[j]);
            const double target = i == j ? 1.0 : 0.0;
            require(std::abs(g - Cplx(target, 0.0)) <= 1e-10, "basis is not orthonormal");
        }
    }
    Vector out = Vector::zero(u.field(), u.dim());
    for (const Vector& b : basis) {
        const Cplx c = inner_product(u, b);
        for (int i = 0; i < u.dim(); ++i) out[i] += c * b[i];
    }
    return out;
}

// ---- field conversions ----

Matrix complexify(const Matrix& a) {
    Matrix out(a.rows(), a.cols(), Field::Complex);
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
    return out;
}

Vector complexify(const Vector& v) {
    return Vector(Field::Complex, v.entries());
}

Matrix realify(const Matrix& a) {
    require(a.field() == Field::Complex, "realify expects a Complex-tagged matrix");
    Matrix out(2 * a.rows(), 2 * a.cols(), Field::Real);
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) {
            const double x = a(i, j).real();
            const double y = a(i, j).imag();
            out(2 * i, 2 * j) = x;
            out(2 * i, 2 * j + 1) = -y;
            out(2 * i + 1, 2 * j) = y;
            out(2 * i + 1, 2 * j + 1) = x;
        }
    }
    return out;
}

Vector realify(const Vector& v) {
    require(v.field() == Field::Complex, "realify expects a Complex-tagged vector");
    std::vector<Cplx> out(static_cast<size_t>(2 * v.dim()));
    for (int i = 0; i < v.dim(); ++i) {
        out[static_cast<size_t>(2 * i)] = v[i].real();
        out[static_cast<size_t>(2 * i + 1)] = v[i].imag();
    }
    return Vector(Field::Real, std::move(out));
}

Vector unrealify(const Vector& v) {
    require(v.field() == Field::Real, "unrealify expects a Real-tagged vector");
    require(v.dim() % 2 == 0, "dimension must be even");
    std::vector<Cplx> out(static_cast<size_t>(v.dim() / 2));
    for (int i = 0; i < v.dim() / 2; ++i) {
        out[static_cast<size_t>(i)] = Cplx(v[2 * i].real(), v[2 * i + 1].real());
    }
    return Vector(Field::Complex, std::move(out));
}

}  // namespace matgeo
