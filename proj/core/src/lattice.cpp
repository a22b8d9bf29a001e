#include "matgeo/lattice.hpp"

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "matgeo/spectral.hpp"

namespace matgeo {

namespace {

void require(bool ok, const char* what) {
    if (!ok) throw precondition_error(what);
}

// Fractional part in [0, 1); values within 1e-12 (relative to c) of either
// end of the unit interval snap to 0 so that integer coordinates reduce to
// exactly zero regardless of the roundoff sign.
double wrap_unit(double c) {
    double f = c - std::floor(c);
    const double tol = 1e-12 * std::max(1.0, std::abs(c));
    if (f <= tol || 1.0 - f <= tol) f = 0.0;
    return f;
}

// Exact determinant of an integer matrix.  Permutation expansion for n <= 5
// as the independent cross-check path; fraction-free (Bareiss) elimination
// above, where every division is exact.  128-bit intermediates keep both
// paths overflow-free at this scale.
__int128 integer_det_permutation(const std::vector<std::vector<long long>>& m) {
    const int n = static_cast<int>(m.size());
    std::vector<int> p(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) p[static_cast<size_t>(i)] = i;
    __int128 total = 0;
    int sign = 1;
    // Heap's algorithm visits every permutation, flipping parity per swap.
    std::vector<int> c(static_cast<size_t>(n), 0);
    auto term = [&]() {
        __int128 prod = sign;
        for (int i = 0; i < n; ++i) prod *= m[static_cast<size_t>(i)][static_cast<size_t>(p[static_cast<size_t>(i)])];
        total += prod;
    };
    term();
    int i = 0;
    while (i < n) {
        if (c[static_cast<size_t>(i)] < i) {
            std::swap(p[static_cast<size_t>(i % 2 == 0 ? 0 : c[static_cast<size_t>(i)])], p[static_cast<size_t>(i)]);
            sign = -sign;
            term();
            ++c[static_cast<size_t>(i)];
            i = 0;
        } else {
            c[static_cast<size_t>(i)] = 0;
            ++i;
        }
    }
    return total;
}

__int128 integer_det_bareiss(std::vector<std::vector<long long>> m) {
    const int n = static_cast<int>(m.size());
    std::vector<std::vector<__int128>> w(static_cast<size_t>(n), std::vector<__int128>(static_cast<size_t>(n)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) w[static_cast<size_t>(i)][static_cast<size_t>(j)] = m[static_cast<size_t>(i)][static_cast<size_t>(j)];
    __int128 prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (w[static_cast<size_t>(k)][static_cast<size_t>(k)] == 0) {
            int pivot = -1;
            for (int i = k + 1; i < n; ++i)
                if (w[static_cast<size_t>(i)][static_cast<size_t>(k)] != 0) { pivot = i; break; }
            if (pivot < 0) return 0;
            std::swap(w[static_cast<size_t>(k)], w[static_cast<size_t>(pivot)]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                w[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                    (w[static_cast<size_t>(i)][static_cast<size_t>(j)] * w[static_cast<size_t>(k)][static_cast<size_t>(k)] -
                     w[static_cast<size_t>(i)][static_cast<size_t>(k)] * w[static_cast<size_t>(k)][static_cast<size_t>(j)]) /
                    prev;  // exact division is the fraction-free invariant
            }
        }
        prev = w[static_cast<size_t>(k)][static_cast<size_t>(k)];
    }
    return sign * w[static_cast<size_t>(n - 1)][static_cast<size_t>(n - 1)];
}

// Rounds to the nearest-integer matrix; false if any entry is farther than
// 1e-9 from an integer.
bool round_to_integer(const Matrix& t, std::vector<std::vector<long long>>& out) {
    const int n = t.rows();
    out.assign(static_cast<size_t>(n), std::vector<long long>(static_cast<size_t>(n)));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double x = t(i, j).real();
            const double r = std::round(x);
            if (std::abs(x - r) > 1e-9) return false;
            out[static_cast<size_t>(i)][static_cast<size_t>(j)] = static_cast<long long>(r);
        }
    }
    return true;
}

__int128 integer_det(const std::vector<std::vector<long long>>& m) {
    return m.size() <= 5 ? integer_det_permutation(m) : integer_det_bareiss(m);
}

}  // namespace

Lattice::Lattice(Matrix basis) : basis_(std::move(basis)), covolume_(0.0) {
    require(basis_.square(), "lattice basis must be square");
    require(basis_.field() == Field::Real, "lattice basis must be real; realify complex lattices first");
    covolume_ = std::abs(det(basis_));
    require(covolume_ > 0.0 && std::isfinite(covolume_), "lattice basis is singular");
}

namespace {

void check_torus_coordinates(const Lattice& lattice, const Vector& fractional) {
    require(fractional.field() == Field::Real, "torus coordinates must be real");
    require(fractional.dim() == lattice.dim(), "torus coordinates have the wrong dimension");
    for (int i = 0; i < fractional.dim(); ++i) {
        const double f = fractional[i].real();
        require(f >= 0.0 && f < 1.0, "torus coordinates must lie in [0, 1)");
    }
}

}  // namespace

TorusPoint::TorusPoint(Lattice lattice, Vector fractional)
    : lattice_(std::move(lattice)),
      fractional_(std::move(fractional)),
      rep_(Vector::zero(Field::Real, lattice_.dim())) {
    check_torus_coordinates(lattice_, fractional_);
    rep_ = apply(lattice_.basis(), fractional_);
}

TorusPoint::TorusPoint(Lattice lattice, Vector fractional, Vector rep)
    : lattice_(std::move(lattice)), fractional_(std::move(fractional)), rep_(std::move(rep)) {
    check_torus_coordinates(lattice_, fractional_);
}

double covolume(const Lattice& l) { return l.covolume(); }

TorusPoint reduce_mod(const Lattice& l, const Vector& x) {
    require(x.field() == Field::Real, "point must be real");
    require(x.dim() == l.dim(), "point dimension does not match the lattice");
    const Vector c = solve(l.basis(), x);
    Vector f = Vector::zero(Field::Real, l.dim());
    bool already_reduced = true;
    for (int i = 0; i < l.dim(); ++i) {
        f[i] = wrap_unit(c[i].real());
        if (f[i] != c[i]) already_reduced = false;
    }
    if (already_reduced) return TorusPoint(l, std::move(f), x);
    return TorusPoint(l, std::move(f));
}

bool is_unimodular_integer(const Matrix& t) {
    require(t.square(), "matrix must be square");
    require(t.field() == Field::Real, "matrix must be real");
    std::vector<std::vector<long long>> m;
    if (!round_to_integer(t, m)) return false;
    return integer_det(m) == 1;
}

bool lattices_equal(const Lattice& l1, const Lattice& l2) {
    require(l1.dim() == l2.dim(), "lattices have different dimensions");
    const Matrix change = solve(l2.basis(), l1.basis());
    std::vector<std::vector<long long>> m;
    if (!round_to_integer(change, m)) return false;
    const __int128 d = integer_det(m);
    return d == 1 || d == -1;
}

OrbitRepresentative hopf_representative(const Matrix& a, const Vector& v) {
    require(a.square(), "matrix must be square");
    require(a.rows() == v.dim(), "vector dimension does not match the matrix");
    require(norm(v) > 0.0, "zero vector has no orbit representative");
    double contraction;
    {
        // Largest singular value through eigh, which cannot stall on the
        // near-degenerate spectra op_norm's power iteration rejects.
        const EigenDecomposition g = eigh(adjoint(a) * a);
        contraction = std::sqrt(std::max(0.0, g.values.back().real()));
    }
    require(contraction < 1.0, "matrix must be a strict contraction (op norm < 1)");
    const Matrix ainv = inverse(a);

    Vector w = v;
    int j = 0;
    const int cap = 100000;  // op norm < 1 guarantees finite crossing; cap guards pathological near-1 contractions
    if (norm(w) >= 1.0) {
        while (norm(apply(a, w)) >= 1.0) {
            w = apply(a, w);
            ++j;
            if (j > cap) throw convergence_error("orbit did not cross the unit annulus");
        }
    } else {
        while (norm(w) < 1.0) {
            w = apply(ainv, w);
            --j;
            if (j < -cap) throw convergence_error("orbit did not cross the unit annulus");
        }
    }
    return OrbitRepresentative{std::move(w), j};
}

bool spectral_radius_below_one(const Matrix& a) {
    require(a.square(), "matrix must be square");
    double radius = 0.0;
    for (const Cplx& lambda : eigenvalues_general(a)) radius = std::max(radius, std::abs(lambda));
    return radius < 1.0;
}

}  // namespace matgeo
