#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "cli_io.hpp"
#include "matgeo/error.hpp"
#include "matgeo/expmlog.hpp"
#include "matgeo/lattice.hpp"
#include "matgeo/linalg.hpp"
#include "matgeo/manifolds.hpp"
#include "matgeo/metricspace.hpp"
#include "matgeo/projective.hpp"
#include "matgeo/spectral.hpp"
#include "matgeo/submersion.hpp"

using cliio::Json;
using namespace matgeo;

namespace {

struct CommandResult {
    Json outputs = Json::object();
    Json residuals = Json::object();
    bool ok = true;
    std::string message;
};

struct LoadedMatrix {
    Matrix value;
    Json digest;
};

LoadedMatrix load_matrix(const std::string& path) {
    const std::string text = cliio::read_file(path);
    Json digest = Json::object();
    digest["path"] = path;
    digest["fnv1a"] = cliio::fnv1a_hex(text);
    return {cliio::parse_matrix(text, path), std::move(digest)};
}

// Records the residual and downgrades the report when it misses `tol`;
// a NaN never passes.
void bound(CommandResult& r, const std::string& name, double value, double tol) {
    r.residuals[name] = value;
    if (!(value <= tol)) {
        r.ok = false;
        if (!r.message.empty()) r.message += "; ";
        r.message += name + " residual above tolerance";
    }
}

Json report_json(const std::string& command, const Json& inputs, const CommandResult& r) {
    Json report = Json::object();
    report["command"] = command;
    report["inputs"] = inputs;
    report["outputs"] = r.outputs;
    report["residuals"] = r.residuals;
    report["status"] = r.ok ? "ok" : "error";
    report["message"] = r.message;
    return report;
}

void print_line(const std::string& s) {
    std::fputs(s.c_str(), stdout);
    std::fputc('\n', stdout);
}

// Runs the body, converts library failures into error reports (exit 1), and
// prints the report.  Document problems propagate to main as exit 2.
int execute(const std::string& command, const Json& inputs,
            const std::function<CommandResult()>& body) {
    CommandResult r;
    try {
        r = body();
    } catch (const matgeo::error& e) {
        r = CommandResult{};
        r.ok = false;
        r.message = e.what();
    }
    print_line(cliio::dump(report_json(command, inputs, r)));
    return r.ok ? 0 : 1;
}

struct SingleOpts {
    std::string in;
    std::vector<std::string> batch;
    double tol = 0.0;
};

// One matrix in, one report out; --batch loops the same handler over many
// documents and prints an array ordered by input index.  The exit code is
// the worst across items: parse failure 2, domain error or missed residual 1.
int run_matrix_family(const std::string& command, const SingleOpts& o, const Json& scalars,
                      const std::function<CommandResult(const Matrix&)>& one) {
    if (!o.batch.empty()) {
        if (!o.in.empty())
            throw cliio::document_error(command + ": use --in or --batch, not both");
        Json reports = Json::array();
        int worst = 0;
        for (size_t i = 0; i < o.batch.size(); ++i) {
            Json inputs = Json::object();
            inputs["index"] = static_cast<int>(i);
            CommandResult r;
            try {
                const LoadedMatrix lm = load_matrix(o.batch[i]);
                inputs["in"] = lm.digest;
                for (auto it = scalars.begin(); it != scalars.end(); ++it)
                    inputs[it.key()] = it.value();
                r = one(lm.value);
            } catch (const cliio::document_error& e) {
                r.ok = false;
                r.message = e.what();
                worst = 2;
            } catch (const matgeo::error& e) {
                r.ok = false;
                r.message = e.what();
            }
            if (!r.ok && worst == 0) worst = 1;
            reports.push_back(report_json(command, inputs, r));
        }
        print_line(cliio::dump(reports));
        return worst;
    }
    if (o.in.empty()) throw cliio::document_error(command + ": missing --in");
    const LoadedMatrix lm = load_matrix(o.in);
    Json inputs = Json::object();
    inputs["in"] = lm.digest;
    for (auto it = scalars.begin(); it != scalars.end(); ++it) inputs[it.key()] = it.value();
    return execute(command, inputs, [&]() { return one(lm.value); });
}

// ---- handlers ----

CommandResult run_expm(const Matrix& a, double tol) {
    const ExpResult forward = expm(a);
    const ExpResult backward = expm(-1.0 * a);
    CommandResult r;
    r.outputs["exp"] = cliio::matrix_document(forward.value);
    r.outputs["scaling_squarings"] = forward.scaling_squarings;
    r.outputs["taylor_terms"] = forward.taylor_terms;
    const Matrix eye = Matrix::identity(a.rows(), a.field());
    const double scale = 1.0 + hs_norm(forward.value) * hs_norm(backward.value);
    bound(r, "inverse_law", hs_norm(forward.value * backward.value - eye) / scale, tol);
    return r;
}

const char* obstruction_name(LogObstruction o) {
    switch (o) {
        case LogObstruction::None: return "None";
        case LogObstruction::NegativeRealEigenvalue: return "NegativeRealEigenvalue";
        default: return "Singular";
    }
}

CommandResult run_logm(const Matrix& m, const std::string& kind, double tol) {
    CommandResult r;
    if (kind == "real") {
        const LogReport report = real_log_exists(m);
        r.outputs["exists_real"] = report.exists_real;
        r.outputs["obstruction"] = obstruction_name(report.obstruction);
        if (report.value) {
            r.outputs["log"] = cliio::matrix_document(*report.value);
            bound(r, "round_trip", hs_norm(expm(*report.value).value - m) / hs_norm(m), tol);
        }
        return r;
    }
    const Matrix log = kind == "spd"       ? logm_spd(m)
                       : kind == "unitary" ? logm_unitary(m)
                                           : logm_special_orthogonal(m);
    r.outputs["log"] = cliio::matrix_document(log);
    bound(r, "round_trip", hs_norm(expm(log).value - m) / hs_norm(m), tol);
    if (kind == "spd")
        bound(r, "self_adjointness", hs_norm(log - adjoint(log)) / (1.0 + hs_norm(log)), tol);
    else
        bound(r, "anti_self_adjointness", hs_norm(log + adjoint(log)) / (1.0 + hs_norm(log)),
              tol);
    return r;
}

CommandResult run_detexp(const Matrix& a, double tol) {
    const DetExpIdentity d = det_exp_identity(a);
    CommandResult r;
    r.outputs["det_of_exp"] = cliio::complex_value(d.det_of_exp);
    r.outputs["exp_of_trace"] = cliio::complex_value(d.exp_of_trace);
    bound(r, "relative_difference",
          std::abs(d.det_of_exp - d.exp_of_trace) / std::abs(d.exp_of_trace), tol);
    return r;
}

CommandResult run_polar(const Matrix& t, double tol) {
    const PolarDecomposition pd = polar_decompose(t);
    const Matrix& rotation = pd.rotation.value();
    const Matrix& stretch = pd.stretch.value();
    CommandResult r;
    r.outputs["rotation"] = cliio::matrix_document(rotation);
    r.outputs["stretch"] = cliio::matrix_document(stretch);
    bound(r, "recomposition", hs_norm(rotation * stretch - t) / hs_norm(t), tol);
    const Matrix eye = Matrix::identity(t.rows(), t.field());
    bound(r, "orthogonality",
          hs_norm(adjoint(rotation) * rotation - eye) / std::sqrt(static_cast<double>(t.rows())),
          tol);
    return r;
}

CommandResult run_eigh(const Matrix& a, double tol) {
    const EigenDecomposition e = eigh(a);
    CommandResult r;
    Json values = Json::array();
    for (const Cplx& v : e.values) values.push_back(v.real());
    r.outputs["values"] = std::move(values);
    r.outputs["basis"] = cliio::matrix_document(e.basis);
    const Matrix d = Matrix::diagonal(a.field(), e.values);
    const double scale = hs_norm(a) > 0.0 ? hs_norm(a) : 1.0;
    bound(r, "reconstruction", hs_norm(e.basis * d * adjoint(e.basis) - a) / scale, tol);
    const Matrix eye = Matrix::identity(a.rows(), a.field());
    bound(r, "orthonormality",
          hs_norm(adjoint(e.basis) * e.basis - eye) / std::sqrt(static_cast<double>(a.rows())),
          tol);
    return r;
}

CommandResult run_charpoly(const Matrix& a, double tol) {
    const Polynomial p = char_poly(a);
    CommandResult r;
    Json coefficients = Json::array();  // degree-ascending
    for (const Cplx& c : p.coefficients) coefficients.push_back(cliio::complex_value(c));
    r.outputs["coefficients"] = std::move(coefficients);
    r.outputs["degree"] = p.degree();
    bound(r, "cayley_hamilton", cayley_hamilton_residual(a), tol);
    return r;
}

CommandResult run_geodesic(const Matrix& y, const Matrix& a, const std::string& group, double t,
                           double tol) {
    CommandResult r;
    if (group == "spd") {
        const SpdMatrix start(y);
        const SpdMatrix g = geodesic_spd(start, a, t);
        r.outputs["point"] = cliio::matrix_document(g.value());
        bound(r, "self_adjointness",
              hs_norm(g.value() - adjoint(g.value())) / (1.0 + hs_norm(g.value())), tol);
        return r;
    }
    const Group tag = group == "gl"   ? Group::GL
                      : group == "sl" ? Group::SL
                      : group == "o"  ? Group::O
                                      : Group::U;
    const GroupPoint start(y, tag);
    const GroupPoint g = geodesic(start, a, t);
    r.outputs["point"] = cliio::matrix_document(g.value());
    if (tag == Group::SL) {
        bound(r, "determinant_pinning", std::abs(det(g.value()) - Cplx(1.0, 0.0)), tol);
    } else if (tag == Group::O || tag == Group::U) {
        const Matrix eye = Matrix::identity(g.value().rows(), g.value().field());
        bound(r, "isometry",
              hs_norm(adjoint(g.value()) * g.value() - eye) /
                  std::sqrt(static_cast<double>(eye.rows())),
              tol);
    }
    return r;
}

CommandResult run_metric(const Matrix& t, const Matrix& a, double tol) {
    const GroupPoint base(t, Group::GL);
    const double value = metric_gl(base, a, a);
    CommandResult r;
    r.outputs["value"] = value;
    if (t.field() == Field::Complex)
        r.outputs["holomorphic"] = cliio::complex_value(metric_gl_holomorphic(base, a, a));
    const GroupPoint doubled(2.0 * t, Group::GL);
    bound(r, "scale_invariance",
          std::abs(metric_gl(doubled, 2.0 * a, 2.0 * a) - value) / (1.0 + std::abs(value)),
          tol);
    return r;
}

CommandResult run_lattice_covol(const Matrix& b, double tol) {
    const Lattice l(b);
    CommandResult r;
    r.outputs["covolume"] = l.covolume();
    r.outputs["dim"] = l.dim();
    bound(r, "determinant_consistency",
          std::abs(l.covolume() - std::abs(det(b))) / (1.0 + l.covolume()), tol);
    return r;
}

CommandResult run_lattice_reduce(const Matrix& b, const Vector& x, double tol) {
    const Lattice l(b);
    const TorusPoint point = reduce_mod(l, x);
    CommandResult r;
    r.outputs["fractional"] = cliio::vector_document(point.fractional());
    r.outputs["representative"] = cliio::vector_document(point.rep());
    const Vector coords = solve(b, x - point.rep());
    double worst = 0.0;
    for (int i = 0; i < coords.dim(); ++i) {
        worst = std::max(worst, std::abs(coords[i].real() - std::round(coords[i].real())));
        worst = std::max(worst, std::abs(coords[i].imag()));
    }
    bound(r, "coset_error", worst, tol);
    return r;
}

CommandResult run_proj_apply(const Matrix& a, const Vector& x, double tol) {
    const ProjPoint p = proj_from(x);
    const ProjPoint q = apply_projective(a, p);
    CommandResult r;
    r.outputs["point"] = cliio::vector_document(q.rep());
    bound(r, "unit_norm", std::abs(norm(q.rep()) - 1.0), tol);
    const ProjPoint doubled = apply_projective(2.0 * a, p);
    bound(r, "scale_invariance", norm(doubled.rep() - q.rep()), tol);
    return r;
}

CommandResult run_proj_chart(const Vector& x, int chart, double tol) {
    const ProjPoint p = proj_from(x);
    const Vector y = chart_extract(chart, p);
    CommandResult r;
    r.outputs["coordinates"] = cliio::vector_document(y);
    const ProjPoint back = affine_chart(chart, y);
    bound(r, "round_trip", norm(back.rep() - p.rep()), tol);
    return r;
}

CommandResult run_grass_graph(const Matrix& a, double tol) {
    const int n = a.rows() + a.cols();
    std::vector<Vector> l_basis, m_basis;
    for (int j = 0; j < a.cols(); ++j) l_basis.push_back(Vector::basis(a.field(), n, j));
    for (int i = 0; i < a.rows(); ++i)
        m_basis.push_back(Vector::basis(a.field(), n, a.cols() + i));
    const GrassPoint graph =
        graph_chart(grass_from(l_basis), grass_from(m_basis), a);
    const Matrix& p = graph.projector();
    CommandResult r;
    r.outputs["projector"] = cliio::matrix_document(p);
    r.outputs["subspace_dim"] = graph.subspace_dim();
    bound(r, "idempotency", hs_norm(p * p - p) / (1.0 + hs_norm(p)), tol);
    bound(r, "self_adjointness", hs_norm(p - adjoint(p)) / (1.0 + hs_norm(p)), tol);
    double membership = 0.0;
    for (int j = 0; j < a.cols(); ++j) {
        Vector v = Vector::zero(a.field(), n);
        v[j] = Cplx(1.0, 0.0);
        for (int i = 0; i < a.rows(); ++i) v[a.cols() + i] = a(i, j);
        membership = std::max(membership, norm(apply(p, v) - v) / norm(v));
    }
    bound(r, "graph_membership", membership, tol);
    return r;
}

CommandResult run_grass_annihilator(const Matrix& b, double tol) {
    std::vector<Vector> columns;
    for (int j = 0; j < b.cols(); ++j) columns.push_back(b.column(j));
    const GrassPoint l = grass_from(columns);
    const GrassPoint ann = annihilator(l);
    CommandResult r;
    r.outputs["projector"] = cliio::matrix_document(ann.projector());
    r.outputs["subspace_dim"] = ann.subspace_dim();
    const Matrix eye = Matrix::identity(b.rows(), b.field());
    bound(r, "complement_identity",
          hs_norm(l.projector() + ann.projector() - eye) /
              std::sqrt(static_cast<double>(b.rows())),
          tol);
    return r;
}

SubmersionKind parse_kind(const std::string& kind) {
    if (kind == "rp") return SubmersionKind::SphereToRP;
    if (kind == "cp") return SubmersionKind::SphereToCP;
    if (kind == "spd") return SubmersionKind::GlToSpd;
    return SubmersionKind::ProductToLine;
}

int kind_parameter(SubmersionKind kind, int ambient) {
    switch (kind) {
        case SubmersionKind::SphereToRP:
            if (ambient < 2) throw precondition_error("rp needs ambient dimension at least 2");
            return ambient - 1;
        case SubmersionKind::SphereToCP:
            if (ambient < 4 || ambient % 2 != 0)
                throw precondition_error("cp needs an even ambient dimension at least 4");
            return ambient / 2 - 1;
        case SubmersionKind::GlToSpd: {
            const int n = static_cast<int>(std::lround(std::sqrt(static_cast<double>(ambient))));
            if (n < 2 || n * n != ambient)
                throw precondition_error("spd needs a square ambient dimension at least 4");
            return n;
        }
        default:
            if (ambient < 2) throw precondition_error("line needs ambient dimension at least 2");
            return ambient;
    }
}

CommandResult run_lift(const Vector& p0, const Vector& p1, const std::string& kind_name,
                       double tol) {
    if (p1.dim() != p0.dim() || p1.field() != p0.field())
        throw precondition_error("endpoint documents have different shapes");
    const SubmersionKind kind = parse_kind(kind_name);
    const SubmersionInstance inst(kind, kind_parameter(kind, p0.dim()));
    const ConnectionState conn(inst);
    const Vector start = inst.reproject(p0);
    // Base path: the image of the ambient segment between the endpoints.
    BasePath alpha;
    alpha.value = [&inst, &p0, &p1](double t) { return inst.value((1.0 - t) * p0 + t * p1); };
    alpha.start = 0.0;
    alpha.end = 1.0;
    const int steps = 200;
    const LiftedPath lifted = horizontal_lift(conn, alpha, start, steps);
    const Vector& endpoint = lifted.points.back();
    CommandResult r;
    r.outputs["endpoint"] = cliio::vector_document(endpoint);
    r.outputs["endpoint_value"] = cliio::vector_document(inst.value(endpoint));
    r.outputs["steps"] = steps;
    bound(r, "tracking", norm(inst.value(endpoint) - inst.value(p1)), tol);
    bound(r, "membership", inst.membership_residual(endpoint), tol);
    return r;
}

CommandResult run_curvature(const Vector& p, const Matrix& directions,
                            const std::string& kind_name, double tol) {
    const SubmersionKind kind = parse_kind(kind_name);
    const SubmersionInstance inst(kind, kind_parameter(kind, p.dim()));
    const ConnectionState conn(inst);
    const Vector base = inst.reproject(p);
    if (directions.rows() != 2 || directions.cols() != inst.embedding_dim() ||
        directions.field() != Field::Real)
        throw precondition_error("directions must be a real 2-row matrix over the target embedding");
    const Vector u1 = directions.row(0);
    const Vector u2 = directions.row(1);
    const Vector c12 = curvature_numeric(conn, base, u1, u2);
    const Vector c21 = curvature_numeric(conn, base, u2, u1);
    CommandResult r;
    r.outputs["curvature"] = cliio::vector_document(c12);
    r.outputs["magnitude"] = norm(c12);
    bound(r, "antisymmetry", norm(c12 + c21) / (1.0 + norm(c12)), tol);
    return r;
}

CommandResult run_hausdorff(const Matrix& am, const Matrix& bm, double p, double tol) {
    std::vector<Vector> a_rows, b_rows;
    for (int i = 0; i < am.rows(); ++i) a_rows.push_back(am.row(i));
    for (int i = 0; i < bm.rows(); ++i) b_rows.push_back(bm.row(i));
    const FinitePointSet a(std::move(a_rows), p);
    const FinitePointSet b(std::move(b_rows), p);
    const double d = hausdorff(a, b);
    CommandResult r;
    r.outputs["distance"] = d;
    double ab = 0.0;
    double ba = 0.0;
    for (const Vector& x : a.points()) ab = std::max(ab, dist_point_set(x, b));
    for (const Vector& y : b.points()) ba = std::max(ba, dist_point_set(y, a));
    r.outputs["directed_ab"] = ab;
    r.outputs["directed_ba"] = ba;
    bound(r, "symmetry", std::abs(d - hausdorff(b, a)), tol);
    return r;
}

CommandResult run_pathlen(const Matrix& doc, double p) {
    if (doc.field() != Field::Real)
        throw precondition_error("path documents must be real: a time column plus coordinates");
    if (doc.cols() < 2)
        throw precondition_error("path documents need a time column and at least one coordinate");
    std::vector<double> times;
    std::vector<Vector> points;
    for (int i = 0; i < doc.rows(); ++i) {
        times.push_back(doc(i, 0).real());
        std::vector<double> coords;
        for (int j = 1; j < doc.cols(); ++j) coords.push_back(doc(i, j).real());
        points.push_back(Vector::real(std::move(coords)));
    }
    const SampledPath path(std::move(times), std::move(points), p);
    CommandResult r;
    r.outputs["length"] = path_length(path);  // partition sum: a lower bound
    r.outputs["samples"] = doc.rows();
    return r;
}

// ---- wiring ----

void add_single_io(CLI::App* cmd, const std::shared_ptr<SingleOpts>& opts) {
    cmd->add_option("--in", opts->in, "matrix document");
    cmd->add_option("--batch", opts->batch, "matrix documents, one report per input, in order")
        ->expected(-1);
    cmd->add_option("--tol", opts->tol, "residual tolerance")->capture_default_str();
}

void register_matrix_command(CLI::App& app, int& code, const std::string& name,
                             const std::string& desc, double default_tol,
                             const std::function<CommandResult(const Matrix&, double)>& handler) {
    auto opts = std::make_shared<SingleOpts>();
    opts->tol = default_tol;
    CLI::App* cmd = app.add_subcommand(name, desc);
    add_single_io(cmd, opts);
    cmd->callback([opts, &code, name, handler]() {
        Json scalars = Json::object();
        scalars["tol"] = opts->tol;
        code = run_matrix_family(name, *opts, scalars,
                                 [&](const Matrix& m) { return handler(m, opts->tol); });
    });
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"matrix geometry toolkit: matrix documents in, machine-readable reports out"};
    app.require_subcommand(1);
    int code = 0;

    register_matrix_command(app, code, "expm", "matrix exponential with inverse-law residual",
                            1e-9, run_expm);
    register_matrix_command(app, code, "detexp", "det(exp(A)) against exp(tr A)", 1e-9,
                            run_detexp);
    register_matrix_command(app, code, "polar", "polar decomposition T = R P", 1e-9, run_polar);
    register_matrix_command(app, code, "eigh",
                            "eigendecomposition of a self-adjoint matrix", 1e-9, run_eigh);
    register_matrix_command(app, code, "charpoly",
                            "characteristic polynomial with Cayley-Hamilton residual", 1e-8,
                            run_charpoly);

    {
        auto opts = std::make_shared<SingleOpts>();
        opts->tol = 1e-8;
        auto kind = std::make_shared<std::string>();
        CLI::App* cmd = app.add_subcommand("logm", "matrix logarithm on a structured class");
        add_single_io(cmd, opts);
        cmd->add_option("--kind", *kind, "spd|unitary|so|real")
            ->required()
            ->check(CLI::IsMember({"spd", "unitary", "so", "real"}));
        cmd->callback([opts, kind, &code]() {
            Json scalars = Json::object();
            scalars["kind"] = *kind;
            scalars["tol"] = opts->tol;
            code = run_matrix_family("logm", *opts, scalars, [&](const Matrix& m) {
                return run_logm(m, *kind, opts->tol);
            });
        });
    }

    {
        struct GeodesicOpts {
            std::string in, in2, group;
            double t = 1.0;
            double tol = 1e-9;
        };
        auto opts = std::make_shared<GeodesicOpts>();
        CLI::App* cmd = app.add_subcommand("geodesic", "group geodesic through Y with direction A");
        cmd->add_option("--in", opts->in, "base point document")->required();
        cmd->add_option("--in2", opts->in2, "direction document")->required();
        cmd->add_option("--group", opts->group, "gl|sl|spd|o|u")
            ->required()
            ->check(CLI::IsMember({"gl", "sl", "spd", "o", "u"}));
        cmd->add_option("--t", opts->t, "curve parameter")->capture_default_str();
        cmd->add_option("--tol", opts->tol, "residual tolerance")->capture_default_str();
        cmd->callback([opts, &code]() {
            const LoadedMatrix y = load_matrix(opts->in);
            const LoadedMatrix a = load_matrix(opts->in2);
            Json inputs = Json::object();
            inputs["in"] = y.digest;
            inputs["in2"] = a.digest;
            inputs["group"] = opts->group;
            inputs["t"] = opts->t;
            inputs["tol"] = opts->tol;
            code = execute("geodesic", inputs, [&]() {
                return run_geodesic(y.value, a.value, opts->group, opts->t, opts->tol);
            });
        });
    }

    {
        struct MetricOpts {
            std::string in, in2;
            double tol = 1e-9;
        };
        auto opts = std::make_shared<MetricOpts>();
        CLI::App* cmd =
            app.add_subcommand("metric", "invariant quadratic form <A,A> at the base point");
        cmd->add_option("--in", opts->in, "base point document")->required();
        cmd->add_option("--in2", opts->in2, "direction document")->required();
        cmd->add_option("--tol", opts->tol, "residual tolerance")->capture_default_str();
        cmd->callback([opts, &code]() {
            const LoadedMatrix t = load_matrix(opts->in);
            const LoadedMatrix a = load_matrix(opts->in2);
            Json inputs = Json::object();
            inputs["in"] = t.digest;
            inputs["in2"] = a.digest;
            inputs["tol"] = opts->tol;
            code = execute("metric", inputs,
                           [&]() { return run_metric(t.value, a.value, opts->tol); });
        });
    }

    {
        CLI::App* lattice_cmd = app.add_subcommand("lattice", "lattice quotient operations");
        lattice_cmd->require_subcommand(1);

        register_matrix_command(*lattice_cmd, code, "covol", "covolume of a lattice basis",
                                1e-12, run_lattice_covol);

        {
            struct ReduceOpts {
                std::string in, in2;
                double tol = 1e-9;
            };
            auto opts = std::make_shared<ReduceOpts>();
            CLI::App* cmd =
                lattice_cmd->add_subcommand("reduce", "reduce a point into the unit cell");
            cmd->add_option("--in", opts->in, "lattice basis document")->required();
            cmd->add_option("--in2", opts->in2, "point document")->required();
            cmd->add_option("--tol", opts->tol, "residual tolerance")->capture_default_str();
            cmd->callback([opts, &code]() {
                const LoadedMatrix b = load_matrix(opts->in);
                const LoadedMatrix x = load_matrix(opts->in2);
                Json inputs = Json::object();
                inputs["in"] = b.digest;
                inputs["in2"] = x.digest;
                inputs["tol"] = opts->tol;
                code = execute("lattice reduce", inputs, [&]() {
                    return run_lattice_reduce(b.value, cliio::as_vector(x.value, opts->in2),
                                              opts->tol);
                });
            });
        }

        {
            struct EqualOpts {
                std::string in, in2;
            };
            auto opts = std::make_shared<EqualOpts>();
            CLI::App* cmd = lattice_cmd->add_subcommand(
                "equal", "decide whether two bases span the same lattice");
            cmd->add_option("--in", opts->in, "first basis document")->required();
            cmd->add_option("--in2", opts->in2, "second basis document")->required();
            cmd->callback([opts, &code]() {
                const LoadedMatrix b1 = load_matrix(opts->in);
                const LoadedMatrix b2 = load_matrix(opts->in2);
                Json inputs = Json::object();
                inputs["in"] = b1.digest;
                inputs["in2"] = b2.digest;
                code = execute("lattice equal", inputs, [&]() {
                    CommandResult r;
                    r.outputs["equal"] = lattices_equal(Lattice(b1.value), Lattice(b2.value));
                    return r;
                });
            });
        }

        {
            auto opts = std::make_shared<SingleOpts>();
            CLI::App* cmd = lattice_cmd->add_subcommand(
                "unimodular", "decide whether an integer matrix has determinant +-1");
            cmd->add_option("--in", opts->in, "matrix document");
            cmd->add_option("--batch", opts->batch,
                            "matrix documents, one report per input, in order")
                ->expected(-1);
            cmd->callback([opts, &code]() {
                code = run_matrix_family("lattice unimodular", *opts, Json::object(),
                                         [&](const Matrix& m) {
                                             CommandResult r;
                                             r.outputs["unimodular"] = is_unimodular_integer(m);
                                             return r;
                                         });
            });
        }
    }

    {
        CLI::App* proj_cmd = app.add_subcommand("proj", "projective space operations");
        proj_cmd->require_subcommand(1);

        {
            struct ApplyOpts {
                std::string in, in2;
                double tol = 1e-10;
            };
            auto opts = std::make_shared<ApplyOpts>();
            CLI::App* cmd =
                proj_cmd->add_subcommand("apply", "apply an invertible matrix to a line");
            cmd->add_option("--in", opts->in, "matrix document")->required();
            cmd->add_option("--in2", opts->in2, "point document (any representative)")
                ->required();
            cmd->add_option("--tol", opts->tol, "residual tolerance")->capture_default_str();
            cmd->callback([opts, &code]() {
                const LoadedMatrix a = load_matrix(opts->in);
                const LoadedMatrix x = load_matrix(opts->in2);
                Json inputs = Json::object();
                inputs["in"] = a.digest;
                inputs["in2"] = x.digest;
                inputs["tol"] = opts->tol;
                code = execute("proj apply", inputs, [&]() {
                    return run_proj_apply(a.value, cliio::as_vector(x.value, opts->in2),
                                          opts->tol);
                });
            });
        }

        {
            struct ChartOpts {
                std::string in;
                int chart = 0;
                double tol = 1e-9;
            };
            auto opts = std::make_shared<ChartOpts>();
            CLI::App* cmd =
                proj_cmd->add_subcommand("chart", "affine coordinates in a coordinate chart");
            cmd->add_option("--in", opts->in, "point document (any representative)")->required();
            cmd->add_option("--chart", opts->chart, "chart index (which slot is divided out)")
                ->capture_default_str();
            cmd->add_option("--tol", opts->tol, "residual tolerance")->capture_default_str();
            cmd->callback([opts, &code]() {
                const LoadedMatrix x = load_matrix(opts->in);
                Json inputs = Json::object();
                inputs["in"] = x.digest;
                inputs["chart"] = opts->chart;
                inputs["tol"] = opts->tol;
                code = execute("proj chart", inputs, [&]() {
                    return run_proj_chart(cliio::as_vector(x.value, opts->in), opts->chart,
                                          opts->tol);
                });
            });
        }
    }

    {
        CLI::App* grass_cmd = app.add_subcommand("grass", "Grassmannian operations");
        grass_cmd->require_subcommand(1);
        register_matrix_command(*grass_cmd, code, "graph",
                                "subspace spanned by (x, Ax) for the coordinate splitting",
                                1e-9, run_grass_graph);
        register_matrix_command(*grass_cmd, code, "annihilator",
                                "orthogonal complement of the column span", 1e-9,
                                run_grass_annihilator);
    }

    {
        struct LiftOpts {
            std::string in, in2, kind;
            double tol = 1e-6;
        };
        auto opts = std::make_shared<LiftOpts>();
        CLI::App* cmd = app.add_subcommand(
            "lift", "horizontal lift along the projected segment between two ambient points");
        cmd->add_option("--in", opts->in, "ambient start point document")->required();
        cmd->add_option("--in2", opts->in2, "ambient end point document")->required();
        cmd->add_option("--kind", opts->kind, "rp|cp|spd|line")
            ->required()
            ->check(CLI::IsMember({"rp", "cp", "spd", "line"}));
        cmd->add_option("--tol", opts->tol, "residual tolerance")->capture_default_str();
        cmd->callback([opts, &code]() {
            const LoadedMatrix p0 = load_matrix(opts->in);
            const LoadedMatrix p1 = load_matrix(opts->in2);
            Json inputs = Json::object();
            inputs["in"] = p0.digest;
            inputs["in2"] = p1.digest;
            inputs["kind"] = opts->kind;
            inputs["tol"] = opts->tol;
            code = execute("lift", inputs, [&]() {
                return run_lift(cliio::as_vector(p0.value, opts->in),
                                cliio::as_vector(p1.value, opts->in2), opts->kind, opts->tol);
            });
        });
    }

    {
        struct CurvatureOpts {
            std::string in, in2, kind;
            double tol = 1e-6;
        };
        auto opts = std::make_shared<CurvatureOpts>();
        CLI::App* cmd = app.add_subcommand(
            "curvature", "numeric connection curvature at a point, in two target directions");
        cmd->add_option("--in", opts->in, "ambient point document")->required();
        cmd->add_option("--in2", opts->in2, "2-row matrix of target tangent directions")
            ->required();
        cmd->add_option("--kind", opts->kind, "rp|cp|spd|line")
            ->required()
            ->check(CLI::IsMember({"rp", "cp", "spd", "line"}));
        cmd->add_option("--tol", opts->tol, "residual tolerance")->capture_default_str();
        cmd->callback([opts, &code]() {
            const LoadedMatrix p = load_matrix(opts->in);
            const LoadedMatrix dirs = load_matrix(opts->in2);
            Json inputs = Json::object();
            inputs["in"] = p.digest;
            inputs["in2"] = dirs.digest;
            inputs["kind"] = opts->kind;
            inputs["tol"] = opts->tol;
            code = execute("curvature", inputs, [&]() {
                return run_curvature(cliio::as_vector(p.value, opts->in), dirs.value,
                                     opts->kind, opts->tol);
            });
        });
    }

    {
        struct HausdorffOpts {
            std::string in, in2;
            double p = 2.0;
            double tol = 1e-12;
        };
        auto opts = std::make_shared<HausdorffOpts>();
        CLI::App* cmd = app.add_subcommand(
            "hausdorff", "Hausdorff distance between point sets given as matrix rows");
        cmd->add_option("--in", opts->in, "first point set (rows are points)")->required();
        cmd->add_option("--in2", opts->in2, "second point set (rows are points)")->required();
        cmd->add_option("--p", opts->p, "metric exponent")->capture_default_str();
        cmd->add_option("--tol", opts->tol, "residual tolerance")->capture_default_str();
        cmd->callback([opts, &code]() {
            const LoadedMatrix a = load_matrix(opts->in);
            const LoadedMatrix b = load_matrix(opts->in2);
            Json inputs = Json::object();
            inputs["in"] = a.digest;
            inputs["in2"] = b.digest;
            inputs["p"] = opts->p;
            inputs["tol"] = opts->tol;
            code = execute("hausdorff", inputs,
                           [&]() { return run_hausdorff(a.value, b.value, opts->p, opts->tol); });
        });
    }

    {
        struct PathlenOpts {
            std::string in;
            double p = 2.0;
        };
        auto opts = std::make_shared<PathlenOpts>();
        CLI::App* cmd = app.add_subcommand(
            "pathlen", "partition-sum length of a sampled path (rows: time, coordinates...)");
        cmd->add_option("--in", opts->in, "path document")->required();
        cmd->add_option("--p", opts->p, "metric exponent")->capture_default_str();
        cmd->callback([opts, &code]() {
            const LoadedMatrix doc = load_matrix(opts->in);
            Json inputs = Json::object();
            inputs["in"] = doc.digest;
            inputs["p"] = opts->p;
            code = execute("pathlen", inputs, [&]() { return run_pathlen(doc.value, opts->p); });
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::fprintf(stderr, "%s\n", e.what());
        std::fputs(app.help().c_str(), stderr);
        return 2;
    } catch (const cliio::document_error& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return 2;
    } catch (const matgeo::error& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return 1;
    }
    return code;
}
