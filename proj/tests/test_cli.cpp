// End-to-end checks of the command-line tool: document parsing and
// serialization at the unit level, then the installed binary over a pipe,
// asserting exit codes (0 results, 1 domain errors, 2 parse errors), report
// structure, and byte-level determinism.

#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "cli_io.hpp"
#include "doctest.h"
#include "json.hpp"
#include "matgeo/linalg.hpp"

using namespace matgeo;
using cliio::Json;

namespace {

const std::string& fixture_dir() {
    static const std::string dir = [] {
        const auto d = std::filesystem::temp_directory_path() /
                       ("matgeo_cli_" + std::to_string(::getpid()));
        std::filesystem::create_directories(d);
        return d.string();
    }();
    return dir;
}

std::string write_doc(const std::string& name, const std::string& text) {
    const std::string path = fixture_dir() + "/" + name;
    std::ofstream out(path);
    out << text;
    return path;
}

struct RunResult {
    int code;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    const std::string command = std::string(MATGEO_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = ::popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buffer[4096];
    size_t n = 0;
    while ((n = std::fread(buffer, 1, sizeof buffer, pipe)) > 0) out.append(buffer, n);
    const int status = ::pclose(pipe);
    return {WEXITSTATUS(status), out};
}

Json report_of(const RunResult& r) {
    REQUIRE(!r.out.empty());
    return Json::parse(r.out);
}

bool bits_equal(double a, double b) {
    return a == b && std::signbit(a) == std::signbit(b);
}

}  // namespace

TEST_CASE("documents parse to the advertised matrices") {
    const Matrix eye = cliio::parse_matrix(
        R"({"rows": 2, "cols": 2, "field": "R", "data": [1, 0, 0, 1]})", "doc");
    CHECK(eye.rows() == 2);
    CHECK(eye.field() == Field::Real);
    CHECK(eye(0, 0) == Cplx(1.0, 0.0));
    CHECK(eye(0, 1) == Cplx(0.0, 0.0));

    const Matrix i1 = cliio::parse_matrix(
        R"({"rows": 1, "cols": 1, "field": "C", "data": [[0, 1]]})", "doc");
    CHECK(i1.field() == Field::Complex);
    CHECK(i1(0, 0) == Cplx(0.0, 1.0));
}

TEST_CASE("malformed documents fail with annotated messages") {
    const auto message_of = [](const std::string& text) {
        try {
            cliio::parse_matrix(text, "doc");
        } catch (const cliio::document_error& e) {
            return std::string(e.what());
        }
        return std::string("(no error)");
    };

    const std::string truncated = message_of(R"({"rows": 2, "cols": 2,)");
    CHECK(truncated.find("line") != std::string::npos);
    CHECK(truncated.find("column") != std::string::npos);

    CHECK(message_of(R"([1, 2, 3])").find("root must be an object") != std::string::npos);
    CHECK(message_of(R"({"rows": 1, "cols": 1, "field": "R", "data": [1], "extra": 0})")
              .find("unexpected key 'extra'") != std::string::npos);
    CHECK(message_of(R"({"rows": 1, "cols": 1, "field": "R"})").find("missing key 'data'") !=
          std::string::npos);
    CHECK(message_of(R"({"rows": 0, "cols": 1, "field": "R", "data": []})")
              .find("rows must be a positive integer") != std::string::npos);
    CHECK(message_of(R"({"rows": 1, "cols": 1, "field": "Q", "data": [1]})")
              .find("field must be") != std::string::npos);
    CHECK(message_of(R"({"rows": 2, "cols": 2, "field": "R", "data": [1, 2, 3]})")
              .find("expected 4 data entries, found 3") != std::string::npos);
    CHECK(message_of(R"({"rows": 1, "cols": 1, "field": "C", "data": [1]})")
              .find("must be a pair") != std::string::npos);
    CHECK(message_of(R"({"rows": 1, "cols": 1, "field": "R", "data": [[1, 0]]})")
              .find("must be a number") != std::string::npos);
    CHECK(message_of(R"({"rows": 1, "cols": 1, "field": "R", "data": [1e999]})") !=
          "(no error)");
}

TEST_CASE("documents round-trip every finite double bit-exactly") {
    const std::vector<double> tricky{0.1,
                                     1.0 / 3.0,
                                     5e-324,
                                     2.2250738585072014e-308,
                                     1.7976931348623157e308,
                                     -0.0,
                                     9007199254740991.0,
                                     6.02214076e23,
                                     -1.2345678901234567e-13};
    Matrix m(3, 3, Field::Real);
    for (int i = 0; i < 9; ++i) m(i / 3, i % 3) = Cplx(tricky[static_cast<size_t>(i)], 0.0);
    const Matrix back = cliio::parse_matrix(cliio::dump(cliio::matrix_document(m)), "doc");
    for (int i = 0; i < 9; ++i)
        CHECK(bits_equal(back(i / 3, i % 3).real(), tricky[static_cast<size_t>(i)]));

    Matrix c(1, 2, Field::Complex);
    c(0, 0) = Cplx(0.1, -1.0 / 3.0);
    c(0, 1) = Cplx(-0.0, 5e-324);
    const Matrix cback = cliio::parse_matrix(cliio::dump(cliio::matrix_document(c)), "doc");
    CHECK(bits_equal(cback(0, 0).imag(), -1.0 / 3.0));
    CHECK(bits_equal(cback(0, 1).real(), -0.0));
    CHECK(bits_equal(cback(0, 1).imag(), 5e-324));

    CHECK(cliio::dump(Json(0.1)) == "0.10000000000000001");
}

TEST_CASE("expm of the zero matrix is the identity") {
    const std::string zero =
        write_doc("zero2.json", R"({"rows": 2, "cols": 2, "field": "R", "data": [0, 0, 0, 0]})");
    const RunResult r = run_cli("expm --in " + zero);
    CHECK(r.code == 0);
    const Json report = report_of(r);
    CHECK(report["command"] == "expm");
    CHECK(report["status"] == "ok");
    CHECK(report["outputs"]["exp"]["data"] == Json::array({1.0, 0.0, 0.0, 1.0}));
    CHECK(report["residuals"]["inverse_law"].get<double>() == 0.0);
}

TEST_CASE("logm recovers structured logarithms and reports obstructions") {
    const std::string spd = write_doc(
        "spd_exp.json",
        R"({"rows": 2, "cols": 2, "field": "R", "data": [2.718281828459045, 0, 0, 7.38905609893065]})");
    const RunResult r1 = run_cli("logm --kind spd --in " + spd);
    CHECK(r1.code == 0);
    const Json rep1 = report_of(r1);
    CHECK(rep1["status"] == "ok");
    const Json& log = rep1["outputs"]["log"]["data"];
    CHECK(std::abs(log[0].get<double>() - 1.0) <= 1e-12);
    CHECK(std::abs(log[3].get<double>() - 2.0) <= 1e-12);

    const std::string negdiag = write_doc(
        "negdiag.json", R"({"rows": 2, "cols": 2, "field": "R", "data": [-1, 0, 0, -2]})");
    const RunResult r2 = run_cli("logm --kind real --in " + negdiag);
    CHECK(r2.code == 0);
    const Json rep2 = report_of(r2);
    CHECK(rep2["status"] == "ok");
    CHECK(rep2["outputs"]["exists_real"] == false);
    CHECK(rep2["outputs"]["obstruction"] == "NegativeRealEigenvalue");

    const std::string minus_eye = write_doc(
        "minus_eye.json", R"({"rows": 2, "cols": 2, "field": "R", "data": [-1, 0, 0, -1]})");
    const RunResult r3 = run_cli("logm --kind real --in " + minus_eye);
    CHECK(r3.code == 0);
    const Json rep3 = report_of(r3);
    CHECK(rep3["status"] == "ok");
    CHECK(rep3["outputs"]["exists_real"] == true);
    CHECK(rep3["outputs"]["obstruction"] == "None");
    CHECK(rep3["residuals"]["round_trip"].get<double>() <= 1e-8);

    const RunResult r4 = run_cli("logm --kind spd --in " + negdiag);
    CHECK(r4.code == 1);
    const Json rep4 = report_of(r4);
    CHECK(rep4["status"] == "error");
    CHECK(rep4["message"].get<std::string>().find("positive definite") != std::string::npos);
}

TEST_CASE("detexp certifies the determinant identity") {
    const std::string tri = write_doc(
        "tri.json", R"({"rows": 2, "cols": 2, "field": "R", "data": [1, 5, 0, 2]})");
    const RunResult r = run_cli("detexp --in " + tri);
    CHECK(r.code == 0);
    const Json rep = report_of(r);
    CHECK(rep["status"] == "ok");
    CHECK(std::abs(rep["outputs"]["det_of_exp"][0].get<double>() - std::exp(3.0)) <=
          1e-9 * std::exp(3.0));
    CHECK(rep["residuals"]["relative_difference"].get<double>() <= 1e-9);
}

TEST_CASE("polar and eigh report their reconstruction residuals") {
    const std::string gen = write_doc(
        "gen.json", R"({"rows": 2, "cols": 2, "field": "R", "data": [1, 2, 0.5, -0.3]})");
    const RunResult rp = run_cli("polar --in " + gen);
    CHECK(rp.code == 0);
    const Json polar = report_of(rp);
    CHECK(polar["status"] == "ok");
    CHECK(polar["residuals"]["recomposition"].get<double>() <= 1e-9);
    CHECK(polar["residuals"]["orthogonality"].get<double>() <= 1e-9);

    const std::string sym = write_doc(
        "sym.json", R"({"rows": 2, "cols": 2, "field": "R", "data": [3, 0, 0, 1]})");
    const RunResult re = run_cli("eigh --in " + sym);
    CHECK(re.code == 0);
    const Json eigh_rep = report_of(re);
    CHECK(eigh_rep["outputs"]["values"] == Json::array({1.0, 3.0}));  // ascending
}

TEST_CASE("charpoly emits ascending coefficients with the Cayley-Hamilton residual") {
    const std::string swap = write_doc(
        "swap.json", R"({"rows": 2, "cols": 2, "field": "R", "data": [0, 1, 1, 0]})");
    const RunResult r = run_cli("charpoly --in " + swap);
    CHECK(r.code == 0);
    const Json rep = report_of(r);
    CHECK(rep["outputs"]["degree"] == 2);
    // z^2 - 1: exact integer coefficients
    CHECK(rep["outputs"]["coefficients"] ==
          Json::array({Json::array({-1.0, 0.0}), Json::array({0.0, 0.0}),
                       Json::array({1.0, 0.0})}));
    CHECK(rep["residuals"]["cayley_hamilton"].get<double>() <= 1e-8);
}

TEST_CASE("geodesic at parameter zero returns the base point bitwise") {
    const std::string y = write_doc(
        "sl_base.json",
        R"({"rows": 2, "cols": 2, "field": "R", "data": [1.25, 0.5, 0.5, 1.0]})");
    const std::string a = write_doc(
        "sl_dir.json",
        R"({"rows": 2, "cols": 2, "field": "R", "data": [0.3, 0.5, 0.2, -0.3]})");
    const RunResult r = run_cli("geodesic --group gl --in " + y + " --in2 " + a + " --t 0");
    CHECK(r.code == 0);
    const Json rep = report_of(r);
    CHECK(rep["outputs"]["point"]["data"] == Json::array({1.25, 0.5, 0.5, 1.0}));

    const std::string stretched = write_doc(
        "stretched.json", R"({"rows": 2, "cols": 2, "field": "R", "data": [2, 0, 0, 1]})");
    const RunResult r1 = run_cli("geodesic --group sl --in " + stretched + " --in2 " + a +
                                 " --t 1.5");
    const Json rep1 = report_of(r1);
    CHECK(r1.code == 1);  // det = 2: not a point of SL
    CHECK(rep1["status"] == "error");
}

TEST_CASE("metric reports the invariant quadratic form") {
    const std::string eye = write_doc(
        "eye2.json", R"({"rows": 2, "cols": 2, "field": "R", "data": [1, 0, 0, 1]})");
    const RunResult r = run_cli("metric --in " + eye + " --in2 " + eye);
    CHECK(r.code == 0);
    const Json rep = report_of(r);
    CHECK(rep["outputs"]["value"].get<double>() == 2.0);  // tr(I I I I) on 2x2
    CHECK(rep["residuals"]["scale_invariance"].get<double>() == 0.0);
}

TEST_CASE("lattice subcommands cover covolume, reduction, equality, unimodularity") {
    const std::string twopi = write_doc(
        "twopi.json",
        R"({"rows": 2, "cols": 2, "field": "R", "data": [6.283185307179586, 0, 0, 6.283185307179586]})");
    const Json covol = report_of(run_cli("lattice covol --in " + twopi));
    const double tau = 6.283185307179586;
    CHECK(std::abs(covol["outputs"]["covolume"].get<double>() - tau * tau) <= 1e-12 * tau * tau);

    const std::string eye = write_doc(
        "zbasis.json", R"({"rows": 2, "cols": 2, "field": "R", "data": [1, 0, 0, 1]})");
    const std::string sheared = write_doc(
        "sheared.json", R"({"rows": 2, "cols": 2, "field": "R", "data": [1, 1, 0, 1]})");
    const std::string doubled = write_doc(
        "doubled.json", R"({"rows": 2, "cols": 2, "field": "R", "data": [1, 0, 0, 2]})");
    const RunResult req = run_cli("lattice equal --in " + eye + " --in2 " + sheared);
    CHECK(req.code == 0);
    CHECK(report_of(req)["outputs"]["equal"] == true);
    const RunResult rne = run_cli("lattice equal --in " + eye + " --in2 " + doubled);
    CHECK(rne.code == 0);  // a negative answer is a result, not an error
    CHECK(report_of(rne)["outputs"]["equal"] == false);

    const std::string x = write_doc(
        "xpt.json", R"({"rows": 2, "cols": 1, "field": "R", "data": [2.5, -0.75]})");
    const Json reduced = report_of(run_cli("lattice reduce --in " + eye + " --in2 " + x));
    CHECK(reduced["outputs"]["fractional"]["data"] == Json::array({0.5, 0.25}));

    CHECK(report_of(run_cli("lattice unimodular --in " + sheared))["outputs"]["unimodular"] ==
          true);
    CHECK(report_of(run_cli("lattice unimodular --in " + doubled))["outputs"]["unimodular"] ==
          false);
}

TEST_CASE("proj apply is scale invariant and proj chart round-trips") {
    const std::string a = write_doc(
        "proj_a.json", R"({"rows": 2, "cols": 2, "field": "R", "data": [2, 1, 1, 3]})");
    const std::string x = write_doc(
        "proj_x.json", R"({"rows": 2, "cols": 1, "field": "R", "data": [1, -2]})");
    const std::string x3 = write_doc(
        "proj_x3.json", R"({"rows": 2, "cols": 1, "field": "R", "data": [3, -6]})");
    const Json r1 = report_of(run_cli("proj apply --in " + a + " --in2 " + x));
    const Json r2 = report_of(run_cli("proj apply --in " + a + " --in2 " + x3));
    CHECK(r1["status"] == "ok");
    for (int i = 0; i < 2; ++i)
        CHECK(std::abs(r1["outputs"]["point"]["data"][i].get<double>() -
                       r2["outputs"]["point"]["data"][i].get<double>()) <= 1e-12);

    const std::string p = write_doc(
        "chart_p.json", R"({"rows": 3, "cols": 1, "field": "R", "data": [2, 4, 4]})");
    const Json chart = report_of(run_cli("proj chart --in " + p + " --chart 0"));
    CHECK(chart["outputs"]["coordinates"]["data"] == Json::array({2.0, 2.0}));
    CHECK(chart["residuals"]["round_trip"].get<double>() <= 1e-12);

    const std::string off = write_doc(
        "chart_off.json", R"({"rows": 2, "cols": 1, "field": "R", "data": [0, 1]})");
    const RunResult miss = run_cli("proj chart --in " + off + " --chart 0");
    CHECK(miss.code == 1);
    CHECK(report_of(miss)["message"] == "NotInChart");
}

TEST_CASE("grass graph and annihilator expose projectors") {
    const std::string slope = write_doc(
        "slope.json", R"({"rows": 1, "cols": 1, "field": "R", "data": [0.7]})");
    const Json graph = report_of(run_cli("grass graph --in " + slope));
    CHECK(graph["status"] == "ok");
    CHECK(graph["outputs"]["subspace_dim"] == 1);
    const double p00 = graph["outputs"]["projector"]["data"][0].get<double>();
    CHECK(std::abs(p00 - 1.0 / 1.49) <= 1e-12);

    const std::string col = write_doc(
        "col.json", R"({"rows": 3, "cols": 1, "field": "R", "data": [1, 0, 0]})");
    const Json ann = report_of(run_cli("grass annihilator --in " + col));
    CHECK(ann["outputs"]["subspace_dim"] == 2);
    CHECK(ann["residuals"]["complement_identity"].get<double>() <= 1e-12);
}

TEST_CASE("lift follows the quotient maps and rejects broken segments") {
    const std::string e0 = write_doc(
        "lift_e0.json", R"({"rows": 3, "cols": 1, "field": "R", "data": [1, 0, 0]})");
    const std::string e1 = write_doc(
        "lift_e1.json", R"({"rows": 3, "cols": 1, "field": "R", "data": [0, 1, 0]})");
    const Json quarter = report_of(run_cli("lift --kind rp --in " + e0 + " --in2 " + e1));
    CHECK(quarter["status"] == "ok");
    CHECK(quarter["residuals"]["tracking"].get<double>() <= 1e-6);
    CHECK(std::abs(std::abs(quarter["outputs"]["endpoint"]["data"][1].get<double>()) - 1.0) <=
          1e-6);

    const std::string eye_flat = write_doc(
        "eye_flat.json", R"({"rows": 4, "cols": 1, "field": "R", "data": [1, 0, 0, 1]})");
    const std::string target = write_doc(
        "target_flat.json", R"({"rows": 4, "cols": 1, "field": "R", "data": [2, 0, 0, 3]})");
    const Json sqrt_lift = report_of(run_cli("lift --kind spd --in " + eye_flat + " --in2 " +
                                             target));
    CHECK(sqrt_lift["status"] == "ok");
    const Json& end = sqrt_lift["outputs"]["endpoint"]["data"];
    CHECK(std::abs(end[0].get<double>() - 2.0) <= 1e-5);
    CHECK(std::abs(end[3].get<double>() - 3.0) <= 1e-5);

    const std::string minus_eye_flat = write_doc(
        "minus_eye_flat.json", R"({"rows": 4, "cols": 1, "field": "R", "data": [-1, 0, 0, -1]})");
    const RunResult broken = run_cli("lift --kind spd --in " + eye_flat + " --in2 " +
                                     minus_eye_flat);
    CHECK(broken.code == 1);  // the segment crosses the singular locus
    CHECK(report_of(broken)["status"] == "error");
}

TEST_CASE("curvature is two for the complex Hopf quotient and zero for products") {
    const std::string p = write_doc(
        "hopf_p.json", R"({"rows": 4, "cols": 1, "field": "R", "data": [1, 0, 0, 0]})");
    const std::string dirs = write_doc(
        "hopf_dirs.json",
        R"({"rows": 2, "cols": 8, "field": "R", "data": [0,0,1,0,1,0,0,0, 0,0,0,-1,0,1,0,0]})");
    const Json hopf = report_of(run_cli("curvature --kind cp --in " + p + " --in2 " + dirs));
    CHECK(hopf["status"] == "ok");
    CHECK(std::abs(hopf["outputs"]["magnitude"].get<double>() - 2.0) <= 1e-2);
    CHECK(hopf["residuals"]["antisymmetry"].get<double>() == 0.0);

    const std::string lp = write_doc(
        "line_p.json", R"({"rows": 2, "cols": 1, "field": "R", "data": [0.3, 0.4]})");
    const std::string ld = write_doc(
        "line_dirs.json", R"({"rows": 2, "cols": 1, "field": "R", "data": [1, 0.5]})");
    const Json flat = report_of(run_cli("curvature --kind line --in " + lp + " --in2 " + ld));
    CHECK(flat["outputs"]["magnitude"].get<double>() <= 1e-8);
}

TEST_CASE("hausdorff and pathlen run the metric-space module") {
    const std::string a = write_doc(
        "hd_a.json", R"({"rows": 2, "cols": 1, "field": "R", "data": [0, 10]})");
    const std::string b = write_doc(
        "hd_b.json", R"({"rows": 1, "cols": 1, "field": "R", "data": [1]})");
    const Json hd = report_of(run_cli("hausdorff --in " + a + " --in2 " + b + " --p 1"));
    CHECK(hd["outputs"]["distance"].get<double>() == 9.0);
    CHECK(hd["outputs"]["directed_ba"].get<double>() == 1.0);

    const std::string wide = write_doc(
        "hd_wide.json", R"({"rows": 1, "cols": 2, "field": "R", "data": [0, 0]})");
    CHECK(run_cli("hausdorff --in " + a + " --in2 " + wide).code == 1);

    const std::string seg = write_doc(
        "seg.json", R"({"rows": 2, "cols": 3, "field": "R", "data": [0, 0, 0, 1, 3, 4]})");
    const Json len2 = report_of(run_cli("pathlen --in " + seg));
    CHECK(len2["outputs"]["length"].get<double>() == 5.0);
    const Json len1 = report_of(run_cli("pathlen --in " + seg + " --p 1"));
    CHECK(len1["outputs"]["length"].get<double>() == 7.0);
}

TEST_CASE("exit codes separate results, domain errors, and parse errors") {
    const std::string zero = fixture_dir() + "/zero2.json";
    const std::string truncated = write_doc("trunc.json", R"({"rows": 2, "cols": 2,)");

    const RunResult parse_fail = run_cli("expm --in " + truncated);
    CHECK(parse_fail.code == 2);
    CHECK(parse_fail.out.empty());  // diagnostics go to standard error

    CHECK(run_cli("frobnicate").code == 2);
    CHECK(run_cli("expm").code == 2);  // missing --in
    CHECK(run_cli("logm --kind bogus --in " + zero).code == 2);

    const std::string missing = fixture_dir() + "/does_not_exist.json";
    CHECK(run_cli("expm --in " + missing).code == 2);

    // A failed residual is a domain error: tighten the tolerance to force it.
    const std::string gen = fixture_dir() + "/gen.json";
    const RunResult strict = run_cli("expm --in " + gen + " --tol 1e-30");
    CHECK(strict.code == 1);
    const Json rep = report_of(strict);
    CHECK(rep["status"] == "error");
    CHECK(rep["message"].get<std::string>().find("above tolerance") != std::string::npos);
}

TEST_CASE("batch mode reports every input in order with the worst exit code") {
    const std::string zero = fixture_dir() + "/zero2.json";
    const std::string negdiag = fixture_dir() + "/negdiag.json";
    const std::string truncated = fixture_dir() + "/trunc.json";

    const RunResult mixed = run_cli("logm --kind spd --batch " + zero + " " + negdiag);
    CHECK(mixed.code == 1);  // zero matrix and negative diagonal both miss SPD
    const Json arr = Json::parse(mixed.out);
    REQUIRE(arr.is_array());
    REQUIRE(arr.size() == 2);
    CHECK(arr[0]["inputs"]["index"] == 0);
    CHECK(arr[1]["inputs"]["index"] == 1);
    CHECK(arr[0]["status"] == "error");
    CHECK(arr[1]["status"] == "error");

    const RunResult with_parse = run_cli("expm --batch " + zero + " " + truncated);
    CHECK(with_parse.code == 2);
    const Json arr2 = Json::parse(with_parse.out);
    REQUIRE(arr2.size() == 2);
    CHECK(arr2[0]["status"] == "ok");
    CHECK(arr2[1]["status"] == "error");

    CHECK(run_cli("expm --in " + zero + " --batch " + zero).code == 2);
}

TEST_CASE("identical invocations produce byte-identical reports") {
    const std::string gen = fixture_dir() + "/gen.json";
    for (const std::string& args : {std::string("expm --in ") + gen,
                                    std::string("polar --in ") + gen,
                                    std::string("charpoly --in ") + gen}) {
        const RunResult first = run_cli(args);
        const RunResult second = run_cli(args);
        CHECK(first.code == second.code);
        CHECK(first.out == second.out);
    }
}
