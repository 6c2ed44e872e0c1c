#include "loopform/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>

#include "loopform/extract.hpp"
#include "loopform/io.hpp"
#include "loopform/reduction.hpp"
#include "loopform/suites.hpp"

namespace loopform::cli {

namespace {

using io::Json;

struct Config {
    std::string kernel;
    std::string tau = "0,1";
    std::string table;
    std::string f1;
    std::string f2;
    std::string out;
    int nmax = Defaults::nmax;
    std::optional<int> mmax;
    double radius = Defaults::radius;
    double contour_radius = Defaults::contour_radius;
    int samples = Defaults::samples;
    int nodes = Defaults::nodes;
    std::string method = "series";
    std::string bump = "0.3,0.6";
    std::string bump2;
    int order = Defaults::bump_order;
    int grid = Defaults::grid;
    double half_width = Defaults::half_width;
    std::string center = "0,0";
    std::uint64_t seed = Defaults::seed;
    int cases = Defaults::cases;
    std::optional<double> tol;
    std::string suite;
};

std::pair<double, double> parse_pair(const std::string& text, const std::string& flag) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) throw std::invalid_argument(flag + ": expected 're,im', got '" + text + "'");
    try {
        std::size_t used_a = 0;
        std::size_t used_b = 0;
        const std::string a = text.substr(0, comma);
        const std::string b = text.substr(comma + 1);
        const double x = std::stod(a, &used_a);
        const double y = std::stod(b, &used_b);
        if (used_a != a.size() || used_b != b.size()) throw std::invalid_argument("");
        return {x, y};
    } catch (const std::exception&) {
        throw std::invalid_argument(flag + ": expected two numbers 'a,b', got '" + text + "'");
    }
}

Complex parse_complex(const std::string& text, const std::string& flag) {
    const auto [re, im] = parse_pair(text, flag);
    return {re, im};
}

BumpProfile parse_bump(const std::string& text, int order, const std::string& flag) {
    const auto [r0, r1] = parse_pair(text, flag);
    return BumpProfile(r0, r1, order);
}

SurfaceKernel load_kernel(const Config& c) {
    if (c.kernel.empty()) {
        if (!c.table.empty()) return SurfaceKernel::synthetic(io::coefficients_from_json(io::load_file(c.table)));
        throw std::invalid_argument("--kernel is required");
    }
    if (c.kernel == "sphere") return SurfaceKernel::sphere();
    if (c.kernel == "plane") return SurfaceKernel::plane();
    if (c.kernel == "torus") {
        const Complex tau = parse_complex(c.tau, "--tau");
        return SurfaceKernel::torus(tau);
    }
    if (c.kernel == "synthetic") {
        if (c.table.empty()) throw std::invalid_argument("--kernel synthetic needs --table");
        return SurfaceKernel::synthetic(io::coefficients_from_json(io::load_file(c.table)));
    }
    const std::filesystem::path path(c.kernel);
    if (path.extension() == ".json") return io::kernel_from_json(io::load_file(path), path.parent_path());
    throw std::invalid_argument("--kernel: expected sphere, plane, torus, synthetic or a .json descriptor, got '" +
                                c.kernel + "'");
}

MatrixLaurentSeries load_series(const std::string& path, const char* flag) {
    if (path.empty()) throw std::invalid_argument(std::string(flag) + " is required");
    try {
        return io::series_from_json(io::load_file(path));
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(std::string(flag) + " '" + path + "': " + e.what());
    }
}

ExtractOptions extract_options(const Config& c) {
    ExtractOptions eo;
    eo.nmax = c.nmax;
    eo.mmax = c.mmax.value_or(c.nmax);
    eo.rho_z = eo.rho_t = c.radius;
    eo.samples = c.samples;
    return eo;
}

void emit(const Config& c, const Json& j, std::ostream& out) {
    if (c.out.empty()) {
        out << j.dump() << '\n';
    } else {
        io::save_file(c.out, j);
    }
}

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6e", x);
    return buf;
}

int cmd_coeffs(const Config& c, std::ostream& out, std::ostream& err) {
    const auto kernel = load_kernel(c);
    const auto table = extract(kernel, extract_options(c));
    const auto decay = decay_report(table);
    emit(c, io::to_json(table), out);
    std::ostream& log = c.out.empty() ? err : out;
    log << "kernel " << kernel.name() << ", window n in [" << table.nmin << ", " << table.nmax() << "], m in ["
        << table.mmin << ", " << table.mmax() << "], max |a| " << fmt(table.table.cwiseAbs().maxCoeff()) << '\n';
    log << "decay rate " << fmt(decay.rate) << ", tail bound " << fmt(decay.tail_bound)
        << (decay.converged ? "" : " (not converged)") << '\n';
    return 0;
}

int cmd_pair(const Config& c, std::ostream& out) {
    const auto f1 = load_series(c.f1, "--f1");
    const auto f2 = load_series(c.f2, "--f2");
    if (f1.rank() != f2.rank()) {
        throw std::invalid_argument("rank mismatch: --f1 has rank " + std::to_string(f1.rank()) + ", --f2 has rank " +
                                    std::to_string(f2.rank()));
    }
    if (c.method != "series" && c.method != "quadrature" && c.method != "both") {
        throw std::invalid_argument("--method: expected series, quadrature or both, got '" + c.method + "'");
    }
    const auto kernel = load_kernel(c);

    std::optional<KernelCoefficients> table;
    auto series = [&](const MatrixLaurentSeries& a, const MatrixLaurentSeries& b) {
        if (!table) {
            if (!c.table.empty()) table = io::coefficients_from_json(io::load_file(c.table));
            else if (kernel.kind() == SurfaceKernel::Kind::synthetic) table = kernel.table();
            else table = extract(kernel, extract_options(c));
        }
        return omega_series(*table, a, b);
    };
    auto quadrature = [&] { return omega_quadrature(kernel, f1, f2, {c.nodes, c.contour_radius}); };

    if (c.method == "series") {
        emit(c, io::to_json(series(f1, f2)), out);
    } else if (c.method == "quadrature") {
        emit(c, io::to_json(quadrature()), out);
    } else {
        const auto s = series(f1, f2);
        const auto q = quadrature();
        emit(c,
             Json{{"series", io::to_json(s)},
                  {"quadrature", io::to_json(q)},
                  {"deviation", relative_deviation(q, s)},
                  {"swapped", io::to_json(series(f2, f1))}},
             out);
    }
    return 0;
}

int cmd_reduce(const Config& c, std::ostream& out) {
    const auto kernel = load_kernel(c);
    const auto f = load_series(c.f1, "--f1");
    const auto bump = parse_bump(c.bump, c.order, "--bump");
    TargetGrid targets;
    targets.center = parse_complex(c.center, "--center");
    targets.half_width = c.half_width;
    targets.n = c.grid;
    if (targets.n < 1) throw std::invalid_argument("--grid must be >= 1");
    const auto form = reduce_cocycle(kernel, f, bump, targets);
    Json j = io::to_json(form);
    if (!c.bump2.empty()) {
        const auto other = reduce_cocycle(kernel, f, parse_bump(c.bump2, c.order, "--bump2"), targets);
        j["bump_difference"] = max_difference(form, other);
    }
    emit(c, j, out);
    return 0;
}

int cmd_verify(const Config& c, std::ostream& out) {
    SuiteConfig sc;
    sc.tau = parse_complex(c.tau, "--tau");
    if (!(sc.tau.imag() > 0.0)) throw std::invalid_argument("--tau needs a positive imaginary part");
    sc.cases = c.cases;
    sc.seed = c.seed;
    sc.nodes = c.nodes;
    sc.samples = c.samples;
    sc.nmax = c.nmax;
    sc.radius = c.radius;
    sc.tolerance = c.tol;
    const auto results = run_suite(c.suite, sc);

    bool all = true;
    Json report = Json::array();
    for (const auto& r : results) {
        all = all && r.pass;
        out << (r.pass ? "PASS  " : "FAIL  ") << r.name << "  measured " << fmt(r.measured) << "  tol "
            << fmt(r.tolerance) << '\n';
        report.push_back({{"name", r.name}, {"measured", r.measured}, {"tolerance", r.tolerance}, {"pass", r.pass}});
    }
    out << (all ? "all checks passed" : "some checks FAILED") << '\n';
    if (!c.out.empty()) io::save_file(c.out, Json{{"suite", c.suite}, {"checks", std::move(report)}});
    return all ? 0 : 1;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    Config c;
    CLI::App app{"Loop-space symplectic pairing toolkit"};
    app.require_subcommand(1);

    auto add_kernel = [&](CLI::App* s) {
        s->add_option("--kernel", c.kernel, "sphere | plane | torus | synthetic | descriptor.json");
        s->add_option("--tau", c.tau, "torus modulus as re,im")->capture_default_str();
        s->add_option("--table", c.table, "coefficient table JSON");
    };
    auto add_window = [&](CLI::App* s) {
        s->add_option("--nmax", c.nmax, "largest n in the extracted window")->capture_default_str();
        s->add_option("--mmax", c.mmax, "largest m in the extracted window (default nmax)");
        s->add_option("--radius", c.radius, "extraction circle radius")->capture_default_str();
        s->add_option("--samples", c.samples, "samples per extraction circle")->capture_default_str();
    };
    auto add_out = [&](CLI::App* s) { s->add_option("--out", c.out, "output file (stdout when omitted)"); };

    auto* coeffs = app.add_subcommand("coeffs", "extract a coefficient table from a kernel");
    add_kernel(coeffs);
    add_window(coeffs);
    add_out(coeffs);

    auto* pair = app.add_subcommand("pair", "pair two Laurent series");
    add_kernel(pair);
    add_window(pair);
    add_out(pair);
    pair->add_option("--f1", c.f1, "first series JSON")->required();
    pair->add_option("--f2", c.f2, "second series JSON")->required();
    pair->add_option("--method", c.method, "series | quadrature | both")->capture_default_str();
    pair->add_option("--nodes", c.nodes, "quadrature nodes per circle")->capture_default_str();
    pair->add_option("--contour-radius", c.contour_radius, "quadrature circle radius")->capture_default_str();

    auto* reduce = app.add_subcommand("reduce", "reduce a cocycle to a (0,1)-form on a target grid");
    add_kernel(reduce);
    add_out(reduce);
    reduce->add_option("--f1", c.f1, "series JSON")->required();
    reduce->add_option("--bump", c.bump, "bump radii r0,r1")->capture_default_str();
    reduce->add_option("--bump2", c.bump2, "second bump r0,r1; reports the difference");
    reduce->add_option("--order", c.order, "smoothstep order")->capture_default_str();
    reduce->add_option("--grid", c.grid, "target points per side")->capture_default_str();
    reduce->add_option("--half-width", c.half_width, "target grid half width")->capture_default_str();
    reduce->add_option("--center", c.center, "target grid center re,im")->capture_default_str();

    auto* verify = app.add_subcommand("verify", "run a verification suite");
    verify->add_option("suite", c.suite, "moments | oracle | bilinear | roundtrip | sphere-null | torus-const | "
                                         "laplace | reproducing | reduce | all")
        ->required();
    verify->add_option("--tau", c.tau, "torus modulus as re,im")->capture_default_str();
    verify->add_option("--cases", c.cases, "random cases for the oracle suite")->capture_default_str();
    verify->add_option("--seed", c.seed, "random seed")->capture_default_str();
    verify->add_option("--nodes", c.nodes, "quadrature nodes per circle")->capture_default_str();
    verify->add_option("--nmax", c.nmax, "extraction window")->capture_default_str();
    verify->add_option("--radius", c.radius, "extraction radius")->capture_default_str();
    verify->add_option("--samples", c.samples, "extraction samples")->capture_default_str();
    verify->add_option("--tol", c.tol, "override every check tolerance");
    add_out(verify);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*coeffs) return cmd_coeffs(c, out, err);
        if (*pair) return cmd_pair(c, out);
        if (*reduce) return cmd_reduce(c, out);
        return cmd_verify(c, out);
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace loopform::cli
