#include "loopform/io.hpp"

#include <fstream>
#include <stdexcept>
#include <vector>

namespace loopform::io {

namespace {

[[noreturn]] void fail(const std::string& what) { throw std::invalid_argument(what); }

const Json& field(const Json& j, const char* name, const std::string& context) {
    if (!j.is_object()) fail(context + ": expected a JSON object");
    auto it = j.find(name);
    if (it == j.end()) fail(context + ": missing field '" + name + "'");
    return *it;
}

int int_field(const Json& j, const char* name, const std::string& context) {
    const Json& v = field(j, name, context);
    if (!v.is_number_integer()) fail(context + ": field '" + name + "' must be an integer");
    return v.get<int>();
}

double number_field(const Json& j, const char* name, const std::string& context) {
    const Json& v = field(j, name, context);
    if (!v.is_number()) fail(context + ": field '" + name + "' must be a number");
    return v.get<double>();
}

ComplexMatrix matrix_from_json(const Json& j, int rank, const std::string& where) {
    if (!j.is_array() || static_cast<int>(j.size()) != rank) {
        fail(where + " must be a list of " + std::to_string(rank) + " rows");
    }
    ComplexMatrix m(rank, rank);
    for (int r = 0; r < rank; ++r) {
        const Json& row = j[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<int>(row.size()) != rank) {
            fail(where + " row " + std::to_string(r) + " must hold " + std::to_string(rank) + " entries");
        }
        for (int c = 0; c < rank; ++c) {
            m(r, c) = complex_from_json(row[static_cast<std::size_t>(c)],
                                        where + "[" + std::to_string(r) + "][" + std::to_string(c) + "]");
        }
    }
    return m;
}

Json matrix_to_json(const ComplexMatrix& m) {
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        fail(where + ": expected a [re, im] pair");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

MatrixLaurentSeries series_from_json(const Json& j) {
    const std::string ctx = "series";
    const int rank = int_field(j, "rank", ctx);
    if (rank < 1) fail("series: field 'rank' must be >= 1");
    const int lead = int_field(j, "lead", ctx);
    const Json& coeffs = field(j, "coeffs", ctx);
    if (!coeffs.is_array() || coeffs.empty()) fail("series: field 'coeffs' must be a non-empty list");
    std::vector<ComplexMatrix> mats;
    mats.reserve(coeffs.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        mats.push_back(matrix_from_json(coeffs[i], rank, "series: field 'coeffs[" + std::to_string(i) + "]'"));
    }
    return MatrixLaurentSeries::make(rank, lead, std::move(mats));
}

Json to_json(const MatrixLaurentSeries& f) {
    Json coeffs = Json::array();
    for (const auto& c : f.coeffs()) coeffs.push_back(matrix_to_json(c));
    return Json{{"rank", f.rank()}, {"lead", f.lead()}, {"coeffs", std::move(coeffs)}};
}

KernelCoefficients coefficients_from_json(const Json& j) {
    const std::string ctx = "coefficient table";
    const int nmin = int_field(j, "nmin", ctx);
    const int mmin = int_field(j, "mmin", ctx);
    const Json& a = field(j, "a", ctx);
    if (!a.is_array() || a.empty() || !a[0].is_array() || a[0].empty()) {
        fail("coefficient table: field 'a' must be a non-empty list of rows");
    }
    const auto rows = a.size();
    const auto cols = a[0].size();
    ComplexMatrix table(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (std::size_t r = 0; r < rows; ++r) {
        if (!a[r].is_array() || a[r].size() != cols) {
            fail("coefficient table: field 'a' row " + std::to_string(r) + " must hold " + std::to_string(cols) +
                 " entries");
        }
        for (std::size_t c = 0; c < cols; ++c) {
            table(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                complex_from_json(a[r][c], "coefficient table: field 'a[" + std::to_string(r) + "][" +
                                               std::to_string(c) + "]'");
        }
    }
    const double rho_z = j.contains("rho_z") ? number_field(j, "rho_z", ctx) : 0.35;
    const double rho_t = j.contains("rho_t") ? number_field(j, "rho_t", ctx) : 0.35;
    const int samples = j.contains("samples") ? int_field(j, "samples", ctx) : 0;
    return make_coefficients(nmin, mmin, std::move(table), rho_z, rho_t, samples);
}

Json to_json(const KernelCoefficients& c) {
    Json a = Json::array();
    for (Eigen::Index r = 0; r < c.table.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index col = 0; col < c.table.cols(); ++col) row.push_back(complex_to_json(c.table(r, col)));
        a.push_back(std::move(row));
    }
    return Json{{"nmin", c.nmin}, {"mmin", c.mmin},   {"a", std::move(a)},
                {"rho_z", c.rho_z}, {"rho_t", c.rho_t}, {"samples", c.samples}};
}

SurfaceKernel kernel_from_json(const Json& j, const std::filesystem::path& base_dir) {
    const std::string ctx = "kernel descriptor";
    const Json& kind = field(j, "kind", ctx);
    if (!kind.is_string()) fail("kernel descriptor: field 'kind' must be a string");
    const auto name = kind.get<std::string>();
    if (name == "sphere") return SurfaceKernel::sphere();
    if (name == "plane") return SurfaceKernel::plane();
    if (name == "torus") {
        const Complex tau = complex_from_json(field(j, "tau", ctx), "kernel descriptor: field 'tau'");
        if (!(tau.imag() > 0.0)) fail("kernel descriptor: field 'tau' needs a positive imaginary part");
        return SurfaceKernel::torus(tau);
    }
    if (name == "synthetic") {
        const Json& table = field(j, "table", ctx);
        if (table.is_string()) {
            std::filesystem::path p = table.get<std::string>();
            if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
            return SurfaceKernel::synthetic(coefficients_from_json(load_file(p)));
        }
        return SurfaceKernel::synthetic(coefficients_from_json(table));
    }
    fail("kernel descriptor: field 'kind' has unknown value '" + name + "'");
}

Json to_json(const PairingResult& r) {
    return Json{{"value", r.value},
                {"complex", complex_to_json(r.complex_value)},
                {"trunc", r.truncation_estimate},
                {"method", std::string(to_string(r.method))}};
}

PairingResult pairing_from_json(const Json& j) {
    const std::string ctx = "pairing result";
    PairingResult r;
    r.value = number_field(j, "value", ctx);
    r.complex_value = complex_from_json(field(j, "complex", ctx), "pairing result: field 'complex'");
    r.truncation_estimate = number_field(j, "trunc", ctx);
    const Json& m = field(j, "method", ctx);
    const auto name = m.is_string() ? m.get<std::string>() : std::string{};
    if (name == "series") r.method = PairingMethod::series;
    else if (name == "quadrature") r.method = PairingMethod::quadrature;
    else if (name == "derham") r.method = PairingMethod::derham;
    else fail("pairing result: field 'method' must be series, quadrature or derham");
    return r;
}

Json to_json(const SampledForm& form) {
    Json pts = Json::array();
    for (const Complex p : form.points) pts.push_back(complex_to_json(p));
    Json phi = Json::array();
    for (const auto& v : form.values) phi.push_back(matrix_to_json(v));
    return Json{{"rank", form.rank},
                {"grid",
                 {{"center", complex_to_json(form.grid.center)},
                  {"half_width", form.grid.half_width},
                  {"n", form.grid.n}}},
                {"points", std::move(pts)},
                {"phi", std::move(phi)}};
}

Json load_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) fail("cannot open '" + path.string() + "'");
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        fail("'" + path.string() + "' is not valid JSON: " + e.what());
    }
}

void save_file(const std::filesystem::path& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    out << j.dump() << '\n';
    if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

}  // namespace loopform::io
