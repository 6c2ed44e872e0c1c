#include <doctest.h>

#include <filesystem>

#include "loopform/io.hpp"
#include "loopform/random_cases.hpp"

using namespace loopform;
using io::Json;

namespace {

std::string error_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const std::invalid_argument& e) {
        return e.what();
    }
    return {};
}

}  // namespace

TEST_CASE("series JSON roundtrip") {
    Rng rng(1);
    const auto f = random_series(rng, 3, -2, 4);
    const auto back = io::series_from_json(io::to_json(f));
    CHECK(back.lead() == f.lead());
    CHECK(back.size() == f.size());
    for (int r = f.lead(); r <= f.last(); ++r) CHECK(back.coefficient(r) == f.coefficient(r));
    // survives text serialization bit for bit
    const auto text = io::series_from_json(Json::parse(io::to_json(f).dump()));
    CHECK(text.coefficient(f.lead()) == f.coefficient(f.lead()));
}

TEST_CASE("series JSON errors name the field") {
    CHECK(error_of([] { io::series_from_json(Json{{"lead", 0}, {"coeffs", Json::array()}}); }).find("'rank'") !=
          std::string::npos);
    CHECK(error_of([] { io::series_from_json(Json::parse(R"({"rank":1,"lead":0,"coeffs":[[[1]]]})")); })
              .find("coeffs[0]") != std::string::npos);
    CHECK(error_of([] { io::series_from_json(Json::parse(R"({"rank":"two","lead":0,"coeffs":[]})")); })
              .find("'rank'") != std::string::npos);
}

TEST_CASE("coefficient table JSON roundtrip") {
    Rng rng(2);
    auto t = random_synthetic_table(rng, 5);
    t.nmin = -1;
    const auto back = io::coefficients_from_json(io::to_json(t));
    CHECK(back.nmin == -1);
    CHECK(back.table == t.table);
    CHECK(back.rho_z == t.rho_z);
    const auto defaults = io::coefficients_from_json(Json::parse(R"({"nmin":0,"mmin":0,"a":[[[1,0]]]})"));
    CHECK(defaults.samples == 0);
    CHECK(defaults.rho_t == 0.35);
    CHECK(error_of([] { io::coefficients_from_json(Json::parse(R"({"nmin":0,"mmin":0,"a":[[[1,0]],[]]})")); })
              .find("row 1") != std::string::npos);
}

TEST_CASE("kernel descriptors") {
    CHECK(io::kernel_from_json(Json{{"kind", "sphere"}}).kind() == SurfaceKernel::Kind::sphere);
    const auto torus = io::kernel_from_json(Json::parse(R"({"kind":"torus","tau":[0.5,2]})"));
    CHECK(torus.torus_green().tau() == Complex(0.5, 2.0));
    const auto synth = io::kernel_from_json(Json::parse(R"({"kind":"synthetic","table":{"nmin":0,"mmin":0,"a":[[[0,0],[2,1]]]}})"));
    CHECK(synth.table().at(0, 1) == Complex(2.0, 1.0));
    CHECK_THROWS_AS(io::kernel_from_json(Json{{"kind", "klein"}}), std::invalid_argument);
    CHECK_THROWS_AS(io::kernel_from_json(Json::parse(R"({"kind":"torus","tau":[0,-1]})")), std::invalid_argument);
}

TEST_CASE("kernel descriptor with a table file") {
    const auto dir = std::filesystem::temp_directory_path() / "loopform_io_test";
    std::filesystem::create_directories(dir);
    io::save_file(dir / "t.json", Json::parse(R"({"nmin":0,"mmin":0,"a":[[[3,0]]]})"));
    const auto k = io::kernel_from_json(Json::parse(R"({"kind":"synthetic","table":"t.json"})"), dir);
    CHECK(k.table().at(0, 0) == Complex(3.0));
    CHECK_THROWS_AS(io::load_file(dir / "missing.json"), std::invalid_argument);
    std::filesystem::remove_all(dir);
}

TEST_CASE("pairing result JSON roundtrip") {
    PairingResult r{1.5, Complex(1.5, -2.0), 1e-9, PairingMethod::quadrature};
    const auto j = io::to_json(r);
    CHECK(j.at("method") == "quadrature");
    const auto back = io::pairing_from_json(j);
    CHECK(back.complex_value == r.complex_value);
    CHECK(back.method == PairingMethod::quadrature);
}

TEST_CASE("sampled form JSON layout") {
    SampledForm form;
    form.rank = 1;
    form.grid.n = 2;
    form.points = form.grid.points();
    form.values.assign(4, ComplexMatrix::Constant(1, 1, Complex(0.0, 1.0)));
    const auto j = io::to_json(form);
    CHECK(j.at("points").size() == 4);
    CHECK(j.at("phi")[0][0][0] == Json::array({0.0, 1.0}));
    CHECK(j.at("grid").at("n") == 2);
}
