#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "loopform/cli.hpp"
#include "loopform/io.hpp"

using loopform::io::Json;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "loopform");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = loopform::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

class TempDir {
public:
    TempDir() : path_(fs::temp_directory_path() / ("loopform_cli_" + std::to_string(counter_++))) {
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    std::string file(const std::string& name, const std::string& text = {}) const {
        const auto p = path_ / name;
        if (!text.empty()) std::ofstream(p) << text;
        return p.string();
    }

private:
    static inline int counter_ = 0;
    fs::path path_;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    return {std::istreambuf_iterator<char>(in), {}};
}

const char* kIdentity = R"({"rank":2,"lead":0,"coeffs":[[[[1,0],[0,0]],[[0,0],[1,0]]]]})";
const char* kIdentityZ = R"({"rank":2,"lead":1,"coeffs":[[[[1,0],[0,0]],[[0,0],[1,0]]]]})";
const char* kInverse = R"({"rank":1,"lead":-1,"coeffs":[[[[1,0]]]]})";
const char* kA12 = R"({"nmin":0,"mmin":0,"a":[[[0,0],[0,0],[0,0]],[[0,0],[0,0],[1,0]]]})";

}  // namespace

TEST_CASE("coeffs on the sphere writes a table of zeros") {
    TempDir d;
    const auto out = d.file("t.json");
    const auto r = run({"coeffs", "--kernel", "sphere", "--nmax", "16", "--out", out});
    CHECK(r.code == 0);
    const auto t = loopform::io::coefficients_from_json(loopform::io::load_file(out));
    CHECK(t.table.cwiseAbs().maxCoeff() <= 1e-10);
    CHECK(t.nmax() == 16);
    CHECK(r.out.find("tail bound") != std::string::npos);
}

TEST_CASE("coeffs on the torus") {
    const auto r = run({"coeffs", "--kernel", "torus", "--tau", "0,1", "--nmax", "4", "--samples", "32"});
    REQUIRE(r.code == 0);
    const auto t = loopform::io::coefficients_from_json(Json::parse(r.out));
    CHECK(std::abs(t.at(0, 0) - std::numbers::pi / 2) < 1e-6);
}

TEST_CASE("coeffs roundtrips a synthetic table") {
    TempDir d;
    const auto in = d.file("in.json", kA12);
    const auto r = run({"coeffs", "--kernel", "synthetic", "--table", in, "--nmax", "3", "--samples", "16"});
    REQUIRE(r.code == 0);
    const auto t = loopform::io::coefficients_from_json(Json::parse(r.out));
    CHECK(std::abs(t.at(1, 2) - 1.0) < 1e-12);
    CHECK(std::abs(t.at(0, 0)) < 1e-12);
}

TEST_CASE("pair single-term synthetic case") {
    TempDir d;
    const auto table = d.file("a.json", kA12);
    const auto f1 = d.file("f1.json", kIdentity);
    const auto f2 = d.file("f2.json", kIdentityZ);
    const auto r = run({"pair", "--table", table, "--f1", f1, "--f2", f2});
    REQUIRE(r.code == 0);
    const auto j = Json::parse(r.out);
    CHECK(j.at("value").get<double>() == doctest::Approx(78.9568).epsilon(1e-6));
    CHECK(j.at("method") == "series");

    const auto both = run({"pair", "--kernel", "synthetic", "--table", table, "--f1", f1, "--f2", f2, "--method",
                           "both"});
    REQUIRE(both.code == 0);
    CHECK(Json::parse(both.out).at("deviation").get<double>() <= 1e-10);
}

TEST_CASE("pair on the torus with both methods") {
    TempDir d;
    const auto f = d.file("f.json", kInverse);
    const auto r = run({"pair", "--kernel", "torus", "--tau", "0,1", "--f1", f, "--f2", f, "--method", "both",
                        "--nmax", "4", "--samples", "32"});
    REQUIRE(r.code == 0);
    const auto j = Json::parse(r.out);
    const double want = 2 * std::pow(std::numbers::pi, 3);
    CHECK(std::abs(j.at("series").at("value").get<double>() - want) / want < 1e-5);
    CHECK(std::abs(j.at("quadrature").at("value").get<double>() - want) / want < 1e-5);
    CHECK(std::abs(j.at("swapped").at("value").get<double>() - want) / want < 1e-5);
}

TEST_CASE("pair input errors exit with 2") {
    TempDir d;
    const auto good = d.file("f.json", kInverse);
    const auto bad = d.file("bad.json", R"({"rank":1,"coeffs":[[[[1,0]]]]})");
    const auto rank2 = d.file("r2.json", kIdentity);
    auto r = run({"pair", "--kernel", "sphere", "--f1", bad, "--f2", good});
    CHECK(r.code == 2);
    CHECK(r.err.find("'lead'") != std::string::npos);
    r = run({"pair", "--kernel", "sphere", "--f1", good, "--f2", rank2});
    CHECK(r.code == 2);
    CHECK(r.err.find("rank mismatch") != std::string::npos);
    CHECK(run({"pair", "--kernel", "sphere", "--f1", good, "--f2", good, "--method", "magic"}).code == 2);
    CHECK(run({"pair", "--kernel", "sphere", "--f1", good}).code == 2);
    CHECK(run({"pair", "--kernel", "torus", "--tau", "1", "--f1", good, "--f2", good}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
}

TEST_CASE("reduce") {
    TempDir d;
    const auto f = d.file("f.json", kInverse);
    const auto c = d.file("c.json", R"({"rank":1,"lead":0,"coeffs":[[[[2,1]]]]})");

    auto r = run({"reduce", "--kernel", "torus", "--f1", c});
    REQUIRE(r.code == 0);
    for (const auto& m : Json::parse(r.out).at("phi")) CHECK(std::hypot(m[0][0][0].get<double>(), m[0][0][1].get<double>()) < 1e-6);

    r = run({"reduce", "--kernel", "torus", "--tau", "0,1", "--f1", f, "--bump", "0.3,0.6", "--bump2", "0.2,0.8"});
    REQUIRE(r.code == 0);
    CHECK(Json::parse(r.out).at("bump_difference").get<double>() <= 1e-6);

    CHECK(run({"reduce", "--kernel", "torus", "--f1", f, "--center", "0.4,0"}).code == 2);
    CHECK(run({"reduce", "--kernel", "plane", "--f1", f}).code == 2);
    CHECK(run({"reduce", "--kernel", "torus", "--f1", f, "--bump", "0.6,0.3"}).code == 2);
}

TEST_CASE("verify") {
    auto r = run({"verify", "moments"});
    CHECK(r.code == 0);
    CHECK(r.out.find("PASS") != std::string::npos);
    r = run({"verify", "torus-const", "--tau", "0,1"});
    CHECK(r.code == 0);
    r = run({"verify", "moments", "--tol", "1e-30"});
    CHECK(r.code == 1);
    CHECK(r.out.find("FAIL") != std::string::npos);
    CHECK(run({"verify", "nonsense"}).code == 2);
}

TEST_CASE("identical runs write identical files") {
    TempDir d;
    const auto a = d.file("a.json");
    const auto b = d.file("b.json");
    CHECK(run({"verify", "oracle", "--cases", "5", "--seed", "3", "--out", a}).code == 0);
    CHECK(run({"verify", "oracle", "--cases", "5", "--seed", "3", "--out", b}).code == 0);
    CHECK(slurp(a) == slurp(b));
    CHECK(run({"coeffs", "--kernel", "torus", "--nmax", "3", "--samples", "16", "--out", a}).code == 0);
    CHECK(run({"coeffs", "--kernel", "torus", "--nmax", "3", "--samples", "16", "--out", b}).code == 0);
    CHECK(slurp(a) == slurp(b));
}
