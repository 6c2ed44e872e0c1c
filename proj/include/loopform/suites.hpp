#ifndef LOOPFORM_SUITES_HPP
#define LOOPFORM_SUITES_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "loopform/series.hpp"

namespace loopform {

struct CheckResult {
    std::string name;
    double measured = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct SuiteConfig {
    Complex tau{0.0, 1.0};
    int cases = 100;
    std::uint64_t seed = 7;
    int nodes = 512;
    int samples = 256;
    int nmax = 16;
    double radius = 0.35;
    /// Replaces every check tolerance of the suite when set.
    std::optional<double> tolerance;
};

/// moments, oracle, roundtrip, sphere-null, torus-const, laplace,
/// reproducing, reduce, bilinear.
const std::vector<std::string_view>& suite_names();

/// Runs one named suite ("all" runs every suite). Throws
/// std::invalid_argument on an unknown name.
std::vector<CheckResult> run_suite(std::string_view name, const SuiteConfig& config);

}  // namespace loopform

#endif  // LOOPFORM_SUITES_HPP
