#ifndef LOOPFORM_CLI_HPP
#define LOOPFORM_CLI_HPP

#include <cstdint>
#include <iosfwd>

namespace loopform::cli {

/// Numeric defaults shared by every subcommand. Each one has a flag.
struct Defaults {
    static constexpr double radius = 0.35;          // --radius, extraction circles
    static constexpr double contour_radius = 1.0;   // --contour-radius, quadrature circles
    static constexpr int samples = 256;             // --samples
    static constexpr int nodes = 512;               // --nodes
    static constexpr int nmax = 16;                 // --nmax / --mmax
    static constexpr double bump_r0 = 0.3;          // --bump r0,r1
    static constexpr double bump_r1 = 0.6;
    static constexpr int bump_order = 2;            // --order
    static constexpr double half_width = 0.12;      // --half-width
    static constexpr int grid = 9;                  // --grid
    static constexpr std::uint64_t seed = 7;        // --seed
    static constexpr int cases = 100;               // --cases
};

/// Exit codes: 0 success, 1 numeric failure or failing check, 2 bad input.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace loopform::cli

#endif  // LOOPFORM_CLI_HPP
