#ifndef LOOPFORM_RANDOM_CASES_HPP
#define LOOPFORM_RANDOM_CASES_HPP

#include <random>

#include "loopform/kernel_coefficients.hpp"
#include "loopform/series.hpp"

namespace loopform {

using Rng = std::mt19937_64;

/// Uniform in the square [-1, 1] x [-1, 1].
Complex random_complex(Rng& rng);

ComplexMatrix random_matrix(Rng& rng, int rank);

/// Exact synthetic table of total degree <= degree: a_{n,m} random for
/// n, m >= 0 with n + m <= degree, zero elsewhere in the [0, degree]^2 window.
KernelCoefficients random_synthetic_table(Rng& rng, int degree);

/// Dense random series on exponents [lead, last].
MatrixLaurentSeries random_series(Rng& rng, int rank, int lead, int last);

struct OracleCase {
    KernelCoefficients table;
    MatrixLaurentSeries f1;
    MatrixLaurentSeries f2;
};

/// Synthetic kernel of degree <= 8, rank in [1, 4], series exponents in
/// [-4, 8]. Each series window overlaps the exponents [-1, degree - 1] the
/// table can reach, so the pairing is generically nonzero.
OracleCase random_oracle_case(Rng& rng);

}  // namespace loopform

#endif  // LOOPFORM_RANDOM_CASES_HPP
