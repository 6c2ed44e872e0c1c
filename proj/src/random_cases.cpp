#include "loopform/random_cases.hpp"

#include <algorithm>

namespace loopform {

namespace {

int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

}  // namespace

Complex random_complex(Rng& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const double re = u(rng);
    const double im = u(rng);
    return {re, im};
}

ComplexMatrix random_matrix(Rng& rng, int rank) {
    ComplexMatrix m(rank, rank);
    for (int i = 0; i < rank; ++i)
        for (int j = 0; j < rank; ++j) m(i, j) = random_complex(rng);
    return m;
}

KernelCoefficients random_synthetic_table(Rng& rng, int degree) {
    ComplexMatrix t = ComplexMatrix::Zero(degree + 1, degree + 1);
    for (int n = 0; n <= degree; ++n)
        for (int m = 0; m + n <= degree; ++m) t(n, m) = random_complex(rng);
    return make_coefficients(0, 0, std::move(t));
}

MatrixLaurentSeries random_series(Rng& rng, int rank, int lead, int last) {
    std::vector<ComplexMatrix> coeffs;
    for (int r = lead; r <= last; ++r) coeffs.push_back(random_matrix(rng, rank));
    return MatrixLaurentSeries::make(rank, lead, std::move(coeffs));
}

OracleCase random_oracle_case(Rng& rng) {
    const int degree = uniform_int(rng, 0, 8);
    const int rank = uniform_int(rng, 1, 4);
    auto table = random_synthetic_table(rng, degree);
    auto make = [&] {
        const int lead = uniform_int(rng, -4, degree - 1);
        const int last = uniform_int(rng, std::max(lead, -1), 8);
        return random_series(rng, rank, lead, last);
    };
    auto f1 = make();
    auto f2 = make();
    return {std::move(table), std::move(f1), std::move(f2)};
}

}  // namespace loopform
