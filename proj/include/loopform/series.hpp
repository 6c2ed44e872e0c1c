#ifndef LOOPFORM_SERIES_HPP
#define LOOPFORM_SERIES_HPP

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace loopform {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

/// Integer power of a complex number by repeated squaring; negative
/// exponents invert the result.
Complex ipow(Complex z, int exponent);

/// Finite window of a matrix-valued Laurent series
///
///     f(z) = sum_{r = lead}^{lead + size - 1} f_r z^r
///
/// with square complex coefficients of a common rank. Instances are always
/// canonical: zero coefficients are trimmed from both ends, and the zero
/// series is stored as a single zero matrix at lead 0. Interior zeros are
/// kept.
class MatrixLaurentSeries {
public:
    /// Throws std::invalid_argument on an empty list, rank < 1 or a
    /// coefficient whose shape differs from rank x rank.
    static MatrixLaurentSeries make(int rank, int lead, std::vector<ComplexMatrix> coeffs);

    static MatrixLaurentSeries zero(int rank);

    /// c * Identity * z^exponent.
    static MatrixLaurentSeries monomial(int rank, int exponent, Complex c = 1.0);

    int rank() const noexcept { return rank_; }
    int lead() const noexcept { return lead_; }
    /// Highest stored exponent.
    int last() const noexcept { return lead_ + static_cast<int>(coeffs_.size()) - 1; }
    std::size_t size() const noexcept { return coeffs_.size(); }
    bool is_zero() const noexcept { return zero_; }
    const std::vector<ComplexMatrix>& coeffs() const noexcept { return coeffs_; }

    /// f_r, or the zero matrix outside the stored window.
    ComplexMatrix coefficient(int r) const;

    /// Throws std::domain_error at z = 0 when lead < 0.
    ComplexMatrix evaluate(Complex z) const;

    /// max |r| over stored exponents.
    int max_abs_exponent() const noexcept;

    /// max_r of the Frobenius norm of f_r.
    double max_coefficient_norm() const;

    MatrixLaurentSeries operator+(const MatrixLaurentSeries& other) const;
    MatrixLaurentSeries operator*(Complex c) const;

private:
    MatrixLaurentSeries(int rank, int lead, std::vector<ComplexMatrix> coeffs, bool zero)
        : rank_(rank), lead_(lead), coeffs_(std::move(coeffs)), zero_(zero) {}

    int rank_;
    int lead_;
    std::vector<ComplexMatrix> coeffs_;
    bool zero_;
};

inline MatrixLaurentSeries make_series(int rank, int lead, std::vector<ComplexMatrix> coeffs) {
    return MatrixLaurentSeries::make(rank, lead, std::move(coeffs));
}

inline ComplexMatrix coefficient(const MatrixLaurentSeries& f, int r) { return f.coefficient(r); }

inline ComplexMatrix evaluate(const MatrixLaurentSeries& f, Complex z) { return f.evaluate(z); }

/// tr(A^* B) with A^* the conjugate transpose. Throws std::invalid_argument
/// when the shapes differ.
Complex trace_pair(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace loopform

#endif  // LOOPFORM_SERIES_HPP
