#include "loopform/series.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace loopform {

Complex ipow(Complex z, int exponent) {
    const bool invert = exponent < 0;
    unsigned int e = static_cast<unsigned int>(invert ? -static_cast<long>(exponent) : exponent);
    Complex result = 1.0;
    Complex base = z;
    while (e != 0) {
        if (e & 1u) result *= base;
        base *= base;
        e >>= 1u;
    }
    return invert ? 1.0 / result : result;
}

MatrixLaurentSeries MatrixLaurentSeries::make(int rank, int lead, std::vector<ComplexMatrix> coeffs) {
    if (rank < 1) throw std::invalid_argument("series rank must be >= 1, got " + std::to_string(rank));
    if (coeffs.empty()) throw std::invalid_argument("series coefficient list is empty");
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (coeffs[i].rows() != rank || coeffs[i].cols() != rank) {
            throw std::invalid_argument("series coefficient " + std::to_string(i) + " has shape " +
                                        std::to_string(coeffs[i].rows()) + "x" +
                                        std::to_string(coeffs[i].cols()) + ", expected " +
                                        std::to_string(rank) + "x" + std::to_string(rank));
        }
    }

    auto nonzero = [](const ComplexMatrix& m) { return !(m.array() == Complex(0.0)).all(); };
    auto first = std::find_if(coeffs.begin(), coeffs.end(), nonzero);
    if (first == coeffs.end()) return zero(rank);
    auto last = std::find_if(coeffs.rbegin(), coeffs.rend(), nonzero).base();

    const int new_lead = lead + static_cast<int>(first - coeffs.begin());
    std::vector<ComplexMatrix> trimmed(std::make_move_iterator(first), std::make_move_iterator(last));
    return MatrixLaurentSeries(rank, new_lead, std::move(trimmed), false);
}

MatrixLaurentSeries MatrixLaurentSeries::zero(int rank) {
    if (rank < 1) throw std::invalid_argument("series rank must be >= 1, got " + std::to_string(rank));
    return MatrixLaurentSeries(rank, 0, {ComplexMatrix::Zero(rank, rank)}, true);
}

MatrixLaurentSeries MatrixLaurentSeries::monomial(int rank, int exponent, Complex c) {
    if (rank < 1) throw std::invalid_argument("series rank must be >= 1, got " + std::to_string(rank));
    ComplexMatrix m = ComplexMatrix::Identity(rank, rank) * c;
    return make(rank, exponent, {std::move(m)});
}

ComplexMatrix MatrixLaurentSeries::coefficient(int r) const {
    if (zero_ || r < lead_ || r > last()) return ComplexMatrix::Zero(rank_, rank_);
    return coeffs_[static_cast<std::size_t>(r - lead_)];
}

ComplexMatrix MatrixLaurentSeries::evaluate(Complex z) const {
    if (z == Complex(0.0) && lead_ < 0) {
        throw std::domain_error("cannot evaluate a series with a pole (lead " + std::to_string(lead_) +
                                ") at z = 0");
    }
    // Horner on the polynomial part, then shift by z^lead.
    ComplexMatrix acc = ComplexMatrix::Zero(rank_, rank_);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc = acc * z + *it;
    }
    return acc * ipow(z, lead_);
}

int MatrixLaurentSeries::max_abs_exponent() const noexcept {
    if (zero_) return 0;
    return std::max(std::abs(lead_), std::abs(last()));
}

double MatrixLaurentSeries::max_coefficient_norm() const {
    double best = 0.0;
    for (const auto& c : coeffs_) best = std::max(best, c.norm());
    return best;
}

MatrixLaurentSeries MatrixLaurentSeries::operator+(const MatrixLaurentSeries& other) const {
    if (other.rank_ != rank_) {
        throw std::invalid_argument("cannot add series of rank " + std::to_string(rank_) + " and " +
                                    std::to_string(other.rank_));
    }
    if (zero_) return other;
    if (other.zero_) return *this;
    const int lo = std::min(lead_, other.lead_);
    const int hi = std::max(last(), other.last());
    std::vector<ComplexMatrix> sum;
    sum.reserve(static_cast<std::size_t>(hi - lo + 1));
    for (int r = lo; r <= hi; ++r) sum.push_back(coefficient(r) + other.coefficient(r));
    return make(rank_, lo, std::move(sum));
}

MatrixLaurentSeries MatrixLaurentSeries::operator*(Complex c) const {
    std::vector<ComplexMatrix> scaled;
    scaled.reserve(coeffs_.size());
    for (const auto& m : coeffs_) scaled.push_back(m * c);
    return make(rank_, lead_, std::move(scaled));
}

Complex trace_pair(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != a.cols()) {
        throw std::invalid_argument("trace_pair rank mismatch: " + std::to_string(a.rows()) + "x" +
                                    std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                                    std::to_string(b.cols()));
    }
    // tr(A^* B) = sum_ij conj(a_ij) b_ij
    return (a.array().conjugate() * b.array()).sum();
}

}  // namespace loopform
