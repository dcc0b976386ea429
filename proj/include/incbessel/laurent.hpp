#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

namespace incbessel {

/// Finite sum  sum_k coeffs[k] * t^(min_power + k)  over consecutive integer
/// powers of t. Kept trimmed: first and last coefficients are nonzero, and the
/// zero polynomial has no coefficients.
template <class Real>
class LaurentPolynomial {
public:
    LaurentPolynomial() = default;

    LaurentPolynomial(int min_power, std::vector<Real> coeffs) : min_power_(min_power), coeffs_(std::move(coeffs)) {
        trim();
    }

    static LaurentPolynomial constant(Real c) { return LaurentPolynomial(0, {c}); }
    static LaurentPolynomial monomial(Real c, int power) { return LaurentPolynomial(power, {c}); }

    [[nodiscard]] bool is_zero() const { return coeffs_.empty(); }
    [[nodiscard]] int min_power() const { return min_power_; }
    [[nodiscard]] int max_power() const { return min_power_ + static_cast<int>(coeffs_.size()) - 1; }
    /// max_power - min_power; 0 for a monomial and for the zero polynomial.
    [[nodiscard]] int span() const { return is_zero() ? 0 : max_power() - min_power(); }
    [[nodiscard]] const std::vector<Real>& coeffs() const { return coeffs_; }

    /// Coefficient of t^power (zero outside the stored range).
    [[nodiscard]] Real coeff(int power) const {
        const int k = power - min_power_;
        if (k < 0 || k >= static_cast<int>(coeffs_.size())) return Real(0);
        return coeffs_[static_cast<std::size_t>(k)];
    }

    [[nodiscard]] Real evaluate(Real t) const {
        using std::pow;
        // Horner in t, then the t^min_power factor.
        Real acc(0);
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
        return min_power_ == 0 ? acc : acc * pow(t, static_cast<Real>(min_power_));
    }

    [[nodiscard]] LaurentPolynomial derivative() const {
        if (is_zero()) return {};
        std::vector<Real> d(coeffs_.size());
        for (std::size_t k = 0; k < coeffs_.size(); ++k) d[k] = static_cast<Real>(min_power_ + static_cast<int>(k)) * coeffs_[k];
        return LaurentPolynomial(min_power_ - 1, std::move(d));
    }

    /// Multiplication by t^k.
    [[nodiscard]] LaurentPolynomial shifted(int k) const {
        if (is_zero()) return {};
        return LaurentPolynomial(min_power_ + k, coeffs_);
    }

    [[nodiscard]] bool all_finite() const {
        using std::isfinite;
        return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Real& c) { return isfinite(c); });
    }

    friend LaurentPolynomial operator+(const LaurentPolynomial& a, const LaurentPolynomial& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        const int lo = std::min(a.min_power(), b.min_power());
        const int hi = std::max(a.max_power(), b.max_power());
        std::vector<Real> c(static_cast<std::size_t>(hi - lo + 1));
        for (int p = lo; p <= hi; ++p) c[static_cast<std::size_t>(p - lo)] = a.coeff(p) + b.coeff(p);
        return LaurentPolynomial(lo, std::move(c));
    }

    friend LaurentPolynomial operator*(const LaurentPolynomial& a, const LaurentPolynomial& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Real> c(a.coeffs_.size() + b.coeffs_.size() - 1, Real(0));
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
        return LaurentPolynomial(a.min_power_ + b.min_power_, std::move(c));
    }

    friend bool operator==(const LaurentPolynomial& a, const LaurentPolynomial& b) {
        return a.min_power_ == b.min_power_ && a.coeffs_ == b.coeffs_;
    }

private:
    void trim() {
        std::size_t first = 0;
        while (first < coeffs_.size() && coeffs_[first] == Real(0)) ++first;
        if (first == coeffs_.size()) {
            coeffs_.clear();
            min_power_ = 0;
            return;
        }
        std::size_t last = coeffs_.size();
        while (coeffs_[last - 1] == Real(0)) --last;
        coeffs_ = std::vector<Real>(coeffs_.begin() + static_cast<std::ptrdiff_t>(first),
                                    coeffs_.begin() + static_cast<std::ptrdiff_t>(last));
        min_power_ += static_cast<int>(first);
    }

    int min_power_ = 0;
    std::vector<Real> coeffs_;
};

}  // namespace incbessel
