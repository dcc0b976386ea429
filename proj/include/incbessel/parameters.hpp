#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace incbessel {

/// Raised when (x, y, nu) lies outside the domain where the tail integral
/// int_1^inf exp(-x t - y/t) t^(-nu-1) dt is defined.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Arguments of the incomplete Bessel function K_nu(x, y).
template <class Real>
struct BasicParameters {
    Real x{};
    Real y{};
    Real nu{};

    template <class Other>
    [[nodiscard]] BasicParameters<Other> as() const {
        return {static_cast<Other>(x), static_cast<Other>(y), static_cast<Other>(nu)};
    }
};

using Parameters = BasicParameters<double>;

/// Throws DomainError unless x > 0, y >= 0 and all fields are finite.
template <class Real>
void validate(const BasicParameters<Real>& p) {
    using std::isfinite;
    if (!isfinite(p.x) || !isfinite(p.y) || !isfinite(p.nu))
        throw DomainError("parameters must be finite");
    if (!(p.x > 0))
        throw DomainError("x must be positive, got x = " + std::to_string(static_cast<double>(p.x)));
    if (!(p.y >= 0))
        throw DomainError("y must be non-negative, got y = " + std::to_string(static_cast<double>(p.y)));
}

}  // namespace incbessel
