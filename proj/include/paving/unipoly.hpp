#pragma once

#include "paving/rational.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace paving {

/// Univariate polynomial with exact rational coefficients, lowest degree first.
class UniPoly {
public:
    UniPoly() = default;
    explicit UniPoly(std::vector<Rational> coeffs);

    static UniPoly constant(const Rational& c) { return UniPoly({c}); }
    static UniPoly monomial(int degree, const Rational& c = 1);

    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    Rational coefficient(int i) const;
    const std::vector<Rational>& coefficients() const { return coeffs_; }
    Rational leading() const { return is_zero() ? Rational(0) : coeffs_.back(); }

    Rational operator()(const Rational& x) const;

    bool has_nonnegative_integer_coefficients() const;

    UniPoly& operator+=(const UniPoly& o);
    UniPoly& operator-=(const UniPoly& o);
    friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
    friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
    friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
    friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.coeffs_ == b.coeffs_; }

    /// e.g. "q^3 + 2q^2 + 1"
    std::string to_string(const std::string& var = "q") const;

private:
    void trim();
    std::vector<Rational> coeffs_;
};

struct Sample {
    std::int64_t x;
    std::int64_t y;
};

/// The unique polynomial of degree < samples.size() through all samples.
/// Throws std::invalid_argument on an empty list or a repeated abscissa.
UniPoly lagrange_interpolate(std::span<const Sample> samples);

}  // namespace paving
