#pragma once

#include "paving/rational.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace paving {

/// Ordered list of variable names shared by all polynomials of one chart.
using VariableSet = std::shared_ptr<const std::vector<std::string>>;

VariableSet make_variables(std::vector<std::string> names);

/// Sparse multivariate polynomial over Q. Zero coefficients are never stored.
class MultiPoly {
public:
    using Exponents = std::vector<int>;

    MultiPoly() = default;
    explicit MultiPoly(VariableSet vars) : vars_(std::move(vars)) {}

    static MultiPoly constant(VariableSet vars, const Rational& c);
    static MultiPoly variable(VariableSet vars, int index);
    static MultiPoly variable(VariableSet vars, const std::string& name);

    const VariableSet& variables() const { return vars_; }
    std::size_t nvars() const { return vars_ ? vars_->size() : 0; }
    int index_of(const std::string& name) const;

    const std::map<Exponents, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    /// Constant term (the coefficient of the empty monomial).
    Rational constant_term() const;
    bool involves(int var) const;
    int degree_in(int var) const;
    std::vector<int> support() const;

    /// Writes p = coeff * x_var + rest with neither part involving x_var.
    /// Empty when x_var appears with degree other than 1.
    struct Linear;
    std::optional<Linear> as_linear_in(int var) const;

    /// Replaces x_var by `value` everywhere.
    MultiPoly substitute(int var, const MultiPoly& value) const;

    /// Evaluates with every variable bound to an element of F_q.
    std::uint32_t eval_mod(const std::vector<std::uint32_t>& point, std::uint32_t q) const;

    MultiPoly& operator+=(const MultiPoly& o);
    MultiPoly& operator-=(const MultiPoly& o);
    MultiPoly& operator*=(const Rational& c);
    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
    friend MultiPoly operator*(MultiPoly a, const Rational& c) { return a *= c; }
    MultiPoly operator-() const { return *this * Rational(-1); }
    friend bool operator==(const MultiPoly& a, const MultiPoly& b) { return a.terms_ == b.terms_; }

    std::string to_string() const;

private:
    void add_term(const Exponents& e, const Rational& c);
    void check_compatible(const MultiPoly& o) const;
    MultiPoly pow(int k) const;

    VariableSet vars_;
    std::map<Exponents, Rational> terms_;
};

struct MultiPoly::Linear {
    MultiPoly coeff;
    MultiPoly rest;
};

}  // namespace paving
