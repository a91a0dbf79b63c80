#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <Eigen/Core>

#include <cstdint>
#include <iosfwd>
#include <string>

namespace paving {

/// Arbitrary-precision integer.
using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                             boost::multiprecision::et_off>;

/// Exact rational number in lowest terms with a positive denominator.
///
/// A thin value wrapper over Boost's cpp_rational. The wrapper exists because
/// the Boost number type has a catch-all converting constructor that Eigen's
/// expression templates trip over during overload resolution.
class Rational {
public:
    using Impl = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend,
                                               boost::multiprecision::et_off>;

    Rational() = default;
    Rational(int n) : v_(n) {}  // NOLINT(google-explicit-constructor)
    Rational(long n) : v_(n) {}  // NOLINT(google-explicit-constructor)
    Rational(long long n) : v_(n) {}  // NOLINT(google-explicit-constructor)
    Rational(const BigInt& n) : v_(n) {}  // NOLINT(google-explicit-constructor)
    Rational(const BigInt& num, const BigInt& den);
    Rational(long long num, long long den) : Rational(BigInt(num), BigInt(den)) {}

    BigInt numerator() const { return boost::multiprecision::numerator(v_); }
    BigInt denominator() const { return boost::multiprecision::denominator(v_); }
    bool is_integer() const { return denominator() == 1; }
    int sign() const { return v_.sign(); }
    std::string str() const { return v_.str(); }

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    Rational operator-() const {
        Rational r;
        r.v_ = -v_;
        return r;
    }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

private:
    Impl v_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

inline bool is_zero(const Rational& r) { return r.sign() == 0; }
inline bool is_integer(const Rational& r) { return r.is_integer(); }
inline BigInt numerator_of(const Rational& r) { return r.numerator(); }
inline BigInt denominator_of(const Rational& r) { return r.denominator(); }
inline std::string to_string(const Rational& r) { return r.str(); }
inline std::string to_string(const BigInt& n) { return n.str(); }

}  // namespace paving

namespace Eigen {
template <>
struct NumTraits<paving::Rational> : GenericNumTraits<paving::Rational> {
    using Real = paving::Rational;
    using NonInteger = paving::Rational;
    using Literal = paving::Rational;
    using Nested = paving::Rational;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 4,
        AddCost = 16,
        MulCost = 32
    };
    static paving::Rational epsilon() { return 0; }
    static paving::Rational dummy_precision() { return 0; }
    static int digits10() { return 0; }
};
}  // namespace Eigen
