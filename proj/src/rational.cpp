#include "paving/rational.hpp"

#include <ostream>
#include <stdexcept>

namespace paving {

Rational::Rational(const BigInt& num, const BigInt& den) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    if (den < 0)
        v_ = Impl(BigInt(-num), BigInt(-den));
    else
        v_ = Impl(num, den);
}

Rational& Rational::operator/=(const Rational& o) {
    if (is_zero(o)) throw std::domain_error("Rational: division by zero");
    v_ /= o.v_;
    return *this;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace paving
