#include "paving/fq.hpp"

#include <ostream>

namespace paving {

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

Fq::Fq(std::int64_t value, std::uint32_t modulus) : modulus_(modulus) {
    if (modulus == 0) throw std::invalid_argument("Fq: modulus must be positive");
    const auto q = static_cast<std::int64_t>(modulus);
    value_ = ((value % q) + q) % q;
}

std::uint32_t Fq::reduced(std::uint32_t q) const {
    const auto m = static_cast<std::int64_t>(q);
    return static_cast<std::uint32_t>(((value_ % m) + m) % m);
}

std::uint32_t Fq::value() const {
    if (!bound()) {
        if (value_ < 0) throw std::logic_error("Fq: unbound negative constant has no canonical value");
        return static_cast<std::uint32_t>(value_);
    }
    return static_cast<std::uint32_t>(value_);
}

bool Fq::is_zero() const { return value_ == 0; }

std::uint32_t Fq::common_modulus(const Fq& a, const Fq& b) {
    if (a.bound() && b.bound() && a.modulus_ != b.modulus_)
        throw std::invalid_argument("Fq: mixing elements of different fields");
    return a.bound() ? a.modulus_ : b.modulus_;
}

Fq& Fq::operator+=(const Fq& o) {
    const auto q = common_modulus(*this, o);
    if (q == 0) {
        value_ += o.value_;
        return *this;
    }
    *this = Fq(static_cast<std::int64_t>(reduced(q)) + o.reduced(q), q);
    return *this;
}

Fq& Fq::operator-=(const Fq& o) {
    const auto q = common_modulus(*this, o);
    if (q == 0) {
        value_ -= o.value_;
        return *this;
    }
    *this = Fq(static_cast<std::int64_t>(reduced(q)) - o.reduced(q), q);
    return *this;
}

Fq& Fq::operator*=(const Fq& o) {
    const auto q = common_modulus(*this, o);
    if (q == 0) {
        value_ *= o.value_;
        return *this;
    }
    *this = Fq(static_cast<std::int64_t>(reduced(q)) * o.reduced(q), q);
    return *this;
}

Fq Fq::operator-() const {
    if (!bound()) return Fq(static_cast<int>(-value_));
    return Fq(-value_, modulus_);
}

Fq Fq::inverse() const {
    if (!bound()) {
        if (value_ == 1 || value_ == -1) return *this;
        throw std::domain_error("Fq: cannot invert an unbound constant other than +-1");
    }
    if (value_ == 0) throw std::domain_error("Fq: division by zero");
    // Fermat: x^(q-2)
    std::uint64_t base = static_cast<std::uint64_t>(value_), result = 1, e = modulus_ - 2;
    while (e > 0) {
        if (e & 1U) result = result * base % modulus_;
        base = base * base % modulus_;
        e >>= 1U;
    }
    return Fq(static_cast<std::int64_t>(result), modulus_);
}

bool operator==(const Fq& a, const Fq& b) {
    const auto q = Fq::common_modulus(a, b);
    if (q == 0) return a.value_ == b.value_;
    return a.reduced(q) == b.reduced(q);
}

std::ostream& operator<<(std::ostream& os, const Fq& x) {
    if (x.bound()) return os << x.value();
    return os << x.value_ << "?";
}

}  // namespace paving
