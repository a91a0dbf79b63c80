#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <iosfwd>
#include <stdexcept>

namespace paving {

bool is_prime(std::uint64_t n);

/// Element of the prime field F_q.
///
/// A modulus of 0 marks an integer constant that has not been bound to a field
/// yet; Eigen materializes Scalar(0) and Scalar(1) this way. Such constants
/// adopt the modulus of the first bound operand they meet.
class Fq {
public:
    Fq() = default;
    Fq(int constant) : value_(constant), modulus_(0) {}  // NOLINT(google-explicit-constructor)
    Fq(std::int64_t value, std::uint32_t modulus);

    std::uint32_t value() const;
    std::uint32_t modulus() const { return modulus_; }
    bool bound() const { return modulus_ != 0; }
    bool is_zero() const;

    Fq inverse() const;

    Fq& operator+=(const Fq& o);
    Fq& operator-=(const Fq& o);
    Fq& operator*=(const Fq& o);
    Fq& operator/=(const Fq& o) { return *this *= o.inverse(); }

    friend Fq operator+(Fq a, const Fq& b) { return a += b; }
    friend Fq operator-(Fq a, const Fq& b) { return a -= b; }
    friend Fq operator*(Fq a, const Fq& b) { return a *= b; }
    friend Fq operator/(Fq a, const Fq& b) { return a /= b; }
    Fq operator-() const;

    friend bool operator==(const Fq& a, const Fq& b);
    friend bool operator!=(const Fq& a, const Fq& b) { return !(a == b); }
    friend std::ostream& operator<<(std::ostream& os, const Fq& x);

private:
    static std::uint32_t common_modulus(const Fq& a, const Fq& b);
    std::uint32_t reduced(std::uint32_t q) const;

    std::int64_t value_ = 0;
    std::uint32_t modulus_ = 0;
};

std::ostream& operator<<(std::ostream& os, const Fq& x);

inline bool is_zero(const Fq& x) { return x.is_zero(); }

}  // namespace paving

namespace Eigen {
template <>
struct NumTraits<paving::Fq> : GenericNumTraits<paving::Fq> {
    using Real = paving::Fq;
    using NonInteger = paving::Fq;
    using Literal = paving::Fq;
    using Nested = paving::Fq;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 1,
        AddCost = 2,
        MulCost = 4
    };
    static paving::Fq epsilon() { return 0; }
    static paving::Fq dummy_precision() { return 0; }
    static int digits10() { return 0; }
};
}  // namespace Eigen
