#include "paving/unipoly.hpp"

#include <set>
#include <sstream>
#include <stdexcept>

namespace paving {

UniPoly::UniPoly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

UniPoly UniPoly::monomial(int degree, const Rational& c) {
    std::vector<Rational> v(static_cast<std::size_t>(degree) + 1, Rational(0));
    v.back() = c;
    return UniPoly(std::move(v));
}

void UniPoly::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational UniPoly::coefficient(int i) const {
    if (i < 0 || i > degree()) return 0;
    return coeffs_[static_cast<std::size_t>(i)];
}

Rational UniPoly::operator()(const Rational& x) const {
    Rational acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

bool UniPoly::has_nonnegative_integer_coefficients() const {
    for (const auto& c : coeffs_)
        if (c < 0 || !is_integer(c)) return false;
    return true;
}

UniPoly& UniPoly::operator+=(const UniPoly& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Rational(0));
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    trim();
    return *this;
}

UniPoly& UniPoly::operator-=(const UniPoly& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Rational(0));
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    trim();
    return *this;
}

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> out(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return UniPoly(std::move(out));
}

std::string UniPoly::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        Rational c = coeffs_[static_cast<std::size_t>(i)];
        if (c == 0) continue;
        if (first) {
            if (c < 0) os << "-";
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        if (c < 0) c = -c;
        if (i == 0 || c != 1) os << c.str();
        if (i >= 1) os << var;
        if (i >= 2) os << "^" << i;
        first = false;
    }
    return os.str();
}

UniPoly lagrange_interpolate(std::span<const Sample> samples) {
    if (samples.empty()) throw std::invalid_argument("lagrange_interpolate: no samples");
    std::set<std::int64_t> seen;
    for (const auto& s : samples)
        if (!seen.insert(s.x).second)
            throw std::invalid_argument("lagrange_interpolate: duplicate abscissa " + std::to_string(s.x));

    UniPoly result;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        UniPoly basis = UniPoly::constant(1);
        Rational denom = 1;
        for (std::size_t j = 0; j < samples.size(); ++j) {
            if (j == i) continue;
            basis = basis * UniPoly({Rational(-samples[j].x), Rational(1)});
            denom *= Rational(samples[i].x - samples[j].x);
        }
        result += basis * UniPoly::constant(Rational(samples[i].y) / denom);
    }
    return result;
}

}  // namespace paving
