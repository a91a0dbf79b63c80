#include "paving/multipoly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace paving {

VariableSet make_variables(std::vector<std::string> names) {
    return std::make_shared<const std::vector<std::string>>(std::move(names));
}

MultiPoly MultiPoly::constant(VariableSet vars, const Rational& c) {
    MultiPoly p(std::move(vars));
    p.add_term(Exponents(p.nvars(), 0), c);
    return p;
}

MultiPoly MultiPoly::variable(VariableSet vars, int index) {
    MultiPoly p(std::move(vars));
    if (index < 0 || static_cast<std::size_t>(index) >= p.nvars())
        throw std::out_of_range("MultiPoly::variable: bad index");
    Exponents e(p.nvars(), 0);
    e[static_cast<std::size_t>(index)] = 1;
    p.add_term(e, 1);
    return p;
}

MultiPoly MultiPoly::variable(VariableSet vars, const std::string& name) {
    MultiPoly p(vars);
    return variable(std::move(vars), p.index_of(name));
}

int MultiPoly::index_of(const std::string& name) const {
    if (!vars_) throw std::invalid_argument("MultiPoly: no variable set");
    auto it = std::find(vars_->begin(), vars_->end(), name);
    if (it == vars_->end()) throw std::invalid_argument("MultiPoly: unknown variable " + name);
    return static_cast<int>(it - vars_->begin());
}

void MultiPoly::add_term(const Exponents& e, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (inserted) return;
    it->second += c;
    if (it->second == 0) terms_.erase(it);
}

void MultiPoly::check_compatible(const MultiPoly& o) const {
    if (vars_ && o.vars_ && vars_ != o.vars_ && *vars_ != *o.vars_)
        throw std::invalid_argument("MultiPoly: variable sets differ");
}

bool MultiPoly::is_constant() const {
    for (const auto& [e, c] : terms_)
        if (std::any_of(e.begin(), e.end(), [](int k) { return k != 0; })) return false;
    return true;
}

Rational MultiPoly::constant_term() const {
    for (const auto& [e, c] : terms_)
        if (std::all_of(e.begin(), e.end(), [](int k) { return k == 0; })) return c;
    return 0;
}

bool MultiPoly::involves(int var) const { return degree_in(var) > 0; }

int MultiPoly::degree_in(int var) const {
    int d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e[static_cast<std::size_t>(var)]);
    return d;
}

std::vector<int> MultiPoly::support() const {
    std::vector<int> out;
    for (int v = 0; v < static_cast<int>(nvars()); ++v)
        if (involves(v)) out.push_back(v);
    return out;
}

std::optional<MultiPoly::Linear> MultiPoly::as_linear_in(int var) const {
    if (degree_in(var) != 1) return std::nullopt;
    Linear out{MultiPoly(vars_), MultiPoly(vars_)};
    for (const auto& [e, c] : terms_) {
        if (e[static_cast<std::size_t>(var)] == 1) {
            Exponents r = e;
            r[static_cast<std::size_t>(var)] = 0;
            out.coeff.add_term(r, c);
        } else {
            out.rest.add_term(e, c);
        }
    }
    return out;
}

MultiPoly MultiPoly::pow(int k) const {
    MultiPoly out = constant(vars_, 1);
    for (int i = 0; i < k; ++i) out = out * *this;
    return out;
}

MultiPoly MultiPoly::substitute(int var, const MultiPoly& value) const {
    check_compatible(value);
    MultiPoly out(vars_);
    std::map<int, MultiPoly> powers;
    for (const auto& [e, c] : terms_) {
        const int k = e[static_cast<std::size_t>(var)];
        Exponents r = e;
        r[static_cast<std::size_t>(var)] = 0;
        MultiPoly mono(vars_);
        mono.add_term(r, c);
        if (k == 0) {
            out += mono;
            continue;
        }
        auto it = powers.find(k);
        if (it == powers.end()) it = powers.emplace(k, value.pow(k)).first;
        out += mono * it->second;
    }
    return out;
}

std::uint32_t MultiPoly::eval_mod(const std::vector<std::uint32_t>& point, std::uint32_t q) const {
    if (point.size() != nvars()) throw std::invalid_argument("MultiPoly::eval_mod: wrong arity");
    const BigInt mod = q;
    BigInt acc = 0;
    for (const auto& [e, c] : terms_) {
        BigInt num = numerator_of(c) % mod, den = denominator_of(c) % mod;
        if (num < 0) num += mod;
        if (den == 0) throw std::domain_error("MultiPoly::eval_mod: denominator divisible by q");
        // den^(q-2) inverts den in F_q
        BigInt inv = boost::multiprecision::powm(den, mod - 2, mod);
        BigInt term = num * inv % mod;
        for (std::size_t v = 0; v < e.size(); ++v)
            if (e[v] > 0) term = term * boost::multiprecision::powm(BigInt(point[v]), e[v], mod) % mod;
        acc = (acc + term) % mod;
    }
    return static_cast<std::uint32_t>(acc);
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
    check_compatible(o);
    if (!vars_) vars_ = o.vars_;
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
    check_compatible(o);
    if (!vars_) vars_ = o.vars_;
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

MultiPoly& MultiPoly::operator*=(const Rational& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, v] : terms_) v *= c;
    return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    a.check_compatible(b);
    MultiPoly out(a.vars_ ? a.vars_ : b.vars_);
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            MultiPoly::Exponents e(ea.size());
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            out.add_term(e, ca * cb);
        }
    }
    return out;
}

std::string MultiPoly::to_string() const {
    if (terms_.empty()) return "0";
    // Higher total degree first, then the map order reversed so that
    // earlier variables lead.
    std::vector<std::pair<Exponents, Rational>> sorted(terms_.begin(), terms_.end());
    std::stable_sort(sorted.begin(), sorted.end(), [](const auto& x, const auto& y) {
        int dx = 0, dy = 0;
        for (int k : x.first) dx += k;
        for (int k : y.first) dy += k;
        if (dx != dy) return dx > dy;
        return x.first > y.first;
    });
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c0] : sorted) {
        Rational c = c0;
        if (first) {
            if (c < 0) os << "-";
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        if (c < 0) c = -c;
        bool mono = false;
        std::ostringstream m;
        for (std::size_t v = 0; v < e.size(); ++v) {
            if (e[v] == 0) continue;
            if (mono) m << "*";
            m << (*vars_)[v];
            if (e[v] > 1) m << "^" << e[v];
            mono = true;
        }
        if (!mono) {
            os << c.str();
        } else {
            if (c != 1) os << c.str() << "*";
            os << m.str();
        }
        first = false;
    }
    return os.str();
}

}  // namespace paving
