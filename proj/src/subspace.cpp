#include "paving/subspace.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <random>
#include <sstream>
#include <stdexcept>

namespace paving {

namespace {

std::string digits(const std::vector<int>& v) {
    std::string s;
    for (int x : v) s += std::to_string(x);
    return s;
}

std::vector<int> parse_group(const std::string& g, std::size_t n) {
    std::vector<int> out;
    for (char ch : g) {
        if (ch == ',' || ch == ' ') continue;
        if (ch < '0' || ch > '9') throw std::invalid_argument("bad digit in subspace label: " + g);
        out.push_back(ch - '0');
    }
    if (n != 0 && out.size() != n) throw std::invalid_argument("wrong group length in subspace label: " + g);
    return out;
}

bool weakly_decreasing(const std::vector<int>& v) {
    for (std::size_t i = 0; i + 1 < v.size(); ++i)
        if (v[i] < v[i + 1]) return false;
    return true;
}

}  // namespace

std::string SubspaceParams::label() const {
    std::string s = digits(k) + "|" + digits(h) + "|" + std::to_string(l);
    if (m >= 0) s += "|" + std::to_string(m);
    return s;
}

SubspaceParams SubspaceParams::parse(CaseId id, const std::string& text) {
    const auto& model = CaseModel::get(id);
    std::vector<std::string> groups;
    std::stringstream ss(text);
    for (std::string g; std::getline(ss, g, '|');) groups.push_back(g);
    const std::size_t want = model.has_v() ? 4 : 3;
    if (groups.size() != want)
        throw std::invalid_argument("subspace label '" + text + "' needs " + std::to_string(want) + " groups");
    SubspaceParams p;
    p.id = id;
    p.k = parse_group(groups[0], static_cast<std::size_t>(model.dim_B()));
    p.h = parse_group(groups[1], static_cast<std::size_t>(model.dim_B()));
    p.l = parse_group(groups[2], 1)[0];
    p.m = model.has_v() ? parse_group(groups[3], 1)[0] : -1;
    if (!p.valid()) throw std::invalid_argument("subspace label '" + text + "' violates the parameter constraints");
    return p;
}

bool SubspaceParams::valid() const {
    const auto& model = CaseModel::get(id);
    const auto n = static_cast<std::size_t>(model.dim_B());
    if (k.size() != n || h.size() != n) return false;
    if (!weakly_decreasing(k) || !weakly_decreasing(h)) return false;
    for (std::size_t i = 0; i < n; ++i)
        if (k[i] < 0 || h[i] > model.dim_C() || k[i] > h[i]) return false;
    if (l < 0 || l > model.dim_B()) return false;
    if (model.has_v() ? (m < 0 || m > model.dim_C()) : m != -1) return false;
    return true;
}

bool operator<(const SubspaceParams& a, const SubspaceParams& b) {
    return std::tie(a.id, a.k, a.h, a.l, a.m) < std::tie(b.id, b.k, b.h, b.l, b.m);
}

std::ostream& operator<<(std::ostream& os, const SubspaceParams& p) { return os << p.label(); }

Matrix<Rational> condition_system(const CaseModel& model, const SubspaceParams& p) {
    const int nB = model.dim_B(), nC = model.dim_C();
    std::vector<Index> zero;
    for (int b = 0; b < nB; ++b)
        if (model.level_B(b) > p.l) zero.push_back(model.u_index(b));
    if (model.has_v())
        for (int c = 0; c < nC; ++c)
            if (model.level_C(c) > p.m) zero.push_back(model.v_index(c));
    // q(F_A^1 x F_B^i x F_C^{h_i}) = 0 and q(V_A x F_B^i x F_C^{k_i}) = 0
    for (int i = 1; i <= nB; ++i) {
        const int hi = p.h[static_cast<std::size_t>(i - 1)], ki = p.k[static_cast<std::size_t>(i - 1)];
        for (int a = 0; a < model.dim_A(); ++a)
            for (int b = 0; b < nB; ++b)
                for (int c = 0; c < nC; ++c) {
                    if (model.level_B(b) > i) continue;
                    const bool in_h = model.level_A(a) <= 1 && model.level_C(c) <= hi;
                    const bool in_k = model.level_C(c) <= ki;
                    if (in_h || in_k) zero.push_back(model.q_index(a, b, c));
                }
    }
    std::sort(zero.begin(), zero.end());
    zero.erase(std::unique(zero.begin(), zero.end()), zero.end());
    Matrix<Rational> sys = Matrix<Rational>::Zero(static_cast<Index>(zero.size()), model.g2_dim());
    for (std::size_t r = 0; r < zero.size(); ++r) sys(static_cast<Index>(r), zero[r]) = 1;
    return sys;
}

std::vector<SubspaceParams> enumerate_params(CaseId id) {
    const auto& model = CaseModel::get(id);
    const int n = model.dim_B(), top = model.dim_C();
    std::vector<std::vector<int>> seqs;
    std::function<void(std::vector<int>&)> rec = [&](std::vector<int>& cur) {
        if (static_cast<int>(cur.size()) == n) {
            seqs.push_back(cur);
            return;
        }
        const int hi = cur.empty() ? top : cur.back();
        for (int x = hi; x >= 0; --x) {
            cur.push_back(x);
            rec(cur);
            cur.pop_back();
        }
    };
    std::vector<int> cur;
    rec(cur);
    std::reverse(seqs.begin(), seqs.end());  // lexicographically increasing

    std::vector<SubspaceParams> out;
    std::vector<Span<Rational>> seen;
    for (const auto& k : seqs) {
        for (const auto& h : seqs) {
            bool ok = true;
            for (int i = 0; i < n; ++i) ok = ok && k[static_cast<std::size_t>(i)] <= h[static_cast<std::size_t>(i)];
            if (!ok) continue;
            for (int l = 0; l <= n; ++l) {
                const int mmax = model.has_v() ? model.dim_C() : -1;
                for (int m = model.has_v() ? 0 : -1; m <= mmax; ++m) {
                    SubspaceParams p{id, k, h, l, m};
                    // dedupe by the realized subspace
                    const auto kernel = kernel_basis(condition_system(model, p));
                    const auto span = kernel.empty() ? Span<Rational>(model.g2_dim())
                                                     : Span<Rational>::from_vectors(kernel, model.g2_dim());
                    if (std::find(seen.begin(), seen.end(), span) != seen.end()) continue;
                    seen.push_back(span);
                    out.push_back(std::move(p));
                }
            }
        }
    }
    return out;
}

bool Subspace::contains_root(const std::string& label) const {
    return std::find(parabolic_type.begin(), parabolic_type.end(), label) != parabolic_type.end();
}

bool is_borel_stable(const CaseModel& model, const Span<Rational>& u) {
    for (const auto& g : model.positive_generators())
        if (!u.contains(image(g.op, u))) return false;
    for (const auto& op : model.cartan_operators())
        if (!u.contains(image(op, u))) return false;
    return true;
}

std::vector<std::string> parabolic_type(const CaseModel& model, const Span<Rational>& u) {
    std::vector<std::string> out;
    for (const auto& g : model.negative_simple_generators())
        if (u.contains(image(g.op, u))) out.push_back(g.label);
    return out;
}

int levi_positive_roots(const CaseModel& model, const std::vector<std::string>& type) {
    // Each block is of type A_{n-1}; a run of r consecutive simple roots
    // spans r(r+1)/2 positive roots.
    int total = 0;
    for (Block bl : {Block::A, Block::B, Block::C}) {
        const int n = bl == Block::A ? model.dim_A() : bl == Block::B ? model.dim_B() : model.dim_C();
        int run = 0;
        for (int i = 1; i < n; ++i) {
            const std::string label = std::string(1, block_name(bl)) + std::to_string(i);
            if (std::find(type.begin(), type.end(), label) != type.end()) {
                ++run;
            } else {
                total += run * (run + 1) / 2;
                run = 0;
            }
        }
        total += run * (run + 1) / 2;
    }
    return total;
}

Subspace subspace_basis(const CaseModel& model, const SubspaceParams& p) {
    if (!p.valid()) throw std::invalid_argument("subspace_basis: invalid parameters " + p.label());
    const auto kernel = kernel_basis(condition_system(model, p));
    Subspace s;
    s.params = p;
    s.space = kernel.empty() ? Span<Rational>(model.g2_dim()) : Span<Rational>::from_vectors(kernel, model.g2_dim());
    s.parabolic_type = parabolic_type(model, s.space);
    s.levi_positive = levi_positive_roots(model, s.parabolic_type);
    return s;
}

bool in_open_orbit(const CaseModel& model, const Vector<Rational>& u) {
    constexpr std::uint32_t screen_prime = 1000003;
    const Index full = model.g2_dim();
    bool reducible = true;
    Vector<Fq> uq(u.size());
    for (Index i = 0; i < u.size(); ++i) {
        if (denominator_of(u(i)) % screen_prime == 0) {
            reducible = false;
            break;
        }
        uq(i) = from_rational<Fq>(u(i), screen_prime);
    }
    // rank can only drop modulo p
    if (reducible && model.stabilizer_rank(uq) == full) return true;
    return exact_rank(model.orbit_map(u)) == full;
}

namespace {

// Sparse integer form of the g0 operators: (row, col, coefficient) triples.
struct IntOps {
    std::vector<std::vector<std::array<long long, 3>>> ops;
};

const IntOps& int_ops(const CaseModel& model) {
    static const auto build = [](const CaseModel& m) {
        IntOps out;
        for (const auto& op : m.g0_operators()) {
            std::vector<std::array<long long, 3>> t;
            for (Index i = 0; i < op.rows(); ++i)
                for (Index j = 0; j < op.cols(); ++j)
                    if (!is_zero(op(i, j))) t.push_back({i, j, static_cast<long long>(op(i, j).numerator())});
            out.ops.push_back(std::move(t));
        }
        return out;
    };
    static const IntOps a4 = build(CaseModel::get(CaseId::E7a4));
    static const IntOps a5 = build(CaseModel::get(CaseId::E7a5));
    return model.id() == CaseId::E7a4 ? a4 : a5;
}

// Full rank modulo a prime certifies full rank over Q.
bool certified_open(const CaseModel& model, const std::vector<long long>& x) {
    constexpr std::uint64_t p = 2147483629;  // prime below 2^31
    const auto& ops = int_ops(model).ops;
    const Index rows = model.g2_dim(), cols = static_cast<Index>(ops.size());
    std::vector<std::uint64_t> a(static_cast<std::size_t>(rows * cols), 0);
    for (Index j = 0; j < cols; ++j) {
        for (const auto& [r, c, v] : ops[static_cast<std::size_t>(j)]) {
            const long long term = v * x[static_cast<std::size_t>(c)];
            auto& cell = a[static_cast<std::size_t>(r * cols + j)];
            cell = (cell + static_cast<std::uint64_t>(((term % static_cast<long long>(p)) + static_cast<long long>(p)))) % p;
        }
    }
    return rank_mod_p(std::move(a), rows, cols, p) == rows;
}

}  // namespace

bool meets_open_orbit(const CaseModel& model, const Subspace& u, const OrbitSearch& opts) {
    if (u.dim() == 0) return false;
    std::seed_seq seq{static_cast<std::uint32_t>(opts.seed), static_cast<std::uint32_t>(opts.seed >> 32),
                      static_cast<std::uint32_t>(std::hash<std::string>{}(u.params.label()))};
    std::mt19937_64 rng(seq);
    std::uniform_int_distribution<int> coef(-opts.height, opts.height);
    // U is spanned by coordinate vectors, so a random point is a random
    // integer assignment to its pivot coordinates. A point only counts once
    // its orbit map has full rank modulo a large prime, which is a proof of
    // full rank over Q.
    const auto& basis = u.space.basis();
    for (int t = 0; t < opts.trials; ++t) {
        std::vector<long long> x(static_cast<std::size_t>(model.g2_dim()), 0);
        for (Index i = 0; i < basis.rows(); ++i) {
            const int c = coef(rng);
            for (Index j = 0; j < basis.cols(); ++j)
                if (!is_zero(basis(i, j))) x[static_cast<std::size_t>(j)] += c * static_cast<long long>(basis(i, j).numerator());
        }
        if (certified_open(model, x)) return true;
    }
    return false;
}

ExpectedDims expected_dims(const CaseModel& model, const Subspace& u, bool nonempty) {
    if (!nonempty) throw std::domain_error("expected_dims: not applicable, X_U is empty for " + u.params.label());
    const int dim_x = static_cast<int>(u.dim() - model.borel_dim());
    return {dim_x, dim_x - u.levi_positive};
}

std::vector<InventoryEntry> build_inventory(CaseId id, const OrbitSearch& opts) {
    const auto& model = CaseModel::get(id);
    std::vector<InventoryEntry> out;
    for (const auto& p : enumerate_params(id)) {
        InventoryEntry e;
        e.subspace = subspace_basis(model, p);
        e.nonempty = meets_open_orbit(model, e.subspace, opts);
        if (e.nonempty) e.dims = expected_dims(model, e.subspace, true);
        out.push_back(std::move(e));
    }
    return out;
}

std::string inventory_csv(const std::vector<InventoryEntry>& inventory) {
    std::ostringstream os;
    os << "params,dim_u,dim_x,dim_y,parabolic_type,empty\n";
    for (const auto& e : inventory) {
        std::string type;
        for (const auto& t : e.subspace.parabolic_type) type += (type.empty() ? "" : " ") + t;
        os << e.subspace.params.label() << ',' << e.subspace.dim() << ',';
        if (e.dims)
            os << e.dims->dim_x << ',' << e.dims->dim_y;
        else
            os << ',';
        os << ',' << type << ',' << (e.nonempty ? "no" : "yes") << '\n';
    }
    return os.str();
}

}  // namespace paving
