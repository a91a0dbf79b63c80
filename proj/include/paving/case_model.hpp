#pragma once

#include "paving/matrix.hpp"

#include <array>
#include <string>
#include <string_view>
#include <vector>

namespace paving {

enum class CaseId { E7a4, E7a5 };

std::string to_string(CaseId id);
/// Accepts "E7a4"/"E7a5" (case-insensitive, also "a4"/"a5").
CaseId parse_case(std::string_view name);
inline constexpr std::array<CaseId, 2> all_cases{CaseId::E7a4, CaseId::E7a5};

/// The three vector spaces of a case. g0 acts on each through a gl block.
enum class Block { A, B, C };
char block_name(Block b);

/// An element of g0: traceless parts a, b, c plus the torus scalars
/// (x, y, z) for E7a4 and (x, y) for E7a5.
struct G0Element {
    Matrix<Rational> a, b, c;
    std::vector<Rational> torus;
};

/// The image of a g0 element in gl(V_A) + gl(V_B) + gl(V_C).
template <class K>
struct GlTriple {
    Matrix<K> a, b, c;
};

/// Elementary operator E_pq of one gl block, together with its matrix on g2.
struct Generator {
    std::string label;
    Block block;
    int p, q;
    Matrix<Rational> op;
};

/// One of the two prehomogeneous setups.
///
/// Coordinates on g2: the V_B part u, then (E7a4 only) the V_C part v, then
/// the tensor Q indexed (a, b, c). Q is read as the pencil of nC x nB
/// matrices Q[a] with rows indexed by V_C and columns by V_B.
///
/// Infinitesimal action of a gl triple (Y, X, Z) on (u, v, Q):
///   u -> X u,  v -> v Z,  Q[a] -> sum_a' Y(a', a) Q[a'] + Q[a] X + Z Q[a].
/// Flags: standard on V_A and V_B, reverse on V_C (F_C^1 = <e3>).
class CaseModel {
public:
    static const CaseModel& get(CaseId id);

    CaseId id() const { return id_; }
    std::string name() const { return to_string(id_); }
    int dim_A() const { return nA_; }
    int dim_B() const { return nB_; }
    int dim_C() const { return nC_; }
    bool has_v() const { return has_v_; }

    Index g2_dim() const { return g2_dim_; }
    Index g0_dim() const;
    /// Dimension of the Borel subgroup B0 (12 / 14).
    Index borel_dim() const;
    /// Dimension of the flag variety G0/B0 (5 / 7).
    int flag_dim() const;
    int torus_rank() const { return has_v_ ? 3 : 2; }

    Index u_index(int b) const { return b; }
    Index v_index(int c) const;
    Index q_index(int a, int b, int c) const { return q_offset_ + (a * nB_ + b) * nC_ + c; }

    /// Human-readable name of a coordinate, e.g. "u1", "v2", "Q[1,2,3]" (1-based).
    std::string coordinate_name(Index i) const;

    /// Position of e_i in the case's flag: V_A, V_B standard, V_C reversed.
    int level_A(int a) const { return a + 1; }
    int level_B(int b) const { return b + 1; }
    int level_C(int c) const { return nC_ - c; }

    /// The pencil Q[a] of the base point as an nC x nB integer matrix.
    const Matrix<Rational>& pencil(int a) const { return pencil_[static_cast<std::size_t>(a)]; }
    const Vector<Rational>& u0() const { return u0_; }
    const Vector<Rational>& v0() const { return v0_; }

    template <class K>
    Vector<K> base_point(std::uint32_t q = 0) const;

    GlTriple<Rational> psi(const G0Element& z) const;

    /// Action of a gl triple on g2.
    template <class K>
    Vector<K> act_gl(const GlTriple<K>& t, const Vector<K>& v) const;

    /// Action of a g0 element on g2.
    template <class K>
    Vector<K> act(const G0Element& z, const Vector<K>& v) const;

    /// sl bases of the three blocks followed by the torus units.
    std::vector<G0Element> g0_basis() const;
    G0Element zero_element() const;

    /// Matrices on g2 of the g0_basis elements, in the same order.
    const std::vector<Matrix<Rational>>& g0_operators() const { return g0_ops_; }

    /// g2 x g0 matrix of Z -> Z.v in the g0_basis.
    template <class K>
    Matrix<K> orbit_map(const Vector<K>& v) const;

    template <class K>
    Index stabilizer_rank(const Vector<K>& v) const {
        return rank(orbit_map(v));
    }

    /// E_pq of one block acting on g2.
    Matrix<Rational> elementary_operator(Block block, int p, int q) const;

    /// Cartan part of the Borel: diagonal differences and torus directions.
    const std::vector<Matrix<Rational>>& cartan_operators() const { return cartan_; }
    /// E_pq with p < q in every block.
    const std::vector<Generator>& positive_generators() const { return positive_; }
    /// E_{p+1,p} in every block, labelled A1, B1, B2, C1, C2.
    const std::vector<Generator>& negative_simple_generators() const { return negative_; }
    const Generator& negative_simple(const std::string& label) const;
    std::vector<std::string> simple_root_labels() const;

    /// Matrix of E_pq on the space of block `block` in the flag convention
    /// (column action on V_A, V_B; row action on V_C, written as a column map).
    Matrix<Rational> flag_action(Block block, int p, int q) const;
    /// True iff E_pq maps every standard (V_C: reverse) flag step into itself.
    bool preserves_flag(Block block, int p, int q) const;

    /// Versioned JSON description (dims, base point, generator matrices).
    std::string describe_json() const;

private:
    explicit CaseModel(CaseId id);
    int block_dim(Block b) const;

    CaseId id_;
    int nA_, nB_, nC_;
    bool has_v_;
    Index q_offset_, g2_dim_;
    std::array<Matrix<Rational>, 2> pencil_;
    Vector<Rational> u0_, v0_;
    std::vector<Matrix<Rational>> cartan_;
    std::vector<Generator> positive_, negative_;
    std::vector<Matrix<Rational>> g0_ops_;
};

template <class K>
Vector<K> CaseModel::base_point(std::uint32_t q) const {
    Vector<K> h = Vector<K>::Zero(g2_dim_);
    for (int b = 0; b < nB_; ++b) h(u_index(b)) = from_rational<K>(u0_(b), q);
    if (has_v_)
        for (int c = 0; c < nC_; ++c) h(v_index(c)) = from_rational<K>(v0_(c), q);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < nB_; ++b)
            for (int c = 0; c < nC_; ++c) h(q_index(a, b, c)) = from_rational<K>(pencil_[a](c, b), q);
    if constexpr (std::is_same_v<K, Fq>) {
        if (q != 0)
            for (Index i = 0; i < h.size(); ++i)
                if (!h(i).bound()) h(i) = Fq(0, q);
    }
    return h;
}

template <class K>
Vector<K> CaseModel::act_gl(const GlTriple<K>& t, const Vector<K>& v) const {
    if (v.size() != g2_dim_) throw std::invalid_argument("act: vector length does not match the case");
    Vector<K> out = Vector<K>::Zero(g2_dim_);
    auto nz = [](const K& x) { return !is_zero(x); };
    // u -> X u
    for (int i = 0; i < nB_; ++i)
        for (int j = 0; j < nB_; ++j)
            if (nz(t.b(i, j)) && nz(v(u_index(j)))) out(u_index(i)) += t.b(i, j) * v(u_index(j));
    // v -> v Z
    if (has_v_)
        for (int i = 0; i < nC_; ++i)
            for (int j = 0; j < nC_; ++j)
                if (nz(v(v_index(i))) && nz(t.c(i, j))) out(v_index(j)) += v(v_index(i)) * t.c(i, j);
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < nB_; ++b) {
            for (int c = 0; c < nC_; ++c) {
                K acc = out(q_index(a, b, c));
                for (int a2 = 0; a2 < 2; ++a2)
                    if (nz(t.a(a2, a)) && nz(v(q_index(a2, b, c)))) acc += t.a(a2, a) * v(q_index(a2, b, c));
                for (int b2 = 0; b2 < nB_; ++b2)  // (Q[a] X)(c, b)
                    if (nz(v(q_index(a, b2, c))) && nz(t.b(b2, b))) acc += v(q_index(a, b2, c)) * t.b(b2, b);
                for (int c2 = 0; c2 < nC_; ++c2)  // (Z Q[a])(c, b)
                    if (nz(t.c(c, c2)) && nz(v(q_index(a, b, c2)))) acc += t.c(c, c2) * v(q_index(a, b, c2));
                out(q_index(a, b, c)) = acc;
            }
        }
    }
    return out;
}

template <class K>
Vector<K> CaseModel::act(const G0Element& z, const Vector<K>& v) const {
    const auto t = psi(z);
    const std::uint32_t q = field_modulus(v);
    return act_gl(GlTriple<K>{convert_matrix<K>(t.a, q), convert_matrix<K>(t.b, q), convert_matrix<K>(t.c, q)}, v);
}

template <class K>
Matrix<K> CaseModel::orbit_map(const Vector<K>& v) const {
    const auto basis = g0_basis();
    Matrix<K> m(g2_dim_, static_cast<Index>(basis.size()));
    for (std::size_t j = 0; j < basis.size(); ++j) m.col(static_cast<Index>(j)) = act(basis[j], v);
    return m;
}

}  // namespace paving
