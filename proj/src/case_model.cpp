#include "paving/case_model.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace paving {

std::string to_string(CaseId id) { return id == CaseId::E7a4 ? "E7a4" : "E7a5"; }

CaseId parse_case(std::string_view name) {
    std::string s(name);
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char ch) { return std::tolower(ch); });
    if (s == "e7a4" || s == "a4" || s == "e7(a4)") return CaseId::E7a4;
    if (s == "e7a5" || s == "a5" || s == "e7(a5)") return CaseId::E7a5;
    throw std::invalid_argument("unknown case '" + std::string(name) + "' (expected E7a4 or E7a5)");
}

char block_name(Block b) { return b == Block::A ? 'A' : b == Block::B ? 'B' : 'C'; }

const CaseModel& CaseModel::get(CaseId id) {
    static const CaseModel a4(CaseId::E7a4);
    static const CaseModel a5(CaseId::E7a5);
    return id == CaseId::E7a4 ? a4 : a5;
}

CaseModel::CaseModel(CaseId id) : id_(id) {
    if (id == CaseId::E7a4) {
        nA_ = 2, nB_ = 2, nC_ = 3, has_v_ = true;
        // h = ((1,1), (0,1,0), [[l,0],[m,l],[0,m]]) = l S + m T
        pencil_[0] = Matrix<Rational>::Zero(3, 2);
        pencil_[0](0, 0) = 1, pencil_[0](1, 1) = 1;
        pencil_[1] = Matrix<Rational>::Zero(3, 2);
        pencil_[1](1, 0) = 1, pencil_[1](2, 1) = 1;
        u0_ = Vector<Rational>::Constant(2, Rational(1));
        v0_ = Vector<Rational>::Zero(3);
        v0_(1) = 1;
    } else {
        nA_ = 2, nB_ = 3, nC_ = 3, has_v_ = false;
        // Q_{l,m} = diag(l, l+m, m), v0 = e1+e2+e3
        pencil_[0] = Matrix<Rational>::Zero(3, 3);
        pencil_[0](0, 0) = 1, pencil_[0](1, 1) = 1;
        pencil_[1] = Matrix<Rational>::Zero(3, 3);
        pencil_[1](1, 1) = 1, pencil_[1](2, 2) = 1;
        u0_ = Vector<Rational>::Constant(3, Rational(1));
        v0_ = Vector<Rational>(0);
    }
    q_offset_ = nB_ + (has_v_ ? nC_ : 0);
    g2_dim_ = q_offset_ + 2 * nB_ * nC_;

    for (Block bl : {Block::A, Block::B, Block::C}) {
        const int n = block_dim(bl);
        for (int i = 0; i + 1 < n; ++i) {
            cartan_.push_back(elementary_operator(bl, i, i) - elementary_operator(bl, i + 1, i + 1));
            std::string label{block_name(bl)};
            label += std::to_string(i + 1);
            negative_.push_back({label, bl, i + 1, i, elementary_operator(bl, i + 1, i)});
        }
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                std::string label{block_name(bl)};
                label += "+" + std::to_string(p + 1) + std::to_string(q + 1);
                positive_.push_back({label, bl, p, q, elementary_operator(bl, p, q)});
            }
        }
    }
    // torus directions act diagonally on g2
    for (int k = 0; k < torus_rank(); ++k) {
        G0Element z = zero_element();
        z.torus[static_cast<std::size_t>(k)] = 1;
        Matrix<Rational> m(g2_dim_, g2_dim_);
        for (Index j = 0; j < g2_dim_; ++j) {
            Vector<Rational> e = Vector<Rational>::Zero(g2_dim_);
            e(j) = 1;
            m.col(j) = act(z, e);
        }
        cartan_.push_back(m);
    }
    for (const auto& z : g0_basis()) {
        Matrix<Rational> m(g2_dim_, g2_dim_);
        for (Index j = 0; j < g2_dim_; ++j) {
            Vector<Rational> e = Vector<Rational>::Zero(g2_dim_);
            e(j) = 1;
            m.col(j) = act(z, e);
        }
        g0_ops_.push_back(std::move(m));
    }
}

int CaseModel::block_dim(Block b) const { return b == Block::A ? nA_ : b == Block::B ? nB_ : nC_; }

Index CaseModel::g0_dim() const {
    return (nA_ * nA_ - 1) + (nB_ * nB_ - 1) + (nC_ * nC_ - 1) + torus_rank();
}

Index CaseModel::borel_dim() const {
    auto b = [](int n) { return n * (n + 1) / 2 - 1; };
    return b(nA_) + b(nB_) + b(nC_) + torus_rank();
}

int CaseModel::flag_dim() const {
    auto f = [](int n) { return n * (n - 1) / 2; };
    return f(nA_) + f(nB_) + f(nC_);
}

Index CaseModel::v_index(int c) const {
    if (!has_v_) throw std::logic_error("v_index: case has no V_C summand");
    return nB_ + c;
}

std::string CaseModel::coordinate_name(Index i) const {
    if (i < nB_) return "u" + std::to_string(i + 1);
    if (has_v_ && i < nB_ + nC_) return "v" + std::to_string(i - nB_ + 1);
    const Index t = i - q_offset_;
    const Index a = t / (nB_ * nC_), b = (t / nC_) % nB_, c = t % nC_;
    return "Q[" + std::to_string(a + 1) + "," + std::to_string(b + 1) + "," + std::to_string(c + 1) + "]";
}

GlTriple<Rational> CaseModel::psi(const G0Element& z) const {
    if (static_cast<int>(z.torus.size()) != torus_rank())
        throw std::invalid_argument("psi: wrong number of torus coordinates");
    auto id = [](int n) { return identity<Rational>(n); };
    const Rational& x = z.torus[0];
    const Rational& y = z.torus[1];
    GlTriple<Rational> t;
    if (has_v_) {
        const Rational& w = z.torus[2];
        t.a = z.a + id(nA_) * (w - x - y);
        t.b = z.b + id(nB_) * x;
        t.c = z.c + id(nC_) * y;
    } else {
        t.a = z.a + id(nA_) * (y - x);
        t.b = z.b + id(nB_) * x;
        t.c = z.c;
    }
    return t;
}

G0Element CaseModel::zero_element() const {
    return {Matrix<Rational>::Zero(nA_, nA_), Matrix<Rational>::Zero(nB_, nB_), Matrix<Rational>::Zero(nC_, nC_),
            std::vector<Rational>(static_cast<std::size_t>(torus_rank()), Rational(0))};
}

std::vector<G0Element> CaseModel::g0_basis() const {
    std::vector<G0Element> out;
    for (Block bl : {Block::A, Block::B, Block::C}) {
        const int n = block_dim(bl);
        auto slot = [&](G0Element& z) -> Matrix<Rational>& { return bl == Block::A ? z.a : bl == Block::B ? z.b : z.c; };
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                if (i == j) continue;
                G0Element z = zero_element();
                slot(z)(i, j) = 1;
                out.push_back(std::move(z));
            }
        }
        for (int i = 0; i + 1 < n; ++i) {
            G0Element z = zero_element();
            slot(z)(i, i) = 1;
            slot(z)(i + 1, i + 1) = -1;
            out.push_back(std::move(z));
        }
    }
    for (int k = 0; k < torus_rank(); ++k) {
        G0Element z = zero_element();
        z.torus[static_cast<std::size_t>(k)] = 1;
        out.push_back(std::move(z));
    }
    return out;
}

Matrix<Rational> CaseModel::elementary_operator(Block block, int p, int q) const {
    GlTriple<Rational> t{Matrix<Rational>::Zero(nA_, nA_), Matrix<Rational>::Zero(nB_, nB_),
                         Matrix<Rational>::Zero(nC_, nC_)};
    (block == Block::A ? t.a : block == Block::B ? t.b : t.c)(p, q) = 1;
    Matrix<Rational> m(g2_dim_, g2_dim_);
    for (Index j = 0; j < g2_dim_; ++j) {
        Vector<Rational> e = Vector<Rational>::Zero(g2_dim_);
        e(j) = 1;
        m.col(j) = act_gl(t, e);
    }
    return m;
}

const Generator& CaseModel::negative_simple(const std::string& label) const {
    for (const auto& g : negative_)
        if (g.label == label) return g;
    throw std::invalid_argument("unknown simple root label " + label);
}

std::vector<std::string> CaseModel::simple_root_labels() const {
    std::vector<std::string> out;
    for (const auto& g : negative_) out.push_back(g.label);
    return out;
}

Matrix<Rational> CaseModel::flag_action(Block block, int p, int q) const {
    const int n = block_dim(block);
    Matrix<Rational> m = Matrix<Rational>::Zero(n, n);
    if (block == Block::C)
        m(q, p) = 1;  // e_p . E_pq = e_q for row vectors
    else
        m(p, q) = 1;
    return m;
}

bool CaseModel::preserves_flag(Block block, int p, int q) const {
    const int n = block_dim(block);
    const Matrix<Rational> m = flag_action(block, p, q);
    auto level = [&](int i) { return block == Block::A ? level_A(i) : block == Block::B ? level_B(i) : level_C(i); };
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i)
            if (!is_zero(m(i, j)) && level(i) > level(j)) return false;
    return true;
}

std::string CaseModel::describe_json() const {
    using nlohmann::json;
    auto mat = [](const Matrix<Rational>& m) {
        json rows = json::array();
        for (Index i = 0; i < m.rows(); ++i) {
            json r = json::array();
            for (Index j = 0; j < m.cols(); ++j) r.push_back(m(i, j).str());
            rows.push_back(r);
        }
        return rows;
    };
    json j;
    j["schema_version"] = 1;
    j["case"] = name();
    j["dims"] = {{"A", nA_}, {"B", nB_}, {"C", nC_}};
    j["g0_dim"] = g0_dim();
    j["g2_dim"] = g2_dim_;
    j["borel_dim"] = borel_dim();
    j["flag_dim"] = flag_dim();
    json coords = json::array();
    for (Index i = 0; i < g2_dim_; ++i) coords.push_back(coordinate_name(i));
    j["coordinates"] = coords;
    const auto h = base_point<Rational>();
    json hp = json::array();
    for (Index i = 0; i < h.size(); ++i) hp.push_back(h(i).str());
    j["base_point"] = hp;
    j["flags"] = {{"A", "standard"}, {"B", "standard"}, {"C", "reverse"}};
    json gens = json::array();
    auto add = [&](const Generator& g, const char* kind) {
        gens.push_back({{"label", g.label},
                        {"kind", kind},
                        {"block", std::string(1, block_name(g.block))},
                        {"p", g.p + 1},
                        {"q", g.q + 1},
                        {"matrix", mat(g.op)}});
    };
    for (const auto& g : positive_) add(g, "positive");
    for (const auto& g : negative_) add(g, "negative_simple");
    j["generators"] = gens;
    return j.dump(2);
}

}  // namespace paving
