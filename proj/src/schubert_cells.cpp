#include "paving/schubert_cells.hpp"

#include "pair_kernel.hpp"

#include <algorithm>
#include <mutex>
#include <stdexcept>

namespace paving {

using detail::first_step_containing;
using detail::reduce;
using detail::require_prime;

namespace {

// One factor of a cell: columns of the printed chart, entries "0", "1" or a
// variable name. The completing column is appended by make_part.
struct PartChart {
    std::string word;
    std::vector<std::vector<std::string>> cols;
};

PartChart make_part(std::string word, std::vector<std::vector<std::string>> cols) {
    const auto n = word.size();
    std::vector<std::string> last(n, "0");
    last[static_cast<std::size_t>(word.back() - '1')] = "1";
    if (cols.size() + 1 == n) cols.push_back(std::move(last));
    return {std::move(word), std::move(cols)};
}

const std::vector<PartChart>& a_charts() {
    static const std::vector<PartChart> c{{"12", {{"1", "0"}}}, {"21", {{"lambda", "1"}}}};
    return c;
}

const std::vector<PartChart>& s_charts(CaseId id) {
    static const std::vector<PartChart> a4{make_part("12", {{"1", "0"}}), make_part("21", {{"x", "1"}})};
    static const std::vector<PartChart> a5{
        make_part("123", {{"1", "0", "0"}, {"0", "1", "0"}}),   make_part("132", {{"1", "0", "0"}, {"0", "x2'", "1"}}),
        make_part("213", {{"x1", "1", "0"}, {"1", "0", "0"}}),  make_part("231", {{"x1", "1", "0"}, {"x1'", "0", "1"}}),
        make_part("312", {{"x1", "x2", "1"}, {"1", "0", "0"}}), make_part("321", {{"x1", "x2", "1"}, {"x2'", "1", "0"}})};
    return id == CaseId::E7a4 ? a4 : a5;
}

const std::vector<PartChart>& t_charts() {
    static const std::vector<PartChart> c{
        make_part("123", {{"1", "y2", "y3"}, {"0", "1", "y3'"}}), make_part("132", {{"1", "y2", "y3"}, {"0", "0", "1"}}),
        make_part("213", {{"0", "1", "y3"}, {"1", "0", "y3'"}}), make_part("231", {{"0", "1", "y3"}, {"0", "0", "1"}}),
        make_part("312", {{"0", "0", "1"}, {"1", "y2'", "0"}}),  make_part("321", {{"0", "0", "1"}, {"0", "1", "0"}})};
    return c;
}

bool is_constant_entry(const std::string& e) { return e == "0" || e == "1"; }

void collect_vars(const PartChart& p, std::vector<std::string>& names) {
    for (const auto& col : p.cols)
        for (const auto& e : col)
            if (!is_constant_entry(e) && std::find(names.begin(), names.end(), e) == names.end()) names.push_back(e);
}

MultiPoly entry_poly(const VariableSet& vars, const std::string& e) {
    if (is_constant_entry(e)) return MultiPoly::constant(vars, Rational(e == "1" ? 1 : 0));
    return MultiPoly::variable(vars, e);
}

std::vector<std::vector<MultiPoly>> part_polys(const VariableSet& vars, const PartChart& p) {
    std::vector<std::vector<MultiPoly>> out;
    for (const auto& col : p.cols) {
        std::vector<MultiPoly> v;
        for (const auto& e : col) v.push_back(entry_poly(vars, e));
        out.push_back(std::move(v));
    }
    return out;
}

// All F_q points of one chart factor, as numeric bases.
std::vector<std::vector<FqRow>> part_points(const PartChart& p, int q) {
    std::vector<std::string> names;
    collect_vars(p, names);
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < names.size(); ++i) total *= static_cast<std::uint64_t>(q);
    std::vector<std::vector<FqRow>> out;
    std::vector<int> value(names.size());
    for (std::uint64_t c = 0; c < total; ++c) {
        std::uint64_t x = c;
        for (auto& v : value) {
            v = static_cast<int>(x % static_cast<std::uint64_t>(q));
            x /= static_cast<std::uint64_t>(q);
        }
        std::vector<FqRow> basis;
        for (const auto& col : p.cols) {
            FqRow r;
            for (const auto& e : col) {
                if (is_constant_entry(e))
                    r.push_back(e == "1" ? 1 : 0);
                else
                    r.push_back(value[static_cast<std::size_t>(std::find(names.begin(), names.end(), e) - names.begin())]);
            }
            basis.push_back(std::move(r));
        }
        out.push_back(std::move(basis));
    }
    return out;
}

using CellHistograms = std::map<CellIndex, ProfileHistogram>;

CellHistograms build_cell_histograms(CaseId id, int q) {
    require_prime(q);
    const auto& model = CaseModel::get(id);
    const detail::PairKernel kernel(model, q);
    const FqRow u0 = reduce(model.u0(), q);
    const FqRow v0 = model.has_v() ? reduce(model.v0(), q) : FqRow{};

    struct TPoints {
        std::string word;
        std::vector<std::vector<FqRow>> flags;
        std::vector<int> m_min;
    };
    std::vector<TPoints> tp;
    for (const auto& t : t_charts()) {
        TPoints x{t.word, part_points(t, q), {}};
        for (const auto& f : x.flags) x.m_min.push_back(model.has_v() ? first_step_containing(f, v0, q) : -1);
        tp.push_back(std::move(x));
    }

    CellHistograms out;
    FlagProfile prof;
    prof.H.assign(static_cast<std::size_t>(model.dim_B()), 0);
    prof.K = prof.H;
    for (const auto& s : s_charts(id)) {
        for (const auto& a : a_charts())
            for (const auto& t : tp) out.emplace(CellIndex{a.word, s.word, t.word}, ProfileHistogram(id, q));
        for (const auto& fb : part_points(s, q)) {
            const auto img = kernel.images(fb);
            prof.l_min = first_step_containing(fb, u0, q);
            for (const auto& t : tp)
                for (std::size_t j = 0; j < t.flags.size(); ++j) {
                    prof.m_min = t.m_min[j];
                    kernel.run(img, t.flags[j], prof, detail::LineSet::First, out.at({"12", s.word, t.word}));
                    kernel.run(img, t.flags[j], prof, detail::LineSet::Rest, out.at({"21", s.word, t.word}));
                }
        }
    }
    return out;
}

const CellHistograms& cell_histograms(CaseId id, int q) {
    static std::mutex mutex;
    static std::map<std::pair<CaseId, int>, CellHistograms> cache;
    std::lock_guard lock(mutex);
    auto it = cache.find({id, q});
    if (it == cache.end()) it = cache.emplace(std::pair{id, q}, build_cell_histograms(id, q)).first;
    return it->second;
}

MultiPoly pairing(const Matrix<Rational>& P, const std::vector<MultiPoly>& v, const std::vector<MultiPoly>& w) {
    MultiPoly s(v.front().variables());
    for (Index c = 0; c < P.rows(); ++c)
        for (Index b = 0; b < P.cols(); ++b)
            if (!is_zero(P(c, b))) s += w[static_cast<std::size_t>(c)] * v[static_cast<std::size_t>(b)] * P(c, b);
    return s;
}

MultiPoly det(const std::vector<std::vector<MultiPoly>>& m) {
    const std::size_t n = m.size();
    if (n == 1) return m[0][0];
    MultiPoly s(m[0][0].variables());
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<std::vector<MultiPoly>> minor;
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<MultiPoly> row;
            for (std::size_t c = 0; c < n; ++c)
                if (c != j) row.push_back(m[i][c]);
            minor.push_back(std::move(row));
        }
        const MultiPoly term = m[0][j] * det(minor);
        if (j % 2 == 0)
            s += term;
        else
            s -= term;
    }
    return s;
}

// Minors of size k + 1 of the matrix with columns basis[0..k) and x; they all
// vanish iff x lies in the span of the first k basis vectors.
std::vector<MultiPoly> membership_minors(const std::vector<std::vector<MultiPoly>>& basis, std::size_t k,
                                         const Vector<Rational>& x) {
    const auto n = static_cast<std::size_t>(x.size());
    const VariableSet vars = basis.front().front().variables();
    std::vector<std::vector<MultiPoly>> cols(basis.begin(), basis.begin() + static_cast<std::ptrdiff_t>(k));
    std::vector<MultiPoly> xc;
    for (std::size_t i = 0; i < n; ++i) xc.push_back(MultiPoly::constant(vars, x(static_cast<Index>(i))));
    cols.push_back(std::move(xc));
    std::vector<MultiPoly> out;
    std::vector<bool> pick(n, false);
    std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(k + 1), true);
    do {
        std::vector<std::vector<MultiPoly>> m;
        for (std::size_t r = 0; r < n; ++r) {
            if (!pick[r]) continue;
            std::vector<MultiPoly> row;
            for (const auto& c : cols) row.push_back(c[r]);
            m.push_back(std::move(row));
        }
        out.push_back(det(m));
    } while (std::prev_permutation(pick.begin(), pick.end()));
    return out;
}

void push_equation(std::vector<MultiPoly>& eqs, const MultiPoly& e) {
    if (e.is_zero()) return;
    for (const auto& x : eqs)
        if (x == e || x == -e) return;
    eqs.push_back(e);
}

bool divides(int q, const BigInt& n) { return n % q == 0; }

}  // namespace

std::string CellIndex::label(CaseId id) const {
    return "a=" + a + (id == CaseId::E7a4 ? " b=" : " S=") + s + " T=" + t;
}

FlagPoint CellChart::instantiate(const std::vector<std::uint32_t>& point, int q) const {
    const auto uq = static_cast<std::uint32_t>(q);
    auto eval = [&](const std::vector<MultiPoly>& v) {
        FqRow r;
        for (const auto& e : v) r.push_back(static_cast<int>(e.eval_mod(point, uq)));
        return r;
    };
    FlagPoint f;
    f.line_a = eval(line_a);
    for (const auto& v : flag_b) f.flag_b.push_back(eval(v));
    for (const auto& v : flag_c) f.flag_c.push_back(eval(v));
    return f;
}

std::vector<CellChart> enumerate_cells(CaseId id) {
    std::vector<CellChart> out;
    for (const auto& a : a_charts())
        for (const auto& s : s_charts(id))
            for (const auto& t : t_charts()) {
                std::vector<std::string> names;
                collect_vars(a, names);
                collect_vars(s, names);
                collect_vars(t, names);
                CellChart c;
                c.index = {a.word, s.word, t.word};
                c.vars = make_variables(names);
                c.line_a = part_polys(c.vars, a).front();
                c.flag_b = part_polys(c.vars, s);
                c.flag_c = part_polys(c.vars, t);
                out.push_back(std::move(c));
            }
    return out;
}

const CellChart& find_cell(CaseId id, const CellIndex& index) {
    static const std::vector<CellChart> a4 = enumerate_cells(CaseId::E7a4), a5 = enumerate_cells(CaseId::E7a5);
    for (const auto& c : id == CaseId::E7a4 ? a4 : a5)
        if (c.index == index) return c;
    throw std::invalid_argument("no Schubert cell " + index.label(id));
}

const ProfileHistogram& cell_histogram(CaseId id, const CellIndex& cell, int q) {
    const auto& all = cell_histograms(id, q);
    const auto it = all.find(cell);
    if (it == all.end()) throw std::invalid_argument("no Schubert cell " + cell.label(id));
    return it->second;
}

std::uint64_t count_cell_intersection(CaseId id, const SubspaceParams& p, const CellIndex& cell, int q) {
    return cell_histogram(id, cell, q).count(p);
}

std::vector<MultiPoly> cell_equations(CaseId id, const SubspaceParams& p, const CellChart& chart) {
    const auto& model = CaseModel::get(id);
    const auto& Q0 = model.pencil(0);
    const auto& Q1 = model.pencil(1);
    std::vector<MultiPoly> eqs;
    const auto nB = chart.flag_b.size();
    for (std::size_t i = 0; i < nB; ++i)
        for (std::size_t ip = 0; ip <= i; ++ip) {
            const auto& v = chart.flag_b[ip];
            for (int j = 0; j < p.h[i]; ++j) {
                const auto& w = chart.flag_c[static_cast<std::size_t>(j)];
                push_equation(eqs, chart.line_a[0] * pairing(Q0, v, w) + chart.line_a[1] * pairing(Q1, v, w));
            }
            for (int j = 0; j < p.k[i]; ++j) {
                const auto& w = chart.flag_c[static_cast<std::size_t>(j)];
                push_equation(eqs, pairing(Q0, v, w));
                push_equation(eqs, pairing(Q1, v, w));
            }
        }
    auto contain = [&](const std::vector<std::vector<MultiPoly>>& flag, int step, const Vector<Rational>& x) {
        if (step <= 0)
            push_equation(eqs, MultiPoly::constant(chart.vars, Rational(1)));
        else if (static_cast<std::size_t>(step) < flag.size())
            for (const auto& m : membership_minors(flag, static_cast<std::size_t>(step), x)) push_equation(eqs, m);
    };
    contain(chart.flag_b, p.l, model.u0());
    if (model.has_v()) contain(chart.flag_c, p.m, model.v0());
    return eqs;
}

bool Elimination::valid_mod(int q) const {
    for (const auto& r : pivots)
        if (divides(q, r.numerator()) || divides(q, r.denominator())) return false;
    return true;
}

std::string to_string(Elimination::Outcome o) {
    switch (o) {
        case Elimination::Outcome::Empty: return "empty";
        case Elimination::Outcome::Affine: return "affine";
        case Elimination::Outcome::Unresolved: return "unresolved";
    }
    return "?";
}

namespace {

struct Search {
    const std::vector<std::string>& names;
    int budget;
    /// (x, y) pairs allowed in a change of variables x -> x - y
    std::vector<std::pair<int, int>> shears;
};

Elimination eliminate(Search& st, std::vector<MultiPoly> eqs, std::vector<int> free, int shears_left) {
    Elimination r;
    std::vector<MultiPoly> live;
    for (auto& e : eqs) push_equation(live, e);
    for (const auto& e : live)
        if (e.is_constant()) {
            r.outcome = Elimination::Outcome::Empty;
            r.pivots.push_back(e.constant_term());
            r.trace.push_back(to_string(e.constant_term()) + " = 0: empty");
            return r;
        }
    if (live.empty()) {
        r.outcome = Elimination::Outcome::Affine;
        r.dim = static_cast<int>(free.size());
        return r;
    }
    if (--st.budget < 0) return r;

    std::vector<int> order = free;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return st.names[static_cast<std::size_t>(a)] > st.names[static_cast<std::size_t>(b)];
    });
    for (int var : order)
        for (std::size_t k = 0; k < live.size(); ++k) {
            const auto lin = live[k].as_linear_in(var);
            if (!lin || !lin->coeff.is_constant()) continue;
            const Rational c = lin->coeff.constant_term();
            const MultiPoly value = lin->rest * (Rational(-1) / c);
            std::vector<MultiPoly> next;
            for (std::size_t j = 0; j < live.size(); ++j)
                if (j != k) next.push_back(live[j].substitute(var, value));
            std::vector<int> rest_free;
            for (int f : free)
                if (f != var) rest_free.push_back(f);
            Elimination sub = eliminate(st, std::move(next), std::move(rest_free), shears_left);
            if (sub.outcome == Elimination::Outcome::Unresolved) {
                if (st.budget < 0) return r;
                continue;
            }
            sub.pivots.insert(sub.pivots.begin(), c);
            sub.trace.insert(sub.trace.begin(), st.names[static_cast<std::size_t>(var)] + " = " + value.to_string() +
                                                    "  (from " + live[k].to_string() + " = 0)");
            return sub;
        }

    auto is_free = [&](int v) { return std::find(free.begin(), free.end(), v) != free.end(); };
    for (const auto& [from, by] : shears_left > 0 ? st.shears : std::vector<std::pair<int, int>>{}) {
        if (!is_free(from) || !is_free(by)) continue;
        const VariableSet vars = live.front().variables();
        const MultiPoly shifted = MultiPoly::variable(vars, from) - MultiPoly::variable(vars, by);
        std::vector<MultiPoly> next;
        for (const auto& e : live) next.push_back(e.substitute(from, shifted));
        Elimination sub = eliminate(st, std::move(next), free, shears_left - 1);
        if (sub.outcome != Elimination::Outcome::Unresolved) {
            const auto& a = st.names[static_cast<std::size_t>(from)];
            sub.trace.insert(sub.trace.begin(),
                             "change of variables " + a + " -> " + a + " - " + st.names[static_cast<std::size_t>(by)]);
            return sub;
        }
        if (st.budget < 0) return r;
    }
    r.trace.push_back("no variable occurs linearly with constant coefficient");
    return r;
}

}  // namespace

Elimination symbolic_eliminate(CaseId id, const SubspaceParams& p, const CellChart& chart, int budget) {
    const auto& names = *chart.vars;
    Search st{names, budget, {}};
    // x~1 = x1' + y2 on S_321, generalized to any chart variable
    // of V_B against any of V_C
    for (std::size_t i = 0; i < names.size(); ++i)
        for (std::size_t j = 0; j < names.size(); ++j)
            if (names[i].front() == 'x' && names[j].front() == 'y') st.shears.emplace_back(i, j);
    std::vector<int> free(names.size());
    for (std::size_t i = 0; i < free.size(); ++i) free[i] = static_cast<int>(i);
    auto r = eliminate(st, cell_equations(id, p, chart), free, 2);
    if (r.outcome == Elimination::Outcome::Unresolved && st.budget < 0) r.trace.push_back("node budget exhausted");
    return r;
}

std::string to_string(CellClass c) {
    switch (c) {
        case CellClass::Empty: return "empty";
        case CellClass::Affine: return "affine";
        case CellClass::NotAffine: return "not-affine";
    }
    return "?";
}

namespace {

// d with n = q^d, or -1.
int log_q(std::uint64_t n, int q) {
    if (n == 0) return -1;
    int d = 0;
    while (n % static_cast<std::uint64_t>(q) == 0) {
        n /= static_cast<std::uint64_t>(q);
        ++d;
    }
    return n == 1 ? d : -1;
}

void classify(CellReport& r) {
    bool all_zero = true;
    for (const auto& [q, c] : r.counts) all_zero = all_zero && c == 0;
    if (all_zero) {
        r.cls = CellClass::Empty;
        return;
    }
    for (const auto& [q, c] : r.counts)
        if (c != 0 && log_q(c, q) < 0) {
            r.cls = CellClass::NotAffine;
            r.witness = std::pair{q, c};
            return;
        }
    const auto& [q0, c0] = *r.counts.begin();
    const int d = log_q(c0, q0);
    for (const auto& [q, c] : r.counts)
        if (d < 0 || log_q(c, q) != d) {
            r.cls = CellClass::NotAffine;
            r.witness = std::pair{q, c};
            return;
        }
    r.cls = CellClass::Affine;
    r.affine_dim = d;
}

}  // namespace

std::vector<CellReport> check_affine_paving(CaseId id, const SubspaceParams& p, std::span<const int> primes) {
    std::vector<CellReport> out;
    std::map<int, std::uint64_t> sums;
    for (const auto& chart : enumerate_cells(id)) {
        CellReport r;
        r.index = chart.index;
        r.cell_dim = chart.dim();
        for (int q : primes) {
            r.counts[q] = count_cell_intersection(id, p, chart.index, q);
            sums[q] += r.counts[q];
        }
        classify(r);
        r.elimination = symbolic_eliminate(id, p, chart);
        out.push_back(std::move(r));
    }
    for (int q : primes) {
        const auto total = count_points(id, p, q).count;
        if (sums[q] != total)
            throw std::logic_error("cell counts of " + p.label() + " add up to " + std::to_string(sums[q]) + " but |X_U(F_" +
                                   std::to_string(q) + ")| = " + std::to_string(total));
    }
    return out;
}

std::uint64_t blowup_count(int n, int m, std::uint64_t q) {
    if (m < 0 || m >= n) throw std::invalid_argument("blowup_count needs 0 <= m < n");
    auto pw = [q](int e) {
        std::uint64_t r = 1;
        for (int i = 0; i < e; ++i) r *= q;
        return r;
    };
    std::uint64_t s = pw(n);
    for (int j = 1; j <= n - m - 1; ++j) s += pw(m) * pw(j);
    return s;
}

BlowupReport verify_blowup_case(std::span<const int> primes) {
    const CaseId id = CaseId::E7a5;
    const auto& model = CaseModel::get(id);
    BlowupReport rep;
    rep.params = SubspaceParams::parse(id, "100|200|2");
    const auto& p = rep.params;
    rep.cells_match = true;
    CellReport odd;
    for (int q : primes) {
        BlowupRow row;
        row.q = q;
        row.x = count_points(id, p, q).count;

        // Z_U: (L_A, L_B^1, flag of V_C) with the i = 1 conditions; the
        // remaining conditions only ask v0 in L_B^2.
        const auto P0 = reduce(model.pencil(0), q), P1 = reduce(model.pencil(1), q);
        auto pair = [&](const std::vector<std::vector<int>>& P, const FqRow& v, const FqRow& w) {
            long long s = 0;
            for (std::size_t c = 0; c < w.size(); ++c)
                for (std::size_t b = 0; b < v.size(); ++b) s += static_cast<long long>(w[c]) * P[c][b] * v[b];
            return detail::mod(s, q);
        };
        const FqRow u0 = reduce(model.u0(), q);
        const auto lines_a = projective_points(2, q);
        const auto lines_b = projective_points(3, q);
        const auto flags_c = full_flags(3, q);
        for (const auto& la : lines_a)
            for (const auto& v : lines_b) {
                for (const auto& fc : flags_c) {
                    bool ok = true;
                    for (int j = 0; ok && j < p.h[0]; ++j)
                        ok = detail::mod(static_cast<long long>(la[0]) * pair(P0, v, fc[static_cast<std::size_t>(j)]) +
                                             static_cast<long long>(la[1]) * pair(P1, v, fc[static_cast<std::size_t>(j)]),
                                         q) == 0;
                    for (int j = 0; ok && j < p.k[0]; ++j)
                        ok = pair(P0, v, fc[static_cast<std::size_t>(j)]) == 0 && pair(P1, v, fc[static_cast<std::size_t>(j)]) == 0;
                    if (!ok) continue;
                    ++row.z;
                    if (first_step_containing({v}, u0, q) == 1) ++row.l;
                }
            }
        if (row.x != row.z + static_cast<std::uint64_t>(q) * row.l)
            throw std::logic_error("blow-up identity fails at q = " + std::to_string(q) + ": |X_U| = " + std::to_string(row.x) +
                                   ", |Z_U| + q|L| = " + std::to_string(row.z + static_cast<std::uint64_t>(q) * row.l));

        for (const char* s : {"321", "312"}) {
            row.cell_a12_t132 += count_cell_intersection(id, p, {"12", s, "132"}, q);
            row.cell_a21_t123 += count_cell_intersection(id, p, {"21", s, "123"}, q);
            row.cell_a21_t132 += count_cell_intersection(id, p, {"21", s, "132"}, q);
        }
        row.cell_a21_s231_t123 = count_cell_intersection(id, p, {"21", "231", "123"}, q);
        odd.counts[q] = row.cell_a21_s231_t123;
        const auto uq = static_cast<std::uint64_t>(q);
        if (row.cell_a12_t132 != blowup_count(2, 0, uq) || row.cell_a21_t123 != blowup_count(3, 1, uq) || row.cell_a21_t132 != 0)
            rep.cells_match = false;
        rep.rows.push_back(row);
    }
    classify(odd);
    if (odd.cls == CellClass::NotAffine) rep.not_affine_witness = odd.witness;
    return rep;
}

}  // namespace paving
