#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "paving/multipoly.hpp"
#include "paving/span.hpp"
#include "paving/unipoly.hpp"

#include <random>
#include <vector>

using namespace paving;

namespace {

template <class K>
Matrix<K> from_ints(std::initializer_list<std::initializer_list<int>> rows, std::uint32_t q = 0) {
    const Index r = static_cast<Index>(rows.size());
    const Index c = static_cast<Index>(rows.begin()->size());
    Matrix<K> m(r, c);
    Index i = 0;
    for (const auto& row : rows) {
        Index j = 0;
        for (int x : row) {
            if constexpr (std::is_same_v<K, Fq>)
                m(i, j++) = Fq(x, q);
            else
                m(i, j++) = K(x);
        }
        ++i;
    }
    return m;
}

Matrix<Rational> random_matrix(std::mt19937& rng, Index r, Index c, int zero_bias) {
    std::uniform_int_distribution<int> d(-3, 3), z(0, 9);
    Matrix<Rational> m(r, c);
    for (Index i = 0; i < r; ++i)
        for (Index j = 0; j < c; ++j) m(i, j) = z(rng) < zero_bias ? Rational(0) : Rational(d(rng));
    return m;
}

}  // namespace

TEST_CASE("rref of identity, zero and proportional rows") {
    const auto id = identity<Rational>(3);
    auto e = rref(id);
    CHECK(e.rank == 3);
    CHECK((e.reduced == id));

    const Matrix<Rational> z = Matrix<Rational>::Zero(2, 4);
    e = rref(z);
    CHECK(e.rank == 0);
    CHECK(is_zero_matrix(e.reduced));

    CHECK(rank(from_ints<Rational>({{1, 2}, {2, 4}})) == 1);
}

TEST_CASE("rref is idempotent and preserves rank") {
    std::mt19937 rng(7);
    for (int t = 0; t < 40; ++t) {
        const auto m = random_matrix(rng, 1 + t % 5, 1 + (t * 3) % 6, t % 7);
        const auto e = rref(m);
        const auto e2 = rref(e.reduced);
        CHECK((e2.reduced == e.reduced));
        CHECK(e2.rank == e.rank);
        CHECK(e.rank <= std::min(m.rows(), m.cols()));
    }
}

TEST_CASE("kernel basis") {
    CHECK(kernel_basis(identity<Rational>(4)).empty());
    CHECK(kernel_basis(Matrix<Rational>(Matrix<Rational>::Zero(1, 3))).size() == 3);

    const auto m = from_ints<Rational>({{1, 1, 0}});
    const auto k = kernel_basis(m);
    REQUIRE(k.size() == 2);
    for (const auto& v : k) CHECK(is_zero_vector(mul(m, v)));

    std::mt19937 rng(11);
    for (int t = 0; t < 30; ++t) {
        const auto a = random_matrix(rng, 4, 6, 5);
        const auto kb = kernel_basis(a);
        CHECK(static_cast<Index>(kb.size()) == a.cols() - rank(a));
        for (const auto& v : kb) CHECK(is_zero_vector(mul(a, v)));
        if (!kb.empty()) CHECK(rank(stack_rows(kb, a.cols())) == static_cast<Index>(kb.size()));
    }
}

TEST_CASE("linear algebra over F_q") {
    const auto m = from_ints<Fq>({{1, 2}, {2, 4}}, 5);
    CHECK(rank(m) == 1);
    // [[1,1],[1,-1]] has rank 1 in characteristic 2 and rank 2 otherwise.
    CHECK(rank(from_ints<Fq>({{1, 1}, {1, -1}}, 2)) == 1);
    CHECK(rank(from_ints<Fq>({{1, 1}, {1, -1}}, 3)) == 2);
    const auto k = kernel_basis(from_ints<Fq>({{1, 3, 4}}, 7));
    REQUIRE(k.size() == 2);
    for (const auto& v : k) CHECK(is_zero_vector(mul(from_ints<Fq>({{1, 3, 4}}, 7), v)));
}

TEST_CASE("Fq arithmetic") {
    const Fq a(3, 7), b(5, 7);
    CHECK((a + b).value() == 1);
    CHECK((a - b).value() == 5);
    CHECK((a * b).value() == 1);
    CHECK((a / b * b) == a);
    CHECK((-a).value() == 4);
    CHECK_THROWS_AS(Fq(0, 7).inverse(), std::domain_error);
    CHECK_THROWS_AS(Fq(1, 5) + Fq(1, 7), std::invalid_argument);
    for (std::uint32_t x = 1; x < 13; ++x) CHECK((Fq(x, 13) * Fq(x, 13).inverse()).value() == 1);
    CHECK(is_prime(2));
    CHECK(is_prime(19));
    CHECK_FALSE(is_prime(21));
    CHECK_FALSE(is_prime(1));
}

TEST_CASE("Rational arithmetic is exact") {
    const Rational a(3, 7), b(-5, 11), c(2, 9), d(13, 4);
    CHECK(a + b == Rational(3 * 11 - 5 * 7, 77));
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * d + b * d) == (a + b) * d);
    CHECK(denominator_of(Rational(6, -4)) == 2);
    CHECK(numerator_of(Rational(6, -4)) == -3);
}

TEST_CASE("lagrange interpolation") {
    std::vector<Sample> plane{{2, 7}, {3, 13}, {5, 31}};
    CHECK(lagrange_interpolate(plane) == UniPoly({1, 1, 1}));
    std::vector<Sample> flat{{2, 5}, {3, 5}};
    CHECK(lagrange_interpolate(flat) == UniPoly::constant(5));
    std::vector<Sample> square{{2, 9}, {3, 16}, {5, 36}};
    CHECK(lagrange_interpolate(square) == UniPoly({1, 2, 1}));
    CHECK(lagrange_interpolate(square).to_string() == "q^2 + 2q + 1");

    std::vector<Sample> dup{{2, 1}, {2, 3}};
    CHECK_THROWS_AS(lagrange_interpolate(dup), std::invalid_argument);
    CHECK_THROWS_AS(lagrange_interpolate(std::vector<Sample>{}), std::invalid_argument);

    std::vector<Sample> odd{{1, 4}, {2, -3}, {4, 10}, {7, 0}};
    const auto p = lagrange_interpolate(odd);
    for (const auto& s : odd) CHECK(p(s.x) == s.y);
    CHECK_FALSE(p.has_nonnegative_integer_coefficients());
}

TEST_CASE("subspace operations") {
    const auto a = Span<Rational>::from_rows(from_ints<Rational>({{1, 2, 0}, {0, 1, 1}}));
    CHECK(intersect(a, a) == a);

    const auto e1 = Span<Rational>::from_rows(from_ints<Rational>({{1, 0}}));
    const auto e2 = Span<Rational>::from_rows(from_ints<Rational>({{0, 1}}));
    CHECK(intersect(e1, e2).dim() == 0);
    CHECK(sum(e1, e2) == Span<Rational>::full(2));
    CHECK_THROWS_AS(intersect(a, e1), std::invalid_argument);

    std::mt19937 rng(3);
    for (int t = 0; t < 40; ++t) {
        const auto ma = random_matrix(rng, 1 + t % 4, 5, 4);
        const auto mb = random_matrix(rng, 1 + (t / 4) % 4, 5, 4);
        const auto sa = Span<Rational>::from_rows(ma), sb = Span<Rational>::from_rows(mb);
        const auto cap = intersect(sa, sb), cup = sum(sa, sb);
        CHECK(cap.dim() + cup.dim() == sa.dim() + sb.dim());
        const auto both = vstack(ma, mb);
        CHECK(cup.dim() == rank(both));
        CHECK(sa.contains(cap));
        CHECK(sb.contains(cap));
        CHECK(cup.contains(sa));
    }
}

TEST_CASE("restricted preimage") {
    // op swaps the two coordinates of Q^2
    Matrix<Rational> op = from_ints<Rational>({{0, 1}, {1, 0}});
    const auto e1 = Span<Rational>::from_rows(from_ints<Rational>({{1, 0}}));
    const auto e2 = Span<Rational>::from_rows(from_ints<Rational>({{0, 1}}));
    CHECK(restricted_preimage(op, Span<Rational>::full(2), e1) == e2);
    CHECK(restricted_preimage(op, e1, e1).dim() == 0);
    CHECK(image(op, e1) == e2);
}

TEST_CASE("multivariate polynomials") {
    const auto vars = make_variables({"l", "x", "y"});
    const auto l = MultiPoly::variable(vars, "l");
    const auto x = MultiPoly::variable(vars, "x");
    const auto y = MultiPoly::variable(vars, "y");
    const auto one = MultiPoly::constant(vars, 1);

    const auto p = y + x * y + l * x + l * y;
    CHECK(p.to_string() == "l*x + l*y + x*y + y");
    const auto lin = p.as_linear_in(1);
    REQUIRE(lin);
    CHECK(lin->coeff == y + l);
    CHECK(lin->rest == y + l * y);
    CHECK_FALSE((x * x + y).as_linear_in(1));

    const auto s = p.substitute(1, one - y);
    CHECK(s == y + (one - y) * y + l);
    CHECK((p - p).is_zero());
    CHECK((one * Rational(3)).is_constant());
    CHECK(p.eval_mod({2, 3, 4}, 5) == (4 + 12 + 6 + 8) % 5);
    CHECK((x * Rational(1, 2)).eval_mod({0, 1, 0}, 7) == 4);
}
