#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "qmr/field.hpp"

using namespace qmr;

namespace {

using Poly = std::vector<std::uint32_t>;

Poly poly_mul(std::uint32_t p, const Poly& a, const Poly& b)
{
    Poly out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            out[i + j] = (out[i + j] + a[i] * b[j]) % p;
    return out;
}

// Remainder of a modulo monic b.
Poly poly_mod(std::uint32_t p, Poly a, const Poly& b)
{
    const std::size_t db = b.size() - 1;
    for (std::size_t t = a.size(); t-- > db;) {
        const std::uint32_t c = a[t];
        if (c == 0)
            continue;
        for (std::size_t i = 0; i <= db; ++i)
            a[t - db + i] = (a[t - db + i] + (p - c) * b[i]) % p;
    }
    a.resize(db);
    return a;
}

// Trial division by every monic polynomial of degree 1..deg/2.
bool irreducible_by_trial(std::uint32_t p, const Poly& f)
{
    const std::size_t n = f.size() - 1;
    for (std::size_t d = 1; d <= n / 2; ++d) {
        std::uint64_t total = oracle::ipow(p, d);
        for (std::uint64_t c = 0; c < total; ++c) {
            Poly g(d + 1, 0);
            std::uint64_t x = c;
            for (std::size_t i = 0; i < d; ++i) {
                g[i] = static_cast<std::uint32_t>(x % p);
                x /= p;
            }
            g[d] = 1;
            const Poly r = poly_mod(p, f, g);
            bool zero = true;
            for (auto v : r)
                zero = zero && v == 0;
            if (zero)
                return false;
        }
    }
    return true;
}

struct Case {
    std::uint32_t p;
    unsigned degree;
};

}  // namespace

TEST_CASE("arithmetic agrees with schoolbook polynomial products on every pair")
{
    for (Case c : {Case{2, 1}, Case{2, 3}, Case{2, 5}, Case{3, 1}, Case{3, 2}, Case{3, 3}, Case{5, 2}, Case{7, 1}}) {
        const Field f(c.p, default_modulus(c.p, c.degree));
        const oracle::PolyField ref{c.p, f.modulus()};
        CAPTURE(f.describe());
        for (Code a = 0; a < f.order(); ++a) {
            for (Code b = 0; b < f.order(); ++b) {
                REQUIRE(f.add(Elt{a}, Elt{b}).code == ref.add(a, b));
                REQUIRE(f.mul(Elt{a}, Elt{b}).code == ref.mul(a, b));
                REQUIRE(f.add(f.sub(Elt{a}, Elt{b}), Elt{b}) == Elt{a});
            }
        }
    }
}

TEST_CASE("fields without tables match the reference on random pairs")
{
    // 3^13 and 2^23 exceed the table limit.
    std::mt19937_64 rng(11);
    for (Case c : {Case{3, 13}, Case{2, 23}}) {
        const Field f(c.p, default_modulus(c.p, c.degree));
        CHECK_FALSE(f.has_tables());
        const oracle::PolyField ref{c.p, f.modulus()};
        for (int t = 0; t < 300; ++t) {
            const Elt a{rng() % f.order()}, b{rng() % f.order()};
            REQUIRE(f.mul(a, b).code == ref.mul(a.code, b.code));
            REQUIRE(f.add(a, b).code == ref.add(a.code, b.code));
            if (!a.is_zero())
                REQUIRE(f.mul(a, f.inv(a)) == f.one());
        }
    }
}

TEST_CASE("field axioms on random triples")
{
    std::mt19937_64 rng(5);
    for (Case c : {Case{2, 8}, Case{3, 4}, Case{5, 3}, Case{2, 12}}) {
        const Field f(c.p, default_modulus(c.p, c.degree));
        for (int t = 0; t < 500; ++t) {
            const Elt a{rng() % f.order()}, b{rng() % f.order()}, d{rng() % f.order()};
            CHECK(f.mul(a, f.add(b, d)) == f.add(f.mul(a, b), f.mul(a, d)));
            CHECK(f.mul(f.mul(a, b), d) == f.mul(a, f.mul(b, d)));
            CHECK(f.add(a, f.neg(a)) == f.zero());
            if (!b.is_zero())
                CHECK(f.mul(f.div(a, b), b) == a);
        }
    }
}

TEST_CASE("pow and frobenius agree with repeated multiplication")
{
    const Field f(3, default_modulus(3, 4));
    const oracle::PolyField ref{3, f.modulus()};
    std::mt19937_64 rng(3);
    for (int t = 0; t < 40; ++t) {
        const Elt a{rng() % f.order()};
        const std::uint64_t e = rng() % 200;
        CHECK(f.pow(a, e).code == ref.pow(a.code, e));
        CHECK(f.frobenius(a, 1) == f.pow(a, 3));
        CHECK(f.frobenius(a, 2) == f.pow(a, 9));
        CHECK(f.frobenius(a, 4) == a);
    }
}

TEST_CASE("Rabin's test matches trial division")
{
    for (std::uint32_t p : {2u, 3u}) {
        for (std::size_t n = 1; n <= (p == 2 ? 8u : 5u); ++n) {
            const std::uint64_t total = oracle::ipow(p, n);
            for (std::uint64_t c = 0; c < total; ++c) {
                Poly f(n + 1, 0);
                std::uint64_t x = c;
                for (std::size_t i = 0; i < n; ++i) {
                    f[i] = static_cast<std::uint32_t>(x % p);
                    x /= p;
                }
                f[n] = 1;
                CAPTURE(p);
                CAPTURE(c);
                REQUIRE(is_irreducible(p, f) == irreducible_by_trial(p, f));
            }
        }
    }
}

TEST_CASE("a squarefree product of factors of degrees dividing n is rejected")
{
    // x (x^2+x+1)(x^3+x+1) divides x^64 - x, so the naive Frobenius test
    // alone would accept it.
    const Poly f = poly_mul(2, poly_mul(2, {0, 1}, {1, 1, 1}), {1, 1, 0, 1});
    REQUIRE(f.size() == 7);
    CHECK_FALSE(is_irreducible(2, f));
    CHECK_THROWS_AS(Field(2, f), InvalidInput);
}

TEST_CASE("default modulus is the smallest irreducible in the stated order")
{
    for (std::uint32_t p : {2u, 3u, 5u}) {
        for (unsigned n = 1; n <= 4; ++n) {
            const auto f = default_modulus(p, n);
            REQUIRE(f.size() == n + 1);
            CHECK(f.back() == 1);
            CHECK(irreducible_by_trial(p, f));
            // No smaller tuple (lexicographic, constant term first) is irreducible.
            const std::uint64_t total = oracle::ipow(p, n);
            for (std::uint64_t c = 0; c < total; ++c) {
                Poly g(n + 1, 0);
                std::uint64_t x = c;
                for (unsigned i = 0; i < n; ++i) {
                    g[i] = static_cast<std::uint32_t>(x % p);
                    x /= p;
                }
                g[n] = 1;
                if (g == f)
                    break;
                if (std::lexicographical_compare(g.begin(), g.end(), f.begin(), f.end()))
                    CHECK_FALSE(irreducible_by_trial(p, g));
            }
        }
    }
}

TEST_CASE("invalid parameters and operands are rejected")
{
    CHECK_THROWS_AS(Field(4, {1, 1}), InvalidInput);
    CHECK_THROWS_AS(Field(2, {1, 0, 1}), InvalidInput);  // (x+1)^2
    CHECK_THROWS_AS(Field(2, {1, 1, 0}), InvalidInput);  // not monic
    const Field f(2, default_modulus(2, 3));
    CHECK_THROWS_AS(f.check(Elt{8}), InvalidInput);
    CHECK_THROWS_AS(f.arith(Elt{9}, Elt{1}, ArithOp::add), InvalidInput);
    CHECK_THROWS_AS(f.arith(Elt{3}, Elt{0}, ArithOp::div), InvalidInput);
    CHECK_THROWS_AS(f.inv(Elt{0}), InvalidInput);
    CHECK(f.arith(Elt{3}, Elt{3}, ArithOp::div) == f.one());
}

TEST_CASE("primality helpers")
{
    CHECK(is_prime(2));
    CHECK(is_prime(65537));
    CHECK_FALSE(is_prime(1));
    CHECK_FALSE(is_prime(91));
    CHECK(prime_factors(360) == std::vector<std::uint64_t>{2, 3, 5});
    CHECK(prime_factors(97) == std::vector<std::uint64_t>{97});
}
