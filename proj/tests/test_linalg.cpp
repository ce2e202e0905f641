#include <doctest.h>

#include <memory>
#include <random>

#include "oracles.hpp"
#include "qmr/linalg.hpp"

using namespace qmr;

namespace {

FieldPtr field_of(std::uint32_t p, unsigned degree)
{
    return std::make_shared<const Field>(p, default_modulus(p, degree));
}

std::vector<FieldPtr> small_fields()
{
    return {field_of(2, 1), field_of(3, 1), field_of(2, 2), field_of(5, 1)};
}

bool is_rref(const Mat& m, std::size_t rank)
{
    std::size_t last = 0;
    for (std::size_t r = 0; r < m.rows(); ++r) {
        std::size_t lead = m.cols();
        for (std::size_t c = 0; c < m.cols(); ++c)
            if (!m(r, c).is_zero()) {
                lead = c;
                break;
            }
        if (r >= rank) {
            if (lead != m.cols())
                return false;
            continue;
        }
        if (lead == m.cols() || (r > 0 && lead <= last) || m(r, lead) != m.field().one())
            return false;
        for (std::size_t o = 0; o < m.rows(); ++o)
            if (o != r && !m(o, lead).is_zero())
                return false;
        last = lead;
    }
    return true;
}

}  // namespace

TEST_CASE("rank equals the dimension of the closure-built span")
{
    std::mt19937_64 rng(1);
    for (const auto& f : small_fields()) {
        for (int t = 0; t < 60; ++t) {
            const std::size_t rows = 1 + rng() % 5, cols = 1 + rng() % 5;
            const std::size_t r = rng() % (std::min(rows, cols) + 1);
            const Mat m = oracle::random_mat_of_rank(f, rows, cols, r, rng);
            CHECK(rank(m) == r);
            const Echelon e = rref(m);
            CHECK(e.rank == r);
            CHECK(e.pivots.size() == r);
            CHECK(is_rref(e.reduced, r));
            CHECK(oracle::span_set(e.reduced) == oracle::span_set(m));
        }
    }
}

TEST_CASE("rref is idempotent and canonical")
{
    std::mt19937_64 rng(2);
    const auto f = field_of(3, 1);
    for (int t = 0; t < 50; ++t) {
        const Mat m = oracle::random_mat(f, 4, 6, rng);
        const Mat b = rowspace_basis(m);
        CHECK(rowspace_basis(b) == b);
        // Any invertible row mix of m has the same basis.
        Mat g = oracle::random_mat_of_rank(f, 4, 4, 4, rng);
        CHECK(rowspace_basis(multiply(g, m)) == b);
    }
}

TEST_CASE("kernel basis spans the whole right null space")
{
    std::mt19937_64 rng(3);
    for (const auto& f : small_fields()) {
        for (int t = 0; t < 40; ++t) {
            const std::size_t rows = 1 + rng() % 4, cols = 1 + rng() % 5;
            const Mat m = oracle::random_mat(f, rows, cols, rng);
            const Mat k = kernel_basis(m);
            CHECK(k.rows() == cols - rank(m));
            CHECK(oracle::dim_of_span(k) == k.rows());
            if (k.rows() > 0) {
                const Mat prod = multiply(m, transpose(k));
                for (Elt e : prod.data())
                    CHECK(e.is_zero());
            }
        }
    }
}

TEST_CASE("intersection and sum agree with element sets")
{
    std::mt19937_64 rng(4);
    for (const auto& f : {field_of(2, 1), field_of(3, 1)}) {
        for (int t = 0; t < 60; ++t) {
            const std::size_t n = 2 + rng() % 4;
            const Mat a = oracle::random_mat(f, 1 + rng() % n, n, rng);
            const Mat b = oracle::random_mat(f, 1 + rng() % n, n, rng);
            const auto sa = oracle::span_set(a), sb = oracle::span_set(b);
            std::set<oracle::Vec> both;
            for (const auto& v : sa)
                if (sb.count(v))
                    both.insert(v);
            const Mat i = intersect_rowspaces(a, b);
            CHECK(oracle::span_set(i.rows() ? i : Mat(f, 0, n)) == both);
            CHECK(i.rows() == oracle::log_size(f->order(), both.size()));
            const Mat s = sum_rowspaces(a, b);
            CHECK(oracle::span_set(s) == oracle::span_set(vstack(a, b)));
            // Grassmann's identity.
            CHECK(s.rows() + i.rows() == rank(a) + rank(b));
        }
    }
}

TEST_CASE("inverse and left solves")
{
    std::mt19937_64 rng(5);
    const auto f = field_of(2, 3);
    for (int t = 0; t < 30; ++t) {
        const Mat g = oracle::random_mat_of_rank(f, 4, 4, 4, rng);
        CHECK(multiply(g, inverse(g)) == Mat::identity(f, 4));
        const Mat m = oracle::random_mat(f, 3, 5, rng);
        std::vector<Elt> x(3);
        for (auto& e : x)
            e = Elt{rng() % f->order()};
        Mat xr(f, 1, 3, x);
        const Mat y = multiply(xr, m);
        const auto sol = solve_left(m, y.row(0));
        REQUIRE(sol.has_value());
        CHECK(multiply(Mat(f, 1, 3, *sol), m) == y);
    }
    const Mat singular = Mat::from_rows(f, 2, {{Elt{1}, Elt{2}}, {Elt{1}, Elt{2}}});
    CHECK_THROWS_AS(inverse(singular), InvalidInput);
    const std::vector<Elt> target{Elt{0}, Elt{1}};
    CHECK_FALSE(solve_left(singular, target).has_value());
}

TEST_CASE("operands over different fields are rejected")
{
    const auto f2 = field_of(2, 1), f3 = field_of(3, 1);
    const Mat a = Mat::identity(f2, 2), b = Mat::identity(f3, 2);
    CHECK_THROWS_AS(require_same_field(a, b), InvalidInput);
    CHECK_THROWS_AS(multiply(a, b), InvalidInput);
    CHECK_THROWS_AS(intersect_rowspaces(a, b), InvalidInput);
}
