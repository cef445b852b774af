#include <doctest.h>

#include <random>

#include "support.hpp"
#include "waring/power_sums.hpp"

using namespace waring;

TEST_CASE("text format round trip") {
    const auto f = Field::make(7);
    const auto j = parse_matrix(f, "0,1;0");
    CHECK(j == jordan_block(f, Elem{0}, 2));
    CHECK(to_text(j) == "0,1;0");
    CHECK(to_text(parse_matrix(f, " 1, 2 ,3 ; 4,5; 6 ")) == "1,2,3;4,5;6");
    CHECK_THROWS_AS(parse_matrix(f, "1,2;3,4"), Error);
    CHECK_THROWS_AS(parse_matrix(f, "1,9;1"), Error);
    CHECK_THROWS_AS(parse_matrix(f, "1,x;1"), Error);

    std::mt19937_64 rng(7);
    for (int t = 0; t < 200; ++t) {
        const auto m = support::random_matrix(Field::make(3, 2), 1 + t % 6, rng);
        CHECK(parse_matrix(m.field(), to_text(m)) == m);
    }
}

TEST_CASE("mat_mul") {
    const auto f = Field::make(7);
    const auto a = parse_matrix(f, "2,3;3");
    CHECK(to_text(a * a) == "4,1;2");
    CHECK(UTMatrix::identity(f, 2) * a == a);
    CHECK(elementary(f, 3, 0, 1) * elementary(f, 3, 1, 2) == elementary(f, 3, 0, 2));
    CHECK(elementary(f, 3, 1, 2) * elementary(f, 3, 0, 1) == UTMatrix::zero(f, 3));
    CHECK_THROWS_AS(a * UTMatrix::identity(f, 3), Error);
    CHECK_THROWS_AS(a * UTMatrix::identity(Field::make(5), 2), Error);

    std::mt19937_64 rng(11);
    for (int t = 0; t < 300; ++t) {
        const auto f13 = Field::make(13);
        const std::size_t n = 1 + t % 6;
        const auto x = support::random_matrix(f13, n, rng), y = support::random_matrix(f13, n, rng);
        CHECK(support::dense(x * y) == naive::mul(support::dense(x), support::dense(y), 13));
        CHECK(support::dense(x + y) == naive::add(support::dense(x), support::dense(y), 13));
    }
}

TEST_CASE("mat_pow") {
    const auto f7 = Field::make(7), f13 = Field::make(13);
    CHECK(mat_pow(parse_matrix(f7, "3,4;5"), 0) == UTMatrix::identity(f7, 2));
    CHECK(to_text(mat_pow(parse_matrix(f7, "1,5;2"), 2)) == "1,1;4");
    CHECK(to_text(mat_pow(parse_matrix(f13, "1,11;5"), 2)) == "1,1;12");

    std::mt19937_64 rng(5);
    for (int t = 0; t < 100; ++t) {
        const std::size_t n = 1 + t % 5;
        const auto x = support::random_matrix(f13, n, rng);
        const std::uint64_t k = t % 9;
        CHECK(support::dense(mat_pow(x, k)) == naive::power(support::dense(x), static_cast<naive::i64>(k), 13));
        const auto d = mat_pow(x, k).diag();
        for (std::size_t i = 0; i < n; ++i) CHECK(d[i] == f13.pow(x(i, i), k));
    }
}

TEST_CASE("inverse") {
    const auto f = Field::make(11);
    std::mt19937_64 rng(3);
    for (int t = 0; t < 100; ++t) {
        auto x = support::random_matrix(f, 1 + t % 5, rng);
        for (std::size_t i = 0; i < x.size(); ++i)
            if (x(i, i) == f.zero()) x.set(i, i, f.one());
        CHECK(inverse(x) * x == UTMatrix::identity(f, x.size()));
    }
    CHECK_THROWS_AS(inverse(parse_matrix(f, "0,1;1")), Error);
}

TEST_CASE("kth_root_distinct_diag") {
    const auto f7 = Field::make(7), f13 = Field::make(13);
    CHECK(to_text(kth_root_distinct_diag(parse_matrix(f7, "1,1;4"), 2)) == "1,5;2");
    CHECK(naive::inv_mod(naive::f_value(1, 2, 2, 7), 7) == 5);
    CHECK(to_text(kth_root_distinct_diag(parse_matrix(f13, "1,1;12"), 2)) == "1,11;5");
    CHECK(naive::inv_mod(naive::f_value(1, 5, 2, 13), 13) == 11);
    CHECK(kth_root_distinct_diag(parse_matrix(f13, "1,0,0;4,0;9"), 2).is_diagonal());

    auto kind = [](auto&& fn) {
        try {
            fn();
        } catch (const Error& e) {
            return e.kind();
        }
        return ErrorKind::ParseError;
    };
    CHECK(kind([&] { kth_root_distinct_diag(parse_matrix(f7, "3,1;1"), 2); }) == ErrorKind::DiagNotKthPower);
    CHECK(kind([&] { kth_root_distinct_diag(parse_matrix(f7, "1,1;1"), 2); }) == ErrorKind::DiagNotDistinct);
}

TEST_CASE("kth_root_sparse") {
    const auto f13 = Field::make(13);
    const auto c = parse_matrix(f13, "1,1,0;12,0;1");
    const auto a = kth_root_sparse(c, 2);
    CHECK(to_text(a) == "1,11,0;5,0;1");
    CHECK(mat_pow(a, 2) == c);
    CHECK(kth_root_sparse(UTMatrix::zero(f13, 4), 3) == UTMatrix::zero(f13, 4));
    CHECK_THROWS_AS(kth_root_sparse(parse_matrix(f13, "1,1,0;12,1;1"), 2), Error);
    CHECK_THROWS_AS(kth_root_sparse(parse_matrix(f13, "1,1;1"), 2), Error);
}

TEST_CASE("root round trips on random instances") {
    std::mt19937_64 rng(2024);
    const std::vector<std::pair<std::uint64_t, unsigned>> fields{{5, 1}, {7, 1}, {3, 2}, {13, 1}, {31, 1}, {7, 2}};
    int distinct = 0, sparse = 0;
    for (int t = 0; t < 600; ++t) {
        const auto [p, m] = fields[t % fields.size()];
        const auto f = Field::make(p, m);
        const std::uint64_t k = 1 + rng() % 6;
        const auto image = f.kth_power_image(k);
        const std::size_t n = 1 + rng() % std::min<std::size_t>(6, image.size());
        auto c = support::random_matrix(f, n, rng);

        std::vector<Elem> diag = image;
        std::shuffle(diag.begin(), diag.end(), rng);
        for (std::size_t i = 0; i < n; ++i) c.set(i, i, diag[i]);
        CHECK(mat_pow(kth_root_distinct_diag(c, k), k) == c);
        ++distinct;

        // sparse: keep a random matching of entries between unequal diagonal values
        UTMatrix s(f, n);
        std::vector<bool> used_row(n, false), used_col(n, false);
        for (std::size_t i = 0; i < n; ++i) s.set(i, i, image[rng() % image.size()]);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (rng() % 3 == 0 && s(i, i) != s(j, j) && !used_col[i] && !used_row[j] && !used_row[i] &&
                    !used_col[j]) {
                    s.set(i, j, f.elem(1 + rng() % (f.q() - 1)));
                    used_row[i] = used_col[j] = true;
                }
        CHECK(mat_pow(kth_root_sparse(s, k), k) == s);
        ++sparse;
    }
    CHECK(distinct == 600);
    CHECK(sparse == 600);
}

TEST_CASE("kth_root_backsubstitute allows repeated eigenvalues with a shared root") {
    const auto f7 = Field::make(7);
    const auto c = parse_matrix(f7, "2,3,1;2,5;4");
    const auto a = kth_root_backsubstitute(c, 2);
    CHECK(mat_pow(a, 2) == c);
    CHECK(a(0, 0) == a(1, 1));
    CHECK_THROWS_AS(kth_root_backsubstitute(parse_matrix(Field::make(3), "1,1;1"), 3), Error);
}

TEST_CASE("zero propagation") {
    std::mt19937_64 rng(99);
    const auto f = Field::make(11);
    for (int t = 0; t < 200; ++t) {
        const std::size_t n = 3 + t % 4;
        auto a = support::random_matrix(f, n, rng);
        // break every chain r < s < t
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t s = r + 1; s < n; ++s)
                for (std::size_t u = s + 1; u < n; ++u)
                    if (a(r, s) != f.zero() && a(s, u) != f.zero()) a.set(s, u, f.zero());
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                if (a(i, j) != f.zero()) continue;
                bool ok = true;
                for (std::uint64_t m = 1; m <= 5; ++m) ok &= mat_pow(a, m)(i, j) == f.zero();
                CHECK(ok);
            }
    }
}

TEST_CASE("the unipotent 2x2 matrix is not a cube over F_3") {
    const auto f = Field::make(3);
    const auto target = parse_matrix(f, "1,1;1");
    int hits = 0;
    for (std::uint64_t a = 0; a < 3; ++a)
        for (std::uint64_t b = 0; b < 3; ++b)
            for (std::uint64_t c = 0; c < 3; ++c) {
                UTMatrix m(f, 2);
                m.set(0, 0, Elem{a});
                m.set(0, 1, Elem{b});
                m.set(1, 1, Elem{c});
                hits += mat_pow(m, 3) == target;
            }
    CHECK(hits == 0);
}

TEST_CASE("embed_power") {
    const auto f7 = Field::make(7);
    const auto c = parse_matrix(f7, "1,1;4");
    const auto root = parse_matrix(f7, "1,5;2");
    const auto e = embed_power(c, root, 1, Elem{3}, 2);
    CHECK(to_text(e.power) == "1,0,1;2,0;4");
    CHECK(to_text(e.root) == "1,0,5;3,0;2");
    CHECK(mat_pow(e.root, 2) == e.power);

    const UTMatrix x = UTMatrix::diagonal(f7, std::vector<Elem>{Elem{3}});
    const UTMatrix xk = UTMatrix::diagonal(f7, std::vector<Elem>{Elem{2}});
    CHECK(embed_power(c, root, 0, Elem{3}, 2).power == direct_sum(xk, c));
    CHECK(embed_power(c, root, 0, Elem{3}, 2).root == direct_sum(x, root));
    CHECK(embed_power(c, root, 2, Elem{3}, 2).power == direct_sum(c, xk));

    CHECK_THROWS_AS(embed_power(c, parse_matrix(f7, "1,1;2"), 1, Elem{3}, 2), Error);
    CHECK_THROWS_AS(embed_power(c, root, 1, Elem{0}, 2), Error);
    CHECK_THROWS_AS(embed_power(c, root, 3, Elem{1}, 2), Error);

    std::mt19937_64 rng(1);
    const auto f13 = Field::make(13);
    for (int t = 0; t < 50; ++t) {
        const auto r = support::random_matrix(f13, 1 + t % 4, rng);
        const auto ck = mat_pow(r, 3);
        for (std::size_t l = 0; l <= r.size(); ++l) {
            const auto out = embed_power(ck, r, l, Elem{1 + rng() % 12}, 3);
            CHECK(mat_pow(out.root, 3) == out.power);
        }
    }
}

TEST_CASE("constructors") {
    const auto f = Field::make(5);
    const std::vector<std::size_t> p1{1, 1, 1, 2}, p2{1, 2, 2};
    CHECK(junction_matrix(f, p1) == elementary(f, 5, 0, 1) + elementary(f, 5, 1, 2) + elementary(f, 5, 2, 3));
    CHECK(junction_matrix(f, p2) == elementary(f, 5, 0, 1) + elementary(f, 5, 2, 3));
    CHECK(jordan_block(f, Elem{0}, 2) == elementary(f, 2, 0, 1));
    CHECK(elementary(f, 3, 1, 1)(1, 1) == f.one());
    const std::vector<std::size_t> bad{2, 0};
    CHECK_THROWS_AS(junction_matrix(f, bad), Error);
    CHECK_THROWS_AS(elementary(f, 3, 2, 1), Error);
    CHECK_THROWS_AS(elementary(f, 3, 0, 3), Error);
}
