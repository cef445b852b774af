#include <doctest.h>

#include <numeric>
#include <set>

#include "naive.hpp"
#include "waring/field.hpp"

using namespace waring;

namespace {

// Multiplication of base-p encodings as polynomials, reduced by a monic modulus.
std::uint64_t poly_mul(std::uint64_t a, std::uint64_t b, std::uint64_t p, const std::vector<std::uint64_t>& modulus) {
    const std::size_t m = modulus.size() - 1;
    std::vector<std::int64_t> x(m), y(m), prod(2 * m, 0);
    for (std::size_t i = 0; i < m; ++i, a /= p, b /= p) {
        x[i] = static_cast<std::int64_t>(a % p);
        y[i] = static_cast<std::int64_t>(b % p);
    }
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) prod[i + j] += x[i] * y[j];
    for (std::size_t d = 2 * m - 1; d >= m; --d) {
        const std::int64_t c = prod[d] % static_cast<std::int64_t>(p);
        for (std::size_t i = 0; i <= m; ++i) prod[d - m + i] -= c * static_cast<std::int64_t>(modulus[i]);
    }
    std::uint64_t out = 0;
    for (std::size_t i = m; i-- > 0;) out = out * p + static_cast<std::uint64_t>(naive::mod(prod[i], p));
    return out;
}

const std::vector<std::pair<std::uint64_t, unsigned>> kSmallFields = {
    {2, 1}, {3, 1}, {2, 2}, {5, 1}, {7, 1}, {2, 3}, {3, 2}, {11, 1}, {13, 1}, {2, 4},
    {17, 1}, {19, 1}, {23, 1}, {5, 2}, {3, 3}, {29, 1}, {31, 1}, {2, 5}, {37, 1}, {41, 1}, {43, 1}, {47, 1}, {7, 2}};

}  // namespace

TEST_CASE("make_field builds prime and extension fields") {
    const auto f7 = Field::make(7);
    CHECK(f7.q() == 7);
    CHECK(f7.elements().size() == 7);

    const auto f9 = Field::make(3, 2, std::vector<std::uint64_t>{1, 0, 1});
    CHECK(f9.q() == 9);
    for (std::int64_t t = 0; t < 3; ++t) CHECK(naive::mod(t * t + 1, 3) != 0);
    CHECK(f9.to_string() == "3^2/1,0,1");

    CHECK_THROWS_AS(Field::make(4), Error);
    try {
        Field::make(4);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotPrime);
    }
}

TEST_CASE("make_field rejects bad moduli") {
    auto kind_of = [](auto&& fn) {
        try {
            fn();
        } catch (const Error& e) {
            return e.kind();
        }
        return ErrorKind::ParseError;
    };
    // x^2 + 2x + 1 = (x + 1)^2 over F_3
    CHECK(kind_of([] { Field::make(3, 2, std::vector<std::uint64_t>{1, 2, 1}); }) == ErrorKind::ReducibleModulus);
    // (x^2 + 1)^2 = x^4 + 2x^2 + 1 has no root over F_3 but factors
    CHECK(kind_of([] { Field::make(3, 4, std::vector<std::uint64_t>{1, 0, 2, 0, 1}); }) ==
          ErrorKind::ReducibleModulus);
    CHECK(kind_of([] { Field::make(3, 2, std::vector<std::uint64_t>{1, 0, 0, 1}); }) == ErrorKind::DegreeMismatch);
    CHECK(kind_of([] { Field::parse("3^2/2,0,1"); }) == ErrorKind::ReducibleModulus);
    CHECK(kind_of([] { Field::parse("seven"); }) == ErrorKind::ParseError);
}

TEST_CASE("default moduli are the smallest irreducibles") {
    CHECK(Field::make(3, 2).to_string() == "3^2/1,0,1");
    CHECK(Field::make(2, 2).to_string() == "2^2/1,1,1");
    CHECK(Field::parse("3^2") == Field::make(3, 2));
    CHECK(Field::parse("13") == Field::make(13));
    CHECK(Field::parse("3^2/2,1,1").to_string() == "3^2/2,1,1");
}

TEST_CASE("arithmetic examples") {
    const auto f7 = Field::make(7);
    CHECK(f7.inv(Elem{3}) == Elem{5});
    CHECK(naive::mod(3 * 5, 7) == 1);
    CHECK(f7.neg(Elem{1}) == Elem{6});
    CHECK_THROWS_AS(f7.inv(Elem{0}), Error);
    CHECK_THROWS_AS(f7.div(Elem{1}, Elem{0}), Error);

    const auto f9 = Field::make(3, 2, std::vector<std::uint64_t>{1, 0, 1});
    const Elem x{3};  // the class of x
    CHECK(f9.mul(x, x) == Elem{2});
    CHECK(poly_mul(3, 3, 3, {1, 0, 1}) == 2);
}

TEST_CASE("pow examples") {
    const auto f7 = Field::make(7);
    const auto f13 = Field::make(13);
    CHECK(f7.pow(Elem{3}, 2) == Elem{2});
    CHECK(f13.pow(Elem{5}, 2) == Elem{12});
    CHECK(f7.pow(Elem{0}, 0) == Elem{1});
    for (auto a : f13.elements()) CHECK(f13.pow(a, 1) == a);
}

TEST_CASE("field axioms hold exhaustively for q <= 49") {
    for (auto [p, m] : kSmallFields) {
        const auto f = Field::make(p, m);
        CAPTURE(f.to_string());
        const auto modulus = std::vector<std::uint64_t>(f.modulus().begin(), f.modulus().end());
        const auto els = f.elements();
        REQUIRE(els.size() == f.q());
        bool ok = true;
        for (auto a : els) {
            ok &= f.add(a, f.neg(a)) == f.zero();
            ok &= f.pow(a, f.q()) == a;
            if (a != f.zero()) ok &= f.mul(a, f.inv(a)) == f.one();
            for (auto b : els) {
                ok &= f.add(a, b) == f.add(b, a);
                ok &= f.mul(a, b) == f.mul(b, a);
                ok &= f.sub(f.add(a, b), b) == a;
                if (m > 1) ok &= f.mul(a, b).v == poly_mul(a.v, b.v, p, modulus);
                else ok &= f.mul(a, b).v == a.v * b.v % p;
                if (f.q() <= 27)
                    for (auto c : els) {
                        ok &= f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c));
                        ok &= f.add(f.add(a, b), c) == f.add(a, f.add(b, c));
                        ok &= f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c));
                    }
            }
        }
        CHECK(ok);
    }
}

TEST_CASE("associativity and distributivity over F_49 triples") {
    const auto f = Field::make(7, 2);
    const auto els = f.elements();
    bool ok = true;
    for (auto a : els)
        for (auto b : els)
            for (auto c : els) {
                ok &= f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c));
                ok &= f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c));
            }
    CHECK(ok);
}

TEST_CASE("kth_power_image") {
    const auto f7 = Field::make(7);
    const auto f13 = Field::make(13);
    auto enc = [](const std::vector<Elem>& v) {
        std::vector<std::uint64_t> out;
        for (auto e : v) out.push_back(e.v);
        return out;
    };
    CHECK(enc(f7.kth_power_image(2)) == std::vector<std::uint64_t>{0, 1, 2, 4});
    CHECK(enc(f13.kth_power_image(3)) == std::vector<std::uint64_t>{0, 1, 5, 8, 12});
    for (auto [x, want] : {std::pair{7, 2}, {13, 3}}) {
        const auto ref = naive::kth_powers(x, want);
        CHECK(enc((x == 7 ? f7 : f13).kth_power_image(want)) == std::vector<std::uint64_t>(ref.begin(), ref.end()));
    }
    CHECK(f13.kth_power_image(1).size() == 13);

    for (auto [p, m] : kSmallFields) {
        const auto f = Field::make(p, m);
        for (std::uint64_t k = 1; k <= 12; ++k) {
            CAPTURE(f.q());
            CAPTURE(k);
            CHECK(f.kth_power_image(k).size() - 1 == (f.q() - 1) / std::gcd(k, f.q() - 1));
        }
    }
}

TEST_CASE("kth_roots") {
    const auto f13 = Field::make(13);
    const auto f7 = Field::make(7);
    CHECK(f13.kth_roots(Elem{1}, 3) == std::vector<Elem>{Elem{1}, Elem{3}, Elem{9}});
    CHECK(naive::pow_mod(3, 3, 13) == 1);
    CHECK(naive::pow_mod(9, 3, 13) == 1);
    CHECK(f7.kth_roots(Elem{0}, 4) == std::vector<Elem>{Elem{0}});
    CHECK(f7.kth_roots(Elem{3}, 2).empty());

    for (auto [p, m] : kSmallFields) {
        const auto f = Field::make(p, m);
        for (std::uint64_t k = 1; k <= 8; ++k)
            for (auto lambda : f.elements()) {
                const auto roots = f.kth_roots(lambda, k);
                std::set<std::uint64_t> got;
                for (auto r : roots) got.insert(r.v);
                bool ok = true;
                for (auto a : f.elements()) ok &= got.count(a.v) == (f.pow(a, k) == lambda ? 1u : 0u);
                if (lambda != f.zero() && !roots.empty()) ok &= std::gcd(k, f.q() - 1) % roots.size() == 0;
                ok &= f.is_kth_power(lambda, k) == !roots.empty();
                CHECK(ok);
            }
    }
}

TEST_CASE("minus_one_is_kth_power") {
    CHECK(Field::make(13).minus_one_is_kth_power(2));
    CHECK(naive::pow_mod(5, 2, 13) == 12);
    CHECK_FALSE(Field::make(7).minus_one_is_kth_power(2));
    CHECK(Field::make(13).minus_one_is_kth_power(3));
    CHECK(naive::pow_mod(4, 3, 13) == 12);
    CHECK(Field::make(2, 2).minus_one_is_kth_power(3));
    for (std::int64_t p : {3, 5, 7, 11, 13, 17, 19}) {
        const auto f = Field::make(static_cast<std::uint64_t>(p));
        for (std::int64_t k = 1; k <= 10; ++k)
            CHECK(f.minus_one_is_kth_power(static_cast<std::uint64_t>(k)) == (naive::kth_powers(p, k).count(p - 1) > 0));
    }
}

TEST_CASE("elements parse and stay in range") {
    const auto f = Field::make(5);
    CHECK(parse_elem(f, "4") == Elem{4});
    CHECK_THROWS_AS(parse_elem(f, "5"), Error);
    CHECK_THROWS_AS(parse_elem(f, "x"), Error);
    CHECK_THROWS_AS(f.elem(9), Error);
    CHECK(f.from_int(-1) == Elem{4});
}
