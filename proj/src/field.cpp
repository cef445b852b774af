#include "waring/field.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <sstream>

namespace waring {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::NotPrime: return "NotPrime";
        case ErrorKind::ReducibleModulus: return "ReducibleModulus";
        case ErrorKind::DegreeMismatch: return "DegreeMismatch";
        case ErrorKind::UnsupportedField: return "UnsupportedField";
        case ErrorKind::DivisionByZero: return "DivisionByZero";
        case ErrorKind::SizeMismatch: return "SizeMismatch";
        case ErrorKind::FieldMismatch: return "FieldMismatch";
        case ErrorKind::DiagNotKthPower: return "DiagNotKthPower";
        case ErrorKind::DiagNotDistinct: return "DiagNotDistinct";
        case ErrorKind::PreconditionViolated: return "PreconditionViolated";
        case ErrorKind::RootMismatch: return "RootMismatch";
        case ErrorKind::BadPartition: return "BadPartition";
        case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorKind::EqualDiagonal: return "EqualDiagonal";
        case ErrorKind::NotNilpotent: return "NotNilpotent";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::LabelOutOfRange: return "LabelOutOfRange";
        case ErrorKind::DuplicateVertex: return "DuplicateVertex";
        case ErrorKind::InsufficientClasses: return "InsufficientClasses";
        case ErrorKind::NoAdmissibleShift: return "NoAdmissibleShift";
        case ErrorKind::EnumerationTooLarge: return "EnumerationTooLarge";
        case ErrorKind::HypothesisViolated: return "HypothesisViolated";
        case ErrorKind::EvenCharacteristic: return "EvenCharacteristic";
    }
    return "Unknown";
}

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) noexcept { return std::gcd(a, b); }

bool is_prime(std::uint64_t n) noexcept {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

namespace {

constexpr std::uint64_t kMaxOrder = std::uint64_t{1} << 32;
constexpr std::uint64_t kTableLimit = std::uint64_t{1} << 20;

using Poly = std::vector<std::uint64_t>;  // coefficients over F_p, low degree first

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) {
    // p is prime and a != 0 (mod p)
    std::uint64_t result = 1, base = a % p, e = p - 2;
    while (e) {
        if (e & 1) result = result * base % p;
        base = base * base % p;
        e >>= 1;
    }
    return result;
}

Poly poly_mod(Poly a, const Poly& b, std::uint64_t p) {
    trim(a);
    const std::uint64_t lead_inv = inv_mod(b.back(), p);
    while (a.size() >= b.size()) {
        const std::uint64_t factor = a.back() * lead_inv % p;
        const std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i)
            a[shift + i] = (a[shift + i] + (p - factor) * b[i]) % p;
        trim(a);
    }
    return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f, std::uint64_t p) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    return poly_mod(std::move(r), f, p);
}

Poly poly_gcd(Poly a, Poly b, std::uint64_t p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = poly_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

bool has_root(const Poly& f, std::uint64_t p) {
    for (std::uint64_t t = 0; t < p; ++t) {
        std::uint64_t acc = 0;
        for (std::size_t i = f.size(); i-- > 0;) acc = (acc * t + f[i]) % p;
        if (acc == 0) return true;
    }
    return false;
}

// Degree <= 3: irreducible iff rootless. Degree 4: additionally no quadratic
// factor, i.e. gcd(f, x^{p^2} - x) = 1.
bool is_irreducible(const Poly& f, std::uint64_t p) {
    const std::size_t m = f.size() - 1;
    if (m <= 1) return true;
    if (has_root(f, p)) return false;
    if (m <= 3) return true;
    for (unsigned i = 1; i <= m / 2; ++i) {
        // x^{p^i} mod f by repeated p-th powering
        Poly x_pow{0, 1};
        for (unsigned r = 0; r < i; ++r) {
            Poly result{1};
            Poly base = x_pow;
            std::uint64_t e = p;
            while (e) {
                if (e & 1) result = poly_mulmod(result, base, f, p);
                base = poly_mulmod(base, base, f, p);
                e >>= 1;
            }
            x_pow = result;
        }
        Poly h = x_pow;
        h.resize(std::max<std::size_t>(h.size(), 2), 0);
        h[1] = (h[1] + p - 1) % p;
        trim(h);
        if (h.empty()) return false;
        Poly g = poly_gcd(f, h, p);
        if (g.size() > 1) return false;
    }
    return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

}  // namespace

struct Field::Impl {
    std::uint64_t p = 0;
    unsigned m = 1;
    std::uint64_t q = 0;
    Poly modulus;
    // Multiplicative tables (extension fields with q <= kTableLimit only).
    std::vector<std::uint32_t> exp;
    std::vector<std::uint32_t> log;

    std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
        if (m == 1) {
            const std::uint64_t s = a + b;
            return s >= p ? s - p : s;
        }
        std::uint64_t result = 0, scale = 1;
        for (unsigned i = 0; i < m; ++i) {
            std::uint64_t d = a % p + b % p;
            if (d >= p) d -= p;
            result += d * scale;
            scale *= p;
            a /= p;
            b /= p;
        }
        return result;
    }

    std::uint64_t neg(std::uint64_t a) const {
        if (m == 1) return a == 0 ? 0 : p - a;
        std::uint64_t result = 0, scale = 1;
        for (unsigned i = 0; i < m; ++i) {
            const std::uint64_t d = a % p;
            result += (d == 0 ? 0 : p - d) * scale;
            scale *= p;
            a /= p;
        }
        return result;
    }

    Poly to_poly(std::uint64_t a) const {
        Poly out(m, 0);
        for (unsigned i = 0; i < m; ++i) {
            out[i] = a % p;
            a /= p;
        }
        return out;
    }

    std::uint64_t from_poly(const Poly& a) const {
        std::uint64_t result = 0;
        for (std::size_t i = a.size(); i-- > 0;) result = result * p + a[i];
        return result;
    }

    std::uint64_t mul_slow(std::uint64_t a, std::uint64_t b) const {
        if (m == 1) return a * b % p;
        return from_poly(poly_mulmod(to_poly(a), to_poly(b), modulus, p));
    }

    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
        if (m == 1) return a * b % p;
        if (a == 0 || b == 0) return 0;
        if (!exp.empty()) {
            std::uint64_t e = std::uint64_t{log[a]} + log[b];
            if (e >= q - 1) e -= q - 1;
            return exp[e];
        }
        return mul_slow(a, b);
    }

    std::uint64_t pow(std::uint64_t a, std::uint64_t e) const {
        std::uint64_t result = 1;
        if (!exp.empty()) {
            if (e == 0) return 1;
            if (a == 0) return 0;
            return exp[(std::uint64_t{log[a]} * (e % (q - 1))) % (q - 1)];
        }
        while (e) {
            if (e & 1) result = mul(result, a);
            a = mul(a, a);
            e >>= 1;
        }
        return result;
    }

    void build_tables() {
        const std::uint64_t order = q - 1;
        const auto factors = prime_factors(order);
        auto slow_pow = [&](std::uint64_t a, std::uint64_t e) {
            std::uint64_t r = 1;
            while (e) {
                if (e & 1) r = mul_slow(r, a);
                a = mul_slow(a, a);
                e >>= 1;
            }
            return r;
        };
        std::uint64_t g = 1;
        for (std::uint64_t cand = 1; cand < q; ++cand) {
            bool primitive = true;
            for (auto r : factors)
                if (slow_pow(cand, order / r) == 1) {
                    primitive = false;
                    break;
                }
            if (primitive) {
                g = cand;
                break;
            }
        }
        exp.assign(order, 0);
        log.assign(q, 0);
        std::uint64_t x = 1;
        for (std::uint64_t i = 0; i < order; ++i) {
            exp[i] = static_cast<std::uint32_t>(x);
            log[x] = static_cast<std::uint32_t>(i);
            x = mul_slow(x, g);
        }
    }
};

Field Field::make(std::uint64_t p, unsigned m, std::optional<std::vector<std::uint64_t>> modulus) {
    if (!is_prime(p)) throw Error(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
    if (m < 1) throw Error(ErrorKind::DegreeMismatch, "extension degree must be >= 1");
    std::uint64_t q = 1;
    for (unsigned i = 0; i < m; ++i) {
        q *= p;
        if (q >= kMaxOrder) throw Error(ErrorKind::UnsupportedField, "field order must be below 2^32");
    }

    auto impl = std::make_shared<Impl>();
    impl->p = p;
    impl->m = m;
    impl->q = q;

    if (modulus) {
        Poly f = *modulus;
        if (f.size() != m + 1)
            throw Error(ErrorKind::DegreeMismatch, "modulus must have exactly m+1 coefficients");
        if (f.back() != 1) throw Error(ErrorKind::DegreeMismatch, "modulus must be monic");
        for (auto c : f)
            if (c >= p) throw Error(ErrorKind::DegreeMismatch, "modulus coefficient out of range");
        if (!is_irreducible(f, p))
            throw Error(ErrorKind::ReducibleModulus, "modulus is reducible over F_" + std::to_string(p));
        impl->modulus = std::move(f);
    } else if (m == 1) {
        impl->modulus = {0, 1};
    } else {
        // smallest encoding of the lower coefficients, read base p
        for (std::uint64_t code = 0; code < q; ++code) {
            Poly f(m + 1, 0);
            std::uint64_t c = code;
            for (unsigned i = 0; i < m; ++i) {
                f[i] = c % p;
                c /= p;
            }
            f[m] = 1;
            if (is_irreducible(f, p)) {
                impl->modulus = std::move(f);
                break;
            }
        }
    }
    if (m > 1 && q <= kTableLimit) impl->build_tables();
    return Field(std::move(impl));
}

Field Field::parse(std::string_view text) {
    auto fail = [&] { return Error(ErrorKind::ParseError, "bad field spec '" + std::string(text) + "'"); };
    auto read_uint = [&](std::string_view s) {
        std::uint64_t v = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) throw fail();
        return v;
    };
    std::string_view head = text;
    std::optional<std::vector<std::uint64_t>> modulus;
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        head = text.substr(0, slash);
        std::vector<std::uint64_t> coeffs;
        std::string_view rest = text.substr(slash + 1);
        while (true) {
            auto comma = rest.find(',');
            coeffs.push_back(read_uint(rest.substr(0, comma)));
            if (comma == std::string_view::npos) break;
            rest = rest.substr(comma + 1);
        }
        modulus = std::move(coeffs);
    }
    std::uint64_t p = 0, m = 1;
    if (auto caret = head.find('^'); caret != std::string_view::npos) {
        p = read_uint(head.substr(0, caret));
        m = read_uint(head.substr(caret + 1));
    } else {
        p = read_uint(head);
    }
    if (m == 0 || m > 64) throw Error(ErrorKind::DegreeMismatch, "bad extension degree");
    return make(p, static_cast<unsigned>(m), std::move(modulus));
}

std::uint64_t Field::p() const noexcept { return impl_->p; }
unsigned Field::m() const noexcept { return impl_->m; }
std::uint64_t Field::q() const noexcept { return impl_->q; }
std::span<const std::uint64_t> Field::modulus() const noexcept { return impl_->modulus; }

Elem Field::elem(std::uint64_t encoding) const {
    if (encoding >= impl_->q)
        throw Error(ErrorKind::IndexOutOfRange,
                    "element encoding " + std::to_string(encoding) + " >= q = " + std::to_string(impl_->q));
    return Elem{encoding};
}

Elem Field::from_int(std::int64_t value) const noexcept {
    const auto p = static_cast<std::int64_t>(impl_->p);
    std::int64_t r = value % p;
    if (r < 0) r += p;
    return Elem{static_cast<std::uint64_t>(r)};
}

std::vector<Elem> Field::elements() const {
    std::vector<Elem> out(impl_->q);
    for (std::uint64_t i = 0; i < impl_->q; ++i) out[i] = Elem{i};
    return out;
}

Elem Field::add(Elem a, Elem b) const noexcept { return Elem{impl_->add(a.v, b.v)}; }
Elem Field::sub(Elem a, Elem b) const noexcept { return Elem{impl_->add(a.v, impl_->neg(b.v))}; }
Elem Field::neg(Elem a) const noexcept { return Elem{impl_->neg(a.v)}; }
Elem Field::mul(Elem a, Elem b) const noexcept { return Elem{impl_->mul(a.v, b.v)}; }

Elem Field::inv(Elem a) const {
    if (a.v == 0) throw Error(ErrorKind::DivisionByZero, "inverse of zero");
    if (impl_->m == 1) return Elem{inv_mod(a.v, impl_->p)};
    if (!impl_->exp.empty()) {
        const std::uint64_t l = impl_->log[a.v];
        return Elem{impl_->exp[l == 0 ? 0 : impl_->q - 1 - l]};
    }
    return Elem{impl_->pow(a.v, impl_->q - 2)};
}

Elem Field::div(Elem a, Elem b) const { return mul(a, inv(b)); }

Elem Field::pow(Elem a, std::uint64_t e) const noexcept { return Elem{impl_->pow(a.v, e)}; }

std::vector<Elem> Field::kth_power_image(std::uint64_t k) const {
    std::vector<bool> seen(impl_->q, false);
    for (std::uint64_t a = 0; a < impl_->q; ++a) seen[impl_->pow(a, k)] = true;
    std::vector<Elem> out;
    for (std::uint64_t a = 0; a < impl_->q; ++a)
        if (seen[a]) out.push_back(Elem{a});
    return out;
}

std::vector<Elem> Field::kth_roots(Elem lambda, std::uint64_t k) const {
    std::vector<Elem> out;
    for (std::uint64_t a = 0; a < impl_->q; ++a)
        if (impl_->pow(a, k) == lambda.v) out.push_back(Elem{a});
    return out;
}

bool Field::is_kth_power(Elem a, std::uint64_t k) const {
    if (a.v == 0) return true;
    // a is a k-th power iff a^{(q-1)/gcd(k,q-1)} = 1
    const std::uint64_t d = gcd_u64(k, impl_->q - 1);
    return impl_->pow(a.v, (impl_->q - 1) / d) == 1;
}

bool Field::minus_one_is_kth_power(std::uint64_t k) const { return is_kth_power(neg(one()), k); }

std::string Field::to_string() const {
    if (impl_->m == 1) return std::to_string(impl_->p);
    std::ostringstream os;
    os << impl_->p << '^' << impl_->m << '/';
    for (std::size_t i = 0; i < impl_->modulus.size(); ++i) os << (i ? "," : "") << impl_->modulus[i];
    return os.str();
}

std::string Field::short_name() const { return "F_" + std::to_string(impl_->q); }

bool operator==(const Field& a, const Field& b) noexcept {
    if (a.impl_ == b.impl_) return true;
    return a.impl_->p == b.impl_->p && a.impl_->m == b.impl_->m && a.impl_->modulus == b.impl_->modulus;
}

Elem parse_elem(const Field& field, std::string_view text) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty())
        throw Error(ErrorKind::ParseError, "bad element '" + std::string(text) + "'");
    return field.elem(v);
}

}  // namespace waring
