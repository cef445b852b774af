#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "waring/error.hpp"

namespace waring {

/// An element of F_q, stored as its canonical encoding in [0, q): the
/// coefficients of the residue polynomial written base p, lowest degree first.
struct Elem {
    std::uint64_t v = 0;

    constexpr Elem() = default;
    constexpr explicit Elem(std::uint64_t value) : v(value) {}

    friend constexpr auto operator<=>(Elem, Elem) = default;
};

/// The finite field F_q, q = p^m, with q < 2^32.
///
/// A Field is a cheap, immutable handle: copies share the same arithmetic
/// tables, and all member functions are const and thread-safe. Two handles
/// compare equal iff they use the same characteristic and modulus.
class Field {
public:
    /// Builds F_{p^m}. Without an explicit modulus (coefficients c0..cm, low
    /// degree first, monic) the monic irreducible of smallest encoding is used.
    static Field make(std::uint64_t p, unsigned m = 1,
                      std::optional<std::vector<std::uint64_t>> modulus = std::nullopt);

    /// Text form "p", "p^m" or "p^m/c0,c1,...,cm".
    static Field parse(std::string_view text);

    std::uint64_t p() const noexcept;
    unsigned m() const noexcept;
    std::uint64_t q() const noexcept;
    /// Monic modulus coefficients c0..cm (just {0, 1} for prime fields).
    std::span<const std::uint64_t> modulus() const noexcept;

    Elem zero() const noexcept { return Elem{0}; }
    Elem one() const noexcept { return Elem{1}; }
    /// Checked conversion from an encoding.
    Elem elem(std::uint64_t encoding) const;
    /// Image of an integer under Z -> F_p -> F_q.
    Elem from_int(std::int64_t value) const noexcept;
    /// All q elements in encoding order.
    std::vector<Elem> elements() const;

    Elem add(Elem a, Elem b) const noexcept;
    Elem sub(Elem a, Elem b) const noexcept;
    Elem neg(Elem a) const noexcept;
    Elem mul(Elem a, Elem b) const noexcept;
    Elem inv(Elem a) const;
    Elem div(Elem a, Elem b) const;
    /// a^e by repeated squaring; 0^0 = 1.
    Elem pow(Elem a, std::uint64_t e) const noexcept;

    /// {a^k : a in F_q}, ascending by encoding.
    std::vector<Elem> kth_power_image(std::uint64_t k) const;
    /// {a : a^k = lambda}, ascending by encoding.
    std::vector<Elem> kth_roots(Elem lambda, std::uint64_t k) const;
    bool is_kth_power(Elem a, std::uint64_t k) const;
    /// Literal test: exists x with x^k = -1 (true in characteristic 2).
    bool minus_one_is_kth_power(std::uint64_t k) const;

    /// Canonical text form "p^m/c0,...,cm" (just "p" for prime fields).
    std::string to_string() const;
    std::string short_name() const;

    friend bool operator==(const Field& a, const Field& b) noexcept;

    struct Impl;

private:
    explicit Field(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
    std::shared_ptr<const Impl> impl_;
};

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) noexcept;
bool is_prime(std::uint64_t n) noexcept;

/// Reads an element encoding in decimal.
Elem parse_elem(const Field& field, std::string_view text);

}  // namespace waring
