#include "waring/matrix.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "waring/power_sums.hpp"

namespace waring {

namespace {

void require_compatible(const UTMatrix& a, const UTMatrix& b) {
    if (a.size() != b.size())
        throw Error(ErrorKind::SizeMismatch,
                    "sizes " + std::to_string(a.size()) + " and " + std::to_string(b.size()) + " differ");
    if (!(a.field() == b.field())) throw Error(ErrorKind::FieldMismatch, "operands live over different fields");
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    while (true) {
        auto pos = s.find(sep);
        parts.push_back(trim(s.substr(0, pos)));
        if (pos == std::string_view::npos) break;
        s = s.substr(pos + 1);
    }
    return parts;
}

std::vector<Elem> diagonal_roots(const UTMatrix& c, std::uint64_t k) {
    const Field& field = c.field();
    std::vector<Elem> roots(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
        auto r = field.kth_roots(c(i, i), k);
        if (r.empty())
            throw Error(ErrorKind::DiagNotKthPower, "c_" + std::to_string(i + 1) + std::to_string(i + 1) + " = " +
                                                        std::to_string(c(i, i).v) + " is not a k-th power");
        roots[i] = r.front();
    }
    return roots;
}

void verify_root(const UTMatrix& root, const UTMatrix& c, std::uint64_t k) {
    if (!(mat_pow(root, k) == c)) throw std::logic_error("triangular root failed its own verification");
}

}  // namespace

UTMatrix::UTMatrix(Field field, std::size_t n)
    : field_(std::move(field)), n_(n), entries_(n * (n + 1) / 2, Elem{0}) {}

UTMatrix UTMatrix::identity(const Field& field, std::size_t n) {
    UTMatrix m(field, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, field.one());
    return m;
}

UTMatrix UTMatrix::diagonal(const Field& field, std::span<const Elem> diag) {
    UTMatrix m(field, diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m.set(i, i, field.elem(diag[i].v));
    return m;
}

UTMatrix UTMatrix::from_packed(const Field& field, std::size_t n, std::span<const Elem> packed) {
    if (packed.size() != n * (n + 1) / 2)
        throw Error(ErrorKind::SizeMismatch, "packed entry count does not match n(n+1)/2");
    UTMatrix m(field, n);
    for (std::size_t i = 0; i < packed.size(); ++i) m.entries_[i] = field.elem(packed[i].v);
    return m;
}

Elem UTMatrix::at(std::size_t i, std::size_t j) const {
    if (i >= n_ || j >= n_) throw Error(ErrorKind::IndexOutOfRange, "matrix index out of range");
    return (*this)(i, j);
}

void UTMatrix::set(std::size_t i, std::size_t j, Elem value) {
    if (i >= n_ || j >= n_) throw Error(ErrorKind::IndexOutOfRange, "matrix index out of range");
    if (i > j) {
        if (value != Elem{}) throw Error(ErrorKind::IndexOutOfRange, "entries below the diagonal are zero");
        return;
    }
    entries_[index(i, j)] = value;
}

std::vector<Elem> UTMatrix::diag() const {
    std::vector<Elem> d(n_);
    for (std::size_t i = 0; i < n_; ++i) d[i] = (*this)(i, i);
    return d;
}

UTMatrix UTMatrix::strict_upper() const {
    UTMatrix m = *this;
    for (std::size_t i = 0; i < n_; ++i) m.set(i, i, Elem{});
    return m;
}

bool UTMatrix::is_diagonal() const noexcept { return nonzero_off_diagonal() == 0; }

bool UTMatrix::is_strictly_upper() const noexcept {
    for (std::size_t i = 0; i < n_; ++i)
        if ((*this)(i, i) != Elem{}) return false;
    return true;
}

std::size_t UTMatrix::nonzero_off_diagonal() const noexcept {
    std::size_t count = 0;
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = i + 1; j < n_; ++j)
            if ((*this)(i, j) != Elem{}) ++count;
    return count;
}

bool operator==(const UTMatrix& a, const UTMatrix& b) {
    return a.n_ == b.n_ && a.entries_ == b.entries_ && a.field_ == b.field_;
}

UTMatrix operator+(const UTMatrix& a, const UTMatrix& b) {
    require_compatible(a, b);
    UTMatrix out(a.field(), a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = i; j < a.size(); ++j) out.set(i, j, a.field().add(a(i, j), b(i, j)));
    return out;
}

UTMatrix operator-(const UTMatrix& a, const UTMatrix& b) {
    require_compatible(a, b);
    UTMatrix out(a.field(), a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = i; j < a.size(); ++j) out.set(i, j, a.field().sub(a(i, j), b(i, j)));
    return out;
}

UTMatrix operator*(const UTMatrix& a, const UTMatrix& b) {
    require_compatible(a, b);
    const Field& f = a.field();
    const std::size_t n = a.size();
    UTMatrix out(f, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            Elem acc{};
            for (std::size_t l = i; l <= j; ++l) acc = f.add(acc, f.mul(a(i, l), b(l, j)));
            out.set(i, j, acc);
        }
    return out;
}

UTMatrix scale(const UTMatrix& a, Elem c) {
    UTMatrix out(a.field(), a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = i; j < a.size(); ++j) out.set(i, j, a.field().mul(c, a(i, j)));
    return out;
}

UTMatrix mat_mul(const UTMatrix& a, const UTMatrix& b) { return a * b; }

UTMatrix mat_pow(const UTMatrix& a, std::uint64_t e) {
    UTMatrix result = UTMatrix::identity(a.field(), a.size());
    UTMatrix base = a;
    while (e) {
        if (e & 1) result = result * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return result;
}

UTMatrix inverse(const UTMatrix& a) {
    const Field& f = a.field();
    const std::size_t n = a.size();
    UTMatrix out(f, n);
    for (std::size_t i = 0; i < n; ++i) out.set(i, i, f.inv(a(i, i)));
    // (A X)_ij = 0 for i < j: x_ij = -a_ii^{-1} sum_{l=i+1..j} a_il x_lj
    for (std::size_t d = 1; d < n; ++d)
        for (std::size_t i = 0; i + d < n; ++i) {
            const std::size_t j = i + d;
            Elem acc{};
            for (std::size_t l = i + 1; l <= j; ++l) acc = f.add(acc, f.mul(a(i, l), out(l, j)));
            out.set(i, j, f.neg(f.mul(out(i, i), acc)));
        }
    return out;
}

std::string to_text(const UTMatrix& a) {
    std::ostringstream os;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (i) os << ';';
        for (std::size_t j = i; j < a.size(); ++j) os << (j > i ? "," : "") << a(i, j).v;
    }
    return os.str();
}

UTMatrix parse_matrix(const Field& field, std::string_view text) {
    const auto rows = split(trim(text), ';');
    const std::size_t n = rows.size();
    UTMatrix m(field, n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto cells = split(rows[i], ',');
        if (cells.size() != n - i)
            throw Error(ErrorKind::ParseError, "row " + std::to_string(i + 1) + " of '" + std::string(text) +
                                                   "' needs " + std::to_string(n - i) + " entries");
        for (std::size_t j = 0; j < cells.size(); ++j) m.set(i, i + j, parse_elem(field, cells[j]));
    }
    return m;
}

std::string to_pretty(const UTMatrix& a) {
    std::size_t width = 1;
    for (auto e : a.packed()) width = std::max(width, std::to_string(e.v).size());
    std::ostringstream os;
    for (std::size_t i = 0; i < a.size(); ++i) {
        os << '[';
        for (std::size_t j = 0; j < a.size(); ++j) {
            const std::string cell = std::to_string(a(i, j).v);
            os << (j ? " " : "") << std::string(width - cell.size(), ' ') << cell;
        }
        os << "]\n";
    }
    return os.str();
}

UTMatrix elementary(const Field& field, std::size_t n, std::size_t r, std::size_t s) {
    if (r >= n || s >= n || r > s) throw Error(ErrorKind::IndexOutOfRange, "elementary matrix needs r <= s < n");
    UTMatrix m(field, n);
    m.set(r, s, field.one());
    return m;
}

UTMatrix jordan_block(const Field& field, Elem lambda, std::size_t n) {
    UTMatrix m(field, n);
    for (std::size_t i = 0; i < n; ++i) {
        m.set(i, i, field.elem(lambda.v));
        if (i + 1 < n) m.set(i, i + 1, field.one());
    }
    return m;
}

UTMatrix junction_matrix(const Field& field, std::span<const std::size_t> partition) {
    if (partition.empty()) throw Error(ErrorKind::BadPartition, "empty partition");
    std::size_t n = 0;
    for (auto part : partition) {
        if (part == 0) throw Error(ErrorKind::BadPartition, "partition parts must be >= 1");
        n += part;
    }
    UTMatrix m(field, n);
    std::size_t boundary = 0;
    for (std::size_t i = 0; i + 1 < partition.size(); ++i) {
        boundary += partition[i];
        m.set(boundary - 1, boundary, field.one());
    }
    return m;
}

UTMatrix direct_sum(const UTMatrix& a, const UTMatrix& b) {
    if (!(a.field() == b.field())) throw Error(ErrorKind::FieldMismatch, "operands live over different fields");
    UTMatrix m(a.field(), a.size() + b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = i; j < a.size(); ++j) m.set(i, j, a(i, j));
    for (std::size_t i = 0; i < b.size(); ++i)
        for (std::size_t j = i; j < b.size(); ++j) m.set(a.size() + i, a.size() + j, b(i, j));
    return m;
}

UTMatrix kth_root_backsubstitute(const UTMatrix& c, std::uint64_t k) {
    if (k == 0) throw Error(ErrorKind::PreconditionViolated, "k must be >= 1");
    const Field& field = c.field();
    const std::size_t n = c.size();
    UTMatrix a = UTMatrix::diagonal(field, diagonal_roots(c, k));
    for (std::size_t d = 1; d < n; ++d) {
        // entries of superdiagonal d are still zero, so this is alpha_rs
        const UTMatrix partial = mat_pow(a, k);
        for (std::size_t r = 0; r + d < n; ++r) {
            const std::size_t s = r + d;
            const Elem residual = field.sub(c(r, s), partial(r, s));
            const Elem f = eval_f(field, a(r, r), a(s, s), k);
            if (f == field.zero()) {
                if (residual == field.zero()) continue;
                throw Error(ErrorKind::PreconditionViolated,
                            "f(a_rr, a_ss) vanishes at (" + std::to_string(r + 1) + "," + std::to_string(s + 1) +
                                ") while the entry still needs a correction");
            }
            a.set(r, s, field.div(residual, f));
        }
    }
    verify_root(a, c, k);
    return a;
}

UTMatrix kth_root_distinct_diag(const UTMatrix& c, std::uint64_t k) {
    const auto d = c.diag();
    for (std::size_t i = 0; i < d.size(); ++i)
        if (!c.field().is_kth_power(d[i], k))
            throw Error(ErrorKind::DiagNotKthPower, "c_" + std::to_string(i + 1) + std::to_string(i + 1) + " = " +
                                                        std::to_string(d[i].v) + " is not a k-th power");
    for (std::size_t i = 0; i < d.size(); ++i)
        for (std::size_t j = i + 1; j < d.size(); ++j)
            if (d[i] == d[j])
                throw Error(ErrorKind::DiagNotDistinct, "diagonal positions " + std::to_string(i + 1) + " and " +
                                                            std::to_string(j + 1) + " agree");
    return kth_root_backsubstitute(c, k);
}

UTMatrix kth_root_sparse(const UTMatrix& c, std::uint64_t k) {
    if (k == 0) throw Error(ErrorKind::PreconditionViolated, "k must be >= 1");
    const Field& field = c.field();
    const std::size_t n = c.size();
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t s = r + 1; s < n; ++s) {
            if (c(r, s) == field.zero()) continue;
            if (c(r, r) == c(s, s))
                throw Error(ErrorKind::PreconditionViolated, "c_" + std::to_string(r + 1) + std::to_string(s + 1) +
                                                                 " != 0 but c_rr = c_ss");
            for (std::size_t t = s + 1; t < n; ++t)
                if (c(s, t) != field.zero())
                    throw Error(ErrorKind::PreconditionViolated,
                                "chain condition fails: c_" + std::to_string(r + 1) + std::to_string(s + 1) +
                                    " c_" + std::to_string(s + 1) + std::to_string(t + 1) + " != 0");
        }
    UTMatrix a = UTMatrix::diagonal(field, diagonal_roots(c, k));
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t s = r + 1; s < n; ++s)
            if (c(r, s) != field.zero()) a.set(r, s, field.div(c(r, s), eval_f(field, a(r, r), a(s, s), k)));
    verify_root(a, c, k);
    return a;
}

EmbeddedPower embed_power(const UTMatrix& c, const UTMatrix& root, std::size_t l, Elem x, std::uint64_t k) {
    const Field& field = c.field();
    const std::size_t n = c.size();
    if (l > n) throw Error(ErrorKind::IndexOutOfRange, "insertion index must lie in 0..n");
    if (x == field.zero()) throw Error(ErrorKind::PreconditionViolated, "x must be nonzero");
    if (!(mat_pow(root, k) == c)) throw Error(ErrorKind::RootMismatch, "root^k differs from C");
    auto src = [l](std::size_t i) { return i < l ? i : i - 1; };
    UTMatrix b(field, n + 1), rb(field, n + 1);
    for (std::size_t i = 0; i <= n; ++i)
        for (std::size_t j = i; j <= n; ++j) {
            if (i == l || j == l) continue;
            b.set(i, j, c(src(i), src(j)));
            rb.set(i, j, root(src(i), src(j)));
        }
    b.set(l, l, field.pow(x, k));
    rb.set(l, l, x);
    if (!(mat_pow(rb, k) == b)) throw Error(ErrorKind::RootMismatch, "embedded root does not reproduce B");
    return {std::move(b), std::move(rb)};
}

}  // namespace waring
