#include "waring/oracle.hpp"

#include <algorithm>
#include <sstream>

#include "waring/power_sums.hpp"

namespace waring {

namespace {

constexpr std::uint64_t kMatrixLimit = 100'000'000;
constexpr std::uint64_t kGroupLimit = 10'000'000;
constexpr std::uint64_t kWorkLimit = 2'000'000'000;

std::uint64_t checked_power(std::uint64_t base, std::size_t exp, std::uint64_t limit, const std::string& what) {
    std::uint64_t out = 1;
    for (std::size_t i = 0; i < exp; ++i) {
        if (out > limit / base) throw Error(ErrorKind::EnumerationTooLarge, what + " exceeds the enumeration limit");
        out *= base;
    }
    return out;
}

void check_work(std::uint64_t a, std::uint64_t b) {
    const std::uint64_t limit = enumeration_limit(kWorkLimit);
    if (a != 0 && b > limit / a)
        throw Error(ErrorKind::EnumerationTooLarge, "sumset search would need more than " +
                                                        std::to_string(limit) + " additions");
}

std::string min_text(const std::optional<std::size_t>& m, std::size_t cap) {
    return m ? std::to_string(*m) : ">" + std::to_string(cap);
}

}  // namespace

MatrixCodec::MatrixCodec(Field field, std::size_t n, std::uint64_t limit)
    : field_(std::move(field)), n_(n), dim_(n * (n + 1) / 2) {
    count_ = checked_power(field_.q(), dim_, limit, "q^{n(n+1)/2} = " + std::to_string(field_.q()) + "^" +
                                                        std::to_string(dim_));
}

std::uint64_t MatrixCodec::encode(const UTMatrix& a) const {
    if (a.size() != n_) throw Error(ErrorKind::SizeMismatch, "codec size differs from matrix size");
    std::uint64_t code = 0;
    const auto packed = a.packed();
    for (std::size_t i = dim_; i-- > 0;) code = code * field_.q() + packed[i].v;
    return code;
}

UTMatrix MatrixCodec::decode(std::uint64_t code) const {
    std::vector<Elem> packed(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
        packed[i] = Elem{code % field_.q()};
        code /= field_.q();
    }
    return UTMatrix::from_packed(field_, n_, packed);
}

std::uint64_t MatrixCodec::add(std::uint64_t a, std::uint64_t b) const {
    const std::uint64_t q = field_.q();
    std::uint64_t out = 0, scale = 1;
    for (std::size_t i = 0; i < dim_; ++i) {
        out += field_.add(Elem{a % q}, Elem{b % q}).v * scale;
        a /= q;
        b /= q;
        scale *= q;
    }
    return out;
}

std::uint64_t MatrixCodec::sub(std::uint64_t a, std::uint64_t b) const {
    const std::uint64_t q = field_.q();
    std::uint64_t out = 0, scale = 1;
    for (std::size_t i = 0; i < dim_; ++i) {
        out += field_.sub(Elem{a % q}, Elem{b % q}).v * scale;
        a /= q;
        b /= q;
        scale *= q;
    }
    return out;
}

KthPowerSet::KthPowerSet(const Field& field, std::size_t n, std::uint64_t k)
    : codec_(field, n, enumeration_limit(kMatrixLimit)), k_(k), member_(codec_.count(), false) {
    std::vector<std::uint64_t> root(codec_.count(), codec_.count());
    for (std::uint64_t code = 0; code < codec_.count(); ++code) {
        const std::uint64_t image = codec_.encode(mat_pow(codec_.decode(code), k));
        if (!member_[image]) {
            member_[image] = true;
            root[image] = code;
        }
    }
    for (std::uint64_t code = 0; code < codec_.count(); ++code)
        if (member_[code]) {
            members_.push_back(code);
            roots_.push_back(root[code]);
        }
}

std::optional<UTMatrix> KthPowerSet::root_of(const UTMatrix& c) const {
    const auto code = codec_.encode(c);
    auto it = std::lower_bound(members_.begin(), members_.end(), code);
    if (it == members_.end() || *it != code) return std::nullopt;
    return codec_.decode(roots_[static_cast<std::size_t>(it - members_.begin())]);
}

KthPowerSet all_kth_powers(const Field& field, std::size_t n, std::uint64_t k) { return KthPowerSet(field, n, k); }

std::optional<std::pair<UTMatrix, UTMatrix>> two_power_witness(const KthPowerSet& powers, const UTMatrix& c) {
    const auto& codec = powers.codec();
    const auto target = codec.encode(c);
    for (auto a : powers.members()) {
        const auto rest = codec.sub(target, a);
        if (powers.contains(rest))
            return std::pair{*powers.root_of(codec.decode(a)), *powers.root_of(codec.decode(rest))};
    }
    return std::nullopt;
}

std::optional<std::size_t> min_waring_number(const KthPowerSet& powers, const UTMatrix& c, std::size_t cap) {
    const auto& codec = powers.codec();
    const auto target = codec.encode(c);
    if (cap >= 1 && powers.contains(target)) return 1;
    if (cap < 2) return std::nullopt;
    if (two_power_witness(powers, c)) return 2;

    // reach holds sums of r - 1 powers; fresh is what the last level added
    std::vector<bool> reach(codec.count(), false);
    std::vector<std::uint64_t> fresh = powers.members();
    for (auto code : fresh) reach[code] = true;
    for (std::size_t r = 3; r <= cap; ++r) {
        check_work(fresh.size(), powers.size());
        std::vector<std::uint64_t> next;
        for (auto s : fresh)
            for (auto p : powers.members()) {
                const auto t = codec.add(s, p);
                if (!reach[t]) {
                    reach[t] = true;
                    next.push_back(t);
                }
            }
        if (next.empty()) return std::nullopt;
        fresh = std::move(next);
        for (auto p : powers.members())
            if (reach[codec.sub(target, p)]) return r;
    }
    return std::nullopt;
}

std::optional<std::size_t> min_waring_number(const UTMatrix& c, std::uint64_t k, std::size_t cap) {
    return min_waring_number(all_kth_powers(c.field(), c.size(), k), c, cap);
}

WaringReport waring_report(const Field& field, std::size_t n, std::uint64_t k, std::size_t cap) {
    const KthPowerSet powers(field, n, k);
    const auto& codec = powers.codec();
    const std::uint64_t count = codec.count();
    constexpr std::uint64_t none = ~std::uint64_t{0};

    WaringReport report{field, n, k, cap, powers.size(), {}, {}, std::nullopt, {}};
    report.per_matrix_min.assign(count, std::nullopt);
    std::vector<std::uint64_t> parent(count, none), summand(count, none);

    std::vector<std::uint64_t> fresh;
    if (cap >= 1)
        for (auto code : powers.members()) {
            report.per_matrix_min[code] = 1;
            summand[code] = code;
            fresh.push_back(code);
        }
    for (std::size_t r = 2; r <= cap && !fresh.empty(); ++r) {
        check_work(fresh.size(), powers.size());
        std::vector<std::uint64_t> next;
        for (auto s : fresh)
            for (auto p : powers.members()) {
                const auto t = codec.add(s, p);
                if (report.per_matrix_min[t]) continue;
                report.per_matrix_min[t] = r;
                parent[t] = s;
                summand[t] = p;
                next.push_back(t);
            }
        fresh = std::move(next);
    }

    bool all_reached = true;
    std::size_t worst = 0;
    std::map<std::size_t, std::uint64_t> first;
    for (std::uint64_t code = 0; code < count; ++code) {
        const auto& m = report.per_matrix_min[code];
        ++report.histogram[m ? *m : 0];
        if (!m) {
            all_reached = false;
            continue;
        }
        worst = std::max(worst, *m);
        first.emplace(*m, code);
    }
    if (all_reached) report.max_over_field = worst;
    for (auto [m, code] : first) {
        WaringWitness w{codec.decode(code), {}};
        for (std::uint64_t t = code; t != none; t = parent[t])
            w.roots.push_back(*powers.root_of(codec.decode(summand[t])));
        std::reverse(w.roots.begin(), w.roots.end());
        report.witnesses.push_back(std::move(w));
    }
    return report;
}

std::string WaringReport::to_csv() const {
    const MatrixCodec codec(field, n, per_matrix_min.size());
    std::ostringstream os;
    os << "matrix,min_powers\n";
    for (std::uint64_t code = 0; code < per_matrix_min.size(); ++code)
        os << '"' << to_text(codec.decode(code)) << "\"," << min_text(per_matrix_min[code], cap) << '\n';
    return os.str();
}

std::optional<ConjugationWitness> bn_conjugate(const UTMatrix& a, const UTMatrix& b) {
    if (a.size() != b.size()) throw Error(ErrorKind::SizeMismatch, "matrices differ in size");
    if (!(a.field() == b.field())) throw Error(ErrorKind::FieldMismatch, "matrices live over different fields");
    const Field& field = a.field();
    const std::size_t n = a.size();
    const std::uint64_t q = field.q();
    const std::uint64_t limit = enumeration_limit(kGroupLimit);
    const std::uint64_t units = checked_power(q - 1, n, limit, "|B_n|");
    checked_power(q, n * (n - 1) / 2, limit / units, "|B_n|");
    if (a.diag() != b.diag()) return std::nullopt;

    // odometer over packed entries, diagonal digits ranging over 1..q-1
    const std::size_t dim = n * (n + 1) / 2;
    std::vector<bool> is_diag(dim, false);
    for (std::size_t i = 0, pos = 0; i < n; pos += n - i, ++i) is_diag[pos] = true;
    std::vector<Elem> packed(dim, Elem{0});
    for (std::size_t i = 0; i < dim; ++i)
        if (is_diag[i]) packed[i] = Elem{1};
    while (true) {
        const UTMatrix p = UTMatrix::from_packed(field, n, packed);
        if (a * p == p * b) {
            ConjugationWitness w{p, a, b};
            if (!w.verify()) throw std::logic_error("conjugation witness failed verification");
            return w;
        }
        std::size_t i = 0;
        for (; i < dim; ++i) {
            if (packed[i].v + 1 < q) {
                ++packed[i].v;
                break;
            }
            packed[i] = Elem{is_diag[i] ? 1u : 0u};
        }
        if (i == dim) return std::nullopt;
    }
}

bool NegativeReport::all_hold() const {
    return std::all_of(checks.begin(), checks.end(), [](const NegativeCheck& c) { return !c.applicable || c.holds; });
}

NegativeReport negative_checks(const Field& field, std::uint64_t k) {
    NegativeReport report{field, k, {}};
    const std::uint64_t q = field.q();
    const auto fits = [](std::uint64_t base, std::size_t exp, std::uint64_t limit) {
        try {
            checked_power(base, exp, limit, "");
            return true;
        } catch (const Error&) {
            return false;
        }
    };

    {
        NegativeCheck check{"junction_2_2_not_square", "E_12 + E_34 is not a square in T_4", false, false, ""};
        check.applicable = k == 2 && fits(q, 10, enumeration_limit(kMatrixLimit));
        if (check.applicable) {
            const std::vector<std::size_t> parts{2, 2};
            const auto squares = all_kth_powers(field, 4, 2);
            check.holds = !squares.contains(junction_matrix(field, parts));
            check.detail = std::to_string(squares.size()) + " squares among " +
                           std::to_string(squares.codec().count()) + " matrices";
        } else {
            check.detail = k == 2 ? "T_4 enumeration exceeds the guard" : "only stated for k = 2";
        }
        report.checks.push_back(std::move(check));
    }

    const bool minus_one = field.minus_one_is_kth_power(k);
    for (std::size_t n : {2, 3}) {
        NegativeCheck check{"jordan_" + std::to_string(n) + "_not_two_powers",
                            "J_{0," + std::to_string(n) + "} is not a sum of two k-th powers", false, false, ""};
        check.applicable = field.p() != 2 && !minus_one && fits(q, n * (n + 1) / 2, enumeration_limit(kMatrixLimit));
        if (check.applicable) {
            const auto powers = all_kth_powers(field, n, k);
            const auto j = jordan_block(field, field.zero(), n);
            check.holds = !two_power_witness(powers, j);
            if (n == 2) {
                const auto m = min_waring_number(powers, j, 4);
                check.detail = "minimum number of k-th powers: " + min_text(m, 4);
            } else {
                check.detail = "no A^k + B^k among " + std::to_string(powers.size()) + " k-th powers";
            }
        } else {
            check.detail = minus_one ? "-1 is a k-th power" : "hypotheses or guard not met";
        }
        report.checks.push_back(std::move(check));
    }

    {
        NegativeCheck check{"unipotent_2x2_not_power", "[[1,1],[0,1]] is not a k-th power in T_2", false, false, ""};
        check.applicable = k % field.p() == 0 && fits(q, 3, enumeration_limit(kMatrixLimit));
        if (check.applicable) {
            const auto powers = all_kth_powers(field, 2, k);
            check.holds = !powers.contains(parse_matrix(field, "1,1;1"));
            check.detail = std::to_string(powers.codec().count()) + " matrices powered";
        } else {
            check.detail = "needs p | k";
        }
        report.checks.push_back(std::move(check));
    }

    {
        NegativeCheck check{"jordan_4_squared_not_conjugate", "J_{0,4}^2 is not B_4-conjugate to J_{0,2} + J_{0,2}",
                            false, false, ""};
        const std::uint64_t limit = enumeration_limit(kGroupLimit);
        check.applicable = k == 2 && fits(q - 1, 4, limit) && fits(q, 6, limit / ((q - 1) * (q - 1) * (q - 1) * (q - 1)));
        if (check.applicable) {
            const auto j2 = jordan_block(field, field.zero(), 2);
            const auto lhs = mat_pow(jordan_block(field, field.zero(), 4), 2);
            check.holds = !bn_conjugate(lhs, direct_sum(j2, j2));
            check.detail = "exhaustive scan of B_4";
        } else {
            check.detail = k == 2 ? "B_4 enumeration exceeds the guard" : "only stated for k = 2";
        }
        report.checks.push_back(std::move(check));
    }
    return report;
}

}  // namespace waring
