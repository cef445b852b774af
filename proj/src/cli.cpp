#include "waring/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "waring/canonical.hpp"
#include "waring/decomposer.hpp"
#include "waring/instances.hpp"
#include "waring/oracle.hpp"
#include "waring/power_sums.hpp"
#include "waring/report.hpp"

namespace waring::cli {

namespace {

struct Options {
    std::string q;
    std::uint64_t k = 2;
    std::size_t n = 0;
    std::vector<std::string> matrices;
    std::string lambda;
    int parts = 2;
    std::size_t cap = 4;
    std::string row;
    std::size_t m = 2;
    std::string alpha;
    std::string method = "general";
    std::string entry;
    std::string csv;
    bool structured = false;
    bool json = false;
    bool k_given = false;
};

/// Inputs parsed before any computation; failures here are usage errors.
struct Inputs {
    std::optional<Field> field;
    std::vector<UTMatrix> matrices;
    std::optional<Elem> lambda;
};

std::string join(const std::vector<Elem>& xs) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? "," : "") + std::to_string(xs[i].v);
    return out;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

void print_matrix(std::ostream& out, const std::string& label, const UTMatrix& m) {
    out << label << " = " << to_text(m) << '\n';
    std::istringstream rows(to_pretty(m));
    for (std::string line; std::getline(rows, line);) out << "    " << line << '\n';
}

void print_classification(std::ostream& out, const SolutionClassification& cls) {
    out << "X^" << cls.k << " + Y^" << cls.k << " = " << cls.lambda.v << " over F_" << cls.q << ": "
        << cls.solution_count() << " solutions, " << cls.class_count() << " classes\n";
    out << "  U (x^k = y^k): " << cls.symmetric.size() << " solutions\n";
    for (std::size_t i = 0; i < cls.classes.size(); ++i) {
        const auto& c = cls.classes[i];
        out << "  V_" << std::left << std::setw(3) << i + 1 << std::right << " sig (" << c.sig_x.v << ","
            << c.sig_y.v << ")  size " << c.members.size() << "  rep (" << c.rep().x.v << "," << c.rep().y.v
            << ")\n";
    }
}

void print_result(std::ostream& out, const DecompositionResult& r) {
    print_matrix(out, "C", r.target);
    if (r.failure) {
        out << "failed: " << r.failure->message << '\n';
        for (const auto& s : r.failure->shortages)
            out << "  eigenvalue " << s.lambda.v << " -> target " << s.target.v << ": multiplicity "
                << s.multiplicity << ", classes " << s.classes << (s.blocking ? "  (blocking)" : "") << '\n';
        out << "  guaranteed only for q > 4 n^2 k^16 = " << std::fixed << std::setprecision(0) << r.failure->threshold << std::defaultfloat << '\n';
        return;
    }
    static const char* names[] = {"A", "B", "D"};
    for (std::size_t i = 0; i < r.parts.size(); ++i) print_matrix(out, names[i < 3 ? i : 2], r.parts[i]);
    out << "tier: " << to_string(r.assignment.tier) << "\nverified: " << yes_no(r.verified) << '\n';
}

class Runner {
public:
    Runner(const Options& opt, Inputs in, std::ostream& out) : opt_(opt), in_(std::move(in)), out_(out) {}

    int field() {
        const Field& f = *in_.field;
        json j{{"field", to_json(f)}};
        if (opt_.k_given) {
            const auto image = f.kth_power_image(opt_.k);
            const auto zeros = f_zero_characterization(f, opt_.k);
            j["k"] = opt_.k;
            json img = json::array();
            for (auto e : image) img.push_back(e.v);
            j["kth_powers"] = img;
            j["minus_one_is_kth_power"] = f.minus_one_is_kth_power(opt_.k);
            j["f_zeros"] = to_json(zeros);
            std::optional<ZeroSumClassCount> zs;
            try {
                zs = count_zero_sum_classes(f, opt_.k);
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::HypothesisViolated) throw;
            }
            j["zero_sum_classes"] =
                zs ? json{{"formula", zs->formula}, {"observed", zs->observed}, {"agrees", zs->agrees()}} : json(nullptr);
            if (!opt_.json) {
                out_ << f.short_name() << " = " << f.to_string() << "  (p = " << f.p() << ", m = " << f.m() << ")\n"
                     << "k-th powers (k = " << opt_.k << "): {" << join(image) << "}\n"
                     << "-1 is a k-th power: " << yes_no(f.minus_one_is_kth_power(opt_.k)) << '\n'
                     << "f(a,b) = 0 characterization: " << (zeros.ok() ? "holds" : "VIOLATED") << " (" << zeros.zeros
                     << " zeros among " << zeros.pairs_checked << " pairs)\n";
                if (zs) out_ << "classes of X^k + Y^k = 0: " << zs->observed << " (formula " << zs->formula << ")\n";
                return Success;
            }
        } else if (!opt_.json) {
            out_ << f.short_name() << " = " << f.to_string() << "  (p = " << f.p() << ", m = " << f.m() << ")\n";
            return Success;
        }
        out_ << j.dump(2) << '\n';
        return Success;
    }

    int solve() {
        const Field& f = *in_.field;
        Elem lambda = *in_.lambda;
        json j;
        std::optional<Shift> shift;
        if (opt_.parts == 3) {
            shift = reduce_three_to_two(f, lambda, opt_.k, {});
            lambda = shift->shifted;
        }
        const PowerMap powers(f, opt_.k);
        const auto sols = enumerate_pair_solutions(powers, lambda);
        const auto cls = classify_solutions(powers, lambda, sols);
        if (opt_.json) {
            j = to_json(cls);
            json arr = json::array();
            for (const auto& s : sols) arr.push_back({s.x.v, s.y.v});
            j["solutions"] = std::move(arr);
            if (shift) j["shift"] = {{"z", shift->z.v}, {"lambda", in_.lambda->v}, {"shifted", shift->shifted.v}};
            out_ << j.dump(2) << '\n';
            return Success;
        }
        if (shift)
            out_ << "shift z = " << shift->z.v << ": " << in_.lambda->v << " - z^k = " << shift->shifted.v << '\n';
        print_classification(out_, cls);
        out_ << "solutions:";
        for (const auto& s : sols) out_ << " (" << s.x.v << "," << s.y.v << ")";
        out_ << '\n';
        return Success;
    }

    int classify() {
        const Field& f = *in_.field;
        const auto cls = classify_solutions(f, *in_.lambda, opt_.k);
        std::optional<std::vector<PairSolution>> selected;
        if (opt_.n) selected = select_pairs(f, *in_.lambda, opt_.k, opt_.n);
        if (opt_.json) {
            json j = to_json(cls);
            if (selected) {
                json arr = json::array();
                for (const auto& s : *selected) arr.push_back({s.x.v, s.y.v});
                j["selected"] = std::move(arr);
            }
            out_ << j.dump(2) << '\n';
            return Success;
        }
        print_classification(out_, cls);
        if (selected) {
            out_ << "selected " << opt_.n << ":";
            for (const auto& s : *selected) out_ << " (" << s.x.v << "," << s.y.v << ")";
            out_ << '\n';
        }
        return Success;
    }

    int decompose() {
        const UTMatrix& c = in_.matrices.front();
        if (opt_.structured) return structured(c, std::nullopt);
        const auto r = opt_.parts == 3 ? decompose_three(c, opt_.k) : decompose_two(c, opt_.k);
        if (opt_.json)
            out_ << to_json(r).dump(2) << '\n';
        else
            print_result(out_, r);
        return r.ok() ? Success : DomainFailure;
    }

    int root() {
        const UTMatrix& c = in_.matrices.front();
        UTMatrix a = opt_.method == "distinct" ? kth_root_distinct_diag(c, opt_.k)
                     : opt_.method == "sparse" ? kth_root_sparse(c, opt_.k)
                                               : kth_root_backsubstitute(c, opt_.k);
        const bool ok = mat_pow(a, opt_.k) == c;
        if (opt_.json) {
            out_ << json{{"target", to_text(c)}, {"k", opt_.k}, {"method", opt_.method}, {"root", to_text(a)},
                         {"verified", ok}}
                        .dump(2)
                 << '\n';
        } else {
            print_matrix(out_, "C", c);
            print_matrix(out_, "A", a);
            out_ << "A^" << opt_.k << " = C: " << yes_no(ok) << '\n';
        }
        return ok ? Success : DomainFailure;
    }

    int table() {
        const Field& f = *in_.field;
        std::vector<std::string> rows;
        if (!opt_.row.empty()) {
            rows.push_back(opt_.row);
        } else {
            for (const auto& r : table_rows()) rows.push_back(r.presentation);
        }
        json all = json::array();
        int status = Success;
        for (const auto& row : rows) {
            const auto pres = Presentation::parse(row, opt_.n);
            UTMatrix c = pres.to_matrix(f);
            if (in_.lambda)
                for (std::size_t i = 0; i < c.size(); ++i) c.set(i, i, *in_.lambda);
            const bool connected = is_indecomposable(c.strict_upper());
            if (!opt_.json) out_ << "row " << pres.render() << "  (n = " << pres.n << ", indecomposable: "
                                 << yes_no(connected) << ")\n";
            json j;
            const int s = structured(c, &j);
            j["row"] = pres.render();
            j["indecomposable"] = connected;
            all.push_back(std::move(j));
            if (s != Success) status = s;
        }
        if (opt_.json) out_ << (rows.size() == 1 ? all.front() : all).dump(2) << '\n';
        return status;
    }

    int oracle() {
        const Field& f = *in_.field;
        if (!in_.matrices.empty()) {
            const auto& c = in_.matrices.front();
            const auto m = min_waring_number(c, opt_.k, opt_.cap);
            if (opt_.json) {
                out_ << json{{"target", to_text(c)}, {"k", opt_.k}, {"cap", opt_.cap},
                             {"min", m ? json(*m) : json(nullptr)}}
                            .dump(2)
                     << '\n';
            } else {
                out_ << "minimum number of " << opt_.k << "-th powers for " << to_text(c) << ": "
                     << (m ? std::to_string(*m) : "> " + std::to_string(opt_.cap)) << '\n';
            }
            return Success;
        }
        if (opt_.n) {
            const auto report = waring_report(f, opt_.n, opt_.k, opt_.cap);
            if (!opt_.csv.empty()) {
                std::ofstream file(opt_.csv);
                if (!file) throw Error(ErrorKind::PreconditionViolated, "cannot write " + opt_.csv);
                file << report.to_csv();
            }
            if (opt_.json) {
                out_ << to_json(report).dump(2) << '\n';
            } else {
                out_ << "T_" << opt_.n << "(F_" << f.q() << "), k = " << opt_.k << ": " << report.per_matrix_min.size()
                     << " matrices, " << report.power_count << " k-th powers\n";
                for (auto [m, count] : report.histogram)
                    out_ << "  " << std::setw(4) << (m ? std::to_string(m) : ">" + std::to_string(opt_.cap)) << "  "
                         << count << '\n';
                out_ << "Waring number: "
                     << (report.max_over_field ? std::to_string(*report.max_over_field)
                                               : "> " + std::to_string(opt_.cap))
                     << '\n';
            }
            return Success;
        }
        const auto report = negative_checks(f, opt_.k);
        if (opt_.json) {
            out_ << to_json(report).dump(2) << '\n';
        } else {
            for (const auto& c : report.checks)
                out_ << std::left << std::setw(32) << c.name << std::right
                     << (c.applicable ? (c.holds ? "holds   " : "FAILS   ") : "skipped ") << c.detail << '\n';
        }
        return report.all_hold() ? Success : DomainFailure;
    }

    int bound() {
        const Field& f = *in_.field;
        std::vector<Elem> alpha(opt_.m, f.one());
        if (!opt_.alpha.empty()) {
            alpha.clear();
            std::stringstream ss(opt_.alpha);
            for (std::string tok; std::getline(ss, tok, ',');) alpha.push_back(parse_elem(f, tok));
        }
        const auto r = lang_weil_check(f, opt_.k, alpha);
        if (opt_.json) {
            out_ << to_json(r).dump(2) << '\n';
        } else {
            out_ << "N = " << r.count << ", q^(m-1) = " << r.expected << ", |N - q^(m-1)| = "
                 << std::abs(static_cast<double>(r.count) - r.expected) << " <= " << r.bound << ": " << yes_no(r.ok)
                 << '\n';
        }
        return r.ok ? Success : DomainFailure;
    }

    int conjugate() {
        const auto& a = in_.matrices.front();
        std::optional<ConjugationWitness> w;
        std::string verdict;
        if (in_.matrices.size() == 2) {
            w = bn_conjugate(a, in_.matrices[1]);
            verdict = w ? "conjugate" : "not conjugate";
        } else if (!opt_.entry.empty()) {
            const auto comma = opt_.entry.find(',');
            const std::size_t l = std::stoul(opt_.entry.substr(0, comma));
            const std::size_t r = std::stoul(opt_.entry.substr(comma + 1));
            if (l == 0 || r == 0) throw Error(ErrorKind::IndexOutOfRange, "entries are 1-based");
            w = annihilate_entry(a, l - 1, r - 1).witness;
            verdict = "entry cleared";
        } else {
            w = diagonalize_distinct(a).witness;
            verdict = "diagonalized";
        }
        if (opt_.json) {
            json j{{"result", verdict}};
            j["witness"] = w ? to_json(*w) : json(nullptr);
            out_ << j.dump(2) << '\n';
        } else {
            out_ << verdict << '\n';
            if (w) {
                print_matrix(out_, "S", w->S);
                print_matrix(out_, "S^-1 A S", w->after);
            }
        }
        return Success;
    }

private:
    int structured(const UTMatrix& c, std::optional<json*> sink) {
        const auto outcome = decompose_structured(c, opt_.k);
        json j{{"target", to_text(c)}, {"k", opt_.k}, {"explored", outcome.explored}};
        if (outcome.result) {
            j["result"] = to_json(*outcome.result);
            j["plan"] = to_json(*outcome.plan);
        } else {
            j["obstruction"] = to_json(*outcome.obstruction);
        }
        if (!opt_.json) {
            if (outcome.result) {
                out_ << "coloring:";
                for (int col : outcome.plan->coloring) out_ << ' ' << col;
                out_ << "  (plan " << outcome.plan->index << ")\n";
                print_result(out_, *outcome.result);
            } else {
                out_ << "obstruction after " << outcome.explored << " colorings: " << outcome.obstruction->reason
                     << '\n';
            }
        } else if (!sink) {
            out_ << j.dump(2) << '\n';
        }
        if (sink) **sink = std::move(j);
        return outcome.result ? Success : DomainFailure;
    }

    const Options& opt_;
    Inputs in_;
    std::ostream& out_;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options opt;
    CLI::App app{"Waring decompositions of upper-triangular matrices over finite fields", "waring"};
    app.require_subcommand(1);

    auto add_field = [&](CLI::App* sub, bool required) {
        auto* o = sub->add_option("--q", opt.q, "field: P, P^M or P^M/c0,...,cM");
        if (required) o->required();
    };
    auto add_k = [&](CLI::App* sub, bool required) {
        auto* o = sub->add_option("--k", opt.k, "exponent k >= 1")->check(CLI::PositiveNumber);
        if (required) o->required();
        return o;
    };
    auto add_json = [&](CLI::App* sub) { sub->add_flag("--json", opt.json, "machine-readable output"); };

    auto* field = app.add_subcommand("field", "field structure and k-th power data");
    add_field(field, true);
    auto* field_k = add_k(field, false);
    add_json(field);

    auto* solve = app.add_subcommand("solve", "solve X^k + Y^k = lambda");
    add_field(solve, true);
    add_k(solve, true);
    solve->add_option("--lambda", opt.lambda, "right-hand side")->required();
    solve->add_option("--parts", opt.parts, "2, or 3 to shift by z^k first")->check(CLI::IsMember({2, 3}));
    add_json(solve);

    auto* classify = app.add_subcommand("classify", "classify solutions into U and V_i");
    add_field(classify, true);
    add_k(classify, true);
    classify->add_option("--lambda", opt.lambda, "right-hand side")->required();
    classify->add_option("--n", opt.n, "also select n class representatives");
    add_json(classify);

    auto* decompose = app.add_subcommand("decompose", "write C as a sum of k-th powers");
    add_field(decompose, true);
    add_k(decompose, true);
    decompose->add_option("--matrix", opt.matrices, "matrix text, rows separated by ';'")->required();
    decompose->add_option("--parts", opt.parts, "number of summands")->check(CLI::IsMember({2, 3}));
    decompose->add_flag("--structured", opt.structured, "two-colored search for constant diagonals");
    add_json(decompose);

    auto* root = app.add_subcommand("root", "triangular k-th root");
    add_field(root, true);
    add_k(root, true);
    root->add_option("--matrix", opt.matrices, "matrix text")->required();
    root->add_option("--method", opt.method, "general, distinct or sparse")
        ->check(CLI::IsMember({"general", "distinct", "sparse"}));
    add_json(root);

    auto* table = app.add_subcommand("table", "structured decomposition of presentation rows");
    add_field(table, false);
    add_k(table, false);
    table->add_option("--row", opt.row, "presentation such as 12|34:13 (all rows when omitted)");
    table->add_option("--n", opt.n, "size (defaults to the largest label)");
    table->add_option("--lambda", opt.lambda, "common diagonal value (default 0)");
    add_json(table);

    auto* oracle = app.add_subcommand("oracle", "brute-force ground truth");
    add_field(oracle, true);
    add_k(oracle, true);
    oracle->add_option("--matrix", opt.matrices, "minimum number of k-th powers for this matrix");
    oracle->add_option("--n", opt.n, "report over all of T_n");
    oracle->add_option("--cap", opt.cap, "largest number of summands tried")->check(CLI::PositiveNumber);
    oracle->add_option("--csv", opt.csv, "write per-matrix minima (with --n)");
    add_json(oracle);

    auto* bound = app.add_subcommand("bound", "point count against the Lang-Weil bound");
    add_field(bound, true);
    add_k(bound, true);
    bound->add_option("--m", opt.m, "number of variables")->check(CLI::PositiveNumber);
    bound->add_option("--alpha", opt.alpha, "coefficients a1,...,am (default all 1)");
    add_json(bound);

    auto* conjugate = app.add_subcommand("conjugate", "B_n-conjugation: diagonalize, clear one entry, or test two matrices");
    add_field(conjugate, true);
    conjugate->add_option("--matrix", opt.matrices, "one or two matrices")->required();
    conjugate->add_option("--entry", opt.entry, "clear entry l,r (1-based) instead of diagonalizing");
    add_json(conjugate);

    std::vector<char*> argv;
    std::vector<std::string> storage{"waring"};
    storage.insert(storage.end(), args.begin(), args.end());
    for (auto& s : storage) argv.push_back(s.data());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return Success;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return Success;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return UsageError;
    }
    CLI::App* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();
    opt.k_given = field_k->count() > 0;

    Inputs in;
    try {
        if (name == "table" && opt.q.empty()) opt.q = "13";
        in.field = Field::parse(opt.q);
        if (name == "conjugate" && opt.matrices.size() > 2)
            throw Error(ErrorKind::ParseError, "conjugate takes one or two matrices");
        if (name != "conjugate" && opt.matrices.size() > 1)
            throw Error(ErrorKind::ParseError, "--matrix given more than once");
        for (const auto& m : opt.matrices) in.matrices.push_back(parse_matrix(*in.field, m));
        if (!opt.lambda.empty()) in.lambda = parse_elem(*in.field, opt.lambda);
        if (name == "table" && !opt.row.empty()) Presentation::parse(opt.row, opt.n);
        if (name == "conjugate" && in.matrices.size() == 2 && in.matrices[0].size() != in.matrices[1].size())
            throw Error(ErrorKind::SizeMismatch, "matrices differ in size");
        if (name == "conjugate" && !opt.entry.empty() &&
            (opt.entry.find(',') == std::string::npos ||
             opt.entry.find_first_not_of("0123456789,") != std::string::npos))
            throw Error(ErrorKind::ParseError, "--entry expects l,r");
        if (name == "bound" && !opt.alpha.empty() && sub->count("--m") == 0)
            opt.m = static_cast<std::size_t>(std::count(opt.alpha.begin(), opt.alpha.end(), ',') + 1);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return UsageError;
    }

    Runner runner(opt, std::move(in), out);
    try {
        if (name == "field") return runner.field();
        if (name == "solve") return runner.solve();
        if (name == "classify") return runner.classify();
        if (name == "decompose") return runner.decompose();
        if (name == "root") return runner.root();
        if (name == "table") return runner.table();
        if (name == "oracle") return runner.oracle();
        if (name == "bound") return runner.bound();
        return runner.conjugate();
    } catch (const Error& e) {
        if (opt.json)
            out << json{{"error", {{"kind", to_string(e.kind())}, {"message", e.what()}}}}.dump(2) << '\n';
        err << "error: " << e.what() << '\n';
        return DomainFailure;
    }
}

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(args, std::cout, std::cerr);
}

}  // namespace waring::cli
