#include <doctest.h>

#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "naive.hpp"
#include "waring/cli.hpp"
#include "waring/matrix.hpp"

using json = nlohmann::ordered_json;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = waring::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

json golden(const std::string& name) {
    std::ifstream in(std::string(WARING_GOLDEN_DIR) + "/" + name);
    REQUIRE(in.good());
    return json::parse(in);
}

// Every string value that looks like a matrix must re-print identically.
void check_matrices_round_trip(const json& j, const waring::Field& f) {
    if (j.is_object() || j.is_array()) {
        for (const auto& v : j) check_matrices_round_trip(v, f);
    } else if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s.find(';') == std::string::npos || s.find_first_not_of("0123456789,;") != std::string::npos) return;
        CHECK(waring::to_text(waring::parse_matrix(f, s)) == s);
    }
}

}  // namespace

TEST_CASE("decompose over F_13 matches the golden file") {
    const auto r = run({"decompose", "--q", "13", "--k", "2", "--matrix", "0,1;0", "--parts", "2", "--json"});
    CHECK(r.code == 0);
    const auto j = json::parse(r.out);
    CHECK(j == golden("decompose_f13_k2.json"));
    CHECK(j["verified"] == true);
    check_matrices_round_trip(j, waring::Field::make(13));

    // independent check of the printed parts
    const auto f = waring::Field::make(13);
    naive::Mat sum = naive::zero(2);
    for (const auto& part : j["parts"]) {
        const auto m = waring::parse_matrix(f, part.get<std::string>());
        naive::Mat d = naive::zero(2);
        d[0][0] = static_cast<std::int64_t>(m(0, 0).v);
        d[0][1] = static_cast<std::int64_t>(m(0, 1).v);
        d[1][1] = static_cast<std::int64_t>(m(1, 1).v);
        sum = naive::add(sum, naive::power(d, 2, 13), 13);
    }
    CHECK(sum == naive::Mat{{0, 1}, {0, 0}});
}

TEST_CASE("decompose failures exit with 1") {
    const auto r = run({"decompose", "--q", "7", "--k", "2", "--matrix", "0,1;0", "--json"});
    CHECK(r.code == 1);
    const auto j = json::parse(r.out);
    CHECK(j == golden("decompose_f7_k2_failure.json"));
    CHECK(j["failure"]["kind"] == "InsufficientClasses");

    const auto three = run({"decompose", "--q", "7", "--k", "2", "--matrix", "0,1;0", "--parts", "3", "--json"});
    CHECK(three.code == 0);
    CHECK(json::parse(three.out) == golden("decompose_three_f7_k2.json"));

    const auto text = run({"decompose", "--q", "7", "--k", "2", "--matrix", "0,1;0"});
    CHECK(text.code == 1);
    CHECK(text.out.find("InsufficientClasses") != std::string::npos);
}

TEST_CASE("solve counts zero-sum classes") {
    const auto r = run({"solve", "--q", "13", "--k", "3", "--lambda", "0", "--json"});
    CHECK(r.code == 0);
    const auto j = json::parse(r.out);
    CHECK(j == golden("solve_f13_k3_zero.json"));
    CHECK(j["class_count"] == (13 - 1) / std::gcd(3, 13 - 1) + 1);
    std::size_t solutions = 0;
    for (std::int64_t x = 0; x < 13; ++x)
        for (std::int64_t y = 0; y < 13; ++y) solutions += naive::mod(naive::pow_mod(x, 3, 13) + naive::pow_mod(y, 3, 13), 13) == 0;
    CHECK(j["solution_count"] == solutions);
}

TEST_CASE("table row") {
    const auto r = run({"table", "--row", "12|34:13", "--q", "13", "--k", "2", "--json"});
    CHECK(r.code == 0);
    const auto j = json::parse(r.out);
    CHECK(j == golden("table_12_34_13.json"));
    check_matrices_round_trip(j, waring::Field::make(13));

    const auto text = run({"table", "--row", "12|34:13", "--q", "13", "--k", "2"});
    CHECK(text.code == 0);
    CHECK(text.out.find("verified: yes") != std::string::npos);

    const auto all = run({"table", "--q", "13", "--k", "3", "--json"});
    CHECK(all.code == 0);
}

TEST_CASE("remaining subcommands match golden files") {
    struct Case {
        std::vector<std::string> args;
        const char* file;
    };
    const std::vector<Case> cases = {
        {{"root", "--q", "13", "--k", "2", "--matrix", "1,1,0;12,0;1", "--method", "sparse", "--json"},
         "root_sparse_f13.json"},
        {{"oracle", "--q", "7", "--k", "2", "--json"}, "oracle_negative_f7_k2.json"},
        {{"bound", "--q", "13", "--k", "3", "--m", "2", "--json"}, "bound_f13_k3_m2.json"},
        {{"conjugate", "--q", "7", "--matrix", "1,1;2", "--matrix", "1,0;2", "--json"}, "conjugate_f7.json"},
        {{"field", "--q", "3^2", "--k", "4", "--json"}, "field_f9_k4.json"},
    };
    for (const auto& c : cases) {
        CAPTURE(c.file);
        const auto r = run(c.args);
        CHECK(r.code == 0);
        CHECK(json::parse(r.out) == golden(c.file));
    }
}

TEST_CASE("output is deterministic") {
    const std::vector<std::string> args{"decompose", "--q", "11", "--k", "3", "--matrix", "1,2,3;4,5;6", "--json"};
    CHECK(run(args).out == run(args).out);
}

TEST_CASE("usage errors exit with 2") {
    CHECK(run({}).code == 2);
    CHECK(run({"nonsense"}).code == 2);
    CHECK(run({"decompose", "--q", "13", "--k", "2"}).code == 2);
    CHECK(run({"decompose", "--q", "13", "--k", "2", "--matrix", "0,1"}).code == 2);
    CHECK(run({"decompose", "--q", "13", "--k", "2", "--matrix", "0,1;0", "--parts", "4"}).code == 2);
    CHECK(run({"field", "--q", "9"}).code == 2);
    CHECK(run({"solve", "--q", "13", "--k", "0", "--lambda", "1"}).code == 2);
    CHECK(run({"solve", "--q", "13", "--k", "2", "--lambda", "13"}).code == 2);
    CHECK(run({"table", "--row", "12|24"}).code == 2);
    const auto r = run({"root", "--q", "7", "--k", "2", "--matrix", "1,1;4", "--method", "magic"});
    CHECK(r.code == 2);
    CHECK_FALSE(r.err.empty());
}

TEST_CASE("domain failures exit with 1") {
    CHECK(run({"root", "--q", "7", "--k", "2", "--matrix", "3,1;1", "--method", "distinct"}).code == 1);
    CHECK(run({"classify", "--q", "7", "--k", "6", "--lambda", "1", "--n", "3"}).code == 1);
    CHECK(run({"classify", "--q", "7", "--k", "6", "--lambda", "1", "--n", "2"}).code == 0);
    CHECK(run({"decompose", "--q", "13", "--k", "2", "--matrix", "0,1,1,0,0,0,0;0,0,0,0,1,0;0,1,0,0,0;0,1,1,0;0,0,0;0,1;0",
               "--structured"})
              .code == 1);
    const auto err = run({"oracle", "--q", "13", "--k", "2", "--n", "4", "--json"});
    CHECK(err.code == 1);
    CHECK(json::parse(err.out)["error"]["kind"] == "EnumerationTooLarge");
}
