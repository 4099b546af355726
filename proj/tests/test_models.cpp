#include "oracles.hpp"

#include <fdr/models.hpp>
#include <fdr/search.hpp>

#include <doctest.h>

#include <algorithm>

using namespace fdr;

namespace {

const std::vector<oracle::WordSum> alpha_words{
    {"ballet", 45}, {"cello", 43}, {"concert", 74}, {"flute", 30}, {"fugue", 50}, {"glee", 66}, {"jazz", 58},
    {"lyre", 47}, {"oboe", 53}, {"opera", 65}, {"polka", 59}, {"quartet", 50}, {"saxophone", 134}, {"scale", 51},
    {"solo", 37}, {"song", 61}, {"soprano", 82}, {"theme", 72}, {"violin", 100}, {"waltz", 34}};

auto count_named(const State & s, std::string_view name) -> std::size_t
{
    std::size_t n = 0;
    for (PropId i = 0; i < s.num_propagators(); ++i)
        n += s.propagator(i).name() == name;
    return n;
}

auto project(const std::vector<Solution> & sols, const std::vector<VarId> & vars) -> std::vector<std::vector<int>>
{
    std::vector<std::vector<int>> out;
    for (const auto & s : sols) {
        std::vector<int> row;
        for (auto v : vars)
            row.push_back(s[v.index]);
        out.push_back(row);
    }
    return out;
}

} // namespace

TEST_CASE("queens propagator counts")
{
    auto diseq = build_queens(100, QueensVariant::diseq);
    CHECK(diseq.root.num_vars() == 100);
    CHECK(diseq.root.num_propagators() == 14'850);
    CHECK(count_named(diseq.root, "neq_offset") == 14'850);
    CHECK(diseq.root.domain(VarId{0}) == Domain(0, 99));

    auto global = build_queens(100, QueensVariant::global);
    CHECK(count_named(global.root, "alldiff") == 3);
    CHECK(count_named(global.root, "linear_eq") == 200);
    CHECK(global.root.num_propagators() == 203);
    CHECK(global.primary.size() == 100);

    CHECK_THROWS_AS(build_queens(3, QueensVariant::diseq), std::invalid_argument);
}

TEST_CASE("queens solutions match enumeration")
{
    for (auto variant : {QueensVariant::diseq, QueensVariant::global})
        for (int n : {4, 6, 8}) {
            auto m = build_queens(n, variant);
            auto r = dfs(m.root, StrategyConfig::parse("copy"), SearchMode::all());
            CHECK(static_cast<long>(r.solutions.size()) == oracle::queens_count(n));
            for (const auto & row : project(r.solutions, m.primary))
                CHECK(oracle::queens_ok(row));
        }
}

TEST_CASE("magic square")
{
    CHECK(magic_constant(3) == 15);
    CHECK(magic_constant(5) == 65);
    CHECK_THROWS_AS(build_magic_square(2), std::invalid_argument);

    auto m = build_magic_square(3);
    CHECK(m.root.num_vars() == 9);
    CHECK(count_named(m.root, "linear_eq") == 8);
    CHECK(count_named(m.root, "linear_leq") == 2);
    CHECK(count_named(m.root, "alldiff") == 1);

    auto r = dfs(m.root, StrategyConfig::parse("copy"), SearchMode::all());
    CHECK(static_cast<int>(r.solutions.size()) == oracle::magic3_count());
    for (const auto & s : r.solutions)
        CHECK(oracle::magic_ok(s, 3));

    auto four = build_magic_square(4);
    auto first = dfs(four.root, StrategyConfig::parse("copy"), four.default_mode);
    REQUIRE(first.solutions.size() == 1);
    CHECK(oracle::magic_ok(first.solutions.front(), 4));
}

TEST_CASE("alpha")
{
    auto table = alpha_equations();
    REQUIRE(table.size() == alpha_words.size());
    for (std::size_t i = 0; i < table.size(); ++i) {
        CHECK(table[i].word == alpha_words[i].word);
        CHECK(table[i].sum == alpha_words[i].sum);
    }

    const std::vector<int> known{5, 13, 9, 16, 20, 4, 24, 21, 25, 17, 23, 2, 8, 12, 10, 19, 7, 11, 15, 3, 1, 26, 6, 22, 14, 18};
    CHECK(oracle::alpha_ok(known, alpha_words));

    auto m = build_alpha();
    CHECK(m.default_mode == SearchMode::all());
    auto r = dfs(m.root, StrategyConfig::parse("copy"), m.default_mode);
    REQUIRE(r.solutions.size() == 1);
    CHECK(r.solutions.front() == known);

    auto brute = oracle::alpha_solutions(alpha_words);
    CHECK(brute == r.solutions);
}

TEST_CASE("langford")
{
    for (auto [k, n] : {std::pair{2, 3}, std::pair{2, 4}}) {
        auto m = build_langford(k, n);
        auto r = dfs(m.root, StrategyConfig::parse("copy"), m.default_mode);
        CHECK(static_cast<int>(r.solutions.size()) == oracle::langford_count(k, n));
        CHECK(r.solutions.size() == 2);
        for (const auto & s : r.solutions)
            CHECK(oracle::langford_ok(s, k, n));
    }
    auto none = build_langford(2, 5); // no Langford pairing exists for n = 5
    CHECK(dfs(none.root, StrategyConfig::parse("copy"), none.default_mode).solutions.size() ==
        static_cast<std::size_t>(oracle::langford_count(2, 5)));
    CHECK_THROWS_AS(build_langford(1, 4), std::invalid_argument);
}

TEST_CASE("golomb rulers")
{
    for (int marks : {4, 5, 6, 7}) {
        auto m = build_golomb(marks);
        REQUIRE(m.objective);
        CHECK(m.default_mode == SearchMode::minimize(*m.objective));
        auto r = dfs(m.root, StrategyConfig::parse("copy"), m.default_mode);
        REQUIRE_FALSE(r.solutions.empty());
        auto ruler = project(r.solutions, m.primary).back();
        CHECK(oracle::golomb_ok(ruler));
        CHECK(ruler.back() == oracle::golomb_optimum(marks));
    }
    CHECK(oracle::golomb_optimum(4) == 6);
    CHECK(build_golomb(7).root.num_vars() == 7 + 21);
    CHECK_THROWS_AS(build_golomb(1), std::invalid_argument);
}

TEST_CASE("construction is deterministic")
{
    for (auto spec : {"queens:8", "queens-s:8", "golomb:6", "langford:2,4"}) {
        auto a = build_model(spec);
        auto b = build_model(spec);
        CHECK(a.root.store() == b.root.store());
        CHECK(a.root.num_propagators() == b.root.num_propagators());
        auto mode = a.mode_for(a.objective ? SearchMode::Kind::best_solution : SearchMode::Kind::all_solutions);
        auto ra = dfs(a.root, StrategyConfig::parse("recollect-adaptive:4"), mode);
        auto rb = dfs(b.root, StrategyConfig::parse("recollect-adaptive:4"), mode);
        CHECK(ra.solutions == rb.solutions);
        CHECK(ra.stats.nodes == rb.stats.nodes);
        CHECK(ra.stats.propagator_executions == rb.stats.propagator_executions);
    }
}

TEST_CASE("model registry")
{
    CHECK(build_model("queens").params == std::vector<int>{8});
    CHECK(build_model("queens-s:6").name == "queens-s");
    CHECK(build_model("magic-square").params == std::vector<int>{3});
    CHECK(build_model("langford").params == std::vector<int>{3, 9});
    CHECK(build_model("golomb").params == std::vector<int>{7});
    CHECK(build_model("alpha").params.empty());

    CHECK_THROWS_AS(build_model("nosuch:3"), std::invalid_argument);
    CHECK_THROWS_AS(build_model("queens:x"), std::invalid_argument);
    CHECK_THROWS_AS(build_model("queens:8,2"), std::invalid_argument);
    CHECK_THROWS_AS(build_model("alpha:2"), std::invalid_argument);
    CHECK_THROWS_AS(build_model("langford:3"), std::invalid_argument);
    try {
        build_model("sudoku:9");
        FAIL("expected an error");
    }
    catch (const std::invalid_argument & e) {
        std::string what = e.what();
        for (auto name : {"queens", "queens-s", "magic-square", "alpha", "langford", "golomb"})
            CHECK(what.find(name) != std::string::npos);
    }

    auto q = build_model("queens:6");
    CHECK_THROWS_AS((void) q.mode_for(SearchMode::Kind::best_solution), std::invalid_argument);
    CHECK(q.mode_for(SearchMode::Kind::all_solutions) == SearchMode::all());
}
