#include <fdr/models.hpp>
#include <fdr/propagation.hpp>

#include <array>
#include <charconv>
#include <stdexcept>

namespace fdr {

namespace {

    constexpr std::array<AlphaEquation, 20> alpha_table{{
        {"ballet", 45},
        {"cello", 43},
        {"concert", 74},
        {"flute", 30},
        {"fugue", 50},
        {"glee", 66},
        {"jazz", 58},
        {"lyre", 47},
        {"oboe", 53},
        {"opera", 65},
        {"polka", 59},
        {"quartet", 50},
        {"saxophone", 134},
        {"scale", 51},
        {"solo", 37},
        {"song", 61},
        {"soprano", 82},
        {"theme", 72},
        {"violin", 100},
        {"waltz", 34},
    }};

    auto require(bool ok, const std::string & message) -> void
    {
        if (! ok)
            throw std::invalid_argument(message);
    }

    auto parse_params(std::string_view text) -> std::vector<int>
    {
        std::vector<int> params;
        while (! text.empty()) {
            auto comma = text.find(',');
            auto field = text.substr(0, comma);
            int v = 0;
            auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
            require(ec == std::errc{} && ptr == field.data() + field.size() && ! field.empty(),
                "bad model parameter '" + std::string(field) + "'");
            params.push_back(v);
            if (comma == std::string_view::npos)
                break;
            text = text.substr(comma + 1);
        }
        return params;
    }

} // namespace

auto Model::mode_for(SearchMode::Kind kind) const -> SearchMode
{
    switch (kind) {
    case SearchMode::Kind::first_solution: return SearchMode::first();
    case SearchMode::Kind::all_solutions: return SearchMode::all();
    case SearchMode::Kind::best_solution:
        if (! objective)
            throw std::invalid_argument("model " + name + " has no objective for best-solution search");
        return SearchMode::minimize(*objective);
    }
    throw std::logic_error("unhandled search mode");
}

auto build_queens(int n, QueensVariant variant) -> Model
{
    require(n >= 4, "queens needs n >= 4");
    Model m;
    m.name = variant == QueensVariant::diseq ? "queens" : "queens-s";
    m.params = {n};
    m.default_mode = SearchMode::first();

    std::vector<VarId> rows;
    for (int i = 0; i < n; ++i)
        rows.push_back(m.root.add_variable(0, n - 1));
    m.primary = rows;

    if (variant == QueensVariant::diseq) {
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                post_neq_offset(m.root, rows[i], rows[j], 0, 0);
                post_neq_offset(m.root, rows[i], rows[j], i, j);
                post_neq_offset(m.root, rows[i], rows[j], -i, -j);
            }
        return m;
    }

    std::vector<VarId> up, down;
    for (int i = 0; i < n; ++i)
        up.push_back(m.root.add_variable(i, n - 1 + i));
    for (int i = 0; i < n; ++i)
        down.push_back(m.root.add_variable(-i, n - 1 - i));
    const std::array<int, 2> coeffs{1, -1};
    for (int i = 0; i < n; ++i) {
        post_linear_eq(m.root, coeffs, std::array{up[i], rows[i]}, i);
        post_linear_eq(m.root, coeffs, std::array{down[i], rows[i]}, -i);
    }
    post_alldiff(m.root, rows);
    post_alldiff(m.root, up);
    post_alldiff(m.root, down);
    return m;
}

auto magic_constant(int n) -> int
{
    return n * (n * n + 1) / 2;
}

auto build_magic_square(int n) -> Model
{
    require(n >= 3, "magic-square needs n >= 3");
    Model m;
    m.name = "magic-square";
    m.params = {n};
    m.default_mode = SearchMode::first();

    std::vector<VarId> cells;
    for (int i = 0; i < n * n; ++i)
        cells.push_back(m.root.add_variable(1, n * n));
    m.primary = cells;
    auto cell = [&](int r, int c) { return cells[r * n + c]; };

    post_alldiff(m.root, cells);
    const std::vector<int> ones(n, 1);
    const int sum = magic_constant(n);
    for (int r = 0; r < n; ++r) {
        std::vector<VarId> row;
        for (int c = 0; c < n; ++c)
            row.push_back(cell(r, c));
        post_linear_eq(m.root, ones, row, sum);
    }
    for (int c = 0; c < n; ++c) {
        std::vector<VarId> col;
        for (int r = 0; r < n; ++r)
            col.push_back(cell(r, c));
        post_linear_eq(m.root, ones, col, sum);
    }
    std::vector<VarId> diag, anti;
    for (int i = 0; i < n; ++i) {
        diag.push_back(cell(i, i));
        anti.push_back(cell(i, n - 1 - i));
    }
    post_linear_eq(m.root, ones, diag, sum);
    post_linear_eq(m.root, ones, anti, sum);

    const std::array<int, 2> less{1, -1};
    post_linear_leq(m.root, less, std::array{cell(0, 0), cell(0, n - 1)}, -1);
    post_linear_leq(m.root, less, std::array{cell(0, 0), cell(n - 1, 0)}, -1);
    return m;
}

auto alpha_equations() -> std::span<const AlphaEquation>
{
    return alpha_table;
}

auto build_alpha() -> Model
{
    Model m;
    m.name = "alpha";
    m.default_mode = SearchMode::all();

    std::vector<VarId> letters;
    for (int i = 0; i < 26; ++i)
        letters.push_back(m.root.add_variable(1, 26));
    m.primary = letters;

    post_alldiff(m.root, letters);
    for (const auto & eq : alpha_table) {
        std::vector<VarId> vars;
        for (char ch : eq.word)
            vars.push_back(letters[ch - 'a']);
        std::vector<int> coeffs(vars.size(), 1);
        post_linear_eq(m.root, coeffs, vars, eq.sum);
    }
    return m;
}

auto build_langford(int k, int n) -> Model
{
    require(k >= 2 && n >= 2, "langford needs k >= 2 and n >= 2");
    Model m;
    m.name = "langford";
    m.params = {k, n};
    m.default_mode = SearchMode::all();

    const int positions = k * n;
    std::vector<VarId> pos;
    for (int i = 0; i < positions; ++i)
        pos.push_back(m.root.add_variable(0, positions - 1));
    m.primary = pos;

    const std::array<int, 2> gap{1, -1};
    for (int v = 1; v <= n; ++v)
        for (int j = 0; j + 1 < k; ++j) {
            auto here = pos[(v - 1) * k + j];
            auto next = pos[(v - 1) * k + j + 1];
            post_linear_eq(m.root, gap, std::array{next, here}, v + 1);
        }
    post_alldiff(m.root, pos);
    return m;
}

auto build_golomb(int marks) -> Model
{
    require(marks >= 2, "golomb needs at least 2 marks");
    Model m;
    m.name = "golomb";
    m.params = {marks};

    const int limit = marks * marks;
    std::vector<VarId> x;
    x.push_back(m.root.add_variable(0, 0));
    for (int i = 1; i < marks; ++i)
        x.push_back(m.root.add_variable(1, limit));
    m.primary = x;

    const std::array<int, 2> less{1, -1};
    for (int i = 0; i + 1 < marks; ++i)
        post_linear_leq(m.root, less, std::array{x[i], x[i + 1]}, -1);

    // d(i,j) = x[j] - x[i]; a span of s marks needs at least 1+2+..+s
    std::vector<VarId> diffs;
    auto diff_index = [&](int i, int j) {
        int index = 0;
        for (int a = 0; a < i; ++a)
            index += marks - 1 - a;
        return index + (j - i - 1);
    };
    for (int i = 0; i < marks; ++i)
        for (int j = i + 1; j < marks; ++j) {
            int span = j - i;
            auto d = m.root.add_variable(span * (span + 1) / 2, limit);
            diffs.push_back(d);
            post_linear_eq(m.root, std::array{1, -1, 1}, std::array{d, x[j], x[i]}, 0);
        }
    if (diffs.size() >= 2) {
        post_alldiff(m.root, diffs);
        post_linear_leq(m.root, less, std::array{diffs[diff_index(0, 1)], diffs[diff_index(marks - 2, marks - 1)]}, -1);
    }

    m.objective = x.back();
    m.default_mode = SearchMode::minimize(x.back());
    return m;
}

auto known_model_names() -> std::vector<std::string>
{
    return {"queens:n", "queens-s:n", "magic-square:n", "alpha", "langford:k,n", "golomb:m"};
}

auto build_model(std::string_view spec) -> Model
{
    auto colon = spec.find(':');
    auto name = spec.substr(0, colon);
    auto params = colon == std::string_view::npos ? std::vector<int>{} : parse_params(spec.substr(colon + 1));

    auto expect = [&](std::size_t count, std::vector<int> defaults) {
        if (params.empty())
            params = std::move(defaults);
        require(params.size() == count, "model '" + std::string(name) + "' takes " + std::to_string(count) + " parameter(s)");
    };

    if (name == "queens" || name == "queens-s") {
        expect(1, {8});
        return build_queens(params[0], name == "queens" ? QueensVariant::diseq : QueensVariant::global);
    }
    if (name == "magic-square") {
        expect(1, {3});
        return build_magic_square(params[0]);
    }
    if (name == "alpha") {
        require(params.empty(), "alpha takes no parameters");
        return build_alpha();
    }
    if (name == "langford") {
        expect(2, {3, 9});
        return build_langford(params[0], params[1]);
    }
    if (name == "golomb") {
        expect(1, {7});
        return build_golomb(params[0]);
    }

    std::string known;
    for (const auto & n : known_model_names())
        known += (known.empty() ? "" : ", ") + n;
    throw std::invalid_argument("unknown model '" + std::string(name) + "' (known: " + known + ")");
}

} // namespace fdr
