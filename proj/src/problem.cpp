#include "hybridie/problem.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace hybridie {

ProblemFileError::ProblemFileError(const std::string& source, int line, int column, const std::string& message)
    : InputError(source + ":" + std::to_string(line) + (column > 0 ? ":" + std::to_string(column) : "") + ": " +
                 message),
      line_(line),
      column_(column) {}

std::vector<double> uniform_grid(int size) {
    if (size < 0) throw InputError("grid size must be non-negative");
    std::vector<double> grid(size);
    for (int i = 0; i < size; ++i) grid[i] = static_cast<double>(i) / size;
    return grid;
}

namespace {

struct Entry {
    std::string value;
    int line;
    int column;  // 1-based column where value starts
};

std::string_view trim(std::string_view s, std::size_t* leading = nullptr) {
    std::size_t b = 0;
    while (b < s.size() && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
    std::size_t e = s.size();
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
    if (leading) *leading = b;
    return s.substr(b, e - b);
}

const std::set<std::string, std::less<>> kKnownKeys{"kind", "lambda", "beta", "kernel", "f",    "m",
                                                     "n",    "ics",    "r",    "q",      "exact", "grid",
                                                     "bound_m"};

class Reader {
public:
    Reader(std::string_view text, std::string source) : source_(std::move(source)) {
        int line_no = 0;
        std::size_t start = 0;
        while (start <= text.size()) {
            std::size_t end = text.find('\n', start);
            if (end == std::string_view::npos) end = text.size();
            ++line_no;
            read_line(text.substr(start, end - start), line_no);
            start = end + 1;
        }
        last_line_ = line_no;
    }

    [[noreturn]] void fail(int line, int column, const std::string& msg) const {
        throw ProblemFileError(source_, line, column, msg);
    }

    bool has(std::string_view key) const { return entries_.find(key) != entries_.end(); }

    const Entry& require(std::string_view key) const {
        auto it = entries_.find(key);
        if (it == entries_.end()) fail(last_line_, 0, "missing required key '" + std::string(key) + "'");
        return it->second;
    }

    const Entry* find(std::string_view key) const {
        auto it = entries_.find(key);
        return it == entries_.end() ? nullptr : &it->second;
    }

    double real(std::string_view key, const Entry& e) const { return parse_real(key, e.value, e); }

    int nonneg_int(std::string_view key, const Entry& e, int minimum) const {
        int v = 0;
        const char* b = e.value.data();
        const char* end = b + e.value.size();
        auto [ptr, ec] = std::from_chars(b, end, v);
        if (ec != std::errc() || ptr != end)
            fail(e.line, e.column, "key '" + std::string(key) + "' expects an integer, got '" + e.value + "'");
        if (v < minimum)
            fail(e.line, e.column,
                 "key '" + std::string(key) + "' must be at least " + std::to_string(minimum) + ", got " +
                     std::to_string(v));
        return v;
    }

    std::vector<double> real_list(std::string_view key, const Entry& e) const {
        std::string_view body = e.value;
        int column = e.column;
        if (!body.empty() && body.front() == '[') {
            if (body.back() != ']') fail(e.line, e.column, "unterminated '[' in '" + std::string(key) + "'");
            body = body.substr(1, body.size() - 2);
            ++column;
        }
        std::vector<double> out;
        if (trim(body).empty()) return out;
        std::size_t start = 0;
        while (start <= body.size()) {
            std::size_t comma = body.find(',', start);
            if (comma == std::string_view::npos) comma = body.size();
            std::size_t lead = 0;
            const std::string_view item = trim(body.substr(start, comma - start), &lead);
            Entry sub{std::string(item), e.line, column + static_cast<int>(start + lead)};
            out.push_back(parse_real(key, sub.value, sub));
            start = comma + 1;
        }
        return out;
    }

    expr::Expr expression(std::string_view key, const Entry& e) const {
        try {
            return expr::parse(e.value);
        } catch (const expr::ParseError& err) {
            fail(e.line, e.column + static_cast<int>(err.offset()),
                 "in '" + std::string(key) + "': " + err.what());
        }
    }

private:
    double parse_real(std::string_view key, const std::string& text, const Entry& e) const {
        double v = 0.0;
        const char* b = text.data();
        const char* end = b + text.size();
        auto [ptr, ec] = std::from_chars(b, end, v);
        if (text.empty() || ec != std::errc() || ptr != end || !std::isfinite(v))
            fail(e.line, e.column, "key '" + std::string(key) + "' expects a real number, got '" + text + "'");
        return v;
    }

    void read_line(std::string_view raw, int line_no) {
        // '#' starts a comment unless inside a quoted value.
        bool quoted = false;
        std::size_t cut = raw.size();
        for (std::size_t i = 0; i < raw.size(); ++i) {
            if (raw[i] == '"') quoted = !quoted;
            if (raw[i] == '#' && !quoted) {
                cut = i;
                break;
            }
        }
        const std::string_view line = raw.substr(0, cut);
        if (trim(line).empty()) return;
        const std::size_t eq = line.find('=');
        std::size_t lead = 0;
        trim(line, &lead);
        if (eq == std::string_view::npos) fail(line_no, static_cast<int>(lead) + 1, "expected 'key = value'");
        const std::string key(trim(line.substr(0, eq)));
        if (key.empty()) fail(line_no, static_cast<int>(lead) + 1, "empty key");
        if (!kKnownKeys.contains(key)) fail(line_no, static_cast<int>(lead) + 1, "unknown key '" + key + "'");
        if (entries_.contains(key))
            fail(line_no, static_cast<int>(lead) + 1,
                 "duplicate key '" + key + "' (first set on line " + std::to_string(entries_.at(key).line) + ")");

        std::size_t vlead = 0;
        std::string_view value = trim(line.substr(eq + 1), &vlead);
        int column = static_cast<int>(eq + 1 + vlead) + 1;
        if (!value.empty() && value.front() == '"') {
            if (value.size() < 2 || value.back() != '"') fail(line_no, column, "unterminated quoted value");
            value = value.substr(1, value.size() - 2);
            ++column;
        }
        entries_.emplace(key, Entry{std::string(value), line_no, column});
    }

    std::string source_;
    std::map<std::string, Entry, std::less<>> entries_;
    int last_line_ = 0;
};

} // namespace

ProblemSpec parse_problem(std::string_view text, const std::string& source) {
    const Reader in(text, source);
    ProblemSpec spec;

    const Entry& kind = in.require("kind");
    if (kind.value == "fredholm") spec.kind = EquationKind::fredholm;
    else if (kind.value == "volterra") spec.kind = EquationKind::volterra;
    else in.fail(kind.line, kind.column, "kind must be 'fredholm' or 'volterra', got '" + kind.value + "'");

    const char* scalar_key = spec.kind == EquationKind::fredholm ? "lambda" : "beta";
    const char* wrong_key = spec.kind == EquationKind::fredholm ? "beta" : "lambda";
    if (const Entry* wrong = in.find(wrong_key)) {
        in.fail(wrong->line, 0,
                std::string("key '") + wrong_key + "' does not apply to kind=" + kind.value + "; use '" +
                    scalar_key + "'");
    }
    spec.scalar = in.real(scalar_key, in.require(scalar_key));

    const Entry& kernel = in.require("kernel");
    spec.kernel = in.expression("kernel", kernel);
    spec.kernel_text = kernel.value;

    const Entry& f = in.require("f");
    spec.forcing = in.expression("f", f);
    spec.forcing_text = f.value;
    if (spec.forcing.uses_s()) in.fail(f.line, f.column, "forcing term 'f' may only depend on t");

    const Entry& m = in.require("m");
    spec.m = in.nonneg_int("m", m, 0);
    const Entry& n = in.require("n");
    spec.n = in.nonneg_int("n", n, 0);

    const Entry* ics = in.find("ics");
    if (ics) spec.initial_conditions = in.real_list("ics", *ics);
    const std::size_t needed = static_cast<std::size_t>(std::max(spec.m, spec.n));
    if (spec.initial_conditions.size() != needed) {
        const int line = ics ? ics->line : n.line;
        in.fail(line, ics ? ics->column : 0,
                "ics must list y(0)..y^(l)(0) with l = max(m,n)-1, i.e. " + std::to_string(needed) +
                    " value(s) for m=" + std::to_string(spec.m) + ", n=" + std::to_string(spec.n) + "; got " +
                    std::to_string(spec.initial_conditions.size()));
    }

    spec.r = in.nonneg_int("r", in.require("r"), 1);
    spec.q = in.nonneg_int("q", in.require("q"), 1);

    if (const Entry* exact = in.find("exact")) {
        spec.exact = in.expression("exact", *exact);
        spec.exact_text = exact->value;
        if (spec.exact->uses_s()) in.fail(exact->line, exact->column, "exact solution may only depend on t");
    }

    if (const Entry* grid = in.find("grid")) {
        spec.grid = in.real_list("grid", *grid);
        for (double t : spec.grid)
            if (!(t >= 0.0 && t < 1.0)) {
                std::ostringstream os;
                os << "grid point " << t << " lies outside [0,1)";
                in.fail(grid->line, grid->column, os.str());
            }
    } else {
        spec.grid = uniform_grid(10);
    }

    if (const Entry* bm = in.find("bound_m")) {
        spec.bound_m = in.real("bound_m", *bm);
        if (*spec.bound_m < 0.0) in.fail(bm->line, bm->column, "bound_m must be non-negative");
    }
    return spec;
}

ProblemSpec load_problem(const std::filesystem::path& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) throw InputError("cannot open problem file '" + path.string() + "'");
    std::ostringstream buf;
    buf << file.rdbuf();
    return parse_problem(buf.str(), path.string());
}

} // namespace hybridie
