#include "tensorcalc/system_file.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

namespace tcalc {

namespace {

struct Entry {
    std::string value;
    int line;
};

std::string trim(std::string_view s) {
    const char* ws = " \t\r\n";
    auto a = s.find_first_not_of(ws);
    if (a == std::string_view::npos) return {};
    auto b = s.find_last_not_of(ws);
    return std::string(s.substr(a, b - a + 1));
}

bool is_identifier(const std::string& s) {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

std::vector<std::string> words(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> w;
    for (std::string t; in >> t;) w.push_back(t);
    return w;
}

std::map<std::string, Entry> read_entries(std::string_view text) {
    std::map<std::string, Entry> out;
    std::istringstream in{std::string(text)};
    int n = 0;
    for (std::string raw; std::getline(in, raw);) {
        ++n;
        if (auto h = raw.find('#'); h != std::string::npos) raw.erase(h);
        std::string line = trim(raw);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) throw DefinitionError("expected 'key = value'", n);
        std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
        if (key.empty()) throw DefinitionError("empty key", n);
        if (value.empty()) throw DefinitionError("empty value for '" + key + "'", n);
        if (!out.emplace(key, Entry{value, n}).second) throw DefinitionError("duplicate key '" + key + "'", n);
    }
    return out;
}

Expr parse_at(const Entry& e) {
    try {
        return normalize(parse(e.value));
    } catch (const ParseError& p) {
        throw DefinitionError(std::string("expression error: ") + p.what(), e.line);
    }
}

double constant_at(const std::string& text, int line) {
    Expr e;
    try {
        e = normalize(parse(text));
    } catch (const ParseError& p) {
        throw DefinitionError(std::string("expression error: ") + p.what(), line);
    }
    Point p;
    p.set("pi", std::numbers::pi);
    try {
        double v = evaluate(e, p);
        if (!std::isfinite(v)) throw DefinitionError("bound '" + text + "' is not finite", line);
        return v;
    } catch (const UnboundSymbolError&) {
        throw DefinitionError("bound '" + text + "' is not a constant", line);
    } catch (const DomainError& d) {
        throw DefinitionError(d.what(), line);
    }
}

void only_symbols(const Expr& e, const std::set<std::string>& allowed, int line) {
    for (const auto& s : free_symbols(e))
        if (!allowed.count(s)) throw DefinitionError("unknown symbol '" + s + "'", line);
}

// "prefix.a.b" -> {a, b}
std::optional<std::vector<std::string>> dotted(const std::string& key, std::string_view prefix) {
    if (key.size() <= prefix.size() + 1 || key.compare(0, prefix.size(), prefix) != 0 || key[prefix.size()] != '.')
        return std::nullopt;
    std::vector<std::string> parts;
    std::string rest = key.substr(prefix.size() + 1);
    std::size_t p = 0;
    while (true) {
        auto q = rest.find('.', p);
        parts.push_back(rest.substr(p, q - p));
        if (q == std::string::npos) break;
        p = q + 1;
    }
    return parts;
}

int index_at(const std::string& s, int n, int line) {
    int v = 0;
    try {
        std::size_t used = 0;
        v = std::stoi(s, &used);
        if (used != s.size()) v = 0;
    } catch (const std::exception&) {
        v = 0;
    }
    if (v < 1 || v > n) throw DefinitionError("index '" + s + "' outside 1.." + std::to_string(n), line);
    return v;
}

}  // namespace

SystemDefinition parse_system_definition(std::string_view text) {
    auto entries = read_entries(text);
    SystemDefinition d;
    auto need = [&](const char* k) -> const Entry& {
        auto it = entries.find(k);
        if (it == entries.end()) throw DefinitionError(std::string("missing key '") + k + "'", 0);
        return it->second;
    };
    if (auto it = entries.find("name"); it != entries.end()) d.name = it->second.value;
    const Entry& dim = need("dimension");
    d.dimension = index_at(dim.value, 16, dim.line);
    const Entry& co = need("coordinates");
    d.coords = words(co.value);
    if (static_cast<int>(d.coords.size()) != d.dimension)
        throw DefinitionError("expected " + std::to_string(d.dimension) + " coordinate names", co.line);
    std::set<std::string> allowed(d.coords.begin(), d.coords.end());
    if (allowed.size() != d.coords.size()) throw DefinitionError("coordinate names must be distinct", co.line);
    for (const auto& c : d.coords)
        if (!is_identifier(c)) throw DefinitionError("'" + c + "' is not a valid coordinate name", co.line);

    const int n = d.dimension;
    std::vector<std::optional<Interval>> dom(static_cast<std::size_t>(n));
    std::vector<std::vector<std::optional<Expr>>> g(static_cast<std::size_t>(n), std::vector<std::optional<Expr>>(static_cast<std::size_t>(n)));
    std::vector<std::optional<Expr>> map(static_cast<std::size_t>(n));
    bool any_metric = false, any_map = false;
    for (const auto& [key, e] : entries) {
        if (key == "name" || key == "dimension" || key == "coordinates") continue;
        if (auto p = dotted(key, "metric"); p && p->size() == 2) {
            int i = index_at((*p)[0], n, e.line), j = index_at((*p)[1], n, e.line);
            Expr v = parse_at(e);
            only_symbols(v, allowed, e.line);
            auto& a = g[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)];
            auto& b = g[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(i - 1)];
            if (a && !normalize(*a - v).is_zero())
                throw DefinitionError("metric." + (*p)[1] + "." + (*p)[0] + " disagrees with its transpose", e.line);
            a = v;
            b = v;
            any_metric = true;
        } else if (auto p = dotted(key, "map"); p && p->size() == 1) {
            int k = index_at((*p)[0], n, e.line);
            Expr v = parse_at(e);
            only_symbols(v, allowed, e.line);
            map[static_cast<std::size_t>(k - 1)] = v;
            any_map = true;
        } else if (auto p = dotted(key, "domain"); p && p->size() == 1) {
            auto it = std::find(d.coords.begin(), d.coords.end(), (*p)[0]);
            if (it == d.coords.end()) throw DefinitionError("domain for unknown coordinate '" + (*p)[0] + "'", e.line);
            auto w = words(e.value);
            if (w.size() != 2) throw DefinitionError("domain needs 'lo hi'", e.line);
            double lo = constant_at(w[0], e.line), hi = constant_at(w[1], e.line);
            if (!(lo < hi)) throw DefinitionError("domain needs lo < hi", e.line);
            dom[static_cast<std::size_t>(it - d.coords.begin())] = Interval{(*p)[0], lo, hi};
        } else {
            throw DefinitionError("unknown key '" + key + "'", e.line);
        }
    }
    if (any_metric == any_map) throw DefinitionError("give either metric.<i>.<j> entries or map.<k> entries, not both", 0);
    if (any_metric) {
        Matrix m(static_cast<std::size_t>(n), std::vector<Expr>(static_cast<std::size_t>(n)));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (g[i][j]) m[i][j] = *g[i][j];
        d.metric = std::move(m);
    } else {
        std::vector<Expr> m;
        for (int k = 0; k < n; ++k) {
            if (!map[k]) throw DefinitionError("missing map." + std::to_string(k + 1), 0);
            m.push_back(*map[k]);
        }
        d.map = std::move(m);
    }
    for (int i = 0; i < n; ++i) {
        if (!dom[i]) throw DefinitionError("missing domain." + d.coords[i], 0);
        d.domain.push_back(*dom[i]);
    }
    return d;
}

Metric build_system(const SystemDefinition& d, std::uint64_t seed, double tol) {
    CoordinateSystem s(d.name, d.coords, SampleDomain(d.domain, seed));
    if (d.metric) return Metric::from_components(std::move(s), *d.metric, tol);
    return Metric::from_map(std::move(s), CartesianMap{*d.map}, tol);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DefinitionError("cannot open '" + path + "'", 0);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Metric load_system(std::string_view where, std::uint64_t seed, double tol) {
    if (where.rfind("builtin:", 0) == 0) return builtin_system(where.substr(8), seed, tol);
    if (where.rfind("file:", 0) == 0) return build_system(parse_system_definition(read_text_file(std::string(where.substr(5)))), seed, tol);
    throw DefinitionError("system must be builtin:<name> or file:<path>", 0);
}

Curve parse_curve_definition(std::string_view text, const Metric& g) {
    auto entries = read_entries(text);
    Curve c;
    c.u.assign(static_cast<std::size_t>(g.dim()), Expr());
    std::vector<bool> seen(static_cast<std::size_t>(g.dim()), false);
    bool have_interval = false;
    if (auto it = entries.find("parameter"); it != entries.end()) {
        if (!is_identifier(it->second.value)) throw DefinitionError("parameter must be a name", it->second.line);
        c.param = it->second.value;
    }
    for (const auto& [key, e] : entries) {
        if (key == "parameter") continue;
        if (key == "interval") {
            auto w = words(e.value);
            if (w.size() != 2) throw DefinitionError("interval needs 't1 t2'", e.line);
            c.t1 = constant_at(w[0], e.line);
            c.t2 = constant_at(w[1], e.line);
            have_interval = true;
        } else if (auto p = dotted(key, "curve"); p && p->size() == 1) {
            int k = 0;
            for (int i = 1; i <= g.dim(); ++i)
                if (g.coord(i) == (*p)[0]) k = i;
            if (k == 0) throw DefinitionError("curve component for unknown coordinate '" + (*p)[0] + "'", e.line);
            Expr v = parse_at(e);
            only_symbols(v, {c.param}, e.line);
            c.u[static_cast<std::size_t>(k - 1)] = v;
            seen[static_cast<std::size_t>(k - 1)] = true;
        } else {
            throw DefinitionError("unknown key '" + key + "'", e.line);
        }
    }
    if (!have_interval) throw DefinitionError("missing key 'interval'", 0);
    for (int i = 1; i <= g.dim(); ++i)
        if (!seen[static_cast<std::size_t>(i - 1)]) throw DefinitionError("missing curve." + g.coord(i), 0);
    return c;
}

Curve load_curve(const std::string& path, const Metric& g) { return parse_curve_definition(read_text_file(path), g); }

}  // namespace tcalc
