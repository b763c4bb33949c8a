#include "cli.hpp"

#include "tensorcalc/connection.hpp"
#include "tensorcalc/continuum.hpp"
#include "tensorcalc/curvature.hpp"
#include "tensorcalc/field_ops.hpp"
#include "tensorcalc/special_tensors.hpp"
#include "tensorcalc/system_file.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <optional>
#include <ostream>
#include <set>

namespace tcalc::cli {

namespace {

using Json = nlohmann::ordered_json;

struct Options {
    std::string system = "builtin:cartesian";
    std::string format = "text";
    std::uint64_t seed = kDefaultSeed;
    double tol = kDefaultTol;
    bool physical = false;

    int kind = 2;
    std::string riemann_form = "mixed";
    std::string field;
    std::string variance;
    std::string curve;
    std::string suite = "all";
    std::string map, inverse, sigma, normal;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string fmt_real(double v, const char* f = "%.12g") {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

// Emits tables in the chosen format; the header is written once.
class Printer {
public:
    Printer(std::ostream& out, const Options& o, std::string system, std::string operation)
        : out_(out), json_(o.format == "json"), system_(std::move(system)), operation_(std::move(operation)) {
        if (!json_) out_ << "# system: " << system_ << "\n# operation: " << operation_ << "\n";
    }

    [[nodiscard]] bool json() const { return json_; }

    // labels: coordinate names used in place of numeric indices (physical components)
    void table(const TensorField& t, const std::vector<std::string>* labels = nullptr) {
        if (json_) {
            Json doc = header();
            doc["name"] = t.name();
            doc["signature"] = signature_string(t.signature());
            doc["weight"] = t.weight();
            if (labels) doc["physical"] = true;
            Json comps = Json::array();
            t.for_each([&](const Index& x, const Expr& e) {
                if (!e.is_zero()) comps.push_back({{"index", x}, {"expr", render(e)}});
            });
            doc["components"] = std::move(comps);
            doc["zeros_omitted"] = true;
            out_ << doc.dump() << "\n";
            return;
        }
        bool any = false;
        t.for_each([&](const Index& x, const Expr& e) {
            if (e.is_zero()) return;
            any = true;
            out_ << t.name() << "[";
            for (std::size_t k = 0; k < x.size(); ++k)
                out_ << (k ? "," : "") << (labels ? (*labels)[static_cast<std::size_t>(x[k] - 1)] : std::to_string(x[k]));
            out_ << "] = " << render(e) << "\n";
        });
        if (!any) out_ << "# " << t.name() << ": all components are zero\n";
    }

    void scalar(const std::string& name, const Expr& e) {
        if (json_) {
            Json doc = header();
            doc["name"] = name;
            doc["signature"] = "";
            doc["weight"] = 0;
            doc["components"] = e.is_zero() ? Json::array() : Json::array({{{"index", Json::array()}, {"expr", render(e)}}});
            doc["zeros_omitted"] = true;
            out_ << doc.dump() << "\n";
        } else {
            out_ << name << " = " << render(e) << "\n";
        }
    }

    void value(const std::string& name, double v) {
        if (json_) {
            Json doc = header();
            doc["name"] = name;
            doc["value"] = v;
            out_ << doc.dump() << "\n";
        } else {
            out_ << name << " = " << fmt_real(v) << "\n";
        }
    }

    void notice(const std::string& text) {
        if (json_) {
            Json doc = header();
            doc["notice"] = text;
            out_ << doc.dump() << "\n";
        } else {
            out_ << "# notice: " << text << "\n";
        }
    }

    // true when every check passed
    bool report(const std::string& suite, const Report& r) {
        for (const auto& c : r.checks) {
            if (json_) {
                Json doc = header();
                doc["suite"] = suite;
                doc["check"] = c.name;
                doc["passed"] = c.passed;
                doc["cases"] = c.cases;
                doc["max_residual"] = fmt_real(c.max_residual, "%.3e");
                if (!c.detail.empty()) doc["detail"] = c.detail;
                out_ << doc.dump() << "\n";
            } else {
                out_ << (c.passed ? "PASS " : "FAIL ") << suite << " " << c.name << " (cases " << c.cases
                     << ", max residual " << fmt_real(c.max_residual, "%.3e") << ")";
                if (!c.detail.empty()) out_ << " " << c.detail;
                out_ << "\n";
            }
        }
        for (const auto& n : r.notes) {
            if (json_) {
                Json doc = header();
                doc["suite"] = suite;
                doc["note"] = n;
                out_ << doc.dump() << "\n";
            } else {
                out_ << "# note: " << suite << ": " << n << "\n";
            }
        }
        return r.passed();
    }

    void summary(bool passed, std::size_t checks) {
        if (json_) {
            Json doc = header();
            doc["passed"] = passed;
            doc["checks"] = checks;
            out_ << doc.dump() << "\n";
        } else {
            out_ << "# result: " << (passed ? "PASS" : "FAIL") << " (" << checks << " checks)\n";
        }
    }

private:
    Json header() const { return Json{{"system", system_}, {"operation", operation_}}; }

    std::ostream& out_;
    bool json_;
    std::string system_, operation_;
};

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::size_t p = 0;
    while (true) {
        auto q = s.find(sep, p);
        parts.push_back(s.substr(p, q - p));
        if (q == std::string::npos) break;
        p = q + 1;
    }
    return parts;
}

Expr parse_checked(const std::string& text, const std::set<std::string>& allowed) {
    Expr e;
    try {
        e = normalize(parse(text));
    } catch (const ParseError& p) {
        throw UsageError("in '" + text + "': " + p.what());
    }
    for (const auto& s : free_symbols(e))
        if (!allowed.count(s)) throw UsageError("unknown symbol '" + s + "' in '" + text + "'");
    return e;
}

struct FieldArg {
    std::string name;
    std::vector<Expr> comps;
};

// name=expr or name=expr1,expr2,...
FieldArg parse_field(const std::string& arg, const std::set<std::string>& allowed) {
    auto eq = arg.find('=');
    if (arg.empty() || eq == std::string::npos || eq == 0) throw UsageError("--field expects name=expr[,expr...]");
    FieldArg f{arg.substr(0, eq), {}};
    for (const auto& c : split(arg.substr(eq + 1), ',')) f.comps.push_back(parse_checked(c, allowed));
    return f;
}

std::set<std::string> coord_set(const Metric& g) { return {g.system().coords.begin(), g.system().coords.end()}; }

Variance variance_of(const std::string& v, Variance fallback) {
    if (v.empty()) return fallback;
    if (v == "up") return Variance::Up;
    if (v == "down") return Variance::Down;
    throw UsageError("--variance must be up or down");
}

TensorField vector_field(const FieldArg& f, const Metric& g, Variance v) {
    if (static_cast<int>(f.comps.size()) != g.dim())
        throw UsageError("field '" + f.name + "' needs " + std::to_string(g.dim()) + " components");
    TensorField t(f.name, {v}, g.dim());
    t.fill([&](const Index& x) { return f.comps[static_cast<std::size_t>(x[0] - 1)]; });
    return t;
}

// Table in physical components when requested, else as is.
void emit(Printer& p, const Options& o, const Metric& g, const TensorField& t) {
    if (!o.physical) {
        p.table(t);
        return;
    }
    if (!g.has_scale_factors()) throw UsageError("--physical needs an orthogonal system with scale factors");
    PhysicalForm f = physical_components(t, g);
    f.table.rename(t.name());
    p.table(f.table, &g.system().coords);
}

TensorField from_matrix(const std::string& name, const Matrix3& m) {
    TensorField t(name, parse_signature("dd"), 3);
    t.fill([&](const Index& x) { return m[static_cast<std::size_t>(x[0] - 1)][static_cast<std::size_t>(x[1] - 1)]; });
    return t;
}

TensorField from_vector(const std::string& name, const FieldVector3& v) {
    TensorField t(name, parse_signature("d"), 3);
    t.fill([&](const Index& x) { return v[static_cast<std::size_t>(x[0] - 1)]; });
    return t;
}

FieldVector3 vector3(const std::string& text, const std::set<std::string>& allowed, const char* what) {
    auto parts = split(text, ',');
    if (parts.size() != 3) throw UsageError(std::string(what) + " needs three comma-separated expressions");
    return {parse_checked(parts[0], allowed), parse_checked(parts[1], allowed), parse_checked(parts[2], allowed)};
}

std::set<std::string> present_and(std::initializer_list<std::string> extra) {
    std::set<std::string> s(kPresentCoords.begin(), kPresentCoords.end());
    s.insert(extra);
    return s;
}

int run_continuum(const std::string& op, const Options& o, std::ostream& out) {
    Printer p(out, o, "cartesian", "continuum " + op);
    const std::set<std::string> xyz = present_and({});
    const std::set<std::string> past(kPastCoords.begin(), kPastCoords.end());
    auto field3 = [&](const char* role) {
        FieldArg f = parse_field(o.field, present_and({"t"}));
        if (f.comps.size() != 3) throw UsageError(std::string(role) + " needs three components");
        return FieldVector3{f.comps[0], f.comps[1], f.comps[2]};
    };
    auto motion = [&] {
        if (o.map.empty()) throw UsageError("--map is required (present x, y, z in terms of X, Y, Z)");
        Motion m{vector3(o.map, past, "--map"), std::nullopt};
        if (!o.inverse.empty()) m.past = vector3(o.inverse, xyz, "--inverse");
        return displacement_gradients(m, continuum_oracle(o.seed, o.tol));
    };
    if (op == "strain") {
        p.table(from_matrix("gamma", infinitesimal_strain(field3("displacement"))));
    } else if (op == "traction") {
        auto s = split(o.sigma, ',');
        if (s.size() != 9) throw UsageError("--sigma needs nine comma-separated entries, row by row");
        Matrix3 sigma;
        for (int k = 0; k < 9; ++k) sigma[k / 3][k % 3] = parse_checked(s[static_cast<std::size_t>(k)], xyz);
        p.table(from_vector("T", traction(sigma, vector3(o.normal, xyz, "--normal"))));
    } else if (op == "gradients") {
        auto d = motion();
        p.table(from_matrix("E", d.E));
        p.table(from_matrix("Delta", d.Delta));
    } else if (op == "finger") {
        p.table(from_matrix("B", finger(motion().E)));
    } else if (op == "cauchy") {
        p.table(from_matrix("Binv", cauchy(motion().Delta)));
    } else if (op == "decompose") {
        auto d = velocity_gradient_decompose(field3("velocity"));
        p.table(from_matrix("gradv", d.grad));
        p.table(from_matrix("S", d.S));
        p.table(from_matrix("Sbar", d.Sbar));
    } else {
        throw UsageError("unknown continuum operation '" + op + "'");
    }
    return kOk;
}

const std::vector<std::string> kSuites{"epsilon", "christoffel", "ricci-theorem", "curvature", "bianchi", "operators", "continuum"};

std::vector<Report> suite_reports(const std::string& s, const Metric& g, const Options& o) {
    if (s == "epsilon") {
        std::vector<Report> r;
        for (int n = 2; n <= 4; ++n) r.push_back(verify_epsilon_identities(n));
        if (g.dim() == 3) {
            r.push_back(metric_epsilon_delta(g));
        } else {
            Report skip;
            skip.title = "metric-epsilon-delta";
            skip.notes.push_back("skipped: the metric form is stated for n = 3");
            r.push_back(skip);
        }
        return r;
    }
    if (s == "christoffel") return {verify_christoffel(g), verify_metric_derivative_identities(g)};
    if (s == "ricci-theorem") return {verify_ricci_theorem(g), verify_derivative_properties(g, o.seed)};
    if (s == "curvature") return {verify_riemann_symmetries(g), verify_curvature(g, o.seed), einstein_divergence_check(g)};
    if (s == "bianchi") return {verify_bianchi(g)};
    if (s == "operators") return {verify_operators(g, o.seed)};
    return {verify_continuum(o.seed, o.tol)};
}

int run_verify(const Metric& g, const Options& o, std::ostream& out) {
    std::vector<std::string> suites;
    if (o.suite == "all")
        suites = kSuites;
    else if (std::find(kSuites.begin(), kSuites.end(), o.suite) != kSuites.end())
        suites = {o.suite};
    else
        throw UsageError("unknown suite '" + o.suite + "'");
    Printer p(out, o, g.system().name, "verify --suite " + o.suite + " --seed " + std::to_string(o.seed));
    bool ok = true;
    std::size_t count = 0;
    for (const auto& s : suites)
        for (const auto& r : suite_reports(s, g, o)) {
            ok = p.report(s == r.title ? s : s + "/" + r.title, r) && ok;
            count += r.checks.size();
        }
    p.summary(ok, count);
    return ok ? kOk : kVerifyFailed;
}

std::string variance_word(Variance v) { return v == Variance::Up ? "up" : "down"; }

int dispatch(const std::string& cmd, const std::string& sub, const Options& o, std::ostream& out) {
    if (cmd == "continuum") return run_continuum(sub, o, out);
    if (o.format != "text" && o.format != "json") throw UsageError("--format must be text or json");
    Metric g = load_system(o.system, o.seed, o.tol);
    if (cmd == "verify") return run_verify(g, o, out);

    std::string op = cmd;
    if (cmd == "christoffel") op += " --kind " + std::to_string(o.kind);
    if (cmd == "riemann") op += " --form " + o.riemann_form;
    if (!o.field.empty()) op += " --field " + o.field;
    if (!o.variance.empty()) op += " --variance " + o.variance;
    if (!o.curve.empty()) op += " --curve " + o.curve;
    if (o.physical) op += " --physical";
    std::optional<FieldArg> parsed;
    if (!o.field.empty()) parsed = parse_field(o.field, coord_set(g));
    Printer p(out, o, g.system().name, op);

    if (cmd == "show-metric") {
        p.table(metric_tensor(g, Variance::Down).rename("g"));
        p.table(metric_tensor(g, Variance::Up).rename("ginv"));
        p.scalar("det", g.det());
        p.scalar("sqrt_det", g.sqrt_det());
        p.scalar("ds^2", line_element(g));
        if (g.has_scale_factors()) {
            TensorField h("h", parse_signature("d"), g.dim());
            h.fill([&](const Index& x) { return g.h(x[0]); });
            p.table(h);
        }
        return kOk;
    }
    if (cmd == "christoffel") {
        if (o.kind == 1)
            p.table(christoffel_first(g).rename("Gamma1"));
        else if (o.kind == 2)
            p.table(christoffel_second(g).rename("Gamma"));
        else
            throw UsageError("--kind must be 1 or 2");
        return kOk;
    }
    if (cmd == "riemann") {
        const CurvatureBundle& c = curvature(g);
        if (o.riemann_form == "mixed")
            p.table(TensorField(c.riemann_mixed).rename("R"));
        else if (o.riemann_form == "covariant")
            p.table(TensorField(c.riemann).rename("R"));
        else
            throw UsageError("--form must be mixed or covariant");
        return kOk;
    }
    if (cmd == "ricci") {
        const CurvatureBundle& c = curvature(g);
        p.table(TensorField(c.ricci).rename("Ric"));
        p.scalar("R", c.scalar);
        return kOk;
    }
    if (cmd == "einstein") {
        p.table(TensorField(curvature(g).einstein).rename("G"));
        return kOk;
    }
    if (cmd == "length") {
        if (o.curve.empty()) throw UsageError("--curve <file> is required");
        p.value("length", curve_length(load_curve(o.curve, g), g));
        return kOk;
    }

    if (!parsed) throw UsageError("--field name=expr[,expr...] is required");
    const FieldArg& f = *parsed;
    const bool scalar_field = f.comps.size() == 1 && g.dim() != 1;
    if (cmd == "grad") {
        if (scalar_field) {
            TensorField t = gradient(f.comps[0], g, variance_of(o.variance, Variance::Down));
            emit(p, o, g, t.rename("grad " + f.name));
        } else {
            emit(p, o, g, gradient(vector_field(f, g, variance_of(o.variance, Variance::Up)), g).rename("grad " + f.name));
        }
        return kOk;
    }
    if (cmd == "laplacian") {
        if (scalar_field)
            p.scalar("lap " + f.name, laplacian(f.comps[0], g));
        else
            emit(p, o, g, laplacian_vector(vector_field(f, g, variance_of(o.variance, Variance::Up)), g).rename("lap " + f.name));
        return kOk;
    }
    if (scalar_field) throw UsageError(cmd + " needs a vector field with " + std::to_string(g.dim()) + " components");
    if (cmd == "div") {
        Variance v = variance_of(o.variance, Variance::Up);
        p.scalar("div " + f.name, divergence(vector_field(f, g, v), g));
        return kOk;
    }
    if (cmd == "curl") {
        Variance v = variance_of(o.variance, Variance::Down);
        std::string notice;
        TensorField c = curl(vector_field(f, g, v), g, &notice);
        if (!notice.empty()) p.notice(notice + " (input variance " + variance_word(v) + ")");
        emit(p, o, g, c.rename("curl " + f.name));
        return kOk;
    }
    throw UsageError("unknown command '" + cmd + "'");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Symbolic tensor calculus on metric spaces", "tcalc"};
    app.fallthrough();
    app.require_subcommand(1);
    Options o;
    app.add_option("--system", o.system, "builtin:<name> or file:<path>")->capture_default_str();
    app.add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
    app.add_option("--seed", o.seed, "sampling seed")->capture_default_str();
    app.add_option("--tol", o.tol, "oracle tolerance")->check(CLI::PositiveNumber)->capture_default_str();
    app.add_flag("--physical", o.physical, "physical components in orthogonal systems");

    auto field_opt = [&](CLI::App* s, bool required) {
        auto* opt = s->add_option("--field", o.field, "name=expr or name=expr,expr,...");
        if (required) opt->required();
        return opt;
    };
    app.add_subcommand("show-metric", "metric, inverse, determinant, line element, scale factors");
    app.add_subcommand("christoffel", "Christoffel symbols")
        ->add_option("--kind", o.kind, "1 or 2")
        ->check(CLI::IsMember({1, 2}))
        ->capture_default_str();
    app.add_subcommand("riemann", "Riemann tensor")
        ->add_option("--form", o.riemann_form, "mixed or covariant")
        ->check(CLI::IsMember({"mixed", "covariant"}))
        ->capture_default_str();
    app.add_subcommand("ricci", "Ricci tensor and scalar");
    app.add_subcommand("einstein", "Einstein tensor");
    for (const char* name : {"grad", "div", "curl", "laplacian"}) {
        auto* s = app.add_subcommand(name, std::string(name) + " of a field");
        field_opt(s, true);
        s->add_option("--variance", o.variance, "up or down")->check(CLI::IsMember({"up", "down"}));
    }
    app.add_subcommand("length", "arc length of a curve")->add_option("--curve", o.curve, "curve definition file")->required();
    auto* cont = app.add_subcommand("continuum", "Cartesian continuum tensors");
    cont->require_subcommand(1);
    for (const char* name : {"strain", "traction", "gradients", "finger", "cauchy", "decompose"}) {
        auto* s = cont->add_subcommand(name);
        if (std::string_view(name) == "strain" || std::string_view(name) == "decompose") field_opt(s, true);
        if (std::string_view(name) == "traction") {
            s->add_option("--sigma", o.sigma, "nine entries, row by row")->required();
            s->add_option("--normal", o.normal, "three entries")->required();
        }
        if (std::string_view(name) == "gradients" || std::string_view(name) == "finger" || std::string_view(name) == "cauchy") {
            s->add_option("--map", o.map, "x,y,z in terms of X,Y,Z")->required();
            s->add_option("--inverse", o.inverse, "X,Y,Z in terms of x,y,z");
        }
    }
    app.add_subcommand("verify", "identity suites")
        ->add_option("--suite", o.suite, "epsilon|christoffel|ricci-theorem|curvature|bianchi|operators|continuum|all")
        ->check(CLI::IsMember({"epsilon", "christoffel", "ricci-theorem", "curvature", "bianchi", "operators", "continuum", "all"}))
        ->capture_default_str();

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kUsage;
    }

    CLI::App* cmd = app.get_subcommands().front();
    std::string sub = cmd->get_subcommands().empty() ? "" : cmd->get_subcommands().front()->get_name();
    try {
        return dispatch(cmd->get_name(), sub, o, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
    } catch (const DefinitionError& e) {
        err << "error: " << e.what() << "\n";
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
    }
    return kUsage;
}

}  // namespace tcalc::cli
