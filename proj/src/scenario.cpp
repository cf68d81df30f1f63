#include "aksz/scenario.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <set>
#include <sstream>

#include "aksz/parse.hpp"

namespace aksz {

namespace {

using json = nlohmann::json;

[[noreturn]] void schema_error(const std::string& path, const std::string& what) {
    throw Error(ErrorKind::schema, (path.empty() ? "/" : path) + ": " + what);
}

const json& require(const json& obj, const std::string& key, const std::string& path) {
    auto it = obj.find(key);
    if (it == obj.end()) schema_error(path, "missing required field '" + key + "'");
    return *it;
}

void require_object(const json& node, const std::string& path) {
    if (!node.is_object()) schema_error(path, "expected an object");
}

void allow_keys(const json& obj, const std::set<std::string>& keys, const std::string& path) {
    for (const auto& [k, v] : obj.items()) {
        if (!keys.count(k)) schema_error(path, "unknown field '" + k + "'");
    }
}

GradedPoly expression(const json& node, const Chart& chart, const std::string& path) {
    if (!node.is_string()) schema_error(path, "expected an expression string");
    try {
        return parse_expression(node.get<std::string>(), chart);
    } catch (const ParseError& e) {
        throw ParseError(e.kind(), path + ": " + std::string(e.what()).substr(0, std::string(e.what()).rfind(" at ")),
                         e.line(), e.column());
    } catch (const Error& e) {
        throw Error(e.kind(), path + ": " + e.what());
    }
}

Chart parse_coordinates(const json& node, Role role, const std::string& path) {
    if (!node.is_array()) schema_error(path, "expected an array of coordinates");
    std::vector<Coordinate> coords;
    for (std::size_t k = 0; k < node.size(); ++k) {
        const std::string p = path + "/" + std::to_string(k);
        const json& c = node[k];
        require_object(c, p);
        allow_keys(c, {"name", "parity"}, p);
        const json& name = require(c, "name", p);
        const json& parity = require(c, "parity", p);
        if (!name.is_string()) schema_error(p + "/name", "expected a string");
        if (!parity.is_string() || (parity != "even" && parity != "odd")) {
            schema_error(p + "/parity", "expected \"even\" or \"odd\"");
        }
        const std::string n = name.get<std::string>();
        if (n.empty() || std::isdigit(static_cast<unsigned char>(n[0])) ||
            !std::all_of(n.begin(), n.end(), [](char ch) { return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_'; })) {
            schema_error(p + "/name", "'" + n + "' is not a valid identifier");
        }
        coords.push_back({n, parity == "odd" ? Parity::odd : Parity::even, role});
    }
    try {
        return Chart(std::move(coords));
    } catch (const Error& e) {
        schema_error(path, e.what());
    }
}

std::map<std::string, GradedPoly> parse_table(const json& node, const Chart& chart, const std::string& path) {
    require_object(node, path);
    std::map<std::string, GradedPoly> out;
    for (const auto& [k, v] : node.items()) {
        if (!chart.find(k)) schema_error(path, "'" + k + "' is not a coordinate of this chart");
        out.emplace(k, expression(v, chart, path + "/" + k));
    }
    return out;
}

std::optional<Parity> table_parity(const Chart& chart, const std::map<std::string, GradedPoly>& table,
                                   const std::string& path) {
    try {
        return infer_field_parity(chart, table);
    } catch (const Error& e) {
        throw Error(e.kind(), path + ": " + e.what());
    }
}

// Two fields that must share a parity; a zero field adopts its partner's, and
// two zero fields are odd.
std::vector<VectorField> parse_fields(const std::vector<const json*>& nodes, const std::vector<Chart>& charts,
                                      const std::vector<std::string>& paths) {
    std::vector<std::map<std::string, GradedPoly>> tables;
    std::optional<Parity> common;
    for (std::size_t k = 0; k < nodes.size(); ++k) {
        tables.push_back(nodes[k] ? parse_table(*nodes[k], charts[k], paths[k]) : std::map<std::string, GradedPoly>{});
        auto p = table_parity(charts[k], tables.back(), paths[k]);
        if (p && !common) common = p;
    }
    std::vector<VectorField> out;
    for (std::size_t k = 0; k < nodes.size(); ++k) {
        auto p = table_parity(charts[k], tables[k], paths[k]);
        out.push_back(VectorField::from_table(charts[k], p.value_or(common.value_or(Parity::odd)), tables[k]));
    }
    return out;
}

// A form given either as an expression over `chart`, or as a table
// "a,b": coeff standing for the sum of coeff * da * db.
SuperForm parse_form(const json& node, const Chart& chart, const std::string& path) {
    if (node.is_string()) return SuperForm(expression(node, chart, path));
    require_object(node, path);
    GradedPoly out(chart);
    for (const auto& [k, v] : node.items()) {
        const auto comma = k.find(',');
        if (comma == std::string::npos) schema_error(path, "table key '" + k + "' must name two coordinates as \"a,b\"");
        GradedPoly term = expression(v, chart, path + "/" + k);
        for (const std::string& name : {k.substr(0, comma), k.substr(comma + 1)}) {
            auto i = chart.find(name);
            if (!i || !chart.differential_of(*i)) {
                schema_error(path + "/" + k, "'" + name + "' is not a target coordinate");
            }
            term = term * GradedPoly::variable(chart, *chart.differential_of(*i));
        }
        out += term;
    }
    return SuperForm(std::move(out));
}

std::optional<PolyMap> parse_map_table(const json& compose, const std::string& key, const Chart& from,
                                       const Chart& to, const std::string& path) {
    auto it = compose.find(key);
    if (it == compose.end()) return std::nullopt;
    require_object(*it, path + "/" + key);
    std::vector<GradedPoly> comps;
    for (const auto& [k, v] : it->items()) {
        if (!to.find(k)) schema_error(path + "/" + key, "'" + k + "' is not a coordinate of the map's target");
    }
    for (std::size_t k = 0; k < to.size(); ++k) {
        auto c = it->find(to[k].name);
        if (c == it->end()) schema_error(path + "/" + key, "missing component for '" + to[k].name + "'");
        comps.push_back(expression(*c, from, path + "/" + key + "/" + to[k].name));
    }
    try {
        return PolyMap(from, to, std::move(comps));
    } catch (const Error& e) {
        throw Error(e.kind(), path + "/" + key + ": " + e.what());
    }
}

const json* find_either(const json& doc, const char* a, const char* b, const std::string& path) {
    auto ia = doc.find(a);
    auto ib = doc.find(b);
    if (ia != doc.end() && ib != doc.end()) {
        schema_error(path, std::string("give either '") + a + "' or '" + b + "', not both");
    }
    if (ia != doc.end()) return &*ia;
    if (ib != doc.end()) return &*ib;
    return nullptr;
}

ComposeSpec parse_compose(const json& node, const std::string& path) {
    require_object(node, path);
    allow_keys(node, {"M1", "M2", "M3", "X1", "X2", "X3", "phi", "psi"}, path);
    ComposeSpec c;
    c.M1 = parse_coordinates(require(node, "M1", path), Role::source, path + "/M1");
    c.M2 = parse_coordinates(require(node, "M2", path), Role::target, path + "/M2");
    c.M3 = parse_coordinates(require(node, "M3", path), Role::target, path + "/M3");
    auto fields = parse_fields({&require(node, "X1", path), &require(node, "X2", path), &require(node, "X3", path)},
                               {c.M1, c.M2, c.M3}, {path + "/X1", path + "/X2", path + "/X3"});
    c.X1 = fields[0];
    c.X2 = fields[1];
    c.X3 = fields[2];
    c.phi = parse_map_table(node, "phi", c.M1, c.M2, path);
    c.psi = parse_map_table(node, "psi", c.M2, c.M3, path);
    if (!c.phi) schema_error(path, "missing required field 'phi'");
    if (!c.psi) schema_error(path, "missing required field 'psi'");
    return c;
}

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

}  // namespace

Scenario parse_scenario(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        auto [line, col] = line_column(text, e.byte);
        std::string what = e.what();
        if (auto p = what.find("syntax error"); p != std::string::npos) what = what.substr(p);
        throw ParseError(ErrorKind::syntax, "invalid JSON: " + what, line, col);
    }
    require_object(doc, "");
    allow_keys(doc, {"name", "description", "source", "target", "Q1", "Q2", "X1", "X2", "structure", "tasks", "compose"},
               "");

    Scenario s;
    const json& name = require(doc, "name", "");
    if (!name.is_string()) schema_error("/name", "expected a string");
    s.name = name.get<std::string>();

    const json& tasks = require(doc, "tasks", "");
    if (!tasks.is_array() || tasks.empty()) schema_error("/tasks", "expected a non-empty array");
    for (std::size_t k = 0; k < tasks.size(); ++k) {
        const std::string p = "/tasks/" + std::to_string(k);
        TaskSpec t;
        if (tasks[k].is_string()) {
            t.name = tasks[k].get<std::string>();
        } else if (tasks[k].is_object()) {
            allow_keys(tasks[k], {"task", "expect"}, p);
            const json& tn = require(tasks[k], "task", p);
            if (!tn.is_string()) schema_error(p + "/task", "expected a string");
            t.name = tn.get<std::string>();
            if (auto e = tasks[k].find("expect"); e != tasks[k].end()) {
                if (*e != "pass" && *e != "fail") schema_error(p + "/expect", "expected \"pass\" or \"fail\"");
                t.expect_pass = *e == "pass";
            }
        } else {
            schema_error(p, "expected a task name or {\"task\", \"expect\"}");
        }
        const auto& known = known_tasks();
        if (std::find(known.begin(), known.end(), t.name) == known.end()) {
            schema_error(p, "unknown task '" + t.name + "'");
        }
        s.tasks.push_back(std::move(t));
    }

    if (auto it = doc.find("compose"); it != doc.end()) s.compose = parse_compose(*it, "/compose");

    const bool needs_chart = std::any_of(s.tasks.begin(), s.tasks.end(),
                                         [](const TaskSpec& t) { return t.name != "compose-check"; });
    const bool has_source = doc.contains("source");
    if (!has_source && needs_chart) schema_error("", "missing required field 'source'");
    if (has_source) {
        const json& src = doc["source"];
        require_object(src, "/source");
        allow_keys(src, {"q", "rho"}, "/source");
        const json& q = require(src, "q", "/source");
        if (!q.is_number_integer() || q.get<long long>() < 1 || q.get<long long>() > 9) {
            schema_error("/source/q", "expected an integer between 1 and 9");
        }
        const unsigned qv = q.get<unsigned>();
        const Chart source_chart = SourceOddLine::make_chart(qv);
        GradedPoly rho = GradedPoly::constant(source_chart, 1);
        s.rho_text = "1";
        if (auto r = src.find("rho"); r != src.end()) {
            rho = expression(*r, source_chart, "/source/rho");
            s.rho_text = print_poly(rho);
        }
        const Chart target = parse_coordinates(require(doc, "target", ""), Role::target, "/target");
        try {
            s.chart.emplace(SourceOddLine(source_chart, rho), target);
        } catch (const Error& e) {
            throw Error(e.kind(), std::string("/source: ") + e.what());
        }
        const MappingChart& mc = *s.chart;

        const json* x1 = find_either(doc, "Q1", "X1", "");
        const json* x2 = find_either(doc, "Q2", "X2", "");
        const std::string p1 = doc.contains("Q1") ? "/Q1" : "/X1";
        const std::string p2 = doc.contains("Q2") ? "/Q2" : "/X2";
        auto fields = parse_fields({x1, x2}, {mc.source().chart(), mc.target()}, {p1, p2});
        s.X1 = fields[0];
        s.X2 = fields[1];

        if (auto st = doc.find("structure"); st != doc.end()) {
            require_object(*st, "/structure");
            allow_keys(*st, {"omega", "lambda", "H", "omegabar", "lambdabar"}, "/structure");
            const bool f = st->contains("omega");
            const bool g = st->contains("omegabar");
            if (f == g) schema_error("/structure", "give exactly one of 'omega' or 'omegabar'");
            if (f) {
                if (st->contains("lambdabar")) schema_error("/structure", "'lambdabar' belongs to an 'omegabar' structure");
                s.omega = parse_form((*st)["omega"], mc.target_forms(), "/structure/omega");
                if (st->contains("lambda")) s.lambda = parse_form((*st)["lambda"], mc.target_forms(), "/structure/lambda");
                if (st->contains("H")) s.H = expression((*st)["H"], mc.target(), "/structure/H");
            } else {
                if (st->contains("lambda") || st->contains("H")) {
                    schema_error("/structure", "'lambda' and 'H' belong to an 'omega' structure");
                }
                s.omegabar = parse_form((*st)["omegabar"], mc.product_forms(), "/structure/omegabar");
                if (st->contains("lambdabar")) {
                    s.lambdabar = parse_form((*st)["lambdabar"], mc.product_forms(), "/structure/lambdabar");
                }
            }
        }
    }
    return s;
}

Scenario load_scenario_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::invalid_argument, "cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return parse_scenario(os.str());
}

namespace {

ordered_json field_json(const VectorField& X) {
    ordered_json out = ordered_json::object();
    for (std::size_t i = 0; i < X.size(); ++i) {
        if (!X.component(i).is_zero()) out[X.chart()[i].name] = print_poly(X.component(i));
    }
    return out;
}

ordered_json poly_list(const std::vector<GradedPoly>& v) {
    ordered_json out = ordered_json::array();
    for (const auto& p : v) out.push_back(print_poly(p));
    return out;
}

const MappingChart& chart_of(const Scenario& s) {
    if (!s.chart) throw Error(ErrorKind::schema, "task needs 'source' and 'target'");
    return *s.chart;
}

TwoFormField two_form_of(const Scenario& s) {
    const MappingChart& mc = chart_of(s);
    if (s.omega) return TwoFormField::factorized(mc, *s.omega);
    if (s.omegabar) return TwoFormField(mc, *s.omegabar);
    throw Error(ErrorKind::schema, "task needs a 'structure'");
}

// H with i_{Q2} omega = -dH, derived when the scenario leaves it out.
GradedPoly hamiltonian_of(const Scenario& s, TaskResult& r) {
    const MappingChart& mc = chart_of(s);
    const SuperForm omega(transfer(s.omega->value(), mc.target_forms()));
    const SuperForm minus_iota = -interior_product(s.X2, omega);
    if (s.H) {
        const GradedPoly H = transfer(*s.H, mc.target());
        const bool ok = exterior_derivative(function_form(H, mc.target_forms())) == minus_iota;
        r.results["hamiltonian_consistent"] = ok;
        if (!ok) r.diagnostics.push_back("i_Q2 omega + dH = " + print_poly((-minus_iota).value() +
                                          function_form(H, mc.target_forms()).value()) + " is not zero");
        return H;
    }
    if (minus_iota.is_zero()) return GradedPoly(mc.target());
    return transfer(d_inverse(minus_iota, 1).value(), mc.target());
}

void check_homological(const Scenario& s, TaskResult& r) {
    const MappingChart& mc = chart_of(s);
    auto& out = r.results;
    bool ok = true;
    for (const auto& [label, X] : {std::pair<const char*, const VectorField*>{"Q1", &s.X1}, {"Q2", &s.X2}}) {
        const bool h = is_homological(*X);
        out[std::string(label) + "_homological"] = h;
        out[std::string(label) + "_square"] = field_json(lie_bracket(*X, *X));
        if (!h) r.diagnostics.push_back(std::string("[") + label + "," + label + "] = " + print_field(lie_bracket(*X, *X)) +
                                        (is_odd(X->parity()) ? "" : " (field is even)"));
        ok = ok && h;
    }
    const VectorField pull = pullback_field(s.X1, mc);
    const VectorField push = pushforward_field(s.X2, mc);
    const VectorField diff = difference_construction(s.X1, s.X2, mc);
    out["pullback_homological"] = is_homological(pull) || pull.is_zero();
    out["pushforward_homological"] = is_homological(push) || push.is_zero();
    out["difference"] = field_json(diff);
    out["difference_homological"] = is_homological(diff);
    ok = ok && out["pullback_homological"].get<bool>() && out["pushforward_homological"].get<bool>() &&
         out["difference_homological"].get<bool>();
    r.status = ok ? "pass" : "fail";
}

void check_volume(const Scenario& s, TaskResult& r) {
    const MappingChart& mc = chart_of(s);
    const BerezinVolume& vol = mc.source().volume();
    r.results["rho"] = print_poly(vol.density);
    bool ok = true;
    for (const auto& f : odd_function_basis(vol.source)) {
        const GradedPoly v = berezin_integral(vol.density * apply_field(s.X1, f), vol.odd_coordinates());
        if (!v.is_zero()) {
            ok = false;
            r.diagnostics.push_back("integral of rho * Q1(" + print_poly(f) + ") = " + print_poly(v));
        }
    }
    r.results["invariant"] = ok;
    r.status = ok ? "pass" : "fail";
}

// Entries (a, b) of the coordinate bracket table and its graded symmetry
// (f, g) = -(-1)^{(f~ + w~)(g~ + w~)} (g, f).
bool bracket_table(const SymplecticStructure& sym, ordered_json& table, std::vector<std::string>& diagnostics) {
    const Chart& base = sym.base();
    const std::size_t n = base.size();
    std::vector<VectorField> ham;
    for (std::size_t a = 0; a < n; ++a) ham.push_back(hamiltonian_field(GradedPoly::variable(base, a), sym));
    bool ok = true;
    table = ordered_json::object();
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            const GradedPoly ab = ham[a].component(b);
            const GradedPoly ba = ham[b].component(a);
            if (!ab.is_zero()) table[base[a].name + "," + base[b].name] = print_poly(ab);
            const Parity pa = base[a].parity + sym.parity();
            const Parity pb = base[b].parity + sym.parity();
            const Rational sign = koszul(pa, pb) < 0 ? 1 : -1;
            if (ab != sign * ba) {
                ok = false;
                diagnostics.push_back("bracket symmetry fails for (" + base[a].name + ", " + base[b].name + ")");
            }
        }
    }
    return ok;
}

void task_bracket_table(const Scenario& s, TaskResult& r) {
    const MappingChart& mc = chart_of(s);
    const SymplecticStructure sym(aksz_form(two_form_of(s), mc));
    r.results["Omega"] = print_poly(sym.form().value());
    r.results["Omega_parity"] = to_string(sym.parity());
    ordered_json table;
    bool ok = bracket_table(sym, table, r.diagnostics);
    r.results["mapping_brackets"] = table;
    if (s.omega) {
        const SymplecticStructure target(SuperForm(transfer(s.omega->value(), mc.target_forms())));
        ordered_json ttable;
        ok = bracket_table(target, ttable, r.diagnostics) && ok;
        r.results["target_brackets"] = ttable;
    }
    r.results["symmetry"] = ok;
    r.status = ok ? "pass" : "fail";
}

void task_aksz(const Scenario& s, TaskResult& r) {
    const MappingChart& mc = chart_of(s);
    if (!s.omega) throw Error(ErrorKind::schema, "task 'aksz' needs a factorized structure ('omega')");
    auto& out = r.results;
    const GradedPoly H = hamiltonian_of(s, r);
    const bool h_ok = !out.contains("hamiltonian_consistent") || out["hamiltonian_consistent"].get<bool>();
    out["H"] = print_poly(H);

    const FactorizedData data{*s.omega, s.lambda, H};
    const SuperForm lambda = s.lambda ? SuperForm(transfer(s.lambda->value(), mc.target_forms()))
                                      : d_inverse(SuperForm(transfer(s.omega->value(), mc.target_forms())), 2);
    out["lambda"] = print_poly(lambda.value());
    const TwoFormField omegabar = TwoFormField::factorized(mc, *s.omega);
    const SuperForm Omega = aksz_form(omegabar, mc);
    const GradedPoly S = aksz_action(s.X1, data, mc);
    out["Omega"] = print_poly(Omega.value());
    out["S"] = print_poly(S);

    const SymplecticStructure sym(Omega);
    const VectorField X12 = difference_construction(s.X1, s.X2, mc);
    const VectorField XS = hamiltonian_field(S, sym);
    out["X12"] = field_json(X12);
    out["XS"] = field_json(XS);
    int sign = 0;
    if (XS == -X12) {
        sign = -1;
    } else if (XS == X12) {
        sign = 1;
    } else {
        r.diagnostics.push_back("X_S equals neither -d(Q1,Q2) nor d(Q1,Q2)");
    }
    out["global_sign"] = sign;

    const MasterCheck m = master_equation(S, sym);
    out["bracket_SS"] = print_poly(m.bracket);
    out["master_equation"] = m.bracket_vanishes;
    out["XS_homological"] = m.field_homological;
    const bool applies = !is_odd(parity_of(S)) && is_odd(sym.parity());
    const bool master_ok = !applies || m.agree();
    const bool inputs_homological = is_homological(s.X1) && is_homological(s.X2);
    if (!master_ok) r.diagnostics.push_back("(S,S) = 0 and homologicality of X_S disagree");
    if (inputs_homological && !m.bracket_vanishes) r.diagnostics.push_back("(S,S) = " + print_poly(m.bracket));

    // The general pipeline on rho * omega must give the same action, with U = -rho*H.
    const SuperForm lambdabar(transfer(mc.source().density(), mc.product_forms()) *
                              transfer(lambda.value(), mc.product_forms()));
    const AkszReport g = gradient_form_verify(s.X1, s.X2, omegabar, mc, lambdabar);
    const GradedPoly expected_U = -(transfer(mc.source().density(), mc.product()) * transfer(H, mc.product()));
    const bool coherent = g.S == S && g.U == expected_U;
    out["U_general"] = print_poly(g.U);
    out["coherent"] = coherent;
    if (!coherent) r.diagnostics.push_back("general pipeline action " + print_poly(g.S) + " differs from " + print_poly(S));

    const bool ok = h_ok && sign != 0 && master_ok && (!inputs_homological || m.passed()) && coherent;
    r.status = ok ? "pass" : "fail";
}

void task_verify(const Scenario& s, TaskResult& r) {
    const MappingChart& mc = chart_of(s);
    const TwoFormField omegabar = two_form_of(s);
    std::optional<SuperForm> lambdabar = s.lambdabar;
    if (s.omega && s.lambda) {
        lambdabar = SuperForm(transfer(mc.source().density(), mc.product_forms()) *
                              transfer(s.lambda->value(), mc.product_forms()));
    }
    auto& out = r.results;
    out["omegabar"] = print_poly(omegabar.form().value());
    try {
        const AkszReport rep = gradient_form_verify(s.X1, s.X2, omegabar, mc, lambdabar);
        out["lambdabar"] = print_poly(rep.lambdabar.value());
        out["U"] = print_poly(rep.U);
        out["Omega"] = print_poly(rep.Omega.value());
        out["S"] = print_poly(rep.S);
        out["X12"] = field_json(rep.X12);
        out["XS"] = field_json(rep.XS);
        out["global_sign"] = rep.global_sign;
        out["bracket_SS"] = print_poly(rep.master.bracket);
        out["master_equation"] = rep.master.bracket_vanishes;
        out["XS_homological"] = rep.master.field_homological;
        ordered_json checks = ordered_json::object();
        for (const auto& [k, v] : rep.checks) {
            checks[k] = v;
            if (!v) r.diagnostics.push_back("check '" + k + "' failed");
        }
        out["checks"] = checks;
        r.status = rep.all_passed() ? "pass" : "fail";
    } catch (const IntegrabilityViolation& e) {
        out["integrable"] = false;
        out["residual"] = print_poly(e.residual().value());
        r.diagnostics.push_back(std::string("IntegrabilityViolation: ") + e.what());
        r.status = "fail";
    }
}

void task_compose(const Scenario& s, TaskResult& r) {
    if (!s.compose) throw Error(ErrorKind::schema, "task 'compose-check' needs a 'compose' section");
    const ComposeSpec& c = *s.compose;
    const CompositionCheck chk = compose_check(*c.phi, *c.psi, c.X1, c.X2, c.X3);
    r.results["lhs"] = poly_list(chk.lhs);
    r.results["rhs"] = poly_list(chk.rhs);
    r.results["equal"] = chk.equal;
    if (!chk.equal) r.diagnostics.push_back("d(X1,X3)[psi o phi] differs from the right-hand side");
    r.status = chk.equal ? "pass" : "fail";
}

}  // namespace

TaskResult run_task(const Scenario& s, const TaskSpec& task) {
    TaskResult r;
    r.task = task.name;
    r.expect_pass = task.expect_pass;
    const auto start = std::chrono::steady_clock::now();
    try {
        if (task.name == "check-homological") {
            check_homological(s, r);
        } else if (task.name == "check-volume") {
            check_volume(s, r);
        } else if (task.name == "bracket-table") {
            task_bracket_table(s, r);
        } else if (task.name == "aksz") {
            task_aksz(s, r);
        } else if (task.name == "verify-theorem") {
            task_verify(s, r);
        } else if (task.name == "compose-check") {
            task_compose(s, r);
        } else {
            throw Error(ErrorKind::schema, "unknown task '" + task.name + "'");
        }
    } catch (const Error& e) {
        r.status = "error";
        r.diagnostics.push_back(std::string(to_string(e.kind())) + ": " + e.what());
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

bool ScenarioReport::passed() const {
    return std::all_of(tasks.begin(), tasks.end(), [](const TaskResult& t) { return t.matched(); });
}

ScenarioReport run_scenario(const Scenario& s, const std::vector<std::string>& filter) {
    ScenarioReport rep;
    rep.scenario = s.name;
    for (const auto& t : s.tasks) {
        if (!filter.empty() && std::find(filter.begin(), filter.end(), t.name) == filter.end()) continue;
        rep.tasks.push_back(run_task(s, t));
    }
    return rep;
}

ordered_json report_json(const ScenarioReport& r, bool timing) {
    ordered_json out;
    out["schema_version"] = report_schema_version;
    out["scenario"] = r.scenario;
    out["passed"] = r.passed();
    ordered_json tasks = ordered_json::array();
    for (const auto& t : r.tasks) {
        ordered_json j;
        j["task"] = t.task;
        j["status"] = t.status;
        j["expected"] = t.expect_pass ? "pass" : "fail";
        j["matched"] = t.matched();
        j["results"] = t.results;
        j["diagnostics"] = t.diagnostics;
        if (timing) j["seconds"] = t.seconds;
        tasks.push_back(std::move(j));
    }
    out["tasks"] = std::move(tasks);
    return out;
}

namespace {

void render(std::ostream& os, const ordered_json& v, int indent) {
    const std::string pad(static_cast<std::size_t>(indent), ' ');
    for (const auto& [k, x] : v.items()) {
        if (x.is_object()) {
            if (x.empty()) {
                os << pad << k << ": 0\n";
            } else {
                os << pad << k << ":\n";
                render(os, x, indent + 2);
            }
        } else if (x.is_array()) {
            os << pad << k << ":\n";
            for (const auto& e : x) os << pad << "  - " << (e.is_string() ? e.get<std::string>() : e.dump()) << "\n";
        } else if (x.is_string()) {
            os << pad << k << ": " << x.get<std::string>() << "\n";
        } else {
            os << pad << k << ": " << x.dump() << "\n";
        }
    }
}

}  // namespace

std::string report_text(const ScenarioReport& r, bool timing) {
    std::ostringstream os;
    os << "scenario " << r.scenario << ": " << (r.passed() ? "PASS" : "FAIL") << "\n";
    for (const auto& t : r.tasks) {
        os << "  " << t.task << ": " << t.status;
        if (!t.expect_pass) os << " (expected fail)";
        if (!t.matched()) os << " [unexpected]";
        if (timing) os << " (" << t.seconds << " s)";
        os << "\n";
        render(os, t.results, 4);
        for (const auto& d : t.diagnostics) os << "    ! " << d << "\n";
    }
    return os.str();
}

}  // namespace aksz
