#include "cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "rr/field.hpp"

namespace rr {

using json = nlohmann::ordered_json;

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

bool projective_text(const std::string& s) {
    return s.find("X0") != std::string::npos || s.find("X1") != std::string::npos ||
           s.find("X2") != std::string::npos;
}

json place_json(const Place& P) {
    return {{"center", P.base.center()},
            {"index", P.index},
            {"e", P.e},
            {"f", P.f},
            {"degree", P.degree},
            {"type", P.type_strings()}};
}

std::string join(const std::vector<std::string>& v, const std::string& sep) {
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
    return s;
}

json coords_json(const FFElement& b) {
    json a = json::array();
    for (auto& c : b.coords) a.push_back(to_string(c));
    return a;
}

json curve_json(const CurveInput& ci) {
    json j = {{"field", ci.model->p}, {"f", to_string(ci.model->f)}};
    if (ci.prepared) {
        json T = json::array();
        for (auto& row : ci.prepared->T) T.push_back(row);
        j["transform"] = T;
        j["swapped"] = ci.prepared->swapped;
    }
    return j;
}

struct Options {
    std::string curve;
    bool json = false;
    int precision_cap = 4096;
    std::string center, divisor, element;
    std::vector<std::string> places;
    int r = 0;
};

}  // namespace

CurveInput parse_curve_text(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    std::optional<uint32_t> p;
    std::string poly;
    int poly_line = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string s = trim(line);
        if (s.empty() || s[0] == '#') continue;
        size_t sp = s.find_first_of(" \t:");
        std::string key = s.substr(0, sp);
        std::string val = sp == std::string::npos ? "" : trim(s.substr(sp));
        if (!val.empty() && val[0] == ':') val = trim(val.substr(1));
        if (key == "field") {
            char* end = nullptr;
            unsigned long v = std::strtoul(val.c_str(), &end, 10);
            if (val.empty() || *end != '\0' || v > 0x7fffffffUL)
                fail(ErrorCode::Syntax, "line " + std::to_string(lineno) + ": field must be a prime number");
            if (!is_prime(v))
                fail(ErrorCode::InvalidInput, "line " + std::to_string(lineno) + ": " + val + " is not prime");
            p = uint32_t(v);
        } else if (key == "polynomial") {
            poly = val;
            poly_line = lineno;
        } else {
            fail(ErrorCode::Syntax, "line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        }
    }
    if (!p) fail(ErrorCode::Syntax, "curve file has no 'field' line");
    if (poly.empty()) fail(ErrorCode::Syntax, "curve file has no 'polynomial' line");
    CurveInput ci;
    ci.source = poly;
    if (projective_text(poly)) {
        ci.prepared = prepare_curve(parse_tripoly(*p, poly, poly_line));
        ci.model = ci.prepared->model;
    } else {
        ci.model = CurveModel::make(parse_bipoly(*p, poly, poly_line));
        if (!is_irreducible_curve(ci.model)) fail(ErrorCode::NotIrreducible, "curve polynomial is reducible over F_p(t)");
    }
    return ci;
}

CurveInput read_curve_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) fail(ErrorCode::InvalidInput, "cannot read curve file '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_curve_text(ss.str());
}

BasePrime parse_center(uint32_t p, const std::string& text) {
    std::string s = trim(text);
    if (s == "inf") return BasePrime::at_infinity(p);
    Poly q = parse_tpoly(p, s);
    if (q.deg() < 1) fail(ErrorCode::UnknownPlace, "center must be 'inf' or a nonconstant polynomial in t");
    q = q.scaled(PrimeField(p).inv(q.lc()));
    if (!is_irreducible(q)) fail(ErrorCode::UnknownPlace, "center " + to_string(q) + " is not irreducible");
    return BasePrime::finite(q);
}

namespace {

int run_command(const std::string& cmd, const Options& o, std::ostream& out) {
    set_precision_cap(o.precision_cap);
    CurveInput ci = read_curve_file(o.curve);
    PlaceTable tab(ci.model);
    json j = {{"schema", 1}, {"command", cmd}, {"curve", curve_json(ci)}};
    std::ostringstream text;
    if (ci.prepared && !o.json) text << "model: " << to_string(ci.model->f) << "\n";

    if (cmd == "places") {
        std::vector<BasePrime> bases;
        if (!o.center.empty()) {
            bases.push_back(parse_center(ci.model->p, o.center));
        } else {
            bases = tab.discriminant_primes();
            bases.push_back(BasePrime::at_infinity(ci.model->p));
        }
        json arr = json::array();
        for (auto& b : bases)
            for (auto& P : tab.over(b)) {
                arr.push_back(place_json(P));
                text << P.id() << " e=" << P.e << " f=" << P.f << " degree=" << P.degree
                     << " type=" << join(P.type_strings(), ", ") << "\n";
            }
        j["places"] = arr;
    } else if (cmd == "rr" || cmd == "expand") {
        Divisor D = parse_divisor(tab, o.divisor);
        CompressedBasis cb = riemann_roch(tab, D);
        j["divisor"] = to_string(D);
        text << "divisor: " << to_string(D) << "\n";
        if (cmd == "rr") {
            json pairs = json::array();
            for (size_t i = 0; i < cb.b.size(); ++i) {
                pairs.push_back({{"b", coords_json(cb.b[i])}, {"d", cb.d[i]}});
                text << "b" << i << " (d=" << cb.d[i] << "): " << to_string(cb.b[i]) << "\n";
            }
            j["pairs"] = pairs;
            j["dim_for_r0"] = cb.dimension(0);
            text << "dim: " << cb.dimension(0) << "\n";
            if (o.r != 0) {
                j["r"] = o.r;
                j["dim"] = cb.dimension(o.r);
                text << "dim for r=" << o.r << ": " << cb.dimension(o.r) << "\n";
            }
        } else {
            auto els = expand_basis(cb, o.r);
            json arr = json::array();
            for (auto& b : els) {
                arr.push_back(coords_json(b));
                text << to_string(b) << "\n";
            }
            j["r"] = o.r;
            j["elements"] = arr;
            j["dim"] = els.size();
            text << "dim: " << els.size() << "\n";
        }
    } else if (cmd == "genus") {
        CurveInvariants inv = curve_invariants(tab);
        j["delta_finite"] = inv.delta_finite;
        j["delta_infinite"] = inv.delta_infinite;
        j["delta_curve"] = inv.delta_curve;
        j["rho"] = inv.rho;
        j["genus"] = inv.genus ? json(*inv.genus) : json(nullptr);
        j["plane_model"] = inv.plane_model;
        text << "delta_finite: " << inv.delta_finite << "\n"
             << "delta_infinite: " << inv.delta_infinite << "\n"
             << "delta_curve: " << inv.delta_curve << "\n"
             << "rho: " << inv.rho << "\n"
             << "genus: " << (inv.genus ? std::to_string(*inv.genus) : "withheld (rho > 1)") << "\n";
    } else if (cmd == "valuate") {
        FFElement b = parse_element(ci.model, o.element);
        if (b.is_zero()) fail(ErrorCode::InvalidInput, "the valuation of 0 is infinite");
        json arr = json::array();
        for (auto id : o.places) {
            // the option parser strips one pair of brackets from list values
            if (!id.empty() && id.front() != '[') id = "[" + id + "]";
            PlaceKey k = parse_place_id(tab, id);
            int v = valuation(tab.place(k), b);
            arr.push_back({{"place", k.str()}, {"valuation", v}});
            text << k.str() << ": " << v << "\n";
        }
        j["element"] = to_string(b);
        j["valuations"] = arr;
    } else if (cmd == "divisor-of") {
        FFElement b = parse_element(ci.model, o.element);
        if (b.is_zero()) fail(ErrorCode::InvalidInput, "0 has no divisor");
        Divisor D = principal_divisor(tab, b);
        j["element"] = to_string(b);
        j["divisor"] = to_string(D);
        j["degree"] = degree(tab, D);
        text << to_string(D) << "\n";
    } else if (cmd == "validate") {
        Divisor D = parse_divisor(tab, o.divisor);
        FFElement b = parse_element(ci.model, o.element);
        Membership m = contains(tab, D, b);
        json viol = json::array();
        for (auto& k : m.violations) viol.push_back(k.str());
        j["divisor"] = to_string(D);
        j["element"] = to_string(b);
        j["member"] = m.member;
        j["violations"] = viol;
        text << (m.member ? "member" : "not a member") << "\n";
        for (auto& k : m.violations) text << "violated at " << k.str() << "\n";
    }
    if (o.json)
        out << j.dump(2) << "\n";
    else
        out << text.str();
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Riemann-Roch spaces of plane curves over prime fields", "rrcli"};
    app.require_subcommand(1);
    Options o;
    app.add_option("--curve", o.curve, "curve file")->required();
    app.add_flag("--json", o.json, "machine-readable output");
    app.add_option("--precision-cap", o.precision_cap, "bound on adaptive lifting precision")
        ->check(CLI::PositiveNumber);

    auto* places = app.add_subcommand("places", "places over a center (default: discriminant primes and infinity)");
    places->add_option("--center", o.center, "'inf' or an irreducible polynomial in t");
    auto* rrc = app.add_subcommand("rr", "compressed basis of L(D)");
    rrc->add_option("--divisor", o.divisor, "divisor, e.g. 2*[t;0] - [inf;0]");
    rrc->add_option("--r", o.r, "also report dim L(D + r Dinf)");
    app.add_subcommand("genus", "delta invariants and genus");
    auto* val = app.add_subcommand("valuate", "valuations of an element");
    val->add_option("--element", o.element, "element in t, x")->required();
    val->add_option("--place", o.places, "place id, repeatable")->required();
    auto* dof = app.add_subcommand("divisor-of", "principal divisor of an element");
    dof->add_option("--element", o.element, "element in t, x")->required();
    auto* vd = app.add_subcommand("validate", "membership of an element in L(D)");
    vd->add_option("--divisor", o.divisor, "divisor");
    vd->add_option("--element", o.element, "element in t, x")->required();
    auto* ex = app.add_subcommand("expand", "flat k-basis of L(D + r Dinf)");
    ex->add_option("--divisor", o.divisor, "divisor");
    ex->add_option("--r", o.r, "shift by r Dinf");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }
    std::string cmd = app.get_subcommands().front()->get_name();
    try {
        return run_command(cmd, o, out);
    } catch (const Error& e) {
        if (o.json)
            out << json{{"schema", 1}, {"error", {{"code", error_code_name(e.code())}, {"message", e.what()}}}}.dump(2)
                << "\n";
        err << "error[" << error_code_name(e.code()) << "]: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace rr
