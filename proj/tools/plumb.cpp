// plumb: command-line surface for the truncated-series plumbing calculus.
// Subcommands parse inline JSON (or a file path), run the requested
// computation and emit a schema-stable report; --verify on pair, compplum
// and example runs the module invariant suites.
#include <array>
#include <complex>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "plumb/abelian.hpp"
#include "plumb/elliptic.hpp"
#include "plumb/frames.hpp"
#include "plumb/pairing.hpp"
#include "plumb/series_json.hpp"

namespace {

using plumb::Complex;
using plumb::Json;
using plumb::Series;
namespace model = plumb::model;
namespace pairing = plumb::pairing;
namespace frames = plumb::frames;
namespace ell = plumb::elliptic;
namespace abelian = plumb::abelian;
using model::kPi;
using model::SectionK;
using model::VerticalSection;

int g_exit = 0;

// ---- input helpers ----

std::string load_argument(const std::string& arg) {
    std::ifstream in(arg, std::ios::binary);
    if (!in) return arg; // inline JSON
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Json json_arg(const std::string& arg) { return plumb::parse_json_text(load_argument(arg)); }

Series series_arg(const std::string& arg) { return plumb::series_from_json(json_arg(arg)); }

SectionK section_arg(const std::string& arg) {
    Json j = json_arg(arg);
    if (!j.is_object() || !j.contains("k") || !j.contains("coeff"))
        throw plumb::parse_error("a section needs the keys \"k\" and \"coeff\"");
    return SectionK(j.at("k").get<int>(), plumb::series_from_json(j.at("coeff")));
}

Complex complex_from_json(const Json& j) {
    if (j.is_number()) return Complex(j.get<double>(), 0.0);
    if (j.is_array() && j.size() == 2) return Complex(j.at(0).get<double>(), j.at(1).get<double>());
    if (j.is_object() && j.contains("re")) return Complex(j.at("re").get<double>(), j.value("im", 0.0));
    throw plumb::parse_error("expected a complex number as NUM, [re,im] or {\"re\":..,\"im\":..}");
}

Complex complex_arg(const std::string& arg) { return complex_from_json(plumb::parse_json_text(arg)); }

frames::NodalConfiguration config_arg(const std::string& arg) {
    Json j = json_arg(arg);
    if (!j.is_object() || !j.contains("parts") || !j.contains("nodes"))
        throw plumb::parse_error("a configuration needs the keys \"parts\" and \"nodes\"");
    std::vector<frames::NodalConfiguration::Part> parts;
    for (const Json& p : j.at("parts")) {
        if (!p.is_object() || !p.contains("g") || !p.contains("n"))
            throw plumb::parse_error("each part needs the keys \"g\" and \"n\"");
        parts.push_back({p.at("g").get<int>(), p.at("n").get<int>()});
    }
    return frames::NodalConfiguration(std::move(parts), j.at("nodes").get<int>());
}

int resolve_trunc(int cli_trunc, int fallback) {
    if (cli_trunc > 0) return cli_trunc;
    if (const char* env = std::getenv("PLUMB_TRUNC")) {
        try {
            return std::stoi(env);
        } catch (const std::exception&) {
            throw plumb::parse_error("PLUMB_TRUNC must be an integer, got '" + std::string(env) + "'");
        }
    }
    return fallback;
}

// ---- output helpers ----

Json complex_json(Complex v) { return Json{{"re", v.real()}, {"im", v.imag()}}; }

void print_text(const Json& j, const std::string& prefix, std::ostream& os) {
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it)
            print_text(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), os);
        return;
    }
    if (j.is_array()) {
        bool structured = false;
        for (const Json& e : j)
            if (e.is_object() || e.is_array()) structured = true;
        if (structured) {
            std::size_t i = 0;
            for (const Json& e : j) print_text(e, prefix + "[" + std::to_string(i++) + "]", os);
            return;
        }
    }
    os << prefix << " = " << j.dump() << "\n";
}

void emit(const Json& j, const std::string& format) {
    if (format == "text")
        print_text(j, "", std::cout);
    else
        std::cout << j.dump(2) << "\n";
}

Json config_json(const frames::NodalConfiguration& cfg) {
    Json parts = Json::array();
    for (const auto& p : cfg.parts) parts.push_back(Json{{"g", p.genus}, {"n", p.punctures}});
    Json out;
    out["parts"] = parts;
    out["nodes"] = cfg.node_count;
    out["closed"] = cfg.is_closed();
    out["euler_characteristic"] = cfg.total_euler_characteristic();
    if (cfg.is_closed()) out["genus"] = cfg.arithmetic_genus();
    out["dimension"] = frames::dimension_count(cfg);
    return out;
}

// ---- verification suites ----

struct Check {
    std::string name;
    double residual;
    double bound;
    bool passed;
};

Check measured(std::string name, double residual, double bound) {
    return {std::move(name), residual, bound, residual <= bound};
}

template <typename Fn>
Check must_reject(std::string name, Fn&& fn) {
    try {
        fn();
    } catch (const plumb::domain_error&) {
        return {std::move(name), 0.0, 0.0, true};
    }
    return {std::move(name), 1.0, 0.0, false};
}

Json suite_json(const std::string& suite, const std::vector<Check>& checks, const Json& extra = Json::object()) {
    Json out;
    out["suite"] = suite;
    Json arr = Json::array();
    bool all = true;
    for (const Check& c : checks) {
        arr.push_back(Json{{"name", c.name}, {"residual", c.residual}, {"bound", c.bound}, {"passed", c.passed}});
        all = all && c.passed;
    }
    out["checks"] = arr;
    for (auto it = extra.begin(); it != extra.end(); ++it) out[it.key()] = it.value();
    out["passed"] = all;
    return out;
}

Series mono(const std::vector<std::string>& v, int t, std::vector<int> e, Complex c) {
    return Series::monomial(v, t, std::move(e), c);
}

Json pair_verify_report() {
    const std::vector<std::string> ZW{"z", "w"};
    std::vector<Check> cs;
    SectionK quarter(2, Series::constant(ZW, 6, Complex(0.25, 0.0)));
    double pole_dev = 0.0;
    for (Complex t : {Complex(0.5, 0.0), Complex(0.0, 0.25), Complex(-0.1, 0.2)})
        pole_dev = std::max(pole_dev, std::abs(pairing::plumbing_pairing(quarter, t) - (-kPi / t)));
    cs.push_back(measured("quarter-alpha-squared pairing is -pi/t", pole_dev, 0.0));
    cs.push_back(measured("Laur of the quarter section is 1",
                          std::abs(model::laur(quarter).coefficient({0}) - Complex(1.0, 0.0)), 0.0));
    SectionK zw_section(2, mono(ZW, 6, {1, 1}, Complex(1.0, 0.0)));
    cs.push_back(measured("zw section pairs to -4pi in the t -> 0 limit",
                          std::abs(pairing::plumbing_pairing_limit_value(zw_section) - Complex(-4.0 * kPi, 0.0)),
                          0.0));
    Complex a(2, 1), b(-1, 3), c(4, -2), d(3, 0), e(-2, 2), f(1, -5), g(0, 4);
    VerticalSection lambda(Series::constant(ZW, 6, Complex(1.0, 0.0)) + mono(ZW, 6, {1, 0}, a) +
                           mono(ZW, 6, {0, 1}, b));
    Series phi = mono(ZW, 6, {1, 0}, c) + mono(ZW, 6, {0, 1}, d) + mono(ZW, 6, {2, 0}, e) +
                 mono(ZW, 6, {1, 1}, f) + mono(ZW, 6, {0, 2}, g);
    Series lp = pairing::lp_pairing(lambda, SectionK(2, phi));
    cs.push_back(measured("LP t-coefficient is 4(ad+bc+f)",
                          std::abs(lp.coefficient({1}) - 4.0 * (a * d + b * c + f)), 0.0));
    Complex t_probe(0.004, 0.003);
    Complex series_val = lp.eval({{"t", t_probe}});
    Complex numeric = pairing::lp_pairing_numeric(lambda, SectionK(2, phi), t_probe);
    cs.push_back(measured("numeric LP matches the series LP",
                          std::abs(numeric - series_val) / std::max(1.0, std::abs(series_val)), 1e-10));
    cs.push_back(must_reject("pairing rejects t = 0",
                             [&] { pairing::plumbing_pairing(quarter, Complex(0.0, 0.0)); }));
    cs.push_back(must_reject("inadmissible vertical section rejected", [&] {
        pairing::lp_pairing(VerticalSection(Series::constant(ZW, 4, Complex(2.0, 0.0))),
                            SectionK(2, mono(ZW, 4, {1, 1}, Complex(1.0, 0.0))));
    }));
    return suite_json("pair", cs);
}

Json compplum_verify_report() {
    const std::vector<std::string> ZW{"z", "w"};
    std::vector<Check> cs;
    pairing::CoordinateChange identity(mono({"z"}, 6, {1}, Complex(1.0, 0.0)),
                                       mono({"w"}, 6, {1}, Complex(1.0, 0.0)));
    SectionK zw_section(2, mono(ZW, 6, {1, 1}, Complex(1.0, 0.0)));
    auto oracle_id = pairing::compplum_coordinate_oracle(identity, zw_section);
    auto fd_id = pairing::compplum_finite_difference(identity, zw_section);
    auto closed_id = pairing::compplum_closed_form(identity, zw_section);
    cs.push_back(measured("identity plumbing oracle equals -4pi",
                          std::abs(oracle_id.value - Complex(-4.0 * kPi, 0.0)), 0.0));
    cs.push_back(measured("identity finite difference agrees", std::abs(fd_id.value - oracle_id.value), 1e-8));

    const std::array<std::array<Complex, 6>, 3> rows = {{
        {Complex(1.0, 0.0), Complex(0.3, 0.0), Complex(0.05, 0.0), Complex(1.0, 0.0), Complex(-0.2, 0.0),
         Complex(0.1, 0.0)},
        {Complex(2.0, 0.0), Complex(0.0, 0.5), Complex(0.0, 0.0), Complex(1.0, 0.0), Complex(0.25, 0.0),
         Complex(0.0, 0.0)},
        {Complex(1.0, 1.0), Complex(0.0, 0.0), Complex(0.1, 0.0), Complex(0.5, 0.0), Complex(-0.05, 0.0),
         Complex(0.0, 0.0)},
    }};
    Series phi = mono(ZW, 6, {1, 0}, Complex(0.4, -0.1)) + mono(ZW, 6, {0, 1}, Complex(-0.3, 0.2)) +
                 mono(ZW, 6, {1, 1}, Complex(1.2, 0.1)) + mono(ZW, 6, {2, 0}, Complex(0.15, 0.0)) +
                 mono(ZW, 6, {0, 2}, Complex(-0.25, 0.05)) + mono(ZW, 6, {2, 1}, Complex(0.1, 0.3)) +
                 mono(ZW, 6, {1, 2}, Complex(-0.2, -0.1));
    SectionK section(2, phi);
    double max_rel = 0.0;
    for (const auto& row : rows) {
        Series F({"z"}, 6), G({"w"}, 6);
        F = F + mono({"z"}, 6, {1}, row[0]) + mono({"z"}, 6, {2}, row[1]) + mono({"z"}, 6, {3}, row[2]);
        G = G + mono({"w"}, 6, {1}, row[3]) + mono({"w"}, 6, {2}, row[4]) + mono({"w"}, 6, {3}, row[5]);
        pairing::CoordinateChange change(F, G);
        auto oracle = pairing::compplum_coordinate_oracle(change, section);
        auto fd = pairing::compplum_finite_difference(change, section);
        max_rel = std::max(max_rel, std::abs(oracle.value - fd.value) / std::max(1.0, std::abs(oracle.value)));
    }
    cs.push_back(measured("coordinate-change oracle vs finite difference", max_rel, 1e-6));

    pairing::CoordinateChange curved(mono({"z"}, 6, {1}, Complex(2.0, 0.0)) + mono({"z"}, 6, {2}, Complex(1.0, 0.0)),
                                     mono({"w"}, 6, {1}, Complex(0.0, 1.0)) + mono({"w"}, 6, {2}, Complex(-3.0, 0.0)));
    Complex prod = pairing::normal_cocycle(curved) * curved.alpha() * curved.gamma();
    cs.push_back(measured("normal cocycle is 1/(F'(0)G'(0))", std::abs(prod - Complex(1.0, 0.0)), 1e-15));
    cs.push_back(must_reject("non-decreasing tau sequence rejected", [&] {
        pairing::compplum_finite_difference(identity, zw_section, {1e-2, 2e-2});
    }));

    Json extra;
    extra["identity_closed_form"] = Json{{"value", complex_json(closed_id.value)},
                                         {"method", pairing::method_name(closed_id.method)},
                                         {"ratio_to_oracle", std::abs(oracle_id.value / closed_id.value)}};
    return suite_json("compplum", cs, extra);
}

Json example_verify_report(const std::string& which) {
    std::vector<Check> cs;
    if (which.empty() || which == "elliptic") {
        ell::EllipticFamilyGerm germ = ell::build_family_germ(Complex(0.0, 1.0), 8);
        for (ell::Involution inv : {ell::Involution::elliptic, ell::Involution::sphere}) {
            auto rep = ell::involution_action(germ, inv);
            const char* nm = inv == ell::Involution::elliptic ? "elliptic" : "sphere";
            cs.push_back(measured(std::string(nm) + " involution preserves the germ", rep.invariance_residual, 1e-13));
            auto twice = ell::involution_action(rep.transformed, inv);
            cs.push_back(measured(std::string(nm) + " involution squares to the identity",
                                  ell::germ_distance(twice.transformed, germ), 1e-13));
        }
        auto table = ell::cotangent_frame_table(germ);
        double dev = 0.0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                dev = std::max(dev, std::abs(table.value[i][j] - Complex(i == j ? 1.0 : 0.0, 0.0)));
        cs.push_back(measured("cotangent frame table is the identity", dev, 1e-12));
    }
    if (which.empty() || which == "abelian") {
        auto rep = abelian::dt_identity(4);
        cs.push_back(measured("dt section coefficient", rep.coefficient_error, 1e-16));
        cs.push_back(measured("dt Laurent coefficient", rep.laur_error, 1e-16));
        cs.push_back(measured("dt pairing equals 1", rep.max_pairing_error, 1e-14));
        cs.push_back({"dt residue vanishes", rep.residue_vanishes ? 0.0 : 1.0, 0.0, rep.residue_vanishes});
        double max_rel = 0.0;
        for (Complex phat : {Complex(0.0, 0.0), Complex(0.5, -0.25), Complex(-0.3, 0.1)})
            for (Complex t : {Complex(0.3, 0.1), Complex(-0.05, 0.2), Complex(1e-3, 1e-3)})
                max_rel = std::max(max_rel, abelian::derivative_two_ways(abelian::PeriodModel(phat, t)).rel_error);
        cs.push_back(measured("derivative computed two ways", max_rel, 1e-13));
    }
    return suite_json(which.empty() ? "example" : "example " + which, cs);
}

// ---- example reports ----

Json elliptic_example_report(Complex tau, int trunc) {
    ell::EllipticFamilyGerm germ = ell::build_family_germ(tau, trunc);
    Json out;
    out["tau"] = complex_json(germ.tau);
    out["trunc"] = germ.trunc;
    out["g2"] = complex_json(germ.wp.g2);
    out["g3"] = complex_json(germ.wp.g3);
    auto res = ell::residue_table(germ);
    Json rt = Json::array();
    for (const auto& row : res) rt.push_back(Json::array({complex_json(row[0]), complex_json(row[1])}));
    out["residues"] = rt;
    auto table = ell::cotangent_frame_table(germ);
    Json vals = Json::array(), flags = Json::array();
    for (int i = 0; i < 3; ++i) {
        Json vr = Json::array(), fr = Json::array();
        for (int j = 0; j < 3; ++j) {
            vr.push_back(complex_json(table.value[i][j]));
            fr.push_back(table.asserted[i][j]);
        }
        vals.push_back(vr);
        flags.push_back(fr);
    }
    out["cotangent"] = Json{{"value", vals}, {"asserted", flags}};
    Json invs;
    for (ell::Involution inv : {ell::Involution::elliptic, ell::Involution::sphere}) {
        auto rep = ell::involution_action(germ, inv);
        Json signs = Json::array(), cols = Json::array();
        for (const auto& s : rep.parameter_signs) signs.push_back(complex_json(s));
        for (const auto& s : rep.cotangent_column_signs) cols.push_back(complex_json(s));
        invs[inv == ell::Involution::elliptic ? "elliptic" : "sphere"] =
            Json{{"parameter_signs", signs},
                 {"cotangent_column_signs", cols},
                 {"invariance_residual", rep.invariance_residual}};
    }
    out["involutions"] = invs;
    return out;
}

Json abelian_example_report(Complex phat, Complex t, int trunc) {
    abelian::PeriodModel m(phat, t, trunc);
    auto cmp = abelian::derivative_two_ways(m);
    auto rep = abelian::dt_identity(trunc);
    Json out;
    out["p_hat"] = complex_json(m.p_hat);
    out["t"] = complex_json(m.t);
    out["period"] = complex_json(abelian::period(m));
    out["derivative"] = Json{{"direct", complex_json(cmp.direct)},
                             {"chain", complex_json(cmp.chain)},
                             {"rel_error", cmp.rel_error}};
    out["dt_identity"] = Json{{"section_coefficient", complex_json(rep.section_coefficient)},
                              {"coefficient_error", rep.coefficient_error},
                              {"laur_error", rep.laur_error},
                              {"residue_vanishes", rep.residue_vanishes},
                              {"max_pairing_error", rep.max_pairing_error},
                              {"max_scaling_error", rep.max_scaling_error},
                              {"passed", rep.passed}};
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Truncated-series plumbing calculus: pairings, frames, dimension counts and worked examples"};
    app.require_subcommand(1);

    std::string format = "json";
    int trunc_cli = -1;
    app.add_option("--format", format, "output format")->check(CLI::IsMember({"json", "text"}));
    app.add_option("--trunc", trunc_cli, "series truncation order (default: PLUMB_TRUNC or per-command)")
        ->check(CLI::PositiveNumber);

    auto* series_cmd = app.add_subcommand("series", "parse, combine and evaluate truncated series");
    series_cmd->fallthrough();
    std::string series_input, series_plus, series_times, series_at;
    series_cmd->add_option("--input", series_input, "series as inline JSON or a file path")->required();
    series_cmd->add_option("--plus", series_plus, "series to add");
    series_cmd->add_option("--times", series_times, "series to multiply");
    series_cmd->add_option("--at", series_at, "evaluation point as {\"var\": [re,im], ...}");
    series_cmd->callback([&] {
        Series s = series_arg(series_input);
        if (!series_plus.empty()) s = s + series_arg(series_plus);
        if (!series_times.empty()) s = s * series_arg(series_times);
        if (trunc_cli > 0) s = s.truncated(trunc_cli);
        Json out;
        out["series"] = plumb::series_to_json(s);
        if (!series_at.empty()) {
            Json pj = json_arg(series_at);
            if (!pj.is_object()) throw plumb::parse_error("evaluation point must be a JSON object");
            std::map<std::string, Complex> point;
            for (auto it = pj.begin(); it != pj.end(); ++it) point[it.key()] = complex_from_json(it.value());
            out["value"] = complex_json(s.eval(point));
        }
        emit(out, format);
    });

    auto* laur_cmd = app.add_subcommand("laur", "Laurent part of a weight-2 section over the node");
    laur_cmd->fallthrough();
    std::string laur_section, laur_tname = "t";
    laur_cmd->add_option("--section", laur_section, "section as {\"k\":2,\"coeff\":{series}}")->required();
    laur_cmd->add_option("--t-name", laur_tname, "name of the base variable in the output");
    laur_cmd->callback([&] {
        Json out;
        out["laur"] = plumb::series_to_json(model::laur(section_arg(laur_section), laur_tname));
        emit(out, format);
    });

    auto* pair_cmd = app.add_subcommand("pair", "pairing of the base derivative against a section");
    pair_cmd->fallthrough();
    std::string pair_section, pair_t, pair_vertical;
    bool pair_limit = false, pair_verify = false;
    pair_cmd->add_option("--section", pair_section, "weight-2 section");
    pair_cmd->add_option("--t", pair_t, "plumbing parameter as NUM, [re,im] or {\"re\":..}");
    pair_cmd->add_option("--vertical", pair_vertical,
                         "vertical section coefficient (series JSON); switches to the LP pairing");
    pair_cmd->add_flag("--limit", pair_limit, "evaluate the t -> 0 limit");
    pair_cmd->add_flag("--verify", pair_verify, "run the pairing invariant suite");
    pair_cmd->callback([&] {
        if (pair_verify) {
            Json rep = pair_verify_report();
            emit(rep, format);
            if (!rep["passed"].get<bool>()) g_exit = 2;
            return;
        }
        if (pair_section.empty()) throw plumb::parse_error("pair needs --section (or --verify)");
        SectionK section = section_arg(pair_section);
        Json out;
        if (!pair_vertical.empty()) {
            VerticalSection lambda(series_arg(pair_vertical));
            Series lp = pairing::lp_pairing(lambda, section);
            out["lp"] = plumb::series_to_json(lp);
            out["method"] = pairing::method_name(pairing::Method::closed_form);
            if (!pair_t.empty()) {
                Complex t = complex_arg(pair_t);
                out["t"] = complex_json(t);
                out["value"] = complex_json(lp.eval({{"t", t}}));
            }
        } else if (pair_limit) {
            out["pairing"] = complex_json(pairing::plumbing_pairing_limit_value(section));
            out["method"] = pairing::method_name(pairing::Method::closed_form);
            out["limit"] = true;
        } else {
            if (pair_t.empty()) throw plumb::parse_error("pair needs --t or --limit");
            Complex t = complex_arg(pair_t);
            out["pairing"] = complex_json(pairing::plumbing_pairing(section, t));
            out["method"] = pairing::method_name(pairing::Method::closed_form);
            out["t"] = complex_json(t);
        }
        emit(out, format);
    });

    auto* comp_cmd = app.add_subcommand("compplum", "pairing across a composed plumbing, three routes");
    comp_cmd->fallthrough();
    std::string comp_F, comp_G, comp_section, comp_tau;
    bool comp_verify = false;
    comp_cmd->add_option("--F", comp_F, "z-side coordinate change (univariate series JSON)");
    comp_cmd->add_option("--G", comp_G, "w-side coordinate change (univariate series JSON)");
    comp_cmd->add_option("--section", comp_section, "weight-2 section");
    comp_cmd->add_option("--tau", comp_tau, "finite-difference step sequence as a JSON array");
    comp_cmd->add_flag("--verify", comp_verify, "run the composed-plumbing invariant suite");
    comp_cmd->callback([&] {
        if (comp_verify) {
            Json rep = compplum_verify_report();
            emit(rep, format);
            if (!rep["passed"].get<bool>()) g_exit = 2;
            return;
        }
        if (comp_F.empty() || comp_G.empty() || comp_section.empty())
            throw plumb::parse_error("compplum needs --F, --G and --section (or --verify)");
        pairing::CoordinateChange change(series_arg(comp_F), series_arg(comp_G));
        SectionK section = section_arg(comp_section);
        auto closed = pairing::compplum_closed_form(change, section);
        auto oracle = pairing::compplum_coordinate_oracle(change, section);
        pairing::PairingResult fd{};
        if (!comp_tau.empty()) {
            Json tj = json_arg(comp_tau);
            if (!tj.is_array() || tj.size() < 2)
                throw plumb::parse_error("--tau must be a JSON array of at least two steps");
            std::vector<double> taus;
            for (const Json& v : tj) taus.push_back(v.get<double>());
            fd = pairing::compplum_finite_difference(change, section, taus);
        } else {
            fd = pairing::compplum_finite_difference(change, section);
        }
        Json out;
        for (const auto& r : {closed, oracle, fd})
            out[pairing::method_name(r.method)] =
                Json{{"value", complex_json(r.value)}, {"method", pairing::method_name(r.method)}};
        emit(out, format);
    });

    auto* frames_cmd = app.add_subcommand("frames", "stable nodal configurations and their census");
    frames_cmd->fallthrough();
    int frames_enum = -1;
    std::string frames_config;
    frames_cmd->add_option("--enumerate", frames_enum, "list every closed stable configuration up to this genus")
        ->check(CLI::NonNegativeNumber);
    frames_cmd->add_option("--config", frames_config, "report the invariants of one configuration");
    frames_cmd->callback([&] {
        Json out;
        if (!frames_config.empty()) {
            out = config_json(config_arg(frames_config));
        } else if (frames_enum >= 0) {
            auto census = frames::enumerate_closed_stable(frames_enum);
            out["max_genus"] = frames_enum;
            out["count"] = census.size();
            Json arr = Json::array();
            for (const auto& cfg : census) arr.push_back(config_json(cfg));
            out["configurations"] = arr;
        } else {
            throw plumb::parse_error("frames needs --enumerate or --config");
        }
        emit(out, format);
    });

    auto* dims_cmd = app.add_subcommand("dims", "dimension of regular quadratic differentials on a configuration");
    dims_cmd->fallthrough();
    std::string dims_config;
    dims_cmd->add_option("--config", dims_config, "configuration as {\"parts\":[{\"g\":..,\"n\":..}],\"nodes\":..}")
        ->required();
    dims_cmd->callback([&] {
        frames::NodalConfiguration cfg = config_arg(dims_config);
        Json out;
        Json parts = Json::array();
        for (const auto& p : cfg.parts) parts.push_back(Json{{"g", p.genus}, {"n", p.punctures}});
        out["parts"] = parts;
        out["nodes"] = cfg.node_count;
        out["dimension"] = frames::dimension_count(cfg);
        emit(out, format);
    });

    auto* ex_cmd = app.add_subcommand("example", "worked verification examples");
    ex_cmd->fallthrough();
    std::string ex_name;
    bool ex_verify = false;
    std::string ex_tau = "[0,1]", ex_phat = "0", ex_t = "[0.3,0.1]";
    ex_cmd->add_option("name", ex_name, "which example to run")->check(CLI::IsMember({"elliptic", "abelian"}));
    ex_cmd->add_flag("--verify", ex_verify, "run the example invariant suites");
    ex_cmd->add_option("--tau", ex_tau, "modulus for the elliptic example");
    ex_cmd->add_option("--phat", ex_phat, "t-independent period part for the abelian example");
    ex_cmd->add_option("--t", ex_t, "plumbing parameter for the abelian example");
    ex_cmd->callback([&] {
        if (ex_verify) {
            Json rep = example_verify_report(ex_name);
            emit(rep, format);
            if (!rep["passed"].get<bool>()) g_exit = 2;
            return;
        }
        if (ex_name == "elliptic") {
            emit(elliptic_example_report(complex_arg(ex_tau), resolve_trunc(trunc_cli, 8)), format);
        } else if (ex_name == "abelian") {
            emit(abelian_example_report(complex_arg(ex_phat), complex_arg(ex_t), resolve_trunc(trunc_cli, 4)),
                 format);
        } else {
            throw plumb::parse_error("example needs a name ('elliptic' or 'abelian') or --verify");
        }
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const plumb::domain_error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const plumb::parse_error& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }
    return g_exit;
}
