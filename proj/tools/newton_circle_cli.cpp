// SPDX-License-Identifier: Apache-2.0
//
// newton_circle_cli: batch front end. Every subcommand builds a VerificationReport,
// prints it as JSON on stdout (or writes it to --json / --csv) and exits
// 0 when all checks pass, 1 when a check fails or output cannot be written,
// 2 on a usage error.

#include <newton_circle/newton_circle.hpp>
#include <newton_circle/verify.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using nc::Rational;
using nc::VerificationReport;
using json = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Output {
    std::string json_path;
    std::string csv_path;
    bool no_timing = false;
};

/// p/q and plain decimals are exact; anything else that parses as a double (e.g. 6.18e-1) is a binary double.
nc::Frequency parse_frequency(std::string const& text) {
    try {
        return Rational::parse(text);
    } catch (nc::ParseError const&) {
    }
    std::size_t used = 0;
    double v = 0;
    try {
        v = std::stod(text, &used);
    } catch (std::exception const&) {
        used = 0;
    }
    if (used == 0 || used != text.size() || !std::isfinite(v)) throw nc::ParseError("malformed frequency '" + text + "'", used);
    return v;
}

json frequency_json(nc::Frequency const& f) {
    if (nc::is_exact(f)) return std::get<Rational>(f).str();
    return std::get<double>(f);
}

nc::Poly2 parse_average_poly(std::string const& text) {
    nc::Poly2 p = nc::parse_poly(text);
    if (p.constant_term() != 0) throw UsageError("polynomial must satisfy P(0,0)=0, got constant term " + p.constant_term().str());
    if (p.is_zero()) throw UsageError("polynomial is zero");
    return p;
}

std::vector<std::complex<double>> parse_values(std::string const& text) {
    std::vector<std::complex<double>> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double v = 0;
        try {
            v = std::stod(item, &used);
        } catch (std::exception const&) {
            used = 0;
        }
        if (used == 0 || used != item.size()) throw nc::ParseError("malformed number '" + item + "'", 0);
        out.emplace_back(v, 0.0);
    }
    return out;
}

json complex_json(std::complex<double> z) { return json::array({z.real(), z.imag()}); }

json exponent_json(nc::Exponent e) { return json::array({e.e1, e.e2}); }

// ---------------------------------------------------------------------------

struct NewtonArgs {
    std::string poly;
};

VerificationReport run_newton(NewtonArgs const& a) {
    VerificationReport rep;
    rep.command = "newton";
    rep.params["poly"] = a.poly;
    nc::Poly2 const p = parse_average_poly(a.poly);
    auto const d = nc::build_diagram(p);
    json row;
    row["vertices"] = json::array();
    for (auto const& v : d.vertices) row["vertices"].push_back(exponent_json(v));
    row["normals"] = json::array();
    for (auto const& w : d.normals) row["normals"].push_back(json::array({w.x, w.y}));
    row["determinants"] = d.determinants;
    row["gaps"] = json::array();
    for (auto const& g : d.gaps) row["gaps"].push_back(g.str());
    rep.results.push_back(row);
    std::set<nc::Exponent> const got(d.vertices.begin(), d.vertices.end());
    rep.check_true("vertices equal the direction-witness oracle", got == nc::oracle::newton_vertices(p));
    return rep;
}

struct SectorsArgs {
    std::string poly;
    std::int64_t max = 20;
};

VerificationReport run_sectors(SectorsArgs const& a) {
    VerificationReport rep;
    rep.command = "sectors";
    rep.params["poly"] = a.poly;
    rep.params["max"] = a.max;
    if (a.max < 0) throw UsageError("--max must be nonnegative");
    auto const d = nc::build_diagram(parse_average_poly(a.poly));
    std::size_t uncovered = 0;
    for (std::int64_t x = 0; x <= a.max; ++x)
        for (std::int64_t y = 0; y <= a.max; ++y) {
            auto const in = nc::sector_membership(d, {x, y});
            uncovered += in.empty();
            json row;
            row["a"] = x;
            row["b"] = y;
            row["sectors"] = in;
            if (!in.empty()) {
                auto const s = nc::subsector(d, in.front(), {x, y});
                row["canonical"] = in.front();
                row["branch"] = s.branch;
                row["N"] = s.level_N;
                row["n"] = s.offset_n;
            }
            rep.results.push_back(row);
        }
    rep.check_le("grid points outside every sector", static_cast<double>(uncovered), 0.0);
    return rep;
}

struct ExpsumArgs {
    std::string poly;
    std::string xi;
    std::int64_t k1 = 0, m1 = 0, k2 = 0, m2 = 0;
};

VerificationReport run_expsum(ExpsumArgs const& a) {
    VerificationReport rep;
    rep.command = "expsum";
    nc::Poly2 const p = nc::parse_poly(a.poly);
    nc::Frequency const xi = parse_frequency(a.xi);
    rep.params["poly"] = a.poly;
    rep.params["xi"] = frequency_json(xi);
    rep.params["K1"] = a.k1;
    rep.params["M1"] = a.m1;
    rep.params["K2"] = a.k2;
    rep.params["M2"] = a.m2;
    auto const v = nc::double_sum(nc::scale(p, xi), a.k1, a.m1, a.k2, a.m2);
    json row;
    row["value"] = complex_json(v.value);
    row["abs"] = std::abs(v.value);
    row["mode"] = nc::to_string(v.mode);
    row["term_count"] = v.term_count;
    row["error_budget"] = v.error_budget;
    row["modulus"] = v.modulus;
    rep.results.push_back(row);
    rep.check_le("|sum| <= term count", std::abs(v.value), static_cast<double>(v.term_count), v.error_budget);
    return rep;
}

struct VinogradovArgs {
    int s = 2, k = 2;
    std::int64_t N = 10;
    std::vector<std::int64_t> lambda;
};

VerificationReport run_vinogradov(VinogradovArgs const& a) {
    VerificationReport rep;
    rep.command = "vinogradov";
    std::vector<std::int64_t> lambda = a.lambda;
    if (lambda.empty()) lambda.assign(static_cast<std::size_t>(std::max(a.k, 0)), 0);
    if (static_cast<int>(lambda.size()) != a.k) throw UsageError("--lambda must have k entries");
    rep.params["s"] = a.s;
    rep.params["k"] = a.k;
    rep.params["N"] = a.N;
    rep.params["lambda"] = lambda;
    auto const c = nc::vinogradov_count(a.s, a.k, a.N, lambda);
    nc::BigInt bound = 1;
    for (int i = 0; i < 2 * a.s; ++i) bound *= a.N;
    json row;
    row["count"] = c.count.str();
    row["trivial_bound"] = bound.str();
    rep.results.push_back(row);
    rep.check_true("count <= N^{2s}", c.count <= bound);
    return rep;
}

struct GaussArgs {
    std::string poly;
    std::int64_t qmax = 50;
    std::string a_over_q;
};

VerificationReport run_gauss(GaussArgs const& a) {
    VerificationReport rep;
    rep.command = "gauss";
    nc::Poly2 const p = nc::parse_poly(a.poly);
    rep.params["poly"] = a.poly;
    if (!a.a_over_q.empty()) {
        Rational const aq = Rational::parse(a.a_over_q);
        rep.params["a_over_q"] = aq.str();
        auto const g = nc::gauss_sum(p, aq);
        rep.results.push_back({{"a_over_q", aq.str()}, {"G", complex_json(g)}, {"abs_G", std::abs(g)}});
        rep.check_le("|G(a/q)| <= 1", std::abs(g), 1.0, 1e-12);
        return rep;
    }
    if (a.qmax < 1) throw UsageError("--qmax must be positive");
    rep.params["qmax"] = a.qmax;
    double worst = 0.0;
    for (std::int64_t q = 1; q <= a.qmax; ++q) {
        auto const all = nc::gauss_sums_all(p, q);
        double m = 0.0;
        for (auto const& [num, g] : all) m = std::max(m, std::abs(g));
        worst = std::max(worst, m);
        json row;
        row["q"] = q;
        row["a_count"] = all.size();
        row["max_abs_G"] = m;
        rep.results.push_back(row);
    }
    rep.check_le("max |G(a/q)| <= 1", worst, 1.0, 1e-12);
    return rep;
}

struct IwArgs {
    std::string rho = "1/2";
    std::int64_t l = 2;
    int d = 1;
    std::int64_t cap = nc::kDefaultEnumerationCap;
};

VerificationReport run_iw(IwArgs const& a) {
    VerificationReport rep;
    rep.command = "iw";
    Rational const rho = Rational::parse(a.rho);
    nc::IWParams const params{rho, a.l, a.cap};
    rep.params["rho"] = rho.str();
    rep.params["l"] = a.l;
    rep.params["d"] = a.d;
    rep.params["enumeration_cap"] = a.cap;
    auto const sets = nc::build_p_le(params);
    auto const sigma = nc::build_sigma(sets, a.d);
    json row;
    row["D"] = params.D();
    row["N0"] = params.N0();
    row["q0"] = nc::iw_q0(params).str();
    row["medium_primes"] = sets.medium_primes;
    row["p_le_size"] = sets.p_le.size();
    row["truncated"] = sets.truncated;
    row["sigma_size"] = sigma.size();
    row["log2_lcm"] = nc::log2_big(nc::lcm_of(sets.p_le));
    rep.results.push_back(row);
    std::int64_t expected = 0;
    for (std::int64_t q : sets.p_le) expected += nc::jordan_totient(q, a.d);
    rep.check_near("|Sigma| equals the Jordan totient sum", static_cast<double>(sigma.size()), static_cast<double>(expected), 0.0);
    return rep;
}

struct OscArgs {
    std::string values;
    std::string seq;
    double rho = 2.0;
    int families = 500;
    int max_length = 64;
    std::uint64_t seed = 1;
};

VerificationReport run_osc(OscArgs const& a) {
    if (a.values.empty()) {
        auto rep = nc::verify_oscillation(a.families, a.max_length, a.seed);
        rep.command = "osc";
        return rep;
    }
    VerificationReport rep;
    rep.command = "osc";
    rep.params["values"] = a.values;
    rep.params["seq"] = a.seq;
    rep.params["rho"] = a.rho;
    auto const f = nc::IndexedFamily<1>::from_values(parse_values(a.values));
    nc::IncreasingSequence<1> s;
    for (auto const& v : parse_values(a.seq.empty() ? "0," + std::to_string(f.size() - 1) : a.seq)) s.points.push_back({v.real()});
    double const o = nc::oscillation(f, s);
    double const var = nc::variation(f, a.rho);
    rep.results.push_back({{"oscillation", o}, {"variation", var}});
    if (a.rho <= 2.0) rep.check_le("O <= V^rho", o, var, 1e-12 * std::max(1.0, var));
    return rep;
}

struct AverageArgs {
    std::string poly;
    std::string m1 = "8", m2 = "8";
    std::string f_path;
    std::int64_t delta_at = 0;
    std::int64_t x_lo = -20, x_hi = 20;
    bool truncated = false;
    std::string tau = "2";
};

VerificationReport run_average(AverageArgs const& a) {
    VerificationReport rep;
    rep.command = "average";
    nc::AverageSpec spec{parse_average_poly(a.poly), Rational::parse(a.m1), Rational::parse(a.m2),
                         a.truncated ? nc::RegionKind::Truncated : nc::RegionKind::Full, Rational::parse(a.tau)};
    rep.params["poly"] = a.poly;
    rep.params["M1"] = spec.M1.str();
    rep.params["M2"] = spec.M2.str();
    rep.params["region"] = a.truncated ? "truncated" : "full";
    rep.params["tau"] = spec.tau.str();
    nc::FiniteFunction f;
    if (!a.f_path.empty()) {
        std::ifstream in(a.f_path);
        if (!in) throw UsageError("cannot read " + a.f_path);
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(in);
        } catch (nlohmann::json::parse_error const& e) {
            throw nc::ParseError(std::string("finite function JSON: ") + e.what(), e.byte);
        }
        f = nc::FiniteFunction::from_json(j);
        rep.params["f"] = f.to_json();
    } else {
        f = nc::FiniteFunction::delta(a.delta_at);
        rep.params["f"] = "delta_" + std::to_string(a.delta_at);
    }
    if (a.x_hi < a.x_lo) throw UsageError("--x-hi must be >= --x-lo");
    std::vector<std::int64_t> xs;
    for (std::int64_t x = a.x_lo; x <= a.x_hi; ++x) xs.push_back(x);
    auto const avg = nc::shift_averages(spec, f, xs);
    double l1_in = 0.0, l1_out = 0.0;
    for (auto const& [x, v] : f.support()) l1_in += std::abs(v);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        l1_out += std::abs(avg[i]);
        rep.results.push_back({{"x", xs[i]}, {"value", complex_json(avg[i])}});
    }
    rep.check_le("sum over the window of |A f| <= ||f||_1", l1_out, l1_in, 1e-12 * std::max(1.0, l1_in));
    return rep;
}

struct ArcsArgs {
    std::string poly;
    int j = 1;
    std::vector<std::string> xi;
    double m1 = 64, m2 = 64;
    double beta = 4.0;
    double tau = 2.0;
    double rho = 0.01;
};

VerificationReport run_arcs(ArcsArgs const& a) {
    VerificationReport rep;
    rep.command = "arcs";
    nc::Poly2 const p = parse_average_poly(a.poly);
    auto const d = nc::build_diagram(p);
    rep.params["poly"] = a.poly;
    rep.params["j"] = a.j;
    rep.params["M1"] = a.m1;
    rep.params["M2"] = a.m2;
    rep.params["beta"] = a.beta;
    rep.params["tau"] = a.tau;
    rep.params["rho"] = a.rho;
    rep.params["warnings"] = nc::parameter_warnings(a.beta, a.rho, p.total_degree());
    nc::Exponent const v = d.vertex(a.j);
    double const mv = std::pow(a.m1, v.e1) * std::pow(a.m2, v.e2);
    for (auto const& text : a.xi) {
        nc::Frequency const xi = parse_frequency(text);
        auto const c = nc::arc_classify(d, a.j, xi, a.m1, a.m2, a.beta, a.tau);
        json row;
        row["xi"] = frequency_json(xi);
        row["kind"] = nc::to_string(c.kind);
        row["approximant"] = c.approximant.str();
        row["center"] = c.center ? json(c.center->str()) : json(nullptr);
        row["offset"] = c.offset ? json(*c.offset) : json(nullptr);
        row["log_power"] = c.log_power;
        row["Q"] = c.Q;
        rep.results.push_back(row);
        if (c.kind == nc::ArcKind::Major) {
            rep.check_le("major: q <= (log_tau M*)^beta, xi = " + text, static_cast<double>(c.center->den()), c.log_power);
            rep.check_le("major: |offset| within the window, xi = " + text, std::fabs(*c.offset),
                         c.log_power / (static_cast<double>(c.center->den()) * mv), 1e-12 * c.log_power / mv);
        }
    }
    return rep;
}

struct VerifyArgs {
    std::string suite = "all";
    std::vector<std::string> rho;
    std::int64_t lmax = 3;
    std::uint64_t seed = 1;
    int families = 500;
};

VerificationReport run_verify(VerifyArgs const& a) {
    nc::SuiteOptions opt;
    opt.seed = a.seed;
    opt.lmax = a.lmax;
    opt.families = a.families;
    if (!a.rho.empty()) {
        opt.rhos.clear();
        for (auto const& r : a.rho) opt.rhos.push_back(Rational::parse(r));
    }
    VerificationReport rep;
    rep.command = "verify";
    rep.params["suite"] = a.suite;
    rep.params["seed"] = a.seed;
    if (a.suite == "all") {
        for (auto const& [name, fn] : nc::suites()) {
            auto sub = nc::run_suite(name, opt);
            for (auto& c : sub.checks) c.name = name + ": " + c.name;
            rep.merge(sub);
        }
        return rep;
    }
    bool known = false;
    for (auto const& [name, fn] : nc::suites()) known |= name == a.suite;
    if (!known) throw UsageError("unknown suite '" + a.suite + "'");
    auto sub = nc::run_suite(a.suite, opt);
    rep.params["suite_params"] = sub.params;
    rep.merge(sub);
    return rep;
}

bool write_file(std::string const& path, std::string const& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) return false;
    out << text;
    out.flush();
    return static_cast<bool>(out);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exponential sums, Newton diagrams and circle-method multipliers for two-parameter polynomial averages"};
    app.require_subcommand(1);
    Output out;
    auto add_output = [&](CLI::App* sub) {
        sub->add_option("--json", out.json_path, "write the report as JSON to this path");
        sub->add_option("--csv", out.csv_path, "write the checks as CSV to this path");
        sub->add_flag("--no-timing", out.no_timing, "report runtime_ms = 0 for byte-stable output");
    };

    NewtonArgs newton_args;
    auto* newton = app.add_subcommand("newton", "backwards Newton diagram: vertices, normals, gaps");
    newton->add_option("--poly", newton_args.poly, "polynomial, e.g. \"m1^3*m2 + m1*m2^3\"")->required();
    add_output(newton);

    SectorsArgs sectors_args;
    auto* sectors = app.add_subcommand("sectors", "sector membership and subsector data on [0, max]^2");
    sectors->add_option("--poly", sectors_args.poly)->required();
    sectors->add_option("--max", sectors_args.max, "grid bound")->capture_default_str();
    add_output(sectors);

    ExpsumArgs expsum_args;
    auto* expsum = app.add_subcommand("expsum", "double sum of e(xi P(m1, m2)) over K1 < m1 <= M1, K2 < m2 <= M2");
    expsum->add_option("--poly", expsum_args.poly)->required();
    expsum->add_option("--xi", expsum_args.xi, "p/q or decimal (exact), or a float with exponent")->required();
    expsum->add_option("--k1", expsum_args.k1)->capture_default_str();
    expsum->add_option("--m1", expsum_args.m1)->required();
    expsum->add_option("--k2", expsum_args.k2)->capture_default_str();
    expsum->add_option("--m2", expsum_args.m2)->required();
    add_output(expsum);

    VinogradovArgs vin_args;
    auto* vin = app.add_subcommand("vinogradov", "Vinogradov count J_{s,k}(N; lambda)");
    vin->add_option("--s", vin_args.s)->capture_default_str();
    vin->add_option("--k", vin_args.k)->capture_default_str();
    vin->add_option("--N", vin_args.N)->capture_default_str();
    vin->add_option("--lambda", vin_args.lambda, "k integers, default all zero")->delimiter(',');
    add_output(vin);

    GaussArgs gauss_args;
    auto* gauss = app.add_subcommand("gauss", "complete sums G(a/q): one value, or the sweep q <= qmax");
    gauss->add_option("--poly", gauss_args.poly)->required();
    gauss->add_option("--qmax", gauss_args.qmax)->capture_default_str();
    gauss->add_option("--a-over-q", gauss_args.a_over_q, "single fraction a/q");
    add_output(gauss);

    IwArgs iw_args;
    auto* iw = app.add_subcommand("iw", "Ionescu-Wainger sets P_{<=l} and Sigma_{<=l}^d");
    iw->add_option("--rho", iw_args.rho)->capture_default_str();
    iw->add_option("--l", iw_args.l)->capture_default_str();
    iw->add_option("--d", iw_args.d)->capture_default_str();
    iw->add_option("--cap", iw_args.cap, "enumeration cap")->capture_default_str();
    add_output(iw);

    OscArgs osc_args;
    auto* osc = app.add_subcommand("osc", "oscillation of a sequence, or the random property sweep");
    osc->add_option("--values", osc_args.values, "comma-separated real values a_0, a_1, ...");
    osc->add_option("--seq", osc_args.seq, "comma-separated increasing indices (default: first and last)");
    osc->add_option("--rho", osc_args.rho, "variation exponent")->capture_default_str();
    osc->add_option("--families", osc_args.families)->capture_default_str();
    osc->add_option("--max-length", osc_args.max_length)->capture_default_str();
    osc->add_option("--seed", osc_args.seed)->capture_default_str();
    add_output(osc);

    AverageArgs avg_args;
    auto* avg = app.add_subcommand("average", "shift averages A_M f(x) on Z");
    avg->add_option("--poly", avg_args.poly)->required();
    avg->add_option("--M1", avg_args.m1)->capture_default_str();
    avg->add_option("--M2", avg_args.m2)->capture_default_str();
    avg->add_option("--f", avg_args.f_path, "JSON object {\"x\": [re, im], ...}; default delta at --delta-at");
    avg->add_option("--delta-at", avg_args.delta_at)->capture_default_str();
    avg->add_option("--x-lo", avg_args.x_lo)->capture_default_str();
    avg->add_option("--x-hi", avg_args.x_hi)->capture_default_str();
    avg->add_flag("--truncated", avg_args.truncated, "average over (M1/tau, M1] x (M2/tau, M2]");
    avg->add_option("--tau", avg_args.tau)->capture_default_str();
    add_output(avg);

    ArcsArgs arcs_args;
    auto* arcs = app.add_subcommand("arcs", "major/minor arc classification");
    arcs->add_option("--poly", arcs_args.poly)->required();
    arcs->add_option("--j", arcs_args.j, "sector index")->capture_default_str();
    arcs->add_option("--xi", arcs_args.xi, "frequencies")->required()->delimiter(',');
    arcs->add_option("--M1", arcs_args.m1)->capture_default_str();
    arcs->add_option("--M2", arcs_args.m2)->capture_default_str();
    arcs->add_option("--beta", arcs_args.beta)->capture_default_str();
    arcs->add_option("--tau", arcs_args.tau)->capture_default_str();
    arcs->add_option("--rho", arcs_args.rho, "only used for the parameter warnings")->capture_default_str();
    add_output(arcs);

    VerifyArgs verify_args;
    auto* verify = app.add_subcommand("verify", "run named verification suites");
    std::string suite_help = "all";
    for (auto const& [name, fn] : nc::suites()) suite_help += "|" + name;
    verify->add_option("--suite", verify_args.suite, suite_help)->capture_default_str();
    verify->add_option("--rho", verify_args.rho, "iw suite exponents")->delimiter(',');
    verify->add_option("--lmax", verify_args.lmax)->capture_default_str();
    verify->add_option("--seed", verify_args.seed)->capture_default_str();
    verify->add_option("--families", verify_args.families, "osc suite size")->capture_default_str();
    add_output(verify);

    try {
        app.parse(argc, argv);
    } catch (CLI::ParseError const& e) {
        int const code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    VerificationReport rep;
    auto const t0 = std::chrono::steady_clock::now();
    try {
        nc::worker_count();
        if (*newton) rep = run_newton(newton_args);
        else if (*sectors) rep = run_sectors(sectors_args);
        else if (*expsum) rep = run_expsum(expsum_args);
        else if (*vin) rep = run_vinogradov(vin_args);
        else if (*gauss) rep = run_gauss(gauss_args);
        else if (*iw) rep = run_iw(iw_args);
        else if (*osc) rep = run_osc(osc_args);
        else if (*avg) rep = run_average(avg_args);
        else if (*arcs) rep = run_arcs(arcs_args);
        else rep = run_verify(verify_args);
    } catch (nc::ParseError const& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (UsageError const& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (nc::ConfigurationError const& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return 2;
    } catch (nc::DomainError const& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (nc::ContractError const& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (std::exception const& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    rep.runtime_ms = out.no_timing ? 0
                                   : std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();

    std::string const doc = rep.to_json().dump(2) + "\n";
    if (!out.json_path.empty()) {
        if (!write_file(out.json_path, doc)) {
            std::cerr << "error: cannot write " << out.json_path << '\n';
            return 1;
        }
    }
    if (!out.csv_path.empty()) {
        if (!write_file(out.csv_path, rep.to_csv())) {
            std::cerr << "error: cannot write " << out.csv_path << '\n';
            return 1;
        }
    }
    if (out.json_path.empty() && out.csv_path.empty()) std::cout << doc;
    for (auto const& c : rep.checks)
        if (!c.pass) std::cerr << "FAIL " << c.name << ": lhs=" << c.lhs << " rhs=" << c.rhs << '\n';
    return rep.all_pass() ? 0 : 1;
}
