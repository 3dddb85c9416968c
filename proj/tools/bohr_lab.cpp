// bohr-lab: sharp Bohr-type radii, functional evaluation, inequality
// verification, and sharpness probes for vector-valued holomorphic maps
// from the unit ball of l_t^n into the closed polydisc.
//
// Exit codes: 0 pass, 1 inequality violation, 2 parameter/condition error,
//             3 no root, 4 sharpness probe failure.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "bohr/errors.hpp"
#include "bohr/parallel.hpp"
#include "bohr/report_io.hpp"
#include "bohr/verify.hpp"

namespace {

using namespace bohr;

constexpr int exit_pass = 0;
constexpr int exit_violation = 1;
constexpr int exit_parameter = 2;
constexpr int exit_no_root = 3;
constexpr int exit_probe_failure = 4;

struct CliConfig {
    double tol = 1e-12;
    int S_max = 64;
    int quad_m = 256;
    int directions = 32;
    std::uint64_t seed = 42;
    std::string format = "csv";
    std::string out;
};

void check_config(const CliConfig& cfg) {
    if (!(cfg.tol >= 1e-14 && cfg.tol <= 1e-6))
        throw precondition_error("config: tol must lie in [1e-14, 1e-6]");
    if (cfg.S_max < 8) throw precondition_error("config: smax must be >= 8");
    if (cfg.quad_m < 64) throw precondition_error("config: quad-m must be >= 64");
    if (cfg.directions < 1) throw precondition_error("config: directions must be >= 1");
    if (cfg.format != "csv" && cfg.format != "json")
        throw precondition_error("config: format must be csv or json");
}

// "a:b:step" (inclusive of both endpoints) or "x,y,z".
std::vector<double> parse_grid(const std::string& text) {
    std::vector<double> out;
    if (text.find(':') != std::string::npos) {
        double a = 0, b = 0, step = 0;
        char c1 = 0, c2 = 0;
        std::istringstream is(text);
        if (!(is >> a >> c1 >> b >> c2 >> step) || c1 != ':' || c2 != ':' || step <= 0.0)
            throw precondition_error("grid: expected start:end:step with positive step");
        for (double x = a; x <= b + 1e-12; x += step) out.push_back(std::min(x, b));
        if (out.empty() || out.back() < b - 1e-12) out.push_back(b);
        return out;
    }
    std::istringstream is(text);
    std::string item;
    while (std::getline(is, item, ',')) out.push_back(std::stod(item));
    if (out.empty()) throw precondition_error("grid: empty");
    return out;
}

int parse_m1(const std::string& text, bool& inf_flag) {
    if (text == "inf") {
        inf_flag = true;
        return 1;
    }
    inf_flag = false;
    int v = std::stoi(text);
    return v;
}

double parse_exponent(const std::string& text) {
    if (text == "inf") return t_infinity;
    return std::stod(text);
}

void emit(const CliConfig& cfg, const std::string& text_form, const std::string& csv,
          const std::string& json_payload) {
    std::cout << text_form;
    if (!cfg.out.empty()) write_file_atomic(cfg.out, cfg.format == "json" ? json_payload : csv);
}

// --------------------------------------------------------------------------
// radius
// --------------------------------------------------------------------------

struct RadiusArgs {
    std::string family;
    double p = 1.0, mu = 1.0, nu = 1.0, lambda = 1.0;
    int q = 1, m = 0, m2 = 1, N = 1, k = 1;
    std::string m1 = "1";
};

RadiusQuery build_query(const RadiusArgs& a) {
    bool m1_inf = false;
    int m1 = parse_m1(a.m1, m1_inf);
    if (a.family == "xi") return XiQuery{a.p, a.mu, a.nu, a.q, a.m, m1, m1_inf, a.m2};
    if (a.family == "r2") return R2Query{a.p, m1};
    if (a.family == "r3") return R3Query{a.p};
    if (a.family == "rbr") return RBRQuery{a.p, m1, a.N};
    if (a.family == "rn") return RNQuery{a.N};
    if (a.family == "rnprime") return RNPrimeQuery{a.N};
    if (a.family == "rpkm") return RPkmQuery{a.p, a.k, a.m};
    if (a.family == "psie") return PsiEQuery{a.p, a.q, a.m, a.lambda};
    throw precondition_error("radius: unknown family " + a.family);
}

int run_radius(const CliConfig& cfg, const RadiusArgs& args) {
    RadiusQuery query = build_query(args);
    RootRecord rec = minimal_root(query, cfg.tol);
    emit(cfg, radius_record_text(query, rec), radius_record_csv(query, rec),
         radius_record_json(query, rec));
    return exit_pass;
}

// --------------------------------------------------------------------------
// verify / sharpness
// --------------------------------------------------------------------------

struct TheoremArgs {
    std::string theorem;
    double p = 1.0, mu = 1.0, nu = 1.0;
    int q = 1, m = 0, m2 = 1, N = 1;
    std::string m1 = "1";
    std::string d = "0.8888888888888889"; // weight list for t21
};

PlanKind parse_plan_kind(const std::string& name) {
    if (name == "t41") return PlanKind::T41;
    if (name == "t12") return PlanKind::T12;
    if (name == "t21") return PlanKind::T21;
    if (name == "t14") return PlanKind::T14;
    if (name == "lemma21") return PlanKind::Lemma21;
    if (name == "lemmaa") return PlanKind::LemmaA;
    if (name == "lemmab") return PlanKind::LemmaB;
    if (name == "classical1d") return PlanKind::Classical1D;
    throw precondition_error("unknown theorem " + name);
}

ThmParams build_params(PlanKind kind, const TheoremArgs& a) {
    bool m1_inf = false;
    int m1 = parse_m1(a.m1, m1_inf);
    switch (kind) {
        case PlanKind::T41: return T41Params{a.p, a.mu, a.nu, a.q, a.m, m1, m1_inf, a.m2};
        case PlanKind::T12: return T12Params{a.p, m1};
        case PlanKind::T21: return T21Params{PolynomialWeights{parse_grid(a.d), a.p}};
        case PlanKind::T14: return T14Params{a.p, m1, a.N};
        default: return T12Params{};
    }
}

int run_verify(const CliConfig& cfg, const TheoremArgs& targs, const std::string& b_grid,
               int r_count, double r_fraction, int n, const std::string& t_text, int lemma_N) {
    VerificationPlan plan;
    plan.kind = parse_plan_kind(targs.theorem);
    if (plan.kind == PlanKind::T41 || plan.kind == PlanKind::T12 ||
        plan.kind == PlanKind::T21 || plan.kind == PlanKind::T14)
        plan.params = build_params(plan.kind, targs);
    if (!b_grid.empty()) plan.b_grid = parse_grid(b_grid);
    plan.directions = {n, parse_exponent(t_text), cfg.directions, cfg.seed};
    plan.r_grid = {r_count, r_fraction};
    plan.eval.S_max = cfg.S_max;
    plan.eval.extract.M = std::max(cfg.quad_m, 4 * cfg.S_max);
    plan.lemma_N = lemma_N;

    VerificationOutcome outcome = verify_below_radius(plan);

    std::ostringstream os;
    os << "theorem " << plan_name(outcome.kind) << "\n";
    if (!std::isnan(outcome.radius)) os << "radius " << format12(outcome.radius) << "\n";
    os << "rows " << outcome.rows.size() << "\n"
       << "worst_margin " << format12(outcome.worst_margin) << "\n"
       << "pass " << (outcome.pass ? "yes" : "no") << "\n";
    if (outcome.counterexample) {
        const auto& c = *outcome.counterexample;
        os << "counterexample map=" << c.map_label << " direction=" << c.direction
           << " r=" << format12(c.r) << " lhs=" << format12(c.report.lhs)
           << " margin=" << format12(c.report.margin) << "\n";
    }
    std::cout << os.str();

    if (!cfg.out.empty()) {
        write_file_atomic(cfg.out + ".csv", verification_rows_csv(outcome));
        write_file_atomic(cfg.out + ".json", verification_summary_json(outcome));
    }
    return outcome.pass ? exit_pass : exit_violation;
}

int run_sharpness(const CliConfig& cfg, const TheoremArgs& targs, const std::string& b_grid,
                  double delta) {
    PlanKind kind = parse_plan_kind(targs.theorem);
    ThmParams params = build_params(kind, targs);
    std::vector<double> grid =
        b_grid.empty() ? default_sharpness_b_grid() : parse_grid(b_grid);
    EvalOptions opts;
    opts.S_max = cfg.S_max;
    opts.extract.M = std::max(cfg.quad_m, 4 * cfg.S_max);
    SharpnessWitness w = probe_sharpness(kind, params, delta, grid, {}, opts);
    emit(cfg, witness_text(w), witness_csv(w), witness_json(w));
    return exit_pass;
}

// --------------------------------------------------------------------------
// constants / slice
// --------------------------------------------------------------------------

int run_constants(const CliConfig& cfg, const std::string& cs_range, const std::string& p_list) {
    int lo = 2, hi = 2;
    bool with_cs = !cs_range.empty();
    if (with_cs) {
        auto dots = cs_range.find("..");
        if (dots == std::string::npos) {
            lo = hi = std::stoi(cs_range);
        } else {
            lo = std::stoi(cs_range.substr(0, dots));
            hi = std::stoi(cs_range.substr(dots + 2));
        }
        if (lo < 2 || hi < lo) throw precondition_error("constants: need 2 <= lo <= hi");
    }

    std::ostringstream os;
    nlohmann::json rows = nlohmann::json::array();
    os << csv_banner << "\n";
    os << "name,arg,value,maximizer\n";
    if (with_cs)
        for (int s = lo; s <= hi; ++s) {
            double value = cs_constant(s);
            double tstar = cs_maximizer(s);
            os << "c_s," << s << "," << format12(value) << "," << format12(tstar) << "\n";
            rows.push_back({{"name", "c_s"}, {"arg", s}, {"value", round12(value)},
                            {"maximizer", round12(tstar)}});
        }
    if (!p_list.empty())
        for (double p : parse_grid(p_list)) {
            double value = mp_constant(p);
            os << "M_p," << format12(p) << "," << format12(value) << ",\n";
            rows.push_back({{"name", "M_p"}, {"arg", round12(p)}, {"value", round12(value)}});
        }

    emit(cfg, os.str(), os.str(), rows.dump());
    return exit_pass;
}

int run_slice(const CliConfig& cfg, const std::string& map_text, const std::string& dir_text,
              double rho, int M) {
    std::string text = map_text;
    if (!text.empty() && text[0] == '@') {
        std::ifstream in(text.substr(1));
        if (!in) throw precondition_error("slice: cannot open map file");
        std::stringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    MapDescriptor map = map_from_json(text);

    cvec direction;
    if (!dir_text.empty() && dir_text[0] == 'e') {
        int idx = std::stoi(dir_text.substr(1));
        if (idx < 1 || idx > map.n) throw precondition_error("slice: direction index out of range");
        direction.assign(static_cast<std::size_t>(map.n), complexd{0.0, 0.0});
        direction[static_cast<std::size_t>(idx - 1)] = complexd{1.0, 0.0};
    } else {
        nlohmann::json j = nlohmann::json::parse(dir_text);
        for (const auto& item : j)
            direction.emplace_back(item[0].get<double>(), item[1].get<double>());
    }

    ExtractOptions opts;
    opts.rho = rho;
    opts.M = M > 0 ? M : std::max(cfg.quad_m, 4 * cfg.S_max);
    SliceCoefficients c = extract_slice(map, direction, cfg.S_max, opts);
    emit(cfg, slice_csv(c), slice_csv(c), slice_json(c));
    return exit_pass;
}

// --------------------------------------------------------------------------

void apply_json_config(const std::string& path, CliConfig& cfg) {
    std::ifstream in(path);
    if (!in) throw precondition_error("config: cannot open " + path);
    nlohmann::json j;
    in >> j;
    if (j.contains("tol")) cfg.tol = j["tol"].get<double>();
    if (j.contains("smax")) cfg.S_max = j["smax"].get<int>();
    if (j.contains("quad_m")) cfg.quad_m = j["quad_m"].get<int>();
    if (j.contains("directions")) cfg.directions = j["directions"].get<int>();
    if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("format")) cfg.format = j["format"].get<std::string>();
    if (j.contains("out")) cfg.out = j["out"].get<std::string>();
}

} // namespace

int main(int argc, char** argv) {
    bohr::par::apply_thread_cap();

    CLI::App app{"bohr-lab: sharp Bohr-type radii and inequality verification on l_t^n"};
    app.require_subcommand(1);

    CliConfig cfg;
    std::string config_path;
    app.add_option("--config", config_path, "JSON config file mirroring the global flags");
    app.add_option("--tol", cfg.tol, "root tolerance")->capture_default_str();
    app.add_option("--smax", cfg.S_max, "series truncation order")->capture_default_str();
    app.add_option("--quad-m", cfg.quad_m, "quadrature grid side")->capture_default_str();
    app.add_option("--directions", cfg.directions, "sampled directions")->capture_default_str();
    app.add_option("--seed", cfg.seed, "sampling seed")->capture_default_str();
    app.add_option("--format", cfg.format, "output format: csv or json")->capture_default_str();
    app.add_option("--out", cfg.out, "output path (reports are written atomically)");

    RadiusArgs rargs;
    auto* radius_cmd = app.add_subcommand("radius", "minimal root of a radius equation");
    radius_cmd->fallthrough();
    radius_cmd->add_option("--family", rargs.family,
                           "xi|r2|r3|rbr|rn|rnprime|rpkm|psie")->required();
    radius_cmd->add_option("--p", rargs.p);
    radius_cmd->add_option("--mu", rargs.mu);
    radius_cmd->add_option("--nu", rargs.nu);
    radius_cmd->add_option("--lambda", rargs.lambda);
    radius_cmd->add_option("--q", rargs.q);
    radius_cmd->add_option("--m", rargs.m);
    radius_cmd->add_option("--m1", rargs.m1, "positive integer or inf");
    radius_cmd->add_option("--m2", rargs.m2);
    radius_cmd->add_option("--N", rargs.N);
    radius_cmd->add_option("--k", rargs.k);

    TheoremArgs vargs;
    std::string v_bgrid;
    int v_rcount = 100;
    double v_rfraction = 0.999;
    int v_n = 2;
    std::string v_t = "2";
    int v_lemma_N = 1;
    auto* verify_cmd = app.add_subcommand("verify", "check an inequality below its radius");
    verify_cmd->fallthrough();
    verify_cmd->add_option("--theorem", vargs.theorem,
                           "t41|t12|t21|t14|lemma21|lemmaa|lemmab|classical1d")->required();
    verify_cmd->add_option("--p", vargs.p);
    verify_cmd->add_option("--mu", vargs.mu);
    verify_cmd->add_option("--nu", vargs.nu);
    verify_cmd->add_option("--q", vargs.q);
    verify_cmd->add_option("--m", vargs.m);
    verify_cmd->add_option("--m1", vargs.m1);
    verify_cmd->add_option("--m2", vargs.m2);
    verify_cmd->add_option("--N", vargs.N);
    verify_cmd->add_option("--d", vargs.d, "weight coefficients d_1,...,d_N");
    verify_cmd->add_option("--b-grid", v_bgrid, "start:end:step or comma list");
    verify_cmd->add_option("--r-count", v_rcount);
    verify_cmd->add_option("--r-fraction", v_rfraction);
    verify_cmd->add_option("--n", v_n, "domain dimension");
    verify_cmd->add_option("--t", v_t, "norm exponent, number or inf");
    verify_cmd->add_option("--lemma-N", v_lemma_N, "order for lemma21");

    TheoremArgs sargs;
    std::string s_bgrid;
    double s_delta = 0.01;
    auto* sharp_cmd = app.add_subcommand("sharpness", "extremal-family probe above the radius");
    sharp_cmd->fallthrough();
    sharp_cmd->add_option("--theorem", sargs.theorem, "t41|t12|t21|t14")->required();
    sharp_cmd->add_option("--p", sargs.p);
    sharp_cmd->add_option("--mu", sargs.mu);
    sharp_cmd->add_option("--nu", sargs.nu);
    sharp_cmd->add_option("--q", sargs.q);
    sharp_cmd->add_option("--m", sargs.m);
    sharp_cmd->add_option("--m1", sargs.m1);
    sharp_cmd->add_option("--m2", sargs.m2);
    sharp_cmd->add_option("--N", sargs.N);
    sharp_cmd->add_option("--d", sargs.d);
    sharp_cmd->add_option("--b-grid", s_bgrid);
    sharp_cmd->add_option("--delta", s_delta);

    std::string c_cs, c_p;
    auto* const_cmd = app.add_subcommand("constants", "table of c_s and M_p constants");
    const_cmd->fallthrough();
    const_cmd->add_option("--cs", c_cs, "range lo..hi of s");
    const_cmd->add_option("--p", c_p, "comma list of p values");

    std::string sl_map, sl_dir = "e1";
    double sl_rho = 0.95;
    int sl_M = 0;
    auto* slice_cmd = app.add_subcommand("slice", "directional coefficient dump");
    slice_cmd->fallthrough();
    slice_cmd->add_option("--map", sl_map, "descriptor JSON, or @file")->required();
    slice_cmd->add_option("--direction", sl_dir, "e<k> or JSON array of [re,im]");
    slice_cmd->add_option("--rho", sl_rho);
    slice_cmd->add_option("--M", sl_M);

    try {
        // A config file supplies defaults; explicit flags win.
        for (int i = 1; i + 1 < argc; ++i)
            if (std::string(argv[i]) == "--config") apply_json_config(argv[i + 1], cfg);
        app.parse(argc, argv);
        check_config(cfg);

        if (radius_cmd->parsed()) return run_radius(cfg, rargs);
        if (verify_cmd->parsed())
            return run_verify(cfg, vargs, v_bgrid, v_rcount, v_rfraction, v_n, v_t, v_lemma_N);
        if (sharp_cmd->parsed()) return run_sharpness(cfg, sargs, s_bgrid, s_delta);
        if (const_cmd->parsed()) return run_constants(cfg, c_cs, c_p);
        if (slice_cmd->parsed()) return run_slice(cfg, sl_map, sl_dir, sl_rho, sl_M);
        return exit_parameter;
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? exit_pass : exit_parameter;
    } catch (const bohr::no_root_error& e) {
        std::cerr << "error: " << e.what() << " (residual range [" << e.residual_min << ", "
                  << e.residual_max << "])\n";
        return exit_no_root;
    } catch (const bohr::sharpness_probe_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_probe_failure;
    } catch (const bohr::weight_condition_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_parameter;
    } catch (const bohr::precondition_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_parameter;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_parameter;
    }
}
