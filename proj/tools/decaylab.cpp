// Command-line driver: verification suites with machine-readable JSON
// reports and optional CSV ratio tables.
//
// Exit codes: 0 all asserted checks pass, 1 a verification failed (report
// still written), 2 configuration or precondition error.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "decaylab/catalog.hpp"
#include "decaylab/gm.hpp"
#include "decaylab/majorant.hpp"
#include "decaylab/multipliers.hpp"
#include "decaylab/profile_io.hpp"
#include "decaylab/radial.hpp"
#include "decaylab/report.hpp"
#include "decaylab/smoothness.hpp"

namespace {

using namespace decaylab;

constexpr const char* kVersion = "0.1.0";

struct Ctx {
    std::string out_path;
    std::string csv_path;
    std::string config_path;
    double threshold = defaults::bound_threshold;
    bool unsafe = false;
    json echo;  // resolved configuration, embedded in every report

    void note(const std::string& key, const json& value) { echo[key] = value; }
};

json load_config(int argc, char** argv) {
    for (int i = 1; i + 1 < argc; ++i)
        if (std::string(argv[i]) == "--config") {
            std::ifstream in(argv[i + 1]);
            if (!in) throw CLI::ValidationError("--config", "cannot open config file");
            return json::parse(in);
        }
    return json::object();
}

template <class T>
void cfg_default(const json& cfg, const char* key, T& var) {
    if (cfg.contains(key)) var = cfg.at(key).get<T>();
}

std::pair<std::string, std::map<std::string, double>> parse_spec(
    const std::string& spec, const std::string& positional_key) {
    std::string name = spec;
    std::map<std::string, double> params;
    const auto colon = spec.find(':');
    if (colon != std::string::npos) {
        name = spec.substr(0, colon);
        std::stringstream rest(spec.substr(colon + 1));
        std::string piece;
        while (std::getline(rest, piece, ',')) {
            const auto eq = piece.find('=');
            if (eq == std::string::npos)
                params[positional_key] = std::stod(piece);
            else
                params[piece.substr(0, eq)] = std::stod(piece.substr(eq + 1));
        }
    }
    return {name, params};
}

Eigen::ArrayXd parse_grid(const std::string& s) {
    double lo, hi;
    int ppd;
    char c1, c2;
    std::istringstream ss(s);
    if (!(ss >> lo >> c1 >> hi >> c2 >> ppd) || c1 != ',' || c2 != ',')
        throw CLI::ValidationError("--grid", "expected lo,hi,points_per_decade");
    return logspace(lo, hi, ppd);
}

Majorant majorant_from_spec(const std::string& spec) {
    auto [name, params] = parse_spec(spec, "alpha");
    return make_majorant(name, params);
}

MultiplierFamily family_from_spec(const std::string& spec, int d) {
    auto [name, params] = parse_spec(spec, "r");
    if (name == "spherical_combination" && params.find("d") == params.end())
        params["d"] = d;
    return builtin_family(name, params);
}

RadialPair pair_from_spec(const std::string& spec, int d, bool synthesize_space) {
    if (spec.size() > 4 && spec.substr(spec.size() - 4) == ".csv") {
        RadialPair pair;
        RadialProfile p = read_profile(spec);
        pair.d = p.d;
        pair.provenance = "file";
        if (p.side == Side::fourier) pair.fourier = p;
        else pair.space = p;
        return pair;
    }
    const CatalogEntry& entry = catalog_entry(spec.substr(0, spec.find(':')));
    const std::string pos_key =
        entry.param_names.empty() ? "sigma" : entry.param_names.front();
    auto [name, params] = parse_spec(spec, pos_key);
    return get_pair(name, d, params, synthesize_space);
}

void write_ratio_csv(const std::string& path, const BoundReport& rep) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << "t,lhs,rhs,ratio\n";
    char line[120];
    for (Eigen::Index i = 0; i < rep.grid.size(); ++i) {
        const double ratio = rep.rhs[i] != 0.0 ? rep.lhs[i] / rep.rhs[i]
                                               : std::numeric_limits<double>::quiet_NaN();
        std::snprintf(line, sizeof line, "%.12g,%.12g,%.12g,%.12g\n", rep.grid[i],
                      rep.lhs[i], rep.rhs[i], ratio);
        out << line;
    }
}

int emit(const Ctx& ctx, const std::string& command, json result, bool pass) {
    json report;
    report["artifact"] = json{{"name", "decaylab"}, {"version", kVersion}};
    report["command"] = command;
    report["config"] = ctx.echo;
    report["result"] = std::move(result);
    report["pass"] = pass;
    const std::string text = report.dump(2) + "\n";
    if (ctx.out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(ctx.out_path);
        if (!out) throw std::runtime_error("cannot open " + ctx.out_path);
        out << text;
    }
    return pass ? 0 : 1;
}

// ---------------------------------------------------------------- majorant
int run_majorant_check(Ctx& ctx, const std::string& maj_spec, bool want_m,
                       std::optional<double> omega_beta,
                       const std::string& almost_spec, const std::string& omega_q_spec,
                       bool want_rv, std::optional<double> equiv_beta,
                       const std::string& grid_spec) {
    Majorant m = majorant_from_spec(maj_spec);
    Eigen::ArrayXd grid = grid_spec.empty() ? m.default_check_grid : parse_grid(grid_spec);
    ctx.note("majorant", maj_spec);

    json result;
    bool pass = true;

    if (want_m || (!omega_beta && almost_spec.empty() && omega_q_spec.empty() && !want_rv &&
                   !equiv_beta)) {
        BoundReport rep = check_M(m.func, grid, {}, ctx.threshold);
        result["M"] = rep.to_json();
        if (!ctx.csv_path.empty()) write_ratio_csv(ctx.csv_path, rep);
        pass = pass && rep.pass;
    }
    if (omega_beta) {
        BoundReport rep = check_omega(m.func, *omega_beta, grid, defaults::omega_tmax, {},
                                      ctx.threshold);
        result["omega"] = rep.to_json();
        if (!ctx.csv_path.empty()) write_ratio_csv(ctx.csv_path, rep);
        pass = pass && rep.pass;
    }
    if (!almost_spec.empty()) {
        double beta, eps;
        char c;
        std::istringstream ss(almost_spec);
        if (!(ss >> beta >> c >> eps) || c != ',')
            throw CLI::ValidationError("--almost-decreasing", "expected beta,eps");
        BoundReport rep = check_almost_decreasing(m.func, beta, eps, grid, ctx.threshold);
        result["almost_decreasing"] = rep.to_json();
        pass = pass && rep.pass;
    }
    if (!omega_q_spec.empty()) {
        double beta, q;
        char c;
        std::istringstream ss(omega_q_spec);
        if (!(ss >> beta >> c >> q) || c != ',')
            throw CLI::ValidationError("--omega-q", "expected beta,q");
        BoundReport rep = check_omega_q(m.func, beta, q);
        result["omega_q"] = rep.to_json();
        pass = pass && rep.pass;
    }
    if (want_rv) {
        RvEstimate rv = estimate_rv_index(m.func, {2.0, 4.0, 8.0},
                                          logspace(std::max(1e2, 4.0 * m.func.domain_min()),
                                                   1e6, 4));
        result["rv_index"] = json{{"index", json_number(rv.index)},
                                  {"residual", json_number(rv.residual)}};
    }
    if (equiv_beta) {
        EquivalenceScan scan = omega_equivalence_scan(m.func, *equiv_beta, grid);
        json j;
        j["found"] = scan.found;
        j["eps"] = json_number(scan.eps);
        j["chained_bound"] = json_number(scan.chained_bound);
        if (scan.found) {
            j["almost_decreasing"] = scan.almost_decreasing.to_json();
            j["omega"] = scan.omega.to_json();
            j["chain_respected"] =
                scan.omega.ratio_sup <= 2.0 * scan.chained_bound;
        }
        result["equivalence"] = j;
        pass = pass && scan.found &&
               (!scan.found || scan.omega.ratio_sup <= 2.0 * scan.chained_bound);
    }
    return emit(ctx, "majorant check", result, pass);
}

// ---------------------------------------------------------------- family
int run_family_admit(Ctx& ctx, const std::string& fam_spec, std::optional<double> gamma,
                     int d, const std::string& grid_spec) {
    MultiplierFamily fam = family_from_spec(fam_spec, d);
    if (gamma) fam.gamma = *gamma;
    ctx.note("family", fam_spec);
    ctx.note("gamma", json_number(fam.gamma));
    Eigen::ArrayXd grid =
        grid_spec.empty() ? default_admissibility_grid() : parse_grid(grid_spec);
    AdmissibilityReport rep = check_admissible(fam, grid);
    if (!ctx.csv_path.empty()) write_ratio_csv(ctx.csv_path, rep);
    return emit(ctx, "family admit", json{{"admissibility", rep.to_json()}}, rep.pass);
}

// ---------------------------------------------------------------- titchmarsh
int run_titchmarsh(Ctx& ctx, const std::string& direction, const std::string& fam_spec,
                   const std::string& pair_spec, int d, double p, double q,
                   const std::string& maj_spec) {
    MultiplierFamily fam = family_from_spec(fam_spec, d);
    Majorant m = majorant_from_spec(maj_spec);
    RatePair rate{p, q, d};
    ctx.note("family", fam_spec);
    ctx.note("pair", pair_spec);
    ctx.note("majorant", maj_spec);
    ctx.note("rate", rate.to_json());

    json result;
    bool pass = false;
    if (direction == "forward") {
        RadialPair pair = pair_from_spec(pair_spec, d, p != 2.0);
        ImplicationReport rep = titchmarsh_forward(fam, pair, rate, m.func,
                                                   CheckGrids::defaults(), {}, !ctx.unsafe);
        if (!ctx.csv_path.empty()) write_ratio_csv(ctx.csv_path, rep.conclusion);
        result = rep.to_json();
        pass = rep.pass;
    } else if (direction == "backward") {
        RadialPair pair = pair_from_spec(pair_spec, d, false);
        ImplicationReport rep = titchmarsh_backward(fam, pair.fourier, rate, m.func,
                                                    CheckGrids::defaults(), {}, !ctx.unsafe);
        if (!ctx.csv_path.empty()) write_ratio_csv(ctx.csv_path, rep.conclusion);
        result = rep.to_json();
        pass = rep.pass;
    } else {  // iff, asserted at p = q = 2 only
        if (p != 2.0 || q != 2.0)
            throw precondition_error("titchmarsh iff: asserted only at p = q = 2",
                                     json::array({rate.to_json()}));
        RadialPair pair = pair_from_spec(pair_spec, d, false);
        ImplicationReport fwd = titchmarsh_forward(fam, pair, rate, m.func,
                                                   CheckGrids::defaults(), {}, !ctx.unsafe);
        ImplicationReport bwd = titchmarsh_backward(fam, pair.fourier, rate, m.func,
                                                    CheckGrids::defaults(), {}, !ctx.unsafe);
        TwoSidedReport two = two_sided_estimate(fam, pair, rate, Eigen::ArrayXd(), {},
                                                !ctx.unsafe);
        result["forward"] = fwd.to_json();
        result["backward"] = bwd.to_json();
        result["two_sided"] = two.to_json();
        pass = fwd.pass && bwd.pass;
        if (!ctx.csv_path.empty()) write_ratio_csv(ctx.csv_path, fwd.conclusion);
    }
    return emit(ctx, "titchmarsh " + direction, result, pass);
}

// ---------------------------------------------------------------- besov
int run_besov(Ctx& ctx, const std::string& mode, const std::string& fam_spec,
              const std::string& pair_spec, int d, double p, double q,
              const std::string& maj_spec, const std::string& direction) {
    MultiplierFamily fam = family_from_spec(fam_spec, d);
    Majorant m = majorant_from_spec(maj_spec);
    RatePair rate{p, q, d};
    ctx.note("family", fam_spec);
    ctx.note("pair", pair_spec);
    ctx.note("majorant", maj_spec);
    ctx.note("rate", rate.to_json());

    json result;
    bool pass = false;
    if (mode == "run") {
        RadialPair pair = pair_from_spec(pair_spec, d, p != 2.0);
        BesovValue b = besov_functional(fam, pair, p, q, m.func, {}, !ctx.unsafe);
        result["functional"] = json{{"value", json_number(b.value)},
                                    {"status", to_string(b.status)},
                                    {"detail", b.detail}};
        pass = b.status != TailStatus::divergent;
        if (pass) result["norm"] = json_number(besov_norm(fam, pair, p, q, m.func, {},
                                                          !ctx.unsafe));
        if (!direction.empty()) {
            Direction dir = direction == "forward" ? Direction::forward
                                                   : Direction::backward;
            ImplicationReport rep = theorem_besov(fam, pair, rate, m.func, dir, {},
                                                  !ctx.unsafe);
            result["theorem"] = rep.to_json();
            pass = pass && rep.pass;
        }
    } else {  // spectral
        RadialPair pair = pair_from_spec(pair_spec, d, false);
        BesovValue single = besov_spectral_functional(pair.fourier, rate, m.func,
                                                      SpectralMode::single);
        BesovValue iter = besov_spectral_functional(pair.fourier, rate, m.func,
                                                    SpectralMode::iterated);
        const double fubini = iter.value / single.value;
        result["single"] = json{{"value", json_number(single.value)},
                                {"status", to_string(single.status)}};
        result["iterated"] = json{{"value", json_number(iter.value)},
                                  {"status", to_string(iter.status)}};
        result["fubini_ratio"] = json_number(fubini);
        pass = single.status != TailStatus::divergent &&
               iter.status != TailStatus::divergent && std::abs(fubini - 1.0) <= 0.005;
    }
    return emit(ctx, "besov " + mode, result, pass);
}

// ---------------------------------------------------------------- gm
BVProfile bv_from_spec(const std::string& spec, int d) {
    if (spec.size() > 4 && spec.substr(spec.size() - 4) == ".csv") {
        RadialProfile p = read_profile(spec);
        BVProfile g;
        g.name = spec;
        g.profile = p.profile;
        return g;
    }
    auto [name, params] = parse_spec(spec, "sigma");
    return spectral_bv_profile(name, d, params);
}

int run_gm(Ctx& ctx, const std::string& mode, const std::string& profile_spec, int d,
           double c, double p, const std::string& dump_prefix) {
    BVProfile g = bv_from_spec(profile_spec, d);
    ctx.note("profile", profile_spec);
    ctx.note("d", d);

    json result;
    bool pass = false;
    if (mode == "check") {
        GMReport gm = check_gm(g, c);
        GMdReport gmd = check_gm_d(g, d, {}, false);
        result["gm"] = gm.to_json();
        result["gm_d"] = gmd.to_json();
        pass = gm.pass && gmd.pass;
    } else {  // build
        GMPair gp = build_gm_pair(g, d, p, Eigen::ArrayXd(), {}, !ctx.unsafe);
        result = gp.to_json();
        if (!dump_prefix.empty()) {
            write_profile(gp.pair.space, dump_prefix + "_space.csv");
            write_profile(gp.pair.fourier, dump_prefix + "_fourier.csv");
            result["dumped"] = json::array(
                {dump_prefix + "_space.csv", dump_prefix + "_fourier.csv"});
        }
        pass = gp.membership.pass && gp.in_lp;
    }
    return emit(ctx, "gm " + mode, result, pass);
}

// ---------------------------------------------------------------- rl-bound
int run_rl_bound(Ctx& ctx, const std::string& profile_spec, int d, double p, double q,
                 const std::string& maj_spec, double c) {
    BVProfile g = bv_from_spec(profile_spec, d);
    Majorant m = majorant_from_spec(maj_spec);
    ctx.note("profile", profile_spec);
    ctx.note("majorant", maj_spec);
    GMPair gp = build_gm_pair(g, d, p, Eigen::ArrayXd(), {}, !ctx.unsafe);
    AsymptoticVerdict rep = riemann_lebesgue_bound(gp, q, m.func, Eigen::ArrayXd(), c, {},
                                                   !ctx.unsafe);
    if (!ctx.csv_path.empty()) write_ratio_csv(ctx.csv_path, rep);
    json result;
    result["membership"] = gp.membership.to_json();
    result["bound"] = rep.to_json();
    return emit(ctx, "rl-bound", result, rep.pass);
}

// ---------------------------------------------------------------- counterexample
int run_counterexample(Ctx& ctx, double beta, double p, int d, int decades) {
    Eigen::ArrayXd schedule(decades);
    for (int i = 0; i < decades; ++i) schedule[i] = std::pow(10.0, i + 1);
    ctx.note("beta", json_number(beta));
    ctx.note("p", json_number(p));
    ctx.note("d", d);
    CounterexampleReport rep = counterexample_remark(beta, p, d, schedule);
    if (!ctx.csv_path.empty()) write_ratio_csv(ctx.csv_path, rep.tail_condition);
    // the divergence of condition (ii) is the expected verdict
    return emit(ctx, "counterexample", rep.to_json(), rep.pass);
}

// ---------------------------------------------------------------- catalog
int run_catalog_list(Ctx& ctx) {
    json entries = json::array();
    for (const auto& e : list_catalog()) {
        json schema;
        for (const auto& name : e.param_names)
            schema[name] = json_number(e.param_defaults.at(name));
        entries.push_back(json{{"name", e.name},
                               {"summary", e.summary},
                               {"d_min", e.d_min},
                               {"d_max", e.d_max},
                               {"params", schema},
                               {"space_closed_form", e.space_closed_form}});
    }
    json maj = json::array();
    for (const auto& name : majorant_names()) maj.push_back(name);
    return emit(ctx, "catalog list",
                json{{"pairs", entries}, {"majorants", maj}}, true);
}

int run_catalog_dump(Ctx& ctx, const std::string& pair_spec, int d,
                     const std::string& prefix) {
    RadialPair pair = pair_from_spec(pair_spec, d, true);
    json files = json::array();
    if (pair.space.profile.valid()) {
        write_profile(pair.space, prefix + "_space.csv");
        files.push_back(prefix + "_space.csv");
    }
    write_profile(pair.fourier, prefix + "_fourier.csv");
    files.push_back(prefix + "_fourier.csv");
    ctx.note("pair", pair_spec);
    return emit(ctx, "catalog dump", json{{"files", files}}, true);
}

}  // namespace

int main(int argc, char** argv) {
    Ctx ctx;
    json cfg;
    try {
        cfg = load_config(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }

    CLI::App app{"numerical laboratory for smoothness vs Fourier-decay verification"};
    app.fallthrough();
    app.add_option("--out", ctx.out_path, "write the JSON report here (default stdout)");
    app.add_option("--csv", ctx.csv_path, "write a (t,lhs,rhs,ratio) CSV table");
    app.add_option("--config", ctx.config_path, "JSON config mirroring the flags");
    app.add_option("--threshold", ctx.threshold, "ratio threshold for bounded verdicts");
    app.add_flag("--unsafe", ctx.unsafe, "compute even when stated hypotheses fail");

    // shared knobs, defaulted from the config file, overridden by flags
    std::string maj_spec, fam_spec, pair_spec, profile_spec, grid_spec, dump_prefix;
    std::string almost_spec, omega_q_spec, direction;
    int d = 1, decades = 4;
    double p = 2.0, q = 2.0, c = 2.0, beta = 0.5;
    bool want_m = false, want_rv = false;
    std::optional<double> omega_beta, gamma_override, equiv_beta;
    cfg_default(cfg, "majorant", maj_spec);
    cfg_default(cfg, "family", fam_spec);
    cfg_default(cfg, "pair", pair_spec);
    cfg_default(cfg, "profile", profile_spec);
    cfg_default(cfg, "d", d);
    cfg_default(cfg, "p", p);
    cfg_default(cfg, "q", q);
    cfg_default(cfg, "c", c);
    cfg_default(cfg, "beta", beta);
    cfg_default(cfg, "threshold", ctx.threshold);
    if (cfg.contains("omega")) omega_beta = cfg.at("omega").get<double>();

    auto* majorant_cmd = app.add_subcommand("majorant", "majorant class membership");
    auto* maj_check = majorant_cmd->add_subcommand("check", "run membership checks");
    maj_check->add_option("--majorant", maj_spec, "name:alpha, e.g. power:0.5")
        ->required(!cfg.contains("majorant"));
    maj_check->add_flag("--m", want_m, "check the base majorant condition");
    auto* omega_opt = maj_check->add_option("--omega")
                          ->description("check Omega_beta at this beta");
    maj_check->add_option("--almost-decreasing", almost_spec, "beta,eps");
    maj_check->add_option("--omega-q", omega_q_spec, "beta,q");
    maj_check->add_flag("--rv", want_rv, "estimate the regular-variation index");
    auto* equiv_opt = maj_check->add_option("--equivalence")
                          ->description("eps-scan equivalence at this beta");
    maj_check->add_option("--grid", grid_spec, "lo,hi,points_per_decade");

    auto* family_cmd = app.add_subcommand("family", "multiplier families");
    auto* fam_admit = family_cmd->add_subcommand("admit", "admissibility check");
    fam_admit->add_option("--family", fam_spec, "gauss | poisson | spherical_combination:r=..,d=..")
        ->required(!cfg.contains("family"));
    auto* gamma_opt =
        fam_admit->add_option("--gamma")->description("override the claimed order");
    fam_admit->add_option("--d", d, "dimension");
    fam_admit->add_option("--grid", grid_spec, "lo,hi,points_per_decade");

    auto* titch = app.add_subcommand("titchmarsh", "decay theorems");
    std::string titch_dir;
    for (const char* dir : {"forward", "backward", "iff"}) {
        auto* sub = titch->add_subcommand(dir);
        sub->add_option("--family", fam_spec)->required(!cfg.contains("family"));
        sub->add_option("--pair", pair_spec)->required(!cfg.contains("pair"));
        sub->add_option("--d", d);
        sub->add_option("--p", p);
        sub->add_option("--q", q);
        sub->add_option("--majorant", maj_spec)->required(!cfg.contains("majorant"));
        sub->parse_complete_callback([&titch_dir, dir] { titch_dir = dir; });
    }

    auto* besov_cmd = app.add_subcommand("besov", "generalized Besov functionals");
    std::string besov_mode;
    for (const char* mode : {"run", "spectral"}) {
        auto* sub = besov_cmd->add_subcommand(mode);
        sub->add_option("--family", fam_spec)->required(!cfg.contains("family"));
        sub->add_option("--pair", pair_spec)->required(!cfg.contains("pair"));
        sub->add_option("--d", d);
        sub->add_option("--p", p);
        sub->add_option("--q", q);
        sub->add_option("--majorant", maj_spec)->required(!cfg.contains("majorant"));
        sub->add_option("--direction", direction, "forward | backward");
        sub->parse_complete_callback([&besov_mode, mode] { besov_mode = mode; });
    }

    auto* gm_cmd = app.add_subcommand("gm", "general monotone classes");
    std::string gm_mode;
    for (const char* mode : {"check", "build"}) {
        auto* sub = gm_cmd->add_subcommand(mode);
        sub->add_option("--profile", profile_spec, "catalog name or CSV path")
            ->required(!cfg.contains("profile"));
        sub->add_option("--d", d);
        sub->add_option("--c", c);
        sub->add_option("--p", p);
        sub->add_option("--dump", dump_prefix, "write the pair profiles with this prefix");
        sub->parse_complete_callback([&gm_mode, mode] { gm_mode = mode; });
    }

    auto* rl = app.add_subcommand("rl-bound", "pointwise Riemann-Lebesgue type bound");
    rl->add_option("--profile", profile_spec)->required(!cfg.contains("profile"));
    rl->add_option("--d", d);
    rl->add_option("--p", p);
    rl->add_option("--q", q);
    rl->add_option("--majorant", maj_spec)->required(!cfg.contains("majorant"));
    rl->add_option("--c", c);

    auto* ce = app.add_subcommand("counterexample", "necessity of the Omega hypothesis");
    ce->add_option("--beta", beta);
    ce->add_option("--p", p);
    ce->add_option("--d", d);
    ce->add_option("--decades", decades);

    auto* cat = app.add_subcommand("catalog", "fixture catalog");
    auto* cat_list = cat->add_subcommand("list");
    auto* cat_dump = cat->add_subcommand("dump");
    cat_dump->add_option("--pair", pair_spec)->required(!cfg.contains("pair"));
    cat_dump->add_option("--d", d);
    cat_dump->add_option("--prefix", dump_prefix)->required();

    app.require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_name() == "CallForHelp" ? 0 : 2;
    }

    if (omega_opt->count()) omega_beta = omega_opt->as<double>();
    if (gamma_opt->count()) gamma_override = gamma_opt->as<double>();
    if (equiv_opt->count()) equiv_beta = equiv_opt->as<double>();

    ctx.note("threshold", json_number(ctx.threshold));
    if (ctx.unsafe) ctx.note("unsafe", true);

    try {
        if (maj_check->parsed()) {
            if (omega_beta) ctx.note("omega", json_number(*omega_beta));
            return run_majorant_check(ctx, maj_spec, want_m, omega_beta, almost_spec,
                                      omega_q_spec, want_rv, equiv_beta, grid_spec);
        }
        if (fam_admit->parsed())
            return run_family_admit(ctx, fam_spec, gamma_override, d, grid_spec);
        if (titch->parsed())
            return run_titchmarsh(ctx, titch_dir, fam_spec, pair_spec, d, p, q, maj_spec);
        if (besov_cmd->parsed())
            return run_besov(ctx, besov_mode, fam_spec, pair_spec, d, p, q, maj_spec,
                             direction);
        if (gm_cmd->parsed())
            return run_gm(ctx, gm_mode, profile_spec, d, c, p, dump_prefix);
        if (rl->parsed())
            return run_rl_bound(ctx, profile_spec, d, p, q, maj_spec, c);
        if (ce->parsed()) return run_counterexample(ctx, beta, p, d, decades);
        if (cat_list->parsed()) return run_catalog_list(ctx);
        if (cat_dump->parsed()) return run_catalog_dump(ctx, pair_spec, d, dump_prefix);
        std::cerr << "no subcommand selected\n";
        return 2;
    } catch (const precondition_error& e) {
        json err;
        err["error"] = e.what();
        err["detail"] = e.detail;
        emit(ctx, "error", err, false);
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const quadrature_error& e) {
        json err;
        err["error"] = e.what();
        emit(ctx, "numeric-failure", err, false);
        return 1;
    } catch (const std::exception& e) {
        json err;
        err["error"] = e.what();
        emit(ctx, "failure", err, false);
        return 1;
    }
}
