// Command-line surface for the oscillation library: space norms, Campanato
// oscillations, decay curves, V/X/C classification, commutator probes and
// the verify suites. Exit codes: 0 success, 1 computation error, 2 usage or
// configuration error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "campanato/catalog.hpp"
#include "campanato/commutator.hpp"
#include "campanato/curve_io.hpp"
#include "campanato/oscillation.hpp"
#include "campanato/scenario.hpp"
#include "campanato/spaces.hpp"
#include "campanato/vanishing.hpp"
#include "campanato/verify.hpp"

namespace {

using namespace campanato;

std::vector<double> parse_numbers(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        try {
            out.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw ScenarioError("bad number '" + item + "'");
        }
    }
    return out;
}

Cube parse_cube(const std::string& s, int dim) {
    std::vector<double> v = parse_numbers(s);
    if (dim == 1) {
        if (v.size() != 2) throw ScenarioError("cube spec needs lo,hi");
        if (!(v[1] > v[0])) throw ScenarioError("cube spec needs lo < hi");
        return Cube{{0.5 * (v[0] + v[1]), 0.0}, v[1] - v[0], 1};
    }
    if (v.size() != 4) throw ScenarioError("2-D cube spec needs lox,hix,loy,hiy");
    if (!(v[1] > v[0]) || !(v[3] > v[2]) ||
        std::abs((v[1] - v[0]) - (v[3] - v[2])) > 1e-12 * (v[1] - v[0]))
        throw ScenarioError("2-D cube spec must be a cube (equal extents)");
    return Cube{{0.5 * (v[0] + v[1]), 0.5 * (v[2] + v[3])}, v[1] - v[0], 2};
}

struct FnSpec {
    std::string name;
    std::vector<double> params;
};

FnSpec parse_fn(const std::string& s) {
    FnSpec fs;
    std::stringstream ss(s);
    std::string item;
    bool first = true;
    while (std::getline(ss, item, ':')) {
        if (first) {
            fs.name = item;
            first = false;
        } else {
            try {
                fs.params.push_back(std::stod(item));
            } catch (const std::exception&) {
                throw ScenarioError("bad parameter '" + item + "' in function spec");
            }
        }
    }
    if (fs.name.empty()) throw ScenarioError("empty function spec");
    return fs;
}

struct CommonOpts {
    std::string fn = "loglog";
    std::string box = "-2,2";
    int resolution = 4096;
    int dim = 1;
    std::uint64_t seed = 0;

    Cube make_box() const { return parse_cube(box, dim); }
    std::array<int, 2> res() const { return {resolution, dim == 2 ? resolution : 1}; }
    GridFunction make_function() const {
        FnSpec fs = parse_fn(fn);
        return catalog(fs.name, fs.params, make_box(), res());
    }
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--fn", o.fn, "catalog function, e.g. loglog or bump:0.5");
    cmd->add_option("--box", o.box, "bounding box lo,hi (or lox,hix,loy,hiy)");
    cmd->add_option("--resolution", o.resolution, "samples per axis");
    cmd->add_option("--dim", o.dim, "dimension (1 or 2)")->check(CLI::Range(1, 2));
    cmd->add_option("--seed", o.seed, "seed for randomized suites");
}

void emit_curve(const DecayCurve& curve, const std::string& out, const std::string& format) {
    if (out.empty()) {
        std::cout << curve_csv(curve);
        return;
    }
    CurveFormat fmt = format == "svg" ? CurveFormat::svg : CurveFormat::csv;
    write_curve(curve, out, fmt);
}

std::string report_header(const CommonOpts& o, const std::string& family) {
    std::ostringstream os;
    Cube b = o.make_box();
    os << "# function: " << o.fn << "\n# box: " << b.describe() << " (truncation radius "
       << 0.5 * b.edge << ", zero outside)\n# resolution: " << o.resolution
       << (o.dim == 2 ? "^2" : "") << "\n# family: " << family
       << "\n# mollifier: normalized quartic bump (1-|x|^2)^4\n# seed: " << o.seed << "\n";
    return os.str();
}

int run_cli(int argc, char** argv) {
    CLI::App app{"Campanato/BMO oscillation functionals over ball Banach function spaces"};
    app.require_subcommand(1);

    // --- norm ---------------------------------------------------------------
    CommonOpts n_o;
    std::string n_space = "l1", n_cube = "-1,1";
    auto* norm_cmd = app.add_subcommand("norm", "space norm of f restricted to a cube");
    add_common(norm_cmd, n_o);
    norm_cmd->add_option("--space", n_space, "space spec, e.g. lp:2, wlp:2:0.5, morrey:3:2");
    norm_cmd->add_option("--cube", n_cube, "support cube lo,hi");

    // --- osc ----------------------------------------------------------------
    CommonOpts o_o;
    std::string o_space = "l1", o_cube = "-1,1";
    double o_alpha = 0.0;
    bool o_tilde = false;
    auto* osc_cmd = app.add_subcommand("osc", "Campanato oscillation on one cube");
    add_common(osc_cmd, o_o);
    osc_cmd->add_option("--space", o_space, "space spec");
    osc_cmd->add_option("--cube", o_cube, "cube lo,hi");
    osc_cmd->add_option("--alpha", o_alpha, "order in [0,1]");
    osc_cmd->add_flag("--tilde", o_tilde, "use the mean-based alpha=1 oscillation");

    // --- decay --------------------------------------------------------------
    CommonOpts d_o;
    std::string d_space = "l1", d_mode = "small", d_out, d_format = "csv";
    std::string d_scales, d_shifts, d_cube = "-0.125,0.125", d_domain, d_config;
    double d_alpha = 0.0;
    auto* decay_cmd = app.add_subcommand("decay", "decay curve over a cube family");
    add_common(decay_cmd, d_o);
    decay_cmd->add_option("--space", d_space, "space spec");
    decay_cmd->add_option("--alpha", d_alpha, "order in [0,1]");
    decay_cmd->add_option("--mode", d_mode, "small | far | large")
        ->check(CLI::IsMember({"small", "far", "large"}));
    decay_cmd->add_option("--scales", d_scales, "comma list of scales");
    decay_cmd->add_option("--shifts", d_shifts, "comma list of shift distances (far mode)");
    decay_cmd->add_option("--cube", d_cube, "base cube for far mode");
    decay_cmd->add_option("--domain", d_domain, "curve domain lo,hi (defaults to the box)");
    decay_cmd->add_option("--out", d_out, "output path");
    decay_cmd->add_option("--format", d_format, "csv | svg")
        ->check(CLI::IsMember({"csv", "svg"}));
    decay_cmd->add_option("--config", d_config, "scenario file (overrides other inputs)");

    // --- classify -----------------------------------------------------------
    CommonOpts c_o;
    std::string c_spaces = "l1", c_out, c_config;
    double c_alpha = 0.0, c_theta = 0.2, c_floor = 0.02;
    auto* cls_cmd = app.add_subcommand("classify", "V/X/C vanishing report");
    add_common(cls_cmd, c_o);
    cls_cmd->add_option("--spaces", c_spaces, "comma list of space specs");
    cls_cmd->add_option("--alpha", c_alpha, "order in [0,1]");
    cls_cmd->add_option("--theta", c_theta, "relative vanishing threshold");
    cls_cmd->add_option("--floor", c_floor, "absolute floor fraction of the global sup");
    cls_cmd->add_option("--out", c_out, "CSV path prefix (writes <out>.small/far/large.csv)");
    cls_cmd->add_option("--config", c_config, "scenario file (overrides other inputs)");

    // --- commutator ---------------------------------------------------------
    CommonOpts k_o;
    std::string k_b = "bump:0.5", k_probe = "value", k_out, k_format = "csv";
    std::string k_radii = "4,8,16,32", k_scales, k_target = "bmo", k_domain;
    double k_alpha_frac = 0.5, k_at = 0.0, k_beta = 0.25, k_p = 2.0, k_q = 1.5;
    double k_alpha = 0.0;
    auto* com_cmd = app.add_subcommand("commutator", "fractional integral commutator probes");
    add_common(com_cmd, k_o);
    com_cmd->add_option("--b", k_b, "symbol function spec");
    com_cmd->add_option("--alpha-frac", k_alpha_frac, "kernel order in (0,n)");
    com_cmd->add_option("--probe", k_probe, "value | tail | bound | range")
        ->check(CLI::IsMember({"value", "tail", "bound", "range"}));
    com_cmd->add_option("--at", k_at, "query point (value probe)");
    com_cmd->add_option("--radii", k_radii, "radii for the tail probe");
    com_cmd->add_option("--p", k_p, "Morrey p");
    com_cmd->add_option("--q", k_q, "Morrey q");
    com_cmd->add_option("--beta", k_beta, "Lipschitz order of the symbol");
    com_cmd->add_option("--target", k_target, "bound probe target: bmo | lip | morrey")
        ->check(CLI::IsMember({"bmo", "lip", "morrey"}));
    com_cmd->add_option("--alpha", k_alpha, "oscillation order (range probe)");
    com_cmd->add_option("--scales", k_scales, "scales for the range probe");
    com_cmd->add_option("--domain", k_domain, "curve domain lo,hi (range probe)");
    com_cmd->add_option("--out", k_out, "output path for curves");
    com_cmd->add_option("--format", k_format, "csv | svg")
        ->check(CLI::IsMember({"csv", "svg"}));

    // --- verify ---------------------------------------------------------------
    std::string v_suite = "all", v_out;
    std::uint64_t v_seed = 0;
    auto* ver_cmd = app.add_subcommand("verify", "run acceptance suites");
    ver_cmd->add_option("--suite", v_suite, "suite name or 'all'");
    ver_cmd->add_option("--seed", v_seed, "seed for randomized suites");
    ver_cmd->add_option("--out", v_out, "write the suites' CSV evidence to this path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    if (norm_cmd->parsed()) {
        GridFunction f = n_o.make_function();
        SpaceSpec X = parse_space_string(n_space, n_o.make_box(), n_o.res());
        std::cout << format17(norm(X, f, parse_cube(n_cube, n_o.dim))) << "\n";
        return 0;
    }

    if (osc_cmd->parsed()) {
        GridFunction f = o_o.make_function();
        SpaceSpec X = parse_space_string(o_space, o_o.make_box(), o_o.res());
        Cube q = parse_cube(o_cube, o_o.dim);
        double v = o_tilde ? osc_tilde1(f, q, X) : osc_x(f, q, o_alpha, X);
        std::cout << format17(v) << "\n";
        return 0;
    }

    if (decay_cmd->parsed()) {
        DecayCurve curve;
        if (!d_config.empty()) {
            Scenario sc = load_scenario(d_config);
            GridFunction f = sc.make_function();
            std::cout << sc.header();
            curve = small_cube_curve(f, sc.alpha, sc.spaces.front(), sc.curves.small_scales,
                                     sc.curves.domain);
        } else {
            GridFunction f = d_o.make_function();
            SpaceSpec X = parse_space_string(d_space, d_o.make_box(), d_o.res());
            Cube domain = d_domain.empty() ? d_o.make_box() : parse_cube(d_domain, d_o.dim);
            if (d_mode == "far") {
                std::vector<double> shifts =
                    d_shifts.empty() ? std::vector<double>{0.5, 1.0, 1.5}
                                     : parse_numbers(d_shifts);
                curve = far_cube_curve(f, d_alpha, X, parse_cube(d_cube, d_o.dim), shifts);
            } else {
                std::vector<double> scales;
                if (!d_scales.empty()) {
                    scales = parse_numbers(d_scales);
                } else {
                    double h = domain.edge / d_o.resolution;
                    for (double a = domain.edge / 2.0; a >= 8.0 * h; a *= 0.5)
                        scales.push_back(a);
                    if (d_mode == "large") std::reverse(scales.begin(), scales.end());
                }
                curve = d_mode == "small"
                            ? small_cube_curve(f, d_alpha, X, scales, domain)
                            : large_cube_curve(f, d_alpha, X, scales, domain);
            }
            std::cout << report_header(d_o, curve.family);
        }
        emit_curve(curve, d_out, d_format);
        return 0;
    }

    if (cls_cmd->parsed()) {
        std::vector<SpaceSpec> spaces;
        CurveConfig cfg;
        Thresholds thr{c_theta, c_floor};
        double alpha = c_alpha;
        std::optional<GridFunction> fn;
        if (!c_config.empty()) {
            Scenario sc = load_scenario(c_config);
            std::cout << sc.header();
            fn = sc.make_function();
            spaces = sc.spaces;
            cfg = sc.curves;
            thr = sc.thresholds;
            alpha = sc.alpha;
        } else {
            fn = c_o.make_function();
            std::stringstream ss(c_spaces);
            std::string item;
            while (std::getline(ss, item, ','))
                spaces.push_back(parse_space_string(item, c_o.make_box(), c_o.res()));
            cfg = detail::default_curve_config(c_o.make_box(), c_o.res());
            std::cout << report_header(c_o, "default dyadic families");
            std::cout << "# thresholds: theta=" << thr.theta
                      << " floor_frac=" << thr.floor_frac << "\n";
        }
        const GridFunction& f = *fn;
        for (const auto& X : spaces) {
            VanishingReport rep = classify(f, alpha, X, cfg, thr);
            std::cout << rep.summary() << "\n";
            std::cout << "  nesting_consistent: " << rep.nesting_consistent
                      << "  small family: " << rep.small.family << "\n";
            if (!c_out.empty()) {
                write_curve(rep.small, c_out + "." + space_name(X) + ".small.csv",
                            CurveFormat::csv);
                write_curve(rep.far, c_out + "." + space_name(X) + ".far.csv",
                            CurveFormat::csv);
                write_curve(rep.large, c_out + "." + space_name(X) + ".large.csv",
                            CurveFormat::csv);
            }
        }
        return 0;
    }

    if (com_cmd->parsed()) {
        GridFunction f = k_o.make_function();
        FnSpec bs = parse_fn(k_b);
        GridFunction b = catalog(bs.name, bs.params, k_o.make_box(), k_o.res());
        KernelConfig cfg{k_alpha_frac, KernelConfig::DiagonalRule::omit_cell,
                         std::numeric_limits<double>::infinity()};
        if (k_probe == "value") {
            std::array<double, 2> at{k_at, 0.0};
            std::cout << "I_alpha f(x):    " << format17(frac_integral_at(f, cfg, at)) << "\n";
            std::cout << "[b, I_alpha]f(x): "
                      << format17(commutator_apply_at(b, f, cfg, at)) << "\n";
            std::cout << "omitted-cell bound: " << format17(omitted_cell_mass_bound(f, cfg))
                      << "\n";
        } else if (k_probe == "tail") {
            auto rep = tail_decay_probe(b, f, k_alpha_frac, k_p, parse_numbers(k_radii));
            std::cout << report_header(k_o, rep.curve.family);
            std::cout << "# fitted_slope: "
                      << (rep.fitted_slope ? format17(*rep.fitted_slope) : std::string("n/a"))
                      << "  reference: " << format17(rep.reference_slope) << "\n";
            emit_curve(rep.curve, k_out, k_format);
        } else if (k_probe == "bound") {
            BoundTarget tgt = k_target == "bmo"
                                  ? BoundTarget::bmo
                                  : (k_target == "lip" ? BoundTarget::lip
                                                       : BoundTarget::morrey);
            auto rep = bound_probe(b, {f}, k_alpha_frac, k_beta, k_p, k_q, tgt);
            std::cout << report_header(k_o, rep.family);
            std::cout << "max_ratio: " << format17(rep.max_ratio)
                      << "  b_seminorm: " << format17(rep.b_seminorm) << "\n";
        } else {  // range
            std::vector<double> scales = k_scales.empty()
                                             ? std::vector<double>{1.0, 0.5, 0.25, 0.125}
                                             : parse_numbers(k_scales);
            Cube domain =
                k_domain.empty() ? k_o.make_box() : parse_cube(k_domain, k_o.dim);
            auto rep = convolution_range_probe(b, f, k_alpha, scales, domain);
            std::cout << report_header(k_o, rep.curve.family);
            std::cout << "# sup osc conv: " << format17(rep.sup_osc_conv)
                      << "  sup osc f: " << format17(rep.sup_osc_f)
                      << "  phi_l1: " << format17(rep.phi_l1)
                      << "  bound_holds: " << rep.bound_holds << "\n";
            emit_curve(rep.curve, k_out, k_format);
        }
        return 0;
    }

    if (ver_cmd->parsed()) {
        std::vector<SuiteResult> results;
        if (v_suite == "all") {
            for (const auto& [name, fn] : verify_suites()) results.push_back(fn(v_seed));
        } else {
            results.push_back(run_suite(v_suite, v_seed));
        }
        bool all_pass = true;
        std::string evidence;
        for (const auto& sr : results) {
            for (const auto& c : sr.checks) {
                std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << sr.suite << ": " << c.name;
                if (!c.pass && !c.detail.empty()) std::cout << " — " << c.detail;
                std::cout << "\n";
                all_pass = all_pass && c.pass;
            }
            evidence += sr.csv;
        }
        if (!v_out.empty()) {
            std::ofstream out(v_out, std::ios::binary);
            if (!out) throw std::runtime_error("cannot open '" + v_out + "'");
            out << evidence;
        }
        return all_pass ? 0 : 1;
    }

    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run_cli(argc, argv);
    } catch (const campanato::ScenarioError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
