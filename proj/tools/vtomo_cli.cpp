// Command-line driver: phantoms, transforms, inversions, decompositions,
// experiment verification, rendering, file inspection.

#include "vtomo/calculus.hpp"
#include "vtomo/decomposition.hpp"
#include "vtomo/experiments.hpp"
#include "vtomo/io.hpp"
#include "vtomo/normal.hpp"
#include "vtomo/phantoms.hpp"
#include "vtomo/projector.hpp"
#include "vtomo/render.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

using namespace vtomo;
using nlohmann::json;

namespace {

struct RunConfig {
    int grid_n = 128;
    Scalar lo = -1.0, hi = 1.0;
    int n_angles = 360;
    int n_offsets = 256;
    Scalar s_max = std::numbers::sqrt2;
    int pad = 4;
    unsigned seed = 0;
    std::string constant = "derived";  // inversion constant choice

    // phantom parameters (first and second bump)
    std::string kind = "gaussian_scalar";
    std::vector<Scalar> center{0.1, -0.05};
    Scalar sigma = 0.30, amplitude = 1.0, support = 0.85;
    std::vector<Scalar> center2{-0.1, 0.1};
    Scalar sigma2 = 0.30, amplitude2 = 1.0, support2 = 0.85;
    Scalar disk_radius = 0.5;

    // region (open set V or convex set C)
    std::string region_kind = "disk";
    std::vector<Scalar> region_center{0.0, 0.0};
    Scalar region_radius = 0.2;
    std::vector<Scalar> region_lo{-0.3, -0.3};
    std::vector<Scalar> region_hi{0.3, 0.3};

    json tolerances;  // per-experiment overrides

    Grid grid() const { return Grid(grid_n, lo, hi); }
    LineGrid lines() const { return LineGrid(n_angles, n_offsets, s_max); }
    InversionConstants constants() const {
        InversionConstants k;
        if (constant == "paper")
            k.use_paper_c1 = true;
        else if (constant != "derived")
            throw config_error("constant must be 'paper' or 'derived'");
        return k;
    }
    Region region() const {
        if (region_kind == "disk")
            return Region::disk({region_center.at(0), region_center.at(1)}, region_radius);
        if (region_kind == "rect")
            return Region::rect({region_lo.at(0), region_lo.at(1)},
                                {region_hi.at(0), region_hi.at(1)});
        throw config_error("region kind must be 'disk' or 'rect'");
    }
    Scalar tol(const std::string& name, Scalar fallback) const {
        if (tolerances.contains(name)) {
            const Scalar t = tolerances.at(name).get<Scalar>();
            if (!(t > 0)) throw config_error("tolerance " + name + " must be positive");
            return t;
        }
        return fallback;
    }

    PhantomSpec phantom_spec() const {
        PhantomSpec spec;
        if (kind == "gaussian_scalar") spec.kind = PhantomKind::gaussian_scalar;
        else if (kind == "gradient") spec.kind = PhantomKind::gradient;
        else if (kind == "curl") spec.kind = PhantomKind::curl;
        else if (kind == "mixed") spec.kind = PhantomKind::mixed;
        else if (kind == "disk_indicator") spec.kind = PhantomKind::disk_indicator;
        else if (kind == "closed_in_region") spec.kind = PhantomKind::closed_in_region;
        else if (kind == "sphere_bundle_pair") spec.kind = PhantomKind::sphere_bundle_pair;
        else throw config_error("unknown phantom kind: " + kind);
        spec.bump = RadialBump::make({center.at(0), center.at(1)}, sigma, amplitude, support);
        spec.bump2 =
            RadialBump::make({center2.at(0), center2.at(1)}, sigma2, amplitude2, support2);
        spec.disk_radius = disk_radius;
        spec.seed = seed;
        return spec;
    }
};

void load_config_file(const std::string& path, RunConfig& c) {
    std::ifstream in(path);
    if (!in) throw io_error_kind("open", "cannot open config: " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw config_error(std::string("config parse error: ") + e.what());
    }
    auto get = [&](const json& o, const char* key, auto& dst) {
        if (o.contains(key)) dst = o.at(key).get<std::decay_t<decltype(dst)>>();
    };
    if (j.contains("grid")) {
        get(j["grid"], "n", c.grid_n);
        get(j["grid"], "lo", c.lo);
        get(j["grid"], "hi", c.hi);
    }
    if (j.contains("lines")) {
        get(j["lines"], "n_angles", c.n_angles);
        get(j["lines"], "n_offsets", c.n_offsets);
        get(j["lines"], "s_max", c.s_max);
    }
    get(j, "pad", c.pad);
    get(j, "seed", c.seed);
    get(j, "constant", c.constant);
    if (j.contains("phantom")) {
        const json& p = j["phantom"];
        get(p, "kind", c.kind);
        get(p, "center", c.center);
        get(p, "sigma", c.sigma);
        get(p, "amplitude", c.amplitude);
        get(p, "support", c.support);
        get(p, "center2", c.center2);
        get(p, "sigma2", c.sigma2);
        get(p, "amplitude2", c.amplitude2);
        get(p, "support2", c.support2);
        get(p, "disk_radius", c.disk_radius);
    }
    if (j.contains("region")) {
        const json& r = j["region"];
        get(r, "kind", c.region_kind);
        get(r, "center", c.region_center);
        get(r, "radius", c.region_radius);
        get(r, "lo", c.region_lo);
        get(r, "hi", c.region_hi);
    }
    if (j.contains("tolerances")) c.tolerances = j["tolerances"];
}

void add_grid_flags(CLI::App* cmd, RunConfig& c) {
    cmd->add_option("--grid-n", c.grid_n, "samples per axis");
    cmd->add_option("--lo", c.lo, "domain lower bound");
    cmd->add_option("--hi", c.hi, "domain upper bound");
    cmd->add_option("--pad", c.pad, "padding factor for convolutions");
    cmd->add_option("--seed", c.seed, "random seed");
}

void add_line_flags(CLI::App* cmd, RunConfig& c) {
    cmd->add_option("--n-angles", c.n_angles, "number of angles (even)");
    cmd->add_option("--n-offsets", c.n_offsets, "number of offset bins");
    cmd->add_option("--s-max", c.s_max, "offset half-range");
}

void add_region_flags(CLI::App* cmd, RunConfig& c) {
    cmd->add_option("--region-kind", c.region_kind, "disk|rect");
    cmd->add_option("--region-center", c.region_center, "disk center x,y")->expected(2);
    cmd->add_option("--region-radius", c.region_radius, "disk radius");
    cmd->add_option("--region-lo", c.region_lo, "rect lower corner")->expected(2);
    cmd->add_option("--region-hi", c.region_hi, "rect upper corner")->expected(2);
}

MatrixField parse_matrix(const std::string& arg, const Grid& g) {
    if (arg.empty()) return MatrixField::identity(g);
    if (arg.find(',') != std::string::npos) {
        std::stringstream ss(arg);
        Eigen::Matrix2d m;
        char sep;
        if (!(ss >> m(0, 0) >> sep >> m(0, 1) >> sep >> m(1, 0) >> sep >> m(1, 1)))
            throw config_error("--matrix: expected 'a11,a12,a21,a22' or a file path");
        return MatrixField(g, m);
    }
    FieldVariant v = read_any(arg);
    if (auto* m = std::get_if<MatrixField>(&v)) {
        if (m->grid != g) throw config_error("--matrix: grid mismatch with input field");
        return std::move(*m);
    }
    throw io_error_kind("kind-mismatch", "expected matrix field: " + arg);
}

int emit_reports(const std::vector<ExperimentReport>& reports,
                 const std::string& report_path) {
    json out = reports.size() == 1 ? reports[0].to_json() : json::array();
    if (reports.size() > 1)
        for (const auto& r : reports) out.push_back(r.to_json());
    std::cout << out.dump(2) << "\n";
    if (!report_path.empty()) {
        std::ofstream f(report_path);
        if (!f) throw io_error_kind("open", "cannot open for writing: " + report_path);
        f << out.dump(2) << "\n";
    }
    for (const auto& r : reports)
        if (!r.pass()) return 4;
    return 0;
}

Scalar rel_frobenius(const Array2& a, const Array2& b) {
    const Scalar den = std::sqrt(b.square().sum());
    const Scalar num = std::sqrt((a - b).square().sum());
    return den > 0 ? num / den : num;
}

std::vector<ExperimentReport> run_verify(const std::string& name, const RunConfig& cfg) {
    const Grid g = cfg.grid();
    const LineGrid lines = cfg.lines();
    const InversionConstants k = cfg.constants();

    if (name == "gauge") {
        RunConfig c = cfg;
        c.kind = "mixed";
        const Phantom ph = make_phantom(c.phantom_spec(), g);
        return {check_gauge_partial(ph.potential, ph.curl_part, cfg.region(), lines,
                                    cfg.tol("gauge", 1e-3))};
    }
    if (name == "commutation") {
        const NormalOperator op(g, cfg.pad);
        ExperimentReport rep;
        rep.name = "commutation_family";
        const Scalar tol = cfg.tol("commutation", 0.05);
        for (int i = 0; i < 5; ++i) {
            const CovectorField f = random_solenoidal(g, cfg.seed + i);
            const ExperimentReport r = check_commutation(f, op, tol);
            rep.add("phantom_" + std::to_string(i) + "_" + r.metrics.at(0).label,
                    r.metrics.at(0).value, r.metrics.at(0).tol, r.metrics.at(0).lower_bound);
        }
        return {rep};
    }
    if (name == "partial_data") {
        RunConfig c = cfg;
        c.kind = "gradient";
        const Phantom grad = make_phantom(c.phantom_spec(), g);
        c.kind = "closed_in_region";
        const Phantom control = make_phantom(c.phantom_spec(), g);
        ExperimentReport fwd = partial_data_uniqueness(
            grad.oneform, cfg.region(), lines, /*expect_gradient=*/true,
            cfg.tol("partial_data", 1e-3), cfg.tol("partial_sol", 1e-2));
        ExperimentReport ctl = partial_data_uniqueness(
            control.oneform, cfg.region(), lines, /*expect_gradient=*/false, 1e-3, 1e-2,
            cfg.tol("partial_control", 1e-1));
        ctl.name = "partial_data_uniqueness_control";
        return {fwd, ctl};
    }
    if (name == "stokes") {
        RunConfig c = cfg;
        c.kind = "curl";
        const Phantom ph = make_phantom(c.phantom_spec(), g);
        const Line gamma(0.3, 0.1);
        const Scalar h4 = 4.0 * g.spacing();
        ExperimentReport rep = stokes_loop(ph.oneform, gamma, h4, cfg.tol("stokes", 1e-3));
        const ExperimentReport half = stokes_loop(ph.oneform, gamma, 0.5 * h4);
        const Scalar e4 = rep.metrics.at(1).value;
        const Scalar e2 = half.metrics.at(1).value;
        rep.add("limit_quotient_refinement_ratio", e2 > 0 ? e4 / e2 : 1e9,
                cfg.tol("stokes_ratio", 1.8), /*lower_bound=*/true);
        return {rep};
    }
    if (name == "decouple") {
        RunConfig c = cfg;
        c.kind = "sphere_bundle_pair";
        const Phantom ph = make_phantom(c.phantom_spec(), g);
        const Sinogram sg = xray_scalar(ph.scalar, lines);
        const Sinogram sf = xray_oneform(ph.oneform, lines);
        Sinogram combined(lines, SinogramKind::scalar);
        combined.values = sg.values + sf.values;
        auto [even, odd] = decouple_sphere_bundle(combined);
        ExperimentReport rep;
        rep.name = "sphere_bundle_decoupling";
        const Scalar tol = cfg.tol("decouple", 1e-12);
        rep.add("even_part_rel_err", rel_frobenius(even.values, sg.values), tol);
        rep.add("odd_part_rel_err", rel_frobenius(odd.values, sf.values), tol);
        rep.add("recombination_rel_err",
                rel_frobenius(even.values + odd.values, combined.values), tol);
        return {rep};
    }
    if (name == "transverse") {
        RunConfig c = cfg;
        c.kind = "mixed";
        const Phantom ph = make_phantom(c.phantom_spec(), g);
        return {transverse_complement(ph.oneform, ph.curl_part, ph.grad_part, lines, k,
                                      cfg.tol("transverse_part", 0.10),
                                      cfg.tol("transverse_full", 0.12))};
    }
    if (name == "support") {
        const Region c_set = cfg.region();
        if (c_set.kind != Region::Kind::disk)
            throw config_error("verify support: region C must be a disk");
        RunConfig c = cfg;
        // Pass phantom: gradient plus a curl term supported inside C.
        c.kind = "mixed";
        c.center2 = {c_set.center.x(), c_set.center.y()};
        c.support2 = 0.95 * c_set.radius;
        c.sigma2 = std::max(0.3 * c.support2, 3.0 * g.spacing());
        const Phantom inside = make_phantom(c.phantom_spec(), g);
        const MatrixField a = MatrixField::identity(g);
        ExperimentReport pass = support_theorem_demo(
            inside.oneform, a, c_set, lines, /*expect_null=*/true,
            cfg.tol("support_mask", 1e-3), cfg.tol("support_curl", 1e-2));
        // Control phantom: curl term supported away from C.
        RunConfig c2 = cfg;
        c2.kind = "curl";
        ExperimentReport ctl = support_theorem_demo(
            make_phantom(c2.phantom_spec(), g).oneform, a, c_set, lines,
            /*expect_null=*/false, 1e-3, 1e-2, cfg.tol("support_control", 1e-1));
        ctl.name = "support_theorem_control";
        return {pass, ctl};
    }
    throw config_error("unknown experiment: " + name +
                       " (expected gauge|commutation|partial_data|stokes|decouple|"
                       "transverse|support)");
}

int run(int argc, char** argv) {
    RunConfig cfg;
    // The config file seeds the defaults; explicit flags then override it.
    for (int i = 1; i + 1 < argc; ++i)
        if (std::string(argv[i]) == "--config") load_config_file(argv[i + 1], cfg);

    CLI::App app{"planar tomography of scalar fields and one-forms"};
    app.require_subcommand(1);
    std::string config_path;
    app.add_option("--config", config_path, "JSON config file (flags override)")
        ->expected(1);

    std::string in, in2, out, out2, op, method, target, flavor, matrix_arg, report_path;
    std::string mask_mode;
    std::vector<Scalar> omega{0, 0, 0, 0};

    CLI::App* phantom = app.add_subcommand("phantom", "generate an analytic phantom");
    add_grid_flags(phantom, cfg);
    phantom->add_option("--kind", cfg.kind,
                        "gaussian_scalar|gradient|curl|mixed|disk_indicator|"
                        "closed_in_region|sphere_bundle_pair");
    phantom->add_option("--center", cfg.center, "bump center x,y")->expected(2);
    phantom->add_option("--sigma", cfg.sigma, "bump width");
    phantom->add_option("--amplitude", cfg.amplitude, "bump amplitude");
    phantom->add_option("--support", cfg.support, "bump support radius");
    phantom->add_option("--center2", cfg.center2, "second bump center")->expected(2);
    phantom->add_option("--sigma2", cfg.sigma2, "second bump width");
    phantom->add_option("--amplitude2", cfg.amplitude2, "second bump amplitude");
    phantom->add_option("--support2", cfg.support2, "second bump support radius");
    phantom->add_option("--disk-radius", cfg.disk_radius, "indicator disk radius");
    add_region_flags(phantom, cfg);
    phantom->add_option("--out", out, "output field file")->required();
    phantom->add_option("--out2", out2, "second output (sphere_bundle_pair)");

    CLI::App* forward = app.add_subcommand("forward", "apply a ray transform");
    add_line_flags(forward, cfg);
    forward->add_option("--in", in, "input field file")->required();
    forward->add_option("--op", op, "x0|x1|xa|xperp")->required();
    forward->add_option("--matrix", matrix_arg, "matrix field file or a11,a12,a21,a22");
    forward->add_option("--mask-mode", mask_mode, "through|avoiding (uses --region-*)");
    add_region_flags(forward, cfg);
    forward->add_option("--out", out, "output sinogram file")->required();

    CLI::App* adjoint = app.add_subcommand("adjoint", "backproject a sinogram");
    add_grid_flags(adjoint, cfg);
    adjoint->add_option("--in", in, "input sinogram file")->required();
    adjoint->add_option("--out", out, "output field file")->required();

    CLI::App* normal = app.add_subcommand("normal", "apply a normal operator");
    add_grid_flags(normal, cfg);
    add_line_flags(normal, cfg);
    normal->add_option("--in", in, "input field file")->required();
    normal->add_option("--op", op, "n0|n1|na")->required();
    normal->add_option("--method", method, "kernel|composition")->default_val("kernel");
    normal->add_option("--matrix", matrix_arg, "matrix field file or a11,a12,a21,a22");
    normal->add_option("--out", out, "output field file")->required();

    CLI::App* reconstruct = app.add_subcommand("reconstruct", "invert from field or data");
    add_grid_flags(reconstruct, cfg);
    reconstruct->add_option("--in", in, "input field or sinogram file")->required();
    reconstruct->add_option("--target", target, "f|fs")->required();
    reconstruct->add_option("--constant", cfg.constant, "paper|derived");
    reconstruct->add_option("--out", out, "output field file")->required();

    CLI::App* decompose = app.add_subcommand("decompose", "Helmholtz decomposition");
    add_grid_flags(decompose, cfg);
    decompose->add_option("--in", in, "input covector field file")->required();
    decompose->add_option("--flavor", flavor, "global|dirichlet")->default_val("global");
    CLI::Option* omega_opt =
        decompose->add_option("--omega", omega, "dirichlet rectangle x0,y0,x1,y1");
    omega_opt->expected(4);
    decompose->add_option("--out-fs", out, "solenoidal part output")->required();
    decompose->add_option("--out-phi", out2, "potential output")->required();

    CLI::App* verify = app.add_subcommand("verify", "run a named experiment");
    add_grid_flags(verify, cfg);
    add_line_flags(verify, cfg);
    add_region_flags(verify, cfg);
    std::string experiment;
    verify->add_option("name", experiment, "experiment name")->required();
    verify->add_option("--constant", cfg.constant, "paper|derived");
    verify->add_option("--report", report_path, "also write the JSON report here");
    verify->add_option("--center", cfg.center, "bump center x,y")->expected(2);
    verify->add_option("--sigma", cfg.sigma, "bump width");
    verify->add_option("--center2", cfg.center2, "second bump center")->expected(2);
    verify->add_option("--sigma2", cfg.sigma2, "second bump width");

    CLI::App* render = app.add_subcommand("render", "field/sinogram to PGM/PPM");
    render->add_option("--in", in, "input file")->required();
    render->add_option("--out", out, "output image path")->required();

    CLI::App* info = app.add_subcommand("info", "print the file header as JSON");
    info->add_option("file", in, "input file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help
            std::cout << app.help();
            return 0;
        }
        std::cerr << json{{"error", "usage"}, {"message", e.what()}}.dump() << "\n";
        return 1;
    }

    if (*phantom) {
        const Grid g = cfg.grid();
        PhantomSpec spec = cfg.phantom_spec();
        const Phantom ph = make_phantom(spec, g);
        switch (spec.kind) {
            case PhantomKind::gaussian_scalar:
            case PhantomKind::disk_indicator:
                write_field(ph.scalar, out);
                break;
            case PhantomKind::sphere_bundle_pair:
                if (out2.empty())
                    throw config_error("phantom sphere_bundle_pair needs --out2");
                write_field(ph.scalar, out);
                write_field(ph.oneform, out2);
                break;
            default:
                write_field(ph.oneform, out);
        }
        return 0;
    }

    if (*forward) {
        if (op != "x0" && op != "x1" && op != "xperp" && op != "xa")
            throw config_error("forward --op must be x0|x1|xa|xperp");
        const LineGrid lines = cfg.lines();
        Sinogram sino;
        if (op == "x0") {
            sino = xray_scalar(read_scalar(in), lines);
        } else {
            const CovectorField f = read_covector(in);
            if (op == "x1") sino = xray_oneform(f, lines);
            else if (op == "xperp") sino = xray_transverse(f, lines);
            else if (op == "xa") sino = xray_matrix(parse_matrix(matrix_arg, f.grid), f, lines);
            else throw config_error("forward --op must be x0|x1|xa|xperp");
        }
        if (!mask_mode.empty()) {
            const MaskMode mode = mask_mode == "through" ? MaskMode::through
                                : mask_mode == "avoiding"
                                    ? MaskMode::avoiding
                                    : throw config_error("--mask-mode must be through|avoiding");
            sino.apply_mask(partial_mask(lines, cfg.region(), mode));
        }
        write_sinogram(sino, out);
        return 0;
    }

    if (*adjoint) {
        const Sinogram sino = read_sinogram(in);
        const Grid g = cfg.grid();
        if (sino.kind == SinogramKind::scalar)
            write_field(backproject_scalar(sino, g), out);
        else
            write_field(backproject_oneform(sino, g), out);
        return 0;
    }

    if (*normal) {
        if (op != "n0" && op != "n1" && op != "na")
            throw config_error("normal --op must be n0|n1|na");
        const FieldVariant v = read_any(in);
        if (op == "n0") {
            const auto* f = std::get_if<ScalarField>(&v);
            if (!f) throw io_error_kind("kind-mismatch", "n0 expects a scalar field");
            if (method == "kernel") {
                write_field(NormalOperator(f->grid, cfg.pad).scalar(*f), out);
            } else if (method == "composition") {
                write_field(backproject_scalar(xray_scalar(*f, cfg.lines()), f->grid), out);
            } else {
                throw config_error("--method must be kernel|composition");
            }
            return 0;
        }
        const auto* f = std::get_if<CovectorField>(&v);
        if (!f) throw io_error_kind("kind-mismatch", "n1/na expect a covector field");
        if (op == "n1") {
            if (method == "kernel")
                write_field(NormalOperator(f->grid, cfg.pad).oneform(*f), out);
            else if (method == "composition")
                write_field(backproject_oneform(xray_oneform(*f, cfg.lines()), f->grid), out);
            else
                throw config_error("--method must be kernel|composition");
        } else if (op == "na") {
            const MatrixField a = parse_matrix(matrix_arg, f->grid);
            if (method == "kernel")
                write_field(NormalOperator(f->grid, cfg.pad).matrix(a, *f), out);
            else if (method == "composition")
                write_field(a.transposed().apply(backproject_oneform(
                                xray_matrix(a, *f, cfg.lines()), f->grid)),
                            out);
            else
                throw config_error("--method must be kernel|composition");
        } else {
            throw config_error("normal --op must be n0|n1|na");
        }
        return 0;
    }

    if (*reconstruct) {
        const InversionConstants k = cfg.constants();
        const FieldVariant v = read_any(in);
        if (const auto* s = std::get_if<Sinogram>(&v)) {
            const Grid g = cfg.grid();
            if (target == "f" && s->kind == SinogramKind::scalar)
                write_field(reconstruct_scalar_from_data(*s, g, k), out);
            else if (target == "fs" && s->kind == SinogramKind::oneform)
                write_field(reconstruct_solenoidal_from_data(*s, g, k), out);
            else
                throw config_error("reconstruct: target/sinogram kind mismatch "
                                   "(f needs scalar data, fs needs oneform data)");
            return 0;
        }
        if (const auto* f = std::get_if<ScalarField>(&v)) {
            if (target != "f") throw config_error("scalar input reconstructs --target f");
            write_field(invert_scalar(*f, NormalOperator(f->grid, cfg.pad), k), out);
            return 0;
        }
        if (const auto* f = std::get_if<CovectorField>(&v)) {
            if (target != "fs")
                throw config_error("covector input reconstructs --target fs");
            write_field(recover_solenoidal(*f, NormalOperator(f->grid, cfg.pad), k), out);
            return 0;
        }
        throw io_error_kind("kind-mismatch", "reconstruct: unsupported input kind");
    }

    if (*decompose) {
        const CovectorField f = read_covector(in);
        Decomposition dec;
        if (flavor == "global") {
            dec = helmholtz_global(f, cfg.pad);
        } else if (flavor == "dirichlet") {
            Region rect = omega_opt->count()
                              ? Region::rect({omega[0], omega[1]}, {omega[2], omega[3]})
                              : Region::rect({f.grid.lo, f.grid.lo}, {f.grid.hi, f.grid.hi});
            dec = helmholtz_dirichlet(f, rect);
        } else {
            throw config_error("--flavor must be global|dirichlet");
        }
        write_field(dec.f_s, out);
        write_field(dec.phi, out2);
        std::cout << json{{"flavor", flavor},
                          {"residual", dec.residual},
                          {"iterations", dec.iterations}}
                         .dump(2)
                  << "\n";
        return 0;
    }

    if (*verify) return emit_reports(run_verify(experiment, cfg), report_path);

    if (*render) {
        const FieldVariant v = read_any(in);
        if (const auto* f = std::get_if<ScalarField>(&v)) render_pgm(f->values, out);
        else if (const auto* s = std::get_if<Sinogram>(&v)) render_pgm(s->values, out);
        else if (const auto* f = std::get_if<CovectorField>(&v)) render_ppm(*f, out);
        else throw config_error("render: matrix fields are not renderable");
        return 0;
    }

    if (*info) {
        std::cout << read_header(in).dump(2) << "\n";
        return 0;
    }

    throw config_error("no subcommand given");
}

void emit_error(const char* code, const std::string& message) {
    std::cerr << json{{"error", code}, {"message", message}}.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const io_error_kind& e) {
        std::cerr << json{{"error", "io"}, {"kind", e.kind}, {"message", e.what()}}.dump()
                  << "\n";
        return 2;
    } catch (const io_error& e) {
        emit_error("io", e.what());
        return 2;
    } catch (const config_error& e) {
        emit_error("config", e.what());
        return 1;
    } catch (const numerical_error& e) {
        emit_error("numerical", e.what());
        return 3;
    } catch (const std::exception& e) {
        emit_error("internal", e.what());
        return 3;
    }
}
