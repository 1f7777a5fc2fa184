// Command-line driver for the scattering experiments.
//
// Subcommands: validate, direct, inverse, roundtrip, nonuniq, repair-search,
// criterion. Inputs come from --input (a JSON file holding a Jacobi matrix
// or a scattering matrix) or from fields of the --config file; numeric
// settings come from the config's "numeric" block with --n/--m/--grid
// overrides. Without --out the report JSON goes to stdout; with --out it is
// written to <prefix>.json (plus CSV side files where noted) and a one-line
// summary is printed instead.
//
// Exit codes: 0 = the experiment passed / produced a confident
// determination, 2 = inconclusive, 1 = a stage failed.

#include <cstdio>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "jscat/config.hpp"
#include "jscat/direct_scattering.hpp"
#include "jscat/error.hpp"
#include "jscat/inverse_scattering.hpp"
#include "jscat/io.hpp"
#include "jscat/jacobi.hpp"
#include "jscat/smatrix.hpp"
#include "jscat/uniqueness.hpp"

using jscat::io::json;

namespace {

struct CommonArgs {
    std::string config;
    std::string input;
    std::string out;
    long long n = -1;
    long long m = -1;
    long long grid = -1;
};

void add_common(CLI::App* sub, CommonArgs& a) {
    sub->add_option("--config", a.config, "JSON config file");
    sub->add_option("--input", a.input,
                    "JSON input file (Jacobi matrix or scattering matrix)");
    sub->add_option("--out", a.out, "output file prefix");
    sub->add_option("--n", a.n, "override: Hankel section floor N");
    sub->add_option("--m", a.m, "override: reconstruction half-width M");
    sub->add_option("--grid", a.grid, "override: validation grid size");
}

json load_config(const CommonArgs& a) {
    if (a.config.empty()) return json::object();
    json cfg = jscat::io::read_json(a.config);
    if (!cfg.is_object()) throw jscat::Error("config: top level must be an object");
    return cfg;
}

jscat::NumericConfig numeric_from(const json& cfg, const CommonArgs& a) {
    jscat::NumericConfig c;
    if (auto it = cfg.find("numeric"); it != cfg.end()) {
        c = jscat::numeric_config_from_json(*it);
    }
    if (a.n >= 0) c.N = std::size_t(a.n);
    if (a.m >= 0) c.M = int(a.m);
    if (a.grid >= 0) c.grid = std::size_t(a.grid);
    c.validate();
    return c;
}

// Config fields holding structured inputs may be inline objects or string
// paths to JSON files.
json resolve_ref(const json& v) {
    if (v.is_string()) return jscat::io::read_json(v.get<std::string>());
    return v;
}

jscat::JacobiMatrix jacobi_input(const json& cfg, const CommonArgs& a) {
    if (!a.input.empty()) {
        return jscat::io::jacobi_from_json(jscat::io::read_json(a.input));
    }
    if (auto it = cfg.find("jacobi"); it != cfg.end()) {
        return jscat::io::jacobi_from_json(resolve_ref(*it));
    }
    throw jscat::Error("no Jacobi input: pass --input <file> or config field 'jacobi'");
}

jscat::CircleFunction delta_from_json(const json& d, double tol_inner) {
    if (!d.is_object()) throw jscat::Error("config: 'delta' must be an object");
    if (auto it = d.find("power"); it != d.end()) {
        int k = it->get<int>();
        if (k < 1) throw jscat::Error("config: delta power must be >= 1");
        return jscat::CircleFunction::monomial(k);
    }
    int degree = d.value("degree", 0);
    std::vector<double> zeros;
    if (auto it = d.find("zeros"); it != d.end()) {
        zeros = it->get<std::vector<double>>();
    }
    if (degree == 0 && zeros.empty()) {
        throw jscat::Error("config: 'delta' needs 'power' or 'degree'/'zeros'");
    }
    return jscat::inner_symmetric_factory(degree, zeros, tol_inner);
}

jscat::ScatteringMatrix smatrix_input(const json& cfg, const CommonArgs& a,
                                      const jscat::NumericConfig& nc) {
    if (!a.input.empty()) {
        return jscat::io::smatrix_from_json(jscat::io::read_json(a.input));
    }
    if (auto it = cfg.find("smatrix"); it != cfg.end()) {
        return jscat::io::smatrix_from_json(resolve_ref(*it));
    }
    if (auto it = cfg.find("rank3"); it != cfg.end()) {
        if (!it->is_array() || it->size() != 3) {
            throw jscat::Error("config: 'rank3' must be [p0, q0, qm1]");
        }
        return jscat::rank3_smatrix((*it)[0].get<double>(), (*it)[1].get<double>(),
                                    (*it)[2].get<double>());
    }
    if (auto it = cfg.find("delta"); it != cfg.end()) {
        return jscat::analytic_smatrix(delta_from_json(*it, nc.tol.inner),
                                       nc.tol.inner, nc.tol.unitary);
    }
    throw jscat::Error("no scattering input: pass --input <file> or a config "
                       "field 'smatrix', 'rank3' or 'delta'");
}

jscat::CircleFunction parse_candidate(const std::string& label, double tol_inner) {
    if (label == "t") return jscat::CircleFunction::monomial(1);
    int k = 0;
    double zero = 0.0;
    if (std::sscanf(label.c_str(), "t^%d*blaschke(%lf)", &k, &zero) == 2 && k >= 1) {
        return jscat::inner_symmetric_factory(k, {zero}, tol_inner);
    }
    if (std::sscanf(label.c_str(), "t*blaschke(%lf)", &zero) == 1) {
        return jscat::inner_symmetric_factory(1, {zero}, tol_inner);
    }
    if (std::sscanf(label.c_str(), "blaschke(%lf)", &zero) == 1) {
        return jscat::inner_symmetric_factory(0, {zero}, tol_inner);
    }
    if (std::sscanf(label.c_str(), "t^%d", &k) == 1 && k >= 1) {
        return jscat::CircleFunction::monomial(k);
    }
    throw jscat::Error("cannot parse repair candidate '" + label +
                       "' (forms: t, t^k, blaschke(a), t*blaschke(a), "
                       "t^k*blaschke(a))");
}

std::vector<std::pair<std::string, jscat::CircleFunction>> candidates_from(
    const json& cfg, double tol_inner) {
    auto it = cfg.find("candidates");
    if (it == cfg.end()) return jscat::default_repair_candidates(tol_inner);
    if (!it->is_array() || it->empty()) {
        throw jscat::Error("config: 'candidates' must be a nonempty array of labels");
    }
    std::vector<std::pair<std::string, jscat::CircleFunction>> out;
    for (const auto& entry : *it) {
        std::string label = entry.get<std::string>();
        out.emplace_back(label, parse_candidate(label, tol_inner));
    }
    return out;
}

json base_output(const char* command, const jscat::NumericConfig& nc) {
    return json{{"command", command}, {"numeric", jscat::to_json(nc)}};
}

// Reports go to stdout when no prefix is given; otherwise to files with a
// one-line summary on stdout.
int emit(const CommonArgs& a, const json& out, int code, const std::string& summary,
         const std::vector<std::pair<std::string, std::string>>& side_files = {}) {
    if (a.out.empty()) {
        std::cout << out.dump(2) << "\n";
        std::cerr << summary << "\n";
    } else {
        jscat::io::write_json(a.out + ".json", out);
        for (const auto& [suffix, content] : side_files) {
            jscat::io::write_text_atomic(a.out + suffix, content);
        }
        std::cout << summary << "\n";
    }
    return code;
}

std::string fmt(const char* f, double x, double y = 0.0) {
    char buf[192];
    std::snprintf(buf, sizeof(buf), f, x, y);
    return buf;
}

int run_validate(const CommonArgs& a) {
    json cfg = load_config(a);
    jscat::NumericConfig nc = numeric_from(cfg, a);
    jscat::ScatteringMatrix S = smatrix_input(cfg, a, nc);
    jscat::ValidationReport rep =
        jscat::validate(S, nc.tol.unitary, nc.tol.outer, nc.grid);
    json out = base_output("validate", nc);
    out["validation"] = jscat::io::to_json(rep);
    int code = rep.passes ? 0 : (rep.outer.conclusive ? 1 : 2);
    std::string verdict = rep.passes ? "passed"
                          : (rep.outer.conclusive ? "failed" : "inconclusive");
    return emit(a, out, code,
                "validation " + verdict +
                    fmt(": unitarity defect %.3e, outer defect %.3e",
                        rep.unitarity_defect, rep.outer.defect));
}

int run_direct(const CommonArgs& a) {
    json cfg = load_config(a);
    jscat::NumericConfig nc = numeric_from(cfg, a);
    jscat::JacobiMatrix J = jacobi_input(cfg, a);
    jscat::ScatteringExtraction ext = jscat::extract_smatrix(J, nc.tol.tail);
    jscat::ValidationReport v =
        jscat::validate(ext.S, nc.tol.unitary, nc.tol.outer, nc.grid);
    json out = base_output("direct", nc);
    out["extraction"] = jscat::io::to_json(ext);
    out["validation"] = jscat::io::to_json(v);
    std::vector<std::pair<std::string, std::string>> side;
    if (!a.out.empty()) {
        side.emplace_back("_smatrix.json", jscat::io::to_json(ext.S).dump(2) + "\n");
    }
    int code = v.passes ? 0 : (v.outer.conclusive ? 1 : 2);
    return emit(a, out, code,
                fmt("direct extraction: s window %.0f coefficients, direction "
                    "defect %.3e",
                    double(ext.S.s.window()), ext.direction_defect) +
                    (v.passes ? ", validation passed" : ", VALIDATION FAILED"),
                side);
}

int run_inverse(const CommonArgs& a) {
    json cfg = load_config(a);
    jscat::NumericConfig nc = numeric_from(cfg, a);
    jscat::ScatteringMatrix S = smatrix_input(cfg, a, nc);
    jscat::BasisOptions b = nc.basis_options();
    jscat::ReconstructionReport plus = jscat::reconstruct_jacobi(S.s_plus, b);
    jscat::ReconstructionReport minus = jscat::reconstruct_dual(S.s_minus, b);
    double dist = jscat::distance(plus.J, minus.J, -b.M, b.M);
    json out = base_output("inverse", nc);
    out["plus"] = jscat::io::to_json(plus);
    out["minus"] = jscat::io::to_json(minus);
    out["side_distance"] = dist;
    std::vector<std::pair<std::string, std::string>> side;
    if (!a.out.empty()) {
        side.emplace_back("_plus.csv", jscat::io::jacobi_csv(plus.J, -b.M, b.M));
        side.emplace_back("_minus.csv", jscat::io::jacobi_csv(minus.J, -b.M, b.M));
    }
    int code = (plus.ok && minus.ok)
                   ? 0
                   : ((plus.converged_all && minus.converged_all) ? 1 : 2);
    return emit(a, out, code,
                fmt("inverse reconstruction on [-%g, %g]", b.M, b.M) +
                    fmt(": side distance %.3e, gram defect %.3e", dist,
                        std::max(plus.gram_defect, minus.gram_defect)),
                side);
}

int run_roundtrip(const CommonArgs& a) {
    json cfg = load_config(a);
    jscat::NumericConfig nc = numeric_from(cfg, a);
    jscat::JacobiMatrix J = jacobi_input(cfg, a);
    if (!J.perturbation_empty() &&
        (J.support_min() < -nc.M || J.support_max() > nc.M)) {
        throw jscat::Error("roundtrip: the perturbation support exceeds "
                           "[-M, M]; increase M");
    }
    jscat::ScatteringExtraction ext = jscat::extract_smatrix(J, nc.tol.tail);
    jscat::ValidationReport v =
        jscat::validate(ext.S, nc.tol.unitary, nc.tol.outer, nc.grid);
    jscat::BasisOptions b = nc.basis_options();
    jscat::ReconstructionReport plus = jscat::reconstruct_jacobi(ext.S.s_plus, b);
    jscat::ReconstructionReport minus = jscat::reconstruct_dual(ext.S.s_minus, b);
    double d_plus = jscat::distance(J, plus.J, -b.M, b.M);
    double d_minus = jscat::distance(J, minus.J, -b.M, b.M);
    json out = base_output("roundtrip", nc);
    out["validation"] = jscat::io::to_json(v);
    out["plus"] = jscat::io::to_json(plus);
    out["minus"] = jscat::io::to_json(minus);
    out["distance_plus"] = d_plus;
    out["distance_minus"] = d_minus;
    std::vector<std::pair<std::string, std::string>> side;
    if (!a.out.empty()) {
        side.emplace_back("_plus.csv", jscat::io::jacobi_csv(plus.J, -b.M, b.M));
        side.emplace_back("_minus.csv", jscat::io::jacobi_csv(minus.J, -b.M, b.M));
    }
    double worst = std::max(d_plus, d_minus);
    bool solvers_ok = plus.ok && minus.ok && v.passes;
    bool converged = plus.converged_all && minus.converged_all;
    int code = (solvers_ok && worst <= nc.tol.match) ? 0 : (converged ? 1 : 2);
    return emit(a, out, code,
                fmt("roundtrip distance %.3e (plus) / %.3e (minus)", d_plus,
                    d_minus) +
                    (code == 0 ? ", within tolerance" : ", NOT within tolerance"),
                side);
}

int run_criterion(const CommonArgs& a) {
    json cfg = load_config(a);
    jscat::NumericConfig nc = numeric_from(cfg, a);
    jscat::ScatteringMatrix S = smatrix_input(cfg, a, nc);
    jscat::KernelOptions k = nc.basis_options().kernel;
    jscat::CriterionResult c = jscat::kernel_product_criterion(S, nc.N, k);
    json out = base_output("criterion", nc);
    out["criterion"] = jscat::io::to_json(c);
    int code = c.all_converged ? 0 : 2;
    return emit(a, out, code,
                fmt("criterion products: v+ = %.12g, v- = %.12g", c.v_plus,
                    c.v_minus) +
                    (c.all_converged ? "" : " (kernel solves unconverged)"));
}

int run_nonuniq(const CommonArgs& a) {
    json cfg = load_config(a);
    jscat::NumericConfig nc = numeric_from(cfg, a);
    jscat::ScatteringMatrix S = smatrix_input(cfg, a, nc);
    jscat::UniquenessReport rep =
        jscat::assess_uniqueness(S, nc.uniqueness_options());
    json out = base_output("nonuniq", nc);
    out["assessment"] = jscat::io::to_json(rep);
    int code = rep.verdict == jscat::Verdict::inconclusive ? 2 : 0;
    return emit(a, out, code,
                std::string("verdict: ") + to_string(rep.verdict) +
                    fmt(" (v+ = %.9g, v- = %.9g", rep.criterion.v_plus,
                        rep.criterion.v_minus) +
                    fmt(", side distance %.3e)", rep.reconstruction_distance));
}

int run_repair_search(const CommonArgs& a) {
    json cfg = load_config(a);
    jscat::NumericConfig nc = numeric_from(cfg, a);
    jscat::ScatteringMatrix S = smatrix_input(cfg, a, nc);
    auto cands = candidates_from(cfg, nc.tol.inner);
    jscat::RepairSearchResult rs =
        jscat::repair_search(S, cands, nc.uniqueness_options());
    json out = base_output("repair-search", nc);
    out["search"] = jscat::io::to_json(rs);
    bool all_conclusive = true;
    for (const auto& c : rs.candidates) {
        all_conclusive = all_conclusive && c.admissible &&
                         c.report.verdict != jscat::Verdict::inconclusive;
    }
    std::string summary;
    if (rs.found >= 0) {
        summary = "candidate '" + rs.candidates[std::size_t(rs.found)].label +
                  "' restored uniqueness";
    } else {
        summary = "no candidate restored uniqueness (" +
                  std::to_string(rs.candidates.size()) + " scanned)";
    }
    if (!all_conclusive) summary += "; some candidates were inconclusive";
    return emit(a, out, all_conclusive ? 0 : 2, summary);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Direct and inverse scattering experiments for Jacobi "
                 "matrices with Szego-class spectral behavior"};
    app.require_subcommand(1);

    CommonArgs args;
    CLI::App* c_validate = app.add_subcommand(
        "validate", "check unitarity, symmetry and outer transmission of "
                    "scattering data");
    CLI::App* c_direct = app.add_subcommand(
        "direct", "scattering data of a finitely perturbed Jacobi matrix");
    CLI::App* c_inverse = app.add_subcommand(
        "inverse", "reconstruct Jacobi matrices from both reflection "
                   "coefficients");
    CLI::App* c_roundtrip = app.add_subcommand(
        "roundtrip", "direct map followed by inverse map, compared with the "
                     "input matrix");
    CLI::App* c_nonuniq = app.add_subcommand(
        "nonuniq", "full uniqueness assessment of scattering data");
    CLI::App* c_repair = app.add_subcommand(
        "repair-search", "scan inner twists of the reflection pair for one "
                         "that restores uniqueness");
    CLI::App* c_criterion = app.add_subcommand(
        "criterion", "kernel product criterion values only");
    for (CLI::App* sub : {c_validate, c_direct, c_inverse, c_roundtrip,
                          c_nonuniq, c_repair, c_criterion}) {
        add_common(sub, args);
    }

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(c_validate)) return run_validate(args);
        if (app.got_subcommand(c_direct)) return run_direct(args);
        if (app.got_subcommand(c_inverse)) return run_inverse(args);
        if (app.got_subcommand(c_roundtrip)) return run_roundtrip(args);
        if (app.got_subcommand(c_nonuniq)) return run_nonuniq(args);
        if (app.got_subcommand(c_repair)) return run_repair_search(args);
        if (app.got_subcommand(c_criterion)) return run_criterion(args);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    std::cerr << "error: no subcommand dispatched\n";
    return 1;
}
