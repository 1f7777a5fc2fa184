#include "jscat/io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <utility>

#include "jscat/error.hpp"

namespace jscat::io {

namespace {

// Keys of coefficient maps are decimal integers in string form.
int parse_index(const std::string& key, const char* what) {
    std::size_t pos = 0;
    int value = 0;
    try {
        value = std::stoi(key, &pos);
    } catch (const std::exception&) {
        throw Error(std::string(what) + ": key '" + key + "' is not an integer");
    }
    if (pos != key.size()) {
        throw Error(std::string(what) + ": key '" + key + "' is not an integer");
    }
    return value;
}

double require_number(const json& j, const char* what) {
    if (!j.is_number()) throw Error(std::string(what) + ": expected a number");
    return j.get<double>();
}

const json& require_field(const json& j, const char* field, const char* what) {
    auto it = j.find(field);
    if (it == j.end()) {
        throw Error(std::string(what) + ": missing field '" + field + "'");
    }
    return *it;
}

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

} // namespace

json to_json(const CircleFunction& f) {
    json coeffs = json::object();
    for (const auto& [m, c] : f.coeffs()) coeffs[std::to_string(m)] = c;
    return json{{"coeffs", std::move(coeffs)}};
}

CircleFunction circle_fn_from_json(const json& j) {
    if (!j.is_object()) throw Error("circle function: expected an object");
    const json& coeffs = require_field(j, "coeffs", "circle function");
    if (!coeffs.is_object()) throw Error("circle function: 'coeffs' must be an object");
    std::map<int, double> out;
    for (const auto& [key, value] : coeffs.items()) {
        out[parse_index(key, "circle function")] =
            require_number(value, "circle function coefficient");
    }
    return CircleFunction::from_coeffs(out);
}

json to_json(const ScatteringMatrix& S) {
    return json{{"s", to_json(S.s)},
                {"s_minus", to_json(S.s_minus)},
                {"s_plus", to_json(S.s_plus)}};
}

ScatteringMatrix smatrix_from_json(const json& j) {
    if (!j.is_object()) throw Error("scattering matrix: expected an object");
    return ScatteringMatrix{
        circle_fn_from_json(require_field(j, "s", "scattering matrix")),
        circle_fn_from_json(require_field(j, "s_minus", "scattering matrix")),
        circle_fn_from_json(require_field(j, "s_plus", "scattering matrix"))};
}

json to_json(const JacobiMatrix& J) {
    json pert = json::object();
    for (const auto& [n, e] : J.entries()) {
        pert[std::to_string(n)] = json::array({e.p, e.q});
    }
    json out{{"perturbation", std::move(pert)}};
    if (J.truncated()) {
        auto [lo, hi] = J.range();
        out["range"] = json::array({lo, hi});
    }
    return out;
}

JacobiMatrix jacobi_from_json(const json& j) {
    if (!j.is_object()) throw Error("jacobi matrix: expected an object");
    JacobiMatrix J;
    const json& pert = require_field(j, "perturbation", "jacobi matrix");
    if (!pert.is_object()) throw Error("jacobi matrix: 'perturbation' must be an object");
    for (const auto& [key, value] : pert.items()) {
        int n = parse_index(key, "jacobi matrix");
        if (!value.is_array() || value.size() != 2) {
            throw Error("jacobi matrix: row '" + key + "' must be [p, q]");
        }
        J.set(n, require_number(value[0], "jacobi matrix p"),
              require_number(value[1], "jacobi matrix q"));
    }
    if (auto it = j.find("range"); it != j.end()) {
        if (!it->is_array() || it->size() != 2) {
            throw Error("jacobi matrix: 'range' must be [lo, hi]");
        }
        J.set_range((*it)[0].get<int>(), (*it)[1].get<int>());
    }
    return J;
}

json to_json(const OuterReport& r) {
    return json{{"conclusive", r.conclusive}, {"is_outer", r.is_outer},
                {"defect", r.defect},         {"log_mean", r.log_mean},
                {"excluded", r.excluded}};
}

json to_json(const ValidationReport& r) {
    return json{{"defect_minus", r.defect_minus},
                {"defect_plus", r.defect_plus},
                {"defect_cross", r.defect_cross},
                {"unitarity_defect", r.unitarity_defect},
                {"symmetry_defect", r.symmetry_defect},
                {"outer", to_json(r.outer)},
                {"grid", r.grid},
                {"passes", r.passes}};
}

json to_json(const KernelResult& r) {
    json trace = json::array();
    for (const auto& [eps, k0] : r.epsilon_trace) {
        trace.push_back(json::array({eps, k0}));
    }
    return json{{"k", to_json(r.k)},
                {"k0", r.k0},
                {"K", to_json(r.K)},
                {"converged", r.converged},
                {"direct", r.direct},
                {"lambda_min", std::isnan(r.lambda_min) ? json(nullptr)
                                                        : json(r.lambda_min)},
                {"epsilon_trace", std::move(trace)}};
}

json to_json(const ABNumerators& r) {
    return json{{"a_num", to_json(r.a_num)}, {"b_num", to_json(r.b_num)}};
}

json to_json(const ScatteringExtraction& r) {
    return json{{"smatrix", to_json(r.S)},
                {"plus_run", to_json(r.plus_run)},
                {"minus_run", to_json(r.minus_run)},
                {"direction_defect", r.direction_defect}};
}

json to_json(const ReconstructionReport& r) {
    return json{{"jacobi", to_json(r.J)},
                {"gram_defect", r.gram_defect},
                {"band_defect", r.band_defect},
                {"min_p", r.min_p},
                {"converged_all", r.converged_all},
                {"ok", r.ok},
                {"n_eff", r.n_eff}};
}

json to_json(const CriterionResult& r) {
    return json{{"s0", r.s0},
                {"v_plus", r.v_plus},
                {"v_minus", r.v_minus},
                {"all_converged", r.all_converged},
                {"k_plus", to_json(r.k_plus)},
                {"k_minus_shift", to_json(r.k_minus_shift)},
                {"k_minus", to_json(r.k_minus)},
                {"k_plus_shift", to_json(r.k_plus_shift)}};
}

json to_json(const ClosedFormCheck& r) {
    return json{{"applicable", r.applicable},
                {"reason", r.reason},
                {"a", r.a},
                {"base_defect", r.base_defect},
                {"identity_defect", r.identity_defect},
                {"samples", r.samples},
                {"skipped", r.skipped}};
}

json to_json(const ApproximationResiduals& r) {
    json list = json::array();
    for (const auto& [d, res] : r.residuals) list.push_back(json::array({d, res}));
    return json{{"residuals", std::move(list)}};
}

json to_json(const DensityReport& r) {
    return json{{"d_max", r.d_max},
                {"residuals", r.residuals},
                {"consistency_defect", r.consistency_defect},
                {"target_norm_defect", r.target_norm_defect}};
}

json to_json(const UniquenessReport& r) {
    return json{{"criterion", to_json(r.criterion)},
                {"plus", to_json(r.plus)},
                {"minus", to_json(r.minus)},
                {"reconstruction_distance", r.reconstruction_distance},
                {"closed_form", to_json(r.closed_form)},
                {"approximation", to_json(r.approximation)},
                {"density", to_json(r.density)},
                {"verdict", to_string(r.verdict)},
                {"rationale", r.rationale},
                {"flags", r.flags},
                {"tol_crit", r.tol_crit},
                {"tol_match", r.tol_match}};
}

json to_json(const RepairSearchResult& r) {
    json list = json::array();
    for (const auto& c : r.candidates) {
        json entry{{"label", c.label}, {"admissible", c.admissible}};
        if (c.admissible) {
            entry["report"] = to_json(c.report);
        } else {
            entry["error"] = c.error;
        }
        list.push_back(std::move(entry));
    }
    return json{{"found", r.found}, {"candidates", std::move(list)}};
}

std::string jacobi_csv(const JacobiMatrix& J, int lo, int hi) {
    if (lo > hi) throw Error("jacobi_csv: empty range");
    std::string out = "n,p_n,q_n\n";
    for (int n = lo; n <= hi; ++n) {
        out += std::to_string(n) + "," + fmt17(J.p(n)) + "," + fmt17(J.q(n)) + "\n";
    }
    return out;
}

void write_text_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    fs::path target(path);
    if (target.has_parent_path()) {
        std::error_code ec;
        fs::create_directories(target.parent_path(), ec);
        if (ec) {
            throw Error("cannot create directory '" +
                        target.parent_path().string() + "': " + ec.message());
        }
    }
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw Error("cannot open '" + tmp.string() + "' for writing");
        f << content;
        f.flush();
        if (!f) throw Error("failed writing '" + tmp.string() + "'");
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        throw Error("cannot rename '" + tmp.string() + "' to '" +
                    target.string() + "': " + ec.message());
    }
}

void write_json(const std::string& path, const json& j) {
    write_text_atomic(path, j.dump(2) + "\n");
}

json read_json(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw Error("cannot open '" + path + "'");
    try {
        return json::parse(f);
    } catch (const json::parse_error& e) {
        throw Error("cannot parse '" + path + "': " + e.what());
    }
}

} // namespace jscat::io
