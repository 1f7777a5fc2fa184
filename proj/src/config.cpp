#include "jscat/config.hpp"

#include <string>

#include "jscat/error.hpp"

namespace jscat {

using nlohmann::json;

void NumericConfig::validate() const {
    if (M < 1) throw Error("config: M must be at least 1");
    if (N < 16) throw Error("config: N must be at least 16");
    if (N < std::size_t(4) * std::size_t(M)) {
        throw Error("config: N must be at least 4 M (got N = " +
                    std::to_string(N) + ", M = " + std::to_string(M) + ")");
    }
    if (grid < 256 || (grid & (grid - 1)) != 0) {
        throw Error("config: grid must be a power of two >= 256");
    }
    if (eps_schedule.empty()) throw Error("config: eps_schedule must not be empty");
    for (std::size_t i = 0; i < eps_schedule.size(); ++i) {
        if (!(eps_schedule[i] > 0.0)) {
            throw Error("config: eps_schedule entries must be positive");
        }
        if (i > 0 && !(eps_schedule[i] < eps_schedule[i - 1])) {
            throw Error("config: eps_schedule must be strictly decreasing");
        }
    }
    if (!(tol.unitary > 0) || !(tol.inner > 0) || !(tol.outer > 0) ||
        !(tol.kernel > 0) || !(tol.ortho > 0) || !(tol.band > 0) ||
        !(tol.crit > 0) || !(tol.match > 0) || !(tol.tail > 0)) {
        throw Error("config: tolerances must be positive");
    }
}

BasisOptions NumericConfig::basis_options() const {
    BasisOptions b;
    b.N = N;
    b.M = M;
    b.kernel.epsilon_schedule = eps_schedule;
    b.kernel.tol_kernel = tol.kernel;
    b.tol_ortho = tol.ortho;
    b.tol_band = tol.band;
    return b;
}

UniquenessOptions NumericConfig::uniqueness_options() const {
    UniquenessOptions u;
    u.basis = basis_options();
    u.tol_crit = tol.crit;
    u.tol_match = tol.match;
    return u;
}

namespace {

void reject_unknown(const json& j, std::initializer_list<const char*> known,
                    const char* what) {
    for (const auto& [key, value] : j.items()) {
        bool ok = false;
        for (const char* k : known) ok = ok || key == k;
        if (!ok) throw Error(std::string(what) + ": unknown field '" + key + "'");
    }
}

double number_field(const json& j, const char* field, double fallback) {
    auto it = j.find(field);
    if (it == j.end()) return fallback;
    if (!it->is_number()) {
        throw Error(std::string("config: '") + field + "' must be a number");
    }
    return it->get<double>();
}

} // namespace

NumericConfig numeric_config_from_json(const json& j) {
    if (!j.is_object()) throw Error("config: 'numeric' must be an object");
    reject_unknown(j, {"N", "M", "grid", "eps_schedule", "tolerances"},
                   "config numeric");
    NumericConfig c;
    auto size_field = [&](const char* field, std::size_t& out) {
        auto it = j.find(field);
        if (it == j.end()) return;
        if (!it->is_number_integer() || it->get<long long>() < 0) {
            throw Error(std::string("config: '") + field +
                        "' must be a nonnegative integer");
        }
        out = it->get<std::size_t>();
    };
    size_field("N", c.N);
    size_field("grid", c.grid);
    if (auto it = j.find("M"); it != j.end()) {
        if (!it->is_number_integer()) throw Error("config: 'M' must be an integer");
        c.M = it->get<int>();
    }
    if (auto it = j.find("eps_schedule"); it != j.end()) {
        if (!it->is_array()) throw Error("config: 'eps_schedule' must be an array");
        c.eps_schedule.clear();
        for (const auto& e : *it) {
            if (!e.is_number()) throw Error("config: 'eps_schedule' entries must be numbers");
            c.eps_schedule.push_back(e.get<double>());
        }
    }
    if (auto it = j.find("tolerances"); it != j.end()) {
        if (!it->is_object()) throw Error("config: 'tolerances' must be an object");
        reject_unknown(*it,
                       {"unitary", "inner", "outer", "kernel", "ortho", "band",
                        "crit", "match", "tail"},
                       "config tolerances");
        Tolerances d; // defaults
        c.tol.unitary = number_field(*it, "unitary", d.unitary);
        c.tol.inner = number_field(*it, "inner", d.inner);
        c.tol.outer = number_field(*it, "outer", d.outer);
        c.tol.kernel = number_field(*it, "kernel", d.kernel);
        c.tol.ortho = number_field(*it, "ortho", d.ortho);
        c.tol.band = number_field(*it, "band", d.band);
        c.tol.crit = number_field(*it, "crit", d.crit);
        c.tol.match = number_field(*it, "match", d.match);
        c.tol.tail = number_field(*it, "tail", d.tail);
    }
    c.validate();
    return c;
}

json to_json(const Tolerances& t) {
    return json{{"unitary", t.unitary}, {"inner", t.inner}, {"outer", t.outer},
                {"kernel", t.kernel},   {"ortho", t.ortho}, {"band", t.band},
                {"crit", t.crit},       {"match", t.match}, {"tail", t.tail}};
}

json to_json(const NumericConfig& c) {
    return json{{"N", c.N},
                {"M", c.M},
                {"grid", c.grid},
                {"eps_schedule", c.eps_schedule},
                {"tolerances", to_json(c.tol)}};
}

} // namespace jscat
