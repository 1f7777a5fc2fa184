#pragma once
// Numeric configuration shared by the command-line experiments. A config
// file carries a subset of these fields; everything omitted keeps its
// default, and the effective values are echoed into every output so runs
// are self-describing.

#include <cstddef>
#include <vector>

#include <json.hpp>

#include "jscat/hankel.hpp"
#include "jscat/inverse_scattering.hpp"
#include "jscat/uniqueness.hpp"

namespace jscat {

struct Tolerances {
    double unitary = 1e-10; // grid unitarity defect accepted by validation
    double inner = 1e-10;   // modulus defect accepted for inner functions
    double outer = 1e-2;    // outer-test defect (loose: boundary-zero bias)
    double kernel = 1e-8;   // kernel schedule convergence, relative
    double ortho = 1e-8;    // basis orthonormality defect
    double band = 1e-8;     // off-band leakage of the recovered matrix
    double crit = 1e-4;     // |v - 1| accepted as "criterion holds"
    double match = 1e-4;    // side-vs-side distance accepted as agreement
    double tail = 1e-17;    // series truncation in the direct extraction
};

struct NumericConfig {
    std::size_t N = 256;      // Hankel section floor
    int M = 24;               // reconstruction half-width
    std::size_t grid = 4096;  // validation grid floor
    std::vector<double> eps_schedule = default_epsilon_schedule();
    Tolerances tol;

    // Consistency requirements (throws jscat::Error):
    //   M >= 1, N >= 16, N >= 4 M, grid a power of two >= 256,
    //   eps_schedule positive and strictly decreasing.
    void validate() const;

    BasisOptions basis_options() const;
    UniquenessOptions uniqueness_options() const;
};

// Parse the "numeric" shape: {"N":..., "M":..., "grid":..., "eps_schedule":
// [...], "tolerances": {"unitary":..., ...}}. Unknown fields are rejected to
// catch typos. The result is validate()d.
NumericConfig numeric_config_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Tolerances& t);
nlohmann::json to_json(const NumericConfig& c);

} // namespace jscat
