#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "jscat/config.hpp"
#include "jscat/error.hpp"
#include "jscat/io.hpp"
#include "jscat/smatrix.hpp"
#include "jscat/uniqueness.hpp"

using namespace jscat;
using jscat::io::json;

namespace {

std::filesystem::path temp_file(const char* name) {
    return std::filesystem::temp_directory_path() / name;
}

} // namespace

TEST_CASE("circle function survives a JSON round trip exactly") {
    CircleFunction f = CircleFunction::from_coeffs(
        {{-3, 1.0 / 3.0}, {0, -0.1}, {7, 1e-17}, {2, 5.0}});
    json j = io::to_json(f);
    // Exercise the textual path, not just the DOM.
    json reparsed = json::parse(j.dump(2));
    CircleFunction g = io::circle_fn_from_json(reparsed);
    CHECK(g == f);

    CHECK(io::circle_fn_from_json(io::to_json(CircleFunction())).is_zero());
}

TEST_CASE("malformed circle function JSON is rejected") {
    CHECK_THROWS_AS(io::circle_fn_from_json(json::array()), Error);
    CHECK_THROWS_AS(io::circle_fn_from_json(json{{"nope", 1}}), Error);
    CHECK_THROWS_AS(
        io::circle_fn_from_json(json{{"coeffs", {{"x1", 2.0}}}}), Error);
    CHECK_THROWS_AS(
        io::circle_fn_from_json(json{{"coeffs", {{"1", "two"}}}}), Error);
    CHECK_THROWS_AS(
        io::circle_fn_from_json(json{{"coeffs", {{"1x", 2.0}}}}), Error);
}

TEST_CASE("scattering matrix survives a JSON round trip exactly") {
    ScatteringMatrix S = rank3_smatrix(0.5, -0.4, 0.1);
    ScatteringMatrix T = io::smatrix_from_json(json::parse(io::to_json(S).dump()));
    CHECK(T.s == S.s);
    CHECK(T.s_minus == S.s_minus);
    CHECK(T.s_plus == S.s_plus);
}

TEST_CASE("jacobi matrix JSON carries the perturbation and optional range") {
    JacobiMatrix J;
    J.set(-1, 1.0, 0.25);
    J.set(0, 0.75, -1.0 / 3.0);
    json j = io::to_json(J);
    CHECK(j.find("range") == j.end());
    JacobiMatrix K = io::jacobi_from_json(json::parse(j.dump()));
    CHECK(K.p(0) == 0.75);
    CHECK(K.q(-1) == 0.25);
    CHECK(K.q(0) == -1.0 / 3.0);
    CHECK_FALSE(K.truncated());

    J.set_range(-4, 4);
    JacobiMatrix R = io::jacobi_from_json(json::parse(io::to_json(J).dump()));
    REQUIRE(R.truncated());
    CHECK(R.range() == std::pair<int, int>(-4, 4));
    CHECK_THROWS_AS(
        io::jacobi_from_json(json{{"perturbation", {{"0", json::array({1.0})}}}}),
        Error);
}

TEST_CASE("uniqueness report serializes with verdict and nested blocks") {
    ScatteringMatrix S = analytic_smatrix(CircleFunction::monomial(2));
    UniquenessOptions opts;
    opts.basis.M = 4;
    opts.basis.N = 32;
    UniquenessReport rep = assess_uniqueness(S, opts);
    json j = io::to_json(rep);
    CHECK(j["verdict"] == "non_unique");
    CHECK(j["criterion"]["v_plus"].get<double>() ==
          doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-12));
    CHECK(j["plus"]["jacobi"]["range"][0] == -4);
    CHECK(j["density"]["residuals"].size() == 2);
    CHECK(j["criterion"]["k_plus"]["lambda_min"].is_number());
    // The reparse must preserve numbers exactly.
    json r = json::parse(j.dump(2));
    CHECK(r["reconstruction_distance"].get<double>() ==
          rep.reconstruction_distance);
}

TEST_CASE("kernel result serializes NaN lambda as null") {
    KernelResult kr;
    json j = io::to_json(kr);
    CHECK(j["lambda_min"].is_null());
}

TEST_CASE("jacobi CSV lists rows with round-trip precision") {
    JacobiMatrix J;
    J.set(0, std::sqrt(3.0) / 2.0, 1.0 / 3.0);
    std::string csv = io::jacobi_csv(J, -1, 1);
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    CHECK(line == "n,p_n,q_n");
    std::getline(in, line);
    CHECK(line == "-1,1,0");
    std::getline(in, line);
    CHECK(line.substr(0, 2) == "0,");
    double p = 0.0, q = 0.0;
    REQUIRE(std::sscanf(line.c_str(), "0,%lf,%lf", &p, &q) == 2);
    CHECK(p == std::sqrt(3.0) / 2.0);
    CHECK(q == 1.0 / 3.0);
    CHECK_THROWS_AS(io::jacobi_csv(J, 2, 1), Error);
}

TEST_CASE("atomic write leaves no temporary and read_json round-trips") {
    auto path = temp_file("jscat_io_test.json");
    std::filesystem::remove(path);
    json j{{"x", 0.1}, {"y", json::array({1, 2, 3})}};
    io::write_json(path.string(), j);
    CHECK(std::filesystem::exists(path));
    CHECK_FALSE(std::filesystem::exists(path.string() + ".tmp"));
    json r = io::read_json(path.string());
    CHECK(r == j);
    // Overwrite must be atomic too (same path again).
    io::write_json(path.string(), json{{"x", 2}});
    CHECK(io::read_json(path.string())["x"] == 2);
    std::filesystem::remove(path);

    CHECK_THROWS_AS(io::read_json("/nonexistent/dir/file.json"), Error);
}

TEST_CASE("read_json reports parse errors with the path") {
    auto path = temp_file("jscat_io_bad.json");
    {
        std::ofstream f(path);
        f << "{ not json";
    }
    try {
        io::read_json(path.string());
        FAIL("expected a parse error");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("jscat_io_bad.json") != std::string::npos);
    }
    std::filesystem::remove(path);
}

TEST_CASE("numeric config defaults pass validation and echo to JSON") {
    NumericConfig c;
    c.validate();
    json j = to_json(c);
    CHECK(j["N"] == 256);
    CHECK(j["M"] == 24);
    CHECK(j["grid"] == 4096);
    CHECK(j["eps_schedule"].size() == 9);
    CHECK(j["tolerances"]["crit"] == 1e-4);

    NumericConfig r = numeric_config_from_json(json::parse(j.dump()));
    CHECK(r.N == c.N);
    CHECK(r.tol.tail == c.tol.tail);
}

TEST_CASE("numeric config accepts partial overrides") {
    NumericConfig c = numeric_config_from_json(
        json{{"M", 8}, {"N", 64}, {"tolerances", {{"match", 1e-6}}}});
    CHECK(c.M == 8);
    CHECK(c.N == 64);
    CHECK(c.tol.match == 1e-6);
    CHECK(c.tol.crit == 1e-4);   // untouched default
    CHECK(c.grid == 4096);       // untouched default
}

TEST_CASE("numeric config rejects inconsistent or unknown settings") {
    CHECK_THROWS_AS(numeric_config_from_json(json{{"N", 32}, {"M", 24}}), Error);
    CHECK_THROWS_AS(numeric_config_from_json(json{{"grid", 1000}}), Error);
    CHECK_THROWS_AS(numeric_config_from_json(json{{"M", 0}}), Error);
    CHECK_THROWS_AS(numeric_config_from_json(json{{"epsilon", 1}}), Error);
    CHECK_THROWS_AS(
        numeric_config_from_json(json{{"tolerances", {{"krit", 1e-4}}}}), Error);
    CHECK_THROWS_AS(
        numeric_config_from_json(json{{"eps_schedule", json::array({1e-3, 1e-2})}}),
        Error);
}

TEST_CASE("numeric config maps onto solver option structs") {
    NumericConfig c;
    c.M = 6;
    c.N = 64;
    c.tol.crit = 1e-5;
    c.tol.match = 2e-5;
    UniquenessOptions u = c.uniqueness_options();
    CHECK(u.basis.M == 6);
    CHECK(u.basis.N == 64);
    CHECK(u.tol_crit == 1e-5);
    CHECK(u.tol_match == 2e-5);
    CHECK(u.basis.kernel.epsilon_schedule == c.eps_schedule);
}
