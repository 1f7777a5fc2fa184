#include "jscat/poly.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

#include "jscat/error.hpp"

namespace jscat::poly {

std::vector<std::complex<double>> roots(const std::vector<double>& p) {
    double scale = 0.0;
    for (double v : p) scale = std::max(scale, std::abs(v));
    if (scale == 0.0) throw Error("poly::roots: zero polynomial");
    std::size_t deg = p.size();
    while (deg > 0 && std::abs(p[deg - 1]) <= 1e-14 * scale) --deg;
    if (deg <= 1) return {};
    const std::size_t n = deg - 1; // polynomial degree
    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(long(n), long(n));
    for (std::size_t i = 1; i < n; ++i) comp(long(i), long(i - 1)) = 1.0;
    for (std::size_t i = 0; i < n; ++i) comp(long(i), long(n - 1)) = -p[i] / p[deg - 1];
    Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
    std::vector<std::complex<double>> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = es.eigenvalues()(long(i));
    return out;
}

std::vector<double> deflate(const std::vector<double>& p, double r, double* remainder) {
    if (p.size() < 2) throw Error("poly::deflate: degree must be >= 1");
    std::vector<double> q(p.size() - 1, 0.0);
    double carry = p.back();
    for (std::size_t j = p.size() - 1; j-- > 0;) {
        q[j] = carry;
        carry = p[j] + r * carry;
    }
    if (remainder != nullptr) *remainder = carry;
    return q;
}

std::vector<double> recip_series(const std::vector<double>& p, double tail_tol,
                                 std::size_t max_terms) {
    if (p.empty() || p[0] == 0.0) throw Error("poly::recip_series: p(0) must be nonzero");
    const double inv0 = 1.0 / p[0];
    std::vector<double> b;
    b.reserve(64);
    b.push_back(inv0);
    double peak = std::abs(inv0);
    std::size_t quiet = 0;
    while (quiet < 8) {
        const std::size_t m = b.size();
        if (m >= max_terms)
            throw Error("poly::recip_series: no geometric tail within max_terms (zero on or inside the circle?)");
        double s = 0.0;
        const std::size_t jmax = std::min(m, p.size() - 1);
        for (std::size_t j = 1; j <= jmax; ++j) s += p[j] * b[m - j];
        const double bm = -inv0 * s;
        b.push_back(bm);
        peak = std::max(peak, std::abs(bm));
        quiet = std::abs(bm) < tail_tol * peak ? quiet + 1 : 0;
    }
    return b;
}

double eval(const std::vector<double>& p, double x) {
    double v = 0.0;
    for (std::size_t j = p.size(); j-- > 0;) v = v * x + p[j];
    return v;
}

} // namespace jscat::poly
