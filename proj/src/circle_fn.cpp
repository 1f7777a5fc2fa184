#include "jscat/circle_fn.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <sstream>

#include "jscat/kernels.hpp"

namespace jscat {

void CircleFunction::trim() {
    std::size_t head = 0;
    while (head < c_.size() && c_[head] == 0.0) ++head;
    if (head == c_.size()) {
        c_.clear();
        lo_ = 0;
        return;
    }
    std::size_t tail = c_.size();
    while (tail > head && c_[tail - 1] == 0.0) --tail;
    if (head > 0) c_.erase(c_.begin(), c_.begin() + long(head));
    c_.resize(tail - head);
    lo_ += int(head);
}

CircleFunction CircleFunction::monomial(int m, double a) {
    if (a == 0.0) return {};
    return CircleFunction(m, {a});
}

CircleFunction CircleFunction::constant(double a) { return monomial(0, a); }

CircleFunction CircleFunction::from_coeffs(const std::map<int, double>& coeffs) {
    if (coeffs.empty()) return {};
    const int lo = coeffs.begin()->first;
    const int hi = coeffs.rbegin()->first;
    if (hi - lo + 1 > kMaxWindow) throw Error("CircleFunction: window exceeds hard cap");
    std::vector<double> c(std::size_t(hi - lo + 1), 0.0);
    for (const auto& [m, v] : coeffs) c[std::size_t(m - lo)] = v;
    CircleFunction f(lo, std::move(c));
    f.trim();
    return f;
}

CircleFunction CircleFunction::from_span(int lo, std::vector<double> c) {
    if (int(c.size()) > kMaxWindow) throw Error("CircleFunction: window exceeds hard cap");
    CircleFunction f(lo, std::move(c));
    f.trim();
    return f;
}

int CircleFunction::window() const {
    if (is_zero()) return 0;
    return std::max(std::abs(min_index()), std::abs(max_index()));
}

double CircleFunction::coeff(int m) const {
    if (is_zero() || m < lo_ || m > max_index()) return 0.0;
    return c_[std::size_t(m - lo_)];
}

std::map<int, double> CircleFunction::coeffs() const {
    std::map<int, double> out;
    for (std::size_t i = 0; i < c_.size(); ++i)
        if (c_[i] != 0.0) out[lo_ + int(i)] = c_[i];
    return out;
}

CircleFunction CircleFunction::operator+(const CircleFunction& g) const {
    if (is_zero()) return g;
    if (g.is_zero()) return *this;
    const int lo = std::min(lo_, g.lo_);
    const int hi = std::max(max_index(), g.max_index());
    std::vector<double> c(std::size_t(hi - lo + 1), 0.0);
    for (std::size_t i = 0; i < c_.size(); ++i) c[std::size_t(lo_ - lo) + i] += c_[i];
    for (std::size_t i = 0; i < g.c_.size(); ++i) c[std::size_t(g.lo_ - lo) + i] += g.c_[i];
    CircleFunction f(lo, std::move(c));
    f.trim();
    return f;
}

CircleFunction CircleFunction::operator-(const CircleFunction& g) const {
    return *this + g.scaled(-1.0);
}

CircleFunction CircleFunction::operator*(const CircleFunction& g) const {
    if (is_zero() || g.is_zero()) return {};
    const std::size_t n = c_.size() + g.c_.size() - 1;
    if (n > std::size_t(kMaxWindow)) throw Error("CircleFunction: window exceeds hard cap");
    std::vector<double> c(n, 0.0);
    kernels::conv_range(c_.data(), c_.size(), g.c_.data(), g.c_.size(), c.data(), 0, n - 1);
    CircleFunction f(lo_ + g.lo_, std::move(c));
    f.trim();
    return f;
}

CircleFunction CircleFunction::scaled(double a) const {
    if (a == 0.0 || is_zero()) return {};
    std::vector<double> c(c_);
    for (double& v : c) v *= a;
    CircleFunction f(lo_, std::move(c));
    f.trim(); // a * c can underflow to zero
    return f;
}

CircleFunction CircleFunction::shifted(int k) const {
    if (is_zero()) return {};
    return CircleFunction(lo_ + k, c_);
}

CircleFunction CircleFunction::involute() const {
    if (is_zero()) return {};
    std::vector<double> c(c_.rbegin(), c_.rend());
    return CircleFunction(-max_index(), std::move(c));
}

CircleFunction CircleFunction::riesz_plus() const {
    if (is_zero() || lo_ >= 0) return *this;
    if (max_index() < 0) return {};
    std::vector<double> c(c_.begin() + std::size_t(-lo_), c_.end());
    CircleFunction f(0, std::move(c));
    f.trim();
    return f;
}

CircleFunction CircleFunction::riesz_minus() const { return *this - riesz_plus(); }

CircleFunction CircleFunction::cleaned(double rel_eps) const {
    if (is_zero()) return {};
    const double cut = rel_eps * max_abs_coeff();
    std::vector<double> c(c_);
    for (double& v : c)
        if (std::abs(v) <= cut) v = 0.0;
    CircleFunction f(lo_, std::move(c));
    f.trim();
    return f;
}

cdouble CircleFunction::eval(cdouble z) const {
    if (is_zero()) return {0.0, 0.0};
    const double r = std::abs(z);
    if (r > 1.0 + 1e-12) throw Error("CircleFunction::eval: point outside the closed disk");
    if (lo_ < 0 && std::abs(r - 1.0) > 1e-12)
        throw Error("CircleFunction::eval: negative indices are boundary values only (|z| must be 1)");
    // Horner on the analytic part in z and on the negative part in w = 1/z.
    cdouble out = 0.0;
    const int hi = max_index();
    const int start = std::max(lo_, 0);
    if (hi >= start) {
        for (int m = hi; m >= start; --m) out = out * z + coeff(m);
        for (int k = 0; k < start; ++k) out *= z;
    }
    if (lo_ < 0) {
        const cdouble w = 1.0 / z;
        cdouble neg = 0.0;
        for (int m = lo_; m <= -1; ++m) neg = neg * w + coeff(m);
        out += neg * w; // neg = sum_m c_m w^(-1-m), one more w gives sum c_m z^m
    }
    return out;
}

double CircleFunction::max_abs_coeff() const {
    double m = 0.0;
    for (double v : c_) m = std::max(m, std::abs(v));
    return m;
}

double CircleFunction::l2_norm() const {
    if (is_zero()) return 0.0;
    return std::sqrt(kernels::dot(c_.data(), c_.data(), c_.size()));
}

CircleFunction mul_by_z(const CircleFunction& f) { return f.shifted(-1) + f.shifted(1); }

namespace detail {

void fft(std::vector<cdouble>& a, bool inverse) {
    const std::size_t n = a.size();
    if (n == 0 || (n & (n - 1)) != 0) throw Error("fft: size must be a power of two");
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = (inverse ? -2.0 : 2.0) * std::numbers::pi / double(len);
        const cdouble wl(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            cdouble w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const cdouble u = a[i + k];
                const cdouble v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wl;
            }
        }
    }
}

} // namespace detail

GridSampling sample(const CircleFunction& f, std::size_t size) {
    if (size == 0 || (size & (size - 1)) != 0) throw Error("sample: grid size must be a power of two");
    if (size < std::size_t(4) * std::size_t(std::max(f.window(), 1)))
        throw Error("sample: grid size below 4x window");
    std::vector<cdouble> bins(size, cdouble(0.0, 0.0));
    for (const auto& [m, v] : f.coeffs()) {
        const long idx = ((long(m) % long(size)) + long(size)) % long(size);
        bins[std::size_t(idx)] += v;
    }
    detail::fft(bins, false); // values[j] = sum_m c_m exp(+2 pi i m j / size)
    return GridSampling{size, std::move(bins)};
}

std::size_t grid_for(int window, std::size_t minimum) {
    std::size_t need = std::max<std::size_t>(minimum, 4 * std::size_t(std::max(window, 1)));
    return std::bit_ceil(need);
}

CircleFunction inner_symmetric_factory(int degree, const std::vector<double>& real_zeros,
                                       double tol_inner, double* defect_out) {
    if (degree < 0) throw Error("inner_symmetric_factory: degree must be >= 0");
    for (double a : real_zeros)
        if (!(std::abs(a) < 1.0)) throw Error("inner_symmetric_factory: zeros must satisfy |a| < 1");
    CircleFunction phi = CircleFunction::monomial(degree);
    for (double a : real_zeros) {
        if (a == 0.0) {
            phi = phi.shifted(1);
            continue;
        }
        // (t - a)/(1 - a t) = -a + (1 - a^2) sum_{j>=1} a^(j-1) t^j
        const double la = std::log(std::abs(a));
        const std::size_t terms = std::size_t(std::ceil(std::log(1e-17) / la)) + 8;
        std::vector<double> c(terms + 1, 0.0);
        c[0] = -a;
        double p = 1.0;
        for (std::size_t j = 1; j <= terms; ++j) {
            c[j] = (1.0 - a * a) * p;
            p *= a;
        }
        phi = phi * CircleFunction::from_span(0, std::move(c));
    }
    const GridSampling g = sample(phi, grid_for(phi.window()));
    double defect = 0.0;
    for (const cdouble& v : g.values) defect = std::max(defect, std::abs(std::abs(v) - 1.0));
    if (defect_out != nullptr) *defect_out = defect;
    if (defect > tol_inner) {
        std::ostringstream os;
        os << "inner_symmetric_factory: truncation misses tol_inner (achieved " << defect << ")";
        throw Error(os.str());
    }
    return phi;
}

OuterReport outer_test(const CircleFunction& f, double tol, std::size_t grid) {
    OuterReport rep;
    if (f.is_zero() || f.min_index() < 0) return rep; // inconclusive
    const double f0 = f.coeff(0); // = f(0) for analytic f
    if (std::abs(f0) < 1e-13) return rep;
    if (grid == 0) grid = grid_for(f.window());
    const GridSampling g = sample(f, grid);
    double mean = 0.0;
    std::size_t used = 0;
    for (const cdouble& v : g.values) {
        const double av = std::abs(v);
        if (av < 1e-13) {
            ++rep.excluded;
            continue;
        }
        mean += std::log(av);
        ++used;
    }
    if (used == 0) return rep;
    mean /= double(used);
    rep.conclusive = true;
    rep.log_mean = mean;
    rep.defect = std::abs(std::log(std::abs(f0)) - mean);
    rep.is_outer = rep.defect <= tol;
    return rep;
}

} // namespace jscat
