#include "jscat/jacobi.hpp"

#include <cmath>
#include <string>

namespace jscat {

JacobiMatrix& JacobiMatrix::set(int n, double p, double q) {
    if (!std::isfinite(p) || !std::isfinite(q))
        throw Error("JacobiMatrix::set: non-finite coefficient at n=" + std::to_string(n));
    if (p <= 0.0)
        throw Error("JacobiMatrix::set: off-diagonal p must be positive, got " +
                    std::to_string(p) + " at n=" + std::to_string(n));
    if (p == 1.0 && q == 0.0)
        map_.erase(n); // keep the stored support minimal
    else
        map_[n] = Entry{p, q};
    return *this;
}

void JacobiMatrix::check_access(int n) const {
    if (range_ && (n < range_->first || n > range_->second))
        throw Error("JacobiMatrix: coefficient index " + std::to_string(n) +
                    " outside trusted range [" + std::to_string(range_->first) + ", " +
                    std::to_string(range_->second) + "] of a truncated matrix");
}

double JacobiMatrix::p(int n) const {
    check_access(n);
    auto it = map_.find(n);
    return it == map_.end() ? 1.0 : it->second.p;
}

double JacobiMatrix::q(int n) const {
    check_access(n);
    auto it = map_.find(n);
    return it == map_.end() ? 0.0 : it->second.q;
}

std::pair<int, int> JacobiMatrix::range() const {
    if (!range_) throw Error("JacobiMatrix::range: matrix is not truncated");
    return *range_;
}

void JacobiMatrix::set_range(int lo, int hi) {
    if (lo > hi) throw Error("JacobiMatrix::set_range: empty range");
    range_ = {lo, hi};
}

bool JacobiMatrix::covers(int n) const {
    return !range_ || (n >= range_->first && n <= range_->second);
}

JacobiMatrix JacobiMatrix::reflected() const {
    JacobiMatrix out;
    for (const auto& [n, e] : map_) {
        // q_n lands at index -n-1, p_n at index -n; merge with whatever the
        // other component of each target entry already holds.
        if (e.q != 0.0) {
            auto& t = out.map_[-n - 1];
            t.q = e.q;
        }
        if (e.p != 1.0) {
            auto& t = out.map_[-n];
            t.p = e.p;
        }
    }
    if (range_) out.set_range(-range_->second, -range_->first);
    return out;
}

CoefficientWindow apply_window(const JacobiMatrix& J, const CoefficientWindow& w) {
    if (w.v.size() < 3)
        throw Error("apply_window: window must span at least 3 sites");
    CoefficientWindow out;
    out.lo = w.lo + 1;
    out.v.resize(w.v.size() - 2);
    for (size_t i = 1; i + 1 < w.v.size(); ++i) {
        const int n = w.lo + int(i);
        out.v[i - 1] = J.p(n) * w.v[i - 1] + J.q(n) * w.v[i] + J.p(n + 1) * w.v[i + 1];
    }
    return out;
}

double distance(const JacobiMatrix& a, const JacobiMatrix& b, int lo, int hi) {
    if (lo > hi) throw Error("distance: empty comparison range");
    double d = 0.0;
    for (int n = lo; n <= hi; ++n) {
        d = std::max(d, std::abs(a.p(n) - b.p(n)));
        d = std::max(d, std::abs(a.q(n) - b.q(n)));
    }
    return d;
}

double decay_defect(const JacobiMatrix& J, int tail_from) {
    if (tail_from < 0) throw Error("decay_defect: tail_from must be nonnegative");
    double d = 0.0;
    if (J.truncated()) {
        auto [lo, hi] = J.range();
        for (int n = lo; n <= hi; ++n) {
            if (std::abs(n) < tail_from) continue;
            d = std::max(d, std::abs(J.p(n) - 1.0));
            d = std::max(d, std::abs(J.q(n)));
        }
    } else {
        for (const auto& [n, e] : J.entries()) {
            if (std::abs(n) < tail_from) continue;
            d = std::max(d, std::abs(e.p - 1.0));
            d = std::max(d, std::abs(e.q));
        }
    }
    return d;
}

} // namespace jscat
