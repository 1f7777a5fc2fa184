#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "jscat/error.hpp"

namespace jscat {

// Two-sided Jacobi matrix on l2(Z):
//   (J v)_n = p_n v_{n-1} + q_n v_n + p_{n+1} v_{n+1},   p_n > 0,
// stored as a finite perturbation of the free matrix (p = 1, q = 0).
// The off-diagonal p_n couples sites n-1 and n.
//
// A matrix produced by truncated reconstruction carries a trusted range;
// coefficient access outside it is an error, not silently free.
class JacobiMatrix {
public:
    struct Entry {
        double p = 1.0;
        double q = 0.0;
    };

    JacobiMatrix() = default; // the free matrix

    JacobiMatrix& set(int n, double p, double q);
    double p(int n) const;
    double q(int n) const;

    bool perturbation_empty() const { return map_.empty(); }
    int support_min() const { return map_.empty() ? 0 : map_.begin()->first; }
    int support_max() const { return map_.empty() ? 0 : map_.rbegin()->first; }
    const std::map<int, Entry>& entries() const { return map_; }

    bool truncated() const { return range_.has_value(); }
    std::pair<int, int> range() const;
    void set_range(int lo, int hi);
    bool covers(int n) const;

    // Spatial reflection: q_n -> q_{-n-1}, p_n -> p_{-n}. Swaps the roles of
    // the two half-axes (and of the two reflection coefficients).
    JacobiMatrix reflected() const;

private:
    void check_access(int n) const;

    std::map<int, Entry> map_;
    std::optional<std::pair<int, int>> range_;
};

// A vector supported on the index window [lo, lo + v.size() - 1].
struct CoefficientWindow {
    int lo = 0;
    std::vector<double> v;
    int hi() const { return lo + int(v.size()) - 1; }
};

// (J v) on the interior [lo+1, hi-1]; windows shorter than 3 are rejected.
CoefficientWindow apply_window(const JacobiMatrix& J, const CoefficientWindow& w);

// max over n in [lo, hi] of max(|p_a - p_b|, |q_a - q_b|).
double distance(const JacobiMatrix& a, const JacobiMatrix& b, int lo, int hi);

// Largest deviation from the free matrix at |n| >= tail_from (within the
// trusted range for truncated matrices). Quantifies truncation error.
double decay_defect(const JacobiMatrix& J, int tail_from);

} // namespace jscat
