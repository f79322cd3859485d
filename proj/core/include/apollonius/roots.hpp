#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "apollonius/types.hpp"

namespace apollonius {

// Dense univariate polynomial with coefficients in ascending degree order.
struct Poly {
    std::vector<double> c;

    Poly() = default;
    explicit Poly(std::vector<double> coeffs) : c(std::move(coeffs)) {}

    static Poly from_roots(const std::vector<double>& roots);

    int degree() const;
    double eval(double t) const;
    // compensated Horner evaluation, roughly double-double accurate
    double eval_accurate(double t) const;
    Poly derivative() const;
    // drops leading coefficients smaller than rel_eps * max |c_i|
    Poly trimmed(double rel_eps) const;
    double max_abs_coeff() const;
};

struct RootEntry {
    double root = 0.0;
    int multiplicity = 1;
    double lo = 0.0;
    double hi = 0.0;
};

struct RootSet {
    std::vector<RootEntry> entries;

    int total_multiplicity() const;
    std::vector<double> roots() const;
};

struct Interval {
    double lo;
    double hi;
};

// All real roots of p inside the optional domain, sorted ascending.  Roots
// closer than eps_mult (relative) are merged into a single entry with summed
// multiplicity; even-order tangential roots are detected through critical
// points of p rather than sign changes.
RootSet real_roots(const Poly& p, std::optional<Interval> domain = {},
                   const Tolerances& tol = {});

// Numeric square-free signature: list of (factor degree, multiplicity) pairs
// with multiplicities ascending, e.g. (t-2)^2 (t+1) -> {(1,1),(1,2)}.
// Complex conjugate factors count toward the degrees.
std::vector<std::pair<int, int>> square_free_multiplicity(const Poly& p,
                                                          const Tolerances& tol = {});

}  // namespace apollonius
