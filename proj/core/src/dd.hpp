#pragma once

#include <cmath>
#include <vector>

// Minimal double-double arithmetic used to assemble polynomial coefficients
// whose rounding would otherwise split double roots beyond the clustering
// tolerance.  Only the operations needed for convolution and compensated
// evaluation are provided.

namespace apollonius::detail {

struct dd {
    double hi = 0.0;
    double lo = 0.0;
};

inline dd two_sum(double a, double b) {
    const double s = a + b;
    const double bb = s - a;
    const double err = (a - (s - bb)) + (b - bb);
    return {s, err};
}

inline dd two_prod(double a, double b) {
    const double p = a * b;
    const double err = std::fma(a, b, -p);
    return {p, err};
}

inline dd dd_add(dd a, dd b) {
    dd s = two_sum(a.hi, b.hi);
    s.lo += a.lo + b.lo;
    const dd r = two_sum(s.hi, s.lo);
    return r;
}

inline dd dd_add(dd a, double b) { return dd_add(a, dd{b, 0.0}); }

inline dd dd_mul(dd a, dd b) {
    dd p = two_prod(a.hi, b.hi);
    p.lo += a.hi * b.lo + a.lo * b.hi;
    const dd r = two_sum(p.hi, p.lo);
    return r;
}

inline dd dd_mul(dd a, double b) { return dd_mul(a, dd{b, 0.0}); }

inline dd dd_neg(dd a) { return {-a.hi, -a.lo}; }

inline double dd_value(dd a) { return a.hi + a.lo; }

using dd_poly = std::vector<dd>;

inline dd_poly dd_conv(const dd_poly& p, const dd_poly& q) {
    dd_poly r(p.size() + q.size() - 1);
    for (size_t i = 0; i < p.size(); ++i) {
        for (size_t j = 0; j < q.size(); ++j) {
            r[i + j] = dd_add(r[i + j], dd_mul(p[i], q[j]));
        }
    }
    return r;
}

inline dd_poly dd_scale(dd_poly p, dd s) {
    for (auto& c : p) c = dd_mul(c, s);
    return p;
}

inline dd_poly dd_axpy(dd_poly acc, const dd_poly& p) {
    if (acc.size() < p.size()) acc.resize(p.size());
    for (size_t i = 0; i < p.size(); ++i) acc[i] = dd_add(acc[i], p[i]);
    return acc;
}

}  // namespace apollonius::detail
