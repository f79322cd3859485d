#include "apollonius/roots.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <limits>

#include "dd.hpp"

namespace apollonius {

namespace {

double sgn(double v) { return v > 0 ? 1.0 : (v < 0 ? -1.0 : 0.0); }

// max|c_i| * max(1,|t|)^deg, the natural magnitude of p near t
double value_scale(const Poly& p, double t) {
    const double m = std::max(1.0, std::abs(t));
    return p.max_abs_coeff() * std::pow(m, std::max(p.degree(), 0));
}

double ambient_zero(const Poly& p, double t) {
    return 512.0 * DBL_EPSILON * value_scale(p, t);
}

// power-of-two normalization keeps coefficients exact
Poly unit_normalized(const Poly& p) {
    const double m = p.max_abs_coeff();
    if (m == 0.0) return p;
    const double f = std::ldexp(1.0, -std::ilogb(m));
    Poly q = p;
    for (double& ci : q.c) ci *= f;
    return q;
}

double newton_polish(const Poly& p, const Poly& dp, double x, double lo, double hi,
                     const Tolerances& tol) {
    double best = x;
    double best_val = std::abs(p.eval_accurate(x));
    for (int it = 0; it < tol.max_iter; ++it) {
        const double f = p.eval_accurate(x);
        const double df = dp.eval(x);
        if (df == 0.0) break;
        const double step = f / df;
        x -= step;
        if (x < lo || x > hi) {
            x = std::clamp(x, lo, hi);
        }
        const double v = std::abs(p.eval_accurate(x));
        if (v < best_val) {
            best = x;
            best_val = v;
        }
        if (std::abs(step) <= tol.eps_root * std::max(1.0, std::abs(x))) break;
    }
    return best;
}

double solve_bracket(const Poly& p, const Poly& dp, double lo, double hi,
                     double flo, const Tolerances& tol) {
    // bisect to a short bracket, then let Newton finish
    const double slo = sgn(flo);
    for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        const double fm = p.eval_accurate(mid);
        if (fm == 0.0) return mid;
        if (sgn(fm) == slo) {
            lo = mid;
        } else {
            hi = mid;
        }
        if (hi - lo <= tol.eps_root * std::max(1.0, std::abs(mid))) break;
    }
    return newton_polish(p, dp, 0.5 * (lo + hi), lo, hi, tol);
}

// Distinct real root locations (no multiplicities) of p on [lo, hi].
// Sign changes between consecutive critical points find odd roots; a
// tangency test at each critical point finds even ones, with a local
// quadratic model covering pairs that are split too wide for the tangency
// test yet too narrow for the sign scan.
void locate_distinct(const Poly& p, double lo, double hi, const Tolerances& tol,
                     std::vector<double>& out) {
    const int n = p.degree();
    if (n <= 0) return;
    if (n == 1) {
        const double r = -p.c[0] / p.c[1];
        if (r >= lo && r <= hi) out.push_back(r);
        return;
    }

    const Poly dp = p.derivative();
    const Poly d2p = dp.derivative();

    std::vector<double> crit;
    locate_distinct(dp, lo, hi, tol, crit);

    std::vector<double> pts;
    pts.reserve(crit.size() + 2);
    pts.push_back(lo);
    for (double s : crit) {
        if (s > lo && s < hi) pts.push_back(s);
    }
    pts.push_back(hi);

    std::vector<double> found;
    auto push_if_new = [&](double r) {
        for (double q : found) {
            if (std::abs(q - r) <= 50.0 * tol.eps_root * std::max(1.0, std::abs(r))) {
                return;
            }
        }
        found.push_back(r);
    };

    std::vector<double> vals(pts.size());
    for (size_t i = 0; i < pts.size(); ++i) vals[i] = p.eval_accurate(pts[i]);

    for (size_t i = 0; i + 1 < pts.size(); ++i) {
        const double va = vals[i], vb = vals[i + 1];
        const double sa = std::abs(va) <= ambient_zero(p, pts[i]) ? 0.0 : sgn(va);
        const double sb = std::abs(vb) <= ambient_zero(p, pts[i + 1]) ? 0.0 : sgn(vb);
        if (sa * sb < 0) {
            push_if_new(solve_bracket(p, dp, pts[i], pts[i + 1], va, tol));
        }
    }

    for (double s : crit) {
        const double v = p.eval_accurate(s);
        const double av = std::abs(v);
        const double curv = std::abs(d2p.eval(s));
        const double em = tol.eps_mult * std::max(1.0, std::abs(s));
        const double tangent_tol = 0.25 * em * em * curv + ambient_zero(p, s);
        const double guard_tol = 25.0 * em * em * curv + ambient_zero(p, s);
        if (av <= tangent_tol) {
            bool near_existing = false;
            for (double q : found) {
                if (std::abs(q - s) <= em) near_existing = true;
            }
            if (!near_existing) found.push_back(s);
        } else if (av <= guard_tol && curv > 0 && sgn(v) != sgn(d2p.eval(s))) {
            // a just-resolved real pair straddling s
            const double dlt = std::sqrt(-2.0 * v / d2p.eval(s));
            for (double seed : {s - dlt, s + dlt}) {
                const double r = newton_polish(p, dp, seed, s - 4 * dlt, s + 4 * dlt, tol);
                if (std::abs(p.eval_accurate(r)) <= 8.0 * ambient_zero(p, r)) {
                    push_if_new(r);
                }
            }
        }
    }

    std::sort(found.begin(), found.end());
    out.insert(out.end(), found.begin(), found.end());
}

int multiplicity_at(const std::vector<Poly>& chain, double r, const Tolerances& tol) {
    const double eps = tol.eps_mult * std::max(1.0, std::abs(r));
    const int deg = chain.front().degree();
    int best_j = 1;
    double best_term = -1.0;
    double fact = 1.0;
    double epow = eps;
    for (int j = 1; j <= deg; ++j) {
        fact *= j;
        const double term = std::abs(chain[j].eval_accurate(r)) * epow / fact;
        if (term > best_term) {
            best_term = term;
            best_j = j;
        }
        epow *= eps;
    }
    return best_j;
}

}  // namespace

Poly Poly::from_roots(const std::vector<double>& roots) {
    Poly p(std::vector<double>{1.0});
    for (double r : roots) {
        std::vector<double> next(p.c.size() + 1, 0.0);
        for (size_t i = 0; i < p.c.size(); ++i) {
            next[i] += -r * p.c[i];
            next[i + 1] += p.c[i];
        }
        p.c = std::move(next);
    }
    return p;
}

int Poly::degree() const {
    for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) {
        if (c[i] != 0.0) return i;
    }
    return -1;
}

double Poly::eval(double t) const {
    double r = 0.0;
    for (size_t i = c.size(); i-- > 0;) r = r * t + c[i];
    return r;
}

double Poly::eval_accurate(double t) const {
    if (c.empty()) return 0.0;
    double r = c.back();
    double e = 0.0;
    for (size_t i = c.size() - 1; i-- > 0;) {
        const detail::dd pr = detail::two_prod(r, t);
        const detail::dd su = detail::two_sum(pr.hi, c[i]);
        r = su.hi;
        e = e * t + (pr.lo + su.lo);
    }
    return r + e;
}

Poly Poly::derivative() const {
    if (c.size() <= 1) return Poly(std::vector<double>{});
    std::vector<double> d(c.size() - 1);
    for (size_t i = 1; i < c.size(); ++i) d[i - 1] = c[i] * static_cast<double>(i);
    return Poly(std::move(d));
}

Poly Poly::trimmed(double rel_eps) const {
    const double m = max_abs_coeff();
    const double cut = rel_eps * m;
    int top = -1;
    for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) {
        if (std::abs(c[i]) > cut) {
            top = i;
            break;
        }
    }
    if (top < 0) return Poly(std::vector<double>{});
    return Poly(std::vector<double>(c.begin(), c.begin() + top + 1));
}

double Poly::max_abs_coeff() const {
    double m = 0.0;
    for (double ci : c) m = std::max(m, std::abs(ci));
    return m;
}

int RootSet::total_multiplicity() const {
    int s = 0;
    for (const auto& e : entries) s += e.multiplicity;
    return s;
}

std::vector<double> RootSet::roots() const {
    std::vector<double> r;
    r.reserve(entries.size());
    for (const auto& e : entries) r.push_back(e.root);
    return r;
}

RootSet real_roots(const Poly& p, std::optional<Interval> domain, const Tolerances& tol) {
    tol.validate();
    Poly q = p.trimmed(tol.eps_root);
    if (q.c.empty()) {
        throw Error(Errc::DegenerateZeroPolynomial,
                    "polynomial is numerically zero; roots are undefined");
    }
    RootSet result;
    const int deg = q.degree();
    if (deg == 0) return result;

    q = unit_normalized(q);

    double bound = 0.0;
    for (int i = 0; i < deg; ++i) bound = std::max(bound, std::abs(q.c[i]));
    bound = 2.0 + bound / std::abs(q.c[deg]);

    std::vector<double> candidates;
    locate_distinct(q, -bound, bound, tol, candidates);
    std::sort(candidates.begin(), candidates.end());

    // cluster nearly coincident locations, then classify each cluster once
    std::vector<Poly> chain;
    chain.push_back(q);
    for (int j = 0; j < deg; ++j) chain.push_back(chain.back().derivative());

    std::vector<RootEntry> entries;
    size_t i = 0;
    while (i < candidates.size()) {
        size_t j = i;
        while (j + 1 < candidates.size()) {
            const double gap_tol = tol.eps_mult *
                std::max({1.0, std::abs(candidates[j]), std::abs(candidates[j + 1])});
            if (candidates[j + 1] - candidates[j] <= gap_tol) {
                ++j;
            } else {
                break;
            }
        }
        double rep = 0.0;
        for (size_t k = i; k <= j; ++k) rep += candidates[k];
        rep /= static_cast<double>(j - i + 1);

        int m = multiplicity_at(chain, rep, tol);
        m = std::min(m, deg);
        if (m >= 2) {
            // the (m-1)-th derivative has a simple root at the cluster center
            const double em = tol.eps_mult * std::max(1.0, std::abs(rep));
            const double polished = newton_polish(chain[m - 1], chain[m], rep,
                                                  rep - em, rep + em, tol);
            if (std::abs(polished - rep) <= em) rep = polished;
        }
        entries.push_back({rep, m, rep, rep});
        i = j + 1;
    }

    // keep the total root count honest for the degree
    int total = 0;
    for (const auto& e : entries) total += e.multiplicity;
    while (total > deg) {
        auto worst = std::max_element(entries.begin(), entries.end(),
                                      [](const RootEntry& a, const RootEntry& b) {
                                          return a.multiplicity < b.multiplicity;
                                      });
        worst->multiplicity -= 1;
        total -= 1;
    }

    // isolation intervals: tolerance-sized, clipped to neighbor midpoints
    for (size_t k = 0; k < entries.size(); ++k) {
        const double r = entries[k].root;
        double radius = std::max(2.0 * tol.eps_mult * std::max(1.0, std::abs(r)),
                                 100.0 * tol.eps_root * std::max(1.0, std::abs(r)));
        double lo = r - radius, hi = r + radius;
        if (k > 0) lo = std::max(lo, 0.5 * (entries[k - 1].root + r));
        if (k + 1 < entries.size()) hi = std::min(hi, 0.5 * (entries[k + 1].root + r));
        entries[k].lo = lo;
        entries[k].hi = hi;
    }

    if (domain) {
        std::vector<RootEntry> kept;
        for (auto& e : entries) {
            const double slack = tol.eps_mult * std::max({1.0, std::abs(domain->lo),
                                                          std::abs(domain->hi)});
            if (e.root >= domain->lo - slack && e.root <= domain->hi + slack) {
                kept.push_back(e);
            }
        }
        entries = std::move(kept);
    }

    result.entries = std::move(entries);
    return result;
}

namespace {

Poly poly_sub(const Poly& u, const Poly& v) {
    std::vector<double> r(std::max(u.c.size(), v.c.size()), 0.0);
    for (size_t i = 0; i < u.c.size(); ++i) r[i] += u.c[i];
    for (size_t i = 0; i < v.c.size(); ++i) r[i] -= v.c[i];
    return Poly(std::move(r));
}

// quotient of u / v, remainder discarded
Poly poly_div(const Poly& u, const Poly& v) {
    const int du = u.degree(), dv = v.degree();
    if (dv < 0 || du < dv) return Poly(std::vector<double>{});
    std::vector<double> rem(u.c.begin(), u.c.begin() + du + 1);
    std::vector<double> quot(du - dv + 1, 0.0);
    const double lead = v.c[dv];
    for (int k = du - dv; k >= 0; --k) {
        const double f = rem[k + dv] / lead;
        quot[k] = f;
        for (int i = 0; i <= dv; ++i) rem[k + i] -= f * v.c[i];
    }
    return Poly(std::move(quot));
}

// Euclidean gcd with relative truncation of vanishing remainders
Poly num_gcd(Poly u, Poly v, double trunc) {
    u = unit_normalized(u.trimmed(trunc));
    v = unit_normalized(v.trimmed(trunc));
    if (v.degree() < 0) return u;
    if (u.degree() < v.degree()) std::swap(u, v);
    for (int it = 0; it < 64; ++it) {
        const int du = u.degree(), dv = v.degree();
        if (dv < 0) return u;
        // remainder of u mod v
        std::vector<double> rem(u.c.begin(), u.c.begin() + du + 1);
        const double lead = v.c[dv];
        for (int k = du - dv; k >= 0; --k) {
            const double f = rem[k + dv] / lead;
            for (int i = 0; i <= dv; ++i) rem[k + i] -= f * v.c[i];
        }
        rem.resize(dv > 0 ? dv : 1);
        Poly r(std::move(rem));
        if (r.max_abs_coeff() <= trunc) {
            return v;
        }
        u = v;
        v = unit_normalized(r.trimmed(trunc));
    }
    return v;
}

}  // namespace

std::vector<std::pair<int, int>> square_free_multiplicity(const Poly& p,
                                                          const Tolerances& tol) {
    tol.validate();
    Poly q = p.trimmed(tol.eps_root);
    if (q.c.empty()) {
        throw Error(Errc::DegenerateZeroPolynomial,
                    "polynomial is numerically zero; factor structure undefined");
    }
    std::vector<std::pair<int, int>> sig;
    if (q.degree() == 0) return sig;
    q = unit_normalized(q);

    const Poly dq = q.derivative();
    const Poly g = num_gcd(q, dq, tol.eps_mult);
    if (g.degree() <= 0) {
        sig.emplace_back(q.degree(), 1);
        return sig;
    }

    // Yun's iteration on the numeric gcd chain
    Poly c = poly_div(q, g);
    Poly d = poly_sub(poly_div(dq, g), c.derivative());
    int mult = 1;
    for (int guard = 0; guard <= q.degree() && c.degree() > 0; ++guard) {
        const Poly a = num_gcd(c, d, tol.eps_mult);
        if (a.degree() > 0) {
            sig.emplace_back(a.degree(), mult);
            c = poly_div(c, a);
            d = poly_div(d, a);
        }
        d = poly_sub(d, c.derivative());
        ++mult;
    }
    return sig;
}

}  // namespace apollonius
