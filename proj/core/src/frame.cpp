#include "frame.hpp"

#include <cfloat>
#include <cmath>
#include <limits>

#include "dd.hpp"

namespace apollonius::detail {

namespace {

// (w + t)^2 as a dd quadratic in t
dd_poly shifted_square(double w) {
    return {two_prod(w, w), {2.0 * w, 0.0}, {1.0, 0.0}};
}

Poly round_poly(const dd_poly& p) {
    std::vector<double> c(p.size());
    for (size_t i = 0; i < p.size(); ++i) c[i] = dd_value(p[i]);
    return Poly(std::move(c));
}

}  // namespace

Frame make_frame(const Ellipsoid3& e, Point3 A) {
    Frame f;
    f.a = e.a;
    const double b = e.b / e.a, c = e.c / e.a;
    f.b2 = b * b;
    f.c2 = c * c;
    f.A = {A.x / e.a, A.y / e.a, A.z / e.a};
    return f;
}

Poly normal_sextic_normalized(const Frame& f) {
    const dd_poly qa = shifted_square(1.0);
    const dd_poly qb = shifted_square(f.b2);
    const dd_poly qc = shifted_square(f.c2);

    const dd_poly ab = dd_conv(qa, qb);
    const dd_poly bc = dd_conv(qb, qc);
    const dd_poly ac = dd_conv(qa, qc);

    dd_poly s = dd_scale(bc, two_prod(f.A.x, f.A.x));
    s = dd_axpy(std::move(s), dd_scale(ac, dd_mul(two_prod(f.A.y, f.A.y), f.b2)));
    s = dd_axpy(std::move(s), dd_scale(ab, dd_mul(two_prod(f.A.z, f.A.z), f.c2)));
    s = dd_axpy(std::move(s), dd_scale(dd_conv(ab, qc), dd{-1.0, 0.0}));
    return round_poly(s);
}

Poly normal_quartic_normalized(double p2, double q2, double U, double V) {
    const dd_poly qp = shifted_square(p2);
    const dd_poly qq = shifted_square(q2);

    dd_poly s = dd_scale(qq, dd_mul(two_prod(U, U), p2));
    s = dd_axpy(std::move(s), dd_scale(qp, dd_mul(two_prod(V, V), q2)));
    s = dd_axpy(std::move(s), dd_scale(dd_conv(qp, qq), dd{-1.0, 0.0}));
    return round_poly(s);
}

double confocal_residual(const Frame& f, double t_hat) {
    const double u = f.A.x / (1.0 + t_hat);
    const double bb = std::sqrt(f.b2), cc = std::sqrt(f.c2);
    const double v = bb * f.A.y / (f.b2 + t_hat);
    const double w = cc * f.A.z / (f.c2 + t_hat);
    return u * u + v * v + w * w - 1.0;
}

std::vector<TangencyEvent> tangency_events(const Poly& p, const Tolerances& tol) {
    std::vector<TangencyEvent> events;
    const Poly dp = p.derivative();
    if (dp.degree() < 1) return events;
    const Poly d2p = dp.derivative();
    const RootSet crit = real_roots(dp, {}, tol);
    for (const RootEntry& s : crit.entries) {
        // the same ambient evaluation noise model the root finder uses; a
        // residual below it certifies a collision at working precision, and
        // without the subtraction the square root would turn that noise into
        // a phantom separation of ~1e-7
        const double noise = 512.0 * DBL_EPSILON * p.max_abs_coeff() *
                             std::pow(std::max(1.0, std::abs(s.root)),
                                      std::max(p.degree(), 0));
        const double v = std::abs(p.eval_accurate(s.root));
        const double signal = v > noise ? v - noise : 0.0;
        const double curv = std::abs(d2p.eval(s.root));
        if (signal == 0.0) {
            events.push_back({s.root, 0.0, s.multiplicity});
        } else if (curv > 0.0) {
            events.push_back(
                {s.root, 2.0 * std::sqrt(2.0 * signal / curv), s.multiplicity});
        }
    }
    return events;
}

std::vector<TangencyEvent> membership_events(const Frame& f, const Poly& p,
                                             const Tolerances& tol) {
    std::vector<TangencyEvent> events = tangency_events(p, tol);
    const double ax2[3] = {1.0, f.b2, f.c2};
    const double co[3] = {f.A.x, f.A.y, f.A.z};
    for (int j = 0; j < 3; ++j) {
        if (std::abs(co[j]) > 1e-3 * std::sqrt(ax2[j])) continue;
        // Near the coordinate plane the sextic factors as
        // (ax2[j]+t)^2 q(t) + ax2[j] co[j]^2 r(t) and the mirror foot pair
        // shares one parameter, so its critical point sits at the pole with a
        // sub-noise residual whether or not the feet coincide in space.  That
        // event is the simple critical point nearest the pole; re-score it by
        // the geometric gap of the pair.  A multiple critical point there is
        // a genuine confluence with a collision and keeps its residual score.
        double sigma = 1.0;
        for (int k = 0; k < 3; ++k) {
            if (k == j) continue;
            const double w = std::sqrt(ax2[k]) * co[k] / (ax2[k] - ax2[j]);
            sigma -= w * w;
        }
        TangencyEvent* nearest = nullptr;
        double dist = 1e-4 * ax2[j];
        for (TangencyEvent& ev : events) {
            const double d = std::abs(ev.t_hat + ax2[j]);
            if (d <= dist) {
                dist = d;
                nearest = &ev;
            }
        }
        if (nearest && nearest->crit_multiplicity == 1) {
            nearest->separation = 2.0 * std::sqrt(std::abs(sigma) * ax2[j]);
        }
    }
    return events;
}

double margin_from(const RootSet& rs, const std::vector<TangencyEvent>& events) {
    double margin = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i + 1 < rs.entries.size(); ++i) {
        margin = std::min(margin, rs.entries[i + 1].root - rs.entries[i].root);
    }
    for (const auto& ev : events) {
        margin = std::min(margin, ev.separation);
    }
    return margin;
}

}  // namespace apollonius::detail
