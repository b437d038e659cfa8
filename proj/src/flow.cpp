#include "torbraid/flow.hpp"

#include <algorithm>
#include <cmath>

#include "torbraid/errors.hpp"

namespace torbraid {

namespace {

// state: r, z, t, M11, M21, M12, M22
constexpr int kDim = 7;
using State = std::array<double, kDim>;

struct Rhs {
    const CylField& field;
    const TraceOptions& opt;

    State operator()(double theta, const State& y) const {
        const double r = y[0], z = y[1];
        const FieldSample f = field.sample(r, theta, z);
        if (f.B.y < opt.swirl_min)
            throw SwirlVanishedOnPath("B^theta dipped below threshold while tracing");
        const double inv = 1.0 / f.B.y;
        const double fr = f.B.x * inv, fz = f.B.z * inv;
        // d(B^r/B^t)/d(r,z) etc. by the quotient rule
        const double a11 = (f.dB[0][0] - fr * f.dB[1][0]) * inv;
        const double a12 = (f.dB[0][2] - fr * f.dB[1][2]) * inv;
        const double a21 = (f.dB[2][0] - fz * f.dB[1][0]) * inv;
        const double a22 = (f.dB[2][2] - fz * f.dB[1][2]) * inv;
        State dy;
        dy[0] = fr;
        dy[1] = fz;
        dy[2] = inv;
        dy[3] = a11 * y[3] + a12 * y[4];  // M = [[y3, y5], [y4, y6]]
        dy[4] = a21 * y[3] + a22 * y[4];
        dy[5] = a11 * y[5] + a12 * y[6];
        dy[6] = a21 * y[5] + a22 * y[6];
        return dy;
    }
};

// Dormand-Prince 5(4) coefficients
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

}  // namespace

TraceResult trace_theta(const CylField& field, const Vec2& start, double delta_theta,
                        const TraceOptions& opt) {
    TraceResult out;
    State y{start.x, start.y, 0.0, 1.0, 0.0, 0.0, 1.0};
    if (delta_theta == 0.0) {
        out.end = start;
        out.monodromy = Mat2::identity();
        return out;
    }
    const Rhs rhs{field, opt};
    const double dir = (delta_theta > 0) ? 1.0 : -1.0;
    double th = 0.0;
    double h = dir * std::min(0.05, std::fabs(delta_theta));
    State k1 = rhs(th, y);
    long steps = 0;
    double max_err = 0.0;

    auto stage = [&](const State& base, std::initializer_list<std::pair<double, const State*>> terms) {
        State s = base;
        for (const auto& [a, k] : terms)
            for (int i = 0; i < kDim; ++i) s[i] += h * a * (*k)[i];
        return s;
    };

    while (dir * (delta_theta - th) > 0.0) {
        if (++steps > opt.max_steps) throw StepLimitExceeded("integrator exceeded the step budget");
        if (dir * (th + h - delta_theta) > 0.0) h = delta_theta - th;

        const State k2 = rhs(th + c2 * h, stage(y, {{a21, &k1}}));
        const State k3 = rhs(th + c3 * h, stage(y, {{a31, &k1}, {a32, &k2}}));
        const State k4 = rhs(th + c4 * h, stage(y, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
        const State k5 = rhs(th + c5 * h, stage(y, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
        const State k6 =
            rhs(th + h, stage(y, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
        const State y1 = stage(y, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
        const State k7 = rhs(th + h, y1);

        double werr = 0.0, raw = 0.0;
        for (int i = 0; i < kDim; ++i) {
            const double ei = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                                   e7 * k7[i]);
            const double sc = opt.abs_tol + opt.rel_tol * std::max(std::fabs(y[i]), std::fabs(y1[i]));
            werr += (ei / sc) * (ei / sc);
            raw += ei * ei;
        }
        werr = std::sqrt(werr / kDim);

        if (werr <= 1.0) {
            th += h;
            y = y1;
            k1 = k7;
            max_err = std::max(max_err, std::sqrt(raw / kDim));
            if (opt.domain) {
                const Vec2 p{y[0], y[1]};
                const double sd = opt.domain->signed_distance(p);
                if (sd > opt.leave_tol)
                    throw LeftDomain("trajectory left the section beyond tolerance");
                if (sd > 0.0 && sd <= opt.graze_snap) {
                    const double s = opt.domain->project_boundary(p);
                    const Vec2 q = opt.domain->curve().point(s);
                    y[0] = q.x;
                    y[1] = q.y;
                }
            }
        }
        const double fac = std::clamp(0.9 * std::pow(std::max(werr, 1e-12), -0.2), 0.2, 5.0);
        h *= fac;
        if (std::fabs(h) < 1e-14 * std::max(1.0, std::fabs(th)))
            throw StepLimitExceeded("step size underflow");
    }
    out.end = {y[0], y[1]};
    out.monodromy = Mat2{y[3], y[5], y[4], y[6]};
    out.tau = y[2];
    out.est_error = max_err;
    return out;
}

PoincareResult poincare(const CylField& field, const Domain& dom, const Vec2& start, int n,
                        const TraceOptions& opt_in) {
    TraceOptions opt = opt_in;
    opt.domain = &dom;
    PoincareResult out;
    out.end = start;
    out.jacobian = Mat2::identity();
    for (int k = 0; k < n; ++k) {
        const TraceResult tr = trace_theta(field, out.end, kTwoPi, opt);
        out.end = tr.end;
        out.jacobian = tr.monodromy * out.jacobian;
        out.total_time += tr.tau;
    }
    return out;
}

}  // namespace torbraid
