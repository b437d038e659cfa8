#include "torbraid/field.hpp"

#include <cmath>

#include "torbraid/errors.hpp"

namespace torbraid {

double divergence(const FieldSample& f, double r) {
    return f.B.x / r + f.dB[0][0] + f.dB[1][1] + f.dB[2][2];
}

Vec3 curl(const FieldSample& f, double r) {
    // (curl B)^r = (1/r) d_theta B^z - r d_z B^theta
    // (curl B)^theta = (d_z B^r - d_r B^z)/r
    // (curl B)^z = 2 B^theta + r d_r B^theta - (1/r) d_theta B^r
    return {f.dB[2][1] / r - r * f.dB[1][2],
            (f.dB[0][2] - f.dB[2][0]) / r,
            2.0 * f.B.y + r * f.dB[1][0] - f.dB[0][1] / r};
}

double metric_dot(const Vec3& x, const Vec3& y, double r) {
    return x.x * y.x + r * r * x.y * y.y + x.z * y.z;
}

double metric_norm(const Vec3& x, double r) { return std::sqrt(metric_dot(x, x, r)); }

Vec3 cross(const Vec3& x, const Vec3& y, double r) {
    // physical components (X^r, rX^theta, X^z); cross there, back to holonomic
    return {r * (x.y * y.z - x.z * y.y),
            (x.z * y.x - x.x * y.z) / r,
            r * (x.x * y.y - x.y * y.x)};
}

Vec3 lie_bracket(const CylField& X, const CylField& Y, double r, double theta, double z) {
    const FieldSample fx = X.sample(r, theta, z);
    const FieldSample fy = Y.sample(r, theta, z);
    Vec3 out;
    const double vx[3] = {fx.B.x, fx.B.y, fx.B.z};
    const double vy[3] = {fy.B.x, fy.B.y, fy.B.z};
    double res[3];
    for (int i = 0; i < 3; ++i) {
        double acc = 0.0;
        for (int j = 0; j < 3; ++j) acc += vx[j] * fy.dB[i][j] - vy[j] * fx.dB[i][j];
        res[i] = acc;
    }
    out = {res[0], res[1], res[2]};
    return out;
}

namespace {

// value and first derivatives of the cross product Z = X x Y in holonomic
// components, from the two fields' samples (product rule; r factors explicit)
void cross_with_derivatives(const FieldSample& fx, const FieldSample& fy, double r, FieldSample& out) {
    const Vec3& X = fx.B;
    const Vec3& Y = fy.B;
    // W1 = X^t Y^z - X^z Y^t, W2 = X^z Y^r - X^r Y^z, W3 = X^r Y^t - X^t Y^r
    const double W1 = X.y * Y.z - X.z * Y.y;
    const double W2 = X.z * Y.x - X.x * Y.z;
    const double W3 = X.x * Y.y - X.y * Y.x;
    double dW1[3], dW2[3], dW3[3];
    for (int j = 0; j < 3; ++j) {
        dW1[j] = fx.dB[1][j] * Y.z + X.y * fy.dB[2][j] - fx.dB[2][j] * Y.y - X.z * fy.dB[1][j];
        dW2[j] = fx.dB[2][j] * Y.x + X.z * fy.dB[0][j] - fx.dB[0][j] * Y.z - X.x * fy.dB[2][j];
        dW3[j] = fx.dB[0][j] * Y.y + X.x * fy.dB[1][j] - fx.dB[1][j] * Y.x - X.y * fy.dB[0][j];
    }
    out.B = {r * W1, W2 / r, r * W3};
    for (int j = 0; j < 3; ++j) {
        out.dB[0][j] = r * dW1[j];
        out.dB[1][j] = dW2[j] / r;
        out.dB[2][j] = r * dW3[j];
    }
    out.dB[0][0] += W1;
    out.dB[1][0] -= W2 / (r * r);
    out.dB[2][0] += W3;
}

}  // namespace

double identity_residual(const CylField& X, const CylField& Y, double r, double theta, double z) {
    const FieldSample fx = X.sample(r, theta, z);
    const FieldSample fy = Y.sample(r, theta, z);
    FieldSample fz;
    cross_with_derivatives(fx, fy, r, fz);
    const Vec3 lhs = curl(fz, r);
    const double divx = divergence(fx, r), divy = divergence(fy, r);
    const Vec3 yx = lie_bracket(Y, X, r, theta, z);
    const Vec3 rhs = fx.B * divy - fy.B * divx + yx;
    return metric_norm(lhs - rhs, r);
}

// ---- vector potential ----

namespace {

struct Poly2 {  // value with first and second derivatives in (r,z)
    double v = 0, vr = 0, vz = 0, vrr = 0, vrz = 0, vzz = 0;
};

Poly2 term_profile(const PotentialTerm& t, double r, double z) {
    const double x = r - t.r0, y = z - t.z0;
    auto ipow = [](double b, int p) {
        double acc = 1.0;
        for (int i = 0; i < p; ++i) acc *= b;
        return acc;
    };
    const double u = ipow(x, t.pr);
    const double up = t.pr > 0 ? t.pr * ipow(x, t.pr - 1) : 0.0;
    const double upp = t.pr > 1 ? t.pr * (t.pr - 1) * ipow(x, t.pr - 2) : 0.0;
    const double v = ipow(y, t.pz);
    const double vp = t.pz > 0 ? t.pz * ipow(y, t.pz - 1) : 0.0;
    const double vpp = t.pz > 1 ? t.pz * (t.pz - 1) * ipow(y, t.pz - 2) : 0.0;
    const double w = 1.0 - (x / t.a) * (x / t.a) - (y / t.b) * (y / t.b);
    const double wr = -2.0 * x / (t.a * t.a), wz = -2.0 * y / (t.b * t.b);
    const double wrr = -2.0 / (t.a * t.a), wzz = -2.0 / (t.b * t.b);
    const int p = t.pw;
    const double wp = ipow(w, p);
    const double wp1 = p > 0 ? p * ipow(w, p - 1) : 0.0;
    const double wp2 = p > 1 ? p * (p - 1) * ipow(w, p - 2) : 0.0;
    Poly2 o;
    o.v = u * v * wp;
    o.vr = up * v * wp + u * v * wp1 * wr;
    o.vz = u * vp * wp + u * v * wp1 * wz;
    o.vrr = upp * v * wp + 2.0 * up * v * wp1 * wr + u * v * (wp2 * wr * wr + wp1 * wrr);
    o.vzz = u * vpp * wp + 2.0 * u * vp * wp1 * wz + u * v * (wp2 * wz * wz + wp1 * wzz);
    o.vrz = up * vp * wp + up * v * wp1 * wz + u * vp * wp1 * wr + u * v * wp2 * wr * wz;
    return o;
}

}  // namespace

PotentialSample PolynomialPotential::sample(double r, double theta, double z) const {
    PotentialSample s{};
    for (const auto& t : terms_) {
        const Poly2 g = term_profile(t, r, z);
        const double T = t.use_sin ? std::sin(t.m * theta) : std::cos(t.m * theta);
        const double Tp = t.use_sin ? t.m * std::cos(t.m * theta) : -t.m * std::sin(t.m * theta);
        const double Tpp = -static_cast<double>(t.m) * t.m * T;
        const int i = t.component;
        const double a = t.amplitude;
        auto& A = (i == 0 ? s.A.x : (i == 1 ? s.A.y : s.A.z));
        A += a * g.v * T;
        s.dA[i][0] += a * g.vr * T;
        s.dA[i][1] += a * g.v * Tp;
        s.dA[i][2] += a * g.vz * T;
        s.d2A[i][0][0] += a * g.vrr * T;
        s.d2A[i][0][1] += a * g.vr * Tp;
        s.d2A[i][0][2] += a * g.vrz * T;
        s.d2A[i][1][0] += a * g.vr * Tp;
        s.d2A[i][1][1] += a * g.v * Tpp;
        s.d2A[i][1][2] += a * g.vz * Tp;
        s.d2A[i][2][0] += a * g.vrz * T;
        s.d2A[i][2][1] += a * g.vz * Tp;
        s.d2A[i][2][2] += a * g.vzz * T;
    }
    return s;
}

namespace {

class VectorPotentialField : public CylField {
  public:
    explicit VectorPotentialField(std::shared_ptr<const Potential> A) : A_(std::move(A)) {}

    Vec3 components(double r, double theta, double z) const override {
        const PotentialSample a = A_->sample(r, theta, z);
        return {a.dA[2][1] / r - r * a.dA[1][2],
                (a.dA[0][2] - a.dA[2][0]) / r,
                2.0 * a.A.y + r * a.dA[1][0] - a.dA[0][1] / r};
    }

    FieldSample sample(double r, double theta, double z) const override {
        const PotentialSample a = A_->sample(r, theta, z);
        FieldSample f;
        f.B = {a.dA[2][1] / r - r * a.dA[1][2],
               (a.dA[0][2] - a.dA[2][0]) / r,
               2.0 * a.A.y + r * a.dA[1][0] - a.dA[0][1] / r};
        // B^r = (1/r) A^z_t - r A^t_z
        f.dB[0][0] = -a.dA[2][1] / (r * r) + a.d2A[2][1][0] / r - a.dA[1][2] - r * a.d2A[1][2][0];
        f.dB[0][1] = a.d2A[2][1][1] / r - r * a.d2A[1][2][1];
        f.dB[0][2] = a.d2A[2][1][2] / r - r * a.d2A[1][2][2];
        // B^t = (A^r_z - A^z_r)/r
        f.dB[1][0] = (a.d2A[0][2][0] - a.d2A[2][0][0]) / r - (a.dA[0][2] - a.dA[2][0]) / (r * r);
        f.dB[1][1] = (a.d2A[0][2][1] - a.d2A[2][0][1]) / r;
        f.dB[1][2] = (a.d2A[0][2][2] - a.d2A[2][0][2]) / r;
        // B^z = 2 A^t + r A^t_r - (1/r) A^r_t
        f.dB[2][0] = 3.0 * a.dA[1][0] + r * a.d2A[1][0][0] + a.dA[0][1] / (r * r) - a.d2A[0][1][0] / r;
        f.dB[2][1] = 2.0 * a.dA[1][1] + r * a.d2A[1][0][1] - a.d2A[0][1][1] / r;
        f.dB[2][2] = 2.0 * a.dA[1][2] + r * a.d2A[1][0][2] - a.d2A[0][1][2] / r;
        return f;
    }

    std::string provenance() const override { return "vector-potential"; }

  private:
    std::shared_ptr<const Potential> A_;
};

class ClosedFormField : public CylField {
  public:
    using SampleFn = std::function<FieldSample(double, double, double)>;
    explicit ClosedFormField(SampleFn fn) : fn_(std::move(fn)) {}
    Vec3 components(double r, double theta, double z) const override { return fn_(r, theta, z).B; }
    FieldSample sample(double r, double theta, double z) const override { return fn_(r, theta, z); }

  private:
    SampleFn fn_;
};

}  // namespace

FieldPtr from_vector_potential(std::shared_ptr<const Potential> A) {
    return std::make_shared<VectorPotentialField>(std::move(A));
}

FieldPtr make_dtheta_field() {
    return std::make_shared<ClosedFormField>([](double, double, double) {
        FieldSample f;
        f.B = {0.0, 1.0, 0.0};
        return f;
    });
}

FieldPtr make_homega_field() {
    return std::make_shared<ClosedFormField>([](double r, double, double) {
        FieldSample f;
        f.B = {0.0, 1.0 / (r * r), 0.0};
        f.dB[1][0] = -2.0 / (r * r * r);
        return f;
    });
}

FieldPtr make_ez_field() {
    return std::make_shared<ClosedFormField>([](double, double, double) {
        FieldSample f;
        f.B = {0.0, 0.0, 1.0};
        return f;
    });
}

FieldPtr make_swirl_profile_field(std::vector<double> c) {
    return std::make_shared<ClosedFormField>([c](double r, double, double) {
        FieldSample f;
        double v = 0.0, dv = 0.0, p = 1.0;
        for (std::size_t k = 0; k < c.size(); ++k) {
            v += c[k] * p;
            if (k + 1 < c.size()) dv += (k + 1) * c[k + 1] * p;
            p *= r;
        }
        f.B = {0.0, v, 0.0};
        f.dB[1][0] = dv;
        return f;
    });
}

Vec3 PsiFixtureField::components(double r, double, double z) const {
    const double x = r - R0_;
    return {z / r, q0_ * (1.0 + q1_ * (x * x + z * z)), -x / r};
}

FieldSample PsiFixtureField::sample(double r, double theta, double z) const {
    FieldSample f;
    f.B = components(r, theta, z);
    const double x = r - R0_;
    f.dB[0][0] = -z / (r * r);
    f.dB[0][2] = 1.0 / r;
    f.dB[1][0] = 2.0 * q0_ * q1_ * x;
    f.dB[1][2] = 2.0 * q0_ * q1_ * z;
    f.dB[2][0] = -R0_ / (r * r);
    f.dB[2][2] = 0.0;
    return f;
}

FieldPtr make_psi_fixture(double R0, double q0, double q1) {
    return std::make_shared<PsiFixtureField>(R0, q0, q1);
}

FieldPtr make_perturbed_psi_fixture(double R0, double q0, double q1, double eps, int m) {
    PotentialTerm t;
    t.component = 1;
    t.amplitude = eps;
    t.pw = 4;
    t.m = m;
    t.r0 = R0;
    t.z0 = 0.0;
    t.a = 1.0;
    t.b = 1.0;
    auto pert = from_vector_potential(std::make_shared<PolynomialPotential>(std::vector<PotentialTerm>{t}));
    return make_sum_field(make_psi_fixture(R0, q0, q1), pert);
}

namespace {

class ScaledField : public CylField {
  public:
    ScaledField(FieldPtr base, std::shared_ptr<const ScalarField> g) : base_(std::move(base)), g_(std::move(g)) {}
    Vec3 components(double r, double theta, double z) const override {
        return base_->components(r, theta, z) * g_->value(r, theta, z);
    }
    FieldSample sample(double r, double theta, double z) const override {
        const FieldSample f = base_->sample(r, theta, z);
        const double g = g_->value(r, theta, z);
        const Vec3 dg = g_->gradient(r, theta, z);
        FieldSample out;
        out.B = f.B * g;
        const double b[3] = {f.B.x, f.B.y, f.B.z};
        const double dgv[3] = {dg.x, dg.y, dg.z};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) out.dB[i][j] = g * f.dB[i][j] + dgv[j] * b[i];
        return out;
    }
    std::string provenance() const override { return base_->provenance(); }

  private:
    FieldPtr base_;
    std::shared_ptr<const ScalarField> g_;
};

class ConstScalar : public ScalarField {
  public:
    explicit ConstScalar(double c) : c_(c) {}
    double value(double, double, double) const override { return c_; }
    Vec3 gradient(double, double, double) const override { return {0, 0, 0}; }

  private:
    double c_;
};

class SumField : public CylField {
  public:
    SumField(FieldPtr a, FieldPtr b) : a_(std::move(a)), b_(std::move(b)) {}
    Vec3 components(double r, double theta, double z) const override {
        return a_->components(r, theta, z) + b_->components(r, theta, z);
    }
    FieldSample sample(double r, double theta, double z) const override {
        const FieldSample fa = a_->sample(r, theta, z);
        const FieldSample fb = b_->sample(r, theta, z);
        FieldSample out;
        out.B = fa.B + fb.B;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) out.dB[i][j] = fa.dB[i][j] + fb.dB[i][j];
        return out;
    }
    std::string provenance() const override { return a_->provenance(); }

  private:
    FieldPtr a_, b_;
};

}  // namespace

FieldPtr make_scaled_field(FieldPtr base, std::shared_ptr<const ScalarField> g) {
    return std::make_shared<ScaledField>(std::move(base), std::move(g));
}

FieldPtr make_constant_scaled_field(FieldPtr base, double factor) {
    return std::make_shared<ScaledField>(std::move(base), std::make_shared<ConstScalar>(factor));
}

FieldPtr make_sum_field(FieldPtr a, FieldPtr b) {
    return std::make_shared<SumField>(std::move(a), std::move(b));
}

FieldSample FiniteDiffField::sample(double r, double theta, double z) const {
    FieldSample f;
    f.B = fn_(r, theta, z);
    const double h = h_;
    auto at = [&](double dr, double dt, double dz) { return fn_(r + dr, theta + dt, z + dz); };
    for (int j = 0; j < 3; ++j) {
        const double dr = (j == 0) ? h : 0.0, dt = (j == 1) ? h : 0.0, dz = (j == 2) ? h : 0.0;
        const Vec3 m2 = at(-2 * dr, -2 * dt, -2 * dz), m1 = at(-dr, -dt, -dz);
        const Vec3 p1 = at(dr, dt, dz), p2 = at(2 * dr, 2 * dt, 2 * dz);
        const Vec3 d = (1.0 / (12.0 * h)) * (m2 - p2 + 8.0 * (p1 - m1));
        f.dB[0][j] = d.x;
        f.dB[1][j] = d.y;
        f.dB[2][j] = d.z;
    }
    return f;
}

BraidReport check_braided(const CylField& field, const Domain& dom, int grid,
                          double flux_tol, double div_tol) {
    BraidReport rep;
    rep.grid = grid;
    rep.flux_tol = flux_tol;
    rep.div_tol = div_tol;
    rep.swirl_tol = 0.0;
    double min_swirl = 1e300, max_flux = 0.0, max_div = 0.0;
    for (int i = 0; i < grid; ++i) {
        const double rho = static_cast<double>(i) / (grid - 1);
        for (int j = 0; j < grid; ++j) {
            const double s = kTwoPi * j / grid;
            const Vec2 p = dom.from_disk(rho, s);
            for (int k = 0; k < grid; ++k) {
                const double theta = kTwoPi * k / grid;
                const FieldSample f = field.sample(p.x, theta, p.y);
                min_swirl = std::min(min_swirl, f.B.y);
                max_div = std::max(max_div, std::fabs(divergence(f, p.x)));
                if (i == grid - 1) {
                    const BoundaryData bd = dom.boundary_data(s);
                    max_flux = std::max(max_flux, std::fabs(f.B.x * bd.normal.x + f.B.z * bd.normal.y));
                }
            }
        }
    }
    rep.min_swirl = min_swirl;
    rep.max_boundary_flux = max_flux;
    rep.max_divergence = max_div;
    rep.verdict = (min_swirl > 0.0) && (max_flux <= flux_tol) && (max_div <= div_tol);
    return rep;
}

SectionDensity section_density(const CylField& field, const Domain& dom, int quad_order) {
    SectionDensity sd;
    const CylField* fp = &field;
    sd.density = [fp](double r, double z) { return fp->components(r, 0.0, z).y * r; };
    double mn = 1e300;
    const int n = 64;
    for (int i = 0; i < n; ++i) {
        const double rho = static_cast<double>(i) / (n - 1);
        for (int j = 0; j < n; ++j) {
            const Vec2 p = dom.from_disk(rho, kTwoPi * j / n);
            mn = std::min(mn, sd.density(p.x, p.y));
        }
    }
    sd.min_density = mn;
    if (mn <= 0.0) throw NonPositiveDensity("section density B^theta*r is not positive on the section");
    sd.mu_B = dom.integrate_section(sd.density, quad_order);
    const Measures m = dom.measures();
    sd.c_B = m.mu_sigma / sd.mu_B;
    return sd;
}

ForceBalanceReport force_balance(const CylField& field, const Domain& dom, int grid, double vanish_tol) {
    ForceBalanceReport rep;
    rep.grid = grid;
    auto force_at = [&](double r, double theta, double z) {
        const FieldSample f = field.sample(r, theta, z);
        return cross(f.B, curl(f, r), r);
    };
    auto f_at = [&](double r, double theta, double z) {
        const FieldSample f = field.sample(r, theta, z);
        const double b2 = metric_dot(f.B, f.B, r);
        return metric_dot(f.B, curl(f, r), r) / b2;
    };
    const double h = 1e-4;
    double max_curl = 0.0, fmin = 1e300, fmax = -1e300, fsum = 0.0, max_grad = 0.0;
    int count = 0;
    for (int i = 0; i < grid; ++i) {
        // stay slightly inside so finite-difference stencils do not cross the boundary
        const double rho = 0.97 * static_cast<double>(i) / (grid - 1);
        for (int j = 0; j < grid; ++j) {
            const double s = kTwoPi * j / grid;
            const Vec2 p = dom.from_disk(rho, s);
            for (int k = 0; k < grid; ++k) {
                const double theta = kTwoPi * k / grid;
                const FieldSample fs = field.sample(p.x, theta, p.y);
                if (metric_norm(fs.B, p.x) < vanish_tol)
                    throw FieldVanishes("|B| below tolerance at a grid node");
                // curl of F = B x curl B via 4th-order central differences
                Mat3 dF{};
                for (int c = 0; c < 3; ++c) {
                    const double dr = (c == 0) ? h : 0.0, dt = (c == 1) ? h : 0.0, dz = (c == 2) ? h : 0.0;
                    const Vec3 m2 = force_at(p.x - 2 * dr, theta - 2 * dt, p.y - 2 * dz);
                    const Vec3 m1 = force_at(p.x - dr, theta - dt, p.y - dz);
                    const Vec3 p1 = force_at(p.x + dr, theta + dt, p.y + dz);
                    const Vec3 p2 = force_at(p.x + 2 * dr, theta + 2 * dt, p.y + 2 * dz);
                    const Vec3 d = (1.0 / (12.0 * h)) * (m2 - p2 + 8.0 * (p1 - m1));
                    dF[0][c] = d.x;
                    dF[1][c] = d.y;
                    dF[2][c] = d.z;
                }
                FieldSample Fs;
                Fs.B = force_at(p.x, theta, p.y);
                Fs.dB = dF;
                max_curl = std::max(max_curl, metric_norm(curl(Fs, p.x), p.x));

                const double fv = f_at(p.x, theta, p.y);
                fmin = std::min(fmin, fv);
                fmax = std::max(fmax, fv);
                fsum += fv;
                ++count;
                // B . grad f by central differences of f
                const double fr = (f_at(p.x + h, theta, p.y) - f_at(p.x - h, theta, p.y)) / (2 * h);
                const double ft = (f_at(p.x, theta + h, p.y) - f_at(p.x, theta - h, p.y)) / (2 * h);
                const double fz = (f_at(p.x, theta, p.y + h) - f_at(p.x, theta, p.y - h)) / (2 * h);
                max_grad = std::max(max_grad, std::fabs(fs.B.x * fr + fs.B.y * ft + fs.B.z * fz));
            }
        }
    }
    rep.max_curl_force = max_curl;
    rep.f_min = fmin;
    rep.f_max = fmax;
    rep.f_mean = fsum / count;
    rep.max_along_gradient = max_grad;
    return rep;
}

}  // namespace torbraid
