#ifndef TORBRAID_FIELD_HPP
#define TORBRAID_FIELD_HPP

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "torbraid/common.hpp"
#include "torbraid/geometry.hpp"

namespace torbraid {

// Vector fields are kept in cylindrical holonomic components,
//   B = B^r d_r + B^theta d_theta + B^z d_z,
// so the metric is diag(1, r^2, 1) and |d_theta| = r.

struct FieldSample {
    Vec3 B;   // (B^r, B^theta, B^z)
    Mat3 dB;  // dB[i][j] = d B^i / d(r,theta,z)_j
};

class CylField {
  public:
    virtual ~CylField() = default;
    virtual Vec3 components(double r, double theta, double z) const = 0;
    virtual FieldSample sample(double r, double theta, double z) const = 0;
    virtual std::string provenance() const { return "closed-form"; }
};

using FieldPtr = std::shared_ptr<const CylField>;

// ---- differential operators on samples (holonomic components) ----

double divergence(const FieldSample& f, double r);
Vec3 curl(const FieldSample& f, double r);
double metric_dot(const Vec3& x, const Vec3& y, double r);
double metric_norm(const Vec3& x, double r);
Vec3 cross(const Vec3& x, const Vec3& y, double r);

Vec3 lie_bracket(const CylField& X, const CylField& Y, double r, double theta, double z);
// residual of curl(X x Y) = (div Y)X - (div X)Y + [Y,X], metric norm
double identity_residual(const CylField& X, const CylField& Y, double r, double theta, double z);

// ---- vector potentials ----

struct PotentialSample {
    Vec3 A;                   // holonomic components
    Mat3 dA;                  // dA[i][j]
    std::array<Mat3, 3> d2A;  // d2A[i][j][k] = d^2 A^i / dx_j dx_k
};

class Potential {
  public:
    virtual ~Potential() = default;
    virtual PotentialSample sample(double r, double theta, double z) const = 0;
};

// A^i terms of the form amp * (r-r0)^pr * (z-z0)^pz * w^pw * trig(m theta),
// w(r,z) = 1 - ((r-r0)/a)^2 - ((z-z0)/b)^2 (global polynomial, so everything
// stays analytic; choosing pw >= 1 makes the resulting field vanish on the
// ellipse w = 0 to order pw-1).
struct PotentialTerm {
    int component = 1;  // 0 = A^r, 1 = A^theta, 2 = A^z
    double amplitude = 0.0;
    int pr = 0, pz = 0, pw = 0;
    int m = 0;
    bool use_sin = false;
    double r0 = 0.0, z0 = 0.0, a = 1.0, b = 1.0;
};

class PolynomialPotential : public Potential {
  public:
    explicit PolynomialPotential(std::vector<PotentialTerm> terms) : terms_(std::move(terms)) {}
    PotentialSample sample(double r, double theta, double z) const override;
    const std::vector<PotentialTerm>& terms() const { return terms_; }

  private:
    std::vector<PotentialTerm> terms_;
};

class CallbackPotential : public Potential {
  public:
    using Fn = std::function<PotentialSample(double, double, double)>;
    explicit CallbackPotential(Fn fn) : fn_(std::move(fn)) {}
    PotentialSample sample(double r, double theta, double z) const override { return fn_(r, theta, z); }

  private:
    Fn fn_;
};

// B = curl A; divergence-free at the analytic level.
FieldPtr from_vector_potential(std::shared_ptr<const Potential> A);

// ---- built-in families ----

FieldPtr make_dtheta_field();                       // B = d_theta
FieldPtr make_homega_field();                       // B = (1/r^2) d_theta
FieldPtr make_ez_field();                           // B = d_z (not tangent; negative fixture)
FieldPtr make_swirl_profile_field(std::vector<double> r_poly_coeffs);  // B = f(r) d_theta

// Axisymmetric stream-function fixture on a circular section centered (R0,0):
//   psi = ((r-R0)^2 + z^2)/2,
//   B = (1/r)(dz psi d_r - dr psi d_z) + q(r,z) d_theta,
//   q = q0 (1 + q1 ((r-R0)^2 + z^2)).
class PsiFixtureField : public CylField {
  public:
    PsiFixtureField(double R0, double q0, double q1) : R0_(R0), q0_(q0), q1_(q1) {}
    Vec3 components(double r, double theta, double z) const override;
    FieldSample sample(double r, double theta, double z) const override;
    double psi(double r, double z) const { return 0.5 * ((r - R0_) * (r - R0_) + z * z); }
    double R0() const { return R0_; }

  private:
    double R0_, q0_, q1_;
};

FieldPtr make_psi_fixture(double R0, double q0, double q1);

// psi fixture plus a curl(A) perturbation with A^theta = eps * w^4 * cos(m theta),
// w = 1 - (r-R0)^2 - z^2: braided (swirl unchanged), divergence-free, vanishes
// to third order on the boundary circle of the R0, a=1 torus.
FieldPtr make_perturbed_psi_fixture(double R0, double q0, double q1, double eps, int m);

// ---- scalar factors and linear combinations ----

class ScalarField {
  public:
    virtual ~ScalarField() = default;
    virtual double value(double r, double theta, double z) const = 0;
    virtual Vec3 gradient(double r, double theta, double z) const = 0;  // (d_r, d_theta, d_z)
};

FieldPtr make_scaled_field(FieldPtr base, std::shared_ptr<const ScalarField> g);
FieldPtr make_constant_scaled_field(FieldPtr base, double factor);
FieldPtr make_sum_field(FieldPtr a, FieldPtr b);

class ThetaScalar : public ScalarField {  // g = c0 + c1 sin(theta)
  public:
    ThetaScalar(double c0, double c1) : c0_(c0), c1_(c1) {}
    double value(double, double theta, double) const override { return c0_ + c1_ * std::sin(theta); }
    Vec3 gradient(double, double theta, double) const override { return {0.0, c1_ * std::cos(theta), 0.0}; }

  private:
    double c0_, c1_;
};

// 4th-order central finite-difference derivative supply for component-only fields.
class FiniteDiffField : public CylField {
  public:
    using Components = std::function<Vec3(double, double, double)>;
    explicit FiniteDiffField(Components fn, double h = 1e-4) : fn_(std::move(fn)), h_(h) {}
    Vec3 components(double r, double theta, double z) const override { return fn_(r, theta, z); }
    FieldSample sample(double r, double theta, double z) const override;

  private:
    Components fn_;
    double h_;
};

// ---- diagnostics ----

struct BraidReport {
    double min_swirl = 0.0;          // min of B^theta over the volume grid
    double max_boundary_flux = 0.0;  // max |B.N| over the boundary grid
    double max_divergence = 0.0;     // max |div B| over the interior grid
    double swirl_tol = 0.0, flux_tol = 0.0, div_tol = 0.0;
    bool verdict = false;
    int grid = 0;
};

BraidReport check_braided(const CylField& field, const Domain& dom, int grid = 32,
                          double flux_tol = 1e-8, double div_tol = 1e-8);

struct SectionDensity {
    std::function<double(double, double)> density;  // (r,z) -> B^theta(r,0,z)*r
    double mu_B = 0.0;  // total mass over the section
    double c_B = 0.0;   // mu(Sigma)/mu_B(Sigma)
    double min_density = 0.0;
};

SectionDensity section_density(const CylField& field, const Domain& dom, int quad_order = 64);

struct ForceBalanceReport {
    double max_curl_force = 0.0;  // max |curl(B x curl B)| over the grid
    double f_min = 0.0, f_max = 0.0, f_mean = 0.0;  // f = B.curlB/|B|^2
    double max_along_gradient = 0.0;                // max |B . grad f|
    int grid = 0;
};

ForceBalanceReport force_balance(const CylField& field, const Domain& dom, int grid = 16,
                                 double vanish_tol = 1e-10);

}  // namespace torbraid

#endif
