#ifndef TORBRAID_GEOMETRY_HPP
#define TORBRAID_GEOMETRY_HPP

#include <optional>
#include <vector>

#include "torbraid/common.hpp"

namespace torbraid {

// Closed curve s -> (r(s), z(s)), s in [0, 2pi), as truncated Fourier series:
//   r(s) = sum_k r_cos[k] cos(ks) + r_sin[k] sin(ks),  same for z(s).
struct FourierCurve {
    std::vector<double> r_cos, r_sin, z_cos, z_sin;

    Vec2 point(double s) const;
    Vec2 derivative(double s) const;
    Vec2 second_derivative(double s) const;
    int max_mode() const;
};

struct BoundaryData {
    Vec2 point;
    Vec2 normal;   // unit outward normal in the (r,z)-plane
    Vec2 tangent;  // unit tangent, counterclockwise
};

struct Measures {
    double mu_sigma = 0.0;  // integral of r over the section
    double volume = 0.0;    // 2*pi*mu_sigma
    double area = 0.0;      // plain area of the section
};

// Axisymmetric toroidal domain defined by the cross-section boundary curve in
// the (r,z) half-plane. Immutable after construction; member functions are
// const and safe for concurrent use.
class Domain {
  public:
    static Domain make_torus(const FourierCurve& boundary_spec);

    const FourierCurve& curve() const { return curve_; }
    Vec2 centroid() const { return centroid_; }

    BoundaryData boundary_data(double s) const;

    // Quadrature-based section/volume measures. Refines the rule until two
    // successive levels agree to tol; throws QuadratureNotConverged otherwise.
    Measures measures(int base_order = 16, double tol = 1e-12) const;

    // integral of f(r,z) over the section (dr dz), transfinite-disk tensor rule
    double integrate_section(const std::function<double(double, double)>& f, int order) const;

    // Transfinite chart from the unit disk: (rho,s) in [0,1]x[0,2pi) -> (r,z).
    Vec2 from_disk(double rho, double s) const;
    Mat2 chart_jacobian(double rho, double s) const;  // d(r,z)/d(rho,s)
    // Inverse chart; requires star-shapedness (validated at construction).
    void to_disk(const Vec2& p, double& rho, double& s) const;

    // Winding-number membership test and Newton-projection signed distance
    // (negative inside the section).
    bool contains(const Vec2& p) const;
    double signed_distance(const Vec2& p) const;
    // Parameter of the closest boundary point.
    double project_boundary(const Vec2& p) const;

    double min_r() const { return min_r_; }
    double max_r() const { return max_r_; }

  private:
    Domain() = default;
    void validate() const;
    void build_tables();

    FourierCurve curve_;
    Vec2 centroid_;
    double min_r_ = 0.0, max_r_ = 0.0;
    // dense samples used to seed Newton solves (angle about centroid, parameter)
    std::vector<double> sample_s_, sample_angle_;
    std::vector<Vec2> sample_pts_;
};

// Nodes and weights for integrals of f(r,z) over the section (dr dz measure).
struct SectionQuadrature {
    std::vector<Vec2> nodes;
    std::vector<double> weights;
};
SectionQuadrature section_quadrature(const Domain& dom, int radial_order, int angular_order);

// Gauss-Legendre rule on [0,1].
void gauss_legendre_01(int n, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace torbraid

#endif
