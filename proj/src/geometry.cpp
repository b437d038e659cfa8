#include "torbraid/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "torbraid/errors.hpp"

namespace torbraid {

Vec2 FourierCurve::point(double s) const {
    double r = 0.0, z = 0.0;
    const std::size_t nr = std::max(r_cos.size(), r_sin.size());
    const std::size_t nz = std::max(z_cos.size(), z_sin.size());
    for (std::size_t k = 0; k < std::max(nr, nz); ++k) {
        const double ck = std::cos(k * s), sk = std::sin(k * s);
        if (k < r_cos.size()) r += r_cos[k] * ck;
        if (k < r_sin.size()) r += r_sin[k] * sk;
        if (k < z_cos.size()) z += z_cos[k] * ck;
        if (k < z_sin.size()) z += z_sin[k] * sk;
    }
    return {r, z};
}

Vec2 FourierCurve::derivative(double s) const {
    double r = 0.0, z = 0.0;
    const std::size_t n = std::max(std::max(r_cos.size(), r_sin.size()),
                                   std::max(z_cos.size(), z_sin.size()));
    for (std::size_t k = 1; k < n; ++k) {
        const double ck = std::cos(k * s), sk = std::sin(k * s);
        if (k < r_cos.size()) r -= k * r_cos[k] * sk;
        if (k < r_sin.size()) r += k * r_sin[k] * ck;
        if (k < z_cos.size()) z -= k * z_cos[k] * sk;
        if (k < z_sin.size()) z += k * z_sin[k] * ck;
    }
    return {r, z};
}

Vec2 FourierCurve::second_derivative(double s) const {
    double r = 0.0, z = 0.0;
    const std::size_t n = std::max(std::max(r_cos.size(), r_sin.size()),
                                   std::max(z_cos.size(), z_sin.size()));
    for (std::size_t k = 1; k < n; ++k) {
        const double k2 = static_cast<double>(k) * k;
        const double ck = std::cos(k * s), sk = std::sin(k * s);
        if (k < r_cos.size()) r -= k2 * r_cos[k] * ck;
        if (k < r_sin.size()) r -= k2 * r_sin[k] * sk;
        if (k < z_cos.size()) z -= k2 * z_cos[k] * ck;
        if (k < z_sin.size()) z -= k2 * z_sin[k] * sk;
    }
    return {r, z};
}

int FourierCurve::max_mode() const {
    return static_cast<int>(std::max(std::max(r_cos.size(), r_sin.size()),
                                     std::max(z_cos.size(), z_sin.size()))) - 1;
}

namespace {

bool segments_intersect(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
    auto orient = [](const Vec2& p, const Vec2& q, const Vec2& r) {
        return (q - p).cross(r - p);
    };
    const double o1 = orient(a, b, c), o2 = orient(a, b, d);
    const double o3 = orient(c, d, a), o4 = orient(c, d, b);
    return ((o1 > 0) != (o2 > 0)) && ((o3 > 0) != (o4 > 0));
}

}  // namespace

Domain Domain::make_torus(const FourierCurve& boundary_spec) {
    Domain dom;
    dom.curve_ = boundary_spec;
    for (double c : boundary_spec.r_cos)
        if (!std::isfinite(c)) throw CurveSelfIntersects("non-finite coefficient");
    dom.build_tables();
    dom.validate();
    return dom;
}

void Domain::build_tables() {
    const int n = std::max(1024, 64 * (curve_.max_mode() + 1));
    sample_s_.resize(n);
    sample_pts_.resize(n);
    Vec2 c{0.0, 0.0};
    for (int i = 0; i < n; ++i) {
        sample_s_[i] = kTwoPi * i / n;
        sample_pts_[i] = curve_.point(sample_s_[i]);
        c += sample_pts_[i] * (1.0 / n);
    }
    centroid_ = c;
    min_r_ = sample_pts_[0].x;
    max_r_ = sample_pts_[0].x;
    sample_angle_.resize(n);
    for (int i = 0; i < n; ++i) {
        min_r_ = std::min(min_r_, sample_pts_[i].x);
        max_r_ = std::max(max_r_, sample_pts_[i].x);
        sample_angle_[i] = std::atan2(sample_pts_[i].y - centroid_.y, sample_pts_[i].x - centroid_.x);
    }
}

void Domain::validate() const {
    const int n = static_cast<int>(sample_s_.size());
    if (min_r_ <= 0.0) throw CurveTouchesAxis("section reaches r <= 0 (min r = " + std::to_string(min_r_) + ")");

    // simple closed curve: no crossing among non-adjacent sample segments
    const int m = 512;
    std::vector<Vec2> p(m);
    for (int i = 0; i < m; ++i) p[i] = curve_.point(kTwoPi * i / m);
    for (int i = 0; i < m; ++i) {
        for (int j = i + 2; j < m; ++j) {
            if (i == 0 && j == m - 1) continue;
            if (segments_intersect(p[i], p[(i + 1) % m], p[j], p[(j + 1) % m]))
                throw CurveSelfIntersects("boundary curve crosses itself");
        }
    }

    // counterclockwise orientation (positive signed area)
    double area2 = 0.0;
    for (int i = 0; i < n; ++i) area2 += sample_pts_[i].cross(sample_pts_[(i + 1) % n]);
    if (area2 <= 0.0) throw CurveNotCounterclockwise("boundary curve must be counterclockwise");

    // star-shaped about the centroid, needed by the transfinite chart
    for (int i = 0; i < n; ++i) {
        const Vec2 d = sample_pts_[i] - centroid_;
        const Vec2 t = curve_.derivative(sample_s_[i]);
        if (d.cross(t) <= 0.0)
            throw CurveNotStarShaped("section is not star-shaped about its centroid");
        if (d.norm() < 1e-12) throw CurveSelfIntersects("degenerate boundary curve");
    }
}

BoundaryData Domain::boundary_data(double s) const {
    BoundaryData bd;
    bd.point = curve_.point(s);
    const Vec2 t = curve_.derivative(s);
    const double tn = t.norm();
    bd.tangent = t * (1.0 / tn);
    // counterclockwise curve: outward normal is the tangent rotated by -pi/2
    bd.normal = Vec2{bd.tangent.y, -bd.tangent.x};
    return bd;
}

Vec2 Domain::from_disk(double rho, double s) const {
    const Vec2 p = curve_.point(s);
    return centroid_ + rho * (p - centroid_);
}

Mat2 Domain::chart_jacobian(double rho, double s) const {
    const Vec2 d = curve_.point(s) - centroid_;
    const Vec2 t = curve_.derivative(s);
    return {d.x, rho * t.x, d.y, rho * t.y};
}

void Domain::to_disk(const Vec2& p, double& rho, double& s) const {
    const Vec2 d = p - centroid_;
    const double dn = d.norm();
    if (dn < 1e-300) {
        rho = 0.0;
        s = 0.0;
        return;
    }
    const double alpha = std::atan2(d.y, d.x);
    // seed from the dense angle table (angle about centroid is monotone in s)
    const int n = static_cast<int>(sample_s_.size());
    int best = 0;
    double best_d = 1e300;
    for (int i = 0; i < n; ++i) {
        const double ad = std::fabs(wrap_diff(sample_angle_[i] - alpha));
        if (ad < best_d) {
            best_d = ad;
            best = i;
        }
    }
    double sc = sample_s_[best];
    for (int it = 0; it < 60; ++it) {
        const Vec2 q = curve_.point(sc) - centroid_;
        const double f = q.cross(d);  // zero when q is parallel to d
        const Vec2 qp = curve_.derivative(sc);
        const double fp = qp.cross(d);
        if (std::fabs(fp) < 1e-300) break;
        const double step = f / fp;
        sc -= step;
        if (std::fabs(step) < 1e-15) break;
    }
    s = wrap_angle(sc);
    const Vec2 q = curve_.point(s) - centroid_;
    rho = dn / q.norm();
    if (q.dot(d) < 0.0) {
        // Newton landed on the antipodal root; flip by half a turn.
        s = wrap_angle(s + kPi);
        const Vec2 q2 = curve_.point(s) - centroid_;
        rho = dn / q2.norm();
    }
}

bool Domain::contains(const Vec2& p) const {
    // winding number of the boundary about p
    const int n = static_cast<int>(sample_pts_.size());
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
        const Vec2 a = sample_pts_[i] - p;
        const Vec2 b = sample_pts_[(i + 1) % n] - p;
        total += std::atan2(a.cross(b), a.dot(b));
    }
    return std::fabs(total) > kPi;
}

double Domain::project_boundary(const Vec2& p) const {
    const int n = static_cast<int>(sample_pts_.size());
    int best = 0;
    double best_d = 1e300;
    for (int i = 0; i < n; ++i) {
        const double d2 = (sample_pts_[i] - p).dot(sample_pts_[i] - p);
        if (d2 < best_d) {
            best_d = d2;
            best = i;
        }
    }
    double s = sample_s_[best];
    for (int it = 0; it < 80; ++it) {
        const Vec2 q = curve_.point(s) - p;
        const Vec2 t = curve_.derivative(s);
        const Vec2 tt = curve_.second_derivative(s);
        const double g = q.dot(t);
        const double gp = t.dot(t) + q.dot(tt);
        if (std::fabs(gp) < 1e-300) break;
        const double step = g / gp;
        s -= step;
        if (std::fabs(step) < 1e-15) break;
    }
    return wrap_angle(s);
}

double Domain::signed_distance(const Vec2& p) const {
    const double s = project_boundary(p);
    const double dist = (curve_.point(s) - p).norm();
    return contains(p) ? -dist : dist;
}

void gauss_legendre_01(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.resize(n);
    weights.resize(n);
    for (int i = 0; i < n; ++i) {
        // Newton on P_n with Chebyshev initial guess
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            if (n == 1) p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            const double pn = (n == 1) ? x : p1;
            pp = n * (x * pn - p0) / (x * x - 1.0);
            const double dx = pn / pp;
            x -= dx;
            if (std::fabs(dx) < 1e-16) break;
        }
        nodes[i] = 0.5 * (1.0 - x);  // map [-1,1] -> [0,1], reversed order is fine
        weights[i] = 1.0 / ((1.0 - x * x) * pp * pp);
    }
}

SectionQuadrature section_quadrature(const Domain& dom, int radial_order, int angular_order) {
    SectionQuadrature q;
    std::vector<double> gx, gw;
    gauss_legendre_01(radial_order, gx, gw);
    q.nodes.reserve(radial_order * angular_order);
    q.weights.reserve(radial_order * angular_order);
    for (int j = 0; j < angular_order; ++j) {
        const double s = kTwoPi * j / angular_order;
        for (int i = 0; i < radial_order; ++i) {
            const double rho = gx[i];
            const Mat2 J = dom.chart_jacobian(rho, s);
            q.nodes.push_back(dom.from_disk(rho, s));
            q.weights.push_back(gw[i] * (kTwoPi / angular_order) * J.det());
        }
    }
    return q;
}

double Domain::integrate_section(const std::function<double(double, double)>& f, int order) const {
    const SectionQuadrature q = section_quadrature(*this, order, 2 * order);
    double total = 0.0;
    for (std::size_t i = 0; i < q.nodes.size(); ++i) total += q.weights[i] * f(q.nodes[i].x, q.nodes[i].y);
    return total;
}

Measures Domain::measures(int base_order, double tol) const {
    if (tol <= 0.0) throw QuadratureNotConverged("tolerance must be positive");
    auto mu_of = [this](int order) {
        return integrate_section([](double r, double) { return r; }, order);
    };
    auto area_of = [this](int order) {
        return integrate_section([](double, double) { return 1.0; }, order);
    };
    int order = std::max(4, base_order);
    double mu = mu_of(order), area = area_of(order);
    bool ok = false;
    for (int level = 0; level < 6; ++level) {
        const int next = 2 * order;
        const double mu2 = mu_of(next), area2 = area_of(next);
        const double err = std::fabs(mu2 - mu) + std::fabs(area2 - area);
        mu = mu2;
        area = area2;
        order = next;
        if (err <= tol * std::max(1.0, std::fabs(mu))) {
            ok = true;
            break;
        }
    }
    if (!ok) throw QuadratureNotConverged("section quadrature did not reach requested tolerance");
    Measures m;
    m.mu_sigma = mu;
    m.volume = kTwoPi * mu;
    m.area = area;
    return m;
}

}  // namespace torbraid
