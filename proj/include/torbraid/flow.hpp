#ifndef TORBRAID_FLOW_HPP
#define TORBRAID_FLOW_HPP

#include "torbraid/field.hpp"
#include "torbraid/geometry.hpp"

namespace torbraid {

struct TraceOptions {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    double swirl_min = 1e-10;      // SwirlVanishedOnPath below this
    double leave_tol = 1e-6;       // LeftDomain beyond this signed distance
    double graze_snap = 1e-9;      // excursions up to this are projected back
    long max_steps = 2000000;
    const Domain* domain = nullptr;  // optional; enables boundary handling
};

struct TraceResult {
    Vec2 end;            // (r, z) on the section after the theta advance
    Mat2 monodromy;      // d(end)/d(start)
    double tau = 0.0;    // physical flow time
    double est_error = 0.0;
};

// Integrates the reduced field-line system
//   dr/dtheta = B^r/B^theta, dz/dtheta = B^z/B^theta, dt/dtheta = 1/B^theta
// together with the 2x2 variational equations, from theta=0 over delta_theta.
TraceResult trace_theta(const CylField& field, const Vec2& start, double delta_theta,
                        const TraceOptions& opt = {});

struct PoincareResult {
    Vec2 end;
    Mat2 jacobian;     // product of per-turn tangent maps, trajectory order
    double total_time = 0.0;
};

// n-fold return map: composition of n single-turn traces.
PoincareResult poincare(const CylField& field, const Domain& dom, const Vec2& start, int n,
                        const TraceOptions& opt = {});

}  // namespace torbraid

#endif
