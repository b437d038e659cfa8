#ifndef TORBRAID_ERRORS_HPP
#define TORBRAID_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace torbraid {

struct Error : std::runtime_error {
    Error(std::string code_, const std::string& what_)
        : std::runtime_error(code_ + ": " + what_), code(std::move(code_)) {}
    std::string code;
};

#define TORBRAID_ERROR_TYPE(NAME)                                     \
    struct NAME : Error {                                             \
        explicit NAME(const std::string& w) : Error(#NAME, w) {}      \
    }

// geometry
TORBRAID_ERROR_TYPE(CurveSelfIntersects);
TORBRAID_ERROR_TYPE(CurveTouchesAxis);
TORBRAID_ERROR_TYPE(CurveNotStarShaped);
TORBRAID_ERROR_TYPE(CurveNotCounterclockwise);
TORBRAID_ERROR_TYPE(QuadratureNotConverged);
// field
TORBRAID_ERROR_TYPE(NonPositiveDensity);
TORBRAID_ERROR_TYPE(FieldVanishes);
// flow
TORBRAID_ERROR_TYPE(SwirlVanishedOnPath);
TORBRAID_ERROR_TYPE(LeftDomain);
TORBRAID_ERROR_TYPE(StepLimitExceeded);
// section
TORBRAID_ERROR_TYPE(FlowFolded);
TORBRAID_ERROR_TYPE(PoissonSolveFailed);
// circle
TORBRAID_ERROR_TYPE(BoundaryNotInvariant);
TORBRAID_ERROR_TYPE(NotConverged);
// beltrami
TORBRAID_ERROR_TYPE(SolverNotConverged);
TORBRAID_ERROR_TYPE(MultiplicityUnresolved);
// reeb
TORBRAID_ERROR_TYPE(SurfaceDegenerate);
TORBRAID_ERROR_TYPE(BallLeavesDomain);
TORBRAID_ERROR_TYPE(SupportLeaksBox);
// cli
TORBRAID_ERROR_TYPE(ConfigInvalid);
TORBRAID_ERROR_TYPE(CommandUnknown);

#undef TORBRAID_ERROR_TYPE

}  // namespace torbraid

#endif
