#include "cesfp/error.hpp"

#include <sstream>

namespace cesfp {

namespace {

std::string describe_bound(const std::string& which, double limit, double given) {
    std::ostringstream os;
    os.precision(17);
    os << "bound violated: " << which << " (limit " << limit << ", given " << given << ")";
    return os.str();
}

std::string describe_truncation(double requested, double reachable) {
    std::ostringstream os;
    os.precision(6);
    os << "spectral sum cannot reach tolerance " << requested
       << "; smallest reachable tail bound " << reachable;
    return os.str();
}

}  // namespace

BoundViolation::BoundViolation(std::string which, double limit, double given)
    : Error(describe_bound(which, limit, given)),
      which_(std::move(which)),
      limit_(limit),
      given_(given) {}

PositivityLoss::PositivityLoss(double x)
    : Error("u-function is not strictly positive at x = " + std::to_string(x)), x_(x) {}

TruncationFailure::TruncationFailure(double requested, double smallest_reachable)
    : Error(describe_truncation(requested, smallest_reachable)),
      requested_(requested),
      smallest_reachable_(smallest_reachable) {}

}  // namespace cesfp
