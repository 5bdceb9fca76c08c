#include "blf/link.hpp"

#include <cmath>

#include "blf/error.hpp"
#include "blf/stats.hpp"

namespace blf {

LinkFunction LinkFunction::from_name(std::string_view name) {
    if (name == "logistic") return LinkFunction(Tag::logistic);
    throw InvalidArgument("unknown link function: " + std::string(name));
}

double LinkFunction::g(double p) const {
    return std::log(p) - std::log1p(-p);
}

double LinkFunction::g_inv(double u) const {
    return logistic(u);
}

double LinkFunction::g_inv_deriv(double u) const {
    const double p = logistic(u);
    return p * (1.0 - p);
}

double LinkFunction::g_deriv(double p) const {
    return 1.0 / (p * (1.0 - p));
}

double LinkFunction::theta(double p) const {
    return g(p);
}

double LinkFunction::b(double theta_v) const {
    return log1pexp(theta_v);
}

double LinkFunction::b_dot(double theta_v) const {
    return logistic(theta_v);
}

double LinkFunction::b_ddot(double theta_v) const {
    const double p = logistic(theta_v);
    return p * (1.0 - p);
}

}  // namespace blf
