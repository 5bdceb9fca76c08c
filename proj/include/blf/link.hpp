#ifndef BLF_LINK_HPP
#define BLF_LINK_HPP

#include <string>
#include <string_view>

namespace blf {

// Link between the linear predictor and the inclusion probability of the
// true-status regression. Only the logistic link is provided; the probit
// link used for the reliability fields is fixed and lives with the model,
// since the augmentation scheme is built around it.
class LinkFunction {
  public:
    enum class Tag { logistic };

    explicit LinkFunction(Tag tag = Tag::logistic) : tag_(tag) {}
    static LinkFunction from_name(std::string_view name);
    std::string name() const { return "logistic"; }

    double g(double p) const;          // (0,1) -> R
    double g_inv(double u) const;      // R -> (0,1)
    double g_inv_deriv(double u) const;
    double g_deriv(double p) const;    // d g / d p

    // Canonical Bernoulli pieces used by the working-response proposal:
    // theta = logit(p), b(theta) = log(1+e^theta), and its derivatives.
    double theta(double p) const;
    double b(double theta_v) const;
    double b_dot(double theta_v) const;
    double b_ddot(double theta_v) const;

  private:
    Tag tag_;
};

}  // namespace blf

#endif
