#include "blf/priors.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "blf/error.hpp"
#include "blf/stats.hpp"

namespace blf {

void CmpSpec::validate() const {
    const int j_dim = dim();
    if (j_dim < 1 || pseudo_design.cols() != j_dim)
        throw InvalidArgument("CMP pseudo design must be square and nonempty");
    if (static_cast<int>(shapes.size()) != j_dim)
        throw InvalidArgument("CMP needs one Beta shape pair per pseudo observation");
    for (const auto& [a, b] : shapes) {
        if (a <= 0.0 || b <= 0.0)
            throw InvalidArgument("CMP Beta shapes must be positive");
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(pseudo_design);
    const double cond = svd.singularValues()(0) /
                        svd.singularValues()(j_dim - 1);
    if (!std::isfinite(cond) || cond > 1e12)
        throw InvalidArgument(
            "CMP pseudo design is singular or near-singular; adjust the "
            "covariate quantiles so the pseudo points are distinct");
}

void to_json(nlohmann::json& j, const CmpSpec& spec) {
    nlohmann::json rows = nlohmann::json::array();
    for (int r = 0; r < spec.pseudo_design.rows(); ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (int c = 0; c < spec.pseudo_design.cols(); ++c)
            row.push_back(spec.pseudo_design(r, c));
        rows.push_back(std::move(row));
    }
    nlohmann::json shapes = nlohmann::json::array();
    for (const auto& [a, b] : spec.shapes) shapes.push_back({a, b});
    j = nlohmann::json{{"pseudo_design", rows}, {"beta_shapes", shapes}};
}

void from_json(const nlohmann::json& j, CmpSpec& spec) {
    const auto& rows = j.at("pseudo_design");
    const int j_dim = static_cast<int>(rows.size());
    spec.pseudo_design.resize(j_dim, j_dim);
    for (int r = 0; r < j_dim; ++r) {
        const auto& row = rows.at(r);
        if (static_cast<int>(row.size()) != j_dim)
            throw InvalidArgument("CMP pseudo design rows must be square");
        for (int c = 0; c < j_dim; ++c) spec.pseudo_design(r, c) = row.at(c).get<double>();
    }
    spec.shapes.clear();
    for (const auto& pair : j.at("beta_shapes"))
        spec.shapes.emplace_back(pair.at(0).get<double>(), pair.at(1).get<double>());
    spec.validate();
}

std::pair<double, double> elicit_tau_hyper(double tau_target) {
    if (tau_target <= 0.0)
        throw InvalidArgument("precision target must be positive");
    return {1.0, 1.0 / tau_target};
}

double cmp_log_prior(const Eigen::VectorXd& delta, const CmpSpec& spec,
                     const LinkFunction& link) {
    double log_density = 0.0;
    for (int j = 0; j < spec.dim(); ++j) {
        const double u = spec.pseudo_design.row(j).dot(delta);
        const double p = link.g_inv(u);
        const auto& [a, b] = spec.shapes[j];
        log_density += (a - 1.0) * log_prob(p) + (b - 1.0) * log_prob(1.0 - p) +
                       std::log(std::max(link.g_inv_deriv(u), kProbFloor));
    }
    return log_density;
}

Eigen::VectorXd cmp_log_prior_grad(const Eigen::VectorXd& delta, const CmpSpec& spec,
                                   const LinkFunction& link) {
    Eigen::VectorXd grad = Eigen::VectorXd::Zero(delta.size());
    for (int j = 0; j < spec.dim(); ++j) {
        const double u = spec.pseudo_design.row(j).dot(delta);
        const double p = link.g_inv(u);
        const auto& [a, b] = spec.shapes[j];
        // d/du of the Beta kernel plus the logistic-density term (1-2p).
        const double coeff = (a - 1.0) * (1.0 - p) - (b - 1.0) * p + (1.0 - 2.0 * p);
        grad += coeff * spec.pseudo_design.row(j).transpose();
    }
    return grad;
}

namespace {

double vector_quantile(const Eigen::VectorXd& values, double p) {
    std::vector<double> sorted(values.data(), values.data() + values.size());
    std::sort(sorted.begin(), sorted.end());
    return quantile_sorted(sorted, p);
}

}  // namespace

CmpSpec default_cmp_scenarios(const Eigen::VectorXd& distance_covariate,
                              const Eigen::VectorXd& intensity_covariate) {
    if (distance_covariate.size() == 0 || intensity_covariate.size() == 0)
        throw InvalidArgument("CMP scenarios need nonempty covariate vectors");

    const double d_lo = vector_quantile(distance_covariate, 0.05);
    const double d_mid = vector_quantile(distance_covariate, 0.50);
    const double d_hi = vector_quantile(distance_covariate, 0.95);
    const double i_lo = vector_quantile(intensity_covariate, 0.05);
    const double i_mid = vector_quantile(intensity_covariate, 0.50);
    const double i_hi = vector_quantile(intensity_covariate, 0.95);

    CmpSpec spec;
    spec.pseudo_design.resize(4, 4);
    const double dist[4] = {d_lo, d_hi, d_mid, d_hi};
    const double inten[4] = {i_hi, i_lo, i_mid, i_hi};
    for (int j = 0; j < 4; ++j) {
        spec.pseudo_design(j, 0) = 1.0;
        spec.pseudo_design(j, 1) = dist[j];
        spec.pseudo_design(j, 2) = inten[j];
        spec.pseudo_design(j, 3) = dist[j] * inten[j];
    }
    spec.shapes = {{20.0, 1.0}, {1.0, 20.0}, {1.0, 1.0}, {1.0, 4.0}};
    spec.validate();
    return spec;
}

}  // namespace blf
