#include "oblivion/objectives.hpp"

#include <cmath>

#include "oblivion/errors.hpp"
#include "oblivion/rng.hpp"

namespace oblivion {

namespace {

class Quadratic final : public SmoothObjective {
public:
    Quadratic(Eigen::VectorXd center, Eigen::VectorXd scaling)
        : center_(std::move(center)), scaling_(std::move(scaling)) {
        if (scaling_.size() == 0) scaling_ = Eigen::VectorXd::Ones(center_.size());
        if (scaling_.size() != center_.size())
            throw ConfigError("quadratic: scaling/center dimension mismatch");
        if ((scaling_.array() <= 0.0).any())
            throw ConfigError("quadratic: scaling entries must be > 0");
    }

    std::size_t dimension() const override { return static_cast<std::size_t>(center_.size()); }
    double value(const Eigen::VectorXd& x) const override {
        return 0.5 * (scaling_.array() * (x - center_).array().square()).sum();
    }
    Eigen::VectorXd gradient(const Eigen::VectorXd& x) const override {
        return scaling_.asDiagonal() * (x - center_);
    }
    double smoothness() const override { return scaling_.maxCoeff(); }
    Eigen::VectorXd optimum() const override { return center_; }
    std::string family() const override { return "quadratic"; }

private:
    Eigen::VectorXd center_;
    Eigen::VectorXd scaling_;
};

class Rosenbrock final : public SmoothObjective {
public:
    explicit Rosenbrock(std::size_t d) : d_(d) {
        if (d < 2) throw ConfigError("rosenbrock_like: dimension must be >= 2");
    }

    std::size_t dimension() const override { return d_; }

    double value(const Eigen::VectorXd& x) const override {
        double f = 0.0;
        for (Eigen::Index i = 0; i + 1 < x.size(); ++i) {
            const double a = x[i + 1] - x[i] * x[i];
            const double b = 1.0 - x[i];
            f += 100.0 * a * a + b * b;
        }
        return f;
    }

    Eigen::VectorXd gradient(const Eigen::VectorXd& x) const override {
        Eigen::VectorXd g = Eigen::VectorXd::Zero(x.size());
        for (Eigen::Index i = 0; i + 1 < x.size(); ++i) {
            const double a = x[i + 1] - x[i] * x[i];
            g[i] += -400.0 * a * x[i] - 2.0 * (1.0 - x[i]);
            g[i + 1] += 200.0 * a;
        }
        return g;
    }

    // Gershgorin bound on the Hessian over [-2, 2]^d.
    double smoothness() const override { return 6700.0; }
    Eigen::VectorXd optimum() const override {
        return Eigen::VectorXd::Ones(static_cast<Eigen::Index>(d_));
    }
    std::string family() const override { return "rosenbrock_like"; }
    double probe_box() const override { return 2.0; }

private:
    std::size_t d_;
};

class LogisticSum final : public SmoothObjective {
public:
    LogisticSum(std::size_t d, std::size_t rows, double ridge, std::uint64_t seed)
        : ridge_(ridge) {
        if (d < 1 || rows < 1) throw ConfigError("logistic_sum: need d >= 1 and rows >= 1");
        if (!(ridge > 0.0)) throw ConfigError("logistic_sum: ridge must be > 0");
        Rng rng(seed, 0x10615717ULL);
        features_.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(d));
        labels_.resize(static_cast<Eigen::Index>(rows));
        Eigen::VectorXd truth(static_cast<Eigen::Index>(d));
        for (Eigen::Index j = 0; j < truth.size(); ++j) truth[j] = rng.gaussian();
        for (Eigen::Index i = 0; i < features_.rows(); ++i) {
            for (Eigen::Index j = 0; j < features_.cols(); ++j)
                features_(i, j) = rng.gaussian() / std::sqrt(static_cast<double>(d));
            const double margin = features_.row(i).dot(truth) + 0.3 * rng.gaussian();
            labels_[i] = margin >= 0.0 ? 1.0 : -1.0;
        }
        const double data_l =
            (features_.transpose() * features_).selfadjointView<Eigen::Lower>()
                .eigenvalues().maxCoeff() /
            (4.0 * static_cast<double>(rows));
        smoothness_ = data_l + ridge;
        solve_optimum();
    }

    std::size_t dimension() const override { return static_cast<std::size_t>(features_.cols()); }

    double value(const Eigen::VectorXd& x) const override {
        const Eigen::VectorXd margins = labels_.asDiagonal() * (features_ * x);
        double f = 0.0;
        for (Eigen::Index i = 0; i < margins.size(); ++i) f += softplus(-margins[i]);
        return f / static_cast<double>(margins.size()) + 0.5 * ridge_ * x.squaredNorm();
    }

    Eigen::VectorXd gradient(const Eigen::VectorXd& x) const override {
        const Eigen::VectorXd margins = labels_.asDiagonal() * (features_ * x);
        Eigen::VectorXd w(margins.size());
        for (Eigen::Index i = 0; i < margins.size(); ++i) w[i] = -labels_[i] * sigmoid(-margins[i]);
        return features_.transpose() * w / static_cast<double>(margins.size()) + ridge_ * x;
    }

    double smoothness() const override { return smoothness_; }
    Eigen::VectorXd optimum() const override { return optimum_; }
    std::string family() const override { return "logistic_sum"; }
    double probe_box() const override { return 5.0; }

private:
    static double softplus(double t) {
        return t > 0.0 ? t + std::log1p(std::exp(-t)) : std::log1p(std::exp(t));
    }
    static double sigmoid(double t) { return 1.0 / (1.0 + std::exp(-t)); }

    void solve_optimum() {
        // Damped Newton on a strongly convex problem.
        Eigen::VectorXd x = Eigen::VectorXd::Zero(features_.cols());
        for (int it = 0; it < 100; ++it) {
            const Eigen::VectorXd g = gradient(x);
            if (g.norm() < 1e-13) break;
            const Eigen::VectorXd margins = labels_.asDiagonal() * (features_ * x);
            Eigen::MatrixXd h = ridge_ * Eigen::MatrixXd::Identity(x.size(), x.size());
            for (Eigen::Index i = 0; i < margins.size(); ++i) {
                const double s = sigmoid(-margins[i]);
                h += (s * (1.0 - s) / static_cast<double>(margins.size())) *
                     features_.row(i).transpose() * features_.row(i);
            }
            x -= h.ldlt().solve(g);
        }
        optimum_ = x;
    }

    Eigen::MatrixXd features_;
    Eigen::VectorXd labels_;
    double ridge_;
    double smoothness_ = 0.0;
    Eigen::VectorXd optimum_;
};

}  // namespace

std::shared_ptr<SmoothObjective> make_quadratic(Eigen::VectorXd center, Eigen::VectorXd scaling) {
    return std::make_shared<Quadratic>(std::move(center), std::move(scaling));
}

std::shared_ptr<SmoothObjective> make_rosenbrock(std::size_t d) {
    return std::make_shared<Rosenbrock>(d);
}

std::shared_ptr<SmoothObjective> make_logistic_sum(std::size_t d, std::size_t rows, double ridge,
                                                   std::uint64_t seed) {
    return std::make_shared<LogisticSum>(d, rows, ridge, seed);
}

}  // namespace oblivion
