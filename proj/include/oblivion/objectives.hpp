#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include <Eigen/Dense>

namespace oblivion {

/// L-smooth objective with a known minimum. The optimum handle and the exact
/// gradient exist for test assertions; estimators only ever see oracle
/// samples.
class SmoothObjective {
public:
    virtual ~SmoothObjective() = default;
    virtual std::size_t dimension() const = 0;
    virtual double value(const Eigen::VectorXd& x) const = 0;
    virtual Eigen::VectorXd gradient(const Eigen::VectorXd& x) const = 0;
    virtual double smoothness() const = 0;
    virtual Eigen::VectorXd optimum() const = 0;
    virtual std::string family() const = 0;
    /// Box half-width within which the smoothness constant is quoted (and
    /// within which Lipschitz probes sample pairs).
    virtual double probe_box() const { return 10.0; }
};

/// f(x) = 1/2 (x-c)' diag(s) (x-c); identity scaling by default.
std::shared_ptr<SmoothObjective> make_quadratic(Eigen::VectorXd center,
                                                Eigen::VectorXd scaling = Eigen::VectorXd());

/// Classic banana-valley sum, minimum at the all-ones point; smoothness
/// quoted over [-2, 2]^d.
std::shared_ptr<SmoothObjective> make_rosenbrock(std::size_t d);

/// Ridge-regularized logistic loss over a synthetic dataset drawn from the
/// seed; the optimum is solved to high precision at construction.
std::shared_ptr<SmoothObjective> make_logistic_sum(std::size_t d, std::size_t rows, double ridge,
                                                   std::uint64_t seed);

}  // namespace oblivion
