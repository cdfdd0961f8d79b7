#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "oblivion/errors.hpp"

namespace oblivion {

using RowMatrixXd = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Ordered collection of scalar or vector samples with a recorded dimension.
/// Stored flat, row-major, so a batch maps onto an Eigen matrix view without
/// copying.
class SampleBatch {
public:
    SampleBatch() : dim_(1) {}
    explicit SampleBatch(std::size_t dim) : dim_(dim == 0 ? 1 : dim) {}

    static SampleBatch from_scalars(std::vector<double> values) {
        SampleBatch b(1);
        b.data_ = std::move(values);
        return b;
    }

    std::size_t size() const { return dim_ == 0 ? 0 : data_.size() / dim_; }
    std::size_t dim() const { return dim_; }
    bool empty() const { return data_.empty(); }
    bool is_scalar() const { return dim_ == 1; }

    void reserve(std::size_t n) { data_.reserve(n * dim_); }

    void push_scalar(double v) {
        if (dim_ != 1) throw ArgumentError("push_scalar on vector batch");
        data_.push_back(v);
    }

    void push_vector(const Eigen::VectorXd& v) {
        if (static_cast<std::size_t>(v.size()) != dim_)
            throw ArgumentError("push_vector: dimension mismatch");
        data_.insert(data_.end(), v.data(), v.data() + v.size());
    }

    double scalar_at(std::size_t i) const { return data_[i * dim_]; }

    Eigen::Map<const Eigen::VectorXd> vector_at(std::size_t i) const {
        return Eigen::Map<const Eigen::VectorXd>(data_.data() + i * dim_, dim_);
    }

    std::span<const double> scalars() const {
        if (dim_ != 1) throw ArgumentError("scalars() on vector batch");
        return {data_.data(), data_.size()};
    }

    Eigen::Map<const RowMatrixXd> matrix() const {
        return Eigen::Map<const RowMatrixXd>(data_.data(), size(), dim_);
    }

    std::vector<double>& raw() { return data_; }
    const std::vector<double>& raw() const { return data_; }

private:
    std::size_t dim_;
    std::vector<double> data_;
};

}  // namespace oblivion
