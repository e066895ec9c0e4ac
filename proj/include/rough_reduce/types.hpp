#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rough_reduce {

template <typename T>
using MatrixX = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;
template <typename T>
using VectorX = Eigen::Matrix<T, Eigen::Dynamic, 1>;

using MatrixXd = MatrixX<double>;
using VectorXd = VectorX<double>;
using Index = Eigen::Index;

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Exhaustive reduct search refused because the attribute count exceeds the limit.
class TooLargeError : public Error {
public:
    TooLargeError(std::size_t attributes, std::size_t limit)
        : Error("too large for exhaustive search: " + std::to_string(attributes) +
                " condition attributes exceed the limit of " + std::to_string(limit)),
          attributes_(attributes), limit_(limit) {}

    std::size_t attributes() const { return attributes_; }
    std::size_t limit() const { return limit_; }

private:
    std::size_t attributes_;
    std::size_t limit_;
};

/// Two rules share every condition value but disagree on the decision.
class InconsistentTableError : public Error {
public:
    InconsistentTableError(const std::string& what, double consistency)
        : Error(what + " (consistency factor " + std::to_string(consistency) + ")"),
          consistency_(consistency) {}

    /// Dependency degree of the decision on all condition attributes.
    double consistency() const { return consistency_; }

private:
    double consistency_;
};

} // namespace rough_reduce
