#pragma once

#include "rough_reduce/types.hpp"

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace rough_reduce {

template <typename Scalar>
struct SymmetricEigen {
    /// Sorted high to low.
    VectorX<Scalar> values;
    /// Unit eigenvectors as columns, each with its largest-magnitude component positive.
    MatrixX<Scalar> vectors;
    int sweeps = 0;
};

/// Flips `v` so that its largest-magnitude entry (earliest on ties) is positive.
template <typename Derived>
void fix_sign(Eigen::MatrixBase<Derived>&& v) {
    if (v.size() == 0) return;
    Index at = 0;
    v.cwiseAbs().maxCoeff(&at);
    if (v(at) < 0) v = -v;
}

template <typename Derived>
void fix_sign(Eigen::MatrixBase<Derived>& v) {
    fix_sign(std::move(v));
}

/// Reorders eigenpairs high to low. Numerically equal eigenvalues are ordered
/// by the first differing eigenvector component, larger first.
template <typename Scalar>
void sort_eigenpairs(VectorX<Scalar>& values, MatrixX<Scalar>& vectors) {
    for (Index j = 0; j < vectors.cols(); ++j) fix_sign(vectors.col(j));

    const Scalar scale = values.size() ? values.cwiseAbs().maxCoeff() : Scalar(0);
    const Scalar tie = Scalar(1e-12) * scale;
    std::vector<Index> order(static_cast<std::size_t>(values.size()));
    std::iota(order.begin(), order.end(), Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
        if (std::abs(values(a) - values(b)) > tie) return values(a) > values(b);
        for (Index k = 0; k < vectors.rows(); ++k)
            if (vectors(k, a) != vectors(k, b)) return vectors(k, a) > vectors(k, b);
        return false;
    });

    VectorX<Scalar> sorted_values(values.size());
    MatrixX<Scalar> sorted_vectors(vectors.rows(), vectors.cols());
    for (Index i = 0; i < values.size(); ++i) {
        sorted_values(i) = values(order[static_cast<std::size_t>(i)]);
        sorted_vectors.col(i) = vectors.col(order[static_cast<std::size_t>(i)]);
    }
    values = std::move(sorted_values);
    vectors = std::move(sorted_vectors);
}

/// Eigen-decomposition of a symmetric matrix by cyclic Jacobi rotations.
///
/// Sweeps over every (p, q) pair until the off-diagonal Frobenius norm falls
/// below `tolerance * ||A||_F`. Only the lower triangle's symmetry is assumed;
/// the input is symmetrized first.
template <typename Derived>
SymmetricEigen<typename Derived::Scalar> jacobi_eigen(
    const Eigen::MatrixBase<Derived>& input,
    typename Derived::Scalar tolerance = typename Derived::Scalar(1e-12), int max_sweeps = 100) {
    using Scalar = typename Derived::Scalar;
    if (input.rows() != input.cols()) throw Error("jacobi_eigen: matrix is not square");

    const Index n = input.rows();
    MatrixX<Scalar> a = (input + input.transpose()) / Scalar(2);
    MatrixX<Scalar> v = MatrixX<Scalar>::Identity(n, n);

    const Scalar norm = a.norm();
    auto off_diagonal = [&] {
        Scalar sum = 0;
        for (Index j = 0; j < n; ++j)
            for (Index i = 0; i < n; ++i)
                if (i != j) sum += a(i, j) * a(i, j);
        return std::sqrt(sum);
    };

    SymmetricEigen<Scalar> out;
    while (norm > Scalar(0) && off_diagonal() >= tolerance * norm) {
        if (out.sweeps == max_sweeps) throw Error("jacobi_eigen: no convergence");
        ++out.sweeps;
        for (Index p = 0; p < n - 1; ++p) {
            for (Index q = p + 1; q < n; ++q) {
                const Scalar apq = a(p, q);
                if (apq == Scalar(0)) continue;
                const Scalar theta = (a(q, q) - a(p, p)) / (Scalar(2) * apq);
                const Scalar t = (theta >= 0 ? Scalar(1) : Scalar(-1)) /
                                 (std::abs(theta) + std::sqrt(theta * theta + Scalar(1)));
                const Scalar c = Scalar(1) / std::sqrt(t * t + Scalar(1));
                const Scalar s = t * c;

                VectorX<Scalar> col_p = a.col(p), col_q = a.col(q);
                a.col(p) = c * col_p - s * col_q;
                a.col(q) = s * col_p + c * col_q;
                Eigen::Matrix<Scalar, 1, Eigen::Dynamic> row_p = a.row(p), row_q = a.row(q);
                a.row(p) = c * row_p - s * row_q;
                a.row(q) = s * row_p + c * row_q;
                a(p, q) = a(q, p) = Scalar(0);

                VectorX<Scalar> vp = v.col(p), vq = v.col(q);
                v.col(p) = c * vp - s * vq;
                v.col(q) = s * vp + c * vq;
            }
        }
    }

    out.values = a.diagonal();
    out.vectors = std::move(v);
    sort_eigenpairs(out.values, out.vectors);
    return out;
}

} // namespace rough_reduce
