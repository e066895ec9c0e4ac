#pragma once

#include "rough_reduce/jacobi.hpp"
#include "rough_reduce/types.hpp"

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <string>
#include <type_traits>
#include <variant>

namespace rough_reduce {

/// Mean image plus an orthonormal eigenvector basis of the training scatter
/// matrix X Xᵀ (not divided by the image count), strongest direction first.
template <typename Scalar>
struct Eigenspace {
    VectorX<Scalar> mean;
    /// N x Q, one unit eigenvector per column.
    MatrixX<Scalar> basis;
    /// Q non-negative values, high to low.
    VectorX<Scalar> eigenvalues;

    Index pixels() const { return mean.size(); }
    Index rank() const { return eigenvalues.size(); }
};

template <typename Scalar>
struct CenteredImages {
    VectorX<Scalar> mean;
    /// N x P, one mean-subtracted image per column.
    MatrixX<Scalar> centered;
};

/// Packs equal-length image vectors into the columns of an N x P matrix.
template <typename Scalar>
MatrixX<Scalar> stack_columns(std::span<const VectorX<Scalar>> images) {
    if (images.empty()) throw Error("no images");
    const Index n = images.front().size();
    MatrixX<Scalar> out(n, static_cast<Index>(images.size()));
    for (std::size_t i = 0; i < images.size(); ++i) {
        if (images[i].size() != n)
            throw Error("image " + std::to_string(i) + " has " + std::to_string(images[i].size()) +
                        " pixels, expected " + std::to_string(n));
        out.col(static_cast<Index>(i)) = images[i];
    }
    return out;
}

/// Subtracts the per-pixel mean from every column.
template <typename Derived>
CenteredImages<typename Derived::Scalar> mean_center(const Eigen::MatrixBase<Derived>& images) {
    using Scalar = typename Derived::Scalar;
    if (images.cols() == 0 || images.rows() == 0) throw Error("mean_center: no images");
    CenteredImages<Scalar> out;
    out.mean = images.rowwise().mean();
    out.centered = images.colwise() - out.mean;
    return out;
}

enum class EigenRoute {
    /// Gram matrix when there are fewer images than pixels, else covariance.
    Automatic,
    /// Decompose the P x P matrix XᵀX and map eigenvectors back through X.
    Gram,
    /// Decompose the N x N matrix X Xᵀ directly.
    Covariance,
};

/// Fits an eigenspace to the images stored as columns of `images`.
///
/// Eigenvalues below 1e-10 of the largest (or at rounding-noise level) are
/// treated as zero and dropped together with their eigenvectors.
template <typename Derived>
Eigenspace<typename Derived::Scalar> fit_eigenspace(const Eigen::MatrixBase<Derived>& images,
                                                    EigenRoute route = EigenRoute::Automatic) {
    using Scalar = typename Derived::Scalar;
    if (images.cols() < 2) throw Error("fit_eigenspace: at least 2 images are required");
    if (!images.allFinite()) throw Error("fit_eigenspace: non-finite pixel value");

    auto [mean, x] = mean_center(images);
    const Index n = x.rows();
    const Index p = x.cols();
    if (route == EigenRoute::Automatic) route = p < n ? EigenRoute::Gram : EigenRoute::Covariance;

    MatrixX<Scalar> vectors;
    VectorX<Scalar> values;
    if (route == EigenRoute::Gram) {
        auto eig = jacobi_eigen(MatrixX<Scalar>(x.transpose() * x));
        values = std::move(eig.values);
        vectors = x * eig.vectors;
    } else {
        auto eig = jacobi_eigen(MatrixX<Scalar>(x * x.transpose()));
        values = std::move(eig.values);
        vectors = std::move(eig.vectors);
    }

    const Scalar eps = std::numeric_limits<Scalar>::epsilon();
    const Scalar noise = Scalar(16) * eps * eps * images.squaredNorm();
    const Scalar largest = values.size() ? std::max(values(0), Scalar(0)) : Scalar(0);
    Index keep = 0;
    while (keep < values.size() && values(keep) > Scalar(1e-10) * largest && values(keep) > noise)
        ++keep;

    Eigenspace<Scalar> out;
    out.mean = std::move(mean);
    out.eigenvalues = values.head(keep);
    out.basis = vectors.leftCols(keep);
    if (route == EigenRoute::Gram) {
        // Modified Gram-Schmidt restores orthonormality lost in the mapping X v.
        for (Index i = 0; i < keep; ++i) {
            for (Index j = 0; j < i; ++j)
                out.basis.col(i) -= out.basis.col(j).dot(out.basis.col(i)) * out.basis.col(j);
            out.basis.col(i).normalize();
            fix_sign(out.basis.col(i));
        }
    }
    return out;
}

template <typename Scalar>
VectorX<Scalar> project(const Eigenspace<Scalar>& space, const VectorX<Scalar>& x) {
    if (x.size() != space.pixels())
        throw Error("project: image has " + std::to_string(x.size()) + " pixels, eigenspace has " +
                    std::to_string(space.pixels()));
    return space.basis.transpose() * (x - space.mean);
}

/// Projects every column of `images`; returns Q x P coordinates.
template <typename Scalar, typename Derived>
MatrixX<Scalar> project_all(const Eigenspace<Scalar>& space, const Eigen::MatrixBase<Derived>& images) {
    if (images.rows() != space.pixels())
        throw Error("project: images have " + std::to_string(images.rows()) +
                    " pixels, eigenspace has " + std::to_string(space.pixels()));
    return space.basis.transpose() * (images.colwise() - space.mean);
}

template <typename Scalar>
VectorX<Scalar> reconstruct(const Eigenspace<Scalar>& space, const VectorX<Scalar>& coords) {
    if (coords.size() != space.rank()) throw Error("reconstruct: coordinate count mismatch");
    return space.mean + space.basis * coords;
}

/// Keeps the first `q` eigenvectors (all of them when `q` exceeds the rank).
template <typename Scalar>
Eigenspace<Scalar> truncate(const Eigenspace<Scalar>& space, Index q) {
    q = std::clamp<Index>(q, 0, space.rank());
    return {space.mean, space.basis.leftCols(q), space.eigenvalues.head(q)};
}

namespace strategy {

struct Standard {};
/// Removes the weakest `fraction` of the eigenvectors.
struct DropLastFraction {
    double fraction = 0.4;
};
/// Smallest prefix whose cumulative eigenvalue share reaches `threshold`.
struct Energy {
    double threshold = 0.9;
};
/// Eigenvectors whose eigenvalue is at least `threshold` times the largest.
struct Stretch {
    double threshold = 0.01;
};
struct DropFirst {};

} // namespace strategy

using SelectionStrategy = std::variant<strategy::Standard, strategy::DropLastFraction,
                                       strategy::Energy, strategy::Stretch, strategy::DropFirst>;

inline void validate(const SelectionStrategy& s) {
    if (auto* d = std::get_if<strategy::DropLastFraction>(&s); d && !(d->fraction > 0 && d->fraction < 1))
        throw Error("drop-last fraction must lie in (0, 1)");
    if (auto* e = std::get_if<strategy::Energy>(&s); e && !(e->threshold > 0 && e->threshold <= 1))
        throw Error("energy threshold must lie in (0, 1]");
    if (auto* t = std::get_if<strategy::Stretch>(&s); t && !(t->threshold > 0 && t->threshold <= 1))
        throw Error("stretch threshold must lie in (0, 1]");
}

/// Number of leading eigenvectors `strategy` keeps; DropFirst reports Q - 1.
template <typename Scalar>
Index selected_count(const VectorX<Scalar>& eigenvalues, const SelectionStrategy& s) {
    validate(s);
    const Index q = eigenvalues.size();
    if (q == 0) throw Error("select: eigenspace is empty");
    return std::visit(
        [&](const auto& st) -> Index {
            using T = std::decay_t<decltype(st)>;
            if constexpr (std::is_same_v<T, strategy::Standard>) {
                return q;
            } else if constexpr (std::is_same_v<T, strategy::DropLastFraction>) {
                const auto kept = static_cast<Index>(
                    std::floor((1.0 - st.fraction) * static_cast<double>(q) + 1e-9));
                return std::max<Index>(1, kept);
            } else if constexpr (std::is_same_v<T, strategy::Energy>) {
                const Scalar total = eigenvalues.sum();
                Scalar running = 0;
                for (Index i = 0; i < q; ++i) {
                    running += eigenvalues(i);
                    if (running / total >= Scalar(st.threshold)) return i + 1;
                }
                return q;
            } else if constexpr (std::is_same_v<T, strategy::Stretch>) {
                Index kept = 0;
                while (kept < q && eigenvalues(kept) / eigenvalues(0) >= Scalar(st.threshold)) ++kept;
                return kept;
            } else {
                if (q == 1) throw Error("select: dropping the first eigenvector leaves nothing");
                return q - 1;
            }
        },
        s);
}

template <typename Scalar>
Eigenspace<Scalar> select(const Eigenspace<Scalar>& space, const SelectionStrategy& s) {
    const Index kept = selected_count(space.eigenvalues, s);
    if (std::holds_alternative<strategy::DropFirst>(s))
        return {space.mean, space.basis.rightCols(kept), space.eigenvalues.tail(kept)};
    return truncate(space, kept);
}

} // namespace rough_reduce
