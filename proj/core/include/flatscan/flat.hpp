#pragma once

#include <Eigen/Dense>
#include <vector>

namespace flatscan {

/// An m-dimensional affine subspace of R^n in projection affine coordinates:
/// an orthonormal basis of the direction space plus a displacement vector
/// orthogonal to it. The pair (basis, displacement) is the normal form every
/// other operation assumes; construct through canonicalize() unless the
/// inputs are already canonical.
struct Flat {
    Eigen::MatrixXd basis;         ///< n x m, orthonormal columns; m may be 0
    Eigen::VectorXd displacement;  ///< in R^n, orthogonal to span(basis)

    int ambient_dim() const { return static_cast<int>(displacement.size()); }
    int flat_dim() const { return static_cast<int>(basis.cols()); }

    /// Orthonormality of the basis and orthogonality of the displacement,
    /// both to the stated tolerance.
    bool is_canonical(double tol = 1e-10) const;
};

/// Orthonormalize raw_basis (modified Gram-Schmidt, two passes) and replace
/// raw_point by its component orthogonal to the span. Affine hull is
/// preserved. Throws error("degenerate basis") when a residual norm drops
/// below 1e-12 during orthogonalization.
Flat canonicalize(const std::vector<Eigen::VectorXd>& raw_basis,
                  const Eigen::VectorXd& raw_point);

/// Column-wise variant; raw_basis is n x m.
Flat canonicalize(const Eigen::MatrixXd& raw_basis, const Eigen::VectorXd& raw_point);

/// The underlying m-plane: same basis, zero displacement.
Flat deaffine(const Flat& p);

/// The isometric embedding AG(m,n) -> Gr(m+1,n+1): lift the basis vectors by
/// a zero coordinate and append (b' + e_{n+1}) / sqrt(1 + |b|^2). Output is a
/// linear flat (zero displacement) with orthonormal basis.
Flat embed(const Flat& p);

/// Euclidean distance from x to the affine hull of p,
/// |x - b - sum_i (x . v_i) v_i|. Requires p canonical.
double distance_to_flat(const Flat& p, const Eigen::VectorXd& x);

/// Point flat at the given location.
Flat point_flat(const Eigen::VectorXd& location);

/// Line through `point` with direction `dir` (need not be unit).
Flat line_flat(const Eigen::VectorXd& point, const Eigen::VectorXd& dir);

}  // namespace flatscan
