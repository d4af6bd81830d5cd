#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "flatscan/flat.hpp"

namespace flatscan {

/// Principal angles between two linear subspaces, sorted ascending in
/// [0, pi/2]; length = min of the two subspace dimensions.
struct PrincipalAngles {
    std::vector<double> angles;
};

/// Principal angles via singular values of M_A^T M_B (cos theta_i = sigma_i),
/// sigma clamped to [0,1] before arccos. Both flats must be linear
/// (zero displacement) in the same ambient space; dimensions may differ.
PrincipalAngles principal_angles(const Flat& a, const Flat& b);

/// Same angles computed by the constrained-maximization recursion: maximize
/// a . b over unit vectors orthogonal to all previously selected ones, one
/// angle per step, each step solved numerically by projected alternating
/// maximization. Cross-check path only; agrees with principal_angles to 1e-8.
/// When aligned_a / aligned_b are non-null they receive the maximizing unit
/// vectors (one column per angle).
PrincipalAngles principal_angles_recursive(const Flat& a, const Flat& b,
                                           Eigen::MatrixXd* aligned_a = nullptr,
                                           Eigen::MatrixXd* aligned_b = nullptr);

/// Geodesic Grassmann distance (sum of squared principal angles)^(1/2).
/// Requires linear flats of equal dimension.
double grassmann_distance(const Flat& a, const Flat& b);

/// Metric on AG(m,n): Grassmann distance between the embedded flats in
/// Gr(m+1, n+1). Requires equal dimensions.
double affine_distance(const Flat& p, const Flat& q);

/// (max_i |sigma_i(A) - sigma_i(B)|, spectral norm of A - B) for square
/// matrices of equal shape; the first component never exceeds the second.
std::pair<double, double> weyl_gap(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

/// Uniform bound B_{p,delta} < 1 on |(1 + p.x) / sqrt((1+|p|^2)(1+|x|^2))|
/// over |x - p| >= delta. For p = 0 this is 1/sqrt(1 + delta^2); otherwise
/// the three-way maximum from the closed-form case analysis, with delta
/// first shrunk below |p| (shrinking only loosens the bound).
double appendix_bound(const Eigen::VectorXd& p, double delta);

/// Deterministic sample of canonical m-flats in R^n: directions from the
/// rotation-invariant distribution (orthonormalized Gaussian frames),
/// displacements uniform in the ball of the given radius projected
/// orthogonal to the span.
std::vector<Flat> sample_flats(int m, int n, int count, double radius,
                               std::uint64_t seed);

}  // namespace flatscan
