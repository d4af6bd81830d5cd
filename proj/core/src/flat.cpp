#include "flatscan/flat.hpp"

#include "flatscan/error.hpp"

namespace flatscan {

bool Flat::is_canonical(double tol) const {
    const int m = flat_dim();
    if (basis.rows() != displacement.size()) return false;
    for (int i = 0; i < m; ++i) {
        if (std::abs(basis.col(i).norm() - 1.0) > tol) return false;
        for (int j = i + 1; j < m; ++j) {
            if (std::abs(basis.col(i).dot(basis.col(j))) > tol) return false;
        }
        if (std::abs(basis.col(i).dot(displacement)) > tol) return false;
    }
    return true;
}

Flat canonicalize(const Eigen::MatrixXd& raw_basis, const Eigen::VectorXd& raw_point) {
    const auto n = raw_point.size();
    if (raw_basis.cols() > 0 && raw_basis.rows() != n) {
        throw error("canonicalize: basis vectors and point have different ambient dimensions");
    }
    const int m = static_cast<int>(raw_basis.cols());
    Eigen::MatrixXd q(n, m);
    for (int i = 0; i < m; ++i) {
        Eigen::VectorXd v = raw_basis.col(i);
        // Modified Gram-Schmidt, twice; the second pass restores
        // orthogonality lost to cancellation.
        for (int pass = 0; pass < 2; ++pass) {
            for (int j = 0; j < i; ++j) {
                v -= q.col(j).dot(v) * q.col(j);
            }
        }
        const double r = v.norm();
        if (r < 1e-12) throw error("degenerate basis");
        q.col(i) = v / r;
    }
    Eigen::VectorXd b = raw_point;
    for (int pass = 0; pass < 2; ++pass) {
        for (int j = 0; j < m; ++j) {
            b -= q.col(j).dot(b) * q.col(j);
        }
    }
    return Flat{std::move(q), std::move(b)};
}

Flat canonicalize(const std::vector<Eigen::VectorXd>& raw_basis,
                  const Eigen::VectorXd& raw_point) {
    Eigen::MatrixXd m(raw_point.size(), static_cast<Eigen::Index>(raw_basis.size()));
    for (std::size_t i = 0; i < raw_basis.size(); ++i) {
        if (raw_basis[i].size() != raw_point.size()) {
            throw error("canonicalize: basis vectors and point have different ambient dimensions");
        }
        m.col(static_cast<Eigen::Index>(i)) = raw_basis[i];
    }
    return canonicalize(m, raw_point);
}

Flat deaffine(const Flat& p) {
    return Flat{p.basis, Eigen::VectorXd::Zero(p.ambient_dim())};
}

Flat embed(const Flat& p) {
    const int n = p.ambient_dim();
    const int m = p.flat_dim();
    Eigen::MatrixXd basis = Eigen::MatrixXd::Zero(n + 1, m + 1);
    basis.topLeftCorner(n, m) = p.basis;
    const double scale = 1.0 / std::sqrt(1.0 + p.displacement.squaredNorm());
    basis.col(m).head(n) = scale * p.displacement;
    basis(n, m) = scale;
    return Flat{std::move(basis), Eigen::VectorXd::Zero(n + 1)};
}

double distance_to_flat(const Flat& p, const Eigen::VectorXd& x) {
    if (x.size() != p.ambient_dim()) {
        throw error("distance_to_flat: ambient dimension mismatch");
    }
    Eigen::VectorXd r = x - p.displacement;
    if (p.flat_dim() > 0) r -= p.basis * (p.basis.transpose() * x);
    return r.norm();
}

Flat point_flat(const Eigen::VectorXd& location) {
    return Flat{Eigen::MatrixXd(location.size(), 0), location};
}

Flat line_flat(const Eigen::VectorXd& point, const Eigen::VectorXd& dir) {
    Eigen::MatrixXd basis(point.size(), 1);
    basis.col(0) = dir;
    return canonicalize(basis, point);
}

}  // namespace flatscan
