#include "flatscan/grassmann.hpp"

#include <algorithm>
#include <cmath>

#include "flatscan/error.hpp"
#include "flatscan/rng.hpp"

namespace flatscan {

namespace {

void require_linear(const Flat& f, const char* who) {
    if (f.displacement.norm() > 1e-12) {
        throw error(std::string(who) + ": flats must be linear (zero displacement)");
    }
}

double clamp01(double x) { return std::min(1.0, std::max(0.0, x)); }

// Deterministic total order on basis matrices; ties the argument order of
// the angle computation to the operand contents so that swapping the two
// flats yields bit-identical results.
bool basis_less(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    if (a.cols() != b.cols()) return a.cols() < b.cols();
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        if (a(i) != b(i)) return a(i) < b(i);
    }
    return false;
}

// Angle from its cosine and sine estimates; the arcsin route keeps full
// relative accuracy for small angles where arccos loses half the digits.
double angle_from_cos_sin(double c, double s) {
    return c * c > 0.5 ? std::asin(clamp01(s)) : std::acos(clamp01(c));
}

}  // namespace

PrincipalAngles principal_angles(const Flat& a, const Flat& b) {
    if (a.ambient_dim() != b.ambient_dim()) {
        throw error("principal_angles: ambient dimension mismatch");
    }
    require_linear(a, "principal_angles");
    require_linear(b, "principal_angles");
    const int count = std::min(a.flat_dim(), b.flat_dim());
    PrincipalAngles out;
    if (count == 0) return out;
    // Canonical operand order; the wide operand carries the projector so the
    // residual below has exactly `count` singular values.
    const Flat* lo = &a;
    const Flat* hi = &b;
    if (b.flat_dim() < a.flat_dim() ||
        (b.flat_dim() == a.flat_dim() && basis_less(b.basis, a.basis))) {
        std::swap(lo, hi);
    }
    const Eigen::MatrixXd c = hi->basis.transpose() * lo->basis;  // (m_hi x count)
    const Eigen::VectorXd cosines = Eigen::JacobiSVD<Eigen::MatrixXd>(c).singularValues();
    // sin(theta_i) are the singular values of the projection residual.
    const Eigen::MatrixXd residual = lo->basis - hi->basis * c;
    Eigen::VectorXd sines = Eigen::JacobiSVD<Eigen::MatrixXd>(residual).singularValues();
    std::sort(sines.data(), sines.data() + sines.size());  // ascending, like the angles
    out.angles.resize(count);
    for (int i = 0; i < count; ++i) {
        out.angles[i] = angle_from_cos_sin(cosines(i), sines(i));
    }
    return out;
}

PrincipalAngles principal_angles_recursive(const Flat& a, const Flat& b,
                                           Eigen::MatrixXd* aligned_a,
                                           Eigen::MatrixXd* aligned_b) {
    if (a.ambient_dim() != b.ambient_dim()) {
        throw error("principal_angles_recursive: ambient dimension mismatch");
    }
    require_linear(a, "principal_angles_recursive");
    require_linear(b, "principal_angles_recursive");
    const int ma = a.flat_dim();
    const int mb = b.flat_dim();
    const int count = std::min(ma, mb);
    PrincipalAngles out;
    if (aligned_a) aligned_a->resize(a.ambient_dim(), count);
    if (aligned_b) aligned_b->resize(b.ambient_dim(), count);
    if (count == 0) return out;

    const Eigen::MatrixXd c = a.basis.transpose() * b.basis;
    Eigen::MatrixXd ua(ma, 0);  // coefficient vectors already selected
    Eigen::MatrixXd ub(mb, 0);

    auto project = [](const Eigen::MatrixXd& u, Eigen::VectorXd v) {
        if (u.cols() > 0) v -= u * (u.transpose() * v);
        return v;
    };
    // Deterministic unit vector in the orthogonal complement of u.
    auto complement_vector = [&](const Eigen::MatrixXd& u, int dim) {
        for (int j = 0; j < dim; ++j) {
            Eigen::VectorXd v = project(u, Eigen::VectorXd::Unit(dim, j));
            const double norm = v.norm();
            if (norm > 1e-8) return Eigen::VectorXd(v / norm);
        }
        throw error("principal_angles_recursive: exhausted complement");
    };

    for (int k = 0; k < count; ++k) {
        double best_sigma = -1.0;
        Eigen::VectorXd best_alpha, best_beta;
        // Alternating maximization of alpha^T C beta subject to the
        // orthogonality constraints, from every canonical start; the
        // restricted operator is tiny so this is cheap and avoids starts
        // orthogonal to the maximizer.
        for (int start = 0; start < mb; ++start) {
            Eigen::VectorXd beta = project(ub, Eigen::VectorXd::Unit(mb, start));
            double norm = beta.norm();
            if (norm < 1e-8) continue;
            beta /= norm;
            Eigen::VectorXd alpha;
            double sigma = 0.0;
            for (int it = 0; it < 2000; ++it) {
                Eigen::VectorXd ta = project(ua, c * beta);
                double na = ta.norm();
                if (na < 1e-15) {
                    alpha = complement_vector(ua, ma);
                } else {
                    alpha = ta / na;
                }
                Eigen::VectorXd tb = project(ub, c.transpose() * alpha);
                double nb = tb.norm();
                if (nb < 1e-15) break;
                beta = tb / nb;
                const double s = alpha.dot(c * beta);
                if (std::abs(s - sigma) < 1e-14) {
                    sigma = s;
                    break;
                }
                sigma = s;
            }
            if (sigma > best_sigma) {
                best_sigma = sigma;
                best_alpha = alpha;
                best_beta = beta;
            }
        }
        if (best_sigma < 0.0) {
            // Angle pi/2 exactly: any complement pair will do.
            best_alpha = complement_vector(ua, ma);
            best_beta = complement_vector(ub, mb);
            best_sigma = best_alpha.dot(c * best_beta);
        }
        // Small angles via the sine of the maximizing pair.
        const Eigen::VectorXd va = a.basis * best_alpha;
        const Eigen::VectorXd vb = b.basis * best_beta;
        const double sine = (vb - va.dot(vb) * va).norm();
        out.angles.push_back(angle_from_cos_sin(best_sigma, sine));
        ua.conservativeResize(Eigen::NoChange, ua.cols() + 1);
        ua.col(ua.cols() - 1) = best_alpha;
        ub.conservativeResize(Eigen::NoChange, ub.cols() + 1);
        ub.col(ub.cols() - 1) = best_beta;
        if (aligned_a) aligned_a->col(k) = a.basis * best_alpha;
        if (aligned_b) aligned_b->col(k) = b.basis * best_beta;
    }
    std::sort(out.angles.begin(), out.angles.end());
    return out;
}

double grassmann_distance(const Flat& a, const Flat& b) {
    if (a.flat_dim() != b.flat_dim()) {
        throw error("grassmann_distance: dimension mismatch");
    }
    const PrincipalAngles pa = principal_angles(a, b);
    double sum = 0.0;
    for (double t : pa.angles) sum += t * t;
    return std::sqrt(sum);
}

double affine_distance(const Flat& p, const Flat& q) {
    if (p.flat_dim() != q.flat_dim() || p.ambient_dim() != q.ambient_dim()) {
        throw error("affine_distance: dimension mismatch");
    }
    return grassmann_distance(embed(p), embed(q));
}

std::pair<double, double> weyl_gap(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw error("weyl_gap: shape mismatch");
    }
    if (a.rows() != a.cols()) {
        throw error("weyl_gap: matrices must be square");
    }
    if (!a.allFinite() || !b.allFinite()) {
        throw error("weyl_gap: entries must be finite");
    }
    const Eigen::VectorXd sa = Eigen::JacobiSVD<Eigen::MatrixXd>(a).singularValues();
    const Eigen::VectorXd sb = Eigen::JacobiSVD<Eigen::MatrixXd>(b).singularValues();
    const double gap = (sa - sb).cwiseAbs().maxCoeff();
    const double norm2 =
        Eigen::JacobiSVD<Eigen::MatrixXd>(a - b).singularValues()(0);
    return {gap, norm2};
}

double appendix_bound(const Eigen::VectorXd& p, double delta) {
    if (!(delta > 0.0)) throw error("appendix_bound: delta must be positive");
    if (!p.allFinite()) throw error("appendix_bound: entries must be finite");
    const double s = p.norm();
    if (s == 0.0) return 1.0 / std::sqrt(1.0 + delta * delta);
    // The case analysis assumes delta < |p|; shrinking delta enlarges the
    // admissible region, so the bound stays valid for the caller's delta.
    const double d = std::min(delta, s * (1.0 - 1e-12));
    const double t1 = s / std::sqrt(1.0 + s * s);
    const double u2 = 1.0 + d * s + s * s;
    const double t2 = u2 / std::sqrt(u2 * u2 + d * d);
    const double u3 = 1.0 - d * s + s * s;
    const double w3 = 2.0 * s - d;
    const double t3 = u3 / std::sqrt(u3 * u3 + w3 * w3);
    return std::max({t1, t2, t3});
}

std::vector<Flat> sample_flats(int m, int n, int count, double radius,
                               std::uint64_t seed) {
    if (m < 0 || n < 1 || m >= n) throw error("sample_flats: need 0 <= m < n");
    if (count < 1) throw error("sample_flats: count must be >= 1");
    if (!(radius > 0.0)) throw error("sample_flats: radius must be positive");
    Rng rng(seed);
    std::vector<Flat> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) {
        Flat f;
        for (int attempt = 0;; ++attempt) {
            Eigen::MatrixXd g(n, m);
            for (int i = 0; i < n; ++i) {
                for (int j = 0; j < m; ++j) g(i, j) = rng.normal();
            }
            Eigen::VectorXd dir(n);
            for (int i = 0; i < n; ++i) dir(i) = rng.normal();
            double dn = dir.norm();
            if (dn < 1e-12) continue;
            const double r = radius * std::pow(rng.uniform(), 1.0 / n);
            try {
                f = canonicalize(g, (r / dn) * dir);
                break;
            } catch (const error&) {
                if (attempt > 100) throw;
            }
        }
        out.push_back(std::move(f));
    }
    return out;
}

}  // namespace flatscan
