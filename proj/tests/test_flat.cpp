#include <doctest.h>

#include "flatscan/error.hpp"
#include "flatscan/flat.hpp"
#include "oracles.hpp"

using namespace flatscan;

namespace {

Eigen::VectorXd vec2(double x, double y) {
    Eigen::VectorXd v(2);
    v << x, y;
    return v;
}

Eigen::VectorXd vec3(double x, double y, double z) {
    Eigen::VectorXd v(3);
    v << x, y, z;
    return v;
}

}  // namespace

TEST_CASE("canonicalize projects onto the x-axis") {
    const Flat f = canonicalize(std::vector<Eigen::VectorXd>{vec2(2, 0)}, vec2(3, 5));
    CHECK(f.flat_dim() == 1);
    CHECK(f.basis(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(f.basis(1, 0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(f.displacement(0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(f.displacement(1) == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(f.is_canonical());
}

TEST_CASE("canonicalize of a point flat keeps the point") {
    const Flat f = canonicalize(std::vector<Eigen::VectorXd>{}, vec2(1, 2));
    CHECK(f.flat_dim() == 0);
    CHECK(f.displacement == vec2(1, 2));
    CHECK(f.is_canonical());
}

TEST_CASE("canonicalize agrees with the QR oracle") {
    Eigen::MatrixXd raw(3, 2);
    raw.col(0) = vec3(1, 0, 0);
    raw.col(1) = vec3(1, 1, 0);
    const Flat f = canonicalize(raw, vec3(0, 0, 3));
    CHECK(f.basis.col(0).isApprox(vec3(1, 0, 0), 1e-12));
    CHECK(f.basis.col(1).isApprox(vec3(0, 1, 0), 1e-12));
    CHECK(f.displacement.isApprox(vec3(0, 0, 3), 1e-12));

    const Eigen::MatrixXd q = oracles::qr_orthonormal_basis(raw);
    CHECK(oracles::span_gap(f.basis, q) < 1e-10);
    // Orthogonal part of the point relative to the oracle span.
    const Eigen::VectorXd b = vec3(0, 0, 3) - q * (q.transpose() * vec3(0, 0, 3));
    CHECK((f.displacement - b).norm() < 1e-10);
}

TEST_CASE("canonicalize rejects dependent bases") {
    Eigen::MatrixXd raw(2, 2);
    raw.col(0) = vec2(1, 1);
    raw.col(1) = vec2(2, 2);
    CHECK_THROWS_WITH_AS(canonicalize(raw, vec2(0, 0)), "degenerate basis", error);
}

TEST_CASE("deaffine drops the displacement only") {
    const Flat line = canonicalize(std::vector<Eigen::VectorXd>{vec2(1, 0)}, vec2(0, 1));
    const Flat plane = canonicalize(std::vector<Eigen::VectorXd>{vec3(1, 0, 0), vec3(0, 1, 0)}, vec3(0, 0, 3));
    CHECK(deaffine(line).displacement.norm() == 0.0);
    CHECK(deaffine(line).basis == line.basis);
    CHECK(deaffine(plane).displacement.norm() == 0.0);
    const Flat pt = point_flat(vec2(1, 2));
    CHECK(deaffine(pt).displacement.norm() == 0.0);
}

TEST_CASE("embed lifts a point to the spanned line") {
    // (x,y) goes to span{(x,y,1)/sqrt(1+x^2+y^2)}
    const double x = 2.0, y = -1.0;
    const Flat e = embed(point_flat(vec2(x, y)));
    CHECK(e.flat_dim() == 1);
    CHECK(e.ambient_dim() == 3);
    const double s = 1.0 / std::sqrt(1 + x * x + y * y);
    CHECK(e.basis.col(0).isApprox(vec3(s * x, s * y, s), 1e-12));
    CHECK(e.is_canonical());
}

TEST_CASE("embed lifts the line y=r to the expected plane") {
    const double r = 3.0;
    const Flat e = embed(canonicalize(std::vector<Eigen::VectorXd>{vec2(1, 0)}, vec2(0, r)));
    CHECK(e.flat_dim() == 2);
    CHECK(e.basis.col(0).isApprox(vec3(1, 0, 0), 1e-12));
    const double s = 1.0 / std::sqrt(1 + r * r);
    CHECK(e.basis.col(1).isApprox(vec3(0, s * r, s), 1e-12));
}

TEST_CASE("embed sends the origin point flat to the last axis") {
    for (int n = 2; n <= 4; ++n) {
        const Flat e = embed(point_flat(Eigen::VectorXd::Zero(n)));
        CHECK(e.basis.col(0).isApprox(Eigen::VectorXd::Unit(n + 1, n), 1e-15));
    }
}

TEST_CASE("distance_to_flat matches hand values") {
    const Flat x_axis = canonicalize(std::vector<Eigen::VectorXd>{vec2(1, 0)}, vec2(0, 0));
    CHECK(distance_to_flat(x_axis, vec2(3, 4)) == doctest::Approx(4.0).epsilon(1e-12));
    const Flat y1 = canonicalize(std::vector<Eigen::VectorXd>{vec2(1, 0)}, vec2(0, 1));
    CHECK(distance_to_flat(y1, vec2(3, 4)) == doctest::Approx(3.0).epsilon(1e-12));
    const Flat z0 = canonicalize(std::vector<Eigen::VectorXd>{vec3(1, 0, 0), vec3(0, 1, 0)}, vec3(0, 0, 0));
    CHECK(distance_to_flat(z0, vec3(1, 2, -5)) == doctest::Approx(5.0).epsilon(1e-12));
    const Flat pt = point_flat(vec2(1, 1));
    CHECK(distance_to_flat(pt, vec2(4, 5)) == doctest::Approx(5.0).epsilon(1e-12));
}
