#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "flatscan/diagram_distance.hpp"
#include "flatscan/filtration.hpp"
#include "flatscan/flat.hpp"
#include "flatscan/persistence.hpp"
#include "flatscan/shape.hpp"

namespace flatscan {

/// chi(Gr(k,n)): 0 when n is even and k odd, binom(floor(n/2), floor(k/2))
/// otherwise.
long long chi_grassmannian(int k, int n);

/// Same value by the Schubert recursion
/// chi(Gr(k,n)) = chi(Gr(k-1,n-1)) + (-1)^k chi(Gr(k,n-1)); cross-check path.
long long chi_grassmannian_recursive(int k, int n);

enum class ChiCase { m0, case21, case22, case23, case24 };
std::string to_string(ChiCase c);

/// The two Euler characteristics in the Radon inversion criterion:
/// chi1 = chi(Gr(m,n)) for flats through one point, chi2 = chi(Gr(m-1,n-1))
/// for flats through two (0 when m = 0). chi1 != chi2 except when n and m
/// are both odd.
struct ChiPair {
    int m = 0, n = 0;
    long long chi1 = 0, chi2 = 0;
    ChiCase case_tag = ChiCase::m0;
};

ChiPair chi_pair(int m, int n);

/// Options for dpht_scan. max_degree < 0 selects the truncation default
/// m - 1 (0 for m = 0, with a warning recorded on the result). epsilon <= 0
/// selects the default slice thickness.
struct ScanOptions {
    int max_degree = -1;
    bool euler_curves = false;
    bool slice_chi = false;
    double epsilon = -1.0;
    int threads = 1;
};

/// Euler curve: right-continuous step function r -> chi(sublevel at r),
/// one breakpoint per distinct filtration value.
using EulerCurve = std::vector<std::pair<double, int>>;

/// The distance-from-flat transform of one shape over a sampled set of
/// flats: per flat, diagrams for degrees 0..K, optionally the Euler curve
/// and the slice Euler characteristic.
struct DphtResult {
    std::string shape_id;
    int m = 0;
    std::vector<Flat> flats;
    std::vector<std::vector<PersistenceDiagram>> diagrams;  // per flat, degrees 0..K
    std::vector<EulerCurve> euler_curves;                   // empty unless requested
    std::vector<int> slice_chi;                             // empty unless requested
    std::vector<std::string> warnings;                      // not serialized
};

DphtResult dpht_scan(const Shape& shape, int m, const std::vector<Flat>& flats,
                     const ScanOptions& options = {}, const std::string& shape_id = "");

EulerCurve euler_curve(const Shape& shape, const FiltrationValues& filt);

/// chi of the epsilon-thickened level set X intersect P, the discrete
/// Radon transform value at P. epsilon <= 0 selects the default.
int radon_chi(const Shape& shape, const Flat& p, double epsilon = -1.0);

/// Euler characteristic of the slice reconstructed from degrees 0..m-1 only:
/// sum of (-1)^k beta_k(slice) for k < m.
int betti_slice_euler(const Shape& shape, const Flat& p, int m, double epsilon = -1.0);

/// Desk-scale injectivity check: random distinct binary grids compared by
/// their chi vectors over all deduplicated lines through pixel-center pairs.
struct InjectivityReport {
    int grid_size = 0;
    int pair_count = 0;
    int distinguished = 0;
    int line_family_size = 0;
    double fraction() const {
        return pair_count == 0 ? 0.0 : static_cast<double>(distinguished) / pair_count;
    }
};

InjectivityReport injectivity_probe(int grid_size, int pair_count, std::uint64_t seed);

/// Per-step record of a continuity probe: how the flat distance, the
/// sup-norm gap of the filtration functions, and the degree-0 bottleneck
/// shrink along a schedule converging to the limit flat.
struct ContinuityStep {
    double flat_distance = 0.0;   // affine_distance(Q, P)
    double sup_gap = 0.0;         // max over vertices of |f_Q - f_P|
    double bottleneck0 = 0.0;     // bottleneck of the degree-0 diagrams
};

struct ContinuityReport {
    std::vector<ContinuityStep> steps;
    bool stability_ok = false;    // bottleneck <= sup_gap + 1e-9 at every step
    bool converged = false;       // final bottleneck below the tolerance
};

ContinuityReport continuity_probe(const Shape& shape, const Flat& p,
                                  const std::vector<Flat>& schedule, double final_tolerance);

/// Bottleneck distances per degree between two shapes filtered by the same
/// flat; infinite entries witness the instability of the transform.
struct InstabilityReport {
    std::vector<double> bottleneck_by_degree;
};

InstabilityReport instability_demo(const Shape& shape_a, const Shape& shape_b, const Flat& p,
                                   int max_degree);

/// Height-versus-tangent-flat comparison: the degree-0 diagram of the height
/// function h_v matches the diagram of the distance to the tangent
/// hyperplane after translating all finite values by the bounding radius;
/// a through-the-shape hyperplane shows a point count no height function
/// attains.
struct HphtCphtReport {
    double shift = 0.0;                    // M, the bounding radius
    double max_translation_gap = 0.0;      // diagram mismatch after the shift
    std::size_t height_pd0_count = 0;
    std::size_t through_flat_pd0_count = 0;
    bool diagrams_match = false;           // to 1e-9 after the shift
};

HphtCphtReport hpht_vs_cpht_demo(const Shape& shape, const Eigen::VectorXd& v,
                                 const Flat& through_flat);

/// Rotation of a flat about the origin in the plane of coordinates (0,1).
Flat rotate_flat_xy(const Flat& p, double angle);

/// Translation of a flat by a vector.
Flat translate_flat(const Flat& p, const Eigen::VectorXd& offset);

}  // namespace flatscan
