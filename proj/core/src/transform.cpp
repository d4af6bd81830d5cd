#include "flatscan/transform.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <thread>

#include "flatscan/error.hpp"
#include "flatscan/grassmann.hpp"
#include "flatscan/homology.hpp"
#include "flatscan/rng.hpp"

namespace flatscan {

namespace {

long long binom(int a, int b) {
    if (b < 0 || b > a) return 0;
    b = std::min(b, a - b);
    long long r = 1;
    for (int i = 1; i <= b; ++i) {
        r = r * (a - b + i) / i;
    }
    return r;
}

}  // namespace

long long chi_grassmannian(int k, int n) {
    if (k < 0 || n < 0 || k > n) throw error("chi_grassmannian: need 0 <= k <= n");
    if (n % 2 == 0 && k % 2 == 1) return 0;
    return binom(n / 2, k / 2);
}

long long chi_grassmannian_recursive(int k, int n) {
    if (k < 0 || n < 0 || k > n) throw error("chi_grassmannian_recursive: need 0 <= k <= n");
    if (k == 0 || k == n) return 1;
    return chi_grassmannian_recursive(k - 1, n - 1) +
           (k % 2 == 0 ? 1 : -1) * chi_grassmannian_recursive(k, n - 1);
}

std::string to_string(ChiCase c) {
    switch (c) {
        case ChiCase::m0: return "m0";
        case ChiCase::case21: return "2.1";
        case ChiCase::case22: return "2.2";
        case ChiCase::case23: return "2.3";
        case ChiCase::case24: return "2.4";
    }
    return "?";
}

ChiPair chi_pair(int m, int n) {
    if (m < 0 || m >= n) throw error("chi_pair: need 0 <= m < n");
    ChiPair out;
    out.m = m;
    out.n = n;
    out.chi1 = chi_grassmannian(m, n);
    out.chi2 = m == 0 ? 0 : chi_grassmannian(m - 1, n - 1);
    if (m == 0) {
        out.case_tag = ChiCase::m0;
    } else if (n % 2 == 0 && m % 2 == 1) {
        out.case_tag = ChiCase::case21;
    } else if (n % 2 == 1 && m % 2 == 0) {
        out.case_tag = ChiCase::case22;
    } else if (n % 2 == 0) {
        out.case_tag = ChiCase::case23;
        // chi1 = (n'/m') chi2 with n = 2n', m = 2m'.
        if (out.chi1 * (m / 2) != out.chi2 * (n / 2)) {
            throw error("chi_pair: case 2.3 ratio identity violated");
        }
    } else {
        out.case_tag = ChiCase::case24;
    }
    return out;
}

namespace {

int chi_below(const Shape& shape, const std::vector<double>& cell_values, double threshold) {
    int chi = 0;
    for (std::size_t i = 0; i < shape.cells.size(); ++i) {
        if (cell_values[i] <= threshold) {
            chi += (shape.cells[i].dim % 2 == 0) ? 1 : -1;
        }
    }
    return chi;
}

std::vector<double> cell_values_for_flat(const Shape& shape, const Flat& p) {
    const std::vector<double> vd = vertex_distances(shape, p);
    std::vector<double> values(shape.cells.size());
    for (std::size_t i = 0; i < shape.cells.size(); ++i) {
        double m = 0.0;
        for (const std::int32_t v : shape.cells[i].vertices) {
            m = std::max(m, vd[static_cast<std::size_t>(v)]);
        }
        values[i] = m;
    }
    return values;
}

void parallel_for(int count, int threads, const std::function<void(int)>& body) {
    if (threads <= 1 || count <= 1) {
        for (int i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    const int workers = std::min(threads, count);
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&]() {
            for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) body(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace

DphtResult dpht_scan(const Shape& shape, int m, const std::vector<Flat>& flats,
                     const ScanOptions& options, const std::string& shape_id) {
    DphtResult result;
    result.shape_id = shape_id;
    result.m = m;
    if (m < 0 || m >= shape.ambient_dim) {
        throw error("dpht_scan: need 0 <= m < ambient dimension");
    }
    for (const Flat& f : flats) {
        if (f.flat_dim() != m || f.ambient_dim() != shape.ambient_dim) {
            throw error("dpht_scan: flat dimensions do not match the scan");
        }
    }
    int max_degree = options.max_degree;
    if (max_degree < 0) {
        max_degree = std::max(m - 1, 0);
        if (m == 0) {
            result.warnings.push_back(
                "m = 0 scan: the truncation default m-1 is empty; computing degree 0");
        }
    }
    if (max_degree >= shape.ambient_dim) {
        throw error("dpht_scan: max_degree must be below the ambient dimension");
    }
    const double eps = options.epsilon > 0.0 ? options.epsilon : default_slice_epsilon(shape);

    result.flats = flats;
    const int count = static_cast<int>(flats.size());
    result.diagrams.resize(static_cast<std::size_t>(count));
    if (options.euler_curves) result.euler_curves.resize(static_cast<std::size_t>(count));
    if (options.slice_chi) result.slice_chi.resize(static_cast<std::size_t>(count));

    parallel_for(count, options.threads, [&](int i) {
        const FiltrationValues filt = flat_filtration(shape, flats[static_cast<std::size_t>(i)]);
        auto& slot = result.diagrams[static_cast<std::size_t>(i)];
        if (max_degree == 0) {
            slot.push_back(pd0_union_find(shape, filt));
        } else {
            slot = pd_reduction(shape, filt, max_degree);
        }
        if (options.euler_curves) {
            result.euler_curves[static_cast<std::size_t>(i)] = euler_curve(shape, filt);
        }
        if (options.slice_chi) {
            result.slice_chi[static_cast<std::size_t>(i)] = chi_below(shape, filt.values, eps);
        }
    });
    return result;
}

EulerCurve euler_curve(const Shape& shape, const FiltrationValues& filt) {
    EulerCurve curve;
    int chi = 0;
    for (std::size_t i = 0; i < filt.order.size(); ++i) {
        const std::int32_t cid = filt.order[i];
        chi += (shape.cells[static_cast<std::size_t>(cid)].dim % 2 == 0) ? 1 : -1;
        const double v = filt.values[static_cast<std::size_t>(cid)];
        if (i + 1 == filt.order.size() ||
            filt.values[static_cast<std::size_t>(filt.order[i + 1])] != v) {
            curve.emplace_back(v, chi);
        }
    }
    return curve;
}

int radon_chi(const Shape& shape, const Flat& p, double epsilon) {
    const double eps = epsilon > 0.0 ? epsilon : default_slice_epsilon(shape);
    return chi_below(shape, cell_values_for_flat(shape, p), eps);
}

int betti_slice_euler(const Shape& shape, const Flat& p, int m, double epsilon) {
    if (m <= 0) return 0;
    const Shape s = slice(shape, p, epsilon);
    const std::vector<int> b = betti(s, m - 1);
    int chi = 0;
    for (int k = 0; k < m; ++k) {
        chi += (k % 2 == 0) ? b[static_cast<std::size_t>(k)] : -b[static_cast<std::size_t>(k)];
    }
    return chi;
}

namespace {

struct LineKey {
    long long nx, ny, c;
    bool operator<(const LineKey& o) const {
        if (nx != o.nx) return nx < o.nx;
        if (ny != o.ny) return ny < o.ny;
        return c < o.c;
    }
};

long long gcd_ll(long long a, long long b) {
    while (b) {
        const long long t = a % b;
        a = b;
        b = t;
    }
    return a < 0 ? -a : a;
}

}  // namespace

InjectivityReport injectivity_probe(int grid_size, int pair_count, std::uint64_t seed) {
    if (grid_size < 1 || grid_size > 6) {
        throw error("injectivity_probe: grid_size must be in 1..6");
    }
    if (pair_count < 1) throw error("injectivity_probe: pair_count must be >= 1");

    const int g = grid_size;
    // Pixel centers in doubled coordinates are integers; a line is keyed by
    // its reduced integer normal form n.x = c, which dedups exactly.
    std::map<LineKey, Flat> lines;
    for (int i = 0; i < g * g; ++i) {
        for (int j = i + 1; j < g * g; ++j) {
            const long long x1 = 2 * (i % g) + 1 - g, y1 = 2 * (i / g) + 1 - g;
            const long long x2 = 2 * (j % g) + 1 - g, y2 = 2 * (j / g) + 1 - g;
            long long dx = x2 - x1, dy = y2 - y1;
            const long long gg = gcd_ll(dx, dy);
            dx /= gg;
            dy /= gg;
            if (dx < 0 || (dx == 0 && dy < 0)) {
                dx = -dx;
                dy = -dy;
            }
            const LineKey key{-dy, dx, -dy * x1 + dx * y1};
            if (lines.count(key)) continue;
            Eigen::VectorXd point(2), dir(2);
            point << 0.5 * x1, 0.5 * y1;
            dir << dx, dy;
            lines.emplace(key, line_flat(point, dir));
        }
    }

    const double eps = 0.5 * std::sqrt(2.0);
    Rng rng(seed);
    auto draw_grid = [&]() {
        std::vector<std::uint8_t> occ(static_cast<std::size_t>(g) * g);
        for (auto& b : occ) b = static_cast<std::uint8_t>(rng.below(2));
        return occ;
    };

    InjectivityReport report;
    report.grid_size = g;
    report.pair_count = pair_count;
    report.line_family_size = static_cast<int>(lines.size());
    for (int pair = 0; pair < pair_count; ++pair) {
        const std::vector<std::uint8_t> occ_a = draw_grid();
        std::vector<std::uint8_t> occ_b = draw_grid();
        while (occ_b == occ_a) occ_b = draw_grid();
        const Shape a = make_grid_shape({g, g}, occ_a);
        const Shape b = make_grid_shape({g, g}, occ_b);
        for (const auto& [key, flat] : lines) {
            if (radon_chi(a, flat, eps) != radon_chi(b, flat, eps)) {
                ++report.distinguished;
                break;
            }
        }
    }
    return report;
}

ContinuityReport continuity_probe(const Shape& shape, const Flat& p,
                                  const std::vector<Flat>& schedule, double final_tolerance) {
    ContinuityReport report;
    const std::vector<double> fp = vertex_distances(shape, p);
    const PersistenceDiagram pd_p = pd0_union_find(shape, lower_star(shape, fp));
    report.stability_ok = true;
    for (const Flat& q : schedule) {
        ContinuityStep step;
        step.flat_distance = affine_distance(q, p);
        const std::vector<double> fq = vertex_distances(shape, q);
        double gap = 0.0;
        for (std::size_t i = 0; i < fp.size(); ++i) gap = std::max(gap, std::abs(fp[i] - fq[i]));
        step.sup_gap = gap;
        const PersistenceDiagram pd_q = pd0_union_find(shape, lower_star(shape, fq));
        step.bottleneck0 = bottleneck(pd_p, pd_q).value;
        if (!(step.bottleneck0 <= step.sup_gap + 1e-9)) report.stability_ok = false;
        report.steps.push_back(step);
    }
    report.converged =
        report.steps.empty() || report.steps.back().bottleneck0 <= final_tolerance;
    return report;
}

InstabilityReport instability_demo(const Shape& shape_a, const Shape& shape_b, const Flat& p,
                                   int max_degree) {
    if (shape_a.ambient_dim != shape_b.ambient_dim) {
        throw error("instability_demo: shapes have different ambient dimensions");
    }
    const FiltrationValues fa = flat_filtration(shape_a, p);
    const FiltrationValues fb = flat_filtration(shape_b, p);
    const std::vector<PersistenceDiagram> da = pd_reduction(shape_a, fa, max_degree);
    const std::vector<PersistenceDiagram> db = pd_reduction(shape_b, fb, max_degree);
    InstabilityReport report;
    for (int k = 0; k <= max_degree; ++k) {
        report.bottleneck_by_degree.push_back(
            bottleneck(da[static_cast<std::size_t>(k)], db[static_cast<std::size_t>(k)]).value);
    }
    return report;
}

HphtCphtReport hpht_vs_cpht_demo(const Shape& shape, const Eigen::VectorXd& v,
                                 const Flat& through_flat) {
    if (shape.ambient_dim != 2) throw error("hpht_vs_cpht_demo: 2D shapes only");
    if (v.size() != 2) throw error("hpht_vs_cpht_demo: direction must be 2D");
    const double vn = v.norm();
    if (vn < 1e-12) throw error("hpht_vs_cpht_demo: direction must be nonzero");
    const Eigen::Vector2d u = v / vn;

    HphtCphtReport report;
    report.shift = shape.bounding_radius;

    PersistenceDiagram pd_h = pd0_union_find(shape, height_filtration(shape, u));
    // Tangent hyperplane orthogonal to v at offset M on the far side:
    // dist(x, P) = x . v + M on the shape.
    Eigen::VectorXd perp(2);
    perp << -u(1), u(0);
    Eigen::MatrixXd basis(2, 1);
    basis.col(0) = perp;
    const Flat tangent = canonicalize(basis, Eigen::VectorXd(-report.shift * u));
    const PersistenceDiagram pd_d = pd0_union_find(shape, flat_filtration(shape, tangent));

    for (auto& pt : pd_h.points) {
        pt.first += report.shift;
        if (pt.second != kInfiniteDeath) pt.second += report.shift;
    }
    pd_h.normalize();
    report.height_pd0_count = pd_h.points.size();
    if (pd_h.points.size() == pd_d.points.size()) {
        double gap = 0.0;
        for (std::size_t i = 0; i < pd_h.points.size(); ++i) {
            gap = std::max(gap, std::abs(pd_h.points[i].first - pd_d.points[i].first));
            const double dh = pd_h.points[i].second, dd = pd_d.points[i].second;
            if (dh == kInfiniteDeath || dd == kInfiniteDeath) {
                if (dh != dd) gap = std::numeric_limits<double>::infinity();
            } else {
                gap = std::max(gap, std::abs(dh - dd));
            }
        }
        report.max_translation_gap = gap;
        report.diagrams_match = gap <= 1e-9;
    } else {
        report.max_translation_gap = std::numeric_limits<double>::infinity();
        report.diagrams_match = false;
    }

    const PersistenceDiagram pd_t = pd0_union_find(shape, flat_filtration(shape, through_flat));
    report.through_flat_pd0_count = pd_t.points.size();
    return report;
}

Flat rotate_flat_xy(const Flat& p, double angle) {
    const int n = p.ambient_dim();
    if (n < 2) throw error("rotate_flat_xy: need ambient dimension >= 2");
    Eigen::MatrixXd rot = Eigen::MatrixXd::Identity(n, n);
    const double c = std::cos(angle), s = std::sin(angle);
    rot(0, 0) = c;
    rot(0, 1) = -s;
    rot(1, 0) = s;
    rot(1, 1) = c;
    return Flat{rot * p.basis, rot * p.displacement};
}

Flat translate_flat(const Flat& p, const Eigen::VectorXd& offset) {
    if (offset.size() != p.ambient_dim()) {
        throw error("translate_flat: ambient dimension mismatch");
    }
    return canonicalize(p.basis, p.displacement + offset);
}

}  // namespace flatscan
