#include "flatscan/diagram_distance.hpp"

#include <algorithm>
#include <cmath>

#include "flatscan/error.hpp"

namespace flatscan {

namespace {

struct SplitDiagram {
    std::vector<std::pair<double, int>> essential;        // (birth, original index)
    std::vector<std::pair<double, double>> finite;        // (birth, death)
    std::vector<int> finite_index;                        // original indices
};

SplitDiagram split(const PersistenceDiagram& d) {
    SplitDiagram s;
    for (std::size_t i = 0; i < d.points.size(); ++i) {
        if (d.points[i].second == kInfiniteDeath) {
            s.essential.emplace_back(d.points[i].first, static_cast<int>(i));
        } else {
            s.finite.push_back(d.points[i]);
            s.finite_index.push_back(static_cast<int>(i));
        }
    }
    std::sort(s.essential.begin(), s.essential.end());
    return s;
}

double sup_cost(const std::pair<double, double>& a, const std::pair<double, double>& b) {
    return std::max(std::abs(a.first - b.first), std::abs(a.second - b.second));
}

double diag_cost(const std::pair<double, double>& a) { return 0.5 * (a.second - a.first); }

// Kuhn's augmenting-path matching on the diagonal-augmented bipartite graph.
// U = f1 points + one diagonal node per f2 point; V = f2 points + one
// diagonal node per f1 point. Returns the matching when perfect.
struct BottleneckMatcher {
    const std::vector<std::pair<double, double>>& f1;
    const std::vector<std::pair<double, double>>& f2;
    int n1, n2;
    std::vector<int> match_u, match_v;
    std::vector<char> used;
    double lambda = 0.0;

    BottleneckMatcher(const std::vector<std::pair<double, double>>& a,
                      const std::vector<std::pair<double, double>>& b)
        : f1(a), f2(b), n1(static_cast<int>(a.size())), n2(static_cast<int>(b.size())) {}

    bool edge(int u, int v) const {
        const bool u_real = u < n1;
        const bool v_real = v < n2;
        if (u_real && v_real) return sup_cost(f1[u], f2[v]) <= lambda;
        if (u_real) return v == n2 + u && diag_cost(f1[u]) <= lambda;
        if (v_real) return u == n1 + v && diag_cost(f2[v]) <= lambda;
        return true;  // diagonal-diagonal
    }

    bool try_augment(int u) {
        for (int v = 0; v < n1 + n2; ++v) {
            if (used[v] || !edge(u, v)) continue;
            used[v] = 1;
            if (match_v[v] < 0 || try_augment(match_v[v])) {
                match_u[u] = v;
                match_v[v] = u;
                return true;
            }
        }
        return false;
    }

    bool feasible(double lam) {
        lambda = lam;
        match_u.assign(n1 + n2, -1);
        match_v.assign(n1 + n2, -1);
        for (int u = 0; u < n1 + n2; ++u) {
            used.assign(n1 + n2, 0);
            if (!try_augment(u)) return false;
        }
        return true;
    }
};

// Minimum-cost assignment (square matrix) with potentials; O(n^3).
double hungarian(const std::vector<std::vector<double>>& cost, std::vector<int>& assignment) {
    const int n = static_cast<int>(cost.size());
    assignment.assign(n, -1);
    if (n == 0) return 0.0;
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<int> p(n + 1, 0), way(n + 1, 0);
    for (int i = 1; i <= n; ++i) {
        p[0] = i;
        int j0 = 0;
        std::vector<double> minv(n + 1, inf);
        std::vector<char> used(n + 1, 0);
        do {
            used[j0] = 1;
            const int i0 = p[j0];
            double delta = inf;
            int j1 = 0;
            for (int j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            const int j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0);
    }
    double total = 0.0;
    for (int j = 1; j <= n; ++j) {
        if (p[j]) {
            assignment[p[j] - 1] = j - 1;
            total += cost[p[j] - 1][j - 1];
        }
    }
    return total;
}

}  // namespace

DiagramDistanceReport bottleneck(const PersistenceDiagram& d1, const PersistenceDiagram& d2) {
    if (d1.degree != d2.degree) throw error("bottleneck: degree mismatch");
    const SplitDiagram s1 = split(d1);
    const SplitDiagram s2 = split(d2);
    DiagramDistanceReport report;
    if (s1.essential.size() != s2.essential.size()) {
        report.value = std::numeric_limits<double>::infinity();
        return report;
    }
    std::vector<std::pair<int, int>> matching;
    double ess_cost = 0.0;
    for (std::size_t i = 0; i < s1.essential.size(); ++i) {
        ess_cost = std::max(ess_cost, std::abs(s1.essential[i].first - s2.essential[i].first));
        matching.emplace_back(s1.essential[i].second, s2.essential[i].second);
    }

    std::vector<double> candidates{0.0, ess_cost};
    for (const auto& a : s1.finite) {
        candidates.push_back(diag_cost(a));
        for (const auto& b : s2.finite) candidates.push_back(sup_cost(a, b));
    }
    for (const auto& b : s2.finite) candidates.push_back(diag_cost(b));
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    BottleneckMatcher matcher(s1.finite, s2.finite);
    std::size_t lo = 0, hi = candidates.size() - 1;
    if (!matcher.feasible(candidates[hi])) {
        // Cannot happen: the largest candidate admits the all-diagonal matching.
        throw error("bottleneck: internal matching failure");
    }
    while (lo < hi) {
        const std::size_t mid = (lo + hi) / 2;
        if (matcher.feasible(candidates[mid])) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    matcher.feasible(candidates[hi]);
    const int n1 = static_cast<int>(s1.finite.size());
    const int n2 = static_cast<int>(s2.finite.size());
    for (int u = 0; u < n1; ++u) {
        const int v = matcher.match_u[u];
        matching.emplace_back(s1.finite_index[u], v < n2 ? s2.finite_index[v] : -1);
    }
    for (int v = 0; v < n2; ++v) {
        if (matcher.match_v[v] >= n1) matching.emplace_back(-1, s2.finite_index[v]);
    }
    report.value = std::max(ess_cost, candidates[hi]);
    report.matching = std::move(matching);
    return report;
}

DiagramDistanceReport wasserstein(const PersistenceDiagram& d1, const PersistenceDiagram& d2,
                                  double p) {
    if (d1.degree != d2.degree) throw error("wasserstein: degree mismatch");
    if (!(p >= 1.0)) throw error("wasserstein: p must be >= 1");
    const SplitDiagram s1 = split(d1);
    const SplitDiagram s2 = split(d2);
    DiagramDistanceReport report;
    if (s1.essential.size() != s2.essential.size()) {
        report.value = std::numeric_limits<double>::infinity();
        return report;
    }
    std::vector<std::pair<int, int>> matching;
    double total = 0.0;
    for (std::size_t i = 0; i < s1.essential.size(); ++i) {
        total += std::pow(std::abs(s1.essential[i].first - s2.essential[i].first), p);
        matching.emplace_back(s1.essential[i].second, s2.essential[i].second);
    }
    const int n1 = static_cast<int>(s1.finite.size());
    const int n2 = static_cast<int>(s2.finite.size());
    const int n = n1 + n2;
    if (n > 0) {
        std::vector<std::vector<double>> cost(n, std::vector<double>(n, 0.0));
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                if (i < n1 && j < n2) {
                    cost[i][j] = std::pow(sup_cost(s1.finite[i], s2.finite[j]), p);
                } else if (i < n1) {
                    cost[i][j] = std::pow(diag_cost(s1.finite[i]), p);
                } else if (j < n2) {
                    cost[i][j] = std::pow(diag_cost(s2.finite[j]), p);
                }
            }
        }
        std::vector<int> assignment;
        total += hungarian(cost, assignment);
        for (int i = 0; i < n1; ++i) {
            const int j = assignment[i];
            matching.emplace_back(s1.finite_index[i], j < n2 ? s2.finite_index[j] : -1);
        }
        for (int i = n1; i < n; ++i) {
            const int j = assignment[i];
            if (j < n2) matching.emplace_back(-1, s2.finite_index[j]);
        }
    }
    report.value = std::pow(total, 1.0 / p);
    report.matching = std::move(matching);
    return report;
}

}  // namespace flatscan
