#include "flatscan/persistence.hpp"

#include <algorithm>
#include <unordered_map>

#include "flatscan/error.hpp"

namespace flatscan {

void PersistenceDiagram::normalize() {
    std::sort(points.begin(), points.end());
}

PersistenceDiagram pd0_union_find(const Shape& shape, const FiltrationValues& filt) {
    if (filt.values.size() != shape.cells.size()) {
        throw error("pd0_union_find: filtration does not match shape");
    }
    const std::int32_t nv = shape.vertex_count();
    std::vector<std::int32_t> parent(static_cast<std::size_t>(nv));
    // Birth info per component root: (value, vertex cell id); the elder rule
    // compares these lexicographically.
    std::vector<std::pair<double, std::int32_t>> birth(static_cast<std::size_t>(nv));
    std::vector<char> alive(static_cast<std::size_t>(nv), 0);

    auto find = [&](std::int32_t x) {
        std::int32_t root = x;
        while (parent[static_cast<std::size_t>(root)] != root) {
            root = parent[static_cast<std::size_t>(root)];
        }
        while (parent[static_cast<std::size_t>(x)] != root) {
            const std::int32_t next = parent[static_cast<std::size_t>(x)];
            parent[static_cast<std::size_t>(x)] = root;
            x = next;
        }
        return root;
    };

    PersistenceDiagram out;
    out.degree = 0;
    for (const std::int32_t cid : filt.order) {
        const Cell& cell = shape.cells[static_cast<std::size_t>(cid)];
        if (cell.dim == 0) {
            const std::int32_t v = cell.vertices[0];
            parent[static_cast<std::size_t>(v)] = v;
            birth[static_cast<std::size_t>(v)] = {filt.values[static_cast<std::size_t>(cid)], cid};
            alive[static_cast<std::size_t>(v)] = 1;
        } else if (cell.dim == 1) {
            const std::int32_t ra = find(cell.vertices[0]);
            const std::int32_t rb = find(cell.vertices[1]);
            if (ra == rb) continue;
            const double t = filt.values[static_cast<std::size_t>(cid)];
            // Older birth survives; ties broken by cell id.
            std::int32_t survivor = ra, dying = rb;
            if (birth[static_cast<std::size_t>(rb)] < birth[static_cast<std::size_t>(ra)]) {
                survivor = rb;
                dying = ra;
            }
            const double b = birth[static_cast<std::size_t>(dying)].first;
            if (t > b) out.points.emplace_back(b, t);
            parent[static_cast<std::size_t>(dying)] = survivor;
        }
    }
    for (std::int32_t v = 0; v < nv; ++v) {
        if (alive[static_cast<std::size_t>(v)] && find(v) == v) {
            out.points.emplace_back(birth[static_cast<std::size_t>(v)].first, kInfiniteDeath);
        }
    }
    out.normalize();
    return out;
}

namespace {

// XOR-merge of two sorted position lists.
std::vector<std::int32_t> sym_diff(const std::vector<std::int32_t>& a,
                                   const std::vector<std::int32_t>& b) {
    std::vector<std::int32_t> out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] < b[j]) {
            out.push_back(a[i++]);
        } else if (b[j] < a[i]) {
            out.push_back(b[j++]);
        } else {
            ++i;
            ++j;
        }
    }
    out.insert(out.end(), a.begin() + static_cast<std::ptrdiff_t>(i), a.end());
    out.insert(out.end(), b.begin() + static_cast<std::ptrdiff_t>(j), b.end());
    return out;
}

}  // namespace

std::vector<PersistenceDiagram> pd_reduction(const Shape& shape, const FiltrationValues& filt,
                                             int max_degree) {
    if (filt.values.size() != shape.cells.size()) {
        throw error("pd_reduction: filtration does not match shape");
    }
    if (max_degree < 0) throw error("pd_reduction: max_degree must be >= 0");
    if (max_degree >= shape.ambient_dim) {
        throw error("pd_reduction: max_degree must be below the ambient dimension");
    }

    const auto n = static_cast<std::int32_t>(shape.cells.size());
    std::vector<std::int32_t> position(static_cast<std::size_t>(n));  // cell id -> filtration rank
    for (std::int32_t r = 0; r < n; ++r) {
        position[static_cast<std::size_t>(filt.order[static_cast<std::size_t>(r)])] = r;
    }

    std::vector<PersistenceDiagram> out(static_cast<std::size_t>(max_degree) + 1);
    for (int k = 0; k <= max_degree; ++k) out[static_cast<std::size_t>(k)].degree = k;

    const int top = std::min(shape.top_dim(), max_degree + 1);
    std::vector<char> killed(static_cast<std::size_t>(n), 0);   // cells paired as births
    std::vector<char> creator(static_cast<std::size_t>(n), 0);  // zero reduced column

    // Twist order: reduce high dimensions first so paired birth cells can be
    // cleared from the lower-dimensional pass.
    for (int d = top; d >= 1; --d) {
        std::unordered_map<std::int32_t, std::size_t> pivot_owner;  // pivot pos -> column slot
        std::vector<std::vector<std::int32_t>> cols;
        std::vector<std::int32_t> col_cell;
        for (const std::int32_t cid : filt.order) {
            const Cell& cell = shape.cells[static_cast<std::size_t>(cid)];
            if (cell.dim != d) continue;
            if (killed[static_cast<std::size_t>(cid)]) continue;  // clearing
            std::vector<std::int32_t> col;
            col.reserve(shape.faces[static_cast<std::size_t>(cid)].size());
            for (const std::int32_t f : shape.faces[static_cast<std::size_t>(cid)]) {
                col.push_back(position[static_cast<std::size_t>(f)]);
            }
            std::sort(col.begin(), col.end());
            while (!col.empty()) {
                const std::int32_t low = col.back();
                auto it = pivot_owner.find(low);
                if (it == pivot_owner.end()) break;
                col = sym_diff(col, cols[it->second]);
            }
            if (col.empty()) {
                creator[static_cast<std::size_t>(cid)] = 1;
                continue;
            }
            const std::int32_t low = col.back();
            const std::int32_t birth_cell = filt.order[static_cast<std::size_t>(low)];
            killed[static_cast<std::size_t>(birth_cell)] = 1;
            if (d - 1 <= max_degree) {
                const double b = filt.values[static_cast<std::size_t>(birth_cell)];
                const double t = filt.values[static_cast<std::size_t>(cid)];
                if (t > b) out[static_cast<std::size_t>(d) - 1].points.emplace_back(b, t);
            }
            pivot_owner.emplace(low, cols.size());
            cols.push_back(std::move(col));
            col_cell.push_back(cid);
        }
    }

    // Essential classes: unkilled creators. Vertices are always creators.
    for (std::int32_t cid = 0; cid < n; ++cid) {
        const Cell& cell = shape.cells[static_cast<std::size_t>(cid)];
        if (cell.dim > max_degree || killed[static_cast<std::size_t>(cid)]) continue;
        if (cell.dim == 0 || creator[static_cast<std::size_t>(cid)]) {
            out[static_cast<std::size_t>(cell.dim)].points.emplace_back(
                filt.values[static_cast<std::size_t>(cid)], kInfiniteDeath);
        }
    }
    for (auto& d : out) d.normalize();
    return out;
}

}  // namespace flatscan
