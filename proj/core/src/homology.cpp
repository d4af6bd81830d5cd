#include "flatscan/homology.hpp"

#include <algorithm>
#include <unordered_map>

#include "flatscan/error.hpp"

namespace flatscan {

namespace {

// XOR-merge of two sorted index lists.
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

int gf2_rank(std::vector<std::vector<std::int32_t>> columns) {
    std::unordered_map<std::int32_t, std::size_t> pivot_owner;
    int rank = 0;
    for (auto& col : columns) {
        std::sort(col.begin(), col.end());
        while (!col.empty()) {
            const std::int32_t low = col.back();
            auto it = pivot_owner.find(low);
            if (it == pivot_owner.end()) {
                pivot_owner.emplace(low, static_cast<std::size_t>(&col - columns.data()));
                ++rank;
                break;
            }
            col = sym_diff(col, columns[it->second]);
        }
    }
    return rank;
}

std::vector<int> betti(const Shape& shape, int max_degree) {
    if (max_degree < 0) throw error("betti: max_degree must be >= 0");
    // Per-dimension reindexing: boundary of a d-cell in terms of (d-1)-cell
    // row positions.
    const int top = shape.top_dim();
    std::vector<std::vector<std::int32_t>> dim_index(static_cast<std::size_t>(std::max(top, 0)) + 1);
    std::vector<std::int32_t> local(shape.cells.size());
    std::vector<int> counts(static_cast<std::size_t>(std::max(top, 0)) + 1, 0);
    for (std::size_t i = 0; i < shape.cells.size(); ++i) {
        const int d = shape.cells[i].dim;
        local[i] = counts[static_cast<std::size_t>(d)]++;
    }
    std::vector<int> ranks(static_cast<std::size_t>(std::max(top, 0)) + 2, 0);  // rank of boundary_d
    for (int d = 1; d <= top; ++d) {
        std::vector<std::vector<std::int32_t>> cols;
        for (std::size_t i = 0; i < shape.cells.size(); ++i) {
            if (shape.cells[i].dim != d) continue;
            std::vector<std::int32_t> col;
            col.reserve(shape.faces[i].size());
            for (const std::int32_t f : shape.faces[i]) {
                col.push_back(local[static_cast<std::size_t>(f)]);
            }
            cols.push_back(std::move(col));
        }
        ranks[static_cast<std::size_t>(d)] = gf2_rank(std::move(cols));
    }
    std::vector<int> out(static_cast<std::size_t>(max_degree) + 1, 0);
    for (int k = 0; k <= max_degree; ++k) {
        const int nk = k <= top ? counts[static_cast<std::size_t>(k)] : 0;
        const int rk = k <= top ? ranks[static_cast<std::size_t>(k)] : 0;
        const int rk1 = k + 1 <= top ? ranks[static_cast<std::size_t>(k) + 1] : 0;
        out[static_cast<std::size_t>(k)] = nk - rk - rk1;
    }
    return out;
}

}  // namespace flatscan
