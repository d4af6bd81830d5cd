#include "flatscan/filtration.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "flatscan/error.hpp"

namespace flatscan {

FiltrationValues lower_star(const Shape& shape, const std::vector<double>& vertex_values) {
    if (vertex_values.size() != static_cast<std::size_t>(shape.vertex_count())) {
        throw error("lower_star: vertex value count mismatch");
    }
    for (double v : vertex_values) {
        if (!std::isfinite(v)) throw error("lower_star: vertex values must be finite");
    }
    FiltrationValues f;
    f.values.resize(shape.cells.size());
    for (std::size_t i = 0; i < shape.cells.size(); ++i) {
        double m = -std::numeric_limits<double>::infinity();
        for (const std::int32_t v : shape.cells[i].vertices) {
            m = std::max(m, vertex_values[static_cast<std::size_t>(v)]);
        }
        f.values[i] = m;
    }
    f.order.resize(shape.cells.size());
    std::iota(f.order.begin(), f.order.end(), 0);
    std::sort(f.order.begin(), f.order.end(), [&](std::int32_t a, std::int32_t b) {
        if (f.values[a] != f.values[b]) return f.values[a] < f.values[b];
        if (shape.cells[a].dim != shape.cells[b].dim) return shape.cells[a].dim < shape.cells[b].dim;
        return a < b;
    });
    return f;
}

FiltrationValues lower_star(const Shape& shape,
                            const std::function<double(std::int32_t)>& vertex_value) {
    std::vector<double> values(static_cast<std::size_t>(shape.vertex_count()));
    for (std::int32_t v = 0; v < shape.vertex_count(); ++v) {
        values[static_cast<std::size_t>(v)] = vertex_value(v);
    }
    return lower_star(shape, values);
}

std::vector<double> vertex_distances(const Shape& shape, const Flat& p) {
    if (p.ambient_dim() != shape.ambient_dim) {
        throw error("flat_filtration: ambient dimension mismatch");
    }
    const std::int32_t nv = shape.vertex_count();
    std::vector<double> values(static_cast<std::size_t>(nv));
    // x - b - Q(Q^T x), evaluated for all vertices at once.
    Eigen::MatrixXd r = shape.vertices;
    r.rowwise() -= p.displacement.transpose();
    if (p.flat_dim() > 0) {
        r -= (shape.vertices * p.basis) * p.basis.transpose();
    }
    for (std::int32_t v = 0; v < nv; ++v) values[static_cast<std::size_t>(v)] = r.row(v).norm();
    return values;
}

FiltrationValues flat_filtration(const Shape& shape, const Flat& p) {
    return lower_star(shape, vertex_distances(shape, p));
}

FiltrationValues height_filtration(const Shape& shape, const Eigen::VectorXd& v) {
    if (v.size() != shape.ambient_dim) {
        throw error("height_filtration: ambient dimension mismatch");
    }
    const Eigen::VectorXd h = shape.vertices * v;
    std::vector<double> values(h.data(), h.data() + h.size());
    return lower_star(shape, values);
}

Shape sublevel_shape(const Shape& shape, const FiltrationValues& filt, double threshold) {
    Shape out;
    out.kind = shape.kind;
    out.ambient_dim = shape.ambient_dim;

    const auto n = static_cast<std::int32_t>(shape.cells.size());
    std::vector<std::int32_t> cell_map(static_cast<std::size_t>(n), -1);
    std::vector<std::int32_t> vertex_map(static_cast<std::size_t>(shape.vertex_count()), -1);

    // Lower-star values are monotone, so the threshold set is automatically
    // closed under faces. Keep ids grouped by dimension.
    std::vector<std::int32_t> kept;
    for (int dim = 0; dim <= shape.top_dim(); ++dim) {
        for (std::int32_t i = 0; i < n; ++i) {
            if (shape.cells[i].dim == dim && filt.values[static_cast<std::size_t>(i)] <= threshold) {
                cell_map[static_cast<std::size_t>(i)] = static_cast<std::int32_t>(kept.size());
                kept.push_back(i);
            }
        }
    }
    std::int32_t nv_kept = 0;
    for (const std::int32_t i : kept) {
        if (shape.cells[i].dim == 0) {
            vertex_map[static_cast<std::size_t>(shape.cells[i].vertices[0])] = nv_kept++;
        }
    }
    out.vertices.resize(nv_kept, shape.ambient_dim);
    for (std::int32_t v = 0; v < shape.vertex_count(); ++v) {
        if (vertex_map[static_cast<std::size_t>(v)] >= 0) {
            out.vertices.row(vertex_map[static_cast<std::size_t>(v)]) = shape.vertices.row(v);
        }
    }
    out.cells.reserve(kept.size());
    out.faces.reserve(kept.size());
    for (const std::int32_t i : kept) {
        Cell c;
        c.dim = shape.cells[i].dim;
        c.vertices.reserve(shape.cells[i].vertices.size());
        for (const std::int32_t v : shape.cells[i].vertices) {
            c.vertices.push_back(vertex_map[static_cast<std::size_t>(v)]);
        }
        out.cells.push_back(std::move(c));
        std::vector<std::int32_t> fs;
        fs.reserve(shape.faces[static_cast<std::size_t>(i)].size());
        for (const std::int32_t f : shape.faces[static_cast<std::size_t>(i)]) {
            fs.push_back(cell_map[static_cast<std::size_t>(f)]);
        }
        out.faces.push_back(std::move(fs));
    }
    out.bounding_radius = 0.0;
    for (Eigen::Index i = 0; i < out.vertices.rows(); ++i) {
        out.bounding_radius = std::max(out.bounding_radius, out.vertices.row(i).norm());
    }
    return out;
}

Shape slice(const Shape& shape, const Flat& p, double epsilon) {
    const double eps = epsilon > 0.0 ? epsilon : default_slice_epsilon(shape);
    return sublevel_shape(shape, flat_filtration(shape, p), eps);
}

}  // namespace flatscan
