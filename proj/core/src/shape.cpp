#include "flatscan/shape.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <istream>
#include <map>
#include <sstream>
#include <unordered_map>

#include "flatscan/error.hpp"

namespace flatscan {

int Shape::top_dim() const {
    int d = -1;
    for (const auto& c : cells) d = std::max(d, c.dim);
    return d;
}

namespace {

void finalize_bounding_radius(Shape& s) {
    s.bounding_radius = 0.0;
    for (Eigen::Index i = 0; i < s.vertices.rows(); ++i) {
        s.bounding_radius = std::max(s.bounding_radius, s.vertices.row(i).norm());
    }
}

// Packed key for a cubical cell: integer anchor corner plus axis mask.
std::uint64_t cube_key(int x, int y, int z, int mask) {
    return (static_cast<std::uint64_t>(mask) << 48) |
           (static_cast<std::uint64_t>(z) << 32) |
           (static_cast<std::uint64_t>(y) << 16) | static_cast<std::uint64_t>(x);
}

struct GridBuilder {
    int dim;  // ambient: 2 or 3
    std::vector<int> dims;  // {H,W} or {D,H,W}
    std::unordered_map<std::uint64_t, std::int32_t> ids;
    Shape shape;

    int width() const { return dims.back(); }
    int height() const { return dims[dims.size() - 2]; }
    int depth() const { return dim == 3 ? dims[0] : 1; }
};

}  // namespace

Shape make_grid_shape(const std::vector<int>& dims, const std::vector<std::uint8_t>& occupancy) {
    if (dims.size() != 2 && dims.size() != 3) {
        throw error("make_grid_shape: dims must be {H,W} or {D,H,W}");
    }
    std::size_t total = 1;
    for (int d : dims) {
        if (d < 1) throw error("make_grid_shape: dimensions must be positive");
        total *= static_cast<std::size_t>(d);
    }
    if (occupancy.size() != total) throw error("make_grid_shape: occupancy size mismatch");

    GridBuilder g;
    g.dim = static_cast<int>(dims.size());
    g.dims = dims;
    g.shape.kind = ShapeKind::cubical;
    g.shape.ambient_dim = g.dim;
    g.shape.grid_dims = dims;

    const int w = g.width(), h = g.height(), d = g.depth();
    auto occupied = [&](int l, int r, int c) {
        return occupancy[(static_cast<std::size_t>(l) * h + r) * w + c] != 0;
    };

    std::vector<std::array<int, 3>> corners;  // vertex anchor per vertex id

    // One pass per cell dimension keeps ids grouped by dimension; top cells
    // are visited in row-major order so ids are a deterministic function of
    // the occupancy alone.
    for (int cd = 0; cd <= g.dim; ++cd) {
        for (int l = 0; l < d; ++l) {
            for (int r = 0; r < h; ++r) {
                for (int c = 0; c < w; ++c) {
                    if (!occupied(l, r, c)) continue;
                    const int anchor[3] = {c, r, l};
                    for (int mask = 0; mask < (1 << g.dim); ++mask) {
                        if (__builtin_popcount(mask) != cd) continue;
                        // Free axes take both offsets; spanned axes stay at 0.
                        int free_axes[3], nfree = 0;
                        for (int ax = 0; ax < g.dim; ++ax) {
                            if (!(mask & (1 << ax))) free_axes[nfree++] = ax;
                        }
                        for (int off = 0; off < (1 << nfree); ++off) {
                            int a[3] = {anchor[0], anchor[1], anchor[2]};
                            for (int fi = 0; fi < nfree; ++fi) {
                                if (off & (1 << fi)) a[free_axes[fi]] += 1;
                            }
                            const std::uint64_t key = cube_key(a[0], a[1], a[2], mask);
                            if (g.ids.count(key)) continue;
                            const auto id = static_cast<std::int32_t>(g.shape.cells.size());
                            g.ids.emplace(key, id);
                            Cell cell;
                            cell.dim = cd;
                            // Corner vertices in lexicographic (x,y,z)-bit order.
                            int span_axes[3], nspan = 0;
                            for (int ax = 0; ax < g.dim; ++ax) {
                                if (mask & (1 << ax)) span_axes[nspan++] = ax;
                            }
                            for (int t = 0; t < (1 << nspan); ++t) {
                                int v[3] = {a[0], a[1], a[2]};
                                for (int si = 0; si < nspan; ++si) {
                                    if (t & (1 << si)) v[span_axes[si]] += 1;
                                }
                                if (cd == 0) {
                                    cell.vertices.push_back(id);
                                } else {
                                    cell.vertices.push_back(
                                        g.ids.at(cube_key(v[0], v[1], v[2], 0)));
                                }
                            }
                            if (cd == 0) corners.push_back({a[0], a[1], a[2]});
                            g.shape.cells.push_back(std::move(cell));
                        }
                    }
                }
            }
        }
    }

    // Codim-1 faces: drop one spanned axis, lower and upper copy.
    g.shape.faces.resize(g.shape.cells.size());
    for (std::size_t i = 0; i < g.shape.cells.size(); ++i) {
        const Cell& cell = g.shape.cells[i];
        if (cell.dim == 0) continue;
        const std::int32_t v0 = cell.vertices[0];
        const auto& a = corners[v0];
        int mask = 0;
        for (const std::int32_t vid : cell.vertices) {
            const auto& cr = corners[vid];
            for (int ax = 0; ax < g.dim; ++ax) {
                if (cr[ax] != a[ax]) mask |= 1 << ax;
            }
        }
        for (int ax = 0; ax < g.dim; ++ax) {
            if (!(mask & (1 << ax))) continue;
            const int sub = mask & ~(1 << ax);
            int upper[3] = {a[0], a[1], a[2]};
            upper[ax] += 1;
            g.shape.faces[i].push_back(g.ids.at(cube_key(a[0], a[1], a[2], sub)));
            g.shape.faces[i].push_back(g.ids.at(cube_key(upper[0], upper[1], upper[2], sub)));
        }
    }

    // Vertex coordinates centered on the grid center.
    g.shape.vertices.resize(static_cast<Eigen::Index>(corners.size()), g.dim);
    for (std::size_t i = 0; i < corners.size(); ++i) {
        g.shape.vertices(static_cast<Eigen::Index>(i), 0) = corners[i][0] - 0.5 * w;
        g.shape.vertices(static_cast<Eigen::Index>(i), 1) = corners[i][1] - 0.5 * h;
        if (g.dim == 3) {
            g.shape.vertices(static_cast<Eigen::Index>(i), 2) = corners[i][2] - 0.5 * d;
        }
    }
    finalize_bounding_radius(g.shape);
    return g.shape;
}

namespace {

[[noreturn]] void parse_fail(int line, const std::string& what) {
    throw error("parse error at line " + std::to_string(line) + ": " + what);
}

}  // namespace

Shape load_grid(std::istream& in) {
    std::string line;
    int lineno = 0;
    // Header.
    std::vector<int> dims;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag)) continue;  // blank line
        if (tag == "grid") {
            int h = 0, w = 0;
            if (!(ls >> h >> w) || h < 1 || w < 1) parse_fail(lineno, "malformed grid header");
            dims = {h, w};
        } else if (tag == "grid3") {
            int dd = 0, h = 0, w = 0;
            if (!(ls >> dd >> h >> w) || dd < 1 || h < 1 || w < 1) {
                parse_fail(lineno, "malformed grid3 header");
            }
            dims = {dd, h, w};
        } else {
            parse_fail(lineno, "expected 'grid H W' or 'grid3 D H W'");
        }
        std::string extra;
        if (ls >> extra) parse_fail(lineno, "trailing tokens after header");
        break;
    }
    if (dims.empty()) parse_fail(lineno == 0 ? 1 : lineno, "missing header");

    const int w = dims.back();
    std::size_t rows_needed = 1;
    for (std::size_t i = 0; i + 1 < dims.size(); ++i) rows_needed *= static_cast<std::size_t>(dims[i]);

    std::vector<std::uint8_t> occ;
    occ.reserve(rows_needed * static_cast<std::size_t>(w));
    std::size_t rows_read = 0;
    while (rows_read < rows_needed && std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::vector<std::uint8_t> row;
        std::string tok;
        while (ls >> tok) {
            if (tok == "0") {
                row.push_back(0);
            } else if (tok == "1") {
                row.push_back(1);
            } else {
                parse_fail(lineno, "expected 0/1 token, got '" + tok + "'");
            }
        }
        if (row.empty()) continue;  // blank line
        if (static_cast<int>(row.size()) != w) {
            parse_fail(lineno, "row has " + std::to_string(row.size()) + " tokens, expected " +
                                   std::to_string(w));
        }
        occ.insert(occ.end(), row.begin(), row.end());
        ++rows_read;
    }
    if (rows_read < rows_needed) {
        parse_fail(lineno + 1, "expected " + std::to_string(rows_needed) + " rows, got " +
                                   std::to_string(rows_read));
    }
    return make_grid_shape(dims, occ);
}

Shape load_grid(const std::string& text) {
    std::istringstream in(text);
    return load_grid(in);
}

std::string serialize_grid(const Shape& shape) {
    if (shape.kind != ShapeKind::cubical || shape.grid_dims.empty()) {
        throw error("serialize_grid: shape was not built from a grid");
    }
    const auto& dims = shape.grid_dims;
    const int w = dims.back();
    const int h = dims[dims.size() - 2];
    const int d = dims.size() == 3 ? dims[0] : 1;
    std::vector<std::uint8_t> occ(static_cast<std::size_t>(w) * h * d, 0);
    for (std::size_t i = 0; i < shape.cells.size(); ++i) {
        const Cell& cell = shape.cells[i];
        if (cell.dim != shape.ambient_dim) continue;
        // Anchor corner = lexicographically first vertex of the top cell.
        const Eigen::VectorXd pos = shape.vertices.row(cell.vertices[0]);
        const int c = static_cast<int>(std::lround(pos(0) + 0.5 * w));
        const int r = static_cast<int>(std::lround(pos(1) + 0.5 * h));
        const int l = dims.size() == 3 ? static_cast<int>(std::lround(pos(2) + 0.5 * d)) : 0;
        occ[(static_cast<std::size_t>(l) * h + r) * w + c] = 1;
    }
    std::ostringstream out;
    if (dims.size() == 2) {
        out << "grid " << h << ' ' << w << '\n';
    } else {
        out << "grid3 " << d << ' ' << h << ' ' << w << '\n';
    }
    for (int l = 0; l < d; ++l) {
        for (int r = 0; r < h; ++r) {
            for (int c = 0; c < w; ++c) {
                if (c) out << ' ';
                out << int(occ[(static_cast<std::size_t>(l) * h + r) * w + c]);
            }
            out << '\n';
        }
    }
    return out.str();
}

Shape make_simplicial_shape(const Eigen::MatrixXd& vertices,
                            const std::vector<std::array<std::int32_t, 3>>& triangles,
                            bool recenter) {
    Shape s;
    s.kind = ShapeKind::simplicial;
    s.ambient_dim = static_cast<int>(vertices.cols());
    s.vertices = vertices;
    if (recenter && vertices.rows() > 0) {
        const Eigen::RowVectorXd centroid = vertices.colwise().mean();
        s.vertices.rowwise() -= centroid;
    }
    const auto nv = static_cast<std::int32_t>(vertices.rows());
    for (std::int32_t i = 0; i < nv; ++i) {
        s.cells.push_back(Cell{0, {i}});
    }
    std::map<std::pair<std::int32_t, std::int32_t>, std::int32_t> edge_ids;
    auto add_edge = [&](std::int32_t a, std::int32_t b) {
        if (a > b) std::swap(a, b);
        auto it = edge_ids.find({a, b});
        if (it != edge_ids.end()) return it->second;
        const auto id = static_cast<std::int32_t>(s.cells.size()) ;
        edge_ids.emplace(std::make_pair(a, b), id);
        s.cells.push_back(Cell{1, {a, b}});
        return id;
    };
    for (const auto& t : triangles) {
        for (std::int32_t v : t) {
            if (v < 0 || v >= nv) throw error("make_simplicial_shape: vertex index out of range");
        }
        if (t[0] == t[1] || t[0] == t[2] || t[1] == t[2]) {
            throw error("make_simplicial_shape: degenerate triangle");
        }
    }
    // Edges first (ids grouped by dimension), then the triangles.
    for (const auto& t : triangles) {
        add_edge(t[0], t[1]);
        add_edge(t[0], t[2]);
        add_edge(t[1], t[2]);
    }
    s.faces.resize(s.cells.size());
    for (std::size_t i = 0; i < s.cells.size(); ++i) {
        if (s.cells[i].dim == 1) {
            s.faces[i] = {s.cells[i].vertices[0], s.cells[i].vertices[1]};
        }
    }
    std::map<std::array<std::int32_t, 3>, bool> seen_tri;
    for (const auto& t : triangles) {
        std::array<std::int32_t, 3> key = t;
        std::sort(key.begin(), key.end());
        if (seen_tri.count(key)) continue;
        seen_tri.emplace(key, true);
        Cell cell;
        cell.dim = 2;
        cell.vertices = {key[0], key[1], key[2]};
        s.cells.push_back(std::move(cell));
        s.faces.push_back({edge_ids.at({key[0], key[1]}), edge_ids.at({key[0], key[2]}),
                           edge_ids.at({key[1], key[2]})});
    }
    finalize_bounding_radius(s);
    return s;
}

Shape load_off(std::istream& in) {
    std::string line;
    int lineno = 0;
    auto next_content_line = [&](const char* what) {
        while (std::getline(in, line)) {
            ++lineno;
            const auto pos = line.find_first_not_of(" \t\r\n");
            if (pos == std::string::npos) continue;
            if (line[pos] == '#') continue;
            return;
        }
        parse_fail(lineno + 1, std::string("unexpected end of OFF input, expected ") + what);
    };

    next_content_line("OFF header");
    {
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        if (tag != "OFF") parse_fail(lineno, "expected OFF header");
    }
    next_content_line("counts line");
    Eigen::Index nv = 0;
    long nf = 0, ne = 0;
    {
        std::istringstream ls(line);
        if (!(ls >> nv >> nf >> ne) || nv < 0 || nf < 0) parse_fail(lineno, "malformed counts line");
    }
    Eigen::MatrixXd vertices(nv, 3);
    for (Eigen::Index i = 0; i < nv; ++i) {
        next_content_line("vertex line");
        std::istringstream ls(line);
        double x, y, z;
        if (!(ls >> x >> y >> z)) parse_fail(lineno, "malformed vertex line");
        vertices(i, 0) = x;
        vertices(i, 1) = y;
        vertices(i, 2) = z;
    }
    std::vector<std::array<std::int32_t, 3>> triangles;
    triangles.reserve(static_cast<std::size_t>(nf));
    for (long f = 0; f < nf; ++f) {
        next_content_line("face line");
        std::istringstream ls(line);
        int arity = 0;
        if (!(ls >> arity)) parse_fail(lineno, "malformed face line");
        if (arity != 3) parse_fail(lineno, "only triangle faces are supported");
        long a, b, c;
        if (!(ls >> a >> b >> c)) parse_fail(lineno, "malformed face line");
        for (long v : {a, b, c}) {
            if (v < 0 || v >= nv) parse_fail(lineno, "vertex index out of range");
        }
        triangles.push_back({static_cast<std::int32_t>(a), static_cast<std::int32_t>(b),
                             static_cast<std::int32_t>(c)});
    }
    try {
        return make_simplicial_shape(vertices, triangles, true);
    } catch (const error& e) {
        throw error(std::string("OFF: ") + e.what());
    }
}

Shape load_off(const std::string& text) {
    std::istringstream in(text);
    return load_off(in);
}

int euler_characteristic(const Shape& shape) {
    int chi = 0;
    for (const auto& c : shape.cells) chi += (c.dim % 2 == 0) ? 1 : -1;
    return chi;
}

double default_slice_epsilon(const Shape& shape) {
    double max_diam = 0.0;
    for (const auto& c : shape.cells) {
        if (c.dim == 0) continue;
        for (std::size_t i = 0; i < c.vertices.size(); ++i) {
            for (std::size_t j = i + 1; j < c.vertices.size(); ++j) {
                const double d =
                    (shape.vertices.row(c.vertices[i]) - shape.vertices.row(c.vertices[j])).norm();
                max_diam = std::max(max_diam, d);
            }
        }
    }
    return 0.5 * max_diam;
}

bool closed_under_faces(const Shape& shape) {
    const auto n = static_cast<std::int32_t>(shape.cells.size());
    if (shape.faces.size() != shape.cells.size()) return false;
    for (std::int32_t i = 0; i < n; ++i) {
        const Cell& c = shape.cells[i];
        const auto& fs = shape.faces[i];
        const std::size_t expected =
            c.dim == 0 ? 0
                       : (shape.kind == ShapeKind::cubical ? static_cast<std::size_t>(2 * c.dim)
                                                           : static_cast<std::size_t>(c.dim + 1));
        if (fs.size() != expected) return false;
        for (const std::int32_t f : fs) {
            if (f < 0 || f >= n) return false;
            if (shape.cells[f].dim != c.dim - 1) return false;
            for (const std::int32_t v : shape.cells[f].vertices) {
                if (std::find(c.vertices.begin(), c.vertices.end(), v) == c.vertices.end()) {
                    return false;
                }
            }
        }
    }
    return true;
}

Shape make_ring_grid(int size, double outer, double inner) {
    std::vector<std::uint8_t> occ(static_cast<std::size_t>(size) * size);
    for (int r = 0; r < size; ++r) {
        for (int c = 0; c < size; ++c) {
            const double cx = c + 0.5 - 0.5 * size;
            const double cy = r + 0.5 - 0.5 * size;
            const double linf = std::max(std::abs(cx), std::abs(cy));
            occ[static_cast<std::size_t>(r) * size + c] = (linf <= outer && linf >= inner) ? 1 : 0;
        }
    }
    return make_grid_shape({size, size}, occ);
}

Shape make_filled_ring_grid(int size, double outer) {
    return make_box_grid(size, outer);
}

Shape make_box_grid(int size, double half_width) {
    std::vector<std::uint8_t> occ(static_cast<std::size_t>(size) * size);
    for (int r = 0; r < size; ++r) {
        for (int c = 0; c < size; ++c) {
            const double cx = c + 0.5 - 0.5 * size;
            const double cy = r + 0.5 - 0.5 * size;
            occ[static_cast<std::size_t>(r) * size + c] =
                std::max(std::abs(cx), std::abs(cy)) <= half_width ? 1 : 0;
        }
    }
    return make_grid_shape({size, size}, occ);
}

Shape make_punctured_box_grid(int size, double half_width, int hole_row, int hole_col) {
    std::vector<std::uint8_t> occ(static_cast<std::size_t>(size) * size);
    for (int r = 0; r < size; ++r) {
        for (int c = 0; c < size; ++c) {
            const double cx = c + 0.5 - 0.5 * size;
            const double cy = r + 0.5 - 0.5 * size;
            const bool in = std::max(std::abs(cx), std::abs(cy)) <= half_width &&
                            !(r == hole_row && c == hole_col);
            occ[static_cast<std::size_t>(r) * size + c] = in ? 1 : 0;
        }
    }
    return make_grid_shape({size, size}, occ);
}

Shape make_ball_grid(int size, double radius) {
    std::vector<std::uint8_t> occ(static_cast<std::size_t>(size) * size * size);
    std::size_t i = 0;
    for (int l = 0; l < size; ++l) {
        for (int r = 0; r < size; ++r) {
            for (int c = 0; c < size; ++c, ++i) {
                const double cx = c + 0.5 - 0.5 * size;
                const double cy = r + 0.5 - 0.5 * size;
                const double cz = l + 0.5 - 0.5 * size;
                occ[i] = (cx * cx + cy * cy + cz * cz <= radius * radius) ? 1 : 0;
            }
        }
    }
    return make_grid_shape({size, size, size}, occ);
}

Shape make_shell_grid(int size, double inner, double outer) {
    std::vector<std::uint8_t> occ(static_cast<std::size_t>(size) * size * size);
    std::size_t i = 0;
    for (int l = 0; l < size; ++l) {
        for (int r = 0; r < size; ++r) {
            for (int c = 0; c < size; ++c, ++i) {
                const double cx = c + 0.5 - 0.5 * size;
                const double cy = r + 0.5 - 0.5 * size;
                const double cz = l + 0.5 - 0.5 * size;
                const double n2 = cx * cx + cy * cy + cz * cz;
                occ[i] = (n2 <= outer * outer && n2 >= inner * inner) ? 1 : 0;
            }
        }
    }
    return make_grid_shape({size, size, size}, occ);
}

Shape make_ellipse_annulus_mesh(double a_inner, double b_inner, double scale,
                                int base_n, const std::vector<double>& planted_params) {
    if (base_n < 3) throw error("make_ellipse_annulus_mesh: need base_n >= 3");
    const double two_pi = 6.283185307179586476925286766559;
    std::vector<double> params;
    params.reserve(static_cast<std::size_t>(base_n) + planted_params.size());
    for (int j = 0; j < base_n; ++j) params.push_back(two_pi * j / base_n);
    for (double t : planted_params) {
        double r = std::fmod(t, two_pi);
        if (r < 0) r += two_pi;
        params.push_back(r);
    }
    std::sort(params.begin(), params.end());
    params.erase(std::unique(params.begin(), params.end(),
                             [](double u, double v) { return std::abs(u - v) < 1e-12; }),
                 params.end());
    const auto k = static_cast<std::int32_t>(params.size());

    Eigen::MatrixXd vertices(2 * k, 2);
    for (std::int32_t i = 0; i < k; ++i) {
        const double t = params[static_cast<std::size_t>(i)];
        vertices(i, 0) = a_inner * std::cos(t);
        vertices(i, 1) = b_inner * std::sin(t);
        vertices(k + i, 0) = scale * a_inner * std::cos(t);
        vertices(k + i, 1) = scale * b_inner * std::sin(t);
    }
    std::vector<std::array<std::int32_t, 3>> triangles;
    triangles.reserve(static_cast<std::size_t>(2 * k));
    for (std::int32_t i = 0; i < k; ++i) {
        const std::int32_t j = (i + 1) % k;
        triangles.push_back({i, j, static_cast<std::int32_t>(k + i)});
        triangles.push_back({j, static_cast<std::int32_t>(k + j), static_cast<std::int32_t>(k + i)});
    }
    return make_simplicial_shape(vertices, triangles, /*recenter=*/false);
}

}  // namespace flatscan
