#include "flatscan/json_io.hpp"

#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "flatscan/error.hpp"

namespace flatscan {

namespace {

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

void write_point(std::ostream& out, const std::pair<double, double>& p) {
    out << '[' << fmt(p.first) << ',';
    if (p.second == kInfiniteDeath) {
        out << "\"inf\"";
    } else {
        out << fmt(p.second);
    }
    out << ']';
}

void write_diagram(std::ostream& out, const PersistenceDiagram& d) {
    out << "{\"degree\":" << d.degree << ",\"points\":[";
    for (std::size_t i = 0; i < d.points.size(); ++i) {
        if (i) out << ',';
        write_point(out, d.points[i]);
    }
    out << "]}";
}

void write_vector(std::ostream& out, const Eigen::VectorXd& v) {
    out << '[';
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (i) out << ',';
        out << fmt(v(i));
    }
    out << ']';
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    return out;
}

using nlohmann::json;

double parse_death(const json& j) {
    if (j.is_string()) {
        if (j.get<std::string>() == "inf") return kInfiniteDeath;
        throw error("diagram JSON: unexpected death string");
    }
    return j.get<double>();
}

PersistenceDiagram parse_diagram(const json& j) {
    PersistenceDiagram d;
    d.degree = j.at("degree").get<int>();
    for (const auto& pt : j.at("points")) {
        if (!pt.is_array() || pt.size() != 2) throw error("diagram JSON: malformed point");
        d.points.emplace_back(pt[0].get<double>(), parse_death(pt[1]));
    }
    return d;
}

Eigen::VectorXd parse_vector(const json& j) {
    Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
    Eigen::Index i = 0;
    for (const auto& x : j) v(i++) = x.get<double>();
    return v;
}

}  // namespace

std::string diagram_to_json(const PersistenceDiagram& d) {
    std::ostringstream out;
    write_diagram(out, d);
    return out.str();
}

PersistenceDiagram diagram_from_json(const std::string& text) {
    try {
        return parse_diagram(json::parse(text));
    } catch (const json::exception& e) {
        throw error(std::string("diagram JSON: ") + e.what());
    }
}

std::string dpht_result_to_json(const DphtResult& r) {
    std::ostringstream out;
    out << "{\"shape_id\":\"" << escape(r.shape_id) << "\",\"m\":" << r.m << ",\"flats\":[";
    for (std::size_t i = 0; i < r.flats.size(); ++i) {
        if (i) out << ',';
        const Flat& f = r.flats[i];
        out << "{\"basis\":[";
        for (int c = 0; c < f.flat_dim(); ++c) {
            if (c) out << ',';
            write_vector(out, f.basis.col(c));
        }
        out << "],\"displacement\":";
        write_vector(out, f.displacement);
        out << ",\"diagrams\":[";
        for (std::size_t k = 0; k < r.diagrams[i].size(); ++k) {
            if (k) out << ',';
            write_diagram(out, r.diagrams[i][k]);
        }
        out << ']';
        if (!r.euler_curves.empty()) {
            out << ",\"euler_curve\":[";
            for (std::size_t k = 0; k < r.euler_curves[i].size(); ++k) {
                if (k) out << ',';
                out << '[' << fmt(r.euler_curves[i][k].first) << ','
                    << r.euler_curves[i][k].second << ']';
            }
            out << ']';
        }
        if (!r.slice_chi.empty()) {
            out << ",\"slice_chi\":" << r.slice_chi[i];
        }
        out << '}';
    }
    out << "]}";
    return out.str();
}

DphtResult dpht_result_from_json(const std::string& text) {
    try {
        const json j = json::parse(text);
        DphtResult r;
        r.shape_id = j.at("shape_id").get<std::string>();
        r.m = j.at("m").get<int>();
        for (const auto& jf : j.at("flats")) {
            const json& jb = jf.at("basis");
            const Eigen::VectorXd displacement = parse_vector(jf.at("displacement"));
            Eigen::MatrixXd basis(displacement.size(), static_cast<Eigen::Index>(jb.size()));
            Eigen::Index c = 0;
            for (const auto& col : jb) {
                basis.col(c++) = parse_vector(col);
            }
            r.flats.push_back(Flat{std::move(basis), displacement});
            std::vector<PersistenceDiagram> diagrams;
            for (const auto& jd : jf.at("diagrams")) diagrams.push_back(parse_diagram(jd));
            r.diagrams.push_back(std::move(diagrams));
            if (jf.contains("euler_curve")) {
                EulerCurve curve;
                for (const auto& pt : jf.at("euler_curve")) {
                    curve.emplace_back(pt[0].get<double>(), pt[1].get<int>());
                }
                r.euler_curves.push_back(std::move(curve));
            }
            if (jf.contains("slice_chi")) {
                r.slice_chi.push_back(jf.at("slice_chi").get<int>());
            }
        }
        return r;
    } catch (const json::exception& e) {
        throw error(std::string("result JSON: ") + e.what());
    }
}

bool same_flat_lists(const DphtResult& a, const DphtResult& b) {
    if (a.flats.size() != b.flats.size()) return false;
    for (std::size_t i = 0; i < a.flats.size(); ++i) {
        const Flat& fa = a.flats[i];
        const Flat& fb = b.flats[i];
        if (fa.basis.rows() != fb.basis.rows() || fa.basis.cols() != fb.basis.cols()) return false;
        if (fa.basis != fb.basis || fa.displacement != fb.displacement) return false;
    }
    return true;
}

}  // namespace flatscan
