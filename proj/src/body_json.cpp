#include "wfl/body_json.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "wfl/errors.hpp"

namespace wfl {

namespace {

using nlohmann::json;

Vec to_vec(const json& j, const char* what) {
    if (!j.is_array()) throw InvalidBody(std::string(what) + " must be an array of numbers");
    Vec v;
    for (const auto& x : j) {
        if (!x.is_number()) throw InvalidBody(std::string(what) + " must be an array of numbers");
        v.push_back(x.get<double>());
    }
    return v;
}

double to_num(const json& j, const char* what) {
    if (!j.is_number()) throw InvalidBody(std::string(what) + " must be a number");
    return j.get<double>();
}

const json& field(const json& j, const char* name) {
    auto it = j.find(name);
    if (it == j.end()) throw InvalidBody(std::string("missing field \"") + name + "\"");
    return *it;
}

BodyPtr parse(const json& j) {
    if (!j.is_object()) throw InvalidBody("body description must be a JSON object");
    std::string kind = field(j, "kind").get<std::string>();
    if (kind == "ball") {
        int n = int(to_num(field(j, "dim"), "dim"));
        return ball(n, to_num(field(j, "radius"), "radius"));
    }
    if (kind == "box") return box(to_vec(field(j, "lo"), "lo"), to_vec(field(j, "hi"), "hi"));
    if (kind == "ellipsoid") return ellipsoid(to_vec(field(j, "semi_axes"), "semi_axes"));
    if (kind == "polytope_v") {
        std::vector<Vec> verts;
        for (const auto& v : field(j, "vertices")) verts.push_back(to_vec(v, "vertex"));
        return polytope_v(std::move(verts));
    }
    if (kind == "polytope_h") {
        int n = int(to_num(field(j, "dim"), "dim"));
        std::vector<Halfspace> hs;
        for (const auto& h : field(j, "halfspaces"))
            hs.push_back({to_vec(field(h, "normal"), "normal"), to_num(field(h, "offset"), "offset")});
        return polytope_h(n, std::move(hs));
    }
    if (kind == "segment") return segment(to_vec(field(j, "a"), "a"), to_vec(field(j, "b"), "b"));
    if (kind == "point") return point(to_vec(field(j, "location"), "location"));
    if (kind == "scale")
        return scale(parse(field(j, "body")), to_num(field(j, "factor"), "factor"));
    if (kind == "negate") return negate(parse(field(j, "body")));
    if (kind == "translate")
        return translate(parse(field(j, "body")), to_vec(field(j, "shift"), "shift"));
    if (kind == "minkowski_sum")
        return minkowski_sum(parse(field(j, "a")), parse(field(j, "b")));
    if (kind == "intersection") return intersect(parse(field(j, "a")), parse(field(j, "b")));
    if (kind == "product") return product(parse(field(j, "a")), parse(field(j, "b")));
    if (kind == "linear_image") {
        const json& rows = field(j, "matrix");
        if (!rows.is_array() || rows.empty())
            throw InvalidBody("matrix must be a non-empty array of rows");
        Mat t(rows.size(), to_vec(rows[0], "matrix row").size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            Vec row = to_vec(rows[i], "matrix row");
            if (row.size() != t.cols) throw InvalidBody("matrix rows have unequal length");
            for (std::size_t c = 0; c < t.cols; ++c) t(i, c) = row[c];
        }
        return linear_image(parse(field(j, "body")), std::move(t));
    }
    throw InvalidBody("unknown body kind \"" + kind + "\"");
}

json vec_json(const Vec& v) { return json(v); }

json emit(const Body& k);

json emit_ptr(const BodyPtr& p) { return emit(*p); }

json emit(const Body& k) {
    json j;
    j["dim"] = k.dim;
    std::visit(
        [&](const auto& node) {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, BallK>) {
                j["kind"] = "ball";
                j["radius"] = node.radius;
            } else if constexpr (std::is_same_v<T, BoxK>) {
                j["kind"] = "box";
                j["lo"] = vec_json(node.lo);
                j["hi"] = vec_json(node.hi);
            } else if constexpr (std::is_same_v<T, EllipsoidK>) {
                j["kind"] = "ellipsoid";
                j["semi_axes"] = vec_json(node.semi_axes);
            } else if constexpr (std::is_same_v<T, PolytopeVK>) {
                j["kind"] = "polytope_v";
                json verts = json::array();
                for (const Vec& v : node.vertices) verts.push_back(vec_json(v));
                j["vertices"] = verts;
            } else if constexpr (std::is_same_v<T, PolytopeHK>) {
                j["kind"] = "polytope_h";
                json hs = json::array();
                for (const Halfspace& h : node.halfspaces)
                    hs.push_back({{"normal", vec_json(h.normal)}, {"offset", h.offset}});
                j["halfspaces"] = hs;
            } else if constexpr (std::is_same_v<T, SegmentK>) {
                j["kind"] = "segment";
                j["a"] = vec_json(node.a);
                j["b"] = vec_json(node.b);
            } else if constexpr (std::is_same_v<T, PointK>) {
                j["kind"] = "point";
                j["location"] = vec_json(node.location);
            } else if constexpr (std::is_same_v<T, ScaleK>) {
                j["kind"] = "scale";
                j["factor"] = node.factor;
                j["body"] = emit_ptr(node.body);
            } else if constexpr (std::is_same_v<T, NegateK>) {
                j["kind"] = "negate";
                j["body"] = emit_ptr(node.body);
            } else if constexpr (std::is_same_v<T, TranslateK>) {
                j["kind"] = "translate";
                j["shift"] = vec_json(node.shift);
                j["body"] = emit_ptr(node.body);
            } else if constexpr (std::is_same_v<T, MinkowskiSumK>) {
                j["kind"] = "minkowski_sum";
                j["a"] = emit_ptr(node.a);
                j["b"] = emit_ptr(node.b);
            } else if constexpr (std::is_same_v<T, IntersectionK>) {
                j["kind"] = "intersection";
                j["a"] = emit_ptr(node.a);
                j["b"] = emit_ptr(node.b);
            } else if constexpr (std::is_same_v<T, ProductK>) {
                j["kind"] = "product";
                j["a"] = emit_ptr(node.a);
                j["b"] = emit_ptr(node.b);
            } else if constexpr (std::is_same_v<T, LinearImageK>) {
                j["kind"] = "linear_image";
                json rows = json::array();
                for (std::size_t i = 0; i < node.T.rows; ++i) {
                    Vec row(node.T.cols);
                    for (std::size_t c = 0; c < node.T.cols; ++c) row[c] = node.T(i, c);
                    rows.push_back(vec_json(row));
                }
                j["matrix"] = rows;
                j["body"] = emit_ptr(node.body);
            } else {
                throw InvalidBody("this body kind has no JSON form");
            }
        },
        k.kind);
    return j;
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace

BodyPtr body_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw InvalidBody(std::string("malformed JSON: ") + e.what());
    }
    try {
        return parse(j);
    } catch (const json::exception& e) {
        throw InvalidBody(std::string("malformed body description: ") + e.what());
    }
}

BodyPtr body_from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidBody("cannot open body file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return body_from_json(buf.str());
}

std::string body_to_json(const Body& k) { return emit(k).dump(2); }

std::string report_to_json(const InequalityReport& r) {
    json j;
    j["check_id"] = r.check_id;
    j["name"] = r.name;
    j["inputs"] = r.inputs;
    j["lhs"] = r.lhs;
    j["rhs"] = r.rhs;
    j["lhs_stderr"] = r.lhs_stderr;
    j["rhs_stderr"] = r.rhs_stderr;
    j["margin"] = r.margin;
    j["uncertainty"] = r.uncertainty;
    j["verdict"] = r.verdict;
    j["notes"] = r.notes;
    j["seed"] = r.seed;
    j["samples"] = r.samples;
    return j.dump(2);
}

std::string report_csv_header() {
    return "check_id,name,inputs,lhs,rhs,lhs_stderr,rhs_stderr,margin,uncertainty,verdict,notes,"
           "seed,samples";
}

std::string report_to_csv_row(const InequalityReport& r) {
    std::ostringstream os;
    os.precision(17);
    os << r.check_id << ',' << csv_escape(r.name) << ',' << csv_escape(r.inputs) << ',' << r.lhs
       << ',' << r.rhs << ',' << r.lhs_stderr << ',' << r.rhs_stderr << ',' << r.margin << ','
       << r.uncertainty << ',' << csv_escape(r.verdict) << ',' << csv_escape(r.notes) << ','
       << r.seed << ',' << r.samples;
    return os.str();
}

}  // namespace wfl
