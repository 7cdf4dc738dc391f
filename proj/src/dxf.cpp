#include "origami/dxf.hpp"

#include "origami/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <set>
#include <sstream>

namespace origami {

namespace {

struct Pair {
    int code = 0;
    std::string value;
    std::size_t offset = 0;  // byte offset of the code line
    std::size_t value_offset = 0;
};

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::vector<Pair> read_pairs(std::string_view text) {
    std::vector<Pair> pairs;
    std::size_t pos = 0;
    auto next_line = [&](std::size_t& start) -> std::optional<std::string_view> {
        if (pos >= text.size()) return std::nullopt;
        start = pos;
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        pos = end + 1;
        return trim(text.substr(start, end - start));
    };
    while (true) {
        std::size_t code_at = 0, value_at = 0;
        auto code_line = next_line(code_at);
        if (!code_line) break;
        if (code_line->empty() && pos >= text.size()) break;
        auto value_line = next_line(value_at);
        if (!value_line) throw ParseError("group code without a value", code_at);
        int code = 0;
        auto [ptr, ec] = std::from_chars(code_line->data(), code_line->data() + code_line->size(), code);
        if (ec != std::errc() || ptr != code_line->data() + code_line->size())
            throw ParseError("invalid group code '" + std::string(*code_line) + "'", code_at);
        pairs.push_back({code, std::string(*value_line), code_at, value_at});
    }
    return pairs;
}

double to_number(const Pair& p) {
    double v = 0.0;
    const char* first = p.value.data();
    const char* last = first + p.value.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || !std::isfinite(v))
        throw ParseError("invalid number '" + p.value + "' for group code " + std::to_string(p.code), p.value_offset);
    return v;
}

std::string upper(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    return s;
}

std::optional<CreaseKind> layer_kind(const std::string& layer) {
    const auto l = upper(layer);
    if (l == "MOUNTAIN") return CreaseKind::Mountain;
    if (l == "VALLEY") return CreaseKind::Valley;
    if (l == "BORDER" || l == "0") return CreaseKind::Border;
    return std::nullopt;
}

std::string format_point(const Vec2& p) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "(%.4f, %.4f)", p.x(), p.y());
    return buf;
}

}  // namespace

DxfImport build_pattern(const std::vector<std::pair<Vec2, Vec2>>& segments, const std::vector<CreaseKind>& kinds,
                        double tol) {
    DxfImport out;
    auto& pat = out.pattern;

    auto vertex_of = [&](const Vec2& p) -> VertexId {
        for (VertexId v = 0; v < pat.vertices.size(); ++v)
            if ((pat.vertices[v] - p).norm() <= tol) return v;
        pat.vertices.push_back(p);
        return pat.vertices.size() - 1;
    };

    struct Seg {
        VertexId a, b;
        CreaseKind kind;
    };
    std::vector<Seg> segs;
    for (std::size_t i = 0; i < segments.size(); ++i) {
        const VertexId a = vertex_of(segments[i].first);
        const VertexId b = vertex_of(segments[i].second);
        if (a == b) {
            out.warnings.push_back("zero-length line at " + format_point(segments[i].first) + " ignored");
            continue;
        }
        segs.push_back({a, b, kinds[i]});
    }

    // Crossings become vertices.
    for (std::size_t i = 0; i < segs.size(); ++i) {
        for (std::size_t j = i + 1; j < segs.size(); ++j) {
            const Vec2 p = pat.vertices[segs[i].a], q = pat.vertices[segs[i].b];
            const Vec2 r = pat.vertices[segs[j].a], s = pat.vertices[segs[j].b];
            const double denom = cross2(q - p, s - r);
            if (std::abs(denom) < 1e-12) continue;
            const double t = cross2(r - p, s - r) / denom;
            const double u = cross2(r - p, q - p) / denom;
            if (t > 0.0 && t < 1.0 && u > 0.0 && u < 1.0) vertex_of(p + t * (q - p));
        }
    }

    // Split every segment at the vertices lying on it.
    std::map<std::pair<VertexId, VertexId>, CreaseKind> edges;
    for (const auto& sg : segs) {
        const Vec2 p = pat.vertices[sg.a], q = pat.vertices[sg.b];
        const double len = (q - p).norm();
        std::vector<std::pair<double, VertexId>> on{{0.0, sg.a}, {1.0, sg.b}};
        for (VertexId v = 0; v < pat.vertices.size(); ++v) {
            if (v == sg.a || v == sg.b) continue;
            const double t = (pat.vertices[v] - p).dot(q - p) / (len * len);
            if (t <= 0.0 || t >= 1.0) continue;
            if (point_segment_distance(pat.vertices[v], p, q) <= tol) on.emplace_back(t, v);
        }
        std::sort(on.begin(), on.end());
        for (std::size_t k = 0; k + 1 < on.size(); ++k) {
            const VertexId a = on[k].second, b = on[k + 1].second;
            if (a == b) continue;
            const auto key = std::make_pair(std::min(a, b), std::max(a, b));
            auto [it, inserted] = edges.emplace(key, sg.kind);
            if (!inserted && it->second != sg.kind)
                out.warnings.push_back("overlapping lines with different layers near " +
                                       format_point(pat.vertices[a]) + "; keeping " + to_string(it->second));
        }
    }

    // Drop vertices no edge uses, then remap.
    std::vector<int> degree(pat.vertices.size(), 0);
    for (const auto& [key, kind] : edges) {
        ++degree[key.first];
        ++degree[key.second];
    }
    std::vector<VertexId> remap(pat.vertices.size());
    std::vector<Vec2> kept;
    std::optional<Vec2> dangling;
    for (VertexId v = 0; v < pat.vertices.size(); ++v) {
        if (degree[v] == 1 && !dangling) dangling = pat.vertices[v];
        remap[v] = kept.size();
        if (degree[v] > 0) kept.push_back(pat.vertices[v]);
    }
    pat.vertices = std::move(kept);
    for (const auto& [key, kind] : edges)
        pat.creases.push_back({remap[key.first], remap[key.second], kind, FoldGroup::Zigzag});

    // Faces: walk half-edges keeping the face on the left.
    const std::size_t nv = pat.vertices.size();
    std::vector<std::vector<VertexId>> around(nv);
    for (const auto& c : pat.creases) {
        around[c.a].push_back(c.b);
        around[c.b].push_back(c.a);
    }
    auto angle = [&](VertexId from, VertexId to) {
        const Vec2 d = pat.vertices[to] - pat.vertices[from];
        return std::atan2(d.y(), d.x());
    };
    for (VertexId v = 0; v < nv; ++v)
        std::sort(around[v].begin(), around[v].end(),
                  [&](VertexId l, VertexId r) { return angle(v, l) < angle(v, r); });
    std::set<std::pair<VertexId, VertexId>> used;
    for (VertexId u = 0; u < nv; ++u) {
        for (VertexId v : around[u]) {
            if (used.count({u, v})) continue;
            std::vector<VertexId> cycle;
            VertexId a = u, b = v;
            while (!used.count({a, b})) {
                used.insert({a, b});
                cycle.push_back(a);
                const auto& ring = around[b];
                const auto it = std::find(ring.begin(), ring.end(), a);
                const std::size_t idx = static_cast<std::size_t>(it - ring.begin());
                const VertexId next = ring[(idx + ring.size() - 1) % ring.size()];
                a = b;
                b = next;
            }
            std::vector<Vec2> poly;
            for (VertexId w : cycle) poly.push_back(pat.vertices[w]);
            if (signed_area(poly) > 1e-12) pat.panels.push_back(std::move(cycle));
        }
    }
    // Loose lines with no face at all are kept as a bare crease set.
    if (dangling && !pat.panels.empty())
        throw GeometryError("unclosed panel face: dangling edge end at " + format_point(*dangling));
    if (pat.panels.empty() && !pat.creases.empty()) out.warnings.push_back("no closed panel faces; creases imported without panels");
    return out;
}

DxfImport parse_dxf(std::string_view text, double merge_tolerance) {
    const auto pairs = read_pairs(text);
    std::vector<std::pair<Vec2, Vec2>> segments;
    std::vector<CreaseKind> kinds;
    std::map<std::string, int> unsupported;
    std::set<std::string> unknown_layers;

    std::size_t i = 0;
    // Locate the ENTITIES section.
    bool found = false;
    for (; i + 1 < pairs.size(); ++i) {
        if (pairs[i].code == 0 && upper(pairs[i].value) == "SECTION" && pairs[i + 1].code == 2 &&
            upper(pairs[i + 1].value) == "ENTITIES") {
            i += 2;
            found = true;
            break;
        }
    }
    if (!found) throw ParseError("no ENTITIES section", text.size());

    auto kind_for = [&](const std::string& layer) {
        if (auto k = layer_kind(layer)) return *k;
        unknown_layers.insert(layer);
        return CreaseKind::Border;
    };

    bool closed_section = false;
    while (i < pairs.size()) {
        if (pairs[i].code != 0) throw ParseError("expected an entity start", pairs[i].offset);
        const std::string type = upper(pairs[i].value);
        const std::size_t entity_at = pairs[i].offset;
        ++i;
        if (type == "ENDSEC") {
            closed_section = true;
            break;
        }
        std::vector<const Pair*> body;
        while (i < pairs.size() && pairs[i].code != 0) body.push_back(&pairs[i++]);
        std::string layer = "0";
        if (type == "LINE") {
            double x0 = 0, y0 = 0, x1 = 0, y1 = 0;
            int seen = 0;
            for (const Pair* p : body) {
                switch (p->code) {
                    case 8: layer = p->value; break;
                    case 10: x0 = to_number(*p); seen |= 1; break;
                    case 20: y0 = to_number(*p); seen |= 2; break;
                    case 11: x1 = to_number(*p); seen |= 4; break;
                    case 21: y1 = to_number(*p); seen |= 8; break;
                    default: break;
                }
            }
            if (seen != 15) throw ParseError("LINE without both endpoints", entity_at);
            segments.emplace_back(Vec2(x0, y0), Vec2(x1, y1));
            kinds.push_back(kind_for(layer));
        } else if (type == "LWPOLYLINE") {
            std::vector<Vec2> pts;
            bool closed = false;
            for (const Pair* p : body) {
                switch (p->code) {
                    case 8: layer = p->value; break;
                    case 70: closed = (static_cast<int>(to_number(*p)) & 1) != 0; break;
                    case 10: pts.emplace_back(to_number(*p), 0.0); break;
                    case 20:
                        if (pts.empty()) throw ParseError("LWPOLYLINE y before x", p->offset);
                        pts.back().y() = to_number(*p);
                        break;
                    default: break;
                }
            }
            const CreaseKind k = kind_for(layer);
            for (std::size_t j = 0; j + 1 < pts.size(); ++j) {
                segments.emplace_back(pts[j], pts[j + 1]);
                kinds.push_back(k);
            }
            if (closed && pts.size() > 2) {
                segments.emplace_back(pts.back(), pts.front());
                kinds.push_back(k);
            }
        } else {
            ++unsupported[type];
        }
    }
    if (!closed_section) throw ParseError("ENTITIES section is not terminated", text.size());

    DxfImport out = build_pattern(segments, kinds, merge_tolerance);
    for (const auto& [type, count] : unsupported)
        out.warnings.push_back("unsupported entity " + type + " skipped (" + std::to_string(count) + ")");
    for (const auto& layer : unknown_layers) out.warnings.push_back("unknown layer '" + layer + "' treated as border");
    return out;
}

std::string export_dxf(const CreasePattern& pattern) {
    std::ostringstream out;
    out << "0\nSECTION\n2\nHEADER\n9\n$ACADVER\n1\nAC1009\n0\nENDSEC\n";
    out << "0\nSECTION\n2\nENTITIES\n";
    char buf[64];
    auto num = [&](int code, double v) {
        std::snprintf(buf, sizeof buf, "%.9g", v);
        out << code << '\n' << buf << '\n';
    };
    for (const auto& c : pattern.creases) {
        const char* layer = c.kind == CreaseKind::Mountain ? "MOUNTAIN" : c.kind == CreaseKind::Valley ? "VALLEY" : "BORDER";
        out << "0\nLINE\n8\n" << layer << '\n';
        num(10, pattern.vertices[c.a].x());
        num(20, pattern.vertices[c.a].y());
        num(30, 0.0);
        num(11, pattern.vertices[c.b].x());
        num(21, pattern.vertices[c.b].y());
        num(31, 0.0);
    }
    out << "0\nENDSEC\n0\nEOF\n";
    return out.str();
}

}  // namespace origami
