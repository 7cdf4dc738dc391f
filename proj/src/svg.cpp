#include "origami/svg.hpp"

#include <cstdio>
#include <sstream>

namespace origami {

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

}  // namespace

std::string export_svg(const CreasePattern& pattern, const SvgStyle& style) {
    Vec2 lo = Vec2::Zero(), hi = Vec2::Zero();
    if (!pattern.vertices.empty()) {
        lo = hi = pattern.vertices.front();
        for (const auto& v : pattern.vertices) {
            lo = lo.cwiseMin(v);
            hi = hi.cwiseMax(v);
        }
    }
    const double width = hi.x() - lo.x() + 2.0 * style.margin;
    const double height = hi.y() - lo.y() + 2.0 * style.margin;
    auto sx = [&](double x) { return fmt(x - lo.x() + style.margin); };
    auto sy = [&](double y) { return fmt(hi.y() - y + style.margin); };

    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << fmt(width) << "mm\" height=\""
        << fmt(height) << "mm\" viewBox=\"0 0 " << fmt(width) << ' ' << fmt(height) << "\">\n";
    out << "<g id=\"creases\" fill=\"none\" stroke-linecap=\"round\">\n";
    for (std::size_t i = 0; i < pattern.creases.size(); ++i) {
        const auto& c = pattern.creases[i];
        const Vec2& a = pattern.vertices[c.a];
        const Vec2& b = pattern.vertices[c.b];
        out << "<path id=\"c" << i << "\" class=\"" << to_string(c.kind) << "\" d=\"M " << sx(a.x()) << ' '
            << sy(a.y()) << " L " << sx(b.x()) << ' ' << sy(b.y()) << '"';
        switch (c.kind) {
            case CreaseKind::Mountain:
                out << " stroke=\"" << style.mountain_color << "\" stroke-width=\"" << fmt(style.fold_stroke) << '"';
                break;
            case CreaseKind::Valley:
                out << " stroke=\"" << style.valley_color << "\" stroke-width=\"" << fmt(style.fold_stroke)
                    << "\" stroke-dasharray=\"" << style.dash << '"';
                break;
            case CreaseKind::Border:
                out << " stroke=\"" << style.border_color << "\" stroke-width=\"" << fmt(style.border_stroke) << '"';
                break;
        }
        out << "/>\n";
    }
    out << "</g>\n</svg>\n";
    return out.str();
}

}  // namespace origami
