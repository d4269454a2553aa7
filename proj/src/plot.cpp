#include "nonint/plot.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

namespace nonint {

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"};

std::vector<Complex> sample(const PathSpec& p, int per_segment)
{
    std::vector<Complex> pts;
    for (const auto& seg : p.segments) {
        int n = std::holds_alternative<LineSegment>(seg) ? 1 : per_segment;
        if (const auto* arc = std::get_if<ArcSegment>(&seg))
            n = std::max(n, static_cast<int>(std::ceil(std::abs(arc->sweep) / (2.0 * M_PI) * per_segment)));
        for (int i = pts.empty() ? 0 : 1; i <= n; ++i)
            pts.push_back(point_at(seg, static_cast<double>(i) / n));
    }
    return pts;
}

std::string escape(const std::string& s)
{
    std::string out;
    for (char c : s) {
        switch (c) {
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '&': out += "&amp;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

} // namespace

std::string render_svg(const PlotScene& scene, int width, int height)
{
    double re0 = std::min(0.0, scene.base.real()), re1 = std::max(0.0, scene.base.real());
    double im0 = std::min(0.0, scene.base.imag()), im1 = std::max(0.0, scene.base.imag());
    auto grow = [&](Complex z) {
        re0 = std::min(re0, z.real());
        re1 = std::max(re1, z.real());
        im0 = std::min(im0, z.imag());
        im1 = std::max(im1, z.imag());
    };
    std::vector<std::vector<Complex>> polylines;
    for (const auto& p : scene.paths) {
        polylines.push_back(sample(p, 96));
        for (Complex z : polylines.back())
            grow(z);
    }
    for (Complex z : scene.singularities)
        grow(z);

    double span = std::max({re1 - re0, im1 - im0, 1e-3});
    double pad = 0.1 * span;
    re0 -= pad;
    im0 -= pad;
    span += 2.0 * pad;
    const double sx = width / span, sy = height / span;
    auto px = [&](Complex z) { return (z.real() - re0) * sx; };
    auto py = [&](Complex z) { return height - (z.imag() - im0) * sy; };

    std::ostringstream o;
    o << std::fixed << std::setprecision(2);
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
    o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    o << "<g stroke=\"#999\" stroke-width=\"1\">\n";
    o << "<line x1=\"0\" y1=\"" << py(Complex(0, 0)) << "\" x2=\"" << width << "\" y2=\"" << py(Complex(0, 0))
      << "\"/>\n";
    o << "<line x1=\"" << px(Complex(0, 0)) << "\" y1=\"0\" x2=\"" << px(Complex(0, 0)) << "\" y2=\"" << height
      << "\"/>\n";
    o << "</g>\n";
    o << "<text x=\"" << width - 40 << "\" y=\"" << py(Complex(0, 0)) - 6 << "\" font-size=\"12\">Re t</text>\n";
    o << "<text x=\"" << px(Complex(0, 0)) + 6 << "\" y=\"14\" font-size=\"12\">Im t</text>\n";

    for (std::size_t i = 0; i < polylines.size(); ++i) {
        const char* colour = kPalette[i % std::size(kPalette)];
        o << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t k = 0; k < polylines[i].size(); ++k)
            o << (k ? " " : "") << px(polylines[i][k]) << ',' << py(polylines[i][k]);
        o << "\"/>\n";
        if (i < scene.path_labels.size() && !polylines[i].empty()) {
            Complex far = *std::max_element(polylines[i].begin(), polylines[i].end(), [](Complex a, Complex b) {
                return std::abs(a) < std::abs(b);
            });
            o << "<text x=\"" << px(far) + 4 << "\" y=\"" << py(far) - 4 << "\" font-size=\"12\" fill=\"" << colour
              << "\">" << escape(scene.path_labels[i]) << "</text>\n";
        }
    }
    for (Complex z : scene.singularities) {
        const double x = px(z), y = py(z);
        o << "<g stroke=\"black\" stroke-width=\"2\"><line x1=\"" << x - 5 << "\" y1=\"" << y - 5 << "\" x2=\""
          << x + 5 << "\" y2=\"" << y + 5 << "\"/><line x1=\"" << x - 5 << "\" y1=\"" << y + 5 << "\" x2=\""
          << x + 5 << "\" y2=\"" << y - 5 << "\"/></g>\n";
        std::ostringstream label;
        label << std::setprecision(4) << z.real() << (z.imag() < 0 ? "" : "+") << z.imag() << 'i';
        o << "<text x=\"" << x + 7 << "\" y=\"" << y + 14 << "\" font-size=\"11\">" << label.str() << "</text>\n";
    }
    o << "<rect x=\"" << px(scene.base) - 3 << "\" y=\"" << py(scene.base) - 3
      << "\" width=\"6\" height=\"6\" fill=\"black\"/>\n";
    o << "</svg>\n";
    return o.str();
}

std::string path_csv(const std::vector<PathSpec>& paths, int samples_per_segment)
{
    std::ostringstream o;
    o << std::setprecision(std::numeric_limits<double>::max_digits10);
    o << "path,segment,s,re,im\n";
    for (std::size_t p = 0; p < paths.size(); ++p)
        for (std::size_t k = 0; k < paths[p].segments.size(); ++k)
            for (int i = 0; i <= samples_per_segment; ++i) {
                double s = static_cast<double>(i) / samples_per_segment;
                Complex z = point_at(paths[p].segments[k], s);
                o << p << ',' << k << ',' << s << ',' << z.real() << ',' << z.imag() << '\n';
            }
    return o.str();
}

std::string trace_csv(const std::vector<StepRecord>& steps)
{
    std::ostringstream o;
    o << std::setprecision(std::numeric_limits<double>::max_digits10);
    o << "segment,s,re_t,im_t,norm_x,h\n";
    for (const auto& r : steps)
        o << r.segment_index << ',' << r.s << ',' << r.t.real() << ',' << r.t.imag() << ',' << r.state_norm << ','
          << r.h << '\n';
    return o.str();
}

} // namespace nonint
