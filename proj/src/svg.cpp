#include "collab/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <limits>

namespace collab::svg {

namespace {

std::string escape(const std::string& text)
{
    std::string out;
    for (char c : text) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

std::string comment(const std::string& text)
{
    std::string body = text;
    // "--" is not allowed inside an XML comment
    for (auto pos = body.find("--"); pos != std::string::npos; pos = body.find("--")) {
        body.replace(pos, 2, "- -");
    }
    return fmt::format("<!-- {} -->\n", body);
}

struct Extent {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();

    void add(double v)
    {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    bool empty() const { return lo > hi; }
};

AxisMap make_map(double lo, double hi, double px_lo, double px_hi)
{
    if (!(lo <= hi)) {
        lo = 0.0;
        hi = 1.0;
    }
    if (lo == hi) {
        lo -= 0.5;
        hi += 0.5;
    }
    return {lo, hi, px_lo, px_hi};
}

std::string open_document(const std::vector<std::string>& metadata, const std::string& title)
{
    std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    for (const auto& m : metadata) {
        out += comment(m);
    }
    out += fmt::format("<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{0}\" height=\"{1}\" "
                       "viewBox=\"0 0 {0} {1}\">\n",
                       kWidth, kHeight);
    out += fmt::format("<rect x=\"0\" y=\"0\" width=\"{}\" height=\"{}\" fill=\"white\"/>\n", kWidth, kHeight);
    if (!title.empty()) {
        out += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" font-size=\"14\" text-anchor=\"middle\">{}</text>\n",
                           kWidth / 2, kMarginY - 10, escape(title));
    }
    return out;
}

std::string axes(const AxisMap& xm, const AxisMap& ym, const std::string& x_label, const std::string& y_label)
{
    const double left = kMarginX;
    const double right = kWidth - kMarginX;
    const double top = kMarginY;
    const double bottom = kHeight - kMarginY;
    std::string out;
    out += fmt::format("<line x1=\"{0:.2f}\" y1=\"{1:.2f}\" x2=\"{2:.2f}\" y2=\"{1:.2f}\" stroke=\"black\"/>\n",
                       left, bottom, right);
    out += fmt::format("<line x1=\"{0:.2f}\" y1=\"{1:.2f}\" x2=\"{0:.2f}\" y2=\"{2:.2f}\" stroke=\"black\"/>\n",
                       left, bottom, top);
    out += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" font-size=\"10\" text-anchor=\"start\">{:.6g}</text>\n",
                       left, bottom + 12, xm.lo);
    out += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" font-size=\"10\" text-anchor=\"end\">{:.6g}</text>\n", right,
                       bottom + 12, xm.hi);
    out += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" font-size=\"10\" text-anchor=\"end\">{:.6g}</text>\n",
                       left - 2, bottom, ym.lo);
    out += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" font-size=\"10\" text-anchor=\"end\">{:.6g}</text>\n",
                       left - 2, top + 10, ym.hi);
    out += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" font-size=\"12\" text-anchor=\"middle\">{}</text>\n",
                       kWidth / 2, kHeight - 4, escape(x_label));
    out += fmt::format("<text x=\"12\" y=\"{0:.2f}\" font-size=\"12\" text-anchor=\"middle\" "
                       "transform=\"rotate(-90 12 {0:.2f})\">{1}</text>\n",
                       kHeight / 2, escape(y_label));
    return out;
}

} // namespace

AxisMap x_axis_map(double data_min, double data_max)
{
    return make_map(data_min, data_max, kMarginX, kWidth - kMarginX);
}

AxisMap y_axis_map(double data_min, double data_max)
{
    return make_map(data_min, data_max, kHeight - kMarginY, kMarginY);
}

const char* cluster_color(int cluster)
{
    const auto n = static_cast<int>(kPalette.size());
    return kPalette[static_cast<std::size_t>(((cluster % n) + n) % n)];
}

std::string render_scatter(const ScatterPlotSpec& spec)
{
    Extent ex;
    Extent ey;
    for (const auto& p : spec.points) {
        ex.add(p.x);
        ey.add(p.y);
    }
    if (spec.vertical_line) {
        ex.add(*spec.vertical_line);
    }
    if (spec.horizontal_line) {
        ey.add(*spec.horizontal_line);
    }
    const auto xm = x_axis_map(ex.lo, ex.hi);
    const auto ym = y_axis_map(ey.lo, ey.hi);

    std::string out = open_document(spec.metadata, spec.title);
    out += axes(xm, ym, spec.x_label, spec.y_label);
    if (spec.vertical_line) {
        out += fmt::format("<line x1=\"{0:.2f}\" y1=\"{1:.2f}\" x2=\"{0:.2f}\" y2=\"{2:.2f}\" stroke=\"gray\" "
                           "stroke-dasharray=\"4 4\"/>\n",
                           xm(*spec.vertical_line), kHeight - kMarginY, kMarginY);
    }
    if (spec.horizontal_line) {
        out += fmt::format("<line x1=\"{0:.2f}\" y1=\"{1:.2f}\" x2=\"{2:.2f}\" y2=\"{1:.2f}\" stroke=\"gray\" "
                           "stroke-dasharray=\"4 4\"/>\n",
                           kMarginX, ym(*spec.horizontal_line), kWidth - kMarginX);
    }
    for (const auto& p : spec.points) {
        const char* fill = p.cluster ? cluster_color(*p.cluster) : "black";
        out += fmt::format("<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"4\" fill=\"{}\"/>\n", xm(p.x), ym(p.y), fill);
    }
    out += "</svg>\n";
    return out;
}

std::string render_line(const LinePlotSpec& spec)
{
    Extent ex;
    Extent ey;
    for (const auto& p : spec.points) {
        ex.add(p[0]);
        ey.add(p[1]);
    }
    const auto xm = x_axis_map(ex.lo, ex.hi);
    const auto ym = y_axis_map(ey.lo, ey.hi);

    std::string out = open_document(spec.metadata, spec.title);
    out += axes(xm, ym, spec.x_label, spec.y_label);
    if (!spec.points.empty()) {
        std::string coords;
        for (const auto& p : spec.points) {
            if (!coords.empty()) {
                coords += ' ';
            }
            coords += fmt::format("{:.2f},{:.2f}", xm(p[0]), ym(p[1]));
        }
        out += fmt::format("<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\" points=\"{}\"/>\n",
                           kPalette[0], coords);
    }
    out += "</svg>\n";
    return out;
}

} // namespace collab::svg
