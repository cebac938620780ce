#include "untangle/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <limits>
#include <set>
#include <stdexcept>
#include <vector>

namespace untangle {

namespace {

const char* kPalette[] = {"#4c72b0", "#dd8452", "#55a868", "#c44e52",
                          "#8172b3", "#937860", "#da8bc3", "#8c8c8c"};
constexpr std::size_t kPaletteSize = sizeof(kPalette) / sizeof(kPalette[0]);

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return buf;
}

// Isometric screen coordinates for 3D; identity for 2D.
std::pair<double, double> to_plane(const Vec& p) {
    if (p.size() == 2) return {p[0], -p[1]};
    double u = (p[0] - p[1]) * 0.8660254;
    double v = (p[0] + p[1]) * 0.5 - p[2];
    return {u, v};
}

}  // namespace

void export_svg(const LabeledDataset& d, const std::string& path) {
    d.validate();
    const double width = 640.0, height = 480.0;
    std::ofstream out(path);
    if (!out) throw std::runtime_error("export_svg: cannot open " + path);

    std::vector<std::pair<int, std::pair<double, double>>> dots;
    double minX = std::numeric_limits<double>::infinity(), maxX = -minX;
    double minY = minX, maxY = maxX;
    for (const LabeledClass& c : d.classes) {
        if (c.cloud.dim() != 2 && c.cloud.dim() != 3)
            throw std::invalid_argument("export_svg: only 2D and 3D data supported");
        for (const Vec& p : c.cloud.points) {
            auto xy = to_plane(p);
            minX = std::min(minX, xy.first);
            maxX = std::max(maxX, xy.first);
            minY = std::min(minY, xy.second);
            maxY = std::max(maxY, xy.second);
            dots.push_back({c.label, xy});
        }
    }

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"480\" "
           "viewBox=\"0 0 640 480\">\n";
    out << "<rect width=\"640\" height=\"480\" fill=\"#ffffff\"/>\n";

    if (!dots.empty()) {
        double spanX = maxX - minX, spanY = maxY - minY;
        if (spanX <= 0.0) spanX = 1.0;
        if (spanY <= 0.0) spanY = 1.0;
        double padX = 0.05 * spanX, padY = 0.05 * spanY;
        minX -= padX;
        maxX += padX;
        minY -= padY;
        maxY += padY;
        double sc = std::min(width / (maxX - minX), height / (maxY - minY));
        double offX = 0.5 * (width - sc * (maxX - minX));
        double offY = 0.5 * (height - sc * (maxY - minY));

        std::set<int> labels;
        for (const auto& dot : dots) labels.insert(dot.first);
        std::vector<int> sorted(labels.begin(), labels.end());

        for (const auto& [label, xy] : dots) {
            std::size_t idx =
                std::lower_bound(sorted.begin(), sorted.end(), label) - sorted.begin();
            out << "<circle cx=\"" << fmt(offX + sc * (xy.first - minX)) << "\" cy=\""
                << fmt(offY + sc * (xy.second - minY)) << "\" r=\"2\" fill=\""
                << kPalette[idx % kPaletteSize] << "\"/>\n";
        }
    }
    out << "</svg>\n";
    if (!out) throw std::runtime_error("export_svg: write failed for " + path);
}

}  // namespace untangle
