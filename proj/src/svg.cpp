#include "ornstein/svg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace ornstein {

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur.push_back(ch);
        }
    }
    out.push_back(cur);
    return out;
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

std::string escape(const std::string& s) {
    std::string out;
    for (char ch : s) {
        switch (ch) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out.push_back(ch);
        }
    }
    return out;
}

}  // namespace

std::string plot_csv_to_svg(const std::string& csv, const PlotOptions& opt) {
    std::istringstream in(csv);
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("plot: empty CSV");
    std::vector<std::string> header = split_line(line);
    if (header.size() < 2)
        throw std::invalid_argument("plot: need at least two CSV columns");

    std::vector<std::pair<double, double>> pts;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells = split_line(line);
        if (cells.size() < 2)
            throw std::invalid_argument("plot: row with fewer than two columns");
        try {
            pts.emplace_back(std::stod(cells[0]), std::stod(cells[1]));
        } catch (const std::exception&) {
            throw std::invalid_argument("plot: non-numeric cell in data row");
        }
    }
    if (pts.size() < 2) throw std::invalid_argument("plot: need at least two data rows");

    double x_min = pts[0].first, x_max = pts[0].first;
    double y_min = pts[0].second, y_max = pts[0].second;
    for (const auto& [x, y] : pts) {
        x_min = std::min(x_min, x);
        x_max = std::max(x_max, x);
        y_min = std::min(y_min, y);
        y_max = std::max(y_max, y);
    }
    if (x_max == x_min) {
        x_min -= 0.5;
        x_max += 0.5;
    }
    if (y_max == y_min) {
        y_min -= 0.5;
        y_max += 0.5;
    }
    double x_pad = 0.06 * (x_max - x_min), y_pad = 0.08 * (y_max - y_min);
    x_min -= x_pad;
    x_max += x_pad;
    y_min -= y_pad;
    y_max += y_pad;

    const double w = opt.width, h = opt.height;
    const double ml = 64, mr = 20, mt = 36, mb = 48;  // margins
    auto sx = [&](double x) { return ml + (x - x_min) / (x_max - x_min) * (w - ml - mr); };
    auto sy = [&](double y) { return h - mb - (y - y_min) / (y_max - y_min) * (h - mt - mb); };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opt.width
       << "\" height=\"" << opt.height << "\" viewBox=\"0 0 " << opt.width << ' '
       << opt.height << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (!opt.title.empty())
        os << "<text x=\"" << w / 2 << "\" y=\"22\" text-anchor=\"middle\" "
           << "font-family=\"sans-serif\" font-size=\"15\">" << escape(opt.title)
           << "</text>\n";

    // axes
    os << "<line x1=\"" << ml << "\" y1=\"" << h - mb << "\" x2=\"" << w - mr << "\" y2=\""
       << h - mb << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\""
       << h - mb << "\" stroke=\"black\"/>\n";
    const int nticks = 5;
    for (int i = 0; i <= nticks; ++i) {
        double fx = x_min + (x_max - x_min) * i / nticks;
        double fy = y_min + (y_max - y_min) * i / nticks;
        double px = sx(fx), py = sy(fy);
        os << "<line x1=\"" << px << "\" y1=\"" << h - mb << "\" x2=\"" << px << "\" y2=\""
           << h - mb + 5 << "\" stroke=\"black\"/>\n";
        os << "<text x=\"" << px << "\" y=\"" << h - mb + 18
           << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
           << fmt(fx) << "</text>\n";
        os << "<line x1=\"" << ml - 5 << "\" y1=\"" << py << "\" x2=\"" << ml << "\" y2=\""
           << py << "\" stroke=\"black\"/>\n";
        os << "<text x=\"" << ml - 8 << "\" y=\"" << py + 4
           << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
           << fmt(fy) << "</text>\n";
    }
    os << "<text x=\"" << (ml + w - mr) / 2 << "\" y=\"" << h - 12
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
       << escape(opt.x_label) << "</text>\n";
    os << "<text x=\"16\" y=\"" << (mt + h - mb) / 2
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
       << "transform=\"rotate(-90 16 " << (mt + h - mb) / 2 << ")\">"
       << escape(opt.y_label) << "</text>\n";

    if (opt.fit) {
        auto [slope, intercept] = *opt.fit;
        double ya = slope * x_min + intercept, yb = slope * x_max + intercept;
        // clip vertically to the plot box
        auto clip = [&](double& xx, double& yy, double x_other, double y_other) {
            if (yy < y_min || yy > y_max) {
                double yc = std::clamp(yy, y_min, y_max);
                if (yy != y_other)
                    xx = xx + (yc - yy) * (x_other - xx) / (y_other - yy);
                yy = yc;
            }
        };
        double xa = x_min, xb = x_max;
        clip(xa, ya, xb, yb);
        clip(xb, yb, xa, ya);
        os << "<line x1=\"" << sx(xa) << "\" y1=\"" << sy(ya) << "\" x2=\"" << sx(xb)
           << "\" y2=\"" << sy(yb)
           << "\" stroke=\"#c0392b\" stroke-width=\"1.5\" stroke-dasharray=\"6 3\"/>\n";
    }

    os << "<polyline fill=\"none\" stroke=\"#2c6fbb\" stroke-width=\"1\" points=\"";
    for (const auto& [x, y] : pts) os << sx(x) << ',' << sy(y) << ' ';
    os << "\"/>\n";
    for (const auto& [x, y] : pts)
        os << "<circle cx=\"" << sx(x) << "\" cy=\"" << sy(y)
           << "\" r=\"3.2\" fill=\"#2c6fbb\"/>\n";
    os << "</svg>\n";
    return os.str();
}

}  // namespace ornstein
