#include "insola/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace insola {

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string fmt6(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw Error("cannot open '" + path + "' for writing");
    os << content;
    if (!os) throw Error("write to '" + path + "' failed");
}

// ---------------------------------------------------------------------------
// CSV
// ---------------------------------------------------------------------------

static const char* kPointsHeader = "grade,re_t,im_t,re_value,im_value,survivor,residual";

std::string points_csv(const std::vector<RelationPoint>& points) {
    std::string out = kPointsHeader;
    out += "\n";
    for (const RelationPoint& p : points) {
        out += std::to_string(p.grade) + "," + fmt17(p.t.real()) + "," + fmt17(p.t.imag()) + "," +
               fmt17(p.value.real()) + "," + fmt17(p.value.imag()) + "," +
               (p.filtered_survivor ? "true" : "false") + "," + fmt17(p.residual_mag) + "\n";
    }
    return out;
}

void write_points_csv(const std::string& path, const std::vector<RelationPoint>& points) {
    write_text_file(path, points_csv(points));
}

std::vector<RelationPoint> read_points_csv(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw Error("cannot open '" + path + "'");
    std::string line;
    if (!std::getline(is, line) || line != kPointsHeader)
        throw Error("'" + path + "' is not a points CSV (bad header)");
    std::vector<RelationPoint> out;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::vector<std::string> f = split(line, ',');
        if (f.size() != 7) throw Error("malformed points CSV row: " + line);
        RelationPoint p;
        p.grade = std::stoi(f[0]);
        p.t = {std::strtod(f[1].c_str(), nullptr), std::strtod(f[2].c_str(), nullptr)};
        p.value = {std::strtod(f[3].c_str(), nullptr), std::strtod(f[4].c_str(), nullptr)};
        if (f[5] != "true" && f[5] != "false") throw Error("bad survivor flag: " + f[5]);
        p.filtered_survivor = f[5] == "true";
        p.residual_mag = std::strtod(f[6].c_str(), nullptr);
        out.push_back(p);
    }
    return out;
}

std::string walk_csv(const WalkTrace& trace) {
    std::string out = "t,value_re,value_im,step,degree,value_exact\n";
    for (const WalkEntry& e : trace.entries) {
        std::complex<double> v = e.value.to_complex_double();
        out += fmt17(rat_to_double(e.t_cumulative.re)) + "," + fmt17(v.real()) + "," +
               fmt17(v.imag()) + "," + fmt17(rat_to_double(e.step.re)) + "," +
               std::to_string(e.has_recipe ? e.recipe.degree : 0) + "," + e.value.str() + "\n";
    }
    return out;
}

void write_walk_csv(const std::string& path, const WalkTrace& trace) {
    write_text_file(path, walk_csv(trace));
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

using ordered_json = nlohmann::ordered_json;

namespace {

ordered_json point_to_json(const RelationPoint& p) {
    return ordered_json{{"grade", p.grade},
                        {"t", {p.t.real(), p.t.imag()}},
                        {"value", {p.value.real(), p.value.imag()}},
                        {"survivor", p.filtered_survivor},
                        {"residual", p.residual_mag}};
}

ordered_json result_to_json(const InsolaResult& r) {
    ordered_json points = ordered_json::array();
    for (const RelationPoint& p : r.points) points.push_back(point_to_json(p));
    ordered_json failures = ordered_json::array();
    for (const DegreeFailure& f : r.failures)
        failures.push_back(ordered_json{{"grade", f.grade}, {"message", f.message}});
    return ordered_json{{"points", points}, {"failures", failures}};
}

}  // namespace

std::string points_json(const InsolaResult& result) { return result_to_json(result).dump(2) + "\n"; }

std::string sweep_json(const std::vector<SweepEntry>& entries) {
    ordered_json arr = ordered_json::array();
    for (const SweepEntry& e : entries) {
        ordered_json j{{"alpha_star", e.alpha_star},
                       {"max_survivor_modulus", e.max_survivor_modulus}};
        j["result"] = result_to_json(e.result);
        arr.push_back(std::move(j));
    }
    return arr.dump(2) + "\n";
}

std::string classification_json(const BiPoly& residual, const Classification& c) {
    ordered_json j;
    j["residual"] = to_string(residual);
    ordered_json tag{{"kind", to_string(c.kind)}, {"domain", to_string(c.domain)}};
    tag["P"] = to_string(c.P);
    tag["G"] = to_string(c.G);
    if (c.kind == ResidualClass::HyperTaylor) {
        tag["r"] = c.r.str();
        tag["n"] = c.n;
    }
    j["classification"] = tag;
    return j.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// SVG
// ---------------------------------------------------------------------------

namespace {

struct Bounds {
    double xmin = 0.0, xmax = 1.0, ymin = 0.0, ymax = 1.0;
    bool any = false;

    void include(double x, double y) {
        if (!any) {
            xmin = xmax = x;
            ymin = ymax = y;
            any = true;
        } else {
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
    }

    void pad() {
        double dx = xmax - xmin, dy = ymax - ymin;
        if (dx == 0.0) dx = 1.0;
        if (dy == 0.0) dy = 1.0;
        xmin -= 0.05 * dx;
        xmax += 0.05 * dx;
        ymin -= 0.05 * dy;
        ymax += 0.05 * dy;
    }
};

constexpr double kPanelSize = 360.0;
constexpr double kRealAxisTol = 1e-6;

class Panel {
public:
    Panel(double x_off, Bounds b) : x_off_(x_off), b_(b) {}

    double px(double x) const { return x_off_ + (x - b_.xmin) / (b_.xmax - b_.xmin) * kPanelSize; }
    double py(double y) const { return kPanelSize - (y - b_.ymin) / (b_.ymax - b_.ymin) * kPanelSize; }

    void frame(std::string& svg) const {
        svg += "<rect x=\"" + fmt6(x_off_) + "\" y=\"0\" width=\"" + fmt6(kPanelSize) +
               "\" height=\"" + fmt6(kPanelSize) + "\" fill=\"white\" stroke=\"#444\"/>\n";
        if (b_.ymin < 0.0 && b_.ymax > 0.0)
            line(svg, x_off_, py(0.0), x_off_ + kPanelSize, py(0.0), "#bbb");
        if (b_.xmin < 0.0 && b_.xmax > 0.0)
            line(svg, px(0.0), 0.0, px(0.0), kPanelSize, "#bbb");
    }

    void dot(std::string& svg, double x, double y, const char* color, double r = 2.0) const {
        svg += "<circle cx=\"" + fmt6(px(x)) + "\" cy=\"" + fmt6(py(y)) + "\" r=\"" + fmt6(r) +
               "\" fill=\"" + color + "\"/>\n";
    }

    static void line(std::string& svg, double x1, double y1, double x2, double y2,
                     const char* color) {
        svg += "<line x1=\"" + fmt6(x1) + "\" y1=\"" + fmt6(y1) + "\" x2=\"" + fmt6(x2) +
               "\" y2=\"" + fmt6(y2) + "\" stroke=\"" + color + "\" stroke-width=\"1\"/>\n";
    }

    const Bounds& bounds() const { return b_; }

private:
    double x_off_;
    Bounds b_;
};

bool near_real_axis(const RelationPoint& p) {
    return std::abs(p.t.imag()) <= kRealAxisTol * (1.0 + std::abs(p.t.real()));
}

std::string svg_open(double width, double height) {
    return "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " + fmt6(width) + " " +
           fmt6(height) + "\" width=\"" + fmt6(width) + "\" height=\"" + fmt6(height) + "\">\n";
}

}  // namespace

std::string scatter_svg(const std::vector<RelationPoint>& points,
                        std::optional<RefName> reference) {
    const double gap = 24.0;
    const double width = 2 * kPanelSize + gap;

    Bounds left;
    for (const RelationPoint& p : points) left.include(p.t.real(), p.t.imag());
    left.pad();

    Bounds right;
    for (const RelationPoint& p : points)
        if (p.filtered_survivor && near_real_axis(p)) right.include(p.t.real(), p.value.real());
    if (reference && right.any) {
        for (int j = 0; j <= 64; ++j) {
            double x = right.xmin + (right.xmax - right.xmin) * j / 64.0;
            std::complex<double> g = reference_value(*reference, {x, 0.0});
            if (std::isfinite(g.real())) right.include(x, g.real());
        }
    }
    right.pad();

    std::string svg = svg_open(width, kPanelSize);
    Panel pl(0.0, left);
    pl.frame(svg);
    for (const RelationPoint& p : points)
        if (!p.filtered_survivor) pl.dot(svg, p.t.real(), p.t.imag(), "#cccccc");
    for (const RelationPoint& p : points)
        if (p.filtered_survivor) pl.dot(svg, p.t.real(), p.t.imag(), "#1f56b0");

    Panel pr(kPanelSize + gap, right);
    pr.frame(svg);
    if (reference && right.any) {
        std::string pts;
        for (int j = 0; j <= 256; ++j) {
            double x = right.xmin + (right.xmax - right.xmin) * j / 256.0;
            std::complex<double> g = reference_value(*reference, {x, 0.0});
            if (!std::isfinite(g.real())) continue;
            double yy = std::clamp(g.real(), right.ymin, right.ymax);
            pts += fmt6(pr.px(x)) + "," + fmt6(pr.py(yy)) + " ";
        }
        svg += "<polyline fill=\"none\" stroke=\"#c03030\" stroke-width=\"1\" points=\"" + pts +
               "\"/>\n";
    }
    for (const RelationPoint& p : points)
        if (p.filtered_survivor && near_real_axis(p))
            pr.dot(svg, p.t.real(), p.value.real(), "#1f56b0");

    svg += "</svg>\n";
    return svg;
}

void write_scatter_svg(const std::string& path, const std::vector<RelationPoint>& points,
                       std::optional<RefName> reference) {
    write_text_file(path, scatter_svg(points, reference));
}

std::string sweep_svg(const std::vector<SweepEntry>& entries) {
    static const char* kColors[] = {"#1f56b0", "#b07a1f", "#2e8b57", "#c03030", "#7a1fb0"};
    Bounds b;
    for (const SweepEntry& e : entries)
        for (const RelationPoint& p : e.result.points)
            if (p.filtered_survivor) b.include(p.t.real(), p.t.imag());
    b.pad();

    std::string svg = svg_open(kPanelSize, kPanelSize);
    Panel panel(0.0, b);
    panel.frame(svg);
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const char* color = kColors[i % 5];
        for (const RelationPoint& p : entries[i].result.points)
            if (p.filtered_survivor) panel.dot(svg, p.t.real(), p.t.imag(), color);
    }
    svg += "</svg>\n";
    return svg;
}

void write_sweep_svg(const std::string& path, const std::vector<SweepEntry>& entries) {
    write_text_file(path, sweep_svg(entries));
}

}  // namespace insola
