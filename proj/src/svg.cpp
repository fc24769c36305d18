#include "canarc/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <vector>

namespace canarc {

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return buf;
}

struct Frame {
    double cx = 0.0, cy = 0.0, half = 1.0; // data window (square)
    int width = 640;

    double px(double x) const {
        return (x - (cx - half)) / (2.0 * half) * width;
    }
    double py(double y) const {
        return (1.0 - (y - (cy - half)) / (2.0 * half)) * width;
    }
    bool inside(Complex z) const {
        return std::abs(z.real() - cx) <= half && std::abs(z.imag() - cy) <= half;
    }
};

// Split an arc at infinity samples / window exits into drawable pieces.
void emit_arc(std::ostringstream& out, const Polyline& arc,
              const Frame& frame, const std::string& color) {
    std::vector<std::vector<Complex>> pieces(1);
    std::vector<Complex> markers; // clipped ray directions
    const double big = 4.0 * frame.half;
    for (std::size_t i = 0; i < arc.samples.size(); ++i) {
        const SpherePoint& p = arc.samples[i];
        const bool far_out =
            p.is_infinity() ||
            std::abs(p.value() - Complex(frame.cx, frame.cy)) > big;
        if (far_out) {
            if (!pieces.back().empty()) {
                // Continue the last segment direction out of the window.
                const auto& piece = pieces.back();
                Complex dir(0.0, 0.0);
                if (piece.size() >= 2)
                    dir = piece.back() - piece[piece.size() - 2];
                if (std::abs(dir) > 0.0) {
                    const Complex exit =
                        piece.back() + dir / std::abs(dir) * (3.0 * frame.half);
                    markers.push_back(exit);
                }
                pieces.emplace_back();
            }
            continue;
        }
        pieces.back().push_back(p.value());
    }

    for (const auto& piece : pieces) {
        if (piece.size() < 2) continue;
        out << "  <polyline fill=\"none\" stroke=\"" << color
            << "\" stroke-width=\"1.5\" points=\"";
        for (const Complex& z : piece)
            out << num(frame.px(z.real())) << ',' << num(frame.py(z.imag()))
                << ' ';
        out << "\"/>\n";
    }
    for (const Complex& m : markers) {
        const double x = std::clamp(frame.px(m.real()), 4.0,
                                    double(frame.width) - 4.0);
        const double y = std::clamp(frame.py(m.imag()), 4.0,
                                    double(frame.width) - 4.0);
        out << "  <rect x=\"" << num(x - 3) << "\" y=\"" << num(y - 3)
            << "\" width=\"6\" height=\"6\" fill=\"" << color << "\"/>\n";
    }
}

} // namespace

std::string render_svg(const CanonicalConfiguration& config, int width) {
    // Square data window focused on the bulk of the arcs: rays running
    // toward infinity would otherwise dwarf the interesting region, so
    // samples far beyond the median scale stay outside the frame.
    std::vector<double> mags;
    for (const auto* arc : {&config.arc0, &config.arc1})
        for (const auto& p : arc->samples)
            if (!p.is_infinity()) mags.push_back(std::abs(p.value()));
    double cutoff = 50.0;
    if (!mags.empty()) {
        std::nth_element(mags.begin(), mags.begin() + mags.size() / 2,
                         mags.end());
        cutoff = 4.0 * mags[mags.size() / 2] + 1.0;
    }
    for (const auto& p : config.points)
        if (!p.is_infinity())
            cutoff = std::max(cutoff, 1.5 * std::abs(p.value()) + 0.5);

    double lo_x = 0.0, hi_x = 0.0, lo_y = 0.0, hi_y = 0.0;
    bool any = false;
    auto absorb = [&](const SpherePoint& p) {
        if (p.is_infinity()) return;
        const Complex z = p.value();
        if (std::abs(z) > cutoff) return;
        if (!any) {
            lo_x = hi_x = z.real();
            lo_y = hi_y = z.imag();
            any = true;
        } else {
            lo_x = std::min(lo_x, z.real());
            hi_x = std::max(hi_x, z.real());
            lo_y = std::min(lo_y, z.imag());
            hi_y = std::max(hi_y, z.imag());
        }
    };
    for (const auto& p : config.points) absorb(p);
    for (const auto& p : config.arc0.samples) absorb(p);
    for (const auto& p : config.arc1.samples) absorb(p);
    if (!any) {
        lo_x = lo_y = -1.0;
        hi_x = hi_y = 1.0;
    }

    Frame frame;
    frame.cx = 0.5 * (lo_x + hi_x);
    frame.cy = 0.5 * (lo_y + hi_y);
    frame.half = 0.5 * std::max(hi_x - lo_x, hi_y - lo_y) * 1.2 + 0.1;
    frame.width = width;

    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" "
           "width=\"" << width << "\" height=\"" << width
        << "\" viewBox=\"0 0 " << width << ' ' << width << "\">\n"
        << "  <rect width=\"" << width << "\" height=\"" << width
        << "\" fill=\"white\"/>\n";

    emit_arc(out, config.arc0, frame, "#1f77b4");
    emit_arc(out, config.arc1, frame, "#d62728");

    const char* labels[4] = {"a0", "a1", "a2", "a3"};
    for (int i = 0; i < 4; ++i) {
        const SpherePoint& p = config.points[i];
        double x, y;
        if (p.is_infinity() || !frame.inside(p.value())) {
            x = width - 20.0 - 14.0 * i;
            y = 16.0;
            out << "  <rect x=\"" << num(x - 4) << "\" y=\"" << num(y - 4)
                << "\" width=\"8\" height=\"8\" fill=\"black\"/>\n";
        } else {
            x = frame.px(p.value().real());
            y = frame.py(p.value().imag());
            out << "  <circle cx=\"" << num(x) << "\" cy=\"" << num(y)
                << "\" r=\"4\" fill=\"black\"/>\n";
        }
        out << "  <text x=\"" << num(x + 6) << "\" y=\"" << num(y - 6)
            << "\" font-size=\"12\" font-family=\"sans-serif\">" << labels[i]
            << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

} // namespace canarc
