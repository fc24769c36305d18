#include "canarc/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "canarc/version.hpp"

namespace canarc {

namespace {

// All doubles are printed in scientific notation with 17 significant
// digits: lossless for binary64 and reproducible byte for byte.
std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17e", v);
    return buf;
}

struct Emitter {
    std::ostringstream out;
    int depth = 0;

    void indent() {
        for (int i = 0; i < depth; ++i) out << "  ";
    }
    void complex_pair(Complex z) {
        out << '[' << fmt(z.real()) << ", " << fmt(z.imag()) << ']';
    }
    void point(const SpherePoint& p) {
        if (p.is_infinity())
            out << "\"inf\"";
        else
            complex_pair(p.value());
    }
};

void emit_arc(Emitter& e, const Polyline& arc) {
    e.out << "[\n";
    ++e.depth;
    for (std::size_t i = 0; i < arc.samples.size(); ++i) {
        e.indent();
        e.point(arc.samples[i]);
        if (i + 1 < arc.samples.size()) e.out << ',';
        e.out << '\n';
    }
    --e.depth;
    e.indent();
    e.out << ']';
}

} // namespace

std::string to_json(const CanonicalConfiguration& config) {
    Emitter e;
    e.out << "{\n";
    ++e.depth;

    e.indent();
    e.out << "\"format_version\": " << kFormatVersion << ",\n";
    e.indent();
    e.out << "\"tool\": \"" << kToolName << ' ' << kToolVersion << "\",\n";

    e.indent();
    e.out << "\"points\": [";
    for (int i = 0; i < 4; ++i) {
        e.point(config.points[i]);
        if (i < 3) e.out << ", ";
    }
    e.out << "],\n";

    e.indent();
    e.out << "\"class\": {\"r\": " << config.cls.r << ", \"s\": " << config.cls.s
          << "},\n";
    e.indent();
    e.out << "\"pairing\": \"" << pairing_name(config.pairing) << "\",\n";

    e.indent();
    e.out << "\"basis\": {\n";
    ++e.depth;
    e.indent();
    e.out << "\"omega1_0\": ";
    e.complex_pair(config.basis.omega1_0());
    e.out << ",\n";
    e.indent();
    e.out << "\"omega2_0\": ";
    e.complex_pair(config.basis.omega2_0());
    e.out << ",\n";
    e.indent();
    e.out << "\"tau\": ";
    e.complex_pair(config.basis.tau());
    e.out << '\n';
    --e.depth;
    e.indent();
    e.out << "},\n";

    e.indent();
    e.out << "\"periods\": {\n";
    ++e.depth;
    e.indent();
    e.out << "\"omega1\": ";
    e.complex_pair(config.omega1);
    e.out << ",\n";
    e.indent();
    e.out << "\"omega2\": ";
    e.complex_pair(config.omega2);
    e.out << ",\n";
    e.indent();
    e.out << "\"omega2_coeffs\": [" << config.omega2_coeffs[0] << ", "
          << config.omega2_coeffs[1] << "]\n";
    --e.depth;
    e.indent();
    e.out << "},\n";

    e.indent();
    e.out << "\"arcs\": {\n";
    ++e.depth;
    e.indent();
    e.out << "\"arc0\": ";
    emit_arc(e, config.arc0);
    e.out << ",\n";
    e.indent();
    e.out << "\"arc1\": ";
    emit_arc(e, config.arc1);
    e.out << '\n';
    --e.depth;
    e.indent();
    e.out << "},\n";

    e.indent();
    e.out << "\"metadata\": {\n";
    ++e.depth;
    e.indent();
    e.out << "\"flat_length0\": " << fmt(config.flat_length0) << ",\n";
    e.indent();
    e.out << "\"flat_length1\": " << fmt(config.flat_length1) << ",\n";
    e.indent();
    e.out << "\"annulus_modulus\": " << fmt(config.annulus_modulus) << ",\n";
    e.indent();
    e.out << "\"sampling_budget\": {\"h\": " << fmt(config.budget.h)
          << ", \"theta_max_deg\": " << fmt(config.budget.theta_max_deg)
          << ", \"max_samples\": " << config.budget.max_samples << "}\n";
    --e.depth;
    e.indent();
    e.out << "}\n";

    --e.depth;
    e.out << "}\n";
    return e.out.str();
}

namespace {

using nlohmann::json;

SpherePoint parse_point(const json& j) {
    if (j.is_string()) {
        if (j.get<std::string>() == "inf") return SpherePoint::infinity();
        raise(ErrorCode::ParseError, "unknown point token");
    }
    if (!j.is_array() || j.size() != 2)
        raise(ErrorCode::ParseError, "point must be [re, im] or \"inf\"");
    return SpherePoint::finite(
        Complex(j[0].get<double>(), j[1].get<double>()));
}

Complex parse_complex(const json& j) {
    if (!j.is_array() || j.size() != 2)
        raise(ErrorCode::ParseError, "complex value must be [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

Polyline parse_arc(const json& j) {
    Polyline arc;
    for (const auto& s : j) arc.samples.push_back(parse_point(s));
    if (arc.samples.size() < 2)
        raise(ErrorCode::ParseError, "arc needs at least 2 samples");
    return arc;
}

} // namespace

CanonicalConfiguration from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& ex) {
        raise(ErrorCode::ParseError, ex.what());
    }
    try {
        if (j.at("format_version").get<int>() != kFormatVersion)
            raise(ErrorCode::ParseError, "unsupported format_version");

        CanonicalConfiguration config;
        const auto& pts = j.at("points");
        if (!pts.is_array() || pts.size() != 4)
            raise(ErrorCode::ParseError, "expected 4 points");
        for (int i = 0; i < 4; ++i) config.points[i] = parse_point(pts[i]);

        config.cls.r = j.at("class").at("r").get<long long>();
        config.cls.s = j.at("class").at("s").get<long long>();
        config.pairing = pairing_from_name(j.at("pairing").get<std::string>());

        const auto& budget = j.at("metadata").at("sampling_budget");
        config.budget.h = budget.at("h").get<double>();
        config.budget.theta_max_deg = budget.at("theta_max_deg").get<double>();
        config.budget.max_samples = budget.at("max_samples").get<int>();

        config.arc0 = parse_arc(j.at("arcs").at("arc0"));
        config.arc1 = parse_arc(j.at("arcs").at("arc1"));
        config.flat_length0 = j.at("metadata").at("flat_length0").get<double>();
        config.flat_length1 = j.at("metadata").at("flat_length1").get<double>();
        config.annulus_modulus =
            j.at("metadata").at("annulus_modulus").get<double>();

        // Rebuild the derived data from the points and cross-check the
        // stored lattice fields: a corrupted basis must not verify quietly.
        auto [T, roots] = normalize_quadruple(config.points[0],
                                              config.points[1],
                                              config.points[2],
                                              config.points[3]);
        config.transport = T;
        config.basis = lattice_from_roots(roots);
        const Complex file_w1 = parse_complex(j.at("basis").at("omega1_0"));
        const Complex file_w2 = parse_complex(j.at("basis").at("omega2_0"));
        if (std::abs(file_w1 - config.basis.omega1_0()) > 1e-9 ||
            std::abs(file_w2 - config.basis.omega2_0()) > 1e-9)
            raise(ErrorCode::ParseError,
                  "stored lattice basis disagrees with the points");

        const auto& coeffs = j.at("periods").at("omega2_coeffs");
        config.omega2_coeffs = {coeffs[0].get<long long>(),
                                coeffs[1].get<long long>()};
        const IsotopyClass cls = canonical_class(config.cls.r, config.cls.s);
        config.cls = cls;
        if (cls.r * config.omega2_coeffs[1] -
                cls.s * config.omega2_coeffs[0] != 1)
            raise(ErrorCode::ParseError, "companion coefficients not unimodular");
        config.omega1 = double(cls.r) * config.basis.omega1_0() +
                        double(cls.s) * config.basis.omega2_0();
        config.omega2 = double(config.omega2_coeffs[0]) * config.basis.omega1_0() +
                        double(config.omega2_coeffs[1]) * config.basis.omega2_0();
        return config;
    } catch (const Error&) {
        throw;
    } catch (const std::exception& ex) {
        raise(ErrorCode::ParseError, ex.what());
    }
}

std::string report_to_json(const VerificationReport& report) {
    Emitter e;
    e.out << "{\n";
    ++e.depth;
    e.indent();
    e.out << "\"tool\": \"" << kToolName << ' ' << kToolVersion << "\",\n";
    e.indent();
    e.out << "\"pass\": " << (report.pass() ? "true" : "false") << ",\n";
    e.indent();
    e.out << "\"tol\": " << fmt(report.tol) << ",\n";
    e.indent();
    e.out << "\"resolution\": " << report.resolution << ",\n";
    e.indent();
    e.out << "\"sampling_h\": " << fmt(report.sampling_h) << ",\n";
    for (int k = 0; k < 2; ++k) {
        e.indent();
        e.out << "\"arc" << k << "\": {\"geodesic_distance\": "
              << fmt(report.geodesic_distance[k]) << ", \"pass\": "
              << (report.arc_pass[k] ? "true" : "false")
              << ", \"fix_residual\": " << fmt(report.fix_residual[k])
              << ", \"idem_residual\": " << fmt(report.idem_residual[k])
              << ", \"image_clearance\": " << fmt(report.image_clearance[k])
              << "},\n";
    }
    e.indent();
    e.out << "\"fix_tol\": " << fmt(report.fix_tol) << ",\n";
    e.indent();
    e.out << "\"idem_tol\": " << fmt(report.idem_tol) << ",\n";
    e.indent();
    e.out << "\"disjointness_margin\": " << fmt(report.disjointness_margin)
          << "\n";
    --e.depth;
    e.out << "}\n";
    return e.out.str();
}

} // namespace canarc
