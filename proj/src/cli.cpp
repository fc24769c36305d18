#include "canarc/cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "canarc/json_io.hpp"
#include "canarc/solver.hpp"
#include "canarc/svg.hpp"
#include "canarc/version.hpp"

namespace canarc::cli {

namespace {

// Point syntax: "re", "re+imi" / "re-imi", "imi", or "inf".
SpherePoint parse_point(const std::string& raw) {
    std::string s;
    for (char c : raw)
        if (!std::isspace((unsigned char)c)) s.push_back(c);
    if (s == "inf" || s == "Inf" || s == "INF") return SpherePoint::infinity();
    if (s.empty()) raise(ErrorCode::ParseError, "empty point");

    auto parse_num = [](const std::string& t, double& out, std::size_t& used) {
        try {
            out = std::stod(t, &used);
        } catch (const std::exception&) {
            raise(ErrorCode::ParseError, "bad number in point '" + t + "'");
        }
    };

    // Trailing 'i' marks an imaginary part.
    if (s.back() == 'i') {
        std::string body = s.substr(0, s.size() - 1);
        // Split at the last +/- that is not an exponent sign or leading.
        std::size_t split = std::string::npos;
        for (std::size_t i = body.size(); i-- > 1;) {
            if ((body[i] == '+' || body[i] == '-') &&
                body[i - 1] != 'e' && body[i - 1] != 'E') {
                split = i;
                break;
            }
        }
        double re = 0.0, im = 0.0;
        std::size_t used = 0;
        if (split == std::string::npos) {
            if (body.empty() || body == "+")
                im = 1.0;
            else if (body == "-")
                im = -1.0;
            else {
                parse_num(body, im, used);
                if (used != body.size())
                    raise(ErrorCode::ParseError, "bad point '" + raw + "'");
            }
        } else {
            parse_num(body.substr(0, split), re, used);
            if (used != split)
                raise(ErrorCode::ParseError, "bad point '" + raw + "'");
            std::string imag = body.substr(split);
            if (imag == "+")
                im = 1.0;
            else if (imag == "-")
                im = -1.0;
            else {
                parse_num(imag, im, used);
                if (used != imag.size())
                    raise(ErrorCode::ParseError, "bad point '" + raw + "'");
            }
        }
        return SpherePoint::finite(Complex(re, im));
    }

    double re = 0.0;
    std::size_t used = 0;
    parse_num(s, re, used);
    if (used != s.size())
        raise(ErrorCode::ParseError, "bad point '" + raw + "'");
    return SpherePoint::finite(Complex(re, 0.0));
}

IsotopyClass parse_class(const std::string& raw) {
    const auto slash = raw.find('/');
    if (slash == std::string::npos)
        raise(ErrorCode::ParseError, "class must be of the form r/s");
    try {
        const long long r = std::stoll(raw.substr(0, slash));
        const long long s = std::stoll(raw.substr(slash + 1));
        return canonical_class(r, s);
    } catch (const Error&) {
        throw;
    } catch (const std::exception&) {
        raise(ErrorCode::ParseError, "bad class '" + raw + "'");
    }
}

std::array<SpherePoint, 4> parse_points(const std::string& raw) {
    std::array<SpherePoint, 4> pts;
    std::stringstream ss(raw);
    std::string item;
    int n = 0;
    while (std::getline(ss, item, ',')) {
        if (n >= 4) raise(ErrorCode::ParseError, "expected exactly 4 points");
        pts[n++] = parse_point(item);
    }
    if (n != 4) raise(ErrorCode::ParseError, "expected exactly 4 points");
    return pts;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) raise(ErrorCode::IoError, "cannot open '" + path + "'");
    out << content;
    if (!out) raise(ErrorCode::IoError, "write to '" + path + "' failed");
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise(ErrorCode::IoError, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int exit_code_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::DuplicatePoints:
        case ErrorCode::InvalidArguments:
        case ErrorCode::NotPrimitive:
        case ErrorCode::PairingMismatch:
        case ErrorCode::ParseError:
        case ErrorCode::EndpointMismatch:
        case ErrorCode::IoError:
            return 2;
        default:
            return 3;
    }
}

int cmd_solve(const std::string& points_raw, const std::string& class_raw,
              const std::string& pairing_raw, double h, int max_samples,
              const std::string& out_path, const std::string& svg_path) {
    const auto points = parse_points(points_raw);
    const IsotopyClass cls = parse_class(class_raw);
    if (!pairing_raw.empty()) {
        const Pairing requested = pairing_from_name(pairing_raw);
        if (requested != class_pairing(cls))
            raise(ErrorCode::PairingMismatch,
                  "class " + std::to_string(cls.r) + "/" +
                      std::to_string(cls.s) + " induces pairing " +
                      pairing_name(class_pairing(cls)));
    }
    SamplingBudget budget;
    if (h > 0.0) budget.h = h;
    if (max_samples > 0) budget.max_samples = max_samples;

    const CanonicalConfiguration config =
        build_configuration(points, cls, budget);
    const std::string doc = to_json(config);
    if (!out_path.empty())
        write_file(out_path, doc);
    else
        std::cout << doc;
    if (!svg_path.empty()) write_file(svg_path, render_svg(config));
    return 0;
}

int cmd_enumerate(long long max_height, bool as_json) {
    const auto classes = enumerate_classes(max_height);
    if (as_json) {
        std::ostringstream out;
        out << "[\n";
        for (std::size_t i = 0; i < classes.size(); ++i) {
            out << "  {\"r\": " << classes[i].r << ", \"s\": " << classes[i].s
                << ", \"pairing\": \"" << pairing_name(class_pairing(classes[i]))
                << "\"}";
            if (i + 1 < classes.size()) out << ',';
            out << '\n';
        }
        out << "]\n";
        std::cout << out.str();
    } else {
        for (const auto& cls : classes)
            std::cout << '(' << cls.r << ',' << cls.s << ") "
                      << pairing_name(class_pairing(cls)) << '\n';
    }
    return 0;
}

int cmd_verify(const std::string& file, double tol, int resolution,
               const std::string& report_path) {
    const CanonicalConfiguration config = from_json(read_file(file));
    const double effective_tol =
        tol > 0.0 ? tol : std::max(5e-3, 5.0 * config.budget.h);
    const VerificationReport report =
        verify_configuration(config, effective_tol, resolution);

    for (int k = 0; k < 2; ++k)
        std::printf("arc%d: geodesic distance %.3e (tol %.1e) %s\n", k,
                    report.geodesic_distance[k], report.tol,
                    report.arc_pass[k] ? "PASS" : "FAIL");
    std::printf(
        "involution: fix %.3e / %.3e (tol %.1e), idem %.3e / %.3e (tol %.1e)\n",
        report.fix_residual[0], report.fix_residual[1], report.fix_tol,
        report.idem_residual[0], report.idem_residual[1], report.idem_tol);
    std::printf("disjointness margin %.3e\n", report.disjointness_margin);
    std::printf("verdict: %s\n", report.pass() ? "PASS" : "FAIL");

    if (!report_path.empty()) write_file(report_path, report_to_json(report));
    return report.pass() ? 0 : 1;
}

int cmd_render(const std::string& file, const std::string& svg_path,
               int width) {
    const CanonicalConfiguration config = from_json(read_file(file));
    write_file(svg_path, render_svg(config, width));
    return 0;
}

} // namespace

int run(const std::vector<std::string>& args) {
    CLI::App app{std::string(kToolName) +
                 " - canonical arc pairs through four sphere points"};
    app.name(kToolName);
    // Long-form help only: the solve subcommand owns --h for the sampling
    // budget.
    app.set_help_flag("--help", "print help and exit");
    app.set_version_flag("--version",
                         std::string(kToolName) + " " + kToolVersion);
    app.require_subcommand(1);

    std::string points_raw, class_raw, pairing_raw, out_path, svg_path;
    double h = 0.0;
    int max_samples = 0;
    auto* solve = app.add_subcommand("solve", "build a canonical configuration");
    solve->add_option("--points", points_raw,
                      "four points P0,P1,P2,P3 (re, re+imi, or inf)")
        ->required();
    solve->add_option("--class", class_raw, "isotopy class r/s")->required();
    solve->add_option("--pairing", pairing_raw,
                      "expected pairing (01|23, 02|13, 03|12); checked "
                      "against the class");
    solve->add_option("--h", h, "sampling budget (chordal gap)");
    solve->add_option("--max-samples", max_samples, "sample cap per arc");
    solve->add_option("--out", out_path, "output JSON file (default stdout)");
    solve->add_option("--svg", svg_path, "also render an SVG figure");

    long long max_height = 1;
    bool as_json = false;
    auto* enumerate =
        app.add_subcommand("enumerate", "list isotopy classes with pairings");
    enumerate->add_option("--max-height", max_height, "height bound")
        ->required();
    enumerate->add_flag("--json", as_json, "JSON output");

    std::string verify_file, report_path;
    double tol = 0.0;
    int resolution = 512;
    auto* verify =
        app.add_subcommand("verify", "run the geodesic oracle on a file");
    verify->add_option("file", verify_file, "configuration JSON")->required();
    verify->add_option("--tol", tol, "tolerance (default max(5e-3, 5h))");
    verify->add_option("--resolution", resolution, "geodesic samples");
    verify->add_option("--report", report_path, "write a JSON report");

    std::string render_file, render_svg_path;
    int width = 640;
    auto* render = app.add_subcommand("render", "draw a configuration");
    render->add_option("file", render_file, "configuration JSON")->required();
    render->add_option("--svg", render_svg_path, "output SVG file")->required();
    render->add_option("--width", width, "viewport pixels");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) { // --help / --version
            app.exit(e);
            return 0;
        }
        std::cerr << "error: ParseError: " << e.what() << '\n';
        return 2;
    }

    try {
        if (solve->parsed())
            return cmd_solve(points_raw, class_raw, pairing_raw, h,
                             max_samples, out_path, svg_path);
        if (enumerate->parsed()) return cmd_enumerate(max_height, as_json);
        if (verify->parsed())
            return cmd_verify(verify_file, tol, resolution, report_path);
        if (render->parsed()) return cmd_render(render_file, render_svg_path, width);
    } catch (const Error& err) {
        std::cerr << "error: " << err.what() << '\n';
        return exit_code_for(err.code());
    } catch (const std::exception& ex) {
        std::cerr << "error: Internal: " << ex.what() << '\n';
        return 3;
    }
    return 2;
}

} // namespace canarc::cli
