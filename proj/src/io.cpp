#include "svcalc/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace svc {

std::string format_double(double v) {
    char buf[40];
    // Try increasing precision until the value round-trips.
    for (int prec = 15; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) break;
    }
    return buf;
}

nlohmann::json to_json(const CompactSet& a) {
    nlohmann::json arr = nlohmann::json::array();
    for (const Point& p : a.points()) arr.push_back(p);
    return arr;
}

CompactSet compact_set_from_json(const nlohmann::json& j, double dedup_tol) {
    if (!j.is_array() || j.empty()) {
        throw std::invalid_argument("compact set: expected a nonempty JSON array");
    }
    std::vector<Point> pts;
    pts.reserve(j.size());
    for (const auto& jp : j) {
        if (jp.is_number()) {
            pts.push_back({jp.get<double>()});
        } else if (jp.is_array() && !jp.empty()) {
            Point p;
            p.reserve(jp.size());
            for (const auto& c : jp) {
                if (!c.is_number()) {
                    throw std::invalid_argument("compact set: coordinates must be numbers");
                }
                p.push_back(c.get<double>());
            }
            pts.push_back(std::move(p));
        } else {
            throw std::invalid_argument(
                "compact set: each point must be a number or an array of numbers");
        }
    }
    return CompactSet(std::move(pts), dedup_tol);
}

std::string to_text(const CompactSet& a) {
    std::string out;
    for (const Point& p : a.points()) {
        for (std::size_t c = 0; c < p.size(); ++c) {
            if (c > 0) out += ' ';
            out += format_double(p[c]);
        }
        out += '\n';
    }
    return out;
}

CompactSet compact_set_from_text(const std::string& text, double dedup_tol) {
    std::vector<Point> pts;
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
        std::istringstream fields(line);
        Point p;
        double v = 0.0;
        while (fields >> v) p.push_back(v);
        if (!fields.eof()) {
            throw std::invalid_argument("compact set: malformed line '" + line + "'");
        }
        if (!p.empty()) pts.push_back(std::move(p));
    }
    if (pts.empty()) throw std::invalid_argument("compact set: no points in text input");
    return CompactSet(std::move(pts), dedup_tol);
}

nlohmann::json to_json(const MetricPairSet& pairs) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [a, b] : pairs.pairs()) {
        arr.push_back(nlohmann::json::array({a, b}));
    }
    return arr;
}

nlohmann::json to_json(const DerivativeField& field) {
    nlohmann::json anchors = nlohmann::json::array();
    for (const auto& a : field.anchors) {
        anchors.push_back({{"y", a.anchor},
                           {"derivative_points", to_json(a.derivative)},
                           {"residuals", a.residuals},
                           {"converged", a.converged}});
    }
    return {{"x0", field.x0},
            {"side", to_string(field.side)},
            {"resolution", field.resolution},
            {"anchors", std::move(anchors)},
            {"converged", field.converged}};
}

nlohmann::json to_json(const OrderFit& fit) {
    nlohmann::json j;
    j["exact"] = fit.exact;
    if (fit.exact) {
        j["slope"] = nullptr;
    } else {
        j["slope"] = fit.slope;
        j["intercept"] = fit.intercept;
        j["rms_residual"] = fit.rms_residual;
        j["h_min"] = fit.h_min;
        j["h_max"] = fit.h_max;
    }
    j["rungs_used"] = fit.rungs_used;
    return j;
}

nlohmann::json to_json(const ErrorCurve& curve) {
    nlohmann::json samples = nlohmann::json::array();
    for (const auto& s : curve.samples) samples.push_back({{"h", s.h}, {"err", s.err}});
    return {{"x0", curve.x0}, {"side", to_string(curve.side)}, {"samples", std::move(samples)}};
}

std::string to_csv(const ErrorCurve& curve) {
    std::string out = "h,err\n";
    for (const auto& s : curve.samples) {
        out += format_double(s.h);
        out += ',';
        out += format_double(s.err);
        out += '\n';
    }
    return out;
}

}  // namespace svc
