#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "svcalc/approximant.hpp"
#include "svcalc/calculus.hpp"
#include "svcalc/io.hpp"
#include "svcalc/set_ops.hpp"
#include "svcalc/svf.hpp"

namespace {

using nlohmann::json;

struct Options {
    std::string config_path;
    std::string svf_name;
    std::string params_text;
    std::optional<double> x0, x, ax, bx;
    std::string anchor_text, a_text, b_text;
    std::string side;
    std::optional<int> resolution;
    std::optional<double> h0, ratio, ladder_floor;
    std::optional<int> rungs;
    std::optional<double> conv_tol;
    std::string format;
    std::string out_path;
    bool analytic = false;
};

json load_config(const std::string& path) {
    if (path.empty()) return json::object();
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
    json cfg = json::parse(in);
    if (!cfg.is_object()) throw std::invalid_argument("config: root must be a JSON object");
    static const char* known[] = {"svf",        "params",  "custom",      "x0",
                                  "x",          "anchor",  "a",           "b",
                                  "ax",         "bx",      "sides",       "ladder",
                                  "resolution", "conv_tol", "tolerances", "noise_floor",
                                  "output",     "analytic"};
    for (auto it = cfg.begin(); it != cfg.end(); ++it) {
        bool ok = false;
        for (const char* k : known) ok = ok || it.key() == k;
        if (!ok) throw std::invalid_argument("config: unknown key '" + it.key() + "'");
    }
    return cfg;
}

svc::SetValuedFunction build_svf(const Options& o, const json& cfg) {
    std::string name = o.svf_name;
    json params = json::object();
    if (!o.params_text.empty()) params = json::parse(o.params_text);

    if (name.empty() && cfg.contains("svf")) {
        const json& s = cfg.at("svf");
        if (s.is_string()) {
            name = s.get<std::string>();
        } else if (s.is_object()) {
            if (s.contains("custom")) return svc::make_custom(s.at("custom"));
            name = s.value("name", "");
            if (o.params_text.empty() && s.contains("params")) params = s.at("params");
        } else {
            throw std::invalid_argument("config: 'svf' must be a name or an object");
        }
    }
    if (name.empty() && cfg.contains("custom")) return svc::make_custom(cfg.at("custom"));
    if (!name.empty() && o.params_text.empty() && params.empty() && cfg.contains("params")) {
        params = cfg.at("params");
    }
    if (name.empty()) {
        throw std::invalid_argument("no set-valued function selected (use --svf or a config)");
    }
    return svc::gallery(name, params);
}

double need_x0(const Options& o, const json& cfg) {
    if (o.x0) return *o.x0;
    if (cfg.contains("x0")) return cfg.at("x0").get<double>();
    throw std::invalid_argument("--x0 is required");
}

double need_x(const Options& o, const json& cfg) {
    if (o.x) return *o.x;
    if (cfg.contains("x")) return cfg.at("x").get<double>();
    throw std::invalid_argument("--x is required");
}

int resolve_resolution(const Options& o, const json& cfg) {
    int r = 256;
    if (const char* env = std::getenv("SVCALC_DEFAULT_RESOLUTION")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end == env || *end != '\0') {
            throw std::invalid_argument("SVCALC_DEFAULT_RESOLUTION must be an integer");
        }
        r = static_cast<int>(v);
    }
    if (cfg.contains("resolution")) r = cfg.at("resolution").get<int>();
    if (o.resolution) r = *o.resolution;
    if (r < 2) throw std::invalid_argument("resolution must be at least 2");
    return r;
}

svc::HLadder resolve_ladder(const Options& o, const json& cfg) {
    svc::HLadder lad;
    if (cfg.contains("ladder")) {
        const json& l = cfg.at("ladder");
        if (!l.is_object()) throw std::invalid_argument("config: 'ladder' must be an object");
        for (auto it = l.begin(); it != l.end(); ++it) {
            if (it.key() == "h0") lad.h0 = it.value().get<double>();
            else if (it.key() == "ratio") lad.ratio = it.value().get<double>();
            else if (it.key() == "count") lad.count = it.value().get<int>();
            else if (it.key() == "floor") lad.floor = it.value().get<double>();
            else throw std::invalid_argument("config: unknown ladder key '" + it.key() + "'");
        }
    }
    if (o.h0) lad.h0 = *o.h0;
    if (o.ratio) lad.ratio = *o.ratio;
    if (o.rungs) lad.count = *o.rungs;
    if (o.ladder_floor) lad.floor = *o.ladder_floor;
    return lad;
}

svc::Tolerances resolve_tolerances(const json& cfg) {
    svc::Tolerances tol;
    if (cfg.contains("tolerances")) {
        const json& t = cfg.at("tolerances");
        if (!t.is_object()) throw std::invalid_argument("config: 'tolerances' must be an object");
        for (auto it = t.begin(); it != t.end(); ++it) {
            if (it.key() == "proj_tie_tol") tol.proj_tie_tol = it.value().get<double>();
            else if (it.key() == "dedup_tol") tol.dedup_tol = it.value().get<double>();
            else throw std::invalid_argument("config: unknown tolerance key '" + it.key() + "'");
        }
    }
    return tol;
}

struct SideSel {
    bool right = false;
    bool left = false;
};

SideSel resolve_sides(const Options& o, const json& cfg, const SideSel& fallback) {
    std::string s = o.side;
    if (s.empty() && cfg.contains("sides")) {
        const json& arr = cfg.at("sides");
        if (!arr.is_array() || arr.empty()) {
            throw std::invalid_argument("config: 'sides' must be a non-empty array");
        }
        SideSel sel;
        for (const auto& e : arr) {
            const std::string v = e.get<std::string>();
            if (v == "right") sel.right = true;
            else if (v == "left") sel.left = true;
            else throw std::invalid_argument("config: sides entries must be 'right' or 'left'");
        }
        return sel;
    }
    if (s.empty()) return fallback;
    if (s == "right") return {true, false};
    if (s == "left") return {false, true};
    if (s == "both") return {true, true};
    throw std::invalid_argument("--side must be right, left, or both");
}

svc::CurveSide to_curve_side(const SideSel& s) {
    if (s.right && s.left) return svc::CurveSide::both;
    return s.right ? svc::CurveSide::right : svc::CurveSide::left;
}

std::string resolve_format(const Options& o, const json& cfg, const std::string& fallback) {
    std::string f = o.format;
    if (f.empty() && cfg.contains("output") && cfg.at("output").contains("format")) {
        f = cfg.at("output").at("format").get<std::string>();
    }
    if (f.empty()) return fallback;
    if (f != "csv" && f != "json" && f != "text") {
        throw std::invalid_argument("--format must be csv or json");
    }
    return f;
}

bool resolve_analytic(const Options& o, const json& cfg) {
    if (o.analytic) return true;
    return cfg.contains("analytic") && cfg.at("analytic").get<bool>();
}

std::optional<double> resolve_conv_tol(const Options& o, const json& cfg) {
    if (o.conv_tol) return o.conv_tol;
    if (cfg.contains("conv_tol")) return cfg.at("conv_tol").get<double>();
    return std::nullopt;
}

svc::NoiseFloor resolve_floor(const json& cfg, const svc::CompactSet& image, int resolution) {
    if (cfg.contains("noise_floor")) {
        const json& n = cfg.at("noise_floor");
        if (!n.is_object()) throw std::invalid_argument("config: 'noise_floor' must be an object");
        svc::NoiseFloor floor;
        for (auto it = n.begin(); it != n.end(); ++it) {
            if (it.key() == "absolute") floor.absolute = it.value().get<double>();
            else if (it.key() == "per_h") floor.per_h = it.value().get<double>();
            else throw std::invalid_argument("config: unknown noise_floor key '" + it.key() + "'");
        }
        return floor;
    }
    return svc::default_noise_floor(image, resolution);
}

void emit(const Options& o, const json& cfg, const std::string& text) {
    std::string path = o.out_path;
    if (path.empty() && cfg.contains("output") && cfg.at("output").contains("path")) {
        path = cfg.at("output").at("path").get<std::string>();
    }
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot write output file '" + path + "'");
    out << text;
}

svc::Point point_from_json(const json& j) {
    if (j.is_number()) return {j.get<double>()};
    if (!j.is_array() || j.empty()) throw std::invalid_argument("a point must be a number array");
    svc::Point p;
    for (const auto& c : j) p.push_back(c.get<double>());
    return p;
}

std::string join_coords(const svc::Point& p) {
    std::string out;
    for (std::size_t c = 0; c < p.size(); ++c) {
        if (c) out += ' ';
        out += svc::format_double(p[c]);
    }
    return out;
}

std::string set_csv(const svc::CompactSet& s) {
    std::ostringstream out;
    for (int c = 0; c < s.dim(); ++c) out << (c ? "," : "") << 'c' << c;
    out << '\n';
    for (const auto& p : s.points()) {
        for (std::size_t c = 0; c < p.size(); ++c) {
            if (c) out << ',';
            out << svc::format_double(p[c]);
        }
        out << '\n';
    }
    return out.str();
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------------------

int cmd_pairs(const Options& o, const json& cfg) {
    const svc::Tolerances tol = resolve_tolerances(cfg);
    std::optional<svc::CompactSet> a, b;

    std::string a_text = o.a_text, b_text = o.b_text;
    if (a_text.empty() && cfg.contains("a")) a_text = cfg.at("a").dump();
    if (b_text.empty() && cfg.contains("b")) b_text = cfg.at("b").dump();
    if (!a_text.empty() && !b_text.empty()) {
        a = svc::compact_set_from_json(json::parse(a_text), tol.dedup_tol);
        b = svc::compact_set_from_json(json::parse(b_text), tol.dedup_tol);
    } else if (a_text.empty() != b_text.empty()) {
        throw std::invalid_argument("pairs: --a and --b must be given together");
    } else {
        std::optional<double> ax = o.ax, bx = o.bx;
        if (!ax && cfg.contains("ax")) ax = cfg.at("ax").get<double>();
        if (!bx && cfg.contains("bx")) bx = cfg.at("bx").get<double>();
        if (!ax || !bx) {
            throw std::invalid_argument(
                "pairs: give two set literals (--a, --b) or an SVF with --ax and --bx");
        }
        auto f = build_svf(o, cfg);
        const int res = resolve_resolution(o, cfg);
        a = f.eval(*ax, res, tol.dedup_tol);
        b = f.eval(*bx, res, tol.dedup_tol);
    }

    const auto mp = svc::metric_pairs(*a, *b, tol);
    const double haus = svc::hausdorff_via_pairs(*a, *b, tol);
    const auto diff = svc::metric_difference(*a, *b, tol);

    const std::string fmt = resolve_format(o, cfg, "json");
    if (fmt == "json") {
        json rep;
        rep["a"] = svc::to_json(*a);
        rep["b"] = svc::to_json(*b);
        rep["pairs"] = svc::to_json(mp);
        rep["haus"] = haus;
        rep["difference"] = svc::to_json(diff);
        emit(o, cfg, dump(rep));
    } else {
        std::ostringstream out;
        out << "a,b\n";
        for (const auto& [i, j] : mp.indices()) {
            out << join_coords((*a)[i]) << ',' << join_coords((*b)[j]) << '\n';
        }
        out << "# haus," << svc::format_double(haus) << '\n';
        out << "# difference,";
        for (std::size_t i = 0; i < diff.size(); ++i) {
            if (i) out << ';';
            out << join_coords(diff[i]);
        }
        out << '\n';
        emit(o, cfg, out.str());
    }
    return 0;
}

int cmd_dd(const Options& o, const json& cfg) {
    const svc::Tolerances tol = resolve_tolerances(cfg);
    auto f = build_svf(o, cfg);
    const double x0 = need_x0(o, cfg);
    const double x = need_x(o, cfg);
    const int res = resolve_resolution(o, cfg);

    std::string anchor_text = o.anchor_text;
    if (anchor_text.empty() && cfg.contains("anchor")) anchor_text = cfg.at("anchor").dump();

    svc::CompactSet dd = anchor_text.empty()
                             ? svc::full_dd(f, x0, x, res, tol)
                             : svc::anchored_dd(f, x0, x,
                                                point_from_json(json::parse(anchor_text)), res,
                                                tol);

    const std::string fmt = resolve_format(o, cfg, "json");
    if (fmt == "json") {
        json rep;
        rep["svf"] = f.name();
        rep["x0"] = x0;
        rep["x"] = x;
        rep["resolution"] = res;
        if (!anchor_text.empty()) rep["anchor"] = json::parse(anchor_text);
        rep["quotients"] = svc::to_json(dd);
        emit(o, cfg, dump(rep));
    } else {
        emit(o, cfg, set_csv(dd));
    }
    return 0;
}

int cmd_derivative(const Options& o, const json& cfg) {
    const svc::Tolerances tol = resolve_tolerances(cfg);
    auto f = build_svf(o, cfg);
    const double x0 = need_x0(o, cfg);
    const int res = resolve_resolution(o, cfg);
    const SideSel sides = resolve_sides(o, cfg, {true, true});
    const bool analytic = resolve_analytic(o, cfg);
    if (resolve_format(o, cfg, "json") != "json") {
        throw std::invalid_argument("derivative: the field report is JSON only");
    }

    svc::HLadder lad = resolve_ladder(o, cfg);
    double conv = 0.0;
    if (!analytic) {
        auto opt = resolve_conv_tol(o, cfg);
        conv = opt ? *opt : svc::default_conv_tol(f.eval(x0, res, tol.dedup_tol), res);
    }

    json rep;
    bool all_converged = true;
    for (svc::Side s : {svc::Side::right, svc::Side::left}) {
        if (s == svc::Side::right && !sides.right) continue;
        if (s == svc::Side::left && !sides.left) continue;
        svc::DerivativeField fld =
            analytic ? f.analytic().derivative_field(x0, s, res, tol)
                     : svc::one_sided_derivative(f, x0, s, lad, conv, res, tol);
        all_converged = all_converged && fld.converged;
        rep[svc::to_string(s)] = svc::to_json(fld);
    }
    emit(o, cfg, dump(rep));
    return all_converged ? 0 : 3;
}

struct BuiltFields {
    std::optional<svc::DerivativeField> right, left;
    bool converged = true;
};

BuiltFields build_fields(const svc::SetValuedFunction& f, double x0, const SideSel& sides,
                         bool analytic, const svc::HLadder& lad, double conv, int res,
                         const svc::Tolerances& tol) {
    BuiltFields out;
    if (sides.right) {
        out.right = analytic ? f.analytic().derivative_field(x0, svc::Side::right, res, tol)
                             : svc::one_sided_derivative(f, x0, svc::Side::right, lad, conv, res,
                                                         tol);
        out.converged = out.converged && out.right->converged;
    }
    if (sides.left) {
        out.left = analytic ? f.analytic().derivative_field(x0, svc::Side::left, res, tol)
                            : svc::one_sided_derivative(f, x0, svc::Side::left, lad, conv, res,
                                                        tol);
        out.converged = out.converged && out.left->converged;
    }
    return out;
}

int report_unconverged(const BuiltFields& fields) {
    json diag;
    diag["error"] = "derivative field did not converge";
    if (fields.right && !fields.right->converged) diag["right"] = svc::to_json(*fields.right);
    if (fields.left && !fields.left->converged) diag["left"] = svc::to_json(*fields.left);
    std::cerr << diag.dump(2) << '\n';
    return 3;
}

svc::LocalLinearApproximant assemble(const svc::CompactSet& image, const BuiltFields& fields) {
    if (fields.right && fields.left) {
        return svc::LocalLinearApproximant::two_sided(image, *fields.right, *fields.left);
    }
    return svc::LocalLinearApproximant::one_sided(image,
                                                  fields.right ? *fields.right : *fields.left);
}

int cmd_approx(const Options& o, const json& cfg) {
    const svc::Tolerances tol = resolve_tolerances(cfg);
    auto f = build_svf(o, cfg);
    const double x0 = need_x0(o, cfg);
    const double x = need_x(o, cfg);
    const int res = resolve_resolution(o, cfg);
    const SideSel sides = resolve_sides(o, cfg, {true, true});
    const bool analytic = resolve_analytic(o, cfg);

    const svc::CompactSet image = f.eval(x0, res, tol.dedup_tol);
    svc::HLadder lad = resolve_ladder(o, cfg);
    double conv = 0.0;
    if (!analytic) {
        auto opt = resolve_conv_tol(o, cfg);
        conv = opt ? *opt : svc::default_conv_tol(image, res);
    }
    const BuiltFields fields = build_fields(f, x0, sides, analytic, lad, conv, res, tol);
    if (!fields.converged) return report_unconverged(fields);

    const auto approx = assemble(image, fields);
    std::string anchor_text = o.anchor_text;
    if (anchor_text.empty() && cfg.contains("anchor")) anchor_text = cfg.at("anchor").dump();

    svc::CompactSet value = anchor_text.empty()
                                ? approx.eval(x, tol.dedup_tol)
                                : approx.anchored(point_from_json(json::parse(anchor_text)), x,
                                                  tol.dedup_tol);

    const std::string fmt = resolve_format(o, cfg, "json");
    if (fmt == "json") {
        json rep;
        rep["svf"] = f.name();
        rep["x0"] = x0;
        rep["x"] = x;
        rep["resolution"] = res;
        if (!anchor_text.empty()) rep["anchor"] = json::parse(anchor_text);
        rep["value"] = svc::to_json(value);
        emit(o, cfg, dump(rep));
    } else {
        emit(o, cfg, set_csv(value));
    }
    return 0;
}

int cmd_order(const Options& o, const json& cfg) {
    const svc::Tolerances tol = resolve_tolerances(cfg);
    auto f = build_svf(o, cfg);
    const double x0 = need_x0(o, cfg);
    const int res = resolve_resolution(o, cfg);
    const SideSel sides = resolve_sides(o, cfg, {true, true});
    const bool analytic = resolve_analytic(o, cfg);

    const svc::CompactSet image = f.eval(x0, res, tol.dedup_tol);
    svc::HLadder lad = resolve_ladder(o, cfg);
    double conv = 0.0;
    if (!analytic) {
        auto opt = resolve_conv_tol(o, cfg);
        conv = opt ? *opt : svc::default_conv_tol(image, res);
    }
    const BuiltFields fields = build_fields(f, x0, sides, analytic, lad, conv, res, tol);
    if (!fields.converged) return report_unconverged(fields);

    const auto approx = assemble(image, fields);
    const auto curve = svc::error_curve(f, approx, lad, to_curve_side(sides), res, tol);
    const svc::NoiseFloor floor = resolve_floor(cfg, image, res);
    const svc::OrderFit fit = svc::fit_order(curve, floor);

    const std::string fmt = resolve_format(o, cfg, "json");
    if (fmt == "json") {
        json rep;
        rep["svf"] = f.name();
        rep["x0"] = x0;
        rep["side"] = svc::to_string(to_curve_side(sides));
        rep["resolution"] = res;
        rep["error_curve"] = svc::to_json(curve);
        rep["fit"] = svc::to_json(fit);
        emit(o, cfg, dump(rep));
    } else {
        emit(o, cfg, svc::to_csv(curve) + "# fit: " + svc::to_json(fit).dump() + "\n");
    }
    return 0;
}

int cmd_alpha(const Options& o, const json& cfg) {
    const svc::Tolerances tol = resolve_tolerances(cfg);
    auto f = build_svf(o, cfg);
    const double x0 = need_x0(o, cfg);
    const int res = resolve_resolution(o, cfg);
    const SideSel sides = resolve_sides(o, cfg, {true, false});
    if (sides.right == sides.left) {
        throw std::invalid_argument("alpha: pick exactly one side (right or left)");
    }
    const bool analytic = resolve_analytic(o, cfg);
    const svc::Side side = sides.right ? svc::Side::right : svc::Side::left;

    const svc::CompactSet image = f.eval(x0, res, tol.dedup_tol);
    svc::HLadder lad = resolve_ladder(o, cfg);
    double conv = 0.0;
    if (!analytic) {
        auto opt = resolve_conv_tol(o, cfg);
        conv = opt ? *opt : svc::default_conv_tol(image, res);
    }
    svc::DerivativeField fld =
        analytic ? f.analytic().derivative_field(x0, side, res, tol)
                 : svc::one_sided_derivative(f, x0, side, lad, conv, res, tol);
    if (!fld.converged) {
        BuiltFields diag;
        if (side == svc::Side::right) diag.right = fld; else diag.left = fld;
        return report_unconverged(diag);
    }

    const svc::NoiseFloor floor = resolve_floor(cfg, image, res);
    std::vector<svc::ErrorSample> devs;
    const svc::OrderFit fit = svc::alpha_probe(f, fld, lad, tol, floor, &devs);

    const std::string fmt = resolve_format(o, cfg, "json");
    if (fmt == "json") {
        json rep;
        rep["svf"] = f.name();
        rep["x0"] = x0;
        rep["side"] = svc::to_string(side);
        rep["resolution"] = res;
        json samples = json::array();
        for (const auto& s : devs) samples.push_back({{"h", s.h}, {"dev", s.err}});
        rep["deviation_samples"] = samples;
        rep["fit"] = svc::to_json(fit);
        emit(o, cfg, dump(rep));
    } else {
        std::ostringstream out;
        out << "h,dev\n";
        for (const auto& s : devs) {
            out << svc::format_double(s.h) << ',' << svc::format_double(s.err) << '\n';
        }
        out << "# fit: " << svc::to_json(fit).dump() << '\n';
        emit(o, cfg, out.str());
    }
    return 0;
}

int cmd_gallery_list(const Options& o, const json& cfg) {
    const auto entries = svc::gallery_info();
    const std::string fmt = resolve_format(o, cfg, "text");
    if (fmt == "json") {
        json rep = json::array();
        for (const auto& e : entries) {
            rep.push_back({{"name", e.name}, {"summary", e.summary}, {"params", e.params}});
        }
        emit(o, cfg, dump(rep));
        return 0;
    }
    std::size_t width = 0;
    for (const auto& e : entries) width = std::max(width, e.name.size());
    std::ostringstream out;
    for (const auto& e : entries) {
        out << e.name << std::string(width - e.name.size() + 2, ' ') << e.summary;
        if (!e.params.empty()) out << "  [params: " << e.params << ']';
        out << '\n';
    }
    emit(o, cfg, out.str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    Options o;
    CLI::App app{"pointwise calculus for set-valued functions"};
    app.require_subcommand(1);

    auto add_common = [&o](CLI::App* sub) {
        sub->add_option("--config", o.config_path, "JSON analysis config");
        sub->add_option("--svf", o.svf_name, "gallery function name");
        sub->add_option("--params", o.params_text, "gallery parameters (JSON object)");
        sub->add_option("--resolution", o.resolution, "sampling resolution (>= 2)");
        sub->add_option("--format", o.format, "output format: csv or json")
            ->check(CLI::IsMember({"csv", "json", "text"}));
        sub->add_option("--out", o.out_path, "write the report to this file");
    };
    auto add_ladder = [&o](CLI::App* sub) {
        sub->add_option("--h0", o.h0, "largest probe step");
        sub->add_option("--ratio", o.ratio, "step ratio in (0,1)");
        sub->add_option("--rungs", o.rungs, "number of probe steps");
        sub->add_option("--floor", o.ladder_floor, "smallest allowed probe step");
        sub->add_option("--conv-tol", o.conv_tol, "residual threshold for convergence");
    };

    CLI::App* pairs = app.add_subcommand("pairs", "metric pairs, distance, difference");
    add_common(pairs);
    pairs->add_option("--a", o.a_text, "first set (JSON point array)");
    pairs->add_option("--b", o.b_text, "second set (JSON point array)");
    pairs->add_option("--ax", o.ax, "evaluate the SVF here for the first set");
    pairs->add_option("--bx", o.bx, "evaluate the SVF here for the second set");

    CLI::App* dd = app.add_subcommand("dd", "difference quotient sets");
    add_common(dd);
    dd->add_option("--x0", o.x0, "base point");
    dd->add_option("--x", o.x, "probe point");
    dd->add_option("--anchor", o.anchor_text, "restrict to this anchor (JSON point)");

    CLI::App* derivative = app.add_subcommand("derivative", "one-sided derivative fields");
    add_common(derivative);
    add_ladder(derivative);
    derivative->add_option("--x0", o.x0, "base point");
    derivative->add_option("--side", o.side, "right, left, or both");
    derivative->add_flag("--analytic", o.analytic, "use the gallery closed form");

    CLI::App* approx = app.add_subcommand("approx", "local linear approximant values");
    add_common(approx);
    add_ladder(approx);
    approx->add_option("--x0", o.x0, "base point");
    approx->add_option("--x", o.x, "evaluation point");
    approx->add_option("--side", o.side, "right, left, or both");
    approx->add_option("--anchor", o.anchor_text, "restrict to this anchor (JSON point)");
    approx->add_flag("--analytic", o.analytic, "use the gallery closed form");

    CLI::App* order = app.add_subcommand("order", "approximation error curve and decay order");
    add_common(order);
    add_ladder(order);
    order->add_option("--x0", o.x0, "base point");
    order->add_option("--side", o.side, "right, left, or both");
    order->add_flag("--analytic", o.analytic, "use the gallery closed form");

    CLI::App* alpha = app.add_subcommand("alpha", "uniform deviation decay probe");
    add_common(alpha);
    add_ladder(alpha);
    alpha->add_option("--x0", o.x0, "base point");
    alpha->add_option("--side", o.side, "right or left");
    alpha->add_flag("--analytic", o.analytic, "use the gallery closed form");

    CLI::App* gallery = app.add_subcommand("gallery", "built-in function catalogue");
    gallery->require_subcommand(1);
    CLI::App* gallery_list = gallery->add_subcommand("list", "list the gallery entries");
    add_common(gallery_list);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }

    try {
        const json cfg = load_config(o.config_path);
        if (pairs->parsed()) return cmd_pairs(o, cfg);
        if (dd->parsed()) return cmd_dd(o, cfg);
        if (derivative->parsed()) return cmd_derivative(o, cfg);
        if (approx->parsed()) return cmd_approx(o, cfg);
        if (order->parsed()) return cmd_order(o, cfg);
        if (alpha->parsed()) return cmd_alpha(o, cfg);
        if (gallery->parsed()) return cmd_gallery_list(o, cfg);
    } catch (const svc::unconverged_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const json::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::logic_error& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 1;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
