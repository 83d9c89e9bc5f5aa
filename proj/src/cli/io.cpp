#include "utaylor/io.hpp"

#include "utaylor/error.hpp"

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace utaylor {

using json = nlohmann::json;

namespace {

// ---- numbers ----

Real real_from(const json& v, const char* what) {
    if (v.is_string()) return Real::parse(v.get<std::string>());
    if (v.is_number()) return Real(v.get<double>());
    throw PreconditionError(std::string("expected a number for ") + what);
}

Complex complex_from(const json& v, const char* what) {
    if (v.is_array()) {
        if (v.size() != 2) throw PreconditionError(std::string("complex value for ") + what + " needs [re, im]");
        return {real_from(v[0], what), real_from(v[1], what)};
    }
    return Complex(real_from(v, what));
}

json to_json(const Real& x) { return x.to_hex(); }
json to_json(const Complex& z) { return json::array({z.re.to_hex(), z.im.to_hex()}); }

json dbl(double x) { return hex_double(x); }

double dbl_from(const json& v) {
    if (v.is_string()) return parse_double(v.get<std::string>());
    if (v.is_number()) return v.get<double>();
    throw PreconditionError("expected a number");
}

// ---- compact sets ----

json shape_to_json(const Shape& s) {
    json j;
    j["type"] = to_string(tag_of(s));
    std::visit(
        [&](const auto& sh) {
            using T = std::decay_t<decltype(sh)>;
            if constexpr (std::is_same_v<T, DiscShape>) {
                j["center"] = to_json(sh.center);
                j["radius"] = to_json(sh.radius);
            } else if constexpr (std::is_same_v<T, RectShape>) {
                j["lo"] = to_json(sh.lo);
                j["hi"] = to_json(sh.hi);
            } else if constexpr (std::is_same_v<T, ArcShape>) {
                j["center"] = to_json(sh.center);
                j["radius"] = to_json(sh.radius);
                j["theta_lo"] = to_json(sh.theta_lo);
                j["theta_hi"] = to_json(sh.theta_hi);
            } else if constexpr (std::is_same_v<T, SegmentShape>) {
                j["a"] = to_json(sh.a);
                j["b"] = to_json(sh.b);
            } else {
                json vs = json::array();
                for (const auto& v : sh.vertices) vs.push_back(to_json(v));
                j["vertices"] = vs;
                j["closed"] = sh.closed;
                j["filled"] = sh.filled;
            }
        },
        s);
    return j;
}

Shape shape_from_json(const json& j) {
    const ShapeTag tag = shape_tag_from_string(j.at("type").get<std::string>());
    switch (tag) {
        case ShapeTag::disc: return DiscShape{complex_from(j.at("center"), "center"), real_from(j.at("radius"), "radius")};
        case ShapeTag::rectangle: return RectShape{complex_from(j.at("lo"), "lo"), complex_from(j.at("hi"), "hi")};
        case ShapeTag::arc:
            return ArcShape{complex_from(j.at("center"), "center"), real_from(j.at("radius"), "radius"),
                            real_from(j.at("theta_lo"), "theta_lo"), real_from(j.at("theta_hi"), "theta_hi")};
        case ShapeTag::segment: return SegmentShape{complex_from(j.at("a"), "a"), complex_from(j.at("b"), "b")};
        case ShapeTag::polyline: {
            PolylineShape p;
            for (const auto& v : j.at("vertices")) p.vertices.push_back(complex_from(v, "vertex"));
            p.closed = j.value("closed", false);
            p.filled = j.value("filled", false);
            return p;
        }
        case ShapeTag::union_: break;
    }
    throw PreconditionError("a shape cannot itself be a union");
}

json set_to_json(const CompactSet& k) {
    json shapes = json::array();
    for (const auto& s : k.shapes()) shapes.push_back(shape_to_json(s));
    return {{"id", k.id()}, {"density", k.density()}, {"shapes", shapes}};
}

CompactSet set_from_json(const json& j, int default_density) {
    std::vector<Shape> shapes;
    if (j.contains("shapes")) {
        for (const auto& s : j.at("shapes")) shapes.push_back(shape_from_json(s));
    } else {
        shapes.push_back(shape_from_json(j));
    }
    return CompactSet::from_shapes(j.value("id", std::string("K")), std::move(shapes),
                                   j.value("density", default_density));
}

// ---- polynomials and weights ----

json poly_to_json(const Poly& p) {
    json c = json::array();
    for (const auto& a : p.coeffs()) c.push_back(to_json(a));
    return c;
}

Poly poly_from_json(const json& j) {
    std::vector<Complex> c;
    for (const auto& a : j) c.push_back(complex_from(a, "coefficient"));
    return Poly(std::move(c));
}

json weight_to_json(const Weight& w) {
    if (w.kind == Weight::Kind::power) {
        return {{"kind", "power"},
                {"zeta", json::array({dbl(w.zeta.real()), dbl(w.zeta.imag())})},
                {"exponent", dbl(w.exponent)}};
    }
    return {{"kind", "strip_poisson"}, {"lambda", dbl(w.lambda)}};
}

Weight weight_from_json(const json& j) {
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "power") {
        cd zeta{1.0, 0.0};
        if (j.contains("zeta")) {
            const auto& z = j.at("zeta");
            zeta = z.is_array() ? cd(dbl_from(z.at(0)), dbl_from(z.at(1))) : cd(dbl_from(z), 0.0);
        }
        return Weight::power_at(zeta, j.contains("exponent") ? dbl_from(j.at("exponent")) : 0.5);
    }
    if (kind == "strip_poisson") return Weight::strip_poisson(j.contains("lambda") ? dbl_from(j.at("lambda")) : 1.0);
    throw PreconditionError("unknown weight kind '" + kind + "'");
}

// ---- schedules ----

json schedule_to_json(const Schedule& s) {
    json steps = json::array();
    for (const auto& st : s.steps) {
        json j = {{"K", set_to_json(st.K)}, {"p", poly_to_json(st.p)}};
        if (st.tau) j["tau"] = to_json(*st.tau);
        steps.push_back(j);
    }
    return {{"domain", to_string(s.domain)},
            {"A", set_to_json(s.A)},
            {"weight", weight_to_json(s.w)},
            {"steps", steps},
            {"max_degree", s.max_degree},
            {"n_max", s.n_max},
            {"fit_density", s.fit_density},
            {"grid_density", s.grid_density},
            {"min_grid_points", s.min_grid_points},
            {"delta_floor", dbl(s.delta_floor)},
            {"complement_grid", s.complement_grid}};
}

void apply_scalars(Schedule& s, const json& j) {
    if (j.contains("max_degree")) s.max_degree = j.at("max_degree").get<long>();
    if (j.contains("n_max")) s.n_max = j.at("n_max").get<long>();
    if (j.contains("fit_density")) s.fit_density = j.at("fit_density").get<int>();
    if (j.contains("grid_density")) s.grid_density = j.at("grid_density").get<int>();
    if (j.contains("min_grid_points")) s.min_grid_points = j.at("min_grid_points").get<std::size_t>();
    if (j.contains("delta_floor")) s.delta_floor = dbl_from(j.at("delta_floor"));
    if (j.contains("complement_grid")) s.complement_grid = j.at("complement_grid").get<int>();
}

std::vector<ScheduleStep> steps_from_json(const json& arr) {
    std::vector<ScheduleStep> out;
    for (const auto& st : arr) {
        ScheduleStep step{set_from_json(st.at("K"), 256), poly_from_json(st.at("p")), std::nullopt};
        if (st.contains("tau")) step.tau = real_from(st.at("tau"), "tau");
        out.push_back(std::move(step));
    }
    return out;
}

Schedule schedule_from_json(const json& j) {
    if (j.contains("preset")) {
        const auto preset = j.at("preset").get<std::string>();
        const json& n = j.contains("steps") ? j.at("steps") : json();
        const int count = n.is_number_integer() ? n.get<int>() : -1;
        Schedule s = preset == "disc"    ? (count > 0 ? Schedule::default_disc(count) : Schedule::default_disc())
                     : preset == "strip" ? (count > 0 ? Schedule::default_strip(count) : Schedule::default_strip())
                                         : throw PreconditionError("unknown preset '" + preset + "'");
        if (j.contains("A")) s.A = set_from_json(j.at("A"), 256);
        if (j.contains("weight")) s.w = weight_from_json(j.at("weight"));
        if (n.is_array()) s.steps = steps_from_json(n);
        apply_scalars(s, j);
        if (j.contains("tau")) {
            for (auto& st : s.steps) st.tau = real_from(j.at("tau"), "tau");
        }
        return s;
    }
    Schedule s(series_domain_from_string(j.at("domain").get<std::string>()), set_from_json(j.at("A"), 256),
               weight_from_json(j.at("weight")));
    s.steps = steps_from_json(j.at("steps"));
    apply_scalars(s, j);
    return s;
}

// ---- series ----

json cert_to_json(const StepCertificate& c) {
    return {{"k", c.k},
            {"n_k", c.n_k},
            {"degree", c.degree},
            {"requested_growth_bound", dbl(c.requested_growth_bound)},
            {"achieved_growth_margin", dbl(c.achieved_growth_margin)},
            {"growth_ratio", dbl(c.growth_ratio)},
            {"growth_points", c.growth_points},
            {"requested_target_err", dbl(c.requested_target_err)},
            {"achieved_target_err", dbl(c.achieved_target_err)},
            {"target_points", c.target_points},
            {"mergelyan_met", c.mergelyan_met},
            {"mergelyan_tol", dbl(c.mergelyan_tol)},
            {"mergelyan_error", dbl(c.mergelyan_error)},
            {"mergelyan_degree", c.mergelyan_degree},
            {"delta", dbl(c.delta)},
            {"delta_nominal", dbl(c.delta_nominal)},
            {"core_requested", dbl(c.core_requested)},
            {"core_achieved", dbl(c.core_achieved)},
            {"core_points", c.core_points},
            {"partial_requested", dbl(c.partial_requested)},
            {"partial_achieved", dbl(c.partial_achieved)},
            {"partial_relaxed", dbl(c.partial_relaxed)},
            {"partial_achieved_mk", dbl(c.partial_achieved_mk)},
            {"relaxation_note", c.relaxation_note}};
}

StepCertificate cert_from_json(const json& j) {
    StepCertificate c;
    c.k = j.at("k").get<int>();
    c.n_k = j.at("n_k").get<long>();
    c.degree = j.at("degree").get<long>();
    c.requested_growth_bound = dbl_from(j.at("requested_growth_bound"));
    c.achieved_growth_margin = dbl_from(j.at("achieved_growth_margin"));
    c.growth_ratio = dbl_from(j.at("growth_ratio"));
    c.growth_points = j.at("growth_points").get<std::size_t>();
    c.requested_target_err = dbl_from(j.at("requested_target_err"));
    c.achieved_target_err = dbl_from(j.at("achieved_target_err"));
    c.target_points = j.at("target_points").get<std::size_t>();
    c.mergelyan_met = j.at("mergelyan_met").get<bool>();
    c.mergelyan_tol = dbl_from(j.at("mergelyan_tol"));
    c.mergelyan_error = dbl_from(j.at("mergelyan_error"));
    c.mergelyan_degree = j.at("mergelyan_degree").get<long>();
    c.delta = dbl_from(j.at("delta"));
    c.delta_nominal = dbl_from(j.at("delta_nominal"));
    c.core_requested = dbl_from(j.at("core_requested"));
    c.core_achieved = dbl_from(j.at("core_achieved"));
    c.core_points = j.at("core_points").get<std::size_t>();
    c.partial_requested = dbl_from(j.at("partial_requested"));
    c.partial_achieved = dbl_from(j.at("partial_achieved"));
    c.partial_relaxed = dbl_from(j.at("partial_relaxed"));
    c.partial_achieved_mk = dbl_from(j.at("partial_achieved_mk"));
    c.relaxation_note = j.at("relaxation_note").get<std::string>();
    return c;
}

}  // namespace

std::uint64_t fnv1a(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hash_hex(std::uint64_t h) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string hex_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%a", x);
    return buf;
}

double parse_double(const std::string& s) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0') throw PreconditionError("malformed number '" + s + "'");
    return v;
}

Schedule parse_schedule(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ScheduleError(std::string("schedule is not valid JSON: ") + e.what());
    }
    try {
        return schedule_from_json(j);
    } catch (const json::exception& e) {
        throw ScheduleError(std::string("malformed schedule: ") + e.what());
    } catch (const PreconditionError& e) {
        throw ScheduleError(std::string("malformed schedule: ") + e.what());
    }
}

Schedule load_schedule(const std::string& path) { return parse_schedule(read_file(path)); }

std::string schedule_to_text(const Schedule& s) { return schedule_to_json(s).dump(1); }

std::string schedule_hash(const Schedule& s) { return hash_hex(fnv1a(schedule_to_json(s).dump())); }

std::string artifact_to_text(const SeriesArtifact& a) {
    const auto& f = a.series;
    json blocks = json::array();
    for (std::size_t i = 0; i < f.blocks.size(); ++i) {
        const auto& b = f.blocks[i];
        blocks.push_back({{"k", i + 1}, {"n", b.n}, {"shift", b.shift}, {"qstar", poly_to_json(b.qstar)}});
    }
    json certs = json::array();
    for (const auto& c : f.certificates) certs.push_back(cert_to_json(c));
    json doc = {{"format_version", kSeriesFormatVersion},
                {"config", a.config_text.empty() ? json::object() : json::parse(a.config_text)},
                {"config_hash", a.config_hash},
                {"seed", a.seed},
                {"schedule", a.schedule_text.empty() ? json() : json::parse(a.schedule_text)},
                {"series",
                 {{"domain", to_string(f.domain)},
                  {"mode", to_string(f.mode)},
                  {"precision", f.precision},
                  {"schedule_hash", f.schedule_hash},
                  {"blocks", blocks},
                  {"certificates", certs}}}};
    return std::string(kSeriesMagic) + " v" + std::to_string(kSeriesFormatVersion) + "\n" + doc.dump(1) + "\n";
}

SeriesArtifact artifact_from_text(const std::string& text) {
    const auto nl = text.find('\n');
    const std::string head = text.substr(0, nl);
    const std::string want = std::string(kSeriesMagic) + " v";
    if (head.rfind(want, 0) != 0) throw IoError("not a series artifact (bad magic line)");
    if (head.substr(want.size()) != std::to_string(kSeriesFormatVersion))
        throw IoError("unsupported artifact version '" + head.substr(want.size()) + "'");
    if (nl == std::string::npos) throw IoError("artifact has no payload");
    try {
        const json doc = json::parse(text.substr(nl + 1));
        if (doc.at("format_version").get<int>() != kSeriesFormatVersion) throw IoError("format version mismatch");
        SeriesArtifact a;
        a.config_text = doc.at("config").dump();
        a.config_hash = doc.at("config_hash").get<std::string>();
        a.seed = doc.at("seed").get<std::uint64_t>();
        if (!doc.at("schedule").is_null()) a.schedule_text = doc.at("schedule").dump();
        const json& s = doc.at("series");
        auto& f = a.series;
        f.domain = series_domain_from_string(s.at("domain").get<std::string>());
        f.mode = build_mode_from_string(s.at("mode").get<std::string>());
        f.precision = s.at("precision").get<long>();
        f.schedule_hash = s.at("schedule_hash").get<std::string>();
        PrecisionScope scope(std::max(working_precision(), f.precision));
        for (const auto& b : s.at("blocks")) {
            f.blocks.push_back({b.at("n").get<long>(), b.at("shift").get<long>(), poly_from_json(b.at("qstar"))});
        }
        for (const auto& c : s.at("certificates")) f.certificates.push_back(cert_from_json(c));
        return a;
    } catch (const json::exception& e) {
        throw IoError(std::string("corrupt artifact: ") + e.what());
    } catch (const PreconditionError& e) {
        throw IoError(std::string("corrupt artifact: ") + e.what());
    }
}

void save_artifact(const SeriesArtifact& a, const std::string& path) { write_file(path, artifact_to_text(a)); }

SeriesArtifact load_artifact(const std::string& path) { return artifact_from_text(read_file(path)); }

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write '" + path + "'");
    out << content;
    if (!out) throw IoError("write failed for '" + path + "'");
}

}  // namespace utaylor
