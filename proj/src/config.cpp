#include "kerrdiff/config.hpp"

#include <fstream>
#include <numbers>
#include <set>

#include "json.hpp"

namespace kerrdiff {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw ConfigError("config error at " + where + ": " + what);
}

void require_keys(const json& obj, const std::string& where,
                  const std::set<std::string>& allowed) {
    for (const auto& [key, _] : obj.items())
        if (!allowed.contains(key))
            fail(where + "/" + key, "unknown key");
}

double get_number(const json& obj, const std::string& where,
                  const std::string& key) {
    if (!obj.contains(key)) fail(where + "/" + key, "missing required field");
    if (!obj[key].is_number()) fail(where + "/" + key, "expected a number");
    return obj[key].get<double>();
}

int get_int(const json& obj, const std::string& where,
            const std::string& key) {
    if (!obj.contains(key)) fail(where + "/" + key, "missing required field");
    if (!obj[key].is_number_integer())
        fail(where + "/" + key, "expected an integer");
    return obj[key].get<int>();
}

Cplx get_complex(const json& v, const std::string& where) {
    if (v.is_number()) return Cplx(v.get<double>(), 0.0);
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
        return Cplx(v[0].get<double>(), v[1].get<double>());
    fail(where, "expected a number or an [re, im] pair");
}

PermittivityProfile parse_profile(const json& p, double d) {
    require_keys(p, "/profile",
                 {"kind", "epsilon", "terms", "values"});
    if (!p.contains("kind")) fail("/profile/kind", "missing required field");
    const std::string kind = p["kind"].get<std::string>();
    if (kind == "constant") {
        if (!p.contains("epsilon"))
            fail("/profile/epsilon", "missing required field");
        return PermittivityProfile::constant(
            get_complex(p["epsilon"], "/profile/epsilon"), d);
    }
    if (kind == "trig") {
        if (!p.contains("terms") || !p["terms"].is_array())
            fail("/profile/terms", "missing term list");
        std::vector<PermittivityProfile::TrigTerm> terms;
        for (const auto& t : p["terms"]) {
            require_keys(t, "/profile/terms[]", {"coeff", "freq"});
            terms.push_back(
                {get_complex(t.at("coeff"), "/profile/terms[]/coeff"),
                 get_number(t, "/profile/terms[]", "freq")});
        }
        return PermittivityProfile::trig(std::move(terms), d);
    }
    if (kind == "sampled") {
        if (!p.contains("values") || !p["values"].is_array())
            fail("/profile/values", "missing sample list");
        std::vector<Cplx> values;
        for (const auto& v : p["values"])
            values.push_back(get_complex(v, "/profile/values[]"));
        return PermittivityProfile::sampled(std::move(values), d);
    }
    fail("/profile/kind", "unknown profile kind '" + kind + "'");
}

}  // namespace

namespace {

RunConfig parse_validated(const json& j);

}  // namespace

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        // nlohmann reports the byte offset; recover the line number.
        std::ifstream again(path);
        std::string text((std::istreambuf_iterator<char>(again)),
                         std::istreambuf_iterator<char>());
        std::size_t line = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i)
            if (text[i] == '\n') ++line;
        throw ConfigError(path + ":" + std::to_string(line) + ": " +
                          e.what());
    }
    try {
        return parse_validated(j);
    } catch (const json::exception& e) {
        // wrong value types and similar structural slips
        throw ConfigError("config error in " + path + ": " + e.what());
    }
}

namespace {

RunConfig parse_validated(const json& j) {

    require_keys(j, "", {"schema", "problem", "profile", "grid_n", "scheme",
                         "tol", "max_iters", "kernel_convention", "sweep",
                         "outputs"});
    if (!j.contains("schema") || j["schema"] != "kerrdiff-config/1")
        fail("/schema", "expected \"kerrdiff-config/1\"");
    if (!j.contains("problem")) fail("/problem", "missing required field");
    if (!j.contains("profile")) fail("/profile", "missing required field");

    const json& pr = j["problem"];
    require_keys(pr, "/problem", {"kappa", "phi_angle", "delta",
                                  "half_thickness", "alpha", "a_inc"});
    const double kappa = get_number(pr, "/problem", "kappa");
    const double phi = pr.contains("phi_angle")
                           ? get_number(pr, "/problem", "phi_angle")
                           : 0.0;
    double delta = 0.0;
    if (pr.contains("delta") && pr.contains("half_thickness"))
        fail("/problem", "give either delta or half_thickness, not both");
    if (pr.contains("delta")) {
        delta = get_number(pr, "/problem", "delta");
    } else if (pr.contains("half_thickness")) {
        delta = get_number(pr, "/problem", "half_thickness") /
                (2.0 * std::numbers::pi);
    } else {
        fail("/problem", "missing delta (or half_thickness)");
    }
    const double alpha =
        pr.contains("alpha") ? get_number(pr, "/problem", "alpha") : 0.0;
    const Cplx a_inc = pr.contains("a_inc")
                           ? get_complex(pr["a_inc"], "/problem/a_inc")
                           : Cplx(1.0, 0.0);

    RunConfig cfg;
    try {
        cfg.problem = make_params(kappa, phi, delta, alpha, a_inc);
    } catch (const std::domain_error& e) {
        fail("/problem", e.what());
    }
    cfg.profile = parse_profile(j["profile"], cfg.problem.d);

    if (j.contains("grid_n")) {
        cfg.grid_n = get_int(j, "", "grid_n");
        if (cfg.grid_n < 3 || cfg.grid_n % 2 == 0)
            fail("/grid_n", "must be odd and >= 3");
    }
    if (j.contains("scheme")) {
        const std::string s = j["scheme"].get<std::string>();
        if (s == "picard")
            cfg.scheme = IterScheme::Picard;
        else if (s == "coupled")
            cfg.scheme = IterScheme::Coupled;
        else
            fail("/scheme", "expected \"picard\" or \"coupled\"");
    }
    if (j.contains("tol")) {
        cfg.tol = get_number(j, "", "tol");
        if (!(cfg.tol > 0.0)) fail("/tol", "must be > 0");
    }
    if (j.contains("max_iters")) {
        cfg.max_iters = get_int(j, "", "max_iters");
        if (cfg.max_iters < 1) fail("/max_iters", "must be >= 1");
    }
    if (j.contains("kernel_convention")) {
        const int m = get_int(j, "", "kernel_convention");
        if (m != 1 && m != 2) fail("/kernel_convention", "must be 1 or 2");
        cfg.kernel_convention = m;
    }
    if (j.contains("sweep")) {
        const json& sw = j["sweep"];
        require_keys(sw, "/sweep", {"parameter", "start", "stop", "count"});
        SweepSpec spec;
        const std::string p = sw.at("parameter").get<std::string>();
        if (p == "kappa")
            spec.parameter = SweepParameter::Kappa;
        else if (p == "alpha")
            spec.parameter = SweepParameter::Alpha;
        else if (p == "phi_angle")
            spec.parameter = SweepParameter::PhiAngle;
        else if (p == "a_inc")
            spec.parameter = SweepParameter::AInc;
        else
            fail("/sweep/parameter",
                 "expected kappa, alpha, phi_angle or a_inc");
        spec.start = get_number(sw, "/sweep", "start");
        spec.stop = get_number(sw, "/sweep", "stop");
        spec.count = get_int(sw, "/sweep", "count");
        if (spec.count < 2) fail("/sweep/count", "must be >= 2");
        if (spec.start == spec.stop)
            fail("/sweep", "start and stop must differ");
        cfg.sweep = spec;
    }
    if (j.contains("outputs")) {
        if (!j["outputs"].is_array()) fail("/outputs", "expected a list");
        cfg.outputs = OutputSelection{false, false, false, false, false};
        for (const auto& o : j["outputs"]) {
            const std::string s = o.get<std::string>();
            if (s == "amplitudes")
                cfg.outputs.amplitudes = true;
            else if (s == "flux")
                cfg.outputs.flux = true;
            else if (s == "field_profile")
                cfg.outputs.field_profile = true;
            else if (s == "trace")
                cfg.outputs.trace = true;
            else if (s == "contraction_report")
                cfg.outputs.contraction_report = true;
            else
                fail("/outputs", "unknown output '" + s + "'");
        }
    }
    return cfg;
}

}  // namespace

}  // namespace kerrdiff
