#include "bohr/maps.hpp"

#include <cmath>
#include <sstream>

#include <json.hpp>

#include "bohr/errors.hpp"

namespace bohr {

namespace {

complexd ipow(complexd base, int e) {
    complexd acc{1.0, 0.0};
    for (int i = 0; i < e; ++i) acc *= base;
    return acc;
}

void check_polydisc(cspan value, const char* where) {
    for (const auto& v : value) {
        if (std::abs(v) > 1.0 + self_map_tolerance)
            throw invalid_map_error(std::string(where) +
                                    ": value leaves the closed polydisc, |f_j| = " +
                                    std::to_string(std::abs(v)));
    }
}

cvec eval_unchecked(const MapDescriptor& map, cspan z);

struct EvalVisitor {
    const MapDescriptor& map;
    cspan z;

    cvec operator()(const MobiusCoord& mk) const {
        cvec out(static_cast<std::size_t>(map.n), complexd{0.0, 0.0});
        complexd w = z[static_cast<std::size_t>(mk.coord - 1)];
        out[0] = (mk.b + w) / (1.0 + mk.b * w);
        return out;
    }

    cvec operator()(const Polynomial& pk) const {
        cvec out(static_cast<std::size_t>(map.n), complexd{0.0, 0.0});
        for (const auto& term : pk.terms) {
            complexd mono{1.0, 0.0};
            for (std::size_t j = 0; j < term.alpha.size(); ++j) mono *= ipow(z[j], term.alpha[j]);
            for (std::size_t j = 0; j < out.size(); ++j) out[j] += term.coef[j] * mono;
        }
        return out;
    }

    cvec operator()(const Lacunary& lk) const {
        cvec out(static_cast<std::size_t>(map.n), complexd{0.0, 0.0});
        complexd w = z[static_cast<std::size_t>(lk.coord - 1)];
        complexd acc = lk.a0;
        complexd wq = ipow(w, lk.q);
        complexd cur = ipow(w, lk.q + lk.m); // power q*1 + m
        for (const auto& g : lk.coefs) {
            acc += g * cur;
            cur *= wq;
        }
        out[static_cast<std::size_t>(lk.coord - 1)] = acc;
        return out;
    }

    cvec operator()(const Rotated& rk) const {
        cvec rotated(z.begin(), z.end());
        for (std::size_t j = 0; j < rotated.size() && j < rk.phases.size(); ++j)
            rotated[j] *= std::polar(1.0, rk.phases[j]);
        return eval_unchecked(*rk.inner, rotated);
    }

    cvec operator()(const Composed& ck) const {
        cvec mid = schwarz_eval(ck.inner, z);
        return eval_unchecked(*ck.outer, mid);
    }
};

cvec eval_unchecked(const MapDescriptor& map, cspan z) {
    if (static_cast<int>(z.size()) != map.n)
        throw precondition_error("map_eval: point dimension does not match the descriptor");
    return std::visit(EvalVisitor{map, z}, map.kind);
}

} // namespace

cvec schwarz_eval(const SchwarzMapSpec& spec, cspan z) {
    if (spec.k < 1) throw precondition_error("schwarz_eval: order k must be >= 1");
    if (lt_norm(z, spec.t) >= 1.0)
        throw precondition_error("schwarz_eval: point must lie in the open unit ball");
    SupportFunctional T(spec.z0, spec.t);
    complexd factor = spec.eta * ipow(T(z), spec.k - 1);
    cvec out(z.begin(), z.end());
    for (auto& v : out) v *= factor;
    return out;
}

cvec map_eval(const MapDescriptor& map, cspan z) {
    if (lt_norm(z, map.t) >= 1.0)
        throw precondition_error("map_eval: point must lie in the open unit ball");
    cvec value = eval_unchecked(map, z);
    check_polydisc(value, "map_eval");
    return value;
}

double map_sup_at(const MapDescriptor& map, cspan z) {
    return lt_norm(map_eval(map, z), t_infinity);
}

MapDescriptor mobius_map(int n, double t, double b, int coord) {
    if (b < 0.0 || b >= 1.0) throw precondition_error("mobius_map: b must lie in [0,1)");
    if (coord < 1 || coord > n) throw precondition_error("mobius_map: coordinate out of range");
    return {n, t, MobiusCoord{b, coord}};
}

MapDescriptor identity_map(int n, double t) {
    Polynomial p;
    for (int j = 0; j < n; ++j) {
        PolyTerm term;
        term.alpha.assign(static_cast<std::size_t>(n), 0);
        term.alpha[static_cast<std::size_t>(j)] = 1;
        term.coef.assign(static_cast<std::size_t>(n), complexd{0.0, 0.0});
        term.coef[static_cast<std::size_t>(j)] = complexd{1.0, 0.0};
        p.terms.push_back(std::move(term));
    }
    return {n, t, std::move(p)};
}

MapDescriptor constant_map(double t, cvec value) {
    int n = static_cast<int>(value.size());
    PolyTerm term;
    term.alpha.assign(static_cast<std::size_t>(n), 0);
    term.coef = std::move(value);
    return {n, t, Polynomial{{std::move(term)}}};
}

MapDescriptor lacunary_map(int n, double t, int q, int m, complexd a0, cvec coefs, int coord) {
    if (q < 1 || m < 0) throw precondition_error("lacunary_map: need q >= 1 and m >= 0");
    if (coord < 1 || coord > n) throw precondition_error("lacunary_map: coordinate out of range");
    return {n, t, Lacunary{q, m, coord, a0, std::move(coefs)}};
}

MapDescriptor rotated_map(std::vector<double> phases, MapDescriptor inner) {
    int n = inner.n;
    double t = inner.t;
    return {n, t, Rotated{std::move(phases), std::make_shared<MapDescriptor>(std::move(inner))}};
}

MapDescriptor composed_map(MapDescriptor outer, SchwarzMapSpec inner) {
    int n = outer.n;
    double t = outer.t;
    return {n, t, Composed{std::make_shared<MapDescriptor>(std::move(outer)), std::move(inner)}};
}

// ---------------------------------------------------------------------------
// JSON serialization
// ---------------------------------------------------------------------------

namespace {

using nlohmann::json;

json complex_to_json(complexd v) { return json::array({v.real(), v.imag()}); }

complexd complex_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2)
        throw precondition_error("json: complex numbers must be [re, im] pairs");
    return {j[0].get<double>(), j[1].get<double>()};
}

json cvec_to_json(cspan v) {
    json arr = json::array();
    for (const auto& x : v) arr.push_back(complex_to_json(x));
    return arr;
}

cvec cvec_from_json(const json& j) {
    cvec out;
    for (const auto& x : j) out.push_back(complex_from_json(x));
    return out;
}

json exponent_to_json(double t) {
    if (std::isinf(t)) return json("inf");
    return json(t);
}

double exponent_from_json(const json& j) {
    if (j.is_string()) {
        if (j.get<std::string>() == "inf") return t_infinity;
        throw precondition_error("json: exponent t must be a number or \"inf\"");
    }
    return j.get<double>();
}

json schwarz_to_json_obj(const SchwarzMapSpec& s) {
    json j;
    j["k"] = s.k;
    j["z0"] = cvec_to_json(s.z0);
    j["t"] = exponent_to_json(s.t);
    if (s.eta != complexd{1.0, 0.0}) j["eta"] = complex_to_json(s.eta);
    return j;
}

SchwarzMapSpec schwarz_from_json_obj(const json& j) {
    SchwarzMapSpec s;
    s.k = j.at("k").get<int>();
    s.z0 = cvec_from_json(j.at("z0"));
    s.t = exponent_from_json(j.at("t"));
    if (j.contains("eta")) s.eta = complex_from_json(j.at("eta"));
    return s;
}

json map_to_json_obj(const MapDescriptor& m);

struct KindToJson {
    json operator()(const MobiusCoord& k) const {
        return json{{"mobius", {{"b", k.b}, {"coord", k.coord}}}};
    }
    json operator()(const Polynomial& k) const {
        json terms = json::array();
        for (const auto& t : k.terms)
            terms.push_back(json{{"alpha", t.alpha}, {"coef", cvec_to_json(t.coef)}});
        return json{{"polynomial", {{"terms", terms}}}};
    }
    json operator()(const Lacunary& k) const {
        return json{{"lacunary",
                     {{"q", k.q},
                      {"m", k.m},
                      {"coord", k.coord},
                      {"a0", complex_to_json(k.a0)},
                      {"coefs", cvec_to_json(k.coefs)}}}};
    }
    json operator()(const Rotated& k) const {
        return json{{"rotated", {{"phases", k.phases}, {"inner", map_to_json_obj(*k.inner)}}}};
    }
    json operator()(const Composed& k) const {
        return json{{"composed",
                     {{"outer", map_to_json_obj(*k.outer)}, {"inner", schwarz_to_json_obj(k.inner)}}}};
    }
};

json map_to_json_obj(const MapDescriptor& m) {
    json j;
    j["n"] = m.n;
    j["t"] = exponent_to_json(m.t);
    j["kind"] = std::visit(KindToJson{}, m.kind);
    return j;
}

MapDescriptor map_from_json_obj(const json& j) {
    MapDescriptor m;
    m.n = j.at("n").get<int>();
    m.t = exponent_from_json(j.at("t"));
    const json& kind = j.at("kind");
    if (kind.contains("mobius")) {
        const json& k = kind["mobius"];
        m.kind = MobiusCoord{k.at("b").get<double>(), k.at("coord").get<int>()};
    } else if (kind.contains("polynomial")) {
        Polynomial p;
        for (const auto& t : kind["polynomial"].at("terms"))
            p.terms.push_back(PolyTerm{t.at("alpha").get<std::vector<int>>(), cvec_from_json(t.at("coef"))});
        m.kind = std::move(p);
    } else if (kind.contains("lacunary")) {
        const json& k = kind["lacunary"];
        m.kind = Lacunary{k.at("q").get<int>(), k.at("m").get<int>(), k.at("coord").get<int>(),
                          complex_from_json(k.at("a0")), cvec_from_json(k.at("coefs"))};
    } else if (kind.contains("rotated")) {
        const json& k = kind["rotated"];
        m.kind = Rotated{k.at("phases").get<std::vector<double>>(),
                         std::make_shared<MapDescriptor>(map_from_json_obj(k.at("inner")))};
    } else if (kind.contains("composed")) {
        const json& k = kind["composed"];
        m.kind = Composed{std::make_shared<MapDescriptor>(map_from_json_obj(k.at("outer"))),
                          schwarz_from_json_obj(k.at("inner"))};
    } else {
        throw precondition_error("json: unknown map kind");
    }
    return m;
}

} // namespace

std::string to_json(const MapDescriptor& map) { return map_to_json_obj(map).dump(); }

MapDescriptor map_from_json(const std::string& text) {
    return map_from_json_obj(json::parse(text));
}

std::string to_json(const SchwarzMapSpec& spec) { return schwarz_to_json_obj(spec).dump(); }

SchwarzMapSpec schwarz_from_json(const std::string& text) {
    return schwarz_from_json_obj(json::parse(text));
}

bool operator==(const SchwarzMapSpec& a, const SchwarzMapSpec& b) {
    return a.k == b.k && a.z0 == b.z0 && a.t == b.t && a.eta == b.eta;
}

bool operator==(const MapDescriptor& a, const MapDescriptor& b) {
    if (a.n != b.n || a.t != b.t || a.kind.index() != b.kind.index()) return false;
    struct Eq {
        const MapDescriptor& o;
        bool operator()(const MobiusCoord& k) const {
            const auto& ok = std::get<MobiusCoord>(o.kind);
            return k.b == ok.b && k.coord == ok.coord;
        }
        bool operator()(const Polynomial& k) const {
            const auto& ok = std::get<Polynomial>(o.kind);
            if (k.terms.size() != ok.terms.size()) return false;
            for (std::size_t i = 0; i < k.terms.size(); ++i)
                if (k.terms[i].alpha != ok.terms[i].alpha || k.terms[i].coef != ok.terms[i].coef)
                    return false;
            return true;
        }
        bool operator()(const Lacunary& k) const {
            const auto& ok = std::get<Lacunary>(o.kind);
            return k.q == ok.q && k.m == ok.m && k.coord == ok.coord && k.a0 == ok.a0 &&
                   k.coefs == ok.coefs;
        }
        bool operator()(const Rotated& k) const {
            const auto& ok = std::get<Rotated>(o.kind);
            return k.phases == ok.phases && *k.inner == *ok.inner;
        }
        bool operator()(const Composed& k) const {
            const auto& ok = std::get<Composed>(o.kind);
            return *k.outer == *ok.outer && k.inner == ok.inner;
        }
    };
    return std::visit(Eq{b}, a.kind);
}

} // namespace bohr
