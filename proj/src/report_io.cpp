#include "bohr/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "bohr/errors.hpp"

namespace bohr {

using nlohmann::json;

std::string format12(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%#.12g", x); // keep trailing zeros
    return buf;
}

double round12(double x) {
    if (!std::isfinite(x)) return x;
    return std::strtod(format12(x).c_str(), nullptr);
}

namespace {

json query_json(const RadiusQuery& query) {
    json j;
    j["family"] = family_name(query);
    struct V {
        json& j;
        void operator()(const XiQuery& q) const {
            j["p"] = q.p;
            j["mu"] = q.mu;
            j["nu"] = q.nu;
            j["q"] = q.q;
            j["m"] = q.m;
            if (q.m1_inf)
                j["m1"] = "inf";
            else
                j["m1"] = q.m1;
            j["m2"] = q.m2;
        }
        void operator()(const R2Query& q) const {
            j["p"] = q.p;
            j["m1"] = q.m1;
        }
        void operator()(const R3Query& q) const { j["p"] = q.p; }
        void operator()(const RBRQuery& q) const {
            j["p"] = q.p;
            j["m1"] = q.m1;
            j["N"] = q.N;
        }
        void operator()(const RNQuery& q) const { j["N"] = q.N; }
        void operator()(const RNPrimeQuery& q) const { j["N"] = q.N; }
        void operator()(const RPkmQuery& q) const {
            j["p"] = q.p;
            j["k"] = q.k;
            j["m"] = q.m;
        }
        void operator()(const PsiEQuery& q) const {
            j["p"] = q.p;
            j["q"] = q.q;
            j["m"] = q.m;
            j["lambda"] = q.lambda;
        }
    };
    std::visit(V{j}, query);
    return j;
}

} // namespace

std::string radius_record_json(const RadiusQuery& query, const RootRecord& rec) {
    json j;
    j["query"] = query_json(query);
    j["root"] = round12(rec.root);
    j["bracket"] = {round12(rec.bracket_lo), round12(rec.bracket_hi)};
    j["residual_at_root"] = round12(rec.residual);
    j["tol"] = rec.tol;
    j["closed_form"] = rec.closed_form;
    j["second_sign_change"] = rec.second_sign_change;
    return j.dump();
}

std::string radius_record_csv(const RadiusQuery& query, const RootRecord& rec) {
    std::ostringstream os;
    os << csv_banner << "\n";
    os << "family,root,bracket_lo,bracket_hi,residual_at_root,tol,second_sign_change\n";
    os << family_name(query) << "," << format12(rec.root) << "," << format12(rec.bracket_lo)
       << "," << format12(rec.bracket_hi) << "," << format12(rec.residual) << ","
       << format12(rec.tol) << "," << (rec.second_sign_change ? 1 : 0) << "\n";
    return os.str();
}

std::string radius_record_text(const RadiusQuery& query, const RootRecord& rec) {
    std::ostringstream os;
    os << "family " << family_name(query) << "\n"
       << "root " << format12(rec.root) << "\n"
       << "bracket [" << format12(rec.bracket_lo) << ", " << format12(rec.bracket_hi) << "]\n"
       << "residual " << format12(rec.residual) << "\n"
       << "second_sign_change " << (rec.second_sign_change ? "yes" : "no") << "\n";
    return os.str();
}

std::string verification_rows_csv(const VerificationOutcome& outcome) {
    std::ostringstream os;
    os << csv_banner << "\n";
    os << "map,check,direction,b,r,phase,lhs,tail,margin,pass";
    // Term columns follow the first row's layout; every row of a plan shares it.
    if (!outcome.rows.empty())
        for (const auto& [name, value] : outcome.rows.front().report.terms) os << "," << name;
    os << "\n";
    for (const auto& row : outcome.rows) {
        os << row.map_label << "," << row.check << "," << row.direction << ","
           << format12(row.b) << "," << format12(row.r) << "," << row.phase << ","
           << format12(row.report.lhs) << "," << format12(row.report.tail) << ","
           << format12(row.report.margin) << "," << (row.pass ? 1 : 0);
        for (const auto& [name, value] : row.report.terms) os << "," << format12(value);
        os << "\n";
    }
    return os.str();
}

std::string verification_summary_json(const VerificationOutcome& outcome) {
    json j;
    j["theorem"] = plan_name(outcome.kind);
    if (std::isnan(outcome.radius))
        j["radius"] = nullptr;
    else
        j["radius"] = round12(outcome.radius);
    j["pass"] = outcome.pass;
    j["rows"] = outcome.rows.size();
    j["worst_margin"] = round12(outcome.worst_margin);
    if (outcome.counterexample) {
        const auto& c = *outcome.counterexample;
        j["witness"] = {{"map", c.map_label}, {"check", c.check},   {"direction", c.direction},
                        {"b", round12(c.b)},  {"r", round12(c.r)},  {"phase", c.phase},
                        {"lhs", round12(c.report.lhs)},             {"tail", round12(c.report.tail)},
                        {"margin", round12(c.report.margin)}};
    }
    return j.dump();
}

std::string witness_json(const SharpnessWitness& w) {
    json j;
    j["theorem"] = plan_name(w.kind);
    j["radius"] = round12(w.radius);
    j["delta"] = round12(w.delta);
    j["b"] = round12(w.b);
    j["r"] = round12(w.r);
    j["lhs"] = round12(w.lhs);
    j["tail"] = round12(w.tail);
    j["margin"] = round12(w.margin);
    return j.dump();
}

std::string witness_csv(const SharpnessWitness& w) {
    std::ostringstream os;
    os << csv_banner << "\n";
    os << "theorem,radius,delta,b,r,lhs,tail,excess\n";
    os << plan_name(w.kind) << "," << format12(w.radius) << "," << format12(w.delta) << ","
       << format12(w.b) << "," << format12(w.r) << "," << format12(w.lhs) << ","
       << format12(w.tail) << "," << format12(w.margin) << "\n";
    return os.str();
}

std::string witness_text(const SharpnessWitness& w) {
    std::ostringstream os;
    os << "theorem " << plan_name(w.kind) << "\n"
       << "radius " << format12(w.radius) << "  delta " << format12(w.delta) << "\n"
       << "witness b " << format12(w.b) << "  r " << format12(w.r) << "\n"
       << "lhs " << format12(w.lhs) << "  tail " << format12(w.tail) << "  excess "
       << format12(w.margin) << "\n";
    return os.str();
}

std::string slice_csv(const SliceCoefficients& c) {
    std::ostringstream os;
    os << csv_banner << "\n";
    os << "s,c_s\n";
    for (int s = 0; s <= c.S_max; ++s) os << s << "," << format12(c.at(s)) << "\n";
    return os.str();
}

std::string slice_json(const SliceCoefficients& c) {
    json j;
    j["S_max"] = c.S_max;
    j["constant_term_exact"] = c.constant_term_exact;
    j["aliasing_bound"] = round12(c.aliasing_bound);
    json arr = json::array();
    for (int s = 0; s <= c.S_max; ++s) arr.push_back(round12(c.at(s)));
    j["c"] = arr;
    return j.dump();
}

std::string report_csv(const FunctionalReport& rep) {
    std::ostringstream os;
    os << csv_banner << "\n";
    os << "r,lhs";
    for (const auto& [name, value] : rep.terms) os << "," << name;
    os << ",tail,margin\n";
    os << format12(rep.r) << "," << format12(rep.lhs);
    for (const auto& [name, value] : rep.terms) os << "," << format12(value);
    os << "," << format12(rep.tail) << "," << format12(rep.margin) << "\n";
    return os.str();
}

std::string report_json(const FunctionalReport& rep) {
    json j;
    j["r"] = round12(rep.r);
    j["lhs"] = round12(rep.lhs);
    j["tail"] = round12(rep.tail);
    j["margin"] = round12(rep.margin);
    json terms = json::object();
    for (const auto& [name, value] : rep.terms) terms[name] = round12(value);
    j["terms"] = terms;
    return j.dump();
}

void write_file_atomic(const std::string& path, const std::string& content) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp + " for writing");
        out << content;
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("cannot rename " + tmp + " to " + path);
}

} // namespace bohr
