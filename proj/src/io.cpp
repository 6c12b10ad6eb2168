#include "gmra/io.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <utility>

namespace gmra::io {

using nlohmann::json;

namespace {

void reject_unknown_keys(const json& j, const std::string& ptr, std::initializer_list<const char*> known) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* k : known)
            if (it.key() == k) ok = true;
        if (!ok) throw ParseError(ptr + "/" + it.key(), "unknown field");
    }
}

json parse_root(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError("", e.what());
    }
}

Rational rational_at(const json& j, const std::string& ptr) {
    if (!j.is_string()) throw ParseError(ptr, "expected a rational string \"p/q\"");
    try {
        return parse_rational(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
        throw ParseError(ptr, e.what());
    }
}

long integer_at(const json& j, const std::string& ptr) {
    if (!j.is_number_integer()) throw ParseError(ptr, "expected an integer");
    return j.get<long>();
}

std::complex<double> complex_at(const json& j, const std::string& ptr) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return {j[0].get<double>(), j[1].get<double>()};
    throw ParseError(ptr, "expected a number or an [re, im] pair");
}

json complex_json(const std::complex<double>& v) { return json::array({v.real(), v.imag()}); }

template <class T, class ParseValue>
Step<T> step_from_pieces(const json& pieces, const std::string& ptr, const T& zero, ParseValue parse_value) {
    if (!pieces.is_array()) throw ParseError(ptr, "expected an array of pieces");
    struct Raw {
        Rational lo;
        Rational hi;
        T value;
    };
    std::vector<Raw> raws;
    raws.reserve(pieces.size());
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        std::string pptr = ptr + "/" + std::to_string(i);
        const json& p = pieces[i];
        if (!p.is_object()) throw ParseError(pptr, "expected an object");
        reject_unknown_keys(p, pptr, {"lo", "hi", "value"});
        if (!p.contains("lo") || !p.contains("hi") || !p.contains("value"))
            throw ParseError(pptr, "piece needs lo, hi and value");
        Raw raw{rational_at(p["lo"], pptr + "/lo"), rational_at(p["hi"], pptr + "/hi"),
                parse_value(p["value"], pptr + "/value")};
        if (raw.lo < rat(-1, 2)) throw ParseError(pptr + "/lo", "below -1/2");
        if (raw.hi > rat(1, 2)) throw ParseError(pptr + "/hi", "above 1/2");
        if (!(raw.lo < raw.hi)) throw ParseError(pptr, "piece is empty or reversed");
        if (!raws.empty() && raw.lo < raws.back().hi) throw ParseError(pptr, "pieces overlap or are unsorted");
        raws.push_back(std::move(raw));
    }
    std::vector<Rational> bps;
    bps.push_back(rat(-1, 2));
    for (const Raw& r : raws) {
        bps.push_back(r.lo);
        if (r.hi < rat(1, 2)) bps.push_back(r.hi);
    }
    Partition part(std::move(bps));
    std::vector<T> vals;
    vals.reserve(part.cells());
    for (std::size_t i = 0; i < part.cells(); ++i) {
        Rational mid = part.midpoint(i);
        T v = zero;
        for (const Raw& r : raws)
            if (mid >= r.lo && mid < r.hi) {
                v = r.value;
                break;
            }
        vals.push_back(v);
    }
    return {std::move(part), std::move(vals)};
}

// Normalizes the wrap cell so every dumped piece lies inside [-1/2, 1/2).
// Parsing treats gaps as zero, so zero cells may be skipped without losing information.
template <class T, class DumpValue>
json step_to_pieces(const Step<T>& s, DumpValue dump_value, bool skip_zeros = false) {
    Step<T> anchored = s.refined_to(refine(s.partition(), Partition::whole()));
    const Partition& p = anchored.partition();
    json pieces = json::array();
    for (std::size_t i = 0; i < p.cells(); ++i) {
        if (skip_zeros && anchored.value(i) == T{}) continue;
        json piece;
        piece["lo"] = to_string(p.lo(i));
        piece["hi"] = to_string(p.hi(i));
        piece["value"] = dump_value(anchored.value(i));
        pieces.push_back(std::move(piece));
    }
    return pieces;
}

long long_value_at(const json& j, const std::string& ptr) { return integer_at(j, ptr); }

} // namespace

std::string dump_multiplicity(const MultiplicityFunction& m) {
    json j;
    j["N"] = m.modulus();
    j["c"] = m.bound();
    j["pieces"] = step_to_pieces(m.values(), [](long v) { return json(v); });
    return j.dump(2) + "\n";
}

MultiplicityFunction parse_multiplicity(const std::string& text) {
    json j = parse_root(text);
    if (!j.is_object()) throw ParseError("", "expected an object");
    reject_unknown_keys(j, "", {"N", "c", "pieces"});
    if (!j.contains("N") || !j.contains("c") || !j.contains("pieces"))
        throw ParseError("", "need N, c and pieces");
    long N = integer_at(j["N"], "/N");
    long c = integer_at(j["c"], "/c");
    IntStep values = step_from_pieces(j["pieces"], "/pieces", 0L, long_value_at);
    try {
        return {std::move(values), static_cast<int>(c), N};
    } catch (const std::exception& e) {
        throw ParseError("", e.what());
    }
}

namespace {

MultiplicityFunction multiplicity_from_json(const json& j, const std::string& ptr) {
    try {
        return parse_multiplicity(j.dump());
    } catch (const ParseError& e) {
        throw ParseError(ptr + e.pointer(), "embedded multiplicity: " + std::string(e.what()));
    }
}

FilterMatrix filter_from_json(const json& j, std::optional<MultiplicityFunction> external_m) {
    if (!j.is_object()) throw ParseError("", "expected an object");
    reject_unknown_keys(j, "", {"N", "c", "entries", "scale", "m"});
    if (!j.contains("N") || !j.contains("c") || !j.contains("entries"))
        throw ParseError("", "need N, c and entries");
    long N = integer_at(j["N"], "/N");
    long c = integer_at(j["c"], "/c");
    if (c < 1) throw ParseError("/c", "need at least one component");

    double scale = 1.0;
    if (j.contains("scale")) {
        if (!j["scale"].is_string() || j["scale"].get<std::string>() != "sqrtN")
            throw ParseError("/scale", "the only supported scale is \"sqrtN\"");
        scale = std::sqrt(static_cast<double>(N));
    }

    const json& entries = j["entries"];
    if (!entries.is_array() || static_cast<long>(entries.size()) != c)
        throw ParseError("/entries", "expected " + std::to_string(c) + " rows");
    std::vector<std::vector<CxStep>> rows;
    rows.reserve(static_cast<std::size_t>(c));
    for (long i = 0; i < c; ++i) {
        const json& row = entries[static_cast<std::size_t>(i)];
        std::string rptr = "/entries/" + std::to_string(i);
        if (!row.is_array() || static_cast<long>(row.size()) != c)
            throw ParseError(rptr, "expected " + std::to_string(c) + " entries");
        std::vector<CxStep> out_row;
        out_row.reserve(static_cast<std::size_t>(c));
        for (long k = 0; k < c; ++k) {
            const json& cell = row[static_cast<std::size_t>(k)];
            std::string cptr = rptr + "/" + std::to_string(k);
            if (!cell.is_object() || !cell.contains("pieces")) throw ParseError(cptr, "expected {\"pieces\": [...]}");
            reject_unknown_keys(cell, cptr, {"pieces"});
            CxStep entry = step_from_pieces(cell["pieces"], cptr + "/pieces", std::complex<double>{0.0, 0.0},
                                            complex_at);
            if (scale != 1.0) entry = entry.map([&](const std::complex<double>& v) { return scale * v; });
            out_row.push_back(std::move(entry));
        }
        rows.push_back(std::move(out_row));
    }

    std::optional<MultiplicityFunction> m = std::move(external_m);
    if (j.contains("m")) {
        MultiplicityFunction embedded = multiplicity_from_json(j["m"], "/m");
        if (!m) m.emplace(std::move(embedded));
    }
    if (!m) throw ParseError("/m", "no multiplicity: embed one or supply it separately");
    if (m->modulus() != N) throw ParseError("/N", "modulus disagrees with the multiplicity");
    if (m->bound() != static_cast<int>(c)) throw ParseError("/c", "component count disagrees with the multiplicity");
    try {
        return {std::move(rows), std::move(*m)};
    } catch (const std::exception& e) {
        throw ParseError("/entries", e.what());
    }
}

} // namespace

std::string dump_filter(const FilterMatrix& H) {
    const double scale = std::sqrt(static_cast<double>(H.modulus()));
    json j;
    j["N"] = H.modulus();
    j["c"] = H.dim();
    j["scale"] = "sqrtN";
    json entries = json::array();
    for (int i = 0; i < H.dim(); ++i) {
        json row = json::array();
        for (int k = 0; k < H.dim(); ++k) {
            json cell;
            cell["pieces"] = step_to_pieces(
                H.entry(i, k), [&](const std::complex<double>& v) { return complex_json(v / scale); }, true);
            row.push_back(std::move(cell));
        }
        entries.push_back(std::move(row));
    }
    j["entries"] = std::move(entries);
    json m = json::parse(dump_multiplicity(H.multiplicity()));
    j["m"] = std::move(m);
    return j.dump(2) + "\n";
}

FilterMatrix parse_filter(const std::string& text) { return filter_from_json(parse_root(text), std::nullopt); }

FilterMatrix parse_filter(const std::string& text, MultiplicityFunction m) {
    return filter_from_json(parse_root(text), std::move(m));
}

std::string dump_vector(const ModulatedStepVector& f) {
    json j;
    json terms = json::array();
    for (const auto& t : f.terms()) {
        json term;
        term["freq"] = to_string(t.freq);
        json coeffs = json::array();
        for (const auto& comp : t.coeffs) {
            json cell;
            cell["pieces"] = step_to_pieces(comp, complex_json, true);
            coeffs.push_back(std::move(cell));
        }
        term["coeffs"] = std::move(coeffs);
        terms.push_back(std::move(term));
    }
    j["terms"] = std::move(terms);
    return j.dump(2) + "\n";
}

ModulatedStepVector parse_vector(const std::string& text, int expected_components) {
    json j = parse_root(text);
    if (!j.is_object()) throw ParseError("", "expected an object");
    reject_unknown_keys(j, "", {"terms"});
    if (!j.contains("terms") || !j["terms"].is_array()) throw ParseError("/terms", "expected an array");
    const json& terms = j["terms"];

    int components = expected_components;
    std::vector<ModulatedTerm> out;
    out.reserve(terms.size());
    for (std::size_t i = 0; i < terms.size(); ++i) {
        std::string tptr = "/terms/" + std::to_string(i);
        const json& t = terms[i];
        if (!t.is_object()) throw ParseError(tptr, "expected an object");
        reject_unknown_keys(t, tptr, {"freq", "coeffs"});
        if (!t.contains("freq") || !t.contains("coeffs")) throw ParseError(tptr, "term needs freq and coeffs");
        Rational freq = rational_at(t["freq"], tptr + "/freq");
        const json& coeffs = t["coeffs"];
        if (!coeffs.is_array() || coeffs.empty()) throw ParseError(tptr + "/coeffs", "expected a nonempty array");
        if (components < 0) components = static_cast<int>(coeffs.size());
        if (static_cast<int>(coeffs.size()) != components)
            throw ParseError(tptr + "/coeffs", "expected " + std::to_string(components) + " components");
        ModulatedTerm term{std::move(freq), {}};
        term.coeffs.reserve(coeffs.size());
        for (std::size_t k = 0; k < coeffs.size(); ++k) {
            std::string cptr = tptr + "/coeffs/" + std::to_string(k);
            const json& cell = coeffs[k];
            if (!cell.is_object() || !cell.contains("pieces")) throw ParseError(cptr, "expected {\"pieces\": [...]}");
            reject_unknown_keys(cell, cptr, {"pieces"});
            term.coeffs.push_back(
                step_from_pieces(cell["pieces"], cptr + "/pieces", std::complex<double>{0.0, 0.0}, complex_at));
        }
        out.push_back(std::move(term));
    }
    if (components < 0) throw ParseError("/terms", "cannot infer the component count from an empty vector");
    return {components, std::move(out)};
}

std::string dump_gram_report(const GramReport& report) {
    json j;
    j["step"] = to_string(report.step);
    json pieces = json::array();
    std::size_t i = 0;
    while (i < report.points.size()) {
        std::size_t run = i;
        while (run + 1 < report.points.size() && report.ranks[run + 1] == report.ranks[i]) ++run;
        json piece;
        piece["lo"] = to_string(report.points[i]);
        piece["hi"] = to_string(run + 1 < report.points.size() ? report.points[run + 1] : rat(1, 2));
        piece["value"] = report.ranks[i];
        pieces.push_back(std::move(piece));
        i = run + 1;
    }
    j["pieces"] = std::move(pieces);
    return j.dump(2) + "\n";
}

std::string dump_scaling_csv(const RealLineGrid& grid) {
    std::ostringstream out;
    const Eigen::Index c = grid.samples.empty() ? 0 : grid.samples.front().rows();
    out << "x";
    for (Eigen::Index i = 0; i < c; ++i)
        for (Eigen::Index j = 0; j < c; ++j) out << ",e" << i << j << "_re,e" << i << j << "_im";
    out << "\n";
    char buf[64];
    for (std::size_t idx = 0; idx < grid.size(); ++idx) {
        std::snprintf(buf, sizeof(buf), "%.17g", to_double(grid.point(idx)));
        out << buf;
        const Eigen::MatrixXcd& M = grid.samples[idx];
        for (Eigen::Index i = 0; i < c; ++i)
            for (Eigen::Index j = 0; j < c; ++j) {
                std::snprintf(buf, sizeof(buf), ",%.17g,%.17g", M(i, j).real(), M(i, j).imag());
                out << buf;
            }
        out << "\n";
    }
    return out.str();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << content;
    if (!out.flush()) throw std::runtime_error("failed writing " + path);
}

} // namespace gmra::io
