#include "kohnspec/json_io.hpp"

#include <cstdio>
#include <stdexcept>

namespace kohnspec {

namespace {

std::string rat_str(const Rational& r) { return to_string(r); }

Rational rat_parse(const std::string& s, const char* what) {
    auto r = parse_rational(s);
    if (!r) throw std::invalid_argument(std::string("invalid rational in ") + what + ": " + s);
    return *r;
}

std::string fmt17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

const char* scaling_name(Scaling s) {
    switch (s) {
        case Scaling::raw: return "raw";
        case Scaling::unscaled: return "unscaled";
        case Scaling::halved: return "halved";
    }
    throw std::logic_error("unknown scaling");
}

Scaling scaling_parse(const std::string& s) {
    if (s == "raw") return Scaling::raw;
    if (s == "unscaled") return Scaling::unscaled;
    if (s == "halved") return Scaling::halved;
    throw std::invalid_argument("invalid scaling: " + s);
}

OrderedJson t_to_json(const PerturbationParam& t) {
    OrderedJson j;
    j["re"] = t.value().re.get_d();
    j["im"] = t.value().im.get_d();
    j["re_exact"] = rat_str(t.value().re);
    j["im_exact"] = rat_str(t.value().im);
    return j;
}

PerturbationParam t_from_json(const OrderedJson& j) {
    if (!j.is_object()) throw std::invalid_argument("t must be null or an object");
    Rational re, im;
    if (j.contains("re_exact")) {
        re = rat_parse(j.at("re_exact").get<std::string>(), "t.re_exact");
        im = rat_parse(j.at("im_exact").get<std::string>(), "t.im_exact");
    } else {
        // schema-minimal files carry doubles; binary doubles are exact rationals
        GaussianRational v =
            PerturbationParam::from_complex({j.at("re").get<double>(), j.at("im").get<double>()})
                .value();
        re = v.re;
        im = v.im;
    }
    return PerturbationParam(GaussianRational(re, im));
}

OrderedJson source_to_json(const SpectrumSource& s) {
    OrderedJson j;
    if (s.bidegree) {
        j["p"] = s.bidegree->first;
        j["q"] = s.bidegree->second;
    } else if (s.chain) {
        j["degree"] = s.degree;
        j["chain"] = *s.chain == ChainPart::V ? "V" : "W";
    } else {
        throw std::logic_error("source with neither bidegree nor chain");
    }
    j["copies"] = s.copies;
    return j;
}

SpectrumSource source_from_json(const OrderedJson& j) {
    SpectrumSource s;
    if (j.contains("p")) {
        int p = j.at("p").get<int>(), q = j.at("q").get<int>();
        s.bidegree = {p, q};
        s.degree = p + q;
    } else if (j.contains("degree")) {
        s.degree = j.at("degree").get<int>();
        std::string c = j.at("chain").get<std::string>();
        if (c != "V" && c != "W") throw std::invalid_argument("invalid chain: " + c);
        s.chain = c == "V" ? ChainPart::V : ChainPart::W;
    } else {
        throw std::invalid_argument("source needs p/q or degree/chain");
    }
    s.copies = j.contains("copies") ? j.at("copies").get<long>() : 1;
    return s;
}

std::string source_item(const SpectrumSource& s) {
    if (s.bidegree)
        return std::to_string(s.bidegree->first) + ":" + std::to_string(s.bidegree->second) + "*" +
               std::to_string(s.copies);
    return std::to_string(s.degree) + ":" + (*s.chain == ChainPart::V ? "V" : "W") + "*" +
           std::to_string(s.copies);
}

}  // namespace

std::string dump_json(const OrderedJson& j) { return j.dump(2) + "\n"; }

OrderedJson spectrum_to_json(const SpectrumTable& S) {
    bool rossi = S.structure == Structure::rossi;
    OrderedJson j;
    j["structure"] = rossi ? "rossi" : "standard";
    if (rossi && S.t)
        j["t"] = t_to_json(*S.t);
    else
        j["t"] = nullptr;
    j["group"] = S.group.format();
    j["max_degree"] = S.max_degree;
    j["scaling"] = scaling_name(S.scaling);
    if (rossi) j["merge_tolerance"] = rat_str(S.merge_tolerance);
    if (S.selected) j["selected"] = *S.selected;
    OrderedJson entries = OrderedJson::array();
    for (const SpectrumEntry& e : S.entries) {
        OrderedJson je;
        if (rossi) {
            je["eigenvalue"] = e.value_d();
            je["enclosure"] = {{"lo", rat_str(e.eigenvalue.lo)}, {"hi", rat_str(e.eigenvalue.hi)}};
        } else {
            // exact integer key (lo == hi, an even integer)
            je["eigenvalue"] = static_cast<long>(e.eigenvalue.lo.get_d());
        }
        je["multiplicity"] = e.multiplicity;
        if (rossi)
            je["merged"] = e.merged;
        else
            je["complete"] = e.complete;
        OrderedJson srcs = OrderedJson::array();
        for (const SpectrumSource& s : e.sources) srcs.push_back(source_to_json(s));
        je["sources"] = std::move(srcs);
        entries.push_back(std::move(je));
    }
    j["entries"] = std::move(entries);
    return j;
}

SpectrumTable spectrum_from_json(const OrderedJson& j) {
    if (!j.is_object()) throw std::invalid_argument("spectrum: object expected");
    SpectrumTable S;
    std::string structure = j.at("structure").get<std::string>();
    if (structure == "standard")
        S.structure = Structure::standard;
    else if (structure == "rossi")
        S.structure = Structure::rossi;
    else
        throw std::invalid_argument("invalid structure: " + structure);
    bool rossi = S.structure == Structure::rossi;
    if (rossi) {
        if (!j.contains("t") || j.at("t").is_null())
            throw std::invalid_argument("rossi spectrum requires t");
        S.t = t_from_json(j.at("t"));
    }
    S.group = GroupSpec::parse(j.at("group").get<std::string>());
    S.max_degree = j.at("max_degree").get<int>();
    if (S.max_degree < 0) throw std::invalid_argument("max_degree must be >= 0");
    if (j.contains("scaling")) S.scaling = scaling_parse(j.at("scaling").get<std::string>());
    if (rossi && j.contains("merge_tolerance"))
        S.merge_tolerance = rat_parse(j.at("merge_tolerance").get<std::string>(), "merge_tolerance");
    if (j.contains("selected") && !j.at("selected").is_null())
        S.selected = j.at("selected").get<std::vector<long>>();
    for (const OrderedJson& je : j.at("entries")) {
        SpectrumEntry e;
        if (rossi) {
            if (je.contains("enclosure")) {
                e.eigenvalue.lo = rat_parse(je.at("enclosure").at("lo").get<std::string>(), "enclosure.lo");
                e.eigenvalue.hi = rat_parse(je.at("enclosure").at("hi").get<std::string>(), "enclosure.hi");
            } else {
                // schema-minimal file: a bare double key is its own enclosure
                GaussianRational v = PerturbationParam::from_complex(
                                         {je.at("eigenvalue").get<double>(), 0.0})
                                         .value();
                e.eigenvalue.lo = e.eigenvalue.hi = v.re;
            }
            e.merged = je.contains("merged") && je.at("merged").get<bool>();
            e.complete = false;
        } else {
            long lambda;
            const OrderedJson& ev = je.at("eigenvalue");
            if (ev.is_string()) {
                try {
                    lambda = std::stol(ev.get<std::string>());  // string-exact-int form
                } catch (const std::exception&) {
                    throw std::invalid_argument("invalid eigenvalue key: " + ev.get<std::string>());
                }
            } else {
                lambda = ev.get<long>();
            }
            if (lambda < 0) throw std::invalid_argument("negative eigenvalue key");
            e.eigenvalue.lo = e.eigenvalue.hi = Rational(lambda);
            e.complete = !je.contains("complete") || je.at("complete").get<bool>();
        }
        e.multiplicity = je.at("multiplicity").get<long>();
        if (e.multiplicity <= 0) throw std::invalid_argument("multiplicity must be positive");
        if (je.contains("sources"))
            for (const OrderedJson& js : je.at("sources")) e.sources.push_back(source_from_json(js));
        S.entries.push_back(std::move(e));
    }
    for (size_t i = 1; i < S.entries.size(); ++i)
        if (cmp(S.entries[i - 1].eigenvalue.lo, S.entries[i].eigenvalue.lo) >= 0)
            throw std::invalid_argument("entries must be strictly ascending");
    return S;
}

SpectrumTable spectrum_from_json_text(const std::string& text) {
    OrderedJson j = OrderedJson::parse(text, nullptr, false);
    if (j.is_discarded()) throw std::invalid_argument("malformed JSON");
    return spectrum_from_json(j);
}

std::string spectrum_to_csv(const SpectrumTable& S) {
    bool rossi = S.structure == Structure::rossi;
    std::string out = "eigenvalue,multiplicity,lo,hi,merged,complete,sources\n";
    for (const SpectrumEntry& e : S.entries) {
        if (rossi)
            out += fmt17(e.value_d());
        else
            out += std::to_string(static_cast<long>(e.eigenvalue.lo.get_d()));
        out += ',' + std::to_string(e.multiplicity);
        out += ',' + rat_str(e.eigenvalue.lo) + ',' + rat_str(e.eigenvalue.hi);
        out += ',' + std::string(e.merged ? "1" : "0") + ',' + (e.complete ? "1" : "0") + ',';
        for (size_t i = 0; i < e.sources.size(); ++i) {
            if (i) out += '|';
            out += source_item(e.sources[i]);
        }
        out += '\n';
    }
    return out;
}

OrderedJson hearing_to_json(const HearingReport& r) {
    OrderedJson j;
    j["parity"] = r.parity == Parity::even ? "even" : "odd";
    j["parity_alpha"] = r.parity_alpha;
    j["constant"] = rat_str(r.constant);
    OrderedJson estimates = OrderedJson::array();
    for (const PrimeEstimate& e : r.estimates)
        estimates.push_back({{"alpha", e.alpha},
                             {"multiplicity", e.multiplicity},
                             {"ratio", e.ratio},
                             {"rounded", e.rounded}});
    j["estimates"] = std::move(estimates);
    j["final_order"] = r.final_order;
    j["stabilization"] = r.stabilization;
    j["stabilized"] = r.stabilized;
    return j;
}

namespace {

OrderedJson degree_minimum_to_json(const DegreeMinimum& m) {
    return {{"degree", m.degree},
            {"chain", m.chain == ChainPart::V ? "V" : "W"},
            {"lo", to_string(m.enclosure.lo)},
            {"hi", to_string(m.enclosure.hi)},
            {"value", m.enclosure.mid_d()}};
}

}  // namespace

OrderedJson embeddability_to_json(const EmbeddabilityReport& r) {
    OrderedJson j;
    j["group"] = r.group.format();
    j["order"] = r.order;
    j["t"] = t_to_json(r.t);
    j["max_degree"] = r.max_degree;
    j["embeddable"] = r.embeddable;
    j["verdict"] = r.embeddable ? "embeddable" : "non-embeddable";
    if (r.embeddable) {
        j["gap_bound"] = to_string(r.gap_bound);
        j["gap_bound_value"] = r.gap_bound.get_d();
        j["gap_certified"] = r.gap_certified;
        if (r.min_nonzero) j["min_nonzero"] = degree_minimum_to_json(*r.min_nonzero);
    } else {
        OrderedJson ladder = OrderedJson::array();
        for (const WindowMinimum& w : r.window_minima) {
            OrderedJson jw = degree_minimum_to_json(w.minimum);
            jw["window"] = w.window;
            ladder.push_back(std::move(jw));
        }
        j["window_minima"] = std::move(ladder);
    }
    return j;
}

bool equal(const SpectrumSource& a, const SpectrumSource& b) {
    return a.degree == b.degree && a.chain == b.chain && a.bidegree == b.bidegree &&
           a.copies == b.copies;
}

bool equal(const SpectrumEntry& a, const SpectrumEntry& b) {
    if (cmp(a.eigenvalue.lo, b.eigenvalue.lo) != 0 || cmp(a.eigenvalue.hi, b.eigenvalue.hi) != 0)
        return false;
    if (a.multiplicity != b.multiplicity || a.merged != b.merged || a.complete != b.complete)
        return false;
    if (a.sources.size() != b.sources.size()) return false;
    for (size_t i = 0; i < a.sources.size(); ++i)
        if (!equal(a.sources[i], b.sources[i])) return false;
    return true;
}

bool equal(const SpectrumTable& a, const SpectrumTable& b) {
    if (a.structure != b.structure || a.max_degree != b.max_degree || a.scaling != b.scaling)
        return false;
    if (a.t.has_value() != b.t.has_value()) return false;
    if (a.t && a.t->value() != b.t->value()) return false;
    if (a.group.format() != b.group.format()) return false;
    if (cmp(a.merge_tolerance, b.merge_tolerance) != 0) return false;
    if (a.selected != b.selected) return false;
    if (a.entries.size() != b.entries.size()) return false;
    for (size_t i = 0; i < a.entries.size(); ++i)
        if (!equal(a.entries[i], b.entries[i])) return false;
    return true;
}

}  // namespace kohnspec
