#include "kohnspec/groups.hpp"
#include "kohnspec/hearing.hpp"
#include "kohnspec/json_io.hpp"
#include "kohnspec/spectrum.hpp"
#include "kohnspec/tridiag.hpp"
#include "kohnspec/verify.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

using namespace kohnspec;

namespace {

std::string fmt(const char* f, double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, x);
    return buf;
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file: " + path);
    f << content;
    if (!f) throw std::runtime_error("failed writing output file: " + path);
}

// t is a pair "re,im" (or a bare "re"), each part rational or finite decimal.
PerturbationParam parse_t(const std::string& text) {
    auto comma = text.find(',');
    std::string re_s = comma == std::string::npos ? text : text.substr(0, comma);
    std::string im_s = comma == std::string::npos ? std::string("0") : text.substr(comma + 1);
    auto re = parse_rational(re_s);
    auto im = parse_rational(im_s);
    if (!re || !im)
        throw std::invalid_argument("invalid --t '" + text +
                                    "': expected re,im with rational or decimal components");
    PerturbationParam t(GaussianRational{*re, *im});
    if (cmp(t.norm2(), Rational(1)) >= 0)
        throw std::invalid_argument("invalid --t '" + text + "': |t| < 1 required");
    return t;
}

Scaling parse_scaling(const std::string& s) {
    if (s == "raw") return Scaling::raw;
    if (s == "unscaled") return Scaling::unscaled;
    if (s == "halved") return Scaling::halved;
    throw std::invalid_argument("invalid --scaling: " + s);
}

std::string sources_text(const SpectrumEntry& e) {
    std::string out;
    for (size_t i = 0; i < e.sources.size(); ++i) {
        const SpectrumSource& s = e.sources[i];
        if (i) out += '|';
        if (s.bidegree)
            out += std::to_string(s.bidegree->first) + ":" + std::to_string(s.bidegree->second);
        else
            out += std::to_string(s.degree) + ":" + (*s.chain == ChainPart::V ? "V" : "W");
        out += "*" + std::to_string(s.copies);
    }
    return out;
}

std::string render_spectrum_table(const SpectrumTable& S) {
    std::ostringstream os;
    bool rossi = S.structure == Structure::rossi;
    os << "# " << (rossi ? "rossi" : "standard") << " spectrum, group " << S.group.format()
       << ", degrees <= " << S.max_degree;
    if (rossi && S.t) os << ", t = " << to_string(S.t->value());
    if (rossi)
        os << ", scaling "
           << (S.scaling == Scaling::raw ? "raw"
                                         : S.scaling == Scaling::unscaled ? "unscaled" : "halved");
    if (S.selected) os << ", selected eigenvalues only";
    os << "\n";
    char line[256];
    std::snprintf(line, sizeof line, "%-22s %12s  %-8s  %s\n", "eigenvalue", "multiplicity",
                  "flags", "sources");
    os << line;
    for (const SpectrumEntry& e : S.entries) {
        std::string key = rossi ? fmt("%.12g", e.value_d())
                                : std::to_string(static_cast<long>(e.eigenvalue.lo.get_d()));
        std::string flags = rossi ? (e.merged ? "merged" : "-")
                                  : (e.complete ? "complete" : "window");
        std::snprintf(line, sizeof line, "%-22s %12ld  %-8s  %s\n", key.c_str(), e.multiplicity,
                      flags.c_str(), sources_text(e).c_str());
        os << line;
    }
    return os.str();
}

std::string render_hearing_table(const HearingReport& r) {
    std::ostringstream os;
    os << "parity: " << (r.parity == Parity::even ? "even" : "odd") << " (probe prime "
       << r.parity_alpha << ")\n";
    os << "constant: " << to_string(r.constant) << "\n";
    char line[128];
    std::snprintf(line, sizeof line, "%8s %14s %12s %10s\n", "alpha", "multiplicity", "ratio",
                  "estimate");
    os << line;
    for (const PrimeEstimate& e : r.estimates) {
        std::snprintf(line, sizeof line, "%8ld %14ld %12.6f %10ld\n", e.alpha, e.multiplicity,
                      e.ratio, e.rounded);
        os << line;
    }
    os << "final order: " << r.final_order << " (" << r.stabilization
       << " trailing primes agree; " << (r.stabilized ? "stabilized" : "NOT stabilized") << ")\n";
    return os.str();
}

std::string render_embeddability_table(const EmbeddabilityReport& r) {
    std::ostringstream os;
    os << "group " << r.group.format() << " (order " << r.order << "), t = "
       << to_string(r.t.value()) << ", degrees <= " << r.max_degree << "\n";
    os << "verdict: " << (r.embeddable ? "embeddable" : "non-embeddable")
       << " (group order parity)\n";
    if (r.embeddable) {
        os << "gap bound 2h(t) = " << to_string(r.gap_bound) << " ~ "
           << fmt("%.9g", r.gap_bound.get_d()) << ", certified for degrees >= 8: "
           << (r.gap_certified ? "yes" : "NO") << "\n";
        if (r.min_nonzero) {
            os << "min nonzero eigenvalue: degree " << r.min_nonzero->degree << " chain "
               << (r.min_nonzero->chain == ChainPart::V ? "V" : "W") << ", ~ "
               << fmt("%.9g", r.min_nonzero->enclosure.mid_d()) << " (certified enclosure)\n";
        }
    } else {
        char line[160];
        std::snprintf(line, sizeof line, "%8s %8s %6s %16s %16s\n", "window", "degree", "chain",
                      "min_positive", "enclosure_width");
        os << line;
        for (const WindowMinimum& w : r.window_minima) {
            const RatInterval& enc = w.minimum.enclosure;
            std::snprintf(line, sizeof line, "%8d %8d %6s %16.6e %16.3e\n", w.window,
                          w.minimum.degree, w.minimum.chain == ChainPart::V ? "V" : "W",
                          enc.mid_d(), Rational(enc.hi - enc.lo).get_d());
            os << line;
        }
        os << "window minima decay toward zero: eigenvalues accumulate at 0\n";
    }
    return os.str();
}

struct SpectrumArgs {
    std::string structure = "standard";
    std::string group;
    std::string t_text = "0";
    int max_degree = -1;
    long primes_window = 0;
    std::string scaling = "raw";
    std::string merge_tolerance = "1/1000000000";
    std::string format = "json";
    std::string output;
};

int run_spectrum(const SpectrumArgs& a, int jobs) {
    FiniteSubgroup G = make_group(a.group);
    SpectrumTable S;
    if (a.primes_window > 0) {
        if (a.structure != "standard")
            throw std::invalid_argument("--primes-window requires --structure standard");
        S = standard_spectrum_primes_window(G, a.primes_window);
    } else {
        if (a.max_degree < 0)
            throw std::invalid_argument("--max-degree is required (or use --primes-window)");
        if (a.structure == "standard") {
            S = standard_spectrum(G, a.max_degree);
        } else {
            PerturbationParam t = parse_t(a.t_text);
            auto tol = parse_rational(a.merge_tolerance);
            if (!tol || sgn(*tol) <= 0)
                throw std::invalid_argument("--merge-tolerance must be a positive rational");
            S = rossi_spectrum(G, t, a.max_degree, parse_scaling(a.scaling), *tol, jobs);
        }
    }
    if (a.format == "json")
        write_output(a.output, dump_json(spectrum_to_json(S)));
    else if (a.format == "csv")
        write_output(a.output, spectrum_to_csv(S));
    else
        write_output(a.output, render_spectrum_table(S));
    return 0;
}

struct HearArgs {
    std::string input;
    std::string format = "json";
    std::string output;
};

int run_hear(const HearArgs& a) {
    std::string text;
    if (a.input == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        text = ss.str();
    } else {
        std::ifstream f(a.input, std::ios::binary);
        if (!f) throw std::invalid_argument("cannot read input file: " + a.input);
        std::ostringstream ss;
        ss << f.rdbuf();
        text = ss.str();
    }
    SpectrumTable S = spectrum_from_json_text(text);
    HearingReport r = hear(S);
    if (a.format == "json")
        write_output(a.output, dump_json(hearing_to_json(r)));
    else
        write_output(a.output, render_hearing_table(r));
    if (!r.stabilized) {
        std::cerr << "hearing did not stabilize: " << r.stabilization
                  << " trailing agreeing primes (need 3); enlarge the degree window\n";
        return 4;
    }
    return 0;
}

struct DimsArgs {
    std::string group;
    int max_degree = 0;
    std::string format = "table";
    std::string output;
};

int run_dims(const DimsArgs& a) {
    FiniteSubgroup G = make_group(a.group);
    std::vector<long> dims;
    for (int k = 0; k <= a.max_degree; ++k) dims.push_back(dim_invariant(G, k));
    std::ostringstream os;
    if (a.format == "json") {
        OrderedJson j;
        j["group"] = G.spec() ? G.spec()->format() : G.label();
        j["max_degree"] = a.max_degree;
        j["dims"] = dims;
        os << dump_json(j);
    } else if (a.format == "csv") {
        os << "k,dim\n";
        for (int k = 0; k <= a.max_degree; ++k) os << k << ',' << dims[static_cast<size_t>(k)] << '\n';
    } else {
        for (long d : dims) os << d << '\n';
    }
    write_output(a.output, os.str());
    return 0;
}

struct EmbeddableArgs {
    std::string group;
    std::string t_text;
    int max_degree = 0;
    std::string format = "table";
    std::string output;
};

int run_embeddable(const EmbeddableArgs& a, int jobs) {
    FiniteSubgroup G = make_group(a.group);
    PerturbationParam t = parse_t(a.t_text);
    EmbeddabilityReport r = classify_embeddability(G, t, a.max_degree, jobs);
    if (a.format == "json")
        write_output(a.output, dump_json(embeddability_to_json(r)));
    else
        write_output(a.output, render_embeddability_table(r));
    return 0;
}

struct GershgorinArgs {
    std::string t_text;
    int degree = 0;
    std::string format = "table";
    std::string output;
};

int run_gershgorin(const GershgorinArgs& a) {
    if (a.degree < 2 || a.degree % 2 != 0)
        throw std::invalid_argument("--degree must be an even integer >= 2");
    PerturbationParam t = parse_t(a.t_text);
    int k = a.degree / 2;
    SymTriDiag h = rescale(symmetrize(build_W_matrix(k, t)), Rational(1, 2), Scaling::halved);
    auto rows = gershgorin_intervals(h);
    bool certified = gershgorin_rows_at_least(h, Rational(1));
    std::ostringstream os;
    if (a.format == "json") {
        OrderedJson j;
        j["degree"] = a.degree;
        j["t"] = {{"re", t.value().re.get_d()}, {"im", t.value().im.get_d()}};
        j["scaling"] = "halved";
        j["chain"] = "W";
        OrderedJson jr = OrderedJson::array();
        for (const auto& [lo, hi] : rows) jr.push_back({{"lo", lo}, {"hi", hi}});
        j["rows"] = std::move(jr);
        j["all_rows_at_least_1"] = certified;
        os << dump_json(j);
    } else {
        os << "# Gershgorin rows of the halved-convention W matrix, degree " << a.degree
           << " (k = " << k << "), t = " << to_string(t.value()) << "\n";
        for (size_t i = 0; i < rows.size(); ++i)
            os << "row " << i << ": [" << fmt("%.9g", rows[i].first) << ", "
               << fmt("%.9g", rows[i].second) << "]\n";
        os << "all lower endpoints >= 1 (exact check): " << (certified ? "yes" : "NO") << "\n";
    }
    write_output(a.output, os.str());
    return certified || k < 4 ? 0 : 3;
}

struct VerifyArgs {
    std::vector<std::string> only;
    int k_max = 0;
    bool list = false;
    std::string output;
};

int run_verify(const VerifyArgs& a, int jobs) {
    std::ostringstream os;
    if (a.list) {
        for (const PropertyInfo& p : verify_properties())
            os << p.name << " — " << p.description << "\n";
        write_output(a.output, os.str());
        return 0;
    }
    VerifyOptions opts{a.only, a.k_max, jobs};
    VerifyReport rep = run_verification(opts);
    int passed = 0;
    for (const PropertyResult& r : rep.results) {
        os << (r.passed ? "[PASS] " : "[FAIL] ") << r.name << " — " << r.detail << "\n";
        passed += r.passed ? 1 : 0;
    }
    os << "summary: " << passed << "/" << rep.results.size() << " properties passed\n";
    write_output(a.output, os.str());
    return rep.all_passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectra of the standard and deformed flat Laplacian structures on lens-type "
                 "quotients of the 3-sphere: assembly, embeddability classification, and "
                 "recovering the group order from the spectrum"};
    app.require_subcommand(1);
    app.set_config("--config", "", "read options from an INI/TOML file");

    int jobs = 0;
    app.add_option("--jobs", jobs,
                   "worker threads for per-degree computations (0 = $KOHNSPEC_JOBS or 1)");
    long seed = 0;
    app.add_option("--seed", seed, "reserved for randomized checks; current runs are deterministic");

    SpectrumArgs sa;
    CLI::App* spectrum = app.add_subcommand("spectrum", "compute a spectrum table");
    spectrum->add_option("--structure", sa.structure, "standard or rossi")
        ->check(CLI::IsMember({"standard", "rossi"}));
    spectrum->add_option("--group", sa.group, "group spec: C:<n>, Dic:<n>, 2T, 2O, 2I, conj:<spec>:<x1>,<x2>")
        ->required();
    spectrum->add_option("--t", sa.t_text, "perturbation parameter re,im (rational or decimal), |t| < 1");
    spectrum->add_option("--max-degree", sa.max_degree, "largest harmonic degree K in the window");
    spectrum->add_option("--primes-window", sa.primes_window,
                         "standard only: restrict to eigenvalues {2a, 4a : a odd prime <= P}, K = 2P");
    spectrum->add_option("--scaling", sa.scaling, "eigenvalue convention for rossi tables")
        ->check(CLI::IsMember({"raw", "unscaled", "halved"}));
    spectrum->add_option("--merge-tolerance", sa.merge_tolerance,
                         "rossi only: enclosures closer than this merge into one entry");
    spectrum->add_option("--format", sa.format, "output format")
        ->check(CLI::IsMember({"json", "csv", "table"}));
    spectrum->add_option("--output,-o", sa.output, "output path (default stdout)");

    HearArgs ha;
    CLI::App* hear_cmd = app.add_subcommand("hear", "recover the group order from a spectrum file");
    hear_cmd->add_option("--input,-i", ha.input, "spectrum JSON file ('-' = stdin)")->required();
    hear_cmd->add_option("--format", ha.format, "output format")
        ->check(CLI::IsMember({"json", "table"}));
    hear_cmd->add_option("--output,-o", ha.output, "output path (default stdout)");

    DimsArgs da;
    CLI::App* dims = app.add_subcommand("dims", "invariant harmonic dimensions dim H_{0,k}^G");
    dims->add_option("--group", da.group, "group spec")->required();
    dims->add_option("--max-degree", da.max_degree, "largest degree k")->required()
        ->check(CLI::NonNegativeNumber);
    dims->add_option("--format", da.format, "output format")
        ->check(CLI::IsMember({"table", "csv", "json"}));
    dims->add_option("--output,-o", da.output, "output path (default stdout)");

    EmbeddableArgs ea;
    CLI::App* emb = app.add_subcommand("embeddable", "parity verdict with spectral evidence");
    emb->add_option("--group", ea.group, "group spec")->required();
    emb->add_option("--t", ea.t_text, "perturbation parameter re,im, 0 < |t| < 1")->required();
    emb->add_option("--max-degree", ea.max_degree, "largest harmonic degree K")->required();
    emb->add_option("--format", ea.format, "output format")
        ->check(CLI::IsMember({"table", "json"}));
    emb->add_option("--output,-o", ea.output, "output path (default stdout)");

    GershgorinArgs ga;
    CLI::App* ger = app.add_subcommand("gershgorin", "row intervals of the halved W matrix");
    ger->add_option("--degree", ga.degree, "even harmonic degree 2k")->required();
    ger->add_option("--t", ga.t_text, "perturbation parameter re,im, |t| < 1")->required();
    ger->add_option("--format", ga.format, "output format")
        ->check(CLI::IsMember({"table", "json"}));
    ger->add_option("--output,-o", ga.output, "output path (default stdout)");

    VerifyArgs va;
    CLI::App* ver = app.add_subcommand("verify", "re-run the module invariants");
    for (CLI::App* sub : {spectrum, hear_cmd, dims, emb, ger, ver})
        sub->fallthrough();  // accept global flags (--jobs, --seed) after the subcommand too
    ver->add_option("--only", va.only, "restrict to these properties (repeat or comma-separate)")
        ->delimiter(',');
    ver->add_option("--k-max", va.k_max, "rescale the heaviest loop of each property");
    ver->add_flag("--list", va.list, "list property names and exit");
    ver->add_option("--output,-o", va.output, "output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (spectrum->parsed()) return run_spectrum(sa, jobs);
        if (hear_cmd->parsed()) return run_hear(ha);
        if (dims->parsed()) return run_dims(da);
        if (emb->parsed()) return run_embeddable(ea, jobs);
        if (ger->parsed()) return run_gershgorin(ga);
        if (ver->parsed()) return run_verify(va, jobs);
        std::cerr << app.help();
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
