#include "kohnspec/json_io.hpp"

#include "kohnspec/groups.hpp"
#include "kohnspec/hearing.hpp"
#include "kohnspec/spectrum.hpp"

#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

using namespace kohnspec;

namespace {

PerturbationParam t_rat(long pn, long pd, long qn = 0, long qd = 1) {
    Rational re(pn, pd), im(qn, qd);
    re.canonicalize();
    im.canonicalize();
    return PerturbationParam(GaussianRational{re, im});
}

// ---------- binary driver ----------

struct Cli {
    std::string bin;
    std::filesystem::path dir;

    Cli() {
        const char* env = std::getenv("KOHNSPEC_BIN");
        REQUIRE_MESSAGE(env != nullptr, "KOHNSPEC_BIN must point at the built binary");
        bin = env;
        dir = std::filesystem::temp_directory_path() /
              ("kohnspec_cli_test_" + std::to_string(::getpid()));
        std::filesystem::create_directories(dir);
    }

    std::filesystem::path path(const std::string& name) const { return dir / name; }

    // Runs `kohnspec <args>`, captures stdout/stderr, returns the exit code.
    int run(const std::string& args) {
        std::string cmd = "\"" + bin + "\" " + args + " > \"" + path("stdout.txt").string() +
                          "\" 2> \"" + path("stderr.txt").string() + "\"";
        int status = std::system(cmd.c_str());
        REQUIRE(status != -1);
        REQUIRE(WIFEXITED(status));
        return WEXITSTATUS(status);
    }

    std::string slurp(const std::string& name) const {
        std::ifstream f(path(name), std::ios::binary);
        REQUIRE(f.good());
        std::ostringstream ss;
        ss << f.rdbuf();
        return ss.str();
    }

    std::string out() const { return slurp("stdout.txt"); }
    std::string err() const { return slurp("stderr.txt"); }
};

Cli& cli() {
    static Cli instance;
    return instance;
}

long count_lines(const std::string& s) {
    long n = 0;
    for (char c : s)
        if (c == '\n') ++n;
    return n;
}

}  // namespace

// ---------- JSON codec (library level) ----------

TEST_CASE("JSON round trip: standard, selected and deformed tables") {
    std::vector<SpectrumTable> tables;
    tables.push_back(standard_spectrum(make_group("C:3"), 10));
    tables.push_back(standard_spectrum(make_group("Dic:2"), 8));
    tables.push_back(standard_spectrum_primes_window(make_group("C:7"), 50));
    tables.push_back(rossi_spectrum(make_group("C:2"), t_rat(1, 2), 6));
    tables.push_back(rossi_spectrum(make_group("C:3"), t_rat(1, 2, 1, 3), 5, Scaling::halved));
    for (const SpectrumTable& S : tables) {
        std::string text = dump_json(spectrum_to_json(S));
        SpectrumTable back = spectrum_from_json_text(text);
        CHECK(equal(S, back));
        CHECK(dump_json(spectrum_to_json(back)) == text);
    }
}

TEST_CASE("JSON parse accepts the schema-minimal form and fills defaults") {
    // no scaling/complete/copies fields, eigenvalue as a string-exact-int
    std::string text = R"({
      "structure": "standard", "t": null, "group": "C:2", "max_degree": 4,
      "entries": [
        { "eigenvalue": 0, "multiplicity": 3, "sources": [{"p": 0, "q": 0}] },
        { "eigenvalue": "4", "multiplicity": 2, "sources": [{"p": 0, "q": 2}, {"p": 1, "q": 1}] }
      ]
    })";
    SpectrumTable S = spectrum_from_json_text(text);
    CHECK(S.structure == Structure::standard);
    CHECK(S.max_degree == 4);
    REQUIRE(S.entries.size() == 2);
    CHECK(S.entries[1].complete);  // defaulted
    CHECK(S.entries[1].sources.at(0).copies == 1);
    CHECK(S.entries[1].sources.at(0).degree == 2);
    CHECK(cmp(S.entries[1].eigenvalue.lo, Rational(4)) == 0);
}

TEST_CASE("JSON parse rejects malformed input") {
    CHECK_THROWS_AS(spectrum_from_json_text("not json at all"), std::invalid_argument);
    CHECK_THROWS_AS(spectrum_from_json_text(R"({"structure":"weird","group":"C:1","max_degree":1,"entries":[]})"),
                    std::invalid_argument);
    // rossi requires t
    CHECK_THROWS_AS(spectrum_from_json_text(R"({"structure":"rossi","t":null,"group":"C:1","max_degree":1,"entries":[]})"),
                    std::invalid_argument);
    // entries must ascend strictly
    CHECK_THROWS_AS(spectrum_from_json_text(R"({"structure":"standard","t":null,"group":"C:1","max_degree":4,
        "entries":[{"eigenvalue":4,"multiplicity":1,"sources":[]},{"eigenvalue":2,"multiplicity":1,"sources":[]}]})"),
                    std::invalid_argument);
    // invalid group spec
    CHECK_THROWS_AS(spectrum_from_json_text(R"({"structure":"standard","t":null,"group":"X:2","max_degree":1,"entries":[]})"),
                    std::invalid_argument);
}

TEST_CASE("CSV export: header plus one row per entry, exact bounds carried") {
    SpectrumTable S = rossi_spectrum(make_group("C:2"), t_rat(1, 2), 4);
    std::string csv = spectrum_to_csv(S);
    CHECK(count_lines(csv) == static_cast<long>(S.entries.size()) + 1);
    CHECK(csv.rfind("eigenvalue,multiplicity,lo,hi,merged,complete,sources\n", 0) == 0);
    // the zero entry leads with its exact bounds
    CHECK(csv.find("\n0,") != std::string::npos);
    SpectrumTable T = standard_spectrum(make_group("C:3"), 6);
    std::string csv2 = spectrum_to_csv(T);
    CHECK(count_lines(csv2) == static_cast<long>(T.entries.size()) + 1);
    CHECK(csv2.find("4,2,4,4,0,1,0:2*1|1:1*1") != std::string::npos);
}

TEST_CASE("hearing and embeddability reports serialize with their traces") {
    HearingReport r = hear(standard_spectrum_primes_window(make_group("C:3"), 100));
    OrderedJson j = hearing_to_json(r);
    CHECK(j.at("parity") == "odd");
    CHECK(j.at("final_order") == 3);
    CHECK(j.at("estimates").size() == r.estimates.size());
    CHECK(j.at("stabilized") == true);

    EmbeddabilityReport e = classify_embeddability(make_group("C:2"), t_rat(1, 2), 10);
    OrderedJson je = embeddability_to_json(e);
    CHECK(je.at("verdict") == "embeddable");
    CHECK(je.at("gap_bound") == "40/9");
    CHECK(je.at("gap_certified") == true);
}

// ---------- binary integration ----------

TEST_CASE("spectrum command reproduces the library table exactly") {
    CHECK(cli().run("spectrum --structure standard --group C:3 --max-degree 64 --format json") == 0);
    SpectrumTable S = spectrum_from_json_text(cli().out());
    CHECK(equal(S, standard_spectrum(make_group("C:3"), 64)));
    // integer eigenvalue keys
    OrderedJson j = OrderedJson::parse(cli().out());
    for (const auto& e : j.at("entries")) CHECK(e.at("eigenvalue").is_number_integer());
}

TEST_CASE("trivial group with max_degree 0 yields the single zero entry") {
    CHECK(cli().run("spectrum --structure standard --group C:1 --max-degree 0") == 0);
    SpectrumTable S = spectrum_from_json_text(cli().out());
    REQUIRE(S.entries.size() == 1);
    CHECK(cmp(S.entries[0].eigenvalue.lo, Rational(0)) == 0);
    CHECK(S.entries[0].multiplicity == 1);
}

TEST_CASE("deformed C:2 window keeps every nonzero eigenvalue above 40/9") {
    CHECK(cli().run("spectrum --structure rossi --group C:2 --t 1/2,0 --max-degree 8") == 0);
    SpectrumTable S = spectrum_from_json_text(cli().out());
    Rational bound(40, 9);
    long positive = 0;
    for (const SpectrumEntry& e : S.entries) {
        if (sgn(e.eigenvalue.hi) == 0) continue;
        ++positive;
        CHECK(cmp(e.eigenvalue.lo, bound) >= 0);
    }
    CHECK(positive > 0);
}

TEST_CASE("spectrum output is deterministic byte for byte") {
    CHECK(cli().run("spectrum --structure rossi --group C:3 --t 1/2,1/3 --max-degree 6") == 0);
    std::string first = cli().out();
    CHECK(cli().run("spectrum --structure rossi --group C:3 --t 1/2,1/3 --max-degree 6") == 0);
    CHECK(cli().out() == first);
    CHECK(cli().run("spectrum --structure rossi --group C:3 --t 1/2,1/3 --max-degree 6 --jobs 4") == 0);
    CHECK(cli().out() == first);
}

TEST_CASE("spectrum-to-hear pipeline recovers the order") {
    auto spec_file = cli().path("c7.json").string();
    CHECK(cli().run("spectrum --group C:7 --primes-window 300 --output \"" + spec_file + "\"") == 0);
    CHECK(cli().run("hear --input \"" + spec_file + "\" --format json") == 0);
    OrderedJson j = OrderedJson::parse(cli().out());
    CHECK(j.at("parity") == "odd");
    CHECK(j.at("final_order") == 7);
    CHECK(j.at("stabilized") == true);

    auto dic_file = cli().path("dic2.json").string();
    CHECK(cli().run("spectrum --group Dic:2 --primes-window 500 -o \"" + dic_file + "\"") == 0);
    CHECK(cli().run("hear -i \"" + dic_file + "\"") == 0);
    OrderedJson jd = OrderedJson::parse(cli().out());
    CHECK(jd.at("parity") == "even");
    CHECK(jd.at("final_order") == 8);
}

TEST_CASE("truncated window exits 4 with a diagnostic") {
    auto file = cli().path("i50.json").string();
    CHECK(cli().run("spectrum --group 2I --primes-window 50 -o \"" + file + "\"") == 0);
    CHECK(cli().run("hear --input \"" + file + "\"") == 4);
    CHECK(cli().err().find("did not stabilize") != std::string::npos);
}

TEST_CASE("dims command prints one dimension per degree") {
    CHECK(cli().run("dims --group Dic:3 --max-degree 40") == 0);
    CHECK(count_lines(cli().out()) == 41);
    CHECK(cli().run("dims --group C:2 --max-degree 6 --format json") == 0);
    OrderedJson j = OrderedJson::parse(cli().out());
    CHECK(j.at("dims") == OrderedJson::array({1, 0, 3, 0, 5, 0, 7}));
}

TEST_CASE("embeddable command: verdicts and evidence") {
    CHECK(cli().run("embeddable --group C:5 --t 0.5,0 --max-degree 51 --format json") == 0);
    OrderedJson j = OrderedJson::parse(cli().out());
    CHECK(j.at("verdict") == "non-embeddable");
    auto& ladder = j.at("window_minima");
    REQUIRE(ladder.size() >= 2);
    double prev = 1e300;
    for (const auto& row : ladder) {
        double v = row.at("value").get<double>();
        CHECK(v < prev);
        prev = v;
    }
    CHECK(cli().run("embeddable --group 2T --t 0.3,0 --max-degree 16 --format json") == 0);
    OrderedJson je = OrderedJson::parse(cli().out());
    CHECK(je.at("verdict") == "embeddable");
    CHECK(je.at("gap_certified") == true);
    CHECK(je.at("gap_bound") == "21800/8281");  // 2 h(3/10)
}

TEST_CASE("gershgorin command prints the degree-8 rows with lower bounds >= 1") {
    CHECK(cli().run("gershgorin --degree 8 --t 0.5,0 --format json") == 0);
    OrderedJson j = OrderedJson::parse(cli().out());
    CHECK(j.at("rows").size() == 4);
    for (const auto& row : j.at("rows")) CHECK(row.at("lo").get<double>() >= 1.0);
    CHECK(j.at("all_rows_at_least_1") == true);
}

TEST_CASE("verify command: focused runs pass, unknown names are usage errors") {
    CHECK(cli().run("verify --only matching-eigenvalues --k-max 10") == 0);
    CHECK(cli().out().find("[PASS] matching-eigenvalues") != std::string::npos);
    CHECK(cli().run("verify --only formula-discrepancies") == 0);
    CHECK(cli().out().find("undercounts by 2") != std::string::npos);
    CHECK(cli().out().find("constant 12") != std::string::npos);
    CHECK(cli().run("verify --only no-such-property") == 2);
}

TEST_CASE("usage errors exit 2") {
    CHECK(cli().run("spectrum --group Q:9 --max-degree 4") == 2);
    CHECK(cli().run("spectrum --group C:2 --structure rossi --t 3/2,0 --max-degree 4") == 2);
    CHECK(cli().run("spectrum --group C:2") == 2);          // missing max-degree
    CHECK(cli().run("") == 2);                               // missing subcommand
    CHECK(cli().run("hear --input /nonexistent.json") == 2);
}

TEST_CASE("config file mirrors the flags") {
    auto cfg = cli().path("cfg.toml").string();
    std::ofstream(cfg) << "[spectrum]\ngroup = \"C:3\"\nmax-degree = 8\nformat = \"json\"\n";
    CHECK(cli().run("--config \"" + cfg + "\" spectrum") == 0);
    SpectrumTable S = spectrum_from_json_text(cli().out());
    CHECK(equal(S, standard_spectrum(make_group("C:3"), 8)));
}
