#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "ringlab/dsl.hpp"
#include "ringlab/error.hpp"
#include "ringlab/harness.hpp"

using namespace ringlab;

namespace {

std::vector<CorpusEntry> corpus_of(const std::string& text) {
    std::istringstream in(text);
    return load_corpus(in);
}

const CheckReport* find(const std::vector<CheckReport>& reports, const std::string& id, const std::string& ring) {
    for (const auto& r : reports) {
        if (r.id == id && r.ring == ring) return &r;
    }
    return nullptr;
}

std::vector<CorpusEntry> fixture(const std::string& name) {
    std::ifstream in(std::string(RINGLAB_FIXTURES) + "/" + name);
    REQUIRE(in);
    return load_corpus(in);
}

}  // namespace

TEST_CASE("default corpus") {
    auto all = default_corpus();
    CHECK(all.size() == 28);
    CHECK(all.front().spec == "Z2");
    CHECK(all.back().spec == "POLY(Z4)");
    auto small = default_corpus(100);
    bool has_q8 = std::any_of(small.begin(), small.end(), [](const CorpusEntry& e) { return e.spec == "Z3[Q8]"; });
    CHECK_FALSE(has_q8);
    bool has_zz = std::any_of(small.begin(), small.end(), [](const CorpusEntry& e) { return e.spec == "ZZ"; });
    CHECK(has_zz);
    for (const auto& e : all) CHECK(print(parse_ring(e.spec)) == e.spec);
}

TEST_CASE("corpus files") {
    auto c = corpus_of("# comment\n\n Z3xZ4 \nM2(Z2) | expect two_good=true, field=false\n");
    REQUIRE(c.size() == 2);
    CHECK(c[0].spec == "Z3 x Z4");
    REQUIRE(c[1].expectations.size() == 2);
    CHECK(c[1].expectations[1].key == "field");
    CHECK(c[1].expectations[1].value == "false");
    CHECK_THROWS_AS(corpus_of("Z2\nM2(\n"), ParseError);
    CHECK_THROWS_AS(corpus_of("Z2 | expect colour=red\n"), Error);
    CHECK_THROWS_AS(corpus_of("Z2 | want field=true\n"), Error);
    CHECK(corpus_of("Z3[Q8]\n").size() == 1);
    std::istringstream in("Z3[Q8]\nZ2\n");
    CHECK(load_corpus(in, 100).size() == 1);
}

TEST_CASE("unknown suite") {
    CHECK_THROWS_AS(run_suites(default_corpus(), {"NOPE"}), Error);
    CHECK(suite_ids().size() == 9);
}

TEST_CASE("suite examples") {
    auto reports = run_suites(corpus_of("T2(Z4)\nZ8\nM2(Z2)\nPOLY(Z4)\nPOLY(Z2)\nZZ\nZ12 x Z7\nZ2[C2]\n"), suite_ids());
    CHECK_FALSE(any_failed(reports));

    const auto* t = find(reports, "triang.split", "T2(Z4)");
    REQUIRE(t);
    CHECK(t->status == CheckStatus::Pass);
    CHECK(t->witness == "64 certificates, at most 2 summands");

    const auto* lift = find(reports, "nillift.frobenius-lift", "Z8");
    REQUIRE(lift);
    CHECK(lift->status == CheckStatus::Pass);

    const auto* probe = find(reports, "falsify.tpp-lemma", "M2(Z2)");
    REQUIRE(probe);
    CHECK(probe->status == CheckStatus::Data);
    CHECK(probe->note == "additively_2_torsion=true, tpp=true, characteristic=2, field=false");

    for (const char* ring : {"POLY(Z2)", "POLY(Z4)"}) {
        const auto* p = find(reports, "polyremark.t-not-additively-2-periodic", ring);
        REQUIRE(p);
        CHECK(p->status == CheckStatus::Pass);
    }
    const auto* k = find(reports, "falsify.uniform-k", "ZZ");
    REQUIRE(k);
    CHECK(k->status == CheckStatus::Data);

    for (const auto& r : reports) {
        if (r.suite == "PROBLEMS" || r.suite == "FALSIFY") CHECK(r.status != CheckStatus::Fail);
        if (r.suite == "PROBLEMS") CHECK((r.status == CheckStatus::Data || r.status == CheckStatus::Skip));
    }
    const auto* sweep = find(reports, "problems.potent3-potent4-sweep", "Z2..Z30, M2(Z2)");
    REQUIRE(sweep);
    CHECK(sweep->note.find("Z30 ") != std::string::npos);
}

TEST_CASE("report order") {
    auto reports = run_suites(corpus_of("Z4\nZ2\n"), {"TPP", "COMMUTE"});
    REQUIRE_FALSE(reports.empty());
    CHECK(reports.front().suite == "COMMUTE");
    CHECK(reports.front().ring == "Z4");
    CHECK(reports.back().suite == "TPP");
    CHECK(reports.back().ring == "Z2");
}

TEST_CASE("determinism across thread counts") {
    auto corpus = default_corpus(256);
    HarnessConfig one{256, 1};
    HarnessConfig four{256, 4};
    auto a = render_json(run_suites(corpus, {"NILLIFT", "COMMUTE", "TPP", "FALSIFY"}, one), one, false);
    auto b = render_json(run_suites(corpus, {"NILLIFT", "COMMUTE", "TPP", "FALSIFY"}, four), one, false);
    CHECK(a == b);
}

TEST_CASE("expectations") {
    auto failing = run_suites(fixture("failing_corpus.txt"), {"EXPECT"});
    CHECK(any_failed(failing));
    const auto* f = find(failing, "expect.two_good", "Z4");
    REQUIRE(f);
    CHECK(f->status == CheckStatus::Fail);
    CHECK(f->counterexample == "1");
    auto passing = run_suites(fixture("passing_corpus.txt"), {"EXPECT"});
    CHECK_FALSE(any_failed(passing));
    CHECK(passing.size() == 13);
}

TEST_CASE("rendering") {
    HarnessConfig config;
    auto empty = nlohmann::json::parse(render_json({}, config));
    CHECK(empty["checks"].empty());
    CHECK(empty["version"] == 1);

    CheckReport r;
    r.id = "x.y";
    r.suite = "X";
    r.ring = "Z2";
    r.witness = "w";
    r.millis = 1.5;
    auto doc = nlohmann::ordered_json::parse(render_json({r}, config));
    REQUIRE(doc["checks"].size() == 1);
    const auto& c = doc["checks"][0];
    CHECK(c["status"] == "pass");
    CHECK(c["witness"] == "w");
    CHECK(c["millis"] == 1.5);
    std::vector<std::string> keys;
    for (auto it = c.begin(); it != c.end(); ++it) keys.push_back(it.key());
    CHECK(keys == std::vector<std::string>{"id", "suite", "anchor", "ring", "status", "reason", "witness", "counterexample",
                                           "vacuity", "note", "millis"});
    CHECK_FALSE(nlohmann::json::parse(render_json({r}, config, false))["checks"][0].contains("millis"));

    CheckReport bad = r;
    bad.status = CheckStatus::Fail;
    CHECK(any_failed({r, bad}));
    CHECK_FALSE(any_failed({r}));
    std::string text = render_text({r, bad});
    CHECK(text.find("2 checks: 1 pass, 1 fail") != std::string::npos);
}
