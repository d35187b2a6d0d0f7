// ringlab command-line front end.

#include <fmt/format.h>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "ringlab/census.hpp"
#include "ringlab/construct.hpp"
#include "ringlab/decompose.hpp"
#include "ringlab/dsl.hpp"
#include "ringlab/error.hpp"
#include "ringlab/harness.hpp"
#include "ringlab/properties.hpp"

using namespace ringlab;
using nlohmann::ordered_json;

namespace {

constexpr int kUsageError = 2;

std::uint64_t env_max_size() {
    if (const char* v = std::getenv("RINGLAB_MAX_SIZE")) {
        try {
            return std::stoull(v);
        } catch (const std::exception&) {
            throw CLI::ValidationError("RINGLAB_MAX_SIZE", fmt::format("not a number: {}", v));
        }
    }
    return kDefaultEnumerationCap;
}

std::vector<ElementClass> parse_classes(const std::string& list) {
    std::vector<ElementClass> out;
    std::stringstream in(list);
    std::string item;
    while (std::getline(in, item, ',')) out.push_back(ElementClass::parse(item));
    return out;
}

std::string flag_line(const std::string& name, const Flag& f) {
    return fmt::format("  {:<22} {:<5} {}", name, f.value ? "yes" : "no", f.evidence);
}

ordered_json flag_json(const Flag& f) {
    return ordered_json{{"value", f.value}, {"evidence", f.evidence}};
}

int cmd_parse(const std::string& spec) {
    std::cout << print(parse_ring(spec)) << "\n";
    return 0;
}

int cmd_analyze(const std::string& spec, const std::string& format, std::uint64_t max_size) {
    RingPtr ring = construct(parse_ring(spec), max_size);
    RingProfile p = profile(ring);
    std::optional<Census> c;
    if (ring->is_finite()) c = census(ring->finite(), 0);
    if (format == "json") {
        ordered_json doc;
        doc["ring"] = p.ring;
        doc["size"] = p.size ? ordered_json(*p.size) : ordered_json(nullptr);
        doc["characteristic"] = ring->characteristic();
        doc["commutative"] = p.commutative;
        if (c) {
            doc["census"] = ordered_json{{"units", c->units.count},         {"torsion_units", c->torsion_units.count},
                                         {"nilpotents", c->nilpotents.count}, {"idempotents", c->idempotents.count},
                                         {"potents", c->potents.count},       {"periodic", c->periodic.count}};
        }
        ordered_json flags;
        flags["field"] = flag_json(p.field);
        flags["periodic"] = flag_json(p.periodic);
        flags["weakly_periodic"] = flag_json(p.weakly_periodic);
        flags["additively_periodic"] = flag_json(p.additively_periodic);
        flags["has_tpp"] = flag_json(p.has_tpp);
        flags["has_strong_tpp"] = flag_json(p.has_strong_tpp);
        flags["strong_tpp_complete"] = p.strong_tpp_complete;
        flags["two_good"] = flag_json(p.two_good);
        flags["unit_group_torsion"] = flag_json(p.unit_group_torsion);
        doc["profile"] = flags;
        ordered_json additive = ordered_json::array();
        for (const auto& a : p.additively_k) {
            additive.push_back({{"class", to_string(a.cls)}, {"k", a.k}, {"value", a.flag.value}, {"evidence", a.flag.evidence}});
        }
        doc["additively_k"] = additive;
        std::cout << doc.dump(2) << "\n";
        return 0;
    }
    std::cout << fmt::format("{}: {}, characteristic {}{}\n", p.ring, p.size ? fmt::format("{} elements", *p.size) : "infinite",
                             ring->characteristic(), p.commutative ? ", commutative" : "");
    if (c) {
        std::cout << fmt::format("  units {}, torsion units {}, nilpotents {}, idempotents {}, potents {}, periodic {}\n",
                                 c->units.count, c->torsion_units.count, c->nilpotents.count, c->idempotents.count,
                                 c->potents.count, c->periodic.count);
    }
    std::cout << flag_line("field", p.field) << "\n"
              << flag_line("periodic", p.periodic) << "\n"
              << flag_line("weakly periodic", p.weakly_periodic) << "\n"
              << flag_line("additively periodic", p.additively_periodic) << "\n";
    for (const auto& a : p.additively_k) {
        std::cout << flag_line(fmt::format("{} x {}", a.k, to_string(a.cls)), a.flag) << "\n";
    }
    std::cout << flag_line("t.p.p", p.has_tpp) << "\n"
              << flag_line("strongly t.p.p", p.has_strong_tpp) << "\n"
              << flag_line("2-good", p.two_good) << "\n"
              << flag_line("torsion unit group", p.unit_group_torsion) << "\n";
    return 0;
}

int cmd_element(const std::string& spec, const std::string& literal, bool orbit, bool split, bool classify_it,
                std::uint64_t max_size) {
    RingPtr ring = construct(parse_ring(spec), max_size);
    Element x = parse_element(*ring, literal);
    if (!orbit && !split && !classify_it) orbit = split = classify_it = true;
    std::cout << print(*ring, x) << " in " << ring->name() << "\n";
    if (orbit) {
        OrbitWitness w = orbit_witness(*ring, x);
        std::cout << fmt::format("  orbit: index {}, period {} (x^{} = x^{})\n", w.index, w.period, w.index + w.period, w.index);
    }
    if (classify_it) {
        ClassRecord c = classify(*ring, x);
        std::vector<std::string> tags;
        if (c.potent_exponent) tags.push_back(fmt::format("potent (x^{} = x)", *c.potent_exponent));
        if (c.nilpotency_index) tags.push_back(fmt::format("nilpotent (x^{} = 0)", *c.nilpotency_index));
        if (c.idempotent) tags.push_back("idempotent");
        if (c.unit_order) tags.push_back(fmt::format("torsion unit of order {}", *c.unit_order));
        if (c.involution) tags.push_back("involution");
        std::string joined;
        for (std::size_t i = 0; i < tags.size(); ++i) joined += (i ? ", " : "") + tags[i];
        std::cout << "  classes: periodic" << (joined.empty() ? "" : ", " + joined) << "\n";
    }
    if (split) {
        auto cert = weak_split(*ring, x);
        auto v = verify_certificate(*ring, cert);
        std::cout << "  split: " << serialize(*ring, cert) << (v.ok ? "" : " (INVALID: " + v.reason + ")") << "\n";
    }
    return 0;
}

int cmd_decompose(const std::string& spec, const std::string& literal, const std::string& classes, bool commuting,
                  const std::string& rank_class, std::uint64_t rank_cap, std::uint64_t max_size) {
    RingPtr ring = construct(parse_ring(spec), max_size);
    Element x = parse_element(*ring, literal);
    if (!rank_class.empty()) {
        RankResult r = additive_rank(*ring, x, ElementClass::parse(rank_class), rank_cap);
        if (!r.rank) {
            std::cout << fmt::format("rank: EXCEEDS({})\n", r.cap);
            return 0;
        }
        std::cout << fmt::format("rank: {}\n", *r.rank);
        std::cout << serialize(*ring, *r.certificate) << "\n";
        return 0;
    }
    if (classes.empty()) throw CLI::ValidationError("--classes", "give --classes or --rank");
    auto cert = sum_search(*ring, x, parse_classes(classes), commuting);
    if (!cert) {
        std::cout << "NONE\n";
        return 0;
    }
    auto v = verify_certificate(*ring, *cert);
    std::cout << serialize(*ring, *cert) << (v.ok ? "" : " (INVALID: " + v.reason + ")") << "\n";
    return v.ok ? 0 : 1;
}

int cmd_verify(const std::string& corpus_file, const std::vector<std::string>& suites, const std::string& format,
               std::uint64_t max_size, unsigned threads, bool no_durations) {
    HarnessConfig config;
    config.max_size = max_size;
    config.threads = threads;
    std::vector<CorpusEntry> corpus;
    if (corpus_file.empty()) {
        corpus = default_corpus(max_size);
    } else {
        std::ifstream in(corpus_file);
        if (!in) throw CLI::ValidationError("--corpus", fmt::format("cannot read {}", corpus_file));
        corpus = load_corpus(in, max_size);
    }
    std::vector<std::string> ids;
    for (const auto& s : suites) {
        std::stringstream in(s);
        std::string item;
        while (std::getline(in, item, ',')) {
            if (!item.empty()) ids.push_back(item);
        }
    }
    if (ids.empty()) ids = suite_ids();
    auto reports = run_suites(corpus, ids, config);
    std::cout << (format == "json" ? render_json(reports, config, !no_durations) : render_text(reports));
    return any_failed(reports) ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ringlab: periodic rings and additive decompositions"};
    app.require_subcommand(1);
    app.set_version_flag("--version", RINGLAB_VERSION);

    std::string spec, literal, format = "text", classes, rank_class, corpus_file;
    std::vector<std::string> suites;
    std::uint64_t max_size = 0, rank_cap = 4;
    unsigned threads = 0;
    bool orbit = false, split = false, classify_it = false, commuting = false, no_durations = false;

    auto* parse = app.add_subcommand("parse", "Echo a ring spec in canonical form");
    parse->add_option("spec", spec, "Ring spec")->required();

    auto* analyze = app.add_subcommand("analyze", "Census and property profile of a ring");
    analyze->add_option("spec", spec, "Ring spec")->required();
    analyze->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));

    auto* element = app.add_subcommand("element", "Orbit, classes and potent + nilpotent split of an element");
    element->add_option("spec", spec, "Ring spec")->required();
    element->add_option("literal", literal, "Element literal")->required();
    element->add_flag("--orbit", orbit, "Orbit witness");
    element->add_flag("--split", split, "Weak split");
    element->add_flag("--classify", classify_it, "Element classes");

    auto* decompose = app.add_subcommand("decompose", "Search for a sum of class members");
    decompose->add_option("spec", spec, "Ring spec")->required();
    decompose->add_option("literal", literal, "Element literal")->required();
    decompose->add_option("--classes", classes, "Comma-separated summand classes");
    decompose->add_flag("--commuting", commuting, "Require pairwise commuting summands");
    decompose->add_option("--rank", rank_class, "Least number of summands from one class");
    decompose->add_option("--rank-cap", rank_cap, "Largest rank to try")->check(CLI::PositiveNumber);

    auto* verify = app.add_subcommand("verify", "Run harness suites over a corpus");
    verify->add_option("--corpus", corpus_file, "Corpus file, one ring spec per line");
    verify->add_option("--suite", suites, "Suite ids (comma-separated or repeated)");
    verify->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
    verify->add_option("--threads", threads, "Worker threads (0 = hardware)");
    verify->add_flag("--no-durations", no_durations, "Omit per-check timings from JSON");

    for (auto* sub : {analyze, element, decompose, verify}) {
        sub->add_option("--max-size", max_size, "Enumeration cap (default RINGLAB_MAX_SIZE or 20000)")
            ->check(CLI::PositiveNumber);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kUsageError;
    }

    try {
        if (max_size == 0) max_size = env_max_size();
        if (parse->parsed()) return cmd_parse(spec);
        if (analyze->parsed()) return cmd_analyze(spec, format, max_size);
        if (element->parsed()) return cmd_element(spec, literal, orbit, split, classify_it, max_size);
        if (decompose->parsed()) return cmd_decompose(spec, literal, classes, commuting, rank_class, rank_cap, max_size);
        if (verify->parsed()) return cmd_verify(corpus_file, suites, format, max_size, threads, no_durations);
    } catch (const ParseError& e) {
        std::cerr << "ringlab: " << e.what();
        if (!e.expected().empty()) std::cerr << " (expected " << e.expected() << ")";
        std::cerr << "\n";
        return kUsageError;
    } catch (const CLI::Error& e) {
        std::cerr << "ringlab: " << e.what() << "\n";
        return kUsageError;
    } catch (const Error& e) {
        std::cerr << "ringlab: " << e.what() << "\n";
        return e.code() == ErrorCode::SemanticError || e.code() == ErrorCode::WrongShape ? kUsageError : 1;
    }
    return kUsageError;
}
