#pragma once

#include <cstdint>
#include <istream>
#include <string>
#include <vector>

#include "ringlab/descriptor.hpp"
#include "ringlab/ring.hpp"

namespace ringlab {

enum class CheckStatus { Pass, Fail, Skip, Data };

std::string to_string(CheckStatus s);

/// One harness check on one ring.
struct CheckReport {
    std::string id;
    std::string suite;
    /// Short statement of the claim being checked.
    std::string anchor;
    std::string ring;
    CheckStatus status = CheckStatus::Pass;
    /// Why a check was skipped or failed.
    std::string reason;
    std::string witness;
    std::string counterexample;
    /// The claim holds trivially at finite scale; the check still runs.
    bool vacuity = false;
    /// Measured facts for data checks.
    std::string note;
    double millis = 0;
};

/// "key=value" assertion about a ring's profile, from a corpus file.
struct Expectation {
    std::string key;
    std::string value;
};

struct CorpusEntry {
    RingDescriptor descriptor;
    std::string spec;
    std::vector<Expectation> expectations;
};

struct HarnessConfig {
    std::uint64_t max_size = kDefaultEnumerationCap;
    /// 0 picks the hardware concurrency.
    unsigned threads = 0;
};

/// The built-in corpus, dropping finite rings larger than max_size.
std::vector<CorpusEntry> default_corpus(std::uint64_t max_size = kDefaultEnumerationCap);

/// One ring per line: "<spec>" or "<spec> | expect key=value, key=value". Blank lines and lines starting with
/// '#' are ignored. Throws ParseError or SemanticError with the line number in the message.
std::vector<CorpusEntry> load_corpus(std::istream& in, std::uint64_t max_size = kDefaultEnumerationCap);

/// Keys accepted in corpus expectations.
const std::vector<std::string>& expectation_keys();

/// NILLIFT, TRIANG, COMMUTE, GROUPRING, TPP, POLYREMARK, PROBLEMS, FALSIFY, EXPECT.
const std::vector<std::string>& suite_ids();

/// Reports ordered by suite, then corpus position, then check id. Engine errors inside a check become skips.
/// Throws SemanticError for an unknown suite id.
std::vector<CheckReport> run_suites(const std::vector<CorpusEntry>& corpus, const std::vector<std::string>& suites,
                                    const HarnessConfig& config = {});

bool any_failed(const std::vector<CheckReport>& reports);

std::string render_text(const std::vector<CheckReport>& reports);

/// Stable-keyed JSON document; millis are written only when with_durations is set.
std::string render_json(const std::vector<CheckReport>& reports, const HarnessConfig& config, bool with_durations = true);

}  // namespace ringlab
