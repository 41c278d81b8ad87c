#pragma once

#include "qdx/parser.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace qdx {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitParse = 1;
inline constexpr int kExitCapacity = 2;
inline constexpr int kExitVerification = 3;
inline constexpr int kExitMissingModel = 4;

// Bundled selftest corpus: embedded fixture files plus seeded property
// suites.  Every entry carries a provenance note.
struct CorpusEntry {
    std::string name;
    std::string note;
    bool randomized = false;
};
std::vector<CorpusEntry> corpus_entries();

// Embedded fixture file texts (name, contents), as shipped in fixtures/.
const std::vector<std::pair<const char*, const char*>>& corpus_fixture_texts();

// Runs one corpus entry; returns pass/fail and appends report lines.
bool run_corpus_entry(const std::string& name, unsigned long long seed, int max_degree,
                      const std::string& format, std::ostream& out);

// Verifies one parsed fixture (gates, main theorem, expected values,
// correspondence when present) and writes its report.
bool verify_fixture_and_report(const std::string& entry_name, const Environment::FixtureDecl& fd,
                               int max_degree, const std::string& format, std::ostream& out);

// Full argument-level entry point (argv without the program name).
int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace qdx
