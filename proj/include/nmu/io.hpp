#pragma once

// Text formats for posets and cover pairs, and JSON records for results.
//
// Poset file:            Cover pair file:
//   poset <name>           cover <name>
//   elements <n>           chain <e1> <e2> ...
//   cover <u> <v>          ---
//                          cover <name>
//                          chain ...
// Ids in files are 1-based; '#' starts a comment.

#include <istream>
#include <string>

#include <json.hpp>

#include "nmu/classifier.hpp"
#include "nmu/oracle.hpp"
#include "nmu/poset.hpp"
#include "nmu/sorting.hpp"

namespace nmu {

class ParseError : public Error {
public:
    ParseError(int line, const std::string& msg);
    int line() const { return line_; }

private:
    int line_;
};

struct PosetFile {
    std::string name;
    Poset poset;
};

struct CoverPairFile {
    std::string first_name;
    std::string second_name;
    CoverPair pair;
};

// Structural problems (unknown keyword, bad ids, duplicate covers, cycles)
// are reported as ParseError with the offending line.
PosetFile parse_poset(std::istream& in);
PosetFile parse_poset(const std::string& text);
PosetFile read_poset_file(const std::string& path);
std::string format_poset(const std::string& name, const Poset& p);

// Chain validation against p is left to the caller (validate_chain_cover),
// so that verification reports the sorting module's own errors.
CoverPairFile parse_cover_pair(std::istream& in, const Poset& p);
CoverPairFile parse_cover_pair(const std::string& text, const Poset& p);
CoverPairFile read_cover_pair_file(const std::string& path, const Poset& p);
std::string format_cover_pair(const CoverPair& pair, const std::string& first_name = "red",
                              const std::string& second_name = "blue");

nlohmann::json to_json(const ChainCover& c);
nlohmann::json to_json(const CoverPair& pair);
nlohmann::json to_json(const Classification& c);
// `seconds` is written only when timings is set so that records do not
// depend on the machine.
nlohmann::json to_json(const OracleRecord& r, bool timings = false);

// One compact record per line, in canonical order.
std::string records_jsonl(const OracleReport& report, bool timings = false);
// Counts per verdict and the keys of mismatching records. Independent of
// the number of workers.
nlohmann::json summary_json(const OracleReport& report, const OracleOptions& options);

ChainCover chain_cover_from_json(const nlohmann::json& j);
CoverPair cover_pair_from_json(const nlohmann::json& j);
// Restores key, poset and verdicts; the classification keeps only its flags.
OracleRecord record_from_json(const nlohmann::json& j);

}  // namespace nmu
