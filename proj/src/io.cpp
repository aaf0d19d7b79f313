#include "nmu/io.hpp"

#include <fstream>
#include <sstream>

namespace nmu {

using nlohmann::json;

ParseError::ParseError(int line, const std::string& msg)
    : Error("line " + std::to_string(line) + ": " + msg), line_(line) {}

namespace {

std::vector<std::string> tokens_of(const std::string& raw) {
    std::string line = raw.substr(0, raw.find('#'));
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream ss(line);
    std::vector<std::string> out;
    for (std::string t; ss >> t;) out.push_back(t);
    return out;
}

long long parse_int(const std::string& s, int line) {
    std::size_t used = 0;
    long long v = 0;
    try {
        v = std::stoll(s, &used);
    } catch (const std::exception&) {
        throw ParseError(line, "expected an integer, got '" + s + "'");
    }
    if (used != s.size()) throw ParseError(line, "expected an integer, got '" + s + "'");
    return v;
}

Element parse_id(const std::string& s, int n, int line) {
    const long long v = parse_int(s, line);
    if (v < 1 || v > n) throw ParseError(line, "element " + s + " outside 1.." + std::to_string(n));
    return static_cast<Element>(v - 1);
}

std::ifstream open(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    return in;
}

}  // namespace

PosetFile parse_poset(std::istream& in) {
    PosetFile out;
    int n = -1;
    bool named = false;
    std::vector<Cover> covers;
    std::vector<int> cover_line;
    int lineno = 0;
    for (std::string raw; std::getline(in, raw);) {
        ++lineno;
        const auto tok = tokens_of(raw);
        if (tok.empty()) continue;
        if (tok[0] == "poset") {
            if (named) throw ParseError(lineno, "second 'poset' header");
            if (tok.size() != 2) throw ParseError(lineno, "expected 'poset <name>'");
            out.name = tok[1];
            named = true;
        } else if (tok[0] == "elements") {
            if (!named) throw ParseError(lineno, "'elements' before 'poset' header");
            if (n >= 0) throw ParseError(lineno, "second 'elements' line");
            if (tok.size() != 2) throw ParseError(lineno, "expected 'elements <n>'");
            const long long v = parse_int(tok[1], lineno);
            if (v < 0) throw ParseError(lineno, "negative element count");
            if (v > kMaxElements)
                throw ParseError(lineno, "at most " + std::to_string(kMaxElements) + " elements supported");
            n = static_cast<int>(v);
        } else if (tok[0] == "cover") {
            if (n < 0) throw ParseError(lineno, "'cover' before 'elements'");
            if (tok.size() != 3) throw ParseError(lineno, "expected 'cover <u> <v>'");
            covers.emplace_back(parse_id(tok[1], n, lineno), parse_id(tok[2], n, lineno));
            cover_line.push_back(lineno);
        } else {
            throw ParseError(lineno, "unknown keyword '" + tok[0] + "'");
        }
    }
    if (!named) throw ParseError(lineno, "missing 'poset <name>' header");
    if (n < 0) throw ParseError(lineno, "missing 'elements <n>' line");
    // Report the first cover whose addition makes the list invalid.
    try {
        out.poset = Poset(n, covers);
    } catch (const Error&) {
        for (std::size_t t = 1; t <= covers.size(); ++t) {
            try {
                Poset(n, std::span<const Cover>(covers.data(), t));
            } catch (const Error& e) {
                throw ParseError(cover_line[t - 1], e.what());
            }
        }
        throw;
    }
    return out;
}

PosetFile parse_poset(const std::string& text) {
    std::istringstream in(text);
    return parse_poset(in);
}

PosetFile read_poset_file(const std::string& path) {
    auto in = open(path);
    return parse_poset(in);
}

std::string format_poset(const std::string& name, const Poset& p) {
    std::ostringstream out;
    out << "poset " << (name.empty() ? "unnamed" : name) << "\n";
    out << "elements " << p.size() << "\n";
    for (auto [u, v] : p.covers()) out << "cover " << u + 1 << " " << v + 1 << "\n";
    return out.str();
}

CoverPairFile parse_cover_pair(std::istream& in, const Poset& p) {
    CoverPairFile out;
    ChainCover* cur = nullptr;
    int blocks = 0;
    bool separated = false;
    int lineno = 0;
    for (std::string raw; std::getline(in, raw);) {
        ++lineno;
        const auto tok = tokens_of(raw);
        if (tok.empty()) continue;
        if (tok[0] == "---") {
            if (blocks != 1 || separated) throw ParseError(lineno, "'---' must separate exactly two blocks");
            separated = true;
        } else if (tok[0] == "cover") {
            if (tok.size() != 2) throw ParseError(lineno, "expected 'cover <name>'");
            if (blocks == 0) {
                out.first_name = tok[1];
                cur = &out.pair.first;
            } else if (blocks == 1 && separated) {
                out.second_name = tok[1];
                cur = &out.pair.second;
            } else {
                throw ParseError(lineno, "expected '---' before the second block");
            }
            ++blocks;
        } else if (tok[0] == "chain") {
            if (!cur) throw ParseError(lineno, "'chain' before 'cover <name>'");
            if (tok.size() < 2) throw ParseError(lineno, "empty chain");
            Chain c;
            for (std::size_t t = 1; t < tok.size(); ++t) c.push_back(parse_id(tok[t], p.size(), lineno));
            cur->chains.push_back(std::move(c));
        } else {
            throw ParseError(lineno, "unknown keyword '" + tok[0] + "'");
        }
    }
    if (blocks != 2) throw ParseError(lineno, "expected two cover blocks");
    return out;
}

CoverPairFile parse_cover_pair(const std::string& text, const Poset& p) {
    std::istringstream in(text);
    return parse_cover_pair(in, p);
}

CoverPairFile read_cover_pair_file(const std::string& path, const Poset& p) {
    auto in = open(path);
    return parse_cover_pair(in, p);
}

std::string format_cover_pair(const CoverPair& pair, const std::string& first_name,
                              const std::string& second_name) {
    std::ostringstream out;
    auto block = [&](const std::string& name, const ChainCover& c) {
        out << "cover " << name << "\n";
        for (const Chain& chain : c.chains) {
            out << "chain";
            for (Element e : chain) out << " " << e + 1;
            out << "\n";
        }
    };
    block(first_name, pair.first);
    out << "---\n";
    block(second_name, pair.second);
    return out.str();
}

json to_json(const ChainCover& c) {
    json out = json::array();
    for (const Chain& chain : c.chains) {
        json ids = json::array();
        for (Element e : chain) ids.push_back(e + 1);
        out.push_back(std::move(ids));
    }
    return out;
}

json to_json(const CoverPair& pair) { return {{"red", to_json(pair.first)}, {"blue", to_json(pair.second)}}; }

json to_json(const Classification& c) {
    json out;
    out["n2"] = c.in_n2;
    out["n2_prime"] = c.in_n2_prime;
    out["n2_doubleprime"] = c.in_n2_doubleprime;
    out["witness"] = c.witness_pair ? to_json(*c.witness_pair) : json(nullptr);
    out["witness_verified"] = c.witness_verified ? json(*c.witness_verified) : json(nullptr);
    if (c.obstruction) {
        const Obstruction& o = *c.obstruction;
        json ob{{"kind", to_string(o.kind)}, {"component", o.component}, {"detail", o.detail}};
        ob["element"] = o.element >= 0 ? json(o.element + 1) : json(nullptr);
        if (o.violation) {
            const TcViolation& v = *o.violation;
            const Diamond& d = v.diamond;
            ob["diamond"] = {{"bottom", d.bottom + 1},
                             {"left", d.chain_a[1] + 1},
                             {"right", d.chain_b[1] + 1},
                             {"top", d.top + 1}};
            ob["split_sizes"] = {v.s_bottom, v.s_a, v.s_b, v.s_top};
        }
        out["obstruction"] = std::move(ob);
    } else {
        out["obstruction"] = nullptr;
    }
    out["notes"] = c.notes;
    return out;
}

json to_json(const OracleRecord& r, bool timings) {
    json covers = json::array();
    for (auto [u, v] : r.poset.covers()) covers.push_back({u + 1, v + 1});
    json out{{"key", r.key}, {"size", r.size}, {"connected", r.connected}, {"covers", std::move(covers)}};
    out["theorem"] = to_json(r.classification);
    json bf{{"n2", r.brute_n2}};
    bf["n2_prime"] = r.brute_n2_prime ? json(*r.brute_n2_prime) : json(nullptr);
    bf["n2_doubleprime"] = r.brute_n2_doubleprime ? json(*r.brute_n2_doubleprime) : json(nullptr);
    bf["witness"] = r.brute_witness ? to_json(*r.brute_witness) : json(nullptr);
    out["brute_force"] = std::move(bf);
    out["agree"] = r.agrees();
    if (timings) out["seconds"] = r.seconds;
    return out;
}

std::string records_jsonl(const OracleReport& report, bool timings) {
    std::string out;
    for (const OracleRecord& r : report.records) {
        out += to_json(r, timings).dump();
        out += '\n';
    }
    return out;
}

json summary_json(const OracleReport& report, const OracleOptions& options) {
    json by_size = json::object();
    int total = 0, n2 = 0, n2p = 0, n2pp = 0;
    for (const OracleRecord& r : report.records) {
        json& s = by_size[std::to_string(r.size)];
        if (s.is_null()) s = {{"posets", 0}, {"n2", 0}, {"n2_prime", 0}, {"n2_doubleprime", 0}};
        s["posets"] = s["posets"].get<int>() + 1;
        s["n2"] = s["n2"].get<int>() + (r.theorem_n2 ? 1 : 0);
        s["n2_prime"] = s["n2_prime"].get<int>() + (r.theorem_n2_prime ? 1 : 0);
        s["n2_doubleprime"] = s["n2_doubleprime"].get<int>() + (r.theorem_n2_doubleprime ? 1 : 0);
        ++total;
        n2 += r.theorem_n2;
        n2p += r.theorem_n2_prime;
        n2pp += r.theorem_n2_doubleprime;
    }
    json mismatches = json::array();
    for (std::size_t i : report.mismatches) mismatches.push_back(report.records[i].key);
    return {{"max_n", options.max_n},
            {"connected_only", options.connected_only},
            {"brute_force", options.brute_force},
            {"variants", options.variants},
            {"posets", total},
            {"n2", n2},
            {"n2_prime", n2p},
            {"n2_doubleprime", n2pp},
            {"by_size", std::move(by_size)},
            {"mismatches", std::move(mismatches)}};
}

ChainCover chain_cover_from_json(const json& j) {
    ChainCover c;
    for (const auto& ids : j) {
        Chain chain;
        for (const auto& e : ids) chain.push_back(e.get<int>() - 1);
        c.chains.push_back(std::move(chain));
    }
    return c;
}

CoverPair cover_pair_from_json(const json& j) {
    return {chain_cover_from_json(j.at("red")), chain_cover_from_json(j.at("blue"))};
}

OracleRecord record_from_json(const json& j) {
    OracleRecord r;
    r.key = j.at("key").get<std::string>();
    r.size = j.at("size").get<int>();
    r.connected = j.at("connected").get<bool>();
    std::vector<Cover> covers;
    for (const auto& c : j.at("covers")) covers.emplace_back(c.at(0).get<int>() - 1, c.at(1).get<int>() - 1);
    r.poset = Poset(r.size, covers);
    const json& th = j.at("theorem");
    r.theorem_n2 = r.classification.in_n2 = th.at("n2").get<bool>();
    r.theorem_n2_prime = r.classification.in_n2_prime = th.at("n2_prime").get<bool>();
    r.theorem_n2_doubleprime = r.classification.in_n2_doubleprime = th.at("n2_doubleprime").get<bool>();
    if (!th.at("witness").is_null()) r.classification.witness_pair = cover_pair_from_json(th.at("witness"));
    const json& bf = j.at("brute_force");
    r.brute_n2 = bf.at("n2").get<bool>();
    if (!bf.at("n2_prime").is_null()) r.brute_n2_prime = bf.at("n2_prime").get<bool>();
    if (!bf.at("n2_doubleprime").is_null()) r.brute_n2_doubleprime = bf.at("n2_doubleprime").get<bool>();
    if (!bf.at("witness").is_null()) r.brute_witness = cover_pair_from_json(bf.at("witness"));
    if (j.contains("seconds")) r.seconds = j.at("seconds").get<double>();
    return r;
}

}  // namespace nmu
