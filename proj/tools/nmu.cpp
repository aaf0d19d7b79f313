// nmu: classify, verify and explore the non-messing-up property of posets.
//
// Exit codes: 0 ran to a verdict, 2 input error, 3 size guard,
// 4 internal invariant violation.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "nmu/classifier.hpp"
#include "nmu/io.hpp"
#include "nmu/oracle.hpp"
#include "nmu/sorting.hpp"

namespace fs = std::filesystem;
using namespace nmu;

namespace {

constexpr int kExitInput = 2;
constexpr int kExitSize = 3;
constexpr int kExitInternal = 4;

struct InternalError : std::logic_error {
    using std::logic_error::logic_error;
};

int default_jobs() {
    if (const char* env = std::getenv("NMU_JOBS")) {
        const int j = std::atoi(env);
        if (j > 0) return j;
    }
    return 1;
}

std::string ids(const Chain& c) {
    std::string s;
    for (Element e : c) s += (s.empty() ? "" : " ") + std::to_string(e + 1);
    return s;
}

void print_pair(std::ostream& out, const CoverPair& pair) {
    for (int i = 0; i < 2; ++i) {
        out << (i == 0 ? "  red: " : "  blue:");
        for (const Chain& c : pair[i].chains) out << " [" << ids(c) << "]";
        out << "\n";
    }
}

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    out << text;
}

// --- classify ---------------------------------------------------------------

struct ClassifyArgs {
    std::string file;
    std::string mode = "theorem";
    bool json = false;
    bool force = false;
};

int run_classify(const ClassifyArgs& a) {
    const PosetFile pf = read_poset_file(a.file);
    const Poset& p = pf.poset;
    const bool theorem = a.mode != "bruteforce";
    const bool brute = a.mode != "theorem";
    int brute_limit = 7;
    if (brute && p.size() > brute_limit) {
        if (!a.force || p.size() > 8)
            throw SizeLimitError("brute force is limited to 7 elements (8 with --force)");
        std::cerr << "warning: brute force on " << p.size() << " elements\n";
        brute_limit = 8;
    }
    OracleRecord r;
    r.size = p.size();
    r.poset = p;
    r.connected = p.connected();
    if (p.size() <= 8) r.key = key_hex(canonical_form(p).key);
    if (theorem) {
        r.classification = classify_N2(p);
        r.theorem_n2 = r.classification.in_n2;
        r.theorem_n2_prime = r.classification.in_n2_prime;
        r.theorem_n2_doubleprime = r.classification.in_n2_doubleprime;
        if (r.classification.witness_verified == false)
            throw InternalError("classifier witness fails the zero-one check");
    }
    if (brute) {
        const auto bf = brute_force_N2(p, brute_limit);
        r.brute_n2 = bf.found;
        r.brute_witness = bf.witness;
        r.brute_n2_prime = bf.found && brute_force_search(p, no_chain_containment, brute_limit).found;
        r.brute_n2_doubleprime = bf.found && brute_force_search(p, small_intersections, brute_limit).found;
    }

    if (a.json) {
        nlohmann::json j;
        j["name"] = pf.name;
        j["key"] = r.key;
        j["size"] = p.size();
        j["mode"] = a.mode;
        if (theorem) j["theorem"] = to_json(r.classification);
        if (brute)
            j["brute_force"] = {{"n2", r.brute_n2},
                                {"n2_prime", *r.brute_n2_prime},
                                {"n2_doubleprime", *r.brute_n2_doubleprime},
                                {"witness", r.brute_witness ? to_json(*r.brute_witness) : nlohmann::json(nullptr)}};
        if (theorem && brute) j["agree"] = r.agrees();
        std::cout << j.dump(2) << "\n";
        return 0;
    }

    std::cout << "poset " << pf.name << " (" << p.size() << " elements)\n";
    if (theorem) {
        const Classification& c = r.classification;
        std::cout << "theorem: n2 = " << std::boolalpha << c.in_n2 << ", n2' = " << c.in_n2_prime
                  << ", n2'' = " << c.in_n2_doubleprime << "\n";
        if (c.witness_pair) {
            std::cout << "witness:\n";
            print_pair(std::cout, *c.witness_pair);
        }
        if (c.obstruction) {
            const Obstruction& o = *c.obstruction;
            std::cout << "obstruction: " << to_string(o.kind) << " in component " << o.component;
            if (o.element >= 0) std::cout << " at element " << o.element + 1;
            std::cout << "\n  " << o.detail << "\n";
            if (o.violation) {
                const TcViolation& v = *o.violation;
                std::cout << "  diamond (reduced ids) " << v.diamond.bottom + 1 << " < " << v.diamond.chain_a[1] + 1
                          << ", " << v.diamond.chain_b[1] + 1 << " < " << v.diamond.top + 1 << " with split sizes "
                          << v.s_bottom << ", " << v.s_a << ", " << v.s_b << ", " << v.s_top << "\n";
            }
        }
        for (const auto& note : c.notes) std::cout << "note: " << note << "\n";
    }
    if (brute) {
        std::cout << "brute force: n2 = " << std::boolalpha << r.brute_n2 << ", n2' = " << *r.brute_n2_prime
                  << ", n2'' = " << *r.brute_n2_doubleprime << "\n";
        if (r.brute_witness) {
            std::cout << "first witness:\n";
            print_pair(std::cout, *r.brute_witness);
        }
    }
    if (theorem && brute) std::cout << (r.agrees() ? "agree\n" : "MISMATCH\n");
    return 0;
}

// --- verify -----------------------------------------------------------------

int run_verify(const std::string& poset_file, const std::string& pair_file, const std::string& labelings,
               int jobs) {
    const PosetFile pf = read_poset_file(poset_file);
    const CoverPairFile cf = read_cover_pair_file(pair_file, pf.poset);
    const LabelingMode mode = labelings == "perms" ? LabelingMode::Permutations : LabelingMode::ZeroOne;
    const NmuVerdict v = nmu_check(pf.poset, cf.pair, mode, jobs);
    std::cout << "labelings: " << to_string(mode) << " (" << v.labelings_checked << " checked)\n";
    if (v.holds) {
        std::cout << "holds\n";
        return 0;
    }
    if (v.reason == VerdictReason::EdgeCoverage) {
        std::cout << "fails: EdgeCoverage (some cover relation lies in neither chain cover)\n";
        return 0;
    }
    const Counterexample& c = *v.counterexample;
    const std::string first = c.first_sorted == 1 ? cf.first_name : cf.second_name;
    std::cout << "fails: Counterexample\n  labeling (";
    for (std::size_t e = 0; e < c.labels.size(); ++e) std::cout << (e ? "," : "") << c.labels[e];
    std::cout << ")\n  sorting '" << first << "' and then the other leaves " << c.edge.first + 1 << " < "
              << c.edge.second + 1 << " out of order\n";
    return 0;
}

// --- sort -------------------------------------------------------------------

struct SortArgs {
    std::string poset_file;
    std::string grid;
    std::string pair_file;
    std::string cover = "rows";
    std::string twice;
    std::string labels;
};

std::vector<int> parse_labels(const std::string& text, int n) {
    std::string s = text;
    for (char& ch : s)
        if (ch == ',') ch = ' ';
    std::istringstream in(s);
    std::vector<int> out;
    for (std::string t; in >> t;) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoi(t, &used));
            if (used != t.size()) throw std::invalid_argument(t);
        } catch (const std::exception&) {
            throw Error("label '" + t + "' is not an integer");
        }
    }
    if (static_cast<int>(out.size()) != n)
        throw Error("expected " + std::to_string(n) + " labels, got " + std::to_string(out.size()));
    return out;
}

void print_labels(const std::vector<int>& labels, int rows, int cols) {
    if (rows > 0) {
        for (int r = 0; r < rows; ++r) {
            for (int c = 0; c < cols; ++c) std::printf("%s%3d", c ? " " : "", labels[r * cols + c]);
            std::printf("\n");
        }
        return;
    }
    for (std::size_t e = 0; e < labels.size(); ++e) std::printf("%s%d", e ? " " : "", labels[e]);
    std::printf("\n");
}

int run_sort(const SortArgs& a) {
    Poset p;
    int rows = 0, cols = 0;
    std::optional<CoverPairFile> file_pair;
    if (!a.grid.empty()) {
        if (std::sscanf(a.grid.c_str(), "%dx%d", &rows, &cols) != 2 || rows < 1 || cols < 1)
            throw Error("--grid expects MxN, e.g. 3x4");
        if (rows * cols > kMaxElements) throw SizeLimitError("grid has more than 64 cells");
        p = grid_poset(rows, cols);
    } else if (!a.poset_file.empty()) {
        p = read_poset_file(a.poset_file).poset;
    } else {
        throw Error("give a poset file or --grid");
    }
    if (!a.pair_file.empty()) file_pair = read_cover_pair_file(a.pair_file, p);

    auto pick = [&](const std::string& name) -> ChainCover {
        if (name == "rows" || name == "columns") {
            if (rows == 0) throw Error("'" + name + "' needs --grid");
            const CoverPair g = grid_cover_pair(rows, cols);
            return name == "rows" ? g.first : g.second;
        }
        if (!file_pair) throw Error("cover '" + name + "' needs --pair");
        if (name == file_pair->first_name || name == "red") return file_pair->pair.first;
        if (name == file_pair->second_name || name == "blue") return file_pair->pair.second;
        throw Error("unknown cover '" + name + "'");
    };

    std::vector<int> labels;
    if (a.labels.empty()) {
        labels.resize(p.size());
        for (int e = 0; e < p.size(); ++e) labels[e] = e + 1;
    } else {
        labels = parse_labels(a.labels, p.size());
    }
    const ChainCover first = pick(a.cover);
    validate_chain_cover(p, first);
    std::printf("input:\n");
    print_labels(labels, rows, cols);
    auto once = chain_sort(first, labels);
    std::printf("after %s-sort:\n", a.cover.c_str());
    print_labels(once, rows, cols);
    if (!a.twice.empty()) {
        const ChainCover second = pick(a.twice);
        validate_chain_cover(p, second);
        auto both = chain_sort(second, once);
        std::printf("after %s-sort:\n", a.twice.c_str());
        print_labels(both, rows, cols);
        std::printf("%s still sorted: %s\n", a.cover.c_str(), is_sorted_along(first, both) ? "yes" : "no");
    }
    std::fflush(stdout);
    return 0;
}

// --- enumerate / oracle -----------------------------------------------------

int run_enumerate(int max_n, bool connected, const std::string& out_dir) {
    const auto posets = enumerate_posets(max_n, connected);
    if (!out_dir.empty()) fs::create_directories(out_dir);
    for (const auto& c : posets) {
        const std::string name = "p" + std::to_string(c.poset.size()) + "_" + key_hex(c.key);
        if (out_dir.empty()) {
            std::cout << name;
            for (auto [u, v] : c.poset.covers()) std::cout << " " << u + 1 << "<" << v + 1;
            std::cout << "\n";
        } else {
            write_file(fs::path(out_dir) / (name + ".poset"), format_poset(name, c.poset));
        }
    }
    std::cerr << posets.size() << " posets\n";
    return 0;
}

struct OracleArgs {
    int max_n = 6;
    bool connected = false;
    int jobs = 1;
    std::string out;
    bool timings = false;
    bool force = false;
};

int run_oracle(const OracleArgs& a) {
    if (a.max_n > 6) {
        if (!a.force) throw SizeLimitError("--max-n above 6 needs --force");
        std::cerr << "warning: oracle on posets with up to " << a.max_n << " elements\n";
    }
    OracleOptions o;
    o.max_n = a.max_n;
    o.connected_only = a.connected;
    o.jobs = a.jobs;
    o.variants = true;
    const OracleReport report = oracle_compare(o);
    const std::string summary = summary_json(report, o).dump(2) + "\n";
    if (a.out.empty()) {
        std::cout << summary;
    } else {
        fs::create_directories(a.out);
        write_file(fs::path(a.out) / "records.jsonl", records_jsonl(report, a.timings));
        write_file(fs::path(a.out) / "summary.json", summary);
        std::cerr << report.records.size() << " records, " << report.mismatches.size() << " mismatches\n";
    }
    return 0;
}

// --- sample -----------------------------------------------------------------

struct SampleArgs {
    std::string poset_file;
    std::string pair_file;
    std::uint64_t trials = 10000;
    std::uint64_t seed = 1;
    bool exhaustive = false;
    std::string out;
};

int run_sample(const SampleArgs& a) {
    const PosetFile pf = read_poset_file(a.poset_file);
    const CoverPairFile cf = read_cover_pair_file(a.pair_file, pf.poset);
    const auto h = sample_extension_distribution(pf.poset, cf.pair, a.trials, a.seed, a.exhaustive);
    std::ostringstream csv;
    csv << "extension,count,frequency\n";
    char freq[32];
    for (const auto& [ranking, count] : h.counts) {
        for (std::size_t e = 0; e < ranking.size(); ++e) csv << (e ? " " : "") << ranking[e];
        std::snprintf(freq, sizeof freq, "%.6f", static_cast<double>(count) / static_cast<double>(h.trials));
        csv << "," << count << "," << freq << "\n";
    }
    if (a.out.empty())
        std::cout << csv.str();
    else
        write_file(a.out, csv.str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Non-messing-up property of finite posets"};
    app.require_subcommand(1);

    ClassifyArgs ca;
    auto* classify = app.add_subcommand("classify", "Decide N2, N2' and N2'' for a poset file");
    classify->add_option("poset", ca.file, "Poset file")->required();
    classify->add_option("--mode", ca.mode, "theorem, bruteforce or both")
        ->check(CLI::IsMember({"theorem", "bruteforce", "both"}));
    classify->add_flag("--json", ca.json, "Print a JSON record");
    classify->add_flag("--force", ca.force, "Allow brute force on 8 elements");

    std::string vposet, vpair, vlab = "zeroone";
    int vjobs = default_jobs();
    auto* verify = app.add_subcommand("verify", "Check a cover pair against the definition");
    verify->add_option("poset", vposet, "Poset file")->required();
    verify->add_option("pair", vpair, "Cover pair file")->required();
    verify->add_option("--labelings", vlab, "perms or zeroone")->check(CLI::IsMember({"perms", "zeroone"}));
    verify->add_option("--jobs", vjobs, "Worker threads (default $NMU_JOBS or 1)")->check(CLI::PositiveNumber);

    SortArgs sa;
    auto* sort = app.add_subcommand("sort", "Sort a labeling along one cover, optionally then another");
    sort->add_option("poset", sa.poset_file, "Poset file");
    sort->add_option("--grid", sa.grid, "Use the MxN grid instead of a poset file");
    sort->add_option("--pair", sa.pair_file, "Cover pair file naming the covers");
    sort->add_option("--cover", sa.cover, "rows, columns, red, blue, or a cover name from --pair");
    sort->add_option("--twice", sa.twice, "Cover to sort along second");
    sort->add_option("--labels", sa.labels, "Labels by element id (row-major for grids)");

    int emax = 4;
    bool econn = false;
    std::string eout;
    auto* enumerate = app.add_subcommand("enumerate", "List posets up to isomorphism");
    enumerate->add_option("--max-n", emax, "Largest size (at most 8)")->check(CLI::Range(1, 8));
    enumerate->add_flag("--connected", econn, "Connected posets only");
    enumerate->add_option("--out", eout, "Directory for one poset file per class");

    OracleArgs oa;
    oa.jobs = default_jobs();
    auto* oracle = app.add_subcommand("oracle", "Compare the classifier with brute force on all small posets");
    oracle->add_option("--max-n", oa.max_n, "Largest size")->check(CLI::Range(1, 8));
    oracle->add_flag("--connected", oa.connected, "Connected posets only");
    oracle->add_option("--jobs", oa.jobs, "Worker threads (default $NMU_JOBS or 1)")->check(CLI::PositiveNumber);
    oracle->add_option("--out", oa.out, "Directory for records.jsonl and summary.json");
    oracle->add_flag("--timings", oa.timings, "Include per-poset seconds in records");
    oracle->add_flag("--force", oa.force, "Allow --max-n 7");

    SampleArgs pa;
    auto* sample = app.add_subcommand("sample", "Histogram of double-sorted labelings");
    sample->add_option("poset", pa.poset_file, "Poset file")->required();
    sample->add_option("pair", pa.pair_file, "Cover pair file")->required();
    sample->add_option("--trials", pa.trials, "Random labelings to draw");
    sample->add_option("--seed", pa.seed, "Seed");
    sample->add_flag("--exhaustive", pa.exhaustive, "Use every labeling instead of sampling");
    sample->add_option("--out", pa.out, "CSV output file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitInput;
    }

    try {
        if (classify->parsed()) return run_classify(ca);
        if (verify->parsed()) return run_verify(vposet, vpair, vlab, vjobs);
        if (sort->parsed()) return run_sort(sa);
        if (enumerate->parsed()) return run_enumerate(emax, econn, eout);
        if (oracle->parsed()) return run_oracle(oa);
        if (sample->parsed()) return run_sample(pa);
    } catch (const SizeLimitError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSize;
    } catch (const InternalError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitInternal;
}
