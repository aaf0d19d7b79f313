#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nmu/classifier.hpp"
#include "nmu/io.hpp"
#include "nmu/oracle.hpp"

namespace py = pybind11;
using namespace nmu;

namespace {

ChainCover to_cover(const std::vector<std::vector<int>>& chains) {
    ChainCover c;
    for (const auto& ch : chains) c.chains.emplace_back(ch.begin(), ch.end());
    return c;
}

std::vector<std::vector<int>> from_cover(const ChainCover& c) {
    std::vector<std::vector<int>> out;
    for (const Chain& ch : c.chains) out.emplace_back(ch.begin(), ch.end());
    return out;
}

LabelingMode mode_of(const std::string& s) {
    if (s == "zeroone") return LabelingMode::ZeroOne;
    if (s == "perms") return LabelingMode::Permutations;
    throw py::value_error("mode must be 'zeroone' or 'perms'");
}

}  // namespace

PYBIND11_MODULE(_nmu, m) {
    m.doc() = "Non-messing-up property of finite posets (0-based element ids).";

    // Translators run newest first, so the base class goes first.
    const auto base = py::register_exception<Error>(m, "Error", PyExc_ValueError);
    py::register_exception<SizeLimitError>(m, "SizeLimitError", base);
    py::register_exception<InvalidCoverError>(m, "InvalidCoverError", base);

    py::class_<Poset>(m, "Poset")
        .def(py::init([](int n, const std::vector<std::pair<int, int>>& covers) {
                 std::vector<Cover> cv(covers.begin(), covers.end());
                 return Poset(n, cv);
             }),
             py::arg("n"), py::arg("covers"))
        .def_property_readonly("size", &Poset::size)
        .def_property_readonly("covers", [](const Poset& p) {
            return std::vector<std::pair<int, int>>(p.covers().begin(), p.covers().end());
        })
        .def("less", &Poset::less)
        .def("connected", &Poset::connected)
        .def("__len__", &Poset::size)
        .def("__eq__", [](const Poset& a, const Poset& b) { return a == b; })
        .def("__repr__", [](const Poset& p) { return "<Poset " + describe(p) + ">"; });

    m.def("grid_poset", &grid_poset, py::arg("rows"), py::arg("cols"));
    m.def("chain_poset", &chain_poset, py::arg("n"));
    m.def("parse_poset", [](const std::string& text) { return parse_poset(text).poset; });
    m.def("format_poset", &format_poset, py::arg("name"), py::arg("poset"));

    m.def("grid_cover_pair", [](int rows, int cols) {
        const CoverPair g = grid_cover_pair(rows, cols);
        return std::make_pair(from_cover(g.first), from_cover(g.second));
    });

    m.def(
        "chain_sort",
        [](const std::vector<std::vector<int>>& chains, const std::vector<int>& labels) {
            return chain_sort(to_cover(chains), labels);
        },
        py::arg("chains"), py::arg("labels"));

    m.def(
        "nmu_check",
        [](const Poset& p, const std::vector<std::vector<int>>& first, const std::vector<std::vector<int>>& second,
           const std::string& mode, int jobs) {
            NmuVerdict v;
            {
                py::gil_scoped_release release;
                v = nmu_check(p, CoverPair{to_cover(first), to_cover(second)}, mode_of(mode), jobs);
            }
            py::dict out;
            out["holds"] = v.holds;
            out["labelings_checked"] = v.labelings_checked;
            out["reason"] = v.reason == VerdictReason::Holds          ? "holds"
                            : v.reason == VerdictReason::EdgeCoverage ? "edge_coverage"
                                                                      : "counterexample";
            if (v.counterexample) {
                out["labels"] = v.counterexample->labels;
                out["first_sorted"] = v.counterexample->first_sorted;
                out["edge"] = v.counterexample->edge;
            }
            return out;
        },
        py::arg("poset"), py::arg("first"), py::arg("second"), py::arg("mode") = "zeroone", py::arg("jobs") = 1);

    m.def("_classify_json", [](const Poset& p) {
        Classification c;
        {
            py::gil_scoped_release release;
            c = classify_N2(p);
        }
        return to_json(c).dump();
    });

    m.def(
        "brute_force_n2",
        [](const Poset& p, int max_elements) -> py::object {
            BruteForceResult r;
            {
                py::gil_scoped_release release;
                r = brute_force_N2(p, max_elements);
            }
            if (!r.witness) return py::none();
            return py::cast(std::make_pair(from_cover(r.witness->first), from_cover(r.witness->second)));
        },
        py::arg("poset"), py::arg("max_elements") = 7);

    m.def("canonical_key", [](const Poset& p) { return key_hex(canonical_form(p).key); });
    m.def("enumerate_posets", [](int max_n, bool connected_only) {
        std::vector<Poset> out;
        for (auto& c : enumerate_posets(max_n, connected_only)) out.push_back(std::move(c.poset));
        return out;
    }, py::arg("max_n"), py::arg("connected_only") = false);

    m.def(
        "_oracle_json",
        [](int max_n, bool connected_only, int jobs) {
            OracleOptions o;
            o.max_n = max_n;
            o.connected_only = connected_only;
            o.jobs = jobs;
            o.variants = true;
            OracleReport r;
            {
                py::gil_scoped_release release;
                r = oracle_compare(o);
            }
            return std::make_pair(records_jsonl(r), summary_json(r, o).dump());
        },
        py::arg("max_n"), py::arg("connected_only") = false, py::arg("jobs") = 1);
}
