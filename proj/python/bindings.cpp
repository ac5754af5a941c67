#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "nanoie/condense.hpp"
#include "nanoie/consistency.hpp"
#include "nanoie/error.hpp"
#include "nanoie/lexicon.hpp"
#include "nanoie/metrics.hpp"
#include "nanoie/model.hpp"
#include "nanoie/reannotate.hpp"
#include "nanoie/version.hpp"

namespace py = pybind11;
using namespace nanoie;

namespace {

Table table_of(const std::string& name) {
  if (name == "matrix") return Table::matrix;
  if (name == "filler") return Table::filler;
  throw InvalidArgument("table must be 'matrix' or 'filler', got '" + name + "'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Material-sample extraction and evaluation core";
  m.attr("__version__") = std::string(kVersion);

  static py::exception<Error> base(m, "NanoieError");
  py::register_exception<FormatError>(m, "FormatError", base.ptr());
  py::register_exception<CompositionError>(m, "CompositionError", base.ptr());
  py::register_exception<LexiconError>(m, "LexiconError", base.ptr());
  py::register_exception<NotStandardized>(m, "NotStandardized", base.ptr());
  py::register_exception<InvalidArgument>(m, "InvalidArgument", base.ptr());

  py::class_<Sample>(m, "Sample")
      .def(py::init<>())
      .def_readwrite("matrix_name", &Sample::matrix_name)
      .def_readwrite("matrix_abbrev", &Sample::matrix_abbrev)
      .def_readwrite("filler_name", &Sample::filler_name)
      .def_readwrite("filler_abbrev", &Sample::filler_abbrev)
      .def_readwrite("mass_fraction", &Sample::mass_fraction)
      .def_readwrite("volume_fraction", &Sample::volume_fraction)
      .def_property_readonly("standardized", &Sample::standardized)
      .def("to_json", [](const Sample& s) { return to_record(s).dump(); })
      .def(py::self == py::self)
      .def("__repr__", [](const Sample& s) { return "Sample(" + to_record(s).dump() + ")"; });

  m.def("parse_gold_file", [](const std::string& text) {
    std::map<std::string, std::vector<Sample>> out;
    for (auto& l : parse_gold_file(text)) out.emplace(l.doc_id, std::move(l.samples));
    return out;
  });
  m.def(
      "parse_prediction_output",
      [](const std::string& text) {
        auto p = parse_prediction_output(text);
        return py::make_tuple(p.samples.samples, p.diagnostics);
      },
      "Records recovered from free-form model output, plus diagnostics.");

  py::class_<CanonicalLexicon>(m, "Lexicon")
      .def_static("load", [](const std::filesystem::path& p) { return CanonicalLexicon::load(p); })
      .def_static("from_json", &CanonicalLexicon::from_json)
      .def(
          "standardize_name",
          [](const CanonicalLexicon& lex, const std::string& surface, const std::string& table, bool abbreviation) {
            const auto r = standardize_name(surface, table_of(table), lex,
                                            abbreviation ? SlotKind::abbreviation : SlotKind::name);
            return py::make_tuple(r.value, r.canonical, r.score);
          },
          py::arg("surface"), py::arg("table"), py::arg("abbreviation") = false)
      .def("standardize_sample", [](const CanonicalLexicon& lex, const Sample& s) {
        auto r = standardize_sample(s, lex);
        return py::make_tuple(r.sample, r.diagnostics);
      });

  m.def("standardize_composition", &standardize_composition, py::arg("text"));

  m.def(
      "evaluate",
      [](const std::vector<Sample>& preds, const std::vector<Sample>& golds) {
        return to_json(evaluate_document(preds, golds)).dump();
      },
      py::arg("preds"), py::arg("golds"), "Metrics report for one document, as a JSON string.");
  m.def(
      "evaluate_corpus",
      [](const std::vector<std::pair<std::vector<Sample>, std::vector<Sample>>>& docs) {
        std::vector<MetricsReport> reports;
        for (const auto& [p, g] : docs) reports.push_back(evaluate_document(p, g));
        return to_json(corpus_metrics(reports)).dump();
      },
      py::arg("documents"));
  m.def(
      "assignment",
      [](const std::vector<Sample>& preds, const std::vector<Sample>& golds) {
        std::vector<std::tuple<std::size_t, std::size_t, int>> out;
        for (const auto& p : optimal_assignment(preds, golds).pairs) out.emplace_back(p.pred, p.gold, p.matched_slots);
        return out;
      },
      py::arg("preds"), py::arg("golds"), "(pred, gold, matched_slots) for every matched pair.");

  m.def(
      "vote",
      [](const std::vector<std::vector<Sample>>& lists, std::size_t alpha) {
        PredictionRun run{"", {}};
        for (const auto& l : lists) run.lists.push_back({"", l});
        return filter(vote(run), alpha).samples;
      },
      py::arg("runs"), py::arg("alpha"));

  m.def(
      "condense",
      [](const std::string& body, std::size_t k, std::optional<std::vector<std::string>> queries,
         std::size_t segment_tokens) {
        const QuerySet q = queries ? QuerySet{*queries} : QuerySet::defaults();
        const auto c = condense(Document("doc", body), q, k, LexicalBackend{}, segment_tokens);
        return py::make_tuple(c.document.body(), c.selected);
      },
      py::arg("body"), py::arg("k"), py::arg("queries") = py::none(), py::arg("segment_tokens") = kDefaultSegmentTokens);

  m.def(
      "triage_report",
      [](const std::string& doc_id, const std::vector<Sample>& golds, const std::vector<Sample>& raw_preds,
         const std::vector<Sample>& standardized_preds) {
        return render_report(triage(golds, raw_preds, standardized_preds), doc_id);
      },
      py::arg("doc_id"), py::arg("golds"), py::arg("raw_preds"), py::arg("standardized_preds"));
}
