#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <fstream>
#include <sstream>

#include "notespace/analysis.hpp"
#include "notespace/checkpoint.hpp"
#include "notespace/corpus.hpp"
#include "notespace/errors.hpp"
#include "notespace/midi.hpp"
#include "notespace/seqmodel.hpp"
#include "notespace/tsne.hpp"

namespace py = pybind11;
using namespace notespace;

namespace {

std::vector<std::vector<midi::NoteEvent>> parse_smf_bytes(const py::bytes& data) {
  std::string_view view = data;
  return midi::parse_smf(std::span<const std::uint8_t>(
      reinterpret_cast<const std::uint8_t*>(view.data()), view.size()));
}

}  // namespace

PYBIND11_MODULE(notespace, m) {
  m.doc() = "note and interval embeddings from monophonic MIDI";

  py::register_exception<Error>(m, "NotespaceError");

  py::class_<midi::NoteEvent>(m, "NoteEvent")
      .def(py::init<int, std::int64_t, std::int64_t>(), py::arg("pitch"),
           py::arg("onset_tick"), py::arg("duration_tick"))
      .def_readwrite("pitch", &midi::NoteEvent::pitch)
      .def_readwrite("onset_tick", &midi::NoteEvent::onset_tick)
      .def_readwrite("duration_tick", &midi::NoteEvent::duration_tick)
      .def("__eq__", [](const midi::NoteEvent& a, const midi::NoteEvent& b) { return a == b; })
      .def("__repr__", [](const midi::NoteEvent& e) {
        return "NoteEvent(pitch=" + std::to_string(e.pitch) +
               ", onset_tick=" + std::to_string(e.onset_tick) +
               ", duration_tick=" + std::to_string(e.duration_tick) + ")";
      });

  py::class_<midi::PitchSequence>(m, "PitchSequence")
      .def(py::init([](std::vector<int> pitches, std::string source_id) {
             return midi::PitchSequence{std::move(pitches), std::move(source_id)};
           }),
           py::arg("pitches"), py::arg("source_id") = "")
      .def_readwrite("pitches", &midi::PitchSequence::pitches)
      .def_readwrite("source_id", &midi::PitchSequence::source_id);

  m.def("parse_smf", &parse_smf_bytes, py::arg("data"),
        "Parse SMF bytes into per-track note event lists.");
  m.def(
      "to_monophonic",
      [](std::vector<midi::NoteEvent> events, std::string source_id) {
        auto result = midi::to_monophonic(std::move(events), std::move(source_id));
        return py::make_tuple(result.sequence, result.dropped_chord_notes);
      },
      py::arg("events"), py::arg("source_id") = "",
      "Flatten note events to (PitchSequence, dropped_chord_notes).");

  py::enum_<corpus::Variant>(m, "Variant")
      .value("control", corpus::Variant::control)
      .value("db12", corpus::Variant::db12)
      .value("interval", corpus::Variant::interval);

  py::class_<corpus::Vocabulary>(m, "Vocabulary")
      .def("__len__", &corpus::Vocabulary::size)
      .def("tokens", &corpus::Vocabulary::tokens)
      .def("token", &corpus::Vocabulary::token, py::arg("index"))
      .def("index_of", &corpus::Vocabulary::index_of, py::arg("token"))
      .def("contains", &corpus::Vocabulary::contains, py::arg("token"));

  py::class_<corpus::TrainingCorpus>(m, "TrainingCorpus")
      .def_readonly("variant", &corpus::TrainingCorpus::variant)
      .def_readonly("sequences", &corpus::TrainingCorpus::sequences)
      .def_readonly("vocabulary", &corpus::TrainingCorpus::vocabulary);

  m.def("build_control", &corpus::build_control, py::arg("pieces"));
  m.def(
      "build_db12",
      [](const std::vector<midi::PitchSequence>& pieces) {
        std::size_t skipped = 0;
        auto built = corpus::build_db12(pieces, &skipped);
        return py::make_tuple(built, skipped);
      },
      py::arg("pieces"), "Returns (corpus, skipped_piece_count).");
  m.def(
      "build_interval",
      [](const std::vector<midi::PitchSequence>& pieces) {
        std::size_t skipped = 0;
        auto built = corpus::build_interval(pieces, &skipped);
        return py::make_tuple(built, skipped);
      },
      py::arg("pieces"), "Returns (corpus, skipped_piece_count).");
  m.def("transpose", &corpus::transpose, py::arg("piece"), py::arg("shift"));
  m.def("to_intervals", &corpus::to_intervals, py::arg("pitches"));
  m.def("from_intervals", &corpus::from_intervals, py::arg("intervals"), py::arg("start"));

  py::class_<seqmodel::TrainConfig>(m, "TrainConfig")
      .def(py::init([](int embedding_dim, int hidden_size, int window, int batch_size,
                       int epochs, double learning_rate, std::uint64_t seed) {
             return seqmodel::TrainConfig{embedding_dim, hidden_size, window,
                                          batch_size,    epochs,      learning_rate, seed};
           }),
           py::arg("embedding_dim") = 128, py::arg("hidden_size") = 128,
           py::arg("window") = 32, py::arg("batch_size") = 16, py::arg("epochs") = 100,
           py::arg("learning_rate") = 1e-3, py::arg("seed") = 0)
      .def_readwrite("embedding_dim", &seqmodel::TrainConfig::embedding_dim)
      .def_readwrite("hidden_size", &seqmodel::TrainConfig::hidden_size)
      .def_readwrite("window", &seqmodel::TrainConfig::window)
      .def_readwrite("batch_size", &seqmodel::TrainConfig::batch_size)
      .def_readwrite("epochs", &seqmodel::TrainConfig::epochs)
      .def_readwrite("learning_rate", &seqmodel::TrainConfig::learning_rate)
      .def_readwrite("seed", &seqmodel::TrainConfig::seed);

  py::class_<seqmodel::Model<float>>(m, "Model")
      .def_property_readonly("embedding",
                             [](const seqmodel::Model<float>& model) { return model.embedding; })
      .def_property_readonly("vocab_size", &seqmodel::Model<float>::vocab_size)
      .def_property_readonly("dim", &seqmodel::Model<float>::dim)
      .def_property_readonly("hidden_size", &seqmodel::Model<float>::hidden_size);

  py::class_<seqmodel::TrainResult>(m, "TrainResult")
      .def_readonly("model", &seqmodel::TrainResult::model)
      .def_readonly("loss_history", &seqmodel::TrainResult::loss_history);

  m.def("train", &seqmodel::train, py::arg("corpus"), py::arg("config"),
        py::call_guard<py::gil_scoped_release>());

  py::class_<tsne::AffinityMatrix>(m, "AffinityMatrix")
      .def_readonly("p", &tsne::AffinityMatrix::p)
      .def_readonly("perplexity", &tsne::AffinityMatrix::perplexity);

  py::class_<tsne::TsneConfig>(m, "TsneConfig")
      .def(py::init([](int iterations, double learning_rate, double early_exaggeration,
                       int exaggeration_iterations, std::uint64_t seed) {
             tsne::TsneConfig c;
             c.iterations = iterations;
             c.learning_rate = learning_rate;
             c.early_exaggeration = early_exaggeration;
             c.exaggeration_iterations = exaggeration_iterations;
             c.seed = seed;
             return c;
           }),
           py::arg("iterations") = 1000, py::arg("learning_rate") = 200.0,
           py::arg("early_exaggeration") = 12.0, py::arg("exaggeration_iterations") = 250,
           py::arg("seed") = 0)
      .def_readwrite("iterations", &tsne::TsneConfig::iterations)
      .def_readwrite("learning_rate", &tsne::TsneConfig::learning_rate)
      .def_readwrite("seed", &tsne::TsneConfig::seed);

  py::class_<tsne::Projection>(m, "Projection")
      .def_readonly("points", &tsne::Projection::points)
      .def_readwrite("labels", &tsne::Projection::labels)
      .def_readonly("kl_history", &tsne::Projection::kl_history);

  m.def("perplexity_search", &tsne::perplexity_search, py::arg("squared_distances"),
        py::arg("target_perplexity"));
  m.def("compute_affinities", &tsne::compute_affinities, py::arg("points"),
        py::arg("perplexity"));
  m.def("tsne_optimize", &tsne::tsne_optimize, py::arg("affinities"), py::arg("dims"),
        py::arg("config") = tsne::TsneConfig{}, py::call_guard<py::gil_scoped_release>());
  m.def("kl_divergence", &tsne::kl_divergence, py::arg("p"), py::arg("y"));
  m.def("kl_gradient", &tsne::kl_gradient, py::arg("p"), py::arg("y"));

  m.def("note_name", &analysis::note_name, py::arg("pitch"));
  m.def("parse_note_name", &analysis::parse_note_name, py::arg("name"));
  m.def("token_label", &analysis::token_label, py::arg("variant"), py::arg("token"));
  m.def("cosine_distance", &analysis::cosine_distance, py::arg("a"), py::arg("b"));

  py::class_<analysis::NeighborReport>(m, "NeighborReport")
      .def_readonly("query_token", &analysis::NeighborReport::query_token)
      .def_readonly("neighbors", &analysis::NeighborReport::neighbors);

  m.def("nearest_neighbors", &analysis::nearest_neighbors, py::arg("embeddings"),
        py::arg("vocabulary"), py::arg("query_token"), py::arg("k"));
  m.def("report_table", &analysis::report_table, py::arg("embeddings"), py::arg("vocabulary"),
        py::arg("variant"), py::arg("query_token"), py::arg("k") = 10);
  m.def("report_csv", &analysis::report_csv, py::arg("embeddings"), py::arg("vocabulary"),
        py::arg("variant"), py::arg("query_token"), py::arg("k") = 10);
  m.def(
      "export_projector",
      [](const Eigen::MatrixXf& embeddings, const std::vector<std::string>& labels,
         const std::string& vectors_path, const std::string& metadata_path) {
        std::ofstream vectors(vectors_path, std::ios::binary);
        std::ofstream metadata(metadata_path, std::ios::binary);
        if (!vectors || !metadata) throw Error("cannot open projector output files");
        analysis::export_projector(embeddings, labels, vectors, metadata);
      },
      py::arg("embeddings"), py::arg("labels"), py::arg("vectors_path"),
      py::arg("metadata_path"));
  m.def(
      "plot_projection",
      [](const tsne::Projection& projection, const std::optional<analysis::Highlight>& hl) {
        return analysis::plot_projection(projection, hl);
      },
      py::arg("projection"), py::arg("highlight") = std::nullopt);

  py::class_<analysis::Highlight>(m, "Highlight")
      .def(py::init([](std::string query, std::vector<std::string> neighbors) {
             return analysis::Highlight{std::move(query), std::move(neighbors)};
           }),
           py::arg("query"), py::arg("neighbors"));

  py::class_<checkpoint::Checkpoint>(m, "Checkpoint")
      .def_readonly("variant", &checkpoint::Checkpoint::variant)
      .def_readonly("vocabulary", &checkpoint::Checkpoint::vocabulary)
      .def_readonly("config", &checkpoint::Checkpoint::config)
      .def_readonly("model", &checkpoint::Checkpoint::model);

  m.def(
      "save_checkpoint",
      [](const corpus::Variant variant, const corpus::Vocabulary& vocab,
         const seqmodel::TrainConfig& config, const seqmodel::Model<float>& model,
         const std::string& path) {
        checkpoint::save({variant, vocab, config, model}, path);
      },
      py::arg("variant"), py::arg("vocabulary"), py::arg("config"), py::arg("model"),
      py::arg("path"));
  m.def("load_checkpoint", [](const std::string& path) { return checkpoint::load(path); },
        py::arg("path"));
}
