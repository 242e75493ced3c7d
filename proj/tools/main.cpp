// notespace: melody ingestion, dataset variants, embedding training and
// t-SNE reports from one binary. Verbs: ingest, build, train, project,
// neighbors, plot.

#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "notespace/analysis.hpp"
#include "notespace/checkpoint.hpp"
#include "notespace/corpus.hpp"
#include "notespace/errors.hpp"
#include "notespace/midi.hpp"
#include "notespace/seqmodel.hpp"
#include "notespace/tsne.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace notespace;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Values resolve flag > config file > built-in default.
class Settings {
 public:
  void load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open config file " + path);
    try {
      in >> config_;
    } catch (const json::exception& e) {
      throw UsageError("config file " + path + " is not valid JSON: " + e.what());
    }
  }

  template <typename T>
  T resolve(const CLI::Option* opt, const char* key, const T& flag_value) const {
    if (opt != nullptr && opt->count() > 0) return flag_value;
    if (config_.contains(key)) {
      try {
        return config_.at(key).get<T>();
      } catch (const json::exception&) {
        throw UsageError(std::string("config key '") + key + "' has the wrong type");
      }
    }
    return flag_value;
  }

  bool has(const char* key) const { return config_.contains(key); }

 private:
  json config_;
};

std::vector<std::uint8_t> read_bytes(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);  // exact bytes, no newline translation
  if (!out) throw Error("cannot write " + path.string());
  out << text;
  if (!out) throw Error("failed while writing " + path.string());
}

fs::path prepare_out_dir(const std::string& out) {
  fs::path dir(out);
  fs::create_directories(dir);
  return dir;
}

// One manifest per output directory, keyed by verb. Content is fully
// determined by the effective settings so reruns stay byte-identical.
void update_manifest(const fs::path& out_dir, const std::string& verb, json entry) {
  const fs::path path = out_dir / "manifest.json";
  json manifest;
  if (fs::exists(path)) {
    std::ifstream in(path);
    try {
      in >> manifest;
    } catch (const json::exception&) {
      manifest = json::object();
    }
  }
  if (!manifest.is_object()) manifest = json::object();
  manifest["tool"] = "notespace";
  manifest[verb] = std::move(entry);
  write_text(path, manifest.dump(2) + "\n");
}

corpus::Variant resolve_variant(const std::string& name) {
  try {
    return corpus::parse_variant(name);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

int resolve_query(corpus::Variant variant, const std::string& query) {
  if (variant == corpus::Variant::interval) {
    try {
      std::size_t pos = 0;
      const int value = std::stoi(query, &pos);
      if (pos == query.size()) return value;
    } catch (const std::exception&) {
    }
    throw UsageError("interval queries are signed semitone counts, got '" + query + "'");
  }
  try {
    std::size_t pos = 0;
    const int value = std::stoi(query, &pos);
    if (pos == query.size()) {
      if (value < 0 || value > 127) {
        throw UsageError("pitch " + query + " is outside 0..127");
      }
      return value;
    }
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception&) {
  }
  try {
    return analysis::parse_note_name(query);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

corpus::TrainingCorpus load_corpus_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open dataset file " + path.string());
  return corpus::load(in);
}

std::vector<std::string> vocabulary_labels(const corpus::Vocabulary& vocab,
                                           corpus::Variant variant) {
  std::vector<std::string> labels;
  labels.reserve(vocab.size());
  for (int token : vocab.tokens()) labels.push_back(analysis::token_label(variant, token));
  return labels;
}

// ---------------------------------------------------------------- ingest

int cmd_ingest(const std::vector<std::string>& inputs, const fs::path& out_dir) {
  std::vector<fs::path> files;
  for (const auto& input : inputs) {
    fs::path p(input);
    if (fs::is_directory(p)) {
      for (const auto& entry : fs::recursive_directory_iterator(p)) {
        if (entry.is_regular_file() && entry.path().extension() == ".mid") {
          files.push_back(entry.path());
        }
      }
    } else {
      files.push_back(p);
    }
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw UsageError("no .mid files found under the given inputs");

  std::vector<midi::PitchSequence> pieces;
  std::size_t failures = 0;
  for (const auto& file : files) {
    try {
      const auto bytes = read_bytes(file);
      const auto tracks = midi::parse_smf(bytes);
      std::size_t note_count = 0;
      std::size_t piece_count = 0;
      bool dropped = false;
      for (std::size_t t = 0; t < tracks.size(); ++t) {
        note_count += tracks[t].size();
        if (tracks[t].empty()) continue;  // tempo / meta track
        try {
          auto mono = midi::to_monophonic(tracks[t],
                                          file.filename().string() + ":" + std::to_string(t));
          dropped |= mono.dropped_chord_notes;
          pieces.push_back(std::move(mono.sequence));
          ++piece_count;
        } catch (const EmptySequence&) {
          // single-note track, nothing to model
        }
      }
      std::cout << file.string() << ": " << note_count << " notes, " << piece_count
                << (piece_count == 1 ? " piece" : " pieces");
      if (dropped) std::cout << " (warning: chord notes dropped, highest kept)";
      std::cout << "\n";
    } catch (const Error& e) {
      ++failures;
      std::cerr << file.string() << ": error: " << e.what() << "\n";
    }
  }
  if (failures == files.size()) throw Error("every input file failed to parse");
  if (pieces.empty()) throw Error("no usable melodies found in the inputs");

  const fs::path melody_path = out_dir / "melodies.txt";
  std::ostringstream text;
  corpus::save_pieces(pieces, text);
  write_text(melody_path, text.str());
  std::cout << pieces.size() << " melodies -> " << melody_path.string() << "\n";
  return 0;
}

// ----------------------------------------------------------------- build

int cmd_build(const fs::path& melody_file, corpus::Variant variant, const fs::path& out_dir) {
  std::ifstream in(melody_file);
  if (!in) throw Error("cannot open melody file " + melody_file.string());
  const auto pieces = corpus::load_pieces(in);

  std::size_t skipped = 0;
  corpus::TrainingCorpus built;
  switch (variant) {
    case corpus::Variant::control: built = corpus::build_control(pieces); break;
    case corpus::Variant::db12: built = corpus::build_db12(pieces, &skipped); break;
    case corpus::Variant::interval: built = corpus::build_interval(pieces, &skipped); break;
  }

  const fs::path dataset_path = out_dir / ("dataset_" + corpus::to_string(variant) + ".txt");
  std::ostringstream text;
  corpus::save(built, text);
  write_text(dataset_path, text.str());

  std::cout << "Total: " << built.vocabulary.size() << "\n";
  std::cout << built.sequences.size() << " sequences -> " << dataset_path.string() << "\n";
  if (skipped > 0) std::cout << "(" << skipped << " pieces skipped)\n";
  return 0;
}

// ----------------------------------------------------------------- train

int cmd_train(const fs::path& dataset_file, const seqmodel::TrainConfig& config,
              const fs::path& out_dir) {
  const corpus::TrainingCorpus data = load_corpus_file(dataset_file);
  const auto result = seqmodel::train(data, config);
  const std::string suffix = corpus::to_string(data.variant);

  checkpoint::Checkpoint ckpt{data.variant, data.vocabulary, config, result.model};
  const fs::path ckpt_path = out_dir / ("checkpoint_" + suffix + ".nsc");
  checkpoint::save(ckpt, ckpt_path);

  std::ostringstream losses;
  losses << "epoch,loss\n";
  for (std::size_t e = 0; e < result.loss_history.size(); ++e) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%zu,%.9g\n", e, result.loss_history[e]);
    losses << buf;
  }
  write_text(out_dir / ("loss_" + suffix + ".csv"), losses.str());

  std::ostringstream vectors, metadata;
  analysis::export_projector(result.model.embedding,
                             vocabulary_labels(data.vocabulary, data.variant),
                             vectors, metadata);
  write_text(out_dir / ("vectors_" + suffix + ".tsv"), vectors.str());
  write_text(out_dir / ("metadata_" + suffix + ".tsv"), metadata.str());

  std::cout << "Total: " << data.vocabulary.size() << " embeddings of dimension "
            << config.embedding_dim << "\n";
  std::cout << "final loss " << result.loss_history.back() << " after " << config.epochs
            << " epochs -> " << ckpt_path.string() << "\n";
  return 0;
}

// --------------------------------------------------------------- project

std::string format_tsv_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  std::string s = buf;
  if (s.find_first_of(".einf") == std::string::npos) s += ".0";
  return s;
}

int cmd_project(const fs::path& ckpt_path, int dims, double perplexity,
                const tsne::TsneConfig& config, const fs::path& out_dir) {
  const auto ckpt = checkpoint::load(ckpt_path);
  const Eigen::MatrixXd points = ckpt.model.embedding.cast<double>();
  const auto labels = vocabulary_labels(ckpt.vocabulary, ckpt.variant);

  tsne::AffinityMatrix affinities;
  try {
    affinities = tsne::compute_affinities(points, perplexity);
  } catch (const DuplicatePoints& e) {
    throw Error("embedding rows for tokens '" + labels[e.row_a] + "' and '" +
                labels[e.row_b] + "' are identical; cannot project (" + e.what() + ")");
  }
  tsne::Projection projection = tsne::tsne_optimize(affinities, dims, config);
  projection.labels = labels;

  const std::string suffix =
      corpus::to_string(ckpt.variant) + "_" + std::to_string(dims) + "d";

  std::ostringstream tsv;
  tsv << "token\ty1\ty2";
  if (dims == 3) tsv << "\ty3";
  tsv << "\n";
  for (Eigen::Index r = 0; r < projection.points.rows(); ++r) {
    tsv << labels[static_cast<std::size_t>(r)];
    for (int c = 0; c < dims; ++c) tsv << '\t' << format_tsv_value(projection.points(r, c));
    tsv << "\n";
  }
  const fs::path tsv_path = out_dir / ("projection_" + suffix + ".tsv");
  write_text(tsv_path, tsv.str());

  std::ostringstream kl;
  kl << "iteration,kl\n";
  for (std::size_t i = 0; i < projection.kl_history.size(); ++i) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%zu,%.9g\n", i + 1, projection.kl_history[i]);
    kl << buf;
  }
  write_text(out_dir / ("kl_" + suffix + ".csv"), kl.str());

  if (dims == 2) {
    write_text(out_dir / ("projection_" + suffix + ".svg"),
               analysis::plot_projection(projection));
  }
  std::cout << "projected " << projection.points.rows() << " embeddings to " << dims
            << "-D, final KL " << projection.kl_history.back() << " -> "
            << tsv_path.string() << "\n";
  return 0;
}

// ------------------------------------------------------------- neighbors

int cmd_neighbors(const fs::path& ckpt_path, const std::string& query, int k, bool csv,
                  const fs::path& out_dir) {
  const auto ckpt = checkpoint::load(ckpt_path);
  const int token = resolve_query(ckpt.variant, query);
  const std::string report =
      analysis::report_table(ckpt.model.embedding, ckpt.vocabulary, ckpt.variant, token, k);
  std::cout << report;
  const std::string suffix = corpus::to_string(ckpt.variant);
  write_text(out_dir / ("neighbors_" + suffix + ".txt"), report);
  if (csv) {
    write_text(out_dir / ("neighbors_" + suffix + ".csv"),
               analysis::report_csv(ckpt.model.embedding, ckpt.vocabulary, ckpt.variant,
                                    token, k));
  }
  return 0;
}

// ------------------------------------------------------------------ plot

tsne::Projection load_projection_tsv(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open projection file " + path.string());
  std::string header;
  if (!std::getline(in, header) || header.rfind("token\ty1\ty2", 0) != 0) {
    throw Error(path.string() + " is not a projection TSV");
  }
  const int dims = header == "token\ty1\ty2\ty3" ? 3 : 2;

  std::vector<std::string> labels;
  std::vector<std::array<double, 3>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string label;
    if (!std::getline(ls, label, '\t')) throw Error("bad projection row: " + line);
    std::array<double, 3> coords{0, 0, 0};
    for (int c = 0; c < dims; ++c) {
      std::string field;
      if (!std::getline(ls, field, '\t')) throw Error("bad projection row: " + line);
      coords[static_cast<std::size_t>(c)] = std::stod(field);
    }
    labels.push_back(label);
    rows.push_back(coords);
  }

  tsne::Projection projection;
  projection.points.resize(static_cast<Eigen::Index>(rows.size()), dims);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (int c = 0; c < dims; ++c) {
      projection.points(static_cast<Eigen::Index>(r), c) = rows[r][static_cast<std::size_t>(c)];
    }
  }
  projection.labels = std::move(labels);
  return projection;
}

int cmd_plot(const fs::path& projection_path, const std::string& query,
             const std::string& ckpt_path, int k, const fs::path& out_dir) {
  if (!query.empty() && ckpt_path.empty()) {
    throw UsageError("--query needs --checkpoint to look up the neighbor set");
  }
  tsne::Projection projection = load_projection_tsv(projection_path);

  std::optional<analysis::Highlight> highlight;
  if (!query.empty()) {
    const auto ckpt = checkpoint::load(ckpt_path);
    const int token = resolve_query(ckpt.variant, query);
    const auto report = analysis::nearest_neighbors(ckpt.model.embedding, ckpt.vocabulary,
                                                    token, k);
    analysis::Highlight h;
    h.query = analysis::token_label(ckpt.variant, token);
    for (const auto& [nb_token, dist] : report.neighbors) {
      h.neighbors.push_back(analysis::token_label(ckpt.variant, nb_token));
    }
    highlight = std::move(h);
  }

  std::string stem = projection_path.stem().string();
  const fs::path svg_path = out_dir / ("plot_" + stem + ".svg");
  write_text(svg_path, analysis::plot_projection(projection, highlight));
  std::cout << "wrote " << svg_path.string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"note and interval embeddings from monophonic MIDI, with t-SNE reports"};
  app.require_subcommand(1);

  // ingest
  auto* ingest = app.add_subcommand("ingest", "parse .mid files into a melody corpus");
  std::vector<std::string> ingest_inputs;
  std::string ingest_out = "out", ingest_config;
  auto* ingest_inputs_opt =
      ingest->add_option("paths", ingest_inputs, ".mid files or directories to scan");
  auto* ingest_out_opt = ingest->add_option("--out", ingest_out, "output directory");
  ingest->add_option("--config", ingest_config, "JSON config file");

  // build
  auto* build = app.add_subcommand("build", "build a dataset variant from a melody corpus");
  std::string build_input, build_variant, build_out = "out", build_config;
  build->add_option("melodies", build_input, "melody corpus file")->required();
  auto* build_variant_opt =
      build->add_option("--variant", build_variant, "control, db12 or interval");
  auto* build_out_opt = build->add_option("--out", build_out, "output directory");
  build->add_option("--config", build_config, "JSON config file");

  // train
  auto* train = app.add_subcommand("train", "train embeddings and the next-token predictor");
  std::string train_input, train_out = "out", train_config;
  seqmodel::TrainConfig tc;
  train->add_option("dataset", train_input, "dataset file from `build`")->required();
  auto* dim_opt = train->add_option("--dim", tc.embedding_dim, "embedding dimension");
  auto* hidden_opt = train->add_option("--hidden", tc.hidden_size, "LSTM hidden size");
  auto* window_opt = train->add_option("--window", tc.window, "prediction steps per window");
  auto* batch_opt = train->add_option("--batch", tc.batch_size, "windows per update");
  auto* epochs_opt = train->add_option("--epochs", tc.epochs, "training epochs");
  auto* lr_opt = train->add_option("--lr", tc.learning_rate, "Adam learning rate");
  auto* train_seed_opt = train->add_option("--seed", tc.seed, "RNG seed");
  auto* train_out_opt = train->add_option("--out", train_out, "output directory");
  train->add_option("--config", train_config, "JSON config file");

  // project
  auto* project = app.add_subcommand("project", "t-SNE projection of a checkpoint");
  std::string project_input, project_out = "out", project_config;
  int project_dims = 2;
  double project_perplexity = 15.0;
  tsne::TsneConfig pc;
  project->add_option("checkpoint", project_input, "checkpoint file from `train`")->required();
  auto* dims_opt = project->add_option("--dims", project_dims, "projection dimension, 2 or 3");
  auto* perp_opt = project->add_option("--perplexity", project_perplexity, "t-SNE perplexity");
  auto* iters_opt = project->add_option("--iterations", pc.iterations, "gradient steps");
  auto* project_seed_opt = project->add_option("--seed", pc.seed, "RNG seed");
  auto* project_out_opt = project->add_option("--out", project_out, "output directory");
  project->add_option("--config", project_config, "JSON config file");

  // neighbors
  auto* neighbors = app.add_subcommand("neighbors", "cosine nearest-neighbor report");
  std::string nb_input, nb_query, nb_out = "out", nb_config;
  int nb_k = 10;
  bool nb_csv = false;
  neighbors->add_option("checkpoint", nb_input, "checkpoint file from `train`")->required();
  auto* query_opt =
      neighbors->add_option("--query", nb_query, "note name (C5) or integer token");
  auto* k_opt = neighbors->add_option("--k", nb_k, "neighbor count");
  neighbors->add_flag("--csv", nb_csv, "also write the report as CSV");
  auto* nb_out_opt = neighbors->add_option("--out", nb_out, "output directory");
  neighbors->add_option("--config", nb_config, "JSON config file");

  // plot
  auto* plot = app.add_subcommand("plot", "render a projection TSV as SVG");
  std::string plot_input, plot_query, plot_ckpt, plot_out = "out", plot_config;
  int plot_k = 10;
  plot->add_option("projection", plot_input, "projection TSV from `project`")->required();
  auto* plot_query_opt = plot->add_option("--query", plot_query, "token to highlight");
  auto* plot_ckpt_opt =
      plot->add_option("--checkpoint", plot_ckpt, "checkpoint for the neighbor lookup");
  auto* plot_k_opt = plot->add_option("--k", plot_k, "highlighted neighbor count");
  auto* plot_out_opt = plot->add_option("--out", plot_out, "output directory");
  plot->add_option("--config", plot_config, "JSON config file");

  try {
    app.parse(argc, argv);

    if (ingest->parsed()) {
      Settings s;
      if (!ingest_config.empty()) s.load(ingest_config);
      auto inputs = s.resolve(ingest_inputs_opt, "inputs", ingest_inputs);
      if (inputs.empty()) throw UsageError("ingest needs at least one .mid file or directory");
      const auto out = prepare_out_dir(s.resolve(ingest_out_opt, "out", ingest_out));
      const int rc = cmd_ingest(inputs, out);
      update_manifest(out, "ingest", json{{"inputs", inputs}});
      return rc;
    }
    if (build->parsed()) {
      Settings s;
      if (!build_config.empty()) s.load(build_config);
      const std::string variant_name = s.resolve(build_variant_opt, "variant", build_variant);
      if (variant_name.empty()) throw UsageError("build needs --variant (or a config entry)");
      const auto variant = resolve_variant(variant_name);
      const auto out = prepare_out_dir(s.resolve(build_out_opt, "out", build_out));
      const int rc = cmd_build(build_input, variant, out);
      update_manifest(out, "build_" + variant_name,
                      json{{"melodies", build_input}, {"variant", variant_name}});
      return rc;
    }
    if (train->parsed()) {
      Settings s;
      if (!train_config.empty()) s.load(train_config);
      tc.embedding_dim = s.resolve(dim_opt, "embedding_dim", tc.embedding_dim);
      tc.hidden_size = s.resolve(hidden_opt, "hidden_size", tc.hidden_size);
      tc.window = s.resolve(window_opt, "window", tc.window);
      tc.batch_size = s.resolve(batch_opt, "batch_size", tc.batch_size);
      tc.epochs = s.resolve(epochs_opt, "epochs", tc.epochs);
      tc.learning_rate = s.resolve(lr_opt, "learning_rate", tc.learning_rate);
      tc.seed = s.resolve(train_seed_opt, "seed", tc.seed);
      const auto out = prepare_out_dir(s.resolve(train_out_opt, "out", train_out));
      const int rc = cmd_train(train_input, tc, out);
      update_manifest(out, "train",
                      json{{"dataset", train_input},
                           {"embedding_dim", tc.embedding_dim},
                           {"hidden_size", tc.hidden_size},
                           {"window", tc.window},
                           {"batch_size", tc.batch_size},
                           {"epochs", tc.epochs},
                           {"learning_rate", tc.learning_rate},
                           {"seed", tc.seed}});
      return rc;
    }
    if (project->parsed()) {
      Settings s;
      if (!project_config.empty()) s.load(project_config);
      project_dims = s.resolve(dims_opt, "dims", project_dims);
      if (project_dims != 2 && project_dims != 3) {
        throw UsageError("--dims must be 2 or 3");
      }
      project_perplexity = s.resolve(perp_opt, "perplexity", project_perplexity);
      pc.iterations = s.resolve(iters_opt, "iterations", pc.iterations);
      if (pc.iterations < 1) throw UsageError("--iterations must be positive");
      pc.seed = s.resolve(project_seed_opt, "seed", pc.seed);
      const auto out = prepare_out_dir(s.resolve(project_out_opt, "out", project_out));
      const int rc = cmd_project(project_input, project_dims, project_perplexity, pc, out);
      update_manifest(out, "project_" + std::to_string(project_dims) + "d",
                      json{{"checkpoint", project_input},
                           {"dims", project_dims},
                           {"perplexity", project_perplexity},
                           {"iterations", pc.iterations},
                           {"seed", pc.seed}});
      return rc;
    }
    if (neighbors->parsed()) {
      Settings s;
      if (!nb_config.empty()) s.load(nb_config);
      nb_query = s.resolve(query_opt, "query", nb_query);
      if (nb_query.empty()) throw UsageError("neighbors needs --query (or a config entry)");
      nb_k = s.resolve(k_opt, "k", nb_k);
      const auto out = prepare_out_dir(s.resolve(nb_out_opt, "out", nb_out));
      const int rc = cmd_neighbors(nb_input, nb_query, nb_k, nb_csv, out);
      update_manifest(out, "neighbors",
                      json{{"checkpoint", nb_input},
                           {"query", nb_query},
                           {"k", nb_k},
                           {"csv", nb_csv}});
      return rc;
    }
    if (plot->parsed()) {
      Settings s;
      if (!plot_config.empty()) s.load(plot_config);
      plot_query = s.resolve(plot_query_opt, "query", plot_query);
      plot_ckpt = s.resolve(plot_ckpt_opt, "checkpoint", plot_ckpt);
      plot_k = s.resolve(plot_k_opt, "k", plot_k);
      const auto out = prepare_out_dir(s.resolve(plot_out_opt, "out", plot_out));
      const int rc = cmd_plot(plot_input, plot_query, plot_ckpt, plot_k, out);
      update_manifest(out, "plot",
                      json{{"projection", plot_input}, {"query", plot_query}, {"k", plot_k}});
      return rc;
    }
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
