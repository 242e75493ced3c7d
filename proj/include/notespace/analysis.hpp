#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "notespace/corpus.hpp"
#include "notespace/errors.hpp"
#include "notespace/tsne.hpp"

namespace notespace::analysis {

// MIDI-hardware octave convention: octave = pitch / 12, so 60 is "C5".
// Accidentals are spelled with sharps only.
std::string note_name(int pitch);

// Inverse of note_name; accepts both the sharp sign and '#'.
int parse_note_name(const std::string& name);

// Note name for note variants, the signed interval itself otherwise.
std::string token_label(corpus::Variant variant, int token);

// 1 - a.b / (|a||b|), in [0, 2]
double cosine_distance(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

struct NeighborReport {
  int query_token = 0;
  std::vector<std::pair<int, double>> neighbors;  // ascending distance, ties by token
};

// Exhaustive cosine scan over every other embedding row.
NeighborReport nearest_neighbors(const Eigen::MatrixXf& embeddings,
                                 const corpus::Vocabulary& vocabulary,
                                 int query_token, int k);

// Plain-text table: total embedding count, the selection label, then k
// (name, distance) rows with three-decimal distances.
std::string report_table(const Eigen::MatrixXf& embeddings,
                         const corpus::Vocabulary& vocabulary,
                         corpus::Variant variant, int query_token, int k = 10);

// The same report as machine-readable CSV with full-precision distances.
std::string report_csv(const Eigen::MatrixXf& embeddings,
                       const corpus::Vocabulary& vocabulary,
                       corpus::Variant variant, int query_token, int k = 10);

// Projector-compatible pair: tab-separated vector rows, and one label per
// row under a `token` header. Values carry 9 significant digits, enough to
// reload a float bit-exactly.
void export_projector(const Eigen::MatrixXf& embeddings,
                      const std::vector<std::string>& labels,
                      std::ostream& vectors_out, std::ostream& metadata_out);

struct Highlight {
  std::string query;
  std::vector<std::string> neighbors;
};

// Deterministic SVG scatter of a 2-D projection with text labels. The
// optional highlight marks the query point and its neighbor set.
std::string plot_projection(const tsne::Projection& projection,
                            const std::optional<Highlight>& highlight = std::nullopt);

}  // namespace notespace::analysis
