#include "notespace/analysis.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

namespace notespace::analysis {
namespace {

const std::array<const char*, 12> kPitchClasses = {
    "C", "C♯", "D", "D♯", "E", "F", "F♯", "G", "G♯", "A", "A♯", "B"};

std::string format_distance(double d) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", d);
  return buf;
}

// %.9g, with a ".0" appended to bare integers so the format is self-evident
std::string format_value(float v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", static_cast<double>(v));
  std::string s = buf;
  if (s.find_first_of(".einf") == std::string::npos) s += ".0";
  return s;
}

std::string format_coord(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string note_name(int pitch) {
  if (pitch < 0 || pitch > 127) {
    throw PitchOutOfRange("pitch " + std::to_string(pitch) + " is outside 0..127");
  }
  return std::string(kPitchClasses[pitch % 12]) + std::to_string(pitch / 12);
}

int parse_note_name(const std::string& name) {
  static const std::string valid =
      "C C♯/C# D D♯/D# E F F♯/F# G G♯/G# A A♯/A# B, octaves 0..10";
  std::size_t pos = 0;
  if (name.empty() || name[0] < 'A' || name[0] > 'G') {
    throw UnknownToken("cannot parse note name '" + name + "'; expected " + valid);
  }
  static const std::array<int, 7> kLetterSemitone = {9, 11, 0, 2, 4, 5, 7};  // A..G
  int pc = kLetterSemitone[name[0] - 'A'];
  pos = 1;
  bool sharp = false;
  if (name.compare(pos, 1, "#") == 0) {
    sharp = true;
    pos += 1;
  } else if (name.compare(pos, 3, "♯") == 0) {
    sharp = true;
    pos += 3;
  }
  if (sharp) {
    if (name[0] == 'B' || name[0] == 'E') {
      throw UnknownToken("'" + name + "' is not a sharp spelling in use; expected " + valid);
    }
    pc += 1;
  }
  if (pos >= name.size() ||
      name.find_first_not_of("0123456789", pos) != std::string::npos) {
    throw UnknownToken("cannot parse note name '" + name + "'; expected " + valid);
  }
  const int octave = std::stoi(name.substr(pos));
  const int pitch = octave * 12 + (pc % 12);
  if (octave > 10 || pitch > 127) {
    throw PitchOutOfRange("note '" + name + "' lies above G10 (midi 127)");
  }
  return pitch;
}

std::string token_label(corpus::Variant variant, int token) {
  if (variant == corpus::Variant::interval) return std::to_string(token);
  return note_name(token);
}

double cosine_distance(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  if (a.size() != b.size()) throw LengthMismatch("cosine of vectors of different size");
  const double na = a.norm();
  const double nb = b.norm();
  if (na == 0.0 || nb == 0.0) throw ZeroVector("cosine distance of a zero vector");
  double cosine = a.dot(b) / (na * nb);
  cosine = std::clamp(cosine, -1.0, 1.0);
  return 1.0 - cosine;
}

NeighborReport nearest_neighbors(const Eigen::MatrixXf& embeddings,
                                 const corpus::Vocabulary& vocabulary,
                                 int query_token, int k) {
  const Eigen::Index v = embeddings.rows();
  if (static_cast<std::size_t>(v) != vocabulary.size()) {
    throw LengthMismatch("embedding row count does not match the vocabulary");
  }
  const std::size_t query_row = vocabulary.index_of(query_token);
  if (k < 1 || k > static_cast<int>(v) - 1) {
    throw KTooLarge("k must lie in [1, V-1], got " + std::to_string(k));
  }

  const Eigen::VectorXd query = embeddings.row(static_cast<Eigen::Index>(query_row))
                                    .transpose().cast<double>();
  NeighborReport report;
  report.query_token = query_token;
  report.neighbors.reserve(v - 1);
  for (Eigen::Index row = 0; row < v; ++row) {
    if (row == static_cast<Eigen::Index>(query_row)) continue;
    const Eigen::VectorXd other = embeddings.row(row).transpose().cast<double>();
    report.neighbors.emplace_back(vocabulary.token(static_cast<std::size_t>(row)),
                                  cosine_distance(query, other));
  }
  std::sort(report.neighbors.begin(), report.neighbors.end(),
            [](const auto& a, const auto& b) {
              return a.second != b.second ? a.second < b.second : a.first < b.first;
            });
  report.neighbors.resize(static_cast<std::size_t>(k));
  return report;
}

std::string report_table(const Eigen::MatrixXf& embeddings,
                         const corpus::Vocabulary& vocabulary,
                         corpus::Variant variant, int query_token, int k) {
  const NeighborReport report = nearest_neighbors(embeddings, vocabulary, query_token, k);

  const std::string kind = variant == corpus::Variant::interval ? "Interval" : "Note";
  std::vector<std::string> names;
  names.reserve(report.neighbors.size());
  std::size_t width = kind.size();
  for (const auto& [token, dist] : report.neighbors) {
    names.push_back(token_label(variant, token));
    // the sharp sign is 3 bytes of UTF-8 but one display column
    std::size_t display = names.back().size();
    if (names.back().find("♯") != std::string::npos) display -= 2;
    width = std::max(width, display);
  }

  std::ostringstream out;
  out << "Total: " << vocabulary.size() << "\n";
  out << "Selection: " << token_label(variant, query_token) << "\n\n";
  auto pad = [&](const std::string& name) {
    std::size_t display = name.size();
    if (name.find("♯") != std::string::npos) display -= 2;
    return name + std::string(width - display + 2, ' ');
  };
  out << pad(kind) << "Cos\n";
  for (std::size_t i = 0; i < names.size(); ++i) {
    out << pad(names[i]) << format_distance(report.neighbors[i].second) << "\n";
  }
  return out.str();
}

std::string report_csv(const Eigen::MatrixXf& embeddings,
                       const corpus::Vocabulary& vocabulary,
                       corpus::Variant variant, int query_token, int k) {
  const NeighborReport report = nearest_neighbors(embeddings, vocabulary, query_token, k);
  std::ostringstream out;
  out << "token,label,cosine_distance\n";
  for (const auto& [token, dist] : report.neighbors) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", dist);
    out << token << ',' << token_label(variant, token) << ',' << buf << "\n";
  }
  return out.str();
}

void export_projector(const Eigen::MatrixXf& embeddings,
                      const std::vector<std::string>& labels,
                      std::ostream& vectors_out, std::ostream& metadata_out) {
  if (embeddings.rows() == 0) throw LengthMismatch("nothing to export");
  if (labels.size() != static_cast<std::size_t>(embeddings.rows())) {
    throw LengthMismatch("label count " + std::to_string(labels.size()) +
                         " does not match " + std::to_string(embeddings.rows()) + " rows");
  }
  for (Eigen::Index r = 0; r < embeddings.rows(); ++r) {
    for (Eigen::Index c = 0; c < embeddings.cols(); ++c) {
      if (c) vectors_out << '\t';
      vectors_out << format_value(embeddings(r, c));
    }
    vectors_out << '\n';
  }
  metadata_out << "token\n";
  for (const auto& label : labels) metadata_out << label << '\n';
}

std::string plot_projection(const tsne::Projection& projection,
                            const std::optional<Highlight>& highlight) {
  if (projection.points.cols() != 2) {
    throw WrongDimensionality("only 2-D projections can be plotted");
  }
  const Eigen::Index n = projection.points.rows();
  if (projection.labels.size() != static_cast<std::size_t>(n)) {
    throw LengthMismatch("projection labels do not match its point count");
  }

  enum class Role { plain, neighbor, query };
  std::vector<Role> roles(static_cast<std::size_t>(n), Role::plain);
  if (highlight) {
    auto find_label = [&](const std::string& label) {
      auto it = std::find(projection.labels.begin(), projection.labels.end(), label);
      if (it == projection.labels.end()) {
        throw UnknownToken("highlight token '" + label + "' is not in the projection");
      }
      return static_cast<std::size_t>(it - projection.labels.begin());
    };
    for (const auto& nb : highlight->neighbors) roles[find_label(nb)] = Role::neighbor;
    roles[find_label(highlight->query)] = Role::query;
  }

  const double width = 800, height = 600, margin = 50;
  double min_x = projection.points.col(0).minCoeff();
  double max_x = projection.points.col(0).maxCoeff();
  double min_y = projection.points.col(1).minCoeff();
  double max_y = projection.points.col(1).maxCoeff();
  const double span_x = std::max(max_x - min_x, 1e-9);
  const double span_y = std::max(max_y - min_y, 1e-9);
  auto sx = [&](double x) { return margin + (x - min_x) / span_x * (width - 2 * margin); };
  auto sy = [&](double y) { return height - margin - (y - min_y) / span_y * (height - 2 * margin); };

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (Eigen::Index i = 0; i < n; ++i) {
    const char* fill = "#7f7f7f";
    double radius = 3.5;
    if (roles[static_cast<std::size_t>(i)] == Role::neighbor) {
      fill = "#ff7f0e";
      radius = 4.5;
    } else if (roles[static_cast<std::size_t>(i)] == Role::query) {
      fill = "#d62728";
      radius = 5.5;
    }
    const std::string x = format_coord(sx(projection.points(i, 0)));
    const std::string y = format_coord(sy(projection.points(i, 1)));
    svg << "<circle cx=\"" << x << "\" cy=\"" << y << "\" r=\"" << radius
        << "\" fill=\"" << fill << "\"/>\n";
    svg << "<text x=\"" << format_coord(sx(projection.points(i, 0)) + 6.0) << "\" y=\""
        << format_coord(sy(projection.points(i, 1)) + 3.5)
        << "\" font-family=\"sans-serif\" font-size=\"10\">"
        << xml_escape(projection.labels[static_cast<std::size_t>(i)]) << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace notespace::analysis
