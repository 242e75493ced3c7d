#include "notespace/corpus.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

namespace notespace::corpus {

std::string to_string(Variant v) {
  switch (v) {
    case Variant::control: return "control";
    case Variant::db12: return "db12";
    case Variant::interval: return "interval";
  }
  return "control";
}

Variant parse_variant(const std::string& name) {
  if (name == "control") return Variant::control;
  if (name == "db12") return Variant::db12;
  if (name == "interval") return Variant::interval;
  throw Error("unknown variant '" + name + "' (expected control, db12 or interval)");
}

Vocabulary Vocabulary::from_observed(const std::vector<std::vector<int>>& sequences) {
  std::set<int> distinct;
  for (const auto& seq : sequences) distinct.insert(seq.begin(), seq.end());
  Vocabulary vocab;
  vocab.tokens_.assign(distinct.begin(), distinct.end());
  for (std::size_t i = 0; i < vocab.tokens_.size(); ++i) {
    vocab.index_.emplace(vocab.tokens_[i], i);
  }
  return vocab;
}

std::size_t Vocabulary::index_of(int token) const {
  auto it = index_.find(token);
  if (it == index_.end()) {
    throw UnknownToken("token " + std::to_string(token) + " is not in the vocabulary");
  }
  return it->second;
}

namespace {

void check_piece(const midi::PitchSequence& piece) {
  if (piece.pitches.size() < 2) {
    throw EmptySequence("piece '" + piece.source_id + "' has fewer than two notes");
  }
  for (int p : piece.pitches) {
    if (p < 0 || p > 127) {
      throw PitchOutOfRange("pitch " + std::to_string(p) + " in piece '" +
                            piece.source_id + "' is outside 0..127");
    }
  }
}

TrainingCorpus index_token_sequences(Variant variant,
                                     std::vector<std::vector<int>> token_sequences) {
  TrainingCorpus corpus;
  corpus.variant = variant;
  corpus.vocabulary = Vocabulary::from_observed(token_sequences);
  corpus.sequences.reserve(token_sequences.size());
  for (const auto& tokens : token_sequences) {
    std::vector<std::size_t> indices;
    indices.reserve(tokens.size());
    for (int t : tokens) indices.push_back(corpus.vocabulary.index_of(t));
    corpus.sequences.push_back(std::move(indices));
  }
  return corpus;
}

}  // namespace

TrainingCorpus build_control(const std::vector<midi::PitchSequence>& pieces) {
  if (pieces.empty()) throw EmptyCorpus("no pieces to build the control corpus from");
  std::vector<std::vector<int>> tokens;
  tokens.reserve(pieces.size());
  for (const auto& piece : pieces) {
    check_piece(piece);
    tokens.push_back(piece.pitches);
  }
  return index_token_sequences(Variant::control, std::move(tokens));
}

midi::PitchSequence transpose(const midi::PitchSequence& piece, int shift) {
  if (shift < -127 || shift > 127) {
    throw UntransposablePiece("shift " + std::to_string(shift) + " is outside -127..127");
  }
  if (piece.pitches.empty()) return piece;
  auto [lo_it, hi_it] = std::minmax_element(piece.pitches.begin(), piece.pitches.end());
  const int lo = *lo_it;
  const int hi = *hi_it;

  int effective = shift;
  if (hi + effective > 127 && lo + effective < 0) {
    throw UntransposablePiece("piece '" + piece.source_id + "' spans too wide a range");
  }
  if (hi + effective > 127) effective = shift - 12;
  else if (lo + effective < 0) effective = shift + 12;
  if (hi + effective > 127 || lo + effective < 0) {
    throw UntransposablePiece("piece '" + piece.source_id + "' cannot be shifted by " +
                              std::to_string(shift) + " even after octave folding");
  }

  midi::PitchSequence out;
  out.source_id = piece.source_id;
  out.pitches.reserve(piece.pitches.size());
  for (int p : piece.pitches) out.pitches.push_back(p + effective);
  return out;
}

TrainingCorpus build_db12(const std::vector<midi::PitchSequence>& pieces,
                          std::size_t* skipped_pieces) {
  if (pieces.empty()) throw EmptyCorpus("no pieces to build the db12 corpus from");
  std::size_t skipped = 0;
  std::vector<std::vector<int>> tokens;
  tokens.reserve(pieces.size() * 12);
  for (const auto& piece : pieces) {
    check_piece(piece);
    std::vector<std::vector<int>> copies;
    copies.reserve(12);
    try {
      copies.push_back(piece.pitches);
      for (int shift = 1; shift <= 11; ++shift) {
        copies.push_back(transpose(piece, shift).pitches);
      }
    } catch (const UntransposablePiece&) {
      ++skipped;
      continue;
    }
    for (auto& c : copies) tokens.push_back(std::move(c));
  }
  if (skipped_pieces) *skipped_pieces = skipped;
  if (tokens.empty()) throw EmptyCorpus("no piece survived transposition");
  return index_token_sequences(Variant::db12, std::move(tokens));
}

std::vector<int> to_intervals(const std::vector<int>& pitches) {
  if (pitches.size() < 2) {
    throw EmptySequence("need at least two pitches to form intervals");
  }
  std::vector<int> intervals;
  intervals.reserve(pitches.size() - 1);
  for (std::size_t i = 0; i + 1 < pitches.size(); ++i) {
    intervals.push_back(pitches[i + 1] - pitches[i]);
  }
  return intervals;
}

std::vector<int> from_intervals(const std::vector<int>& intervals, int start) {
  if (start < 0 || start > 127) {
    throw PitchOutOfRange("start pitch " + std::to_string(start) + " is outside 0..127");
  }
  std::vector<int> pitches{start};
  pitches.reserve(intervals.size() + 1);
  int current = start;
  for (int iv : intervals) {
    current += iv;
    if (current < 0 || current > 127) {
      throw PitchOutOfRange("cumulative pitch " + std::to_string(current) +
                            " is outside 0..127");
    }
    pitches.push_back(current);
  }
  return pitches;
}

TrainingCorpus build_interval(const std::vector<midi::PitchSequence>& pieces,
                              std::size_t* skipped_pieces) {
  if (pieces.empty()) throw EmptyCorpus("no pieces to build the interval corpus from");
  std::size_t skipped = 0;
  std::vector<std::vector<int>> tokens;
  tokens.reserve(pieces.size());
  for (const auto& piece : pieces) {
    check_piece(piece);
    auto intervals = to_intervals(piece.pitches);
    if (intervals.size() < 2) {
      ++skipped;  // a single interval leaves nothing to predict
      continue;
    }
    tokens.push_back(std::move(intervals));
  }
  if (skipped_pieces) *skipped_pieces = skipped;
  if (tokens.empty()) throw EmptyCorpus("every piece was too short for intervals");
  return index_token_sequences(Variant::interval, std::move(tokens));
}

void save(const TrainingCorpus& corpus, std::ostream& out) {
  out << "#variant=" << to_string(corpus.variant) << "\n";
  for (const auto& seq : corpus.sequences) {
    for (std::size_t i = 0; i < seq.size(); ++i) {
      if (i) out << ' ';
      out << corpus.vocabulary.token(seq[i]);
    }
    out << "\n";
  }
}

TrainingCorpus load(std::istream& in) {
  std::string header;
  if (!std::getline(in, header) || header.rfind("#variant=", 0) != 0) {
    throw Error("corpus file is missing the #variant= header");
  }
  Variant variant = parse_variant(header.substr(9));

  std::vector<std::vector<int>> tokens;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::vector<int> seq;
    int value;
    while (row >> value) seq.push_back(value);
    if (!row.eof()) throw Error("corpus line is not space-separated integers: " + line);
    if (seq.size() < 2) throw Error("corpus sequence shorter than two tokens: " + line);
    tokens.push_back(std::move(seq));
  }
  if (tokens.empty()) throw EmptyCorpus("corpus file contains no sequences");
  return index_token_sequences(variant, std::move(tokens));
}

void save_pieces(const std::vector<midi::PitchSequence>& pieces, std::ostream& out) {
  out << "#pitches\n";
  for (const auto& piece : pieces) {
    out << piece.source_id << '\t';
    for (std::size_t i = 0; i < piece.pitches.size(); ++i) {
      if (i) out << ' ';
      out << piece.pitches[i];
    }
    out << "\n";
  }
}

std::vector<midi::PitchSequence> load_pieces(std::istream& in) {
  std::string header;
  if (!std::getline(in, header) || header != "#pitches") {
    throw Error("melody file is missing the #pitches header");
  }
  std::vector<midi::PitchSequence> pieces;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos) throw Error("melody line is missing the source id: " + line);
    midi::PitchSequence piece;
    piece.source_id = line.substr(0, tab);
    std::istringstream row(line.substr(tab + 1));
    int value;
    while (row >> value) piece.pitches.push_back(value);
    if (!row.eof()) throw Error("melody line is not space-separated integers: " + line);
    pieces.push_back(std::move(piece));
  }
  if (pieces.empty()) throw EmptyCorpus("melody file contains no pieces");
  return pieces;
}

}  // namespace notespace::corpus
