#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <vector>

#include "notespace/errors.hpp"
#include "notespace/midi.hpp"

namespace notespace::corpus {

enum class Variant { control, db12, interval };

std::string to_string(Variant v);
Variant parse_variant(const std::string& name);

// Bijection between observed token values and contiguous indices.
// Tokens are pitches (0..127) or signed intervals (-127..127), kept sorted
// ascending so that index assignment is deterministic.
class Vocabulary {
 public:
  Vocabulary() = default;

  static Vocabulary from_observed(const std::vector<std::vector<int>>& sequences);

  std::size_t size() const { return tokens_.size(); }
  const std::vector<int>& tokens() const { return tokens_; }
  int token(std::size_t index) const { return tokens_.at(index); }
  bool contains(int token) const { return index_.count(token) != 0; }
  std::size_t index_of(int token) const;  // UnknownToken if absent

 private:
  std::vector<int> tokens_;
  std::unordered_map<int, std::size_t> index_;
};

// Index sequences plus the vocabulary they are indexed through.
struct TrainingCorpus {
  Variant variant = Variant::control;
  std::vector<std::vector<std::size_t>> sequences;
  Vocabulary vocabulary;
};

// One index sequence per piece; vocabulary is the set of observed pitches.
TrainingCorpus build_control(const std::vector<midi::PitchSequence>& pieces);

// Augments each piece with its 11 upward transpositions (octave-folded when
// a shift would leave MIDI range), so every surviving piece contributes
// exactly 12 sequences. Pieces that cannot fit even after folding are
// skipped; the count is reported through skipped_pieces when non-null.
TrainingCorpus build_db12(const std::vector<midi::PitchSequence>& pieces,
                          std::size_t* skipped_pieces = nullptr);

// Sequences of semitone changes between consecutive notes. Pieces with
// fewer than three notes yield a single interval and are dropped so every
// corpus sequence keeps at least one prediction pair; the count is reported
// through skipped_pieces when non-null.
TrainingCorpus build_interval(const std::vector<midi::PitchSequence>& pieces,
                              std::size_t* skipped_pieces = nullptr);

// Shifts every pitch by `shift` semitones. If the result would leave
// [0,127] the whole piece is shifted by shift-12 (overflow) or shift+12
// (underflow) instead; if it still does not fit, UntransposablePiece.
midi::PitchSequence transpose(const midi::PitchSequence& piece, int shift);

// (60,62,67,65) -> (2,5,-2)
std::vector<int> to_intervals(const std::vector<int>& pitches);

// Inverse of to_intervals given the starting pitch. An empty interval list
// yields the one-note sequence [start].
std::vector<int> from_intervals(const std::vector<int>& intervals, int start);

// Line-oriented corpus format: a `#variant=<name>` header, then one
// sequence per line as space-separated token values. Round-trips exactly.
void save(const TrainingCorpus& corpus, std::ostream& out);
TrainingCorpus load(std::istream& in);

// Ingested melodies: a `#pitches` header, then `<source_id>\t<p0> <p1> ...`
// per piece.
void save_pieces(const std::vector<midi::PitchSequence>& pieces, std::ostream& out);
std::vector<midi::PitchSequence> load_pieces(std::istream& in);

}  // namespace notespace::corpus
