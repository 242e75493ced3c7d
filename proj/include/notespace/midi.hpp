#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "notespace/errors.hpp"

namespace notespace::midi {

// One sounded note, resolved from a Note-On/Note-Off pair.
struct NoteEvent {
  int pitch = 0;  // semitone index, 0..127
  std::int64_t onset_tick = 0;
  std::int64_t duration_tick = 1;
  bool operator==(const NoteEvent&) const = default;
};

// Melody line extracted from one track.
struct PitchSequence {
  std::vector<int> pitches;
  std::string source_id;
};

// Parses a Standard MIDI File (format 0 or 1) into note events, one list
// per MTrk chunk, in onset order. Running status is honored, Note-On with
// velocity 0 closes the note like a Note-Off, and non-note messages are
// consumed and dropped. Alien chunks are skipped per the SMF spec.
//
// Throws MalformedHeader, TruncatedChunk or UnsupportedFormat (format 2).
std::vector<std::vector<NoteEvent>> parse_smf(std::span<const std::uint8_t> bytes);

struct MonophonicResult {
  PitchSequence sequence;
  bool dropped_chord_notes = false;
};

// Flattens events into a single melodic line ordered by onset. When several
// notes share an onset only the highest pitch survives; the flag reports
// whether anything was dropped. Fewer than two surviving notes raises
// EmptySequence.
MonophonicResult to_monophonic(std::vector<NoteEvent> events, std::string source_id);

}  // namespace notespace::midi
