#include "notespace/midi.hpp"

#include <doctest.h>

#include "fixtures.hpp"

using namespace notespace;
using fixtures::Bytes;

namespace {

std::vector<std::vector<midi::NoteEvent>> parse(const Bytes& bytes) {
  return midi::parse_smf(std::span<const std::uint8_t>(bytes.data(), bytes.size()));
}

}  // namespace

// expected event lists cross-checked once against the `midi-file` npm parser

TEST_CASE("single note file") {
  const auto tracks = parse(fixtures::single_note_file());
  REQUIRE(tracks.size() == 1);
  CHECK(tracks[0] == std::vector<midi::NoteEvent>{{60, 0, 480}});
}

TEST_CASE("empty track yields no events") {
  const auto tracks = parse(fixtures::empty_track_file());
  REQUIRE(tracks.size() == 1);
  CHECK(tracks[0].empty());
}

TEST_CASE("note-on with velocity zero acts as note-off") {
  const auto tracks = parse(fixtures::velocity_zero_file());
  REQUIRE(tracks.size() == 1);
  CHECK(tracks[0] == std::vector<midi::NoteEvent>{{60, 0, 240}});
}

TEST_CASE("running status carries across events") {
  const auto tracks = parse(fixtures::running_status_file());
  REQUIRE(tracks.size() == 1);
  CHECK(tracks[0] == std::vector<midi::NoteEvent>{{60, 0, 96}, {62, 96, 96}});
}

TEST_CASE("multi-track file keeps tracks separate") {
  const auto tracks = parse(fixtures::multi_track_file());
  REQUIRE(tracks.size() == 3);
  CHECK(tracks[0].empty());  // tempo-only track
  CHECK(tracks[1] == std::vector<midi::NoteEvent>{
                         {60, 0, 480}, {62, 480, 480}, {64, 960, 480}, {65, 1440, 480}});
  CHECK(tracks[2] == std::vector<midi::NoteEvent>{{60, 0, 480}, {64, 0, 480}, {67, 480, 480}});
}

TEST_CASE("malformed and unsupported headers are rejected") {
  Bytes bad{'X', 'X', 'X', 'X', 0, 0, 0, 6};
  CHECK_THROWS_AS(parse(bad), MalformedHeader);

  Bytes format2 = fixtures::smf_header(2, 1);
  fixtures::append(format2, fixtures::track_chunk(fixtures::end_of_track()));
  CHECK_THROWS_AS(parse(format2), UnsupportedFormat);

  Bytes wrong_count = fixtures::smf_header(0, 2);
  fixtures::append(wrong_count, fixtures::track_chunk(fixtures::end_of_track()));
  CHECK_THROWS_AS(parse(wrong_count), MalformedHeader);
}

TEST_CASE("truncated chunks are rejected") {
  Bytes file = fixtures::single_note_file();
  file.resize(file.size() - 2);
  CHECK_THROWS_AS(parse(file), TruncatedChunk);

  Bytes no_end = fixtures::smf_header(0, 1);
  fixtures::append(no_end, fixtures::track_chunk({0x00, 0x90, 0x3c, 0x40}));
  CHECK_THROWS_AS(parse(no_end), TruncatedChunk);
}

TEST_CASE("alien chunks are skipped") {
  Bytes file = fixtures::smf_header(0, 1);
  Bytes alien{'X', 'F', 'I', 'D'};
  fixtures::put_u32(alien, 3);
  alien.insert(alien.end(), {1, 2, 3});
  fixtures::append(file, alien);
  fixtures::append(file, fixtures::track_chunk(fixtures::end_of_track()));
  const auto tracks = parse(file);
  CHECK(tracks.size() == 1);
}

TEST_CASE("parsing the fixture corpus is idempotent and in range") {
  for (const auto& melody : fixtures::fixture_melodies()) {
    const Bytes file = fixtures::melody_file(melody);
    const auto first = parse(file);
    const auto second = parse(file);
    CHECK(first == second);
    REQUIRE(first.size() == 1);
    std::vector<int> pitches;
    std::int64_t last_onset = -1;
    for (const auto& note : first[0]) {
      CHECK(note.pitch >= 0);
      CHECK(note.pitch <= 127);
      CHECK(note.duration_tick >= 1);
      CHECK(note.onset_tick >= last_onset);
      last_onset = note.onset_tick;
      pitches.push_back(note.pitch);
    }
    CHECK(pitches == melody);
  }
}

TEST_CASE("re-serializing parsed events and parsing again is idempotent") {
  const auto original = parse(fixtures::multi_track_file());
  for (const auto& track : original) {
    if (track.empty()) continue;
    std::vector<fixtures::SimpleNote> notes;
    for (const auto& event : track) {
      notes.push_back({event.pitch, event.onset_tick, event.duration_tick});
    }
    const auto reparsed = parse(fixtures::events_to_smf(notes));
    REQUIRE(reparsed.size() == 1);
    CHECK(reparsed[0] == track);
  }
}

TEST_CASE("to_monophonic keeps order on a clean melody") {
  const auto result = midi::to_monophonic({{60, 0, 480}, {62, 480, 480}}, "m");
  CHECK(result.sequence.pitches == std::vector<int>{60, 62});
  CHECK(result.sequence.source_id == "m");
  CHECK_FALSE(result.dropped_chord_notes);
}

TEST_CASE("to_monophonic keeps the highest pitch of a chord") {
  const auto result =
      midi::to_monophonic({{60, 0, 480}, {64, 0, 480}, {65, 480, 480}}, "chord");
  CHECK(result.sequence.pitches == std::vector<int>{64, 65});
  CHECK(result.dropped_chord_notes);
}

TEST_CASE("to_monophonic sorts by onset first") {
  const auto result = midi::to_monophonic({{62, 480, 480}, {60, 0, 480}}, "swapped");
  CHECK(result.sequence.pitches == std::vector<int>{60, 62});
}

TEST_CASE("to_monophonic needs at least two surviving notes") {
  CHECK_THROWS_AS(midi::to_monophonic({{60, 0, 480}}, "one"), EmptySequence);
  CHECK_THROWS_AS(midi::to_monophonic({{60, 0, 480}, {64, 0, 480}}, "chord-only"),
                  EmptySequence);
  CHECK_THROWS_AS(midi::to_monophonic({}, "none"), EmptySequence);
}

TEST_CASE("to_monophonic output is no longer than its input") {
  const auto tracks = parse(fixtures::multi_track_file());
  const auto result = midi::to_monophonic(tracks[2], "t2");
  CHECK(result.sequence.pitches.size() <= tracks[2].size());
  CHECK(result.sequence.pitches == std::vector<int>{64, 67});
}
