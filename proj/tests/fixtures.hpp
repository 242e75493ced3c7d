#pragma once

// Hand-assembled SMF byte streams for parser tests and synthetic melodies
// for pipeline tests.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace fixtures {

using Bytes = std::vector<std::uint8_t>;

inline void put_u16(Bytes& b, std::uint16_t v) {
  b.push_back(static_cast<std::uint8_t>(v >> 8));
  b.push_back(static_cast<std::uint8_t>(v & 0xff));
}

inline void put_u32(Bytes& b, std::uint32_t v) {
  b.push_back(static_cast<std::uint8_t>(v >> 24));
  b.push_back(static_cast<std::uint8_t>((v >> 16) & 0xff));
  b.push_back(static_cast<std::uint8_t>((v >> 8) & 0xff));
  b.push_back(static_cast<std::uint8_t>(v & 0xff));
}

inline void put_vlq(Bytes& b, std::uint32_t v) {
  std::uint8_t stack[4];
  int n = 0;
  do {
    stack[n++] = static_cast<std::uint8_t>(v & 0x7f);
    v >>= 7;
  } while (v > 0);
  while (n > 1) b.push_back(stack[--n] | 0x80);
  b.push_back(stack[0]);
}

inline Bytes smf_header(std::uint16_t format, std::uint16_t ntracks,
                        std::uint16_t division = 480) {
  Bytes b{'M', 'T', 'h', 'd'};
  put_u32(b, 6);
  put_u16(b, format);
  put_u16(b, ntracks);
  put_u16(b, division);
  return b;
}

inline Bytes track_chunk(const Bytes& events) {
  Bytes b{'M', 'T', 'r', 'k'};
  put_u32(b, static_cast<std::uint32_t>(events.size()));
  b.insert(b.end(), events.begin(), events.end());
  return b;
}

inline void append(Bytes& dest, const Bytes& src) {
  dest.insert(dest.end(), src.begin(), src.end());
}

inline Bytes end_of_track() { return {0x00, 0xff, 0x2f, 0x00}; }

// format 0, one track: Note-On(ch0, 60, vel 64) at tick 0, Note-Off at 480
inline Bytes single_note_file() {
  Bytes events{0x00, 0x90, 0x3c, 0x40};
  put_vlq(events, 480);
  events.insert(events.end(), {0x80, 0x3c, 0x40});
  append(events, end_of_track());
  Bytes file = smf_header(0, 1);
  append(file, track_chunk(events));
  return file;
}

// header plus an immediately ending track
inline Bytes empty_track_file() {
  Bytes file = smf_header(0, 1);
  append(file, track_chunk(end_of_track()));
  return file;
}

// Note-On(60, 64) then Note-On(60, vel 0) at tick 240
inline Bytes velocity_zero_file() {
  Bytes events{0x00, 0x90, 0x3c, 0x40};
  put_vlq(events, 240);
  events.insert(events.end(), {0x90, 0x3c, 0x00});
  append(events, end_of_track());
  Bytes file = smf_header(0, 1);
  append(file, track_chunk(events));
  return file;
}

// two notes written entirely under running status after one 0x90
inline Bytes running_status_file() {
  Bytes events{
      0x00, 0x90, 0x3c, 0x40,  // on 60 @0
      0x60, 0x3c, 0x00,        // off 60 @96 (running status, vel 0)
      0x00, 0x3e, 0x40,        // on 62 @96
      0x60, 0x3e, 0x00,        // off 62 @192
  };
  append(events, end_of_track());
  Bytes file = smf_header(0, 1);
  append(file, track_chunk(events));
  return file;
}

// format 1: tempo-only track, a scale fragment, and a track with a chord
inline Bytes multi_track_file() {
  Bytes meta{0x00, 0xff, 0x51, 0x03, 0x07, 0xa1, 0x20};
  append(meta, end_of_track());

  Bytes scale;
  for (std::uint8_t pitch : {0x3c, 0x3e, 0x40, 0x41}) {
    scale.insert(scale.end(), {0x00, 0x90, pitch, 0x64});
    put_vlq(scale, 480);
    scale.insert(scale.end(), {0x80, pitch, 0x40});
  }
  append(scale, end_of_track());

  Bytes chord{
      0x00, 0x90, 0x3c, 0x64,  // on 60 @0
      0x00, 0x90, 0x40, 0x64,  // on 64 @0
  };
  put_vlq(chord, 480);
  chord.insert(chord.end(), {0x80, 0x3c, 0x40});   // off 60 @480
  chord.insert(chord.end(), {0x00, 0x80, 0x40, 0x40,   // off 64 @480
                             0x00, 0x90, 0x43, 0x64});  // on 67 @480
  put_vlq(chord, 480);
  chord.insert(chord.end(), {0x80, 0x43, 0x40});
  append(chord, end_of_track());

  Bytes file = smf_header(1, 3);
  append(file, track_chunk(meta));
  append(file, track_chunk(scale));
  append(file, track_chunk(chord));
  return file;
}

struct SimpleNote {
  int pitch;
  std::int64_t onset;
  std::int64_t duration;
};

// serializes resolved notes back into a one-track SMF
inline Bytes events_to_smf(const std::vector<SimpleNote>& notes) {
  struct Edge {
    std::int64_t tick;
    bool on;
    int pitch;
  };
  std::vector<Edge> edges;
  for (const auto& note : notes) {
    edges.push_back({note.onset, true, note.pitch});
    edges.push_back({note.onset + note.duration, false, note.pitch});
  }
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    if (a.tick != b.tick) return a.tick < b.tick;
    if (a.on != b.on) return !a.on;  // close notes before opening new ones
    return a.pitch < b.pitch;
  });

  Bytes events;
  std::int64_t cursor = 0;
  for (const auto& edge : edges) {
    put_vlq(events, static_cast<std::uint32_t>(edge.tick - cursor));
    cursor = edge.tick;
    events.push_back(edge.on ? 0x90 : 0x80);
    events.push_back(static_cast<std::uint8_t>(edge.pitch));
    events.push_back(edge.on ? 0x40 : 0x00);
  }
  append(events, end_of_track());
  Bytes file = smf_header(0, 1);
  append(file, track_chunk(events));
  return file;
}

// one melody per file, quarter notes at the default division
inline Bytes melody_file(const std::vector<int>& pitches) {
  Bytes events;
  for (int pitch : pitches) {
    events.insert(events.end(), {0x00, 0x90, static_cast<std::uint8_t>(pitch), 0x40});
    put_vlq(events, 480);
    events.insert(events.end(), {0x80, static_cast<std::uint8_t>(pitch), 0x40});
  }
  append(events, end_of_track());
  Bytes file = smf_header(0, 1);
  append(file, track_chunk(events));
  return file;
}

// The synthetic melody corpus used across the pipeline tests: simple
// scales, arpeggios and motifs around middle C, 19 distinct pitches.
inline std::vector<std::vector<int>> fixture_melodies() {
  return {
      {60, 62, 64, 65, 67, 69, 71, 72, 71, 69, 67, 65, 64, 62, 60, 62, 64, 60},
      {60, 64, 67, 72, 67, 64, 60, 64, 67, 64, 60, 67, 72, 67, 64, 60},
      {57, 59, 60, 62, 64, 62, 60, 59, 57, 59, 60, 62, 59, 57, 60, 57},
      {62, 65, 69, 74, 69, 65, 62, 65, 69, 65, 62, 69, 74, 69, 65, 62},
      {67, 66, 64, 62, 60, 62, 64, 66, 67, 69, 67, 66, 64, 62, 64, 67},
      {55, 60, 64, 67, 64, 60, 55, 60, 64, 60, 55, 64, 67, 64, 60, 55},
      {64, 62, 60, 62, 64, 64, 64, 62, 62, 62, 64, 67, 67, 64, 62, 60},
      {60, 67, 65, 64, 62, 72, 71, 69, 67, 65, 64, 62, 60, 62, 64, 65},
      {69, 71, 72, 74, 76, 74, 72, 71, 69, 71, 72, 74, 71, 69, 72, 69},
      {48, 52, 55, 60, 55, 52, 48, 52, 55, 52, 48, 55, 60, 55, 52, 48},
      {65, 64, 62, 60, 59, 60, 62, 64, 65, 67, 65, 64, 62, 60, 62, 65},
      {72, 71, 69, 67, 65, 64, 62, 60, 62, 64, 65, 67, 69, 71, 72, 71},
  };
}

inline void write_bytes(const std::filesystem::path& path, const Bytes& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write fixture " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
}

// Writes melody_01.mid .. melody_12.mid under dir and returns the paths.
inline std::vector<std::filesystem::path> write_fixture_corpus(
    const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> paths;
  const auto melodies = fixture_melodies();
  for (std::size_t i = 0; i < melodies.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof(name), "melody_%02zu.mid", i + 1);
    const auto path = dir / name;
    write_bytes(path, melody_file(melodies[i]));
    paths.push_back(path);
  }
  return paths;
}

}  // namespace fixtures
