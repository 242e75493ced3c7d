#include "notespace/midi.hpp"

#include <algorithm>
#include <map>
#include <utility>

namespace notespace::midi {
namespace {

class ByteReader {
 public:
  explicit ByteReader(std::span<const std::uint8_t> data) : data_(data) {}

  std::size_t pos() const { return pos_; }
  std::size_t remaining() const { return data_.size() - pos_; }
  bool at_end() const { return pos_ >= data_.size(); }

  std::uint8_t u8() {
    require(1);
    return data_[pos_++];
  }

  std::uint8_t peek() const {
    if (pos_ >= data_.size()) throw TruncatedChunk("unexpected end of data");
    return data_[pos_];
  }

  std::uint16_t u16() {
    require(2);
    std::uint16_t v = static_cast<std::uint16_t>(data_[pos_] << 8 | data_[pos_ + 1]);
    pos_ += 2;
    return v;
  }

  std::uint32_t u32() {
    require(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v = v << 8 | data_[pos_ + i];
    pos_ += 4;
    return v;
  }

  // MIDI variable-length quantity, at most 4 bytes
  std::uint32_t vlq() {
    std::uint32_t value = 0;
    for (int i = 0; i < 4; ++i) {
      std::uint8_t b = u8();
      value = value << 7 | (b & 0x7f);
      if ((b & 0x80) == 0) return value;
    }
    throw TruncatedChunk("variable-length quantity longer than 4 bytes");
  }

  void skip(std::size_t n) {
    require(n);
    pos_ += n;
  }

  void seek(std::size_t absolute) {
    if (absolute > data_.size()) throw TruncatedChunk("seek past end of data");
    pos_ = absolute;
  }

  bool match(const char (&tag)[5]) {
    if (remaining() < 4) return false;
    for (int i = 0; i < 4; ++i) {
      if (data_[pos_ + i] != static_cast<std::uint8_t>(tag[i])) return false;
    }
    pos_ += 4;
    return true;
  }

 private:
  void require(std::size_t n) const {
    if (remaining() < n) throw TruncatedChunk("unexpected end of data");
  }

  std::span<const std::uint8_t> data_;
  std::size_t pos_ = 0;
};

std::vector<NoteEvent> parse_track(ByteReader& r, std::size_t length) {
  const std::size_t track_end = r.pos() + length;
  std::vector<NoteEvent> notes;
  // open notes keyed by (channel, pitch); FIFO within a key
  std::map<std::pair<int, int>, std::vector<std::int64_t>> open;
  std::int64_t tick = 0;
  std::uint8_t running_status = 0;
  bool ended = false;

  auto close_note = [&](int channel, int pitch, std::int64_t off_tick) {
    auto it = open.find({channel, pitch});
    if (it == open.end() || it->second.empty()) return;  // stray Note-Off
    std::int64_t onset = it->second.front();
    it->second.erase(it->second.begin());
    std::int64_t duration = off_tick - onset;
    notes.push_back({pitch, onset, duration >= 1 ? duration : 1});
  };

  while (!ended) {
    if (r.pos() >= track_end) throw TruncatedChunk("track ended without End of Track");
    tick += r.vlq();

    std::uint8_t status;
    if (r.peek() & 0x80) {
      status = r.u8();
      if (status < 0xf0) running_status = status;
    } else {
      if (running_status == 0) throw TruncatedChunk("data byte without running status");
      status = running_status;
    }

    if (status < 0xf0) {
      const int kind = status & 0xf0;
      const int channel = status & 0x0f;
      switch (kind) {
        case 0x80: {  // Note-Off
          int pitch = r.u8() & 0x7f;
          r.u8();  // release velocity
          close_note(channel, pitch, tick);
          break;
        }
        case 0x90: {  // Note-On; velocity 0 means Note-Off
          int pitch = r.u8() & 0x7f;
          int velocity = r.u8() & 0x7f;
          if (velocity == 0) {
            close_note(channel, pitch, tick);
          } else {
            open[{channel, pitch}].push_back(tick);
          }
          break;
        }
        case 0xa0:  // polyphonic aftertouch
        case 0xb0:  // controller
        case 0xe0:  // pitch bend
          r.skip(2);
          break;
        case 0xc0:  // program change
        case 0xd0:  // channel aftertouch
          r.skip(1);
          break;
        default:
          throw TruncatedChunk("unexpected status byte in track");
      }
    } else if (status == 0xff) {  // meta event
      running_status = 0;
      std::uint8_t type = r.u8();
      std::uint32_t len = r.vlq();
      r.skip(len);
      if (type == 0x2f) ended = true;
    } else if (status == 0xf0 || status == 0xf7) {  // sysex
      running_status = 0;
      r.skip(r.vlq());
    } else {
      throw TruncatedChunk("unexpected system message in track");
    }
    if (r.pos() > track_end) throw TruncatedChunk("event overruns declared track length");
  }

  // notes still sounding at End of Track close there
  for (auto& [key, onsets] : open) {
    for (std::int64_t onset : onsets) {
      std::int64_t duration = tick - onset;
      notes.push_back({key.second, onset, duration >= 1 ? duration : 1});
    }
  }

  r.seek(track_end);
  std::sort(notes.begin(), notes.end(), [](const NoteEvent& a, const NoteEvent& b) {
    return a.onset_tick != b.onset_tick ? a.onset_tick < b.onset_tick : a.pitch < b.pitch;
  });
  return notes;
}

}  // namespace

std::vector<std::vector<NoteEvent>> parse_smf(std::span<const std::uint8_t> bytes) {
  ByteReader r(bytes);
  if (!r.match("MThd")) throw MalformedHeader("missing MThd chunk");
  if (r.remaining() < 10) throw MalformedHeader("header chunk truncated");
  if (r.u32() != 6) throw MalformedHeader("MThd length is not 6");
  const std::uint16_t format = r.u16();
  if (format == 2) throw UnsupportedFormat("SMF format 2 is not supported");
  if (format > 2) throw UnsupportedFormat("unknown SMF format");
  const std::uint16_t declared_tracks = r.u16();
  r.u16();  // division; tick unit is irrelevant for pitch extraction

  std::vector<std::vector<NoteEvent>> tracks;
  while (!r.at_end()) {
    if (r.match("MTrk")) {
      std::uint32_t length = r.u32();
      if (length > r.remaining()) throw TruncatedChunk("MTrk length exceeds file size");
      tracks.push_back(parse_track(r, length));
    } else {
      if (r.remaining() < 8) throw TruncatedChunk("trailing bytes are not a chunk");
      r.skip(4);
      r.skip(r.u32());  // alien chunk
    }
  }
  if (tracks.size() != declared_tracks) {
    throw MalformedHeader("track count does not match header");
  }
  return tracks;
}

MonophonicResult to_monophonic(std::vector<NoteEvent> events, std::string source_id) {
  std::stable_sort(events.begin(), events.end(),
                   [](const NoteEvent& a, const NoteEvent& b) {
                     return a.onset_tick < b.onset_tick;
                   });

  MonophonicResult result;
  result.sequence.source_id = std::move(source_id);
  for (std::size_t i = 0; i < events.size();) {
    std::size_t j = i;
    int best = events[i].pitch;
    while (j + 1 < events.size() && events[j + 1].onset_tick == events[i].onset_tick) {
      ++j;
      best = std::max(best, events[j].pitch);
    }
    if (j > i) result.dropped_chord_notes = true;
    result.sequence.pitches.push_back(best);
    i = j + 1;
  }

  if (result.sequence.pitches.size() < 2) {
    throw EmptySequence("fewer than two notes survive in '" +
                        result.sequence.source_id + "'");
  }
  return result;
}

}  // namespace notespace::midi
