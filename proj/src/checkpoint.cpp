#include "notespace/checkpoint.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <type_traits>
#include <vector>

namespace notespace::checkpoint {
namespace {

constexpr char kMagic[8] = {'N', 'O', 'T', 'E', 'S', 'P', 'C', '\0'};
constexpr std::uint32_t kVersion = 1;

template <typename T>
void put(std::ostream& out, T value) {
  static_assert(std::is_trivially_copyable_v<T>);
  out.write(reinterpret_cast<const char*>(&value), sizeof(value));
}

template <typename T>
T get(std::istream& in) {
  T value{};
  in.read(reinterpret_cast<char*>(&value), sizeof(value));
  if (!in) throw Error("checkpoint file is truncated");
  return value;
}

}  // namespace

void save(const Checkpoint& ckpt, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write checkpoint file " + path.string());

  out.write(kMagic, sizeof(kMagic));
  put(out, kVersion);
  put(out, static_cast<std::uint8_t>(ckpt.variant));

  put(out, static_cast<std::uint64_t>(ckpt.vocabulary.size()));
  for (int token : ckpt.vocabulary.tokens()) put(out, static_cast<std::int32_t>(token));

  put(out, static_cast<std::int32_t>(ckpt.config.embedding_dim));
  put(out, static_cast<std::int32_t>(ckpt.config.hidden_size));
  put(out, static_cast<std::int32_t>(ckpt.config.window));
  put(out, static_cast<std::int32_t>(ckpt.config.batch_size));
  put(out, static_cast<std::int32_t>(ckpt.config.epochs));
  put(out, ckpt.config.learning_rate);
  put(out, ckpt.config.seed);

  put(out, static_cast<std::uint64_t>(ckpt.model.vocab_size()));
  put(out, static_cast<std::uint64_t>(ckpt.model.dim()));
  put(out, static_cast<std::uint64_t>(ckpt.model.hidden_size()));
  seqmodel::for_each_tensor(ckpt.model, [&](const auto& t) {
    out.write(reinterpret_cast<const char*>(t.data()),
              static_cast<std::streamsize>(t.size() * sizeof(float)));
  });
  if (!out) throw Error("failed while writing checkpoint file " + path.string());
}

Checkpoint load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open checkpoint file " + path.string());

  char magic[8];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
    throw Error(path.string() + " is not a checkpoint file");
  }
  if (get<std::uint32_t>(in) != kVersion) {
    throw Error("unsupported checkpoint version in " + path.string());
  }

  Checkpoint ckpt;
  const auto variant = get<std::uint8_t>(in);
  if (variant > 2) throw Error("corrupt variant tag in " + path.string());
  ckpt.variant = static_cast<corpus::Variant>(variant);

  const auto vocab_size = get<std::uint64_t>(in);
  std::vector<std::vector<int>> tokens(1);
  tokens[0].reserve(vocab_size);
  for (std::uint64_t i = 0; i < vocab_size; ++i) {
    tokens[0].push_back(get<std::int32_t>(in));
  }
  ckpt.vocabulary = corpus::Vocabulary::from_observed(tokens);
  if (ckpt.vocabulary.size() != vocab_size) {
    throw Error("duplicate vocabulary entries in " + path.string());
  }

  ckpt.config.embedding_dim = get<std::int32_t>(in);
  ckpt.config.hidden_size = get<std::int32_t>(in);
  ckpt.config.window = get<std::int32_t>(in);
  ckpt.config.batch_size = get<std::int32_t>(in);
  ckpt.config.epochs = get<std::int32_t>(in);
  ckpt.config.learning_rate = get<double>(in);
  ckpt.config.seed = get<std::uint64_t>(in);

  const auto v = get<std::uint64_t>(in);
  const auto d = get<std::uint64_t>(in);
  const auto h = get<std::uint64_t>(in);
  if (v != vocab_size) throw Error("embedding row count mismatch in " + path.string());
  ckpt.model = seqmodel::init_parameters<float>(static_cast<int>(v), static_cast<int>(d),
                                                static_cast<int>(h), 0);
  seqmodel::for_each_tensor(ckpt.model, [&](auto& t) {
    in.read(reinterpret_cast<char*>(t.data()),
            static_cast<std::streamsize>(t.size() * sizeof(float)));
  });
  if (!in) throw Error("checkpoint file is truncated: " + path.string());
  in.peek();
  if (!in.eof()) throw Error("trailing bytes in checkpoint file " + path.string());
  return ckpt;
}

}  // namespace notespace::checkpoint
