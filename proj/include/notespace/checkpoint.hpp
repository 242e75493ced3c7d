#pragma once

#include <filesystem>

#include "notespace/corpus.hpp"
#include "notespace/seqmodel.hpp"

namespace notespace::checkpoint {

// Everything needed to resume analysis on a trained model. Stored as a
// little-endian binary container (magic, version, variant, vocabulary,
// train config, tensor data in canonical order); reload is bit-exact.
struct Checkpoint {
  corpus::Variant variant = corpus::Variant::control;
  corpus::Vocabulary vocabulary;
  seqmodel::TrainConfig config;
  seqmodel::Model<float> model;
};

void save(const Checkpoint& ckpt, const std::filesystem::path& path);
Checkpoint load(const std::filesystem::path& path);

}  // namespace notespace::checkpoint
