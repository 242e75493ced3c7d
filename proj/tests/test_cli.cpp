#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "fixtures.hpp"

namespace fs = std::filesystem;

namespace {

struct CliResult {
  int exit_code = -1;
  std::string output;  // stdout + stderr
};

const fs::path& work_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "notespace_cli_tests";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

CliResult run_cli(const std::string& args) {
  const fs::path capture = work_dir() / "capture.txt";
  const std::string cmd =
      std::string(NOTESPACE_CLI_PATH) + " " + args + " > " + capture.string() + " 2>&1";
  const int raw = std::system(cmd.c_str());
  CliResult result;
  result.exit_code = WEXITSTATUS(raw);
  std::ifstream in(capture);
  std::stringstream buffer;
  buffer << in.rdbuf();
  result.output = buffer.str();
  return result;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

TEST_CASE("full pipeline over the fixture corpus") {
  const fs::path midi_dir = work_dir() / "midi";
  fixtures::write_fixture_corpus(midi_dir);
  const std::string out = (work_dir() / "run").string();

  // ingest a directory (recursive *.mid glob)
  auto r = run_cli("ingest " + midi_dir.string() + " --out " + out);
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("12 melodies") != std::string::npos);
  CHECK(fs::exists(fs::path(out) / "melodies.txt"));

  const std::string melodies = (fs::path(out) / "melodies.txt").string();
  for (const std::string variant : {"control", "db12", "interval"}) {
    r = run_cli("build " + melodies + " --variant " + variant + " --out " + out);
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("Total: ") != std::string::npos);
    CHECK(fs::exists(fs::path(out) / ("dataset_" + variant + ".txt")));
  }

  // db12 multiplies the piece count by 12
  r = run_cli("build " + melodies + " --variant db12 --out " + out);
  CHECK(r.output.find("144 sequences") != std::string::npos);

  r = run_cli("train " + out + "/dataset_control.txt --dim 8 --hidden 8 --window 16 "
              "--batch 4 --epochs 3 --seed 5 --out " + out);
  CHECK(r.exit_code == 0);
  CHECK(fs::exists(fs::path(out) / "checkpoint_control.nsc"));
  CHECK(fs::exists(fs::path(out) / "loss_control.csv"));
  CHECK(fs::exists(fs::path(out) / "vectors_control.tsv"));
  CHECK(fs::exists(fs::path(out) / "metadata_control.tsv"));
  CHECK(slurp(fs::path(out) / "loss_control.csv").rfind("epoch,loss\n", 0) == 0);

  r = run_cli("project " + out + "/checkpoint_control.nsc --dims 2 --perplexity 5 "
              "--iterations 60 --seed 2 --out " + out);
  CHECK(r.exit_code == 0);
  CHECK(fs::exists(fs::path(out) / "projection_control_2d.tsv"));
  CHECK(fs::exists(fs::path(out) / "kl_control_2d.csv"));
  CHECK(fs::exists(fs::path(out) / "projection_control_2d.svg"));
  CHECK(slurp(fs::path(out) / "projection_control_2d.tsv").rfind("token\ty1\ty2\n", 0) == 0);

  r = run_cli("project " + out + "/checkpoint_control.nsc --dims 3 --perplexity 5 "
              "--iterations 60 --seed 2 --out " + out);
  CHECK(r.exit_code == 0);
  CHECK(fs::exists(fs::path(out) / "projection_control_3d.tsv"));
  CHECK(slurp(fs::path(out) / "projection_control_3d.tsv").rfind("token\ty1\ty2\ty3\n", 0) == 0);
  CHECK_FALSE(fs::exists(fs::path(out) / "projection_control_3d.svg"));

  r = run_cli("neighbors " + out + "/checkpoint_control.nsc --query C5 --k 5 --out " + out);
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("Selection: C5") != std::string::npos);
  CHECK(fs::exists(fs::path(out) / "neighbors_control.txt"));

  // raw integer query resolves like the note name
  r = run_cli("neighbors " + out + "/checkpoint_control.nsc --query 60 --k 5 --out " + out);
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("Selection: C5") != std::string::npos);

  r = run_cli("neighbors " + out + "/checkpoint_control.nsc --query C5 --k 5 --csv --out " +
              out);
  CHECK(r.exit_code == 0);
  CHECK(slurp(fs::path(out) / "neighbors_control.csv")
            .rfind("token,label,cosine_distance\n", 0) == 0);

  r = run_cli("plot " + out + "/projection_control_2d.tsv --query C5 --checkpoint " + out +
              "/checkpoint_control.nsc --k 5 --out " + out);
  CHECK(r.exit_code == 0);
  CHECK(fs::exists(fs::path(out) / "plot_projection_control_2d.svg"));

  CHECK(fs::exists(fs::path(out) / "manifest.json"));
  const std::string manifest = slurp(fs::path(out) / "manifest.json");
  CHECK(manifest.find("\"train\"") != std::string::npos);
  CHECK(manifest.find("\"seed\": 5") != std::string::npos);

  // interval pipeline and signed queries
  r = run_cli("train " + out + "/dataset_interval.txt --dim 8 --hidden 8 --window 16 "
              "--batch 4 --epochs 3 --seed 5 --out " + out);
  CHECK(r.exit_code == 0);
  r = run_cli("neighbors " + out + "/checkpoint_interval.nsc --query 3 --k 5 --out " + out);
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("Selection: 3") != std::string::npos);
  r = run_cli("neighbors " + out + "/checkpoint_interval.nsc --query=-2 --k 5 --out " + out);
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("Selection: -2") != std::string::npos);
}

TEST_CASE("usage errors exit with code 2") {
  const std::string out = (work_dir() / "usage").string();
  CHECK(run_cli("ingest").exit_code == 2);
  CHECK(run_cli("build nowhere.txt --variant swing --out " + out).exit_code == 2);
  CHECK(run_cli("frobnicate").exit_code == 2);

  // a checkpoint is needed before the remaining cases
  const fs::path midi_dir = work_dir() / "usage_midi";
  fixtures::write_fixture_corpus(midi_dir);
  REQUIRE(run_cli("ingest " + midi_dir.string() + " --out " + out).exit_code == 0);
  REQUIRE(run_cli("build " + out + "/melodies.txt --variant control --out " + out).exit_code == 0);
  REQUIRE(run_cli("train " + out + "/dataset_control.txt --dim 4 --hidden 4 --epochs 2 "
                  "--out " + out).exit_code == 0);

  CHECK(run_cli("project " + out + "/checkpoint_control.nsc --dims 4 --out " + out).exit_code == 2);
  auto r = run_cli("neighbors " + out + "/checkpoint_control.nsc --query H9 --out " + out);
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("C") != std::string::npos);  // lists valid names
  CHECK(run_cli("plot " + out + "/nonexistent.tsv --query C5 --out " + out).exit_code == 2);
}

TEST_CASE("runtime failures exit with code 1") {
  const std::string out = (work_dir() / "runtime").string();
  auto r = run_cli("train missing_dataset.txt --out " + out);
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("missing_dataset.txt") != std::string::npos);
  CHECK(run_cli("neighbors missing.nsc --query C5 --out " + out).exit_code == 1);
  CHECK(run_cli("ingest no_such_dir_or_file.mid --out " + out).exit_code == 1);
}

TEST_CASE("config file supplies defaults that flags override") {
  const std::string out = (work_dir() / "config_run").string();
  const fs::path midi_dir = work_dir() / "config_midi";
  fixtures::write_fixture_corpus(midi_dir);

  const fs::path config = work_dir() / "config.json";
  std::ofstream(config) << R"({"out": ")" + out + R"(", "variant": "control",
    "embedding_dim": 4, "hidden_size": 4, "epochs": 2, "seed": 11})";

  REQUIRE(run_cli("ingest " + midi_dir.string() + " --config " + config.string()).exit_code == 0);
  REQUIRE(run_cli("build " + out + "/melodies.txt --config " + config.string()).exit_code == 0);
  REQUIRE(run_cli("train " + out + "/dataset_control.txt --config " + config.string())
              .exit_code == 0);
  CHECK(fs::exists(fs::path(out) / "checkpoint_control.nsc"));

  // the flag wins over the config entry
  auto r = run_cli("build " + out + "/melodies.txt --variant interval --config " +
                   config.string());
  CHECK(r.exit_code == 0);
  CHECK(fs::exists(fs::path(out) / "dataset_interval.txt"));
}

TEST_CASE("ingest reports chord drops") {
  const fs::path dir = work_dir() / "chord_midi";
  fs::create_directories(dir);
  fixtures::write_bytes(dir / "chord.mid", fixtures::multi_track_file());
  const std::string out = (work_dir() / "chord_run").string();
  auto r = run_cli("ingest " + dir.string() + " --out " + out);
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("chord notes dropped") != std::string::npos);
  CHECK(r.output.find("7 notes") != std::string::npos);  // 4 + 3 across tracks
}
