// End-to-end runs of the corvid binary: subcommands, file outputs, JSON
// schemas and exit codes.

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include <nlohmann/json.hpp>

#include "corvid/codec_io.hpp"
#include "corvid/corrupt.hpp"
#include "corvid/pipeline.hpp"
#include "support/synthetic.hpp"

namespace fs = std::filesystem;
using namespace corvid;
using namespace corvid::testing;

namespace {

std::string cli_path() {
  const char* env = std::getenv("CORVID_CLI");
  if (env && fs::exists(env)) return env;
  std::error_code ec;
  fs::path self = fs::read_symlink("/proc/self/exe", ec);
  if (!ec) {
    fs::path uncle = self.parent_path().parent_path() / "corvid";
    if (fs::exists(uncle)) return uncle.string();
  }
  return {};
}

struct CliFixture {
  TempDir dir{"cli"};
  std::string cli;
  fs::path sources;
  fs::path pristine;

  CliFixture() {
    cli = cli_path();
    REQUIRE_MESSAGE(!cli.empty(), "corvid binary not found; set CORVID_CLI");
    require_codec_profile();  // asserts corvid-codec presence for subprocesses

    sources = dir.path() / "src";
    make_fixture_corpus(sources, 2, 160, 128, 32, 3100);
    pristine = dir.path() / "pristine.264";
    CodecProfile profile = require_codec_profile();
    encode((sources / "clip00_160x128.yuv").string(), profile,
           pristine.string());
  }

  CommandResult run(const std::string& args) const {
    return run_command(cli + " " + args);
  }
};

CliFixture& fixture() {
  static CliFixture instance;
  return instance;
}

nlohmann::json load_json(const fs::path& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  nlohmann::json doc;
  in >> doc;
  return doc;
}

}  // namespace

TEST_CASE("inspect prints a summary and writes the NALU index") {
  fs::path index = fixture().dir.path() / "index.json";
  CommandResult result = fixture().run("inspect --in " + fixture().pristine.string() +
                                       " --json " + index.string());
  CHECK(result.exit_code == 0);
  CHECK(result.output.find("payload fraction") != std::string::npos);
  CHECK(result.output.find("GOPs: 2") != std::string::npos);

  nlohmann::json doc = load_json(index);
  REQUIRE(doc.is_array());
  CHECK(doc.size() > 30);
  for (const char* key : {"offset", "start_code_len", "type", "kind",
                          "payload_len"}) {
    CHECK(doc[0].contains(key));
  }
}

TEST_CASE("corrupt emits the logged edits in the documented schema") {
  fs::path out = fixture().dir.path() / "corrupted.264";
  fs::path log = fixture().dir.path() / "corruption.json";
  CommandResult result = fixture().run(
      "corrupt --in " + fixture().pristine.string() + " --out " + out.string() +
      " --p 2/16 --loc 0.4 --size 1024 --seed 9 --log " + log.string());
  CHECK(result.exit_code == 0);
  REQUIRE(fs::exists(out));

  nlohmann::json doc = load_json(log);
  CHECK(doc["params"]["p"] == "2/16");
  CHECK(doc["params"]["loc"] == 0.4);
  CHECK(doc["params"]["size"] == 1024);
  CHECK(doc["params"]["seed"] == 9);
  CHECK(doc["params"]["exclude_idr"] == false);
  CHECK(doc["original_len"] == fs::file_size(fixture().pristine));
  CHECK(doc["corrupted_len"] == fs::file_size(out));
  REQUIRE(doc["records"].is_array());
  REQUIRE(!doc["records"].empty());
  for (const char* key : {"frame", "gop", "nalu", "offset", "len", "requested"}) {
    CHECK(doc["records"][0].contains(key));
  }

  // Determinism through the CLI: same seed, same bytes.
  fs::path out2 = fixture().dir.path() / "corrupted2.264";
  CHECK(fixture().run("corrupt --in " + fixture().pristine.string() + " --out " +
                      out2.string() + " --p 2/16 --loc 0.4 --size 1024 --seed 9")
            .exit_code == 0);
  std::ifstream a(out, std::ios::binary), b(out2, std::ios::binary);
  std::string bytes_a((std::istreambuf_iterator<char>(a)),
                      std::istreambuf_iterator<char>());
  std::string bytes_b((std::istreambuf_iterator<char>(b)),
                      std::istreambuf_iterator<char>());
  CHECK(bytes_a == bytes_b);
}

TEST_CASE("decode writes raw frames") {
  fs::path out = fixture().dir.path() / "decoded_160x128.yuv";
  CommandResult result = fixture().run("decode --in " + fixture().pristine.string() +
                                       " --out " + out.string());
  CHECK(result.exit_code == 0);
  CHECK(fs::file_size(out) == 32u * (160 * 128 * 3 / 2));
}

TEST_CASE("branch, stats, verify, recover and eval chain together") {
  fs::path branch = fixture().dir.path() / "branch";
  CommandResult built = fixture().run(
      "branch --source " + fixture().sources.string() + " --out " +
      branch.string() + " --p 1/16 --loc 0.4 --size 4096 --seed 77");
  CHECK(built.exit_code == 0);
  REQUIRE(fs::exists(branch / "manifest.json"));

  CommandResult stats = fixture().run("stats --branch " + branch.string());
  CHECK(stats.exit_code == 0);
  CHECK(stats.output.find("corrupted fraction") != std::string::npos);

  CommandResult verify =
      fixture().run("verify --manifest " + (branch / "manifest.json").string());
  CHECK(verify.exit_code == 0);
  CHECK(verify.output.find("FAIL") == std::string::npos);

  fs::path recovered = fixture().dir.path() / "recovered";
  CommandResult recover = fixture().run("recover --method temporal --in " +
                                        branch.string() + " --out " +
                                        recovered.string());
  CHECK(recover.exit_code == 0);
  CHECK(fs::exists(recovered / "clip00_160x128.yuv"));

  // Reference dir for eval: the decoded originals, named per clip.
  fs::path refs = fixture().dir.path() / "refs";
  fs::create_directories(refs);
  BranchManifest manifest = BranchManifest::from_json_text([&] {
    std::ifstream in(branch / "manifest.json");
    return std::string((std::istreambuf_iterator<char>(in)),
                       std::istreambuf_iterator<char>());
  }());
  for (const ClipEntry& clip : manifest.clips) {
    fs::copy_file(branch / clip.orig_frames,
                  refs / (clip.clip_id + "_160x128.yuv"));
  }
  fs::path report = fixture().dir.path() / "report.json";
  CommandResult eval = fixture().run("eval --rec " + recovered.string() +
                                     " --ref " + refs.string() + " --out " +
                                     report.string());
  CHECK(eval.exit_code == 0);
  nlohmann::json doc = load_json(report);
  CHECK(doc["schema_version"] == 1);
  CHECK(doc["clips"].size() == 2);
  CHECK(doc.contains("psnr_mean"));
  CHECK(doc.contains("ssim_mean"));
}

TEST_CASE("matrix builds from a spec file") {
  fs::path spec_path = fixture().dir.path() / "matrix.json";
  fs::path out_root = fixture().dir.path() / "matrix_out";
  {
    nlohmann::json spec;
    spec["source_dir"] = fixture().sources.string();
    spec["out_root"] = out_root.string();
    spec["seed"] = 5;
    spec["branches"] = nlohmann::json::array();
    for (unsigned m : {1u, 2u}) {
      spec["branches"].push_back(
          {{"p", std::to_string(m) + "/16"}, {"loc", 0.4}, {"size", 2048}});
    }
    std::ofstream out(spec_path);
    out << spec.dump(2);
  }
  CommandResult result = fixture().run("matrix --spec " + spec_path.string());
  CHECK(result.exit_code == 0);
  CHECK(fs::exists(out_root / "comparison.json"));
  CHECK(fs::exists(out_root / "p1-16_L0.4_S2048" / "manifest.json"));
  CHECK(fs::exists(out_root / "p2-16_L0.4_S2048" / "manifest.json"));
}

TEST_CASE("exit codes distinguish failure classes") {
  // Total failure: missing manifest.
  CHECK(fixture().run("verify --manifest /nonexistent/manifest.json").exit_code ==
        2);

  // Environment error: config points at a nonexistent transcoder.
  fs::path bad_config = fixture().dir.path() / "bad_profile.json";
  {
    std::ofstream out(bad_config);
    out << R"({"encode_cmd": "missing-tool {in} {out} {gop}",
               "decode_cmd": "missing-tool {in} {out}"})";
  }
  fs::path out_dir = fixture().dir.path() / "envfail";
  CommandResult env_fail = fixture().run(
      "--config " + bad_config.string() + " branch --source " +
      fixture().sources.string() + " --out " + out_dir.string());
  CHECK(env_fail.exit_code == 3);

  // Partial failure: one broken source among good ones.
  fs::path mixed = fixture().dir.path() / "mixed_src";
  fs::create_directories(mixed);
  fs::copy_file(fixture().sources / "clip00_160x128.yuv",
                mixed / "good_160x128.yuv");
  std::ofstream(mixed / "broken_160x128.yuv") << "junk";
  CommandResult partial = fixture().run(
      "branch --source " + mixed.string() + " --out " +
      (fixture().dir.path() / "partial").string() +
      " --p 1/16 --loc 0.4 --size 1024 --seed 3");
  CHECK(partial.exit_code == 1);

  // Bad CLI usage is nonzero.
  CHECK(fixture().run("corrupt --in nothing").exit_code != 0);
}

TEST_CASE("global flags fall through from subcommands") {
  // --seed after the subcommand name must reach the global option.
  fs::path out = fixture().dir.path() / "fallthrough.264";
  CommandResult result = fixture().run(
      "corrupt --in " + fixture().pristine.string() + " --out " + out.string() +
      " --p 1/16 --seed 123 --log " +
      (fixture().dir.path() / "fallthrough.json").string());
  CHECK(result.exit_code == 0);
  nlohmann::json doc = load_json(fixture().dir.path() / "fallthrough.json");
  CHECK(doc["params"]["seed"] == 123);
}
