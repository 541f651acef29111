// End-to-end smoke of the installed command line: phantom -> run -> score,
// plus config-file precedence. Shells out to the real binary.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <nlohmann/json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

int failures = 0;

void check(bool ok, const std::string& what) {
  std::printf("%s %s\n", ok ? "ok" : "FAIL", what.c_str());
  if (!ok) ++failures;
}

int run(const std::string& args) {
  const std::string cmd = std::string(CTSLIM_BIN) + " " + args + " > /dev/null 2>&1";
  return std::system(cmd.c_str());
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string((std::istreambuf_iterator<char>(in)), {});
}

}  // namespace

int main() {
  const fs::path root = fs::temp_directory_path() / "ctslim_cli_smoke";
  fs::remove_all(root);
  fs::create_directories(root);
  const std::string data = (root / "data").string();
  const std::string out = (root / "out").string();

  check(run("--help") == 0, "--help exits 0");
  check(run("run") != 0, "run without required flags fails");

  check(run("phantom --out " + data + " --scans 2 --slices 16 --size 96x96 --seed 3") == 0,
        "phantom generates a dataset");
  check(fs::exists(root / "data" / "phantom_000" / "slice_0000.png"), "phantom slices on disk");
  check(fs::exists(root / "data" / "phantom_000.truth.json"), "phantom truth on disk");

  check(run("run --input " + data + " --out " + out +
            " --samples 4 --out-size 48x48 --seed 11 --quiet") == 0,
        "run processes the dataset");
  check(fs::exists(root / "out" / "phantom_000" / "manifest.json"), "manifest written");
  check(fs::exists(root / "out" / "report.json"), "report.json written");
  check(fs::exists(root / "out" / "report.txt"), "report.txt written");
  {
    const json manifest = json::parse(slurp(root / "out" / "phantom_000" / "manifest.json"));
    check(manifest["outputs"].size() == 4, "4 sampled slices emitted");
    check(manifest["config"]["out_h"] == 48, "--out-size flows into the config echo");
  }

  // Config file supplies values; explicit flags win over it.
  {
    std::ofstream cfg(root / "cfg.toml");
    cfg << "samples = 3\nseed = 99\nmode = \"random\"\n";
  }
  const std::string out2 = (root / "out2").string();
  check(run("run --input " + data + " --out " + out2 + " --config " +
            (root / "cfg.toml").string() + " --samples 2 --out-size 32x32 --quiet") == 0,
        "run with a config file");
  {
    const json manifest = json::parse(slurp(root / "out2" / "phantom_000" / "manifest.json"));
    check(manifest["sampling"]["mode"] == "random", "config file sets the sampling mode");
    check(manifest["config"]["seed"] == 99, "config file sets the seed");
    check(manifest["outputs"].size() == 2, "command line overrides the config file");
  }

  // Deterministic rerun.
  const std::string out3 = (root / "out3").string();
  check(run("run --input " + data + " --out " + out3 +
            " --samples 4 --out-size 48x48 --seed 11 --quiet") == 0,
        "deterministic rerun");
  check(slurp(root / "out" / "phantom_000" / "manifest.json") ==
            slurp(root / "out3" / "phantom_000" / "manifest.json"),
        "rerun manifests byte-identical");

  // Scoring.
  {
    std::ofstream pred(root / "pred.csv");
    pred << "id,probability\ns1,0.9\ns2,0.2\ns3,0.8\ns4,0.1\n";
    std::ofstream labels(root / "labels.csv");
    labels << "id,label\ns1,1\ns2,0\ns3,1\ns4,0\n";
  }
  const std::string score_out = (root / "score.json").string();
  check(run("score --pred " + (root / "pred.csv").string() + " --labels " +
            (root / "labels.csv").string() + " --out " + score_out) == 0,
        "score runs");
  {
    const json score = json::parse(slurp(score_out));
    check(score["macro_f1"] == 1.0, "perfect predictions score macro f1 = 1");
    check(score["auc"] == 1.0, "perfect ranking scores auc = 1");
  }

  check(run("run --input " + (root / "missing").string() + " --out " + out) != 0,
        "missing dataset fails");

  fs::remove_all(root);
  if (failures) std::printf("%d cli smoke failures\n", failures);
  return failures == 0 ? 0 : 1;
}
