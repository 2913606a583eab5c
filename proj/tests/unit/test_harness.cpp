#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "fbmc/harness.hpp"

using namespace fbmc;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("fbmc_harness_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

int cli(std::vector<std::string> args, std::string* err = nullptr) {
  args.insert(args.begin(), "fbmc-sim");
  std::vector<const char*> argv;
  for (auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, e;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, e);
  if (err) *err = e.str();
  return code;
}

ExperimentConfig parse(std::vector<std::string> args) {
  args.insert(args.begin(), "fbmc-sim");
  std::vector<const char*> argv;
  for (auto& a : args) argv.push_back(a.c_str());
  return parse_args(static_cast<int>(argv.size()), argv.data());
}

}  // namespace

TEST_CASE("minimal flags fill the documented defaults") {
  const auto c = parse({"--experiment", "ccdf", "--scheme", "linear", "--subcarriers", "512"});
  CHECK(c.experiment == ExperimentKind::Ccdf);
  CHECK(c.schemes == std::vector<CompanderKind>{CompanderKind::LinearPdf});
  CHECK(c.subcarriers == 512);
  CHECK(c.symbols == 10'000);
  CHECK(c.c == 1.0);
  CHECK(c.cutoff == 1.2);
  CHECK(c.mu == 16.0);
  CHECK(c.seed == 1);
  CHECK(c.gamma_grid().size() == 281);
  CHECK(c.snr_grid().front() == 0.0);

  const auto pos = parse({"ber"});
  CHECK(pos.experiment == ExperimentKind::Ber);
  CHECK(pos.schemes.size() == 4);
}

TEST_CASE("cutoff below the inflection point is a config error") {
  CHECK_THROWS_WITH_AS(parse({"ccdf", "--scheme", "linear", "--cutoff", "0.5", "--c", "1.0"}),
                       doctest::Contains("cutoff"), ConfigError);
  std::string err;
  CHECK(cli({"ccdf", "--scheme", "linear", "--cutoff", "0.5", "--c", "1.0"}, &err) == 2);
  CHECK(err.find("cutoff") != std::string::npos);
}

TEST_CASE("flags override the config file") {
  const auto dir = scratch("precedence");
  {
    std::ofstream f(dir / "run.cfg");
    f << "# comment\nexperiment = psd\nseed = 3\nsubcarriers = 128   # trailing\n"
         "snr-db = 0:10:5, 12\n";
  }
  const auto c = parse({"--config", (dir / "run.cfg").string(), "--seed", "7"});
  CHECK(c.seed == 7);
  CHECK(c.experiment == ExperimentKind::Psd);
  CHECK(c.subcarriers == 128);
  CHECK(c.snr_grid_db == std::vector<double>{0, 5, 10, 12});
}

TEST_CASE("malformed config files") {
  const auto dir = scratch("malformed");
  ExperimentConfig c;
  std::istringstream no_eq("seed 3\n");
  CHECK_THROWS_WITH_AS(load_config(c, no_eq), doctest::Contains(":1:"), ConfigError);
  std::istringstream unknown("colour = red\n");
  CHECK_THROWS_WITH_AS(load_config(c, unknown), doctest::Contains("colour"), ConfigError);
  std::istringstream bad_num("subcarriers = many\n");
  CHECK_THROWS_WITH_AS(load_config(c, bad_num), doctest::Contains("subcarriers"), ConfigError);
  std::istringstream descending("gamma_db = 3, 2\n");
  load_config(c, descending);
  CHECK_THROWS_WITH_AS(c.validate(), doctest::Contains("gamma_db"), ConfigError);
  CHECK_THROWS_AS(load_config_file(c, dir / "missing.cfg"), ConfigError);
  CHECK(cli({"ccdf", "--config", (dir / "missing.cfg").string()}) == 2);
  CHECK(cli({"nonsense"}) == 2);
  CHECK(cli({"ccdf", "--subcarriers", "0"}) == 2);
}

TEST_CASE("canonical text round trips and ignores workers") {
  ExperimentConfig a;
  set_key(a, "scheme", "uniform,linear");
  set_key(a, "sigma", "0.7");
  set_key(a, "gamma-db", "0:2:0.5");
  ExperimentConfig b;
  std::istringstream in(canonical_text(a));
  load_config(b, in);
  CHECK(canonical_text(b) == canonical_text(a));
  b.workers = 8;
  b.out_dir = "elsewhere";
  CHECK(config_hash(b) == config_hash(a));
  b.seed = 2;
  CHECK(config_hash(b) != config_hash(a));
}

TEST_CASE("ccdf run writes the schema and is byte-stable across workers") {
  const auto dir = scratch("ccdf");
  ExperimentConfig c;
  c.subcarriers = 32;
  c.symbols = 200;
  c.blocks_per_frame = 20;
  c.gamma_grid_db = {0, 4, 8};
  c.out_dir = dir / "a";
  const auto files = run(c);
  REQUIRE(files.size() == 1);
  const auto text = slurp(files[0]);
  CHECK(text.rfind("# fbmc-sim 0.1.0 config=", 0) == 0);
  CHECK(text.find("scheme,K,gamma_db,ccdf_empirical,ccdf_theoretical\n") != std::string::npos);
  CHECK(text.find("mulaw,32,0,") != std::string::npos);
  CHECK(text.find(",nan\n") != std::string::npos);

  c.workers = 3;
  c.out_dir = dir / "b";
  CHECK(slurp(run(c)[0]) == text);
}

TEST_CASE("ber, psd and table runs") {
  const auto dir = scratch("others");
  ExperimentConfig c;
  c.subcarriers = 32;
  c.symbols = 100;
  c.blocks_per_frame = 20;
  c.snr_grid_db = {0, 20};
  c.max_bits = 5000;
  c.psd_blocks = 100;
  c.psd_segment = 256;
  c.out_dir = dir;
  c.dump_taps = true;
  c.dump_iq = true;

  c.experiment = ExperimentKind::Ber;
  const auto ber = run(c);
  CHECK(slurp(ber[0]).find("scheme,snr_db,bits,errors,ber\nconventional,0,") != std::string::npos);
  CHECK(fs::exists(dir / "taps.csv"));
  CHECK(fs::file_size(dir / "frame_linear.iq") == 16u * (2 * 20 + 7) * 16);

  c.experiment = ExperimentKind::Psd;
  CHECK(slurp(run(c)[0]).find("scheme,freq_norm,psd_db\nconventional,-0.5,") != std::string::npos);

  c.experiment = ExperimentKind::CompanderTable;
  const auto table = slurp(run(c)[0]);
  CHECK(table.find("scheme,papr_db_K32,papr_db_K64,snr_db_ber_1e-2,snr_db_ber_1e-3,psd_oob_db\n") !=
        std::string::npos);
  CHECK(table.find("\nlinear,") != std::string::npos);
}

TEST_CASE("unwritable output is a runtime error") {
  const auto dir = scratch("unwritable");
  { std::ofstream(dir / "file") << "x"; }
  std::string err;
  CHECK(cli({"psd", "--subcarriers", "32", "--psd-blocks", "50", "--out", (dir / "file" / "sub").string()},
            &err) == 3);
  CHECK_FALSE(err.empty());
}
