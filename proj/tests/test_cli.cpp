#include "gamow/cli.hpp"
#include "gamow/scattering_model.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace gamow::cli;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(const std::vector<std::string> &args) {
  std::ostringstream out, err;
  const int code = main_entry(args, out, err);
  return {code, out.str(), err.str()};
}

// Runs the installed binary and captures stdout.
Result spawn(const std::string &args) {
  const std::string cmd = std::string(GAMOWCTL_PATH) + " " + args + " 2>/dev/null";
  Result r{0, {}, {}};
  FILE *pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0)
    r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::size_t count_lines(const std::string &s) {
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

} // namespace

TEST_CASE("parse_args examples") {
  const auto reps = parse_args({"reps", "--row", "1", "--twice-j", "1"});
  CHECK(reps.subcommand == "reps");
  CHECK(reps.format == OutputFormat::text);
  CHECK(std::get<RepsParams>(reps.params).row == 1);
  CHECK(std::get<RepsParams>(reps.params).twice_j == 1);

  const auto ev = parse_args({"evolve", "--law", "d0", "--er", "10", "--gamma", "0.1", "--t0",
                              "0", "--t1", "50", "--n", "500", "--format", "csv"});
  CHECK(ev.format == OutputFormat::csv);
  const auto &p = std::get<EvolveParams>(ev.params);
  CHECK(p.law == "d0");
  CHECK(p.t1 == 50.0);
  CHECK(p.n == 500);

  const auto h = parse_args({"--format", "json", "hardy", "--pole", "10,0.1", "--emin", "-590",
                             "--emax", "610", "--n", "131072"});
  CHECK(h.format == OutputFormat::json);
  CHECK(std::get<HardyParams>(h.params).gamma == 0.1);
  CHECK(std::get<HardyParams>(h.params).half_plane == "upper");

  const auto sp = parse_args({"spectral", "--g", "100", "--a", "1", "--kmax", "30", "--nk",
                              "100", "--rmax", "10", "--nr", "201", "--packet",
                              "gaussian:2,0.3"});
  CHECK(std::get<SpectralParams>(sp.params).packet_center == 2.0);
  CHECK(std::get<SpectralParams>(sp.params).packet_width == 0.3);
}

TEST_CASE("usage errors") {
  CHECK_THROWS_AS(parse_args({}), UsageError);
  CHECK_THROWS_AS(parse_args({"reps", "--row", "1"}), UsageError);
  CHECK_THROWS_AS(parse_args({"reps", "--row", "1", "--twice-j", "1", "--bogus"}), UsageError);
  CHECK_THROWS_AS(parse_args({"frobnicate"}), UsageError);
  CHECK_THROWS_AS(parse_args({"reps", "poles"}), UsageError);
  for (const char *bad : {"nan", "inf", "-inf", "1e999", "abc", "1.5x"})
    CHECK_THROWS_AS(parse_args({"evolve", "--law", "d0", "--er", bad, "--gamma", "0.1",
                                "--t0", "0", "--t1", "1", "--n", "3"}),
                    UsageError);
  CHECK_THROWS_AS(parse_args({"hardy", "--pole", "10", "--emin", "0", "--emax", "1", "--n",
                              "64"}),
                  UsageError);
  CHECK_THROWS_AS(parse_args({"spectral", "--g", "1", "--a", "1", "--kmax", "3", "--nk", "10",
                              "--rmax", "5", "--nr", "51", "--packet", "square:1,2"}),
                  UsageError);
  CHECK_THROWS_AS(parse_args({"--format", "xml", "reps", "--row", "1", "--twice-j", "0"}),
                  UsageError);
}

TEST_CASE("exit codes") {
  const auto empty = call({});
  CHECK(empty.code == 2);
  CHECK(empty.err.find("Usage") != std::string::npos);

  const auto help = call({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("Subcommands") != std::string::npos);

  const auto domain = call({"evolve", "--law", "d0", "--er", "10", "--gamma", "0.1", "--t0",
                            "-1", "--t1", "1", "--n", "5"});
  CHECK(domain.code == 1);
  CHECK(domain.out.empty());
  CHECK(count_lines(domain.err) == 1);

  CHECK(call({"reps", "--row", "5", "--twice-j", "1"}).code == 1);
  CHECK(call({"poles", "--g", "100", "--a", "-1", "--re", "0,10", "--im", "-2,0"}).code == 1);
}

TEST_CASE("reps JSON for row 2, j = 1/2") {
  const auto r = call({"--format", "json", "reps", "--row", "2", "--twice-j", "1"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["eps_r"] == 1);
  CHECK(j["eps_t"] == -1);
  CHECK(j["relations"]["sigma_squared_is_identity"] == true);
  CHECK(j["relations"]["r_squared_matches_eps_r"] == true);
  CHECK(j["relations"]["t_squared_matches_eps_t"] == true);
  CHECK(j["relations"]["t_equals_sigma_r"] == true);
  CHECK(j["relations"]["sigma_r_equals_r_sigma_up_to_sign"] == true);
  // Sigma and R anticommute in this row.
  CHECK(j["relations"]["sigma_r_equals_r_sigma"] == false);
  CHECK(j["R"]["antilinear"] == true);
}

TEST_CASE("poles then evolve pipeline") {
  const auto r = call({"--format", "json", "poles", "--g", "100", "--a", "1", "--re", "0,10",
                       "--im", "-2,0"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  REQUIRE(j["count"] == 3);
  const double e_r = j["poles"][0]["e_r"];
  const double gamma = j["poles"][0]["gamma"];
  const auto pole = gamow::ResonancePole::from_momentum({3.1105268272, -0.00095614559});
  CHECK(e_r == doctest::Approx(pole.e_r).epsilon(1e-9));

  std::ostringstream er, g;
  er << format_number(e_r);
  g << format_number(gamma);
  const auto ev = call({"--format", "csv", "evolve", "--law", "d0", "--er", er.str(), "--gamma",
                        g.str(), "--t0", "0", "--t1", "100", "--n", "11"});
  REQUIRE(ev.code == 0);
  CHECK(ev.out.rfind("t,re_amp,im_amp,survival\n", 0) == 0);
  CHECK(count_lines(ev.out) == 12);
}

TEST_CASE("output formats") {
  const std::vector<std::string> base = {"phase", "--g", "100", "--a", "1", "--emin", "9",
                                         "--emax", "10.5", "--n", "7"};
  auto with = [&](const char *fmt) {
    std::vector<std::string> a = {"--format", fmt};
    a.insert(a.end(), base.begin(), base.end());
    return call(a);
  };
  const auto csv = with("csv");
  CHECK(csv.out.rfind("E,delta,sin2delta\n", 0) == 0);
  CHECK(count_lines(csv.out) == 8);
  const auto js = nlohmann::json::parse(with("json").out);
  CHECK(js["samples"].size() == 7);
  CHECK(js["samples"][6]["E"] == 10.5);
  CHECK(with("text").out.find("# g: 100\n") != std::string::npos);
}

TEST_CASE("format_number") {
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(-0.0) == "0");
  CHECK(format_number(1.0 / 3.0) == "0.333333333333");
  CHECK(format_number(6.02214076e23) == "6.02214076e+23");
}

TEST_CASE("--out writes the same bytes as stdout") {
  const auto path = std::filesystem::temp_directory_path() / "gamowctl_out_test.csv";
  const std::vector<std::string> args = {"--format", "csv", "evolve", "--law", "g1", "--er",
                                         "2", "--gamma", "0.3", "--t0", "-5", "--t1", "0",
                                         "--n", "6"};
  const auto direct = call(args);
  auto to_file = args;
  to_file.insert(to_file.begin(), {"--out", path.string()});
  const auto via = call(to_file);
  REQUIRE(via.code == 0);
  CHECK(via.out.empty());
  std::ifstream in(path, std::ios::binary);
  const std::string body((std::istreambuf_iterator<char>(in)), {});
  CHECK(body == direct.out);
  std::filesystem::remove(path);
}

TEST_CASE("binary is deterministic") {
  const std::string args =
      "--format json spectral --g 100 --a 1 --kmax 30 --nk 500 --rmax 10 --nr 1001 "
      "--packet gaussian:2,0.3";
  const auto a = spawn(args);
  const auto b = spawn(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK_FALSE(a.out.empty());
  CHECK(spawn("").code == 2);
}
