// End-to-end checks of the affsurf binary: output formats, exit codes and
// byte-level determinism. The binary path is baked in by the build.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run_cmd(const std::string &cmd) {
  FILE *pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  std::array<char, 4096> buf;
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0)
    r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

RunResult run(const std::string &args) {
  return run_cmd(std::string(AFFSURF_BIN) + " " + args + " 2>&1");
}

std::string slurp(const std::string &path) {
  std::ifstream f(path, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::string temp_path(const std::string &name) {
  return "/tmp/affsurf_test_" + name;
}

} // namespace

TEST_CASE("tensor command") {
  RunResult r = run("--surface Mc:1 tensor ricci --at 0,0");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "[[0,0],[0,2]]\n");

  r = run("--surface Mc:2 tensor alpha --at 1,1");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "12.8\n");

  r = run("--surface flat tensor alpha --at 0,0");
  CHECK(r.exit_code == 2);
  CHECK(r.out.find("rho_22 = 0") != std::string::npos);

  r = run("--surface Mc:1 tensor christoffel --at 2,0.7");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "[[[0,0],[0,0]],[[0,0],[4,2]]]\n");

  r = run("--surface Z3 tensor ricci --at 5,-5");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("-0.666666666667") != std::string::npos);

  r = run("--surface bogus tensor ricci --at 0,0");
  CHECK(r.exit_code == 2);
}

TEST_CASE("geodesic command") {
  // oracle agreement footer
  RunResult r = run("--surface Mc:0 geodesic --from 0,0 --dir 1,1 "
                    "--t-end 6.2831853 --mode both");
  CHECK(r.exit_code == 0);
  const auto pos = r.out.find("# max_deviation=");
  REQUIRE(pos != std::string::npos);
  const double dev = std::strtod(r.out.c_str() + pos + 16, nullptr);
  CHECK(dev < 1e-6);

  // escape before t_end: exit 3 but the partial CSV is still emitted
  r = run("--surface Mc:1 geodesic --from 0,0 --dir 1,-1 --t-end 1.0");
  CHECK(r.exit_code == 3);
  CHECK(r.out.rfind("t,x1,x2,dx1,dx2\n", 0) == 0);
  // last row time is close to the blow-up at 1/2
  const auto last_nl = r.out.find_last_not_of('\n');
  const auto row_start = r.out.rfind('\n', last_nl);
  const double last_t =
      std::strtod(r.out.c_str() + row_start + 1, nullptr);
  CHECK(std::fabs(last_t - 0.5) < 1e-3);

  // zero direction: constant rows
  r = run("--surface Mc:0 geodesic --from 2,0 --dir 0,0 --t-end 1");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("\n1,2,0,0,0\n") != std::string::npos);

  // closed-form mode rejects t_end outside the maximal domain
  r = run("--surface Mc:1 geodesic --from 0,0 --dir 1,-1 --t-end 1.0 "
          "--mode closed-form");
  CHECK(r.exit_code == 2);
}

TEST_CASE("sweep command") {
  RunResult r =
      run("--surface Mc:0 sweep --quotient cylinder --base 0,0 --n 32");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("almost_zoll=TRUE closed=30 alienated=2 other=0") !=
        std::string::npos);

  r = run("--surface Mc:1 sweep --quotient cylinder --base 0,0 --n 16");
  CHECK(r.exit_code == 4);
  CHECK(r.out.find("almost_zoll=FALSE") != std::string::npos);
  CHECK(r.out.find("ReturnsToBase") != std::string::npos);

  r = run("--surface Mc:0 sweep --quotient moebius --base 1,0 --n 16");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("almost_zoll=TRUE closed=14 alienated=2 other=0") !=
        std::string::npos);
}

TEST_CASE("figure command") {
  const std::string svg_path = temp_path("fig.svg");
  std::remove(svg_path.c_str());
  RunResult r = run("--surface Mc:0 --out " + svg_path +
                    " figure --bases 0,0 --bases 1,0 --bases 2,0");
  CHECK(r.exit_code == 0);
  const std::string svg = slurp(svg_path);
  CHECK(svg.rfind("<svg", 0) == 0);
  // three panels, each with its frame and clip
  size_t count = 0, at = 0;
  while ((at = svg.find("class=\"panel\"", at)) != std::string::npos) {
    ++count;
    at += 1;
  }
  CHECK(count == 3);
  CHECK(svg.find("stroke-dasharray") != std::string::npos); // alienated line

  // no bases: exit 0, no file
  const std::string none_path = temp_path("none.svg");
  std::remove(none_path.c_str());
  r = run("--surface Mc:0 --out " + none_path + " figure");
  CHECK(r.exit_code == 0);
  CHECK(slurp(none_path).empty());

  // unwritable path
  r = run("--surface Mc:0 --out /nonexistent-dir/f.svg figure --bases 0,0");
  CHECK(r.exit_code == 5);

  // c != 0 is rejected
  r = run("--surface Mc:1 --out " + svg_path + " figure --bases 0,0");
  CHECK(r.exit_code == 2);

  std::remove(svg_path.c_str());
}

TEST_CASE("verify command") {
  RunResult r = run("--surface Mc:1 verify --suite core");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("\"id\": \"core.ricci_value\"") != std::string::npos);
  CHECK(r.out.find("alpha=8") != std::string::npos);
  CHECK(r.out.find("\"pass\": false") == std::string::npos);

  r = run("--surface Mc:0 verify --suite symmetry");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("sym.a412") != std::string::npos);

  r = run("--surface Mc:0 verify --suite quotient");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("quot.double_cover") != std::string::npos);

  // the symmetry suite needs the Mc family
  r = run("--surface flat verify --suite symmetry");
  CHECK(r.exit_code == 2);
}

TEST_CASE("deterministic output for a fixed config and seed") {
  const std::string args =
      "--surface Mc:0 --seed 777 verify --suite core";
  const RunResult a = run(args);
  const RunResult b = run(args);
  CHECK(a.exit_code == b.exit_code);
  CHECK(a.out == b.out);

  const std::string gargs = "--surface Mc:0 geodesic --from 0.3,0.1 "
                            "--dir 1,0.7 --t-end 4 --mode both";
  CHECK(run(gargs).out == run(gargs).out);

  // config file overrides the integrator defaults
  const std::string cfg_path = temp_path("cfg.ini");
  {
    std::ofstream cfg(cfg_path);
    cfg << "integrator=rk4\ndt=0.01\n";
  }
  const RunResult c1 =
      run("--config " + cfg_path +
          " --surface Mc:0 geodesic --from 0,0 --dir 1,1 --t-end 0.1");
  CHECK(c1.exit_code == 0);
  // fixed-step rows land on multiples of dt
  CHECK(c1.out.find("\n0.01,") != std::string::npos);
  std::remove(cfg_path.c_str());

  // the environment variable relaxes the integrator tolerance: a coarser
  // run takes fewer steps, so it emits fewer CSV rows
  const std::string eargs = " --surface Mc:0 geodesic --from 0,0 --dir 1,1 "
                            "--t-end 6 2>&1";
  const RunResult tight =
      run_cmd(std::string("AFFSURF_TOL=1e-13 ") + AFFSURF_BIN + eargs);
  const RunResult loose =
      run_cmd(std::string("AFFSURF_TOL=1e-4 ") + AFFSURF_BIN + eargs);
  CHECK(tight.exit_code == 0);
  CHECK(loose.exit_code == 0);
  const auto rows = [](const std::string &s) {
    return std::count(s.begin(), s.end(), '\n');
  };
  CHECK(rows(tight.out) > rows(loose.out));
}
