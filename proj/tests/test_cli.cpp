#include "specls/report.hpp"

#include <doctest.h>

#include <array>
#include <cstdio>
#include <string>
#include <sys/wait.h>

namespace {

struct Run
{
  int status;
  std::string out;
};

Run cli(const std::string &args, const std::string &input = "")
{
  std::string cmd = std::string(SPECLS_CLI) + " " + args + " 2>/dev/null";
  if (!input.empty())
    cmd = "printf '%s\\n' '" + input + "' | " + cmd;
  FILE *p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::string out;
  std::array<char, 4096> buf;
  while (std::size_t k = fread(buf.data(), 1, buf.size(), p))
    out.append(buf.data(), k);
  int raw = pclose(p);
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

} // namespace

TEST_SUITE("cli")
{
  TEST_CASE("construct Y")
  {
    auto r = cli("--json construct Y --n 10 --q 2");
    CHECK(r.status == 0);
    auto j = specls::Json::parse(r.out);
    const auto &res = j.at("results").at(0);
    CHECK(res.at("m").get<int>() == 27);
    CHECK(res.at("t").get<int>() == 10);
  }

  TEST_CASE("exhaustive LS at n = 7")
  {
    auto r = cli("--json verify LS --n 7 --q 1 --exhaustive");
    CHECK(r.status == 0);
    auto s = specls::Json::parse(r.out).at("searches").at(0);
    // sum over k <= 8 of C(21, k)
    CHECK(s.at("graphs_examined").get<long>() == 401930);
    CHECK(s.at("counterexample_count").get<long>() == 0);
  }

  TEST_CASE("malformed graph6 exits with 2")
  {
    CHECK(cli("spectral -g 'D?{x'").status == 2);
    CHECK(cli("verify NOPE -g C~").status == 2);
    CHECK(cli("construct Y --n 6 --q 3").status == 2);
    CHECK(cli("bogus").status == 2);
  }

  TEST_CASE("help exits with 0")
  {
    CHECK(cli("--help").status == 0);
  }

  TEST_CASE("counterexample and indeterminate exit codes")
  {
    // the embedding order fails at q = 3 (K_3 beats the star)
    CHECK(cli("verify EMBED_ORDER --n 30 --q 3").status == 1);
    CHECK(cli("verify EMBED_ORDER --n 30 --q 4").status == 0);
    CHECK(cli("--tol-floor 1e-6 --exact-limit 0 verify BOOK_CONJ --spec Book:k=3").status == 3);
  }

  TEST_CASE("stdin input and CSV")
  {
    auto r = cli("--csv verify BN_INEQ -i -", "C~");
    CHECK(r.status == 0);
    CHECK(r.out.rfind("theorem_id,n,params", 0) == 0);
    CHECK(r.out.find("BN_INEQ,4,") != std::string::npos);
  }
}
