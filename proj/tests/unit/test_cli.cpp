#include <fstream>
#include <numeric>
#include <json.hpp>
#include <sstream>

#include "doctest.h"
#include "etaforge/cli.hpp"

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE_MESSAGE(in.good(), "missing golden file " << path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("cli golden outputs") {
  const std::string dir = ETAFORGE_GOLDEN_DIR;
  const auto cases = nlohmann::json::parse(slurp(dir + "/cases.json"));
  REQUIRE(cases.size() > 20);
  for (const auto& c : cases) {
    const std::string name = c["name"];
    CAPTURE(name);
    std::ostringstream out, err;
    const int status = etaforge::cli::run(c["args"].get<std::vector<std::string>>(), out, err);
    CHECK(status == c["exit"].get<int>());
    CHECK(out.str() == slurp(dir + "/" + name + ".out"));
    CHECK(err.str() == slurp(dir + "/" + name + ".err"));
  }
}

TEST_CASE("cli output is identical across runs") {
  for (const std::vector<std::string>& args :
       {std::vector<std::string>{"enumerate", "36", "--weight2", "2", "--json"}, {"verify-zagier", "72", "--json"}}) {
    std::ostringstream a, b, err;
    CHECK(etaforge::cli::run(args, a, err) == etaforge::cli::kOk);
    CHECK(etaforge::cli::run(args, b, err) == etaforge::cli::kOk);
    CHECK(a.str() == b.str());
  }
}

TEST_CASE("expand prints reduced exponents with denominators dividing 24") {
  std::ostringstream out, err;
  REQUIRE(etaforge::cli::run({"expand", "1^-1 2^2 3^1 6^-1", "--prec", "1200"}, out, err) == 0);
  std::istringstream lines(out.str());
  std::string line;
  std::getline(lines, line);
  int seen = 0;
  while (std::getline(lines, line)) {
    const auto colon = line.find(':');
    REQUIRE(colon != std::string::npos);
    const std::string exp = line.substr(0, colon);
    const auto slash = exp.find('/');
    if (slash == std::string::npos) {
      ++seen;
      continue;
    }
    const long num = std::stol(exp.substr(0, slash)), den = std::stol(exp.substr(slash + 1));
    CHECK(24 % den == 0);
    CHECK(std::gcd(num, den) == 1);
    ++seen;
  }
  CHECK(seen > 5);
}

TEST_CASE("help exits cleanly") {
  std::ostringstream out, err;
  CHECK(etaforge::cli::run({"--help"}, out, err) == 0);
  CHECK(out.str().find("verify-zagier") != std::string::npos);
  std::ostringstream sub;
  CHECK(etaforge::cli::run({"phi", "--help"}, sub, err) == 0);
  CHECK(sub.str().find("--weights") != std::string::npos);
}
