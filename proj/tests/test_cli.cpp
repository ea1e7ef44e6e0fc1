#include <doctest.h>

#include "cli.hpp"
#include "io.hpp"

#include "fanodeg/errors.hpp"

#include <sstream>

using namespace fanodeg;

namespace {

const std::string data = FANODEG_TEST_DATA;

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  for (auto& a : args)
    if (a.rfind("@", 0) == 0) a = data + "/" + a.substr(1);
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

bool contains(const std::string& s, const std::string& part) { return s.find(part) != std::string::npos; }

}  // namespace

TEST_CASE("analyze reports a rigid basket") {
  auto r = run({"analyze", "@p3511.json"});
  CHECK(r.code == cli::kOk);
  CHECK(contains(r.out, "rigid yes"));
  CHECK(contains(r.out, "total_content 0"));
  CHECK(contains(r.out, "graph 1 nodes 0 edges complete"));

  auto j = io::parse_json(run({"analyze", "@p3511.json", "--format", "json"}).out);
  CHECK(j["fano"] == true);
  CHECK(j["basket"].size() == 3);
  for (const auto& e : j["basket"]) CHECK(e["content"] == 0);
}

TEST_CASE("ilten prints the pencil") {
  auto r = run({"ilten", "@p2_q.json", "--names", "s0,s1,s2,u"});
  CHECK(r.code == cli::kOk);
  CHECK(contains(r.out, "s1*s2 = t*(b*u + a*s0^2)"));
  auto c = run({"ilten", "@x6_q.json", "--wall", "0,1", "--names", "X1,X0,Y,Z", "--variant", "contracted"});
  CHECK(c.code == cli::kOk);
  CHECK(contains(c.out, "Y*Z = a*X1^5*X0 + b*X1^6"));
}

TEST_CASE("mumford and slab families") {
  auto m = run({"mumford", "@cubic_q.json", "--names", "Z,U,Y,X,W"});
  CHECK(m.code == cli::kOk);
  CHECK(contains(m.out, "Z*Y = t*W"));
  CHECK(contains(m.out, "Z*Y*X = t*U^3"));
  auto s = run({"slab-family", "@x6_q.json", "--wall", "0,1", "--names", "X1,X0,Y,Z", "--g", "1 + W^7"});
  CHECK(s.code == cli::kDomainError);
  CHECK(contains(s.err, "DegreeExceedsContent"));
}

TEST_CASE("mutate golden and content violations") {
  auto r = run({"mutate", "@p2_fano.json", "--corner", "1", "--shear", "1"});
  CHECK(r.code == cli::kOk);
  CHECK(r.out == "(-1,-1) (5,-1) (-1,1/2)\n");
  auto bad = run({"mutate", "@p2_fano.json", "--corner", "1", "--shear", "2"});
  CHECK(bad.code == cli::kDomainError);
  CHECK(contains(bad.err, "ContentExceeded"));
  auto j = io::parse_json(run({"mutate", "@p2_fano.json", "--corner", "1", "--shear", "2", "--format", "json"}).out);
  CHECK(j["error"]["code"] == "ContentExceeded");
}

TEST_CASE("dual and scatter") {
  CHECK(run({"dual", "@p2_fano.json"}).out == "(-1,-1) (1,0) (0,1)\n");
  auto s = run({"scatter", "@two_lines.json"});
  CHECK(s.code == cli::kOk);
  CHECK(contains(s.out, "ray (1,1): 1 + z^(1,1) * t^2"));
  CHECK(contains(s.out, "consistent yes"));
}

TEST_CASE("verify exit codes") {
  auto ok = run({"verify", "@cubic_verify.json"});
  CHECK(ok.code == cli::kOk);
  auto bad = run({"verify", "@cubic_verify_bad.json"});
  CHECK(bad.code == cli::kVerifyFailed);
  CHECK(contains(bad.out, "X fail"));
}

TEST_CASE("parse errors") {
  auto r = run({"analyze", "@bad_rational.json"});
  CHECK(r.code == cli::kParseError);
  CHECK(contains(r.err, "1/0"));
  CHECK(run({"analyze", "@missing.json"}).code == cli::kParseError);
  CHECK(run({"frobnicate"}).code != cli::kOk);
}

TEST_CASE("outputs are deterministic") {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"analyze", "@p2_fano.json", "--format", "json"},
           {"scatter", "@two_lines.json", "--format", "json"},
           {"ilten", "@cubic_q.json", "--names", "Z,U,Y,X,W", "--format", "json"}}) {
    auto a = run(args), b = run(args);
    CHECK(a.code == cli::kOk);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("round trips") {
  for (const char* f : {"p2_half.json", "x6_q.json", "two_lines.json", "cubic_verify.json", "series_params.txt"}) {
    CAPTURE(f);
    CHECK(io::roundtrip(data + "/" + f));
    auto r = run({"roundtrip", std::string("@") + f});
    CHECK(r.code == cli::kOk);
  }
  CHECK_THROWS_AS(io::roundtrip(data + "/bad_rational.json"), ParseError);
  CHECK(io::roundtrip_text("1 + a*t*z^(1,0) - 1/2*b^2*t^3*z^(-1,2)", "series.txt"));
}

TEST_CASE("json helpers") {
  CHECK(io::rat_from_json(io::parse_json("\"-3/6\"")) == Rat(-1, 2));
  CHECK(io::rat_from_json(io::parse_json("4")) == 4);
  CHECK_THROWS_AS(io::rat_from_json(io::parse_json("\"1/0\"")), ParseError);
  CHECK(io::parse_vec2("(2,-3)") == lattice::Vec2{2, -3});
  try {
    io::parse_json("{\n  \"a\": [1,\n}");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
}
