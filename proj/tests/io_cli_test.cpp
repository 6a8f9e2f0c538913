#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "dcont/cli.hpp"
#include "oracles.hpp"

using namespace dcont;
namespace ex = dcont::examples;
namespace fs = std::filesystem;

namespace {

std::string parse_code(const std::string& text) {
  try {
    io::parse_document(text);
  } catch (const Error& e) {
    return e.code();
  }
  return "";
}

struct Outcome {
  int code;
  std::string out, err;
};

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("dcont_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    const auto path = (dir_ / name).string();
    std::ofstream(path) << text;
    return path;
  }

  static Outcome invoke(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
  }

  fs::path dir_;
};

}  // namespace

TEST(Json, SuffixesRoundTrip) {
  const auto dc = ex::suffixes(1);
  const auto text = io::emit_file(dc);
  EXPECT_EQ(std::get<DirectedContainer>(io::parse_document(text)), dc);
  EXPECT_EQ(io::emit_file(std::get<DirectedContainer>(io::parse_document(text))), text);
}

TEST(Json, AllKindsRoundTrip) {
  const auto take = ex::take_morphism(2);
  const auto& a = *take.source;
  const auto& b = *take.target;
  const auto cat = dcont_to_cat(ex::cyclic(2));
  EXPECT_EQ(std::get<SmallCat>(io::parse_document(io::emit_file(cat))), cat);
  EXPECT_EQ(std::get<Container>(io::parse_document(io::emit_file(a.base))), a.base);

  const auto mdoc = std::get<io::MorphismDoc>(io::parse_document(io::emit_file(take.underlying, a.base, b.base)));
  EXPECT_EQ(io::resolve_morphism(mdoc, a.base, b.base), take.underlying);

  const auto pre = dmorph_to_preop(take);
  const auto ca = dcont_to_cat(a), cb = dcont_to_cat(b);
  const auto pdoc = std::get<io::PreOpDoc>(io::parse_document(io::emit_file(pre, ca, cb)));
  EXPECT_EQ(io::resolve_preop(pdoc, ca, cb), pre);

  const auto om = std::get<io::OminusDoc>(io::parse_document(io::emit_file(ex::cyclic(3), ex::cyclic_ominus(3))));
  EXPECT_EQ(om.dc, ex::cyclic(3));
  EXPECT_EQ(om.ominus, ex::cyclic_ominus(3));
}

TEST(Json, CyclicCategoryHasThreeArrows) {
  const auto j = nlohmann::json::parse(io::emit_file(dcont_to_cat(ex::cyclic(1))));
  EXPECT_EQ(j["kind"], "cat");
  EXPECT_EQ(j["arrows"].size(), 3u);
}

TEST(Json, CanonicalSortedKeys) {
  const auto text = io::emit_file(ex::reader({"b", "a"}));
  EXPECT_LT(text.find("\"down\""), text.find("\"kind\""));
  EXPECT_LT(text.find("\"kind\""), text.find("\"shapes\""));
  EXPECT_EQ(text.back(), '\n');
}

TEST(Json, ContainerWithMissingFiber) {
  const auto doc = io::parse_document(R"({"kind":"container","shapes":["a","b"],"positions":{"a":["*"]}})");
  const auto c = std::get<Container>(doc);
  EXPECT_EQ(validate_container(c).count("positions-total"), 1u);
}

TEST(Json, Errors) {
  EXPECT_EQ(parse_code(R"({"kind":"dcont","shapes":["a"],"positions":{"b":["*"]}})"), "unknown-reference");
  EXPECT_EQ(parse_code(R"({"kind":"dcont","shapes":["a"],"positions":{"a":["*"]},"root":{"a":"x"}})"),
            "unknown-reference");
  EXPECT_EQ(parse_code(R"({"kind":"dcont","shapes":["a"],"positions":{"a":["*"]},"extra":1})"), "parse-error");
  EXPECT_EQ(parse_code(R"({"kind":"dcont","shapes":["a|b"],"positions":{}})"), "parse-error");
  EXPECT_EQ(parse_code(R"({"kind":"widget"})"), "parse-error");
  EXPECT_EQ(parse_code(R"({"kind":"dcont","shapes":["a"],"positions":{}})"), "parse-error");
  EXPECT_EQ(parse_code(R"({"kind":"dcont","shapes":["a"],"positions":{"a":["*"]},"down":{"a":"a"}})"),
            "parse-error");
}

TEST(Json, SyntaxErrorCarriesPosition) {
  try {
    io::parse_document("{\n  \"kind\": \"dcont\",\n  \"shapes\": [\"a\" \"b\"]\n}");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "parse-error");
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
  }
}

TEST_F(CliTest, CheckEmittedCyclic) {
  const auto ex_run = invoke({"example", "cyclic", "--param", "2"});
  ASSERT_EQ(ex_run.code, 0);
  const auto r = invoke({"check", write("c2.json", ex_run.out)});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "dcont: ok\n");
}

TEST_F(CliTest, CheckReportsViolations) {
  auto dc = ex::suffixes(2);
  dc.plus[2][1][1] = 1;
  const auto r = invoke({"check", write("bad.json", io::emit_file(dc))});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("lhs="), std::string::npos);
}

TEST_F(CliTest, GroupoidOnSuffixesCategory) {
  const auto path = write("s2cat.json", io::emit_file(dcont_to_cat(ex::suffixes(2))));
  const auto r = invoke({"groupoid", path});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.out, "not a groupoid\n");
  const auto g = invoke({"groupoid", write("array.json", io::emit_file(ex::array({"a", "b"})))});
  EXPECT_EQ(g.code, 0);
  EXPECT_NE(g.out.find("inverse (a,b) = (b,a)"), std::string::npos);
}

TEST_F(CliTest, EnumerateTwoPositions) {
  const auto path = write("c.json", R"({"kind":"container","shapes":["*"],"positions":{"*":["e","x"]}})");
  const auto r = invoke({"enumerate", path});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("4 structures, 2 up to iso\n"), std::string::npos);
  const auto iso = invoke({"enumerate", path, "--up-to-iso"});
  EXPECT_EQ(std::count(iso.out.begin(), iso.out.end(), '\n'), 3);
  const auto g = invoke({"enumerate", path, "--groupoids-only"});
  EXPECT_NE(g.out.find("2 structures, 1 up to iso"), std::string::npos);
}

TEST_F(CliTest, EnumerateBudget) {
  const auto path = write("l2.json", io::emit_file(ex::nonempty_list_container(2)));
  const auto r = invoke({"enumerate", path, "--budget", "1000"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("budget-exceeded"), std::string::npos);
}

TEST_F(CliTest, NatTransCounts) {
  const auto one = write("one.json", R"({"kind":"container","shapes":["*"],"positions":{"*":["0"]}})");
  const auto two = write("two.json", R"({"kind":"container","shapes":["*"],"positions":{"*":["0","1"]}})");
  const auto r = invoke({"nat-trans", "count", two, one});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "morphisms: 2\noracle: 2\n");
}

TEST_F(CliTest, MorphismCheck) {
  const auto take = ex::take_morphism(2);
  const auto m = write("m.json", io::emit_file(take.underlying, take.source->base, take.target->base));
  const auto a = write("a.json", io::emit_file(*take.source));
  const auto b = write("b.json", io::emit_file(*take.target));
  EXPECT_EQ(invoke({"morphism", "check", m, a, b}).code, 0);
  EXPECT_EQ(invoke({"morphism", "check", m, a, b, "--comonad", "--labels", "2"}).code, 0);
  EXPECT_EQ(invoke({"morphism", "check", m, b, a}).code, 2);

  ContMorphism bad = take.underlying;
  bad.position_map[2] = {2, 2, 2};  // root of the target no longer goes to the root
  const auto mb = write("bad.json", io::emit_file(bad, take.source->base, take.target->base));
  const auto r = invoke({"morphism", "check", mb, a, b});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("M2 s=2"), std::string::npos) << r.out;
}

TEST_F(CliTest, ConversionsReparse) {
  const auto s = write("s.json", io::emit_file(ex::suffixes(2)));
  const auto cat = invoke({"to-cat", s});
  ASSERT_EQ(cat.code, 0);
  const auto back = invoke({"from-cat", write("cat.json", cat.out)});
  ASSERT_EQ(back.code, 0);
  EXPECT_TRUE(isomorphic(std::get<DirectedContainer>(io::parse_document(back.out)), ex::suffixes(2)));
  const auto op = invoke({"op", s});
  ASSERT_EQ(op.code, 0);
  EXPECT_TRUE(isomorphic(std::get<DirectedContainer>(io::parse_document(op.out)), ex::context_trees(2)));
}

TEST_F(CliTest, CoproductAndTensor) {
  const auto a = write("a.json", io::emit_file(ex::reader({"a"})));
  const auto b = write("b.json", io::emit_file(ex::reader({"b"})));
  const auto sum = invoke({"coproduct", a, b});
  ASSERT_EQ(sum.code, 0);
  EXPECT_TRUE(isomorphic(std::get<DirectedContainer>(io::parse_document(sum.out)), ex::reader({"a", "b"})));
  const auto prod = invoke({"tensor", a, b});
  ASSERT_EQ(prod.code, 0);
  EXPECT_EQ(std::get<DirectedContainer>(io::parse_document(prod.out)).shapes().elements,
            (std::vector<std::string>{"(a,b)"}));
}

TEST_F(CliTest, ComonadLaws) {
  const auto s = write("s.json", io::emit_file(ex::suffixes(3)));
  const auto r = invoke({"laws", "--comonad", s, "--labels", "2"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "comonad: ok\n");
}

TEST_F(CliTest, InputErrors) {
  EXPECT_EQ(invoke({}).code, 2);
  EXPECT_EQ(invoke({"check"}).code, 2);
  EXPECT_EQ(invoke({"check", (dir_ / "missing.json").string()}).code, 2);
  EXPECT_EQ(invoke({"check", write("broken.json", "{")}).code, 2);
  EXPECT_EQ(invoke({"example", "nope", "--param", "1"}).code, 2);
  EXPECT_EQ(invoke({"example", "suffixes", "--param", "1", "--ominus"}).code, 2);
  EXPECT_EQ(invoke({"to-cat", write("cat.json", io::emit_file(discrete_cat(FinSet{"S", {"a"}})))}).code, 2);
}

TEST_F(CliTest, ByteIdenticalOutput) {
  const auto first = invoke({"example", "context-trees", "--param", "3"});
  const auto second = invoke({"example", "context-trees", "--param", "3"});
  EXPECT_EQ(first.out, second.out);
}
