// Randomised and exhaustive property checks.  Generators use a fixed seed
// so failures reproduce.

#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace dcont;
namespace ex = dcont::examples;

namespace {

constexpr unsigned kSeed = 20260101;

/// Position named `name` in the fiber of s, or kNone.
Index pos(const DirectedContainer& dc, Index s, const std::string& name) {
  return dc.fiber(s).find(name).value_or(kNone);
}

/// Recomputes a reported L1-L5 instance from its witness and checks that
/// the two sides really differ and match the report.
void expect_witness_holds(const DirectedContainer& dc, const Violation& v) {
  SCOPED_TRACE(v.line());
  const Index s = dc.shapes().find(v.at("s")).value_or(kNone);
  ASSERT_NE(s, kNone);
  const auto& S = dc.shapes();
  auto P = [&](Index sh, Index p) { return dc.fiber(sh)[p]; };
  if (v.law == "L1") {
    const Index lhs = dc.down[s][dc.root[s]];
    EXPECT_NE(lhs, s);
    EXPECT_EQ(v.lhs, S[lhs]);
    return;
  }
  const Index p = pos(dc, s, v.at("p"));
  ASSERT_NE(p, kNone);
  const Index d = dc.down[s][p];
  if (v.law == "L3") {
    const Index got = dc.plus[s][p][dc.root[d]];
    EXPECT_NE(got, p);
    EXPECT_EQ(v.lhs, P(s, got));
    return;
  }
  if (v.law == "L4") {
    const Index got = dc.plus[s][dc.root[s]][p];
    EXPECT_NE(got, p);
    EXPECT_EQ(v.lhs, P(s, got));
    return;
  }
  const Index q = pos(dc, d, v.at("p'"));
  ASSERT_NE(q, kNone);
  if (v.law == "L2") {
    const Index lhs = dc.down[s][dc.plus[s][p][q]];
    const Index rhs = dc.down[d][q];
    EXPECT_NE(lhs, rhs);
    EXPECT_EQ(v.lhs, S[lhs]);
    EXPECT_EQ(v.rhs, S[rhs]);
    return;
  }
  ASSERT_EQ(v.law, "L5");
  const Index dd = dc.down[d][q];
  const Index u = pos(dc, dd, v.at("p''"));
  ASSERT_NE(u, kNone);
  const Index lhs = dc.plus[s][dc.plus[s][p][q]][u];
  const Index rhs = dc.plus[s][p][dc.plus[d][q][u]];
  EXPECT_NE(lhs, rhs);
  EXPECT_EQ(v.lhs, P(s, lhs));
  EXPECT_EQ(v.rhs, P(s, rhs));
}

std::vector<DirectedContainer> small_dconts() {
  return {unit_dcont(),        ex::suffixes(1),         ex::suffixes(2), ex::cyclic(1),
          ex::cyclic(2),       ex::saturating_nat(2),   ex::reader({"a", "b"}),
          ex::array({"a", "b"}), ex::context_trees(2)};
}

/// Every lawful structure on the containers with ≤ 2 shapes and fibers ≤ 2.
std::vector<DirectedContainer> tiny_structures() {
  std::vector<DirectedContainer> out;
  for (std::size_t a = 1; a <= 2; ++a) {
    for (auto& dc : enum_structures(make_container({"s"}, {range_set("", a).elements}))) out.push_back(dc);
    for (std::size_t b = a; b <= 2; ++b)
      for (auto& dc :
           enum_structures(make_container({"s", "t"}, {range_set("", a).elements, range_set("", b).elements})))
        out.push_back(dc);
  }
  return out;
}

}  // namespace

TEST(Property, SingleMutationsAreCaughtWithRealWitnesses) {
  oracle::Rng rng(kSeed);
  for (int trial = 0; trial < 400; ++trial) {
    auto dc = oracle::random_example(rng);
    if (dc.shape_count() == 0) continue;
    const Index s = oracle::pick(rng, dc.shape_count());
    const Index p = oracle::pick(rng, dc.fiber_size(s));
    switch (oracle::pick(rng, 3)) {
      case 0: dc.root[s] = oracle::pick(rng, dc.fiber_size(s)); break;
      case 1: {
        const Index d = oracle::pick(rng, dc.shape_count());
        dc.down[s][p] = d;
        dc.plus[s][p].resize(dc.fiber_size(d));
        for (auto& r : dc.plus[s][p]) r = oracle::pick(rng, dc.fiber_size(s));
        break;
      }
      default: {
        auto& row = dc.plus[s][p];
        row[oracle::pick(rng, row.size())] = oracle::pick(rng, dc.fiber_size(s));
      }
    }
    const auto r = check_dcont_laws(dc);
    EXPECT_EQ(r.passed(), oracle::lawful(dc));
    for (const auto& v : r.violations) expect_witness_holds(dc, v);
  }
}

TEST(Property, ComposeIsAssociativeAndUnital) {
  oracle::Rng rng(kSeed + 1);
  const auto dcs = small_dconts();
  for (int trial = 0; trial < 60; ++trial) {
    const auto& a = dcs[oracle::pick(rng, dcs.size())];
    const auto& b = dcs[oracle::pick(rng, dcs.size())];
    const auto& c = dcs[oracle::pick(rng, dcs.size())];
    const auto& d = dcs[oracle::pick(rng, dcs.size())];
    const auto fs = enum_morphisms(a, b), gs = enum_morphisms(b, c), hs = enum_morphisms(c, d);
    if (fs.empty() || gs.empty() || hs.empty()) continue;
    const auto& f = fs[oracle::pick(rng, fs.size())];
    const auto& g = gs[oracle::pick(rng, gs.size())];
    const auto& h = hs[oracle::pick(rng, hs.size())];
    const auto left = compose_dcont_morphisms(compose_dcont_morphisms(f, g), h);
    const auto right = compose_dcont_morphisms(f, compose_dcont_morphisms(g, h));
    EXPECT_EQ(left.underlying, right.underlying);
    EXPECT_TRUE(check_dcont_morphism(left).passed());
    EXPECT_EQ(compose_dcont_morphisms(identity_dcont_morphism(a), f).underlying, f.underlying);
    EXPECT_EQ(compose_dcont_morphisms(f, identity_dcont_morphism(b)).underlying, f.underlying);
  }
}

TEST(Property, IsomorphismSearchIsSymmetricAndMatchesBruteForce) {
  const auto all = tiny_structures();
  for (const auto& a : all)
    for (const auto& b : all) {
      if (a.base.shapes.size() != b.base.shapes.size()) continue;
      const bool ab = find_isomorphism(a, b).has_value();
      EXPECT_EQ(ab, find_isomorphism(b, a).has_value());
      EXPECT_EQ(ab, oracle::brute_isomorphic(a, b));
    }
}

TEST(Property, RandomRelabellingIsIsomorphic) {
  oracle::Rng rng(kSeed + 2);
  for (int trial = 0; trial < 100; ++trial) {
    const auto dc = oracle::random_example(rng);
    const auto copy = oracle::random_relabel(rng, dc);
    EXPECT_TRUE(check_dcont_laws(copy).passed());
    const auto iso = find_isomorphism(dc, copy);
    ASSERT_TRUE(iso);
    EXPECT_TRUE(is_isomorphism(*iso, dc, copy));
    const auto back = find_isomorphism(copy, dc);
    ASSERT_TRUE(back);
    EXPECT_TRUE(is_isomorphism(*back, copy, dc));
  }
}

TEST(Property, RoundTripsThroughCategories) {
  auto all = tiny_structures();
  for (std::size_t n = 0; n <= 3; ++n)
    for (const auto& dc : {ex::suffixes(n), ex::cyclic(n), ex::saturating_nat(n), ex::context_trees(n)})
      all.push_back(dc);
  for (const auto& dc : all) {
    const auto cat = dcont_to_cat(dc);
    EXPECT_TRUE(isomorphic(cat_to_dcont(cat), dc));
    EXPECT_TRUE(isomorphic(dcont_to_cat(cat_to_dcont(cat)), cat));
  }
}

TEST(Property, MorphismCheckersAgree) {
  const auto dcs = small_dconts();
  for (const auto& a : dcs)
    for (const auto& b : dcs) {
      const auto ca = dcont_to_cat(a), cb = dcont_to_cat(b);
      auto sa = std::make_shared<const DirectedContainer>(a);
      auto sb = std::make_shared<const DirectedContainer>(b);
      for (auto& m : enum_nat_trans(a.base, b.base, 100'000)) {
        const DContMorphism dm{m, sa, sb};
        const bool direct = check_dcont_morphism(dm).passed();
        EXPECT_EQ(direct, check_preop_morphism(dmorph_to_preop(dm), ca, cb).passed());
        EXPECT_EQ(direct, oracle::dmorph_lawful(m, a, b));
      }
    }
}

TEST(Property, GroupoidsAreExactlyBidirected) {
  for (const auto& dc : tiny_structures()) {
    const auto cat = dcont_to_cat(dc);
    const bool groupoid = groupoid_inverse_search(cat).has_value();
    const auto oms = enum_ominus_maps(cat_to_dcont(cat));
    EXPECT_EQ(groupoid, !oms.empty());
    EXPECT_LE(oms.size(), 1u);
    if (groupoid) {
      EXPECT_EQ(ominus_from_inverse(cat, *groupoid_inverse_search(cat)), oms.front());
    }
  }
}

TEST(Property, InversesAreUnique) {
  for (const auto& dc : tiny_structures()) {
    const auto cat = dcont_to_cat(dc);
    const auto inv = groupoid_inverse_search(cat);
    std::size_t passing = 0;
    oracle::each_function(cat.arrow_count(), cat.arrow_count(), [&](const std::vector<Index>& f) {
      passing += check_inverse(cat, InverseMap{f}).passed();
    });
    EXPECT_EQ(passing, inv ? 1u : 0u);
  }
}

TEST(Property, CopairIsTheUniqueMediatingMorphism) {
  oracle::Rng rng(kSeed + 3);
  const auto dcs = small_dconts();
  for (int trial = 0; trial < 40; ++trial) {
    const auto& a = dcs[oracle::pick(rng, dcs.size())];
    const auto& b = dcs[oracle::pick(rng, dcs.size())];
    const auto& c = dcs[oracle::pick(rng, dcs.size())];
    const auto fs = enum_morphisms(a, c), gs = enum_morphisms(b, c);
    if (fs.empty() || gs.empty()) continue;
    const auto& f = fs[oracle::pick(rng, fs.size())];
    const auto& g = gs[oracle::pick(rng, gs.size())];
    const auto fg = copair(f, g);
    EXPECT_TRUE(check_dcont_morphism(fg).passed());
    const auto [inl, inr] = coproduct_injections(a, b);
    EXPECT_EQ(compose_dcont_morphisms(inl, fg), f);
    EXPECT_EQ(compose_dcont_morphisms(inr, fg), g);
    std::size_t mediating = 0;
    for (const auto& h : enum_morphisms(*inl.target, c))
      mediating += compose_dcont_morphisms(inl, h) == f && compose_dcont_morphisms(inr, h) == g;
    EXPECT_EQ(mediating, 1u);
  }
}

TEST(Property, InterpretationIsFunctorial) {
  const auto dcs = small_dconts();
  for (const auto& a : dcs)
    for (const auto& b : dcs)
      for (const auto& c : {ex::saturating_nat(1), ex::cyclic(1)}) {
        const auto fs = enum_nat_trans(a.base, b.base, 10'000);
        const auto gs = enum_nat_trans(b.base, c.base, 10'000);
        for (std::size_t i = 0; i < fs.size(); i += 7)
          for (std::size_t j = 0; j < gs.size(); j += 3) {
            const auto h = compose_cont_morphisms(fs[i], gs[j]);
            for (const auto& v : enumerate_values(a.base, 2))
              EXPECT_EQ(interp_morphism(h, v), interp_morphism(gs[j], interp_morphism(fs[i], v)));
          }
      }
}

TEST(Property, ComonadLawsCoincideWithDirectedLaws) {
  oracle::Rng rng(kSeed + 4);
  for (const auto& dc : tiny_structures()) EXPECT_TRUE(check_comonad_laws(dc, label_set(3)).passed());
  for (int trial = 0; trial < 300; ++trial) {
    const auto c = oracle::random_container(rng, 2, 2);
    const auto dc = oracle::random_tables(rng, c);
    EXPECT_EQ(check_dcont_laws(dc).passed(), check_comonad_laws(dc, label_set(3)).passed());
  }
}

TEST(Property, EnumeratedStructuresAreLawfulAndComplete) {
  oracle::Rng rng(kSeed + 5);
  for (int trial = 0; trial < 10; ++trial) {
    const auto c = oracle::random_container(rng, 2, 2);
    const auto got = enum_structures(c);
    for (const auto& dc : got) EXPECT_TRUE(oracle::lawful(dc));
    EXPECT_EQ(oracle::keys(got), oracle::keys(oracle::brute_structures(c)));
  }
}
