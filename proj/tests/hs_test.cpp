#include "lspace/hs.hpp"

#include <gtest/gtest.h>

#include <string>
#include <vector>

#include "lspace/errors.hpp"
#include "lspace/family.hpp"
#include "test_util.hpp"

namespace lspace {
namespace {

using test::mask_of;

// G2 family indices, canonical order:
// 0:{} 1:{u} 2:{u,v} 3:{u,v,w} 4:{u,w} 5:{v} 6:{v,w} 7:{w}
constexpr int kEmpty = 0, kU = 1, kUV = 2, kUVW = 3, kUW = 4, kV = 5, kVW = 6,
              kW = 7;

class HsG2 : public ::testing::Test {
 protected:
  LabelledSpace sp = test::g2_space();
  Bitset h1 = mask_of(8, {kEmpty, kV, kVW, kW});
  Bitset bottom = mask_of(8, {kEmpty});
  Bitset top = Bitset::full(8);
};

TEST_F(HsG2, HereditaryExamples) {
  EXPECT_TRUE(is_hereditary(sp, mask_of(8, {kEmpty, kW})));
  EXPECT_TRUE(is_hereditary(sp, bottom));
  EXPECT_TRUE(is_hereditary(sp, h1));
  EXPECT_TRUE(is_hereditary(sp, top));

  auto w = hereditary_witness(sp, mask_of(8, {kEmpty, kV}));
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(w->condition, 1);
  EXPECT_EQ(w->member, kV);
  EXPECT_EQ(sp.graph().label_name(w->letter), "c");
  EXPECT_EQ(w->escaped_set, kW);
}

TEST_F(HsG2, SaturatedExamples) {
  auto w = saturated_witness(sp, mask_of(8, {kEmpty, kW}));
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(*w, kV);
  EXPECT_TRUE(is_saturated(sp, h1));
  EXPECT_TRUE(is_saturated(sp, top));
  EXPECT_TRUE(is_saturated(sp, bottom));
}

TEST_F(HsG2, FeedsInto) {
  EXPECT_TRUE(feeds_into(sp, kV, mask_of(8, {kEmpty, kW})));
  EXPECT_FALSE(feeds_into(sp, kU, mask_of(8, {kEmpty, kW})));
  EXPECT_TRUE(feeds_into(sp, kEmpty, bottom));
}

TEST_F(HsG2, SaturateExamples) {
  EXPECT_EQ(saturate(sp, mask_of(8, {kEmpty, kW})), h1);
  EXPECT_EQ(saturate(sp, bottom), bottom);
  EXPECT_EQ(saturate(sp, top), top);
}

TEST_F(HsG2, SaturateRejectsNonHereditaryInput) {
  try {
    saturate(sp, mask_of(8, {kEmpty, kV}));
    FAIL() << "expected Error";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("input not hereditary"),
              std::string::npos);
  }
}

TEST_F(HsG2, SaturationIterationIsMonotone) {
  // H_k ⊆ H_{k+1} for hereditary input: one sweep at a time.
  Bitset h = mask_of(8, {kEmpty, kW});
  while (true) {
    Bitset next = h;
    for (int i = 0; i < sp.size(); ++i)
      if (!next.test(i) && feeds_into(sp, i, h)) next.set(i);
    EXPECT_TRUE(h.is_subset_of(next));
    if (next == h) break;
    h = next;
  }
  EXPECT_EQ(h, h1);
}

TEST_F(HsG2, HsClosureExamples) {
  EXPECT_EQ(hs_closure(sp, mask_of(8, {kV})), h1);
  EXPECT_EQ(hs_closure(sp, mask_of(8, {kU})), top);
  EXPECT_EQ(hs_closure(sp, Bitset(8)), bottom);
  EXPECT_EQ(hs_closure(sp, mask_of(8, {kW})), h1);
}

TEST_F(HsG2, HsClosureIsAClosureOperator) {
  std::vector<Bitset> closures;
  for (int bits = 0; bits < 256; ++bits) {
    Bitset s(8);
    for (int i = 0; i < 8; ++i)
      if (bits >> i & 1) s.set(i);
    Bitset c = hs_closure(sp, s);
    EXPECT_TRUE(s.is_subset_of(c));
    EXPECT_EQ(hs_closure(sp, c), c);
    EXPECT_TRUE(is_hereditary(sp, c));
    EXPECT_TRUE(is_saturated(sp, c));
    closures.push_back(c);
  }
  for (int x = 0; x < 256; ++x)
    for (int y = 0; y < 256; ++y)
      if ((x & y) == x) {  // x ⊆ y as index sets
        EXPECT_TRUE(closures[x].is_subset_of(closures[y]));
      }
}

TEST_F(HsG2, SaturateAgreesWithHsClosureOnHereditaryInputs) {
  for (int bits = 0; bits < 256; ++bits) {
    Bitset s(8);
    for (int i = 0; i < 8; ++i)
      if (bits >> i & 1) s.set(i);
    if (!is_hereditary(sp, s)) continue;
    EXPECT_EQ(saturate(sp, s), hs_closure(sp, s));
  }
}

TEST_F(HsG2, EnumerateLatticeExactly) {
  HSLattice lat = enumerate_hs(sp);
  ASSERT_EQ(lat.size(), 3);
  EXPECT_EQ(lat.members[0], bottom);
  EXPECT_EQ(lat.members[1], top);
  EXPECT_EQ(lat.members[2], h1);
  EXPECT_EQ(lat.bottom_id, 0);
  EXPECT_EQ(lat.top_id, 1);
  EXPECT_EQ(lat.hasse_edges,
            (std::vector<std::pair<int, int>>{{0, 2}, {2, 1}}));
  EXPECT_EQ(lat.meet_table[2][1], 2);
  EXPECT_EQ(lat.join_table[0][2], 2);
  EXPECT_EQ(lat.index_of(h1), 2);
  EXPECT_EQ(lat.index_of(mask_of(8, {kU})), -1);
}

TEST(HsLattice, G3HasTwoMembers) {
  LabelledSpace sp = test::g3_space();
  HSLattice lat = enumerate_hs(sp);
  ASSERT_EQ(lat.size(), 2);
  EXPECT_EQ(lat.members[0], mask_of(2, {0}));
  EXPECT_EQ(lat.members[1], Bitset::full(2));
  EXPECT_EQ(lat.hasse_edges,
            (std::vector<std::pair<int, int>>{{0, 1}}));
}

TEST(HsLattice, TwoLoopsHasFourMembers) {
  LabelledSpace sp = test::two_loops_space();
  // Family: 0:{} 1:{v} 2:{v,w} 3:{w}
  HSLattice lat = enumerate_hs(sp);
  ASSERT_EQ(lat.size(), 4);
  EXPECT_EQ(lat.members[0], mask_of(4, {0}));
  EXPECT_EQ(lat.members[1], mask_of(4, {0, 1}));
  EXPECT_EQ(lat.members[2], Bitset::full(4));
  EXPECT_EQ(lat.members[3], mask_of(4, {0, 3}));
  EXPECT_EQ(lat.bottom_id, 0);
  EXPECT_EQ(lat.top_id, 2);
}

TEST_F(HsG2, MeetJoinExamplesAndLaws) {
  EXPECT_EQ(meet(sp, h1, top), h1);
  EXPECT_EQ(meet(sp, bottom, h1), bottom);
  EXPECT_EQ(join(sp, h1, hs_closure(sp, mask_of(8, {kU}))), top);
  EXPECT_THROW(meet(sp, mask_of(8, {kV}), h1), Error);

  HSLattice lat = enumerate_hs(sp);
  for (int i = 0; i < lat.size(); ++i) {
    for (int j = 0; j < lat.size(); ++j) {
      int m = lat.meet_table[i][j];
      int u = lat.join_table[i][j];
      EXPECT_EQ(m, lat.meet_table[j][i]);
      EXPECT_EQ(u, lat.join_table[j][i]);
      // Absorption.
      EXPECT_EQ(lat.join_table[i][m], i);
      EXPECT_EQ(lat.meet_table[i][u], i);
      // Meets and joins stay hereditary and saturated.
      EXPECT_TRUE(is_hereditary_saturated(sp, lat.members[m]));
      EXPECT_TRUE(is_hereditary_saturated(sp, lat.members[u]));
      for (int k = 0; k < lat.size(); ++k) {
        EXPECT_EQ(lat.meet_table[lat.meet_table[i][j]][k],
                  lat.meet_table[i][lat.meet_table[j][k]]);
        EXPECT_EQ(lat.join_table[lat.join_table[i][j]][k],
                  lat.join_table[i][lat.join_table[j][k]]);
      }
    }
  }
}

TEST_F(HsG2, EveryMemberIsJoinOfPrincipalClosures) {
  HSLattice lat = enumerate_hs(sp);
  for (const Bitset& H : lat.members) {
    Bitset joined = bottom;
    for (int i = H.find_first(); i != -1; i = H.find_next(i))
      joined = hs_closure(sp, joined | hs_closure(sp, mask_of(8, {i})));
    EXPECT_EQ(joined, H);
  }
}

TEST_F(HsG2, SimEquivExamples) {
  EXPECT_TRUE(sim_equiv(sp, h1, kU, kUV));
  EXPECT_FALSE(sim_equiv(sp, h1, kU, kV));
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b)
      EXPECT_EQ(sim_equiv(sp, bottom, a, b), a == b);
}

TEST_F(HsG2, SimEquivIsACongruentEquivalence) {
  HSLattice lat = enumerate_hs(sp);
  for (const Bitset& H : lat.members) {
    for (int a = 0; a < 8; ++a) {
      EXPECT_TRUE(sim_equiv(sp, H, a, a));
      for (int b = 0; b < 8; ++b) {
        EXPECT_EQ(sim_equiv(sp, H, a, b), sim_equiv(sp, H, b, a));
        if (!sim_equiv(sp, H, a, b)) continue;
        for (int c = 0; c < 8; ++c)
          if (sim_equiv(sp, H, b, c)) {
            EXPECT_TRUE(sim_equiv(sp, H, a, c));
          }
        // Congruence for single-letter relative ranges.
        for (int l = 0; l < sp.graph().label_count(); ++l)
          EXPECT_TRUE(sim_equiv(sp, H, sp.letter_range_idx(a, l),
                                sp.letter_range_idx(b, l)));
      }
    }
  }
}

TEST_F(HsG2, QuotientByH1HasTwoClasses) {
  QuotientSpace q = quotient(sp, h1);
  EXPECT_EQ(sp.graph().vertex_names(q.u_h),
            (std::vector<std::string>{"v", "w"}));
  ASSERT_EQ(q.classes.size(), 2u);
  EXPECT_EQ(q.classes[0], (std::vector<int>{kEmpty, kV, kVW, kW}));
  EXPECT_EQ(q.classes[1], (std::vector<int>{kU, kUV, kUVW, kUW}));
  EXPECT_EQ(sp.graph().vertex_names(q.representatives[0]),
            (std::vector<std::string>{"v", "w"}));
  EXPECT_EQ(sp.graph().vertex_names(q.representatives[1]),
            (std::vector<std::string>{"u", "v", "w"}));
  EXPECT_TRUE(q.quotient_wlr_verified);
}

TEST_F(HsG2, QuotientDegenerateCases) {
  EXPECT_EQ(quotient(sp, bottom).classes.size(), 8u);
  EXPECT_EQ(quotient(sp, top).classes.size(), 1u);
  EXPECT_THROW(quotient(sp, mask_of(8, {kV})), Error);
}

TEST(HsSubfamilyMask, RoundTripsAndRejectsForeignSets) {
  LabelledSpace sp2 = test::g2_space();
  SetFamily good = SetFamily::from_sets(
      {sp2.graph().singleton(0) | sp2.graph().singleton(2)});
  EXPECT_EQ(subfamily_mask(sp2, good), mask_of(8, {kUW}));
  EXPECT_EQ(subfamily_sets(sp2, mask_of(8, {kEmpty, kV})).size(), 2);

  // The bowtie family is {{},{x},{x,y,z},{y,z}}, so the singleton {y}
  // is a well-formed vertex set outside it.
  LabelledSpace sp = test::bowtie_space();
  ASSERT_EQ(sp.size(), 4);
  EXPECT_EQ(sp.graph().set_to_string(sp.family()[3]), "{y,z}");
  SetFamily foreign = SetFamily::from_sets({sp.graph().singleton(1)});
  try {
    subfamily_mask(sp, foreign);
    FAIL() << "expected InputError";
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("set not in family"),
              std::string::npos);
    EXPECT_NE(std::string(e.what()).find("{y}"), std::string::npos);
  }
}

}  // namespace
}  // namespace lspace
