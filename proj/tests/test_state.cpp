#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "gridhouse/state.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace gh_test;
using namespace gh_oracle;

namespace {

bool holds(const GridWorld& w, Predicate p, EntityRef a, std::optional<EntityRef> b = std::nullopt) {
  return eval_atom(w, p, a, b);
}

// Kitchen corner: agent at (2,2) facing east onto a cell holding a plate.
struct Scene {
  GridWorld w = GridWorld::walled_room(10, 10, "kitchen");
  Scene() { w.set_agent({2, 2}, Heading::East); }
};

}  // namespace

TEST(Predicates, NamesRoundTrip) {
  for (int i = 0; i < kNumPredicates; ++i) {
    const auto p = static_cast<Predicate>(i);
    EXPECT_EQ(parse_predicate(to_string(p)), p);
  }
  EXPECT_FALSE(parse_predicate("Levitating").has_value());
  EXPECT_EQ(arity(Predicate::OnTop), 2);
  EXPECT_EQ(arity(Predicate::OnFloor), 1);
  EXPECT_EQ(kind_of(Predicate::InSameRoom), PredicateKind::Agent);
  EXPECT_EQ(as_state(Predicate::Stained), AbsState::Stained);
  EXPECT_FALSE(as_state(Predicate::OnFloor).has_value());
}

TEST(Predicates, AgentRelated) {
  Scene s;
  auto& w = s.w;
  const auto plate = add(w, "plate", "plate_0", 3, 2, 0);
  const auto book = add(w, "book", "book_0", 6, 6, 0);
  const auto pen = carried(w, "notebook", "notebook_0");
  EXPECT_TRUE(holds(w, Predicate::InFOV, O(plate)));
  EXPECT_TRUE(holds(w, Predicate::InReach, O(plate)));
  EXPECT_FALSE(holds(w, Predicate::InHand, O(plate)));
  EXPECT_FALSE(holds(w, Predicate::InFOV, O(book)));
  EXPECT_TRUE(holds(w, Predicate::InSameRoom, O(book)));
  EXPECT_TRUE(holds(w, Predicate::InHand, O(pen)));
  EXPECT_TRUE(holds(w, Predicate::InReach, O(pen)));
  EXPECT_FALSE(holds(w, Predicate::InFOV, O(pen)));
  EXPECT_TRUE(holds(w, Predicate::InSameRoom, O(pen)));
}

TEST(Predicates, InSameRoomRespectsWalls) {
  GridWorld w(12, 8);
  for (int x = 0; x < 12; ++x) {
    w.set_wall({x, 0}, true);
    w.set_wall({x, 7}, true);
  }
  for (int y = 0; y < 8; ++y) {
    w.set_wall({0, y}, true);
    w.set_wall({11, y}, true);
    w.set_wall({6, y}, true);
  }
  w.add_room({1, 1, 5, 6}, "kitchen");
  w.add_room({7, 1, 10, 6}, "office");
  w.set_agent({2, 2}, Heading::North);
  const auto a = add(w, "book", "book_0", 3, 3, 0);
  const auto b = add(w, "book", "book_1", 8, 3, 0);
  EXPECT_TRUE(holds(w, Predicate::InSameRoom, O(a)));
  EXPECT_FALSE(holds(w, Predicate::InSameRoom, O(b)));
}

TEST(Predicates, StackingAndFurniture) {
  Scene s;
  auto& w = s.w;
  const auto table = put(w, "table", "table_0", 5, 5);
  const auto cab = put(w, "cabinet", "cabinet_0", 5, 2);
  const auto floor = F(w.rooms()[0].floor);
  const auto pan = add(w, "pan", "pan_0", 3, 3, 0);
  const auto plate = add(w, "plate", "plate_0", 3, 3, 1);
  const auto book = add(w, "book", "book_0", 5, 5, 2);
  const auto fish = add(w, "fish", "fish_0", 6, 2, 1);

  EXPECT_TRUE(holds(w, Predicate::OnFloor, O(pan)));
  EXPECT_FALSE(holds(w, Predicate::OnFloor, O(plate)));
  EXPECT_TRUE(holds(w, Predicate::OnTop, O(pan), floor));
  EXPECT_TRUE(holds(w, Predicate::OnTop, O(plate), O(pan)));
  EXPECT_TRUE(holds(w, Predicate::Under, O(pan), O(plate)));
  EXPECT_FALSE(holds(w, Predicate::OnTop, O(pan), O(plate)));
  EXPECT_TRUE(holds(w, Predicate::AtSameLocation, O(pan), O(plate)));

  EXPECT_TRUE(holds(w, Predicate::OnTop, O(book), F(table)));
  EXPECT_FALSE(holds(w, Predicate::OnFloor, O(book)));
  EXPECT_TRUE(holds(w, Predicate::AtSameLocation, O(book), F(table)));
  EXPECT_FALSE(holds(w, Predicate::NextTo, O(book), F(table)));
  EXPECT_FALSE(holds(w, Predicate::OnTop, O(book), floor));

  EXPECT_TRUE(holds(w, Predicate::Inside, O(fish), F(cab)));
  EXPECT_FALSE(holds(w, Predicate::OnTop, O(fish), F(cab)));
  EXPECT_FALSE(holds(w, Predicate::NextTo, F(cab), F(table)));
}

TEST(Predicates, ObjectSurfaceOfContainerFurnitureIsItsRoof) {
  Scene s;
  auto& w = s.w;
  const auto cab = put(w, "cabinet", "cabinet_0", 5, 2);  // height 3: all levels inside
  const auto box = put(w, "box", "box_0", 2, 6);          // height 2: top level is the lid
  const auto a = add(w, "apple", "apple_0", 5, 2, 2);
  const auto b = add(w, "book", "book_0", 2, 6, 2);
  EXPECT_TRUE(holds(w, Predicate::Inside, O(a), F(cab)));
  EXPECT_FALSE(holds(w, Predicate::Inside, O(b), F(box)));
  EXPECT_TRUE(holds(w, Predicate::OnTop, O(b), F(box)));
}

TEST(Predicates, NextToIsFourNeighbourhood) {
  Scene s;
  auto& w = s.w;
  const auto t = put(w, "table", "table_0", 4, 4);
  const auto a = add(w, "book", "book_0", 6, 4, 0);
  const auto b = add(w, "book", "book_1", 6, 6, 0);
  const auto c = add(w, "book", "book_2", 7, 4, 0);
  EXPECT_TRUE(holds(w, Predicate::NextTo, O(a), F(t)));
  EXPECT_TRUE(holds(w, Predicate::NextTo, F(t), O(a)));
  EXPECT_FALSE(holds(w, Predicate::NextTo, O(b), F(t)));  // diagonal
  EXPECT_TRUE(holds(w, Predicate::NextTo, O(a), O(c)));
  EXPECT_FALSE(holds(w, Predicate::NextTo, O(a), O(a)));
}

TEST(Predicates, ContentsOfContainerObjects) {
  Scene s;
  auto& w = s.w;
  const auto teapot = add(w, "teapot", "teapot_0", 3, 2, 0);
  const auto bag = carried(w, "teabag", "teabag_0");
  w.put_within(bag, teapot);
  EXPECT_TRUE(holds(w, Predicate::Inside, O(bag), O(teapot)));
  EXPECT_TRUE(holds(w, Predicate::InFOV, O(bag)));
  EXPECT_TRUE(holds(w, Predicate::AtSameLocation, O(bag), O(teapot)));
  EXPECT_FALSE(holds(w, Predicate::OnFloor, O(bag)));
}

TEST(Predicates, IncapableAbsoluteStatesAreFalse) {
  Scene s;
  auto& w = s.w;
  const auto book = add(w, "book", "book_0", 3, 3, 0);
  const auto r = eval_absolute(w, O(book), Predicate::Dusty);
  EXPECT_FALSE(r.value);
  EXPECT_TRUE(r.incapable);
  const auto shoe = add(w, "shoe", "shoe_0", 4, 3, 0);
  w.set_object_state(shoe, AbsState::Dusty, true);
  EXPECT_TRUE(eval_absolute(w, O(shoe), Predicate::Dusty).value);
  EXPECT_FALSE(eval_absolute(w, O(shoe), Predicate::Dusty).incapable);
}

// The per-atom evaluators and the cell-scanning enumerator are independent
// routes to the same relation; they must agree on every ground atom.
TEST(PredicateOracle, EvalMatchesEnumerationOnRandomWorlds) {
  std::size_t checked = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const auto w = random_world(seed);
    const auto listed = all_true_predicates(w);
    const std::set<GroundAtom> truth(listed.begin(), listed.end());
    ASSERT_EQ(truth.size(), listed.size());
    const auto ents = all_entities(w);
    for (int pi = 0; pi < kNumPredicates; ++pi) {
      const auto p = static_cast<Predicate>(pi);
      for (auto a : ents) {
        if (arity(p) == 1) {
          ASSERT_EQ(eval_atom(w, p, a), truth.count({p, a, std::nullopt}) == 1)
              << "seed " << seed << " " << render_atom(w, {p, a, std::nullopt});
          ++checked;
          continue;
        }
        for (auto b : ents) {
          ASSERT_EQ(eval_atom(w, p, a, b), truth.count({p, a, b}) == 1)
              << "seed " << seed << " " << render_atom(w, {p, a, b});
          ++checked;
        }
      }
    }
  }
  EXPECT_GT(checked, 500'000U);
}

TEST(PredicateOracle, AlgebraicLaws) {
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const auto w = random_world(seed);
    const auto ents = all_entities(w);
    for (auto a : ents) {
      if (a.is_object()) {
        ASSERT_EQ(holds(w, Predicate::InReach, a), holds(w, Predicate::InFOV, a) || holds(w, Predicate::InHand, a))
            << seed;
      }
      for (auto b : ents) {
        ASSERT_EQ(holds(w, Predicate::OnTop, a, b), holds(w, Predicate::Under, b, a)) << seed;
        ASSERT_EQ(holds(w, Predicate::NextTo, a, b), holds(w, Predicate::NextTo, b, a)) << seed;
        ASSERT_EQ(holds(w, Predicate::AtSameLocation, a, b), holds(w, Predicate::AtSameLocation, b, a)) << seed;
        if (a == b) {
          ASSERT_FALSE(holds(w, Predicate::NextTo, a, b));
          ASSERT_FALSE(holds(w, Predicate::OnTop, a, b));
        }
      }
    }
  }
}

// --- transitions --------------------------------------------------------------

TEST(Transitions, T1SoakInRunningSink) {
  Scene s;
  auto& w = s.w;
  const auto sink = put(w, "sink", "sink_0", 5, 5);
  const auto rag = add(w, "rag", "rag_0", 5, 5, 0);
  const auto book = add(w, "book", "book_0", 6, 5, 0);
  EXPECT_TRUE(apply_transitions(w).empty());
  EXPECT_FALSE(w.object(rag).states.has(AbsState::Soaked));
  w.set_furniture_state(sink, AbsState::ToggledOn, true);
  const auto changes = apply_transitions(w);
  ASSERT_EQ(changes.size(), 1U);
  EXPECT_EQ(changes[0], (StateChange{O(rag), AbsState::Soaked, true, ChangeCause::Soak}));
  EXPECT_TRUE(w.object(rag).states.has(AbsState::Soaked));
  EXPECT_TRUE(w.object(book).states.empty());
}

TEST(Transitions, T1NeedsWaterSourceInterior) {
  Scene s;
  auto& w = s.w;
  const auto sink = put(w, "sink", "sink_0", 5, 5);
  w.set_furniture_state(sink, AbsState::ToggledOn, true);
  const auto rag = add(w, "rag", "rag_0", 5, 5, 2);  // on the rim, not inside
  apply_transitions(w);
  EXPECT_FALSE(w.object(rag).states.has(AbsState::Soaked));
}

TEST(Transitions, T2FreezeInRunningFridge) {
  Scene s;
  auto& w = s.w;
  const auto fridge = put(w, "refrigerator", "refrigerator_0", 5, 5);
  const auto fish = add(w, "fish", "fish_0", 5, 5, 1);
  const auto book = add(w, "book", "book_0", 6, 5, 0);
  apply_transitions(w);
  EXPECT_FALSE(w.object(fish).states.has(AbsState::Frozen));
  w.set_furniture_state(fridge, AbsState::ToggledOn, true);
  const auto changes = apply_transitions(w);
  ASSERT_EQ(changes.size(), 1U);
  EXPECT_EQ(changes[0].cause, ChangeCause::Freeze);
  EXPECT_TRUE(w.object(fish).states.has(AbsState::Frozen));
  EXPECT_FALSE(w.object(book).states.has(AbsState::Frozen));
}

TEST(Transitions, T3SoakedToolNextToDustyObject) {
  Scene s;
  auto& w = s.w;
  const auto shoe = add(w, "shoe", "shoe_0", 5, 5, 0);
  const auto rag = add(w, "rag", "rag_0", 5, 6, 0);
  w.set_object_state(shoe, AbsState::Dusty, true);
  apply_transitions(w);
  EXPECT_TRUE(w.object(shoe).states.has(AbsState::Dusty)) << "dry rag cleans nothing";
  w.set_object_state(rag, AbsState::Soaked, true);
  const auto changes = apply_transitions(w);
  ASSERT_EQ(changes.size(), 1U);
  EXPECT_EQ(changes[0], (StateChange{O(shoe), AbsState::Dusty, false, ChangeCause::CleanDust}));
}

TEST(Transitions, T3CarriedToolWipesFacedFurniture) {
  Scene s;
  auto& w = s.w;
  const auto cab = put(w, "cabinet", "cabinet_0", 3, 2);
  w.set_furniture_state(cab, AbsState::Dusty, true);
  const auto rag = carried(w, "rag", "rag_0");
  w.set_object_state(rag, AbsState::Soaked, true);
  w.set_agent({2, 4}, Heading::East);  // facing away from the cabinet
  apply_transitions(w);
  EXPECT_TRUE(w.furniture(cab).states.has(AbsState::Dusty));
  w.set_agent({2, 2}, Heading::East);
  apply_transitions(w);
  EXPECT_FALSE(w.furniture(cab).states.has(AbsState::Dusty));
}

TEST(Transitions, T4StainNeedsSoap) {
  Scene s;
  auto& w = s.w;
  const auto plate = add(w, "plate", "plate_0", 5, 5, 0);
  const auto rag = add(w, "rag", "rag_0", 5, 6, 0);
  w.set_object_state(plate, AbsState::Stained, true);
  w.set_object_state(rag, AbsState::Soaked, true);
  apply_transitions(w);
  EXPECT_TRUE(w.object(plate).states.has(AbsState::Stained));
  add(w, "soap", "soap_0", 4, 5, 0);
  const auto changes = apply_transitions(w);
  ASSERT_EQ(changes.size(), 1U);
  EXPECT_EQ(changes[0], (StateChange{O(plate), AbsState::Stained, false, ChangeCause::CleanStain}));
}

TEST(Transitions, T4SoapInReachCounts) {
  Scene s;
  auto& w = s.w;
  const auto plate = add(w, "plate", "plate_0", 7, 7, 0);
  const auto rag = add(w, "rag", "rag_0", 7, 6, 0);
  w.set_object_state(plate, AbsState::Stained, true);
  w.set_object_state(rag, AbsState::Soaked, true);
  carried(w, "soap", "soap_0");
  apply_transitions(w);
  EXPECT_FALSE(w.object(plate).states.has(AbsState::Stained));
}

TEST(Transitions, T5SweepWithCarriedBroom) {
  Scene s;
  auto& w = s.w;
  const auto floor = w.rooms()[0].floor;
  w.set_furniture_state(floor, AbsState::Dusty, true);
  apply_transitions(w);
  EXPECT_TRUE(w.furniture(floor).states.has(AbsState::Dusty));
  const auto broom = add(w, "broom", "broom_0", 3, 2, 0);
  apply_transitions(w);
  EXPECT_TRUE(w.furniture(floor).states.has(AbsState::Dusty)) << "broom must be carried";
  w.carry_object(broom);
  w.set_agent({1, 1}, Heading::North);  // facing a wall
  apply_transitions(w);
  EXPECT_TRUE(w.furniture(floor).states.has(AbsState::Dusty));
  w.set_agent({1, 1}, Heading::South);
  const auto changes = apply_transitions(w);
  ASSERT_EQ(changes.size(), 1U);
  EXPECT_EQ(changes[0], (StateChange{F(floor), AbsState::Dusty, false, ChangeCause::Sweep}));
}

TEST(Transitions, IdempotentOnRandomWorlds) {
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    auto w = random_world(seed);
    apply_transitions(w);
    const auto h = w.state_hash();
    const auto again = apply_transitions(w);
    ASSERT_TRUE(again.empty()) << "seed " << seed;
    ASSERT_EQ(w.state_hash(), h) << "seed " << seed;
  }
}

TEST(Transitions, OnlyEverClearDirtOrSetSoakFreeze) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    auto w = random_world(seed);
    for (const auto& c : apply_transitions(w)) {
      switch (c.cause) {
        case ChangeCause::Soak: ASSERT_TRUE(c.value && c.state == AbsState::Soaked); break;
        case ChangeCause::Freeze: ASSERT_TRUE(c.value && c.state == AbsState::Frozen); break;
        case ChangeCause::CleanDust:
        case ChangeCause::Sweep: ASSERT_TRUE(!c.value && c.state == AbsState::Dusty); break;
        case ChangeCause::CleanStain: ASSERT_TRUE(!c.value && c.state == AbsState::Stained); break;
        case ChangeCause::Action: FAIL();
      }
    }
  }
}
