// Hand-written controllers, one per shipped task, built on the Planner skills.
#include <map>

#include "gridhouse/agents.hpp"

namespace gridhouse {
namespace {

using Script = void (*)(Planner&);

void boxing_books(Planner& p) { p.move_all_in(p.objects_of("book"), p.furn("box")); }

void cleaning_car(Planner& p) {
  const auto rag = p.obj("rag");
  p.soak(rag, p.furn("sink"));
  p.wipe(p.furn("car"), rag);
  p.put_in(p.furn("bucket"));
  p.move_in(p.obj("soap"), p.furn("bucket"));
}

void cleaning_shoes(Planner& p) {
  const auto towel = p.obj("towel");
  p.soak(towel, p.furn("sink"));
  p.setup_station(p.obj("soap"), towel);
  for (auto s : p.objects_of("shoe")) p.clean_at_station(s);
}

void cleaning_kitchen(Planner& p) {
  const auto rag = p.obj("rag");
  p.soak(rag, p.furn("sink"));
  p.wipe(p.furn("cabinet"), rag);
  p.setup_station(p.obj("soap"), rag);
  for (const char* name : {"pan", "plate", "blender"}) p.clean_at_station(p.obj(name));
  p.pickup(p.obj("broom"));
  p.nudge();
}

void collect_misplaced_items(Planner& p) {
  std::vector<ObjectId> items;
  for (const char* name : {"gym_shoe", "necklace", "notebook", "sock"}) items.push_back(p.obj(name));
  p.move_all_on(items, p.furn("table"));
}

void installing_printer(Planner& p) {
  const auto printer = p.obj("printer");
  p.move_on(printer, p.furn("table"));
  p.toggle_object_on(printer);
}

void laying_wood_floors(Planner& p) {
  const auto planks = p.objects_of("plywood");
  const auto& w = p.world();
  auto usable = [&](Pos c) {
    return w.is_free_floor(c) && w.cell(c).room != kNoId && w.cell(c).door == kNoId && w.cell(c).slots[0] == kNoId;
  };
  std::vector<Pos> row;
  for (int y = 0; y < w.height() && row.size() < planks.size(); ++y) {
    for (int x = 0; x < w.width() && row.size() < planks.size(); ++x) {
      row.clear();
      for (int i = 0; i < static_cast<int>(planks.size()); ++i) {
        if (!usable({x + i, y})) break;
        row.push_back({x + i, y});
      }
    }
  }
  if (row.size() < planks.size()) {
    p.fail("no free row for the plywood");
    return;
  }
  for (const auto& c : row) p.reserved.insert({c.x, c.y});
  for (std::size_t i = 0; i < planks.size(); ++i) {
    p.pickup(planks[i]);
    p.drop_at(row[i]);
  }
}

void making_tea(Planner& p) {
  const auto teapot = p.obj("teapot");
  const auto lemon = p.obj("lemon");
  p.move_on(teapot, p.furn("stove"));
  p.pickup(lemon);
  p.empty_hand();
  p.slice(lemon, p.obj("knife"));
  p.pickup(p.obj("teabag"));
  p.put_in_object(teapot);
  p.toggle_on(p.furn("stove"));
}

void moving_boxes(Planner& p) {
  const auto& w = p.world();
  const auto room = w.find_room("storage_room");
  if (!room) {
    p.fail("no storage room");
    return;
  }
  std::optional<Pos> spot;
  for (int y = 0; y < w.height() && !spot; ++y) {
    for (int x = 0; x < w.width() && !spot; ++x) {
      const auto& c = w.cell(x, y);
      if (w.is_free_floor({x, y}) && c.room == *room && c.door == kNoId && c.slots[0] == kNoId && c.slots[1] == kNoId) spot = Pos{x, y};
    }
  }
  if (!spot) {
    p.fail("storage room is full");
    return;
  }
  p.pickup(p.obj("carton_0"));
  p.drop_at(*spot, 0);
  p.pickup(p.obj("carton_1"));
  p.drop_at(*spot, 1);
}

void opening_packages(Planner& p) {
  for (auto o : p.objects_of("package")) p.open_object(o);
}

void organizing_file_cabinet(Planner& p) {
  p.move_all_on(p.objects_of("marker"), p.furn("table"));
  auto filed = p.objects_of("document");
  for (auto f : p.objects_of("folder")) filed.push_back(f);
  p.move_all_in(filed, p.furn("cabinet"));
}

void preparing_salad(Planner& p) {
  const auto plate = p.obj("plate");
  for (const char* cat : {"lettuce", "apple", "tomato", "radish"}) {
    for (auto o : p.objects_of(cat)) {
      p.pickup(o);
      p.put_in_object(plate);
    }
  }
  const auto knife = p.obj("carving_knife");
  for (const char* cat : {"apple", "tomato"}) {
    for (auto o : p.objects_of(cat)) p.slice(o, knife);
  }
}

void putting_away_dishes(Planner& p) {
  const auto cabinet = p.furn("cabinet");
  p.open(cabinet);
  p.move_all_in(p.objects_of("plate"), cabinet);
}

void setting_up_candles(Planner& p) { p.move_all_on(p.objects_of("candle"), p.furn("table")); }

void sorting_books(Planner& p) {
  auto books = p.objects_of("book");
  for (auto h : p.objects_of("hardback")) books.push_back(h);
  p.move_all_on(books, p.furn("shelf"));
}

void storing_food(Planner& p) {
  std::vector<ObjectId> food;
  for (const char* name : {"oatmeal", "chips", "olive_oil", "sugar"}) food.push_back(p.obj(name));
  p.move_all_in(food, p.furn("cabinet"));
}

void thawing_frozen_food(Planner& p) {
  std::vector<ObjectId> food;
  for (const char* cat : {"fish", "date", "olive"}) {
    for (auto o : p.objects_of(cat)) food.push_back(o);
  }
  p.move_all_in(food, p.furn("sink"));
}

void throwing_away_leftovers(Planner& p) { p.move_all_in(p.objects_of("hamburger"), p.furn("trash_can")); }

void washing_pots_and_pans(Planner& p) {
  const auto brush = p.obj("scrub_brush");
  p.soak(brush, p.furn("sink"));
  p.setup_station(p.obj("soap"), brush);
  std::vector<ObjectId> dishes{p.obj("teapot"), p.obj("kettle")};
  for (auto o : p.objects_of("pan")) dishes.push_back(o);
  for (auto o : dishes) p.clean_at_station(o);
  p.move_all_in(dishes, p.furn("cabinet"));
}

void watering_houseplants(Planner& p) {
  const auto sink = p.furn("sink");
  p.toggle_on(sink);
  p.move_all_in(p.objects_of("pot_plant"), sink);
}

const std::map<std::string, Script, std::less<>>& scripts() {
  static const std::map<std::string, Script, std::less<>> table{
      {"boxing_books", boxing_books},
      {"cleaning_car", cleaning_car},
      {"cleaning_kitchen", cleaning_kitchen},
      {"cleaning_shoes", cleaning_shoes},
      {"collect_misplaced_items", collect_misplaced_items},
      {"installing_printer", installing_printer},
      {"laying_wood_floors", laying_wood_floors},
      {"making_tea", making_tea},
      {"moving_boxes", moving_boxes},
      {"opening_packages", opening_packages},
      {"organizing_file_cabinet", organizing_file_cabinet},
      {"preparing_salad", preparing_salad},
      {"putting_away_dishes", putting_away_dishes},
      {"setting_up_candles", setting_up_candles},
      {"sorting_books", sorting_books},
      {"storing_food", storing_food},
      {"thawing_frozen_food", thawing_frozen_food},
      {"throwing_away_leftovers", throwing_away_leftovers},
      {"washing_pots_and_pans", washing_pots_and_pans},
      {"watering_houseplants", watering_houseplants},
  };
  return table;
}

}  // namespace

bool has_script(std::string_view task) { return scripts().contains(task); }

std::vector<std::string> scripted_tasks() {
  std::vector<std::string> out;
  for (const auto& [name, fn] : scripts()) out.push_back(name);
  return out;
}

std::optional<std::vector<int>> scripted_solution(const GridWorld& world, const TaskDefinition& task, std::string* error) {
  const auto it = scripts().find(task.name);
  if (it == scripts().end()) {
    if (error) *error = "no script for task " + task.name;
    return std::nullopt;
  }
  Planner p(world);
  it->second(p);
  if (!p.failed() && !check_goal(p.world(), task.goal)) p.fail("script finished without meeting the goal");
  if (p.failed()) {
    if (error) *error = p.error();
    return std::nullopt;
  }
  // Stop at the first step that meets the goal; the episode terminates there.
  std::vector<int> out;
  GridWorld replay = world;
  for (int a : p.actions()) {
    apply_primitive(replay, static_cast<PrimitiveAction>(a));
    out.push_back(a);
    if (check_goal(replay, task.goal)) break;
  }
  return out;
}

}  // namespace gridhouse
