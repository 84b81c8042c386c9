#include "gridhouse/render.hpp"

#include <cctype>

namespace gridhouse {
namespace {

std::string true_states(StateSet s) {
  std::string out;
  for (int i = 0; i < kNumAbsStates; ++i) {
    if (!s.has(static_cast<AbsState>(i))) continue;
    out += out.empty() ? " [" : ", ";
    out += to_string(static_cast<AbsState>(i));
  }
  return out.empty() ? out : out + "]";
}

char agent_glyph(Heading h) {
  switch (h) {
    case Heading::North: return '^';
    case Heading::East: return '>';
    case Heading::South: return 'v';
    case Heading::West: return '<';
  }
  return '?';
}

}  // namespace

std::string render_ascii(const GridWorld& w) {
  std::string out;
  for (int y = 0; y < w.height(); ++y) {
    for (int x = 0; x < w.width(); ++x) {
      const Cell& c = w.cell(x, y);
      char g = '.';
      if (c.wall) g = '#';
      else if (w.agent().pos == Pos{x, y}) g = agent_glyph(w.agent().heading);
      else {
        for (int z = kLevels - 1; z >= 0 && g == '.'; --z) {
          const auto id = c.slots[static_cast<std::size_t>(z)];
          if (id != kNoId) g = static_cast<char>(std::tolower(w.category_of(w.object(id)).name[0]));
        }
        if (g == '.' && c.furniture != kNoId) g = static_cast<char>(std::toupper(w.category_of(w.furniture(c.furniture)).name[0]));
        if (g == '.' && c.door != kNoId) g = '+';
      }
      out.push_back(g);
    }
    out.push_back('\n');
  }
  return out;
}

std::string render_closeup(const GridWorld& w) {
  std::string out;
  static const char* level[] = {"bottom", "middle", "top"};
  const auto f = w.facing_cell();
  if (!f) return "facing: outside the grid\n";
  const Cell& c = w.cell(*f);
  out += "facing (" + std::to_string(f->x) + "," + std::to_string(f->y) + ")";
  if (c.wall) return out + ": wall\n";
  out += "\n";
  for (int z = kLevels - 1; z >= 0; --z) {
    const auto id = c.slots[static_cast<std::size_t>(z)];
    out += std::string("  ") + level[z] + ": ";
    if (id == kNoId) {
      out += w.slot_is_solid(*f, z) ? "(furniture)" : "-";
    } else {
      const auto& o = w.object(id);
      out += o.name + true_states(o.states);
      for (const auto& in : w.objects()) {
        if (in.placement.kind == Placement::Kind::Within && in.placement.container == id) out += " holding " + in.name + true_states(in.states);
      }
    }
    out += "\n";
  }
  if (c.furniture != kNoId) {
    const auto& fu = w.furniture(c.furniture);
    out += "  furniture: " + fu.name + true_states(fu.states) + "\n";
  }
  out += "carrying:";
  if (w.agent().carrying.empty()) out += " nothing";
  for (auto id : w.agent().carrying) out += " " + w.object(id).name + true_states(w.object(id).states);
  return out + "\n";
}

}  // namespace gridhouse
