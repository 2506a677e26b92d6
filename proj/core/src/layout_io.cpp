#include "latsurg/layout_io.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "latsurg/errors.hpp"

namespace latsurg {

namespace {

std::string token(const Board& b, Coord p) {
  switch (b.kind(p)) {
    case TileKind::routing: return ".";
    case TileKind::blocked: return "#";
    case TileKind::ancilla: return "A";
    case TileKind::magic: return "M";
    case TileKind::data: {
      const Patch& pt = b.patch(b.patch_at(p));
      return "Q" + std::to_string(pt.id) + orientation_char(pt.orientation);
    }
  }
  return "?";
}

std::vector<std::string> row_strings(const Board& b) {
  std::vector<std::string> rows;
  for (int r = 0; r < b.rows(); ++r) {
    std::string line;
    for (int c = 0; c < b.cols(); ++c) {
      if (c) line += ' ';
      line += token(b, {r, c});
    }
    rows.push_back(line);
  }
  return rows;
}

Board from_rows(const std::vector<std::vector<std::string>>& grid) {
  if (grid.empty()) throw ParseError("layout", "empty layout");
  const int rows = static_cast<int>(grid.size());
  const int cols = static_cast<int>(grid.front().size());
  Board b(rows, cols);
  struct Pending {
    std::vector<Coord> tiles;
    Orientation o;
  };
  std::map<int, Pending> patches;
  for (int r = 0; r < rows; ++r) {
    if (static_cast<int>(grid[r].size()) != cols)
      throw ParseError("layout", "row " + std::to_string(r) + " has " + std::to_string(grid[r].size()) +
                                     " tiles, expected " + std::to_string(cols));
    for (int c = 0; c < cols; ++c) {
      const std::string& t = grid[r][c];
      const Coord p{r, c};
      if (t == ".") continue;
      if (t == "#") {
        b.set_blocked(p);
      } else if (t == "A") {
        if (b.ancilla()) throw ParseError("layout", "more than one ancilla tile");
        b.place_ancilla(p);
      } else if (t == "M") {
        if (b.magic()) throw ParseError("layout", "more than one magic port");
        b.place_magic(p);
      } else if (t.size() >= 3 && t[0] == 'Q' && (t.back() == 'h' || t.back() == 'v')) {
        int id = 0;
        try {
          std::size_t used = 0;
          id = std::stoi(t.substr(1, t.size() - 2), &used);
          if (used != t.size() - 2 || id < 0) throw std::invalid_argument("id");
        } catch (const std::exception&) {
          throw ParseError("layout", "bad patch token '" + t + "'");
        }
        const Orientation o = t.back() == 'h' ? Orientation::h : Orientation::v;
        auto [it, fresh] = patches.try_emplace(id, Pending{{}, o});
        if (!fresh && it->second.o != o) throw ParseError("layout", "patch " + std::to_string(id) + " has mixed orientation");
        it->second.tiles.push_back(p);
      } else {
        throw ParseError("layout", "unknown tile token '" + t + "'");
      }
    }
  }
  for (auto& [id, pending] : patches) {
    // A multi-tile patch must form a contiguous strip.
    std::vector<Coord> reached{pending.tiles.front()};
    for (std::size_t i = 0; i < reached.size(); ++i)
      for (Coord t : pending.tiles)
        if (manhattan(t, reached[i]) == 1 && std::find(reached.begin(), reached.end(), t) == reached.end())
          reached.push_back(t);
    if (reached.size() != pending.tiles.size())
      throw ParseError("layout", "patch " + std::to_string(id) + " occupies non-contiguous tiles");
    b.add_patch(id, pending.tiles.front(), pending.o);
    if (pending.tiles.size() > 1) b.set_patch_tiles(id, pending.tiles);
  }
  return b;
}

std::vector<std::string> split_tokens(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

}  // namespace

std::string write_layout_text(const Board& board) {
  std::string out;
  for (const auto& row : row_strings(board)) out += row + "\n";
  return out;
}

Board parse_layout_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::vector<std::vector<std::string>> grid;
  while (std::getline(in, line)) {
    auto toks = split_tokens(line);
    if (!toks.empty()) grid.push_back(std::move(toks));
  }
  return from_rows(grid);
}

nlohmann::ordered_json layout_to_json(const Board& board) {
  nlohmann::ordered_json j;
  j["rows"] = board.rows();
  j["cols"] = board.cols();
  j["grid"] = row_strings(board);
  return j;
}

Board layout_from_json(const nlohmann::json& j) {
  try {
    std::vector<std::vector<std::string>> grid;
    for (const auto& row : j.at("grid")) grid.push_back(split_tokens(row.get<std::string>()));
    Board b = from_rows(grid);
    if (b.rows() != j.at("rows").get<int>() || b.cols() != j.at("cols").get<int>())
      throw ParseError("layout", "rows/cols do not match the grid");
    return b;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("layout", std::string("malformed layout JSON: ") + e.what());
  }
}

Board parse_layout(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') {
    try {
      return layout_from_json(nlohmann::json::parse(text));
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError("layout", std::string("invalid JSON: ") + e.what());
    }
  }
  return parse_layout_text(text);
}

}  // namespace latsurg
