#pragma once

#include <json.hpp>
#include <string>

#include "polymatrix/game.hpp"

namespace polymatrix {

/// Game wire format:
/// {"dims":[k_1..k_n], "class":"zero-sum"|"coordination"|"general",
///  "blocks":[{"i":int,"j":int,"rows":int,"cols":int,"data":[row-major]}],
///  "costs":[reals]}
/// Agent indices are 1-based in the file. Blocks with i>j are rejected for
/// the symmetric classes. Doubles round-trip bit-exactly.
nlohmann::json game_to_json(const PolymatrixGame& game);
PolymatrixGame game_from_json(const nlohmann::json& j);

std::string game_to_string(const PolymatrixGame& game);
PolymatrixGame game_from_string(const std::string& text);

void save_game(const PolymatrixGame& game, const std::string& path);
PolymatrixGame load_game(const std::string& path);

}  // namespace polymatrix
