#include "polymatrix/game_json.hpp"

#include <fstream>
#include <stdexcept>

namespace polymatrix {

using nlohmann::json;

json game_to_json(const PolymatrixGame& game) {
  json j;
  j["dims"] = game.partition().dims();
  j["class"] = to_string(game.class_tag());
  json blocks = json::array();
  for (const auto& [key, payoff] : game.stored_blocks()) {
    json blk;
    blk["i"] = key.first + 1;
    blk["j"] = key.second + 1;
    blk["rows"] = payoff.rows();
    blk["cols"] = payoff.cols();
    std::vector<double> data;
    data.reserve(static_cast<size_t>(payoff.size()));
    for (Eigen::Index r = 0; r < payoff.rows(); ++r)
      for (Eigen::Index c = 0; c < payoff.cols(); ++c)
        data.push_back(payoff(r, c));
    blk["data"] = std::move(data);
    blocks.push_back(std::move(blk));
  }
  j["blocks"] = std::move(blocks);
  j["costs"] = std::vector<double>(game.costs().data(),
                                   game.costs().data() + game.costs().size());
  return j;
}

PolymatrixGame game_from_json(const json& j) {
  AgentPartition partition(j.at("dims").get<std::vector<int>>());
  GameClass cls = game_class_from_string(j.at("class").get<std::string>());
  std::vector<InteractionBlock> blocks;
  for (const auto& blk : j.at("blocks")) {
    int i = blk.at("i").get<int>() - 1;
    int jj = blk.at("j").get<int>() - 1;
    int rows = blk.at("rows").get<int>();
    int cols = blk.at("cols").get<int>();
    auto data = blk.at("data").get<std::vector<double>>();
    if (static_cast<int>(data.size()) != rows * cols)
      throw std::invalid_argument("block data length does not match rows*cols");
    Matrix payoff(rows, cols);
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c) payoff(r, c) = data[r * cols + c];
    blocks.push_back({i, jj, std::move(payoff)});
  }
  auto costs_vec = j.at("costs").get<std::vector<double>>();
  Vector costs = Eigen::Map<const Vector>(costs_vec.data(),
                                          static_cast<Eigen::Index>(costs_vec.size()));
  return PolymatrixGame(partition, cls, std::move(blocks), std::move(costs));
}

std::string game_to_string(const PolymatrixGame& game) {
  return game_to_json(game).dump(2) + "\n";
}

PolymatrixGame game_from_string(const std::string& text) {
  return game_from_json(json::parse(text));
}

void save_game(const PolymatrixGame& game, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << game_to_string(game);
}

PolymatrixGame load_game(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open game file: " + path);
  json j;
  in >> j;
  return game_from_json(j);
}

}  // namespace polymatrix
