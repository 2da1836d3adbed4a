#include "symstab/io/json_io.hpp"

#include <fstream>

#include "symstab/exactlin/rational.hpp"

namespace symstab::io {

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MalformedInput("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw MalformedInput(path + ": " + e.what());
  }
}

Rational rational_from_json(const Json& j) {
  try {
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (j.is_string()) return parse_rational(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw MalformedInput(e.what());
  }
  throw MalformedInput("rational entries must be integers or \"p/q\" strings");
}

Json matrix_to_json(const QMatrix& m) {
  Json entries = Json::array();
  for (const auto& t : m.triplets()) entries.push_back({t.row, t.col, to_string(t.value)});
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}

QMatrix matrix_from_json(const Json& j) {
  try {
    const auto rows = j.at("rows").get<std::size_t>();
    const auto cols = j.at("cols").get<std::size_t>();
    std::vector<Triplet> t;
    for (const auto& e : j.at("entries")) {
      if (!e.is_array() || e.size() != 3) throw MalformedInput("matrix entry must be [row, col, value]");
      t.push_back({e[0].get<std::size_t>(), e[1].get<std::size_t>(), rational_from_json(e[2])});
    }
    return QMatrix::from_triplets(rows, cols, t);
  } catch (const Json::exception& e) {
    throw MalformedInput(std::string("matrix: ") + e.what());
  } catch (const std::out_of_range& e) {
    throw MalformedInput(std::string("matrix: ") + e.what());
  }
}

Json complex_to_json(const ChainComplex& c) {
  Json diffs = Json::array();
  for (int n = c.lo(); n <= c.hi(); ++n) {
    const QMatrix d = c.differential(n);
    if (d.is_zero()) continue;
    Json m = matrix_to_json(d);
    m["degree"] = n;
    diffs.push_back(std::move(m));
  }
  return {{"direction", to_string(c.direction())},
          {"lo", c.lo()},
          {"dims", c.dims()},
          {"differentials", diffs}};
}

ChainComplex complex_from_json(const Json& j) {
  try {
    const Direction dir = parse_direction(j.value("direction", std::string("chain")));
    const int lo = j.value("lo", 0);
    ChainComplex c(dir, lo, j.at("dims").get<std::vector<std::size_t>>());
    if (j.contains("differentials"))
      for (const auto& d : j.at("differentials")) c.set_differential(d.at("degree").get<int>(), matrix_from_json(d));
    c.validate();
    return c;
  } catch (const Json::exception& e) {
    throw MalformedInput(std::string("complex: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw MalformedInput(std::string("complex: ") + e.what());
  }
}

Json action_to_json(const GroupAction& g) {
  Json gens = Json::array();
  for (const auto& p : g.generators) {
    Json imgs = Json::array();
    for (auto v : p.img) imgs.push_back(v + 1);
    gens.push_back(imgs);
  }
  Json mats = Json::array();
  for (const auto& per : g.matrices) {
    Json deg = Json::array();
    for (const auto& m : per) deg.push_back(matrix_to_json(m));
    mats.push_back(deg);
  }
  return {{"letters", g.letters}, {"generators", gens}, {"matrices", mats}};
}

GroupAction action_from_json(const Json& j) {
  try {
    GroupAction g;
    g.letters = j.at("letters").get<std::size_t>();
    for (const auto& p : j.at("generators"))
      g.generators.push_back(Permutation::from_one_based(p.get<std::vector<long>>()));
    for (const auto& per : j.at("matrices")) {
      std::vector<QMatrix> deg;
      for (const auto& m : per) deg.push_back(matrix_from_json(m));
      g.matrices.push_back(std::move(deg));
    }
    return g;
  } catch (const Json::exception& e) {
    throw MalformedInput(std::string("action: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw MalformedInput(std::string("action: ") + e.what());
  }
}

}  // namespace symstab::io
