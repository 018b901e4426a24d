#include "latiso/io.hpp"

#include <fstream>
#include <sstream>

namespace latiso {

namespace {

Rat entry_from_json(const Json& e) {
  if (e.is_string()) return parse_rational(e.get<std::string>());
  if (e.is_number_integer()) {
    Rat q;
    if (e.is_number_unsigned())
      q = Rat(Int(std::to_string(e.get<std::uint64_t>())));
    else
      q = Rat(Int(std::to_string(e.get<std::int64_t>())));
    return q;
  }
  throw ParseError("gram entries must be integer or \"p/q\" strings, got " + e.dump());
}

}  // namespace

RatMat gram_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("lattice file must be a JSON object");
  if (!j.contains("gram") || !j["gram"].is_array()) throw ParseError("missing \"gram\" array");
  const Json& rows = j["gram"];
  const std::size_t n = rows.size();
  if (j.contains("n")) {
    const Json& jn = j["n"];
    std::size_t declared = 0;
    if (jn.is_number_unsigned())
      declared = jn.get<std::size_t>();
    else if (jn.is_string())
      try {
        declared = std::stoul(jn.get<std::string>());
      } catch (const std::exception&) {
        throw ParseError("\"n\" is not a non-negative integer");
      }
    else
      throw ParseError("\"n\" is not a non-negative integer");
    if (declared != n) throw ParseError("\"n\" disagrees with the number of gram rows");
  }
  RatMat g(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!rows[i].is_array() || rows[i].size() != n)
      throw ParseError("gram row " + std::to_string(i) + " does not have " +
                       std::to_string(n) + " entries");
    for (std::size_t k = 0; k < n; ++k) g(i, k) = entry_from_json(rows[i][k]);
  }
  if (!is_symmetric(g)) throw NotSymmetric("gram matrix is not symmetric");
  return g;
}

Lattice lattice_from_json(const Json& j) { return make_lattice(gram_from_json(j)); }

Lattice read_lattice(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  Json j;
  try {
    j = Json::parse(buf.str());
  } catch (const Json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
  return lattice_from_json(j);
}

Json to_json(const Rat& q) { return to_string(q); }

Json to_json(std::span<const Int> v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(x.get_str());
  return a;
}

Json to_json(const IntMat& m) {
  Json a = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(to_json(m.row(i)));
  return a;
}

Json to_json(const RatMat& m) {
  Json a = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(to_string(m(i, k)));
    a.push_back(row);
  }
  return a;
}

Json lattice_to_json(const Lattice& l) {
  return Json{{"n", l.rank()}, {"gram", to_json(l.gram())}};
}

std::string emit(const Json& j) { return j.dump() + "\n"; }

}  // namespace latiso
