#include "mirrorgamma/fixture_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "mirrorgamma/errors.hpp"

namespace mirrorgamma {

namespace {

long as_long(const nlohmann::json& v, const std::string& field) {
  if (!v.is_number_integer()) throw ParseError(field, "expected an integer, got " + v.dump());
  return v.get<long>();
}

std::vector<long> as_long_vector(const nlohmann::json& v, const std::string& field) {
  if (!v.is_array()) throw ParseError(field, "expected an array");
  std::vector<long> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(as_long(v[i], field + "[" + std::to_string(i) + "]"));
  return out;
}

void pretty(const nlohmann::json& j, int indent, std::string& out) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  const std::string inner(static_cast<std::size_t>(indent + 2), ' ');
  if (j.is_object() && !j.empty()) {
    out += "{\n";
    std::size_t i = 0;
    for (const auto& [k, v] : j.items()) {
      out += inner + nlohmann::json(k).dump() + ": ";
      pretty(v, indent + 2, out);
      out += ++i < j.size() ? ",\n" : "\n";
    }
    out += pad + "}";
  } else if (j.is_array() && !j.empty() &&
             std::any_of(j.begin(), j.end(), [](const nlohmann::json& x) { return x.is_structured(); })) {
    out += "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      out += inner;
      pretty(j[i], indent + 2, out);
      out += i + 1 < j.size() ? ",\n" : "\n";
    }
    out += pad + "]";
  } else if (j.is_array()) {
    out += "[";
    for (std::size_t i = 0; i < j.size(); ++i) out += (i ? ", " : "") + j[i].dump();
    out += "]";
  } else {
    out += j.dump();
  }
}

}  // namespace

std::string pretty_json(const nlohmann::json& j) {
  std::string out;
  pretty(j, 0, out);
  return out;
}

Fixture parse_fixture(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::string msg = e.what();
    // strip the library's "[json.exception.parse_error.101] " tag
    if (const auto pos = msg.find("] "); pos != std::string::npos) msg = msg.substr(pos + 2);
    throw ParseError("", msg);
  }
  if (!j.is_object()) throw ParseError("", "top level must be a JSON object");

  Fixture f;
  f.raw = j;
  if (j.contains("name")) {
    if (!j["name"].is_string()) throw ParseError("name", "expected a string");
    f.name = j["name"].get<std::string>();
  }
  if (j.contains("description")) {
    if (!j["description"].is_string()) throw ParseError("description", "expected a string");
    f.description = j["description"].get<std::string>();
  }
  if (!j.contains("dimension")) throw ParseError("dimension", "missing");
  const long d = as_long(j["dimension"], "dimension");
  if (d < 1 || d > 12) throw ParseError("dimension", "must lie in 1..12, got " + std::to_string(d));
  f.polytope.dimension = static_cast<int>(d);

  if (!j.contains("vertices")) throw ParseError("vertices", "missing");
  const auto& vs = j["vertices"];
  if (!vs.is_array() || vs.empty()) throw ParseError("vertices", "expected a nonempty array of points");
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const std::string field = "vertices[" + std::to_string(i) + "]";
    auto v = as_long_vector(vs[i], field);
    if (v.size() != static_cast<std::size_t>(d))
      throw ParseError(field, "has " + std::to_string(v.size()) + " coordinates, expected " + std::to_string(d));
    f.polytope.vertices.push_back(std::move(v));
  }

  if (j.contains("ray_order")) {
    const auto order = as_long_vector(j["ray_order"], "ray_order");
    std::vector<long> sorted = order;
    std::sort(sorted.begin(), sorted.end());
    bool permutation = sorted.size() == vs.size();
    for (std::size_t i = 0; permutation && i < sorted.size(); ++i) permutation = sorted[i] == static_cast<long>(i);
    if (!permutation)
      throw ParseError("ray_order", "must be a permutation of 0.." + std::to_string(vs.size() - 1));
    std::vector<LatticePoint> reordered;
    for (long i : order) reordered.push_back(f.polytope.vertices[static_cast<std::size_t>(i)]);
    f.polytope.vertices = std::move(reordered);
  }

  if (j.contains("mori_basis_override")) {
    const auto& mb = j["mori_basis_override"];
    if (!mb.is_array() || mb.empty()) throw ParseError("mori_basis_override", "expected a nonempty array of vectors");
    MoriBasis basis;
    for (std::size_t i = 0; i < mb.size(); ++i) {
      const std::string field = "mori_basis_override[" + std::to_string(i) + "]";
      auto v = as_long_vector(mb[i], field);
      if (v.size() != vs.size() + 1)
        throw ParseError(field, "has " + std::to_string(v.size()) + " entries, expected " + std::to_string(vs.size() + 1));
      basis.vectors.push_back(std::move(v));
    }
    f.mori_override = std::move(basis);
  }

  if (j.contains("expected")) {
    if (!j["expected"].is_object()) throw ParseError("expected", "expected an object");
    f.expected = j["expected"];
  }
  return f;
}

Fixture load_fixture(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("", "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_fixture(ss.str());
}

void write_goldens(const std::string& path, const Fixture& fixture, const nlohmann::json& goldens) {
  nlohmann::json out = fixture.raw;
  out["expected"] = goldens;
  std::ofstream os(path);
  if (!os) throw Error("cannot write " + path);
  os << pretty_json(out) << "\n";
}

}  // namespace mirrorgamma
