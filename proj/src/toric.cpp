#include "mirrorgamma/toric.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "mirrorgamma/errors.hpp"

namespace mirrorgamma {

namespace {

long to_long(const BigInt& v) {
  if (!v.fits_slong_p()) throw ConsistencyError("integer does not fit in a machine word: " + v.get_str());
  return v.get_si();
}

std::vector<long> to_longs(const IntVec& v) {
  std::vector<long> r;
  r.reserve(v.size());
  for (const auto& x : v) r.push_back(to_long(x));
  return r;
}

long dot(const LatticePoint& a, const LatticePoint& b) {
  long s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void for_each_subset(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& fn) {
  std::vector<std::size_t> idx(k);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t start) {
    if (pos == k) {
      fn(idx);
      return;
    }
    for (std::size_t i = start; i + (k - pos) <= n; ++i) {
      idx[pos] = i;
      rec(pos + 1, i + 1);
    }
  };
  rec(0, 0);
}

// Supporting hyperplanes through d affinely independent vertices that leave
// every vertex on one side.
std::vector<Facet> compute_facets(const LatticePolytope& p) {
  const auto d = static_cast<std::size_t>(p.dimension);
  std::map<LatticePoint, Facet> by_normal;
  for_each_subset(p.vertices.size(), d, [&](const std::vector<std::size_t>& subset) {
    IntMatrix rows;
    for (std::size_t i : subset) {
      IntVec row = to_int_vec(p.vertices[i]);
      row.emplace_back(-1);
      rows.push_back(std::move(row));
    }
    if (rank(rows) != d) return;
    const IntMatrix ker = integer_kernel(rows, d + 1);
    if (ker.size() != 1) return;
    auto nc = to_longs(ker[0]);
    LatticePoint normal(nc.begin(), nc.end() - 1);
    long value = nc.back();
    bool below = true;
    bool above = true;
    for (const auto& v : p.vertices) {
      const long s = dot(normal, v);
      if (s > value) below = false;
      if (s < value) above = false;
    }
    if (!below && !above) return;
    if (!below) {
      for (auto& x : normal) x = -x;
      value = -value;
    }
    if (by_normal.count(normal)) return;
    Facet f{{}, normal, value};
    for (std::size_t i = 0; i < p.vertices.size(); ++i)
      if (dot(normal, p.vertices[i]) == value) f.vertices.push_back(i);
    by_normal.emplace(normal, std::move(f));
  });
  std::vector<Facet> out;
  for (auto& [n, f] : by_normal) out.push_back(std::move(f));
  std::sort(out.begin(), out.end(), [](const Facet& a, const Facet& b) { return a.vertices < b.vertices; });
  return out;
}

std::string indices_to_string(const std::vector<std::size_t>& idx) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < idx.size(); ++i) os << (i ? "," : "") << idx[i] + 1;
  os << '}';
  return os.str();
}

}  // namespace

std::string point_to_string(const LatticePoint& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ')';
  return os.str();
}

bool ValidationReport::ok() const {
  return std::all_of(conditions.begin(), conditions.end(), [](const auto& c) { return c.passed; });
}

const ConditionResult& ValidationReport::condition(const std::string& id) const {
  for (const auto& c : conditions)
    if (c.id == id) return c;
  throw PreconditionError("ValidationReport: no condition '" + id + "'");
}

ValidationReport validate_fano(const LatticePolytope& p) {
  ValidationReport report;
  report.convention =
      "facets satisfy l(x) = -1 for the primitive inner normal l (equivalently n(x) = 1 for the outer normal n)";
  const auto d = static_cast<std::size_t>(p.dimension);

  ConditionResult structure{"structure", "vertices are distinct points of Z^d spanning a full-dimensional polytope",
                            true, {}};
  if (p.dimension < 1) {
    structure.passed = false;
    structure.witnesses.push_back("dimension must be positive");
  }
  std::set<LatticePoint> seen;
  for (const auto& v : p.vertices) {
    if (v.size() != d) {
      structure.passed = false;
      structure.witnesses.push_back("vertex " + point_to_string(v) + " has wrong length");
    } else if (!seen.insert(v).second) {
      structure.passed = false;
      structure.witnesses.push_back("duplicate vertex " + point_to_string(v));
    }
  }
  if (structure.passed) {
    IntMatrix lifted;
    for (const auto& v : p.vertices) {
      IntVec row = to_int_vec(v);
      row.emplace_back(1);
      lifted.push_back(std::move(row));
    }
    if (rank(lifted) != d + 1) {
      structure.passed = false;
      structure.witnesses.push_back("polytope is not full-dimensional");
    }
  }
  ConditionResult integral{"a", "vertices lie in the lattice M = Z^d", structure.passed, {}};
  report.conditions.push_back(structure);
  report.conditions.push_back(integral);
  if (!structure.passed) {
    for (const char* id : {"b", "c", "d"}) report.conditions.push_back({id, "not checked", false, {"invalid input"}});
    return report;
  }

  report.facets = compute_facets(p);

  ConditionResult vertices_ok{"vertices", "every listed point is a vertex of the polytope", true, {}};
  for (std::size_t i = 0; i < p.vertices.size(); ++i) {
    std::size_t count = 0;
    for (const auto& f : report.facets)
      if (std::binary_search(f.vertices.begin(), f.vertices.end(), i)) ++count;
    // a vertex of a d-polytope lies on at least d facets
    if (count < d) {
      vertices_ok.passed = false;
      vertices_ok.witnesses.push_back(point_to_string(p.vertices[i]) + " is not a vertex");
    }
  }
  report.conditions.push_back(vertices_ok);

  ConditionResult interior{"b", "the origin is the only interior lattice point", true, {}};
  for (const auto& f : report.facets) {
    if (f.value <= 0) {
      interior.passed = false;
      interior.witnesses.push_back("origin is not strictly inside facet " + indices_to_string(f.vertices));
    }
  }
  if (interior.passed) {
    LatticePoint lo(d, 0);
    LatticePoint hi(d, 0);
    for (const auto& v : p.vertices)
      for (std::size_t i = 0; i < d; ++i) {
        lo[i] = std::min(lo[i], v[i]);
        hi[i] = std::max(hi[i], v[i]);
      }
    LatticePoint x = lo;
    while (true) {
      const bool origin = std::all_of(x.begin(), x.end(), [](long c) { return c == 0; });
      if (!origin && std::all_of(report.facets.begin(), report.facets.end(),
                                 [&](const Facet& f) { return dot(f.normal, x) < f.value; })) {
        interior.passed = false;
        interior.witnesses.push_back("interior lattice point " + point_to_string(x));
      }
      std::size_t i = 0;
      while (i < d && x[i] == hi[i]) {
        x[i] = lo[i];
        ++i;
      }
      if (i == d) break;
      ++x[i];
    }
  }
  report.conditions.push_back(interior);

  ConditionResult basis{"c", "each facet's vertices form a basis of M", true, {}};
  ConditionResult equation{"d", "each facet lies on l = -1 for its primitive inner normal l", true, {}};
  for (const auto& f : report.facets) {
    if (f.vertices.size() != d) {
      basis.passed = false;
      basis.witnesses.push_back("facet " + indices_to_string(f.vertices) + " has " +
                                std::to_string(f.vertices.size()) + " vertices");
    } else {
      IntMatrix m;
      for (std::size_t i : f.vertices) m.push_back(to_int_vec(p.vertices[i]));
      const BigInt det = determinant(m);
      if (abs(det) != 1) {
        basis.passed = false;
        basis.witnesses.push_back("facet " + indices_to_string(f.vertices) + " has determinant " + det.get_str());
      }
    }
    if (f.value != 1) {
      equation.passed = false;
      equation.witnesses.push_back("facet " + indices_to_string(f.vertices) + " lies on " +
                                   point_to_string(f.normal) + ".x = " + std::to_string(f.value));
    }
  }
  report.conditions.push_back(basis);
  report.conditions.push_back(equation);
  return report;
}

FanData fan_from_polytope(const LatticePolytope& p) {
  const auto report = validate_fano(p);
  if (!report.ok()) {
    std::string why;
    for (const auto& c : report.conditions)
      if (!c.passed) why += " (" + c.id + ")" + (c.witnesses.empty() ? "" : " " + c.witnesses.front());
    throw PreconditionError("fan_from_polytope: polytope fails validation:" + why);
  }
  FanData fan{p.dimension, p.vertices, {}};
  for (const auto& f : report.facets) {
    if (f.vertices.size() != static_cast<std::size_t>(p.dimension))
      throw PreconditionError("fan_from_polytope: non-simplicial facet");
    fan.cones.push_back(f.vertices);
  }
  std::sort(fan.cones.begin(), fan.cones.end());
  return fan;
}

IntMatrix relation_lattice(const FanData& f) {
  const auto d = static_cast<std::size_t>(f.dimension);
  const std::size_t p = f.num_rays();
  // columns (1, mu_i) for i = 0..p with mu_0 = 0
  IntMatrix a(d + 1, IntVec(p + 1, 0));
  for (std::size_t j = 0; j <= p; ++j) {
    a[0][j] = 1;
    if (j == 0) continue;
    for (std::size_t i = 0; i < d; ++i) a[i + 1][j] = f.rays[j - 1][i];
  }
  return integer_kernel(a, p + 1);
}

std::vector<std::vector<long>> wall_relations(const FanData& f) {
  const auto d = static_cast<std::size_t>(f.dimension);
  const std::size_t p = f.num_rays();
  std::set<std::vector<long>> out;
  for (std::size_t a = 0; a < f.cones.size(); ++a) {
    for (std::size_t b = a + 1; b < f.cones.size(); ++b) {
      std::vector<std::size_t> common;
      std::set_intersection(f.cones[a].begin(), f.cones[a].end(), f.cones[b].begin(), f.cones[b].end(),
                            std::back_inserter(common));
      if (common.size() + 1 != d) continue;
      std::size_t off_a = 0;
      std::size_t off_b = 0;
      for (std::size_t i : f.cones[a])
        if (!std::binary_search(common.begin(), common.end(), i)) off_a = i;
      for (std::size_t i : f.cones[b])
        if (!std::binary_search(common.begin(), common.end(), i)) off_b = i;
      std::vector<std::size_t> involved = common;
      involved.push_back(off_a);
      involved.push_back(off_b);
      IntMatrix m(d, IntVec(involved.size()));
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < involved.size(); ++j) m[i][j] = f.rays[involved[j]][i];
      const IntMatrix ker = integer_kernel(m, involved.size());
      if (ker.size() != 1) throw ConsistencyError("wall relation is not unique; rays of adjacent cones are degenerate");
      IntVec rel = ker[0];
      if (rel[d - 1] < 0)
        for (auto& x : rel) x = -x;
      if (rel[d - 1] <= 0 || rel[d] <= 0)
        throw ConsistencyError("wall relation is not positive on both off-wall rays");
      std::vector<long> full(p + 1, 0);
      long total = 0;
      for (std::size_t j = 0; j < involved.size(); ++j) {
        full[involved[j] + 1] = to_long(rel[j]);
        total += full[involved[j] + 1];
      }
      full[0] = -total;
      out.insert(full);
    }
  }
  std::vector<std::vector<long>> walls(out.begin(), out.end());
  std::sort(walls.begin(), walls.end(), [](const auto& x, const auto& y) {
    return std::lexicographical_compare(x.rbegin(), x.rend(), y.rbegin(), y.rend());
  });
  return walls;
}

std::optional<std::vector<long>> mori_coordinates(const MoriBasis& mb, const std::vector<long>& l) {
  RatMatrix basis;
  for (const auto& v : mb.vectors) basis.push_back(to_rat({to_int_vec(v)})[0]);
  const auto coords = coordinates_in_span(basis, to_rat({to_int_vec(l)})[0]);
  if (!coords) return std::nullopt;
  std::vector<long> out;
  for (const auto& c : *coords) {
    if (!c.is_integer()) return std::nullopt;
    out.push_back(to_long(c.numerator()));
  }
  return out;
}

namespace {

// Empty string when mb is a unimodular basis of L_A with every wall relation a
// nonnegative combination; otherwise the reason.
std::string mori_basis_problem(const FanData& f, const IntMatrix& lattice, const MoriBasis& mb,
                               const std::vector<std::vector<long>>& walls) {
  const std::size_t p = f.num_rays();
  if (mb.rank() != lattice.size())
    return "expected " + std::to_string(lattice.size()) + " basis vectors, got " + std::to_string(mb.rank());
  RatMatrix lattice_rows = to_rat(lattice);
  IntMatrix change;
  for (const auto& v : mb.vectors) {
    if (v.size() != p + 1) return "basis vector " + point_to_string(v) + " has wrong length";
    const auto coords = coordinates_in_span(lattice_rows, to_rat({to_int_vec(v)})[0]);
    if (!coords) return "vector " + point_to_string(v) + " is not in the relation lattice";
    IntVec row;
    for (const auto& c : *coords) {
      if (!c.is_integer()) return "vector " + point_to_string(v) + " is not integral in the relation lattice";
      row.push_back(c.numerator());
    }
    change.push_back(std::move(row));
    if (v[0] > 0) return "vector " + point_to_string(v) + " has l_0 > 0";
  }
  if (abs(determinant(change)) != 1) return "vectors do not form a Z-basis of the relation lattice";
  for (const auto& w : walls) {
    const auto coords = mori_coordinates(mb, w);
    if (!coords) return "wall relation " + point_to_string(w) + " is not an integral combination";
    if (std::any_of(coords->begin(), coords->end(), [](long c) { return c < 0; }))
      return "wall relation " + point_to_string(w) + " is not a nonnegative combination";
  }
  return {};
}

}  // namespace

MoriBasis mori_basis(const FanData& f) {
  const IntMatrix lattice = relation_lattice(f);
  const auto walls = wall_relations(f);
  const std::size_t r = lattice.size();
  if (r != f.picard_rank()) throw ConsistencyError("relation lattice has unexpected rank");
  std::optional<MoriBasis> found;
  for_each_subset(walls.size(), r, [&](const std::vector<std::size_t>& idx) {
    if (found) return;
    MoriBasis candidate;
    for (std::size_t i : idx) candidate.vectors.push_back(walls[i]);
    IntMatrix m;
    for (const auto& v : candidate.vectors) m.push_back(to_int_vec(v));
    if (rank(m) != r) return;
    if (mori_basis_problem(f, lattice, candidate, walls).empty()) found = std::move(candidate);
  });
  if (!found)
    throw MoriBasisError(
        "assumption (**) not verifiable: wall relations contain no unimodular basis generating them nonnegatively");
  return *found;
}

void check_mori_basis(const FanData& f, const MoriBasis& mb) {
  const auto problem = mori_basis_problem(f, relation_lattice(f), mb, wall_relations(f));
  if (!problem.empty()) throw MoriBasisError("invalid Mori basis: " + problem);
}

std::vector<std::vector<long>> divisors_in_J_basis(const FanData& f, const MoriBasis& mb) {
  const std::size_t p = f.num_rays();
  std::vector<std::vector<long>> out(p, std::vector<long>(mb.rank()));
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t k = 0; k < mb.rank(); ++k) out[i][k] = mb.vectors[k][i + 1];
  return out;
}

LatticePolytope projective_space_polytope(int d) {
  if (d < 1) throw PreconditionError("projective_space_polytope: d must be positive");
  LatticePolytope p{d, {}};
  for (int i = 0; i < d; ++i) {
    LatticePoint e(static_cast<std::size_t>(d), 0);
    e[static_cast<std::size_t>(i)] = 1;
    p.vertices.push_back(e);
  }
  p.vertices.emplace_back(static_cast<std::size_t>(d), -1);
  return p;
}

}  // namespace mirrorgamma
