#include "hyperq/semantics.hpp"

#include <algorithm>
#include <iterator>
#include <set>
#include <string>
#include <utility>

namespace hyperq::semantics {

namespace {

constexpr long kEnumerationCap = 10000;

void check_shapes(const FiniteMonoid& m) {
  if (m.size < 1) throw ValidationError("monoid size must be positive");
  if (static_cast<long>(m.size) * m.size > kEnumerationCap) {
    throw ValidationError("monoid table exceeds the enumeration cap");
  }
  if (static_cast<int>(m.table.size()) != m.size) {
    throw ValidationError("monoid table must have `size` rows");
  }
  for (const auto& row : m.table) {
    if (static_cast<int>(row.size()) != m.size) {
      throw ValidationError("monoid table must have `size` columns");
    }
    for (int v : row) {
      if (v < 0 || v >= m.size) throw ValidationError("monoid table index out of range");
    }
  }
  if (m.identity < 0 || m.identity >= m.size) {
    throw ValidationError("monoid identity index out of range");
  }
}

void check_shapes(const FiniteAction& a) {
  check_shapes(a.monoid);
  if (a.carrier_size < 1) throw ValidationError("carrier size must be positive");
  if (static_cast<long>(a.monoid.size) * a.carrier_size > kEnumerationCap) {
    throw ValidationError("action table exceeds the enumeration cap");
  }
  if (static_cast<int>(a.action.size()) != a.monoid.size) {
    throw ValidationError("action table must have one row per monoid element");
  }
  for (const auto& row : a.action) {
    if (static_cast<int>(row.size()) != a.carrier_size) {
      throw ValidationError("action table must have one column per carrier element");
    }
    for (int v : row) {
      if (v < 0 || v >= a.carrier_size) throw ValidationError("action index out of range");
    }
  }
}

bool same_monoid(const FiniteMonoid& a, const FiniteMonoid& b) {
  return a.size == b.size && a.identity == b.identity && a.table == b.table;
}

}  // namespace

ValidationReport validate_model(const FiniteMonoid& m, const FiniteAction& a) {
  check_shapes(m);
  check_shapes(a);
  if (!same_monoid(m, a.monoid)) {
    throw ValidationError("the action's monoid differs from the monoid under validation");
  }

  ValidationReport rep;
  auto flag = [&rep](std::string msg) {
    rep.valid = false;
    rep.violations.push_back(std::move(msg));
  };

  for (int x = 0; x < m.size; ++x) {
    if (m.table[m.identity][x] != x) {
      flag("identity law: e*" + std::to_string(x) + " = " +
           std::to_string(m.table[m.identity][x]));
    }
    if (m.table[x][m.identity] != x) {
      flag("identity law: " + std::to_string(x) + "*e = " +
           std::to_string(m.table[x][m.identity]));
    }
  }
  for (int x = 0; x < m.size; ++x)
    for (int y = 0; y < m.size; ++y)
      for (int z = 0; z < m.size; ++z) {
        const int lhs = m.table[m.table[x][y]][z];
        const int rhs = m.table[x][m.table[y][z]];
        if (lhs != rhs) {
          flag("associativity: (" + std::to_string(x) + "*" + std::to_string(y) + ")*" +
               std::to_string(z) + " = " + std::to_string(lhs) + " but " + std::to_string(x) +
               "*(" + std::to_string(y) + "*" + std::to_string(z) + ") = " + std::to_string(rhs));
        }
      }
  for (int x = 0; x < a.carrier_size; ++x) {
    if (a.action[m.identity][x] != x) {
      flag("action identity law: e.x for x = " + std::to_string(x) + " gives " +
           std::to_string(a.action[m.identity][x]));
    }
  }
  for (int p = 0; p < m.size; ++p)
    for (int q = 0; q < m.size; ++q)
      for (int x = 0; x < a.carrier_size; ++x) {
        const int lhs = a.action[m.table[p][q]][x];
        const int rhs = a.action[p][a.action[q][x]];
        if (lhs != rhs) {
          flag("action compatibility: (" + std::to_string(p) + "*" + std::to_string(q) + ")." +
               std::to_string(x) + " = " + std::to_string(lhs) + " but " + std::to_string(p) +
               ".(" + std::to_string(q) + "." + std::to_string(x) + ") = " + std::to_string(rhs));
        }
      }
  return rep;
}

std::vector<int> unit_group(const FiniteMonoid& m) {
  check_shapes(m);
  std::vector<int> units;
  for (int u = 0; u < m.size; ++u) {
    for (int v = 0; v < m.size; ++v) {
      if (m.table[u][v] == m.identity && m.table[v][u] == m.identity) {
        units.push_back(u);
        break;
      }
    }
  }
  return units;
}

ModeReport orbits(const FiniteAction& a) {
  const ValidationReport audit = validate_model(a.monoid, a);
  if (!audit.valid) {
    throw ValidationError("orbits of an invalid model; first violation: " + audit.violations[0]);
  }

  ModeReport rep;
  rep.units = unit_group(a.monoid);
  rep.boolean_proxy = static_cast<int>(rep.units.size()) == a.monoid.size;

  auto orbit_under = [&a](const std::vector<int>& movers, int x) {
    std::set<int> seen;
    for (int m : movers) seen.insert(a.action[m][x]);
    return std::vector<int>(seen.begin(), seen.end());
  };
  std::vector<int> all(a.monoid.size);
  for (int m = 0; m < a.monoid.size; ++m) all[m] = m;

  rep.existence_mode.reserve(a.carrier_size);
  rep.presence_mode.reserve(a.carrier_size);
  rep.imperceptible.reserve(a.carrier_size);
  for (int x = 0; x < a.carrier_size; ++x) {
    rep.existence_mode.push_back(orbit_under(all, x));
    rep.presence_mode.push_back(orbit_under(rep.units, x));
    std::vector<int> diff;
    std::set_difference(rep.existence_mode[x].begin(), rep.existence_mode[x].end(),
                        rep.presence_mode[x].begin(), rep.presence_mode[x].end(),
                        std::back_inserter(diff));
    rep.imperceptible.push_back(std::move(diff));
  }
  auto collect = [](const std::vector<std::vector<int>>& modes) {
    std::vector<std::vector<int>> families;
    for (const auto& mode : modes) {
      if (std::find(families.begin(), families.end(), mode) == families.end()) {
        families.push_back(mode);
      }
    }
    return families;
  };
  rep.existence_families = collect(rep.existence_mode);
  rep.presence_families = collect(rep.presence_mode);
  return rep;
}

bool is_equivariant(const std::vector<int>& f, const FiniteAction& a, const FiniteAction& a2) {
  check_shapes(a);
  check_shapes(a2);
  if (!same_monoid(a.monoid, a2.monoid)) {
    throw ValidationError("equivariance needs actions of one monoid");
  }
  if (static_cast<int>(f.size()) != a.carrier_size) {
    throw ValidationError("carrier map must cover the source carrier");
  }
  for (int v : f) {
    if (v < 0 || v >= a2.carrier_size) throw ValidationError("carrier map value out of range");
  }
  for (int m = 0; m < a.monoid.size; ++m)
    for (int x = 0; x < a.carrier_size; ++x) {
      if (f[a.action[m][x]] != a2.action[m][f[x]]) return false;
    }
  return true;
}

bool stability_report(const FiniteAction& a, const std::vector<std::vector<int>>& views) {
  const ModeReport rep = orbits(a);
  if (views.size() != rep.presence_families.size()) {
    throw ValidationError("stability needs exactly one view per presence mode, expected " +
                          std::to_string(rep.presence_families.size()) + ", got " +
                          std::to_string(views.size()));
  }
  const std::set<int> units(rep.units.begin(), rep.units.end());
  for (std::size_t k = 0; k < views.size(); ++k) {
    if (views[k].size() != rep.presence_families[k].size()) {
      throw ValidationError("view " + std::to_string(k) +
                            " does not cover its presence mode");
    }
    for (int v : views[k]) {
      if (v < 0 || v >= a.monoid.size) {
        throw ValidationError("view " + std::to_string(k) + " has an out-of-range element");
      }
    }
    // Bijection onto the unit group: unit values, pairwise distinct, all hit.
    const std::set<int> image(views[k].begin(), views[k].end());
    if (image.size() != views[k].size()) return false;
    if (image != units) return false;
  }
  return true;
}

}  // namespace hyperq::semantics
