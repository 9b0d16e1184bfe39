#pragma once

#include <string>
#include <vector>

#include "hyperq/errors.hpp"

namespace hyperq::semantics {

/// Multiplication table monoid on indices 0..size-1; table[a][b] = a*b.
struct FiniteMonoid {
  int size = 1;
  std::vector<std::vector<int>> table{{0}};
  int identity = 0;
};

/// Left monoid action on a finite carrier; action[m][x] = m applied to x.
struct FiniteAction {
  FiniteMonoid monoid;
  int carrier_size = 1;
  std::vector<std::vector<int>> action{{0}};
};

/// Law-by-law audit; `violations` lists every failing instance.
struct ValidationReport {
  bool valid = true;
  std::vector<std::string> violations;
};

/**
 * @brief Orbit census of an action.
 *
 * existence_mode[x] is the orbit of x under the whole monoid, presence_mode[x]
 * the orbit under the unit group, imperceptible[x] their difference; all
 * sorted. Per-element existence modes may nest (they form a cover, not a
 * partition), presence modes always partition the carrier and refine them.
 * The *_families lists hold the distinct modes in first-appearance order.
 * boolean_proxy is the crude consistency stand-in "every monoid element is a
 * unit"; it is a proxy, not a topos-logic computation.
 */
struct ModeReport {
  std::vector<std::vector<int>> existence_mode;
  std::vector<std::vector<int>> presence_mode;
  std::vector<std::vector<int>> imperceptible;
  std::vector<std::vector<int>> existence_families;
  std::vector<std::vector<int>> presence_families;
  std::vector<int> units;
  bool boolean_proxy = false;
};

/// Exhaustive law check: closure ranges, identity, associativity, both action
/// laws. Structural damage (wrong table sizes, out-of-range indices) throws;
/// law violations are collected into the report instead.
/// @throws ValidationError on malformed shapes, indices, or size over the
/// 10^4-entry enumeration cap
[[nodiscard]] ValidationReport validate_model(const FiniteMonoid& m, const FiniteAction& a);

/// Elements with a two-sided inverse, ascending.
[[nodiscard]] std::vector<int> unit_group(const FiniteMonoid& m);

/// @throws ValidationError when the model does not validate
[[nodiscard]] ModeReport orbits(const FiniteAction& a);

/// f(m.x) = m.f(x) for all m, x, exhaustively; f maps a's carrier into a2's.
/// @throws ValidationError when the monoids differ or f is malformed
[[nodiscard]] bool is_equivariant(const std::vector<int>& f, const FiniteAction& a,
                                  const FiniteAction& a2);

/**
 * @brief Stability: one view per presence mode, each a bijection onto the units.
 *
 * views[k] assigns a monoid element to each member of the k-th presence family
 * (in the family's order, families as reported by orbits()).
 *
 * @throws ValidationError when a view is missing or has the wrong length
 */
[[nodiscard]] bool stability_report(const FiniteAction& a,
                                    const std::vector<std::vector<int>>& views);

}  // namespace hyperq::semantics
