// Exhaustive enumeration of small formulae and contexts, and the one-step
// unit rewrites, used as brute-force oracles.

#ifndef DTSA_TESTS_ENUMERATE_HPP
#define DTSA_TESTS_ENUMERATE_HPP

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "dtsa/context.hpp"
#include "dtsa/formula.hpp"

namespace dtsa_tests {

using dtsa::Atom;
using dtsa::Connective;
using dtsa::Context;
using dtsa::Formula;

inline std::vector<Connective> conn_pool(const std::vector<Atom>& atoms) {
  std::vector<Connective> cs{Connective::disj(), Connective::conj()};
  for (const Atom& a : atoms) cs.push_back(Connective::atom_conn(a));
  return cs;
}

// All formulae with exactly `units` unit occurrences over the given atoms.
inline const std::vector<Formula>& formulas_of_size(
    std::size_t units, const std::vector<Atom>& atoms) {
  static std::map<std::pair<std::size_t, std::string>, std::vector<Formula>>
      cache;
  std::string key;
  for (const Atom& a : atoms) key += a + ",";
  auto it = cache.find({units, key});
  if (it != cache.end()) return it->second;
  std::vector<Formula> out;
  if (units == 1) {
    out = {Formula::zero(), Formula::one()};
  } else {
    for (std::size_t l = 1; l < units; ++l) {
      const auto& ls = formulas_of_size(l, atoms);
      const auto& rs = formulas_of_size(units - l, atoms);
      for (const Connective& c : conn_pool(atoms))
        for (const Formula& lf : ls)
          for (const Formula& rf : rs) out.push_back(Formula::node(c, lf, rf));
    }
  }
  return cache[{units, key}] = std::move(out);
}

inline std::vector<Formula> formulas_up_to(std::size_t max_units,
                                           const std::vector<Atom>& atoms) {
  std::vector<Formula> out;
  for (std::size_t s = 1; s <= max_units; ++s)
    for (const Formula& f : formulas_of_size(s, atoms)) out.push_back(f);
  return out;
}

// Streaming variant for the largest sizes: the top layer is not cached.
template <typename Fn>
inline void for_each_formula_of_size(std::size_t units,
                                     const std::vector<Atom>& atoms,
                                     Fn&& fn) {
  if (units == 1) {
    fn(Formula::zero());
    fn(Formula::one());
    return;
  }
  for (std::size_t l = 1; l < units; ++l) {
    const auto& ls = formulas_of_size(l, atoms);
    const auto& rs = formulas_of_size(units - l, atoms);
    for (const Connective& c : conn_pool(atoms))
      for (const Formula& lf : ls)
        for (const Formula& rf : rs) fn(Formula::node(c, lf, rf));
  }
}

// All contexts whose non-hole part has exactly `units` unit occurrences.
inline std::vector<Context> contexts_of_size(std::size_t units,
                                             const std::vector<Atom>& atoms) {
  std::vector<Context> out;
  if (units == 0) {
    out.push_back(Context::hole());
    return out;
  }
  for (std::size_t inner = 0; inner < units; ++inner) {
    std::size_t other = units - inner;
    for (const Context& k : contexts_of_size(inner, atoms))
      for (const Connective& c : conn_pool(atoms))
        for (const Formula& f : formulas_of_size(other, atoms)) {
          // wrap at the root so the recursion terminates: hole side varies
          Context left = k;
          Context right = k;
          out.push_back(left.under(c, true, f));
          out.push_back(right.under(c, false, f));
        }
  }
  return out;
}

// One-step reducts under the eight oriented unit equations, at any position.
inline void one_step_reducts(const Formula& f, std::vector<Formula>& out) {
  if (f.is_unit()) return;
  const Formula& l = f.left();
  const Formula& r = f.right();
  switch (f.conn().kind) {
    case Connective::Kind::Or:
      if (r.is_zero()) out.push_back(l);
      if (l.is_zero()) out.push_back(r);
      if (l.is_one() && r.is_one()) out.push_back(Formula::one());
      break;
    case Connective::Kind::And:
      if (r.is_one()) out.push_back(l);
      if (l.is_one()) out.push_back(r);
      if (l.is_zero() && r.is_zero()) out.push_back(Formula::zero());
      break;
    case Connective::Kind::Atom:
      if (l.is_zero() && r.is_zero()) out.push_back(Formula::zero());
      if (l.is_one() && r.is_one()) out.push_back(Formula::one());
      break;
  }
  std::vector<Formula> sub;
  one_step_reducts(l, sub);
  for (const Formula& g : sub) out.push_back(Formula::node(f.conn(), g, r));
  sub.clear();
  one_step_reducts(r, sub);
  for (const Formula& g : sub) out.push_back(Formula::node(f.conn(), l, g));
}

}  // namespace dtsa_tests

#endif
