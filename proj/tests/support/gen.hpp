// Deterministic random generators for formulae, rule instances, valid
// derivations and proofs with a controlled number of cuts.

#ifndef DTSA_TESTS_GEN_HPP
#define DTSA_TESTS_GEN_HPP

#include <random>
#include <utility>
#include <vector>

#include "dtsa/construct.hpp"
#include "dtsa/derivation.hpp"
#include "dtsa/formula.hpp"
#include "dtsa/rules.hpp"

namespace dtsa_tests {

using dtsa::Atom;
using dtsa::Connective;
using dtsa::Derivation;
using dtsa::Formula;
using dtsa::RuleName;

struct Rng {
  std::mt19937_64 eng;
  explicit Rng(std::uint64_t seed) : eng(seed) {}
  std::size_t below(std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(eng);
  }
  bool flip() { return below(2) == 0; }
};

inline Connective random_conn(Rng& rng, const std::vector<Atom>& pool) {
  std::size_t i = rng.below(2 + pool.size());
  if (i == 0) return Connective::disj();
  if (i == 1) return Connective::conj();
  return Connective::atom_conn(pool[i - 2]);
}

inline Formula random_formula(Rng& rng, std::size_t max_units,
                              const std::vector<Atom>& pool) {
  if (max_units <= 1 || rng.below(3) == 0)
    return Formula::unit(rng.flip());
  std::size_t left = 1 + rng.below(max_units - 1);
  return Formula::node(random_conn(rng, pool),
                       random_formula(rng, left, pool),
                       random_formula(rng, max_units - left, pool));
}

// Premiss and conclusion of a rule instance with the given quadruple; an
// independent rendering of the rule scheme used to cross-check the matcher.
inline std::pair<Formula, Formula> instantiate_rule(const RuleName& n,
                                                    const Formula& a,
                                                    const Formula& b,
                                                    const Formula& c,
                                                    const Formula& d) {
  Formula p, q;
  if (n.is_up()) {
    p = Formula::node(n.first, Formula::node(n.second, a, b),
                      Formula::node(n.second.stronger(), c, d));
    q = Formula::node(n.second, Formula::node(n.first, a, c),
                      Formula::node(n.first, b, d));
  } else {
    p = Formula::node(n.second, Formula::node(n.first, a, b),
                      Formula::node(n.first, c, d));
    q = Formula::node(n.first, Formula::node(n.second, a, c),
                      Formula::node(n.second.weaker(), b, d));
  }
  if (n.mirrored) {
    auto swap3 = [](const Formula& f) {
      auto sw = [](const Formula& g) {
        return Formula::node(g.conn(), g.right(), g.left());
      };
      return Formula::node(f.conn(), sw(f.right()), sw(f.left()));
    };
    p = swap3(p);
    q = swap3(q);
  }
  return {p, q};
}

inline RuleName random_rule_name(Rng& rng, const std::vector<Atom>& pool) {
  Connective x = random_conn(rng, pool);
  Connective y = random_conn(rng, pool);
  bool mirrored = rng.below(4) == 0;
  return rng.flip() ? RuleName::up(x, y, mirrored)
                    : RuleName::down(x, y, mirrored);
}

// A formula equal to f modulo units, grown by a few random unit paddings.
inline Formula unit_variant(Rng& rng, const Formula& f, int growth) {
  Formula cur = f;
  for (int i = 0; i < growth; ++i) {
    switch (rng.below(4)) {
      case 0: cur = make_or(cur, Formula::zero()); break;
      case 1: cur = make_or(Formula::zero(), cur); break;
      case 2: cur = make_and(cur, Formula::one()); break;
      default: cur = make_and(Formula::one(), cur); break;
    }
  }
  return cur;
}

// Checker-valid derivation built from leaves, horizontal compositions,
// equality paddings and random rule instances.
inline Derivation random_valid_derivation(Rng& rng,
                                          const std::vector<Atom>& pool,
                                          std::size_t quad_units, int depth) {
  switch (depth <= 0 ? 0 : rng.below(5)) {
    case 0:
      return Derivation::leaf(random_formula(rng, 2 * quad_units, pool));
    case 1:
      return Derivation::horiz(
          random_conn(rng, pool),
          random_valid_derivation(rng, pool, quad_units, depth - 1),
          random_valid_derivation(rng, pool, quad_units, depth - 1));
    case 2: {  // equality step onto a unit variant
      Derivation d = random_valid_derivation(rng, pool, quad_units, depth - 1);
      Formula variant = unit_variant(rng, d.conclusion(), 1 + (int)rng.below(2));
      return Derivation::step(RuleName::equality(), std::move(d),
                              Derivation::leaf(std::move(variant)));
    }
    case 3: {  // equality step from a unit variant
      Derivation d = random_valid_derivation(rng, pool, quad_units, depth - 1);
      Formula variant = unit_variant(rng, d.premiss(), 1 + (int)rng.below(2));
      return Derivation::step(RuleName::equality(),
                              Derivation::leaf(std::move(variant)),
                              std::move(d));
    }
    default: {  // a random rule instance
      RuleName n = random_rule_name(rng, pool);
      auto [p, q] = instantiate_rule(n, random_formula(rng, quad_units, pool),
                                     random_formula(rng, quad_units, pool),
                                     random_formula(rng, quad_units, pool),
                                     random_formula(rng, quad_units, pool));
      return Derivation::step(n, Derivation::leaf(std::move(p)),
                              Derivation::leaf(std::move(q)));
    }
  }
}

// Proof of (1 a 0) | (0 a 1) containing exactly one cut on `a`.
inline Derivation cut_proof_template(const Atom& a) {
  using dtsa::make_and;
  using dtsa::make_atom;
  using dtsa::make_or;
  Formula zero = Formula::zero(), one = Formula::one();
  Formula pa = make_atom(a, zero, one);   // a
  Formula na = make_atom(a, one, zero);   // not a
  Connective ac = Connective::atom_conn(a);

  Derivation p1 = Derivation::step(
      RuleName::equality(), Derivation::leaf(one),
      Derivation::step(
          RuleName::down(Connective::disj(), ac),
          Derivation::leaf(Formula::node(ac, make_or(zero, one),
                                         make_or(one, zero))),
          Derivation::leaf(make_or(pa, na))));
  Derivation p2 = Derivation::step(
      RuleName::equality(), Derivation::leaf(one),
      Derivation::step(
          RuleName::down(Connective::disj(), ac),
          Derivation::leaf(Formula::node(ac, make_or(one, zero),
                                         make_or(zero, one))),
          Derivation::leaf(make_or(na, pa))));

  Derivation cut_step = Derivation::step(
      RuleName::up(Connective::conj(), ac),
      Derivation::leaf(make_and(pa, na)),
      Derivation::step(RuleName::equality(),
                       Derivation::leaf(Formula::node(
                           ac, make_and(zero, one), make_and(one, zero))),
                       Derivation::leaf(zero)));

  Formula rest = make_or(na, pa);
  Derivation body = dtsa::compose_seq(
      Derivation::horiz(Connective::conj(), std::move(p1), std::move(p2)),
      Derivation::step(
          RuleName::down(Connective::disj(), Connective::conj()),
          Derivation::leaf(make_and(make_or(pa, na), rest)),
          Derivation::step(
              RuleName::equality(),
              Derivation::horiz(Connective::disj(), std::move(cut_step),
                                Derivation::leaf(rest)),
              Derivation::leaf(rest))));
  return Derivation::step(RuleName::equality(), Derivation::leaf(one),
                          std::move(body));
}

// Proof of 1 = a | not-a shape with no cuts, for padding multi-cut proofs.
inline Derivation identity_proof_template(const Atom& a) {
  using dtsa::make_atom;
  using dtsa::make_or;
  Formula zero = Formula::zero(), one = Formula::one();
  Connective ac = Connective::atom_conn(a);
  return Derivation::step(
      RuleName::equality(), Derivation::leaf(one),
      Derivation::step(
          RuleName::down(Connective::disj(), ac),
          Derivation::leaf(Formula::node(ac, make_or(zero, one),
                                         make_or(one, zero))),
          Derivation::leaf(make_or(make_atom(a, zero, one),
                                   make_atom(a, one, zero)))));
}

// Random proof with `cuts` cuts spread over the given atoms.
inline Derivation random_cut_proof(Rng& rng, const std::vector<Atom>& atoms,
                                   int cuts) {
  std::vector<Derivation> parts;
  for (int i = 0; i < cuts; ++i)
    parts.push_back(cut_proof_template(atoms[rng.below(atoms.size())]));
  parts.push_back(identity_proof_template(atoms[rng.below(atoms.size())]));
  while (parts.size() > 1) {
    Derivation b = std::move(parts.back());
    parts.pop_back();
    Derivation a = std::move(parts.back());
    parts.pop_back();
    if (rng.flip()) {
      parts.push_back(Derivation::step(
          RuleName::equality(), Derivation::leaf(Formula::one()),
          Derivation::horiz(Connective::conj(), std::move(a), std::move(b))));
    } else {
      Formula pad = random_formula(rng, 3, atoms);
      Derivation padded = Derivation::step(
          RuleName::equality(), Derivation::leaf(Formula::one()),
          Derivation::horiz(Connective::disj(), std::move(a),
                            dtsa::weakening(pad)));
      parts.push_back(Derivation::step(
          RuleName::equality(), Derivation::leaf(Formula::one()),
          Derivation::horiz(Connective::conj(), std::move(padded),
                            std::move(b))));
    }
  }
  return std::move(parts.front());
}

}  // namespace dtsa_tests

#endif
