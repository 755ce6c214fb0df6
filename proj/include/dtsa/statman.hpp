// Statman tautologies and their polynomial-size cut-free proofs.  The
// formulae are built over the indexed atom families a1..an, b1..bn with all
// or-spines and and-chains nested to the right, which makes the chain
// identity A(n,k) = (an|bn) & A(n-1,k) hold syntactically and lets the
// inductive construction glue with single equality steps.

#ifndef DTSA_STATMAN_HPP
#define DTSA_STATMAN_HPP

#include <string>
#include <utility>
#include <vector>

#include "dtsa/construct.hpp"
#include "dtsa/derivation.hpp"

namespace dtsa {

namespace detail {

inline Atom statman_a(unsigned i) { return "a" + std::to_string(i); }
inline Atom statman_b(unsigned i) { return "b" + std::to_string(i); }

inline Formula pos_lit(const Atom& x) {
  return make_atom(x, Formula::zero(), Formula::one());
}
inline Formula neg_lit(const Atom& x) {
  return make_atom(x, Formula::one(), Formula::zero());
}

// a_i | b_i
inline Formula statman_head(unsigned i) {
  return make_or(pos_lit(statman_a(i)), pos_lit(statman_b(i)));
}

// (an|bn) & ... & (a(k+1)|b(k+1)) & last, nested to the right.
inline Formula statman_chain(unsigned n, unsigned k, Formula last) {
  Formula f = std::move(last);
  for (unsigned i = k + 1; i <= n; ++i) f = make_and(statman_head(i), f);
  return f;
}

}  // namespace detail

struct StatmanInstance {
  unsigned n = 1;
  Formula formula;
  std::vector<Atom> a_family;  // a1 .. an
  std::vector<Atom> b_family;  // b1 .. bn
};

inline StatmanInstance statman_formula(unsigned n) {
  if (n < 1) throw SemanticError("statman: n must be at least 1");
  using namespace detail;
  Formula tail = make_or(pos_lit(statman_a(1)), pos_lit(statman_b(1)));
  for (unsigned k = 1; k + 1 <= n; ++k) {
    Formula ank = statman_chain(n, k, neg_lit(statman_a(k)));
    Formula bnk = statman_chain(n, k, neg_lit(statman_b(k)));
    tail = make_or(make_and(std::move(ank), std::move(bnk)), std::move(tail));
  }
  Formula head =
      make_and(neg_lit(statman_a(n)), neg_lit(statman_b(n)));
  StatmanInstance inst{n, make_or(std::move(head), std::move(tail)), {}, {}};
  for (unsigned i = 1; i <= n; ++i) {
    inst.a_family.push_back(statman_a(i));
    inst.b_family.push_back(statman_b(i));
  }
  return inst;
}

namespace detail {

// Grows every b-literal of `target` out of a weakening, leaving the rest of
// the tree as leaves; the premiss is `target` with those literals zeroed.
inline Derivation grow_literals(const Formula& target, const Atom& b) {
  if (!contains_atom(target, b)) return Derivation::leaf(target);
  if (target.is_node() && target.conn().is_atom(b) &&
      target.left().is_unit() && target.right().is_unit())
    return weakening(target);
  return Derivation::horiz(target.conn(), grow_literals(target.left(), b),
                           grow_literals(target.right(), b));
}

// Proof of S1 (base case): an identity-like split on b1, weakenings to grow
// the missing literals, and the reorder derivation on a1.
inline Derivation statman_base() {
  Atom a1 = statman_a(1), b1 = statman_b(1);
  Connective b1c = Connective::atom_conn(b1);
  Formula s1 = statman_formula(1).formula;
  Formula one = Formula::one(), zero = Formula::zero();

  Formula split_pr = Formula::node(b1c, make_or(one, zero),
                                   make_or(zero, one));
  Derivation left_part = Derivation::step(
      RuleName::down(Connective::disj(), b1c), Derivation::leaf(split_pr),
      Derivation::horiz(
          Connective::disj(),
          eq_step(neg_lit(b1), make_and(one, neg_lit(b1))),
          eq_step(pos_lit(b1), make_or(zero, pos_lit(b1)))));
  Derivation right_part = Derivation::horiz(
      Connective::disj(),
      Derivation::horiz(Connective::conj(), Derivation::leaf(zero),
                        weakening(neg_lit(b1))),
      Derivation::horiz(Connective::disj(), Derivation::leaf(one),
                        weakening(pos_lit(b1))));
  Derivation body = Derivation::horiz(Connective::atom_conn(a1),
                                      std::move(left_part),
                                      std::move(right_part));
  return Derivation::step(
      RuleName::equality(), Derivation::leaf(one),
      compose_seq(std::move(body), reorder_up(s1, a1)));
}

// Derivation from S(n-1) to S(n) (inductive case): cocontract on an, derive
// the left projection through an attachment of bn and a reorder on bn, the
// right projection through weakenings, and reorder on an.
inline Derivation statman_step(unsigned n) {
  Atom an = statman_a(n), bn = statman_b(n);
  Connective anc = Connective::atom_conn(an);
  Connective bnc = Connective::atom_conn(bn);
  Formula sn = statman_formula(n).formula;
  Formula sm = statman_formula(n - 1).formula;
  Formula one = Formula::one();

  Formula x = project_formula(sn, an, Side::Left);
  Formula y = project_formula(sn, an, Side::Right);
  Formula xl = project_formula(x, bn, Side::Left);
  Formula xr = project_formula(x, bn, Side::Right);

  // left branch: S(n-1) -> 1 bn S(n-1) -> xl bn xr -> x
  Derivation rho = attach_unit(sm, bn, AttachSide::Left1);
  Derivation into_xl = Derivation::step(
      RuleName::equality(), Derivation::leaf(one),
      Derivation::horiz(Connective::disj(), Derivation::leaf(xl.left()),
                        weakening(xl.right())));
  Derivation into_xr = eq_step(sm, xr);
  Derivation left = compose_seq(
      compose_seq(std::move(rho),
                  Derivation::horiz(bnc, std::move(into_xl),
                                    std::move(into_xr))),
      reorder_up(x, bn));

  // right branch: S(n-1) -> y by growing the bn literals
  Derivation lifted = grow_literals(y, bn);
  Derivation right = Derivation::step(RuleName::equality(),
                                      Derivation::leaf(sm),
                                      std::move(lifted));

  Derivation split = Derivation::horiz(anc, std::move(left),
                                       std::move(right));
  return compose_seq(
      compose_seq(cocontraction(sm, anc), std::move(split)),
      reorder_up(sn, an));
}

}  // namespace detail

// Checker-valid cut-free proof of statman_formula(n).
inline Derivation statman_proof(unsigned n) {
  if (n < 1) throw SemanticError("statman: n must be at least 1");
  Derivation proof = detail::statman_base();
  for (unsigned i = 2; i <= n; ++i)
    proof = compose_seq(std::move(proof), detail::statman_step(i));
  return proof;
}

}  // namespace dtsa

#endif  // DTSA_STATMAN_HPP
