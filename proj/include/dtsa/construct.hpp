// Derivation-building constructions: weakening and coweakening, unit
// attachment, nesting and un-nesting of atoms, flattening to the
// propositional fragment, contraction and cocontraction, merge,
// DT-weakening, reorder, and explicit associativity/commutativity
// rearrangement.  Every function returns a derivation that passes check().

#ifndef DTSA_CONSTRUCT_HPP
#define DTSA_CONSTRUCT_HPP

#include <string>
#include <utility>
#include <vector>

#include "dtsa/context.hpp"
#include "dtsa/derivation.hpp"

namespace dtsa {

namespace detail {

// Equality step; the endpoints must be equal modulo units.
inline Derivation eq_step(Formula from, Formula to) {
  if (!equal_mod_units(from, to))
    throw SemanticError("equality step between unequal formulae: " +
                        print_formula(from) + " vs " + print_formula(to));
  return Derivation::step(RuleName::equality(),
                          Derivation::leaf(std::move(from)),
                          Derivation::leaf(std::move(to)));
}

// The four-step derivation from 0 to 1:
//   0 = (0&1)|(1&0)  -> down(and,or) ->  (0|1)&(1|0)  = 1
inline Derivation one_gadget() {
  Formula p = make_or(make_and(Formula::zero(), Formula::one()),
                      make_and(Formula::one(), Formula::zero()));
  Formula q = make_and(make_or(Formula::zero(), Formula::one()),
                       make_or(Formula::one(), Formula::zero()));
  return Derivation::step(
      RuleName::equality(), Derivation::leaf(Formula::zero()),
      Derivation::step(
          RuleName::down(Connective::conj(), Connective::disj()),
          Derivation::leaf(p),
          Derivation::step(RuleName::equality(), Derivation::leaf(q),
                           Derivation::leaf(Formula::one()))));
}

inline Derivation weakening_body(const Formula& a) {
  if (a.is_unit())
    return a.is_one() ? one_gadget() : Derivation::leaf(Formula::zero());
  return Derivation::horiz(a.conn(), weakening_body(a.left()),
                           weakening_body(a.right()));
}

}  // namespace detail

// 0 -> A, with every 1 of A grown out of the 0-to-1 gadget.  Width O(n),
// constant height, no cuts and no identities.
inline Derivation weakening(const Formula& a) {
  Derivation body = detail::weakening_body(a);
  if (body.premiss() == Formula::zero()) return body;
  return Derivation::step(RuleName::equality(),
                          Derivation::leaf(Formula::zero()), std::move(body));
}

// A -> 1, dual of weakening.
inline Derivation coweakening(const Formula& a) {
  return dualize(weakening(negate(a)));
}

// ── Unit attachment ─────────────────────────────────────────────────────────

enum class AttachSide { Right1, Left1, Right0Elim, Left0Elim };

namespace detail {

// A -> (A a 1) by structural induction; the up(c,a) instance is never a cut.
inline Derivation attach_right1(const Formula& f, const Atom& a) {
  Connective ac = Connective::atom_conn(a);
  if (f.is_zero()) return weakening(Formula::node(ac, f, Formula::one()));
  if (f.is_one())
    return eq_step(f, Formula::node(ac, f, Formula::one()));
  Derivation grown = Derivation::horiz(f.conn(), attach_right1(f.left(), a),
                                       attach_right1(f.right(), a));
  Formula both_one =
      Formula::node(f.conn(), Formula::one(), Formula::one());
  Formula mid = Formula::node(ac, f, both_one);
  Formula out = Formula::node(ac, f, Formula::one());
  return Derivation::step(
      RuleName::up(f.conn(), ac), std::move(grown),
      eq_step(std::move(mid), std::move(out)));
}

}  // namespace detail

// The four unit-attachment derivations: A -> (A a 1), A -> (1 a A),
// (A a 0) -> A and (0 a A) -> A.  Height and width O(size A).
inline Derivation attach_unit(const Formula& f, const Atom& a,
                              AttachSide side) {
  switch (side) {
    case AttachSide::Right1: return detail::attach_right1(f, a);
    case AttachSide::Left1:
      return mirror(detail::attach_right1(mirror_formula(f), a));
    case AttachSide::Right0Elim:
      return dualize(detail::attach_right1(negate(f), a));
    default:
      return dualize(
          mirror(detail::attach_right1(mirror_formula(negate(f)), a)));
  }
}

// ── Nesting and un-nesting ──────────────────────────────────────────────────

enum class NestDirection { Unnest, Renest };

namespace detail {

// (B a C) -> (B & (1 a 0)) | ((0 a 1) & C); cut-free.
inline Derivation unnest(const Formula& b, const Formula& c, const Atom& a) {
  Connective ac = Connective::atom_conn(a);
  Formula zz = make_and(Formula::zero(), Formula::zero());
  Formula b1 = make_and(b, Formula::one());
  Formula c1 = make_and(Formula::one(), c);
  Formula one_a_zero = Formula::node(ac, Formula::one(), Formula::zero());
  Formula zero_a_one = Formula::node(ac, Formula::zero(), Formula::one());

  Derivation top = Derivation::horiz(ac, eq_step(b, make_or(b1, zz)),
                                     eq_step(c, make_or(zz, c1)));
  Derivation left_sub = Derivation::step(
      RuleName::down(Connective::conj(), ac),
      Derivation::leaf(Formula::node(ac, b1, zz)),
      Derivation::horiz(Connective::conj(),
                        attach_unit(b, a, AttachSide::Right0Elim),
                        Derivation::leaf(one_a_zero)));
  Derivation right_sub = Derivation::step(
      RuleName::down(Connective::conj(), ac),
      Derivation::leaf(Formula::node(ac, zz, c1)),
      Derivation::horiz(Connective::conj(), Derivation::leaf(zero_a_one),
                        attach_unit(c, a, AttachSide::Left0Elim)));
  return Derivation::step(
      RuleName::down(Connective::disj(), ac), std::move(top),
      Derivation::horiz(Connective::disj(), std::move(left_sub),
                        std::move(right_sub)));
}

// (B & (1 a 0)) | ((0 a 1) & C) -> (B a C); cut-free.  When B or C is 0
// modulo units the plain subderivation would be a cut, so it is replaced by
// the patched form built from an equality and a weakening.
inline Derivation renest(const Formula& b, const Formula& c, const Atom& a) {
  Connective ac = Connective::atom_conn(a);
  Connective cj = Connective::conj();
  Formula zero = Formula::zero(), one = Formula::one();
  Formula one_a_zero = Formula::node(ac, one, zero);
  Formula zero_a_one = Formula::node(ac, zero, one);
  Formula zero_a_zero = Formula::node(ac, zero, zero);

  Derivation left_sub =
      !equal_mod_units(b, zero)
          ? Derivation::step(
                RuleName::up(cj, ac),
                Derivation::horiz(cj, attach_unit(b, a, AttachSide::Right1),
                                  Derivation::leaf(one_a_zero)),
                Derivation::leaf(Formula::node(ac, make_and(b, one),
                                               make_and(one, zero))))
          : Derivation::step(
                RuleName::up(cj, ac),
                Derivation::horiz(cj, eq_step(b, zero_a_zero),
                                  Derivation::leaf(one_a_zero)),
                Derivation::horiz(
                    ac, Derivation::horiz(cj, eq_step(zero, b),
                                          Derivation::leaf(one)),
                    Derivation::horiz(cj, weakening(one),
                                      Derivation::leaf(zero))));
  Derivation right_sub =
      !equal_mod_units(c, zero)
          ? Derivation::step(
                RuleName::up(cj, ac),
                Derivation::horiz(cj, Derivation::leaf(zero_a_one),
                                  attach_unit(c, a, AttachSide::Left1)),
                Derivation::leaf(Formula::node(ac, make_and(zero, one),
                                               make_and(one, c))))
          : Derivation::step(
                RuleName::up(cj, ac),
                Derivation::horiz(cj, Derivation::leaf(zero_a_one),
                                  eq_step(c, zero_a_zero)),
                Derivation::horiz(
                    ac, Derivation::horiz(cj, Derivation::leaf(zero),
                                          weakening(one)),
                    Derivation::horiz(cj, Derivation::leaf(one),
                                      eq_step(zero, c))));
  Formula join_l = make_or(make_and(b, one), make_and(zero, one));
  Formula join_r = make_or(make_and(one, zero), make_and(one, c));
  return Derivation::step(
      RuleName::up(Connective::disj(), ac),
      Derivation::horiz(Connective::disj(), std::move(left_sub),
                        std::move(right_sub)),
      Derivation::horiz(ac, eq_step(join_l, b), eq_step(join_r, c)));
}

}  // namespace detail

inline Derivation nest(const Formula& b, const Formula& c, const Atom& a,
                       NestDirection dir) {
  return dir == NestDirection::Unnest ? detail::unnest(b, c, a)
                                      : detail::renest(b, c, a);
}

// ── Contraction and cocontraction ───────────────────────────────────────────

// (A alpha A) -> A for alpha in {or} or an atom; size O(n^2), no cuts and no
// identities.
inline Derivation contraction(const Formula& f, const Connective& alpha) {
  if (alpha.is_and())
    throw SemanticError("contraction is not available for 'and'");
  if (f.is_unit())
    return detail::eq_step(Formula::node(alpha, f, f), f);
  Formula premiss = Formula::node(alpha, f, f);
  return Derivation::step(
      RuleName::down(f.conn(), alpha), Derivation::leaf(std::move(premiss)),
      Derivation::horiz(f.conn(), contraction(f.left(), alpha),
                        contraction(f.right(), alpha)));
}

// A -> (A beta A) for beta in {and} or an atom; dual of contraction.
inline Derivation cocontraction(const Formula& f, const Connective& beta) {
  if (beta.is_or())
    throw SemanticError("cocontraction is not available for 'or'");
  return dualize(contraction(negate(f), beta.dual()));
}

// ── Merge ───────────────────────────────────────────────────────────────────

// K{A} & B -> K{A & B}; cut- and identity-free, width O(m+n+l), height
// O(ml).  Contexts with the hole on the right use the mirrored rule
// variants.  In the atom case the up(and,a) step would be a cut exactly
// when H{A} = 1, C = 0 and B = 0 modulo units; that corner is routed
// through coweakening and weakening instead.
inline Derivation merge_in(const Context& k, const Formula& a,
                           const Formula& b) {
  if (k.empty()) return Derivation::leaf(make_and(a, b));
  const Context::Layer& root = k.root();
  Context h = k.inner();
  Formula ha = h.plug(a);
  const Formula& c = root.other;
  Formula ka = k.plug(a);
  Connective cj = Connective::conj();

  if (root.conn.is_atom()) {
    bool would_cut = equal_mod_units(ha, Formula::one()) &&
                     equal_mod_units(c, Formula::zero()) &&
                     equal_mod_units(b, Formula::zero());
    if (would_cut) {
      Derivation d1 =
          Derivation::horiz(cj, coweakening(ka), Derivation::leaf(b));
      return Derivation::step(RuleName::equality(), std::move(d1),
                              weakening(k.plug(make_and(a, b))));
    }
  }

  Derivation rec = merge_in(h, a, b);
  if (root.hole_on_left) {
    switch (root.conn.kind) {
      case Connective::Kind::And:
        return Derivation::step(
            RuleName::up(cj, cj),
            Derivation::horiz(cj, Derivation::leaf(ka),
                              detail::eq_step(b, make_and(b, Formula::one()))),
            Derivation::horiz(cj, std::move(rec),
                              detail::eq_step(make_and(c, Formula::one()), c)));
      case Connective::Kind::Or:
        return Derivation::step(
            RuleName::down(Connective::disj(), cj),
            Derivation::horiz(cj, Derivation::leaf(ka),
                              detail::eq_step(b, make_or(b, Formula::zero()))),
            Derivation::horiz(Connective::disj(), std::move(rec),
                              detail::eq_step(make_or(c, Formula::zero()), c)));
      default:
        return Derivation::step(
            RuleName::up(cj, root.conn),
            Derivation::horiz(cj, Derivation::leaf(ka),
                              attach_unit(b, root.conn.atom,
                                          AttachSide::Right1)),
            Derivation::horiz(root.conn, std::move(rec),
                              detail::eq_step(make_and(c, Formula::one()), c)));
    }
  }
  switch (root.conn.kind) {
    case Connective::Kind::And:
      return Derivation::step(
          RuleName::up(cj, cj, /*mirrored=*/true),
          Derivation::horiz(cj, Derivation::leaf(ka),
                            detail::eq_step(b, make_and(Formula::one(), b))),
          Derivation::horiz(cj,
                            detail::eq_step(make_and(c, Formula::one()), c),
                            std::move(rec)));
    case Connective::Kind::Or:
      return Derivation::step(
          RuleName::down(Connective::disj(), cj, /*mirrored=*/true),
          Derivation::horiz(cj, Derivation::leaf(ka),
                            detail::eq_step(b, make_or(Formula::zero(), b))),
          Derivation::horiz(Connective::disj(),
                            detail::eq_step(make_or(c, Formula::zero()), c),
                            std::move(rec)));
    default:
      return Derivation::step(
          RuleName::up(cj, root.conn, /*mirrored=*/true),
          Derivation::horiz(cj, Derivation::leaf(ka),
                            attach_unit(b, root.conn.atom, AttachSide::Left1)),
          Derivation::horiz(root.conn,
                            detail::eq_step(make_and(c, Formula::one()), c),
                            std::move(rec)));
  }
}

// K{A | B} -> K{A} | B; dual of merge_in.
inline Derivation merge_out(const Context& k, const Formula& a,
                            const Formula& b) {
  return dualize(merge_in(k.negated(), negate(a), negate(b)));
}

// ── DT-weakening ────────────────────────────────────────────────────────────

enum class DtwSide { Left, Right };

namespace detail {

// (1 a 0) -> ((1 a 0) & (1 a 0)), the duplication used by DT-weakening.
inline Derivation duplicate_one_a_zero(const Atom& a) {
  Connective ac = Connective::atom_conn(a);
  Formula oz = Formula::node(ac, Formula::one(), Formula::zero());
  Derivation top = Derivation::horiz(
      ac, eq_step(Formula::one(), make_and(Formula::one(), Formula::one())),
      eq_step(Formula::zero(), make_and(Formula::zero(), Formula::zero())));
  return Derivation::step(RuleName::down(Connective::conj(), ac),
                          std::move(top),
                          Derivation::leaf(make_and(oz, oz)));
}

// X & (Y & Z) -> (X & Y) & Z via a padded up(and,and).
inline Derivation assoc_left(const Formula& x, const Formula& y,
                             const Formula& z) {
  Connective cj = Connective::conj();
  Formula from = make_and(x, make_and(y, z));
  Formula padded = make_and(make_and(x, Formula::one()), make_and(y, z));
  Formula after = make_and(make_and(x, y), make_and(Formula::one(), z));
  Formula to = make_and(make_and(x, y), z);
  return Derivation::step(
      RuleName::equality(), Derivation::leaf(from),
      Derivation::step(RuleName::up(cj, cj), Derivation::leaf(padded),
                       eq_step(after, to)));
}

// K{A} a C -> K{A a B} a C, assembled from un-nesting, the duplication
// above, merge, a weakening that grows B, and two re-nestings.
inline Derivation dtw_left(const Context& k, const Formula& a,
                           const Formula& b, const Formula& c,
                           const Atom& at) {
  Connective ac = Connective::atom_conn(at);
  Connective cj = Connective::conj();
  Formula one_a_zero = Formula::node(ac, Formula::one(), Formula::zero());
  Formula zero_a_one = Formula::node(ac, Formula::zero(), Formula::one());
  Formula ka = k.plug(a);
  Formula a_nested = Formula::node(ac, a, b);
  Formula k_nested = k.plug(a_nested);

  Derivation phi = unnest(ka, c, at);

  // in-hole work: A & (1 a 0) -> A a B
  Formula hole_from = make_and(a, one_a_zero);
  Derivation omega = weakening(make_and(zero_a_one, b));
  Derivation hole_work = Derivation::step(
      RuleName::equality(), Derivation::leaf(hole_from),
      compose_seq(
          Derivation::horiz(Connective::disj(), Derivation::leaf(hole_from),
                            std::move(omega)),
          renest(a, b, at)));

  Derivation merged = compose_seq(merge_in(k, a, one_a_zero),
                                  context_apply(k, std::move(hole_work)));

  Derivation left_chain = compose_seq(
      compose_seq(
          Derivation::horiz(cj, Derivation::leaf(ka),
                            duplicate_one_a_zero(at)),
          assoc_left(ka, one_a_zero, one_a_zero)),
      Derivation::horiz(cj, std::move(merged),
                        Derivation::leaf(one_a_zero)));

  Derivation middle = Derivation::horiz(
      Connective::disj(), std::move(left_chain),
      Derivation::leaf(make_and(zero_a_one, c)));

  Derivation chi = renest(k_nested, c, at);
  return compose_seq(compose_seq(std::move(phi), std::move(middle)),
                     std::move(chi));
}

}  // namespace detail

// Left: K{A} a C -> K{A a B} a C.  Right is the mirror image:
// C a K{A} -> C a K{B a A}.  Cut-free, width and height O(m+n).
inline Derivation dt_weakening(const Context& k, const Formula& a,
                               const Formula& b, const Formula& c,
                               const Atom& at, DtwSide side) {
  if (side == DtwSide::Left) return detail::dtw_left(k, a, b, c, at);
  return mirror(detail::dtw_left(k.mirrored(), mirror_formula(a),
                                 mirror_formula(b), mirror_formula(c), at));
}

// ── Reorder ─────────────────────────────────────────────────────────────────

// (lpr_a A) a (rpr_a A) -> A; cut-free.  Size O(n^3) in general, O(n^2)
// when no a occurs nested (the atom case then degenerates to a leaf).
inline Derivation reorder_up(const Formula& f, const Atom& a) {
  Connective ac = Connective::atom_conn(a);
  if (f.is_unit())
    return detail::eq_step(Formula::node(ac, f, f), f);
  if (!f.conn().is_atom(a)) {
    Formula lp = project_formula(f, a, Side::Left);
    Formula rp = project_formula(f, a, Side::Right);
    return Derivation::step(
        RuleName::down(f.conn(), ac),
        Derivation::leaf(Formula::node(ac, lp, rp)),
        Derivation::horiz(f.conn(), reorder_up(f.left(), a),
                          reorder_up(f.right(), a)));
  }
  const Formula& b = f.left();
  const Formula& c = f.right();
  if (!contains_atom(b, a) && !contains_atom(c, a))
    return Derivation::leaf(f);
  Formula lb = project_formula(b, a, Side::Left);
  Formula rb = project_formula(b, a, Side::Right);
  Formula lc = project_formula(c, a, Side::Left);
  Formula rc = project_formula(c, a, Side::Right);
  Formula b_join = Formula::node(ac, lb, rb);
  Derivation grow_left = dt_weakening(Context::hole(), lb, rb, rc, a,
                                      DtwSide::Left);
  Derivation grow_right = dt_weakening(Context::hole(), rc, lc, b_join, a,
                                       DtwSide::Right);
  Derivation joined = Derivation::horiz(ac, reorder_up(b, a),
                                        reorder_up(c, a));
  return compose_seq(compose_seq(std::move(grow_left), std::move(grow_right)),
                     std::move(joined));
}

// A -> (lpr_a A) a (rpr_a A); dual of reorder_up, identity-free.
inline Derivation reorder_down(const Formula& f, const Atom& a) {
  return dualize(reorder_up(negate(f), a));
}

// ── Flattening to the propositional fragment ────────────────────────────────

struct FlattenResult {
  Formula prop;
  Derivation down;  // A -> prop
  Derivation up;    // prop -> A
};

namespace detail {

// Outermost nesting site: an atom node with atom occurrences below it and no
// atom node above it; searching left to right.  Un-nesting there strictly
// decreases the number of nested atom occurrences.
inline bool find_nesting_site(const Formula& f, Path& path) {
  if (f.is_unit()) return false;
  if (f.conn().is_atom()) {
    if (atoms(f.left()).empty() && atoms(f.right()).empty()) return false;
    return true;  // site found at current path
  }
  path.push_back(0);
  if (find_nesting_site(f.left(), path)) return true;
  path.back() = 1;
  if (find_nesting_site(f.right(), path)) return true;
  path.pop_back();
  return false;
}

inline Formula formula_at(const Formula& f, const Path& p) {
  Formula cur = f;
  for (int i : p) cur = i == 0 ? cur.left() : cur.right();
  return cur;
}

// Wraps a derivation acting at `path` with leaves for the rest of f.
inline Derivation embed_deriv_at(const Formula& f, const Path& p,
                                 std::size_t depth, Derivation d) {
  if (depth == p.size()) return d;
  if (p[depth] == 0)
    return Derivation::horiz(f.conn(),
                             embed_deriv_at(f.left(), p, depth + 1,
                                            std::move(d)),
                             Derivation::leaf(f.right()));
  return Derivation::horiz(f.conn(), Derivation::leaf(f.left()),
                           embed_deriv_at(f.right(), p, depth + 1,
                                          std::move(d)));
}

}  // namespace detail

inline FlattenResult flatten_to_prop(const Formula& f) {
  Formula cur = f;
  Derivation down = Derivation::leaf(f);
  std::vector<Derivation> ups;
  for (;;) {
    Path site;
    if (!detail::find_nesting_site(cur, site)) break;
    Formula node = detail::formula_at(cur, site);
    const Atom& a = node.conn().atom;
    Derivation step_down = detail::embed_deriv_at(
        cur, site, 0, detail::unnest(node.left(), node.right(), a));
    Derivation step_up = detail::embed_deriv_at(
        cur, site, 0, detail::renest(node.left(), node.right(), a));
    cur = step_down.conclusion();
    down = compose_seq(std::move(down), std::move(step_down));
    ups.push_back(std::move(step_up));
  }
  Derivation up = Derivation::leaf(cur);
  for (auto it = ups.rbegin(); it != ups.rend(); ++it)
    up = compose_seq(std::move(up), std::move(*it));
  return FlattenResult{std::move(cur), std::move(down), std::move(up)};
}

// ── Associativity / commutativity rearrangement ─────────────────────────────
// A derivation between two formulae with the same multiset of maximal
// non-or (resp. non-and) operands, built from padded down(or,or) /
// up(and,and) steps: rotations reassociate and adjacent swaps permute.

namespace detail {

enum class AcMove { RotL, RotR, Swap };  // RotL: (XcY)cZ -> Xc(YcZ)

inline void flatten_ops(const Formula& f, const Connective& c,
                        std::vector<Formula>& out) {
  if (f.is_node() && f.conn() == c) {
    flatten_ops(f.left(), c, out);
    flatten_ops(f.right(), c, out);
    return;
  }
  out.push_back(f);
}

// One rearrangement move as a three-step derivation at the root.
inline Derivation ac_move_deriv(const Formula& f, const Connective& c,
                                AcMove m) {
  bool is_or = c.is_or();
  Formula e = is_or ? Formula::zero() : Formula::one();
  RuleName rule = is_or ? RuleName::down(c, c) : RuleName::up(c, c);
  auto mk = [&](const Formula& l, const Formula& r) {
    return Formula::node(c, l, r);
  };
  switch (m) {
    case AcMove::Swap: {
      const Formula &x = f.left(), &y = f.right();
      Formula padded = mk(mk(e, x), mk(y, e));
      Formula after = mk(mk(e, y), mk(x, e));
      return Derivation::step(
          RuleName::equality(), Derivation::leaf(f),
          Derivation::step(rule, Derivation::leaf(padded),
                           eq_step(after, mk(y, x))));
    }
    case AcMove::RotL: {
      const Formula &x = f.left().left(), &y = f.left().right();
      const Formula& z = f.right();
      Formula padded = mk(mk(x, y), mk(e, z));
      Formula after = mk(mk(x, e), mk(y, z));
      return Derivation::step(
          RuleName::equality(), Derivation::leaf(f),
          Derivation::step(rule, Derivation::leaf(padded),
                           eq_step(after, mk(x, mk(y, z)))));
    }
    default: {
      const Formula& x = f.left();
      const Formula &y = f.right().left(), &z = f.right().right();
      Formula padded = mk(mk(x, e), mk(y, z));
      Formula after = mk(mk(x, y), mk(e, z));
      return Derivation::step(
          RuleName::equality(), Derivation::leaf(f),
          Derivation::step(rule, Derivation::leaf(padded),
                           eq_step(after, mk(mk(x, y), z))));
    }
  }
}

inline Formula replace_at(const Formula& f, const Path& p, std::size_t depth,
                          const Formula& sub) {
  if (depth == p.size()) return sub;
  if (p[depth] == 0)
    return Formula::node(f.conn(), replace_at(f.left(), p, depth + 1, sub),
                         f.right());
  return Formula::node(f.conn(), f.left(),
                       replace_at(f.right(), p, depth + 1, sub));
}

struct AcState {
  Formula cur;
  Connective conn;
  Derivation deriv;

  void apply(const Path& p, AcMove m) {
    Formula target = formula_at(cur, p);
    Derivation d = ac_move_deriv(target, conn, m);
    Formula next = replace_at(cur, p, 0, d.conclusion());
    deriv = compose_seq(std::move(deriv), embed_deriv_at(cur, p, 0, d));
    cur = std::move(next);
  }

  // Rotates the subtree at `path` into a right-leaning spine.
  void right_assoc(const Path& path) {
    Path p = path;
    for (;;) {
      Formula sub = formula_at(cur, p);
      if (!(sub.is_node() && sub.conn() == conn)) return;
      while (true) {
        Formula s = formula_at(cur, p);
        if (s.left().is_node() && s.left().conn() == conn)
          apply(p, AcMove::RotL);
        else
          break;
      }
      p.push_back(1);
    }
  }

  // Moves the operand at spine position `from` to position `to` (to < from)
  // by adjacent swaps; the spine must be right-leaning with `ops` operands.
  void bubble(std::size_t ops, std::size_t from, std::size_t to) {
    for (std::size_t i = from; i > to; --i) {
      std::size_t at = i - 1;  // swap operands at, at+1
      Path p(at, 1);
      if (at + 2 == ops) {
        apply(p, AcMove::Swap);
      } else {
        apply(p, AcMove::RotR);
        Path p0 = p;
        p0.push_back(0);
        apply(p0, AcMove::Swap);
        apply(p, AcMove::RotL);
      }
    }
  }
};

}  // namespace detail

inline Derivation ac_derivation(const Formula& f, const Formula& g) {
  if (f == g) return Derivation::leaf(f);
  Connective c;
  if (f.is_node() && (f.conn().is_or() || f.conn().is_and()) &&
      g.is_node() && g.conn() == f.conn())
    c = f.conn();
  else
    throw SemanticError("ac_derivation: formulae are not AC-equal");

  std::vector<Formula> ops_g;
  detail::flatten_ops(g, c, ops_g);

  detail::AcState st{f, c, Derivation::leaf(f)};
  st.right_assoc({});
  std::vector<Formula> ops;
  detail::flatten_ops(st.cur, c, ops);
  if (ops.size() != ops_g.size())
    throw SemanticError("ac_derivation: operand multisets differ");

  for (std::size_t i = 0; i < ops_g.size(); ++i) {
    std::size_t j = i;
    while (j < ops.size() && ops[j] != ops_g[i]) ++j;
    if (j == ops.size())
      throw SemanticError("ac_derivation: operand multisets differ");
    if (j != i) {
      st.bubble(ops.size(), j, i);
      Formula moved = ops[j];
      ops.erase(ops.begin() + static_cast<std::ptrdiff_t>(j));
      ops.insert(ops.begin() + static_cast<std::ptrdiff_t>(i), moved);
    }
  }

  // Invert the right-association of g, replayed backwards.
  detail::AcState gt{g, c, Derivation::leaf(g)};
  std::vector<std::pair<Path, detail::AcMove>> gmoves;
  {
    // capture g's rotations by re-running them with recording
    Path p;
    for (;;) {
      Formula sub = detail::formula_at(gt.cur, p);
      if (!(sub.is_node() && sub.conn() == c)) break;
      while (true) {
        Formula s = detail::formula_at(gt.cur, p);
        if (s.left().is_node() && s.left().conn() == c) {
          gmoves.emplace_back(p, detail::AcMove::RotL);
          gt.apply(p, detail::AcMove::RotL);
        } else {
          break;
        }
      }
      p.push_back(1);
    }
  }
  if (st.cur != gt.cur)
    throw SemanticError("ac_derivation: operand multisets differ");
  for (auto it = gmoves.rbegin(); it != gmoves.rend(); ++it)
    st.apply(it->first, detail::AcMove::RotR);

  if (st.cur != g)
    throw SemanticError("ac_derivation: rearrangement failed");
  return st.deriv;
}

}  // namespace dtsa

#endif  // DTSA_CONSTRUCT_HPP
