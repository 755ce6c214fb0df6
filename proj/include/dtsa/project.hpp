// Projection of derivations on an atom, and the projection-based
// cut-elimination procedure.  Projecting keeps one branch of every
// horizontal composition by the atom, drops the steps whose projected
// endpoints coincide (gluing by synchronal composition), and repairs the two
// genuinely broken rule shapes with a padded switch step.

#ifndef DTSA_PROJECT_HPP
#define DTSA_PROJECT_HPP

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "dtsa/construct.hpp"
#include "dtsa/derivation.hpp"

namespace dtsa {

namespace detail {

// X & Y -> X | Y by padding with units around a switch:
//   X & Y = (0|X) & (0|Y)  -> down(or,and) ->  (0&0) | (X|Y)  = X | Y
// The mirrored variant pads on the other side and uses the mirrored rule.
inline Derivation conj_to_disj(const Formula& x, const Formula& y,
                               bool mirrored) {
  Formula z = Formula::zero();
  Formula from = make_and(x, y);
  Formula to = make_or(x, y);
  Formula padded = mirrored ? make_and(make_or(x, z), make_or(y, z))
                            : make_and(make_or(z, x), make_or(z, y));
  Formula after = mirrored ? make_or(to, make_and(z, z))
                           : make_or(make_and(z, z), to);
  return Derivation::step(
      RuleName::equality(), Derivation::leaf(from),
      Derivation::step(
          RuleName::down(Connective::disj(), Connective::conj(), mirrored),
          Derivation::leaf(std::move(padded)),
          eq_step(std::move(after), to)));
}

inline Derivation glue_projected(Derivation upper, Derivation lower) {
  if (upper.conclusion() == lower.premiss())
    return compose_seq(std::move(upper), std::move(lower));
  if (!equal_mod_units(upper.conclusion(), lower.premiss()))
    throw SemanticError("projection: projected interfaces disagree");
  Derivation eq = eq_step(upper.conclusion(), lower.premiss());
  return compose_seq(compose_seq(std::move(upper), std::move(eq)),
                     std::move(lower));
}

}  // namespace detail

// Lifts project_formula to derivations; the input must be checker-valid.
// `steps_of_left_first` selects the clause order used by the synchronal
// compositions that glue vanished steps; both orders agree.
inline Derivation project_derivation(const Derivation& d, const Atom& a,
                                     Side side,
                                     bool steps_of_left_first = true) {
  switch (d.kind()) {
    case Derivation::Kind::Leaf:
      return Derivation::leaf(project_formula(d.formula(), a, side));
    case Derivation::Kind::Horiz: {
      if (d.conn().is_atom(a))
        return project_derivation(side == Side::Left ? d.left() : d.right(),
                                  a, side, steps_of_left_first);
      return Derivation::horiz(
          d.conn(), project_derivation(d.left(), a, side, steps_of_left_first),
          project_derivation(d.right(), a, side, steps_of_left_first));
    }
    default: {
      const RuleName& r = d.rule();
      Derivation pu = project_derivation(d.upper(), a, side,
                                         steps_of_left_first);
      Derivation pl = project_derivation(d.lower(), a, side,
                                         steps_of_left_first);
      if (r.is_equality() || !r.mentions(a))
        return Derivation::step(r, std::move(pu), std::move(pl));
      // The strengthened connective of the scheme sits in the branch that
      // the projection keeps only for up(a,or) / down(a,and) on the plain
      // side (right) and for their mirror images on the left.
      bool gadget_rule =
          (r.is_up() && r.first.is_atom(a) && r.second.is_or()) ||
          (r.is_down() && r.first.is_atom(a) && r.second.is_and());
      Side gadget_side = r.mirrored ? Side::Left : Side::Right;
      if (gadget_rule && side == gadget_side) {
        const Formula& m = pu.conclusion();
        Derivation fix =
            detail::conj_to_disj(m.left(), m.right(), r.mirrored);
        return compose_seq(
            compose_seq(std::move(pu), std::move(fix), steps_of_left_first),
            std::move(pl), steps_of_left_first);
      }
      return detail::glue_projected(std::move(pu), std::move(pl));
    }
  }
}

// Atoms that appear in cut instances of a checker-valid derivation.
inline std::set<Atom> cut_atoms(const Derivation& d) {
  std::set<Atom> out;
  std::vector<const Derivation*> stack{&d};
  while (!stack.empty()) {
    const Derivation* cur = stack.back();
    stack.pop_back();
    switch (cur->kind()) {
      case Derivation::Kind::Leaf: break;
      case Derivation::Kind::Horiz:
        stack.push_back(&cur->left());
        stack.push_back(&cur->right());
        break;
      default:
        if (is_cut(RuleInstance{cur->rule(), cur->upper().conclusion(),
                                cur->lower().premiss()}))
          out.insert(cur->rule().second.atom);
        stack.push_back(&cur->upper());
        stack.push_back(&cur->lower());
        break;
    }
  }
  return out;
}

// Atoms occurring anywhere in the derivation: leaf formulae, horizontal
// composition connectives and rule names.
inline std::set<Atom> derivation_atoms(const Derivation& d) {
  std::set<Atom> out;
  std::vector<const Derivation*> stack{&d};
  while (!stack.empty()) {
    const Derivation* cur = stack.back();
    stack.pop_back();
    if (cur->is_leaf()) {
      collect_atoms(cur->formula(), out);
      continue;
    }
    if (cur->is_step()) {
      const RuleName& r = cur->rule();
      if (!r.is_equality()) {
        if (r.first.is_atom()) out.insert(r.first.atom);
        if (r.second.is_atom()) out.insert(r.second.atom);
      }
      stack.push_back(&cur->upper());
      stack.push_back(&cur->lower());
    } else {
      if (cur->conn().is_atom()) out.insert(cur->conn().atom);
      stack.push_back(&cur->left());
      stack.push_back(&cur->right());
    }
  }
  return out;
}

// Cut elimination for proofs: while a cut on some atom remains, rebuild the
// proof as 1 = (1 a 1), the two projections composed by a, and the reorder
// derivation back to the conclusion.  Atoms are processed in ascending
// lexicographic order unless an explicit order is given.  A round kills all
// cuts on its atom; a later projection can in principle re-create one when
// the conclusion nests one cut atom under another, so the loop is guarded
// and reports failure instead of diverging.
inline Derivation eliminate_cuts(const Derivation& proof,
                                 const std::vector<Atom>& atom_order = {}) {
  if (proof.premiss() != Formula::one())
    throw SemanticError("eliminate_cuts: premiss is not 1");
  if (!check(proof).valid)
    throw SemanticError("eliminate_cuts: input derivation is invalid");
  Derivation cur = proof;
  std::size_t rounds = 0;
  std::size_t max_rounds = 2 * derivation_atoms(proof).size() + 4;
  for (;;) {
    std::set<Atom> cuts = cut_atoms(cur);
    if (cuts.empty()) return cur;
    if (++rounds > max_rounds)
      throw SemanticError("eliminate_cuts: did not terminate");
    Atom a;
    bool picked = false;
    for (const Atom& o : atom_order)
      if (cuts.count(o)) {
        a = o;
        picked = true;
        break;
      }
    if (!picked) a = *cuts.begin();
    Derivation split = Derivation::horiz(
        Connective::atom_conn(a), project_derivation(cur, a, Side::Left),
        project_derivation(cur, a, Side::Right));
    Derivation back = reorder_up(cur.conclusion(), a);
    cur = Derivation::step(
        RuleName::equality(), Derivation::leaf(Formula::one()),
        compose_seq(std::move(split), std::move(back)));
  }
}

}  // namespace dtsa

#endif  // DTSA_PROJECT_HPP
