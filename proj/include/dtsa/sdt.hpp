// Translation to strict decision trees with derivation certificates, RODT
// reduction, the certified apply algorithm, and the decision-tree-based
// cut-free tautology prover.

#ifndef DTSA_SDT_HPP
#define DTSA_SDT_HPP

#include <map>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "dtsa/construct.hpp"
#include "dtsa/derivation.hpp"

namespace dtsa {

using AtomOrder = std::vector<Atom>;

namespace detail {

using RankMap = std::map<Atom, std::size_t>;

inline RankMap rank_of(const AtomOrder& order) {
  RankMap r;
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (!r.emplace(order[i], i).second)
      throw SemanticError("atom order lists '" + order[i] + "' twice");
  }
  return r;
}

inline std::size_t rank_at(const RankMap& r, const Atom& a) {
  auto it = r.find(a);
  if (it == r.end())
    throw SemanticError("atom order does not cover atom '" + a + "'");
  return it->second;
}

// Ordered strict decision tree B for A together with a derivation B -> A:
// split on the smallest atom, recurse on the projections, rejoin by reorder.
inline std::pair<Formula, Derivation> sdt_up(const Formula& f,
                                             const RankMap& rank) {
  std::set<Atom> as = atoms(f);
  if (as.empty()) {
    Formula u = normalize(f);
    if (!u.is_unit())
      throw SemanticError("atomless formula did not normalize to a unit");
    if (u == f) return {u, Derivation::leaf(f)};
    return {u, eq_step(u, f)};
  }
  const Atom* best = nullptr;
  std::size_t best_rank = 0;
  for (const Atom& a : as) {
    std::size_t r = rank_at(rank, a);
    if (!best || r < best_rank) {
      best = &a;
      best_rank = r;
    }
  }
  Atom a = *best;
  auto [c, up_c] = sdt_up(project_formula(f, a, Side::Left), rank);
  auto [d, up_d] = sdt_up(project_formula(f, a, Side::Right), rank);
  Connective ac = Connective::atom_conn(a);
  Formula b = Formula::node(ac, c, d);
  Derivation up = compose_seq(
      Derivation::horiz(ac, std::move(up_c), std::move(up_d)),
      reorder_up(f, a));
  return {std::move(b), std::move(up)};
}

}  // namespace detail

inline AtomOrder default_order(const Formula& f) {
  std::set<Atom> as = atoms(f);
  return AtomOrder(as.begin(), as.end());
}

// Strict decision tree: atoms and units only.
inline bool is_strict_sdt(const Formula& f) {
  if (f.is_unit()) return true;
  if (!f.conn().is_atom()) return false;
  return is_strict_sdt(f.left()) && is_strict_sdt(f.right());
}

namespace detail {
inline bool ordered_below(const Formula& f, const RankMap& rank,
                          std::size_t bound, bool have_bound) {
  if (f.is_unit()) return true;
  if (!f.conn().is_atom()) return false;
  std::size_t r = rank_at(rank, f.conn().atom);
  if (have_bound && r <= bound) return false;
  return ordered_below(f.left(), rank, r, true) &&
         ordered_below(f.right(), rank, r, true);
}
}  // namespace detail

// Ordered strict decision tree: along every root-leaf path the atom ranks
// strictly increase.
inline bool is_ordered_sdt(const Formula& f, const AtomOrder& order) {
  return detail::ordered_below(f, detail::rank_of(order), 0, false);
}

inline bool is_rodt_reduced(const Formula& f) {
  if (f.is_unit()) return true;
  if (f.left() == f.right()) return false;
  return is_rodt_reduced(f.left()) && is_rodt_reduced(f.right());
}

inline bool is_rodt(const Formula& f, const AtomOrder& order) {
  return is_ordered_sdt(f, order) && is_rodt_reduced(f);
}

struct SdtResult {
  Formula sdt;
  Derivation up;    // sdt -> A
  Derivation down;  // A -> sdt
};

inline SdtResult to_sdt(const Formula& f, const AtomOrder& order) {
  detail::RankMap rank = detail::rank_of(order);
  auto [b, up] = detail::sdt_up(f, rank);
  auto [nb, up_neg] = detail::sdt_up(negate(f), rank);
  Derivation down = dualize(up_neg);
  if (down.premiss() != f || down.conclusion() != b)
    throw SemanticError("to_sdt: dual route produced mismatched tree");
  return SdtResult{std::move(b), std::move(up), std::move(down)};
}

namespace detail {
// Precedence edges must be acyclic for some total order to exist.
inline void collect_prec(const Formula& f, const Atom* parent,
                         std::map<Atom, std::set<Atom>>& edges, bool& bad) {
  if (f.is_unit() || bad) return;
  const Atom& a = f.conn().atom;
  if (parent) {
    if (*parent == a) {
      bad = true;  // repeated atom along a path
      return;
    }
    edges[*parent].insert(a);
  }
  collect_prec(f.left(), &a, edges, bad);
  collect_prec(f.right(), &a, edges, bad);
}
}  // namespace detail

// Replaces every subformula (X a X) by X, bottom-up; input must be an
// ordered strict decision tree for some total order.
inline Formula reduce_rodt(const Formula& f) {
  if (!is_strict_sdt(f))
    throw SemanticError("reduce_rodt: input is not a strict decision tree");
  {
    std::map<Atom, std::set<Atom>> edges;
    bool bad = false;
    detail::collect_prec(f, nullptr, edges, bad);
    if (!bad) {
      // cycle check by depth-first search over the precedence graph
      std::map<Atom, int> state;
      std::vector<std::pair<Atom, bool>> stack;
      for (const auto& [root, _] : edges) {
        if (state[root]) continue;
        stack.push_back({root, false});
        while (!stack.empty() && !bad) {
          auto [node, done] = stack.back();
          stack.pop_back();
          if (done) {
            state[node] = 2;
            continue;
          }
          if (state[node] == 1) continue;
          state[node] = 1;
          stack.push_back({node, true});
          for (const Atom& next : edges[node]) {
            if (state[next] == 1) bad = true;
            if (state[next] == 0) stack.push_back({next, false});
          }
        }
      }
    }
    if (bad) throw SemanticError("reduce_rodt: input is not ordered");
  }
  struct R {
    static Formula go(const Formula& g) {
      if (g.is_unit()) return g;
      Formula l = go(g.left());
      Formula r = go(g.right());
      if (l == r) return l;
      if (l == g.left() && r == g.right()) return g;
      return Formula::node(g.conn(), std::move(l), std::move(r));
    }
  };
  return R::go(f);
}

// ── Certified apply ─────────────────────────────────────────────────────────

struct ApplyResult {
  Formula rodt;
  Derivation cert;  // (A conn B) -> rodt
};

namespace detail {

inline ApplyResult apply_rec(const Formula& a, const Formula& b,
                             const Connective& conn, const RankMap& rank) {
  if (a.is_unit() && b.is_unit()) {
    bool va = a.unit_value(), vb = b.unit_value();
    bool v = conn.is_and() ? (va && vb) : (va || vb);
    Formula from = Formula::node(conn, a, b);
    return ApplyResult{Formula::unit(v), eq_step(from, Formula::unit(v))};
  }
  bool a_split = a.is_node();
  bool b_split = b.is_node();
  if (a_split && b_split) {
    std::size_t ra = rank_at(rank, a.conn().atom);
    std::size_t rb = rank_at(rank, b.conn().atom);
    a_split = ra <= rb;
    b_split = rb <= ra;
  }
  Atom v = a_split ? a.conn().atom : b.conn().atom;
  Connective vc = Connective::atom_conn(v);

  Formula a0 = a_split ? a.left() : a;
  Formula a1 = a_split ? a.right() : a;
  Formula b0 = b_split ? b.left() : b;
  Formula b1 = b_split ? b.right() : b;
  Derivation da =
      a_split ? Derivation::leaf(a) : cocontraction(a, vc);
  Derivation db =
      b_split ? Derivation::leaf(b) : cocontraction(b, vc);

  ApplyResult r0 = apply_rec(a0, b0, conn, rank);
  ApplyResult r1 = apply_rec(a1, b1, conn, rank);

  Derivation chain = Derivation::step(
      RuleName::up(conn, vc),
      Derivation::horiz(conn, std::move(da), std::move(db)),
      Derivation::horiz(vc, std::move(r0.cert), std::move(r1.cert)));

  if (r0.rodt == r1.rodt) {
    Derivation collapse =
        r0.rodt.is_unit()
            ? eq_step(Formula::node(vc, r0.rodt, r1.rodt), r0.rodt)
            : contraction(r0.rodt, vc);
    return ApplyResult{r0.rodt,
                       compose_seq(std::move(chain), std::move(collapse))};
  }
  return ApplyResult{Formula::node(vc, r0.rodt, r1.rodt), std::move(chain)};
}

}  // namespace detail

// Combines two RODTs over the same order under `and` / `or`, returning the
// reduced ordered result and a checker-valid certificate derivation.
inline ApplyResult apply_rodt(const Formula& a, const Formula& b,
                              const Connective& conn, const AtomOrder& order) {
  if (!conn.is_and() && !conn.is_or())
    throw SemanticError("apply: connective must be 'and' or 'or'");
  detail::RankMap rank = detail::rank_of(order);
  if (!is_rodt(a, order) || !is_rodt(b, order))
    throw SemanticError("apply: inputs must be reduced ordered decision "
                        "trees respecting the given order");
  return detail::apply_rec(a, b, conn, rank);
}

// ── Decision-procedure prover ───────────────────────────────────────────────

struct ProveResult {
  bool tautology = false;
  Derivation proof;     // cut-free proof of the input when tautology
  Assignment witness;   // falsifying assignment otherwise
};

inline ProveResult prove_tautology(const Formula& f,
                                   unsigned atom_limit = kDefaultAtomLimit) {
  std::set<Atom> as = atoms(f);
  if (as.size() > atom_limit)
    throw SemanticError("atom count " + std::to_string(as.size()) +
                        " exceeds exhaustion limit " +
                        std::to_string(atom_limit));
  AtomOrder order(as.begin(), as.end());
  detail::RankMap rank = detail::rank_of(order);
  auto [b, up] = detail::sdt_up(f, rank);
  if (normalize(b) == Formula::one()) {
    ProveResult res;
    res.tautology = true;
    res.proof = b == Formula::one()
                    ? std::move(up)
                    : Derivation::step(RuleName::equality(),
                                       Derivation::leaf(Formula::one()),
                                       std::move(up));
    return res;
  }
  // walk the tree towards a 0-leaf for a falsifying assignment
  struct Z {
    static bool has_zero(const Formula& g) {
      if (g.is_unit()) return g.is_zero();
      return has_zero(g.left()) || has_zero(g.right());
    }
  };
  ProveResult res;
  Formula cur = b;
  while (cur.is_node()) {
    if (Z::has_zero(cur.left())) {
      res.witness[cur.conn().atom] = false;
      cur = cur.left();
    } else {
      res.witness[cur.conn().atom] = true;
      cur = cur.right();
    }
  }
  for (const Atom& a : as)
    if (!res.witness.count(a)) res.witness[a] = false;
  return res;
}

}  // namespace dtsa

#endif  // DTSA_SDT_HPP
