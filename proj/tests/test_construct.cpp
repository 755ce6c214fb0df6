#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <vector>

#include "dtsa/construct.hpp"
#include "support/enumerate.hpp"
#include "support/gen.hpp"

using namespace dtsa;
using dtsa_tests::contexts_of_size;
using dtsa_tests::formulas_up_to;
using dtsa_tests::random_formula;
using dtsa_tests::Rng;

namespace {

Formula F(const std::string& s) { return parse_formula(s); }
Connective at(const char* a) { return Connective::atom_conn(a); }

struct Counts {
  bool valid;
  std::size_t cuts, identities;
};

Counts audit(const Derivation& d) {
  CheckReport rep = check(d);
  return Counts{rep.valid, rep.cuts.size(), rep.identities.size()};
}

void require_clean(const Derivation& d, bool no_cuts = true,
                   bool no_identities = false) {
  Counts c = audit(d);
  REQUIRE(c.valid);
  if (no_cuts) REQUIRE(c.cuts == 0);
  if (no_identities) REQUIRE(c.identities == 0);
}

void require_semantically_equal(const Formula& f, const Formula& g) {
  std::set<Atom> as = atoms(f);
  collect_atoms(g, as);
  std::vector<Atom> av(as.begin(), as.end());
  REQUIRE(av.size() <= 10);
  for (std::uint64_t mask = 0; mask < (1u << av.size()); ++mask) {
    Assignment x;
    for (std::size_t i = 0; i < av.size(); ++i) x[av[i]] = (mask >> i) & 1;
    REQUIRE(evaluate(f, x) == evaluate(g, x));
  }
}

std::size_t count_rule(const Derivation& d, const RuleName& n) {
  switch (d.kind()) {
    case Derivation::Kind::Leaf: return 0;
    case Derivation::Kind::Horiz:
      return count_rule(d.left(), n) + count_rule(d.right(), n);
    default:
      return (d.rule() == n ? 1 : 0) + count_rule(d.upper(), n) +
             count_rule(d.lower(), n);
  }
}

}  // namespace

TEST_CASE("weakening and coweakening") {
  // the unit gadget: 0 = (0&1)|(1&0) -> switch -> (0|1)&(1|0) = 1
  Derivation one = weakening(Formula::one());
  REQUIRE(one.premiss() == Formula::zero());
  REQUIRE(one.conclusion() == Formula::one());
  REQUIRE(one.height() == 3);
  require_clean(one, true, true);
  REQUIRE(count_rule(one, RuleName::down(Connective::conj(),
                                         Connective::disj())) == 1);

  REQUIRE(weakening(Formula::zero()) == Derivation::leaf(Formula::zero()));

  Derivation w = weakening(F("(1 a 0)"));
  REQUIRE(w.premiss() == Formula::zero());
  REQUIRE(w.conclusion() == F("(1 a 0)"));
  require_clean(w, true, true);

  Derivation cow = coweakening(F("(1 a 0)"));
  REQUIRE(cow.premiss() == F("(1 a 0)"));
  REQUIRE(cow.conclusion() == Formula::one());
  require_clean(cow, true, true);
  REQUIRE(cow == dualize(weakening(negate(F("(1 a 0)")))));

  // width linear, height constant
  for (const Formula& f : formulas_up_to(4, {"a", "b"})) {
    Derivation d = weakening(f);
    REQUIRE(d.premiss() == Formula::zero());
    REQUIRE(d.conclusion() == f);
    REQUIRE(d.width() <= 4 * f.size());
    REQUIRE(d.height() <= 4);
  }
  require_clean(weakening(F("((0 a 1) & ((1 b 0) | 1))")), true, true);
}

TEST_CASE("unit attachment") {
  // base cases
  Derivation base1 = attach_unit(Formula::one(), "a", AttachSide::Right1);
  REQUIRE(base1 == Derivation::step(RuleName::equality(),
                                    Derivation::leaf(Formula::one()),
                                    Derivation::leaf(F("(1 a 1)"))));
  Derivation base0 = attach_unit(Formula::zero(), "a", AttachSide::Right1);
  REQUIRE(base0.premiss() == Formula::zero());
  REQUIRE(base0.conclusion() == F("(0 a 1)"));
  require_clean(base0, true, true);

  Derivation d = attach_unit(F("(0 b 1)"), "a", AttachSide::Right1);
  REQUIRE(d.premiss() == F("(0 b 1)"));
  REQUIRE(d.conclusion() == F("((0 b 1) a 1)"));
  require_clean(d, true, true);
  REQUIRE(count_rule(d, RuleName::up(at("b"), at("a"))) == 1);

  for (const Formula& f : formulas_up_to(4, {"a", "b"})) {
    Derivation r1 = attach_unit(f, "a", AttachSide::Right1);
    REQUIRE(r1.premiss() == f);
    REQUIRE(r1.conclusion() == make_atom("a", f, Formula::one()));
    Derivation l1 = attach_unit(f, "a", AttachSide::Left1);
    REQUIRE(l1.premiss() == f);
    REQUIRE(l1.conclusion() == make_atom("a", Formula::one(), f));
    Derivation r0 = attach_unit(f, "a", AttachSide::Right0Elim);
    REQUIRE(r0.premiss() == make_atom("a", f, Formula::zero()));
    REQUIRE(r0.conclusion() == f);
    Derivation l0 = attach_unit(f, "a", AttachSide::Left0Elim);
    REQUIRE(l0.premiss() == make_atom("a", Formula::zero(), f));
    REQUIRE(l0.conclusion() == f);
    for (const Derivation* x : {&r1, &l1, &r0, &l0}) {
      require_clean(*x, true, true);
      REQUIRE(x->height() <= 4 * f.size());
      REQUIRE(x->width() <= 6 * f.size() + 4);
    }
  }
}

TEST_CASE("nesting and un-nesting") {
  Derivation u = nest(F("1"), F("0"), "a", NestDirection::Unnest);
  REQUIRE(u.premiss() == F("(1 a 0)"));
  REQUIRE(u.conclusion() == F("((1 & (1 a 0)) | ((0 a 1) & 0))"));
  require_clean(u, true, false);

  // renest with B = 0 engages the patched subderivation
  Derivation r = nest(F("0"), F("1"), "a", NestDirection::Renest);
  REQUIRE(r.premiss() == F("((0 & (1 a 0)) | ((0 a 1) & 1))"));
  REQUIRE(r.conclusion() == F("(0 a 1)"));
  require_clean(r, true, false);

  // both directions, exhaustively over small formulae
  for (const Formula& b : formulas_up_to(3, {"a", "b"}))
    for (const Formula& c : formulas_up_to(3, {"a", "b"})) {
      Derivation un = nest(b, c, "a", NestDirection::Unnest);
      REQUIRE(un.premiss() == make_atom("a", b, c));
      require_clean(un, true, false);
      Derivation re = nest(b, c, "a", NestDirection::Renest);
      REQUIRE(re.conclusion() == make_atom("a", b, c));
      REQUIRE(re.premiss() == un.conclusion());
      require_clean(re, true, false);
      require_semantically_equal(un.premiss(), un.conclusion());
    }
}

TEST_CASE("contraction and cocontraction") {
  Derivation z = contraction(Formula::zero(), Connective::disj());
  REQUIRE(z == Derivation::step(RuleName::equality(),
                                Derivation::leaf(F("(0 | 0)")),
                                Derivation::leaf(Formula::zero())));

  Derivation d = contraction(F("(0 b 1)"), Connective::disj());
  REQUIRE(d.premiss() == F("((0 b 1) | (0 b 1))"));
  REQUIRE(d.conclusion() == F("(0 b 1)"));
  require_clean(d, true, true);
  REQUIRE(count_rule(d, RuleName::down(at("b"), Connective::disj())) == 1);

  REQUIRE_THROWS_AS(contraction(F("1"), Connective::conj()), SemanticError);
  REQUIRE_THROWS_AS(cocontraction(F("1"), Connective::disj()), SemanticError);

  REQUIRE(cocontraction(F("(0 a 1)"), Connective::conj()) ==
          dualize(contraction(negate(F("(0 a 1)")), Connective::disj())));

  std::vector<Connective> alphas{Connective::disj(), at("a"), at("b")};
  for (const Formula& f : formulas_up_to(4, {"a", "b"}))
    for (const Connective& alpha : alphas) {
      Derivation c = contraction(f, alpha);
      REQUIRE(c.premiss() == Formula::node(alpha, f, f));
      REQUIRE(c.conclusion() == f);
      require_clean(c, true, true);
      REQUIRE(c.size() <= 6 * f.size() * f.size());
      Derivation cc = cocontraction(f, alpha.is_or() ? Connective::conj()
                                                     : alpha);
      REQUIRE(cc.premiss() == f);
      require_clean(cc, true, true);
    }
}

TEST_CASE("merge") {
  REQUIRE(merge_in(Context::hole(), F("(0 a 1)"), F("1")) ==
          Derivation::leaf(F("((0 a 1) & 1)")));

  Derivation d = merge_in(parse_context("({} c 1)"), F("1"), F("(0 d 1)"));
  REQUIRE(d.premiss() == F("((1 c 1) & (0 d 1))"));
  REQUIRE(d.conclusion() == F("((1 & (0 d 1)) c 1)"));
  require_clean(d, true, true);

  // the corner where the plain atom case would be a cut
  Derivation corner = merge_in(parse_context("({} a 0)"), F("1"), F("0"));
  REQUIRE(corner.premiss() == F("((1 a 0) & 0)"));
  REQUIRE(corner.conclusion() == F("((1 & 0) a 0)"));
  require_clean(corner, true, true);
  Derivation corner2 =
      merge_in(parse_context("(0 a {})"), F("1"), F("(0 | 0)"));
  require_clean(corner2, true, true);

  Derivation out = merge_out(parse_context("({} c 1)"), F("1"), F("(0 d 1)"));
  REQUIRE(out.premiss() == F("((1 | (0 d 1)) c 1)"));
  REQUIRE(out.conclusion() == F("((1 c 1) | (0 d 1))"));
  require_clean(out, true, true);

  for (std::size_t m = 0; m <= 2; ++m)
    for (const Context& k : contexts_of_size(m, {"a", "b"}))
      for (const Formula& a : formulas_up_to(2, {"a"}))
        for (const Formula& b : formulas_up_to(2, {"b"})) {
          Derivation g = merge_in(k, a, b);
          REQUIRE(g.premiss() == make_and(k.plug(a), b));
          REQUIRE(g.conclusion() == k.plug(make_and(a, b)));
          require_clean(g, true, true);
          std::size_t bound = m + a.size() + b.size();
          REQUIRE(g.width() <= 6 * bound);
          REQUIRE(g.height() <= 8 * (m * b.size() + 1));
        }
}

TEST_CASE("dt-weakening") {
  Derivation d = dt_weakening(Context::hole(), F("1"), F("0"), F("(0 b 1)"),
                              "a", DtwSide::Left);
  REQUIRE(d.premiss() == F("(1 a (0 b 1))"));
  REQUIRE(d.conclusion() == F("((1 a 0) a (0 b 1))"));
  require_clean(d, true, false);
  require_semantically_equal(d.premiss(), d.conclusion());

  Derivation r = dt_weakening(Context::hole(), F("1"), F("0"), F("(0 b 1)"),
                              "a", DtwSide::Right);
  REQUIRE(r.premiss() == F("((0 b 1) a 1)"));
  REQUIRE(r.conclusion() == F("((0 b 1) a (0 a 1))"));
  require_clean(r, true, false);

  for (std::size_t m = 0; m <= 2; ++m)
    for (const Context& k : contexts_of_size(m, {"b"}))
      for (const Formula& a : formulas_up_to(2, {"b"}))
        for (const Formula& b : formulas_up_to(2, {"c"})) {
          Formula c = F("(0 b 1)");
          Derivation left =
              dt_weakening(k, a, b, c, "a", DtwSide::Left);
          REQUIRE(left.premiss() == make_atom("a", k.plug(a), c));
          REQUIRE(left.conclusion() ==
                  make_atom("a", k.plug(make_atom("a", a, b)), c));
          require_clean(left, true, false);
          require_semantically_equal(left.premiss(), left.conclusion());
          Derivation right =
              dt_weakening(k, a, b, c, "a", DtwSide::Right);
          REQUIRE(right.premiss() == make_atom("a", c, k.plug(a)));
          REQUIRE(right.conclusion() ==
                  make_atom("a", c, k.plug(make_atom("a", b, a))));
          require_clean(right, true, false);
        }
}

TEST_CASE("reorder") {
  REQUIRE(reorder_up(Formula::one(), "a") ==
          Derivation::step(RuleName::equality(),
                           Derivation::leaf(F("(1 a 1)")),
                           Derivation::leaf(Formula::one())));

  Formula f = F("((0 a 1) & (1 a 0))");
  Derivation d = reorder_up(f, "a");
  REQUIRE(d.premiss() == F("((0 & 1) a (1 & 0))"));
  REQUIRE(d.conclusion() == f);
  require_clean(d, true, false);

  // nested occurrence engages the dt-weakening case
  Formula g = F("((0 a 1) a 1)");
  Derivation dn = reorder_up(g, "a");
  REQUIRE(dn.premiss() == F("(0 a 1)"));
  REQUIRE(dn.conclusion() == g);
  require_clean(dn, true, false);
  REQUIRE(dn.size() > reorder_up(F("((0 b 1) a 1)"), "a").size());

  // non-nested target atom at the root degenerates to a leaf
  REQUIRE(reorder_up(F("(0 a 1)"), "a") == Derivation::leaf(F("(0 a 1)")));

  for (const Formula& h : formulas_up_to(4, {"a", "b"})) {
    Derivation up = reorder_up(h, "a");
    REQUIRE(up.premiss() ==
            make_atom("a", project_formula(h, "a", Side::Left),
                      project_formula(h, "a", Side::Right)));
    REQUIRE(up.conclusion() == h);
    require_clean(up, true, false);

    Derivation down = reorder_down(h, "a");
    REQUIRE(down.premiss() == h);
    REQUIRE(down.conclusion() == up.premiss());
    CheckReport rep = check(down);
    REQUIRE(rep.valid);
    REQUIRE(rep.identities.empty());
  }
}

TEST_CASE("flattening to the propositional fragment") {
  Formula flat = F("((1 a 0) | (0 b 1))");
  FlattenResult triv = flatten_to_prop(flat);
  REQUIRE(triv.prop == flat);
  REQUIRE(triv.down == Derivation::leaf(flat));
  REQUIRE(triv.up == Derivation::leaf(flat));

  Formula g = F("((1 b 0) a 1)");
  FlattenResult res = flatten_to_prop(g);
  REQUIRE(nesting_free(res.prop));
  Sublanguage cls = classify(res.prop);
  REQUIRE((cls == Sublanguage::Prop || cls == Sublanguage::Both));
  REQUIRE(res.down.premiss() == g);
  REQUIRE(res.down.conclusion() == res.prop);
  REQUIRE(res.up.premiss() == res.prop);
  REQUIRE(res.up.conclusion() == g);
  require_clean(res.down, true, false);
  require_clean(res.up, true, false);
  require_semantically_equal(g, res.prop);

  Rng rng(41);
  for (int i = 0; i < 60; ++i) {
    Formula h = random_formula(rng, 8, {"a", "b", "c"});
    FlattenResult fr = flatten_to_prop(h);
    REQUIRE(nesting_free(fr.prop));
    REQUIRE(fr.down.premiss() == h);
    REQUIRE(fr.down.conclusion() == fr.prop);
    REQUIRE(fr.up.conclusion() == h);
    require_clean(fr.down, true, false);
    require_clean(fr.up, true, false);
    require_semantically_equal(h, fr.prop);
  }
}

TEST_CASE("ac rearrangement") {
  Formula f = F("((0 a 1) | (0 b 1))");
  Formula g = F("((0 b 1) | (0 a 1))");
  Derivation d = ac_derivation(f, g);
  REQUIRE(d.premiss() == f);
  REQUIRE(d.conclusion() == g);
  require_clean(d, true, true);
  REQUIRE(count_rule(d, RuleName::down(Connective::disj(),
                                       Connective::disj())) == 1);

  REQUIRE(ac_derivation(f, f) == Derivation::leaf(f));

  Formula h1 = F("((0 | (0 a 1)) | 1)");
  Formula h2 = F("(0 | ((0 a 1) | 1))");
  Derivation re = ac_derivation(h1, h2);
  REQUIRE(re.premiss() == h1);
  REQUIRE(re.conclusion() == h2);
  require_clean(re, true, true);

  // and-mode
  Formula c1 = F("((1 & (0 a 1)) & 0)");
  Formula c2 = F("(0 & ((0 a 1) & 1))");
  Derivation dc = ac_derivation(c1, c2);
  REQUIRE(dc.premiss() == c1);
  REQUIRE(dc.conclusion() == c2);
  require_clean(dc, true, true);

  REQUIRE_THROWS_AS(ac_derivation(F("(0 | 1)"), F("(0 | 0)")), SemanticError);
  REQUIRE_THROWS_AS(ac_derivation(F("(0 | 1)"), F("(0 & 1)")), SemanticError);
  REQUIRE_THROWS_AS(ac_derivation(F("(0 | 1)"), F("((0 | 1) | 1)")),
                    SemanticError);

  Rng rng(42);
  for (int i = 0; i < 80; ++i) {
    // random or-tree, then a random reassociation/permutation of it
    std::vector<Formula> ops;
    std::size_t k = 2 + rng.below(4);
    for (std::size_t j = 0; j < k; ++j)
      ops.push_back(random_formula(rng, 3, {"a", "b"}));
    auto build = [&](auto self, std::size_t lo, std::size_t hi) -> Formula {
      if (hi - lo == 1) return ops[lo];
      std::size_t mid = lo + 1 + rng.below(hi - lo - 1);
      return make_or(self(self, lo, mid), self(self, mid, hi));
    };
    Formula from = build(build, 0, ops.size());
    for (std::size_t j = 0; j + 1 < ops.size(); ++j)
      std::swap(ops[j], ops[j + rng.below(ops.size() - j)]);
    Formula to = build(build, 0, ops.size());
    Derivation r = ac_derivation(from, to);
    REQUIRE(r.premiss() == from);
    REQUIRE(r.conclusion() == to);
    require_clean(r, true, true);
  }
}
