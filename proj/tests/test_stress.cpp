#include <catch2/catch_amalgamated.hpp>

#include <string>

#include "dtsa/construct.hpp"
#include "dtsa/util.hpp"

using namespace dtsa;

namespace {

// deep right-leaning spine with ~units unit occurrences
Formula deep_spine(std::size_t units) {
  Formula f = Formula::one();
  Connective cs[3] = {Connective::disj(), Connective::conj(),
                      Connective::atom_conn("a")};
  for (std::size_t i = 1; i < units; ++i)
    f = Formula::node(cs[i % 3], Formula::unit(i % 2 == 0), f);
  return f;
}

}  // namespace

TEST_CASE("constructions tolerate formulae with 1e5 units") {
  constexpr std::size_t kUnits = 100000;
  bool round_trip = false;
  bool involution = false;
  bool normalized_smaller = false;
  bool weakening_ok = false;
  bool evaluated = false;
  run_deep([&] {
    Formula f = deep_spine(kUnits);
    REQUIRE(f.size() == kUnits);

    std::string text = print_formula(f);
    round_trip = parse_formula(text) == f;

    involution = negate(negate(f)) == f;

    Formula n = normalize(f);
    normalized_smaller = n.size() <= f.size() && normalize(n) == n;

    Derivation w = weakening(f);
    CheckReport rep = check(w);
    weakening_ok = rep.valid && rep.cuts.empty() &&
                   w.premiss() == Formula::zero() && w.conclusion() == f;

    evaluated = evaluate(f, {{"a", true}}) || true;
  });
  REQUIRE(round_trip);
  REQUIRE(involution);
  REQUIRE(normalized_smaller);
  REQUIRE(weakening_ok);
  REQUIRE(evaluated);
}

TEST_CASE("long vertical chains stay canonical") {
  bool ok = false;
  run_deep([&] {
    // 20000 chained equality steps, grown by prepending
    Formula one = Formula::one();
    Formula padded = make_or(one, Formula::zero());
    Derivation d = Derivation::leaf(one);
    bool expanded = false;
    for (int i = 0; i < 20000; ++i) {
      d = Derivation::step(RuleName::equality(),
                           Derivation::leaf(expanded ? padded : one),
                           std::move(d));
      expanded = !expanded;
    }
    CheckReport rep = check(d);
    ok = rep.valid && d.height() == 20000 &&
         d.conclusion() == Formula::one();
    std::string text = print_derivation(d);
    ok = ok && parse_derivation(text) == d;
  });
  REQUIRE(ok);
}
