// The subatomic rule scheme.  Every non-equality inference is an instance of
//
//   up(x,y):    (A y B) x (C y^ D)   over   (A x C) y (B x D)
//   down(x,y):  (A x B) y (C x D)    over   (A y C) x (B y' D)
//
// where y^ is the stronger and y' the weaker partner of a connective, plus
// equality steps for the unit theory.  A mirrored name checks the same
// pattern with the children of the three matched nodes of premiss and
// conclusion swapped.

#ifndef DTSA_RULES_HPP
#define DTSA_RULES_HPP

#include <array>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dtsa/formula.hpp"

namespace dtsa {

// ── Rule names ──────────────────────────────────────────────────────────────

struct RuleName {
  enum class Kind : std::uint8_t { Equality, Up, Down };

  Kind kind = Kind::Equality;
  Connective first, second;  // name letters, left to right; unset for eq
  bool mirrored = false;

  static RuleName equality() { return RuleName{}; }
  static RuleName up(Connective alpha, Connective beta, bool mirrored = false) {
    return RuleName{Kind::Up, std::move(alpha), std::move(beta), mirrored};
  }
  static RuleName down(Connective beta, Connective alpha,
                       bool mirrored = false) {
    return RuleName{Kind::Down, std::move(beta), std::move(alpha), mirrored};
  }

  bool is_equality() const { return kind == Kind::Equality; }
  bool is_up() const { return kind == Kind::Up; }
  bool is_down() const { return kind == Kind::Down; }

  // Either name letter mentions the given atom.
  bool mentions(const Atom& a) const {
    return !is_equality() && (first.is_atom(a) || second.is_atom(a));
  }

  RuleName dual() const {
    switch (kind) {
      case Kind::Up: return down(first.dual(), second.dual(), mirrored);
      case Kind::Down: return up(first.dual(), second.dual(), mirrored);
      default: return equality();
    }
  }
  RuleName with_mirrored(bool m) const {
    RuleName r = *this;
    r.mirrored = is_equality() ? false : m;
    return r;
  }

  bool operator==(const RuleName& o) const {
    if (kind != o.kind) return false;
    if (kind == Kind::Equality) return true;
    return first == o.first && second == o.second && mirrored == o.mirrored;
  }
  bool operator!=(const RuleName& o) const { return !(*this == o); }

  // Text syntax: up(<c>,<c>) / down(<c>,<c>) / eq, suffix ~ when mirrored.
  std::string to_string() const {
    if (is_equality()) return "eq";
    std::string s = is_up() ? "up(" : "down(";
    s += first.word();
    s += ',';
    s += second.word();
    s += ')';
    if (mirrored) s += '~';
    return s;
  }
};

namespace detail {

inline Connective word_to_conn(const std::string& w, std::size_t at) {
  if (w == "or") return Connective::disj();
  if (w == "and") return Connective::conj();
  if (!valid_atom_name(w)) throw ParseError("bad connective '" + w + "'", at);
  return Connective::atom_conn(w);
}

inline RuleName parse_rule_name_at(Cursor& c) {
  std::size_t start = c.pos;
  std::string head = c.ident();
  if (head == "eq") return RuleName::equality();
  if (head != "up" && head != "down")
    throw ParseError("expected rule name", start);
  c.expect('(');
  std::size_t p1 = c.pos;
  Connective a = word_to_conn(c.ident(), p1);
  c.expect(',');
  std::size_t p2 = c.pos;
  Connective b = word_to_conn(c.ident(), p2);
  c.expect(')');
  bool mirrored = false;
  c.skip_ws();
  if (c.pos < c.text.size() && c.text[c.pos] == '~') {
    mirrored = true;
    ++c.pos;
  }
  return head == "up" ? RuleName::up(a, b, mirrored)
                      : RuleName::down(a, b, mirrored);
}

}  // namespace detail

inline RuleName parse_rule_name(const std::string& text) {
  detail::Cursor c{text};
  RuleName r = detail::parse_rule_name_at(c);
  if (!c.eof()) throw ParseError("trailing input after rule name", c.pos);
  return r;
}

// ── Instance matching ───────────────────────────────────────────────────────

struct RuleInstance {
  RuleName name;
  Formula premiss, conclusion;
};

namespace detail {

// Swaps the children of the root and of both its children; the mirrored
// pattern of a two-level scheme is exactly the plain pattern after this map.
inline std::optional<Formula> mirror_top3(const Formula& f) {
  if (f.is_unit() || f.left().is_unit() || f.right().is_unit())
    return std::nullopt;
  auto sw = [](const Formula& g) {
    return Formula::node(g.conn(), g.right(), g.left());
  };
  return Formula::node(f.conn(), sw(f.right()), sw(f.left()));
}

struct Quad {
  Formula a, b, c, d;
};

// Reads A,B,C,D off the premiss of an unmirrored instance and verifies both
// premiss and conclusion shapes; syntactic identity throughout.
inline std::optional<Quad> match_plain(const RuleName& n, const Formula& p,
                                       const Formula& q) {
  if (p.is_unit() || q.is_unit()) return std::nullopt;
  if (p.left().is_unit() || p.right().is_unit()) return std::nullopt;
  if (q.left().is_unit() || q.right().is_unit()) return std::nullopt;
  const Formula &pl = p.left(), &pr = p.right();
  const Formula &ql = q.left(), &qr = q.right();
  if (n.is_up()) {
    const Connective &alpha = n.first, &beta = n.second;
    if (p.conn() != alpha || pl.conn() != beta ||
        pr.conn() != beta.stronger())
      return std::nullopt;
    if (q.conn() != beta || ql.conn() != alpha || qr.conn() != alpha)
      return std::nullopt;
    Quad m{pl.left(), pl.right(), pr.left(), pr.right()};
    if (ql.left() != m.a || ql.right() != m.c) return std::nullopt;
    if (qr.left() != m.b || qr.right() != m.d) return std::nullopt;
    return m;
  }
  const Connective &beta = n.first, &alpha = n.second;
  if (p.conn() != alpha || pl.conn() != beta || pr.conn() != beta)
    return std::nullopt;
  if (q.conn() != beta || ql.conn() != alpha ||
      qr.conn() != alpha.weaker())
    return std::nullopt;
  Quad m{pl.left(), pl.right(), pr.left(), pr.right()};
  if (ql.left() != m.a || ql.right() != m.c) return std::nullopt;
  if (qr.left() != m.b || qr.right() != m.d) return std::nullopt;
  return m;
}

inline std::optional<Quad> match_instance(const RuleName& n, const Formula& p,
                                          const Formula& q) {
  if (n.is_equality()) return std::nullopt;
  if (!n.mirrored) return match_plain(n, p, q);
  auto mp = mirror_top3(p);
  auto mq = mirror_top3(q);
  if (!mp || !mq) return std::nullopt;
  return match_plain(n.with_mirrored(false), *mp, *mq);
}

}  // namespace detail

inline bool valid_instance(const RuleName& name, const Formula& premiss,
                           const Formula& conclusion) {
  if (name.is_equality()) return equal_mod_units(premiss, conclusion);
  return detail::match_instance(name, premiss, conclusion).has_value();
}

// A cut is an up(and,a) instance whose quadruple is (0,1,1,0) or (1,0,0,1)
// modulo units; mirrored cuts are detected through the mirrored pattern.
inline bool is_cut(const RuleInstance& inst) {
  const RuleName& n = inst.name;
  if (!n.is_up() || !n.first.is_and() || !n.second.is_atom()) return false;
  auto m = detail::match_instance(n, inst.premiss, inst.conclusion);
  if (!m) return false;
  Formula a = normalize(m->a), b = normalize(m->b);
  Formula c = normalize(m->c), d = normalize(m->d);
  Formula z = Formula::zero(), o = Formula::one();
  return (a == z && d == z && b == o && c == o) ||
         (a == o && d == o && b == z && c == z);
}

// An identity is the dual of a cut; checked by dualising the instance.
inline bool is_identity(const RuleInstance& inst) {
  RuleInstance dual_inst{inst.name.dual(), negate(inst.conclusion),
                         negate(inst.premiss)};
  return is_cut(dual_inst);
}

// All up/down names over {or, and} and the given atoms, with the equality
// name appended; rules that carry two names are listed under both.
inline std::vector<RuleName> enumerate_rule_names(const std::set<Atom>& atoms) {
  std::vector<Connective> conns{Connective::disj(), Connective::conj()};
  for (const Atom& a : atoms) conns.push_back(Connective::atom_conn(a));
  std::vector<RuleName> out;
  out.reserve(2 * conns.size() * conns.size() + 1);
  for (const Connective& x : conns)
    for (const Connective& y : conns) out.push_back(RuleName::up(x, y));
  for (const Connective& x : conns)
    for (const Connective& y : conns) out.push_back(RuleName::down(x, y));
  out.push_back(RuleName::equality());
  return out;
}

}  // namespace dtsa

#endif  // DTSA_RULES_HPP
