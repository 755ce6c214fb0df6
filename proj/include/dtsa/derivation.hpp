// Open-deduction derivations: formula leaves, horizontal composition by a
// connective, vertical composition by a rule instance.  Vertical nesting is
// kept right-associated, so a chain of inferences is always
// step(r1, u1, step(r2, u2, ... tail)).  Endpoints and metrics are computed
// at construction and cached in the nodes.

#ifndef DTSA_DERIVATION_HPP
#define DTSA_DERIVATION_HPP

#include <algorithm>
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "dtsa/context.hpp"
#include "dtsa/formula.hpp"
#include "dtsa/rules.hpp"

namespace dtsa {

class Derivation {
 public:
  enum class Kind : std::uint8_t { Leaf, Horiz, Step };

  Derivation();

  static Derivation leaf(Formula f);
  static Derivation horiz(Connective c, Derivation l, Derivation r);
  // Composition by inference is associative; a step whose upper part is
  // itself a step is rotated into the canonical right-nested chain.
  static Derivation step(RuleName rule, Derivation upper, Derivation lower);

  Kind kind() const;
  bool is_leaf() const { return kind() == Kind::Leaf; }
  bool is_horiz() const { return kind() == Kind::Horiz; }
  bool is_step() const { return kind() == Kind::Step; }

  const Formula& formula() const;  // pre: leaf
  const Connective& conn() const;
  const Derivation& left() const;
  const Derivation& right() const;
  const RuleName& rule() const;
  const Derivation& upper() const;
  const Derivation& lower() const;

  const Formula& premiss() const;
  const Formula& conclusion() const;
  std::size_t width() const;
  std::size_t height() const;
  std::size_t size() const;

  bool operator==(const Derivation& o) const;
  bool operator!=(const Derivation& o) const { return !(*this == o); }

 private:
  struct Node;
  struct RawTag {};
  using NodePtr = std::shared_ptr<const Node>;

  explicit Derivation(RawTag) : node_(nullptr) {}
  explicit Derivation(NodePtr n) : node_(std::move(n)) {}

  static Derivation step_raw(RuleName rule, Derivation u, Derivation l);

  NodePtr node_;
};

struct Derivation::Node {
  Kind kind = Kind::Leaf;
  Connective conn;
  RuleName rule;
  Derivation first, second;
  Formula pr, cn;
  std::size_t width = 0, height = 0, size = 0;
  Node() : first(RawTag{}), second(RawTag{}) {}
};

inline Derivation Derivation::leaf(Formula f) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Leaf;
  n->pr = f;
  n->cn = std::move(f);
  n->width = n->pr.size();
  n->height = 0;
  n->size = n->pr.size();
  return Derivation(NodePtr(std::move(n)));
}

inline Derivation::Derivation() : Derivation(leaf(Formula::zero())) {}

inline Derivation Derivation::horiz(Connective c, Derivation l, Derivation r) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Horiz;
  n->conn = std::move(c);
  n->pr = Formula::node(n->conn, l.premiss(), r.premiss());
  n->cn = Formula::node(n->conn, l.conclusion(), r.conclusion());
  n->width = l.width() + r.width();
  n->height = std::max(l.height(), r.height());
  n->size = l.size() + r.size();
  n->first = std::move(l);
  n->second = std::move(r);
  return Derivation(NodePtr(std::move(n)));
}

inline Derivation Derivation::step_raw(RuleName rule, Derivation u,
                                       Derivation l) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Step;
  n->rule = std::move(rule);
  n->pr = u.premiss();
  n->cn = l.conclusion();
  n->width = std::max(u.width(), l.width());
  n->height = u.height() + l.height() + 1;
  n->size = u.size() + l.size();
  n->first = std::move(u);
  n->second = std::move(l);
  return Derivation(NodePtr(std::move(n)));
}

inline Derivation Derivation::step(RuleName rule, Derivation upper,
                                   Derivation lower) {
  std::vector<std::pair<RuleName, Derivation>> prefix;
  Derivation t = std::move(upper);
  while (t.kind() == Kind::Step) {
    prefix.emplace_back(t.rule(), t.upper());
    t = t.lower();
  }
  Derivation out = step_raw(std::move(rule), std::move(t), std::move(lower));
  for (auto it = prefix.rbegin(); it != prefix.rend(); ++it)
    out = step_raw(std::move(it->first), std::move(it->second),
                   std::move(out));
  return out;
}

inline Derivation::Kind Derivation::kind() const { return node_->kind; }
inline const Formula& Derivation::formula() const { return node_->pr; }
inline const Connective& Derivation::conn() const { return node_->conn; }
inline const Derivation& Derivation::left() const { return node_->first; }
inline const Derivation& Derivation::right() const { return node_->second; }
inline const RuleName& Derivation::rule() const { return node_->rule; }
inline const Derivation& Derivation::upper() const { return node_->first; }
inline const Derivation& Derivation::lower() const { return node_->second; }
inline const Formula& Derivation::premiss() const { return node_->pr; }
inline const Formula& Derivation::conclusion() const { return node_->cn; }
inline std::size_t Derivation::width() const { return node_->width; }
inline std::size_t Derivation::height() const { return node_->height; }
inline std::size_t Derivation::size() const { return node_->size; }

inline bool Derivation::operator==(const Derivation& o) const {
  if (node_ == o.node_) return true;
  if (kind() != o.kind()) return false;
  switch (kind()) {
    case Kind::Leaf: return formula() == o.formula();
    case Kind::Horiz:
      return conn() == o.conn() && left() == o.left() && right() == o.right();
    default:
      return rule() == o.rule() && upper() == o.upper() &&
             lower() == o.lower();
  }
}

struct DerivationMetrics {
  std::size_t width, height, size;
};

inline DerivationMetrics metrics(const Derivation& d) {
  return DerivationMetrics{d.width(), d.height(), d.size()};
}

// ── Synchronal composition ──────────────────────────────────────────────────
// Requires the interface formulae to be syntactically identical.  The
// `steps_of_left_first` flag picks which of the two overlapping
// step-commutation clauses fires when both parts are inference compositions;
// both orders give the same canonical result.

namespace detail {

inline Derivation compose_rec(Derivation a, Derivation b,
                              bool steps_of_left_first);

inline Derivation compose_peel_left(Derivation a, Derivation b,
                                    bool steps_of_left_first) {
  std::vector<std::pair<RuleName, Derivation>> prefix;
  Derivation t = std::move(a);
  while (t.is_step()) {
    prefix.emplace_back(t.rule(), t.upper());
    t = t.lower();
  }
  Derivation out = compose_rec(std::move(t), std::move(b), steps_of_left_first);
  for (auto it = prefix.rbegin(); it != prefix.rend(); ++it)
    out = Derivation::step(std::move(it->first), std::move(it->second),
                           std::move(out));
  return out;
}

inline Derivation compose_rec(Derivation a, Derivation b,
                              bool steps_of_left_first) {
  if (a.is_leaf()) return b;
  if (b.is_leaf()) return a;
  if (steps_of_left_first) {
    if (a.is_step()) return compose_peel_left(a, b, steps_of_left_first);
    if (b.is_step())
      return Derivation::step(
          b.rule(), compose_rec(std::move(a), b.upper(), steps_of_left_first),
          b.lower());
  } else {
    if (b.is_step())
      return Derivation::step(
          b.rule(), compose_rec(std::move(a), b.upper(), steps_of_left_first),
          b.lower());
    if (a.is_step()) return compose_peel_left(a, b, steps_of_left_first);
  }
  // both horizontal; the shared interface forces the same connective
  return Derivation::horiz(
      a.conn(), compose_rec(a.left(), b.left(), steps_of_left_first),
      compose_rec(a.right(), b.right(), steps_of_left_first));
}

}  // namespace detail

inline Derivation compose_seq(Derivation a, Derivation b,
                              bool steps_of_left_first = true) {
  if (a.conclusion() != b.premiss())
    throw SemanticError("compose_seq: interface mismatch: " +
                        print_formula(a.conclusion()) + " vs " +
                        print_formula(b.premiss()));
  return detail::compose_rec(std::move(a), std::move(b), steps_of_left_first);
}

// ── Duality and mirroring ───────────────────────────────────────────────────

inline Derivation dualize(const Derivation& d) {
  switch (d.kind()) {
    case Derivation::Kind::Leaf:
      return Derivation::leaf(negate(d.formula()));
    case Derivation::Kind::Horiz:
      return Derivation::horiz(d.conn().dual(), dualize(d.left()),
                               dualize(d.right()));
    default:
      return Derivation::step(d.rule().dual(), dualize(d.lower()),
                              dualize(d.upper()));
  }
}

inline Derivation mirror(const Derivation& d) {
  switch (d.kind()) {
    case Derivation::Kind::Leaf:
      return Derivation::leaf(mirror_formula(d.formula()));
    case Derivation::Kind::Horiz:
      return Derivation::horiz(d.conn(), mirror(d.right()), mirror(d.left()));
    default: {
      RuleName r = d.rule();
      if (!r.is_equality()) r = r.with_mirrored(!r.mirrored);
      return Derivation::step(std::move(r), mirror(d.upper()),
                              mirror(d.lower()));
    }
  }
}

// Embeds a derivation into a single-hole context: K{pr d} -> K{cn d}.
inline Derivation context_apply(const Context& k, Derivation d) {
  const auto& spine = k.spine();
  for (auto it = spine.rbegin(); it != spine.rend(); ++it) {
    Derivation other = Derivation::leaf(it->other);
    d = it->hole_on_left
            ? Derivation::horiz(it->conn, std::move(d), std::move(other))
            : Derivation::horiz(it->conn, std::move(other), std::move(d));
  }
  return d;
}

// ── Checking ────────────────────────────────────────────────────────────────
// Paths are root-to-node child-index sequences; 0 is left/upper and 1 is
// right/lower.

using Path = std::vector<int>;

inline std::string path_to_string(const Path& p) {
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += '/';
    s += std::to_string(p[i]);
  }
  return s;
}

struct CheckFailure {
  Path path;
  std::string reason;
};

struct CheckReport {
  bool valid = true;
  std::vector<CheckFailure> failures;
  std::vector<Path> cuts;
  std::vector<Path> identities;

  std::string to_text() const {
    std::string out = valid ? "VALID\n" : "INVALID\n";
    for (const Path& p : cuts) {
      out += "CUT";
      if (!p.empty()) out += " " + path_to_string(p);
      out += '\n';
    }
    for (const Path& p : identities) {
      out += "IDENTITY";
      if (!p.empty()) out += " " + path_to_string(p);
      out += '\n';
    }
    for (const CheckFailure& f : failures) {
      out += "FAIL";
      if (!f.path.empty()) out += " " + path_to_string(f.path);
      out += " " + f.reason + '\n';
    }
    return out;
  }
};

inline CheckReport check(const Derivation& d) {
  CheckReport rep;
  std::vector<std::pair<const Derivation*, Path>> stack;
  stack.emplace_back(&d, Path{});
  while (!stack.empty()) {
    auto [cur, path] = std::move(stack.back());
    stack.pop_back();
    switch (cur->kind()) {
      case Derivation::Kind::Leaf: break;
      case Derivation::Kind::Horiz: {
        Path pl = path, prr = path;
        pl.push_back(0);
        prr.push_back(1);
        stack.emplace_back(&cur->right(), std::move(prr));
        stack.emplace_back(&cur->left(), std::move(pl));
        break;
      }
      case Derivation::Kind::Step: {
        const Formula& p = cur->upper().conclusion();
        const Formula& c = cur->lower().premiss();
        if (!valid_instance(cur->rule(), p, c)) {
          rep.valid = false;
          rep.failures.push_back(CheckFailure{
              path, "not an instance of " + cur->rule().to_string() + ": " +
                        print_formula(p) + " over " + print_formula(c)});
        } else {
          RuleInstance inst{cur->rule(), p, c};
          if (is_cut(inst)) rep.cuts.push_back(path);
          if (is_identity(inst)) rep.identities.push_back(path);
        }
        Path pu = path, plo = path;
        pu.push_back(0);
        plo.push_back(1);
        stack.emplace_back(&cur->lower(), std::move(plo));
        stack.emplace_back(&cur->upper(), std::move(pu));
        break;
      }
    }
  }
  auto by_path = [](const Path& x, const Path& y) { return x < y; };
  std::sort(rep.cuts.begin(), rep.cuts.end(), by_path);
  std::sort(rep.identities.begin(), rep.identities.end(), by_path);
  std::sort(rep.failures.begin(), rep.failures.end(),
            [](const CheckFailure& x, const CheckFailure& y) {
              return x.path < y.path;
            });
  return rep;
}

// ── Text format ─────────────────────────────────────────────────────────────
//   deriv := "(form " formula ")"
//          | "(conn " op " " deriv " " deriv ")"
//          | "(step " rulename " " deriv " " deriv ")"

namespace detail {

inline Derivation parse_derivation_at(Cursor& c) {
  c.expect('(');
  std::string head = c.ident();
  if (head == "form") {
    Formula f = parse_formula_at(c);
    c.expect(')');
    return Derivation::leaf(std::move(f));
  }
  if (head == "conn") {
    Connective op = parse_op(c);
    Derivation l = parse_derivation_at(c);
    Derivation r = parse_derivation_at(c);
    c.expect(')');
    return Derivation::horiz(std::move(op), std::move(l), std::move(r));
  }
  if (head == "step") {
    RuleName rule = parse_rule_name_at(c);
    Derivation u = parse_derivation_at(c);
    Derivation l = parse_derivation_at(c);
    c.expect(')');
    return Derivation::step(std::move(rule), std::move(u), std::move(l));
  }
  throw ParseError("expected form, conn or step", c.pos);
}

}  // namespace detail

inline Derivation parse_derivation(const std::string& text) {
  detail::Cursor c{text};
  Derivation d = detail::parse_derivation_at(c);
  if (!c.eof()) throw ParseError("trailing input after derivation", c.pos);
  return d;
}

inline std::string print_derivation(const Derivation& d) {
  std::string out;
  out.reserve(d.size() * 8);
  std::vector<std::variant<const Derivation*, std::string>> stack;
  stack.emplace_back(&d);
  while (!stack.empty()) {
    auto item = std::move(stack.back());
    stack.pop_back();
    if (std::holds_alternative<std::string>(item)) {
      out += std::get<std::string>(item);
      continue;
    }
    const Derivation* cur = std::get<const Derivation*>(item);
    switch (cur->kind()) {
      case Derivation::Kind::Leaf:
        out += "(form ";
        print_formula_to(cur->formula(), out);
        out += ')';
        break;
      case Derivation::Kind::Horiz:
        out += "(conn " + cur->conn().token() + " ";
        stack.emplace_back(std::string(")"));
        stack.emplace_back(&cur->right());
        stack.emplace_back(std::string(" "));
        stack.emplace_back(&cur->left());
        break;
      case Derivation::Kind::Step:
        out += "(step " + cur->rule().to_string() + " ";
        stack.emplace_back(std::string(")"));
        stack.emplace_back(&cur->lower());
        stack.emplace_back(std::string(" "));
        stack.emplace_back(&cur->upper());
        break;
    }
  }
  return out;
}

}  // namespace dtsa

#endif  // DTSA_DERIVATION_HPP
