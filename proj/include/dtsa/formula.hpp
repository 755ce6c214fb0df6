// Formulae of the decision-tree language: units 0/1 composed by the binary
// connectives `|`, `&` and atoms, where an atom node (A a B) selects A when
// a is false and B when a is true.  Values are immutable trees shared by
// pointer; every operation in this header is a pure function.

#ifndef DTSA_FORMULA_HPP
#define DTSA_FORMULA_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dtsa {

// Thrown on malformed textual input; `offset` is a byte position.
struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, std::size_t offset)
      : std::runtime_error(msg + " (at offset " + std::to_string(offset) + ")"),
        offset(offset) {}
  std::size_t offset;
};

// Thrown on well-formed input that violates a precondition (unbound atom,
// order mismatch, bad context, interface mismatch, ...).
struct SemanticError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using Atom = std::string;

inline bool valid_atom_name(const std::string& s) {
  if (s.empty() || s[0] < 'a' || s[0] > 'z') return false;
  for (char c : s)
    if (!((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_'))
      return false;
  return true;
}

// ── Connective ──────────────────────────────────────────────────────────────
// `or` and `and` are dual to each other; atoms are self-dual.  The weaker /
// stronger maps are the saturation functions that generate the rule scheme.

struct Connective {
  enum class Kind : std::uint8_t { Or, And, Atom };

  Kind kind = Kind::Or;
  Atom atom;  // nonempty iff kind == Atom

  static Connective disj() { return Connective{Kind::Or, {}}; }
  static Connective conj() { return Connective{Kind::And, {}}; }
  static Connective atom_conn(Atom name) {
    if (!valid_atom_name(name))
      throw SemanticError("invalid atom name: '" + name + "'");
    return Connective{Kind::Atom, std::move(name)};
  }

  bool is_or() const { return kind == Kind::Or; }
  bool is_and() const { return kind == Kind::And; }
  bool is_atom() const { return kind == Kind::Atom; }
  bool is_atom(const Atom& a) const { return is_atom() && atom == a; }

  Connective dual() const {
    switch (kind) {
      case Kind::Or: return conj();
      case Kind::And: return disj();
      default: return *this;
    }
  }
  Connective weaker() const { return is_atom() ? *this : disj(); }
  Connective stronger() const { return is_atom() ? *this : conj(); }

  bool operator==(const Connective& o) const {
    return kind == o.kind && atom == o.atom;
  }
  bool operator!=(const Connective& o) const { return !(*this == o); }

  // Token used in the formula syntax: "|", "&" or the atom name.
  std::string token() const {
    switch (kind) {
      case Kind::Or: return "|";
      case Kind::And: return "&";
      default: return atom;
    }
  }
  // Word used in the rule-name syntax: "or", "and" or the atom name.
  std::string word() const {
    switch (kind) {
      case Kind::Or: return "or";
      case Kind::And: return "and";
      default: return atom;
    }
  }
};

// ── Formula ─────────────────────────────────────────────────────────────────

class Formula {
 public:
  // Default-constructed formula is the unit 0.
  Formula();

  static Formula zero();
  static Formula one();
  static Formula unit(bool v) { return v ? one() : zero(); }
  static Formula node(Connective c, Formula l, Formula r);

  bool is_unit() const;
  bool is_zero() const;
  bool is_one() const;
  bool unit_value() const { return is_one(); }
  bool is_node() const { return !is_unit(); }

  const Connective& conn() const;
  const Formula& left() const;
  const Formula& right() const;

  // Number of unit occurrences.
  std::size_t size() const;

  // Structural identity, with a shared-subtree fast path.
  bool operator==(const Formula& o) const;
  bool operator!=(const Formula& o) const { return !(*this == o); }

  const void* id() const { return node_.get(); }

 private:
  struct Node;
  struct RawTag {};
  using NodePtr = std::shared_ptr<const Node>;

  explicit Formula(RawTag) : node_(nullptr) {}
  explicit Formula(NodePtr n) : node_(std::move(n)) {}

  static const NodePtr& zero_node();
  static const NodePtr& one_node();

  NodePtr node_;
};

struct Formula::Node {
  Connective conn;
  Formula left, right;  // left.node_ == nullptr marks a unit node
  std::size_t size;
  Node(Connective c, Formula l, Formula r, std::size_t s)
      : conn(std::move(c)), left(std::move(l)), right(std::move(r)), size(s) {}
  Node() : left(RawTag{}), right(RawTag{}), size(1) {}
};

inline const Formula::NodePtr& Formula::zero_node() {
  static const NodePtr z = std::make_shared<const Node>();
  return z;
}
inline const Formula::NodePtr& Formula::one_node() {
  static const NodePtr o = std::make_shared<const Node>();
  return o;
}
inline Formula::Formula() : node_(zero_node()) {}
inline Formula Formula::zero() { return Formula(zero_node()); }
inline Formula Formula::one() { return Formula(one_node()); }
inline Formula Formula::node(Connective c, Formula l, Formula r) {
  std::size_t s = l.size() + r.size();
  return Formula(std::make_shared<const Node>(std::move(c), std::move(l),
                                              std::move(r), s));
}
inline bool Formula::is_unit() const { return node_->left.node_ == nullptr; }
inline bool Formula::is_zero() const { return node_ == zero_node(); }
inline bool Formula::is_one() const { return node_ == one_node(); }
inline const Connective& Formula::conn() const { return node_->conn; }
inline const Formula& Formula::left() const { return node_->left; }
inline const Formula& Formula::right() const { return node_->right; }
inline std::size_t Formula::size() const { return node_->size; }
inline bool Formula::operator==(const Formula& o) const {
  if (node_ == o.node_) return true;
  if (node_->size != o.node_->size) return false;
  if (is_unit() || o.is_unit()) return false;
  return node_->conn == o.node_->conn && node_->left == o.node_->left &&
         node_->right == o.node_->right;
}

inline Formula make_or(Formula l, Formula r) {
  return Formula::node(Connective::disj(), std::move(l), std::move(r));
}
inline Formula make_and(Formula l, Formula r) {
  return Formula::node(Connective::conj(), std::move(l), std::move(r));
}
inline Formula make_atom(const Atom& a, Formula l, Formula r) {
  return Formula::node(Connective::atom_conn(a), std::move(l), std::move(r));
}

// ── Negation ────────────────────────────────────────────────────────────────
// Involution: units flip, or/and swap, atom nodes keep their atom.

inline Formula negate(const Formula& f) {
  if (f.is_unit()) return Formula::unit(!f.unit_value());
  return Formula::node(f.conn().dual(), negate(f.left()), negate(f.right()));
}

// Recursively swaps the children of every node.
inline Formula mirror_formula(const Formula& f) {
  if (f.is_unit()) return f;
  return Formula::node(f.conn(), mirror_formula(f.right()),
                       mirror_formula(f.left()));
}

// ── Unit equational theory ──────────────────────────────────────────────────
// The equations are oriented as size-reducing rewrites, together with their
// left-handed twins (0|A -> A, 1&A -> A) which the equational theory needs
// to validate the unit juggling that derivations perform on both sides of a
// connective.  The system is terminating and confluent, so equality modulo
// units is decided by normal-form comparison.

inline Formula normalize(const Formula& f) {
  if (f.is_unit()) return f;
  Formula l = normalize(f.left());
  Formula r = normalize(f.right());
  switch (f.conn().kind) {
    case Connective::Kind::Or:
      if (r.is_zero()) return l;                 // A | 0 = A
      if (l.is_zero()) return r;                 // 0 | A = A
      if (l.is_one() && r.is_one()) return l;    // 1 | 1 = 1
      break;
    case Connective::Kind::And:
      if (r.is_one()) return l;                  // A & 1 = A
      if (l.is_one()) return r;                  // 1 & A = A
      if (l.is_zero() && r.is_zero()) return l;  // 0 & 0 = 0
      break;
    case Connective::Kind::Atom:
      if (l.is_zero() && r.is_zero()) return l;  // 0 a 0 = 0
      if (l.is_one() && r.is_one()) return l;    // 1 a 1 = 1
      break;
  }
  if (l == f.left() && r == f.right()) return f;
  return Formula::node(f.conn(), std::move(l), std::move(r));
}

inline bool equal_mod_units(const Formula& f, const Formula& g) {
  if (f == g) return true;
  return normalize(f) == normalize(g);
}

// ── Semantics ───────────────────────────────────────────────────────────────

using Assignment = std::map<Atom, bool>;

inline bool evaluate(const Formula& f, const Assignment& x) {
  if (f.is_unit()) return f.unit_value();
  switch (f.conn().kind) {
    case Connective::Kind::Or:
      return evaluate(f.left(), x) || evaluate(f.right(), x);
    case Connective::Kind::And:
      return evaluate(f.left(), x) && evaluate(f.right(), x);
    default: {
      auto it = x.find(f.conn().atom);
      if (it == x.end())
        throw SemanticError("unbound atom: '" + f.conn().atom + "'");
      return it->second ? evaluate(f.right(), x) : evaluate(f.left(), x);
    }
  }
}

inline void collect_atoms(const Formula& f, std::set<Atom>& out) {
  if (f.is_unit()) return;
  if (f.conn().is_atom()) out.insert(f.conn().atom);
  collect_atoms(f.left(), out);
  collect_atoms(f.right(), out);
}

inline std::set<Atom> atoms(const Formula& f) {
  std::set<Atom> out;
  collect_atoms(f, out);
  return out;
}

inline bool contains_atom(const Formula& f, const Atom& a) {
  if (f.is_unit()) return false;
  if (f.conn().is_atom(a)) return true;
  return contains_atom(f.left(), a) || contains_atom(f.right(), a);
}

namespace detail {

// Flat array form with resolved atom indices, shared subtrees compiled
// once; keeps the exhaustive enumeration loops free of map lookups.
struct CompiledFormula {
  enum : std::uint8_t { kConst, kAtom, kOr, kAnd };
  struct N {
    std::uint8_t kind;
    unsigned a = 0;  // constant value, or atom bit index
    unsigned left = 0, right = 0;
  };
  std::vector<N> nodes;  // in dependency order; the root is last

  static CompiledFormula compile(const Formula& f,
                                 const std::map<Atom, unsigned>& index) {
    CompiledFormula out;
    std::map<const void*, unsigned> memo;
    out.compile_rec(f, index, memo);
    return out;
  }

  bool eval(std::uint64_t mask, std::vector<char>& buf) const {
    buf.resize(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const N& n = nodes[i];
      switch (n.kind) {
        case kConst: buf[i] = static_cast<char>(n.a); break;
        case kAtom:
          buf[i] = ((mask >> n.a) & 1u) ? buf[n.right] : buf[n.left];
          break;
        case kOr: buf[i] = buf[n.left] | buf[n.right]; break;
        default: buf[i] = buf[n.left] & buf[n.right]; break;
      }
    }
    return buf.back();
  }

 private:
  unsigned compile_rec(const Formula& f,
                       const std::map<Atom, unsigned>& index,
                       std::map<const void*, unsigned>& memo) {
    auto it = memo.find(f.id());
    if (it != memo.end()) return it->second;
    N n{};
    if (f.is_unit()) {
      n.kind = kConst;
      n.a = f.unit_value() ? 1 : 0;
    } else {
      n.left = compile_rec(f.left(), index, memo);
      n.right = compile_rec(f.right(), index, memo);
      switch (f.conn().kind) {
        case Connective::Kind::Or: n.kind = kOr; break;
        case Connective::Kind::And: n.kind = kAnd; break;
        default:
          n.kind = kAtom;
          n.a = index.at(f.conn().atom);
          break;
      }
    }
    nodes.push_back(n);
    unsigned id = static_cast<unsigned>(nodes.size() - 1);
    memo.emplace(f.id(), id);
    return id;
  }
};

}  // namespace detail

inline constexpr unsigned kDefaultAtomLimit = 24;

// Falsifying assignment, if any, over exactly the atoms of f.
inline std::pair<bool, Assignment> find_countermodel(
    const Formula& f, unsigned atom_limit = kDefaultAtomLimit) {
  std::set<Atom> as = atoms(f);
  if (as.size() > atom_limit)
    throw SemanticError("atom count " + std::to_string(as.size()) +
                        " exceeds exhaustion limit " +
                        std::to_string(atom_limit));
  std::map<Atom, unsigned> index;
  unsigned i = 0;
  for (const Atom& a : as) index[a] = i++;
  detail::CompiledFormula cf = detail::CompiledFormula::compile(f, index);
  std::vector<char> buf;
  std::uint64_t total = std::uint64_t{1} << as.size();
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    if (!cf.eval(mask, buf)) {
      Assignment x;
      for (const auto& [a, bit] : index) x[a] = (mask >> bit) & 1u;
      return {true, x};
    }
  }
  return {false, {}};
}

inline bool is_tautology(const Formula& f,
                         unsigned atom_limit = kDefaultAtomLimit) {
  return !find_countermodel(f, atom_limit).first;
}

// ── Projection on an atom ───────────────────────────────────────────────────
// The left (right) projection replaces every node (A a B) by its left
// (right) child, bottom-up; no occurrence of the atom survives.

enum class Side { Left, Right };

inline Formula project_formula(const Formula& f, const Atom& a, Side side) {
  if (f.is_unit()) return f;
  if (f.conn().is_atom(a))
    return project_formula(side == Side::Left ? f.left() : f.right(), a, side);
  Formula l = project_formula(f.left(), a, side);
  Formula r = project_formula(f.right(), a, side);
  if (l == f.left() && r == f.right()) return f;
  return Formula::node(f.conn(), std::move(l), std::move(r));
}

// ── Sublanguage classification ──────────────────────────────────────────────
// A formula is propositional when some unit-equal formula has no nested atom
// occurrences, and a strict decision tree when some unit-equal formula has no
// `|`/`&`.  Both are decided on the normal form: the rewrites only erase
// structure, so they can neither create nesting nor create a boolean
// connective.

enum class Sublanguage { Prop, Sdt, Both, Neither };

namespace detail {
inline bool has_nested_atom(const Formula& f, bool under_atom) {
  if (f.is_unit()) return false;
  bool atom_here = f.conn().is_atom();
  if (atom_here && under_atom) return true;
  return has_nested_atom(f.left(), under_atom || atom_here) ||
         has_nested_atom(f.right(), under_atom || atom_here);
}
inline bool has_bool_conn(const Formula& f) {
  if (f.is_unit()) return false;
  if (!f.conn().is_atom()) return true;
  return has_bool_conn(f.left()) || has_bool_conn(f.right());
}
}  // namespace detail

inline bool nesting_free(const Formula& f) {
  return !detail::has_nested_atom(f, false);
}

inline Sublanguage classify(const Formula& f) {
  Formula n = normalize(f);
  bool prop = nesting_free(n);
  bool sdt = !detail::has_bool_conn(n);
  if (prop && sdt) return Sublanguage::Both;
  if (prop) return Sublanguage::Prop;
  if (sdt) return Sublanguage::Sdt;
  return Sublanguage::Neither;
}

// ── Text format ─────────────────────────────────────────────────────────────
//   formula := "0" | "1" | "(" formula op formula ")"
//   op      := "&" | "|" | atom-name
// Whitespace between tokens is ignored; printing always emits the fully
// parenthesized form with single spaces around operators.

namespace detail {

struct Cursor {
  const std::string& text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() &&
           (text[pos] == ' ' || text[pos] == '\t' || text[pos] == '\n' ||
            text[pos] == '\r'))
      ++pos;
  }
  bool eof() {
    skip_ws();
    return pos >= text.size();
  }
  char peek() {
    skip_ws();
    if (pos >= text.size()) throw ParseError("unexpected end of input", pos);
    return text[pos];
  }
  void expect(char c) {
    if (peek() != c)
      throw ParseError(std::string("expected '") + c + "'", pos);
    ++pos;
  }
  std::string ident() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() &&
           ((text[pos] >= 'a' && text[pos] <= 'z') ||
            (text[pos] >= '0' && text[pos] <= '9') || text[pos] == '_'))
      ++pos;
    if (pos == start) throw ParseError("expected identifier", pos);
    std::string s = text.substr(start, pos - start);
    if (!valid_atom_name(s))
      throw ParseError("invalid atom name '" + s + "'", start);
    return s;
  }
};

inline Connective parse_op(Cursor& c) {
  char ch = c.peek();
  if (ch == '&') { ++c.pos; return Connective::conj(); }
  if (ch == '|') { ++c.pos; return Connective::disj(); }
  if (ch == '0' || ch == '1')
    throw ParseError("reserved token used as operator", c.pos);
  return Connective::atom_conn(c.ident());
}

inline Formula parse_formula_at(Cursor& c) {
  char ch = c.peek();
  if (ch == '0') { ++c.pos; return Formula::zero(); }
  if (ch == '1') { ++c.pos; return Formula::one(); }
  if (ch == '(') {
    ++c.pos;
    Formula l = parse_formula_at(c);
    Connective op = parse_op(c);
    Formula r = parse_formula_at(c);
    c.expect(')');
    return Formula::node(std::move(op), std::move(l), std::move(r));
  }
  throw ParseError("expected formula", c.pos);
}

}  // namespace detail

inline Formula parse_formula(const std::string& text) {
  detail::Cursor c{text};
  Formula f = detail::parse_formula_at(c);
  if (!c.eof()) throw ParseError("trailing input after formula", c.pos);
  return f;
}

inline void print_formula_to(const Formula& f, std::string& out) {
  if (f.is_unit()) {
    out += f.unit_value() ? '1' : '0';
    return;
  }
  out += '(';
  print_formula_to(f.left(), out);
  out += ' ';
  out += f.conn().token();
  out += ' ';
  print_formula_to(f.right(), out);
  out += ')';
}

inline std::string print_formula(const Formula& f) {
  std::string out;
  out.reserve(f.size() * 4);
  print_formula_to(f, out);
  return out;
}

// ── Classical propositional formulae and the embedding map ─────────────────
// Standard formulae over literals a / !a with constants and `&`/`|`; the
// embedding sends a to (0 a 1) and !a to (1 a 0), keeping the structure.

class StdProp {
 public:
  enum class Kind { Const, Lit, And, Or };

  static StdProp constant(bool v) {
    StdProp p(Kind::Const);
    p.value_ = v;
    return p;
  }
  static StdProp lit(Atom a, bool negated) {
    StdProp p(Kind::Lit);
    p.atom_ = std::move(a);
    p.negated_ = negated;
    return p;
  }
  static StdProp conj(StdProp l, StdProp r) { return bin(Kind::And, l, r); }
  static StdProp disj(StdProp l, StdProp r) { return bin(Kind::Or, l, r); }

  Kind kind() const { return kind_; }
  bool value() const { return value_; }
  const Atom& atom() const { return atom_; }
  bool negated() const { return negated_; }
  const StdProp& left() const { return *left_; }
  const StdProp& right() const { return *right_; }

 private:
  explicit StdProp(Kind k) : kind_(k) {}
  static StdProp bin(Kind k, StdProp l, StdProp r) {
    StdProp p(k);
    p.left_ = std::make_shared<StdProp>(std::move(l));
    p.right_ = std::make_shared<StdProp>(std::move(r));
    return p;
  }
  Kind kind_;
  bool value_ = false;
  Atom atom_;
  bool negated_ = false;
  std::shared_ptr<StdProp> left_, right_;
};

// Grammar: std := "0" | "1" | ["!"] atom-name | "(" std ("&"|"|") std ")"
inline StdProp parse_std_prop(const std::string& text) {
  struct P {
    detail::Cursor c;
    StdProp go() {
      char ch = c.peek();
      if (ch == '0') { ++c.pos; return StdProp::constant(false); }
      if (ch == '1') { ++c.pos; return StdProp::constant(true); }
      if (ch == '!') { ++c.pos; return StdProp::lit(c.ident(), true); }
      if (ch == '(') {
        ++c.pos;
        StdProp l = go();
        char op = c.peek();
        if (op != '&' && op != '|')
          throw ParseError("expected '&' or '|'", c.pos);
        ++c.pos;
        StdProp r = go();
        c.expect(')');
        return op == '&' ? StdProp::conj(std::move(l), std::move(r))
                         : StdProp::disj(std::move(l), std::move(r));
      }
      return StdProp::lit(c.ident(), false);
    }
  } p{{text}};
  StdProp res = p.go();
  if (!p.c.eof()) throw ParseError("trailing input", p.c.pos);
  return res;
}

inline Formula embed_prop(const StdProp& p) {
  switch (p.kind()) {
    case StdProp::Kind::Const: return Formula::unit(p.value());
    case StdProp::Kind::Lit:
      return p.negated() ? make_atom(p.atom(), Formula::one(), Formula::zero())
                         : make_atom(p.atom(), Formula::zero(), Formula::one());
    case StdProp::Kind::And:
      return make_and(embed_prop(p.left()), embed_prop(p.right()));
    default:
      return make_or(embed_prop(p.left()), embed_prop(p.right()));
  }
}

}  // namespace dtsa

#endif  // DTSA_FORMULA_HPP
