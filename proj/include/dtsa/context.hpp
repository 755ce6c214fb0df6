// A context is a formula with exactly one hole.  It is stored as the spine
// from the root to the hole, which makes the single-hole invariant
// structural and gives the constructions their induction handle.

#ifndef DTSA_CONTEXT_HPP
#define DTSA_CONTEXT_HPP

#include <string>
#include <utility>
#include <vector>

#include "dtsa/formula.hpp"

namespace dtsa {

class Context {
 public:
  struct Layer {
    Connective conn;
    bool hole_on_left;
    Formula other;
  };

  // The empty context: a bare hole.
  Context() = default;

  static Context hole() { return Context(); }

  // Wraps the current context one level: hole side stays innermost.
  Context under(Connective c, bool hole_on_left, Formula other) const {
    Context k = *this;
    k.spine_.insert(k.spine_.begin(), Layer{std::move(c), hole_on_left,
                                            std::move(other)});
    return k;
  }

  bool empty() const { return spine_.empty(); }
  std::size_t depth() const { return spine_.size(); }
  const Layer& root() const { return spine_.front(); }
  const std::vector<Layer>& spine() const { return spine_; }

  // Context without its root layer.
  Context inner() const {
    Context k;
    k.spine_.assign(spine_.begin() + 1, spine_.end());
    return k;
  }

  Formula plug(Formula f) const {
    for (auto it = spine_.rbegin(); it != spine_.rend(); ++it)
      f = it->hole_on_left ? Formula::node(it->conn, std::move(f), it->other)
                           : Formula::node(it->conn, it->other, std::move(f));
    return f;
  }

  // Unit occurrences of the context itself (the hole contributes none).
  std::size_t size() const {
    std::size_t s = 0;
    for (const Layer& l : spine_) s += l.other.size();
    return s;
  }

  Context mirrored() const {
    Context k;
    for (const Layer& l : spine_)
      k.spine_.push_back(
          Layer{l.conn, !l.hole_on_left, mirror_formula(l.other)});
    return k;
  }

  Context negated() const {
    Context k;
    for (const Layer& l : spine_)
      k.spine_.push_back(Layer{l.conn.dual(), l.hole_on_left, negate(l.other)});
    return k;
  }

  std::string to_string() const {
    std::string out = "{}";
    for (auto it = spine_.rbegin(); it != spine_.rend(); ++it) {
      std::string other = print_formula(it->other);
      if (it->hole_on_left)
        out = "(" + out + " " + it->conn.token() + " " + other + ")";
      else
        out = "(" + other + " " + it->conn.token() + " " + out + ")";
    }
    return out;
  }

 private:
  std::vector<Layer> spine_;
};

namespace detail {

struct CtxParse {
  bool has_hole = false;
  Formula formula;  // valid when !has_hole
  Context context;  // valid when has_hole
};

inline CtxParse parse_context_at(Cursor& c) {
  c.skip_ws();
  if (c.pos + 1 < c.text.size() && c.text[c.pos] == '{' &&
      c.text[c.pos + 1] == '}') {
    c.pos += 2;
    return CtxParse{true, {}, Context::hole()};
  }
  char ch = c.peek();
  if (ch == '0') { ++c.pos; return CtxParse{false, Formula::zero(), {}}; }
  if (ch == '1') { ++c.pos; return CtxParse{false, Formula::one(), {}}; }
  if (ch != '(') throw ParseError("expected context or formula", c.pos);
  ++c.pos;
  std::size_t at = c.pos;
  CtxParse l = parse_context_at(c);
  Connective op = parse_op(c);
  CtxParse r = parse_context_at(c);
  c.expect(')');
  if (l.has_hole && r.has_hole)
    throw ParseError("context has more than one hole", at);
  if (l.has_hole)
    return CtxParse{true, {}, l.context.under(op, true, r.formula)};
  if (r.has_hole)
    return CtxParse{true, {}, r.context.under(op, false, l.formula)};
  return CtxParse{false, Formula::node(op, l.formula, r.formula), {}};
}

}  // namespace detail

// Context grammar: the formula grammar extended with the hole token "{}".
inline Context parse_context(const std::string& text) {
  detail::Cursor c{text};
  detail::CtxParse p = detail::parse_context_at(c);
  if (!c.eof()) throw ParseError("trailing input after context", c.pos);
  if (!p.has_hole) throw SemanticError("context has no hole");
  return p.context;
}

}  // namespace dtsa

#endif  // DTSA_CONTEXT_HPP
