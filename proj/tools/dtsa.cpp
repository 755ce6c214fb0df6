// Command-line surface for the proof kernel: checking, evaluation,
// projections, cut elimination, the construction library, Statman proof
// generation, and decision-tree conversions.
//
// Exit codes: 0 success, 1 invalid proof / not a tautology, 2 usage or
// syntax errors, 3 semantic errors (unbound atoms, order mismatches, ...).

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dtsa/construct.hpp"
#include "dtsa/derivation.hpp"
#include "dtsa/formula.hpp"
#include "dtsa/project.hpp"
#include "dtsa/sdt.hpp"
#include "dtsa/statman.hpp"
#include "dtsa/util.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw dtsa::SemanticError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

dtsa::Assignment parse_assignment(const std::string& text) {
  dtsa::Assignment x;
  if (text.empty()) return x;
  for (const std::string& item : split(text, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos || eq + 2 != item.size() ||
        (item[eq + 1] != '0' && item[eq + 1] != '1'))
      throw dtsa::ParseError("bad assignment item '" + item + "'", 0);
    std::string name = item.substr(0, eq);
    if (!dtsa::valid_atom_name(name))
      throw dtsa::ParseError("bad atom name '" + name + "'", 0);
    x[name] = item[eq + 1] == '1';
  }
  return x;
}

dtsa::AtomOrder parse_order(const std::string& text) {
  dtsa::AtomOrder order;
  for (const std::string& item : split(text, ',')) {
    if (!dtsa::valid_atom_name(item))
      throw dtsa::ParseError("bad atom name '" + item + "' in order", 0);
    order.push_back(item);
  }
  return order;
}

unsigned atom_limit_from_env() {
  const char* env = std::getenv("DT_MAX_ATOMS");
  if (!env || !*env) return dtsa::kDefaultAtomLimit;
  char* end = nullptr;
  unsigned long v = std::strtoul(env, &end, 10);
  if (end == env || *end != '\0' || v == 0 || v > 62)
    throw dtsa::SemanticError("DT_MAX_ATOMS must be a number in 1..62");
  return static_cast<unsigned>(v);
}

dtsa::Connective conn_from_word(const std::string& w) {
  if (w == "or") return dtsa::Connective::disj();
  if (w == "and") return dtsa::Connective::conj();
  return dtsa::Connective::atom_conn(w);
}

int run_cli(int argc, char** argv) {
  using namespace dtsa;

  CLI::App app{"proof kernel and toolkit for subatomic decision-tree logic"};
  app.require_subcommand(1);
  int exit_code = 0;

  // check <file>
  {
    auto* cmd = app.add_subcommand("check", "check a derivation file");
    auto file = std::make_shared<std::string>();
    cmd->add_option("file", *file, "derivation file")->required();
    cmd->callback([file, &exit_code] {
      Derivation d = parse_derivation(read_file(*file));
      CheckReport rep = check(d);
      std::cout << rep.to_text();
      exit_code = rep.valid ? 0 : 1;
    });
  }

  // eval <formula> --assign a=0,b=1
  {
    auto* cmd = app.add_subcommand("eval", "evaluate a formula");
    auto formula = std::make_shared<std::string>();
    auto assign = std::make_shared<std::string>();
    cmd->add_option("formula", *formula, "formula text")->required();
    cmd->add_option("--assign", *assign, "comma-separated atom=0/1 pairs");
    cmd->callback([formula, assign, &exit_code] {
      Formula f = parse_formula(*formula);
      bool v = evaluate(f, parse_assignment(*assign));
      std::cout << (v ? "1" : "0") << "\n";
      exit_code = 0;
    });
  }

  // elim-cuts <file> [--atom-order a,b,c]
  {
    auto* cmd = app.add_subcommand("elim-cuts", "eliminate cuts from a proof");
    auto file = std::make_shared<std::string>();
    auto order = std::make_shared<std::string>();
    cmd->add_option("file", *file, "derivation file")->required();
    cmd->add_option("--atom-order", *order,
                    "cut atoms are processed in this order");
    cmd->callback([file, order, &exit_code] {
      Derivation d = parse_derivation(read_file(*file));
      CheckReport rep = check(d);
      if (!rep.valid || d.premiss() != Formula::one()) {
        std::cerr << "input is not a valid proof\n" << rep.to_text();
        exit_code = 1;
        return;
      }
      std::vector<Atom> o;
      if (!order->empty()) o = parse_order(*order);
      std::cout << print_derivation(eliminate_cuts(d, o)) << "\n";
      exit_code = 0;
    });
  }

  // project <file> --atom a --side left|right
  {
    auto* cmd = app.add_subcommand("project", "project a derivation");
    auto file = std::make_shared<std::string>();
    auto atom = std::make_shared<std::string>();
    auto side = std::make_shared<std::string>();
    cmd->add_option("file", *file, "derivation file")->required();
    cmd->add_option("--atom", *atom, "atom to project on")->required();
    cmd->add_option("--side", *side, "left or right")
        ->required()
        ->check(CLI::IsMember({"left", "right"}));
    cmd->callback([file, atom, side, &exit_code] {
      Derivation d = parse_derivation(read_file(*file));
      CheckReport rep = check(d);
      if (!rep.valid) {
        std::cerr << "input derivation is invalid\n" << rep.to_text();
        exit_code = 1;
        return;
      }
      Side s = *side == "left" ? Side::Left : Side::Right;
      std::cout << print_derivation(project_derivation(d, *atom, s)) << "\n";
      exit_code = 0;
    });
  }

  // stats <file>
  {
    auto* cmd = app.add_subcommand("stats", "derivation metrics as CSV");
    auto file = std::make_shared<std::string>();
    cmd->add_option("file", *file, "derivation file")->required();
    cmd->callback([file, &exit_code] {
      Derivation d = parse_derivation(read_file(*file));
      CheckReport rep = check(d);
      std::cout << d.width() << "," << d.height() << "," << d.size() << ","
                << rep.cuts.size() << "\n";
      exit_code = 0;
    });
  }

  // statman --n N --emit proof|formula|stats
  {
    auto* cmd = app.add_subcommand("statman", "Statman tautologies");
    auto n = std::make_shared<unsigned>(1);
    auto emit = std::make_shared<std::string>("proof");
    cmd->add_option("--n", *n, "index of the tautology")->required();
    cmd->add_option("--emit", *emit, "proof, formula or stats")
        ->check(CLI::IsMember({"proof", "formula", "stats"}));
    cmd->callback([n, emit, &exit_code] {
      if (*emit == "formula") {
        std::cout << print_formula(statman_formula(*n).formula) << "\n";
      } else if (*emit == "proof") {
        std::cout << print_derivation(statman_proof(*n)) << "\n";
      } else {
        StatmanInstance inst = statman_formula(*n);
        Derivation proof = statman_proof(*n);
        CheckReport rep = check(proof);
        std::cout << *n << "," << inst.formula.size() << "," << proof.size()
                  << "," << proof.width() << "," << proof.height() << ","
                  << rep.cuts.size() << "\n";
      }
      exit_code = 0;
    });
  }

  // to-sdt <formula> [--order ...] [--emit sdt|up|down]
  {
    auto* cmd = app.add_subcommand("to-sdt",
                                   "convert to an ordered decision tree");
    auto formula = std::make_shared<std::string>();
    auto order = std::make_shared<std::string>();
    auto emit = std::make_shared<std::string>("sdt");
    cmd->add_option("formula", *formula, "formula text")->required();
    cmd->add_option("--order", *order, "comma-separated atom order");
    cmd->add_option("--emit", *emit, "sdt, up or down")
        ->check(CLI::IsMember({"sdt", "up", "down"}));
    cmd->callback([formula, order, emit, &exit_code] {
      Formula f = parse_formula(*formula);
      AtomOrder o = order->empty() ? default_order(f) : parse_order(*order);
      SdtResult res = to_sdt(f, o);
      if (*emit == "sdt")
        std::cout << print_formula(res.sdt) << "\n";
      else if (*emit == "up")
        std::cout << print_derivation(res.up) << "\n";
      else
        std::cout << print_derivation(res.down) << "\n";
      exit_code = 0;
    });
  }

  // apply <f1> <f2> --conn and|or [--order ...] [--emit result|cert]
  {
    auto* cmd = app.add_subcommand("apply", "combine two RODTs");
    auto f1 = std::make_shared<std::string>();
    auto f2 = std::make_shared<std::string>();
    auto conn = std::make_shared<std::string>();
    auto order = std::make_shared<std::string>();
    auto emit = std::make_shared<std::string>("result");
    cmd->add_option("f1", *f1, "first RODT")->required();
    cmd->add_option("f2", *f2, "second RODT")->required();
    cmd->add_option("--conn", *conn, "and or or")
        ->required()
        ->check(CLI::IsMember({"and", "or"}));
    cmd->add_option("--order", *order, "comma-separated atom order");
    cmd->add_option("--emit", *emit, "result or cert")
        ->check(CLI::IsMember({"result", "cert"}));
    cmd->callback([f1, f2, conn, order, emit, &exit_code] {
      Formula a = parse_formula(*f1);
      Formula b = parse_formula(*f2);
      AtomOrder o;
      if (!order->empty()) {
        o = parse_order(*order);
      } else {
        std::set<Atom> as = atoms(a);
        collect_atoms(b, as);
        o.assign(as.begin(), as.end());
      }
      Connective c = *conn == "and" ? Connective::conj() : Connective::disj();
      ApplyResult res = apply_rodt(a, b, c, o);
      if (*emit == "result")
        std::cout << print_formula(res.rodt) << "\n";
      else
        std::cout << print_derivation(res.cert) << "\n";
      exit_code = 0;
    });
  }

  // prove <formula>
  {
    auto* cmd = app.add_subcommand("prove", "decide and certify a tautology");
    auto formula = std::make_shared<std::string>();
    cmd->add_option("formula", *formula, "formula text")->required();
    cmd->callback([formula, &exit_code] {
      Formula f = parse_formula(*formula);
      ProveResult res = prove_tautology(f, atom_limit_from_env());
      if (res.tautology) {
        std::cout << print_derivation(res.proof) << "\n";
        exit_code = 0;
      } else {
        std::cout << "NotTautology";
        bool first = true;
        for (const auto& [atom, value] : res.witness) {
          std::cout << (first ? " " : ",") << atom << "="
                    << (value ? "1" : "0");
          first = false;
        }
        std::cout << "\n";
        exit_code = 1;
      }
    });
  }

  // construct <name> ...
  {
    auto* cmd = app.add_subcommand("construct",
                                   "emit a construction derivation");
    cmd->require_subcommand(1);
    auto emit = [&exit_code](const Derivation& d) {
      std::cout << print_derivation(d) << "\n";
      exit_code = 0;
    };

    {
      auto* sub = cmd->add_subcommand("weakening", "0 -> A");
      auto a = std::make_shared<std::string>();
      sub->add_option("formula", *a)->required();
      sub->callback([a, emit] { emit(weakening(parse_formula(*a))); });
    }
    {
      auto* sub = cmd->add_subcommand("coweakening", "A -> 1");
      auto a = std::make_shared<std::string>();
      sub->add_option("formula", *a)->required();
      sub->callback([a, emit] { emit(coweakening(parse_formula(*a))); });
    }
    {
      auto* sub = cmd->add_subcommand("attach-unit",
                                      "unit attachment derivations");
      auto a = std::make_shared<std::string>();
      auto atom = std::make_shared<std::string>();
      auto side = std::make_shared<std::string>();
      sub->add_option("formula", *a)->required();
      sub->add_option("--atom", *atom)->required();
      sub->add_option("--side", *side)
          ->required()
          ->check(CLI::IsMember(
              {"right1", "left1", "right0-elim", "left0-elim"}));
      sub->callback([a, atom, side, emit] {
        AttachSide s = *side == "right1"        ? AttachSide::Right1
                       : *side == "left1"       ? AttachSide::Left1
                       : *side == "right0-elim" ? AttachSide::Right0Elim
                                                : AttachSide::Left0Elim;
        emit(attach_unit(parse_formula(*a), *atom, s));
      });
    }
    {
      auto* sub = cmd->add_subcommand("nest", "nesting derivations");
      auto b = std::make_shared<std::string>();
      auto c = std::make_shared<std::string>();
      auto atom = std::make_shared<std::string>();
      auto dir = std::make_shared<std::string>();
      sub->add_option("left", *b)->required();
      sub->add_option("right", *c)->required();
      sub->add_option("--atom", *atom)->required();
      sub->add_option("--dir", *dir)
          ->required()
          ->check(CLI::IsMember({"unnest", "renest"}));
      sub->callback([b, c, atom, dir, emit] {
        NestDirection d = *dir == "unnest" ? NestDirection::Unnest
                                           : NestDirection::Renest;
        emit(nest(parse_formula(*b), parse_formula(*c), *atom, d));
      });
    }
    {
      auto* sub = cmd->add_subcommand("flatten",
                                      "translate to the Prop fragment");
      auto a = std::make_shared<std::string>();
      auto part = std::make_shared<std::string>("down");
      sub->add_option("formula", *a)->required();
      sub->add_option("--part", *part)
          ->check(CLI::IsMember({"prop", "down", "up"}));
      sub->callback([a, part, emit, &exit_code] {
        FlattenResult res = flatten_to_prop(parse_formula(*a));
        if (*part == "prop") {
          std::cout << print_formula(res.prop) << "\n";
          exit_code = 0;
        } else if (*part == "down") {
          emit(res.down);
        } else {
          emit(res.up);
        }
      });
    }
    {
      auto* sub = cmd->add_subcommand("contraction", "A alpha A -> A");
      auto a = std::make_shared<std::string>();
      auto conn = std::make_shared<std::string>();
      sub->add_option("formula", *a)->required();
      sub->add_option("--conn", *conn, "or, or an atom name")->required();
      sub->callback([a, conn, emit] {
        emit(contraction(parse_formula(*a), conn_from_word(*conn)));
      });
    }
    {
      auto* sub = cmd->add_subcommand("cocontraction", "A -> A beta A");
      auto a = std::make_shared<std::string>();
      auto conn = std::make_shared<std::string>();
      sub->add_option("formula", *a)->required();
      sub->add_option("--conn", *conn, "and, or an atom name")->required();
      sub->callback([a, conn, emit] {
        emit(cocontraction(parse_formula(*a), conn_from_word(*conn)));
      });
    }
    {
      auto* sub = cmd->add_subcommand("merge-in", "K{A} & B -> K{A & B}");
      auto k = std::make_shared<std::string>();
      auto a = std::make_shared<std::string>();
      auto b = std::make_shared<std::string>();
      sub->add_option("context", *k, "context with hole {}")->required();
      sub->add_option("a", *a)->required();
      sub->add_option("b", *b)->required();
      sub->callback([k, a, b, emit] {
        emit(merge_in(parse_context(*k), parse_formula(*a),
                      parse_formula(*b)));
      });
    }
    {
      auto* sub = cmd->add_subcommand("merge-out", "K{A | B} -> K{A} | B");
      auto k = std::make_shared<std::string>();
      auto a = std::make_shared<std::string>();
      auto b = std::make_shared<std::string>();
      sub->add_option("context", *k, "context with hole {}")->required();
      sub->add_option("a", *a)->required();
      sub->add_option("b", *b)->required();
      sub->callback([k, a, b, emit] {
        emit(merge_out(parse_context(*k), parse_formula(*a),
                       parse_formula(*b)));
      });
    }
    {
      auto* sub = cmd->add_subcommand("dt-weakening",
                                      "grow a dead decision branch");
      auto k = std::make_shared<std::string>();
      auto a = std::make_shared<std::string>();
      auto b = std::make_shared<std::string>();
      auto c = std::make_shared<std::string>();
      auto atom = std::make_shared<std::string>();
      auto side = std::make_shared<std::string>();
      sub->add_option("context", *k)->required();
      sub->add_option("a", *a)->required();
      sub->add_option("b", *b)->required();
      sub->add_option("c", *c)->required();
      sub->add_option("--atom", *atom)->required();
      sub->add_option("--side", *side)
          ->required()
          ->check(CLI::IsMember({"left", "right"}));
      sub->callback([k, a, b, c, atom, side, emit] {
        DtwSide s = *side == "left" ? DtwSide::Left : DtwSide::Right;
        emit(dt_weakening(parse_context(*k), parse_formula(*a),
                          parse_formula(*b), parse_formula(*c), *atom, s));
      });
    }
    {
      auto* sub = cmd->add_subcommand("reorder",
                                      "split or join by projections");
      auto a = std::make_shared<std::string>();
      auto atom = std::make_shared<std::string>();
      auto dir = std::make_shared<std::string>();
      sub->add_option("formula", *a)->required();
      sub->add_option("--atom", *atom)->required();
      sub->add_option("--dir", *dir)
          ->required()
          ->check(CLI::IsMember({"up", "down"}));
      sub->callback([a, atom, dir, emit] {
        Formula f = parse_formula(*a);
        emit(*dir == "up" ? reorder_up(f, *atom) : reorder_down(f, *atom));
      });
    }
    {
      auto* sub = cmd->add_subcommand("ac", "associativity/commutativity");
      auto f = std::make_shared<std::string>();
      auto g = std::make_shared<std::string>();
      sub->add_option("from", *f)->required();
      sub->add_option("to", *g)->required();
      sub->callback([f, g, emit] {
        emit(ac_derivation(parse_formula(*f), parse_formula(*g)));
      });
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  return exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  int code = 0;
  try {
    dtsa::run_deep([&] {
      try {
        code = run_cli(argc, argv);
      } catch (const dtsa::ParseError& e) {
        std::cerr << "syntax error: " << e.what() << "\n";
        code = 2;
      } catch (const dtsa::SemanticError& e) {
        std::cerr << "error: " << e.what() << "\n";
        code = 3;
      }
    });
  } catch (const std::exception& e) {
    std::cerr << "fatal: " << e.what() << "\n";
    return 3;
  }
  return code;
}
