#include "irg/io.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <sstream>

#include "irg/errors.hpp"

namespace irg {

namespace {

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

[[noreturn]] void parse_fail(int line_no, const std::string& msg) {
  throw InputError("line " + std::to_string(line_no) + ": " + msg);
}

struct Lines {
  std::vector<std::pair<int, std::string>> rows;  // (line number, content)
  explicit Lines(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int no = 0;
    while (std::getline(in, line)) {
      ++no;
      std::size_t hash = line.find('#');
      if (hash != std::string::npos) line = line.substr(0, hash);
      if (split_ws(line).empty()) continue;
      rows.emplace_back(no, line);
    }
  }
};

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// --- game files -------------------------------------------------------------

GameTree parse_game(const std::string& text) {
  Lines lines(text);
  if (lines.rows.empty()) throw InputError("line 1: empty game file");
  {
    auto head = split_ws(lines.rows[0].second);
    if (head.size() != 2 || head[0] != "irgame" || head[1] != "1")
      parse_fail(lines.rows[0].first, "expected header 'irgame 1'");
  }

  struct RawNode {
    std::uint32_t id;
    NodeKind kind;
    bool has_parent;
    std::uint32_t parent_id;
    std::string incoming_label;
    int line;
  };
  std::string name = "game";
  std::vector<RawNode> raw;
  std::map<std::uint32_t, int> id_to_pos;
  struct RawInfoSet {
    std::string label;
    std::vector<std::string> actions;
    std::vector<std::uint32_t> node_ids;
    int line;
  };
  std::vector<RawInfoSet> raw_sets;
  std::map<std::uint32_t, std::vector<std::pair<std::string, Rational>>> chance_rows;
  std::map<std::uint32_t, Rational> payoff_rows;

  for (std::size_t r = 1; r < lines.rows.size(); ++r) {
    int line_no = lines.rows[r].first;
    auto tok = split_ws(lines.rows[r].second);
    const std::string& kw = tok[0];
    if (kw == "name") {
      if (tok.size() != 2) parse_fail(line_no, "usage: name <identifier>");
      name = tok[1];
    } else if (kw == "node") {
      if (tok.size() != 5) parse_fail(line_no, "usage: node <id> <kind> <parent|-> <label|->");
      RawNode n;
      n.line = line_no;
      try {
        n.id = static_cast<std::uint32_t>(std::stoul(tok[1]));
      } catch (...) {
        parse_fail(line_no, "bad node id '" + tok[1] + "'");
      }
      if (tok[2] == "decision")
        n.kind = NodeKind::kDecision;
      else if (tok[2] == "chance")
        n.kind = NodeKind::kChance;
      else if (tok[2] == "terminal")
        n.kind = NodeKind::kTerminal;
      else
        parse_fail(line_no, "unknown node kind '" + tok[2] + "'");
      n.has_parent = tok[3] != "-";
      if (n.has_parent) {
        try {
          n.parent_id = static_cast<std::uint32_t>(std::stoul(tok[3]));
        } catch (...) {
          parse_fail(line_no, "bad parent id '" + tok[3] + "'");
        }
        if (tok[4] == "-") parse_fail(line_no, "non-root node needs an incoming label");
        n.incoming_label = tok[4];
      }
      if (id_to_pos.count(n.id)) parse_fail(line_no, "duplicate node id " + tok[1]);
      id_to_pos[n.id] = static_cast<int>(raw.size());
      raw.push_back(std::move(n));
    } else if (kw == "infoset") {
      auto actions_kw = std::find(tok.begin(), tok.end(), "actions");
      auto nodes_kw = std::find(tok.begin(), tok.end(), "nodes");
      if (tok.size() < 2 || actions_kw == tok.end() || nodes_kw == tok.end() ||
          actions_kw > nodes_kw)
        parse_fail(line_no, "usage: infoset <label> actions <a>... nodes <id>...");
      RawInfoSet is;
      is.line = line_no;
      is.label = tok[1];
      for (auto it = actions_kw + 1; it != nodes_kw; ++it) is.actions.push_back(*it);
      for (auto it = nodes_kw + 1; it != tok.end(); ++it) {
        try {
          is.node_ids.push_back(static_cast<std::uint32_t>(std::stoul(*it)));
        } catch (...) {
          parse_fail(line_no, "bad node id '" + *it + "'");
        }
      }
      raw_sets.push_back(std::move(is));
    } else if (kw == "chance") {
      if (tok.size() < 4 || tok.size() % 2 != 0)
        parse_fail(line_no, "usage: chance <node-id> <label> <prob> [<label> <prob>...]");
      std::uint32_t id;
      try {
        id = static_cast<std::uint32_t>(std::stoul(tok[1]));
      } catch (...) {
        parse_fail(line_no, "bad node id '" + tok[1] + "'");
      }
      std::vector<std::pair<std::string, Rational>> rows;
      for (std::size_t i = 2; i + 1 < tok.size(); i += 2) {
        try {
          rows.emplace_back(tok[i], Rational::parse(tok[i + 1]));
        } catch (const InputError& e) {
          parse_fail(line_no, e.what());
        }
      }
      chance_rows[id] = std::move(rows);
    } else if (kw == "payoff") {
      if (tok.size() != 3) parse_fail(line_no, "usage: payoff <terminal-id> <rational>");
      std::uint32_t id;
      try {
        id = static_cast<std::uint32_t>(std::stoul(tok[1]));
      } catch (...) {
        parse_fail(line_no, "bad node id '" + tok[1] + "'");
      }
      try {
        payoff_rows[id] = Rational::parse(tok[2]);
      } catch (const InputError& e) {
        parse_fail(line_no, e.what());
      }
    } else {
      parse_fail(line_no, "unknown record '" + kw + "'");
    }
  }
  if (raw.empty()) throw InputError("game file has no node records");

  // Assemble nodes in file order; parents must precede children.
  std::vector<Node> nodes(raw.size());
  std::vector<std::vector<std::pair<std::string, int>>> kids(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    Node& n = nodes[i];
    n.kind = raw[i].kind;
    n.id = raw[i].id;
    if (raw[i].has_parent) {
      auto it = id_to_pos.find(raw[i].parent_id);
      if (it == id_to_pos.end() || it->second >= static_cast<int>(i))
        parse_fail(raw[i].line, "parent of node " + std::to_string(raw[i].id) +
                                    " must be declared earlier in the file");
      n.parent = it->second;
      kids[it->second].emplace_back(raw[i].incoming_label, static_cast<int>(i));
    } else {
      n.parent = -1;
    }
  }
  // Info sets.
  std::vector<InfoSet> sets;
  for (const auto& ris : raw_sets) {
    InfoSet is;
    is.label = ris.label;
    is.actions = ris.actions;
    for (std::uint32_t id : ris.node_ids) {
      auto it = id_to_pos.find(id);
      if (it == id_to_pos.end())
        parse_fail(ris.line, "infoset '" + ris.label + "' references unknown node " +
                                 std::to_string(id));
      is.nodes.push_back(it->second);
      nodes[it->second].info_set = static_cast<int>(sets.size());
    }
    sets.push_back(std::move(is));
  }
  // Payoffs and chance rows.
  for (const auto& [id, pay] : payoff_rows) {
    auto it = id_to_pos.find(id);
    if (it == id_to_pos.end())
      throw InputError("payoff record references unknown node " + std::to_string(id));
    nodes[it->second].payoff = pay;
  }
  // Order children: decision nodes follow their info set's action order,
  // chance nodes follow their chance record.
  for (std::size_t i = 0; i < raw.size(); ++i) {
    Node& n = nodes[i];
    const auto& attached = kids[i];
    if (attached.empty()) continue;
    std::vector<std::string> order;
    if (n.kind == NodeKind::kDecision && n.info_set >= 0) {
      order = sets[n.info_set].actions;
    } else if (n.kind == NodeKind::kChance) {
      auto it = chance_rows.find(n.id);
      if (it == chance_rows.end())
        throw InputError("chance node " + std::to_string(n.id) + " has no chance record");
      for (const auto& [label, prob] : it->second) {
        order.push_back(label);
        n.chance.push_back(prob);
        n.actions.push_back(label);
      }
    } else {
      // Terminal with children or decision without info set; let the
      // validator report it with node ids.
      for (const auto& [label, child] : attached) order.push_back(label);
      if (n.kind == NodeKind::kChance) n.actions = order;
    }
    if (order.size() != attached.size())
      throw InputError("node " + std::to_string(n.id) + " has " +
                       std::to_string(attached.size()) + " children but " +
                       std::to_string(order.size()) + " declared actions");
    for (std::size_t slot = 0; slot < order.size(); ++slot) {
      int found = -1;
      for (const auto& [label, child] : attached)
        if (label == order[slot]) {
          if (found >= 0)
            throw InputError("node " + std::to_string(n.id) + " has duplicate edge label '" +
                             order[slot] + "'");
          found = child;
        }
      if (found < 0)
        throw InputError("node " + std::to_string(n.id) + " is missing a child for action '" +
                         order[slot] + "'");
      nodes[found].incoming = static_cast<int>(slot);
      n.children.push_back(found);
    }
  }
  GameTree tree(name, std::move(nodes), std::move(sets));
  ValidationReport rep = validate_game(tree);
  if (!rep.pass()) {
    std::string msg = "invalid game:";
    for (const auto& issue : rep.issues) {
      msg += " " + issue.message;
      if (issue.node_id) msg += " (node " + std::to_string(*issue.node_id) + ")";
      msg += ";";
    }
    throw InputError(msg);
  }
  return tree;
}

std::string serialize_game(const GameTree& tree) {
  std::ostringstream out;
  out << "irgame 1\n";
  out << "name " << tree.name() << "\n";
  // Preorder traversal for stable output.
  std::vector<int> order;
  order.reserve(tree.num_nodes());
  auto walk = [&](auto&& self, int n) -> void {
    order.push_back(n);
    for (int c : tree.node(n).children) self(self, c);
  };
  if (tree.num_nodes() > 0) walk(walk, tree.root());
  for (int i : order) {
    const Node& n = tree.node(i);
    out << "node " << n.id << ' ';
    out << (n.kind == NodeKind::kDecision ? "decision"
            : n.kind == NodeKind::kChance ? "chance"
                                          : "terminal");
    if (n.parent >= 0)
      out << ' ' << tree.node(n.parent).id << ' '
          << tree.action_labels(n.parent)[n.incoming] << '\n';
    else
      out << " - -\n";
  }
  for (const InfoSet& is : tree.info_sets()) {
    out << "infoset " << is.label << " actions";
    for (const std::string& a : is.actions) out << ' ' << a;
    out << " nodes";
    for (int n : is.nodes) out << ' ' << tree.node(n).id;
    out << '\n';
  }
  for (int i : order) {
    const Node& n = tree.node(i);
    if (n.kind != NodeKind::kChance) continue;
    out << "chance " << n.id;
    for (std::size_t c = 0; c < n.children.size(); ++c)
      out << ' ' << n.actions[c] << ' ' << n.chance[c].str();
    out << '\n';
  }
  for (int i : order) {
    const Node& n = tree.node(i);
    if (n.kind != NodeKind::kTerminal) continue;
    out << "payoff " << n.id << ' ' << n.payoff.str() << '\n';
  }
  return out.str();
}

std::uint64_t game_hash(const GameTree& tree) { return fnv1a(serialize_game(tree)); }

// --- strategies ----------------------------------------------------------------

namespace {

Strategy parse_blocks_text(const GameTree& tree, const std::string& text, bool force_float) {
  std::vector<std::vector<Rational>> blocks;
  bool any_decimal = false;
  std::string cleaned;
  for (char c : text)
    if (c != '(' && c != ')') cleaned.push_back(c);
  std::size_t pos = 0;
  while (pos <= cleaned.size()) {
    std::size_t semi = cleaned.find(';', pos);
    std::string part =
        semi == std::string::npos ? cleaned.substr(pos) : cleaned.substr(pos, semi - pos);
    std::vector<Rational> block;
    std::size_t p = 0;
    while (p <= part.size()) {
      std::size_t comma = part.find(',', p);
      std::string entry =
          comma == std::string::npos ? part.substr(p) : part.substr(p, comma - p);
      std::string trimmed;
      for (char c : entry)
        if (!std::isspace(static_cast<unsigned char>(c))) trimmed.push_back(c);
      if (!trimmed.empty()) {
        if (trimmed.find('.') != std::string::npos ||
            trimmed.find('e') != std::string::npos || trimmed.find('E') != std::string::npos)
          any_decimal = true;
        block.push_back(Rational::parse(trimmed));
      }
      if (comma == std::string::npos) break;
      p = comma + 1;
    }
    if (!block.empty()) blocks.push_back(std::move(block));
    if (semi == std::string::npos) break;
    pos = semi + 1;
  }
  Strategy s;
  s.blocks = std::move(blocks);
  s.mode = (any_decimal || force_float) ? NumericMode::kFloat64 : NumericMode::kExact;
  validate_strategy(tree, s);
  return s;
}

}  // namespace

Strategy parse_strategy(const GameTree& tree, const std::string& text,
                        std::vector<std::string>* warnings) {
  std::string stripped = text;
  std::size_t first = stripped.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) throw InputError("empty strategy text");
  if (stripped.compare(first, 10, "irstrategy") != 0)
    return parse_blocks_text(tree, text, false);

  Lines lines(text);
  auto head = split_ws(lines.rows[0].second);
  if (head.size() != 2 || head[0] != "irstrategy" || head[1] != "1")
    parse_fail(lines.rows[0].first, "expected header 'irstrategy 1'");
  std::string blocks_text;
  bool force_float = false;
  for (std::size_t r = 1; r < lines.rows.size(); ++r) {
    int line_no = lines.rows[r].first;
    auto tok = split_ws(lines.rows[r].second);
    if (tok[0] == "game-hash") {
      if (tok.size() != 2) parse_fail(line_no, "usage: game-hash <hex>");
      if (tok[1] != hex64(game_hash(tree)) && warnings)
        warnings->push_back("strategy was written for a different game (hash mismatch)");
    } else if (tok[0] == "mode") {
      if (tok.size() != 2 || (tok[1] != "exact" && tok[1] != "float"))
        parse_fail(line_no, "usage: mode exact|float");
      force_float = tok[1] == "float";
    } else if (tok[0] == "blocks") {
      blocks_text = lines.rows[r].second.substr(lines.rows[r].second.find("blocks") + 6);
    } else {
      parse_fail(line_no, "unknown record '" + tok[0] + "'");
    }
  }
  if (blocks_text.empty()) throw InputError("strategy file has no blocks record");
  return parse_blocks_text(tree, blocks_text, force_float);
}

std::string strategy_blocks_text(const Strategy& strategy) {
  std::string out;
  for (std::size_t b = 0; b < strategy.blocks.size(); ++b) {
    if (b) out += "; ";
    if (strategy.mode == NumericMode::kExact) {
      out += serialize_block_text(strategy.blocks[b]);
    } else {
      out += "(";
      for (std::size_t j = 0; j < strategy.blocks[b].size(); ++j) {
        if (j) out += ", ";
        out += format_double(strategy.blocks[b][j].to_double());
      }
      out += ")";
    }
  }
  return out;
}

std::string serialize_strategy(const GameTree& tree, const Strategy& strategy) {
  validate_strategy(tree, strategy);
  std::ostringstream out;
  out << "irstrategy 1\n";
  out << "game-hash " << hex64(game_hash(tree)) << "\n";
  out << "mode " << (strategy.mode == NumericMode::kExact ? "exact" : "float") << "\n";
  out << "blocks " << strategy_blocks_text(strategy) << "\n";
  return out.str();
}

// --- polynomials ------------------------------------------------------------

namespace {

std::string var_name(int i, int j) {
  // 1-based, compact when unambiguous.
  if (i + 1 <= 9 && j + 1 <= 9) return "m" + std::to_string(i + 1) + std::to_string(j + 1);
  return "m" + std::to_string(i + 1) + "_" + std::to_string(j + 1);
}

std::pair<int, int> parse_var_name(const std::string& tok, int line_no) {
  if (tok.size() < 3 || tok[0] != 'm') parse_fail(line_no, "bad variable '" + tok + "'");
  std::string body = tok.substr(1);
  std::size_t us = body.find('_');
  try {
    if (us != std::string::npos)
      return {std::stoi(body.substr(0, us)) - 1, std::stoi(body.substr(us + 1)) - 1};
    if (body.size() == 2) return {body[0] - '0' - 1, body[1] - '0' - 1};
  } catch (...) {
  }
  parse_fail(line_no, "bad variable '" + tok + "' (use m<i><j> or m<i>_<j>)");
}

}  // namespace

std::string polynomial_pretty(const UtilityPolynomial& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [mono, coeff] : p.terms()) {
    Rational c = coeff;
    if (first) {
      if (c.sign() < 0) {
        out += "-";
        c = -c;
      }
    } else {
      out += c.sign() < 0 ? " - " : " + ";
      if (c.sign() < 0) c = -c;
    }
    first = false;
    bool need_coeff = mono.factors.empty() || c != Rational(1);
    if (need_coeff) out += c.str();
    bool need_dot = need_coeff;
    for (const auto& [v, e] : mono.factors) {
      if (need_dot) out += "·";
      need_dot = true;
      auto [i, j] = p.var_block(v);
      out += var_name(i, j);
      if (e > 1) out += "^" + std::to_string(e);
    }
  }
  return out;
}

std::string serialize_polynomial(const UtilityPolynomial& p) {
  std::ostringstream out;
  out << "irpoly 1\nblocks";
  for (int m : p.block_sizes()) out << ' ' << m;
  out << '\n';
  for (const auto& [mono, coeff] : p.terms()) {
    out << "term " << coeff.str();
    for (const auto& [v, e] : mono.factors) {
      auto [i, j] = p.var_block(v);
      out << ' ' << var_name(i, j);
      if (e > 1) out << '^' << e;
    }
    out << '\n';
  }
  return out.str();
}

UtilityPolynomial parse_polynomial(const std::string& text) {
  Lines lines(text);
  if (lines.rows.empty()) throw InputError("line 1: empty polynomial file");
  auto head = split_ws(lines.rows[0].second);
  if (head.size() != 2 || head[0] != "irpoly" || head[1] != "1")
    parse_fail(lines.rows[0].first, "expected header 'irpoly 1'");
  std::size_t r = 1;
  if (r >= lines.rows.size()) throw InputError("polynomial file has no blocks record");
  auto btok = split_ws(lines.rows[r].second);
  if (btok[0] != "blocks" || btok.size() < 2)
    parse_fail(lines.rows[r].first, "usage: blocks <m1> <m2> ...");
  std::vector<int> sizes;
  for (std::size_t i = 1; i < btok.size(); ++i) {
    try {
      sizes.push_back(std::stoi(btok[i]));
    } catch (...) {
      parse_fail(lines.rows[r].first, "bad block size '" + btok[i] + "'");
    }
  }
  UtilityPolynomial p(sizes);
  for (++r; r < lines.rows.size(); ++r) {
    int line_no = lines.rows[r].first;
    auto tok = split_ws(lines.rows[r].second);
    if (tok[0] != "term" || tok.size() < 2)
      parse_fail(line_no, "usage: term <coeff> [var[^e] ...]");
    Rational coeff;
    try {
      coeff = Rational::parse(tok[1]);
    } catch (const InputError& e) {
      parse_fail(line_no, e.what());
    }
    Monomial mono;
    for (std::size_t i = 2; i < tok.size(); ++i) {
      std::string vtok = tok[i];
      int exp = 1;
      std::size_t caret = vtok.find('^');
      if (caret != std::string::npos) {
        try {
          exp = std::stoi(vtok.substr(caret + 1));
        } catch (...) {
          parse_fail(line_no, "bad exponent in '" + vtok + "'");
        }
        vtok = vtok.substr(0, caret);
      }
      auto [bi, bj] = parse_var_name(vtok, line_no);
      if (bi < 0 || bi >= p.num_blocks() || bj < 0 || bj >= p.block_sizes()[bi])
        parse_fail(line_no, "variable out of range in '" + tok[i] + "'");
      mono = mono.times(Monomial::var(p.var_index(bi, bj), exp));
    }
    p.add_term(mono, coeff);
  }
  return p;
}

// --- reduction source formats -------------------------------------------------

Cnf3 parse_dimacs(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  Cnf3 cnf;
  bool have_header = false;
  int line_no = 0;
  std::vector<int> current;
  while (std::getline(in, line)) {
    ++line_no;
    auto tok = split_ws(line);
    if (tok.empty() || tok[0] == "c") continue;
    if (tok[0] == "p") {
      if (tok.size() != 4 || tok[1] != "cnf") parse_fail(line_no, "expected 'p cnf <vars> <clauses>'");
      try {
        cnf.num_vars = std::stoi(tok[2]);
      } catch (...) {
        parse_fail(line_no, "bad variable count");
      }
      have_header = true;
      continue;
    }
    if (!have_header) parse_fail(line_no, "clause before 'p cnf' header");
    for (const std::string& t : tok) {
      int lit;
      try {
        lit = std::stoi(t);
      } catch (...) {
        parse_fail(line_no, "bad literal '" + t + "'");
      }
      if (lit == 0) {
        cnf.clauses.push_back(current);
        current.clear();
      } else {
        current.push_back(lit);
      }
    }
  }
  if (!have_header) throw InputError("missing 'p cnf' header");
  if (!current.empty()) cnf.clauses.push_back(current);
  return cnf;
}

std::string serialize_dimacs(const Cnf3& cnf) {
  std::ostringstream out;
  out << "p cnf " << cnf.num_vars << ' ' << cnf.clauses.size() << '\n';
  for (const auto& clause : cnf.clauses) {
    for (int lit : clause) out << lit << ' ';
    out << "0\n";
  }
  return out.str();
}

CommonPayoffFamily parse_family(const std::string& text) {
  Lines lines(text);
  if (lines.rows.empty()) throw InputError("line 1: empty family file");
  auto head = split_ws(lines.rows[0].second);
  if (head.size() != 2 || head[0] != "irfamily" || head[1] != "1")
    parse_fail(lines.rows[0].first, "expected header 'irfamily 1'");
  CommonPayoffFamily fam;
  int states = -1;
  struct PayoffRow {
    int state;
    std::string a, b;
    Rational value;
    int line;
  };
  std::vector<PayoffRow> payoff_rows;
  for (std::size_t r = 1; r < lines.rows.size(); ++r) {
    int line_no = lines.rows[r].first;
    auto tok = split_ws(lines.rows[r].second);
    if (tok[0] == "states") {
      if (tok.size() != 2) parse_fail(line_no, "usage: states <count>");
      states = std::stoi(tok[1]);
    } else if (tok[0] == "dist") {
      for (std::size_t i = 1; i < tok.size(); ++i) fam.dist.push_back(Rational::parse(tok[i]));
    } else if (tok[0] == "p1-class" || tok[0] == "p2-class") {
      auto states_kw = std::find(tok.begin(), tok.end(), "states");
      auto actions_kw = std::find(tok.begin(), tok.end(), "actions");
      if (tok.size() < 2 || states_kw == tok.end() || actions_kw == tok.end() ||
          states_kw > actions_kw)
        parse_fail(line_no, "usage: p?-class <label> states <s>... actions <a>...");
      CommonPayoffFamily::PlayerClass cls;
      cls.label = tok[1];
      for (auto it = states_kw + 1; it != actions_kw; ++it) cls.states.push_back(std::stoi(*it));
      for (auto it = actions_kw + 1; it != tok.end(); ++it) cls.actions.push_back(*it);
      (tok[0] == "p1-class" ? fam.p1_classes : fam.p2_classes).push_back(std::move(cls));
    } else if (tok[0] == "payoff") {
      if (tok.size() != 5) parse_fail(line_no, "usage: payoff <state> <a> <b> <value>");
      payoff_rows.push_back(
          {std::stoi(tok[1]), tok[2], tok[3], Rational::parse(tok[4]), line_no});
    } else {
      parse_fail(line_no, "unknown record '" + tok[0] + "'");
    }
  }
  if (states < 0 || static_cast<int>(fam.dist.size()) != states)
    throw InputError("family: dist length must match the declared state count");
  fam.payoffs.resize(states);
  for (int s = 0; s < states; ++s) {
    const auto& a_actions = fam.p1_classes[fam.class_of(0, s)].actions;
    const auto& b_actions = fam.p2_classes[fam.class_of(1, s)].actions;
    fam.payoffs[s].assign(a_actions.size(),
                          std::vector<Rational>(b_actions.size(), Rational(0)));
  }
  for (const auto& row : payoff_rows) {
    if (row.state < 0 || row.state >= states) parse_fail(row.line, "state out of range");
    const auto& a_actions = fam.p1_classes[fam.class_of(0, row.state)].actions;
    const auto& b_actions = fam.p2_classes[fam.class_of(1, row.state)].actions;
    auto ai = std::find(a_actions.begin(), a_actions.end(), row.a);
    auto bi = std::find(b_actions.begin(), b_actions.end(), row.b);
    if (ai == a_actions.end() || bi == b_actions.end())
      parse_fail(row.line, "unknown action label in payoff record");
    fam.payoffs[row.state][ai - a_actions.begin()][bi - b_actions.begin()] = row.value;
  }
  fam.validate();
  return fam;
}

std::string serialize_family(const CommonPayoffFamily& fam) {
  std::ostringstream out;
  out << "irfamily 1\n";
  out << "states " << fam.num_states() << "\n";
  out << "dist";
  for (const Rational& p : fam.dist) out << ' ' << p.str();
  out << '\n';
  auto emit_class = [&](const char* kw, const CommonPayoffFamily::PlayerClass& cls) {
    out << kw << ' ' << cls.label << " states";
    for (int s : cls.states) out << ' ' << s;
    out << " actions";
    for (const std::string& a : cls.actions) out << ' ' << a;
    out << '\n';
  };
  for (const auto& cls : fam.p1_classes) emit_class("p1-class", cls);
  for (const auto& cls : fam.p2_classes) emit_class("p2-class", cls);
  for (int s = 0; s < fam.num_states(); ++s) {
    const auto& a_actions = fam.p1_classes[fam.class_of(0, s)].actions;
    const auto& b_actions = fam.p2_classes[fam.class_of(1, s)].actions;
    for (std::size_t a = 0; a < a_actions.size(); ++a)
      for (std::size_t b = 0; b < b_actions.size(); ++b)
        if (!fam.payoffs[s][a][b].is_zero())
          out << "payoff " << s << ' ' << a_actions[a] << ' ' << b_actions[b] << ' '
              << fam.payoffs[s][a][b].str() << '\n';
  }
  return out.str();
}

PolytensorGame parse_polytensor(const std::string& text) {
  Lines lines(text);
  if (lines.rows.empty()) throw InputError("line 1: empty polytensor file");
  auto head = split_ws(lines.rows[0].second);
  if (head.size() != 2 || head[0] != "irpolytensor" || head[1] != "1")
    parse_fail(lines.rows[0].first, "expected header 'irpolytensor 1'");
  PolytensorGame pt;
  int current = -1;
  std::map<std::vector<int>, int> subset_pos;
  for (std::size_t r = 1; r < lines.rows.size(); ++r) {
    int line_no = lines.rows[r].first;
    auto tok = split_ws(lines.rows[r].second);
    if (tok[0] == "players") {
      pt.n = std::stoi(tok.at(1));
    } else if (tok[0] == "actions") {
      pt.m = std::stoi(tok.at(1));
    } else if (tok[0] == "subset") {
      if (static_cast<int>(tok.size()) != pt.c + 1)
        parse_fail(line_no, "subset needs exactly 5 players");
      std::vector<int> subset;
      for (int k = 1; k <= pt.c; ++k) subset.push_back(std::stoi(tok[k]));
      if (!std::is_sorted(subset.begin(), subset.end()))
        parse_fail(line_no, "subset players must be ascending");
      long entries = 1;
      for (int k = 0; k < pt.c; ++k) entries *= pt.m;
      subset_pos[subset] = static_cast<int>(pt.subsets.size());
      pt.subsets.push_back(subset);
      pt.tables.emplace_back(entries, Rational(0));
      current = static_cast<int>(pt.subsets.size()) - 1;
    } else if (tok[0] == "entry") {
      if (current < 0) parse_fail(line_no, "entry before any subset record");
      if (static_cast<int>(tok.size()) != pt.c + 2)
        parse_fail(line_no, "usage: entry <j1> .. <j5> <value>");
      long index = 0;
      for (int k = 1; k <= pt.c; ++k) {
        int a = std::stoi(tok[k]);
        if (a < 0 || a >= pt.m) parse_fail(line_no, "action index out of range");
        index = index * pt.m + a;
      }
      pt.tables[current][index] = Rational::parse(tok[pt.c + 1]);
    } else {
      parse_fail(line_no, "unknown record '" + tok[0] + "'");
    }
  }
  pt.validate(false);
  return pt;
}

std::string serialize_polytensor(const PolytensorGame& pt) {
  std::ostringstream out;
  out << "irpolytensor 1\n";
  out << "players " << pt.n << "\nactions " << pt.m << "\n";
  for (std::size_t s = 0; s < pt.subsets.size(); ++s) {
    out << "subset";
    for (int p : pt.subsets[s]) out << ' ' << p;
    out << '\n';
    std::vector<int> actions(pt.c, 0);
    long entries = static_cast<long>(pt.tables[s].size());
    for (long e = 0; e < entries; ++e) {
      if (pt.tables[s][e].is_zero()) continue;
      long rest = e;
      for (int k = pt.c - 1; k >= 0; --k) {
        actions[k] = static_cast<int>(rest % pt.m);
        rest /= pt.m;
      }
      out << "entry";
      for (int a : actions) out << ' ' << a;
      out << ' ' << pt.tables[s][e].str() << '\n';
    }
  }
  return out.str();
}

// --- reduction envelopes --------------------------------------------------------

std::string serialize_reduction(const ReductionOutput& out) {
  std::ostringstream os;
  os << "irreduction 1\n";
  os << "reduction: " << out.reduction << "\n";
  os << "precision: " << out.precision_out.str() << "\n";
  for (const auto& [k, v] : out.params) os << "param " << k << ": " << v.str() << "\n";
  for (const auto& note : out.notes) os << "note: " << note << "\n";
  if (!out.var_map.empty()) {
    os << "varmap:";
    for (int v : out.var_map) os << ' ' << v;
    os << '\n';
  }
  if (out.source_cnf) {
    os << "begin-source dimacs\n" << serialize_dimacs(*out.source_cnf) << "end-source\n";
  } else if (out.source_family) {
    os << "begin-source family\n" << serialize_family(*out.source_family) << "end-source\n";
  } else if (out.source_polytensor) {
    os << "begin-source polytensor\n"
       << serialize_polytensor(*out.source_polytensor) << "end-source\n";
  } else if (out.source_poly) {
    os << "begin-source poly\n" << serialize_polynomial(*out.source_poly) << "end-source\n";
  }
  os << "begin-game\n" << serialize_game(out.game) << "end-game\n";
  return os.str();
}

ReductionOutput parse_reduction(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  ReductionOutput out;
  int line_no = 0;
  bool have_header = false;
  std::string source_kind;
  std::string source_text, game_text;
  enum class Section { kTop, kSource, kGame } section = Section::kTop;
  while (std::getline(in, line)) {
    ++line_no;
    if (section == Section::kSource) {
      if (line == "end-source")
        section = Section::kTop;
      else
        source_text += line + "\n";
      continue;
    }
    if (section == Section::kGame) {
      if (line == "end-game")
        section = Section::kTop;
      else
        game_text += line + "\n";
      continue;
    }
    auto tok = split_ws(line);
    if (tok.empty()) continue;
    if (!have_header) {
      if (tok.size() != 2 || tok[0] != "irreduction" || tok[1] != "1")
        parse_fail(line_no, "expected header 'irreduction 1'");
      have_header = true;
      continue;
    }
    if (tok[0] == "reduction:") {
      out.reduction = tok.at(1);
    } else if (tok[0] == "precision:") {
      out.precision_out = Rational::parse(tok.at(1));
    } else if (tok[0] == "param") {
      if (tok.size() != 3 || tok[1].back() != ':') parse_fail(line_no, "usage: param <name>: <value>");
      out.params.emplace_back(tok[1].substr(0, tok[1].size() - 1), Rational::parse(tok[2]));
    } else if (tok[0] == "note:") {
      out.notes.push_back(line.substr(line.find("note:") + 6));
    } else if (tok[0] == "varmap:") {
      for (std::size_t i = 1; i < tok.size(); ++i) out.var_map.push_back(std::stoi(tok[i]));
    } else if (tok[0] == "begin-source") {
      source_kind = tok.at(1);
      section = Section::kSource;
    } else if (tok[0] == "begin-game") {
      section = Section::kGame;
    } else {
      parse_fail(line_no, "unknown record '" + tok[0] + "'");
    }
  }
  if (!have_header) throw InputError("missing 'irreduction 1' header");
  if (game_text.empty()) throw InputError("reduction file has no embedded game");
  out.game = parse_game(game_text);
  if (source_kind == "dimacs")
    out.source_cnf = parse_dimacs(source_text);
  else if (source_kind == "family")
    out.source_family = parse_family(source_text);
  else if (source_kind == "polytensor")
    out.source_polytensor = parse_polytensor(source_text);
  else if (source_kind == "poly")
    out.source_poly = parse_polynomial(source_text);
  else if (!source_kind.empty())
    throw InputError("unknown source kind '" + source_kind + "'");
  return out;
}

// --- reports --------------------------------------------------------------------

namespace {

class Report {
 public:
  void add(const std::string& key, const std::string& value) {
    rows_.emplace_back(key, value);
  }
  void add(const std::string& key, const Rational& value) { add(key, value.str()); }
  void add(const std::string& key, double value) { add(key, format_double(value)); }
  void add(const std::string& key, long value) { add(key, std::to_string(value)); }
  std::string str() const {
    std::string out;
    for (const auto& [k, v] : rows_) out += k + ": " + v + "\n";
    return out;
  }

 private:
  std::vector<std::pair<std::string, std::string>> rows_;
};

std::string verdict_str(bool pass) { return pass ? "pass" : "fail"; }

}  // namespace

std::string report_validate(const GameTree& tree, const ValidationReport& report) {
  Report r;
  r.add("report", std::string("validate"));
  r.add("game", tree.name());
  r.add("nodes", static_cast<long>(tree.num_nodes()));
  r.add("infosets", static_cast<long>(tree.num_info_sets()));
  for (const auto& issue : report.issues) {
    std::string where = issue.node_id ? " (node " + std::to_string(*issue.node_id) + ")" : "";
    r.add("issue", issue.message + where);
  }
  r.add("verdict", verdict_str(report.pass()));
  return r.str();
}

std::string report_eval(const GameTree& tree, const Strategy& strategy) {
  Report r;
  r.add("report", std::string("eval"));
  r.add("game", tree.name());
  Rational value = expected_utility(tree, strategy);
  r.add("value", value);
  r.add("value-decimal", value.to_double());
  return r.str();
}

std::string report_poly(const GameTree& tree) {
  UtilityPolynomial p = utility_polynomial(tree);
  Report r;
  r.add("report", std::string("poly"));
  r.add("game", tree.name());
  std::string blocks;
  for (int m : p.block_sizes()) blocks += (blocks.empty() ? "" : " ") + std::to_string(m);
  r.add("blocks", blocks);
  r.add("degree", static_cast<long>(p.degree()));
  r.add("terms", static_cast<long>(p.terms().size()));
  r.add("polynomial", polynomial_pretty(p));
  return r.str();
}

std::string report_gradient_grid(const GameTree& tree, int resolution, long node_budget) {
  if (resolution < 1) throw InputError("gradient grid resolution must be >= 1");
  UtilityPolynomial u = utility_polynomial(tree);
  auto sizes = block_sizes(tree);
  Report r;
  r.add("report", std::string("gradient-grid"));
  r.add("game", tree.name());
  r.add("resolution", static_cast<long>(resolution));
  // Enumerate the lattice via per-block compositions.
  std::vector<std::vector<std::vector<Rational>>> per_block;
  long count = 1;
  for (int m : sizes) {
    std::vector<std::vector<Rational>> pts;
    std::vector<int> comp(m, 0);
    auto rec = [&](auto&& self, int pos, int left) -> void {
      if (pos == m - 1) {
        comp[pos] = left;
        std::vector<Rational> pt;
        for (int c : comp) pt.push_back(Rational(c, resolution));
        pts.push_back(std::move(pt));
        return;
      }
      for (int v = left; v >= 0; --v) {
        comp[pos] = v;
        self(self, pos + 1, left - v);
      }
    };
    rec(rec, 0, resolution);
    count *= static_cast<long>(pts.size());
    if (count > node_budget)
      throw BudgetError("gradient grid exceeds the node budget");
    per_block.push_back(std::move(pts));
  }
  r.add("points", count);
  if (!sizes.empty()) {
    std::vector<std::size_t> idx(sizes.size(), 0);
    while (true) {
      std::vector<Rational> flat;
      for (std::size_t b = 0; b < sizes.size(); ++b)
        for (const Rational& v : per_block[b][idx[b]]) flat.push_back(v);
      std::vector<Rational> grad = u.gradient(flat);
      Strategy mu = Strategy::from_flat(flat, sizes, NumericMode::kExact);
      r.add("grad " + strategy_blocks_text(mu), serialize_block_text(grad));
      std::size_t b = 0;
      while (b < idx.size() && ++idx[b] == per_block[b].size()) idx[b++] = 0;
      if (b == idx.size()) break;
    }
  }
  return r.str();
}

std::string report_beliefs(const GameTree& tree, const BeliefTable& table) {
  Report r;
  r.add("report", std::string("beliefs"));
  r.add("game", tree.name());
  r.add("infoset", tree.info_set(table.info_set).label);
  r.add("system", std::string(table.system == BeliefSystem::kGT ? "gt" : "gdh"));
  for (const auto& [node, p] : table.node_beliefs)
    r.add("node " + std::to_string(tree.node(node).id), p);
  for (const auto& [z, p] : table.history_beliefs)
    r.add("history " + std::to_string(tree.node(z).id), p);
  for (const auto& [h, z, p] : table.joint_beliefs)
    r.add("joint " + std::to_string(tree.node(h).id) + " " + std::to_string(tree.node(z).id),
          p);
  return r.str();
}

std::string report_solve(const GameTree& tree, const SolveResult& result,
                         const std::string& method) {
  Report r;
  r.add("report", std::string("solve"));
  r.add("game", tree.name());
  r.add("method", method);
  r.add("status", std::string(result.status == SolveStatus::kConverged ? "converged"
                                                                       : "budget_exhausted"));
  r.add("value", result.value);
  r.add("kkt-residual", result.kkt_residual);
  r.add("iterations", static_cast<long>(result.iterations));
  r.add("strategy", strategy_blocks_text(result.strategy));
  for (std::size_t t = 0; t < result.trace.size(); ++t) {
    const RestartSummary& row = result.trace[t];
    r.add("trace " + std::to_string(t),
          row.start + " value " + format_double(row.value) + " residual " +
              format_double(row.residual) + " iters " + std::to_string(row.iters));
  }
  return r.str();
}

std::string report_verify(const GameTree& tree, const EquilibriumReport& report) {
  Report r;
  r.add("report", std::string("verify"));
  r.add("game", tree.name());
  r.add("kind", std::string(report.kind == VerifyKind::kCdtApprox          ? "cdt"
                            : report.kind == VerifyKind::kCdtWellSupported ? "cdt-ws"
                                                                           : "edt"));
  r.add("epsilon", report.epsilon);
  for (const auto& gap : report.gaps) {
    const std::string label = tree.info_set(gap.info_set).label;
    if (gap.skipped)
      r.add("infoset " + label, std::string("skipped (unreached)"));
    else
      r.add("infoset " + label, "gap " + gap.gap.str());
  }
  r.add("max-gap", report.max_gap);
  if (report.kind == VerifyKind::kEdt) r.add("certified-slack", report.certificate_slack);
  r.add("verdict", verdict_str(report.pass));
  return r.str();
}

std::string report_certify(const GameTree& tree, const KktCertificate& cert) {
  Report r;
  r.add("report", std::string("certify"));
  r.add("game", tree.name());
  for (int i = 0; i < static_cast<int>(cert.kappa.size()); ++i) {
    const std::string label = tree.info_set(i).label;
    r.add("kappa " + label, cert.kappa[i]);
    r.add("tau " + label, serialize_block_text(cert.tau[i]));
  }
  r.add("residual", cert.residual);
  r.add("cs-violation", cert.cs_violation);
  r.add("epsilon", cert.epsilon);
  r.add("verdict", verdict_str(cert.valid));
  return r.str();
}

std::string report_recover(const RecoveredSolution& rec) {
  Report r;
  r.add("report", std::string("recover"));
  r.add("kind", rec.kind);
  for (const std::string& line : rec.lines) {
    std::size_t colon = line.find(':');
    if (colon == std::string::npos)
      r.add("info", line);
    else
      r.add(line.substr(0, colon), line.substr(colon + 2));
  }
  r.add("validated", std::string(rec.validated ? "yes" : "no"));
  r.add("detail", rec.validation_detail);
  return r.str();
}

std::string report_decide(const DecideResult& result, const std::string& query,
                          const Rational& target, const Rational& eps) {
  Report r;
  r.add("report", std::string("decide"));
  r.add("query", query);
  r.add("target", target);
  r.add("eps", eps);
  r.add("verdict", std::string(result.verdict == DecideVerdict::kYes ? "yes"
                               : result.verdict == DecideVerdict::kNoEvidence
                                   ? "no-evidence"
                                   : "inconclusive"));
  r.add("value", result.value);
  if (result.witness) r.add("witness", strategy_blocks_text(*result.witness));
  r.add("detail", result.detail);
  return r.str();
}

// --- solver configuration --------------------------------------------------------

SolverConfig parse_solver_config(const std::string& kv) {
  SolverConfig cfg;
  for (const std::string& pair : split_ws(kv)) {
    std::size_t eq = pair.find('=');
    if (eq == std::string::npos)
      throw InputError("bad solver option '" + pair + "' (expected key=value)");
    std::string key = pair.substr(0, eq);
    std::string value = pair.substr(eq + 1);
    try {
      if (key == "seed")
        cfg.seed = std::stoull(value);
      else if (key == "max-iters")
        cfg.max_iters = std::stoi(value);
      else if (key == "tol")
        cfg.tol = std::stod(value);
      else if (key == "restarts")
        cfg.restarts = std::stoi(value);
      else if (key == "grid")
        cfg.grid_k = std::stoi(value);
      else if (key == "grid-seed")
        cfg.grid_seed_k = std::stoi(value);
      else if (key == "budget")
        cfg.node_budget = std::stol(value);
      else if (key == "eta")
        cfg.eta0 = std::stod(value);
      else if (key == "pure-cap")
        cfg.pure_start_cap = std::stoi(value);
      else
        throw InputError("unknown solver option '" + key + "'");
    } catch (const InputError&) {
      throw;
    } catch (...) {
      throw InputError("bad value for solver option '" + key + "'");
    }
  }
  if (cfg.max_iters <= 0 || cfg.restarts < 0 || cfg.grid_k < 1 || cfg.node_budget < 1 ||
      cfg.tol < 0)
    throw InputError("solver options out of range");
  return cfg;
}

}  // namespace irg
