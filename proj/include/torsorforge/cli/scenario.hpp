#pragma once
// Scenario files: a versioned, line-oriented directive format.
//
//   torsorforge v1
//   group G cyclic 3
//   presentation P gens s; rel s^2;
//   action A on G via P gen s: inv
//   classify torsors A
//
// Statements on one line are separated by ';'. '#' starts a comment.

#include <cctype>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "torsorforge/torsorforge.hpp"

namespace torsorforge::cli {

/// Diagnostic codes. Exit status 1 for TF1xx, 2 for TF2xx, 3 for TF3xx.
enum class Diag {
  syntax = 101,
  unknown_directive = 102,
  dangling_reference = 103,
  duplicate_name = 104,
  bad_header = 105,
  invalid_value = 106,
  capacity = 201,
  invariant = 301,
};

inline int exit_status(Diag d) { return static_cast<int>(d) / 100; }

class ScenarioError : public Error {
 public:
  ScenarioError(Diag code, std::size_t line, std::size_t column, const std::string& message)
      : Error(static_cast<int>(code) / 100 == 3   ? ErrorKind::invariant
              : static_cast<int>(code) / 100 == 2 ? ErrorKind::capacity
                                                  : ErrorKind::invalid_argument,
              format(code, line, column, message)),
        code_(code),
        line_(line),
        column_(column),
        detail_(message) {}

  Diag code() const noexcept { return code_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  static std::string format(Diag code, std::size_t line, std::size_t column, const std::string& message) {
    return std::to_string(line) + ":" + std::to_string(column) + ": error TF" + std::to_string(static_cast<int>(code)) +
           ": " + message;
  }
  Diag code_;
  std::size_t line_, column_;
  std::string detail_;
};

struct Token {
  std::string text;
  std::size_t line = 0, column = 0;
};

/// Automorphism description, evaluated against a group when needed.
struct AutSpec {
  enum class Kind { identity, inverse, conjugate, power, indexed, map };
  Kind kind = Kind::identity;
  long long k = 0;
  std::vector<Elem> images;
  Token at;

  Permutation evaluate(const GroupPtr& g) const {
    auto fail = [&](const std::string& m) { return ScenarioError(Diag::invariant, at.line, at.column, m); };
    auto element = [&](long long x) {
      if (x < 0 || static_cast<std::size_t>(x) >= g->order())
        throw ScenarioError(Diag::invalid_value, at.line, at.column,
                            "element " + std::to_string(x) + " is not in a group of order " + std::to_string(g->order()));
      return static_cast<Elem>(x);
    };
    switch (kind) {
      case Kind::identity: return Permutation::identity(g->order());
      case Kind::inverse:
        if (!g->is_abelian()) throw fail("inversion is an automorphism only of abelian groups");
        return power_map(*g, -1);
      case Kind::conjugate: return inner_automorphism(*g, element(k));
      case Kind::power: {
        Permutation p = power_map(*g, k);
        if (!is_automorphism(*g, p.images())) throw fail("power map x -> x^" + std::to_string(k) + " is not an automorphism");
        return p;
      }
      case Kind::indexed: {
        const auto aut = enumerate_automorphisms(g);
        if (k < 0 || static_cast<std::size_t>(k) >= aut.size())
          throw ScenarioError(Diag::invalid_value, at.line, at.column,
                              "automorphism index " + std::to_string(k) + " out of range (group has " +
                                  std::to_string(aut.size()) + ")");
        return aut[static_cast<Elem>(k)];
      }
      case Kind::map:
        if (images.size() != g->order() || !is_automorphism(*g, images))
          throw fail("map is not an automorphism of the group");
        return Permutation(images);
    }
    return Permutation::identity(g->order());
  }
};

struct NamedGroup {
  std::string name;
  GroupPtr group;
};
struct NamedPresentation {
  std::string name;
  Presentation presentation;
};
struct NamedAction {
  std::string name, group, presentation;
  std::shared_ptr<const PiGroup> coefficients;
};
struct TwistEntry {
  std::size_t i = 0, j = 0;
  AutSpec aut;
};
struct NamedNerve {
  std::string name;
  Nerve nerve;
  std::vector<TwistEntry> twists;
};
struct NamedGraph {
  std::string name;
  Graph graph;
};
struct NamedCover {
  std::string name, base, deck;
  std::shared_ptr<const CoveringModel> covering;
  // explicit form, assembled once every deckaction line is read
  std::optional<std::string> total;
  std::vector<std::size_t> vproj, eproj;
  std::map<Elem, Permutation> deck_action;
  Token at;
};
struct NamedBundle {
  std::string name, base;
  FibreBundleModel bundle;
};

/// `classify <kind> <refs...> [phi <f>: <aut>; ...]`
struct Request {
  std::string kind;
  std::vector<std::string> refs;
  std::vector<std::pair<Elem, AutSpec>> phi;  ///< deck generator -> automorphism
  Token at;
};

struct Scenario {
  std::string text;
  std::uint64_t hash = 0;
  std::vector<NamedGroup> groups;
  std::vector<NamedPresentation> presentations;
  std::vector<NamedAction> actions;
  std::vector<NamedNerve> nerves;
  std::vector<NamedGraph> graphs;
  std::vector<NamedCover> covers;
  std::vector<NamedBundle> bundles;
  std::vector<Request> requests;

  template <typename T>
  static const T* find(const std::vector<T>& v, const std::string& name) {
    for (const auto& x : v)
      if (x.name == name) return &x;
    return nullptr;
  }
};

/// 64-bit FNV-1a.
inline std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

namespace detail {

using Statement = std::vector<Token>;

/// Splits one line into ';'-separated statements of tokens. Brackets,
/// parentheses, commas and colons are single-character tokens.
inline std::vector<Statement> tokenize_line(const std::string& line, std::size_t lineno) {
  std::vector<Statement> out(1);
  std::size_t i = 0;
  while (i < line.size()) {
    const char c = line[i];
    if (c == '#') break;
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == ';') {
      out.emplace_back();
      ++i;
      continue;
    }
    if (c == '[' || c == ']' || c == '(' || c == ')' || c == ',' || c == ':') {
      out.back().push_back(Token{std::string(1, c), lineno, i + 1});
      ++i;
      continue;
    }
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) &&
           std::string("#;[](),:").find(line[i]) == std::string::npos)
      ++i;
    out.back().push_back(Token{line.substr(start, i - start), lineno, start + 1});
  }
  std::vector<Statement> nonempty;
  for (auto& s : out)
    if (!s.empty()) nonempty.push_back(std::move(s));
  return nonempty;
}

class Cursor {
 public:
  Cursor(const Statement& s, std::size_t line, std::size_t end_column) : s_(s), line_(line), end_(end_column) {}

  bool done() const { return pos_ >= s_.size(); }
  const Token& peek() const {
    if (done()) throw error(Diag::syntax, "unexpected end of statement");
    return s_[pos_];
  }
  bool peek_is(const std::string& t) const { return !done() && s_[pos_].text == t; }
  Token next() {
    const Token& t = peek();
    ++pos_;
    return t;
  }
  Token expect(const std::string& t) {
    if (done()) throw error(Diag::syntax, "expected '" + t + "' at end of statement");
    if (s_[pos_].text != t)
      throw ScenarioError(Diag::syntax, s_[pos_].line, s_[pos_].column,
                          "expected '" + t + "', found '" + s_[pos_].text + "'");
    return s_[pos_++];
  }
  long long integer() {
    const Token t = next();
    try {
      std::size_t used = 0;
      const long long v = std::stoll(t.text, &used);
      if (used != t.text.size()) throw std::invalid_argument("trailing");
      return v;
    } catch (const std::exception&) {
      throw ScenarioError(Diag::syntax, t.line, t.column, "expected an integer, found '" + t.text + "'");
    }
  }
  std::size_t count() {
    const Token at = peek();
    const long long v = integer();
    if (v < 0) throw ScenarioError(Diag::invalid_value, at.line, at.column, "expected a nonnegative integer");
    return static_cast<std::size_t>(v);
  }
  void finish() const {
    if (!done())
      throw ScenarioError(Diag::syntax, s_[pos_].line, s_[pos_].column, "unexpected token '" + s_[pos_].text + "'");
  }
  ScenarioError error(Diag d, const std::string& m) const {
    const std::size_t col = done() ? end_ : s_[pos_].column;
    return ScenarioError(d, line_, col, m);
  }

 private:
  const Statement& s_;
  std::size_t pos_ = 0;
  std::size_t line_, end_;
};

/// [a, b, c]
inline std::vector<long long> int_list(Cursor& c) {
  std::vector<long long> out;
  c.expect("[");
  if (c.peek_is("]")) {
    c.next();
    return out;
  }
  while (true) {
    out.push_back(c.integer());
    if (c.peek_is("]")) {
      c.next();
      return out;
    }
    c.expect(",");
  }
}

/// [[...], [...]]
inline std::vector<std::vector<long long>> int_lists(Cursor& c) {
  std::vector<std::vector<long long>> out;
  c.expect("[");
  while (true) {
    out.push_back(int_list(c));
    if (c.peek_is("]")) {
      c.next();
      return out;
    }
    c.expect(",");
  }
}

inline std::vector<Elem> to_elems(const std::vector<long long>& v, const Token& at) {
  std::vector<Elem> out;
  for (long long x : v) {
    if (x < 0) throw ScenarioError(Diag::invalid_value, at.line, at.column, "negative index in list");
    out.push_back(static_cast<Elem>(x));
  }
  return out;
}

inline GroupSpec group_spec(Cursor& c) {
  const Token kind = c.next();
  const std::string& k = kind.text;
  if (k == "cyclic") return GroupSpec::cyclic(c.count());
  if (k == "symmetric") return GroupSpec::symmetric(c.count());
  if (k == "gl" || k == "sl") {
    const std::size_t n = c.count();
    const auto q = static_cast<unsigned>(c.count());
    return k == "gl" ? GroupSpec::gl(n, q) : GroupSpec::sl(n, q);
  }
  if (k == "product") {
    c.expect("(");
    GroupSpec a = group_spec(c);
    c.expect(",");
    GroupSpec b = group_spec(c);
    c.expect(")");
    return GroupSpec::product(std::move(a), std::move(b));
  }
  if (k == "table" || k == "perm") {
    const Token at = c.peek();
    std::vector<std::vector<Elem>> rows;
    for (const auto& r : int_lists(c)) rows.push_back(to_elems(r, at));
    return k == "table" ? GroupSpec::table(std::move(rows)) : GroupSpec::permutations(std::move(rows));
  }
  if (k == "matrix") {
    const auto q = static_cast<unsigned>(c.count());
    const Token at = c.peek();
    std::vector<Matrix> ms;
    for (const auto& r : int_lists(c)) {
      Matrix m;
      for (long long x : r) {
        if (x < 0) throw ScenarioError(Diag::invalid_value, at.line, at.column, "negative matrix entry");
        m.push_back(static_cast<unsigned>(x));
      }
      ms.push_back(std::move(m));
    }
    return GroupSpec::matrix(q, std::move(ms));
  }
  throw ScenarioError(Diag::syntax, kind.line, kind.column, "unknown group kind '" + k + "'");
}

inline AutSpec aut_spec(Cursor& c) {
  AutSpec a;
  a.at = c.peek();
  const Token t = c.next();
  if (t.text == "id") a.kind = AutSpec::Kind::identity;
  else if (t.text == "inv") a.kind = AutSpec::Kind::inverse;
  else if (t.text == "conj") {
    a.kind = AutSpec::Kind::conjugate;
    a.k = c.integer();
  } else if (t.text == "pow") {
    a.kind = AutSpec::Kind::power;
    a.k = c.integer();
  } else if (t.text == "aut") {
    a.kind = AutSpec::Kind::indexed;
    a.k = c.integer();
  } else if (t.text == "map") {
    a.kind = AutSpec::Kind::map;
    a.images = to_elems(int_list(c), t);
  } else {
    throw ScenarioError(Diag::syntax, t.line, t.column, "unknown automorphism '" + t.text + "' (id, inv, conj, pow, aut, map)");
  }
  return a;
}

/// Word over named generators: letters `x`, `x^-1`, `x^k`.
inline Word parse_word(Cursor& c, const std::vector<std::string>& names) {
  std::vector<Letter> letters;
  while (!c.done()) {
    const Token t = c.next();
    std::string base = t.text;
    long long exp = 1;
    if (const auto caret = t.text.find('^'); caret != std::string::npos) {
      base = t.text.substr(0, caret);
      try {
        std::size_t used = 0;
        exp = std::stoll(t.text.substr(caret + 1), &used);
        if (used != t.text.size() - caret - 1) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        throw ScenarioError(Diag::syntax, t.line, t.column, "bad exponent in '" + t.text + "'");
      }
    }
    const auto it = std::find(names.begin(), names.end(), base);
    if (it == names.end())
      throw ScenarioError(Diag::dangling_reference, t.line, t.column, "generator '" + base + "' is not declared");
    const Letter g = static_cast<Letter>(it - names.begin()) + 1;
    for (long long i = 0; i < (exp < 0 ? -exp : exp); ++i) letters.push_back(exp < 0 ? -g : g);
  }
  return Word(std::span<const Letter>(letters));
}

inline std::string identifier(Cursor& c, const std::string& what) {
  const Token t = c.next();
  if (t.text.empty() || !(std::isalpha(static_cast<unsigned char>(t.text[0])) || t.text[0] == '_'))
    throw ScenarioError(Diag::syntax, t.line, t.column, "expected a " + what + " name, found '" + t.text + "'");
  return t.text;
}

class Parser {
 public:
  explicit Parser(std::string text) { sc_.text = std::move(text); }

  Scenario run() {
    sc_.hash = fnv1a64(sc_.text);
    std::size_t lineno = 0;
    std::size_t pos = 0;
    bool header = false;
    while (pos <= sc_.text.size()) {
      const std::size_t nl = sc_.text.find('\n', pos);
      std::string line = sc_.text.substr(pos, nl == std::string::npos ? std::string::npos : nl - pos);
      if (!line.empty() && line.back() == '\r') line.pop_back();
      ++lineno;
      const auto statements = tokenize_line(line, lineno);
      if (!statements.empty()) {
        if (!header) {
          const auto& s = statements.front();
          if (statements.size() != 1 || s.size() != 2 || s[0].text != "torsorforge" || s[1].text != "v1")
            throw ScenarioError(Diag::bad_header, lineno, s[0].column, "first line must be the header 'torsorforge v1'");
          header = true;
        } else {
          directive(statements, lineno, line.size() + 1);
        }
      }
      if (nl == std::string::npos) break;
      pos = nl + 1;
    }
    finish_covers();
    return std::move(sc_);
  }

 private:
  void claim(const Token& t) {
    if (!names_.emplace(t.text, t.line).second)
      throw ScenarioError(Diag::duplicate_name, t.line, t.column,
                          "name '" + t.text + "' already declared on line " + std::to_string(names_[t.text]));
  }

  template <typename T>
  T& lookup(std::vector<T>& v, const Token& t, const std::string& what) {
    for (auto& x : v)
      if (x.name == t.text) return x;
    throw ScenarioError(Diag::dangling_reference, t.line, t.column, what + " '" + t.text + "' is not declared");
  }

  /// Library errors raised while building a declared object.
  template <typename F>
  auto guarded(const Token& at, F&& f) -> decltype(f()) {
    try {
      return f();
    } catch (const ScenarioError&) {
      throw;
    } catch (const CapacityError& e) {
      throw ScenarioError(Diag::capacity, at.line, at.column, e.what());
    } catch (const InvariantError& e) {
      throw ScenarioError(Diag::invariant, at.line, at.column, e.what());
    } catch (const Error& e) {
      throw ScenarioError(Diag::invalid_value, at.line, at.column, e.what());
    }
  }

  void directive(const std::vector<Statement>& statements, std::size_t lineno, std::size_t end) {
    Cursor c(statements.front(), lineno, end);
    const Token d = c.next();
    auto rest = [&](std::size_t i) { return Cursor(statements[i], lineno, end); };
    auto single = [&] {
      if (statements.size() > 1)
        throw ScenarioError(Diag::syntax, statements[1].front().line, statements[1].front().column,
                            "directive '" + d.text + "' takes a single statement");
    };
    if (d.text == "group") {
      single();
      const Token name = c.peek();
      identifier(c, "group");
      const GroupSpec spec = group_spec(c);
      c.finish();
      claim(name);
      sc_.groups.push_back({name.text, guarded(name, [&] { return build_group(spec); })});
    } else if (d.text == "presentation") {
      presentation(c, statements, lineno, end);
    } else if (d.text == "action") {
      action(c, statements, rest);
    } else if (d.text == "nerve") {
      nerve(c, statements, rest);
    } else if (d.text == "twist") {
      single();
      const Token ref = c.next();
      auto& n = lookup(sc_.nerves, ref, "nerve");
      TwistEntry t;
      const Token at = c.peek();
      t.i = c.count();
      t.j = c.count();
      if (!n.nerve.edge_index(t.i, t.j))
        throw ScenarioError(Diag::invalid_value, at.line, at.column,
                            "patches " + std::to_string(t.i) + " and " + std::to_string(t.j) + " do not overlap");
      t.aut = aut_spec(c);
      c.finish();
      n.twists.push_back(std::move(t));
    } else if (d.text == "graph" || d.text == "base-graph") {
      graph(c, statements, rest);
    } else if (d.text == "cover") {
      single();
      cover(c);
    } else if (d.text == "deckaction") {
      single();
      const Token ref = c.next();
      auto& cv = lookup(sc_.covers, ref, "cover");
      if (!cv.total)
        throw ScenarioError(Diag::syntax, ref.line, ref.column, "cover '" + ref.text + "' is given by voltages");
      const Token at = c.peek();
      const auto f = static_cast<Elem>(c.count());
      c.expect(":");
      const auto image = to_elems(int_list(c), at);
      c.finish();
      cv.deck_action.insert_or_assign(f, guarded(at, [&] { return Permutation(image); }));
    } else if (d.text == "bundle") {
      bundle(c, statements, rest);
    } else if (d.text == "classify") {
      classify(c, statements, rest);
    } else {
      throw ScenarioError(Diag::unknown_directive, d.line, d.column, "unknown directive '" + d.text + "'");
    }
  }

  void presentation(Cursor& c, const std::vector<Statement>& statements, std::size_t lineno, std::size_t end) {
    const Token name = c.peek();
    identifier(c, "presentation");
    claim(name);
    const Token form = c.next();
    Presentation p;
    if (form.text == "free" || form.text == "cyclic" || form.text == "surface") {
      const std::size_t n = c.count();
      c.finish();
      if (statements.size() > 1)
        throw ScenarioError(Diag::syntax, lineno, statements[1].front().column, "unexpected statement");
      p = guarded(form, [&] {
        return form.text == "free" ? free_presentation(n) : form.text == "cyclic" ? cyclic_presentation(n)
                                                                                  : surface_presentation(n);
      });
    } else if (form.text == "gens") {
      std::vector<std::string> names;
      while (!c.done()) {
        const Token g = c.peek();
        names.push_back(identifier(c, "generator"));
        if (std::count(names.begin(), names.end(), g.text) > 1)
          throw ScenarioError(Diag::duplicate_name, g.line, g.column, "generator '" + g.text + "' declared twice");
      }
      std::vector<Word> relators;
      for (std::size_t i = 1; i < statements.size(); ++i) {
        Cursor r(statements[i], lineno, end);
        r.expect("rel");
        const Token at = r.peek();
        Word w = parse_word(r, names);
        if (w.empty()) throw ScenarioError(Diag::invalid_value, at.line, at.column, "relator reduces to the empty word");
        relators.push_back(std::move(w));
      }
      p = guarded(form, [&] { return Presentation(names.size(), std::move(relators), names); });
    } else {
      throw ScenarioError(Diag::syntax, form.line, form.column, "expected 'gens', 'free', 'cyclic' or 'surface'");
    }
    sc_.presentations.push_back({name.text, std::move(p)});
  }

  template <typename Rest>
  void action(Cursor& c, const std::vector<Statement>& statements, Rest&& rest) {
    const Token name = c.peek();
    identifier(c, "action");
    c.expect("on");
    const Token gref = c.next();
    const auto& g = lookup(sc_.groups, gref, "group");
    c.expect("via");
    const Token pref = c.next();
    const auto& p = lookup(sc_.presentations, pref, "presentation");
    claim(name);
    std::vector<Permutation> act(p.presentation.generator_count(), Permutation::identity(g.group->order()));
    auto gen_clause = [&](Cursor& k) {
      k.expect("gen");
      const Token gen = k.next();
      const auto& names = p.presentation.names();
      const auto it = std::find(names.begin(), names.end(), gen.text);
      if (it == names.end())
        throw ScenarioError(Diag::dangling_reference, gen.line, gen.column,
                            "generator '" + gen.text + "' is not in presentation '" + pref.text + "'");
      k.expect(":");
      act[static_cast<std::size_t>(it - names.begin())] = aut_spec(k).evaluate(g.group);
      k.finish();
    };
    if (!c.done()) gen_clause(c);
    for (std::size_t i = 1; i < statements.size(); ++i) {
      Cursor k = rest(i);
      gen_clause(k);
    }
    auto coeff = guarded(name, [&] { return std::make_shared<const PiGroup>(p.presentation, g.group, act); });
    sc_.actions.push_back({name.text, gref.text, pref.text, std::move(coeff)});
  }

  template <typename Rest>
  void nerve(Cursor& c, const std::vector<Statement>& statements, Rest&& rest) {
    const Token name = c.peek();
    identifier(c, "nerve");
    claim(name);
    c.expect("patches");
    const std::size_t patches = c.count();
    c.finish();
    std::vector<std::pair<std::size_t, std::size_t>> overlaps;
    std::vector<std::array<std::size_t, 3>> triples;
    for (std::size_t i = 1; i < statements.size(); ++i) {
      Cursor k = rest(i);
      const Token what = k.next();
      if (what.text == "overlap") {
        const std::size_t a = k.count(), b = k.count();
        overlaps.emplace_back(a, b);
      } else if (what.text == "triple") {
        const std::size_t a = k.count(), b = k.count(), d = k.count();
        triples.push_back({a, b, d});
      } else {
        throw ScenarioError(Diag::syntax, what.line, what.column, "expected 'overlap' or 'triple'");
      }
      k.finish();
    }
    sc_.nerves.push_back({name.text, guarded(name, [&] { return make_nerve(patches, overlaps, triples); }), {}});
  }

  template <typename Rest>
  void graph(Cursor& c, const std::vector<Statement>& statements, Rest&& rest) {
    const Token name = c.peek();
    identifier(c, "graph");
    claim(name);
    const Token form = c.next();
    Graph g;
    if (form.text == "bouquet" || form.text == "cycle" || form.text == "theta" || form.text == "path") {
      const std::size_t n = c.count();
      c.finish();
      g = guarded(form, [&] {
        return form.text == "bouquet" ? bouquet(n)
               : form.text == "cycle" ? cycle_graph(n)
               : form.text == "theta" ? theta_graph(n)
                                      : path_graph(n);
      });
    } else if (form.text == "vertices") {
      g.vertex_count = c.count();
      c.finish();
      for (std::size_t i = 1; i < statements.size(); ++i) {
        Cursor k = rest(i);
        k.expect("edge");
        const std::size_t a = k.count(), b = k.count();
        k.finish();
        g.edges.emplace_back(a, b);
      }
      guarded(form, [&] {
        g.validate();
        return 0;
      });
    } else {
      throw ScenarioError(Diag::syntax, form.line, form.column, "expected 'vertices', 'bouquet', 'cycle', 'theta' or 'path'");
    }
    sc_.graphs.push_back({name.text, std::move(g)});
  }

  void cover(Cursor& c) {
    const Token name = c.peek();
    identifier(c, "cover");
    c.expect("base");
    const Token bref = c.next();
    const auto& base = lookup(sc_.graphs, bref, "graph");
    NamedCover cv;
    cv.name = name.text;
    cv.base = bref.text;
    cv.at = name;
    if (c.peek_is("total")) {
      c.next();
      const Token tref = c.next();
      lookup(sc_.graphs, tref, "graph");
      cv.total = tref.text;
    }
    c.expect("deck");
    const Token dref = c.next();
    const auto& deck = lookup(sc_.groups, dref, "group");
    cv.deck = dref.text;
    claim(name);
    if (cv.total) {
      const Token at = c.peek();
      c.expect("vproj");
      for (auto x : int_list(c)) cv.vproj.push_back(static_cast<std::size_t>(x < 0 ? -1 : x));
      c.expect("eproj");
      for (auto x : int_list(c)) cv.eproj.push_back(static_cast<std::size_t>(x < 0 ? -1 : x));
      c.finish();
      (void)at;
    } else {
      c.expect("voltages");
      std::vector<Elem> v;
      while (!c.done()) {
        const Token at = c.peek();
        const long long x = c.integer();
        if (x < 0 || static_cast<std::size_t>(x) >= deck.group->order())
          throw ScenarioError(Diag::invalid_value, at.line, at.column, "voltage is not an element of the deck group");
        v.push_back(static_cast<Elem>(x));
      }
      cv.covering = guarded(name, [&] {
        return std::make_shared<const CoveringModel>(covering_from_voltages(base.graph, deck.group, v));
      });
    }
    sc_.covers.push_back(std::move(cv));
  }

  void finish_covers() {
    for (auto& cv : sc_.covers) {
      if (!cv.total) continue;
      const auto& deck = *Scenario::find(sc_.groups, cv.deck);
      for (const auto& [f, p] : cv.deck_action)
        if (f >= deck.group->order())
          throw ScenarioError(Diag::invalid_value, cv.at.line, cv.at.column,
                              "deckaction names element " + std::to_string(f) + " outside the deck group");
      std::vector<Permutation> act;
      for (Elem f = 0; f < deck.group->order(); ++f) {
        const auto it = cv.deck_action.find(f);
        if (f == 0 && it == cv.deck_action.end()) {
          act.push_back(Permutation::identity(Scenario::find(sc_.graphs, *cv.total)->graph.vertex_count));
          continue;
        }
        if (it == cv.deck_action.end())
          throw ScenarioError(Diag::dangling_reference, cv.at.line, cv.at.column,
                              "cover '" + cv.name + "' has no deckaction for deck element " + std::to_string(f));
        act.push_back(it->second);
      }
      cv.covering = guarded(cv.at, [&] {
        return std::make_shared<const CoveringModel>(Scenario::find(sc_.graphs, cv.base)->graph,
                                                     Scenario::find(sc_.graphs, *cv.total)->graph, cv.vproj, cv.eproj,
                                                     deck.group, act);
      });
    }
  }

  template <typename Rest>
  void bundle(Cursor& c, const std::vector<Statement>& statements, Rest&& rest) {
    const Token name = c.peek();
    identifier(c, "bundle");
    c.expect("base");
    const Token bref = c.next();
    const auto& base = lookup(sc_.graphs, bref, "graph");
    claim(name);
    c.expect("fibre-size");
    const Token at = c.peek();
    const std::size_t n = c.count();
    c.finish();
    if (n < 1 || n > 5) throw ScenarioError(Diag::invalid_value, at.line, at.column, "fibre size must be in 1..5");
    FibreBundleModel b = trivial_fibre_bundle(base.graph, n);
    for (std::size_t i = 1; i < statements.size(); ++i) {
      Cursor k = rest(i);
      k.expect("transition");
      const Token et = k.peek();
      const std::size_t e = k.count();
      if (e >= b.base.edge_count())
        throw ScenarioError(Diag::invalid_value, et.line, et.column, "edge " + std::to_string(e) + " is not in the base");
      const auto image = to_elems(int_list(k), et);
      k.finish();
      b.transition[e] = guarded(et, [&] { return Permutation(image); });
      if (b.transition[e].size() != n)
        throw ScenarioError(Diag::invalid_value, et.line, et.column, "transition has the wrong fibre size");
    }
    sc_.bundles.push_back({name.text, bref.text, std::move(b)});
  }

  template <typename Rest>
  void classify(Cursor& c, const std::vector<Statement>& statements, Rest&& rest) {
    Request r;
    r.at = c.peek();
    r.kind = c.next().text;
    auto ref = [&](auto& table, const std::string& what) {
      const Token t = c.next();
      lookup(table, t, what);
      r.refs.push_back(t.text);
    };
    if (r.kind == "torsors") {
      ref(sc_.actions, "action");
    } else if (r.kind == "coverings") {
      ref(sc_.presentations, "presentation");
      ref(sc_.groups, "group");
    } else if (r.kind == "cech") {
      ref(sc_.nerves, "nerve");
      ref(sc_.groups, "group");
    } else if (r.kind == "bundle") {
      ref(sc_.covers, "cover");
      ref(sc_.groups, "group");
    } else if (r.kind == "frame") {
      ref(sc_.bundles, "bundle");
      ref(sc_.bundles, "bundle");
    } else {
      throw ScenarioError(Diag::syntax, r.at.line, r.at.column,
                          "unknown classification '" + r.kind + "' (torsors, coverings, cech, bundle, frame)");
    }
    // bundle requests take phi on deck elements: `phi f: <aut>; f: <aut>`
    auto phi_clause = [&](Cursor& k, bool first) {
      if (first) k.expect("phi");
      const Token at = k.peek();
      const auto f = static_cast<Elem>(k.count());
      k.expect(":");
      AutSpec a = aut_spec(k);
      k.finish();
      (void)at;
      r.phi.emplace_back(f, std::move(a));
    };
    if (!c.done()) {
      if (r.kind != "bundle") c.finish();
      phi_clause(c, true);
    }
    for (std::size_t i = 1; i < statements.size(); ++i) {
      if (r.kind != "bundle" || r.phi.empty())
        throw ScenarioError(Diag::syntax, statements[i].front().line, statements[i].front().column,
                            "unexpected statement");
      Cursor k = rest(i);
      phi_clause(k, false);
    }
    sc_.requests.push_back(std::move(r));
  }

  Scenario sc_;
  std::map<std::string, std::size_t> names_;
};

}  // namespace detail

/// Parses and validates a scenario. Every action is checked against the
/// PiGroup invariant here, before any computation runs.
inline Scenario parse_scenario(std::string text) { return detail::Parser(std::move(text)).run(); }

}  // namespace torsorforge::cli
