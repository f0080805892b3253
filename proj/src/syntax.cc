#include "memlang/syntax.h"

#include <cctype>
#include <functional>
#include <map>
#include <vector>

#include "memlang/errors.h"

namespace memlang {

// ---------------------------------------------------------------------------
// Constructors

ValPtr v_true() {
  static const ValPtr kTrue = std::make_shared<const Val>(Val{Val::Kind::kTrue, {}, {}, {}});
  return kTrue;
}

ValPtr v_false() {
  static const ValPtr kFalse = std::make_shared<const Val>(Val{Val::Kind::kFalse, {}, {}, {}});
  return kFalse;
}

ValPtr v_bool(bool b) { return b ? v_true() : v_false(); }

ValPtr v_var(Ident name) {
  return std::make_shared<const Val>(Val{Val::Kind::kVar, std::move(name), {}, {}});
}

ValPtr v_pair(ValPtr fst, ValPtr snd) {
  return std::make_shared<const Val>(Val{Val::Kind::kPair, {}, std::move(fst), std::move(snd)});
}

namespace {

CompPtr make(Comp c) { return std::make_shared<const Comp>(std::move(c)); }

}  // namespace

CompPtr c_return(ValPtr v) {
  Comp c;
  c.kind = Comp::Kind::kReturn;
  c.v = std::move(v);
  return make(std::move(c));
}

CompPtr c_let(Ident x, CompPtr bound, CompPtr body) {
  Comp c;
  c.kind = Comp::Kind::kLet;
  c.var = std::move(x);
  c.first = std::move(bound);
  c.second = std::move(body);
  return make(std::move(c));
}

CompPtr c_if(ValPtr cond, CompPtr then_branch, CompPtr else_branch) {
  Comp c;
  c.kind = Comp::Kind::kIf;
  c.v = std::move(cond);
  c.first = std::move(then_branch);
  c.second = std::move(else_branch);
  return make(std::move(c));
}

CompPtr c_match(ValPtr v, Ident x, Ident y, CompPtr body) {
  Comp c;
  c.kind = Comp::Kind::kMatch;
  c.v = std::move(v);
  c.var = std::move(x);
  c.var2 = std::move(y);
  c.first = std::move(body);
  return make(std::move(c));
}

CompPtr c_flip(Rat theta) {
  Comp c;
  c.kind = Comp::Kind::kFlip;
  c.theta = std::move(theta);
  return make(std::move(c));
}

CompPtr c_fresh() {
  Comp c;
  c.kind = Comp::Kind::kFresh;
  return make(std::move(c));
}

CompPtr c_eq(ValPtr v, ValPtr w) {
  Comp c;
  c.kind = Comp::Kind::kEq;
  c.v = std::move(v);
  c.w = std::move(w);
  return make(std::move(c));
}

CompPtr c_memfn(Ident x, CompPtr body) {
  Comp c;
  c.kind = Comp::Kind::kMemFn;
  c.var = std::move(x);
  c.first = std::move(body);
  return make(std::move(c));
}

CompPtr c_app(ValPtr f, ValPtr arg) {
  Comp c;
  c.kind = Comp::Kind::kApp;
  c.v = std::move(f);
  c.w = std::move(arg);
  return make(std::move(c));
}

// ---------------------------------------------------------------------------
// Structural equality

namespace {

bool same_val(const ValPtr& a, const ValPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

bool same_comp(const CompPtr& a, const CompPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

}  // namespace

bool operator==(const Val& a, const Val& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Val::Kind::kTrue:
    case Val::Kind::kFalse:
      return true;
    case Val::Kind::kVar:
      return a.name == b.name;
    case Val::Kind::kPair:
      return same_val(a.fst, b.fst) && same_val(a.snd, b.snd);
  }
  return false;
}

bool operator==(const Comp& a, const Comp& b) {
  if (a.kind != b.kind) return false;
  return a.var == b.var && a.var2 == b.var2 && same_val(a.v, b.v) &&
         same_val(a.w, b.w) && same_comp(a.first, b.first) &&
         same_comp(a.second, b.second) && a.theta == b.theta;
}

// ---------------------------------------------------------------------------
// Lexer

namespace {

enum class Tok { kIdent, kNumber, kSymbol, kEnd };

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
};

const std::set<std::string>& keywords() {
  static const std::set<std::string> kw = {
      "return", "let", "val",  "in",    "if",    "then",  "else",
      "match",  "as",  "flip", "fresh", "memfn", "true",  "false"};
  return kw;
}

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  int line = 1;
  int col = 1;
  size_t i = 0;
  auto advance = [&](size_t n) {
    for (size_t k = 0; k < n; ++k) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    int tl = line;
    int tc = col;
    if (std::isalpha(static_cast<unsigned char>(c))) {
      size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      out.push_back({Tok::kIdent, std::string(src.substr(i, j - i)), tl, tc});
      advance(j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t j = i;
      auto digits = [&](size_t k) {
        while (k < src.size() && std::isdigit(static_cast<unsigned char>(src[k]))) ++k;
        return k;
      };
      j = digits(j);
      if (j + 1 < src.size() && (src[j] == '/' || src[j] == '.') &&
          std::isdigit(static_cast<unsigned char>(src[j + 1]))) {
        j = digits(j + 1);
      }
      out.push_back({Tok::kNumber, std::string(src.substr(i, j - i)), tl, tc});
      advance(j - i);
      continue;
    }
    if (src.substr(i, 2) == "<-" || src.substr(i, 2) == "==") {
      out.push_back({Tok::kSymbol, std::string(src.substr(i, 2)), tl, tc});
      advance(2);
      continue;
    }
    if (std::string_view("@(),.").find(c) != std::string_view::npos) {
      out.push_back({Tok::kSymbol, std::string(1, c), tl, tc});
      advance(1);
      continue;
    }
    throw SyntaxError(tl, tc, "character '" + std::string(1, c) + "'", {});
  }
  out.push_back({Tok::kEnd, "", line, col});
  return out;
}

// ---------------------------------------------------------------------------
// Parser (recursive descent, one token of lookahead)

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  CompPtr program() {
    CompPtr c = comp();
    expect_end();
    return c;
  }

  ValPtr lone_value() {
    ValPtr v = val();
    expect_end();
    return v;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }

  bool at_keyword(const char* kw) const {
    return peek().kind == Tok::kIdent && peek().text == kw;
  }
  bool at_symbol(const char* s) const {
    return peek().kind == Tok::kSymbol && peek().text == s;
  }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    const Token& t = peek();
    std::string found = t.kind == Tok::kEnd ? "end of input" : "'" + t.text + "'";
    throw SyntaxError(t.line, t.column, found, std::move(expected));
  }

  void expect_keyword(const char* kw) {
    if (!at_keyword(kw)) fail({std::string("'") + kw + "'"});
    ++pos_;
  }
  void expect_symbol(const char* s) {
    if (!at_symbol(s)) fail({std::string("'") + s + "'"});
    ++pos_;
  }
  void expect_end() {
    if (peek().kind != Tok::kEnd) fail({"end of input"});
  }

  Ident ident() {
    const Token& t = peek();
    if (t.kind != Tok::kIdent || keywords().count(t.text)) fail({"identifier"});
    ++pos_;
    return t.text;
  }

  ValPtr val() {
    const Token& t = peek();
    if (at_keyword("true")) {
      ++pos_;
      return v_true();
    }
    if (at_keyword("false")) {
      ++pos_;
      return v_false();
    }
    if (at_symbol("(")) {
      ++pos_;
      ValPtr a = val();
      expect_symbol(",");
      ValPtr b = val();
      expect_symbol(")");
      return v_pair(std::move(a), std::move(b));
    }
    if (t.kind == Tok::kIdent && !keywords().count(t.text)) {
      ++pos_;
      return v_var(t.text);
    }
    fail({"'true'", "'false'", "identifier", "'('"});
  }

  CompPtr comp() {
    if (at_keyword("return")) {
      ++pos_;
      return c_return(val());
    }
    if (at_keyword("let")) {
      ++pos_;
      expect_keyword("val");
      Ident x = ident();
      expect_symbol("<-");
      CompPtr bound = comp();
      expect_keyword("in");
      CompPtr body = comp();
      return c_let(std::move(x), std::move(bound), std::move(body));
    }
    if (at_keyword("if")) {
      ++pos_;
      ValPtr cond = val();
      expect_keyword("then");
      CompPtr a = comp();
      expect_keyword("else");
      CompPtr b = comp();
      return c_if(std::move(cond), std::move(a), std::move(b));
    }
    if (at_keyword("match")) {
      ++pos_;
      ValPtr v = val();
      expect_keyword("as");
      expect_symbol("(");
      Ident x = ident();
      expect_symbol(",");
      Ident y = ident();
      expect_symbol(")");
      expect_keyword("in");
      CompPtr body = comp();
      return c_match(std::move(v), std::move(x), std::move(y), std::move(body));
    }
    if (at_keyword("flip")) {
      ++pos_;
      expect_symbol("(");
      const Token& t = peek();
      if (t.kind != Tok::kNumber) fail({"rational literal"});
      std::optional<Rat> theta = parse_rat(t.text);
      if (!theta || !is_probability(*theta)) {
        throw SyntaxError(t.line, t.column, "'" + t.text + "'",
                          {"probability between 0 and 1"});
      }
      ++pos_;
      expect_symbol(")");
      return c_flip(*theta);
    }
    if (at_keyword("fresh")) {
      ++pos_;
      expect_symbol("(");
      expect_symbol(")");
      return c_fresh();
    }
    if (at_keyword("memfn")) {
      ++pos_;
      Ident x = ident();
      expect_symbol(".");
      CompPtr body = comp();
      return c_memfn(std::move(x), std::move(body));
    }
    const Token& t = peek();
    bool starts_value = at_keyword("true") || at_keyword("false") || at_symbol("(") ||
                        (t.kind == Tok::kIdent && !keywords().count(t.text));
    if (!starts_value) {
      fail({"'return'", "'let'", "'if'", "'match'", "'flip'", "'fresh'", "'memfn'",
            "value"});
    }
    ValPtr lhs = val();
    if (at_symbol("==")) {
      ++pos_;
      return c_eq(std::move(lhs), val());
    }
    if (at_symbol("@")) {
      ++pos_;
      return c_app(std::move(lhs), val());
    }
    fail({"'=='", "'@'"});
  }

  std::vector<Token> toks_;
  size_t pos_ = 0;
};

}  // namespace

CompPtr parse_program(std::string_view text) { return Parser(lex(text)).program(); }

ValPtr parse_value(std::string_view text) { return Parser(lex(text)).lone_value(); }

bool is_identifier(std::string_view text) {
  if (text.empty() || !std::isalpha(static_cast<unsigned char>(text[0]))) return false;
  for (char c : text) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  }
  return !keywords().count(std::string(text));
}

// ---------------------------------------------------------------------------
// Printer

std::string pretty(const Val& v) {
  switch (v.kind) {
    case Val::Kind::kTrue:
      return "true";
    case Val::Kind::kFalse:
      return "false";
    case Val::Kind::kVar:
      return v.name;
    case Val::Kind::kPair:
      return "(" + pretty(*v.fst) + ", " + pretty(*v.snd) + ")";
  }
  return {};
}

std::string pretty(const Comp& c) {
  switch (c.kind) {
    case Comp::Kind::kReturn:
      return "return " + pretty(*c.v);
    case Comp::Kind::kLet:
      return "let val " + c.var + " <- " + pretty(*c.first) + " in " + pretty(*c.second);
    case Comp::Kind::kIf:
      return "if " + pretty(*c.v) + " then " + pretty(*c.first) + " else " +
             pretty(*c.second);
    case Comp::Kind::kMatch:
      return "match " + pretty(*c.v) + " as (" + c.var + ", " + c.var2 + ") in " +
             pretty(*c.first);
    case Comp::Kind::kFlip:
      return "flip(" + rat_to_string(c.theta) + ")";
    case Comp::Kind::kFresh:
      return "fresh()";
    case Comp::Kind::kEq:
      return pretty(*c.v) + " == " + pretty(*c.w);
    case Comp::Kind::kMemFn:
      return "memfn " + c.var + ". " + pretty(*c.first);
    case Comp::Kind::kApp:
      return pretty(*c.v) + " @ " + pretty(*c.w);
  }
  return {};
}

// ---------------------------------------------------------------------------
// Free variables

namespace {

void collect_fv(const Val& v, std::set<Ident>& out) {
  switch (v.kind) {
    case Val::Kind::kVar:
      out.insert(v.name);
      break;
    case Val::Kind::kPair:
      collect_fv(*v.fst, out);
      collect_fv(*v.snd, out);
      break;
    default:
      break;
  }
}

}  // namespace

std::set<Ident> free_vars(const Val& v) {
  std::set<Ident> out;
  collect_fv(v, out);
  return out;
}

std::set<Ident> free_vars(const Comp& c) {
  std::set<Ident> out;
  if (c.v) collect_fv(*c.v, out);
  if (c.w) collect_fv(*c.w, out);
  switch (c.kind) {
    case Comp::Kind::kLet: {
      auto a = free_vars(*c.first);
      out.insert(a.begin(), a.end());
      auto b = free_vars(*c.second);
      b.erase(c.var);
      out.insert(b.begin(), b.end());
      break;
    }
    case Comp::Kind::kIf: {
      auto a = free_vars(*c.first);
      auto b = free_vars(*c.second);
      out.insert(a.begin(), a.end());
      out.insert(b.begin(), b.end());
      break;
    }
    case Comp::Kind::kMatch: {
      auto b = free_vars(*c.first);
      b.erase(c.var);
      b.erase(c.var2);
      out.insert(b.begin(), b.end());
      break;
    }
    case Comp::Kind::kMemFn: {
      auto b = free_vars(*c.first);
      b.erase(c.var);
      out.insert(b.begin(), b.end());
      break;
    }
    default:
      break;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Renaming

namespace {

using Renaming = std::map<Ident, Ident>;

ValPtr rename_val(const ValPtr& v, const Renaming& r) {
  switch (v->kind) {
    case Val::Kind::kVar: {
      auto it = r.find(v->name);
      return it == r.end() ? v : v_var(it->second);
    }
    case Val::Kind::kPair:
      return v_pair(rename_val(v->fst, r), rename_val(v->snd, r));
    default:
      return v;
  }
}

// Rebuilds c, choosing each binder's new name through `pick`. Binder scope
// is respected: the renaming only applies under the binder.
CompPtr rename_binders(const CompPtr& c, const Renaming& r,
                       const std::function<Ident(const Ident&)>& pick) {
  auto bind = [&](const Ident& old, Renaming& scope) {
    Ident fresh = pick(old);
    scope[old] = fresh;
    return fresh;
  };
  switch (c->kind) {
    case Comp::Kind::kReturn:
      return c_return(rename_val(c->v, r));
    case Comp::Kind::kLet: {
      CompPtr bound = rename_binders(c->first, r, pick);
      Renaming inner = r;
      Ident x = bind(c->var, inner);
      return c_let(x, bound, rename_binders(c->second, inner, pick));
    }
    case Comp::Kind::kIf:
      return c_if(rename_val(c->v, r), rename_binders(c->first, r, pick),
                  rename_binders(c->second, r, pick));
    case Comp::Kind::kMatch: {
      ValPtr v = rename_val(c->v, r);
      Renaming inner = r;
      Ident x = bind(c->var, inner);
      Ident y = bind(c->var2, inner);
      return c_match(v, x, y, rename_binders(c->first, inner, pick));
    }
    case Comp::Kind::kFlip:
    case Comp::Kind::kFresh:
      return c;
    case Comp::Kind::kEq:
      return c_eq(rename_val(c->v, r), rename_val(c->w, r));
    case Comp::Kind::kMemFn: {
      Renaming inner = r;
      Ident x = bind(c->var, inner);
      return c_memfn(x, rename_binders(c->first, inner, pick));
    }
    case Comp::Kind::kApp:
      return c_app(rename_val(c->v, r), rename_val(c->w, r));
  }
  return c;
}

void collect_binders(const Comp& c, std::set<Ident>& out) {
  switch (c.kind) {
    case Comp::Kind::kLet:
      out.insert(c.var);
      collect_binders(*c.first, out);
      collect_binders(*c.second, out);
      break;
    case Comp::Kind::kIf:
      collect_binders(*c.first, out);
      collect_binders(*c.second, out);
      break;
    case Comp::Kind::kMatch:
      out.insert(c.var);
      out.insert(c.var2);
      collect_binders(*c.first, out);
      break;
    case Comp::Kind::kMemFn:
      out.insert(c.var);
      collect_binders(*c.first, out);
      break;
    default:
      break;
  }
}

Ident fresh_name(const Ident& base, const std::set<Ident>& avoid) {
  for (int i = 1;; ++i) {
    Ident candidate = base + "_" + std::to_string(i);
    if (!avoid.count(candidate)) return candidate;
  }
}

}  // namespace

CompPtr alpha_canonical(const Comp& c) {
  int counter = 0;
  // '%' cannot start an identifier, so canonical names never clash with
  // free variables.
  auto pick = [&counter](const Ident&) { return "%" + std::to_string(counter++); };
  return rename_binders(std::make_shared<const Comp>(c), {}, pick);
}

bool alpha_eq(const Comp& a, const Comp& b) {
  return *alpha_canonical(a) == *alpha_canonical(b);
}

CompPtr distinct_binders(const Comp& c) {
  std::set<Ident> used = free_vars(c);
  std::set<Ident> all = used;
  collect_binders(c, all);
  auto pick = [&](const Ident& old) {
    Ident name = used.count(old) ? fresh_name(old, all) : old;
    used.insert(name);
    all.insert(name);
    return name;
  };
  return rename_binders(std::make_shared<const Comp>(c), {}, pick);
}

// ---------------------------------------------------------------------------
// Substitution

ValPtr substitute(const Val& target, const Ident& x, const Val& v) {
  switch (target.kind) {
    case Val::Kind::kVar:
      if (target.name == x) return std::make_shared<const Val>(v);
      return std::make_shared<const Val>(target);
    case Val::Kind::kPair:
      return v_pair(substitute(*target.fst, x, v), substitute(*target.snd, x, v));
    default:
      return std::make_shared<const Val>(target);
  }
}

namespace {

CompPtr subst(const CompPtr& c, const Ident& x, const Val& v, const std::set<Ident>& fv_v);

// Substitutes under a binder list, renaming binders that would capture.
// Returns the (possibly renamed) binders and the transformed body.
std::pair<std::vector<Ident>, CompPtr> subst_under(const std::vector<Ident>& binders,
                                                   const CompPtr& body, const Ident& x,
                                                   const Val& v,
                                                   const std::set<Ident>& fv_v) {
  for (const Ident& b : binders) {
    if (b == x) return {binders, body};
  }
  std::set<Ident> fv_body = free_vars(*body);
  if (!fv_body.count(x)) return {binders, body};
  std::vector<Ident> out = binders;
  CompPtr renamed = body;
  std::set<Ident> avoid = fv_v;
  avoid.insert(fv_body.begin(), fv_body.end());
  avoid.insert(x);
  avoid.insert(binders.begin(), binders.end());
  collect_binders(*body, avoid);
  Renaming r;
  for (Ident& b : out) {
    if (fv_v.count(b)) {
      Ident fresh = fresh_name(b, avoid);
      avoid.insert(fresh);
      r[b] = fresh;
      b = fresh;
    }
  }
  if (!r.empty()) {
    // Only free occurrences of the old binder names in the body refer to
    // these binders; renaming inner binders is unnecessary.
    auto keep = [](const Ident& n) { return n; };
    renamed = rename_binders(body, r, keep);
  }
  return {out, subst(renamed, x, v, fv_v)};
}

CompPtr subst(const CompPtr& c, const Ident& x, const Val& v, const std::set<Ident>& fv_v) {
  auto sv = [&](const ValPtr& p) { return substitute(*p, x, v); };
  switch (c->kind) {
    case Comp::Kind::kReturn:
      return c_return(sv(c->v));
    case Comp::Kind::kLet: {
      auto [bs, body] = subst_under({c->var}, c->second, x, v, fv_v);
      return c_let(bs[0], subst(c->first, x, v, fv_v), body);
    }
    case Comp::Kind::kIf:
      return c_if(sv(c->v), subst(c->first, x, v, fv_v), subst(c->second, x, v, fv_v));
    case Comp::Kind::kMatch: {
      auto [bs, body] = subst_under({c->var, c->var2}, c->first, x, v, fv_v);
      return c_match(sv(c->v), bs[0], bs[1], body);
    }
    case Comp::Kind::kFlip:
    case Comp::Kind::kFresh:
      return c;
    case Comp::Kind::kEq:
      return c_eq(sv(c->v), sv(c->w));
    case Comp::Kind::kMemFn: {
      auto [bs, body] = subst_under({c->var}, c->first, x, v, fv_v);
      return c_memfn(bs[0], body);
    }
    case Comp::Kind::kApp:
      return c_app(sv(c->v), sv(c->w));
  }
  return c;
}

}  // namespace

CompPtr substitute(const Comp& c, const Ident& x, const Val& v) {
  return subst(std::make_shared<const Comp>(c), x, v, free_vars(v));
}

// ---------------------------------------------------------------------------
// Syntactic freshness check

namespace {

// `local` holds the names bound inside the abstraction (including its own
// argument) that are in scope at this point.
bool fresh_clean_body(const Comp& c, std::set<Ident> local) {
  switch (c.kind) {
    case Comp::Kind::kApp:
      return !(c.w->kind == Val::Kind::kVar && local.count(c.w->name));
    case Comp::Kind::kLet: {
      if (!fresh_clean_body(*c.first, local)) return false;
      local.insert(c.var);
      return fresh_clean_body(*c.second, local);
    }
    case Comp::Kind::kIf:
      return fresh_clean_body(*c.first, local) && fresh_clean_body(*c.second, local);
    case Comp::Kind::kMatch:
      local.insert(c.var);
      local.insert(c.var2);
      return fresh_clean_body(*c.first, local);
    case Comp::Kind::kMemFn:
      local.insert(c.var);
      return fresh_clean_body(*c.first, local);
    default:
      return true;
  }
}

}  // namespace

bool syntactic_freshness_check(const Comp& fn) {
  if (fn.kind != Comp::Kind::kMemFn) {
    throw Error("syntactic_freshness_check expects a memfn abstraction");
  }
  return fresh_clean_body(*fn.first, {fn.var});
}

bool all_memfns_fresh_clean(const Comp& c) {
  switch (c.kind) {
    case Comp::Kind::kMemFn:
      return syntactic_freshness_check(c) && all_memfns_fresh_clean(*c.first);
    case Comp::Kind::kLet:
    case Comp::Kind::kIf:
      return all_memfns_fresh_clean(*c.first) && all_memfns_fresh_clean(*c.second);
    case Comp::Kind::kMatch:
      return all_memfns_fresh_clean(*c.first);
    default:
      return true;
  }
}

size_t term_size(const Comp& c) {
  std::function<size_t(const Val&)> vs = [&](const Val& v) -> size_t {
    return v.kind == Val::Kind::kPair ? 1 + vs(*v.fst) + vs(*v.snd) : 1;
  };
  size_t n = 1;
  if (c.v) n += vs(*c.v);
  if (c.w) n += vs(*c.w);
  if (c.first) n += term_size(*c.first);
  if (c.second) n += term_size(*c.second);
  return n;
}

}  // namespace memlang
