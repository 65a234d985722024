#include <cctype>
#include <fstream>
#include <sstream>

#include "psf/ast.hpp"

namespace psf {

std::string sort_name(Sort s) {
  switch (s) {
    case Sort::ID: return "ID";
    case Sort::DATA: return "DATA";
    case Sort::BOOLEAN: return "BOOLEAN";
    case Sort::NAT: return "NAT";
  }
  return "DATA";
}

std::optional<Sort> sort_from_name(const std::string& n) {
  if (n == "ID") return Sort::ID;
  if (n == "DATA") return Sort::DATA;
  if (n == "BOOLEAN") return Sort::BOOLEAN;
  if (n == "NAT") return Sort::NAT;
  return std::nullopt;
}

const ModuleDecl* Spec::find_module(const std::string& name) const {
  for (const auto& m : modules)
    if (m.name == name) return &m;
  return nullptr;
}

namespace {

enum class Tok {
  Ident, KwData, KwProcess, KwModule, KwBegin, KwEnd, KwExports, KwImports,
  KwAtoms, KwProcesses, KwFunctions, KwDefinitions, KwParameters, KwBound,
  KwBy, KwTo, KwRenamed, KwDelta,
  LParen, RParen, LBracket, RBracket, LBrace, RBrace,
  Comma, Dot, Plus, Star, ParBar, Shift, Arrow, Equals, Colon, Hash,
  Eof,
};

struct Token {
  Tok kind;
  std::string text;
  SourcePos pos;
};

Tok keyword(const std::string& s) {
  if (s == "data") return Tok::KwData;
  if (s == "process") return Tok::KwProcess;
  if (s == "module") return Tok::KwModule;
  if (s == "begin") return Tok::KwBegin;
  if (s == "end") return Tok::KwEnd;
  if (s == "exports") return Tok::KwExports;
  if (s == "imports") return Tok::KwImports;
  if (s == "atoms") return Tok::KwAtoms;
  if (s == "processes") return Tok::KwProcesses;
  if (s == "functions") return Tok::KwFunctions;
  if (s == "definitions") return Tok::KwDefinitions;
  if (s == "parameters") return Tok::KwParameters;
  if (s == "bound") return Tok::KwBound;
  if (s == "by") return Tok::KwBy;
  if (s == "to") return Tok::KwTo;
  if (s == "renamed") return Tok::KwRenamed;
  if (s == "delta") return Tok::KwDelta;
  return Tok::Ident;
}

class Lexer {
 public:
  Lexer(const std::string& src, std::string file) : src_(src), file_(std::move(file)) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_ws_and_comments();
      SourcePos pos{file_, line_, col_};
      if (eof()) {
        out.push_back({Tok::Eof, "", pos});
        break;
      }
      char c = peek();
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '^' || c == '$') {
        out.push_back({Tok::Ident, lex_ident(), pos});
        Token& t = out.back();
        if (t.text[0] != '^' && t.text[0] != '$') t.kind = keyword(t.text);
        continue;
      }
      switch (c) {
        case '(': advance(); out.push_back({Tok::LParen, "(", pos}); continue;
        case ')': advance(); out.push_back({Tok::RParen, ")", pos}); continue;
        case '[': advance(); out.push_back({Tok::LBracket, "[", pos}); continue;
        case ']': advance(); out.push_back({Tok::RBracket, "]", pos}); continue;
        case '{': advance(); out.push_back({Tok::LBrace, "{", pos}); continue;
        case '}': advance(); out.push_back({Tok::RBrace, "}", pos}); continue;
        case ',': advance(); out.push_back({Tok::Comma, ",", pos}); continue;
        case '.': advance(); out.push_back({Tok::Dot, ".", pos}); continue;
        case '+': advance(); out.push_back({Tok::Plus, "+", pos}); continue;
        case '*': advance(); out.push_back({Tok::Star, "*", pos}); continue;
        case '=': advance(); out.push_back({Tok::Equals, "=", pos}); continue;
        case ':': advance(); out.push_back({Tok::Colon, ":", pos}); continue;
        case '#': advance(); out.push_back({Tok::Hash, "#", pos}); continue;
        case '|':
          advance();
          if (peek() == '|') { advance(); out.push_back({Tok::ParBar, "||", pos}); continue; }
          throw SpecError("SyntaxError", pos, "expected '||', found single '|'");
        case '>':
          advance();
          if (peek() == '>') { advance(); out.push_back({Tok::Shift, ">>", pos}); continue; }
          throw SpecError("SyntaxError", pos, "expected '>>', found single '>'");
        case '-':
          advance();
          if (peek() == '>') { advance(); out.push_back({Tok::Arrow, "->", pos}); continue; }
          throw SpecError("SyntaxError", pos, "stray '-'");
        default:
          throw SpecError("SyntaxError", pos, std::string("unexpected character '") + c + "'");
      }
    }
    return out;
  }

 private:
  bool eof() const { return i_ >= src_.size(); }
  char peek() const { return eof() ? '\0' : src_[i_]; }
  char peek2() const { return i_ + 1 < src_.size() ? src_[i_ + 1] : '\0'; }

  void advance() {
    if (eof()) return;
    if (src_[i_] == '\n') { ++line_; col_ = 1; } else { ++col_; }
    ++i_;
  }

  void skip_ws_and_comments() {
    while (!eof()) {
      char c = peek();
      if (std::isspace(static_cast<unsigned char>(c))) { advance(); continue; }
      if (c == '-' && peek2() == '-') {
        while (!eof() && peek() != '\n') advance();
        continue;
      }
      break;
    }
  }

  // Identifiers may contain single hyphens (edit-module, tb-snd-msg). A '-'
  // only continues the identifier when followed by an identifier character,
  // so `x->y` and `x --comment` lex as expected.
  std::string lex_ident() {
    std::string s;
    if (peek() == '^' || peek() == '$') { s += peek(); advance(); }
    while (!eof()) {
      char c = peek();
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'') {
        s += c;
        advance();
        continue;
      }
      if (c == '-' && (std::isalnum(static_cast<unsigned char>(peek2())) || peek2() == '_')) {
        s += c;
        advance();
        continue;
      }
      break;
    }
    return s;
  }

  const std::string& src_;
  std::string file_;
  size_t i_ = 0;
  int line_ = 1;
  int col_ = 1;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Spec run() {
    Spec spec;
    while (!at(Tok::Eof)) spec.modules.push_back(parse_module());
    return spec;
  }

 private:
  const Token& cur() const { return toks_[i_]; }
  bool at(Tok k) const { return cur().kind == k; }

  Token eat(Tok k, const char* what) {
    if (!at(k))
      throw SpecError("SyntaxError", cur().pos,
                      std::string("expected ") + what + ", found '" + cur().text + "'");
    return toks_[i_++];
  }

  bool opt(Tok k) {
    if (at(k)) { ++i_; return true; }
    return false;
  }

  Sort parse_sort() {
    Token t = eat(Tok::Ident, "sort name");
    auto s = sort_from_name(t.text);
    if (!s) throw SpecError("SyntaxError", t.pos, "unknown sort " + t.text);
    return *s;
  }

  ModuleDecl parse_module() {
    ModuleDecl m;
    m.pos = cur().pos;
    if (opt(Tok::KwData)) m.kind = ModuleDecl::Data;
    else { eat(Tok::KwProcess, "'data' or 'process'"); m.kind = ModuleDecl::Process; }
    eat(Tok::KwModule, "'module'");
    m.name = eat(Tok::Ident, "module name").text;
    eat(Tok::KwBegin, "'begin'");
    while (!at(Tok::KwEnd)) parse_section(m);
    eat(Tok::KwEnd, "'end'");
    Token closer = eat(Tok::Ident, "module name after 'end'");
    if (closer.text != m.name)
      throw SpecError("SyntaxError", closer.pos,
                      "module " + m.name + " closed as " + closer.text);
    if (m.kind == ModuleDecl::Data && !m.definitions.empty())
      throw SpecError("SyntaxError", m.pos, "data module " + m.name + " contains process definitions");
    return m;
  }

  void parse_section(ModuleDecl& m) {
    if (opt(Tok::KwExports)) {
      eat(Tok::KwBegin, "'begin'");
      while (!at(Tok::KwEnd)) {
        if (opt(Tok::KwFunctions)) parse_function_decls(m.exports.functions);
        else if (opt(Tok::KwAtoms)) parse_atom_decls(m.exports.atoms);
        else if (opt(Tok::KwProcesses)) parse_proc_decls(m.exports.processes);
        else throw SpecError("SyntaxError", cur().pos, "expected exports section, found '" + cur().text + "'");
      }
      eat(Tok::KwEnd, "'end'");
      return;
    }
    if (opt(Tok::KwImports)) {
      m.imports.push_back(parse_import());
      while (opt(Tok::Comma)) m.imports.push_back(parse_import());
      return;
    }
    if (opt(Tok::KwAtoms)) { parse_atom_decls(m.atoms); return; }
    if (opt(Tok::KwFunctions)) { parse_function_decls(m.functions); return; }
    if (opt(Tok::KwProcesses)) { parse_proc_decls(m.processes); return; }
    if (opt(Tok::KwParameters)) {
      m.parameters.push_back(eat(Tok::Ident, "parameter name").text);
      while (opt(Tok::Comma)) m.parameters.push_back(eat(Tok::Ident, "parameter name").text);
      return;
    }
    if (opt(Tok::KwDefinitions)) {
      while (at(Tok::Ident)) m.definitions.push_back(parse_definition());
      return;
    }
    throw SpecError("SyntaxError", cur().pos, "expected module section, found '" + cur().text + "'");
  }

  // name : S1 # S2 -> S   |   name : -> S   |   name (atoms: sorts optional)
  void parse_function_decls(std::vector<FunctionDecl>& out) {
    while (at(Tok::Ident)) {
      FunctionDecl f;
      Token t = eat(Tok::Ident, "function name");
      f.name = t.text;
      f.pos = t.pos;
      eat(Tok::Colon, "':'");
      if (!at(Tok::Arrow)) {
        f.arg_sorts.push_back(parse_sort());
        while (opt(Tok::Hash)) f.arg_sorts.push_back(parse_sort());
      }
      eat(Tok::Arrow, "'->'");
      f.result = parse_sort();
      out.push_back(std::move(f));
    }
  }

  void parse_atom_decls(std::vector<AtomDecl>& out) {
    while (at(Tok::Ident)) {
      AtomDecl a;
      Token t = eat(Tok::Ident, "atom name");
      a.name = t.text;
      a.pos = t.pos;
      if (opt(Tok::Colon)) {
        a.arg_sorts.push_back(parse_sort());
        while (opt(Tok::Hash)) a.arg_sorts.push_back(parse_sort());
      }
      out.push_back(std::move(a));
    }
  }

  void parse_proc_decls(std::vector<ProcDecl>& out) {
    while (at(Tok::Ident)) {
      ProcDecl p;
      Token t = eat(Tok::Ident, "process name");
      p.name = t.text;
      p.pos = t.pos;
      if (opt(Tok::Colon)) {
        p.param_sorts.push_back(parse_sort());
        while (opt(Tok::Hash)) p.param_sorts.push_back(parse_sort());
      }
      out.push_back(std::move(p));
    }
  }

  ImportClause parse_import() {
    ImportClause imp;
    Token t = eat(Tok::Ident, "module name");
    imp.target = t.text;
    imp.pos = t.pos;
    if (!opt(Tok::LBrace)) return imp;
    imp.parameterized = true;
    imp.param = eat(Tok::Ident, "parameter name").text;
    eat(Tok::KwBound, "'bound'");
    eat(Tok::KwBy, "'by'");
    eat(Tok::LBracket, "'['");
    while (!at(Tok::RBracket)) {
      Binding b;
      Token f = eat(Tok::Ident, "formal name");
      b.formal = f.text;
      b.pos = f.pos;
      eat(Tok::Arrow, "'->'");
      b.actual = eat(Tok::Ident, "actual name").text;
      imp.bindings.push_back(std::move(b));
      opt(Tok::Comma);
    }
    eat(Tok::RBracket, "']'");
    eat(Tok::KwTo, "'to'");
    imp.via_module = eat(Tok::Ident, "module name").text;
    if (opt(Tok::KwRenamed)) {
      eat(Tok::KwBy, "'by'");
      eat(Tok::LBracket, "'['");
      while (!at(Tok::RBracket)) {
        Renaming r;
        Token f = eat(Tok::Ident, "name");
        r.from = f.text;
        r.pos = f.pos;
        eat(Tok::Arrow, "'->'");
        r.to = eat(Tok::Ident, "name").text;
        imp.renamings.push_back(std::move(r));
        opt(Tok::Comma);
      }
      eat(Tok::RBracket, "']'");
    }
    eat(Tok::RBrace, "'}'");
    return imp;
  }

  SProcessDef parse_definition() {
    SProcessDef def;
    Token t = eat(Tok::Ident, "process name");
    def.name = t.text;
    def.pos = t.pos;
    if (opt(Tok::LParen)) {
      if (!at(Tok::RParen)) {
        def.formals.push_back(eat(Tok::Ident, "formal parameter").text);
        while (opt(Tok::Comma)) def.formals.push_back(eat(Tok::Ident, "formal parameter").text);
      }
      eat(Tok::RParen, "')'");
    }
    eat(Tok::Equals, "'='");
    def.body = parse_par();
    return def;
  }

  // Precedence, loosest first:  ||   +   *   .
  SProc parse_par() {
    SProc t = parse_alt();
    while (at(Tok::ParBar)) {
      SourcePos pos = cur().pos;
      ++i_;
      auto n = std::make_shared<SProcTerm>();
      n->kind = SProcTerm::Par;
      n->a = t;
      n->b = parse_alt();
      n->pos = pos;
      t = n;
    }
    return t;
  }

  SProc parse_alt() {
    SProc t = parse_star();
    while (at(Tok::Plus)) {
      SourcePos pos = cur().pos;
      ++i_;
      auto n = std::make_shared<SProcTerm>();
      n->kind = SProcTerm::Alt;
      n->a = t;
      n->b = parse_star();
      n->pos = pos;
      t = n;
    }
    return t;
  }

  SProc parse_star() {
    SProc t = parse_seq();
    while (at(Tok::Star)) {
      SourcePos pos = cur().pos;
      ++i_;
      auto n = std::make_shared<SProcTerm>();
      n->kind = SProcTerm::Star;
      n->a = t;
      n->b = parse_seq();
      n->pos = pos;
      t = n;
    }
    return t;
  }

  SProc parse_seq() {
    SProc t = parse_prefix();
    while (at(Tok::Dot)) {
      SourcePos pos = cur().pos;
      ++i_;
      auto n = std::make_shared<SProcTerm>();
      n->kind = SProcTerm::Seq;
      n->a = t;
      n->b = parse_prefix();
      n->pos = pos;
      t = n;
    }
    return t;
  }

  SProc parse_prefix() {
    if (at(Tok::LBracket)) {
      auto n = std::make_shared<SProcTerm>();
      n->pos = cur().pos;
      n->kind = SProcTerm::Guard;
      ++i_;
      n->guard_lhs = parse_dterm();
      eat(Tok::Equals, "'='");
      n->guard_rhs = parse_dterm();
      eat(Tok::RBracket, "']'");
      eat(Tok::Arrow, "'->'");
      n->a = parse_seq();
      return n;
    }
    return parse_primary();
  }

  SProc parse_primary() {
    if (opt(Tok::LParen)) {
      SProc t = parse_par();
      eat(Tok::RParen, "')'");
      return t;
    }
    if (at(Tok::KwDelta)) {
      auto n = std::make_shared<SProcTerm>();
      n->pos = cur().pos;
      ++i_;
      n->kind = SProcTerm::Delta;
      return n;
    }
    Token name = eat(Tok::Ident, "action or process name");
    auto n = std::make_shared<SProcTerm>();
    n->kind = SProcTerm::Apply;
    n->name = name.text;
    n->pos = name.pos;
    if (opt(Tok::LParen)) {
      if (!at(Tok::RParen)) {
        // `id >> id, term` puts the connection first (snd/rec form)
        if (at(Tok::Ident) && toks_[i_ + 1].kind == Tok::Shift) {
          std::string from = eat(Tok::Ident, "identifier").text;
          eat(Tok::Shift, "'>>'");
          std::string to = eat(Tok::Ident, "identifier").text;
          n->conn = {from, to};
          if (opt(Tok::Comma)) n->dargs.push_back(parse_dterm());
        } else {
          n->dargs.push_back(parse_dterm());
          while (opt(Tok::Comma)) n->dargs.push_back(parse_dterm());
        }
      }
      eat(Tok::RParen, "')'");
    }
    return n;
  }

  SDataTerm parse_dterm() {
    SDataTerm t;
    Token name = eat(Tok::Ident, "data term");
    t.head = name.text;
    t.pos = name.pos;
    if (opt(Tok::LParen)) {
      if (!at(Tok::RParen)) {
        t.args.push_back(parse_dterm());
        while (opt(Tok::Comma)) t.args.push_back(parse_dterm());
      }
      eat(Tok::RParen, "')'");
    }
    return t;
  }

  std::vector<Token> toks_;
  size_t i_ = 0;
};

}  // namespace

Spec parse_spec(const std::string& source, const std::string& filename) {
  Lexer lex(source, filename);
  Parser p(lex.run());
  return p.run();
}

Spec parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecError("IO", path + ": no such file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_spec(ss.str(), path);
}

}  // namespace psf
