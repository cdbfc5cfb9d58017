#include "tick/parse.hpp"

#include <cctype>
#include <cstdint>
#include <limits>
#include <map>
#include <set>

namespace tick {

namespace {

enum class Tok {
  Ident,
  Number,
  LBrace,
  RBrace,
  LParen,
  RParen,
  LBracket,
  RBracket,
  Semi,
  Comma,
  Dot,
  Plus,
  Arrow,
  End,
  Error,
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  Time number = 0;
  int line = 1;
  int column = 1;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) {}

  Token next() {
    skip_space();
    Token tok;
    tok.line = line_;
    tok.column = column_;
    if (pos_ >= text_.size()) {
      tok.kind = Tok::End;
      return tok;
    }
    const char c = text_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        tok.text.push_back(text_[pos_]);
        advance();
      }
      tok.kind = Tok::Ident;
      return tok;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '-' && pos_ + 1 < text_.size() &&
         std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])))) {
      return lex_number(tok);
    }
    switch (c) {
      case '{': advance(); tok.kind = Tok::LBrace; return tok;
      case '}': advance(); tok.kind = Tok::RBrace; return tok;
      case '(': advance(); tok.kind = Tok::LParen; return tok;
      case ')': advance(); tok.kind = Tok::RParen; return tok;
      case '[': advance(); tok.kind = Tok::LBracket; return tok;
      case ']': advance(); tok.kind = Tok::RBracket; return tok;
      case ';': advance(); tok.kind = Tok::Semi; return tok;
      case ',': advance(); tok.kind = Tok::Comma; return tok;
      case '.': advance(); tok.kind = Tok::Dot; return tok;
      case '+': advance(); tok.kind = Tok::Plus; return tok;
      case '-':
        advance();
        if (pos_ < text_.size() && text_[pos_] == '>') {
          advance();
          tok.kind = Tok::Arrow;
          return tok;
        }
        tok.kind = Tok::Error;
        tok.text = "-";
        return tok;
      default:
        advance();
        tok.kind = Tok::Error;
        tok.text = std::string(1, c);
        return tok;
    }
  }

 private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  Token lex_number(Token tok) {
    bool negative = false;
    if (text_[pos_] == '-') {
      negative = true;
      advance();
    }
    bool overflow = false;
    Time value = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      const int digit = text_[pos_] - '0';
      if (value > (std::numeric_limits<Time>::max() - digit) / 10) {
        overflow = true;
      } else {
        value = value * 10 + digit;
      }
      tok.text.push_back(text_[pos_]);
      advance();
    }
    if (overflow) {
      tok.kind = Tok::Error;
      tok.text = "number out of range";
      return tok;
    }
    tok.kind = Tok::Number;
    tok.number = negative ? -value : value;
    return tok;
  }

  const std::string& text_;
  size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

struct RawProperty {
  std::string name;
  PropExpr expr;
  Token name_token;
};

class Parser {
 public:
  explicit Parser(const std::string& text) : lexer_(text) { bump(); }

  std::vector<Diagnostic> diagnostics;
  std::vector<ThreadDef> threads;
  std::vector<RawProperty> properties;

  void parse_file() {
    bool saw_anything = false;
    while (cur_.kind != Tok::End) {
      saw_anything = true;
      if (is_keyword("thread")) {
        parse_thread();
      } else if (is_keyword("property")) {
        parse_property_block();
      } else {
        error(cur_, "expected 'thread' or 'property', found " + describe(cur_));
        recover_toplevel();
      }
    }
    if (!saw_anything) {
      error(cur_, "no threads declared");
    } else if (threads.empty() && diagnostics.empty()) {
      error(cur_, "no threads declared");
    }
  }

  // Single property expression (for the standalone entry point).
  PropExpr parse_expression_only() {
    PropExpr e = parse_expr();
    if (cur_.kind != Tok::End) {
      error(cur_, "unexpected trailing input after property expression");
    }
    return e;
  }

 private:
  void bump() { cur_ = lexer_.next(); }

  bool is_keyword(const char* kw) const {
    return cur_.kind == Tok::Ident && cur_.text == kw;
  }

  void error(const Token& at, const std::string& message) {
    diagnostics.push_back({at.line, at.column, message});
  }

  static std::string describe(const Token& t) {
    switch (t.kind) {
      case Tok::Ident: return "'" + t.text + "'";
      case Tok::Number: return "number " + t.text;
      case Tok::End: return "end of input";
      case Tok::Error: return "'" + t.text + "'";
      default: break;
    }
    static const std::map<Tok, std::string> names = {
        {Tok::LBrace, "'{'"},   {Tok::RBrace, "'}'"},     {Tok::LParen, "'('"},
        {Tok::RParen, "')'"},   {Tok::LBracket, "'['"},   {Tok::RBracket, "']'"},
        {Tok::Semi, "';'"},     {Tok::Comma, "','"},      {Tok::Dot, "'.'"},
        {Tok::Plus, "'+'"},     {Tok::Arrow, "'->'"},
    };
    return names.at(t.kind);
  }

  bool expect(Tok kind, const char* what) {
    if (cur_.kind == kind) {
      bump();
      return true;
    }
    error(cur_, std::string("expected ") + what + ", found " + describe(cur_));
    return false;
  }

  std::string expect_ident(const char* what) {
    if (cur_.kind == Tok::Ident) {
      std::string name = cur_.text;
      bump();
      return name;
    }
    error(cur_, std::string("expected ") + what + ", found " + describe(cur_));
    return "";
  }

  void recover_toplevel() {
    while (cur_.kind != Tok::End && !is_keyword("thread") && !is_keyword("property")) bump();
  }

  void recover_stmt() {
    while (cur_.kind != Tok::End && cur_.kind != Tok::Semi && cur_.kind != Tok::RBrace) bump();
    if (cur_.kind == Tok::Semi) bump();
  }

  Time parse_duration(bool& ok) {
    ok = false;
    if (cur_.kind != Tok::Number) {
      error(cur_, "expected duration, found " + describe(cur_));
      return 0;
    }
    const Time value = cur_.number;
    if (value < 1) {
      error(cur_, "duration must be at least 1 time unit (got " + cur_.text + ")");
      bump();
      return 0;
    }
    bump();
    ok = true;
    return value;
  }

  void parse_thread() {
    const Token kw = cur_;
    bump();  // 'thread'
    std::string name = expect_ident("thread name");
    for (const auto& t : threads) {
      if (t.name == name) {
        error(kw, "duplicate thread name '" + name + "'");
      }
    }
    if (!expect(Tok::LBrace, "'{'")) {
      recover_toplevel();
      return;
    }
    ThreadDef def;
    def.name = name;
    std::set<std::string> labels;
    bool has_loop = false;
    parse_stmt_list(def.stmts, labels, has_loop, /*inside_loop=*/false);
    if (def.stmts.empty()) {
      error(kw, "thread '" + name + "' has no statements");
    }
    threads.push_back(std::move(def));
  }

  void parse_stmt_list(std::vector<Stmt>& out, std::set<std::string>& labels,
                       bool& has_loop, bool inside_loop) {
    while (cur_.kind != Tok::RBrace && cur_.kind != Tok::End) {
      if (is_keyword("stmt")) {
        bump();
        const Token label_tok = cur_;
        std::string label = expect_ident("statement label");
        if (!label.empty() && !labels.insert(label).second) {
          error(label_tok, "duplicate label '" + label + "'");
        }
        if (!is_keyword("dur")) {
          error(cur_, "expected 'dur', found " + describe(cur_));
          recover_stmt();
          continue;
        }
        bump();
        bool ok = false;
        const Time d = parse_duration(ok);
        if (!ok) {
          recover_stmt();
          continue;
        }
        expect(Tok::Semi, "';'");
        out.push_back(Stmt::ordinary(std::move(label), d));
      } else if (is_keyword("sleep")) {
        bump();
        bool ok = false;
        const Time d = parse_duration(ok);
        if (!ok) {
          recover_stmt();
          continue;
        }
        expect(Tok::Semi, "';'");
        out.push_back(Stmt::sleep(d));
      } else if (is_keyword("loop")) {
        const Token kw = cur_;
        bump();
        if (inside_loop) {
          error(kw, "nested loops are not supported");
        } else if (has_loop) {
          error(kw, "a thread may contain at most one loop");
        }
        if (!expect(Tok::LBrace, "'{'")) {
          recover_stmt();
          continue;
        }
        std::vector<Stmt> body;
        bool ignored = false;
        parse_stmt_list(body, labels, ignored, /*inside_loop=*/true);
        if (body.empty()) {
          error(kw, "loop body has no statements");
        }
        if (!inside_loop && !has_loop) {
          has_loop = true;
          out.push_back(Stmt::loop(std::move(body)));
        }
      } else {
        error(cur_, "unknown keyword " + describe(cur_) +
                        "; expected 'stmt', 'sleep', 'loop', or '}'");
        recover_stmt();
      }
    }
    expect(Tok::RBrace, "'}'");
  }

  void parse_property_block() {
    bump();  // 'property'
    const Token name_tok = cur_;
    std::string name = expect_ident("property name");
    if (!expect(Tok::LBrace, "'{'")) {
      recover_toplevel();
      return;
    }
    const size_t before = diagnostics.size();
    PropExpr expr = parse_expr();
    expect(Tok::RBrace, "'}'");
    if (diagnostics.size() == before) {
      properties.push_back({std::move(name), std::move(expr), name_tok});
    }
  }

  // expr := or_expr ('->' expr)?   right-associative
  PropExpr parse_expr() {
    PropExpr lhs = parse_or();
    if (cur_.kind == Tok::Arrow) {
      bump();
      return PropExpr::implies(std::move(lhs), parse_expr());
    }
    return lhs;
  }

  PropExpr parse_or() {
    PropExpr lhs = parse_and();
    while (is_keyword("or")) {
      bump();
      lhs = PropExpr::disj(std::move(lhs), parse_and());
    }
    return lhs;
  }

  PropExpr parse_and() {
    PropExpr lhs = parse_unary();
    while (is_keyword("and")) {
      bump();
      lhs = PropExpr::conj(std::move(lhs), parse_unary());
    }
    return lhs;
  }

  PropExpr parse_unary() {
    if (is_keyword("not")) {
      bump();
      return PropExpr::neg(parse_unary());
    }
    if (cur_.kind == Tok::LParen) {
      bump();
      PropExpr e = parse_expr();
      expect(Tok::RParen, "')'");
      return e;
    }
    return parse_atom();
  }

  PropExpr parse_atom() {
    if (!is_keyword("before")) {
      error(cur_, "expected 'before', 'not', or '(', found " + describe(cur_));
      bump();
      return PropExpr{};
    }
    bump();
    expect(Tok::LParen, "'('");
    PropRef a = parse_ref();
    expect(Tok::Comma, "','");
    PropRef b = parse_ref();
    expect(Tok::RParen, "')'");
    return PropExpr::atom(std::move(a), std::move(b));
  }

  PropRef parse_ref() {
    PropRef ref;
    ref.thread = expect_ident("thread name");
    expect(Tok::Dot, "'.'");
    ref.label = expect_ident("statement label");
    if (cur_.kind == Tok::LBracket) {
      bump();
      const Token var = cur_;
      const std::string idx = expect_ident("index variable 'i'");
      if (idx != "i" && !idx.empty()) {
        error(var, "unknown index variable '" + idx + "'; only 'i' is supported");
      }
      if (cur_.kind == Tok::Plus) {
        bump();
        if (cur_.kind != Tok::Number || cur_.number != 1) {
          error(cur_, "only offsets 'i' and 'i+1' are supported");
          if (cur_.kind == Tok::Number) bump();
        } else {
          bump();
        }
        ref.index = PropRef::Index::IPlusOne;
      } else {
        ref.index = PropRef::Index::I;
      }
      expect(Tok::RBracket, "']'");
    }
    return ref;
  }

  Lexer lexer_;
  Token cur_;
};

// Statement lookup for property resolution: locates `label` in `thread`
// and reports whether it sits inside the loop.
bool find_label(const ThreadDef& thread, const std::string& label, bool& in_loop) {
  for (const auto& s : thread.stmts) {
    if (s.kind == StmtKind::Ordinary && s.label == label) {
      in_loop = false;
      return true;
    }
    if (s.kind == StmtKind::Loop) {
      for (const auto& b : s.body) {
        if (b.kind == StmtKind::Ordinary && b.label == label) {
          in_loop = true;
          return true;
        }
      }
    }
  }
  return false;
}

void resolve_refs(const PropExpr& expr, const SourceProgram& program, const Token& at,
                  std::vector<Diagnostic>& diagnostics) {
  if (expr.kind == PropExpr::Kind::Atom) {
    for (const PropRef* ref : {&expr.lhs, &expr.rhs}) {
      const ThreadDef* thread = program.find_thread(ref->thread);
      if (!thread) {
        diagnostics.push_back({at.line, at.column, "unknown thread '" + ref->thread + "'"});
        continue;
      }
      bool in_loop = false;
      if (!find_label(*thread, ref->label, in_loop)) {
        diagnostics.push_back({at.line, at.column, "unknown label '" + ref->label +
                                                       "' in thread '" + ref->thread + "'"});
        continue;
      }
      if (ref->index != PropRef::Index::None && !in_loop) {
        diagnostics.push_back({at.line, at.column,
                               "label '" + ref->label + "' is not inside a loop; an index "
                               "expression cannot be applied"});
      }
      if (ref->index == PropRef::Index::None && in_loop) {
        diagnostics.push_back({at.line, at.column,
                               "label '" + ref->label + "' is inside a loop; reference a "
                               "specific iteration with [i] or [i+1]"});
      }
    }
    return;
  }
  for (const auto& a : expr.args) resolve_refs(a, program, at, diagnostics);
}

}  // namespace

ParseOutcome<SourceProgram> parse_program(const std::string& text) {
  Parser parser(text);
  parser.parse_file();

  ParseOutcome<SourceProgram> out;
  out.value.threads = std::move(parser.threads);
  out.diagnostics = std::move(parser.diagnostics);
  for (auto& raw : parser.properties) {
    resolve_refs(raw.expr, out.value, raw.name_token, out.diagnostics);
    out.value.properties.push_back({std::move(raw.name), std::move(raw.expr)});
  }
  if (!out.diagnostics.empty()) out.value = SourceProgram{};
  return out;
}

ParseOutcome<Property> parse_property(const std::string& text, const SourceProgram& program,
                                      const std::string& name) {
  Parser parser(text);
  PropExpr expr = parser.parse_expression_only();
  ParseOutcome<Property> out;
  out.diagnostics = std::move(parser.diagnostics);
  Token at;  // expression start
  resolve_refs(expr, program, at, out.diagnostics);
  out.value = {name, std::move(expr)};
  if (!out.diagnostics.empty()) out.value = Property{};
  return out;
}

}  // namespace tick
