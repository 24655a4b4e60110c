#include "deco/frontend/syntax.hpp"

#include <cctype>

#include "deco/errors.hpp"

namespace deco {

std::string FunExpr::to_string() const {
  switch (kind) {
    case Kind::Name:
      return name;
    case Kind::Map:
      return "map (" + inner->to_string() + ")";
    case Kind::Map2:
      return "map2 (" + inner->to_string() + ")";
    case Kind::Replicate:
      return extent ? "replicate<" + std::to_string(*extent) + ">"
                    : std::string("replicate");
  }
  return "?";
}

std::string Expr::to_string() const {
  switch (kind) {
    case Kind::Var:
      return ordinal ? name + "@" + std::to_string(*ordinal) : name;
    case Kind::Let:
      return "let " + name + " = " + kids[0].to_string() + "; " +
             kids[1].to_string();
    case Kind::App:
      return "(" + fn.to_string() + " # " + kids[0].to_string() + ")";
    case Kind::Tuple: {
      std::string s = "(";
      for (std::size_t k = 0; k < kids.size(); ++k) {
        if (k) s += ", ";
        s += kids[k].to_string();
      }
      return s + ")";
    }
    case Kind::Literal:
      return literal.dump();
  }
  return "?";
}

namespace {

bool ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  ParsedProgram program() {
    ParsedProgram p;
    skip();
    if (keyword() != "bundle") fail("expected 'bundle NAME (params)' header");
    take_ident();
    p.bundle = take_ident();
    expect('(');
    if (!peek_is(')')) {
      do {
        Param prm;
        skip();
        prm.pos = here();
        prm.name = take_ident();
        expect(':');
        prm.type_text = type_text();
        p.params.push_back(std::move(prm));
      } while (eat(','));
    }
    expect(')');
    p.body = expr();
    finish();
    return p;
  }

  Expr whole_expr() {
    Expr e = expr();
    finish();
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    SourcePos p = here();
    throw ParseError(msg, p.line, p.column);
  }

  SourcePos here() const {
    SourcePos p;
    for (std::size_t k = 0; k < pos_ && k < text_.size(); ++k) {
      if (text_[k] == '\n') {
        ++p.line;
        p.column = 1;
      } else {
        ++p.column;
      }
    }
    return p;
  }

  void skip() {
    for (;;) {
      while (pos_ < text_.size() &&
             std::isspace(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
      }
      if (pos_ + 1 < text_.size() && text_[pos_] == '/' &&
          text_[pos_ + 1] == '/') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
        continue;
      }
      return;
    }
  }

  void finish() {
    skip();
    if (pos_ != text_.size()) fail("unexpected trailing input");
  }

  bool peek_is(char c) {
    skip();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  bool eat(char c) {
    if (!peek_is(c)) return false;
    ++pos_;
    return true;
  }

  void expect(char c) {
    if (!eat(c)) {
      if (pos_ >= text_.size()) {
        fail(std::string("expected '") + c + "' before end of input");
      }
      fail(std::string("expected '") + c + "'");
    }
  }

  /// Next identifier without consuming it.
  std::string keyword() {
    skip();
    std::size_t k = pos_;
    while (k < text_.size() && ident_char(text_[k])) ++k;
    if (k == pos_ || !ident_start(text_[pos_])) return {};
    return std::string(text_.substr(pos_, k - pos_));
  }

  std::string take_ident() {
    std::string s = keyword();
    if (s.empty()) fail("expected a name");
    pos_ += s.size();
    return s;
  }

  std::string type_text() {
    skip();
    std::size_t start = pos_;
    int depth = 0;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '(' || c == '<') ++depth;
      if (c == ')' || c == '>') {
        if (depth == 0) break;
        --depth;
      }
      if (c == ',' && depth == 0) break;
      ++pos_;
    }
    std::string t(text_.substr(start, pos_ - start));
    while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back()))) {
      t.pop_back();
    }
    if (t.empty()) fail("expected a type");
    return t;
  }

  Expr expr() {
    skip();
    SourcePos pos = here();
    if (keyword() == "let") {
      take_ident();
      Expr e;
      e.kind = Expr::Kind::Let;
      e.pos = pos;
      skip();
      if (keyword().empty()) fail("expected a name after 'let'");
      e.name = take_ident();
      expect('=');
      e.kids.push_back(expr());
      expect(';');
      e.kids.push_back(expr());
      return e;
    }
    std::size_t save = pos_;
    if (auto f = try_fun()) {
      if (eat('#')) {
        Expr e;
        e.kind = Expr::Kind::App;
        e.pos = pos;
        e.fn = *f;
        e.kids.push_back(expr());
        return e;
      }
    }
    pos_ = save;
    return atom();
  }

  std::optional<FunExpr> try_fun() {
    std::size_t save = pos_;
    try {
      return fun();
    } catch (const ParseError&) {
      pos_ = save;
      return std::nullopt;
    }
  }

  FunExpr fun() {
    skip();
    FunExpr f;
    f.pos = here();
    if (eat('(')) {
      FunExpr inner = fun();
      expect(')');
      return inner;
    }
    std::string name = take_ident();
    if (name == "map" || name == "map2") {
      f.kind = name == "map" ? FunExpr::Kind::Map : FunExpr::Kind::Map2;
      f.inner = std::make_shared<const FunExpr>(fun());
      return f;
    }
    if (name == "replicate") {
      f.kind = FunExpr::Kind::Replicate;
      if (eat('<')) {
        skip();
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
          ++pos_;
        }
        if (start == pos_) fail("expected an extent");
        f.extent = std::stoll(std::string(text_.substr(start, pos_ - start)));
        expect('>');
      }
      return f;
    }
    if (name == "let") fail("unexpected 'let'");
    f.kind = FunExpr::Kind::Name;
    f.name = std::move(name);
    return f;
  }

  Expr tuple(char close, SourcePos pos) {
    Expr e;
    e.kind = Expr::Kind::Tuple;
    e.pos = pos;
    do {
      e.kids.push_back(expr());
    } while (eat(','));
    expect(close);
    if (e.kids.size() == 1 && close == ')') return e.kids[0];
    if (e.kids.size() == 1) fail("a bracketed tuple needs two elements");
    return e;
  }

  Expr atom() {
    skip();
    SourcePos pos = here();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      return tuple(')', pos);
    }
    if (c == '[') {
      ++pos_;
      return tuple(']', pos);
    }
    Expr e;
    e.pos = pos;
    if (c == '"' || c == '-' || std::isdigit(static_cast<unsigned char>(c))) {
      e.kind = Expr::Kind::Literal;
      e.literal = json_literal();
      return e;
    }
    std::string name = take_ident();
    if (name == "null" || name == "true" || name == "false") {
      e.kind = Expr::Kind::Literal;
      e.literal = Json::parse(name);
      return e;
    }
    if (name == "let" || name == "map" || name == "map2" ||
        name == "replicate") {
      pos_ -= name.size();
      fail("'" + name + "' must be applied with '#'");
    }
    e.kind = Expr::Kind::Var;
    e.name = std::move(name);
    return e;
  }

  Json json_literal() {
    std::size_t start = pos_;
    if (text_[pos_] == '"') {
      ++pos_;
      while (pos_ < text_.size() && text_[pos_] != '"') {
        if (text_[pos_] == '\\') ++pos_;
        ++pos_;
      }
      if (pos_ >= text_.size()) fail("unterminated string");
      ++pos_;
    } else {
      if (text_[pos_] == '-') ++pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
              text_[pos_] == '.' ||
              ((text_[pos_] == '-' || text_[pos_] == '+') &&
               (text_[pos_ - 1] == 'e' || text_[pos_ - 1] == 'E')))) {
        ++pos_;
      }
    }
    std::string_view lit = text_.substr(start, pos_ - start);
    try {
      return Json::parse(lit.begin(), lit.end());
    } catch (const Json::parse_error&) {
      pos_ = start;
      fail("malformed literal '" + std::string(lit) + "'");
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

ParsedProgram parse_program(std::string_view text) {
  return Parser(text).program();
}

Expr parse_expr(std::string_view text) { return Parser(text).whole_expr(); }

}  // namespace deco
