#include "deco/term_text.hpp"

#include <cctype>
#include <map>

#include "deco/codec.hpp"
#include "deco/errors.hpp"
#include "deco/json_codec.hpp"

namespace deco {
namespace {

class TermReader {
 public:
  TermReader(const Registry& reg, std::string_view text)
      : reg_(reg), text_(text) {}

  Term read_all() {
    Term t = term();
    skip();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    std::size_t line = 1, col = 1;
    for (std::size_t k = 0; k < pos_ && k < text_.size(); ++k) {
      if (text_[k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(msg, line, col);
  }

  void skip() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  bool peek(char c) {
    skip();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  void expect(char c) {
    if (!peek(c)) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  std::string word() {
    skip();
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
            text_[pos_] == '_' || text_[pos_] == '-')) {
      ++pos_;
    }
    if (start == pos_) fail("expected a word");
    return std::string(text_.substr(start, pos_ - start));
  }

  std::string quoted() {
    skip();
    if (pos_ >= text_.size() || text_[pos_] != '"') fail("expected a string");
    std::size_t start = pos_++;
    while (pos_ < text_.size() && text_[pos_] != '"') {
      if (text_[pos_] == '\\') ++pos_;
      ++pos_;
    }
    if (pos_ >= text_.size()) fail("unterminated string");
    ++pos_;
    return Json::parse(text_.substr(start, pos_ - start)).get<std::string>();
  }

  Type type_arg() {
    std::size_t at = pos_;
    std::string s = quoted();
    try {
      return reg_.parse_type(s);
    } catch (const Error& e) {
      pos_ = at;
      fail(e.what());
    }
  }

  Index index_arg() {
    skip();
    if (peek('"')) {
      std::size_t at = pos_;
      std::string s = quoted();
      try {
        return index_from_text(s);
      } catch (const Error& e) {
        pos_ = at;
        fail(e.what());
      }
    }
    std::string w = word();
    try {
      return Index(static_cast<std::int64_t>(std::stoll(w)));
    } catch (const std::exception&) {
      fail("bad index '" + w + "'");
    }
  }

  Term term() {
    if (!peek('(')) {
      std::string w = word();
      static const std::map<std::string, Term (*)()> atoms = {
          {"id", &Term::id},     {"dup", &Term::dup}, {"fst", &Term::fst},
          {"snd", &Term::snd},   {"plus", &Term::plus}, {"zip", &Term::zip},
          {"tp", &Term::tp},     {"fuse", &Term::fuse},
          {"distr", &Term::distr}};
      auto it = atoms.find(w);
      if (it == atoms.end()) fail("unknown constructor '" + w + "'");
      return it->second();
    }
    expect('(');
    std::string head = word();
    Term t;
    if (head == "seq" || head == "par" || head == "case") {
      Term a = term();
      Term b = term();
      t = head == "seq"   ? Term::seq(a, b)
          : head == "par" ? Term::par(a, b)
                          : Term::case_of(a, b);
    } else if (head == "map") {
      t = Term::map(term());
    } else if (head == "cst") {
      Type ty = type_arg();
      std::size_t at = pos_;
      std::string lit = quoted();
      try {
        t = Term::cst(ty, value_from_text(ty, lit));
      } catch (const Error& e) {
        pos_ = at;
        fail(e.what());
      }
    } else if (head == "inl") {
      t = Term::inl(type_arg());
    } else if (head == "inr") {
      t = Term::inr(type_arg());
    } else if (head == "get") {
      t = Term::get(index_arg());
    } else if (head == "set") {
      t = Term::set(index_arg());
    } else if (head == "reshape") {
      t = Term::reshape(word());
    } else if (head == "filter") {
      t = Term::filter(word());
    } else if (head == "op") {
      t = Term::op(word());
    } else if (head == "replicate") {
      std::size_t at = pos_;
      std::string s = quoted();
      try {
        t = Term::replicate(reg_.parse_shape(s));
      } catch (const Error& e) {
        pos_ = at;
        fail(e.what());
      }
    } else {
      fail("unknown constructor '" + head + "'");
    }
    expect(')');
    return t;
  }

  const Registry& reg_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Term parse_term(const Registry& reg, std::string_view text) {
  return TermReader(reg, text).read_all();
}

}  // namespace deco
