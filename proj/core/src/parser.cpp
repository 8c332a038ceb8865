#include <cctype>
#include <optional>

#include "ltlpsi/task.hpp"

namespace ltlpsi {
namespace {

enum class Tok { Ident, Int, LParen, RParen, Caret, And, Or, Not, Arrow, Until, Finally, Globally, Next, True, False, End };

struct Token {
  Tok kind;
  std::string text;
  int line, col;
};

class Lexer {
public:
  explicit Lexer(const std::string& src) : src_(src) { advance(); }

  const Token& peek() const { return cur_; }
  Token take() {
    Token t = cur_;
    advance();
    return t;
  }

private:
  void advance() {
    skip_ws();
    cur_ = Token{Tok::End, "", line_, col_};
    if (pos_ >= src_.size()) return;
    char c = src_[pos_];
    int line = line_, col = col_;
    auto mk = [&](Tok k, std::string text) {
      cur_ = Token{k, std::move(text), line, col};
    };
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string id;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
        id += src_[pos_], step();
      if (id == "U") mk(Tok::Until, id);
      else if (id == "F") mk(Tok::Finally, id);
      else if (id == "G") mk(Tok::Globally, id);
      else if (id == "X" || id == "N") mk(Tok::Next, id);
      else if (id == "true") mk(Tok::True, id);
      else if (id == "false") mk(Tok::False, id);
      else mk(Tok::Ident, id);
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string num;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
        num += src_[pos_], step();
      mk(Tok::Int, num);
      return;
    }
    switch (c) {
      case '(': step(); mk(Tok::LParen, "("); return;
      case ')': step(); mk(Tok::RParen, ")"); return;
      case '^': step(); mk(Tok::Caret, "^"); return;
      case '&': step(); mk(Tok::And, "&"); return;
      case '|': step(); mk(Tok::Or, "|"); return;
      case '!': step(); mk(Tok::Not, "!"); return;
      case '-':
        if (pos_ + 1 < src_.size() && src_[pos_ + 1] == '>') {
          step(); step();
          mk(Tok::Arrow, "->");
          return;
        }
        break;
      default: break;
    }
    throw SyntaxError(std::string("unexpected character '") + c + "'", line_, col_);
  }

  void skip_ws() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') step();
      } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        step();
      } else {
        break;
      }
    }
  }

  void step() {
    if (src_[pos_] == '\n') { ++line_; col_ = 1; }
    else ++col_;
    ++pos_;
  }

  const std::string& src_;
  std::size_t pos_ = 0;
  int line_ = 1, col_ = 1;
  Token cur_{Tok::End, "", 1, 1};
};

class Parser {
public:
  explicit Parser(const std::string& src) : lex_(src) {}

  TaskFormula parse() {
    TaskFormula f = parse_impl();
    expect(Tok::End, "end of input");
    validate(f, /*inside_block=*/false);
    return f;
  }

private:
  [[noreturn]] void fail(const std::string& msg) {
    throw SyntaxError(msg, lex_.peek().line, lex_.peek().col);
  }

  Token expect(Tok k, const std::string& what) {
    if (lex_.peek().kind != k) fail("expected " + what);
    return lex_.take();
  }

  TaskFormula parse_impl() {
    TaskFormula lhs = parse_or();
    if (lex_.peek().kind == Tok::Arrow) {
      lex_.take();
      TaskFormula rhs = parse_impl();
      return TaskFormula::disj(TaskFormula::negation(std::move(lhs)), std::move(rhs));
    }
    return lhs;
  }

  TaskFormula parse_or() {
    TaskFormula f = parse_and();
    while (lex_.peek().kind == Tok::Or) {
      lex_.take();
      f = TaskFormula::disj(std::move(f), parse_and());
    }
    return f;
  }

  TaskFormula parse_and() {
    TaskFormula f = parse_until();
    while (lex_.peek().kind == Tok::And) {
      lex_.take();
      f = TaskFormula::conj(std::move(f), parse_until());
    }
    return f;
  }

  TaskFormula parse_until() {
    TaskFormula f = parse_unary();
    if (lex_.peek().kind == Tok::Until) {
      lex_.take();
      return TaskFormula::until(std::move(f), parse_until());
    }
    return f;
  }

  TaskFormula parse_unary() {
    switch (lex_.peek().kind) {
      case Tok::Finally:
        lex_.take();
        return TaskFormula::eventually(parse_unary());
      case Tok::Globally:
        lex_.take();
        return TaskFormula::always(parse_unary());
      case Tok::Next:
        fail("the next operator is not part of the task language");
      case Tok::Not: {
        lex_.take();
        // "!p^1" negates the proposition inside the annotation; negating a
        // whole annotated block needs parentheses, as in "!(p^1)".
        if (lex_.peek().kind == Tok::Ident) {
          Token id = lex_.take();
          TaskFormula negated = TaskFormula::negation(TaskFormula::atom(id.text));
          if (lex_.peek().kind == Tok::Caret)
            return TaskFormula::annotated(std::move(negated), parse_annotation());
          return negated;
        }
        return TaskFormula::negation(parse_unary());
      }
      default:
        return parse_primary();
    }
  }

  TaskFormula parse_primary() {
    switch (lex_.peek().kind) {
      case Tok::True: lex_.take(); return TaskFormula::boolean(true);
      case Tok::False: lex_.take(); return TaskFormula::boolean(false);
      case Tok::LParen: {
        lex_.take();
        TaskFormula inner = parse_impl();
        expect(Tok::RParen, "')'");
        if (lex_.peek().kind == Tok::Caret)
          return TaskFormula::annotated(std::move(inner), parse_annotation());
        return inner;
      }
      case Tok::Ident: {
        Token id = lex_.take();
        TaskFormula a = TaskFormula::atom(id.text);
        if (lex_.peek().kind == Tok::Caret)
          return TaskFormula::annotated(std::move(a), parse_annotation());
        return a;
      }
      case Tok::Next:
        fail("the next operator is not part of the task language");
      default:
        fail("expected a proposition, 'true', 'false' or '('");
    }
  }

  BindingFormula parse_annotation() {
    expect(Tok::Caret, "'^'");
    if (lex_.peek().kind == Tok::Int) {
      return BindingFormula::prop(std::stoi(lex_.take().text));
    }
    expect(Tok::LParen, "'(' or a binding proposition after '^'");
    BindingFormula f = parse_binding_or();
    expect(Tok::RParen, "')'");
    return f;
  }

  BindingFormula parse_binding_or() {
    BindingFormula f = parse_binding_and();
    while (lex_.peek().kind == Tok::Or) {
      lex_.take();
      f = BindingFormula::disj(std::move(f), parse_binding_and());
    }
    return f;
  }

  BindingFormula parse_binding_and() {
    BindingFormula f = parse_binding_primary();
    while (lex_.peek().kind == Tok::And) {
      lex_.take();
      f = BindingFormula::conj(std::move(f), parse_binding_primary());
    }
    return f;
  }

  BindingFormula parse_binding_primary() {
    if (lex_.peek().kind == Tok::Not)
      fail("negation is not allowed inside a binding formula");
    if (lex_.peek().kind == Tok::Int)
      return BindingFormula::prop(std::stoi(lex_.take().text));
    if (lex_.peek().kind == Tok::LParen) {
      lex_.take();
      BindingFormula f = parse_binding_or();
      expect(Tok::RParen, "')'");
      return f;
    }
    fail("expected a binding proposition");
  }

  // Atoms may only appear under an annotation, and annotations do not nest.
  void validate(const TaskFormula& f, bool inside_block) {
    switch (f.kind) {
      case TaskFormula::Kind::Atom:
        if (!inside_block && f.binding < 0)
          throw SyntaxError("proposition '" + f.prop + "' has no binding annotation", 1, 1);
        return;
      case TaskFormula::Kind::Annotated:
        if (inside_block)
          throw SyntaxError("binding annotations do not nest", 1, 1);
        validate(f.kids[0], true);
        return;
      default:
        for (const auto& k : f.kids) validate(k, inside_block);
    }
  }

  Lexer lex_;
};

}  // namespace

TaskFormula parse_task(const std::string& text) { return Parser(text).parse(); }

}  // namespace ltlpsi
