// Copyright 2026 The Liftlab Authors
//
// Licensed under the Apache License, Version 2.0.
// SPDX-License-Identifier: Apache-2.0

#include <cctype>
#include <charconv>

#include "liftlab/syntax.h"

namespace liftlab {

ParseError::ParseError(int line, int column, const std::string& message)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

namespace {

enum class Tok { kIdent, kInt, kPrim, kKeyword, kSymbol, kEnd };

struct Token {
  Tok kind;
  std::string text;
  std::int64_t value = 0;
  int line = 1;
  int column = 1;
};

bool is_keyword(std::string_view s) {
  return s == "let" || s == "in" || s == "and" || s == "case" || s == "of" ||
         s == "default" || s == "thunk" || s == "main";
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      Token t{Tok::kEnd, "", 0, line_, column_};
      if (pos_ >= text_.size()) {
        out.push_back(t);
        return out;
      }
      char c = text_[pos_];
      if (ident_start(c)) {
        std::size_t start = pos_;
        while (pos_ < text_.size() && ident_char(text_[pos_])) advance();
        t.text = std::string(text_.substr(start, pos_ - start));
        t.kind = is_keyword(t.text) ? Tok::kKeyword : Tok::kIdent;
      } else if (std::isdigit(static_cast<unsigned char>(c)) ||
                 (c == '-' && pos_ + 1 < text_.size() &&
                  std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])))) {
        std::size_t start = pos_;
        advance();
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
          advance();
        }
        t.text = std::string(text_.substr(start, pos_ - start));
        t.kind = Tok::kInt;
        auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), t.value);
        if (ec != std::errc()) throw ParseError(t.line, t.column, "integer out of range");
      } else if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '#' &&
                 prim_op_from_name(text_.substr(pos_, 2))) {
        t.text = std::string(text_.substr(pos_, 2));
        t.kind = Tok::kPrim;
        advance();
        advance();
      } else if (c == '-' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
        t.text = "->";
        t.kind = Tok::kSymbol;
        advance();
        advance();
      } else if (std::string_view("=;\\{},*").find(c) != std::string_view::npos) {
        t.text = std::string(1, c);
        t.kind = Tok::kSymbol;
        advance();
      } else {
        throw ParseError(line_, column_, std::string("unexpected character '") + c + "'");
      }
      out.push_back(std::move(t));
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
      char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == '-' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '-') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else {
        return;
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  Program program() {
    Program p;
    while (!is(Tok::kKeyword, "main")) {
      TopBind tb;
      tb.name = expect_ident("top-level name");
      while (peek().kind == Tok::kIdent) tb.params.push_back(take().text);
      expect(Tok::kSymbol, "=");
      tb.body = expr();
      expect(Tok::kSymbol, ";");
      p.top_binds.push_back(std::move(tb));
    }
    take();
    expect(Tok::kSymbol, "=");
    p.main = expr();
    if (peek().kind != Tok::kEnd) fail("expected end of input after main");
    return p;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  Token take() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  bool is(Tok kind, std::string_view text) const {
    return peek().kind == kind && peek().text == text;
  }

  [[noreturn]] void fail(const std::string& message) const {
    const Token& t = peek();
    std::string found = t.kind == Tok::kEnd ? "end of input" : "'" + t.text + "'";
    throw ParseError(t.line, t.column, message + ", found " + found);
  }

  void expect(Tok kind, std::string_view text) {
    if (!is(kind, text)) fail("expected '" + std::string(text) + "'");
    take();
  }

  Name expect_ident(const char* what) {
    if (peek().kind != Tok::kIdent) fail(std::string("expected ") + what);
    return take().text;
  }

  bool at_atom() const { return peek().kind == Tok::kIdent || peek().kind == Tok::kInt; }

  Atom atom() {
    if (peek().kind == Tok::kIdent) return Atom{take().text};
    if (peek().kind == Tok::kInt) return Atom{take().value};
    fail("expected an atom");
  }

  ExprPtr expr() {
    if (is(Tok::kKeyword, "let")) {
      take();
      BindGroup group;
      group.binds.push_back(binding());
      while (is(Tok::kKeyword, "and")) {
        take();
        group.binds.push_back(binding());
      }
      expect(Tok::kKeyword, "in");
      group.recursive = group_references_itself(group.binds);
      ExprPtr body = expr();
      return make_let(std::move(group), std::move(body));
    }
    if (is(Tok::kKeyword, "case")) {
      take();
      ExprPtr scrutinee = expr();
      expect(Tok::kKeyword, "of");
      expect(Tok::kSymbol, "{");
      std::vector<Alt> alts;
      while (peek().kind == Tok::kInt) {
        std::int64_t pattern = take().value;
        expect(Tok::kSymbol, "->");
        ExprPtr body = expr();
        expect(Tok::kSymbol, ";");
        alts.push_back(Alt{pattern, std::move(body)});
      }
      expect(Tok::kKeyword, "default");
      Name binder = expect_ident("default binder");
      expect(Tok::kSymbol, "->");
      ExprPtr body = expr();
      expect(Tok::kSymbol, "}");
      return make_case(std::move(scrutinee), std::move(alts), std::move(binder), std::move(body));
    }
    if (peek().kind == Tok::kPrim) {
      PrimOp op = *prim_op_from_name(take().text);
      Atom lhs = atom();
      Atom rhs = atom();
      return make_prim(op, make_atom(std::move(lhs)), make_atom(std::move(rhs)));
    }
    if (peek().kind == Tok::kIdent) {
      Name head = take().text;
      std::vector<Atom> args;
      while (at_atom()) args.push_back(atom());
      if (args.empty()) return make_var(std::move(head));
      return make_app(std::move(head), args);
    }
    if (peek().kind == Tok::kInt) return make_lit(take().value);
    fail("expected an expression");
  }

  Binding binding() {
    Binding b;
    b.binder = expect_ident("binder");
    expect(Tok::kSymbol, "=");
    if (is(Tok::kKeyword, "thunk")) {
      take();
      b.rhs = Thunk{expr()};
      return b;
    }
    expect(Tok::kSymbol, "\\");
    Lambda lam;
    if (is(Tok::kSymbol, "{")) lam.card = cardinality();
    while (peek().kind == Tok::kIdent) lam.params.push_back(take().text);
    if (lam.params.empty()) fail("lambda needs at least one parameter");
    expect(Tok::kSymbol, "->");
    lam.body = expr();
    b.rhs = std::move(lam);
    return b;
  }

  Cardinality cardinality() {
    const Token& open = peek();
    int line = open.line;
    int column = open.column;
    take();
    Cardinality card;
    if (peek().kind != Tok::kInt || (peek().value != 0 && peek().value != 1)) {
      fail("lower entry bound must be 0 or 1");
    }
    card.lower = take().value == 0 ? Bound::kZero : Bound::kOne;
    expect(Tok::kSymbol, ",");
    if (is(Tok::kSymbol, "*")) {
      take();
      card.upper = Bound::kMany;
    } else if (peek().kind == Tok::kInt && (peek().value == 0 || peek().value == 1)) {
      card.upper = take().value == 0 ? Bound::kZero : Bound::kOne;
    } else {
      fail("upper entry bound must be 0, 1 or *");
    }
    expect(Tok::kSymbol, "}");
    if (!card.valid()) throw ParseError(line, column, "lower entry bound exceeds upper bound");
    return card;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

Program parse(std::string_view text) { return Parser(Lexer(text).run()).program(); }

}  // namespace liftlab
