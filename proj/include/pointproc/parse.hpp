#pragma once

#include <cctype>
#include <charconv>
#include <cmath>
#include <string>
#include <string_view>
#include <vector>

#include "pointproc/ast.hpp"
#include "pointproc/errors.hpp"

namespace pointproc {
namespace ast {

// Hand-rolled lexer + recursive-descent parser for the pipeline language.
// Numbers are plain decimal literals (optional sign and fraction); no
// scientific notation.

namespace detail {

struct Token {
  enum class Kind { Ident, Number, Punct, End };
  Kind kind = Kind::End;
  std::string text;
  bool has_dot = false;
  bool has_sign = false;
  int line = 1, col = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) { advance(); }

  const Token& peek() const { return tok_; }

  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '\n') {
        ++line_;
        col_ = 1;
        ++pos_;
      } else if (c == ' ' || c == '\t' || c == '\r') {
        ++col_;
        ++pos_;
      } else if (c == '#') {  // comment to end of line
        while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
    tok_ = Token{};
    tok_.line = line_;
    tok_.col = col_;
    if (pos_ >= src_.size()) {
      tok_.kind = Token::Kind::End;
      return;
    }
    char c = src_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
              src_[pos_] == '_'))
        bump();
      tok_.kind = Token::Kind::Ident;
      tok_.text = std::string(src_.substr(start, pos_ - start));
    } else if (std::isdigit(static_cast<unsigned char>(c)) ||
               ((c == '-' || c == '+') && pos_ + 1 < src_.size() &&
                (std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])) ||
                 src_[pos_ + 1] == '.'))) {
      std::size_t start = pos_;
      if (c == '-' || c == '+') {
        tok_.has_sign = true;
        bump();
      }
      bool digits = false;
      while (pos_ < src_.size() &&
             std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        digits = true;
        bump();
      }
      if (pos_ < src_.size() && src_[pos_] == '.') {
        tok_.has_dot = true;
        bump();
        while (pos_ < src_.size() &&
               std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
          digits = true;
          bump();
        }
      }
      if (!digits)
        throw parse_error("malformed number", tok_.line, tok_.col);
      if (pos_ < src_.size() &&
          (src_[pos_] == 'e' || src_[pos_] == 'E'))
        throw parse_error("scientific notation is not accepted", tok_.line,
                          tok_.col);
      tok_.kind = Token::Kind::Number;
      tok_.text = std::string(src_.substr(start, pos_ - start));
    } else if (c == '-' || std::ispunct(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      bump();
      // the only two-character token is "->"
      if (c == '-' && pos_ < src_.size() && src_[pos_] == '>') bump();
      tok_.kind = Token::Kind::Punct;
      tok_.text = std::string(src_.substr(start, pos_ - start));
    } else {
      throw parse_error("unexpected character", line_, col_);
    }
  }

  void bump() {
    ++pos_;
    ++col_;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1, col_ = 1;
  Token tok_;
};

}  // namespace detail

class Parser {
 public:
  explicit Parser(std::string_view src) : lex_(src) {}

  ExprPtr parse_pipeline() {
    ExprPtr e = parse_expr();
    expect_end();
    return e;
  }

  std::shared_ptr<const RegionLit> parse_region_literal() {
    auto r = parse_region();
    expect_end();
    return r;
  }

 private:
  using Token = detail::Token;

  [[noreturn]] void fail(const std::string& expected, const Token& t) {
    std::string got =
        t.kind == Token::Kind::End ? "end of input" : "'" + t.text + "'";
    throw parse_error("expected " + expected + ", found " + got, t.line,
                      t.col);
  }

  Token expect_punct(const char* p) {
    Token t = lex_.take();
    if (t.kind != Token::Kind::Punct || t.text != p) fail(std::string("'") + p + "'", t);
    return t;
  }

  void expect_end() {
    const Token& t = lex_.peek();
    if (t.kind != Token::Kind::End) fail("end of input", t);
  }

  Token expect_ident() {
    Token t = lex_.take();
    if (t.kind != Token::Kind::Ident) fail("an identifier", t);
    return t;
  }

  double parse_number() {
    Token t = lex_.take();
    if (t.kind != Token::Kind::Number) fail("a number", t);
    return to_double(t);
  }

  static double to_double(const Token& t) {
    double v = 0;
    auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc{} || p != t.text.data() + t.text.size())
      throw parse_error("malformed number", t.line, t.col);
    return v;
  }

  std::uint64_t parse_natural() {
    Token t = lex_.take();
    if (t.kind != Token::Kind::Number || t.has_dot || t.has_sign)
      fail("a natural number", t);
    std::uint64_t v = 0;
    auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc{}) throw parse_error("natural out of range", t.line, t.col);
    return v;
  }

  Point parse_point() {
    const Token& t = lex_.peek();
    if (t.kind == Token::Kind::Ident && t.text == "star") {
      lex_.take();
      return Point::star();
    }
    if (t.kind == Token::Kind::Punct && t.text == "(") {
      lex_.take();
      double x = parse_number();
      expect_punct(",");
      double y = parse_number();
      expect_punct(")");
      return Point::real2(x, y);
    }
    if (t.kind == Token::Kind::Number) {
      Token n = lex_.take();
      if (!n.has_dot && !n.has_sign) {
        std::uint64_t v = 0;
        std::from_chars(n.text.data(), n.text.data() + n.text.size(), v);
        return Point::nat(v);
      }
      return Point::real(to_double(n));
    }
    fail("a point (star, natural, number or pair)", t);
  }

  std::shared_ptr<const RegionLit> parse_region() {
    Token t = lex_.take();
    auto lit = std::make_shared<RegionLit>();
    lit->line = t.line;
    lit->col = t.col;
    if (t.kind != Token::Kind::Ident) fail("a region", t);
    if (t.text == "rect") {
      lit->kind = RegionLit::Kind::Rect;
      expect_punct("(");
      lit->nums.push_back(parse_number());
      expect_punct(",");
      lit->nums.push_back(parse_number());
      expect_punct(",");
      lit->nums.push_back(parse_number());
      expect_punct(",");
      lit->nums.push_back(parse_number());
      expect_punct(")");
    } else if (t.text == "interval") {
      lit->kind = RegionLit::Kind::Interval;
      expect_punct("(");
      lit->nums.push_back(parse_number());
      expect_punct(",");
      lit->nums.push_back(parse_number());
      expect_punct(")");
    } else if (t.text == "set") {
      lit->kind = RegionLit::Kind::Set;
      expect_punct("{");
      lit->points.push_back(parse_point());
      while (lex_.peek().kind == Token::Kind::Punct && lex_.peek().text == ",") {
        lex_.take();
        lit->points.push_back(parse_point());
      }
      expect_punct("}");
    } else if (t.text == "complement") {
      lit->kind = RegionLit::Kind::Complement;
      expect_punct("(");
      lit->inner = parse_region();
      expect_punct(")");
    } else if (t.text == "all") {
      lit->kind = RegionLit::Kind::All;
    } else {
      fail("a region (rect, interval, set, complement, all)", t);
    }
    return lit;
  }

  std::shared_ptr<const DistLit> parse_dist() {
    Token t = lex_.take();
    auto lit = std::make_shared<DistLit>();
    lit->line = t.line;
    lit->col = t.col;
    if (t.kind != Token::Kind::Ident) fail("a distribution", t);
    if (t.text == "poisson") {
      lit->kind = DistLit::Kind::Poisson;
      expect_punct("(");
      lit->rate = parse_number();
      expect_punct(")");
      if (!(lit->rate > 0))
        throw parse_error("poisson rate must be positive", t.line, t.col);
    } else if (t.text == "pmf") {
      lit->kind = DistLit::Kind::Pmf;
      expect_punct("{");
      auto entry = [&] {
        std::uint64_t k = parse_natural();
        expect_punct(":");
        double w = parse_number();
        if (!(w > 0))
          throw parse_error("pmf weights must be positive", t.line, t.col);
        lit->pmf.push_back({k, w});
      };
      entry();
      while (lex_.peek().kind == Token::Kind::Punct && lex_.peek().text == ",") {
        lex_.take();
        entry();
      }
      expect_punct("}");
      double total = 0;
      for (const auto& [k, w] : lit->pmf) total += w;
      if (std::abs(total - 1.0) > 1e-9)
        throw parse_error("pmf weights must sum to 1", t.line, t.col);
    } else {
      fail("a distribution (poisson or pmf)", t);
    }
    return lit;
  }

  ExprPtr parse_expr() {
    Token t = lex_.take();
    if (t.kind != Token::Kind::Ident) fail("a pipeline expression", t);
    auto e = std::make_shared<Expr>();
    e->line = t.line;
    e->col = t.col;
    if (t.text == "unit") {
      e->kind = Expr::Kind::Unit;
      expect_punct("(");
      e->point = std::make_shared<Point>(parse_point());
      expect_punct(")");
    } else if (t.text == "fromdist") {
      e->kind = Expr::Kind::FromDist;
      expect_punct("(");
      e->dist = parse_dist();
      expect_punct(")");
    } else if (t.text == "uniform") {
      e->kind = Expr::Kind::Uniform;
      expect_punct("(");
      e->region = parse_region();
      expect_punct(")");
    } else if (t.text == "poisson") {
      e->kind = Expr::Kind::Poisson;
      expect_punct("(");
      e->number = parse_number();
      expect_punct(",");
      e->region = parse_region();
      expect_punct(")");
      if (!(e->number > 0))
        throw parse_error("poisson rate must be positive", t.line, t.col);
    } else if (t.text == "bind") {
      e->kind = Expr::Kind::Bind;
      expect_punct("(");
      e->a = parse_expr();
      expect_punct(",");
      e->var = expect_ident().text;
      expect_punct("->");
      e->b = parse_expr();
      expect_punct(")");
    } else if (t.text == "thin") {
      e->kind = Expr::Kind::Thin;
      expect_punct("(");
      e->a = parse_expr();
      expect_punct(",");
      e->number = parse_number();
      expect_punct(")");
      if (!(e->number >= 0 && e->number <= 1))
        throw parse_error("keep probability must be in [0,1]", t.line, t.col);
    } else if (t.text == "displace") {
      e->kind = Expr::Kind::Displace;
      expect_punct("(");
      e->a = parse_expr();
      expect_punct(",");
      e->b = parse_expr();
      expect_punct(")");
    } else if (t.text == "cluster_demo") {
      e->kind = Expr::Kind::ClusterDemo;
      expect_punct("(");
      expect_punct(")");
    } else {
      fail("a pipeline expression", t);
    }
    return e;
  }

  detail::Lexer lex_;
};

inline ExprPtr parse(std::string_view source) {
  return Parser(source).parse_pipeline();
}

// Region literals also appear alone on the CLI (--region).
inline std::shared_ptr<const RegionLit> parse_region_literal(
    std::string_view source) {
  return Parser(source).parse_region_literal();
}

}  // namespace ast
}  // namespace pointproc
