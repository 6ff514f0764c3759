#include "ddero/frontend/parser.hpp"

#include <algorithm>

#include "ddero/errors.hpp"
#include "ddero/frontend/lexer.hpp"

namespace ddero::frontend {

namespace {

enum class Mode { Polynomial, Laurent, Rational, Density };

struct Value {
  Fraction f;
  std::map<int, Rational> logs;

  bool has_logs() const { return !logs.empty(); }
};

class Parser {
 public:
  Parser(std::vector<Token> tokens, std::vector<std::string> names)
      : toks_(std::move(tokens)), names_(std::move(names)) {}

  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  bool at(Tok k) const { return peek().kind == k; }
  bool at_word(const char* w) const {
    return peek().kind == Tok::Ident && peek().text == w;
  }
  const Token& take() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  const Token& expect(Tok k, const char* what = nullptr) {
    if (!at(k)) fail(std::string("expected ") + (what ? what : describe(k).c_str()) +
                     ", found " + found());
    return take();
  }
  std::string found() const {
    return at(Tok::End) ? "end of input" : "'" + peek().text + "'";
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, peek().line, peek().column);
  }
  [[noreturn]] void fail_at(const Token& t, const std::string& msg) const {
    throw ParseError(msg, t.line, t.column);
  }

  std::vector<std::string>& names() { return names_; }

  int component(const Token& t) const {
    auto it = std::find(names_.begin(), names_.end(), t.text);
    if (it == names_.end()) throw UndeclaredVariable(t.text, t.line, t.column);
    return static_cast<int>(it - names_.begin());
  }

  long signed_integer() {
    bool neg = false;
    if (at(Tok::Minus) || at(Tok::Plus)) neg = take().kind == Tok::Minus;
    const Token& t = expect(Tok::Integer);
    if (t.text.size() > 9) fail_at(t, "integer too large");
    long v = std::stol(t.text);
    return neg ? -v : v;
  }

  Rational rational_literal() {
    bool neg = false;
    if (at(Tok::Minus) || at(Tok::Plus)) neg = take().kind == Tok::Minus;
    Rational r(mpz_class(expect(Tok::Integer).text));
    if (at(Tok::Slash)) {
      take();
      const Token& d = expect(Tok::Integer);
      mpz_class den(d.text);
      if (den == 0) fail_at(d, "division by zero");
      r /= Rational(den);
    }
    r.canonicalize();
    return neg ? Rational(-r) : r;
  }

  Value expression(Mode mode) {
    Value v;
    bool first = true;
    while (true) {
      int sign = 1;
      if (at(Tok::Plus) || at(Tok::Minus)) {
        sign = take().kind == Tok::Minus ? -1 : 1;
      } else if (!first) {
        break;
      }
      Value t = term(mode);
      if (sign < 0) t = negate(t);
      v = first ? t : add(v, t);
      first = false;
    }
    return v;
  }

  Value term(Mode mode) {
    Value v = factor(mode);
    while (at(Tok::Star) || at(Tok::Slash)) {
      const Token op = take();
      Value rhs = factor(mode);
      v = op.kind == Tok::Star ? multiply(v, rhs, op) : divide(v, rhs, op, mode);
    }
    return v;
  }

  Value factor(Mode mode) {
    if (at(Tok::Minus)) {
      take();
      return negate(factor(mode));
    }
    Value base = atom(mode);
    if (at(Tok::Caret)) {
      const Token op = take();
      long e = signed_integer();
      if (e > 64 || e < -64) fail_at(op, "exponent out of range");
      if (base.has_logs()) fail_at(op, "power of a logarithm");
      if (e < 0 && mode == Mode::Polynomial)
        throw NonPolynomialRHS("negative exponent in a polynomial right-hand side",
                               op.line, op.column);
      Value out;
      out.f = Fraction(Expression(1));
      Fraction b = base.f;
      for (long k = 0; k < (e < 0 ? -e : e); ++k) out.f = out.f * b;
      if (e < 0) {
        if (out.f.is_zero()) fail_at(op, "division by zero");
        out.f = Fraction(Expression(1)) / out.f;
      }
      return out;
    }
    return base;
  }

  Value atom(Mode mode) {
    const Token t = peek();
    Value v;
    switch (t.kind) {
      case Tok::Integer:
        take();
        v.f = Fraction(Expression(Rational(mpz_class(t.text))));
        return v;
      case Tok::Dollar: {
        take();
        if (t.text.size() < 2 || t.text[0] != 'c' ||
            !std::all_of(t.text.begin() + 1, t.text.end(),
                         [](char c) { return c >= '0' && c <= '9'; }) ||
            t.text.size() > 10)
          fail_at(t, "parameters are written $c<number>");
        if (mode == Mode::Polynomial)
          fail_at(t, "parameters are not allowed in a right-hand side");
        v.f = Fraction(Expression::parameter(
            Parameter{static_cast<std::uint32_t>(std::stoul(t.text.substr(1)))}));
        return v;
      }
      case Tok::LParen: {
        take();
        v = expression(mode);
        expect(Tok::RParen);
        return v;
      }
      case Tok::Ident: {
        take();
        if (at(Tok::LParen)) {
          if (mode == Mode::Density && t.text == "log") {
            take();
            const Token& name = expect(Tok::Ident, "variable name");
            const int c = component(name);
            expect(Tok::RParen);
            v.logs[c] = 1;
            return v;
          }
          throw NonPolynomialRHS("function '" + t.text + "' is not allowed",
                                 t.line, t.column);
        }
        const int c = component(t);
        int shift = 0;
        if (at(Tok::LBracket)) {
          take();
          long k = signed_integer();
          if (k > 1000 || k < -1000) fail("shift out of range");
          shift = static_cast<int>(k);
          expect(Tok::RBracket);
        }
        v.f = Fraction(Expression::variable(c, shift));
        return v;
      }
      default:
        fail("expected an expression, found " + found());
    }
  }

  Value negate(const Value& a) {
    Value v;
    v.f = -a.f;
    for (const auto& [c, r] : a.logs) v.logs[c] = -r;
    return v;
  }

  Value add(const Value& a, const Value& b) {
    Value v;
    v.f = a.f + b.f;
    v.logs = a.logs;
    for (const auto& [c, r] : b.logs) {
      v.logs[c] += r;
      if (sgn(v.logs[c]) == 0) v.logs.erase(c);
    }
    return v;
  }

  Value multiply(const Value& a, const Value& b, const Token& op) {
    try {
      if (a.has_logs() || b.has_logs()) {
        const Value& l = a.has_logs() ? a : b;
        const Value& k = a.has_logs() ? b : a;
        if (k.has_logs() || !k.f.is_polynomial() ||
            !k.f.numerator().is_constant() || k.f.numerator().has_parameters())
          fail_at(op, "logarithms may only be scaled by rational constants");
        Rational s = k.f.numerator().constant_term().constant();
        Value v;
        v.f = l.f * k.f;
        for (const auto& [c, r] : l.logs)
          if (sgn(s) != 0) v.logs[c] = r * s;
        return v;
      }
      Value v;
      v.f = a.f * b.f;
      return v;
    } catch (const ParameterDegreeOverflow&) {
      fail_at(op, "product of two parameters");
    }
  }

  Value divide(const Value& a, const Value& b, const Token& op, Mode mode) {
    if (b.has_logs()) fail_at(op, "division by a logarithm");
    if (b.f.is_zero()) fail_at(op, "division by zero");
    if (b.f.numerator().has_parameters()) fail_at(op, "division by a parameter");
    const bool constant_divisor =
        b.f.is_polynomial() && b.f.numerator().is_constant();
    if (mode == Mode::Polynomial && !constant_divisor)
      throw NonPolynomialRHS("division by a non-constant expression", op.line,
                             op.column);
    Value v;
    if (a.has_logs()) {
      if (!constant_divisor) fail_at(op, "logarithms may only be scaled by rational constants");
      Rational s = 1 / b.f.numerator().constant_term().constant();
      for (const auto& [c, r] : a.logs) v.logs[c] = r * s;
    }
    try {
      v.f = a.f / b.f;
    } catch (const Error& e) {
      fail_at(op, e.what());
    }
    return v;
  }

 private:
  std::vector<Token> toks_;
  std::vector<std::string> names_;
  std::size_t pos_ = 0;
};

Expression as_expression(const Value& v, const Token& where, Mode mode) {
  if (v.has_logs()) throw ParseError("logarithm outside a density", where.line, where.column);
  if (!v.f.is_polynomial()) {
    if (mode == Mode::Polynomial)
      throw NonPolynomialRHS("right-hand side is not a polynomial", where.line,
                             where.column);
    throw ParseError("expression is not a Laurent polynomial", where.line,
                     where.column);
  }
  if (mode == Mode::Polynomial && v.f.numerator().terms().size() > 0) {
    for (const auto& [m, c] : v.f.numerator().terms())
      if (m.has_negative_exponent())
        throw NonPolynomialRHS("right-hand side is not a polynomial", where.line,
                               where.column);
  }
  return v.f.numerator();
}

LogDensity as_density(const Value& v, const Token& where) {
  if (!v.f.is_polynomial())
    throw ParseError("density is not a Laurent polynomial", where.line,
                     where.column);
  LogDensity d;
  d.poly = v.f.numerator();
  d.logs = v.logs;
  return d;
}

template <typename Fn>
auto parse_whole(std::string_view text, const std::vector<std::string>& names,
                 Fn fn) {
  Parser p(tokenize(text), names);
  const Token start = p.peek();
  auto out = fn(p, start);
  if (!p.at(Tok::End)) p.fail("unexpected " + p.found());
  return out;
}

}  // namespace

Expression parse_expression(std::string_view text,
                            const std::vector<std::string>& names) {
  return parse_whole(text, names, [](Parser& p, const Token& start) {
    return as_expression(p.expression(Mode::Laurent), start, Mode::Laurent);
  });
}

Fraction parse_fraction(std::string_view text,
                        const std::vector<std::string>& names) {
  return parse_whole(text, names, [](Parser& p, const Token& start) {
    Value v = p.expression(Mode::Rational);
    if (v.has_logs()) p.fail_at(start, "logarithm outside a density");
    return v.f;
  });
}

LogDensity parse_density(std::string_view text,
                         const std::vector<std::string>& names) {
  return parse_whole(text, names, [](Parser& p, const Token& start) {
    return as_density(p.expression(Mode::Density), start);
  });
}

SystemDocument parse_system(std::string_view text) {
  std::vector<Token> toks = tokenize(text);

  // Pre-scan for the variable list so equations may reference variables
  // whose own equation comes later.
  SystemDocument doc;
  bool statement_start = true;
  for (std::size_t i = 0; i < toks.size(); ++i) {
    const Token& t = toks[i];
    if (statement_start && t.kind == Tok::Ident && t.text == "var" &&
        i + 1 < toks.size() && toks[i + 1].kind == Tok::Ident) {
      if (doc.declared) throw ParseError("second var declaration", t.line, t.column);
      doc.declared = true;
      doc.names.clear();
      std::size_t j = i + 1;
      while (true) {
        const Token& n = toks[j];
        if (n.kind != Tok::Ident)
          throw ParseError("expected variable name", n.line, n.column);
        if (std::find(doc.names.begin(), doc.names.end(), n.text) != doc.names.end())
          throw ParseError("variable '" + n.text + "' declared twice", n.line, n.column);
        doc.names.push_back(n.text);
        if (toks[j + 1].kind == Tok::Comma) {
          j += 2;
          continue;
        }
        break;
      }
    } else if (statement_start && !doc.declared && t.kind == Tok::Ident &&
               i + 1 < toks.size() && toks[i + 1].kind == Tok::Prime) {
      if (std::find(doc.names.begin(), doc.names.end(), t.text) == doc.names.end())
        doc.names.push_back(t.text);
    }
    statement_start = t.kind == Tok::Semicolon;
  }

  Parser p(std::move(toks), doc.names);
  std::vector<std::optional<Expression>> rhs(doc.names.size());
  while (!p.at(Tok::End)) {
    const Token head = p.peek();
    if (head.kind != Tok::Ident) p.fail("expected a statement, found " + p.found());
    if (head.text == "var" && p.peek(1).kind == Tok::Ident) {
      p.take();
      p.take();
      while (p.at(Tok::Comma)) {
        p.take();
        p.expect(Tok::Ident, "variable name");
      }
    } else if (p.peek(1).kind == Tok::Prime) {
      p.take();
      p.take();
      const int c = p.component(head);
      p.expect(Tok::Equals);
      const Token start = p.peek();
      if (rhs[static_cast<std::size_t>(c)])
        throw ParseError("second equation for '" + head.text + "'", head.line,
                         head.column);
      rhs[static_cast<std::size_t>(c)] =
          as_expression(p.expression(Mode::Polynomial), start, Mode::Polynomial);
    } else if (head.text == "weight") {
      p.take();
      const Token& name = p.expect(Tok::Ident, "variable name");
      const int c = p.component(name);
      p.expect(Tok::Equals);
      doc.weights[c] = p.rational_literal();
    } else if (head.text == "symmetry") {
      p.take();
      const Token lt = p.peek();
      long level = p.signed_integer();
      if (level < 1 || level > 1000) p.fail_at(lt, "symmetry level must be positive");
      p.expect(Tok::Equals);
      p.expect(Tok::LBrace);
      VectorExpression g;
      while (true) {
        const Token start = p.peek();
        g.push_back(as_expression(p.expression(Mode::Laurent), start, Mode::Laurent));
        if (p.at(Tok::Comma)) {
          p.take();
          continue;
        }
        break;
      }
      p.expect(Tok::RBrace);
      if (g.size() != doc.names.size())
        p.fail_at(lt, "symmetry needs one component per variable");
      doc.symmetries.emplace_back(static_cast<int>(level), std::move(g));
    } else if (head.text == "density") {
      p.take();
      p.expect(Tok::Equals);
      const Token start = p.peek();
      doc.densities.push_back(as_density(p.expression(Mode::Density), start));
    } else {
      p.fail("unknown statement '" + head.text + "'");
    }
    p.expect(Tok::Semicolon);
  }
  if (doc.names.empty()) throw ParseError("no equations", 1, 1);
  for (std::size_t i = 0; i < rhs.size(); ++i) {
    if (!rhs[i]) throw InputError("missing equation for '" + doc.names[i] + "'");
    doc.rhs.push_back(*rhs[i]);
  }
  return doc;
}

}  // namespace ddero::frontend
