#include "ddero/frontend/printer.hpp"

#include <sstream>

namespace ddero::frontend {

namespace {

std::string var_text(const ShiftedVariable& v, const Names& names) {
  std::string s = names.at(static_cast<std::size_t>(v.component));
  if (v.shift != 0) s += "[" + std::to_string(v.shift) + "]";
  return s;
}

std::string monomial_text(const Monomial& m, const Names& names) {
  std::string out;
  for (const auto& f : m.factors()) {
    if (!out.empty()) out += "*";
    out += var_text(f.var, names);
    if (f.exponent != 1) out += "^" + std::to_string(f.exponent);
  }
  return out;
}

std::string var_latex(const ShiftedVariable& v, const Names& names) {
  std::string s = names.at(static_cast<std::size_t>(v.component)) + "_{n";
  if (v.shift > 0) s += "+" + std::to_string(v.shift);
  if (v.shift < 0) s += std::to_string(v.shift);
  return s + "}";
}

std::string monomial_latex(const Monomial& m, const Names& names) {
  std::string out;
  for (const auto& f : m.factors()) {
    if (!out.empty()) out += " ";
    out += var_latex(f.var, names);
    if (f.exponent != 1) out += "^{" + std::to_string(f.exponent) + "}";
  }
  return out;
}

std::string rational_latex(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return "\\frac{" + r.get_num().get_str() + "}{" + r.get_den().get_str() + "}";
}

std::string param_latex(Parameter p) { return "c_{" + std::to_string(p.id) + "}"; }

std::string form_latex(const CoefficientForm& c) {
  std::string out;
  auto piece = [&](const Rational& r, const std::string& body) {
    const bool neg = sgn(r) < 0;
    const Rational mag = abs(r);
    std::string t = (mag == 1 && !body.empty()) ? body
                    : body.empty()              ? rational_latex(mag)
                                                : rational_latex(mag) + " " + body;
    if (out.empty())
      out = (neg ? "-" : "") + t;
    else
      out += (neg ? " - " : " + ") + t;
  };
  for (const auto& [p, r] : c.terms()) piece(r, param_latex(p));
  if (sgn(c.constant()) != 0) piece(c.constant(), "");
  return out.empty() ? "0" : out;
}

// Shared layout for text and LaTeX sums: sign handling and coefficient
// placement differ only in the leaf renderers.
struct Style {
  std::string (*monomial)(const Monomial&, const Names&);
  std::string (*rational)(const Rational&);
  std::string (*form)(const CoefficientForm&);
  std::string (*param)(Parameter);
  const char* times;
  const char* lparen;
  const char* rparen;
};

std::string text_rational(const Rational& r) { return r.get_str(); }
std::string text_param(Parameter p) { return "$" + p.label(); }
std::string text_form(const CoefficientForm& c);

const Style kText{monomial_text, text_rational, text_form, text_param, "*", "(", ")"};
const Style kLatex{monomial_latex, rational_latex, form_latex, param_latex, " ",
                   "\\left(", "\\right)"};

// Returns the term without its leading sign, and whether it is negative.
std::pair<std::string, bool> term_body(const Monomial& m, const CoefficientForm& c,
                                       const Names& names, const Style& st) {
  const std::string mono = m.is_one() ? "" : st.monomial(m, names);
  if (c.is_constant()) {
    const Rational mag = abs(c.constant());
    const bool neg = sgn(c.constant()) < 0;
    if (mono.empty()) return {st.rational(mag), neg};
    if (mag == 1) return {mono, neg};
    return {st.rational(mag) + st.times + mono, neg};
  }
  if (sgn(c.constant()) == 0 && c.terms().size() == 1) {
    const auto& [p, r] = c.terms().front();
    const Rational mag = abs(r);
    std::string body = mag == 1 ? st.param(p) : st.rational(mag) + st.times + st.param(p);
    if (!mono.empty()) body += st.times + mono;
    return {body, sgn(r) < 0};
  }
  std::string body = std::string(st.lparen) + st.form(c) + st.rparen;
  if (!mono.empty()) body += st.times + mono;
  return {body, false};
}

std::string sum(const Expression& e, const Names& names, const Style& st) {
  if (e.is_zero()) return "0";
  std::string out;
  for (auto it = e.terms().rbegin(); it != e.terms().rend(); ++it) {
    auto [body, neg] = term_body(it->first, it->second, names, st);
    if (out.empty())
      out = (neg ? "-" : "") + body;
    else
      out += (neg ? " - " : " + ") + body;
  }
  return out;
}

std::string text_form(const CoefficientForm& c) { return to_text(c); }

bool needs_parens(const Expression& e) {
  if (e.size() > 1) return true;
  if (e.size() == 1) return !e.terms().begin()->second.is_constant();
  return false;
}

std::string power_text(int k) {
  if (k == 0) return "I";
  if (k == 1) return "D";
  return "D^" + std::to_string(k);
}

std::string power_latex(int k) {
  if (k == 0) return "\\mathbf{I}";
  if (k == 1) return "\\mathbf{D}";
  return "\\mathbf{D}^{" + std::to_string(k) + "}";
}

}  // namespace

std::string to_text(const Rational& r) { return r.get_str(); }

std::string to_text(const CoefficientForm& c) {
  std::string out;
  auto piece = [&](const Rational& r, const std::string& body) {
    const bool neg = sgn(r) < 0;
    const Rational mag = abs(r);
    std::string t = body.empty() ? mag.get_str()
                    : mag == 1   ? body
                                 : mag.get_str() + "*" + body;
    if (out.empty())
      out = (neg ? "-" : "") + t;
    else
      out += (neg ? " - " : " + ") + t;
  };
  for (const auto& [p, r] : c.terms()) piece(r, "$" + p.label());
  if (sgn(c.constant()) != 0) piece(c.constant(), "");
  return out.empty() ? "0" : out;
}

std::string to_text(const Expression& e, const Names& names) {
  return sum(e, names, kText);
}

std::string to_text(const Fraction& f, const Names& names) {
  if (f.is_polynomial()) return to_text(f.numerator(), names);
  std::string num = to_text(f.numerator(), names);
  if (needs_parens(f.numerator())) num = "(" + num + ")";
  return num + "/(" + to_text(f.denominator(), names) + ")";
}

std::string to_text(const LogDensity& d, const Names& names) {
  std::string out = d.poly.is_zero() ? "" : to_text(d.poly, names);
  for (const auto& [c, a] : d.logs) {
    const bool neg = sgn(a) < 0;
    const Rational mag = abs(a);
    std::string t = "log(" + names.at(static_cast<std::size_t>(c)) + ")";
    if (mag != 1) t = mag.get_str() + "*" + t;
    if (out.empty())
      out = (neg ? "-" : "") + t;
    else
      out += (neg ? " - " : " + ") + t;
  }
  return out.empty() ? "0" : out;
}

std::string to_text(const VectorExpression& v, const Names& names) {
  std::string out = "{ ";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += to_text(v[i], names);
  }
  return out + " }";
}

std::string to_text(const PseudoDifferenceOperator& r, const Names& names) {
  std::ostringstream out;
  const std::size_t n = r.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const OperatorEntry& e = r.at(i, j);
      std::string line;
      auto append = [&](std::string term) {
        bool neg = !term.empty() && term[0] == '-';
        if (line.empty())
          line = term;
        else
          line += neg ? " - " + term.substr(1) : " + " + term;
      };
      for (const auto& [k, c] : e.local) {
        if (c == Expression(1)) {
          append(power_text(k));
        } else if (c == Expression(-1)) {
          append("-" + power_text(k));
        } else {
          std::string ct = to_text(c, names);
          append((needs_parens(c) ? "(" + ct + ")" : ct) + "*" + power_text(k));
        }
      }
      for (const auto& t : e.nonlocal) {
        std::string lt = to_text(t.left, names);
        std::string term = (needs_parens(t.left) ? "(" + lt + ")" : lt) +
                           "*Delta^-1*(" + to_text(t.right, names) + ")";
        if (t.power != 0) term += "*" + power_text(t.power);
        append(term);
      }
      if (line.empty()) continue;
      out << "R[" << i + 1 << "," << j + 1 << "] = " << line << "\n";
    }
  std::string s = out.str();
  return s.empty() ? "0\n" : s;
}

std::string to_latex(const Expression& e, const Names& names) {
  return sum(e, names, kLatex);
}

std::string to_latex(const Fraction& f, const Names& names) {
  if (f.is_polynomial()) return to_latex(f.numerator(), names);
  return "\\frac{" + to_latex(f.numerator(), names) + "}{" +
         to_latex(f.denominator(), names) + "}";
}

std::string to_latex(const LogDensity& d, const Names& names) {
  std::string out = d.poly.is_zero() ? "" : to_latex(d.poly, names);
  for (const auto& [c, a] : d.logs) {
    const bool neg = sgn(a) < 0;
    const Rational mag = abs(a);
    std::string t = "\\ln " + names.at(static_cast<std::size_t>(c)) + "_{n}";
    if (mag != 1) t = rational_latex(mag) + " " + t;
    if (out.empty())
      out = (neg ? "-" : "") + t;
    else
      out += (neg ? " - " : " + ") + t;
  }
  return out.empty() ? "0" : out;
}

std::string to_latex(const VectorExpression& v, const Names& names) {
  std::string out = "\\begin{pmatrix} ";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += " \\\\ ";
    out += to_latex(v[i], names);
  }
  return out + " \\end{pmatrix}";
}

std::string to_latex(const PseudoDifferenceOperator& r, const Names& names) {
  const std::size_t n = r.size();
  std::string out = "\\begin{pmatrix}\n";
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const OperatorEntry& e = r.at(i, j);
      std::string cell;
      auto append = [&](const std::string& term) {
        bool neg = !term.empty() && term[0] == '-';
        if (cell.empty())
          cell = term;
        else
          cell += neg ? " - " + term.substr(1) : " + " + term;
      };
      for (const auto& [k, c] : e.local) {
        if (c == Expression(1)) {
          append(power_latex(k));
        } else if (c == Expression(-1)) {
          append("-" + power_latex(k));
        } else {
          std::string ct = to_latex(c, names);
          if (needs_parens(c)) ct = "\\left(" + ct + "\\right)";
          append(ct + " " + power_latex(k));
        }
      }
      for (const auto& t : e.nonlocal) {
        std::string lt = to_latex(t.left, names);
        if (needs_parens(t.left)) lt = "\\left(" + lt + "\\right)";
        std::string term = lt + " (\\mathbf{D} - \\mathbf{I})^{-1} " +
                           to_latex(t.right, names) + " " + power_latex(t.power);
        append(term);
      }
      out += (j ? " & " : "  ") + (cell.empty() ? std::string("0") : cell);
    }
    out += i + 1 < n ? " \\\\\n" : "\n";
  }
  return out + "\\end{pmatrix}";
}

std::string print_system(const SystemDocument& d) {
  std::ostringstream out;
  if (d.declared) {
    out << "var ";
    for (std::size_t i = 0; i < d.names.size(); ++i)
      out << (i ? ", " : "") << d.names[i];
    out << ";\n";
  }
  for (std::size_t i = 0; i < d.names.size(); ++i)
    out << d.names[i] << "' = " << to_text(d.rhs.at(i), d.names) << ";\n";
  for (const auto& [c, w] : d.weights)
    out << "weight " << d.names.at(static_cast<std::size_t>(c)) << " = "
        << w.get_str() << ";\n";
  for (const auto& [lvl, g] : d.symmetries)
    out << "symmetry " << lvl << " = " << to_text(g, d.names) << ";\n";
  for (const auto& rho : d.densities)
    out << "density = " << to_text(rho, d.names) << ";\n";
  return out.str();
}

}  // namespace ddero::frontend
