// ddero: command-line front end.
//
// Exit status: 0 success, 1 mathematical negative (no solution, failed
// verification, no scaling symmetry), 2 usage or input error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "ddero/conservation.hpp"
#include "ddero/errors.hpp"
#include "ddero/frontend/json_output.hpp"
#include "ddero/frontend/operator_io.hpp"
#include "ddero/frontend/parser.hpp"
#include "ddero/frontend/printer.hpp"
#include "ddero/recursion.hpp"
#include "ddero/scaling.hpp"
#include "ddero/symmetry.hpp"

using namespace ddero;
using namespace ddero::frontend;

namespace {

enum class Format { text, latex, json };

struct Common {
  std::string file;
  std::string window;
  bool allow_nonpositive = false;
  std::string format;
  std::string out;
};

struct Usage : InputError {
  using InputError::InputError;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Usage("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Format format_of(const Common& c) {
  std::string f = c.format;
  if (f.empty()) {
    const char* env = std::getenv("DDERO_FORMAT");
    f = env ? env : "text";
  }
  if (f == "text") return Format::text;
  if (f == "latex") return Format::latex;
  if (f == "json") return Format::json;
  throw Usage("unknown format '" + f + "' (text, latex or json)");
}

std::optional<ShiftWindow> window_of(const Common& c) {
  if (c.window.empty()) return std::nullopt;
  const auto colon = c.window.find(':');
  if (colon == std::string::npos) throw Usage("--window expects A:B");
  try {
    std::size_t used = 0;
    ShiftWindow w;
    const std::string a = c.window.substr(0, colon);
    const std::string b = c.window.substr(colon + 1);
    w.min_shift = std::stoi(a, &used);
    if (used != a.size()) throw std::invalid_argument(a);
    w.max_shift = std::stoi(b, &used);
    if (used != b.size()) throw std::invalid_argument(b);
    if (w.min_shift > w.max_shift) throw Usage("--window needs A <= B");
    return w;
  } catch (const std::logic_error&) {
    throw Usage("--window expects two integers A:B");
  }
}

void emit(const Common& c, const std::string& body) {
  if (c.out.empty()) {
    std::cout << body;
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) throw Usage("cannot write " + c.out);
  f << body;
}

WeightAssignment weights_for(const SystemDocument& doc, const Common& c) {
  WeightOptions o;
  o.allow_nonpositive = c.allow_nonpositive;
  o.overrides = doc.weights;
  return compute_weights(doc.system(), o);
}

Rational parse_rational(const std::string& s) {
  Rational r;
  if (r.set_str(s, 10) != 0) throw Usage("not a rational number: " + s);
  r.canonicalize();
  return r;
}

VectorExpression seed_of(const SystemDocument& doc) {
  if (doc.symmetries.empty()) return doc.rhs;
  auto best = doc.symmetries.begin();
  for (auto it = doc.symmetries.begin(); it != doc.symmetries.end(); ++it)
    if (it->first < best->first) best = it;
  return best->second;
}

std::string report_text(const VerificationReport& r, const Names& names) {
  std::ostringstream out;
  out << "mode: " << to_string(r.mode) << "\n";
  if (r.operator_verdict) {
    out << "operator identity: " << to_string(r.operator_verdict->kind);
    if (!r.operator_verdict->note.empty()) out << " (" << r.operator_verdict->note << ")";
    out << "\n";
  } else if (!r.operator_note.empty()) {
    out << "operator identity: not evaluated (" << r.operator_note << ")\n";
  }
  if (r.action_checked) {
    for (std::size_t i = 0; i < r.steps.size(); ++i) {
      const auto& s = r.steps[i];
      out << "image " << i + 1 << ": " << (s.ok ? "symmetry" : "FAILED");
      if (!s.diagnostic.empty()) out << " (" << s.diagnostic << ")";
      out << "\n";
      if (s.ok) out << "  " << to_text(s.image, names) << "\n";
    }
  }
  out << (r.passed ? "verification passed\n" : "verification failed\n");
  return out.str();
}

int run_weights(const Common& c) {
  const SystemDocument doc = parse_system(read_file(c.file));
  const WeightAssignment w = weights_for(doc, c);
  const Format f = format_of(c);
  std::ostringstream out;
  if (f == Format::json) {
    out << weights_json(doc.names, w);
  } else {
    for (std::size_t i = 0; i < doc.names.size(); ++i) {
      if (f == Format::latex)
        out << "w(" << doc.names[i] << "_n) = " << w.of(i).get_str() << "\n";
      else
        out << "w(" << doc.names[i] << ") = " << w.of(i).get_str() << "\n";
    }
    out << "w(D_t) = " << w.time_weight.get_str() << "\n";
  }
  emit(c, out.str());
  return 0;
}

int run_densities(const Common& c, const std::string& rank_text) {
  const SystemDocument doc = parse_system(read_file(c.file));
  const WeightAssignment w = weights_for(doc, c);
  const Rational rank = parse_rational(rank_text);
  DensityOptions o;
  o.window = window_of(c);
  std::vector<DensityFluxPair> pairs;
  if (rank == 0) pairs = find_log_densities(doc.system());
  auto poly = find_densities(doc.system(), w, rank, o);
  pairs.insert(pairs.end(), poly.begin(), poly.end());
  const Format f = format_of(c);
  std::ostringstream out;
  if (f == Format::json) {
    out << densities_json(doc.names, rank, pairs);
  } else {
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      if (f == Format::latex) {
        out << "\\rho^{(" << i + 1 << ")}_n = " << to_latex(pairs[i].rho, doc.names)
            << ", \\quad J^{(" << i + 1 << ")}_n = " << to_latex(pairs[i].flux, doc.names)
            << "\n";
      } else {
        out << "rho = " << to_text(pairs[i].rho, doc.names) << "\n"
            << "J   = " << to_text(pairs[i].flux, doc.names) << "\n";
      }
    }
    if (pairs.empty() && f == Format::text) out << "no densities of rank " << rank.get_str() << "\n";
  }
  emit(c, out.str());
  return 0;
}

int run_symmetries(const Common& c, int level) {
  if (level < 1) throw Usage("--level must be at least 1");
  const SystemDocument doc = parse_system(read_file(c.file));
  const WeightAssignment w = weights_for(doc, c);
  SymmetryOptions o;
  o.window = window_of(c);
  const auto syms = find_symmetries(doc.system(), w, level, o);
  const Format f = format_of(c);
  std::ostringstream out;
  if (f == Format::json) {
    out << symmetries_json(doc.names, level, syms);
  } else {
    for (const auto& s : syms) {
      if (f == Format::latex)
        out << "G^{(" << level << ")} = " << to_latex(s.g, doc.names) << "\n";
      else
        out << "G = " << to_text(s.g, doc.names) << "\n";
    }
    if (syms.empty() && f == Format::text) out << "no symmetries at level " << level << "\n";
  }
  emit(c, out.str());
  return 0;
}

VerifyMode mode_of(const std::string& m) {
  if (m == "action") return VerifyMode::action;
  if (m == "operator") return VerifyMode::operator_identity;
  if (m == "both") return VerifyMode::both;
  throw Usage("unknown mode '" + m + "' (action, operator or both)");
}

int run_recursion(const Common& c, int gap, int pairs, const std::string& mode,
                  const std::string& save) {
  if (gap < 1) throw Usage("--gap must be at least 1");
  if (pairs < 1) throw Usage("--pairs must be at least 1");
  const SystemDocument doc = parse_system(read_file(c.file));
  const WeightAssignment w = weights_for(doc, c);
  RecursionInputs in;
  for (const auto& [level, g] : doc.symmetries) in.symmetries.push_back(make_symmetry(g, level, w));
  in.densities = doc.densities;
  RecursionConfig cfg;
  cfg.gap = gap;
  cfg.pairs = pairs;
  cfg.window = window_of(c);
  cfg.mode = mode_of(mode);
  const RecursionResult r = find_recursion_operator(doc.system(), w, in, cfg);
  const Format f = format_of(c);
  std::ostringstream out;
  if (f == Format::json) {
    out << recursion_json(doc.names, r);
  } else if (f == Format::latex) {
    out << "\\mathfrak{R} = " << to_latex(r.solved.op, doc.names) << "\n";
  } else {
    out << to_text(r.solved.op, doc.names) << report_text(r.report, doc.names);
  }
  emit(c, out.str());
  if (!save.empty()) {
    std::ofstream s(save, std::ios::binary);
    if (!s) throw Usage("cannot write " + save);
    s << save_operator(r.solved.op, doc.names);
  }
  return r.report.passed ? 0 : 1;
}

int run_hierarchy(const Common& c, const std::string& op_path, int count) {
  if (count < 1) throw Usage("--count must be at least 1");
  const SystemDocument doc = parse_system(read_file(c.file));
  const auto op = load_operator_for(read_file(op_path), doc.names);
  const Hierarchy h = generate_hierarchy(op, doc.system(), seed_of(doc), count);
  const Format f = format_of(c);
  std::ostringstream out;
  if (f == Format::json) {
    out << hierarchy_json(doc.names, h);
  } else {
    for (std::size_t i = 0; i < h.members.size(); ++i) {
      if (f == Format::latex)
        out << "G^{(" << i + 2 << ")} = " << to_latex(h.members[i], doc.names) << "\n";
      else
        out << to_text(h.members[i], doc.names) << "\n";
    }
  }
  emit(c, out.str());
  if (!h.complete()) {
    std::cerr << "ddero: hierarchy stopped after " << h.members.size()
              << " member(s): " << h.failure << "\n";
    return 1;
  }
  return 0;
}

int run_verify(const Common& c, const std::string& op_path, const std::string& mode,
               int length) {
  if (length < 1) throw Usage("--length must be at least 1");
  const SystemDocument doc = parse_system(read_file(c.file));
  const auto op = load_operator_for(read_file(op_path), doc.names);
  RecursionConfig cfg;
  cfg.mode = mode_of(mode);
  cfg.hierarchy_length = length;
  const VerificationReport r = verify(op, doc.system(), seed_of(doc), cfg);
  const Format f = format_of(c);
  emit(c, f == Format::json ? verify_json(doc.names, r) : report_text(r, doc.names));
  return r.passed ? 0 : 1;
}

const char* kind_of(const std::exception& e) {
  if (dynamic_cast<const NoSolution*>(&e)) return "NoSolution";
  if (dynamic_cast<const NotExactDifference*>(&e)) return "NotExactDifference";
  if (dynamic_cast<const NoDilationSymmetry*>(&e)) return "NoDilationSymmetry";
  if (dynamic_cast<const NonpositiveWeights*>(&e)) return "NonpositiveWeights";
  if (dynamic_cast<const NotUniform*>(&e)) return "NotUniform";
  if (dynamic_cast<const InfiniteBasis*>(&e)) return "InfiniteBasis";
  if (dynamic_cast<const EmptyCandidate*>(&e)) return "EmptyCandidate";
  if (dynamic_cast<const Underdetermined*>(&e)) return "Underdetermined";
  if (dynamic_cast<const UndeclaredVariable*>(&e)) return "UndeclaredVariable";
  if (dynamic_cast<const NonPolynomialRHS*>(&e)) return "NonPolynomialRHS";
  if (dynamic_cast<const ParseError*>(&e)) return "ParseError";
  if (dynamic_cast<const MathError*>(&e)) return "MathError";
  return "InputError";
}

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("file", c.file, "System file")->required();
  sub->add_option("--window", c.window, "Shift window A:B for ansatz variables");
  sub->add_flag("--allow-nonpositive-weights", c.allow_nonpositive,
                "Report weights even when some are not positive");
  sub->add_option("--format", c.format, "text, latex or json (default: $DDERO_FORMAT or text)");
  sub->add_option("--out", c.out, "Write the result to PATH");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Symmetries, conservation laws and recursion operators of DDEs"};
  app.require_subcommand(1);
  Common c;

  auto* weights = app.add_subcommand("weights", "Dilation weights");
  add_common(weights, c);

  std::string rank;
  auto* densities = app.add_subcommand("densities", "Conserved densities of a given rank");
  add_common(densities, c);
  densities->add_option("--rank", rank, "Rank (integer or p/q)")->required();

  int level = 1;
  auto* symmetries = app.add_subcommand("symmetries", "Generalized symmetries of a given level");
  add_common(symmetries, c);
  symmetries->add_option("--level", level, "Level (rank above the system's)")->required();

  int gap = 1, pairs = 1;
  std::string rec_mode = "both", save;
  auto* recursion = app.add_subcommand("recursion", "Find a recursion operator");
  add_common(recursion, c);
  recursion->add_option("--gap", gap, "Level gap between linked symmetries");
  recursion->add_option("--pairs", pairs, "Symmetry pairs used as constraints");
  recursion->add_option("--mode", rec_mode, "Verification: action, operator or both");
  recursion->add_option("--save-operator", save, "Also write the operator document to PATH");

  std::string op_path;
  int count = 1;
  auto* hierarchy = app.add_subcommand("hierarchy", "Apply an operator repeatedly to the seed");
  add_common(hierarchy, c);
  hierarchy->add_option("--operator", op_path, "Operator document")->required();
  hierarchy->add_option("--count", count, "Number of new members")->required();

  std::string mode = "both";
  int length = 2;
  auto* verify_cmd = app.add_subcommand("verify", "Check a recursion operator");
  add_common(verify_cmd, c);
  verify_cmd->add_option("--operator", op_path, "Operator document")->required();
  verify_cmd->add_option("--mode", mode, "action, operator or both");
  verify_cmd->add_option("--length", length, "Images checked in action mode");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const bool json = [&] {
    try {
      return format_of(c) == Format::json;
    } catch (const Usage&) {
      return false;
    }
  }();
  try {
    if (*weights) return run_weights(c);
    if (*densities) return run_densities(c, rank);
    if (*symmetries) return run_symmetries(c, level);
    if (*recursion) return run_recursion(c, gap, pairs, rec_mode, save);
    if (*hierarchy) return run_hierarchy(c, op_path, count);
    if (*verify_cmd) return run_verify(c, op_path, mode, length);
  } catch (const MathError& e) {
    if (json) std::cout << error_json(kind_of(e), e.what());
    std::cerr << "ddero: " << kind_of(e) << ": " << e.what() << "\n";
    return 1;
  } catch (const InputError& e) {
    if (json) std::cout << error_json(kind_of(e), e.what());
    std::cerr << "ddero: " << (dynamic_cast<const Usage*>(&e) ? "usage" : kind_of(e)) << ": "
              << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "ddero: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
