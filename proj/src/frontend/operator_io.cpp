#include "ddero/frontend/operator_io.hpp"

#include <algorithm>

#include "ddero/errors.hpp"
#include "ddero/frontend/parser.hpp"
#include "ddero/frontend/printer.hpp"
#include "json.hpp"

namespace ddero::frontend {

using ordered_json = nlohmann::ordered_json;

std::string save_operator(const PseudoDifferenceOperator& r,
                          const std::vector<std::string>& names) {
  ordered_json doc;
  doc["format"] = "dde-operator";
  doc["version"] = 1;
  doc["size"] = r.size();
  doc["variables"] = names;
  ordered_json entries = ordered_json::array();
  for (std::size_t i = 0; i < r.size(); ++i)
    for (std::size_t j = 0; j < r.size(); ++j) {
      const OperatorEntry& e = r.at(i, j);
      for (const auto& [k, c] : e.local) {
        if (c.is_zero()) continue;
        ordered_json x;
        x["row"] = i + 1;
        x["col"] = j + 1;
        x["kind"] = "local";
        x["power"] = k;
        x["coeff"] = to_text(c, names);
        entries.push_back(std::move(x));
      }
      std::vector<const NonlocalTerm*> terms;
      for (const auto& t : e.nonlocal) terms.push_back(&t);
      std::stable_sort(terms.begin(), terms.end(), [](const NonlocalTerm* a, const NonlocalTerm* b) {
        if (a->power != b->power) return a->power < b->power;
        if (int c = compare(a->right, b->right)) return c < 0;
        return compare(a->left, b->left) < 0;
      });
      for (const NonlocalTerm* t : terms) {
        ordered_json x;
        x["row"] = i + 1;
        x["col"] = j + 1;
        x["kind"] = "nonlocal";
        x["power"] = t->power;
        x["left"] = to_text(t->left, names);
        x["right"] = to_text(t->right, names);
        entries.push_back(std::move(x));
      }
    }
  doc["entries"] = std::move(entries);
  return doc.dump(2) + "\n";
}

namespace {

template <class T>
T field(const ordered_json& x, const char* key) {
  if (!x.contains(key)) throw InputError(std::string("operator document: missing '") + key + "'");
  try {
    return x.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw InputError(std::string("operator document: bad '") + key + "'");
  }
}

}  // namespace

PseudoDifferenceOperator load_operator(std::string_view text,
                                       std::vector<std::string>* names_out) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("operator document: ") + e.what());
  }
  if (!doc.is_object() || field<std::string>(doc, "format") != "dde-operator")
    throw InputError("operator document: format must be \"dde-operator\"");
  if (field<int>(doc, "version") != 1)
    throw InputError("operator document: unsupported version");
  const auto n = field<std::size_t>(doc, "size");
  const auto names = field<std::vector<std::string>>(doc, "variables");
  if (names.size() != n)
    throw InputError("operator document: size does not match variables");
  PseudoDifferenceOperator r(n);
  const auto& entries = doc.at("entries");
  if (!entries.is_array()) throw InputError("operator document: entries must be an array");
  for (const auto& x : entries) {
    const auto row = field<std::size_t>(x, "row");
    const auto col = field<std::size_t>(x, "col");
    if (row < 1 || row > n || col < 1 || col > n)
      throw InputError("operator document: entry index out of range");
    const int power = field<int>(x, "power");
    const auto kind = field<std::string>(x, "kind");
    OperatorEntry& e = r.at(row - 1, col - 1);
    if (kind == "local") {
      e.add_local(power, parse_expression(field<std::string>(x, "coeff"), names));
    } else if (kind == "nonlocal") {
      NonlocalTerm t;
      t.left = parse_expression(field<std::string>(x, "left"), names);
      t.right = parse_fraction(field<std::string>(x, "right"), names);
      t.power = power;
      e.add_nonlocal(std::move(t));
    } else {
      throw InputError("operator document: kind must be local or nonlocal");
    }
  }
  if (names_out) *names_out = names;
  return r;
}

PseudoDifferenceOperator load_operator_for(std::string_view text,
                                           const std::vector<std::string>& expected) {
  std::vector<std::string> names;
  PseudoDifferenceOperator r = load_operator(text, &names);
  if (names != expected)
    throw InputError("operator document variables do not match the system");
  return r;
}

}  // namespace ddero::frontend
