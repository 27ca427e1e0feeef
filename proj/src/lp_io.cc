#include "qcm/lp_io.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <unordered_map>

namespace qcm {
namespace {

std::string Num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string Num(const Rational& r) { return Num(r.convert_to<double>()); }

std::string SignedNum(const Rational& r) {
  const std::string s = Num(r);
  return s[0] == '-' ? s : "+" + s;
}

const char* LpSense(Sense s) {
  switch (s) {
    case Sense::kLessEqual: return "<=";
    case Sense::kGreaterEqual: return ">=";
    case Sense::kEqual: return "=";
  }
  return "?";
}

std::string Header(const LpModel& m) {
  return std::string("qcm-model ") + LpVariantName(m.variant()) + " " + std::to_string(m.n()) +
         " " + std::to_string(m.k());
}

LpVariant VariantFromName(const std::string& s) {
  for (LpVariant v : {LpVariant::kSimple, LpVariant::kTightened, LpVariant::kOddGirth,
                      LpVariant::kFRanking, LpVariant::kGeneric}) {
    if (s == LpVariantName(v)) return v;
  }
  throw ModelParseError("unknown model variant '" + s + "'");
}

ConstraintTag TagFromName(const std::string& name) {
  ConstraintTag tag;
  std::vector<std::string> parts;
  std::stringstream ss(name);
  std::string part;
  while (std::getline(ss, part, '.')) parts.push_back(part);
  if (parts.empty()) return {name, {}};
  tag.family = parts[0];
  for (size_t i = 1; i < parts.size(); ++i) {
    const std::string& p = parts[i];
    const bool numeric = !p.empty() && std::all_of(p.begin() + (p[0] == '-' ? 1 : 0), p.end(),
                                                   [](char c) { return std::isdigit(c); });
    if (!numeric || p == "-") return {name, {}};
    tag.indices.push_back(std::stoi(p));
  }
  return tag;
}

void AppendTerms(std::ostringstream& out, const LpModel& m, const std::vector<Term>& terms) {
  if (terms.empty()) {
    out << " 0 " << m.variable_name(0);
    return;
  }
  int on_line = 0;
  for (const Term& t : terms) {
    if (on_line == 6) {
      out << "\n   ";
      on_line = 0;
    }
    out << " " << SignedNum(t.coef) << " " << m.variable_name(t.var);
    ++on_line;
  }
}

std::string ExportLp(const LpModel& m) {
  std::ostringstream out;
  out << "\\ " << Header(m) << "\n";
  out << "Maximize\n obj:";
  AppendTerms(out, m, m.objective());
  out << "\nSubject To\n";
  for (const Constraint& c : m.constraints()) {
    out << " " << c.tag.ToString() << ":";
    AppendTerms(out, m, c.terms);
    out << " " << LpSense(c.sense) << " " << Num(c.rhs) << "\n";
  }
  out << "Bounds\n";
  for (const std::string& name : m.variable_names()) out << " " << name << " free\n";
  out << "End\n";
  return out.str();
}

std::string ExportMps(const LpModel& m) {
  bool fixed = true;
  auto check = [&fixed](const std::string& s, size_t width) {
    if (s.size() > width || s.find(' ') != std::string::npos) fixed = false;
  };
  std::vector<std::string> row_names;
  for (const Constraint& c : m.constraints()) row_names.push_back(c.tag.ToString());
  for (const auto& r : row_names) check(r, 8);
  for (const auto& v : m.variable_names()) check(v, 8);
  // Column-major coefficient lists.
  std::vector<std::vector<std::pair<std::string, std::string>>> columns(m.variable_count());
  for (const Term& t : m.objective()) columns[t.var].emplace_back("obj", Num(t.coef));
  for (size_t i = 0; i < m.constraints().size(); ++i) {
    for (const Term& t : m.constraints()[i].terms) {
      columns[t.var].emplace_back(row_names[i], Num(t.coef));
    }
  }
  for (const auto& col : columns)
    for (const auto& e : col) check(e.second, 12);
  for (const Constraint& c : m.constraints()) check(Num(c.rhs), 12);

  std::ostringstream out;
  char buf[128];
  auto entry = [&](const char* f1, const std::string& f2, const std::string& f3,
                   const std::string& f4) {
    if (fixed) {
      std::snprintf(buf, sizeof buf, " %-2s %-8s  %-8s  %12s", f1, f2.c_str(), f3.c_str(),
                    f4.c_str());
      std::string line = buf;
      while (!line.empty() && line.back() == ' ') line.pop_back();
      out << line << "\n";
    } else {
      out << " " << f1 << (*f1 ? " " : "") << f2;
      if (!f3.empty()) out << " " << f3;
      if (!f4.empty()) out << " " << f4;
      out << "\n";
    }
  };
  out << "* " << Header(m) << "\n";
  out << "NAME          " << LpVariantName(m.variant()) << "_n" << m.n() << "\n";
  out << "OBJSENSE\n    MAX\n";
  out << "ROWS\n";
  entry("N", "obj", "", "");
  for (size_t i = 0; i < m.constraints().size(); ++i) {
    const Sense s = m.constraints()[i].sense;
    entry(s == Sense::kLessEqual ? "L" : s == Sense::kGreaterEqual ? "G" : "E", row_names[i],
          "", "");
  }
  out << "COLUMNS\n";
  for (int v = 0; v < m.variable_count(); ++v) {
    for (const auto& [row, value] : columns[v]) entry("", m.variable_name(v), row, value);
  }
  out << "RHS\n";
  for (size_t i = 0; i < m.constraints().size(); ++i) {
    if (m.constraints()[i].rhs != 0) entry("", "RHS", row_names[i], Num(m.constraints()[i].rhs));
  }
  out << "BOUNDS\n";
  for (int v = 0; v < m.variable_count(); ++v) entry("FR", "BND", m.variable_name(v), "");
  out << "ENDATA\n";
  return out.str();
}

// Rows collected while parsing, before variables are indexed.
struct RawRow {
  std::string name;
  std::vector<std::pair<std::string, double>> terms;
  Sense sense = Sense::kLessEqual;
  double rhs = 0.0;
};

struct RawModel {
  LpVariant variant = LpVariant::kGeneric;
  int n = 0;
  int k = 0;
  std::vector<std::pair<std::string, double>> objective;
  std::vector<RawRow> rows;
  std::vector<std::string> declared;  // variable order from the bounds section
};

void ReadHeader(const std::string& line, RawModel& raw) {
  std::istringstream in(line);
  std::string marker, tag, variant;
  in >> marker >> tag;
  if (tag != "qcm-model") return;
  in >> variant >> raw.n >> raw.k;
  raw.variant = VariantFromName(variant);
}

LpModel Assemble(const RawModel& raw) {
  LpModel m(raw.variant, raw.n, raw.k);
  for (const auto& name : raw.declared) m.Variable(name);
  for (const auto& [name, c] : raw.objective) m.Variable(name);
  for (const RawRow& r : raw.rows)
    for (const auto& [name, c] : r.terms) m.Variable(name);
  LinearExpr obj;
  for (const auto& [name, c] : raw.objective) obj.Add(m.Find(name), RecoverRational(c));
  m.SetObjective(obj);
  for (const RawRow& r : raw.rows) {
    LinearExpr e;
    for (const auto& [name, c] : r.terms) e.Add(m.Find(name), RecoverRational(c));
    m.AddConstraint(e, r.sense, RecoverRational(r.rhs), TagFromName(r.name));
  }
  return m;
}

double ParseNumber(const std::string& s) {
  try {
    size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw ModelParseError("bad number '" + s + "'");
    return v;
  } catch (const std::logic_error&) {
    if (s == "inf" || s == "+inf" || s == "infinity" || s == "+infinity") return INFINITY;
    if (s == "-inf" || s == "-infinity") return -INFINITY;
    throw ModelParseError("bad number '" + s + "'");
  }
}

bool IsNumber(const std::string& s) {
  if (s.empty()) return false;
  char* end = nullptr;
  std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size();
}

std::string Lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

// Splits LP text into tokens; operators and ':' become their own tokens.
std::vector<std::string> Tokenize(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) out.push_back(cur);
    cur.clear();
  };
  for (size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      flush();
    } else if (c == '<' || c == '>' || c == '=') {
      flush();
      std::string op(1, c);
      if (i + 1 < line.size() && line[i + 1] == '=') op += line[++i];
      if (op == "=<") op = "<=";
      if (op == "=>") op = ">=";
      out.push_back(op);
    } else if (c == ':') {
      flush();
      out.push_back(":");
    } else if ((c == '+' || c == '-') &&
               (cur.empty() || (cur.back() != 'e' && cur.back() != 'E') || !IsNumber(cur.substr(0, cur.size() - 1)))) {
      flush();
      out.push_back(std::string(1, c));
    } else {
      cur += c;
    }
  }
  flush();
  return out;
}

// Parses "[+-] [coef] name ..." into terms; returns false on junk.
std::vector<std::pair<std::string, double>> ParseTerms(const std::vector<std::string>& tok) {
  std::vector<std::pair<std::string, double>> terms;
  double sign = 1.0;
  double coef = 1.0;
  bool have_coef = false;
  for (const std::string& t : tok) {
    if (t == "+") continue;
    if (t == "-") {
      sign = -sign;
    } else if (IsNumber(t)) {
      coef = ParseNumber(t);
      have_coef = true;
    } else {
      terms.emplace_back(t, sign * (have_coef ? coef : 1.0));
      sign = 1.0;
      coef = 1.0;
      have_coef = false;
    }
  }
  if (have_coef) throw ModelParseError("dangling coefficient in expression");
  return terms;
}

Sense SenseFromOp(const std::string& op) {
  if (op == "<=" || op == "<") return Sense::kLessEqual;
  if (op == ">=" || op == ">") return Sense::kGreaterEqual;
  return Sense::kEqual;
}

LpModel ParseLp(const std::string& text) {
  RawModel raw;
  enum { kNone, kObjective, kConstraints, kBounds, kEnd } section = kNone;
  std::istringstream in(text);
  std::string line;
  std::vector<std::string> pending;  // tokens of the current statement
  int unnamed = 0;

  auto finish_constraint = [&]() {
    // name : terms op rhs
    std::vector<std::string> tok = pending;
    pending.clear();
    RawRow row;
    if (tok.size() >= 2 && tok[1] == ":") {
      row.name = tok[0];
      tok.erase(tok.begin(), tok.begin() + 2);
    } else {
      row.name = "row." + std::to_string(unnamed++);
    }
    auto op = std::find_if(tok.begin(), tok.end(), [](const std::string& t) {
      return t == "<=" || t == ">=" || t == "=" || t == "<" || t == ">";
    });
    if (op == tok.end() || op + 1 == tok.end()) throw ModelParseError("constraint without relation");
    row.sense = SenseFromOp(*op);
    std::string rhs;
    for (auto it = op + 1; it != tok.end(); ++it) rhs += *it;
    row.rhs = ParseNumber(rhs);
    row.terms = ParseTerms(std::vector<std::string>(tok.begin(), op));
    raw.rows.push_back(std::move(row));
  };

  auto statement_complete = [&]() {
    // A constraint is complete once a relation and a number follow it.
    for (size_t i = 0; i + 1 < pending.size(); ++i) {
      const std::string& t = pending[i];
      if (t == "<=" || t == ">=" || t == "=" || t == "<" || t == ">") {
        std::string rhs;
        for (size_t j = i + 1; j < pending.size(); ++j) rhs += pending[j];
        return IsNumber(rhs);
      }
    }
    return false;
  };

  while (std::getline(in, line)) {
    if (!line.empty() && line[0] == '\\') {
      ReadHeader(line, raw);
      continue;
    }
    const auto comment = line.find('\\');
    if (comment != std::string::npos) line = line.substr(0, comment);
    std::vector<std::string> tok = Tokenize(line);
    if (tok.empty()) continue;
    const std::string key = Lower(tok[0]);
    if (key == "maximize" || key == "maximum" || key == "max") {
      section = kObjective;
      continue;
    }
    if (key == "minimize" || key == "minimum" || key == "min") {
      throw ModelParseError("only maximization models are supported");
    }
    if ((key == "subject" && tok.size() > 1 && Lower(tok[1]) == "to") || key == "st" ||
        key == "s.t." || key == "such") {
      section = kConstraints;
      continue;
    }
    if (key == "bounds" || key == "bound") {
      section = kBounds;
      continue;
    }
    if (key == "end") {
      section = kEnd;
      continue;
    }
    switch (section) {
      case kObjective: {
        if (tok.size() >= 2 && tok[1] == ":") tok.erase(tok.begin(), tok.begin() + 2);
        auto terms = ParseTerms(tok);
        raw.objective.insert(raw.objective.end(), terms.begin(), terms.end());
        break;
      }
      case kConstraints:
        pending.insert(pending.end(), tok.begin(), tok.end());
        if (statement_complete()) finish_constraint();
        break;
      case kBounds: {
        if (tok.size() == 2 && Lower(tok[1]) == "free") {
          raw.declared.push_back(tok[0]);
          break;
        }
        // lo <= x <= hi, x >= lo, x <= hi: become ordinary rows.
        std::vector<std::string> t = tok;
        auto bound_row = [&](const std::string& var, Sense s, double v) {
          if (std::isinf(v)) return;
          RawRow row;
          row.name = "bound." + std::to_string(unnamed++);
          row.terms = {{var, 1.0}};
          row.sense = s;
          row.rhs = v;
          raw.rows.push_back(row);
        };
        if (t.size() == 5 && IsNumber(t[0]) && !IsNumber(t[2])) {
          raw.declared.push_back(t[2]);
          bound_row(t[2], Sense::kGreaterEqual, ParseNumber(t[0]));
          bound_row(t[2], Sense::kLessEqual, ParseNumber(t[4]));
        } else if (t.size() == 3 && !IsNumber(t[0])) {
          raw.declared.push_back(t[0]);
          bound_row(t[0], SenseFromOp(t[1]), ParseNumber(t[2]));
        } else {
          throw ModelParseError("unsupported bound line: " + line);
        }
        break;
      }
      case kNone:
      case kEnd:
        throw ModelParseError("text outside of a section: " + line);
    }
  }
  if (!pending.empty()) throw ModelParseError("incomplete constraint at end of file");
  return Assemble(raw);
}

LpModel ParseMps(const std::string& text) {
  RawModel raw;
  std::istringstream in(text);
  std::string line;
  std::string section;
  std::string objective_row;
  std::unordered_map<std::string, size_t> row_index;
  std::unordered_map<std::string, std::vector<std::pair<std::string, double>>> row_terms;
  std::vector<std::string> column_order;
  std::unordered_map<std::string, bool> seen_column;
  bool maximize = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '*') {
      ReadHeader(line, raw);
      continue;
    }
    std::istringstream ls(line);
    std::vector<std::string> f;
    std::string w;
    while (ls >> w) f.push_back(w);
    if (f.empty()) continue;
    if (!std::isspace(static_cast<unsigned char>(line[0]))) {
      section = f[0];
      if (section == "OBJSENSE" && f.size() > 1) maximize = f[1] == "MAX" || f[1] == "MAXIMIZE";
      if (section == "RANGES") throw ModelParseError("RANGES are not supported");
      continue;
    }
    if (section == "OBJSENSE") {
      maximize = f[0] == "MAX" || f[0] == "MAXIMIZE";
    } else if (section == "ROWS") {
      if (f.size() != 2) throw ModelParseError("bad ROWS line: " + line);
      if (f[0] == "N") {
        if (objective_row.empty()) objective_row = f[1];
        continue;
      }
      RawRow row;
      row.name = f[1];
      row.sense = f[0] == "L" ? Sense::kLessEqual : f[0] == "G" ? Sense::kGreaterEqual : Sense::kEqual;
      if (f[0] != "L" && f[0] != "G" && f[0] != "E") throw ModelParseError("bad row type " + f[0]);
      row_index[row.name] = raw.rows.size();
      raw.rows.push_back(row);
    } else if (section == "COLUMNS") {
      if (f.size() >= 3 && f[1] == "'MARKER'") continue;
      if (f.size() != 3 && f.size() != 5) throw ModelParseError("bad COLUMNS line: " + line);
      const std::string& col = f[0];
      if (!seen_column[col]) {
        seen_column[col] = true;
        column_order.push_back(col);
      }
      for (size_t i = 1; i + 1 < f.size(); i += 2) {
        const double v = ParseNumber(f[i + 1]);
        if (f[i] == objective_row) {
          raw.objective.emplace_back(col, v);
        } else {
          auto it = row_index.find(f[i]);
          if (it == row_index.end()) throw ModelParseError("unknown row " + f[i]);
          raw.rows[it->second].terms.emplace_back(col, v);
        }
      }
    } else if (section == "RHS") {
      size_t start = f.size() % 2 == 0 ? 0 : 1;
      for (size_t i = start; i + 1 < f.size(); i += 2) {
        if (f[i] == objective_row) continue;
        auto it = row_index.find(f[i]);
        if (it == row_index.end()) throw ModelParseError("unknown row " + f[i]);
        raw.rows[it->second].rhs = ParseNumber(f[i + 1]);
      }
    } else if (section == "BOUNDS") {
      if (f.size() < 3) throw ModelParseError("bad BOUNDS line: " + line);
      const std::string& type = f[0];
      const std::string& col = f[2];
      if (type == "FR" || type == "MI" || type == "PL") continue;
      if (f.size() < 4) throw ModelParseError("bound without value: " + line);
      const double v = ParseNumber(f[3]);
      auto add = [&](Sense s) {
        RawRow row;
        row.name = "bound." + col + "." + type;
        row.terms = {{col, 1.0}};
        row.sense = s;
        row.rhs = v;
        raw.rows.push_back(row);
      };
      if (type == "UP") add(Sense::kLessEqual);
      else if (type == "LO") add(Sense::kGreaterEqual);
      else if (type == "FX") add(Sense::kEqual);
      else throw ModelParseError("unsupported bound type " + type);
    } else if (section == "ENDATA") {
      break;
    }
  }
  if (!maximize) {
    // MPS defaults to minimization; store as maximizing the negation.
    for (auto& t : raw.objective) t.second = -t.second;
  }
  raw.declared = column_order;
  return Assemble(raw);
}

}  // namespace

std::string ExportModel(const LpModel& model, ModelFormat format) {
  return format == ModelFormat::kLpText ? ExportLp(model) : ExportMps(model);
}

LpModel ParseModel(const std::string& text, ModelFormat format) {
  return format == ModelFormat::kLpText ? ParseLp(text) : ParseMps(text);
}

Rational RecoverRational(double value) {
  if (!std::isfinite(value)) throw ModelParseError("non-finite coefficient");
  const double tol = 1e-15 * std::max(1.0, std::abs(value));
  // Continued-fraction convergents until one is close enough.
  long double x = std::abs(static_cast<long double>(value));
  long long h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  for (int step = 0; step < 40; ++step) {
    const long double a = std::floor(x);
    if (a > 1e15L) break;
    const long long ai = static_cast<long long>(a);
    const long long h2 = ai * h1 + h0;
    const long long k2 = ai * k1 + k0;
    if (k2 > 1000000000LL) break;
    h0 = h1; h1 = h2; k0 = k1; k1 = k2;
    const double approx = static_cast<double>(h1) / static_cast<double>(k1);
    if (std::abs(approx - std::abs(value)) <= tol) {
      Rational r(h1, k1);
      return value < 0 ? Rational(-r) : r;
    }
    const long double frac = x - a;
    if (frac <= 0) break;
    x = 1.0L / frac;
  }
  // Exact binary value.
  int exp = 0;
  const double mant = std::frexp(value, &exp);
  const long long m = static_cast<long long>(std::ldexp(mant, 53));
  Rational r(m);
  exp -= 53;
  boost::multiprecision::cpp_int p = 1;
  p <<= std::abs(exp);
  return exp >= 0 ? Rational(r * p) : Rational(r / p);
}

std::map<std::string, double> ParseSolution(const std::string& text) {
  std::map<std::string, double> out;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    std::string name, value, extra;
    if (!(ls >> name)) continue;
    if (!(ls >> value) || (ls >> extra)) {
      throw ModelParseError("solution line " + std::to_string(lineno) + ": expected 'name value'");
    }
    out[name] = ParseNumber(value);
  }
  return out;
}

std::string WriteSolution(const LpModel& model, const std::vector<double>& values) {
  std::ostringstream out;
  out << "# " << Header(model) << "\n";
  for (int v = 0; v < model.variable_count(); ++v) {
    out << model.variable_name(v) << " " << Num(values.at(v)) << "\n";
  }
  return out.str();
}

namespace {

Rational ExactValue(double v) {
  if (v == 0.0) return 0;
  int exp = 0;
  const double mant = std::frexp(v, &exp);
  const long long m = static_cast<long long>(std::ldexp(mant, 53));
  exp -= 53;
  boost::multiprecision::cpp_int p = 1;
  p <<= std::abs(exp);
  return exp >= 0 ? Rational(Rational(m) * p) : Rational(Rational(m) / p);
}

}  // namespace

VerificationReport VerifySolution(const LpModel& model, const std::vector<double>& values,
                                  double tol) {
  if (static_cast<int>(values.size()) < model.variable_count()) {
    throw MissingVariableError("assignment is shorter than the variable list");
  }
  std::vector<Rational> exact(model.variable_count());
  for (int v = 0; v < model.variable_count(); ++v) {
    if (!std::isfinite(values[v])) throw std::invalid_argument("non-finite value for " + model.variable_name(v));
    exact[v] = ExactValue(values[v]);
  }
  VerificationReport report;
  report.constraint_count = static_cast<int>(model.constraints().size());
  for (const Constraint& c : model.constraints()) {
    Rational lhs = 0;
    for (const Term& t : c.terms) lhs += t.coef * exact[t.var];
    Rational gap;
    switch (c.sense) {
      case Sense::kLessEqual: gap = lhs - c.rhs; break;
      case Sense::kGreaterEqual: gap = c.rhs - lhs; break;
      case Sense::kEqual: gap = abs(lhs - c.rhs); break;
    }
    const double amount = std::max(0.0, gap.convert_to<double>());
    report.max_violation = std::max(report.max_violation, amount);
    if (amount > tol) report.violations.push_back({c.tag, amount});
  }
  std::stable_sort(report.violations.begin(), report.violations.end(),
                   [](const Violation& a, const Violation& b) { return a.amount > b.amount; });
  Rational objective = 0;
  for (const Term& t : model.objective()) objective += t.coef * exact[t.var];
  report.objective = objective.convert_to<double>();
  return report;
}

VerificationReport VerifySolution(const LpModel& model,
                                  const std::map<std::string, double>& assignment, double tol) {
  std::vector<double> values(model.variable_count());
  for (int v = 0; v < model.variable_count(); ++v) {
    auto it = assignment.find(model.variable_name(v));
    if (it == assignment.end()) {
      throw MissingVariableError("assignment has no value for " + model.variable_name(v));
    }
    values[v] = it->second;
  }
  return VerifySolution(model, values, tol);
}

}  // namespace qcm
