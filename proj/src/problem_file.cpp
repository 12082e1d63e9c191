#include "gronwall/problem_file.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace gronwall {

namespace {

std::string with_line(std::size_t line, const std::string& message) {
  return line == 0 ? message : "line " + std::to_string(line) + ": " + message;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

// Drops a trailing comment that is not inside a quoted string.
std::string_view strip_comment(std::string_view s) {
  bool quoted = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '"') quoted = !quoted;
    if (s[i] == '#' && !quoted) return s.substr(0, i);
  }
  return s;
}

std::string unquote(std::string_view v, std::size_t line) {
  if (v.empty()) throw ProblemFileError(line, "missing value");
  if (v.front() != '"') {
    if (v.find('"') != std::string_view::npos) throw ProblemFileError(line, "stray quote in value");
    return std::string(v);
  }
  if (v.size() < 2 || v.back() != '"') throw ProblemFileError(line, "unterminated string");
  const std::string_view inner = v.substr(1, v.size() - 2);
  if (inner.find('"') != std::string_view::npos) {
    throw ProblemFileError(line, "unexpected quote inside string");
  }
  return std::string(inner);
}

double to_number(const std::string& v, std::size_t line, std::string_view key) {
  double out = 0.0;
  const char* end = v.data() + v.size();
  const auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || ptr != end || !std::isfinite(out)) {
    throw ProblemFileError(line, std::string(key) + ": expected a number, got '" + v + "'");
  }
  return out;
}

long to_integer(const std::string& v, std::size_t line, std::string_view key) {
  long out = 0;
  const char* end = v.data() + v.size();
  const auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || ptr != end) {
    throw ProblemFileError(line, std::string(key) + ": expected an integer, got '" + v + "'");
  }
  return out;
}

bool to_bool(const std::string& v, std::size_t line, std::string_view key) {
  if (v == "true") return true;
  if (v == "false") return false;
  throw ProblemFileError(line, std::string(key) + ": expected true or false, got '" + v + "'");
}

Expr to_expr(const std::string& v, std::size_t line, std::string_view key) {
  try {
    return parse_expr(v);
  } catch (const ParseError& e) {
    throw ProblemFileError(line, std::string(key) + ": " + e.diagnostic().to_string(),
                           e.diagnostic());
  }
}

const std::map<std::string, std::set<std::string>, std::less<>>& schema() {
  static const std::map<std::string, std::set<std::string>, std::less<>> keys{
      {"problem", {"theorem", "horizon", "kappa", "gamma1", "gamma2", "gamma3", "gamma4"}},
      {"functions", {"a", "f", "phi", "psi1", "psi2", "psi3", "psi4", "psi5", "psi6"}},
      {"numerics",
       {"tol_abs", "tol_rel", "max_depth", "grid", "zeta6_denominator", "strict_limits",
        "dominance", "singular_cushion", "inner_refinement"}},
  };
  return keys;
}

void apply(ProblemFile& pf, const std::string& section, const std::string& key,
           const std::string& v, std::size_t line) {
  InequalityProblem& p = pf.problem;
  NumericsSettings& n = pf.numerics;
  if (section == "problem") {
    if (key == "theorem") {
      const auto t = theorem_from_name(v);
      if (!t) throw ProblemFileError(line, "unknown theorem '" + v + "'");
      pf.theorem = *t;
    } else if (key == "horizon") {
      p.horizon = to_number(v, line, key);
      if (!(p.horizon > 0.0)) throw ProblemFileError(line, "horizon must be positive");
    } else if (key == "kappa") {
      p.kappa = to_number(v, line, key);
      if (!(p.kappa > 0.0)) throw ProblemFileError(line, "kappa must be positive");
    } else {
      const double g = to_number(v, line, key);
      if (key == "gamma1") p.gamma.g1 = g;
      if (key == "gamma2") p.gamma.g2 = g;
      if (key == "gamma3") p.gamma.g3 = g;
      if (key == "gamma4") p.gamma.g4 = g;
    }
  } else if (section == "functions") {
    Expr e = to_expr(v, line, key);
    if (key == "a") p.a = std::move(e);
    else if (key == "f") p.f = std::move(e);
    else if (key == "phi") p.phi = std::move(e);
    else p.kernel(key.back() - '0') = std::move(e);
  } else {
    if (key == "tol_abs" || key == "tol_rel") {
      const double t = to_number(v, line, key);
      if (!(t > 0.0)) throw ProblemFileError(line, key + " must be positive");
      (key == "tol_abs" ? n.quadrature.abs_tol : n.quadrature.rel_tol) = t;
    } else if (key == "max_depth") {
      const long d = to_integer(v, line, key);
      if (d < 1 || d > 200) throw ProblemFileError(line, "max_depth must lie in [1, 200]");
      n.quadrature.max_depth = static_cast<int>(d);
    } else if (key == "grid") {
      const long g = to_integer(v, line, key);
      if (g < 2) throw ProblemFileError(line, "grid needs at least 2 points");
      n.grid = static_cast<std::size_t>(g);
    } else if (key == "zeta6_denominator") {
      if (v == "gamma1") n.zeta6 = Zeta6Denominator::gamma1;
      else if (v == "gamma3") n.zeta6 = Zeta6Denominator::gamma3;
      else throw ProblemFileError(line, "zeta6_denominator must be gamma1 or gamma3");
    } else if (key == "strict_limits") {
      n.strict_limits = to_bool(v, line, key);
    } else if (key == "dominance") {
      n.dominance = dominance_mode_from_name(v);
      if (!n.dominance) throw ProblemFileError(line, "dominance must be strict or report-only");
    } else if (key == "singular_cushion") {
      n.singular_cushion = to_number(v, line, key);
      if (!(n.singular_cushion > 0.0)) {
        throw ProblemFileError(line, "singular_cushion must be positive");
      }
    } else if (key == "inner_refinement") {
      const long r = to_integer(v, line, key);
      if (r < 1 || r > 64) throw ProblemFileError(line, "inner_refinement must lie in [1, 64]");
      n.inner_refinement = static_cast<int>(r);
    }
  }
}

}  // namespace

ProblemFileError::ProblemFileError(std::size_t line, const std::string& message,
                                   std::optional<ParseDiagnostic> diagnostic)
    : std::runtime_error(with_line(line, message)), line_(line), diagnostic_(std::move(diagnostic)) {}

BoundOptions ProblemFile::bound_options() const {
  BoundOptions o;
  o.quadrature = numerics.quadrature;
  o.strict_limits = numerics.strict_limits;
  o.zeta6 = numerics.zeta6;
  o.singular_cushion = numerics.singular_cushion;
  o.inner_refinement = numerics.inner_refinement;
  return o;
}

DominanceMode ProblemFile::dominance_mode() const {
  return numerics.dominance.value_or(default_dominance_mode(theorem));
}

ProblemFile parse_problem_file(std::string_view text) {
  ProblemFile pf;
  std::string section;
  std::set<std::string> seen;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = trim(strip_comment(raw));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ProblemFileError(line_no, "malformed section header");
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (!schema().contains(section)) {
        throw ProblemFileError(line_no, "unknown section [" + section + "]");
      }
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ProblemFileError(line_no, "expected key = value");
    const std::string key(trim(line.substr(0, eq)));
    if (section.empty()) throw ProblemFileError(line_no, "key '" + key + "' outside a section");
    if (!schema().at(section).contains(key)) {
      throw ProblemFileError(line_no, "unknown key '" + key + "' in [" + section + "]");
    }
    if (!seen.insert(section + "." + key).second) {
      throw ProblemFileError(line_no, "duplicate key '" + key + "' in [" + section + "]");
    }
    apply(pf, section, key, unquote(trim(line.substr(eq + 1)), line_no), line_no);
  }
  if (!seen.contains("problem.theorem")) throw ProblemFileError(0, "missing [problem] theorem");
  if (!seen.contains("problem.horizon")) throw ProblemFileError(0, "missing [problem] horizon");
  return pf;
}

ProblemFile load_problem_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ProblemFileError(0, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_problem_file(buf.str());
}

}  // namespace gronwall
