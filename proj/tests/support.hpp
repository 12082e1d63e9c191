#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "gronwall/expr.hpp"

namespace testing {

inline double rel_diff(double a, double b) {
  const double d = std::fabs(a - b);
  return d == 0.0 ? 0.0 : d / std::max(std::fabs(a), std::fabs(b));
}

/// Fixed-seed source for the property generators.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(engine_); }

 private:
  std::mt19937_64 engine_;
};

/// Random expression of depth at most `depth` over the full grammar.
inline gronwall::Expr random_expr(Rng& rng, int depth) {
  using gronwall::Expr;
  using gronwall::Op;
  if (depth <= 1 || rng.coin(0.25)) {
    if (rng.coin()) return Expr::variable();
    return Expr::constant(std::round(rng.uniform(0.0, 5.0) * 100.0) / 100.0);
  }
  static constexpr double kExponents[] = {0.5, 1.5, 2.0, 3.0, 0.25, 0.0, 1.0};
  switch (rng.integer(0, 7)) {
    case 0: return Expr::binary(Op::add, random_expr(rng, depth - 1), random_expr(rng, depth - 1));
    case 1: return Expr::binary(Op::sub, random_expr(rng, depth - 1), random_expr(rng, depth - 1));
    case 2: return Expr::binary(Op::mul, random_expr(rng, depth - 1), random_expr(rng, depth - 1));
    case 3: return Expr::binary(Op::div, random_expr(rng, depth - 1), random_expr(rng, depth - 1));
    case 4: return Expr::power(random_expr(rng, depth - 1), kExponents[rng.integer(0, 6)]);
    case 5: return Expr::call(Op::exp, random_expr(rng, depth - 1));
    case 6: return Expr::call(Op::sqrt, random_expr(rng, depth - 1));
    default: return Expr::call(Op::cbrt, random_expr(rng, depth - 1));
  }
}

/// Coefficients c0..cn of a random polynomial.
inline std::vector<double> random_polynomial(Rng& rng, int max_degree) {
  std::vector<double> c(static_cast<std::size_t>(rng.integer(0, max_degree)) + 1);
  for (double& v : c) v = rng.uniform(-2.0, 2.0);
  return c;
}

inline double horner(const std::vector<double>& c, double x) {
  double s = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) s = s * x + *it;
  return s;
}

/// Exact ∫_lo^hi of the polynomial.
inline double polynomial_integral(const std::vector<double>& c, double lo, double hi) {
  double s = 0.0;
  for (std::size_t k = 0; k < c.size(); ++k) {
    const double p = static_cast<double>(k + 1);
    s += c[k] * (std::pow(hi, p) - std::pow(lo, p)) / p;
  }
  return s;
}

/// Scratch directory removed on destruction.
class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("gronwall_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::string write(const std::string& name, const std::string& content) const {
    const auto p = path_ / name;
    std::ofstream(p, std::ios::binary) << content;
    return p.string();
  }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

/// Splits CSV text into rows of numbers, skipping the header.
inline std::vector<std::vector<double>> parse_csv(const std::string& text, std::string* header = nullptr) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::vector<double>> rows;
  bool first = true;
  while (std::getline(in, line)) {
    if (first) {
      if (header) *header = line;
      first = false;
      continue;
    }
    std::vector<double> row;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace testing
