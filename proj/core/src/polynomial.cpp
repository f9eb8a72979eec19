#include "anhosc/polynomial.hpp"

#include <charconv>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <sstream>

namespace anhosc {

CPolynomial to_complex(const Polynomial& p) {
  CPolynomial out(p.dim());
  for (const auto& [alpha, c] : p.terms()) out.add_term(alpha, std::complex<double>(c, 0.0));
  return out;
}

double coeff_abs_sum_below(const Polynomial& p, int d) {
  double s = 0.0;
  for (const auto& [alpha, c] : p.terms())
    if (multi_index_order(alpha) < d) s += std::abs(c);
  return s;
}

double coeff_abs_sum_nonconstant(const Polynomial& p) {
  double s = 0.0;
  for (const auto& [alpha, c] : p.terms())
    if (multi_index_order(alpha) > 0) s += std::abs(c);
  return s;
}

namespace {

std::string format_coeff(double v, bool hex_floats) {
  char buf[64];
  if (hex_floats) {
    std::snprintf(buf, sizeof buf, "%a", v);
    return buf;
  }
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) throw std::runtime_error("coefficient formatting failed");
  return std::string(buf, end);
}

std::string var_name(int index, int n_x) {
  std::ostringstream os;
  if (index < n_x)
    os << "x" << (index + 1);
  else
    os << "xi" << (index - n_x + 1);
  return os.str();
}

struct Cursor {
  const std::string& s;
  std::size_t pos = 0;
  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool done() {
    skip_ws();
    return pos >= s.size();
  }
  char peek() {
    skip_ws();
    return pos < s.size() ? s[pos] : '\0';
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("polynomial parse error at offset " + std::to_string(pos) + ": " + what);
  }
};

// variable token: x<k> or xi<k>, 1-based
int parse_var(Cursor& c, int dim, int n_x) {
  c.skip_ws();
  std::size_t start = c.pos;
  if (c.pos >= c.s.size() || c.s[c.pos] != 'x') c.fail("expected variable");
  ++c.pos;
  bool is_xi = (c.pos < c.s.size() && c.s[c.pos] == 'i');
  if (is_xi) ++c.pos;
  std::size_t num_start = c.pos;
  while (c.pos < c.s.size() && std::isdigit(static_cast<unsigned char>(c.s[c.pos]))) ++c.pos;
  if (c.pos == num_start) c.fail("expected variable index");
  int one_based = std::atoi(c.s.substr(num_start, c.pos - num_start).c_str());
  int index = is_xi ? (n_x + one_based - 1) : (one_based - 1);
  if (one_based < 1 || index >= dim || (!is_xi && one_based > n_x)) {
    c.pos = start;
    c.fail("variable out of range for this dimension");
  }
  return index;
}

double parse_number(Cursor& c) {
  c.skip_ws();
  const char* begin = c.s.c_str() + c.pos;
  char* end = nullptr;
  double v = std::strtod(begin, &end);  // handles decimal and hex floats
  if (end == begin) c.fail("expected numeric coefficient");
  c.pos += static_cast<std::size_t>(end - begin);
  return v;
}

}  // namespace

std::string print_polynomial(const Polynomial& p, int n_x, bool hex_floats) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [alpha, c] : p.terms()) {
    double mag = std::abs(c);
    bool neg = std::signbit(c);
    if (first) {
      if (neg) os << "-";
      first = false;
    } else {
      os << (neg ? " - " : " + ");
    }
    os << format_coeff(mag, hex_floats);
    for (int i = 0; i < p.dim(); ++i) {
      if (alpha[i] == 0) continue;
      os << " * " << var_name(i, n_x);
      if (alpha[i] > 1) os << "^" << alpha[i];
    }
  }
  return os.str();
}

Polynomial parse_polynomial(const std::string& text, int dim, int n_x) {
  Polynomial out(dim);
  Cursor c{text};
  if (c.done()) throw std::invalid_argument("empty polynomial text");
  bool neg = false;
  if (c.peek() == '+' || c.peek() == '-') {
    neg = (c.peek() == '-');
    ++c.pos;
  }
  while (true) {
    // one term: [number] factors..., where factors are var[^exp] joined by
    // '*' or juxtaposition; a bare number or bare product is also a term
    double coeff = 1.0;
    bool saw_number = false;
    if (c.peek() != 'x') {
      coeff = parse_number(c);
      saw_number = true;
    }
    MultiIndex alpha(dim, 0);
    bool saw_var = false;
    while (true) {
      char look = c.peek();
      if (look == '*') {
        ++c.pos;
        if (c.peek() != 'x') c.fail("expected variable after '*'");
      } else if (look != 'x') {
        break;
      }
      int index = parse_var(c, dim, n_x);
      int exp = 1;
      if (c.peek() == '^') {
        ++c.pos;
        c.skip_ws();
        std::size_t num_start = c.pos;
        while (c.pos < c.s.size() && std::isdigit(static_cast<unsigned char>(c.s[c.pos]))) ++c.pos;
        if (c.pos == num_start) c.fail("expected integer exponent");
        exp = std::atoi(c.s.substr(num_start, c.pos - num_start).c_str());
      }
      alpha[index] += exp;
      saw_var = true;
    }
    if (!saw_number && !saw_var) c.fail("expected term");
    out.add_term(std::move(alpha), neg ? -coeff : coeff);
    if (c.done()) break;
    char op = c.peek();
    if (op != '+' && op != '-') c.fail("expected '+' or '-' between terms");
    neg = (op == '-');
    ++c.pos;
    if (c.done()) c.fail("dangling operator");
  }
  return out;
}

std::uint64_t polynomial_hash(const Polynomial& p) {
  const std::string s = print_polynomial(p, p.dim(), /*hex_floats=*/true);
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace anhosc
