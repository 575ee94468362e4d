#include "udg/poly.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <sstream>

namespace udg {

Monomial Monomial::var(int index, uint32_t exp) {
  Monomial m;
  if (exp > 0) {
    m.e_.assign(index + 1, 0);
    m.e_[index] = exp;
  }
  return m;
}

uint32_t Monomial::exp(int index) const {
  if (index < 0 || index >= static_cast<int>(e_.size())) return 0;
  return e_[index];
}

int Monomial::total_degree() const {
  return std::accumulate(e_.begin(), e_.end(), 0u);
}

bool Monomial::divides(const Monomial& m) const {
  if (e_.size() > m.e_.size()) return false;
  for (size_t i = 0; i < e_.size(); ++i)
    if (e_[i] > m.e_[i]) return false;
  return true;
}

Monomial Monomial::operator*(const Monomial& m) const {
  Monomial out;
  out.e_.resize(std::max(e_.size(), m.e_.size()), 0);
  for (size_t i = 0; i < out.e_.size(); ++i) out.e_[i] = exp(i) + m.exp(i);
  return out;
}

Monomial Monomial::div(const Monomial& m) const {
  Monomial out;
  out.e_.resize(e_.size(), 0);
  for (size_t i = 0; i < e_.size(); ++i) {
    uint32_t sub = m.exp(i);
    if (sub > e_[i]) throw std::logic_error("monomial division not exact");
    out.e_[i] = e_[i] - sub;
  }
  out.trim();
  return out;
}

Monomial Monomial::lcm(const Monomial& a, const Monomial& b) {
  Monomial out;
  out.e_.resize(std::max(a.e_.size(), b.e_.size()), 0);
  for (size_t i = 0; i < out.e_.size(); ++i) out.e_[i] = std::max(a.exp(i), b.exp(i));
  out.trim();
  return out;
}

std::strong_ordering Monomial::operator<=>(const Monomial& m) const {
  size_t n = std::max(e_.size(), m.e_.size());
  for (size_t i = 0; i < n; ++i) {
    uint32_t a = exp(i), b = m.exp(i);
    if (a != b) return a <=> b;
  }
  return std::strong_ordering::equal;
}

void Monomial::trim() {
  while (!e_.empty() && e_.back() == 0) e_.pop_back();
}

Polynomial Polynomial::constant(Rational c) {
  Polynomial p;
  p.add_term(Monomial::one(), c);
  return p;
}

Polynomial Polynomial::variable(int index) {
  Polynomial p;
  p.add_term(Monomial::var(index), 1);
  return p;
}

Polynomial Polynomial::term(Monomial m, Rational c) {
  Polynomial p;
  p.add_term(std::move(m), std::move(c));
  return p;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

int Polynomial::total_degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, m.total_degree());
  return d;
}

int Polynomial::max_var() const {
  int mv = -1;
  for (const auto& [m, c] : terms_) mv = std::max(mv, m.max_var());
  return mv;
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Polynomial Polynomial::operator+(const Polynomial& p) const {
  Polynomial out = *this;
  for (const auto& [m, c] : p.terms_) out.add_term(m, c);
  return out;
}

Polynomial Polynomial::operator-(const Polynomial& p) const {
  Polynomial out = *this;
  for (const auto& [m, c] : p.terms_) out.add_term(m, -c);
  return out;
}

Polynomial Polynomial::operator-() const {
  Polynomial out;
  for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
  return out;
}

Polynomial Polynomial::scaled(const Rational& c) const {
  Polynomial out;
  if (c == 0) return out;
  for (const auto& [m, k] : terms_) out.terms_.emplace(m, k * c);
  return out;
}

Polynomial Polynomial::mul_term(const Monomial& m, const Rational& c) const {
  Polynomial out;
  if (c == 0) return out;
  for (const auto& [mm, k] : terms_) out.terms_.emplace(mm * m, k * c);
  return out;
}

Polynomial Polynomial::operator*(const Polynomial& p) const {
  Polynomial out;
  for (const auto& [m, c] : terms_) {
    for (const auto& [mm, cc] : p.terms_) out.add_term(m * mm, c * cc);
  }
  return out;
}

Polynomial Polynomial::substituted(const std::vector<std::pair<int, Rational>>& values) const {
  Polynomial out;
  for (const auto& [m, c] : terms_) {
    Rational coef = c;
    Monomial rest = Monomial::one();
    for (int v = 0; v <= m.max_var(); ++v) {
      uint32_t e = m.exp(v);
      if (e == 0) continue;
      auto it = std::find_if(values.begin(), values.end(),
                             [v](const auto& kv) { return kv.first == v; });
      if (it == values.end()) {
        rest = rest * Monomial::var(v, e);
      } else {
        Rational pw = 1;
        for (uint32_t k = 0; k < e; ++k) pw *= it->second;
        coef *= pw;
      }
    }
    out.add_term(rest, coef);
  }
  return out;
}

double Polynomial::eval(std::span<const double> point) const {
  double acc = 0.0;
  for (const auto& [m, c] : terms_) {
    double t = to_double(c);
    for (int v = 0; v <= m.max_var(); ++v)
      for (uint32_t k = 0; k < m.exp(v); ++k) t *= point[v];
    acc += t;
  }
  return acc;
}

int VarTable::index_of(std::string_view name) const {
  for (int i = 0; i < size(); ++i)
    if (vars[i].name == name) return i;
  return -1;
}

int VarTable::add(VarInfo info) {
  if (index_of(info.name) >= 0)
    throw std::invalid_argument("duplicate variable name '" + info.name + "'");
  vars.push_back(std::move(info));
  return size() - 1;
}

MonomialOrder MonomialOrder::lex(int nvars) {
  MonomialOrder o;
  o.kind = Kind::Lex;
  o.prec.resize(nvars);
  std::iota(o.prec.begin(), o.prec.end(), 0);
  return o;
}

MonomialOrder MonomialOrder::grevlex(int nvars) {
  MonomialOrder o = lex(nvars);
  o.kind = Kind::Grevlex;
  return o;
}

MonomialOrder MonomialOrder::with_precedence(Kind kind, std::vector<int> prec) {
  std::vector<char> seen(prec.size(), 0);
  for (int v : prec) {
    if (v < 0 || v >= static_cast<int>(prec.size()) || seen[v])
      throw std::invalid_argument("precedence is not a permutation");
    seen[v] = 1;
  }
  MonomialOrder o;
  o.kind = kind;
  o.prec = std::move(prec);
  return o;
}

int MonomialOrder::compare(const Monomial& a, const Monomial& b) const {
  if (a.max_var() >= nvars() || b.max_var() >= nvars())
    throw std::logic_error("monomial references a variable outside the order");
  if (kind == Kind::Lex) {
    for (int k = 0; k < nvars(); ++k) {
      uint32_t ea = a.exp(prec[k]), eb = b.exp(prec[k]);
      if (ea != eb) return ea < eb ? -1 : 1;
    }
    return 0;
  }
  int da = a.total_degree(), db = b.total_degree();
  if (da != db) return da < db ? -1 : 1;
  // Graded reverse: scan least significant variables first; the monomial
  // with the smaller exponent at the first difference is the larger one.
  for (int k = nvars() - 1; k >= 0; --k) {
    uint32_t ea = a.exp(prec[k]), eb = b.exp(prec[k]);
    if (ea != eb) return ea < eb ? 1 : -1;
  }
  return 0;
}

namespace {

std::string monomial_to_string(const Monomial& m, const VarTable& vars) {
  std::ostringstream out;
  bool first = true;
  for (int v = 0; v <= m.max_var(); ++v) {
    uint32_t e = m.exp(v);
    if (e == 0) continue;
    if (!first) out << "*";
    first = false;
    out << vars.vars.at(v).name;
    if (e > 1) out << "^" << e;
  }
  return out.str();
}

}  // namespace

std::string poly_to_string(const Polynomial& p, const VarTable& vars,
                           const MonomialOrder* order) {
  if (p.is_zero()) return "0";
  MonomialOrder fallback = MonomialOrder::lex(std::max(p.max_var() + 1, vars.size()));
  const MonomialOrder& ord = order ? *order : fallback;

  std::vector<std::pair<Monomial, Rational>> terms(p.terms().begin(), p.terms().end());
  std::sort(terms.begin(), terms.end(),
            [&](const auto& a, const auto& b) { return ord.compare(a.first, b.first) > 0; });

  // Integer-cleared primitive form with a positive leading coefficient.
  BigInt denLcm = 1;
  for (const auto& [m, c] : terms) denLcm = lcm(denLcm, denominator(c));
  std::vector<BigInt> ints;
  BigInt g = 0;
  for (const auto& [m, c] : terms) {
    BigInt k = numerator(c) * (denLcm / denominator(c));
    ints.push_back(k);
    g = gcd(g, k);
  }
  if (g == 0) g = 1;
  if (ints.front() < 0) g = -g;

  std::ostringstream out;
  for (size_t i = 0; i < terms.size(); ++i) {
    BigInt k = ints[i] / g;
    bool neg = k < 0;
    BigInt mag = neg ? BigInt(-k) : k;
    if (i == 0) {
      if (neg) out << "-";
    } else {
      out << (neg ? " - " : " + ");
    }
    std::string mono = monomial_to_string(terms[i].first, vars);
    if (mono.empty()) {
      out << mag.str();
    } else {
      if (mag != 1) out << mag.str() << "*";
      out << mono;
    }
  }
  return out.str();
}

namespace {

struct PolyParser {
  std::string_view text;
  size_t pos = 0;
  VarTable* mutableVars;
  const VarTable* vars;
  bool autoRegister;

  void skip() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  bool eat(char c) {
    skip();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& msg) { throw PolyParseError(msg, pos); }

  BigInt integer() {
    skip();
    size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start) fail("expected integer");
    return BigInt(std::string(text.substr(start, pos - start)));
  }

  Rational rationalValue() {
    BigInt num = integer();
    skip();
    if (pos < text.size() && text[pos] == '/') {
      ++pos;
      BigInt den = integer();
      if (den == 0) fail("zero denominator");
      return Rational(num, den);
    }
    return Rational(num);
  }

  int identifier() {
    skip();
    size_t start = pos;
    if (pos >= text.size() ||
        !(std::isalpha(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
      fail("expected variable name");
    while (pos < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
      ++pos;
    std::string name(text.substr(start, pos - start));
    int idx = vars->index_of(name);
    if (idx < 0) {
      if (!autoRegister) {
        pos = start;
        fail("unknown variable '" + name + "'");
      }
      idx = mutableVars->add(VarInfo{name, -1, 0, false, "parsed"});
    }
    return idx;
  }

  // factor := rational | ident ('^' int)?
  Polynomial factor() {
    skip();
    if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
      return Polynomial::constant(rationalValue());
    int v = identifier();
    uint32_t e = 1;
    skip();
    if (pos < text.size() && text[pos] == '^') {
      ++pos;
      BigInt k = integer();
      if (k < 1 || k > 1000000) fail("exponent out of range");
      e = k.convert_to<uint32_t>();
    }
    return Polynomial::term(Monomial::var(v, e), 1);
  }

  Polynomial termExpr() {
    Polynomial p = factor();
    while (eat('*')) p = p * factor();
    return p;
  }

  Polynomial sum() {
    skip();
    bool neg = false;
    if (eat('-'))
      neg = true;
    else
      eat('+');
    Polynomial p = termExpr();
    if (neg) p = -p;
    for (;;) {
      skip();
      if (pos >= text.size() || (text[pos] != '+' && text[pos] != '-')) break;
      bool minus = text[pos] == '-';
      ++pos;
      Polynomial q = termExpr();
      p = minus ? p - q : p + q;
    }
    return p;
  }

  Polynomial parse() {
    Polynomial lhs = sum();
    skip();
    if (pos < text.size() && text[pos] == '=') {
      ++pos;
      Polynomial rhs = sum();
      lhs = lhs - rhs;
      skip();
    }
    if (pos != text.size()) fail("trailing characters");
    return lhs;
  }
};

}  // namespace

Polynomial parse_polynomial(std::string_view text, const VarTable& vars) {
  PolyParser p{text, 0, nullptr, &vars, false};
  return p.parse();
}

Polynomial parse_polynomial(std::string_view text, VarTable& vars, bool autoRegister) {
  PolyParser p{text, 0, &vars, &vars, autoRegister};
  return p.parse();
}

}  // namespace udg
