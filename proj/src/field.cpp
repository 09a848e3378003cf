#include "quiverkit/field.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace quiverkit {

const char* errc_name(errc code) {
  switch (code) {
    case errc::non_prime_modulus: return "NonPrimeModulus";
    case errc::not_squarefree: return "NotSquarefree";
    case errc::malformed_descriptor: return "MalformedDescriptor";
    case errc::dimension_mismatch: return "DimensionMismatch";
    case errc::syntax_error: return "SyntaxError";
    case errc::unknown_vertex: return "UnknownVertex";
    case errc::non_composable_path: return "NonComposablePath";
    case errc::non_parallel_relation: return "NonParallelRelation";
    case errc::not_admissible_length_one: return "NotAdmissible(lengthOneTerm)";
    case errc::not_admissible_cap_exceeded: return "NotAdmissible(capExceeded)";
    case errc::positive_characteristic: return "PositiveCharacteristic";
    case errc::non_split_semisimple_quotient: return "NonSplitSemisimpleQuotient";
    case errc::radical_unavailable: return "RadicalUnavailable";
    case errc::center_not_split: return "CenterNotSplit";
    case errc::cap_too_small: return "CapTooSmall";
    case errc::inseparable_polynomial: return "InseparablePolynomial";
    case errc::dictionary_unavailable: return "DictionaryUnavailable";
    case errc::not_applicable: return "NotApplicable";
    case errc::budget_exceeded: return "BudgetExceeded";
    case errc::infinite_field_unsupported: return "InfiniteFieldUnsupported";
    case errc::depth_insufficient: return "DepthInsufficient";
    case errc::path_budget_exceeded: return "PathBudgetExceeded";
    case errc::invalid_argument: return "InvalidArgument";
  }
  return "UnknownError";
}

namespace polyq {

std::vector<Rat> trim(std::vector<Rat> p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
  return p;
}

int degree(const std::vector<Rat>& p) { return static_cast<int>(p.size()) - 1; }

std::vector<Rat> add(const std::vector<Rat>& a, const std::vector<Rat>& b) {
  std::vector<Rat> r(std::max(a.size(), b.size()), Rat(0));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return trim(std::move(r));
}

std::vector<Rat> mul(const std::vector<Rat>& a, const std::vector<Rat>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<Rat> r(a.size() + b.size() - 1, Rat(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return trim(std::move(r));
}

std::vector<Rat> scale(const std::vector<Rat>& a, const Rat& c) {
  if (c == 0) return {};
  std::vector<Rat> r(a);
  for (auto& x : r) x *= c;
  return r;
}

std::vector<Rat> mod(std::vector<Rat> a, const std::vector<Rat>& b) {
  a = trim(std::move(a));
  while (static_cast<int>(a.size()) >= static_cast<int>(b.size()) && !a.empty()) {
    Rat q = a.back() / b.back();
    std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= q * b[i];
    a = trim(std::move(a));
  }
  return a;
}

std::vector<Rat> gcd(std::vector<Rat> a, std::vector<Rat> b) {
  a = trim(std::move(a));
  b = trim(std::move(b));
  while (!b.empty()) {
    auto r = mod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty() && a.back() != 1) {
    Rat lead = a.back();
    for (auto& x : a) x /= lead;
  }
  return a;
}

std::vector<Rat> derivative(const std::vector<Rat>& a) {
  std::vector<Rat> r;
  for (std::size_t i = 1; i < a.size(); ++i) r.push_back(a[i] * Rat(static_cast<long>(i)));
  return trim(std::move(r));
}

Xgcd xgcd(std::vector<Rat> a, std::vector<Rat> b) {
  std::vector<Rat> r0 = trim(std::move(a)), r1 = trim(std::move(b));
  std::vector<Rat> s0 = {Rat(1)}, s1 = {}, t0 = {}, t1 = {Rat(1)};
  while (!r1.empty()) {
    // r0 = q*r1 + r
    std::vector<Rat> q;
    std::vector<Rat> rem = r0;
    while (static_cast<int>(rem.size()) >= static_cast<int>(r1.size()) && !rem.empty()) {
      Rat c = rem.back() / r1.back();
      std::size_t shift = rem.size() - r1.size();
      if (q.size() < shift + 1) q.resize(shift + 1, Rat(0));
      q[shift] += c;
      for (std::size_t i = 0; i < r1.size(); ++i) rem[shift + i] -= c * r1[i];
      rem = trim(std::move(rem));
    }
    auto next_s = add(s0, scale(mul(q, s1), Rat(-1)));
    auto next_t = add(t0, scale(mul(q, t1), Rat(-1)));
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(next_s);
    t0 = std::move(t1);
    t1 = std::move(next_t);
  }
  if (!r0.empty() && r0.back() != 1) {
    Rat lead = r0.back();
    for (auto& x : r0) x /= lead;
    for (auto& x : s0) x /= lead;
    for (auto& x : t0) x /= lead;
  }
  return {std::move(r0), std::move(s0), std::move(t0)};
}

std::string str(const std::vector<Rat>& p, const std::string& var) {
  if (p.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (int i = degree(p); i >= 0; --i) {
    const Rat& c = p[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    Rat a = c;
    if (first) {
      if (a < 0) {
        out << "-";
        a = -a;
      }
    } else {
      out << (a < 0 ? " - " : " + ");
      if (a < 0) a = -a;
    }
    if (i == 0 || a != 1) out << a.get_str();
    if (i > 0) {
      if (a != 1) out << "*";
      out << var;
      if (i > 1) out << "^" << i;
    }
    first = false;
  }
  return out.str();
}

}  // namespace polyq

bool is_prime_long(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

namespace {

std::vector<Int> divisors_of(Int n) {
  if (n < 0) n = -n;
  std::vector<Int> divs;
  if (n == 0) return divs;
  for (Int d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      divs.push_back(d);
      if (d * d != n) divs.push_back(n / d);
    }
  }
  return divs;
}

std::vector<Rat> eval_ready(const std::vector<Rat>& poly) {
  // Clears denominators so the rational-root test applies.
  Int lcm = 1;
  for (const auto& c : poly) {
    Int den = c.get_den();
    Int g;
    mpz_gcd(g.get_mpz_t(), lcm.get_mpz_t(), den.get_mpz_t());
    lcm = lcm / g * den;
  }
  std::vector<Rat> out;
  out.reserve(poly.size());
  for (const auto& c : poly) out.push_back(c * Rat(lcm));
  return out;
}

Rat eval_poly(const std::vector<Rat>& p, const Rat& x) {
  Rat acc(0);
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

}  // namespace

std::vector<Rat> rational_roots(const std::vector<Rat>& poly_in) {
  auto poly = polyq::trim(eval_ready(poly_in));
  std::vector<Rat> roots;
  if (poly.empty()) return roots;
  // Strip x | poly factors: root 0.
  std::size_t low = 0;
  while (low < poly.size() && poly[low] == 0) ++low;
  if (low > 0) {
    roots.emplace_back(0);
    poly.erase(poly.begin(), poly.begin() + static_cast<long>(low));
  }
  if (polyq::degree(poly) < 1) return roots;
  Int a0 = poly.front().get_num();
  Int an = poly.back().get_num();
  for (const Int& p : divisors_of(a0)) {
    for (const Int& q : divisors_of(an)) {
      for (int sign : {1, -1}) {
        Rat cand = Rat(p) / Rat(q) * sign;
        cand.canonicalize();
        if (std::find(roots.begin(), roots.end(), cand) != roots.end()) continue;
        if (eval_poly(poly, cand) == 0) roots.push_back(cand);
      }
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

FieldPtr FieldSpec::rationals() {
  auto f = std::shared_ptr<FieldSpec>(new FieldSpec());
  f->kind_ = FieldKind::rationals;
  return f;
}

FieldPtr FieldSpec::prime(long p) {
  if (!is_prime_long(p)) fail(errc::non_prime_modulus, "modulus " + std::to_string(p) + " is not prime");
  auto f = std::shared_ptr<FieldSpec>(new FieldSpec());
  f->kind_ = FieldKind::prime;
  f->modulus_ = p;
  return f;
}

FieldPtr FieldSpec::number_field(std::vector<Rat> poly) {
  poly = polyq::trim(std::move(poly));
  if (polyq::degree(poly) < 2) fail(errc::malformed_descriptor, "number-field polynomial must have degree >= 2");
  if (poly.back() != 1) fail(errc::malformed_descriptor, "number-field polynomial must be monic");
  for (const auto& c : poly)
    if (c.get_den() != 1) fail(errc::malformed_descriptor, "number-field polynomial must have integer coefficients");
  auto g = polyq::gcd(poly, polyq::derivative(poly));
  if (polyq::degree(g) != 0)
    fail(errc::not_squarefree, "gcd(f, f') = " + polyq::str(g) + " != 1");
  auto f = std::shared_ptr<FieldSpec>(new FieldSpec());
  f->kind_ = FieldKind::number_field;
  f->min_poly_ = std::move(poly);
  // Heuristic irreducibility: no rational root; complete for degree <= 3.
  f->irreducible_heuristic_ = rational_roots(f->min_poly_).empty();
  return f;
}

namespace {

// Parses a polynomial in x with integer coefficients, e.g. "x^2-2", "2*x+1".
std::vector<Rat> parse_int_poly(std::string_view s) {
  std::vector<Rat> coeffs;
  std::size_t i = 0;
  auto peek = [&]() -> char { return i < s.size() ? s[i] : '\0'; };
  bool expect_term = true;
  int sign = 1;
  if (peek() == '+' || peek() == '-') {
    sign = peek() == '-' ? -1 : 1;
    ++i;
  }
  while (i < s.size()) {
    // term: [int] [* ] [x [^int]]
    Int coeff = 1;
    bool have_digits = false;
    std::string digits;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      digits += peek();
      ++i;
      have_digits = true;
    }
    if (have_digits) coeff = Int(digits);
    if (peek() == '*') ++i;
    long exp = 0;
    if (peek() == 'x') {
      ++i;
      exp = 1;
      if (peek() == '^') {
        ++i;
        std::string e;
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
          e += peek();
          ++i;
        }
        if (e.empty()) fail(errc::malformed_descriptor, "missing exponent after '^'");
        exp = std::stol(e);
      }
    } else if (!have_digits) {
      fail(errc::malformed_descriptor, "expected term in polynomial");
    }
    if (coeffs.size() < static_cast<std::size_t>(exp + 1)) coeffs.resize(static_cast<std::size_t>(exp + 1), Rat(0));
    coeffs[static_cast<std::size_t>(exp)] += Rat(coeff) * sign;
    expect_term = false;
    if (i == s.size()) break;
    if (peek() == '+' || peek() == '-') {
      sign = peek() == '-' ? -1 : 1;
      ++i;
      expect_term = true;
    } else {
      fail(errc::malformed_descriptor, std::string("unexpected character '") + peek() + "' in polynomial");
    }
  }
  if (expect_term) fail(errc::malformed_descriptor, "dangling sign in polynomial");
  return polyq::trim(std::move(coeffs));
}

}  // namespace

FieldPtr FieldSpec::parse(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s == "Q") return rationals();
  if (s.rfind("F_", 0) == 0) {
    std::string digits = s.substr(2);
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
      fail(errc::malformed_descriptor, "expected F_<p> with integer p, got '" + s + "'");
    return prime(std::stol(digits));
  }
  if (s.rfind("Q[x]/(", 0) == 0 && s.back() == ')') {
    return number_field(parse_int_poly(std::string_view(s).substr(6, s.size() - 7)));
  }
  fail(errc::malformed_descriptor, "unrecognized field descriptor '" + std::string(text) + "'");
}

std::string FieldSpec::description() const {
  switch (kind_) {
    case FieldKind::rationals: return "Q";
    case FieldKind::prime: return "F_" + std::to_string(modulus_);
    case FieldKind::number_field: return "Q[x]/(" + polyq::str(min_poly_) + ")";
  }
  return "?";
}

bool FieldSpec::same(const FieldSpec& o) const {
  if (kind_ != o.kind_) return false;
  if (kind_ == FieldKind::prime) return modulus_ == o.modulus_;
  if (kind_ == FieldKind::number_field) return min_poly_ == o.min_poly_;
  return true;
}

// --- Scalar ---

Scalar Scalar::zero(const FieldPtr& f) {
  return Scalar(f, std::vector<Rat>(f->kind() == FieldKind::number_field ? f->degree() : 1, Rat(0)));
}

Scalar Scalar::one(const FieldPtr& f) {
  auto s = zero(f);
  s.c_[0] = 1;
  s.canonicalize();
  return s;
}

Scalar Scalar::from_int(const FieldPtr& f, long n) { return from_rat(f, Rat(n)); }

Scalar Scalar::from_rat(const FieldPtr& f, const Rat& q) {
  auto s = zero(f);
  s.c_[0] = q;
  s.c_[0].canonicalize();  // caller-supplied mpq values may carry unreduced num/den
  s.canonicalize();
  return s;
}

Scalar Scalar::from_coeffs(const FieldPtr& f, std::vector<Rat> coeffs) {
  if (f->kind() != FieldKind::number_field)
    fail(errc::invalid_argument, "from_coeffs requires a number field");
  for (auto& c : coeffs) c.canonicalize();
  auto rem = polyq::mod(std::move(coeffs), f->min_poly());
  rem.resize(f->degree(), Rat(0));
  return Scalar(f, std::move(rem));
}

bool Scalar::is_zero() const {
  for (const auto& x : c_)
    if (x != 0) return false;
  return true;
}

bool Scalar::is_one() const {
  if (c_.empty() || c_[0] != 1) return false;
  for (std::size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  return true;
}

Rat Scalar::rat() const {
  for (std::size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) fail(errc::invalid_argument, "scalar is not a rational constant");
  return c_[0];
}

void Scalar::canonicalize() {
  if (field_->kind() == FieldKind::prime) {
    // Residue in [0, p).
    Rat& v = c_[0];
    Int num = v.get_num();
    if (v.get_den() != 1) {
      Int den = v.get_den();
      Int p(field_->modulus());
      Int inv;
      if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t()) == 0)
        fail(errc::invalid_argument, "denominator not invertible mod p");
      num *= inv;
    }
    Int p(field_->modulus());
    Int r;
    mpz_mod(r.get_mpz_t(), num.get_mpz_t(), p.get_mpz_t());
    v = Rat(r);
  }
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  for (auto& x : r.c_) x = -x;
  r.canonicalize();
  return r;
}

Scalar Scalar::operator+(const Scalar& o) const {
  Scalar r = *this;
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] += o.c_[i];
  r.canonicalize();
  return r;
}

Scalar Scalar::operator-(const Scalar& o) const {
  Scalar r = *this;
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] -= o.c_[i];
  r.canonicalize();
  return r;
}

Scalar Scalar::operator*(const Scalar& o) const {
  if (field_->kind() == FieldKind::number_field) {
    auto prod = polyq::mod(polyq::mul(c_, o.c_), field_->min_poly());
    prod.resize(field_->degree(), Rat(0));
    return Scalar(field_, std::move(prod));
  }
  Scalar r(field_, {c_[0] * o.c_[0]});
  r.canonicalize();
  return r;
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inverse(); }

bool Scalar::operator==(const Scalar& o) const { return c_ == o.c_; }

Scalar Scalar::inverse() const {
  if (is_zero()) fail(errc::invalid_argument, "division by zero");
  switch (field_->kind()) {
    case FieldKind::rationals:
      return Scalar(field_, {Rat(1) / c_[0]});
    case FieldKind::prime: {
      Int p(field_->modulus());
      Int num = c_[0].get_num();
      Int inv;
      if (mpz_invert(inv.get_mpz_t(), num.get_mpz_t(), p.get_mpz_t()) == 0)
        fail(errc::invalid_argument, "element not invertible mod p");
      Scalar r(field_, {Rat(inv)});
      r.canonicalize();
      return r;
    }
    case FieldKind::number_field: {
      auto x = polyq::xgcd(polyq::trim(c_), field_->min_poly());
      if (polyq::degree(x.g) != 0)
        fail(errc::invalid_argument,
             "element is a zero divisor of the etale coefficient ring (f reducible)");
      auto inv = polyq::mod(x.s, field_->min_poly());
      inv.resize(field_->degree(), Rat(0));
      return Scalar(field_, std::move(inv));
    }
  }
  fail(errc::invalid_argument, "unreachable");
}

std::string Scalar::str() const {
  if (field_->kind() == FieldKind::number_field) return polyq::str(polyq::trim(c_));
  return c_[0].get_str();
}

Scalar Scalar::parse(const FieldPtr& f, std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) fail(errc::malformed_descriptor, "empty scalar literal");
  if (f->kind() == FieldKind::number_field && s.find('x') != std::string_view::npos) {
    // Reuse integer-poly parser; rational coefficients enter as a/b terms only
    // through from_coeffs, which the file formats do not need.
    return from_coeffs(f, parse_int_poly(s));
  }
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return from_rat(f, Rat(Int(s)));
    Rat q(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
    q.canonicalize();
    return from_rat(f, q);
  } catch (const std::invalid_argument&) {
    fail(errc::malformed_descriptor, "bad scalar literal '" + std::string(text) + "'");
  }
}

}  // namespace quiverkit
