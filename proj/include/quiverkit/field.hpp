#pragma once

#include <gmpxx.h>

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "quiverkit/errors.hpp"

namespace quiverkit {

using Rat = mpq_class;
using Int = mpz_class;

enum class FieldKind { rationals, prime, number_field };

class FieldSpec;
using FieldPtr = std::shared_ptr<const FieldSpec>;

/// An exact coefficient field: Q, F_p (p prime), or Q[x]/(f) with f monic,
/// integer-coefficient, squarefree (certified by gcd(f, f') = 1 over Q).
///
/// Irreducibility of f is only checked heuristically (rational-root test,
/// complete for degree <= 3). A reducible squarefree f of degree >= 4 that
/// passes the heuristic yields an etale algebra, not a field; division by a
/// zero divisor then fails at use. `heuristically_irreducible()` reports the
/// heuristic's verdict so callers can flag etale coefficient rings.
class FieldSpec {
 public:
  static FieldPtr rationals();
  static FieldPtr prime(long p);
  static FieldPtr number_field(std::vector<Rat> monic_integer_poly);
  /// Parses the descriptor grammar `Q` | `F_<p>` | `Q[x]/(<monic integer poly in x>)`.
  /// Whitespace-insensitive.
  static FieldPtr parse(std::string_view text);

  FieldKind kind() const { return kind_; }
  long modulus() const { return modulus_; }
  /// Coefficients c0..cn of the minimal polynomial, cn = 1 (number fields only).
  const std::vector<Rat>& min_poly() const { return min_poly_; }
  std::size_t degree() const { return kind_ == FieldKind::number_field ? min_poly_.size() - 1 : 1; }
  long characteristic() const { return kind_ == FieldKind::prime ? modulus_ : 0; }
  bool heuristically_irreducible() const { return irreducible_heuristic_; }
  std::string description() const;
  bool same(const FieldSpec& other) const;

 private:
  FieldSpec() = default;
  FieldKind kind_ = FieldKind::rationals;
  long modulus_ = 0;
  std::vector<Rat> min_poly_;
  bool irreducible_heuristic_ = true;
};

/// Element of a FieldSpec in canonical form: reduced fraction, residue in
/// [0,p), or polynomial of degree < deg f with rational coefficients.
class Scalar {
 public:
  Scalar() = default;

  static Scalar zero(const FieldPtr& f);
  static Scalar one(const FieldPtr& f);
  static Scalar from_int(const FieldPtr& f, long n);
  static Scalar from_rat(const FieldPtr& f, const Rat& q);
  /// Number-field element from coefficients (low degree first); reduced mod f.
  static Scalar from_coeffs(const FieldPtr& f, std::vector<Rat> coeffs);
  /// Parses "p/q", "n", or (number fields) a polynomial in x.
  static Scalar parse(const FieldPtr& f, std::string_view text);

  const FieldPtr& field() const { return field_; }
  const std::vector<Rat>& coeffs() const { return c_; }
  bool is_zero() const;
  bool is_one() const;
  /// The rational value; requires kind() != number_field or a constant element.
  Rat rat() const;

  Scalar operator-() const;
  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  /// Multiplicative inverse; throws invalid_argument on zero or on a zero
  /// divisor of an etale (reducible-f) coefficient ring.
  Scalar inverse() const;

  std::string str() const;

 private:
  Scalar(FieldPtr f, std::vector<Rat> c) : field_(std::move(f)), c_(std::move(c)) {}
  void canonicalize();
  FieldPtr field_;
  std::vector<Rat> c_;
};

// Exact polynomial helpers over Q, coefficients low-degree first, used for
// number-field arithmetic and minimal polynomials. Trailing zeros trimmed.
namespace polyq {
std::vector<Rat> trim(std::vector<Rat> p);
std::vector<Rat> add(const std::vector<Rat>& a, const std::vector<Rat>& b);
std::vector<Rat> mul(const std::vector<Rat>& a, const std::vector<Rat>& b);
std::vector<Rat> scale(const std::vector<Rat>& a, const Rat& c);
/// Remainder of a modulo b (b nonzero).
std::vector<Rat> mod(std::vector<Rat> a, const std::vector<Rat>& b);
/// Monic gcd.
std::vector<Rat> gcd(std::vector<Rat> a, std::vector<Rat> b);
std::vector<Rat> derivative(const std::vector<Rat>& a);
/// Extended gcd: returns (g, s, t) with s*a + t*b = g, g monic.
struct Xgcd {
  std::vector<Rat> g, s, t;
};
Xgcd xgcd(std::vector<Rat> a, std::vector<Rat> b);
int degree(const std::vector<Rat>& p);  // -1 for zero
std::string str(const std::vector<Rat>& p, const std::string& var = "x");
}  // namespace polyq

bool is_prime_long(long n);

/// Rational roots of a nonzero integer-coefficient polynomial, found by the
/// rational-root test with trial-division factoring (complete at desk scale).
std::vector<Rat> rational_roots(const std::vector<Rat>& poly);

}  // namespace quiverkit
