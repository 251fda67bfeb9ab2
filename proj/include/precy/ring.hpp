#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "errors.hpp"

namespace precy {

/* Coefficient rings: arbitrary-precision rationals, or residues mod an odd
   or even prime p (p = 2 is the case the char-2 machinery cares about).
   A Ring is a small value object; scalars remember their ring and refuse to
   mix with scalars of another one. */

enum class Field : std::uint8_t { Q, Fp };

struct Ring {
  Field kind = Field::Q;
  std::uint64_t p = 0;  // prime modulus when kind == Fp

  static Ring rationals() { return Ring{Field::Q, 0}; }
  static Ring mod(std::uint64_t prime) {
    if (prime < 2) throw Malformed("modulus must be a prime >= 2");
    return Ring{Field::Fp, prime};
  }

  bool operator==(const Ring& o) const { return kind == o.kind && p == o.p; }
  bool operator!=(const Ring& o) const { return !(*this == o); }

  std::uint64_t characteristic() const { return kind == Field::Q ? 0 : p; }

  std::string name() const {
    if (kind == Field::Q) return "Q";
    return "F" + std::to_string(p);
  }
};

/* Exact scalar.  Rationals are kept canonical by GMP (reduced, positive
   denominator); residues are kept in [0, p).  No floating point anywhere. */

class Scalar {
 public:
  Scalar() : ring_(Ring::rationals()) {}
  explicit Scalar(const Ring& r) : ring_(r) {}

  static Scalar of(const Ring& r, long value) {
    Scalar s(r);
    if (r.kind == Field::Q) {
      s.q_ = value;
    } else {
      long m = value % static_cast<long>(r.p);
      if (m < 0) m += static_cast<long>(r.p);
      s.r_ = static_cast<std::uint64_t>(m);
    }
    return s;
  }

  static Scalar of(const Ring& r, const mpq_class& value) {
    Scalar s(r);
    if (r.kind == Field::Q) {
      // copy through the integer parts: handing a non-canonical mpq (negative
      // denominator) to mpq-level routines crashes this libgmp build
      if (sgn(value.get_den()) == 0) throw NotInvertible("zero denominator");
      s.q_.get_num() = value.get_num();
      s.q_.get_den() = value.get_den();
      s.q_.canonicalize();
    } else {
      // reduce num/den mod p; denominator must be invertible
      mpz_class num = value.get_num(), den = value.get_den();
      mpz_class pz(static_cast<unsigned long>(r.p));
      mpz_class nm = num % pz, dm = den % pz;
      if (nm < 0) nm += pz;
      if (dm < 0) dm += pz;
      Scalar d(r);
      d.r_ = dm.get_ui();
      if (d.r_ == 0) throw NotInvertible("denominator divisible by " + std::to_string(r.p));
      Scalar n(r);
      n.r_ = nm.get_ui();
      return n / d;
    }
    return s;
  }

  const Ring& ring() const { return ring_; }
  bool is_zero() const {
    return ring_.kind == Field::Q ? q_ == 0 : r_ == 0;
  }
  bool is_one() const {
    return ring_.kind == Field::Q ? q_ == 1 : r_ == 1;
  }

  /* rationals only: numerator/denominator access for serialization */
  const mpq_class& rational() const {
    if (ring_.kind != Field::Q) throw RingMismatch("rational() on residue scalar");
    return q_;
  }
  std::uint64_t residue() const {
    if (ring_.kind != Field::Fp) throw RingMismatch("residue() on rational scalar");
    return r_;
  }

  Scalar operator-() const {
    Scalar s(*this);
    if (ring_.kind == Field::Q)
      s.q_ = -q_;
    else if (r_ != 0)
      s.r_ = ring_.p - r_;
    return s;
  }

  Scalar& operator+=(const Scalar& o) {
    check(o);
    if (ring_.kind == Field::Q) {
      q_ += o.q_;
    } else {
      r_ += o.r_;
      if (r_ >= ring_.p) r_ -= ring_.p;
    }
    return *this;
  }
  Scalar& operator-=(const Scalar& o) { return *this += -o; }
  Scalar& operator*=(const Scalar& o) {
    check(o);
    if (ring_.kind == Field::Q) {
      q_ *= o.q_;
    } else {
      r_ = mulmod(r_, o.r_, ring_.p);
    }
    return *this;
  }
  Scalar& operator/=(const Scalar& o) { return *this *= o.inverse(); }

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  bool operator==(const Scalar& o) const {
    check(o);
    return ring_.kind == Field::Q ? q_ == o.q_ : r_ == o.r_;
  }
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  Scalar inverse() const {
    if (is_zero()) throw NotInvertible("inverse of zero in " + ring_.name());
    Scalar s(ring_);
    if (ring_.kind == Field::Q) {
      s.q_ = 1 / q_;
    } else {
      s.r_ = powmod(r_, ring_.p - 2, ring_.p);  // Fermat; p prime
    }
    return s;
  }

  /* canonical text form: "a/b" (b > 0, gcd 1) over Q, the residue over Fp */
  std::string str() const {
    if (ring_.kind == Field::Q) {
      if (q_.get_den() == 1) return q_.get_num().get_str();
      return q_.get_num().get_str() + "/" + q_.get_den().get_str();
    }
    return std::to_string(r_);
  }

 private:
  void check(const Scalar& o) const {
    if (ring_ != o.ring_)
      throw RingMismatch(ring_.name() + " vs " + o.ring_.name());
  }

  static std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
  }
  static std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
    std::uint64_t acc = 1 % p;
    while (e) {
      if (e & 1) acc = mulmod(acc, a, p);
      a = mulmod(a, a, p);
      e >>= 1;
    }
    return acc;
  }

  Ring ring_;
  mpq_class q_;
  std::uint64_t r_ = 0;
};

}  // namespace precy
