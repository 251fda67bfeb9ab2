#pragma once

#include <map>
#include <optional>
#include <string>

#include "ring.hpp"

namespace precy {

/* The truncated graded algebra H = R[t]/(t^{D+1}), deg t = n-1: the homology
   of the based loop space of S^n (as an associative algebra it is R[t] for
   every n >= 2).  Truncation is loud: a product leaving the stored exponent
   range throws, it is never dropped.  n = 1 (the Laurent case) is excluded;
   it would need truncation on both sides. */
struct LoopAlgebra {
  int n;  // deg t = n - 1
  int D;  // largest stored t-exponent
  Ring ring;

  LoopAlgebra(int n_, int D_, const Ring& ring_) : n(n_), D(D_), ring(ring_) {
    if (n < 2) throw Malformed("loop algebra needs n >= 2, got n = " + std::to_string(n));
    if (D < 4) throw Malformed("truncation bound too small: D = " + std::to_string(D));
  }

  int degree_of(int exponent) const { return exponent * (n - 1); }

  bool operator==(const LoopAlgebra& o) const {
    return n == o.n && D == o.D && ring == o.ring;
  }
  bool operator!=(const LoopAlgebra& o) const { return !(*this == o); }

  void check_same(const LoopAlgebra& o, const char* what) const {
    if (*this != o) throw RingMismatch(std::string(what) + ": mixed loop-algebra contexts");
  }

  /* Conservative truncation bound for a computation whose cochains have total
     arity <= A and whose chain inputs carry t-exponent <= E: monomial growth
     is bounded by E per leg plus the +3 contributed by t^3-type classes. */
  static int required_truncation(int max_exponent, int max_arity) {
    return max_exponent * max_arity + 3;
  }
};

class AlgebraElement {
 public:
  explicit AlgebraElement(const LoopAlgebra& ctx) : ctx_(ctx) {}

  static AlgebraElement monomial(const LoopAlgebra& ctx, int exponent, const Scalar& c) {
    AlgebraElement x(ctx);
    x.add_term(exponent, c);
    return x;
  }
  static AlgebraElement unit(const LoopAlgebra& ctx) {
    return monomial(ctx, 0, Scalar::of(ctx.ring, 1));
  }

  const LoopAlgebra& context() const { return ctx_; }
  const std::map<int, Scalar>& coefficients() const { return coeff_; }
  bool is_zero() const { return coeff_.empty(); }

  void add_term(int exponent, const Scalar& c) {
    if (exponent < 0) throw Malformed("negative t-exponent");
    if (exponent > ctx_.D)
      throw TruncationOverflow("t^" + std::to_string(exponent) + " with D = " + std::to_string(ctx_.D));
    if (c.is_zero()) return;
    auto it = coeff_.find(exponent);
    if (it == coeff_.end()) {
      coeff_.emplace(exponent, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) coeff_.erase(it);
    }
  }

  AlgebraElement& operator+=(const AlgebraElement& o) {
    ctx_.check_same(o.ctx_, "add");
    for (const auto& [e, c] : o.coeff_) add_term(e, c);
    return *this;
  }
  AlgebraElement operator+(const AlgebraElement& o) const {
    AlgebraElement r = *this;
    r += o;
    return r;
  }
  AlgebraElement operator-() const {
    AlgebraElement r = *this;
    for (auto& [e, c] : r.coeff_) c = -c;
    return r;
  }
  AlgebraElement operator-(const AlgebraElement& o) const { return *this + (-o); }

  AlgebraElement scaled(const Scalar& s) const {
    AlgebraElement r(ctx_);
    for (const auto& [e, c] : coeff_) r.add_term(e, s * c);
    return r;
  }

  bool operator==(const AlgebraElement& o) const {
    return ctx_ == o.ctx_ && coeff_ == o.coeff_;
  }
  bool operator!=(const AlgebraElement& o) const { return !(*this == o); }

  bool homogeneous() const { return coeff_.size() <= 1; }

  /* homological degree k(n-1) of a nonzero homogeneous element */
  int degree() const {
    if (coeff_.empty()) throw Malformed("degree of zero element");
    if (coeff_.size() > 1) throw Malformed("degree of inhomogeneous element");
    return ctx_.degree_of(coeff_.begin()->first);
  }

  std::string str() const {
    if (coeff_.empty()) return "0";
    std::string out;
    for (const auto& [e, c] : coeff_) {
      if (!out.empty()) out += " + ";
      out += c.str();
      if (e > 0) out += "*t^" + std::to_string(e);
    }
    return out;
  }

 private:
  LoopAlgebra ctx_;
  std::map<int, Scalar> coeff_;
};

/* polynomial product; throws TruncationOverflow if any resulting exponent
   would exceed D (never silently truncates) */
inline AlgebraElement mul(const AlgebraElement& a, const AlgebraElement& b) {
  a.context().check_same(b.context(), "mul");
  AlgebraElement r(a.context());
  for (const auto& [ea, ca] : a.coefficients())
    for (const auto& [eb, cb] : b.coefficients())
      r.add_term(ea + eb, ca * cb);  // add_term rejects ea+eb > D
  return r;
}

/* overflow as a value instead of an exception, for callers that branch on it */
inline std::optional<AlgebraElement> try_mul(const AlgebraElement& a, const AlgebraElement& b) {
  a.context().check_same(b.context(), "mul");
  for (const auto& [ea, ca] : a.coefficients())
    for (const auto& [eb, cb] : b.coefficients())
      if (ea + eb > a.context().D) return std::nullopt;
  return mul(a, b);
}

}  // namespace precy
