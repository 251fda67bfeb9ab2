#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "loop.hpp"

namespace precy {

/* An element of the l-output higher Hochschild cochain space of H, stored
   sparsely: values on monomial input tuples only.

   Grading conventions used throughout:
     - inputs live in sA: an input t^a counts with degree a(n-1) + 1;
     - outputs live in A (tensor factors): t^b counts with degree b(n-1);
     - hdeg(f) = sum of output degrees - sum of input degrees, the same for
       every entry (checked on insertion);
     - tau(entry) = (total output exponent) - (total input exponent), so
       hdeg = (n-1)*tau - N_in entry-wise;
     - weight(entry) = N_in + l - 2,  level = l - 1;
     - eps(f) = hdeg + (n-2)(l-1) + 1, the degree in the convolution Lie
       algebra (additive under the necklace product; the structure maps mu
       and alpha sit in eps = -1, gauges in eps = 0).

   The cap records completeness: entries with total input exponent <= cap
   are exhaustively stored, larger ones are not represented at all.
   Operations compute the cap of their result from the caps of the operands
   and refuse windows they cannot fill (loudly). */

using InKey = std::vector<std::vector<int>>;  // per-sector input exponents
using OutKey = std::vector<int>;              // one exponent per output

inline int total(const OutKey& k) { return std::accumulate(k.begin(), k.end(), 0); }
inline int total(const InKey& k) {
  int t = 0;
  for (const auto& sector : k) t += total(sector);
  return t;
}
inline int arity(const InKey& k) {
  int t = 0;
  for (const auto& sector : k) t += static_cast<int>(sector.size());
  return t;
}

/* The residual sign freedom of the Koszul calculus.  The defaults are the
   unique choice (up to rescaling cochains by their degree, which changes
   nothing observable) under which the property suite holds: d^2 = 0,
   products of isotypic cochains stay isotypic, the bracket satisfies the
   graded Jacobi identity, and the l = 1 corner reduces to the classical
   Gerstenhaber conventions. */
struct SignRules {
  /* whether a moving output t^b counts with degree b(n-1)+1 (as a leg of the
     suspended word) or b(n-1) in block transpositions */
  bool outputs_suspended = true;
  /* rotation sign: false = the (sector, output) pair moves as one block past
     the rest of the boundary word; true = inputs and outputs permute in
     their own tensor factors separately */
  bool rotate_split = false;
};

class HigherCochain {
 public:
  HigherCochain(const LoopAlgebra& ctx, int ell, int hdeg)
      : ctx_(ctx), ell_(ell), hdeg_(hdeg), cap_(ctx.D) {
    if (ell < 1) throw Malformed("cochain needs at least one output");
  }

  const LoopAlgebra& context() const { return ctx_; }
  int ell() const { return ell_; }
  int hdeg() const { return hdeg_; }
  int eps() const { return hdeg_ + (ctx_.n - 2) * (ell_ - 1) + 1; }
  int cap() const { return cap_; }
  void set_cap(int cap) { cap_ = cap; }

  bool is_zero() const { return val_.empty(); }
  const std::map<InKey, std::map<OutKey, Scalar>>& entries() const { return val_; }

  int in_leg_degree(int a) const { return a * (ctx_.n - 1) + 1; }
  int out_leg_degree(int b, const SignRules& rules) const {
    return b * (ctx_.n - 1) + (rules.outputs_suspended ? 1 : 0);
  }

  void add_entry(const InKey& in, const OutKey& out, const Scalar& c) {
    if (c.is_zero()) return;
    validate(in, out);
    if (total(in) > cap_)
      throw WindowExceeded("entry with input exponent total " + std::to_string(total(in)) +
                           " beyond completeness cap " + std::to_string(cap_));
    auto& slot = val_[in][out];
    if (slot.ring() != ctx_.ring) slot = Scalar(ctx_.ring);
    slot += c;
    if (slot.is_zero()) {
      val_[in].erase(out);
      if (val_[in].empty()) val_.erase(in);
    }
  }

  HigherCochain& operator+=(const HigherCochain& o) {
    check_compatible(o);
    cap_ = std::min(cap_, o.cap_);
    for (const auto& [in, outs] : o.val_)
      for (const auto& [out, c] : outs)
        if (total(in) <= cap_) add_entry(in, out, c);
    prune(cap_);
    return *this;
  }
  HigherCochain operator+(const HigherCochain& o) const {
    HigherCochain r = *this;
    r += o;
    return r;
  }
  HigherCochain operator-() const { return scaled(-Scalar::of(ctx_.ring, 1)); }
  HigherCochain operator-(const HigherCochain& o) const { return *this + (-o); }

  HigherCochain scaled(const Scalar& s) const {
    HigherCochain r(ctx_, ell_, hdeg_);
    r.cap_ = cap_;
    if (s.is_zero()) return r;
    for (const auto& [in, outs] : val_)
      for (const auto& [out, c] : outs) r.add_entry(in, out, s * c);
    return r;
  }

  bool operator==(const HigherCochain& o) const {
    return ctx_ == o.ctx_ && ell_ == o.ell_ && hdeg_ == o.hdeg_ && val_ == o.val_;
  }
  bool operator!=(const HigherCochain& o) const { return !(*this == o); }

  /* discard entries with input total above the given cap, and record it */
  void prune(int cap) {
    cap_ = cap;
    for (auto it = val_.begin(); it != val_.end();) {
      if (total(it->first) > cap)
        it = val_.erase(it);
      else
        ++it;
    }
  }

  int max_arity() const {
    int m = 0;
    for (const auto& [in, outs] : val_) m = std::max(m, arity(in));
    return m;
  }
  /* largest tau among stored entries, clipped at zero (used for truncation
     bounds, where only overshoot matters) */
  int tau_upper() const {
    int m = 0;
    for (const auto& [in, outs] : val_) m = std::max(m, total(outs.begin()->first) - total(in));
    return m;
  }

  /* cyclic generator: the first output (with its preceding input sector)
     moves to the end; Koszul block sign from the legs that trade places */
  HigherCochain rotate(const SignRules& rules = SignRules{}) const {
    HigherCochain r(ctx_, ell_, hdeg_);
    r.cap_ = cap_;
    for (const auto& [in, outs] : val_) {
      InKey rin(in.begin() + 1, in.end());
      rin.push_back(in.front());
      int moved_in = 0, rest_in = 0;
      for (int a : in.front()) moved_in += in_leg_degree(a);
      for (std::size_t s = 1; s < in.size(); s++)
        for (int a : in[s]) rest_in += in_leg_degree(a);
      for (const auto& [out, c] : outs) {
        OutKey rout(out.begin() + 1, out.end());
        rout.push_back(out.front());
        int rest_out = 0;
        for (std::size_t s = 1; s < out.size(); s++) rest_out += out_leg_degree(out[s], rules);
        int o0 = out_leg_degree(out.front(), rules);
        int sgn;
        if (rules.rotate_split)
          sgn = (moved_in & rest_in & 1) ^ (o0 & rest_out & 1);
        else
          sgn = ((moved_in + o0) & (rest_in + rest_out) & 1);
        Scalar v = sgn ? -c : c;
        r.add_entry(rin, rout, v);
      }
    }
    return r;
  }

  /* the rotation eigenvalue picking out the tangent-complex component */
  int isotypic_sign() const {
    return ((ctx_.n - 1) * (ell_ - 1)) % 2 == 0 ? 1 : -1;
  }

  bool isotypic_check(const SignRules& rules = SignRules{}) const {
    HigherCochain r = rotate(rules);
    return r == (isotypic_sign() == 1 ? *this : -*this);
  }

  /* average over the cyclic group with the isotypic eigenvalue; projector
     onto the isotypic subspace when 1/l exists in the ring */
  HigherCochain symmetrize(const SignRules& rules = SignRules{}) const {
    Scalar inv_l(ctx_.ring);
    try {
      inv_l = Scalar::of(ctx_.ring, ell_).inverse();
    } catch (const NotInvertible&) {
      throw FieldUnsupported("symmetrize over " + ctx_.ring.name() + " with l = " +
                             std::to_string(ell_) + " (no 1/l)");
    }
    HigherCochain acc = *this;
    HigherCochain pow = *this;
    int sign = isotypic_sign();
    int s = 1;
    for (int i = 1; i < ell_; i++) {
      pow = pow.rotate(rules);
      s *= sign;  // eigenvalue^{-i} = eigenvalue^{i} for a sign
      acc += (s == 1 ? pow : -pow);
    }
    return acc.scaled(inv_l);
  }

  /* canonical JSON text: sorted keys, canonical scalar strings */
  std::string json_str() const {
    std::string s = "{\"ell\":" + std::to_string(ell_) + ",\"degree\":" + std::to_string(hdeg_) +
                    ",\"components\":[";
    // group entries by profile, in sorted profile order
    std::map<std::vector<int>, std::vector<std::pair<InKey, std::pair<OutKey, Scalar>>>> by_profile;
    for (const auto& [in, outs] : val_) {
      std::vector<int> profile;
      for (const auto& sector : in) profile.push_back(static_cast<int>(sector.size()));
      for (const auto& [out, c] : outs) by_profile[profile].push_back({in, {out, c}});
    }
    bool first_p = true;
    for (const auto& [profile, items] : by_profile) {
      if (!first_p) s += ",";
      first_p = false;
      s += "{\"profile\":" + list_str(profile) + ",\"entries\":[";
      bool first_e = true;
      for (const auto& [in, oc] : items) {
        if (!first_e) s += ",";
        first_e = false;
        s += "{\"inputs\":[";
        for (std::size_t i = 0; i < in.size(); i++) {
          if (i) s += ",";
          s += list_str(in[i]);
        }
        s += "],\"output_tensor\":" + list_str(oc.first) + ",\"coeff\":\"" + oc.second.str() +
             "\"}";
      }
      s += "]}";
    }
    s += "]}";
    return s;
  }

 private:
  static std::string list_str(const std::vector<int>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); i++) {
      if (i) s += ",";
      s += std::to_string(v[i]);
    }
    return s + "]";
  }

  void validate(const InKey& in, const OutKey& out) const {
    if (static_cast<int>(in.size()) != ell_ || static_cast<int>(out.size()) != ell_)
      throw Malformed("entry sector/output count does not match l = " + std::to_string(ell_));
    for (const auto& sector : in)
      for (int a : sector)
        if (a < 0 || a > ctx_.D) throw TruncationOverflow("input exponent " + std::to_string(a));
    for (int b : out)
      if (b < 0 || b > ctx_.D) throw TruncationOverflow("output exponent " + std::to_string(b));
    int tau = total(out) - total(in);
    if ((ctx_.n - 1) * tau - arity(in) != hdeg_)
      throw Malformed("entry of homological degree " +
                      std::to_string((ctx_.n - 1) * tau - arity(in)) +
                      " in a cochain of degree " + std::to_string(hdeg_));
  }

  void check_compatible(const HigherCochain& o) const {
    ctx_.check_same(o.ctx_, "cochain");
    if (ell_ != o.ell_ || hdeg_ != o.hdeg_)
      throw Malformed("cochain sum across (l, degree) = (" + std::to_string(ell_) + "," +
                      std::to_string(hdeg_) + ") vs (" + std::to_string(o.ell_) + "," +
                      std::to_string(o.hdeg_) + ")");
  }

  LoopAlgebra ctx_;
  int ell_;
  int hdeg_;
  int cap_;
  std::map<InKey, std::map<OutKey, Scalar>> val_;
};

}  // namespace precy
