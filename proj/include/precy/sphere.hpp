#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "necklace.hpp"
#include "sparse.hpp"

namespace precy {

/* ------------------------------------------------------------------ */
/* Hochschild chains of the truncated polynomial algebra               */
/* ------------------------------------------------------------------ */

/* A normalized chain is a combination of words a0[a1|...|ak]: a plain
   algebra element a0 = t^{a0} followed by k bar letters t^{ai} with ai >= 1.
   The homological degree of a word is deg(a0) + sum(deg(ai) + 1), with
   deg(t^a) = a(n-1); each chain is homogeneous.  Words keep their total
   exponent under the boundary, so requiring the total to stay within the
   truncation keeps the complex exactly stable. */

using Word = std::pair<int, std::vector<int>>;

inline int word_degree(const LoopAlgebra& ctx, const Word& w) {
  int d = w.first * (ctx.n - 1);
  for (int a : w.second) d += a * (ctx.n - 1) + 1;
  return d;
}

inline int word_total(const Word& w) {
  int t = w.first;
  for (int a : w.second) t += a;
  return t;
}

class HochschildChain {
 public:
  HochschildChain(const LoopAlgebra& ctx, int degree) : ctx_(ctx), degree_(degree) {}

  const LoopAlgebra& context() const { return ctx_; }
  int degree() const { return degree_; }
  bool is_zero() const { return val_.empty(); }
  const std::map<Word, Scalar>& words() const { return val_; }

  void add_word(int a0, std::vector<int> letters, const Scalar& c) {
    if (c.is_zero()) return;
    Word w{a0, std::move(letters)};
    if (a0 < 0) throw Malformed("negative base exponent");
    for (int a : w.second)
      if (a < 1) throw Malformed("bar letter t^" + std::to_string(a) + " not in the augmentation ideal");
    if (word_total(w) > ctx_.D)
      throw TruncationOverflow("word with exponent total " + std::to_string(word_total(w)));
    if (word_degree(ctx_, w) != degree_)
      throw Malformed("word of degree " + std::to_string(word_degree(ctx_, w)) +
                      " in a chain of degree " + std::to_string(degree_));
    auto it = val_.find(w);
    if (it == val_.end()) {
      val_.emplace(std::move(w), c);
    } else {
      it->second += c;
      if (it->second.is_zero()) val_.erase(it);
    }
  }

  HochschildChain scaled(const Scalar& s) const {
    HochschildChain r(ctx_, degree_);
    if (s.is_zero()) return r;
    for (const auto& [w, c] : val_) r.val_.emplace(w, c * s);
    return r;
  }
  HochschildChain operator-() const { return scaled(-Scalar::of(ctx_.ring, 1)); }
  HochschildChain& operator+=(const HochschildChain& o) {
    if (degree_ != o.degree_) throw Malformed("adding chains of different degrees");
    for (const auto& [w, c] : o.val_) add_word(w.first, w.second, c);
    return *this;
  }
  HochschildChain operator+(const HochschildChain& o) const {
    HochschildChain r = *this;
    r += o;
    return r;
  }
  HochschildChain operator-(const HochschildChain& o) const { return *this + (-o); }
  bool operator==(const HochschildChain& o) const { return (*this - o).is_zero(); }
  bool operator!=(const HochschildChain& o) const { return !(*this == o); }

  /* Boundary of the normalized cyclic bar complex.  Position 0 carries a0
     (degree deg(a0)), position r >= 1 carries the suspended letter
     (degree deg(ar) + 1).  A letter merge at position i crosses everything
     before it and picks up the bar sign of its left factor; the first face
     carries -(-1)^{deg a0}, and the wrap face carries the suspended last
     letter around the whole word.  With these signs the boundary squares
     to zero and t^k[t] is a cycle exactly when k(n-1) is even. */
  HochschildChain boundary() const {
    HochschildChain r(ctx_, degree_ - 1);
    for (const auto& [w, c] : val_) {
      const auto& [a0, letters] = w;
      int k = static_cast<int>(letters.size());
      if (k == 0) continue;
      std::vector<int> pos_deg(k + 1);
      pos_deg[0] = a0 * (ctx_.n - 1);
      for (int rr = 1; rr <= k; rr++) pos_deg[rr] = letters[rr - 1] * (ctx_.n - 1) + 1;

      int prefix = 0;  // parity of degrees before the merge point
      for (int i = 0; i < k; i++) {
        int na0 = a0;
        std::vector<int> nl;
        nl.reserve(k - 1);
        int sgn;
        if (i == 0) {
          na0 = a0 + letters[0];
          nl.assign(letters.begin() + 1, letters.end());
          sgn = pos_deg[0] + 1;
        } else {
          nl.assign(letters.begin(), letters.end());
          nl[i - 1] += nl[i];
          nl.erase(nl.begin() + i);
          sgn = prefix + letters[i - 1] * (ctx_.n - 1);
        }
        r.add_word(na0, std::move(nl), (sgn & 1) ? -c : c);
        prefix += pos_deg[i];
      }
      // wrap: the last letter comes around and multiplies into a0
      int sgn = pos_deg[k] * prefix;
      std::vector<int> nl(letters.begin(), letters.end() - 1);
      r.add_word(a0 + letters[k - 1], std::move(nl), (sgn & 1) ? -c : c);
    }
    return r;
  }

 private:
  LoopAlgebra ctx_;
  int degree_;
  std::map<Word, Scalar> val_;
};

/* ------------------------------------------------------------------ */
/* Entry enumeration for linear solves over cochain spaces             */
/* ------------------------------------------------------------------ */

/* All (inputs, outputs) keys of sector count l, homological degree hdeg and
   total input count n_in, with input exponent total at most tin_max and every
   exponent within the truncation.  Deterministic order (lexicographic in the
   key), suitable for indexing matrix columns. */
inline std::vector<std::pair<InKey, OutKey>> enumerate_entries(const LoopAlgebra& ctx, int ell,
                                                               int hdeg, int n_in, int tin_max) {
  std::vector<std::pair<InKey, OutKey>> out;
  if (n_in < 0) return out;
  int num = hdeg + n_in;
  if (num % (ctx.n - 1) != 0) return out;
  int tau = num / (ctx.n - 1);

  // enumerate arity profiles recursively
  std::vector<InKey> profiles;
  InKey cur(ell);
  auto rec_profile = [&](auto&& self, int sector, int left) -> void {
    if (sector == ell) {
      if (left == 0) profiles.push_back(cur);
      return;
    }
    for (int take = 0; take <= left; take++) {
      cur[sector].assign(take, 0);
      self(self, sector + 1, left - take);
    }
    cur[sector].clear();
  };
  rec_profile(rec_profile, 0, n_in);

  for (const auto& profile : profiles) {
    // fill the input slots with exponents, then the outputs
    std::vector<std::pair<int, int>> slots;  // (sector, index)
    for (int s = 0; s < ell; s++)
      for (std::size_t i = 0; i < profile[s].size(); i++) slots.push_back({s, static_cast<int>(i)});
    InKey in = profile;
    auto rec_in = [&](auto&& self, std::size_t slot, int tin) -> void {
      if (slot == slots.size()) {
        int tout = tin + tau;
        if (tout < 0) return;
        // outputs: all l-tuples with the given total, exponents <= D
        OutKey outk(ell, 0);
        auto rec_out = [&](auto&& oself, int sector, int left) -> void {
          if (sector == ell - 1) {
            if (left <= ctx.D) {
              outk[sector] = left;
              out.emplace_back(in, outk);
            }
            return;
          }
          for (int b = 0; b <= std::min(left, ctx.D); b++) {
            outk[sector] = b;
            oself(oself, sector + 1, left - b);
          }
        };
        rec_out(rec_out, 0, tout);
        return;
      }
      auto [s, i] = slots[slot];
      for (int a = 0; a <= std::min(ctx.D, tin_max - tin); a++) {
        in[s][i] = a;
        self(self, slot + 1, tin + a);
      }
    };
    rec_in(rec_in, 0, 0);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/* pack a cochain into a sparse vector over an entry index */
inline SparseVec cochain_to_vec(const HigherCochain& c,
                                const std::map<std::pair<InKey, OutKey>, int>& index) {
  SparseVec v;
  for (const auto& [in, outs] : c.entries())
    for (const auto& [outk, coeff] : outs) {
      auto it = index.find({in, outk});
      if (it == index.end())
        throw Malformed("cochain entry outside the enumerated window");
      v.emplace(it->second, coeff);
    }
  return v;
}

/* ------------------------------------------------------------------ */
/* The degree-n two-output part of the sphere structure                */
/* ------------------------------------------------------------------ */

/* The one-input, two-output cochain alpha of homological degree n is pinned
   by linear conditions: rotation symmetry with eigenvalue (-1)^{n-1} and
   [mu, alpha] = 0.  Over the rationals the solution space is spanned by
   integral vectors; the returned alpha is the primitive integral solution
   normalized so that alpha(t) = +1 * (1 (x) 1), which also makes
   alpha * alpha = 0 (checked by the caller's tests rather than imposed,
   since that condition is quadratic). */
inline HigherCochain derive_alpha(const LoopAlgebra& ctx, const SignRules& rules = SignRules{}) {
  if (ctx.n < 2) throw Malformed("derive_alpha needs n >= 2");
  const Ring& ring = ctx.ring;
  // solve over the rationals, then map into the requested ring
  LoopAlgebra qctx(ctx.n, ctx.D, Ring::rationals());
  int hdeg = -ctx.n;
  auto basis = enumerate_entries(qctx, 2, hdeg, 1, ctx.D);
  if (basis.empty()) throw Malformed("no candidate entries for alpha at this truncation");
  std::map<std::pair<InKey, OutKey>, int> col_of;
  for (std::size_t i = 0; i < basis.size(); i++) col_of[basis[i]] = static_cast<int>(i);

  // rows: entries of the two constraint images, indexed on first use
  std::map<std::pair<int, std::pair<InKey, OutKey>>, int> row_of;
  std::vector<std::vector<std::pair<int, Scalar>>> cols(basis.size());
  auto post = [&](int block, const HigherCochain& image, int col) {
    for (const auto& [in, outs] : image.entries())
      for (const auto& [outk, coeff] : outs) {
        auto key = std::make_pair(block, std::make_pair(in, outk));
        auto it = row_of.find(key);
        int r;
        if (it == row_of.end()) {
          r = static_cast<int>(row_of.size());
          row_of.emplace(key, r);
        } else {
          r = it->second;
        }
        cols[col].push_back({r, coeff});
      }
  };

  Scalar qone = Scalar::of(qctx.ring, 1);
  int eig = (ctx.n - 1) % 2 == 0 ? 1 : -1;
  for (std::size_t i = 0; i < basis.size(); i++) {
    HigherCochain e(qctx, 2, hdeg);
    e.add_entry(basis[i].first, basis[i].second, qone);
    // symmetry: rotate(alpha) - (-1)^{n-1} alpha = 0
    HigherCochain sym = e.rotate(rules) - (eig == 1 ? e : -e);
    post(0, sym, static_cast<int>(i));
    // closedness: [mu, alpha] = 0
    post(1, differential(e, rules), static_cast<int>(i));
  }

  SparseMatrix m(qctx.ring, static_cast<int>(row_of.size()), static_cast<int>(basis.size()));
  for (std::size_t c = 0; c < cols.size(); c++)
    for (const auto& [r, v] : cols[c]) m.add(r, static_cast<int>(c), v);

  std::vector<SparseVec> null = m.kernel_basis();
  if (null.empty()) throw Malformed("alpha constraint system has no nonzero solution");

  // the normalization entry: alpha(t) = 1 (x) 1 in the sector-0 component
  InKey norm_in{{1}, {}};
  OutKey norm_out{0, 0};
  auto norm_it = col_of.find({norm_in, norm_out});
  if (norm_it == col_of.end()) throw Malformed("normalization entry outside the window");

  std::optional<SparseVec> pick;
  for (const auto& v : null) {
    auto it = v.find(norm_it->second);
    if (it != v.end() && !it->second.is_zero()) {
      SparseVec w = v;
      Scalar inv = it->second.inverse();
      for (auto& [i, s] : w) s *= inv;
      pick = std::move(w);
      break;
    }
  }
  if (!pick) throw Malformed("no solution with nonzero alpha(t); convention bug");

  // clear denominators to a primitive integral vector
  mpz_class lcm(1), gcd(0);
  for (const auto& [i, s] : *pick)
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), s.rational().get_den().get_mpz_t());
  std::map<int, mpz_class> integral;
  for (const auto& [i, s] : *pick) {
    const mpq_class& q = s.rational();
    mpz_class z = q.get_num() * (lcm / q.get_den());
    mpz_gcd(gcd.get_mpz_t(), gcd.get_mpz_t(), z.get_mpz_t());
    integral[i] = z;
  }
  if (gcd == 0) throw Malformed("alpha normalized to zero; convention bug");

  HigherCochain alpha(ctx, 2, hdeg);
  for (const auto& [i, z] : integral)
    alpha.add_entry(basis[i].first, basis[i].second, Scalar::of(ring, mpq_class(z / gcd)));
  return alpha;
}

}  // namespace precy
