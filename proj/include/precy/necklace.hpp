#pragma once

#include <map>
#include <tuple>
#include <utility>
#include <vector>

#include "cochain.hpp"

namespace precy {

/* The necklace product on higher Hochschild cochains, and the convolution
   Lie algebra built from it.

   f * g sums over every way of plugging one output of g into one input slot
   of f.  Indexing the gluing by (j, r, q) -- input r of sector j of f
   receives output q of g -- the glued diagram reads, walking the boundary:

     f-sectors 0..j-1 | f[j][0..r-1] | g cut open after output q | f[j][r..] | f-sectors j+1..

   so the surviving outputs of g slot in between f's outputs j-1 and j, and
   g's input sectors appear rotated by q+1.

   Each term is then re-anchored: the necklace is a cyclic word, and the
   linearization that represents it starts at g's original first output
   (at the composite sector when that output is the glued one).  This is
   what makes [mu, -] land on the classical multi-output Hochschild
   differential with every surviving leg kept in place, so that d^2 = 0
   holds entry-by-entry and not only after symmetrization.

   The Koszul sign, every leg graded as an element of sA (inputs always;
   outputs according to SignRules.outputs_suspended):
     (rho)  rotating g so its glued output comes last: q+1 single steps,
            block Koszul sign times the rotation eigenvalue of g;
     (ins)  the eigentwist sigma(g) = (n-1)(l2-1) crosses the f-inputs
            before the slot, f's outputs before j, and the sector count j;
     (mov)  eps(g) crosses everything of f after the slot: the sector-j
            input suffix, the later input sectors, the outputs j..l1-1,
            and the glued leg itself;
     (anc)  the re-anchoring rotation of the result, block Koszul sign
            times the rotation eigenvalue of the result.
   At l1 = l2 = 1 the script collapses to the suspended insertion sign
   (-1)^{eps(g) * deg(slot and everything of f after it)}. */

namespace detail {

struct RotatedEntry {
  InKey in;
  OutKey out;
  int sign_block;  // (sector, output) pairs move as one block
  int sign_split;  // inputs and outputs permute in their own factors
};

/* entry-level form of HigherCochain::rotate, applied s times; both rotation
   sign conventions are tracked so callers can pick either */
inline RotatedEntry rotate_entry(const LoopAlgebra& ctx, InKey in, OutKey out, int s,
                                 const SignRules& rules) {
  int n = ctx.n;
  auto in_deg = [&](int a) { return a * (n - 1) + 1; };
  auto out_deg = [&](int b) { return b * (n - 1) + (rules.outputs_suspended ? 1 : 0); };
  int sb = 0, sp = 0;
  for (int step = 0; step < s; step++) {
    int moved_in = 0, rest_in = 0, rest_out = 0;
    for (int a : in.front()) moved_in += in_deg(a);
    for (std::size_t k = 1; k < in.size(); k++)
      for (int a : in[k]) rest_in += in_deg(a);
    for (std::size_t k = 1; k < out.size(); k++) rest_out += out_deg(out[k]);
    int o0 = out_deg(out.front());
    sp ^= (moved_in & rest_in & 1) ^ (o0 & rest_out & 1);
    sb ^= ((moved_in + o0) & (rest_in + rest_out) & 1);
    std::rotate(in.begin(), in.begin() + 1, in.end());
    std::rotate(out.begin(), out.begin() + 1, out.end());
  }
  return {std::move(in), std::move(out), sb, sp};
}

/* least representative of the cyclic orbit of an entry, with the sign of the
   rotation reaching it (block Koszul x eigenvalue per step); an orbit whose
   stabilizer flips the sign carries no isotypic content (dead) */
struct CanonicalEntry {
  InKey in;
  OutKey out;
  int sign;
  bool dead;
};

inline CanonicalEntry canonical_entry(const LoopAlgebra& ctx, const InKey& in, const OutKey& out,
                                      const SignRules& rules) {
  int ell = static_cast<int>(in.size());
  int sigma = ((ctx.n - 1) * (ell - 1)) & 1;
  CanonicalEntry best{in, out, 0, false};
  InKey cin = in;
  OutKey cout = out;
  int acc = 0;
  for (int t = 1; t < ell; t++) {
    auto step = rotate_entry(ctx, std::move(cin), std::move(cout), 1, rules);
    acc ^= step.sign_block ^ sigma;
    cin = std::move(step.in);
    cout = std::move(step.out);
    if (std::tie(cin, cout) < std::tie(best.in, best.out)) {
      best.in = cin;
      best.out = cout;
      best.sign = acc;
      best.dead = false;
    } else if (cin == best.in && cout == best.out && acc != best.sign) {
      best.dead = true;
    }
  }
  return best;
}

}  // namespace detail

/* fold every entry onto the least representative of its cyclic orbit, with
   the rotation sign; coordinates for the quotient by the rotation action.
   Orbits with sign-reversing stabilizer vanish in the quotient unless the
   ring cannot see the sign (characteristic 2). */
inline HigherCochain cyclic_reduce(const HigherCochain& c, const SignRules& rules = SignRules{}) {
  const LoopAlgebra& ctx = c.context();
  bool char2 = ctx.ring.characteristic() == 2;
  HigherCochain r(ctx, c.ell(), c.hdeg());
  r.set_cap(c.cap());
  for (const auto& [in, outs] : c.entries())
    for (const auto& [out, v] : outs) {
      auto cn = detail::canonical_entry(ctx, in, out, rules);
      if (cn.dead && !char2) continue;
      r.add_entry(cn.in, cn.out, cn.sign ? -v : v);
    }
  return r;
}

/* spread quotient coordinates back out: every entry is replaced by its full
   cyclic orbit with the rotation signs, each distinct key once.  Inverse to
   reading an isotypic cochain off its least representatives. */
inline HigherCochain cyclic_expand(const HigherCochain& c, const SignRules& rules = SignRules{}) {
  const LoopAlgebra& ctx = c.context();
  bool char2 = ctx.ring.characteristic() == 2;
  int ell = c.ell();
  int sigma = ((ctx.n - 1) * (ell - 1)) & 1;
  HigherCochain r(ctx, c.ell(), c.hdeg());
  r.set_cap(c.cap());
  for (const auto& [in, outs] : c.entries()) {
    for (const auto& [out, v] : outs) {
      std::map<std::pair<InKey, OutKey>, int> orbit;
      orbit[{in, out}] = 0;
      InKey cin = in;
      OutKey cout = out;
      int acc = 0;
      bool dead = false;
      for (int t = 1; t < ell; t++) {
        auto step = detail::rotate_entry(ctx, std::move(cin), std::move(cout), 1, rules);
        acc ^= step.sign_block ^ sigma;
        cin = std::move(step.in);
        cout = std::move(step.out);
        auto it = orbit.find({cin, cout});
        if (it == orbit.end())
          orbit[{cin, cout}] = acc;
        else if (it->second != acc)
          dead = true;
      }
      if (dead && !char2) continue;
      for (const auto& [key, sgn] : orbit) r.add_entry(key.first, key.second, sgn ? -v : v);
    }
  }
  return r;
}

/* the insertion sum itself: every (j, r, q) gluing of the stored
   linearizations, signed as in the header comment */
inline HigherCochain insertion_star(const HigherCochain& f, const HigherCochain& g,
                                    const SignRules& rules = SignRules{}) {
  f.context().check_same(g.context(), "necklace product");
  const LoopAlgebra& ctx = f.context();
  int l1 = f.ell(), l2 = g.ell();
  HigherCochain res(ctx, l1 + l2 - 1, f.hdeg() + g.hdeg() + 1);

  int cap = std::min({g.cap(), f.cap() - g.tau_upper(), ctx.D - f.tau_upper() - g.tau_upper()});
  if (cap < 0)
    throw WindowExceeded("necklace product complete on no window (cap " + std::to_string(cap) +
                         "); raise D");
  res.set_cap(cap);

  auto in_deg = [&](int a) { return a * (ctx.n - 1) + 1; };
  auto out_deg = [&](int b) { return b * (ctx.n - 1) + (rules.outputs_suspended ? 1 : 0); };

  int lres = l1 + l2 - 1;
  int sig_g = ((ctx.n - 1) * (l2 - 1)) & 1;    // rotation eigentwist of g
  int sig_res = ((ctx.n - 1) * (lres - 1)) & 1;  // ... and of the result
  int eps_g = g.eps() & 1;

  for (const auto& [fin, fouts] : f.entries()) {
    for (const auto& [fout, cf] : fouts) {
      for (const auto& [gin, gouts] : g.entries()) {
        for (const auto& [gout, cg] : gouts) {
          for (int q = 0; q < l2; q++) {
            // rotate g's entry so the glued output sits last
            int s = (q + 1) % l2;
            auto rot = detail::rotate_entry(ctx, gin, gout, s, rules);
            int glued = rot.out.back();
            int rho = rot.sign_block ^ ((s * sig_g) & 1);

            for (int j = 0; j < l1; j++) {
              const auto& sector = fin[j];
              int deg_P_before_sector = 0;  // inputs of sectors < j
              for (int t = 0; t < j; t++)
                for (int a : fin[t]) deg_P_before_sector += in_deg(a);
              int deg_out_head = 0, deg_out_tail = 0;  // f outputs < j / >= j
              for (int t = 0; t < j; t++) deg_out_head += out_deg(fout[t]);
              for (int t = j; t < l1; t++) deg_out_tail += out_deg(fout[t]);
              int deg_later = 0;  // inputs of sectors > j
              for (int t = j + 1; t < l1; t++)
                for (int a : fin[t]) deg_later += in_deg(a);
              int deg_prefix = 0;  // inputs of sector j before slot r
              for (int r = 0; r < static_cast<int>(sector.size()); r++) {
                if (sector[r] == glued) {
                  // assemble the glued entry
                  InKey rin;
                  OutKey rout;
                  rin.reserve(lres);
                  rout.reserve(lres);
                  for (int t = 0; t < j; t++) {
                    rin.push_back(fin[t]);
                    rout.push_back(fout[t]);
                  }
                  std::vector<int> first(sector.begin(), sector.begin() + r);
                  if (l2 == 1) {
                    first.insert(first.end(), rot.in[0].begin(), rot.in[0].end());
                    first.insert(first.end(), sector.begin() + r + 1, sector.end());
                    rin.push_back(std::move(first));
                    rout.push_back(fout[j]);
                  } else {
                    first.insert(first.end(), rot.in[0].begin(), rot.in[0].end());
                    rin.push_back(std::move(first));
                    rout.push_back(rot.out[0]);
                    for (int p = 1; p + 1 < l2; p++) {
                      rin.push_back(rot.in[p]);
                      rout.push_back(rot.out[p]);
                    }
                    std::vector<int> last = rot.in[l2 - 1];
                    last.insert(last.end(), sector.begin() + r + 1, sector.end());
                    rin.push_back(std::move(last));
                    rout.push_back(fout[j]);
                  }
                  for (int t = j + 1; t < l1; t++) {
                    rin.push_back(fin[t]);
                    rout.push_back(fout[t]);
                  }

                  if (total(rin) <= cap) {
                    int P = (deg_P_before_sector + deg_prefix) & 1;
                    int S = 0;  // inputs of sector j after slot r
                    for (int t = r + 1; t < static_cast<int>(sector.size()); t++)
                      S += in_deg(sector[t]);
                    int after = (S + deg_later + deg_out_tail + in_deg(glued)) & 1;
                    int sign = rho ^ (sig_g & (P ^ deg_out_head ^ j) & 1) ^ (eps_g & after);

                    // re-anchor at g's original first output
                    int anchor = (l2 == 1) ? 0 : j + l2 - 1 - q;
                    if (anchor) {
                      auto anc = detail::rotate_entry(ctx, rin, rout, anchor, rules);
                      sign ^= anc.sign_block ^ ((anchor * sig_res) & 1);
                      rin = std::move(anc.in);
                      rout = std::move(anc.out);
                    }
                    Scalar v = cf * cg;
                    res.add_entry(rin, rout, sign ? -v : v);
                  }
                }
                deg_prefix += in_deg(sector[r]);
              }
            }
          }
        }
      }
    }
  }
  return res;
}

/* The necklace product.  When either factor has a single output the
   insertion sum is the product itself (at l = 1 on both sides it is the
   classical circle product), works over every coefficient ring, and carries
   isotypic cochains to isotypic cochains.  When both factors have several
   outputs it cannot: each gluing diagram of the underlying necklaces has
   l1 * l2 linearizations feeding the sum, but the result orbit only has
   l1 + l2 - 1 positions to absorb them, so no sign or anchoring convention
   spreads the terms isotypically.  The product of invariants is instead the
   isotypic average of the insertion sum.  The average divides by the sector
   count, so this lane (unlike the single-output one) refuses coefficient
   fields whose characteristic divides l1 + l2 - 1. */
inline HigherCochain star(const HigherCochain& f, const HigherCochain& g,
                          const SignRules& rules = SignRules{}) {
  if (f.ell() == 1 || g.ell() == 1) return insertion_star(f, g, rules);
  return insertion_star(f, g, rules).symmetrize(rules);
}

inline HigherCochain bracket(const HigherCochain& a, const HigherCochain& b,
                             const SignRules& rules = SignRules{}) {
  HigherCochain fg = star(a, b, rules);
  HigherCochain gf = star(b, a, rules);
  return ((a.eps() & b.eps() & 1) != 0) ? fg + gf : fg - gf;
}

/* the polynomial product of H as an l = 1 cochain; passing through the bar
   construction gives the entry (a, b) -> a + b the coefficient (-1)^|t^a|,
   which is what makes mu * mu vanish */
inline HigherCochain mu_cochain(const LoopAlgebra& ctx) {
  HigherCochain mu(ctx, 1, -2);
  Scalar one = Scalar::of(ctx.ring, 1);
  for (int a = 0; a <= ctx.D; a++)
    for (int b = 0; a + b <= ctx.D; b++)
      mu.add_entry({{a, b}}, {a + b}, (a * (ctx.n - 1)) % 2 ? -one : one);
  return mu;
}

/* the Hochschild differential [mu, -] */
inline HigherCochain differential(const HigherCochain& c, const SignRules& rules = SignRules{}) {
  return bracket(mu_cochain(c.context()), c, rules);
}

/* ---- the convolution Lie algebra: sums of cochains across (l, hdeg) ---- */

inline int entry_weight(const InKey& in, int ell) { return arity(in) + ell - 2; }

class ConvolutionElement {
 public:
  explicit ConvolutionElement(const LoopAlgebra& ctx) : ctx_(ctx) {}

  const LoopAlgebra& context() const { return ctx_; }
  bool is_zero() const {
    for (const auto& [key, part] : parts_)
      if (!part.is_zero()) return false;
    return true;
  }
  const std::map<std::pair<int, int>, HigherCochain>& parts() const { return parts_; }

  /* elements of the convolution algebra have no (1;1) or (2;0) component:
     every entry needs at least 3 legs and at least one input */
  void add_part(const HigherCochain& c) {
    ctx_.check_same(c.context(), "convolution element");
    for (const auto& [in, outs] : c.entries()) {
      if (arity(in) < 1) throw Malformed("zero-input component (copairing) not allowed");
      if (arity(in) + c.ell() < 3) throw Malformed("total arity below 3 not allowed");
    }
    if (c.is_zero()) return;
    auto key = std::make_pair(c.ell(), c.hdeg());
    auto it = parts_.find(key);
    if (it == parts_.end())
      parts_.emplace(key, c);
    else
      it->second += c;
    if (parts_.at(key).is_zero()) parts_.erase(key);
  }

  ConvolutionElement& operator+=(const ConvolutionElement& o) {
    ctx_.check_same(o.ctx_, "sum");
    for (const auto& [key, part] : o.parts_) add_part(part);
    return *this;
  }
  ConvolutionElement operator+(const ConvolutionElement& o) const {
    ConvolutionElement r = *this;
    r += o;
    return r;
  }
  ConvolutionElement scaled(const Scalar& s) const {
    ConvolutionElement r(ctx_);
    for (const auto& [key, part] : parts_) r.add_part(part.scaled(s));
    return r;
  }
  ConvolutionElement operator-() const { return scaled(-Scalar::of(ctx_.ring, 1)); }
  ConvolutionElement operator-(const ConvolutionElement& o) const { return *this + (-o); }
  bool operator==(const ConvolutionElement& o) const { return (*this - o).is_zero(); }
  bool operator!=(const ConvolutionElement& o) const { return !(*this == o); }

  /* restrict to the given weight and level ranges (per entry); idempotent */
  ConvolutionElement project(int weight_min, int weight_max, int level_min, int level_max) const {
    ConvolutionElement r(ctx_);
    for (const auto& [key, part] : parts_) {
      int level = part.ell() - 1;
      if (level < level_min || level > level_max) continue;
      HigherCochain kept(ctx_, part.ell(), part.hdeg());
      kept.set_cap(part.cap());
      for (const auto& [in, outs] : part.entries()) {
        int w = entry_weight(in, part.ell());
        if (w < weight_min || w > weight_max) continue;
        for (const auto& [out, c] : outs) kept.add_entry(in, out, c);
      }
      r.add_part(kept);
    }
    return r;
  }

  int min_cap() const {
    int m = ctx_.D;
    for (const auto& [key, part] : parts_) m = std::min(m, part.cap());
    return m;
  }

 private:
  LoopAlgebra ctx_;
  std::map<std::pair<int, int>, HigherCochain> parts_;
};

inline ConvolutionElement star(const ConvolutionElement& a, const ConvolutionElement& b,
                               const SignRules& rules = SignRules{}) {
  ConvolutionElement r(a.context());
  for (const auto& [ka, pa] : a.parts())
    for (const auto& [kb, pb] : b.parts()) r.add_part(star(pa, pb, rules));
  return r;
}

inline ConvolutionElement bracket(const ConvolutionElement& a, const ConvolutionElement& b,
                                  const SignRules& rules = SignRules{}) {
  ConvolutionElement r(a.context());
  for (const auto& [ka, pa] : a.parts())
    for (const auto& [kb, pb] : b.parts()) r.add_part(bracket(pa, pb, rules));
  return r;
}

inline ConvolutionElement differential(const ConvolutionElement& c,
                                       const SignRules& rules = SignRules{}) {
  ConvolutionElement r(c.context());
  HigherCochain mu = mu_cochain(c.context());
  for (const auto& [key, part] : c.parts()) r.add_part(bracket(mu, part, rules));
  return r;
}

/* the Maurer-Cartan defect m * m, the whole of it within caps */
inline ConvolutionElement mc_defect(const ConvolutionElement& m,
                                    const SignRules& rules = SignRules{}) {
  return star(m, m, rules);
}

}  // namespace precy
