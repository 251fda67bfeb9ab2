#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ring.hpp"

namespace precy {

/* Sparse exact linear algebra.  Everything is deterministic: columns are
   processed left to right, and among candidate pivot rows we take the one
   with the fewest entries (ties broken by row index).  This is still a
   "first nonzero in column order" scheme -- the row scan order is a fixed
   function of the matrix -- but it keeps fill-in tolerable on the larger
   cochain slices. */

using SparseVec = std::map<int, Scalar>;  // index -> nonzero coefficient

inline void axpy(SparseVec& dst, const Scalar& c, const SparseVec& src) {
  if (c.is_zero()) return;
  for (const auto& [i, v] : src) {
    auto it = dst.find(i);
    if (it == dst.end()) {
      Scalar w = c * v;
      if (!w.is_zero()) dst.emplace(i, w);
    } else {
      it->second += c * v;
      if (it->second.is_zero()) dst.erase(it);
    }
  }
}

inline Scalar dot(const Ring& ring, const SparseVec& a, const SparseVec& b) {
  Scalar acc(ring);
  const SparseVec& small = a.size() <= b.size() ? a : b;
  const SparseVec& big = a.size() <= b.size() ? b : a;
  for (const auto& [i, v] : small) {
    auto it = big.find(i);
    if (it != big.end()) acc += v * it->second;
  }
  return acc;
}

class SparseMatrix {
 public:
  SparseMatrix(const Ring& ring, int rows, int cols)
      : ring_(ring), rows_(rows), cols_(cols), row_(rows) {}

  const Ring& ring() const { return ring_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }

  void add(int r, int c, const Scalar& v) {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
      throw Malformed("matrix entry (" + std::to_string(r) + "," + std::to_string(c) + ") out of range");
    if (v.is_zero()) return;
    auto it = row_[r].find(c);
    if (it == row_[r].end()) {
      row_[r].emplace(c, v);
    } else {
      it->second += v;
      if (it->second.is_zero()) row_[r].erase(it);
    }
  }

  const SparseVec& row(int r) const { return row_[r]; }

  std::size_t nnz() const {
    std::size_t t = 0;
    for (const auto& r : row_) t += r.size();
    return t;
  }

  SparseVec apply(const SparseVec& x) const {  // y = A x
    SparseVec y;
    for (int r = 0; r < rows_; r++) {
      Scalar acc = dot(ring_, row_[r], x);
      if (!acc.is_zero()) y.emplace(r, acc);
    }
    return y;
  }

  SparseVec apply_transpose(const SparseVec& y) const {  // z = A^T y
    SparseVec z;
    for (const auto& [r, c] : y) {
      axpy(z, c, row_[r]);
    }
    return z;
  }

  /* deterministic elimination state (reduced row echelon, pivot list) */
  struct Echelon {
    std::vector<SparseVec> rows;            // reduced rows, pivot coefficient 1
    std::vector<std::pair<int, int>> pivots;  // (row-in-'rows', column)
    std::vector<SparseVec> combos;          // rows[i] as combination of input rows (optional)
    std::vector<int> pivot_col_of;          // col -> index into pivots, or -1
    int cols = 0;
  };

  /* Reduce to row echelon form.  When track_combos is set, each surviving
     row also records the combination of original rows producing it, which
     is what infeasibility certificates are extracted from.  pivot_limit
     restricts pivot columns to [0, pivot_limit); later columns are carried
     along but never pivoted (solve uses this for the augmented column). */
  Echelon eliminate(bool track_combos = false, int pivot_limit = -1) const {
    if (pivot_limit < 0) pivot_limit = cols_;
    Echelon e;
    e.cols = cols_;
    e.pivot_col_of.assign(cols_, -1);
    std::vector<SparseVec> work = row_;
    std::vector<SparseVec> combo;
    if (track_combos) {
      combo.resize(rows_);
      for (int r = 0; r < rows_; r++) combo[r].emplace(r, Scalar::of(ring_, 1));
    }
    // column -> rows currently touching it
    std::vector<std::set<int>> touch(cols_);
    for (int r = 0; r < rows_; r++)
      for (const auto& [c, v] : work[r]) touch[c].insert(r);
    std::vector<bool> used(rows_, false);

    for (int c = 0; c < pivot_limit; c++) {
      int best = -1;
      std::size_t best_sz = 0;
      for (int r : touch[c]) {
        if (used[r]) continue;
        std::size_t sz = work[r].size();
        if (best < 0 || sz < best_sz || (sz == best_sz && r < best)) {
          best = r;
          best_sz = sz;
        }
      }
      if (best < 0) continue;
      used[best] = true;

      Scalar inv = work[best].at(c).inverse();
      scale_row(work[best], inv, touch, best);
      if (track_combos) scale_plain(combo[best], inv);

      // clear column c from every other row touching it
      std::vector<int> others(touch[c].begin(), touch[c].end());
      for (int r : others) {
        if (r == best) continue;
        auto it = work[r].find(c);
        if (it == work[r].end()) continue;
        Scalar f = -it->second;
        axpy_row(work[r], f, work[best], touch, r);
        if (track_combos) axpy(combo[r], f, combo[best]);
      }
      e.pivots.emplace_back(best, c);
      e.pivot_col_of[c] = static_cast<int>(e.pivots.size()) - 1;
    }

    // pack pivot rows first (in pivot order), then the surviving nonzero rows
    std::vector<SparseVec> packed;
    std::vector<SparseVec> packed_combo;
    for (auto& [r, c] : e.pivots) {
      packed.push_back(std::move(work[r]));
      if (track_combos) packed_combo.push_back(std::move(combo[r]));
    }
    for (int r = 0; r < rows_; r++) {
      if (!used[r] && !work[r].empty()) {
        packed.push_back(std::move(work[r]));
        if (track_combos) packed_combo.push_back(std::move(combo[r]));
      } else if (!used[r] && track_combos && work[r].empty()) {
        // dropped: a fully cancelled row is only interesting for certificates,
        // and those are read off the augmented system instead
      }
    }
    for (std::size_t i = 0; i < e.pivots.size(); i++) e.pivots[i].first = static_cast<int>(i);
    e.rows = std::move(packed);
    e.combos = std::move(packed_combo);
    return e;
  }

  int rank() const { return static_cast<int>(eliminate().pivots.size()); }

  /* Solve A x = b.  Returns x, or an infeasibility certificate y with
     y^T A = 0 and y^T b != 0 (exactly one of the two).  The particular
     solution sets every free variable to zero; with the fixed pivot rule
     this makes the witness reproducible. */
  struct SolveResult {
    std::optional<SparseVec> x;
    std::optional<SparseVec> certificate;
    bool feasible() const { return x.has_value(); }
  };

  SolveResult solve(const SparseVec& b) const {
    // eliminate the augmented matrix [A | b], b kept out of pivot columns
    SparseMatrix aug(ring_, rows_, cols_ + 1);
    aug.row_ = row_;
    for (const auto& [r, v] : b) {
      if (r < 0 || r >= rows_) throw Malformed("rhs index out of range");
      if (!v.is_zero()) aug.row_[r].emplace(cols_, v);
    }
    Echelon e = aug.eliminate(/*track_combos=*/true, /*pivot_limit=*/cols_);

    SolveResult res;
    // a row reduced to (0 ... 0 | beta), beta != 0  => infeasible
    for (std::size_t i = e.pivots.size(); i < e.rows.size(); i++) {
      const SparseVec& r = e.rows[i];
      if (r.size() == 1 && r.begin()->first == cols_) {
        res.certificate = e.combos[i];
        return res;
      }
    }
    SparseVec x;
    for (std::size_t i = 0; i < e.pivots.size(); i++) {
      auto it = e.rows[i].find(cols_);
      if (it != e.rows[i].end()) x.emplace(e.pivots[i].second, it->second);
    }
    res.x = std::move(x);
    return res;
  }

  /* basis of the right kernel, one vector per free column, in column order */
  std::vector<SparseVec> kernel_basis() const {
    Echelon e = eliminate();
    std::vector<SparseVec> basis;
    std::vector<bool> is_pivot(cols_, false);
    for (auto& [r, c] : e.pivots) is_pivot[c] = true;
    for (int c = 0; c < cols_; c++) {
      if (is_pivot[c]) continue;
      SparseVec v;
      v.emplace(c, Scalar::of(ring_, 1));
      for (std::size_t i = 0; i < e.pivots.size(); i++) {
        auto it = e.rows[i].find(c);
        if (it != e.rows[i].end()) {
          Scalar w = -it->second;
          if (!w.is_zero()) v.emplace(e.pivots[i].second, w);
        }
      }
      basis.push_back(std::move(v));
    }
    return basis;
  }

  /* "row col value" lines, row-major, canonical scalar text */
  std::string dump() const {
    std::string out;
    for (int r = 0; r < rows_; r++)
      for (const auto& [c, v] : row_[r])
        out += std::to_string(r) + " " + std::to_string(c) + " " + v.str() + "\n";
    return out;
  }

 private:
  static void scale_plain(SparseVec& v, const Scalar& c) {
    for (auto& [i, w] : v) w *= c;
  }
  void scale_row(SparseVec& v, const Scalar& c, std::vector<std::set<int>>&, int) const {
    scale_plain(v, c);  // support unchanged: c is invertible
  }
  void axpy_row(SparseVec& dst, const Scalar& c, const SparseVec& src,
                std::vector<std::set<int>>& touch, int dst_row) const {
    if (c.is_zero()) return;
    for (const auto& [i, v] : src) {
      auto it = dst.find(i);
      if (it == dst.end()) {
        Scalar w = c * v;
        if (!w.is_zero()) {
          dst.emplace(i, w);
          touch[i].insert(dst_row);
        }
      } else {
        it->second += c * v;
        if (it->second.is_zero()) {
          dst.erase(it);
          touch[i].erase(dst_row);
        }
      }
    }
  }

  Ring ring_;
  int rows_, cols_;
  std::vector<SparseVec> row_;
};

/* An incremental reducer: a set of independent vectors kept in echelon form,
   used to test membership in a growing span (image subspaces, class
   representatives modulo boundaries, ...). */
class SpanReducer {
 public:
  explicit SpanReducer(const Ring& ring) : ring_(ring) {}

  /* reduce v against the span; returns the remainder (empty if contained) */
  SparseVec reduce(SparseVec v) const {
    while (!v.empty()) {
      int lead = v.begin()->first;
      auto it = rows_.find(lead);
      if (it == rows_.end()) break;
      Scalar f = -v.begin()->second;
      axpy(v, f, it->second);
    }
    // also clear non-leading collisions for a canonical remainder
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& [i, c] : v) {
        auto it = rows_.find(i);
        if (it != rows_.end()) {
          axpy(v, -c, it->second);
          changed = true;
          break;
        }
      }
    }
    return v;
  }

  /* insert v if independent; returns true if the span grew */
  bool insert(SparseVec v) {
    v = reduce(std::move(v));
    if (v.empty()) return false;
    Scalar inv = v.begin()->second.inverse();
    for (auto& [i, c] : v) c *= inv;
    int lead = v.begin()->first;
    // back-substitute into existing rows so future remainders are canonical
    for (auto& [l, row] : rows_) {
      auto it = row.find(lead);
      if (it != row.end()) {
        Scalar f = -it->second;
        axpy(row, f, v);
      }
    }
    rows_.emplace(lead, std::move(v));
    return true;
  }

  bool contains(const SparseVec& v) const { return reduce(v).empty(); }
  int dim() const { return static_cast<int>(rows_.size()); }

 private:
  Ring ring_;
  std::map<int, SparseVec> rows_;  // leading index -> normalized row
};

/* Homology of a composable pair  C_in --M_in--> C --M_out--> C_out,
   with M_out * M_in = 0 (checked).  Returns the betti number of the middle
   term and explicit representatives: kernel vectors of M_out that are
   independent modulo the column span of M_in. */
struct HomologyReport {
  int rank_kernel = 0;    // dim ker(M_out)
  int rank_image_in = 0;  // rank(M_in)
  int betti = 0;          // rank_kernel - rank_image_in
  std::vector<SparseVec> representatives;
};

inline HomologyReport homology(const SparseMatrix& m_in, const SparseMatrix& m_out) {
  if (m_in.ring() != m_out.ring()) throw RingMismatch("homology over mixed rings");
  if (m_in.rows() != m_out.cols())
    throw Malformed("homology: middle dimensions disagree (" +
                    std::to_string(m_in.rows()) + " vs " + std::to_string(m_out.cols()) + ")");
  const Ring& ring = m_in.ring();

  // composability check: M_out applied to every column of M_in
  for (int c = 0; c < m_in.cols(); c++) {
    SparseVec col;
    for (int r = 0; r < m_in.rows(); r++) {
      // column extraction via row maps is fine at these sizes
      auto it = m_in.row(r).find(c);
      if (it != m_in.row(r).end()) col.emplace(r, it->second);
    }
    if (!m_out.apply(col).empty())
      throw Malformed("homology: maps do not compose to zero (column " + std::to_string(c) + ")");
  }

  SpanReducer image(ring);   // column span of M_in
  SpanReducer seen(ring);    // image + representatives picked so far
  for (int c = 0; c < m_in.cols(); c++) {
    SparseVec col;
    for (int r = 0; r < m_in.rows(); r++) {
      auto it = m_in.row(r).find(c);
      if (it != m_in.row(r).end()) col.emplace(r, it->second);
    }
    image.insert(col);
    seen.insert(std::move(col));
  }
  int rank_in = image.dim();

  HomologyReport out;
  // kernel of M_out, reduced modulo the image span
  std::vector<SparseVec> kernel = m_out.kernel_basis();
  for (SparseVec& k : kernel) {
    SparseVec red = image.reduce(k);
    if (red.empty()) continue;
    if (seen.insert(red)) out.representatives.push_back(std::move(red));
  }
  out.rank_kernel = static_cast<int>(kernel.size());
  out.rank_image_in = rank_in;
  out.betti = out.rank_kernel - rank_in;
  if (static_cast<int>(out.representatives.size()) != out.betti)
    throw Error("homology: representative count " + std::to_string(out.representatives.size()) +
                " disagrees with betti " + std::to_string(out.betti));
  return out;
}

}  // namespace precy
