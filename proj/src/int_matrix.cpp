#include "polyforge/int_matrix.hpp"

#include <sstream>

namespace polyforge {

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<long long>>& rows) {
  if (rows.empty()) return IntMatrix();
  IntMatrix m(rows.size(), rows[0].size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != m.cols_) throw error("ragged matrix literal");
    for (std::size_t c = 0; c < m.cols_; ++c) m.at(r, c) = rows[r][c];
  }
  return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
  if (cols_ != o.rows_) throw error("matrix product: shape mismatch");
  IntMatrix p(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const bigint& a = at(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) p.at(i, j) += a * o.at(k, j);
    }
  return p;
}

bool IntMatrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (at(i, j) != (i == j ? 1 : 0)) return false;
  return true;
}

bigint IntMatrix::det() const {
  if (rows_ != cols_) throw error("determinant of a non-square matrix");
  std::size_t n = rows_;
  if (n == 0) return 1;
  IntMatrix a = *this;
  bigint prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a.at(k, k) == 0) {
      std::size_t i = k + 1;
      while (i < n && a.at(i, k) == 0) ++i;
      if (i == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a.at(k, j), a.at(i, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        a.at(i, j) = (a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j)) / prev;
    prev = a.at(k, k);
  }
  return sign > 0 ? a.at(n - 1, n - 1) : -a.at(n - 1, n - 1);
}

IntMatrix IntMatrix::inverse_unimodular() const {
  bigint d = det();
  if (d != 1 && d != -1)
    throw error("inverse requires determinant +1 or -1, got " + d.str());
  std::size_t n = rows_;
  IntMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      IntMatrix minor(n - 1, n - 1);  // delete row j, column i (adjugate)
      for (std::size_t r = 0, mr = 0; r < n; ++r) {
        if (r == j) continue;
        for (std::size_t c = 0, mc = 0; c < n; ++c) {
          if (c == i) continue;
          minor.at(mr, mc++) = at(r, c);
        }
        ++mr;
      }
      bigint cof = minor.det();
      if ((i + j) % 2) cof = -cof;
      inv.at(i, j) = cof * d;  // adjugate / det with det = +-1
    }
  return inv;
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < rows_; ++i) {
    os << '[';
    for (std::size_t j = 0; j < cols_; ++j)
      os << (j ? ", " : "") << at(i, j).str();
    os << "]\n";
  }
  return os.str();
}

namespace {

void swap_rows(IntMatrix& m, std::size_t a, std::size_t b) {
  for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(a, j), m.at(b, j));
}

void swap_cols(IntMatrix& m, std::size_t a, std::size_t b) {
  for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m.at(i, a), m.at(i, b));
}

// row[a] += q * row[b]
void add_row(IntMatrix& m, std::size_t a, std::size_t b, const bigint& q) {
  for (std::size_t j = 0; j < m.cols(); ++j) m.at(a, j) += q * m.at(b, j);
}

void add_col(IntMatrix& m, std::size_t a, std::size_t b, const bigint& q) {
  for (std::size_t i = 0; i < m.rows(); ++i) m.at(i, a) += q * m.at(i, b);
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& m, bool with_transforms) {
  IntMatrix a = m;
  std::size_t nr = a.rows(), nc = a.cols();
  SmithForm out;
  out.with_transforms = with_transforms;
  out.left = IntMatrix::identity(nr);
  out.right = IntMatrix::identity(nc);
  std::size_t n = nr < nc ? nr : nc;

  for (std::size_t k = 0; k < n; ++k) {
    // pivot: smallest absolute nonzero value in the remaining block
    std::size_t pi = k, pj = k;
    bigint best = 0;
    for (std::size_t i = k; i < nr; ++i)
      for (std::size_t j = k; j < nc; ++j) {
        if (a.at(i, j) == 0) continue;
        bigint v = abs(a.at(i, j));
        if (best == 0 || v < best) {
          best = v;
          pi = i;
          pj = j;
        }
      }
    if (best == 0) break;  // rest of the matrix is zero
    if (pi != k) {
      swap_rows(a, k, pi);
      swap_rows(out.left, k, pi);
    }
    if (pj != k) {
      swap_cols(a, k, pj);
      swap_cols(out.right, k, pj);
    }

    for (bool dirty = true; dirty;) {
      dirty = false;
      // clear column k below/above with division steps; a smaller remainder
      // becomes the new pivot
      for (std::size_t i = k; i < nr; ++i) {
        if (i == k || a.at(i, k) == 0) continue;
        bigint q = a.at(i, k) / a.at(k, k);
        add_row(a, i, k, -q);
        add_row(out.left, i, k, -q);
        if (a.at(i, k) != 0) {
          swap_rows(a, k, i);
          swap_rows(out.left, k, i);
          dirty = true;
        }
      }
      for (std::size_t j = k; j < nc; ++j) {
        if (j == k || a.at(k, j) == 0) continue;
        bigint q = a.at(k, j) / a.at(k, k);
        add_col(a, j, k, -q);
        add_col(out.right, j, k, -q);
        if (a.at(k, j) != 0) {
          swap_cols(a, k, j);
          swap_cols(out.right, k, j);
          dirty = true;
        }
      }
      if (dirty) continue;
      // enforce the divisibility chain: pivot must divide the whole block
      for (std::size_t i = k + 1; i < nr && !dirty; ++i)
        for (std::size_t j = k + 1; j < nc && !dirty; ++j)
          if (a.at(i, j) % a.at(k, k) != 0) {
            add_row(a, k, i, 1);
            add_row(out.left, k, i, 1);
            dirty = true;
          }
    }
    if (a.at(k, k) < 0) {
      for (std::size_t j = 0; j < nc; ++j) a.at(k, j) = -a.at(k, j);
      for (std::size_t j = 0; j < nr; ++j) out.left.at(k, j) = -out.left.at(k, j);
    }
  }
  out.divisors.resize(n);
  for (std::size_t k = 0; k < n; ++k) out.divisors[k] = a.at(k, k);
  if (!with_transforms) {
    out.left = IntMatrix();
    out.right = IntMatrix();
  }
  return out;
}

std::array<bigint, 4> apply_row(const std::array<bigint, 4>& v,
                                const IntMatrix& m) {
  if (m.rows() != 4 || m.cols() != 4) throw error("apply_row wants a 4x4 matrix");
  std::array<bigint, 4> out{};
  for (std::size_t j = 0; j < 4; ++j)
    for (std::size_t i = 0; i < 4; ++i) out[j] += v[i] * m.at(i, j);
  return out;
}

std::vector<bigint> abelian_invariants(const Presentation& p) {
  std::size_t ngens = static_cast<std::size_t>(p.alphabet.size());
  IntMatrix m(p.relators.size(), ngens);
  for (std::size_t r = 0; r < p.relators.size(); ++r)
    for (Letter l : p.relators[r])
      m.at(r, letter_gen(l)) += (l > 0 ? 1 : -1);
  SmithForm s = smith_normal_form(m);
  std::vector<bigint> out;
  std::size_t nonzero = 0;
  for (const bigint& d : s.divisors)
    if (d != 0) {
      ++nonzero;
      if (d != 1) out.push_back(d);
    }
  for (std::size_t i = nonzero; i < ngens; ++i) out.push_back(0);
  return out;
}

IntMatrix matrix_of_word(const Word& w, const std::vector<IntMatrix>& images) {
  if (images.empty()) throw error("matrix_of_word: no generator images");
  if (w.max_generator() >= static_cast<int>(images.size()))
    throw error("matrix_of_word: word uses a generator without an image");
  std::vector<IntMatrix> inverses(images.size());
  IntMatrix acc = IntMatrix::identity(images[0].rows());
  for (Letter l : w) {
    int g = letter_gen(l);
    if (l > 0) {
      acc = acc * images[g];
    } else {
      if (inverses[g].rows() == 0)
        inverses[g] = images[g].inverse_unimodular();
      acc = acc * inverses[g];
    }
  }
  return acc;
}

}  // namespace polyforge
