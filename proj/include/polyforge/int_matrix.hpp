#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "polyforge/presentation.hpp"
#include "polyforge/word.hpp"

namespace polyforge {

using bigint = boost::multiprecision::cpp_int;

// Dense matrix of arbitrary-precision integers; all arithmetic exact.
class IntMatrix {
public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), e_(rows * cols) {}
  static IntMatrix identity(std::size_t n);
  // convenience for literal test data
  static IntMatrix from_rows(const std::vector<std::vector<long long>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bigint& at(std::size_t r, std::size_t c) { return e_[r * cols_ + c]; }
  const bigint& at(std::size_t r, std::size_t c) const {
    return e_[r * cols_ + c];
  }

  IntMatrix operator*(const IntMatrix& o) const;
  bool operator==(const IntMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
  }
  bool operator!=(const IntMatrix& o) const { return !(*this == o); }

  bool is_identity() const;

  // Exact determinant (Bareiss fraction-free elimination); square only.
  bigint det() const;

  // Exact integer inverse; throws unless det is +1 or -1.
  IntMatrix inverse_unimodular() const;

  std::string to_string() const;  // rows as "[a, b, ...]" lines

private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<bigint> e_;
};

// Diagonal divisors d_1 | d_2 | ... of the Smith normal form, one per
// min(rows, cols) slot, trailing zeros for the free rank. When transforms are
// requested, left * M * right reconstructs the diagonal and both factors are
// unimodular.
struct SmithForm {
  std::vector<bigint> divisors;
  IntMatrix left, right;
  bool with_transforms = false;
};

SmithForm smith_normal_form(const IntMatrix& m, bool with_transforms = false);

// Row vector times matrix, exact.
std::array<bigint, 4> apply_row(const std::array<bigint, 4>& v,
                                const IntMatrix& m);

// Product of generator matrices along a word; negative letters use the exact
// unimodular inverse. images[i] is the matrix of generator i.
IntMatrix matrix_of_word(const Word& w, const std::vector<IntMatrix>& images);

// Invariants of the abelianized group: Smith divisors of the relator
// exponent matrix, with units dropped and one zero per free rank, e.g.
// (0,0,0,0) for free abelian of rank 4. Dense Smith form: intended for
// small or already-simplified presentations.
std::vector<bigint> abelian_invariants(const Presentation& p);

}  // namespace polyforge
