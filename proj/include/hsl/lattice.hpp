#pragma once

// Exact integer linear algebra over GMP integers: Hermite and Smith normal
// forms, integer kernels, lattice membership and small number-theoretic
// helpers. Every routine is a pure function of its arguments.

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hsl {

using Int = mpz_class;
using IntVector = std::vector<Int>;

IntVector make_vector(std::initializer_list<long> entries);

Int dot(std::span<const Int> a, std::span<const Int> b);
IntVector add(std::span<const Int> a, std::span<const Int> b);
IntVector subtract(std::span<const Int> a, std::span<const Int> b);
IntVector scale(const Int& c, std::span<const Int> a);
bool is_zero(std::span<const Int> a);
std::string to_string(std::span<const Int> a);

struct IntVectorHash {
  std::size_t operator()(const IntVector& v) const noexcept;
};

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);
  /// Rows of the result are the given vectors; all must share one length.
  static IntMatrix from_rows(std::span<const IntVector> rows,
                             std::size_t cols_if_empty = 0);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Int& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Int& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  std::span<Int> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const Int> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  IntVector row_vector(std::size_t r) const;
  IntVector column_vector(std::size_t c) const;

  IntMatrix transpose() const;
  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Int> data_;
};

/// Row vector times matrix.
IntVector multiply(std::span<const Int> row, const IntMatrix& m);
/// Matrix times column vector.
IntVector multiply(const IntMatrix& m, std::span<const Int> column);

struct HermiteDecomposition {
  IntMatrix H;
  IntMatrix U;
  std::size_t rank = 0;
};

struct SmithDecomposition {
  IntMatrix D;
  IntMatrix U;
  IntMatrix V;
  /// Diagonal of D: nonnegative, divisibility chain, zeros last.
  std::vector<Int> invariant_factors;
};

/// Row-style Hermite normal form: H = U * A with U unimodular. Pivots are
/// positive, pivot columns strictly increase down the rows, entries above a
/// pivot lie in [0, pivot), and zero rows come last.
HermiteDecomposition hermite_normal_form(const IntMatrix& a);

/// U * A * V = D with U, V unimodular.
SmithDecomposition smith_normal_form(const IntMatrix& a);

std::size_t rank(const IntMatrix& a);

/// Exact determinant by fraction-free (Bareiss) elimination.
Int determinant(const IntMatrix& a);

/// Basis (in Hermite form) of the integer kernel {x : A x = 0}.
std::vector<IntVector> kernel_basis(const IntMatrix& a);

/// Integer coordinates c with sum c_j basis_j = v, or nullopt when v lies
/// outside the lattice. The basis vectors must be linearly independent.
std::optional<IntVector> solve_in_lattice(std::span<const IntVector> basis,
                                          std::span<const Int> v);

/// Like solve_in_lattice but the spanning vectors may be dependent; returns
/// one integer combination, or nullopt.
std::optional<IntVector> solve_over_generators(
    std::span<const IntVector> generators, std::span<const Int> v);

/// v divided by the gcd of its entries. Throws std::invalid_argument on 0.
IntVector primitive(std::span<const Int> v);

/// Largest prime factor of n >= 1; 0 when n == 1. Throws on n <= 0.
Int largest_prime_factor(const Int& n);

bool is_prime(const Int& n);

/// Largest e with p^e | n (n != 0, p >= 2).
unsigned long valuation(const Int& n, const Int& p);

}  // namespace hsl
