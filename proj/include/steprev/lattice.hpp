#pragma once

#include <map>
#include <vector>

#include "steprev/numbers.hpp"
#include "steprev/vec.hpp"

namespace steprev {

/// Integer lattice given by a row-style Hermite normal form basis over a fixed
/// key order. Rows are sorted by pivot column; pivots are positive and entries
/// above each pivot are reduced into [0, pivot).
template <class K>
class Lattice {
 public:
  Lattice() = default;
  Lattice(std::vector<K> alphabet, const std::vector<VecOf<K>>& generators);

  const std::vector<K>& alphabet() const { return alphabet_; }
  const IntMatrix& basis() const { return basis_; }

  /// v in lattice iff pivot reduction of v reaches zero (exact division at
  /// every pivot column).
  bool contains(const VecOf<K>& v) const;

  /// Canonical residue of v modulo the lattice: pivot columns reduced into
  /// [0, pivot). Two vectors are congruent iff their residues are equal.
  IntVector residue(const VecOf<K>& v) const;

  /// Integer coefficients c over the original generators with v = c^T G, if
  /// v is a member. The certificate is exact, recomputable by the caller.
  std::optional<std::vector<Int>> membership_certificate(const VecOf<K>& v) const;

  /// Same lattice as `o` (mutual membership of bases).
  bool same_lattice(const Lattice& o) const;

  IntVector to_dense(const VecOf<K>& v) const;

 private:
  std::vector<K> alphabet_;
  std::map<K, int> column_;
  IntMatrix basis_;      // r x n HNF rows
  IntMatrix transform_;  // r x g, basis = transform * generators
  IntMatrix generators_;
  std::vector<int> pivot_col_;
};

using CycleLattice = Lattice<ActionName>;

/// Row HNF of an integer matrix by unimodular row operations. Returns the
/// nonzero rows; if transform is non-null it receives U with hnf = U * m
/// restricted to the kept rows.
IntMatrix row_hnf(const IntMatrix& m, IntMatrix* transform = nullptr);

}  // namespace steprev
