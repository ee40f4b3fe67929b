#ifndef PROOFNET_LINKING_HPP
#define PROOFNET_LINKING_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "proofnet/frame.hpp"

namespace proofnet {

/// Dense row-major real matrix, just big enough for score/permutation work.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }

  Matrix transposed() const;

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// The ordered chains of negative and positive occurrences of one atom,
/// as global atom indices in increasing order.
struct AtomChains {
  Atom atom;
  std::vector<std::size_t> negatives;
  std::vector<std::size_t> positives;
};

/// Square binary doubly-stochastic table: row i is the i-th negative
/// occurrence, column j the j-th positive occurrence; a 1 links them.
struct PermutationTable {
  Atom atom;
  Matrix matrix;

  /// row -> selected column. Validates squareness and permutation shape,
  /// throwing ShapeMismatch.
  std::vector<std::size_t> permutation() const;
};

/// Unnormalized log-domain agreement scores over the cartesian product of
/// negative (rows) and positive (columns) occurrences of one atom.
struct ScoreMatrix {
  Atom atom;
  Matrix matrix;
};

/// A frame plus a perfect matching of its atoms; each pair is
/// (negative atom index, positive atom index).
struct ProofStructure {
  ProofFrame frame;
  std::set<std::pair<std::size_t, std::size_t>> links;
};

/// Groups the frame's atom occurrences per distinct atom, chains ordered by
/// index. Result is sorted by atom token.
std::vector<AtomChains> partition_atoms(const ProofFrame& frame);

/// Iterated log-space normalization, alternating columns and rows via
/// transposition, exponentiated at the end. Output approaches a doubly
/// stochastic matrix as iterations grow.
Matrix sinkhorn(const Matrix& scores, int iterations);

inline constexpr int kDefaultSinkhornIterations = 5;

/// Rounds a near-doubly-stochastic matrix to the permutation maximizing the
/// sum of the logarithms of the selected entries. Deterministic under ties:
/// scanning rows upward, the lowest admissible column wins.
std::vector<std::size_t> max_weight_assignment(const Matrix& weights);
PermutationTable discretize(const ScoreMatrix& scores, int iterations = kDefaultSinkhornIterations);
PermutationTable discretize(const Matrix& soft, const Atom& atom);

/// Turns per-atom permutation tables into a proof structure. Requires count
/// invariance, a table for every atom present, and matching shapes; throws
/// InvarianceViolated / MissingAtomTable / ShapeMismatch.
ProofStructure assemble_structure(const ProofFrame& frame,
                                  const std::map<Atom, PermutationTable>& tables);

/// Exact inverse of assemble_structure.
std::map<Atom, PermutationTable> links_to_tables(const ProofStructure& structure);

/// Checks the perfect-matching invariant: every atom index in exactly one
/// pair, pairs joining equal atoms of opposite polarity.
bool validate_structure(const ProofFrame& frame,
                        const std::set<std::pair<std::size_t, std::size_t>>& links,
                        std::string* why = nullptr);

/// Produces score matrices for a frame. The neural scorer that would fill
/// this role in a trained pipeline plugs in here.
class Scorer {
 public:
  virtual ~Scorer() = default;
  virtual ScoreMatrix score(const ProofFrame& frame, const AtomChains& chains) const = 0;
};

/// Seeded standard-normal scores; deterministic per (seed, atom, shape).
class RandomScorer : public Scorer {
 public:
  explicit RandomScorer(std::uint64_t seed) : seed_(seed) {}
  ScoreMatrix score(const ProofFrame& frame, const AtomChains& chains) const override;

 private:
  std::uint64_t seed_;
};

/// Scores every atom of the frame and links it: sinkhorn + discretize per
/// atom, assembled into a structure.
ProofStructure link_frame(const ProofFrame& frame, const Scorer& scorer,
                          int iterations = kDefaultSinkhornIterations);
ProofStructure link_frame(const ProofFrame& frame, const std::vector<ScoreMatrix>& scores,
                          int iterations = kDefaultSinkhornIterations);

}  // namespace proofnet

#endif  // PROOFNET_LINKING_HPP
