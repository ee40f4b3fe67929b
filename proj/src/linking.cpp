#include "proofnet/linking.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <limits>
#include <random>

#include "proofnet/errors.hpp"

namespace proofnet {

Matrix Matrix::transposed() const {
  Matrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out.at(j, i) = at(i, j);
  }
  return out;
}

std::vector<std::size_t> PermutationTable::permutation() const {
  const std::size_t n = matrix.rows();
  if (matrix.cols() != n) {
    throw ShapeMismatch("permutation table for '" + atom.token() + "' is not square");
  }
  std::vector<std::size_t> perm(n, n);
  std::vector<bool> column_used(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t ones = 0;
    for (std::size_t j = 0; j < n; ++j) {
      double v = matrix.at(i, j);
      if (v == 1.0) {
        perm[i] = j;
        ++ones;
      } else if (v != 0.0) {
        throw ShapeMismatch("permutation table for '" + atom.token() + "' has a non-binary entry");
      }
    }
    if (ones != 1 || column_used[perm[i]]) {
      throw ShapeMismatch("permutation table for '" + atom.token() + "' is not doubly stochastic");
    }
    column_used[perm[i]] = true;
  }
  return perm;
}

std::vector<AtomChains> partition_atoms(const ProofFrame& frame) {
  std::map<Atom, AtomChains> by_atom;
  for (std::size_t index = 0; index < frame.atom_count(); ++index) {
    const FrameNode& n = frame.atom(index);
    AtomChains& chains = by_atom[n.content.atom];
    chains.atom = n.content.atom;
    if (n.polarity == Polarity::Negative) {
      chains.negatives.push_back(index);
    } else {
      chains.positives.push_back(index);
    }
  }
  std::vector<AtomChains> out;
  out.reserve(by_atom.size());
  for (auto& [atom, chains] : by_atom) out.push_back(std::move(chains));
  std::sort(out.begin(), out.end(),
            [](const AtomChains& a, const AtomChains& b) { return a.atom.token() < b.atom.token(); });
  return out;
}

namespace {

// Log-space column normalization: subtracts from every entry the
// log-sum-exp of its column, stabilized by the column maximum.
void lse_normalize_columns(Matrix& m) {
  for (std::size_t j = 0; j < m.cols(); ++j) {
    double mx = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m.rows(); ++i) mx = std::max(mx, m.at(i, j));
    double sum = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) sum += std::exp(m.at(i, j) - mx);
    double lse = mx + std::log(sum);
    for (std::size_t i = 0; i < m.rows(); ++i) m.at(i, j) -= lse;
  }
}

}  // namespace

Matrix sinkhorn(const Matrix& scores, int iterations) {
  if (iterations < 1) throw ShapeMismatch("sinkhorn requires at least one iteration");
  if (scores.rows() != scores.cols()) throw ShapeMismatch("sinkhorn input is not square");
  Matrix s = scores;
  for (int t = 0; t < iterations; ++t) {
    lse_normalize_columns(s);
    s = s.transposed();
    lse_normalize_columns(s);
    s = s.transposed();
  }
  for (double& v : s.data()) v = std::exp(v);
  return s;
}

namespace {

// Exact subset DP, reconstructing the lexicographically first optimum:
// rows scanned upward, lowest admissible column first.
std::vector<std::size_t> assignment_subset_dp(const Matrix& w) {
  const std::size_t n = w.rows();
  const std::size_t full = (std::size_t(1) << n) - 1;
  // best[mask]: max weight assigning rows n-popcount(mask).. to the columns
  // still available in mask.
  std::vector<double> best(full + 1, 0.0);
  for (std::size_t mask = 1; mask <= full; ++mask) {
    std::size_t row = n - static_cast<std::size_t>(std::popcount(mask));
    double b = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j) {
      if (!(mask >> j & 1)) continue;
      double cand = w.at(row, j) + best[mask ^ (std::size_t(1) << j)];
      if (cand > b) b = cand;
    }
    best[mask] = b;
  }
  std::vector<std::size_t> perm(n);
  std::size_t avail = full;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!(avail >> j & 1)) continue;
      double cand = w.at(i, j) + best[avail ^ (std::size_t(1) << j)];
      // Exact comparison: the same additions produced best[avail], so the
      // optimum is reproduced bit-for-bit (-inf == -inf included).
      if (cand == best[avail]) {
        perm[i] = j;
        avail ^= std::size_t(1) << j;
        break;
      }
    }
  }
  return perm;
}

// Jonker-Volgenant style shortest augmenting paths for larger tables.
std::vector<std::size_t> assignment_hungarian(const Matrix& w) {
  const std::size_t n = w.rows();
  const double kBig = 1e30;
  auto cost = [&](std::size_t i, std::size_t j) {
    double v = w.at(i, j);
    return std::isinf(v) ? kBig : -v;
  };
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<std::size_t> match(n + 1, n);  // column -> row (n = free)
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> dist(n + 1, std::numeric_limits<double>::infinity());
    std::vector<std::size_t> from(n + 1, n);
    std::vector<bool> visited(n + 1, false);
    std::size_t j0 = n;  // virtual start column
    match[n] = i;
    do {
      visited[j0] = true;
      std::size_t row = match[j0];
      double delta = std::numeric_limits<double>::infinity();
      std::size_t j1 = n;
      for (std::size_t j = 0; j < n; ++j) {
        if (visited[j]) continue;
        double reduced = cost(row, j) - u[row] - v[j];
        if (reduced < dist[j]) {
          dist[j] = reduced;
          from[j] = j0;
        }
        if (dist[j] < delta) {
          delta = dist[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (visited[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          dist[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != n);
    while (j0 != n) {
      std::size_t prev = from[j0];
      match[j0] = match[prev];
      j0 = prev;
    }
  }
  std::vector<std::size_t> perm(n);
  for (std::size_t j = 0; j < n; ++j) {
    if (match[j] < n) perm[match[j]] = j;
  }
  return perm;
}

}  // namespace

std::vector<std::size_t> max_weight_assignment(const Matrix& weights) {
  if (weights.rows() != weights.cols()) {
    throw ShapeMismatch("assignment requires a square matrix");
  }
  if (weights.rows() == 0) return {};
  if (weights.rows() <= 20) return assignment_subset_dp(weights);
  return assignment_hungarian(weights);
}

PermutationTable discretize(const Matrix& soft, const Atom& atom) {
  if (soft.rows() != soft.cols()) {
    throw ShapeMismatch("discretize requires a square matrix");
  }
  Matrix logw(soft.rows(), soft.cols());
  for (std::size_t i = 0; i < soft.rows(); ++i) {
    for (std::size_t j = 0; j < soft.cols(); ++j) {
      double v = soft.at(i, j);
      logw.at(i, j) = v > 0.0 ? std::log(v) : -std::numeric_limits<double>::infinity();
    }
  }
  std::vector<std::size_t> perm = max_weight_assignment(logw);
  PermutationTable table{atom, Matrix(soft.rows(), soft.cols(), 0.0)};
  for (std::size_t i = 0; i < perm.size(); ++i) table.matrix.at(i, perm[i]) = 1.0;
  return table;
}

PermutationTable discretize(const ScoreMatrix& scores, int iterations) {
  return discretize(sinkhorn(scores.matrix, iterations), scores.atom);
}

ProofStructure assemble_structure(const ProofFrame& frame,
                                  const std::map<Atom, PermutationTable>& tables) {
  InvarianceReport invariance = count_invariance(frame);
  if (!invariance.ok) {
    throw InvarianceViolated("count invariance does not hold; no perfect matching exists");
  }
  ProofStructure s{frame, {}};
  for (const AtomChains& chains : partition_atoms(frame)) {
    auto it = tables.find(chains.atom);
    if (it == tables.end()) {
      throw MissingAtomTable("no permutation table for atom '" + chains.atom.token() + "'");
    }
    const PermutationTable& table = it->second;
    if (table.matrix.rows() != chains.negatives.size() ||
        table.matrix.cols() != chains.positives.size()) {
      throw ShapeMismatch("table for '" + chains.atom.token() + "' is " +
                          std::to_string(table.matrix.rows()) + "x" +
                          std::to_string(table.matrix.cols()) + " but chains are " +
                          std::to_string(chains.negatives.size()) + "x" +
                          std::to_string(chains.positives.size()));
    }
    std::vector<std::size_t> perm = table.permutation();
    for (std::size_t i = 0; i < perm.size(); ++i) {
      s.links.emplace(chains.negatives[i], chains.positives[perm[i]]);
    }
  }
  return s;
}

std::map<Atom, PermutationTable> links_to_tables(const ProofStructure& structure) {
  std::string why;
  if (!validate_structure(structure.frame, structure.links, &why)) {
    throw ShapeMismatch("invalid proof structure: " + why);
  }
  std::map<Atom, PermutationTable> tables;
  std::vector<AtomChains> partition = partition_atoms(structure.frame);
  std::map<std::size_t, std::size_t> positive_rank;  // atom index -> column
  std::map<std::size_t, const AtomChains*> negative_home;
  for (const AtomChains& chains : partition) {
    tables[chains.atom] =
        PermutationTable{chains.atom, Matrix(chains.negatives.size(), chains.positives.size(), 0.0)};
    for (std::size_t j = 0; j < chains.positives.size(); ++j) positive_rank[chains.positives[j]] = j;
    for (std::size_t i = 0; i < chains.negatives.size(); ++i) negative_home[chains.negatives[i]] = &chains;
  }
  for (const auto& [neg, pos] : structure.links) {
    const AtomChains* chains = negative_home.at(neg);
    std::size_t row =
        std::lower_bound(chains->negatives.begin(), chains->negatives.end(), neg) -
        chains->negatives.begin();
    tables.at(chains->atom).matrix.at(row, positive_rank.at(pos)) = 1.0;
  }
  return tables;
}

bool validate_structure(const ProofFrame& frame,
                        const std::set<std::pair<std::size_t, std::size_t>>& links,
                        std::string* why) {
  auto explain = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  std::vector<int> seen(frame.atom_count(), 0);
  for (const auto& [neg, pos] : links) {
    if (neg >= frame.atom_count() || pos >= frame.atom_count()) {
      return explain("link index out of range");
    }
    const FrameNode& n = frame.atom(neg);
    const FrameNode& p = frame.atom(pos);
    if (n.polarity != Polarity::Negative || p.polarity != Polarity::Positive) {
      return explain("link (" + std::to_string(neg) + "," + std::to_string(pos) +
                     ") does not join a negative to a positive atom");
    }
    if (n.content.atom != p.content.atom) {
      return explain("link (" + std::to_string(neg) + "," + std::to_string(pos) +
                     ") joins distinct atoms");
    }
    ++seen[neg];
    ++seen[pos];
  }
  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (seen[i] != 1) {
      return explain("atom " + std::to_string(i) + " appears in " + std::to_string(seen[i]) +
                     " links");
    }
  }
  return true;
}

ScoreMatrix RandomScorer::score(const ProofFrame& frame, const AtomChains& chains) const {
  (void)frame;
  // Stable per (seed, atom): reseed from the atom token so scoring is
  // independent of the order atoms are visited in.
  std::seed_seq seq_init{seed_, std::hash<std::string>{}(chains.atom.token())};
  std::mt19937_64 rng(seq_init);
  std::normal_distribution<double> normal(0.0, 1.0);
  ScoreMatrix s{chains.atom, Matrix(chains.negatives.size(), chains.positives.size())};
  for (double& v : s.matrix.data()) v = normal(rng);
  return s;
}

ProofStructure link_frame(const ProofFrame& frame, const Scorer& scorer, int iterations) {
  std::vector<ScoreMatrix> scores;
  for (const AtomChains& chains : partition_atoms(frame)) {
    scores.push_back(scorer.score(frame, chains));
  }
  return link_frame(frame, scores, iterations);
}

ProofStructure link_frame(const ProofFrame& frame, const std::vector<ScoreMatrix>& scores,
                          int iterations) {
  InvarianceReport invariance = count_invariance(frame);
  if (!invariance.ok) {
    throw InvarianceViolated("count invariance does not hold; frame cannot be linked");
  }
  std::map<Atom, PermutationTable> tables;
  for (const ScoreMatrix& s : scores) {
    tables[s.atom] = discretize(s, iterations);
  }
  return assemble_structure(frame, tables);
}

}  // namespace proofnet
