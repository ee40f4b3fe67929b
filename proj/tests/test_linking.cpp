#include <cmath>
#include <random>

#include "doctest.h"
#include "proofnet/errors.hpp"
#include "proofnet/linking.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"

using namespace proofnet;

namespace {

Matrix from_rows(std::vector<std::vector<double>> rows) {
  Matrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

double worst_marginal(const Matrix& m) {
  double worst = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < m.cols(); ++j) row += m.at(i, j);
    worst = std::max(worst, std::abs(row - 1.0));
  }
  for (std::size_t j = 0; j < m.cols(); ++j) {
    double col = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) col += m.at(i, j);
    worst = std::max(worst, std::abs(col - 1.0));
  }
  return worst;
}

PermutationTable identity_table(const Atom& atom, std::size_t n) {
  PermutationTable t{atom, Matrix(n, n, 0.0)};
  for (std::size_t i = 0; i < n; ++i) t.matrix.at(i, i) = 1.0;
  return t;
}

}  // namespace

TEST_CASE("partition_atoms orders chains by index, atoms by token") {
  ProofFrame f = fixtures::dutch_frame();
  auto chains = partition_atoms(f);
  REQUIRE(chains.size() == 6);
  CHECK(chains[0].atom.token() == "adj");
  CHECK(chains[1].atom.token() == "n");
  CHECK(chains[2].atom.token() == "np");
  CHECK(chains[3].atom.token() == "pron");
  CHECK(chains[4].atom.token() == "s_main");
  CHECK(chains[5].atom.token() == "s_sub");
  CHECK(chains[3].negatives == std::vector<std::size_t>{8, 9});
  CHECK(chains[3].positives == std::vector<std::size_t>{3, 7});
  CHECK(chains[2].negatives == std::vector<std::size_t>{5, 12});
  CHECK(chains[2].positives == std::vector<std::size_t>{1, 6});
  CHECK(chains[1].negatives == std::vector<std::size_t>{0});
  CHECK(chains[1].positives == std::vector<std::size_t>{2});
  CHECK(chains[4].negatives == std::vector<std::size_t>{15});
  CHECK(chains[4].positives == std::vector<std::size_t>{13});
}

TEST_CASE("partition of the axiom frame") {
  Vocabulary vocab = Vocabulary::defaults();
  Type np = parse_type("np", vocab);
  ProofFrame f = build_frame({{"x", np}}, np);
  auto chains = partition_atoms(f);
  REQUIRE(chains.size() == 1);
  CHECK(chains[0].negatives == std::vector<std::size_t>{1});
  CHECK(chains[0].positives == std::vector<std::size_t>{0});
}

TEST_CASE("sinkhorn basics") {
  SUBCASE("1x1 normalizes to one") {
    Matrix m = sinkhorn(from_rows({{7.3}}), 1);
    CHECK(m.at(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
    m = sinkhorn(from_rows({{-123.0}}), 5);
    CHECK(m.at(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("all-zero 2x2 stays uniform") {
    Matrix m = sinkhorn(Matrix(2, 2, 0.0), 5);
    for (std::size_t i = 0; i < 2; ++i) {
      for (std::size_t j = 0; j < 2; ++j) {
        CHECK(m.at(i, j) == doctest::Approx(0.5).epsilon(1e-12));
      }
    }
  }
  SUBCASE("strong diagonal saturates by five iterations") {
    Matrix m = sinkhorn(from_rows({{10.0, 0.0}, {0.0, 10.0}}), 5);
    CHECK(m.at(0, 0) >= 0.9999);
    CHECK(m.at(1, 1) >= 0.9999);
    CHECK(m.at(0, 1) <= 1e-4);
    CHECK(m.at(1, 0) <= 1e-4);
    CHECK(worst_marginal(m) <= 1e-6);
  }
}

TEST_CASE("sinkhorn marginals converge and shifts cancel") {
  gen::Rng rng(611);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> shift(-5.0, 5.0);
  for (int trial = 0; trial < 50; ++trial) {
    Matrix x(8, 8);
    for (double& v : x.data()) v = normal(rng);
    CHECK(worst_marginal(sinkhorn(x, 20)) <= 1e-4);
    CHECK(worst_marginal(sinkhorn(x, 5)) <= 5e-2);

    double c = shift(rng);
    Matrix shifted = x;
    for (double& v : shifted.data()) v += c;
    Matrix a = sinkhorn(x, 5);
    Matrix b = sinkhorn(shifted, 5);
    for (std::size_t k = 0; k < a.data().size(); ++k) {
      CHECK(std::abs(a.data()[k] - b.data()[k]) <= 1e-9);
    }
  }
}

TEST_CASE("discretize picks the max-weight permutation, ties go low") {
  Atom a("a");
  SUBCASE("identity dominant") {
    auto t = discretize(from_rows({{0.99, 0.01}, {0.01, 0.99}}), a);
    CHECK(t.permutation() == std::vector<std::size_t>{0, 1});
  }
  SUBCASE("anti-diagonal dominant") {
    auto t = discretize(from_rows({{0.1, 0.9}, {0.9, 0.1}}), a);
    CHECK(t.permutation() == std::vector<std::size_t>{1, 0});
  }
  SUBCASE("uniform matrix resolves to the identity") {
    auto t = discretize(Matrix(3, 3, 1.0 / 3.0), a);
    CHECK(t.permutation() == std::vector<std::size_t>{0, 1, 2});
  }
  SUBCASE("a permutation matrix is a fixed point") {
    gen::Rng rng(13);
    for (int trial = 0; trial < 50; ++trial) {
      std::size_t n = 1 + trial % 7;
      std::vector<std::size_t> perm(n);
      for (std::size_t i = 0; i < n; ++i) perm[i] = i;
      std::shuffle(perm.begin(), perm.end(), rng);
      Matrix p(n, n, 0.0);
      for (std::size_t i = 0; i < n; ++i) p.at(i, perm[i]) = 1.0;
      CHECK(discretize(p, a).permutation() == perm);
    }
  }
  SUBCASE("zero entries are never chosen when avoidable") {
    auto t = discretize(from_rows({{0.0, 1.0}, {1.0, 1.0}}), a);
    CHECK(t.permutation() == std::vector<std::size_t>{1, 0});
  }
}

TEST_CASE("noisy permutations are recovered through sinkhorn + discretize") {
  gen::Rng rng(8675309);
  std::normal_distribution<double> noise(0.0, 1.0);
  int recovered = 0;
  const int trials = 100;
  for (int trial = 0; trial < trials; ++trial) {
    const std::size_t n = 8;
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    Matrix x(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        x.at(i, j) = (perm[i] == j ? 0.0 : -30.0) + 0.1 * noise(rng);
      }
    }
    auto t = discretize(sinkhorn(x, 5), Atom("a"));
    if (t.permutation() == perm) ++recovered;
  }
  CHECK(recovered >= 99);
}

TEST_CASE("assemble_structure reproduces the reference links") {
  ProofFrame f = fixtures::dutch_frame();
  std::map<Atom, PermutationTable> tables;
  tables[Atom("n")] = identity_table(Atom("n"), 1);
  tables[Atom("adj")] = identity_table(Atom("adj"), 1);
  tables[Atom("s", "main")] = identity_table(Atom("s", "main"), 1);
  tables[Atom("s", "sub")] = identity_table(Atom("s", "sub"), 1);
  tables[Atom("pron")] = identity_table(Atom("pron"), 2);
  tables[Atom("np")] = identity_table(Atom("np"), 2);
  ProofStructure s = assemble_structure(f, tables);
  CHECK(s.links == fixtures::kDutchLinks);
  CHECK(validate_structure(s.frame, s.links));
}

TEST_CASE("assemble_structure on the axiom frame") {
  Vocabulary vocab = Vocabulary::defaults();
  Type np = parse_type("np", vocab);
  ProofFrame f = build_frame({{"x", np}}, np);
  ProofStructure s = assemble_structure(f, {{Atom("np"), identity_table(Atom("np"), 1)}});
  CHECK(s.links == std::set<std::pair<std::size_t, std::size_t>>{{1, 0}});
}

TEST_CASE("assemble_structure error paths") {
  ProofFrame f = fixtures::dutch_frame();
  std::map<Atom, PermutationTable> tables;
  SUBCASE("missing table") {
    CHECK_THROWS_AS(assemble_structure(f, tables), MissingAtomTable);
  }
  SUBCASE("wrong shape") {
    tables[Atom("adj")] = identity_table(Atom("adj"), 1);
    tables[Atom("n")] = identity_table(Atom("n"), 1);
    tables[Atom("np")] = identity_table(Atom("np"), 3);  // chains are 2x2
    tables[Atom("pron")] = identity_table(Atom("pron"), 2);
    tables[Atom("s", "main")] = identity_table(Atom("s", "main"), 1);
    tables[Atom("s", "sub")] = identity_table(Atom("s", "sub"), 1);
    CHECK_THROWS_AS(assemble_structure(f, tables), ShapeMismatch);
  }
  SUBCASE("non-permutation matrix") {
    PermutationTable bad{Atom("np"), Matrix(2, 2, 0.0)};
    bad.matrix.at(0, 0) = 1.0;
    bad.matrix.at(1, 0) = 1.0;  // column reused
    tables[Atom("adj")] = identity_table(Atom("adj"), 1);
    tables[Atom("n")] = identity_table(Atom("n"), 1);
    tables[Atom("np")] = bad;
    tables[Atom("pron")] = identity_table(Atom("pron"), 2);
    tables[Atom("s", "main")] = identity_table(Atom("s", "main"), 1);
    tables[Atom("s", "sub")] = identity_table(Atom("s", "sub"), 1);
    CHECK_THROWS_AS(assemble_structure(f, tables), ShapeMismatch);
  }
  SUBCASE("invariance violated") {
    Vocabulary vocab = Vocabulary::defaults();
    ProofFrame bad = build_frame({{"w", parse_type("np", vocab)}},
                                 parse_type("s_main", vocab));
    CHECK_THROWS_AS(assemble_structure(bad, tables), InvarianceViolated);
  }
}

TEST_CASE("links_to_tables inverts assemble_structure") {
  ProofFrame f = fixtures::dutch_frame();
  ProofStructure s{f, fixtures::kDutchLinks};
  auto tables = links_to_tables(s);
  CHECK(tables.at(Atom("pron")).permutation() == std::vector<std::size_t>{0, 1});
  CHECK(tables.at(Atom("np")).permutation() == std::vector<std::size_t>{0, 1});
  CHECK(tables.at(Atom("n")).permutation() == std::vector<std::size_t>{0});
  CHECK(assemble_structure(f, tables).links == s.links);

  gen::Rng rng(612);
  for (int trial = 0; trial < 200; ++trial) {
    ProofFrame g = gen::random_invariant_frame(rng);
    ProofStructure t{g, gen::random_matching(rng, g)};
    CHECK(assemble_structure(g, links_to_tables(t)).links == t.links);
  }
}

TEST_CASE("link_frame recovers the intended structure from oracle-built scores") {
  ProofFrame f = fixtures::dutch_frame();
  std::vector<ScoreMatrix> scores;
  for (const AtomChains& chains : partition_atoms(f)) {
    ScoreMatrix s{chains.atom,
                  Matrix(chains.negatives.size(), chains.positives.size(), 0.0)};
    for (std::size_t i = 0; i < chains.negatives.size(); ++i) {
      for (std::size_t j = 0; j < chains.positives.size(); ++j) {
        if (fixtures::kDutchLinks.count({chains.negatives[i], chains.positives[j]})) {
          s.matrix.at(i, j) = 10.0;
        }
      }
    }
    scores.push_back(std::move(s));
  }
  ProofStructure s = link_frame(f, scores);
  CHECK(s.links == fixtures::kDutchLinks);
}

TEST_CASE("random scorer is deterministic per seed") {
  ProofFrame f = fixtures::dutch_frame();
  ProofStructure a = link_frame(f, RandomScorer(42));
  ProofStructure b = link_frame(f, RandomScorer(42));
  CHECK(a.links == b.links);
}
