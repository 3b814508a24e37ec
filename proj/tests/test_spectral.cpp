#include <gtest/gtest.h>

#include "support.hpp"

using namespace gsp;
using gsp::test::max_abs;

namespace {

Graph path2() {
  Matrix a(2, 2);
  a << 0, 1, 1, 0;
  return Graph(a);
}

ProjectorPair random_pair(int n, int s, int f, std::uint64_t seed, SpectralBasis* out_basis = nullptr) {
  Rng rng(seed);
  const SpectralBasis basis = graph_basis(test::connected_rgg(n, 0.35, seed));
  if (out_basis) *out_basis = basis;
  return make_projectors(basis, test::random_vertices(n, s, rng), test::random_frequencies(n, f, rng));
}

}  // namespace

TEST(IndexSet, SortsDeduplicatesAndComplements) {
  const VertexSet s{4, 1, 4, 0};
  EXPECT_EQ(s.ids(), (std::vector<int>{0, 1, 4}));
  EXPECT_TRUE(s.contains(4));
  EXPECT_FALSE(s.contains(2));
  EXPECT_EQ(s.complement(6).ids(), (std::vector<int>{2, 3, 5}));
  EXPECT_EQ(FrequencySet::first(3).ids(), (std::vector<int>{0, 1, 2}));
  EXPECT_TRUE(FrequencySet::first(0).empty());
}

TEST(Eigendecompose, TwoPath) {
  const SpectralBasis b = graph_basis(path2());
  EXPECT_NEAR(b.xi(0), 0.0, 1e-14);
  EXPECT_NEAR(b.xi(1), 2.0, 1e-14);
  EXPECT_NEAR(b.U(0, 0), 1.0 / std::sqrt(2.0), 1e-14);
  EXPECT_NEAR(b.U(1, 0), 1.0 / std::sqrt(2.0), 1e-14);
  EXPECT_GT(b.U(0, 1), 0.0);
}

TEST(Eigendecompose, TwoDisjointEdges) {
  Matrix a = Matrix::Zero(4, 4);
  a(0, 1) = a(1, 0) = a(2, 3) = a(3, 2) = 1.0;
  const SpectralBasis b = graph_basis(Graph(a));
  EXPECT_NEAR(b.xi(0), 0.0, 1e-12);
  EXPECT_NEAR(b.xi(1), 0.0, 1e-12);
  EXPECT_GT(b.xi(2), 1.0);
}

TEST(Eigendecompose, BasisInvariantsOnRandomGraphs) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Graph g = seed % 2 ? test::connected_rgg(8 + static_cast<int>(seed), 0.4, seed) : generate_scale_free(20, 2, seed);
    for (auto kind : {LaplacianKind::Combinatorial, LaplacianKind::Normalized}) {
      const Laplacian l = kind == LaplacianKind::Combinatorial ? build_laplacian(g) : build_normalized_laplacian(g);
      const SpectralBasis b = graph_basis(g, kind);
      const int n = b.size();
      EXPECT_LT(max_abs(b.U.transpose() * b.U - Matrix::Identity(n, n)), 1e-10);
      EXPECT_LT(max_abs(b.U * b.xi.asDiagonal() * b.U.transpose() - l.matrix), 1e-9);
      for (int i = 0; i < n; ++i) {
        EXPECT_LT((l.matrix * b.U.col(i) - b.xi(i) * b.U.col(i)).cwiseAbs().maxCoeff(), 1e-8);
        if (i > 0) {
          EXPECT_LE(b.xi(i - 1), b.xi(i));
        }
        for (int r = 0; r < n; ++r)
          if (std::abs(b.U(r, i)) > 1e-12) {
            EXPECT_GT(b.U(r, i), 0.0);
            break;
          }
      }
    }
  }
}

TEST(Eigendecompose, Deterministic) {
  const Graph g = generate_scale_free(25, 2, 9);
  EXPECT_EQ(graph_basis(g).U, graph_basis(g).U);
}

TEST(Eigendecompose, RejectsNonSquare) {
  EXPECT_THROW(eigendecompose(Matrix::Zero(2, 3)), Error);
}

TEST(Gft, BasisVectorsMapToUnitSpikes) {
  const SpectralBasis b = graph_basis(generate_scale_free(15, 2, 3));
  for (int i = 0; i < b.size(); ++i) {
    Vector e = Vector::Zero(b.size());
    e(i) = 1.0;
    EXPECT_LT((gft(b, b.U.col(i)) - e).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(Gft, ConstantSignalOnConnectedGraph) {
  const SpectralBasis b = graph_basis(generate_scale_free(20, 2, 1));
  const Vector xh = gft(b, Vector::Constant(20, 3.0));
  EXPECT_LT(xh.tail(19).cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_NEAR(std::abs(xh(0)), 3.0 * std::sqrt(20.0), 1e-10);
}

TEST(Gft, ParsevalAndRoundTrip) {
  Rng rng(5);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const SpectralBasis b = graph_basis(generate_scale_free(30, 2, seed));
    const Vector x = test::random_vector(30, rng);
    EXPECT_NEAR(gft(b, x).norm(), x.norm(), 1e-10);
    EXPECT_LT((igft(b, gft(b, x)) - x).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_LT((gft(b, igft(b, x)) - x).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(Gft, DimensionMismatch) {
  const SpectralBasis b = graph_basis(path2());
  EXPECT_THROW(gft(b, Vector::Zero(3)), Error);
  EXPECT_THROW(igft(b, Vector::Zero(1)), Error);
}

TEST(Projectors, FullBandIsIdentityAndEmptySetIsZero) {
  const SpectralBasis b = graph_basis(generate_scale_free(12, 2, 0));
  const ProjectorPair full = make_projectors(b, VertexSet{}, FrequencySet::first(12));
  EXPECT_LT(max_abs(full.B() - Matrix::Identity(12, 12)), 1e-10);
  EXPECT_EQ(full.D(), Matrix::Zero(12, 12));
}

TEST(Projectors, InvariantsOnRandomSets) {
  Rng rng(17);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const int n = 10 + static_cast<int>(seed % 10);
    const int s = static_cast<int>(rng.below(static_cast<std::uint64_t>(n + 1)));
    const int f = static_cast<int>(rng.below(static_cast<std::uint64_t>(n + 1)));
    const ProjectorPair p = random_pair(n, s, f, seed);
    const Matrix d = p.D();
    const Matrix& bm = p.B();
    const Matrix id = Matrix::Identity(n, n);
    EXPECT_LT(max_abs(bm * bm - bm), 1e-10);
    EXPECT_EQ(d * d, d);
    EXPECT_EQ(bm, bm.transpose());
    EXPECT_EQ(d.trace(), s);
    EXPECT_NEAR(bm.trace(), f, 1e-8);
    EXPECT_EQ(d + p.Dbar(), id);
    EXPECT_LT(max_abs(bm + p.Bbar() - id), 1e-10);
    const Vector x = test::random_vector(n, rng);
    EXPECT_LE(p.apply_B(x).norm(), x.norm() + 1e-12);
    EXPECT_LE(p.apply_D(x).norm(), x.norm());
    EXPECT_LT((p.apply_B(x) - bm * x).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_EQ(p.apply_Dbar(x), p.Dbar() * x);
  }
}

TEST(Projectors, ComplementsSwapRoles) {
  SpectralBasis basis;
  const ProjectorPair p = random_pair(14, 5, 4, 3, &basis);
  const ProjectorPair vc = p.with_vertex_complement();
  EXPECT_EQ(vc.D(), p.Dbar());
  EXPECT_EQ(vc.vertices(), p.vertices().complement(14));
  const ProjectorPair bc = p.with_band_complement();
  EXPECT_LT(max_abs(bc.B() - p.Bbar()), 1e-10);
  EXPECT_EQ(bc.frequencies(), p.frequencies().complement(14));
  EXPECT_EQ(bc.band_basis().cols(), 10);
}

TEST(Projectors, BIsBasisInvariantUnderDegenerateEigenspaces) {
  // K4 has a triple eigenvalue 4; any basis of that eigenspace gives the same
  // projector onto the full band {1, 2, 3}.
  const Graph g(Matrix::Ones(4, 4) - Matrix::Identity(4, 4));
  const SpectralBasis b = graph_basis(g);
  const Matrix bm = make_projectors(b, VertexSet{}, FrequencySet{1, 2, 3}).B();
  EXPECT_LT(max_abs(bm - (Matrix::Identity(4, 4) - Matrix::Constant(4, 4, 0.25))), 1e-10);
}

TEST(Projectors, OutOfRange) {
  const SpectralBasis b = graph_basis(path2());
  EXPECT_THROW(make_projectors(b, VertexSet{2}, FrequencySet{}), Error);
  EXPECT_THROW(make_projectors(b, VertexSet{}, FrequencySet{-1}), Error);
  try {
    make_projectors(b, VertexSet{0}, FrequencySet{5});
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::IndexOutOfRange);
  }
}
