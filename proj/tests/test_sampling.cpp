#include <gtest/gtest.h>

#include "support.hpp"

using namespace gsp;
using gsp::test::max_abs;

namespace {

struct Instance {
  SpectralBasis basis;
  ProjectorPair pair;
};

Instance make_instance(const Graph& g, const VertexSet& s, const FrequencySet& f) {
  SpectralBasis basis = graph_basis(g);
  ProjectorPair pair = make_projectors(basis, s, f);
  return {std::move(basis), std::move(pair)};
}

/// SF graph with a random sample set that satisfies the sampling condition.
Instance admissible_sf(int n, int bandwidth, int samples, std::uint64_t seed) {
  for (std::uint64_t k = 0;; ++k) {
    Rng rng(derive_seed(seed, k));
    Instance in = make_instance(generate_scale_free(n, 2, derive_seed(seed, k)),
                                test::random_vertices(n, samples, rng), FrequencySet::first(bandwidth));
    if (check_sampling_condition(in.pair)) return in;
  }
}

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no gsp::Error thrown";
  return ErrorCode::ConfigError;
}

Graph two_triangles() {
  Matrix a = Matrix::Zero(6, 6);
  for (int base : {0, 3})
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        if (i != j) a(base + i, base + j) = 1.0;
  return Graph(a);
}

}  // namespace

TEST(SampledSignal, ZeroOffSet) {
  Vector x(4);
  x << 1, 2, 3, 4;
  const SampledSignal xs = sample(x, VertexSet{1, 3});
  Vector expect(4);
  expect << 0, 2, 0, 4;
  EXPECT_EQ(xs.values(), expect);
  EXPECT_THROW(sample(x, VertexSet{4}), Error);
}

TEST(SamplingCondition, TrivialCases) {
  const Graph g = generate_scale_free(12, 2, 1);
  EXPECT_TRUE(check_sampling_condition(make_instance(g, VertexSet::first(12), FrequencySet::first(5)).pair));
  EXPECT_FALSE(check_sampling_condition(make_instance(g, VertexSet{0, 1, 2}, FrequencySet::first(5)).pair));
}

TEST(SamplingCondition, UnsampledComponent) {
  // The band holds the indicator of the second triangle, which no sample sees.
  const Graph g = two_triangles();
  SpectralBasis basis = graph_basis(g);
  basis.U.col(0) = Vector::Zero(6);
  basis.U.col(0).head(3).setConstant(1.0 / std::sqrt(3.0));
  basis.U.col(1) = Vector::Zero(6);
  basis.U.col(1).tail(3).setConstant(1.0 / std::sqrt(3.0));
  const ProjectorPair p = make_projectors(basis, VertexSet{0, 1, 2}, FrequencySet{0, 1});
  EXPECT_FALSE(check_sampling_condition(p));
  EXPECT_LT(db_rank(p), 2);
  const GMatrix gm = g_matrix(basis, VertexSet{0, 1, 2}, FrequencySet{0, 1});
  EXPECT_FALSE(gm.full_column_rank);
  EXPECT_LT(gm.singular_values(1), 1e-12);
  EXPECT_TRUE(is_perfectly_localized(p.with_vertex_complement()));
}

TEST(GMatrix, FullVertexSetHasOrthonormalColumns) {
  const SpectralBasis b = graph_basis(generate_scale_free(15, 2, 4));
  const GMatrix gm = g_matrix(b, VertexSet::first(15), FrequencySet{2, 5, 7});
  EXPECT_EQ(gm.g, b.columns(FrequencySet{2, 5, 7}));
  EXPECT_LT(max_abs(gm.g.transpose() * gm.g - Matrix::Identity(3, 3)), 1e-12);
  EXPECT_TRUE(gm.full_column_rank);
}

TEST(GMatrix, EntriesAndSingularValuesMatchDb) {
  Rng rng(8);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const SpectralBasis b = graph_basis(generate_scale_free(16, 2, seed));
    const VertexSet s = test::random_vertices(16, 7, rng);
    const FrequencySet f = test::random_frequencies(16, 4, rng);
    const GMatrix gm = g_matrix(b, s, f);
    for (int r = 0; r < s.size(); ++r)
      for (int c = 0; c < f.size(); ++c) EXPECT_EQ(gm.g(r, c), b.U(s[r], f[c]));
    const ProjectorPair p = make_projectors(b, s, f);
    const Vector full = Eigen::JacobiSVD<Matrix>(p.D() * p.B()).singularValues();
    EXPECT_LT((gm.singular_values - full.head(4)).cwiseAbs().maxCoeff(), 1e-9);
  }
}

TEST(SamplingTheorem, ThreeConditionsAgree) {
  Rng rng(21);
  int held = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const int n = 8 + static_cast<int>(seed % 13);
    const int f = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n / 2)));
    const int s = static_cast<int>(rng.below(static_cast<std::uint64_t>(n + 1)));
    const Graph g = seed % 2 ? test::connected_rgg(n, 0.4, seed) : generate_scale_free(n, 1 + static_cast<int>(seed % 2), seed);
    const VertexSet sv = test::random_vertices(n, s, rng);
    const FrequencySet fv = seed % 3 ? FrequencySet::first(f) : test::random_frequencies(n, f, rng);
    const Instance in = make_instance(g, sv, fv);
    const bool a = check_sampling_condition(in.pair);
    const bool b = db_rank(in.pair) == f;
    const bool c = g_matrix(in.basis, sv, fv).full_column_rank;
    EXPECT_EQ(a, b) << "seed " << seed;
    EXPECT_EQ(a, c) << "seed " << seed;
    held += a;
    if (is_perfectly_localized(in.pair.with_vertex_complement())) {
      EXPECT_FALSE(a);
    }
  }
  EXPECT_GT(held, 20);
  EXPECT_LT(held, 190);
}

TEST(SamplingTheorem, InverseIdentityOnBand) {
  Rng rng(2);
  const Instance in = admissible_sf(25, 4, 8, 3);
  const Matrix op = Matrix::Identity(25, 25) - in.pair.Dbar() * in.pair.B();
  for (int k = 0; k < 10; ++k) {
    const Vector x = random_bandlimited(in.pair, rng);
    EXPECT_LT(((op * x) - in.pair.D() * in.pair.B() * x).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(Recovery, FullSampleSetIsIdentity) {
  Rng rng(4);
  const Instance in = make_instance(generate_scale_free(15, 2, 2), VertexSet::first(15), FrequencySet::first(4));
  const Vector x = random_bandlimited(in.pair, rng);
  const SampledSignal xs = sample(x, in.pair.vertices());
  EXPECT_LT((recover_inverse(xs, in.pair) - x).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LT((recover_concentrated(xs, concentrated_basis(in.pair)) - x).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Recovery, AllMethodsExactAndAgree) {
  Rng rng(9);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Instance in = admissible_sf(30, 5, 8, seed);
    const Vector x = random_bandlimited(in.pair, rng);
    const SampledSignal xs = sample(x, in.pair.vertices());
    const Vector a = recover_inverse(xs, in.pair);
    const Vector an = recover_inverse(xs, in.pair, InverseMode::Neumann);
    const Vector b = recover_concentrated(xs, concentrated_basis(in.pair));
    const Vector c = recover_frame(xs, in.pair, canonical_frame(in.pair));
    EXPECT_LT((a - x).norm() / x.norm(), 1e-8);
    EXPECT_LT((an - x).norm() / x.norm(), 1e-7);
    EXPECT_LT((a - b).cwiseAbs().maxCoeff(), 1e-7);
    EXPECT_LT((b - c).cwiseAbs().maxCoeff(), 1e-8);
  }
}

TEST(Recovery, OutOfBandPartIsProjectedAway) {
  Rng rng(12);
  const Instance in = admissible_sf(30, 5, 10, 7);
  const Vector x = test::random_vector(30, rng);
  const ConcentratedBasis cb = concentrated_basis(in.pair);
  // Oracle: D x = D B x + D Bbar x; only the first term is an exact sample of
  // a band signal, so subtract the recovered map of the second from the total.
  const Vector bx = in.pair.apply_B(x);
  const Vector from_full = recover_concentrated(sample(x, in.pair.vertices()), cb);
  const Vector from_band = recover_concentrated(sample(bx, in.pair.vertices()), cb);
  const Vector from_rest = recover_concentrated(sample(x - bx, in.pair.vertices()), cb);
  EXPECT_LT((from_band - bx).cwiseAbs().maxCoeff(), 1e-8);
  EXPECT_LT((from_full - from_band - from_rest).cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_LT((in.pair.apply_B(from_full) - from_full).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(Recovery, ViolatedConditionRaises) {
  const Instance in = make_instance(generate_scale_free(12, 2, 1), VertexSet{0, 1}, FrequencySet::first(4));
  const SampledSignal xs = sample(Vector::Ones(12), in.pair.vertices());
  EXPECT_EQ(code_of([&] { recover_inverse(xs, in.pair); }), ErrorCode::SamplingConditionViolated);
  EXPECT_EQ(code_of([&] { recover_concentrated(xs, concentrated_basis(in.pair)); }), ErrorCode::SamplingConditionViolated);
  EXPECT_EQ(code_of([&] { recover_frame(xs, in.pair, canonical_frame(in.pair)); }), ErrorCode::FrameNotInvertible);
  EXPECT_EQ(code_of([&] { predicted_mse(concentrated_basis(in.pair), 1.0); }), ErrorCode::SamplingConditionViolated);
  const SampledSignal other = sample(Vector::Ones(12), VertexSet{0, 2});
  EXPECT_EQ(code_of([&] { recover_inverse(other, in.pair); }), ErrorCode::DimensionMismatch);
}

TEST(Frames, CanonicalBoundsMatchConcentrationSpectrum) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Instance in = admissible_sf(25, 4, 9, seed);
    const ConcentratedBasis cb = concentrated_basis(in.pair);
    const FrameSpec spec = canonical_frame(in.pair);
    const FrameBounds fb = frame_analysis(in.pair, spec);
    EXPECT_TRUE(fb.invertible);
    EXPECT_NEAR(fb.upper, cb.sigma_sq(0), 1e-10);
    EXPECT_NEAR(fb.lower, cb.sigma_sq(cb.size() - 1), 1e-10);
    EXPECT_LT(spec.band_residual(in.pair), 1e-8);
    EXPECT_EQ(spec.support_residual(in.pair), 0.0);
    EXPECT_NEAR(predicted_mse_frame(in.pair, spec, 0.7), predicted_mse(cb, 0.7), 1e-9);
    EXPECT_NEAR(frame_noise_mse(in.pair, spec, 0.7), predicted_mse(cb, 0.7), 1e-9);
  }
}

TEST(Frames, ZeroFrameIsNotInvertible) {
  const Instance in = admissible_sf(20, 3, 8, 1);
  const FrameSpec spec = make_frame(in.pair, Matrix::Zero(20, 20));
  const FrameBounds fb = frame_analysis(in.pair, spec);
  EXPECT_EQ(fb.lower, 0.0);
  EXPECT_EQ(fb.upper, 0.0);
  EXPECT_FALSE(fb.invertible);
  EXPECT_EQ(code_of([&] { recover_frame(sample(Vector::Ones(20), in.pair.vertices()), in.pair, spec); }),
            ErrorCode::FrameNotInvertible);
  EXPECT_EQ(code_of([&] { predicted_mse_frame(in.pair, spec, 1.0); }), ErrorCode::FrameNotInvertible);
}

TEST(Frames, InvariantsHoldForArbitraryY) {
  Rng rng(3);
  const Instance in = admissible_sf(20, 3, 8, 2);
  Matrix y(20, 20);
  for (int i = 0; i < 20; ++i)
    for (int j = 0; j < 20; ++j) y(i, j) = rng.normal();
  const FrameSpec spec = make_frame(in.pair, y);
  EXPECT_LT(spec.band_residual(in.pair), 1e-8);
  EXPECT_EQ(spec.support_residual(in.pair), 0.0);
  EXPECT_THROW(make_frame(in.pair, Matrix::Zero(3, 3)), Error);
}

TEST(Frames, LocalSetFrames) {
  Rng rng(6);
  int checked = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Graph g = test::connected_rgg(60, 0.25, seed);
    const VertexSet s = test::random_vertices(60, 15, rng);
    const Instance in = make_instance(g, s, FrequencySet::first(6));
    if (!check_sampling_condition(in.pair)) continue;
    ++checked;
    const FrameSpec zero_radius = local_set_frame(g, s, 0.0, in.pair);
    EXPECT_LT(max_abs(zero_radius.Y() - canonical_frame(in.pair).Y()), 1e-14);

    const FrameSpec local = local_set_frame(g, s, 0.1, in.pair);
    EXPECT_LT(local.band_residual(in.pair), 1e-8);
    EXPECT_EQ(local.support_residual(in.pair), 0.0);
    if (frame_analysis(in.pair, local).invertible) {
      const Vector x = random_bandlimited(in.pair, rng);
      const Vector xh = recover_frame(sample(x, s), in.pair, local);
      EXPECT_LT((xh - x).norm() / x.norm(), 1e-7);
    }

    const FrameSpec whole = local_set_frame(g, s, kMaxTorusDistance, in.pair);
    const Vector b1 = in.pair.apply_B(Vector::Ones(60));
    for (int u : s) EXPECT_LT((whole.Y().col(u) - b1).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_FALSE(frame_analysis(in.pair, whole).invertible);
  }
  EXPECT_GT(checked, 0);
  const Graph plain = generate_scale_free(10, 2, 0);
  const Instance in = make_instance(plain, VertexSet{0, 1, 2}, FrequencySet::first(2));
  EXPECT_EQ(code_of([&] { local_set_frame(plain, VertexSet{0, 1, 2}, 0.1, in.pair); }), ErrorCode::MissingCoordinates);
}

TEST(Mse, TrivialValues) {
  const Instance in = make_instance(generate_scale_free(12, 2, 1), VertexSet::first(12), FrequencySet::first(5));
  EXPECT_NEAR(predicted_mse(concentrated_basis(in.pair), 1.0), 5.0, 1e-10);
  EXPECT_EQ(predicted_mse(concentrated_basis(in.pair), 0.0), 0.0);
  EXPECT_EQ(predicted_mse_frame(in.pair, canonical_frame(in.pair), 0.0), 0.0);
}

TEST(Mse, MonteCarloMatchesPrediction) {
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const Instance in = admissible_sf(30, 5, 10, seed);
    const ConcentratedBasis cb = concentrated_basis(in.pair);
    Rng rng(derive_seed(seed, 1));
    double total = 0.0;
    const int draws = 4000;
    for (int d = 0; d < draws; ++d) {
      const Vector noise = test::random_vector(30, rng);
      total += recover_concentrated(sample(noise, in.pair.vertices()), cb).squaredNorm();
    }
    const double pred = predicted_mse(cb, 1.0);
    EXPECT_NEAR(total / draws / pred, 1.0, 0.05);
  }
}

TEST(Mse, FrameMonteCarloOnLocalSets) {
  const Graph g = test::connected_rgg(100, 0.1883, 4);
  for (std::uint64_t k = 0;; ++k) {
    Rng rng(derive_seed(4, k));
    const VertexSet s = test::random_vertices(100, 20, rng);
    const Instance in = make_instance(g, s, FrequencySet::first(10));
    const FrameSpec spec = local_set_frame(g, s, 0.1883, in.pair);
    if (!frame_analysis(in.pair, spec).invertible) continue;
    double total = 0.0;
    const int draws = 4000;
    for (int d = 0; d < draws; ++d)
      total += recover_frame(sample(test::random_vector(100, rng), s), in.pair, spec).squaredNorm();
    EXPECT_NEAR(total / draws / frame_noise_mse(in.pair, spec, 1.0), 1.0, 0.05);
    break;
  }
}

TEST(Recover, ReportDiagnostics) {
  Rng rng(1);
  const Instance in = admissible_sf(30, 5, 9, 11);
  const Vector x = random_bandlimited(in.pair, rng);
  const SampledSignal xs = sample(x, in.pair.vertices());
  for (auto m : {RecoveryMethod::Inverse, RecoveryMethod::Concentrated, RecoveryMethod::Frame}) {
    const RecoveryReport rep = recover(xs, in.pair, m, x);
    EXPECT_GE(rep.relative_error, 0.0);
    EXPECT_LT(rep.relative_error, 1e-7);
    EXPECT_GE(rep.condition, 0.0);
    EXPECT_LE(rep.condition, 1.0);
    EXPECT_NEAR(rep.predicted_mse, predicted_mse(concentrated_basis(in.pair), 1.0), 1e-8);
  }
  EXPECT_EQ(recover(xs, in.pair, RecoveryMethod::Inverse).relative_error, 0.0);
}
