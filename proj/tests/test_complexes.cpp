#include "doctest.h"
#include "support/complex_testing.hpp"

using namespace quiverkit;

namespace {

constexpr const char* kDiamondBa = R"(field Q
vertices 1 2 3 4
arrow a : 1 -> 2
arrow b : 2 -> 4
arrow c : 1 -> 3
arrow d : 3 -> 4
relations
  b*a
end
)";

constexpr const char* kDiamondBaDc = R"(field Q
vertices 1 2 3 4
arrow a : 1 -> 2
arrow b : 2 -> 4
arrow c : 1 -> 3
arrow d : 3 -> 4
relations
  b*a
  d*c
end
)";

constexpr const char* kDualNumbers = "field Q\nvertices 1\narrow t : 1 -> 1\nrelations\n t*t\nend\n";

AlgebraPtr alg(const char* text) { return path_basis_algebra(parse_presentation(text)); }

Vec algebra_element(const AlgebraPtr& a, const char* path_str) {
  // Resolves a basis path by its rendered name ("b*a", "e_1").
  const auto& info = *a->presented();
  for (std::size_t bi = 0; bi < a->dim(); ++bi)
    if (info.basis_paths[bi].str(info.presentation.quiver) == path_str)
      return vec_unit(a->field(), a->dim(), bi);
  FAIL("no basis path named ", path_str);
  return vec_zero(a->field(), a->dim());
}

ProjComplex two_term(const AlgebraPtr& a, int lo, std::vector<int> t0, std::vector<int> t1,
                     std::vector<std::vector<Vec>> d) {
  ProjComplex c{a, lo, {std::move(t0), std::move(t1)}, {std::move(d)}};
  c.validate();
  return c;
}

}  // namespace

TEST_CASE("dimension vectors") {
  auto a = alg(kDiamondBa);
  SUBCASE("zero complex") {
    CHECK(cohomology_dim_vector(zero_complex(a)).empty());
    CHECK(component_dim_vector(zero_complex(a)).empty());
  }
  SUBCASE("stalk P_1 in degree 0") {
    auto c = stalk_complex(a, 0, 0);
    CHECK(component_dim_vector(c) == DimVector{{0, 4}});  // P_1 = {e1, a, c, dc}
    CHECK(cohomology_dim_vector(c) == DimVector{{0, 4}});
  }
  SUBCASE("P_1 -> P_4 (only the zero map exists): dims (4, 1)") {
    auto c = two_term(a, 0, {0}, {3}, {{vec_zero(a->field(), a->dim())}});
    CHECK(component_dim_vector(c) == DimVector{{0, 4}, {1, 1}});
  }
  SUBCASE("direct sums double the component vector") {
    auto c = stalk_complex(a, 1, 0);
    ProjComplex dbl{a, 0, {{1, 1}}, {}};
    auto one = component_dim_vector(c);
    auto two = component_dim_vector(dbl);
    CHECK(two[0] == 2 * one[0]);
  }
}

TEST_CASE("homotopical minimality and minimization") {
  auto a = alg(kDiamondBa);
  SUBCASE("stalks are minimal; unit maps are not") {
    CHECK(is_homotopically_minimal(stalk_complex(a, 0, 0)));
    auto e1 = algebra_element(a, "e_1");
    auto cone = two_term(a, 0, {0}, {0}, {{e1}});
    CHECK_FALSE(is_homotopically_minimal(cone));
    // The cone of the identity is contractible.
    auto m = minimize(cone);
    CHECK(m.is_zero_complex());
  }
  SUBCASE("a radical map is already minimal") {
    auto c = two_term(a, 0, {1}, {0}, {{algebra_element(a, "a")}});  // P_2 --a--> P_1
    CHECK(is_homotopically_minimal(c));
    auto m = minimize(c);
    CHECK(m.terms == c.terms);
    CHECK(cohomology_dim_vector(m) == cohomology_dim_vector(c));
  }
  SUBCASE("mixed unit: one-summand cancellation preserves cohomology") {
    // rows (P_2, P_2), cols (P_1, P_2); unit in slot (0, 1).
    auto aelt = algebra_element(a, "a");
    auto e2 = algebra_element(a, "e_2");
    auto z = vec_zero(a->field(), a->dim());
    ProjComplex c{a, 0, {{1, 1}, {0, 1}}, {{{aelt, e2}, {aelt, z}}}};
    c.validate();
    auto before = cohomology_dim_vector(c);
    auto m = minimize(c);
    CHECK(is_homotopically_minimal(m));
    CHECK(cohomology_dim_vector(m) == before);
    CHECK(m.terms == std::vector<std::vector<int>>{{1}, {0}});
    // Minimization never raises component dimensions.
    auto cb = component_dim_vector(c);
    auto ca = component_dim_vector(m);
    for (const auto& [deg, dim] : ca) CHECK(dim <= cb[deg]);
  }
  SUBCASE("randomized complexes: minimize preserves cohomology, lands minimal (seeded)") {
    std::mt19937_64 rng(424242);
    for (const char* fixture : {kDiamondBa, kDiamondBaDc, kDualNumbers}) {
      auto algebra = alg(fixture);
      for (int t = 0; t < 25; ++t) {
        auto c = testing::random_complex(algebra, rng);
        auto before = cohomology_dim_vector(c);
        auto m = minimize(c);
        m.validate();
        CHECK(is_homotopically_minimal(m));
        CHECK(cohomology_dim_vector(m) == before);
      }
    }
  }
}

TEST_CASE("brutal truncation") {
  auto a = alg(kDiamondBa);
  auto c = two_term(a, 0, {1}, {0}, {{algebra_element(a, "a")}});
  CHECK(brutal_truncate(c, -3).terms == c.terms);
  CHECK(brutal_truncate(c, 2).is_zero_complex());
  auto t = brutal_truncate(c, 1);
  CHECK(t.lo == 1);
  CHECK(t.terms == std::vector<std::vector<int>>{{0}});
}

TEST_CASE("good truncation of module complexes") {
  auto a = alg(kDiamondBa);
  auto p1 = projective_module(a, 0, Side::left);

  // P_1 --cover--> S_1 in degrees 0, 1.
  auto s1 = simple_module(a, 0, Side::left);
  Matrix cover(a->field(), 1, p1.dim);
  cover.at(0, 0) = Scalar::one(a->field());  // e_1 coordinate inside P_1
  ModuleComplex mc;
  mc.lo = 0;
  mc.terms = {p1, s1};
  mc.diffs = {cover};
  mc.validate();
  CHECK(cohomology_dim_vector(mc) == DimVector{{0, 3}});

  SUBCASE("t at or below lo: unchanged") {
    auto g = good_truncate(mc, 0);
    CHECK(cohomology_dim_vector(g) == DimVector{{0, 3}});
  }
  SUBCASE("t above hi: zero") {
    auto g = good_truncate(mc, 2);
    CHECK(g.terms.empty());
  }
  SUBCASE("t = 1 on the surjective cover: everything dies") {
    auto g = good_truncate(mc, 1);
    g.validate();
    CHECK(cohomology_dim_vector(g).empty());
  }
  SUBCASE("t = 1 with a zero differential keeps H^1 = ker computed by rank") {
    ModuleComplex z;
    z.lo = 0;
    z.terms = {simple_module(a, 0, Side::left), simple_module(a, 1, Side::left)};
    z.diffs = {Matrix(a->field(), 1, 1)};
    z.validate();
    auto g = good_truncate(z, 1);
    g.validate();
    CHECK(cohomology_dim_vector(g) == DimVector{{1, 1}});
  }
}

TEST_CASE("minimal projective resolutions") {
  auto a = alg(kDiamondBa);
  SUBCASE("a projective resolves as its stalk") {
    auto res = minimal_proj_resolution(projective_module(a, 0, Side::left), 4);
    CHECK(res.terms == std::vector<std::vector<int>>{{0}});
    CHECK(res.lo == 0);
  }
  SUBCASE("S_2 over diamond/<ba>: ... -> P_4 -> P_2 -> S_2 (rad P_2 = span b)") {
    auto res = minimal_proj_resolution(simple_module(a, 1, Side::left), 4);
    res.validate();
    CHECK(is_homotopically_minimal(res));
    CHECK(res.lo == -1);
    CHECK(res.terms == std::vector<std::vector<int>>{{3}, {1}});
    CHECK(res.diffs[0][0][0] == algebra_element(a, "b"));
    CHECK(cohomology_dim_vector(res) == DimVector{{0, 1}});
  }
  SUBCASE("S_1 over the dual numbers: periodic, every term the regular module") {
    auto d = alg(kDualNumbers);
    auto res = minimal_proj_resolution(simple_module(d, 0, Side::left), 5);
    res.validate();
    CHECK(is_homotopically_minimal(res));
    REQUIRE(res.terms.size() == 6);
    for (const auto& t : res.terms) CHECK(t == std::vector<int>{0});
    for (const auto& dmat : res.diffs) CHECK(dmat[0][0] == algebra_element(d, "t"));
  }
  SUBCASE("the truncated S_1 resolution over diamond/<ba,dc> has the computed dims") {
    auto b = alg(kDiamondBaDc);
    auto res = minimal_proj_resolution(simple_module(b, 0, Side::left), 2);
    res.validate();
    CHECK(component_dim_vector(res) == DimVector{{-2, 2}, {-1, 4}, {0, 3}});
    CHECK(cohomology_dim_vector(res) == DimVector{{0, 1}});
  }
  SUBCASE("resolutions are minimal for every simple over both diamonds") {
    for (const char* fixture : {kDiamondBa, kDiamondBaDc}) {
      auto algebra = alg(fixture);
      for (int v = 0; v < 4; ++v) {
        auto res = minimal_proj_resolution(simple_module(algebra, v, Side::left), 5);
        res.validate();
        CHECK(is_homotopically_minimal(res));
        auto h = cohomology_dim_vector(res);
        CHECK(h[0] == 1);
      }
    }
  }
}

TEST_CASE("lemma bound recursion and the resolution property") {
  SUBCASE("over Q: all ones") {
    auto q = alg("field Q\nvertices 1\n");
    auto m = lemma_bound(*q, DimVector{{0, 1}}, -2);
    CHECK(m == DimVector{{-2, 1}, {-1, 1}, {0, 1}});
  }
  SUBCASE("empty input: empty bound") {
    auto q = alg("field Q\nvertices 1\n");
    CHECK(lemma_bound(*q, {}, -3).empty());
  }
  SUBCASE("diamond/<ba,dc>: M = 3 gives (3, 9)") {
    auto b = alg(kDiamondBaDc);
    auto m = lemma_bound(*b, DimVector{{0, 1}}, -1);
    CHECK(m == DimVector{{-1, 9}, {0, 3}});
  }
  SUBCASE("diamond/<ba>: M = 4 (P_1 includes dc) gives (4, 16)") {
    auto b = alg(kDiamondBa);
    auto m = lemma_bound(*b, DimVector{{0, 1}}, -1);
    CHECK(m == DimVector{{-1, 16}, {0, 4}});
  }
  SUBCASE("minimal resolutions respect the bound pointwise") {
    for (const char* fixture : {kDiamondBa, kDiamondBaDc, kDualNumbers}) {
      auto algebra = alg(fixture);
      int nv = static_cast<int>(algebra->presented()->presentation.quiver.vertices.size());
      for (int v = 0; v < nv; ++v)
        for (unsigned depth = 1; depth <= 6; ++depth) {
          auto res = minimal_proj_resolution(simple_module(algebra, v, Side::left), depth);
          auto n = cohomology_dim_vector(res);
          auto bound = lemma_bound(*algebra, n, res.lo);
          for (const auto& [deg, dim] : component_dim_vector(res)) {
            REQUIRE(bound.count(deg));
            CHECK(dim <= bound[deg]);
          }
        }
    }
  }
}

TEST_CASE("extension of scalars on complexes") {
  auto a = alg(kDiamondBa);
  auto res = minimal_proj_resolution(simple_module(a, 1, Side::left), 3);

  SUBCASE("identity transport is the identity") {
    auto phi = identity_extension(a);
    auto c2 = extend_scalars_complex(res, phi);
    CHECK(component_dim_vector(c2) == component_dim_vector(res));
  }
  SUBCASE("base change by a degree-2 field: k-dimensions double") {
    auto phi = base_change(a, FieldSpec::parse("Q[x]/(x^2-2)"));
    auto c2 = extend_scalars_complex(res, phi);
    c2.validate();
    // Same dimension counts over K; each K-dimension is 2 rational dimensions.
    CHECK(component_dim_vector(c2) == component_dim_vector(res));
    CHECK(c2.algebra->field()->degree() == 2);
    CHECK(cohomology_dim_vector(c2) == cohomology_dim_vector(res));
  }
  SUBCASE("trivial-action skew by Z/2: dims double and the complex splits into two blocks") {
    GroupAction g;
    g.elements = {"1", "g"};
    g.table = {{0, 1}, {1, 0}};
    g.identity = 0;
    g.matrices = {Matrix::identity(a->field(), a->dim()), Matrix::identity(a->field(), a->dim())};
    auto phi = skew_group_algebra(a, std::move(g));
    auto c2 = extend_scalars_complex(res, phi);
    c2.validate();
    auto dv = component_dim_vector(res);
    auto dv2 = component_dim_vector(c2);
    for (const auto& [deg, dim] : dv) CHECK(dv2[deg] == 2 * dim);
    CHECK(connected_components(c2.algebra->presented()->presentation.quiver).size() == 2);
    CHECK(cohomology_dim_vector(c2)[0] == 2);
  }
  SUBCASE("general skew transports are refused") {
    auto two = alg("field Q\nvertices 1 2\n");
    GroupAction g;
    g.elements = {"1", "g"};
    g.table = {{0, 1}, {1, 0}};
    g.identity = 0;
    g.matrices = {Matrix::identity(two->field(), 2), permutation_action_matrix(two, {1, 0}, {})};
    auto phi = skew_group_algebra(two, std::move(g));
    auto stalk = stalk_complex(two, 0, 0);
    CHECK_THROWS_AS((void)extend_scalars_complex(stalk, phi), Error);
  }
}

TEST_CASE("finiteness sampler") {
  SUBCASE("rational fixtures are rejected") {
    auto a = alg(kDiamondBa);
    CHECK_THROWS_AS((void)finiteness_sampler(a, DimVector{{0, 1}}, false), Error);
  }
  SUBCASE("F_2 point with cdim (1,1): two chain-iso classes (d = 0 and d = 1)") {
    auto a = path_basis_algebra(parse_presentation("field F_2\nvertices 1\n"));
    auto res = finiteness_sampler(a, DimVector{{0, 1}, {1, 1}}, false);
    CHECK(res.candidates_with_d2_zero == 2);
    CHECK(res.iso_class_count == 2);
  }
  SUBCASE("F_2 diamond: deterministic, re-run stable") {
    auto a = path_basis_algebra(parse_presentation(
        "field F_2\nvertices 1 2 3 4\narrow a : 1 -> 2\narrow b : 2 -> 4\n"
        "arrow c : 1 -> 3\narrow d : 3 -> 4\nrelations\n b*a\nend\n"));
    auto r1 = finiteness_sampler(a, DimVector{{0, 2}, {1, 1}}, false);
    auto r2 = finiteness_sampler(a, DimVector{{0, 2}, {1, 1}}, false);
    CHECK(r1.iso_class_count == r2.iso_class_count);
    CHECK(r1.iso_class_count > 0);
    // Radical-only sampling is a subset.
    auto r3 = finiteness_sampler(a, DimVector{{0, 2}, {1, 1}}, true);
    CHECK(r3.iso_class_count <= r1.iso_class_count);
    CHECK(r3.iso_class_count > 0);
  }
  SUBCASE("budget is enforced") {
    auto a = path_basis_algebra(parse_presentation(
        "field F_3\nvertices 1 2 3 4\narrow a : 1 -> 2\narrow b : 2 -> 4\n"
        "arrow c : 1 -> 3\narrow d : 3 -> 4\nrelations\n b*a\nend\n"));
    CHECK_THROWS_AS((void)finiteness_sampler(a, DimVector{{0, 9}, {1, 9}}, false, 1024), Error);
  }
}

TEST_CASE("truncation lemma roundtrip") {
  auto f3diamond = path_basis_algebra(parse_presentation(
      "field F_3\nvertices 1 2 3 4\narrow a : 1 -> 2\narrow b : 2 -> 4\n"
      "arrow c : 1 -> 3\narrow d : 3 -> 4\nrelations\n b*a\nend\n"));
  SUBCASE("x = y: equivalent and isomorphic") {
    auto s1 = simple_module(f3diamond, 0, Side::left);
    auto rep = lemma_iso_roundtrip(s1, s1, -2);
    CHECK(rep.truncations_equivalent == IsoAnswer::yes);
    CHECK(rep.modules_iso == IsoAnswer::yes);
    CHECK_FALSE(rep.counterexample);
  }
  SUBCASE("S_1 vs S_2: inequivalent truncations and non-isomorphic (consistent)") {
    auto rep = lemma_iso_roundtrip(simple_module(f3diamond, 0, Side::left),
                                   simple_module(f3diamond, 1, Side::left), -2);
    CHECK(rep.truncations_equivalent == IsoAnswer::no);
    CHECK(rep.modules_iso == IsoAnswer::no);
    CHECK_FALSE(rep.counterexample);
  }
  SUBCASE("nonnegative truncation degrees are refused") {
    auto s1 = simple_module(f3diamond, 0, Side::left);
    CHECK_THROWS_AS((void)lemma_iso_roundtrip(s1, s1, 0), Error);
  }
  SUBCASE("over Q the answer is one-sided but never a false negative") {
    auto a = alg(kDiamondBa);
    auto s1 = simple_module(a, 0, Side::left);
    auto rep = lemma_iso_roundtrip(s1, s1, -1);
    CHECK(rep.truncations_equivalent == IsoAnswer::yes);
    CHECK(rep.modules_iso == IsoAnswer::yes);
  }
}
