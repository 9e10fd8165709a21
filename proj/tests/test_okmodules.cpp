#include <gtest/gtest.h>

#include "module_support.hpp"
#include "okwa/okmodules.hpp"

using namespace okwa;
using namespace okwa::testing;

namespace {

FieldPtr K5() {
  static FieldPtr k = q_sqrt_minus5();
  return k;
}

Ideal p3() { return ideal_from_generators(K5(), {num({3, 0}), num({2, -1})}); }

KVector kv(const FieldPtr& f, std::initializer_list<std::initializer_list<long>> entries) {
  KVector v;
  for (auto e : entries) {
    AlgNum a = num(e);
    a.c.resize(f->degree(), mpq_class(0));
    v.push_back(a);
  }
  return v;
}

}  // namespace

TEST(PseudoHnf, IdentityIsFixed) {
  FieldPtr f = K5();
  PseudoMatrix m = free_module(f, 2, {kv(f, {{1}, {0}}), kv(f, {{0}, {1}})});
  PseudoHnf p = pseudo_hnf(m);
  EXPECT_EQ(p.h[0], kv(f, {{1}, {0}}));
  EXPECT_EQ(p.h[1], kv(f, {{0}, {1}}));
  EXPECT_TRUE(p.ideals[0].is_unit() && p.ideals[1].is_unit());
}

TEST(PseudoHnf, RankOneAbsorbsContent) {
  FieldPtr f = K5();
  PseudoMatrix m{f, 1, {{principal_ideal(f, num({3, 0})), kv(f, {{1}})},
                        {principal_ideal(f, num({2, -1})), kv(f, {{1}})}}};
  PseudoHnf p = pseudo_hnf(m);
  EXPECT_EQ(p.ideals[0], p3());
  EXPECT_EQ(p.h[0], kv(f, {{1}}));
}

// det = 3, so the determinantal ideal is (3) of norm 9.
TEST(PseudoHnf, IndexThreeModule) {
  FieldPtr f = K5();
  PseudoMatrix m = free_module(f, 2, {kv(f, {{3}, {0}}), kv(f, {{1}, {1}})});
  PseudoHnf p = pseudo_hnf(m);
  EXPECT_EQ(p.h[0][0], f->one());
  EXPECT_EQ(p.h[1][1], f->one());
  EXPECT_TRUE(p.h[0][1].is_zero());
  EXPECT_EQ(ideal_norm(product_of(p.ideals, f)), 9);
  EXPECT_EQ(product_of(p.ideals, f), determinantal_ideal(m));
  EXPECT_THROW(pseudo_hnf(free_module(f, 2, {kv(f, {{1}, {2}}), kv(f, {{2}, {4}})})), Error);
}

TEST(DeterminantalIdeal, Examples) {
  FieldPtr f = K5();
  EXPECT_TRUE(determinantal_ideal(free_module(f, 2, {kv(f, {{1}, {0}}), kv(f, {{0}, {1}})})).is_unit());
  FieldPtr q = rationals();
  Ideal d = determinantal_ideal(free_module(q, 2, {kv(q, {{2}, {0}}), kv(q, {{0}, {2}})}));
  EXPECT_EQ(d, z_ideal(4));
}

TEST(ModuleContains, Examples) {
  FieldPtr f = K5();
  PseudoMatrix m = free_module(f, 2, {kv(f, {{3}, {0}}), kv(f, {{1}, {1}})});
  EXPECT_TRUE(module_contains(m, kv(f, {{0}, {0}})));
  EXPECT_TRUE(module_contains(m, kv(f, {{2}, {-1}})));
  EXPECT_FALSE(module_contains(m, kv(f, {{1}, {0}})));
  // An O_K (not merely Z) combination: omega*(3,0) + (1,1).
  EXPECT_TRUE(module_contains(m, kv(f, {{1, 3}, {1}})));
  EXPECT_THROW(module_contains(m, kv(f, {{1}})), Error);
}

TEST(ModuleEquals, Examples) {
  FieldPtr f = K5();
  PseudoMatrix a = free_module(f, 2, {kv(f, {{3}, {0}}), kv(f, {{1}, {1}})});
  PseudoMatrix b = free_module(f, 2, {kv(f, {{1}, {1}}), kv(f, {{3}, {0}})});
  PseudoMatrix full = free_module(f, 2, {kv(f, {{1}, {0}}), kv(f, {{0}, {1}})});
  EXPECT_TRUE(module_equals(a, a));
  EXPECT_TRUE(module_equals(a, b));
  EXPECT_FALSE(module_equals(a, full));
}

TEST(ChainBound, Examples) {
  FieldPtr f = K5();
  EXPECT_EQ(chain_bound(free_module(f, 2, {kv(f, {{1}, {0}}), kv(f, {{0}, {1}})})), 0u);
  EXPECT_EQ(chain_bound(free_module(f, 2, {kv(f, {{3}, {0}}), kv(f, {{1}, {1}})})), 3u);
  PseudoMatrix prime{f, 1, {{p3(), kv(f, {{1}})}}};
  EXPECT_EQ(chain_bound(prime), 1u);
  FieldPtr q = rationals();
  EXPECT_EQ(chain_bound(free_module(q, 1, {kv(q, {{4}})})), 2u);
  PseudoMatrix frac{q, 1, {{principal_ideal(q, q->from_rational(mpq_class(1, 2))), kv(q, {{1}})}}};
  try {
    chain_bound(frac);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotIntegral);
  }
}

TEST(ChainBound, PowersOfTwoAreRealized) {
  FieldPtr q = rationals();
  for (long e = 0; e < 10; ++e) {
    PseudoMatrix m = free_module(q, 1, {kv(q, {{1L << e}})});
    EXPECT_EQ(chain_bound(m), static_cast<std::size_t>(e));
    // (2^e) < (2^{e-1}) < ... < (1) is a strict chain of length e.
    for (long s = e; s > 0; --s) {
      PseudoMatrix lower = free_module(q, 1, {kv(q, {{1L << s}})});
      PseudoMatrix upper = free_module(q, 1, {kv(q, {{1L << (s - 1)}})});
      EXPECT_FALSE(module_equals(lower, upper));
      EXPECT_TRUE(module_contains(upper, kv(q, {{1L << s}})));
    }
  }
}

TEST(PseudoHnfProperties, CanonicalUnderRemixAndDeterminantal) {
  auto g = rng(51);
  std::vector<FieldPtr> fields{rationals(), gaussian_rationals(), K5()};
  for (const auto& f : fields)
    for (int t = 0; t < 12; ++t) {
      std::size_t n = uniform(g, 1, 3);
      PseudoMatrix m = random_module(g, f, n, uniform(g, 0, 2));
      PseudoHnf p = pseudo_hnf(m);
      PseudoMatrix r = remix(g, m);
      EXPECT_EQ(pseudo_hnf(r), p);
      EXPECT_EQ(product_of(p.ideals, f), determinantal_ideal(m));
      EXPECT_TRUE(module_equals(m, p.as_matrix(f)));
      for (std::size_t i = 0; i < n; ++i) {
        EXPECT_EQ(p.h[i][i], f->one());
        for (std::size_t j = i + 1; j < n; ++j) EXPECT_TRUE(p.h[i][j].is_zero());
      }
    }
}

TEST(SplitPair, Examples) {
  FieldPtr f = K5();
  KVector x = kv(f, {{1}, {0}}), y = kv(f, {{0}, {1}});
  SplitPair id = split_pair({Ideal::unit(f), x}, {Ideal::unit(f), y});
  EXPECT_EQ(id.a, f->one());
  EXPECT_EQ(id.d, f->one());
  EXPECT_TRUE(id.b.is_zero() && id.c.is_zero());

  Ideal a = p3(), ainv = ideal_inverse(p3());
  SplitPair sp = split_pair({a, x}, {ainv, y});
  EXPECT_EQ(f->sub(f->mul(sp.a, sp.d), f->mul(sp.b, sp.c)), f->one());
  EXPECT_TRUE(ideal_contains(a, sp.a));
  EXPECT_TRUE(ideal_contains(ainv, sp.b));
  EXPECT_TRUE(ideal_contains(a, sp.c));
  EXPECT_TRUE(ideal_contains(ainv, sp.d));
  EXPECT_TRUE(sp.second.coeff.is_unit());

  FieldPtr q = rationals();
  SplitPair z = split_pair({z_ideal(2), kv(q, {{1}, {0}})}, {z_ideal(3), kv(q, {{0}, {1}})});
  EXPECT_EQ(q->sub(q->mul(z.a, z.d), q->mul(z.b, z.c)), q->one());
  EXPECT_TRUE(ideal_contains(z_ideal(2), z.a));
  EXPECT_TRUE(ideal_contains(z_ideal(3), z.b));
  EXPECT_TRUE(ideal_contains(ideal_inverse(z_ideal(3)), z.c));
  EXPECT_TRUE(ideal_contains(ideal_inverse(z_ideal(2)), z.d));
}

TEST(SplitPair, CertificateOnRandomIdeals) {
  auto g = rng(52);
  std::vector<FieldPtr> fields{rationals(), gaussian_rationals(), K5()};
  for (const auto& f : fields)
    for (int t = 0; t < 20; ++t) {
      Ideal a = random_fractional_ideal(g, f, 6), b = random_fractional_ideal(g, f, 6);
      KVector x = kv(f, {{1}, {0}}), y = kv(f, {{0}, {1}});
      SplitPair sp = split_pair({a, x}, {b, y});
      EXPECT_EQ(f->sub(f->mul(sp.a, sp.d), f->mul(sp.b, sp.c)), f->one());
      EXPECT_TRUE(ideal_contains(a, sp.a));
      EXPECT_TRUE(ideal_contains(b, sp.b));
      EXPECT_TRUE(ideal_contains(ideal_inverse(b), sp.c));
      EXPECT_TRUE(ideal_contains(ideal_inverse(a), sp.d));
      PseudoMatrix before{f, 2, {{a, x}, {b, y}}};
      PseudoMatrix after{f, 2, {sp.first, sp.second}};
      EXPECT_TRUE(module_equals(before, after));
    }
}

TEST(SteinitzForm, Examples) {
  FieldPtr f = K5();
  PseudoMatrix freem = free_module(f, 2, {kv(f, {{1}, {0}}), kv(f, {{0}, {1}})});
  PseudoMatrix st = steinitz_form(freem);
  EXPECT_EQ(st.elems[0].vec, freem.elems[0].vec);
  EXPECT_EQ(st.elems[1].vec, freem.elems[1].vec);

  PseudoMatrix m{f, 2, {{p3(), kv(f, {{1}, {0}})}, {ideal_inverse(p3()), kv(f, {{0}, {1}})}}};
  PseudoMatrix s = steinitz_form(m);
  EXPECT_TRUE(s.elems[0].coeff.is_unit());
  EXPECT_TRUE(s.elems[1].coeff.is_unit());
  EXPECT_TRUE(module_equals(m, s));

  PseudoMatrix one{f, 1, {{p3(), kv(f, {{1}})}}};
  PseudoMatrix s1 = steinitz_form(one);
  ASSERT_EQ(s1.elems.size(), 1u);
  EXPECT_EQ(s1.elems[0].coeff, p3());
}

TEST(GeneratingSet, Examples) {
  FieldPtr f = K5();
  GeneratingSet freeg = generating_set(free_module(f, 2, {kv(f, {{1}, {0}}), kv(f, {{0}, {1}})}));
  EXPECT_EQ(freeg.vectors, (std::vector<KVector>{kv(f, {{1}, {0}}), kv(f, {{0}, {1}})}));

  PseudoMatrix rank1{f, 1, {{p3(), kv(f, {{1}})}}};
  GeneratingSet g1 = generating_set(rank1);
  ASSERT_EQ(g1.vectors.size(), 2u);
  EXPECT_FALSE(g1.principal);
  EXPECT_EQ(ideal_from_generators(f, {g1.vectors[0][0], g1.vectors[1][0]}), p3());

  FieldPtr q = rationals();
  PseudoMatrix m{q, 2, {{Ideal::unit(q), kv(q, {{1}, {0}})}, {z_ideal(2), kv(q, {{0}, {1}})}}};
  GeneratingSet g2 = generating_set(m);
  EXPECT_TRUE(g2.principal);
  ASSERT_EQ(g2.vectors.size(), 2u);
  EXPECT_EQ(g2.vectors[0], kv(q, {{1}, {0}}));
  EXPECT_EQ(g2.vectors[1], kv(q, {{0}, {2}}));
}

TEST(GeneratingSet, SpansModuleAndExpresses) {
  auto g = rng(53);
  std::vector<FieldPtr> fields{rationals(), gaussian_rationals(), K5()};
  for (const auto& f : fields)
    for (int t = 0; t < 10; ++t) {
      std::size_t n = uniform(g, 1, 3);
      PseudoMatrix m = pseudo_hnf(random_module(g, f, n, 1)).as_matrix(f);
      GeneratingSet gs = generating_set(m);
      EXPECT_LE(gs.vectors.size(), n + 1);
      EXPECT_TRUE(module_equals(m, free_module(f, n, gs.vectors)));
      for (int s = 0; s < 3; ++s) {
        KVector v = kzero_vector(*f, n);
        for (const auto& y : gs.vectors) kaxpy(*f, v, random_element(g, f->degree(), 3), y);
        auto c = gs.express(*f, v);
        ASSERT_TRUE(c.has_value());
        KVector back = kzero_vector(*f, n);
        for (std::size_t i = 0; i < gs.vectors.size(); ++i) {
          EXPECT_TRUE((*c)[i].is_integral());
          kaxpy(*f, back, (*c)[i], gs.vectors[i]);
        }
        EXPECT_EQ(back, v);
      }
    }
}
