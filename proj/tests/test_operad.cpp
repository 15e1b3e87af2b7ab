#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <random>
#include <set>

#include "dendro/operad.hpp"

using namespace dendro;

namespace {

const GradedSet X2{{"x"}, {2}};
const GradedSet X2Y1{{"x", "y"}, {2, 1}};

std::vector<int> random_perm(int n, std::mt19937& rng) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 1);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

std::vector<int> compose_perms(const std::vector<int>& s, const std::vector<int>& t) {
  // (s then t) as right actions: (f.s).t = f.(st), st(i) = s(t(i))
  std::vector<int> r(s.size());
  for (size_t i = 0; i < s.size(); ++i) r[i] = s[t[i] - 1];
  return r;
}

Element random_element(const GradedSet& m, int arity, int maxv, std::mt19937& rng) {
  auto all = elements(m, arity, maxv).elems;
  REQUIRE(!all.empty());
  return all[rng() % all.size()];
}

// block permutation: permutes k blocks of the given sizes as sigma permutes
// 1..k; returns a permutation of 1..sum(sizes)
std::vector<int> block_perm(const std::vector<int>& sigma, const std::vector<int>& sizes) {
  int k = static_cast<int>(sigma.size());
  std::vector<int> offset(k + 1, 0);
  for (int i = 0; i < k; ++i) offset[i + 1] = offset[i] + sizes[i];
  std::vector<int> out;
  for (int j = 0; j < k; ++j) {
    int src = sigma[j] - 1;  // block placed at position j comes from block sigma(j)
    for (int t = 0; t < sizes[src]; ++t) out.push_back(offset[src] + t + 1);
  }
  return out;
}

}  // namespace

TEST_CASE("element counts for the free operad on one binary generator") {
  CHECK(elements(X2, 2, 8).elems.size() == 2);
  CHECK(elements(X2, 2, 8).complete);
  CHECK(elements(X2, 3, 8).elems.size() == 12);
  CHECK(elements(X2, 0, 8).elems.empty());
  CHECK(elements(X2, 0, 8).complete);

  // oracle: planar binary shapes with n leaves are Catalan(n-1), times n! labelings
  auto catalan = [](int n) {
    std::vector<long> c(n + 1, 0);
    c[0] = 1;
    for (int i = 1; i <= n; ++i)
      for (int j = 0; j < i; ++j) c[i] += c[j] * c[i - 1 - j];
    return c[n];
  };
  for (int n = 1; n <= 5; ++n) {
    long fact = 1;
    for (int i = 2; i <= n; ++i) fact *= i;
    CHECK(static_cast<long>(elements(X2, n, 8).elems.size()) == catalan(n - 1) * fact);
  }
}

TEST_CASE("identity element and truncation flags") {
  CHECK(elements(GradedSet{}, 1, 0).elems.size() == 1);
  CHECK(elements(GradedSet{}, 1, 0).elems[0] == Element::identity());
  CHECK(elements(GradedSet{}, 3, 5).elems.empty());

  // unary generators make arity-1 elements unbounded: truncation flagged
  auto en = elements(X2Y1, 1, 3);
  CHECK_FALSE(en.complete);
  CHECK(en.elems.size() == 4);  // id, y, yy, yyy
}

TEST_CASE("gamma constructs and counts") {
  Element x = Element::generator(0, 2);
  Element g = gamma(x, {x, Element::identity()});
  CHECK(g.arity == 3);
  CHECK(g.n_vertices() == 2);
  g.validate(X2);

  CHECK(gamma(Element::identity(), {x}) == x);
  CHECK(gamma(x, {Element::identity(), Element::identity()}) == x);
  CHECK_THROWS(gamma(x, {x}));
}

TEST_CASE("sigma action") {
  Element x = Element::generator(0, 2);
  CHECK(sigma_action(x, {1, 2}) == x);
  Element xs = sigma_action(x, {2, 1});
  CHECK_FALSE(xs == x);

  // the two elements of T_{x^2}(2) form one orbit
  auto t2 = elements(X2, 2, 8).elems;
  std::set<std::string> orbit = {sigma_action(t2[0], {1, 2}).key(),
                                 sigma_action(t2[0], {2, 1}).key()};
  std::set<std::string> all = {t2[0].key(), t2[1].key()};
  CHECK(orbit == all);

  // right action law on random triples
  std::mt19937 rng(5);
  for (int i = 0; i < 1000; ++i) {
    int arity = 1 + static_cast<int>(rng() % 4);
    Element f = random_element(X2Y1, arity, 3, rng);
    auto s = random_perm(arity, rng), t = random_perm(arity, rng);
    CHECK(sigma_action(sigma_action(f, s), t) == sigma_action(f, compose_perms(s, t)));
  }
}

TEST_CASE("operad laws on bounded instances") {
  std::mt19937 rng(17);
  for (const GradedSet& m : {X2, X2Y1}) {
    for (int trial = 0; trial < 200; ++trial) {
      int k = 1 + static_cast<int>(rng() % 2);
      Element f = random_element(m, k, 2, rng);
      std::vector<Element> gs, hs_concat;
      std::vector<int> arities;
      for (int i = 0; i < k; ++i) {
        gs.push_back(random_element(m, 1 + static_cast<int>(rng() % 2), 2, rng));
        arities.push_back(gs.back().arity);
      }
      // unit laws
      CHECK(gamma(Element::identity(), {f}) == f);
      std::vector<Element> ids(f.arity, Element::identity());
      CHECK(gamma(f, ids) == f);

      // associativity: gamma(gamma(f;g);h) == gamma(f; gamma(g_i; h-blocks))
      std::vector<Element> hs;
      int total = 0;
      for (auto& g : gs) total += g.arity;
      for (int i = 0; i < total; ++i) hs.push_back(random_element(m, 1 + (rng() % 2), 1, rng));
      Element lhs = gamma(gamma(f, gs), hs);
      std::vector<Element> inner;
      int off = 0;
      for (auto& g : gs) {
        std::vector<Element> blk(hs.begin() + off, hs.begin() + off + g.arity);
        inner.push_back(gamma(g, blk));
        off += g.arity;
      }
      CHECK(lhs == gamma(f, inner));

      // equivariance: gamma(f.sigma; g_{sigma(1)}..) == gamma(f; g).blockperm
      auto sigma = random_perm(k, rng);
      std::vector<Element> permuted;
      std::vector<int> psizes;
      for (int j = 0; j < k; ++j) {
        permuted.push_back(gs[sigma[j] - 1]);
        psizes.push_back(arities[sigma[j] - 1]);
      }
      Element left = gamma(sigma_action(f, sigma), permuted);
      Element right = sigma_action(gamma(f, gs), block_perm(sigma, arities));
      CHECK(left == right);
    }
  }
}

TEST_CASE("hom_free counts") {
  GradedSet v2{{"v"}, {2}};
  CHECK(hom_free(v2, X2, 1).maps.size() == 2);
  CHECK(hom_free(v2, X2, 1).complete);

  CHECK(hom_free(GradedSet{}, X2, 3).maps.size() == 1);  // star is initial

  GradedSet n_mixed{{"u", "w"}, {1, 2}};
  auto to_empty = hom_free(n_mixed, GradedSet{}, 4);
  CHECK(to_empty.maps.empty());  // no arity-2 elements over no generators
  GradedSet n_unary{{"u"}, {1}};
  auto unary_to_empty = hom_free(n_unary, GradedSet{}, 4);
  CHECK(unary_to_empty.maps.size() == 1);  // u -> identity
}

TEST_CASE("apply and compose specs") {
  GradedSet v2{{"v"}, {2}};
  auto maps = hom_free(v2, X2, 1).maps;
  Element vv = gamma(Element::generator(0, 2), {Element::generator(0, 2), Element::identity()});
  for (auto& spec : maps) {
    Element img = apply_spec(spec, vv);
    CHECK(img.arity == 3);
    CHECK(img.n_vertices() == 2);
    img.validate(X2);
  }
  // compose against identity
  auto idm = MapSpec::identity(X2);
  for (auto& spec : maps) {
    CHECK(compose_specs(idm, spec) == spec);
    CHECK(compose_specs(spec, MapSpec::identity(v2)) == spec);
  }
  // functoriality of application on a chain
  GradedSet w3{{"w"}, {3}};
  for (auto& f : hom_free(w3, v2, 2).maps)
    for (auto& g : maps) {
      Element e = Element::generator(0, 3);
      CHECK(apply_spec(g, apply_spec(f, e)) == apply_spec(compose_specs(g, f), e));
    }
}
