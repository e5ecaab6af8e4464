#include <catch_amalgamated.hpp>

#include <random>

#include "crossmod/group_ring.hpp"

using namespace crossmod;

namespace {
Enumerated s3() { return todd_coxeter(parse_presentation("<x,y | x^3, y^2, x*y*x*y>")); }
}  // namespace

TEST_CASE("group ring arithmetic") {
  GroupPtr c3 = make_group(FiniteGroup::cyclic(3));
  auto one = GroupRingElement::one(c3);
  auto x = GroupRingElement::of_element(c3, 1);
  CHECK((x * x * x) == one);
  CHECK((x - x).is_zero());
  CHECK((one + x).augmentation() == 2);
  CHECK(norm_element(c3, 1).augmentation() == 3);
  CHECK(x.translated(2) == GroupRingElement::one(c3));
  // (1 + x + x^2)(x - 1) = 0 in ZC3
  auto norm = norm_element(c3, 1);
  auto xm1 = x - one;
  CHECK((norm * xm1).is_zero());
}

TEST_CASE("fox derivatives of basic words") {
  auto alph = make_alphabet({"x", "y"});
  // d/dx (x^n) = 1 + x + ... + x^(n-1)
  for (int n = 2; n <= 6; ++n) {
    auto d = fox_derivatives_free(Word::parse(alph, "x^" + std::to_string(n)));
    CHECK(static_cast<int>(d[0].size()) == n);
    for (int k = 0; k < n; ++k) {
      auto it = d[0].find(Word::parse(alph, "x").pow(k));
      REQUIRE(it != d[0].end());
      CHECK(it->second == 1);
    }
    CHECK(d[1].empty());
  }
  // t = xyxy: t_x = 1 + [xy], t_y = [x] + [xyx]
  auto d = fox_derivatives_free(Word::parse(alph, "x*y*x*y"));
  FreeRingElement tx, ty;
  free_ring_add(tx, Word::identity(alph), 1);
  free_ring_add(tx, Word::parse(alph, "x*y"), 1);
  free_ring_add(ty, Word::parse(alph, "x"), 1);
  free_ring_add(ty, Word::parse(alph, "x*y*x"), 1);
  CHECK(d[0] == tx);
  CHECK(d[1] == ty);
}

TEST_CASE("fox reconstruction identity r - 1 = sum r_x (x-1)") {
  auto alph = make_alphabet({"x", "y"});
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> len(0, 12), gen(0, 1), sgn(0, 1);
  for (int t = 0; t < 200; ++t) {
    std::vector<Letter> ls;
    int n = len(rng);
    for (int i = 0; i < n; ++i) ls.push_back({gen(rng), sgn(rng) ? 1 : -1});
    Word w(alph, ls);
    FreeRingElement want;
    free_ring_add(want, w, 1);
    free_ring_add(want, Word::identity(alph), -1);
    CHECK(fox_reconstruction(w) == want);
  }
}

TEST_CASE("fox boundaries of cyclic and S3 presentations") {
  {
    auto p = parse_presentation("<x | x^5>");
    auto e = todd_coxeter(p);
    auto b = fox_boundaries(p, e.map);
    CHECK(b.d2(0, 0) == norm_element(e.group, e.map.image(0)));
    GroupRingElement d1 = GroupRingElement::of_element(e.group, e.map.image(0));
    d1.add_term(0, -1);
    CHECK(b.d1(0, 0) == d1);
  }
  {
    auto p = parse_presentation("<x,y | x^3, y^2, x*y*x*y>");
    auto e = todd_coxeter(p);
    auto b = fox_boundaries(p, e.map);
    CHECK(b.d2.rows() == 2);
    CHECK(b.d2.cols() == 3);
    CHECK((b.d1 * b.d2).is_zero());
  }
}

TEST_CASE("Z-expansion of ZQ matrices") {
  GroupPtr c2 = make_group(FiniteGroup::cyclic(2));
  ZqMatrix e(c2, 1, 1);
  e(0, 0) = GroupRingElement::one(c2);
  CHECK(zq_matrix_to_int(e) == IntMatrix::identity(2));

  ZqMatrix x(c2, 1, 1);
  x(0, 0) = GroupRingElement::of_element(c2, 1);
  CHECK(zq_matrix_to_int(x) == IntMatrix{{0, 1}, {1, 0}});

  // dimension bookkeeping for the S3 Fox matrix: (|Q||X|) x (|Q||R|)
  auto p = parse_presentation("<x,y | x^3, y^2, x*y*x*y>");
  auto en = todd_coxeter(p);
  auto b = fox_boundaries(p, en.map);
  IntMatrix d2 = zq_matrix_to_int(b.d2);
  CHECK(d2.rows() == 12);
  CHECK(d2.cols() == 18);
  IntMatrix d1 = zq_matrix_to_int(b.d1);
  CHECK((d1 * d2).is_zero());
}

TEST_CASE("Z-expansion is functorial") {
  auto en = s3();
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> elt(0, 5), coeff(-2, 2), dim(1, 3);
  for (int t = 0; t < 20; ++t) {
    int a = dim(rng), b = dim(rng), c = dim(rng);
    ZqMatrix m1(en.group, a, b), m2(en.group, b, c);
    for (int i = 0; i < a; ++i)
      for (int j = 0; j < b; ++j)
        for (int reps = 0; reps < 2; ++reps) m1(i, j).add_term(elt(rng), coeff(rng));
    for (int i = 0; i < b; ++i)
      for (int j = 0; j < c; ++j)
        for (int reps = 0; reps < 2; ++reps) m2(i, j).add_term(elt(rng), coeff(rng));
    CHECK(zq_matrix_to_int(m1 * m2) == zq_matrix_to_int(m1) * zq_matrix_to_int(m2));
  }
}

TEST_CASE("bar resolution shapes and chain property") {
  {
    auto seg = bar_resolution(make_group(FiniteGroup::cyclic(2)), 3);
    CHECK(seg.ranks == std::vector<int>{1, 1, 1, 1});
    // alternating boundaries (x-1), (1+x), (x-1)
    GroupPtr c2 = seg.group;
    GroupRingElement xm1 = GroupRingElement::of_element(c2, 1);
    xm1.add_term(0, -1);
    CHECK(seg.boundary(1)(0, 0) == xm1);
    CHECK(seg.boundary(2)(0, 0) == norm_element(c2, 1));
    CHECK(seg.boundary(3)(0, 0) == xm1);
  }
  {
    auto en = s3();
    auto seg = bar_resolution(en.group, 3);
    CHECK(seg.ranks == std::vector<int>{1, 5, 25, 125});
    for (int i = 1; i + 1 <= 3; ++i)
      CHECK((seg.boundary(i) * seg.boundary(i + 1)).is_zero());
  }
  CHECK_THROWS_AS(bar_resolution(make_group(FiniteGroup::cyclic(9)), 3), DomainError);
  CHECK_THROWS_AS(bar_resolution(make_group(FiniteGroup::cyclic(7)), 4), DomainError);
}

TEST_CASE("periodic resolution") {
  auto seg = periodic_resolution(2, 4);
  GroupPtr c2 = seg.group;
  GroupRingElement xm1 = GroupRingElement::of_element(c2, 1);
  xm1.add_term(0, -1);
  CHECK(seg.ranks == std::vector<int>{1, 1, 1, 1, 1});
  CHECK(seg.boundary(1)(0, 0) == xm1);
  CHECK(seg.boundary(2)(0, 0) == norm_element(c2, 1));
  CHECK(seg.boundary(3)(0, 0) == xm1);
  CHECK(seg.boundary(4)(0, 0) == norm_element(c2, 1));
  for (int i = 1; i < 4; ++i) CHECK((seg.boundary(i) * seg.boundary(i + 1)).is_zero());

  CHECK(periodic_resolution(3, 2).boundary(2)(0, 0).augmentation() == 3);
  CHECK_THROWS_AS(periodic_resolution(make_group(FiniteGroup::direct_product(
                                          FiniteGroup::cyclic(2), FiniteGroup::cyclic(2))),
                                      3),
                  DomainError);
}

TEST_CASE("q-module validation") {
  GroupPtr c2 = make_group(FiniteGroup::cyclic(2));
  QModule triv = trivial_module(c2, {Int(4)});
  CHECK(triv.rank() == 1);
  triv.validate();

  // sign action of C2 on Z
  QModule sign{c2, {Int(0)}, {IntMatrix::identity(1), IntMatrix{{-1}}}};
  sign.validate();
  CHECK(sign.act(1, {Int(3)})[0] == -3);

  // inversion action on Z/5
  QModule inv5{c2, {Int(5)}, {IntMatrix::identity(1), IntMatrix{{-1}}}};
  inv5.validate();
  CHECK(inv5.act(1, {Int(2)})[0] == 3);

  QModule bad{c2, {Int(0)}, {IntMatrix::identity(1), IntMatrix{{2}}}};
  CHECK_THROWS_AS(bad.validate(), InputError);
}
