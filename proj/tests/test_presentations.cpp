#include <catch_amalgamated.hpp>

#include <set>

#include "crossmod/presentation.hpp"

using namespace crossmod;

namespace {
Enumerated enumerate(const std::string& text, int max_cosets = kDefaultMaxCosets) {
  return todd_coxeter(parse_presentation(text), max_cosets);
}
}  // namespace

TEST_CASE("presentation parsing") {
  Presentation p = parse_presentation("<x,y | x^3, y^2, x*y*x*y>");
  CHECK(p.alphabet->names() == std::vector<std::string>{"x", "y"});
  REQUIRE(p.relators.size() == 3);
  CHECK(p.relators[0] == Word::parse(p.alphabet, "x^3"));
  CHECK(p.names == std::vector<std::string>{"r1", "r2", "r3"});

  Presentation named = parse_presentation("<x,y | r=x^3, s=y^2, t=x*y*x*y>");
  CHECK(named.names == std::vector<std::string>{"r", "s", "t"});
  CHECK(named.relator_index("s") == 1);
  CHECK(named.relator_index("nope") == -1);

  CHECK(parse_presentation("<x | x^1>").relators.size() == 1);
  CHECK(parse_presentation("<x ; x^5>").relators[0] == Word::parse(make_alphabet({"x"}), "x^5"));

  CHECK_THROWS_AS(parse_presentation("x | x>"), InputError);
  CHECK_THROWS_AS(parse_presentation("<x | z^2>"), InputError);
  CHECK_THROWS_AS(parse_presentation("<x | x*x^-1>"), InputError);
  CHECK_THROWS_AS(parse_presentation("<x | x^2"), InputError);
  CHECK_THROWS_AS(parse_presentation("<x | r=x, r=x^2>"), InputError);
}

TEST_CASE("todd-coxeter on cyclic groups") {
  for (int n = 1; n <= 12; ++n) {
    Enumerated e = enumerate("<x | x^" + std::to_string(n) + ">");
    REQUIRE(e.group->order() == n);
    int x = e.map.image(0);
    CHECK(e.group->order_of(x) == (n == 1 ? 1 : n));
  }
}

TEST_CASE("todd-coxeter enumerates S3") {
  Enumerated e = enumerate("<x,y | x^3, y^2, x*y*x*y>");
  REQUIRE(e.group->order() == 6);
  CHECK_FALSE(e.group->is_abelian());
  for (const Word& r : parse_presentation("<x,y | x^3, y^2, x*y*x*y>").relators)
    CHECK(e.map.eval(r) == 0);
}

TEST_CASE("todd-coxeter enumerates the quaternion group") {
  Enumerated e = enumerate("<a,b | a^4, a^2*b^-2, a*b*a*b^-1>");
  REQUIRE(e.group->order() == 8);
  // brute-force check against the quaternion profile: a unique element of
  // order 2 and six elements of order 4
  int order2 = 0, order4 = 0;
  for (int g = 1; g < 8; ++g) {
    int o = e.group->order_of(g);
    if (o == 2) ++order2;
    if (o == 4) ++order4;
  }
  CHECK(order2 == 1);
  CHECK(order4 == 6);
  CHECK_FALSE(e.group->is_abelian());
}

TEST_CASE("todd-coxeter is deterministic") {
  auto a = enumerate("<x,y | x^3, y^2, x*y*x*y>");
  auto b = enumerate("<x,y | x^3, y^2, x*y*x*y>");
  CHECK(a.group->table() == b.group->table());
  CHECK(a.map.images() == b.map.images());
}

TEST_CASE("todd-coxeter coset limit") {
  // free abelian group of rank 2 is infinite: must fail cleanly
  CHECK_THROWS_AS(enumerate("<x,y | x*y*x^-1*y^-1>", 500), DomainError);
  // finite group with too small a limit
  CHECK_THROWS_AS(enumerate("<x | x^50>", 10), DomainError);
}

TEST_CASE("word map evaluation is surjective and respects relators") {
  Enumerated e = enumerate("<a,b | a^2, b^2, a*b*a*b>");  // K4
  REQUIRE(e.group->order() == 4);
  CHECK(e.group->is_abelian());
  std::set<int> hit;
  auto alph = make_alphabet({"a", "b"});
  for (const char* w : {"1", "a", "b", "a*b"}) hit.insert(e.map.eval(Word::parse(alph, w)));
  CHECK(hit.size() == 4);
}

TEST_CASE("cayley graph shape") {
  Enumerated s3 = enumerate("<x,y | x^3, y^2, x*y*x*y>");
  CayleyGraph g = cayley_graph(*s3.group, s3.map);
  CHECK(g.vertices == 6);
  CHECK(g.edges.size() == 12);
  // out-degree per generator is one at every vertex
  std::set<std::pair<int, int>> seen;
  for (const auto& e : g.edges) CHECK(seen.insert({e.gen, e.src}).second);
  CHECK(graph_free_rank(g) == 7);

  Enumerated triv = enumerate("<x | x^1>");
  CayleyGraph tg = cayley_graph(*triv.group, triv.map);
  CHECK(tg.vertices == 1);
  REQUIRE(tg.edges.size() == 1);
  CHECK(tg.edges[0] == CayleyEdge{0, 0, 0});
  CHECK(graph_free_rank(tg) == 1);

  Enumerated c4 = enumerate("<x | x^4>");
  CayleyGraph cg = cayley_graph(*c4.group, c4.map);
  CHECK(cg.vertices == 4);
  CHECK(cg.edges.size() == 4);
  for (const auto& e : cg.edges) CHECK(e.dst == c4.group->mul(c4.map.image(0), e.src));
  CHECK(graph_free_rank(cg) == 1);
}

TEST_CASE("finite group helpers") {
  FiniteGroup c6 = FiniteGroup::cyclic(6);
  CHECK(c6.order_of(1) == 6);
  CHECK(c6.order_of(2) == 3);
  CHECK(c6.inv(1) == 5);
  CHECK(c6.pow(1, -2) == 4);
  CHECK(c6.is_abelian());

  FiniteGroup k4 = FiniteGroup::direct_product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2));
  CHECK(k4.order() == 4);
  for (int g = 1; g < 4; ++g) CHECK(k4.order_of(g) == 2);

  auto sub = subgroup_closure(c6, {2});
  CHECK(sub == std::vector<int>{0, 2, 4});
  CHECK(is_subgroup(c6, sub));
  CHECK(is_normal(c6, sub));

  SubgroupView v = make_subgroup(c6, sub);
  CHECK(v.group.order() == 3);
  CHECK(v.embed[1] == 2);
  CHECK(v.index_of[4] == 2);

  QuotientView q = quotient_group(c6, sub);
  CHECK(q.group.order() == 2);
  CHECK(q.proj[0] == 0);
  CHECK(q.proj[2] == 0);
  CHECK(q.proj[1] == 1);

  CHECK(find_isomorphism(k4, FiniteGroup::cyclic(4)) == std::nullopt);
  auto iso = find_isomorphism(c6, FiniteGroup::direct_product(FiniteGroup::cyclic(2),
                                                              FiniteGroup::cyclic(3)));
  REQUIRE(iso.has_value());
  CHECK(is_homomorphism(c6, FiniteGroup::cyclic(6), std::vector<int>{0, 1, 2, 3, 4, 5}));
}

TEST_CASE("non-normal subgroup is rejected by quotient") {
  Enumerated s3 = enumerate("<x,y | x^3, y^2, x*y*x*y>");
  int y = s3.map.image(1);
  auto sub = subgroup_closure(*s3.group, {y});
  CHECK(sub.size() == 2);
  CHECK_FALSE(is_normal(*s3.group, sub));
  CHECK_THROWS_AS(quotient_group(*s3.group, sub), InputError);

  int x = s3.map.image(0);
  auto a3 = subgroup_closure(*s3.group, {x});
  CHECK(a3.size() == 3);
  CHECK(is_normal(*s3.group, a3));
  CHECK(quotient_group(*s3.group, a3).group.order() == 2);
}
