#include <doctest.h>

#include "rainbow/errors.hpp"
#include "test_util.hpp"

using namespace rainbow;
using testutil::f1;
using testutil::f2;
using testutil::fam_of;

TEST_CASE("universe expansion") {
  CHECK(build_universe(f1()).size() == 9);
  const auto u = build_universe(f2());
  CHECK(u == std::vector<Coloured>{{0, 0}, {1, 0}, {1, 1}, {2, 1}});
}

TEST_CASE("projection") {
  std::vector<Coloured> s{{0, 0}, {2, 1}};
  CHECK(project(s) == std::vector<ElementId>{0, 2});
  CHECK(project({}).empty());
  std::vector<Coloured> one{{1, 1}};
  CHECK(project(one) == std::vector<ElementId>{1});
}

TEST_CASE("is_ris checks all three conditions") {
  Instance inst = f2();
  CHECK(is_ris(inst, std::vector<Coloured>{{0, 0}, {2, 1}}));
  CHECK_FALSE(is_ris(inst, std::vector<Coloured>{{1, 0}, {1, 1}}));  // repeated element
  // repeated colour needs two class members of one colour
  CHECK_FALSE(is_ris(inst, std::vector<Coloured>{{0, 0}, {1, 0}}));
  CHECK_THROWS_AS((void)is_ris(inst, std::vector<Coloured>{{2, 0}}), input_error);  // c not in B_1
}

TEST_CASE("volume and used set") {
  Instance inst = f2();
  Family empty = make_empty_family(2, 3);
  CHECK(volume(empty) == 0);

  Family fam = fam_of(2, {{{0, 0}}, {{2, 1}}});
  CHECK(volume(fam) == 2);
  UsedSet used = used_set(fam, 2);
  CHECK(used.size() == 2);
  CHECK(used.contains(0, 0));
  CHECK(used.contains(2, 1));
  CHECK_FALSE(used.contains(1, 0));
  CHECK(used.slice(0).size() == 1);
  CHECK(used.slice(1).size() == 1);

  Family full = fam_of(3, {{{0, 0}, {1, 1}, {2, 2}}});
  UsedSet fu = used_set(full, 3);
  CHECK(testutil::to_vec(fu.slice(0)) == std::vector<ElementId>{0});
  CHECK(testutil::to_vec(fu.slice(1)) == std::vector<ElementId>{1});
  CHECK(testutil::to_vec(fu.slice(2)) == std::vector<ElementId>{2});
  CHECK(volume(full) == 3);
}

TEST_CASE("used set rejects non-disjoint families") {
  Family clash = fam_of(2, {{{0, 0}}, {{0, 0}}});
  CHECK_THROWS_AS((void)used_set(clash, 2), contract_error);
  CHECK_FALSE(is_disjoint_family(clash, 2));
}

TEST_CASE("missing colours") {
  Ris empty(3);
  CHECK(missing_colours(empty, 3) == std::vector<int>{0, 1, 2});
  Family full = fam_of(3, {{{0, 0}, {1, 1}, {2, 2}}});
  CHECK(missing_colours(full.members[0], 3).empty());
  Ris one(2);
  one.add({0, 0});
  CHECK(missing_colours(one, 2) == std::vector<int>{1});
}

TEST_CASE("a size-n RIS is a transversal basis") {
  Instance inst = f1();
  Family fam = fam_of(3, {{{0, 0}, {1, 1}, {2, 2}}});
  const Ris& s = fam.members[0];
  CHECK(s.size() == inst.n());
  CHECK(valid_ris(inst, s));
  CHECK(inst.matroid().rank_of(s.project()) == inst.n());
  CHECK(missing_colours(s, 3).empty());
}

TEST_CASE("instance validation names offenders") {
  CHECK_THROWS_AS(Instance(Matroid::uniform(3, 3), {{0, 1, 2}, {0, 1, 2}}), input_error);
  CHECK_THROWS_AS(Instance(Matroid::uniform(3, 3), {{0, 1, 2}, {0, 1}, {0, 1, 2}}), input_error);
  CHECK_THROWS_AS(Instance(Matroid::graphic(3, {{0, 1}, {1, 2}, {0, 2}}), {{0, 1}, {1, 1}}),
                  input_error);
}

TEST_CASE("family validation hook") {
  Instance inst = f2();
  Family good = fam_of(2, {{{0, 0}}, {{2, 1}}});
  CHECK_NOTHROW(validate_family(inst, good));
  // member 0 repeats matroid element 1 across two colours
  Family bad = fam_of(2, {{{1, 0}, {1, 1}}, {{2, 1}}});
  CHECK_THROWS_AS(validate_family(inst, bad), theorem_violation);
}
