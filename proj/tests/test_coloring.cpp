#include <doctest.h>

#include "kscert/coloring.hpp"
#include "oracles.hpp"

#include <algorithm>
#include <random>

using namespace kscert;

namespace {

CoverStructure gks18() {
  const std::vector<Group> groups{Group{std::vector<std::string>{"T1", "T5", "T7"}},
                                  Group{std::vector<std::string>{"T2", "T4", "T8"}},
                                  Group{std::vector<std::string>{"T3", "T6", "T9"}}};
  return build_gks_cover(build_18ray(), groups, Rational(1, 3));
}

CoverStructure gks24cell() {
  std::vector<Group> groups;
  for (const auto& t : inscribed_tesseracts()) groups.emplace_back(t);
  return build_gks_cover(build_24cell_rays(), groups, Rational(1, 2));
}

CoverStructure hexagon_gks() {
  const std::vector<Group> groups{Group{std::vector<int>{1, 2, 4, 5}}, Group{std::vector<int>{1, 3, 4, 6}},
                                  Group{std::vector<int>{2, 3, 5, 6}}};
  return build_gks_cover(build_hexagon_rays(), groups, Rational(1, 2));
}

CoverStructure single_tetrad() {
  auto rays = std::make_shared<const RaySet>(build_24cell_rays().subset({1, 2, 3, 4}));
  return CoverStructure(rays, CoverKind::basis, {Context{"T1", {1, 2, 3, 4}, 1}});
}

// Random exactly-one instances over up to 12 elements.
ExactlyOneProblem random_problem(std::mt19937& rng) {
  std::uniform_int_distribution<int> n_dist(1, 12);
  const int n = n_dist(rng);
  ExactlyOneProblem p;
  for (int k = 1; k <= n; ++k) p.elements.push_back(k * 3);  // gapped ids
  std::uniform_int_distribution<int> c_dist(0, 8);
  std::bernoulli_distribution member(0.35);
  const int contexts = c_dist(rng);
  for (int c = 0; c < contexts; ++c) {
    std::vector<int> ctx;
    for (int id : p.elements)
      if (member(rng)) ctx.push_back(id);
    if (ctx.empty()) ctx.push_back(p.elements[static_cast<std::size_t>(c) % p.elements.size()]);
    p.contexts.push_back(ctx);
  }
  return p;
}

}  // namespace

TEST_CASE("search on the built-in covers") {
  CHECK(search_assignment(build_ks_cover(build_18ray())).status == SearchStatus::unsat);
  CHECK(search_assignment(gks24cell()).status == SearchStatus::unsat);
  CHECK(search_assignment(gks18()).status == SearchStatus::unsat);
  CHECK(search_assignment(hexagon_gks()).status == SearchStatus::unsat);
  CHECK(search_assignment(build_ks_cover(build_peres24())).status == SearchStatus::unsat);

  const auto r = search_assignment(single_tetrad());
  REQUIRE(r.status == SearchStatus::sat);
  CHECK(r.witness->ones() == std::vector<int>{1});
  CHECK(satisfies(single_tetrad(), *r.witness));

  // The bare 24-cell bases are three disjoint tetrads: colorable.
  const auto ks24 = search_assignment(build_ks_cover(build_24cell_rays()));
  REQUIRE(ks24.status == SearchStatus::sat);
  CHECK(ks24.witness->ones() == std::vector<int>{1, 5, 9});
}

TEST_CASE("exhaustive oracle") {
  const auto ks18 = exhaustive_oracle(build_ks_cover(build_18ray()));
  CHECK(ks18.status == SearchStatus::unsat);
  CHECK(ks18.nodes_visited == 262144);
  CHECK(*ks18.witness_count == 0);

  const auto hex = exhaustive_oracle(hexagon_gks());
  CHECK(hex.status == SearchStatus::unsat);
  CHECK(hex.nodes_visited == 64);

  auto rays = std::make_shared<const RaySet>(build_hexagon_rays().subset({1, 4}));
  const CoverStructure pair(rays, CoverKind::basis, {Context{"B", {1, 4}, 1}});
  const auto two = exhaustive_oracle(pair);
  CHECK(two.status == SearchStatus::sat);
  CHECK(*two.witness_count == 2);

  ExactlyOneProblem big;
  for (int k = 1; k <= 26; ++k) big.elements.push_back(k);
  CHECK_THROWS_WITH_AS(exhaustive_oracle(big), doctest::Contains("25"), std::invalid_argument);
}

TEST_CASE("search agrees with the exhaustive oracle on random instances") {
  std::mt19937 rng(1967);
  for (int trial = 0; trial < 400; ++trial) {
    const ExactlyOneProblem p = random_problem(rng);
    const auto fast = search_assignment(p);
    const auto slow = exhaustive_oracle(p);
    CHECK(fast.status == slow.status);
    CHECK((oracle::count_exactly_one(p.elements, p.contexts) > 0) == (fast.status == SearchStatus::sat));
    if (fast.status == SearchStatus::sat) CHECK(satisfies(p, *fast.witness));
    const auto parallel = search_assignment(p, SearchOptions{2});
    CHECK(parallel.status == fast.status);
    CHECK(parallel.witness == fast.witness);
  }
}

TEST_CASE("search is deterministic in serial mode") {
  const auto cover = build_ks_cover(build_peres24());
  const auto a = search_assignment(cover);
  const auto b = search_assignment(cover);
  CHECK(a.nodes_visited == b.nodes_visited);
  CHECK(a.status == b.status);

  const auto ks24 = build_ks_cover(build_24cell_rays());
  CHECK(search_assignment(ks24).witness == search_assignment(ks24).witness);
  CHECK(search_assignment(ks24).nodes_visited == search_assignment(ks24).nodes_visited);
}

TEST_CASE("empty and unit contexts") {
  ExactlyOneProblem p{{1, 2}, {{}}};
  CHECK(search_assignment(p).status == SearchStatus::unsat);
  CHECK(exhaustive_oracle(p).status == SearchStatus::unsat);

  ExactlyOneProblem unit{{1, 2, 3}, {{2}, {1, 2}}};
  const auto r = search_assignment(unit);
  REQUIRE(r.status == SearchStatus::sat);
  CHECK(r.witness->ones() == std::vector<int>{2});

  ExactlyOneProblem none{{1, 2}, {}};
  const auto free = search_assignment(none);
  REQUIRE(free.status == SearchStatus::sat);
  CHECK(free.witness->ones().empty());

  ExactlyOneProblem bad{{1}, {{5}}};
  CHECK_THROWS_AS(search_assignment(bad), std::invalid_argument);
}

TEST_CASE("parity-certified covers are UNSAT") {
  for (const auto& cover : {build_ks_cover(build_18ray()), gks24cell(), gks18(), hexagon_gks()}) {
    REQUIRE(parity_certificate(cover).valid);
    CHECK(search_assignment(cover).status == SearchStatus::unsat);
    CHECK(exhaustive_oracle(cover).status == SearchStatus::unsat);
  }
}

TEST_CASE("element deletion") {
  const ExactlyOneProblem p{{1, 2, 3}, {{1, 2}, {2, 3}, {3}}};
  const auto dropped = delete_element(p, 2, DeletionSemantics::drop_context);
  CHECK(dropped.elements == std::vector<int>{1, 3});
  CHECK(dropped.contexts == std::vector<std::vector<int>>{{3}});
  const auto shrunk = delete_element(p, 2, DeletionSemantics::shrink_context);
  CHECK(shrunk.contexts == std::vector<std::vector<int>>{{1}, {3}, {3}});
}

TEST_CASE("criticality of the 18-ray KS cover") {
  const auto report = criticality_report(build_ks_cover(build_18ray()));
  CHECK(report.per_element.size() == 18);
  CHECK(report.critical);
  const auto problem = to_problem(build_ks_cover(build_18ray()));
  for (const auto& [id, outcome] : report.per_element) {
    CAPTURE(id);
    CHECK(outcome.collapses);
    REQUIRE(outcome.witness);
    CHECK(satisfies(delete_element(problem, id, DeletionSemantics::drop_context), *outcome.witness));
    CHECK(outcome.witness->values.count(id) == 0);
  }
  const std::string table = format_criticality(report);
  CHECK(table.rfind("2 SAT [", 0) == 0);
  CHECK(std::count(table.begin(), table.end(), '\n') == 18);
}

TEST_CASE("criticality edge cases") {
  const auto single = criticality_report(single_tetrad());
  CHECK(single.critical);
  for (const auto& [id, outcome] : single.per_element) CHECK(outcome.witness->ones().empty());

  // Shrinking the only context of the pair {1, 4} leaves a unit context.
  auto rays = std::make_shared<const RaySet>(build_hexagon_rays().subset({1, 4}));
  const CoverStructure pair(rays, CoverKind::basis, {Context{"B", {1, 4}, 1}});
  const auto shrink = criticality_report(pair, DeletionSemantics::shrink_context);
  CHECK(shrink.critical);
  CHECK(format_criticality(shrink) == "1 SAT [4]\n4 SAT [1]\n");

  // Dropping any element removes two of the three tesseract POVMs.
  const auto gks = criticality_report(gks24cell(), DeletionSemantics::drop_context);
  CHECK(gks.critical);
}
