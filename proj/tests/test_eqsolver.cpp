#include <catch2/catch_amalgamated.hpp>

#include "eqcenter/eqsolver.hpp"
#include "eqcenter/oracle.hpp"
#include "test_support.hpp"

using namespace eqcenter;

namespace {

DistanceMatrix line_matrix(const std::vector<double>& xs) {
  const std::size_t n = xs.size();
  std::vector<double> flat(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) flat[i * n + j] = std::abs(xs[i] - xs[j]);
  return DistanceMatrix::from_flat(n, std::move(flat));
}

void check_selection_invariants(const DistanceMatrix& d, const CenterSelection& sel) {
  const double r = sel.guess;
  // Pairwise center separation beyond 2R.
  for (std::size_t a = 0; a < sel.centers.size(); ++a)
    for (std::size_t b = a + 1; b < sel.centers.size(); ++b)
      REQUIRE(d(sel.centers[a], sel.centers[b]) > 2.0 * r);
  // The covering sets partition all points, each within 2R of its center.
  std::vector<int> covered(d.size(), 0);
  for (std::size_t ci = 0; ci < sel.centers.size(); ++ci) {
    for (PointId j : sel.groups[ci]) {
      ++covered[j];
      REQUIRE(d(j, sel.centers[ci]) <= 2.0 * r);
      REQUIRE(sel.covered_by[j] == sel.centers[ci]);
    }
  }
  for (int c : covered) REQUIRE(c == 1);
  // Non-isolated centers have a partition neighbor within 3R.
  for (std::size_t ci = 0; ci < sel.centers.size(); ++ci) {
    const auto& part = sel.partition[sel.partition_of[ci]];
    if (part.size() <= 1) continue;
    bool has_neighbor = false;
    for (PointId other : part)
      if (other != sel.centers[ci] && d(sel.centers[ci], other) <= 3.0 * r) has_neighbor = true;
    REQUIRE(has_neighbor);
  }
  // Isolated groups are separated from everything else by more than R.
  const auto split = split_isolation(sel);
  for (std::size_t ci = 0; ci < sel.centers.size(); ++ci) {
    if (sel.partition[sel.partition_of[ci]].size() != 1) continue;
    for (PointId j : sel.groups[ci])
      for (PointId other = 0; other < d.size(); ++other)
        if (sel.covered_by[other] != sel.centers[ci]) REQUIRE(d(j, other) > r);
  }
}

}  // namespace

TEST_CASE("select_centers hand traces") {
  auto t4 = generate_pof_instance(1, 10);

  SECTION("pof instance at R=1 gives two isolated pair groups") {
    auto sel = select_centers(t4.d, 1.0);
    REQUIRE(sel.centers == std::vector<PointId>{0, 2});
    REQUIRE(sel.partition.size() == 2);
    CHECK(sel.partition[0] == std::vector<PointId>{0});
    CHECK(sel.partition[1] == std::vector<PointId>{2});
    CHECK(sel.groups[0] == std::vector<PointId>{0, 1});
    CHECK(sel.groups[1] == std::vector<PointId>{2, 3});
    auto split = split_isolation(sel);
    CHECK(split.isolated == std::vector<PointId>{0, 2});
    CHECK(split.non_isolated.empty());
  }

  SECTION("pof instance at R=10 covers everything from one center") {
    auto sel = select_centers(t4.d, 10.0);
    REQUIRE(sel.centers == std::vector<PointId>{0});
    CHECK(sel.groups[0] == std::vector<PointId>{0, 1, 2, 3});
    CHECK(split_isolation(sel).isolated == std::vector<PointId>{0});
  }

  SECTION("line at R=1 chains one non-isolated partition") {
    auto d = line_matrix({0.0, 2.5, 5.0});
    auto sel = select_centers(d, 1.0);
    REQUIRE(sel.centers == std::vector<PointId>{0, 1, 2});
    REQUIRE(sel.partition.size() == 1);
    CHECK(sel.partition[0] == std::vector<PointId>{0, 1, 2});
    for (std::size_t ci = 0; ci < 3; ++ci)
      CHECK(sel.groups[ci] == std::vector<PointId>{static_cast<PointId>(ci)});
    CHECK(split_isolation(sel).isolated.empty());
  }
}

TEST_CASE("farthest_pair_assignment") {
  auto t4 = generate_pof_instance(1, 10);

  SECTION("two points swap") {
    auto fp = farthest_pair_assignment(t4.d, {0, 1});
    CHECK(fp.c1 == 0);
    CHECK(fp.c2 == 1);
    CHECK(fp.assigned == std::vector<PointId>{1, 0});
  }

  SECTION("full pof group picks the lexicographically smallest farthest pair") {
    auto fp = farthest_pair_assignment(t4.d, {0, 1, 2, 3});
    CHECK(fp.c1 == 0);
    CHECK(fp.c2 == 2);
    CHECK(fp.assigned == std::vector<PointId>{2, 2, 0, 0});
  }

  SECTION("equilateral triple breaks ties to c1") {
    auto d = DistanceMatrix::from_rows({{0, 1, 1}, {1, 0, 1}, {1, 1, 0}});
    auto fp = farthest_pair_assignment(d, {0, 1, 2});
    CHECK(fp.c1 == 0);
    CHECK(fp.c2 == 1);
    CHECK(fp.assigned == std::vector<PointId>{1, 0, 0});
    for (std::size_t i = 0; i < 3; ++i) {
      const double dist = d(i, fp.assigned[i]);
      CHECK(dist >= 0.5);
      CHECK(dist <= 1.0);
    }
  }

  SECTION("singleton group is rejected") {
    CHECK_THROWS_AS(farthest_pair_assignment(t4.d, {0}), std::invalid_argument);
  }
}

TEST_CASE("farthest pair sandwich bounds hold on random groups") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto d = eqtest::random_euclidean_matrix(9, seed);
    std::vector<PointId> group;
    for (PointId j = 0; j < 9; ++j)
      if ((seed >> j) % 2 == 0 || group.size() < 2) group.push_back(j);
    auto fp = farthest_pair_assignment(d, group);
    const double span = d(fp.c1, fp.c2);
    for (std::size_t i = 0; i < group.size(); ++i) {
      CHECK(d(group[i], fp.assigned[i]) >= span / 2.0);
      CHECK(d(group[i], fp.assigned[i]) <= span);
    }
  }
}

TEST_CASE("classify_types hand traces") {
  SECTION("centers on a line are type-1 anchored to themselves") {
    auto d = line_matrix({0.0, 2.5, 5.0});
    auto sel = select_centers(d, 1.0);
    auto split = split_isolation(sel);
    auto cls = classify_types(d, split, 1.0);
    CHECK(cls.type1 == std::vector<PointId>{0, 1, 2});
    CHECK(cls.type2.empty());
    for (PointId j : cls.type1) CHECK(cls.anchor[j] == j);
  }

  SECTION("an off-center point beyond R is type-2 anchored to its cover") {
    auto d = line_matrix({0.0, 2.5, 5.0, 1.25});
    auto sel = select_centers(d, 1.0);
    auto split = split_isolation(sel);
    REQUIRE(split.non_isolated == std::vector<PointId>{0, 1, 2});
    auto cls = classify_types(d, split, 1.0);
    CHECK(cls.type2 == std::vector<PointId>{3});
    CHECK(cls.anchor[3] == 0);  // rho(j4) = j1 covered it
  }

  SECTION("empty non-isolated side classifies nothing") {
    auto t4 = generate_pof_instance(1, 10);
    auto sel = select_centers(t4.d, 1.0);
    auto cls = classify_types(t4.d, split_isolation(sel), 1.0);
    CHECK(cls.type1.empty());
    CHECK(cls.type2.empty());
  }
}

TEST_CASE("assign_nonisolated hand traces") {
  SECTION("three centers on a line, all case (A)") {
    auto d = line_matrix({0.0, 2.5, 5.0});
    auto sel = select_centers(d, 1.0);
    auto split = split_isolation(sel);
    auto cls = classify_types(d, split, 1.0);
    auto non = assign_nonisolated(d, split, cls, 1.0);
    CHECK(non.phi[0] == 1);
    CHECK(non.phi[1] == 0);  // tie at 2.5 resolves to the lowest index
    CHECK(non.phi[2] == 1);
    for (PointId j = 0; j < 3; ++j) {
      CHECK(non.assigned_case[j] == NonIsolatedAssignment::Case::a);
      CHECK(d(j, non.phi[j]) > 1.0);
      CHECK(d(j, non.phi[j]) <= 4.0);
    }
  }

  SECTION("type-2 point with a second center within 2R hits case (B)") {
    auto d = line_matrix({0.0, 2.5, 5.0, 1.25});
    auto sel = select_centers(d, 1.0);
    auto split = split_isolation(sel);
    auto cls = classify_types(d, split, 1.0);
    auto non = assign_nonisolated(d, split, cls, 1.0);
    CHECK(non.assigned_case[3] == NonIsolatedAssignment::Case::b);
    CHECK(non.phi[3] == 0);  // farthest within 2R: tie between 0 and 1 at 1.25
    CHECK(d(3, non.phi[3]) > 1.0);
    CHECK(d(3, non.phi[3]) <= 2.0);
  }
}

TEST_CASE("lemma distance bands hold per case over random instances") {
  std::size_t case_counts[4] = {0, 0, 0, 0};
  for (std::uint64_t seed = 0; seed < 120; ++seed) {
    auto d = eqtest::random_euclidean_matrix(6 + seed % 5, seed);
    auto candidates = pairwise_distance_candidates(d, 0.0);
    const double r = candidates[candidates.size() / 4];
    auto sel = select_centers(d, r);
    auto split = split_isolation(sel);
    if (split.covered_non.empty()) continue;
    auto cls = classify_types(d, split, r);
    auto non = assign_nonisolated(d, split, cls, r);
    for (PointId j : split.covered_non) {
      const double dist = d(j, non.phi[j]);
      const double anchor_dist = d(j, cls.anchor[j]);
      switch (non.assigned_case[j]) {
        case NonIsolatedAssignment::Case::a:
          REQUIRE(anchor_dist <= r);
          REQUIRE(dist > r);
          REQUIRE(dist <= 4.0 * r);
          ++case_counts[1];
          break;
        case NonIsolatedAssignment::Case::b:
          REQUIRE(anchor_dist > r);
          REQUIRE(dist >= anchor_dist);
          REQUIRE(dist <= 2.0 * r);
          ++case_counts[2];
          break;
        case NonIsolatedAssignment::Case::c:
          REQUIRE(anchor_dist <= 2.0 * r);
          REQUIRE(dist > 2.0 * r);
          REQUIRE(dist <= 5.0 * r);
          ++case_counts[3];
          break;
        default:
          FAIL("unassigned point in the non-isolated side");
      }
    }
  }
  CHECK(case_counts[1] > 0);
  CHECK(case_counts[2] > 0);
}

TEST_CASE("case (C) band on a constructed instance") {
  // Two non-isolated centers 2.5 apart; the point at -1.5 is covered by the
  // first but beyond R of every center and beyond 2R of every center other
  // than its cover.
  auto d = line_matrix({0.0, 2.5, -1.5});
  auto sel = select_centers(d, 1.0);
  auto split = split_isolation(sel);
  REQUIRE(split.non_isolated == std::vector<PointId>{0, 1});
  auto cls = classify_types(d, split, 1.0);
  REQUIRE(cls.type2 == std::vector<PointId>{2});
  auto non = assign_nonisolated(d, split, cls, 1.0);
  CHECK(non.assigned_case[2] == NonIsolatedAssignment::Case::c);
  CHECK(non.phi[2] == 1);
  CHECK(d(2, cls.anchor[2]) <= 2.0);
  CHECK(d(2, non.phi[2]) > 2.0);
  CHECK(d(2, non.phi[2]) <= 5.0);
}

TEST_CASE("assign_isolated hand traces on the pof instance") {
  auto t4 = generate_pof_instance(1, 10);

  SECTION("single group at R=10 opens the farthest pair") {
    auto sel = select_centers(t4.d, 10.0);
    auto iso = assign_isolated(t4, sel, SolveMode::standard);
    CHECK(iso.centers == std::vector<PointId>{0, 2});
    for (PointId j = 0; j < 4; ++j) CHECK(t4.d(j, iso.phi[j]) == 10.0);
  }

  SECTION("pair groups at R=1 open all four points") {
    auto sel = select_centers(t4.d, 1.0);
    auto iso = assign_isolated(t4, sel, SolveMode::standard);
    CHECK(iso.centers == std::vector<PointId>{0, 1, 2, 3});
  }

  SECTION("singleton group passes the single-center scan") {
    auto d = line_matrix({0.0, 100.0, 200.0});
    auto sim = SimilarityFamily::from_sets({{}, {}, {}}, d);
    auto inst = Instance::make(d, sim, 3, 2.0, FairnessVariant::PP);
    auto sel = select_centers(d, 1.0);
    auto iso = assign_isolated(inst, sel, SolveMode::standard);
    CHECK(iso.centers == std::vector<PointId>{0, 1, 2});
    for (PointId j = 0; j < 3; ++j) CHECK(iso.phi[j] == j);
  }

  SECTION("pseudo-pof mode skips the scan for non-singleton groups") {
    auto sel = select_centers(t4.d, 10.0);
    auto iso = assign_isolated(t4, sel, SolveMode::pseudo_pof);
    CHECK(iso.centers == std::vector<PointId>{0, 2});
  }
}

TEST_CASE("isolated assignment satisfies fairness within groups and stays within 4R") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    auto inst = eqtest::random_instance(6 + seed % 5, 2, 2.0, FairnessVariant::PP, seed);
    auto candidates = pairwise_distance_candidates(inst.d, inst.sim.r_max);
    const double r = candidates[std::min<std::size_t>(candidates.size() - 1, 2)];
    auto sel = select_centers(inst.d, r);
    auto split = split_isolation(sel);
    auto iso = assign_isolated(inst, sel, SolveMode::standard);
    for (PointId j : split.covered_iso) {
      REQUIRE(inst.d(j, iso.phi[j]) <= 4.0 * r);
      std::vector<double> sim_dists;
      for (PointId m : inst.sim.sets[j]) sim_dists.push_back(inst.d(m, iso.phi[m]));
      REQUIRE(fairness_constraint_holds(inst.variant, inst.alpha, inst.d(j, iso.phi[j]),
                                        sim_dists));
    }
  }
}

TEST_CASE("non-isolated assignment is fair and within 5R at guesses above R_m") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    auto inst = eqtest::random_instance(6 + seed % 5, 2, 2.0,
                                        seed % 2 == 0 ? FairnessVariant::PP : FairnessVariant::AG,
                                        seed * 3 + 17);
    auto candidates = pairwise_distance_candidates(inst.d, inst.sim.r_max);
    for (std::size_t pick : {std::size_t{0}, candidates.size() / 2}) {
      const double r = candidates[pick];
      auto sel = select_centers(inst.d, r);
      auto split = split_isolation(sel);
      if (split.covered_non.empty()) continue;
      auto cls = classify_types(inst.d, split, r);
      auto non = assign_nonisolated(inst.d, split, cls, r);
      for (PointId j : split.covered_non) {
        REQUIRE(inst.d(j, non.phi[j]) <= 5.0 * r);
        std::vector<double> sim_dists;
        for (PointId m : inst.sim.sets[j]) sim_dists.push_back(inst.d(m, non.phi[m]));
        REQUIRE(fairness_constraint_holds(inst.variant, inst.alpha, inst.d(j, non.phi[j]),
                                          sim_dists));
      }
    }
  }
}

TEST_CASE("solve_for_guess on the pof instance") {
  auto t4 = generate_pof_instance(1, 10);

  SECTION("guess 1 is infeasible, certifying 1 < R*") {
    auto outcome = solve_for_guess(t4, 1.0, SolveMode::standard);
    CHECK_FALSE(outcome.feasible());
    CHECK(outcome.centers_needed == 4);
  }

  SECTION("guess 10 returns the fair cross assignment") {
    auto outcome = solve_for_guess(t4, 10.0, SolveMode::standard);
    REQUIRE(outcome.feasible());
    CHECK(outcome.solution->centers == std::vector<PointId>{0, 2});
    CHECK(outcome.solution->value == 10.0);
    CHECK(check_fairness(t4, *outcome.solution).all_satisfied());
  }

  SECTION("guesses below R_m are rejected") {
    CHECK_THROWS_AS(solve_for_guess(t4, 0.5, SolveMode::standard), std::invalid_argument);
  }
}

TEST_CASE("the top guess is never infeasible for alpha >= 2 and k >= 2") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    auto inst = eqtest::random_instance(5 + seed % 6, 2 + seed % 2, 2.0, FairnessVariant::PP, seed);
    const double top = std::max(inst.d.max_distance(), inst.sim.r_max);
    CHECK(solve_for_guess(inst, top, SolveMode::standard).feasible());
    CHECK(solve_for_guess(inst, top, SolveMode::pseudo_pof).feasible());
  }
}

TEST_CASE("solve on the pof instance returns the optimum") {
  auto t4 = generate_pof_instance(1, 10);
  auto result = solve(t4, SolveMode::standard, GuessSearch::linear);
  CHECK(result.solution.value == 10.0);
  CHECK(result.solution.value <= 5.0 * std::max(10.0, t4.sim.r_max));

  auto pseudo = solve(t4, SolveMode::pseudo_pof, GuessSearch::linear);
  CHECK(pseudo.solution.centers.size() <= 2 * t4.k);
  CHECK(pseudo.solution.value <= 50.0);
  CHECK(check_fairness(t4, pseudo.solution).all_satisfied());
  auto ag = t4;
  ag.variant = FairnessVariant::AG;
  CHECK(check_fairness(ag, pseudo.solution).all_satisfied());
}

TEST_CASE("solve handles all-empty similarity sets as budgeted vanilla assignment") {
  auto d = eqtest::random_euclidean_matrix(7, 21);
  auto inst = Instance::make(d, SimilarityFamily::from_sets(std::vector<std::vector<PointId>>(7), d),
                             3, 2.0, FairnessVariant::PP);
  REQUIRE(inst.sim.r_max == 0.0);
  auto result = solve(inst);
  CHECK(result.solution.centers.size() <= 3);
  CHECK(check_fairness(inst, result.solution).all_satisfied());
}

TEST_CASE("solve rejects alpha below 2 and k below 2") {
  auto t4 = generate_pof_instance(1, 10, 1.5);
  CHECK_THROWS_AS(solve(t4), std::invalid_argument);
  auto k1 = generate_pof_instance(1, 10);
  k1.k = 1;
  CHECK_THROWS_AS(solve(k1), std::invalid_argument);
}

TEST_CASE("linear and binary search agree on every tested instance") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    auto inst = eqtest::random_instance(6 + seed % 5, 2 + seed % 2,
                                        seed % 3 == 0 ? 2.5 : 2.0,
                                        seed % 2 == 0 ? FairnessVariant::PP : FairnessVariant::AG,
                                        seed * 13 + 5);
    auto lin = solve(inst, SolveMode::standard, GuessSearch::linear);
    auto bin = solve(inst, SolveMode::standard, GuessSearch::binary);
    CHECK(lin.guess == bin.guess);
    CHECK(lin.solution.value == bin.solution.value);
  }
}

TEST_CASE("selection invariants hold across random instances and guesses") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    auto d = eqtest::random_euclidean_matrix(5 + seed % 6, seed * 7 + 1);
    for (double r : pairwise_distance_candidates(d, 0.0)) {
      auto sel = select_centers(d, r);
      check_selection_invariants(d, sel);
    }
  }
  for (const auto& inst : {generate_cycle_instance(4), generate_cycle_instance(8),
                           generate_pof_instance(1, 10), generate_pof_instance(1, 1)})
    for (double r : pairwise_distance_candidates(inst.d, 0.0))
      check_selection_invariants(inst.d, select_centers(inst.d, r));
}

TEST_CASE("infeasibility at a guess implies the fair optimum exceeds it") {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    auto inst = eqtest::random_instance(5 + seed % 4, 2, 2.0,
                                        seed % 2 == 0 ? FairnessVariant::PP : FairnessVariant::AG,
                                        seed + 1000);
    const auto r_star = brute_fair_optimum(inst);
    REQUIRE(r_star.has_value());
    for (double r : pairwise_distance_candidates(inst.d, inst.sim.r_max)) {
      auto outcome = solve_for_guess(inst, r, SolveMode::standard);
      if (!outcome.feasible()) CHECK(*r_star > r);
    }
  }
}

TEST_CASE("uniform-radius AG instances open one center per isolated group") {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    auto [inst, r_d] = eqtest::uniform_radius_instance(seed);
    REQUIRE(inst.sim.r_max == r_d);
    for (double r : inst.sim.radii) REQUIRE(r == r_d);

    auto result = solve(inst, SolveMode::standard, GuessSearch::linear);
    auto sel = select_centers(inst.d, result.guess);
    auto iso = assign_isolated(inst, sel, SolveMode::standard);
    for (const auto& opened : iso.opened_per_group) CHECK(opened.size() == 1);
    CHECK(check_fairness(inst, result.solution).all_satisfied());
  }
}
