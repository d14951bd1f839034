/* Copyright 2026 The locksim Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <doctest.h>

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "locksim/metrics.hpp"
#include "locksim/types.hpp"

using namespace locksim;

namespace {

std::string data_path(const char* name) {
  return std::string(LOCKSIM_SOURCE_DIR) + "/data/" + name;
}

}  // namespace

TEST_CASE("co-run table loads with names and solo row") {
  const CoRunTable t = read_corun_file(data_path("nas_corun.csv"));
  REQUIRE(t.names.size() == 9);
  CHECK(t.names[0] == "EP");
  CHECK(t.names[4] == "UA");
  CHECK(t.names[8] == "MG");
  REQUIRE(t.corun_times.size() == 9);
  CHECK(t.solo_times[4] == doctest::Approx(107.20));
  CHECK(t.corun_times[0][4] == doctest::Approx(111.01));
  CHECK(t.corun_times[3][5] == doctest::Approx(197.59));
}

TEST_CASE("degradation matrix reproduces transcribed entries") {
  const CoRunTable t = read_corun_file(data_path("nas_corun.csv"));
  const auto d = degradation_matrix(t);
  CHECK(d[0][4] == doctest::Approx(0.0355410448).epsilon(1e-8));
  CHECK(d[8][8] == doctest::Approx(0.7807606264).epsilon(1e-8));
}

TEST_CASE("intensity and sensitivity are row and column norms") {
  const std::vector<std::vector<double>> d = {{3.0, 4.0}, {0.0, 0.0}};
  const auto r = intensity_sensitivity(d);
  REQUIRE(r.intensity.size() == 2);
  REQUIRE(r.sensitivity.size() == 2);
  CHECK(r.intensity[0] == doctest::Approx(5.0));
  CHECK(r.intensity[1] == doctest::Approx(0.0));
  CHECK(r.sensitivity[0] == doctest::Approx(3.0));
  CHECK(r.sensitivity[1] == doctest::Approx(4.0));

  const auto empty = intensity_sensitivity({});
  CHECK(empty.intensity.empty());
  CHECK(empty.sensitivity.empty());

  CHECK_THROWS_AS(intensity_sensitivity({{1.0, 2.0}, {1.0}}), ConfigError);
}

TEST_CASE("correlation and similarity basics") {
  const std::vector<double> x = {1.0, 2.0, 3.0};
  CHECK(pearson_correlation(x, {2.0, 4.0, 6.0}) == doctest::Approx(1.0));
  CHECK(pearson_correlation(x, {3.0, 2.0, 1.0}) == doctest::Approx(-1.0));
  CHECK(pearson_correlation(x, {5.0, 5.0, 5.0}) == 0.0);  // degenerate
  CHECK(cosine_similarity(x, x) == doctest::Approx(1.0));
  CHECK(cosine_similarity({1.0, 0.0}, {0.0, 1.0}) == doctest::Approx(0.0));
  CHECK(cosine_similarity({0.0, 0.0}, {1.0, 1.0}) == 0.0);
  CHECK_THROWS_AS(pearson_correlation({1.0}, {1.0, 2.0}), ConfigError);
  CHECK_THROWS_AS(cosine_similarity({}, {}), ConfigError);
}

TEST_CASE("intensity tracks sensitivity on the transcribed table") {
  const CoRunTable t = read_corun_file(data_path("nas_corun.csv"));
  const auto r = intensity_sensitivity(degradation_matrix(t));
  const double cos = cosine_similarity(r.intensity, r.sensitivity);
  const double pear = pearson_correlation(r.intensity, r.sensitivity);
  CHECK(cos == doctest::Approx(0.9537311927).epsilon(1e-8));
  CHECK(pear == doctest::Approx(0.7915857075).epsilon(1e-8));
  CHECK(cos > 0.8);
}

TEST_CASE("metric table ranking picks the steadiest informative metric") {
  const auto rows = read_metric_table_file(data_path("metric_stability.csv"));
  REQUIRE(rows.size() == 5);
  const MetricSelection sel = rank_metric_table(rows);
  CHECK(sel.scores[sel.best_index].name == "llc_accesses_per_instruction");
  CHECK(sel.scores[sel.best_index].ratio ==
        doctest::Approx(82.8282828283).epsilon(1e-8));

  // The transcription carries its own ratio column: recomputation matches on
  // every row but the first, which is off by over 20% in the source.
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double computed = rows[i].correlation / rows[i].stability;
    CHECK(std::abs(computed / rows[i].reported_ratio - 1.0) < 0.02);
  }
  const double first = rows[0].correlation / rows[0].stability;
  CHECK(std::abs(first / rows[0].reported_ratio - 1.0) > 0.20);
}

TEST_CASE("select_metric prefers correlation over inflation") {
  const std::vector<double> intensity = {1.0, 2.0, 3.0};
  MetricVector aligned;
  aligned.name = "aligned";
  aligned.values = {2.0, 4.0, 6.0};
  aligned.inflation = {{0.0, 0.0, 0.0},
                       {0.0, 0.0, 0.0},
                       {0.0, 0.0, 0.0}};
  MetricVector inflated;
  inflated.name = "inflated";
  inflated.values = {2.0, 4.0, 6.0};
  inflated.inflation = {{1.0, 1.0, 1.0},
                        {1.0, 1.0, 1.0},
                        {1.0, 1.0, 1.0}};
  const MetricSelection sel = select_metric(intensity, {inflated, aligned});
  CHECK(sel.best_index == 1);
  CHECK(sel.scores[1].correlation == doctest::Approx(1.0));
  CHECK(std::isinf(sel.scores[1].ratio));  // perfectly stable metric
  CHECK(sel.scores[0].stability ==
        doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
  CHECK_THROWS_AS(select_metric(intensity, {}), ConfigError);
}

TEST_CASE("running access rate is a cumulative ratio") {
  CHECK(running_access_rate({}) == 0.0);
  CHECK(running_access_rate({{2.0, 4.0}}) == doctest::Approx(0.5));
  CHECK(running_access_rate({{2.0, 4.0}, {1.0, 6.0}}) == doctest::Approx(0.3));
}

TEST_CASE("complement picking lands nearest the midpoint") {
  const std::vector<Candidate> cands = {{1, 0.72}, {2, 0.69}, {3, 0.10}};
  CHECK(pick_complement(0.3, cands, 1.0, 10) == 1);
  CHECK(pick_complement(0.3, cands, 1.0, 1) == 0);  // scan window caps choice
  CHECK(pick_complement(0.3, cands, 1.0, 0) == -1);
  CHECK(pick_complement(0.3, {}, 1.0, 4) == -1);

  const std::vector<Candidate> tie = {{1, 0.68}, {2, 0.72}};
  CHECK(pick_complement(0.3, tie, 1.0, 2) == 0);  // equal gap keeps the first
}

TEST_CASE("workload statistics over executions") {
  const WorkloadStats a = workload_stats({{4.0}, {6.0}});
  CHECK(a.mean == doctest::Approx(5.0));
  CHECK(a.variance == doctest::Approx(1.0));

  const WorkloadStats b = workload_stats({{2.0, 4.0}, {3.0, 5.0}});
  CHECK(b.mean == doctest::Approx(3.5));
  CHECK(b.variance == doctest::Approx(0.25));

  const WorkloadStats empty = workload_stats({});
  CHECK(empty.mean == 0.0);
  CHECK(empty.variance == 0.0);

  CHECK_THROWS_AS(workload_stats({{1.0}, {}}), ConfigError);
}

TEST_CASE("csv readers skip comments and reject broken tables") {
  std::istringstream table(
      "# transcription notes\n"
      "metric,correlation,stability\n"
      "\n"
      "m1,0.5,2.0\n");
  const auto rows = read_metric_table_csv(table);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].name == "m1");
  CHECK(rows[0].reported_ratio == 0.0);

  std::istringstream no_solo(
      "background,A\n"
      "A,1.0\n");
  CHECK_THROWS_AS(read_corun_csv(no_solo), ConfigError);

  std::istringstream empty("");
  CHECK_THROWS_AS(read_metric_table_csv(empty), ConfigError);

  CHECK_THROWS_AS(read_corun_file(data_path("missing.csv")), ConfigError);
}
