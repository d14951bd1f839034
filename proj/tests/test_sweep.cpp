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

#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "locksim/config_io.hpp"
#include "locksim/rng.hpp"
#include "locksim/sweep.hpp"

using namespace locksim;

namespace {

SimConfig load_cfg(const char* stem) {
  return load_config_file(std::string(LOCKSIM_SOURCE_DIR) + "/configs/" +
                          stem + ".json");
}

RunRow stub_row(const char* config, uint32_t cores, uint64_t seed,
                double throughput) {
  RunRow row;
  row.config = config;
  row.policy = "ticket";
  row.cores = cores;
  row.seed = seed;
  row.max_ticks = 1000;
  row.throughput = throughput;
  row.per_core_throughput = throughput / cores;
  row.iterations = static_cast<uint64_t>(throughput * 1000);
  return row;
}

}  // namespace

TEST_CASE("seed derivation is a deterministic stream") {
  const auto seeds = derive_seeds(42, 3);
  REQUIRE(seeds.size() == 3);
  CHECK(seeds[0] == 42);
  SplitMix64 rng(42);
  CHECK(seeds[1] == rng.next());
  CHECK(seeds[2] == rng.next());
  CHECK(derive_seeds(42, 3) == seeds);
  CHECK(derive_seeds(42, 0).empty());
  CHECK(derive_seeds(7, 1) == std::vector<uint64_t>{7});
}

TEST_CASE("run_one flattens a simulation into a row") {
  RunSpec spec;
  spec.config = load_cfg("c1");
  spec.policy = LockPolicy::parse("ticket");
  spec.cores = 2;
  spec.max_ticks = 20'000;
  const RunRow row = run_one(spec);
  CHECK(row.kind == "run");
  CHECK(row.config == "c1");
  CHECK(row.policy == "ticket");
  CHECK(row.cores == 2);
  CHECK(row.seed == 42);
  CHECK(row.max_ticks == 20'000);
  CHECK(row.warmup_ticks == 1000);
  CHECK(row.iterations > 0);
  CHECK(row.throughput > 0.0);
  CHECK(row.error.empty());
  CHECK(row.speedup == 0.0);  // filled only by join_speedups
}

TEST_CASE("failed runs keep their row and report the error") {
  RunSpec spec;
  spec.config = load_cfg("c1");
  spec.cores = 64;  // beyond the 32-core platform
  spec.max_ticks = 1000;
  const RunRow row = run_one(spec);
  CHECK_FALSE(row.error.empty());
  CHECK(row.iterations == 0);
  CHECK(row.throughput == 0.0);
}

TEST_CASE("serial and parallel sweeps emit identical bytes") {
  std::vector<RunSpec> specs;
  for (const char* stem : {"c1", "c3"}) {
    for (const uint32_t cores : {1u, 2u, 4u}) {
      for (const uint64_t seed : derive_seeds(42, 2)) {
        RunSpec spec;
        spec.config = load_cfg(stem);
        spec.cores = cores;
        spec.seed = seed;
        spec.max_ticks = 20'000;
        specs.push_back(std::move(spec));
      }
    }
  }
  SweepResult serial = sweep_serial(specs);
  SweepResult parallel = sweep_parallel(specs);
  for (SweepResult* r : {&serial, &parallel}) {
    join_speedups(*r);
    append_mean_rows(*r);
  }
  std::ostringstream a, b;
  write_sweep_csv(a, serial);
  write_sweep_csv(b, parallel);
  CHECK(a.str() == b.str());

  std::ostringstream ja, jb;
  write_sweep_json(ja, serial);
  write_sweep_json(jb, parallel);
  CHECK(ja.str() == jb.str());

  // Row order follows the input order, not the completion order.
  REQUIRE(serial.rows.size() >= specs.size());
  for (std::size_t i = 0; i < specs.size(); ++i) {
    CHECK(serial.rows[i].config == specs[i].config.name);
    CHECK(serial.rows[i].cores == specs[i].cores);
    CHECK(serial.rows[i].seed == specs[i].seed);
  }
}

TEST_CASE("speedup joins against the matching single core row") {
  SweepResult r;
  r.rows.push_back(stub_row("w", 1, 7, 0.1));
  r.rows.push_back(stub_row("w", 4, 7, 0.3));
  r.rows.push_back(stub_row("w", 4, 9, 0.2));  // seed 9 has no 1-core partner
  join_speedups(r);
  CHECK(r.rows[0].speedup == doctest::Approx(1.0));
  CHECK(r.rows[1].speedup == doctest::Approx(3.0));
  CHECK(r.rows[2].speedup == 0.0);
}

TEST_CASE("mean rows aggregate successful runs per group") {
  SweepResult r;
  r.rows.push_back(stub_row("w", 4, 1, 0.2));
  r.rows.push_back(stub_row("w", 4, 2, 0.4));
  RunRow failed = stub_row("w", 4, 3, 0.0);
  failed.error = "boom";
  r.rows.push_back(failed);
  r.rows.push_back(stub_row("v", 2, 1, 0.5));
  r.rows[0].lock_qlen_max = 3;
  r.rows[1].lock_qlen_max = 5;
  r.rows[0].iterations = 100;
  r.rows[1].iterations = 200;

  append_mean_rows(r);
  REQUIRE(r.rows.size() == 6);  // 4 runs + 2 group means in first-seen order
  const RunRow& mw = r.rows[4];
  CHECK(mw.kind == "mean");
  CHECK(mw.config == "w");
  CHECK(mw.cores == 4);
  CHECK(mw.seed == 2);  // participating run count, failures excluded
  CHECK(mw.throughput == doctest::Approx(0.3));
  CHECK(mw.iterations == 150);
  CHECK(mw.lock_qlen_max == 5);  // group maximum, not a mean
  const RunRow& mv = r.rows[5];
  CHECK(mv.config == "v");
  CHECK(mv.seed == 1);
  CHECK(mv.throughput == doctest::Approx(0.5));
}

TEST_CASE("csv header is stable") {
  CHECK(sweep_csv_header() ==
        "kind,config,policy,cores,seed,max_ticks,warmup_ticks,iterations,"
        "throughput,per_core_throughput,speedup,wait_frac_mean,wait_frac_max,"
        "ev_instruction,ev_store,ev_enter_c,ev_lock_miss,ev_cache_miss,"
        "ev_spin,ev_exit_c,ev_enter_nc,"
        "cyc_instruction,cyc_store,cyc_enter_c,cyc_lock_miss,cyc_cache_miss,"
        "cyc_spin,cyc_exit_c,cyc_enter_nc,"
        "lock_qlen_mean,lock_qlen_max,bank_qlen_mean,bank_qlen_max,error");
}

TEST_CASE("csv rows serialize with stable formatting") {
  SweepResult r;
  RunRow row = stub_row("w", 2, 7, 0.25);
  row.warmup_ticks = 5;
  row.iterations = 3;
  row.per_core_throughput = 0.125;
  r.rows.push_back(row);
  std::ostringstream os;
  write_sweep_csv(os, r);
  const std::string body = os.str().substr(os.str().find('\n') + 1);
  CHECK(body.substr(0, 32) == "run,w,ticket,2,7,1000,5,3,0.25,0");
}

TEST_CASE("json rows carry named event maps") {
  SweepResult r;
  RunRow row = stub_row("w", 2, 7, 0.25);
  row.events[0] = 11;
  row.cycles[7] = 9;
  r.rows.push_back(row);
  std::ostringstream os;
  write_sweep_json(os, r);
  const auto parsed = nlohmann::json::parse(os.str());
  REQUIRE(parsed.is_array());
  REQUIRE(parsed.size() == 1);
  CHECK(parsed[0]["config"] == "w");
  CHECK(parsed[0]["cores"] == 2);
  CHECK(parsed[0]["events"]["instruction"] == 11);
  CHECK(parsed[0]["cycles"]["enter_nc"] == 9);
  CHECK(parsed[0]["error"] == "");
}
