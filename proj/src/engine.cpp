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

#include "locksim/engine.hpp"

#include <algorithm>
#include <deque>
#include <ostream>
#include <queue>
#include <utility>
#include <vector>

#include "locksim/rng.hpp"

namespace locksim {
namespace {

// A core leaves the dispatch heap while waiting: its timestamp becomes
// invalid and the pending Spin stays at the queue front until a wake-up.
struct CoreState {
  std::deque<Event> events;
  uint64_t ts = 0;
  uint64_t parked_since = kInvalidTimestamp;  // open idle span start
  uint64_t park_ready = 0;                    // earliest wakeable time (Blocking)
  uint64_t window_start = kInvalidTimestamp;  // open enqueue->acquire window
  WaitMode mode = WaitMode::SpinBroadcast;    // how the current wait waits
};

// FIFO of cores that completed an acquiring store and not yet the releasing
// one. The front is the owner or owner-elect.
struct LockState {
  std::deque<uint32_t> fifo;
  int32_t bank = 0;
};

class Engine {
 public:
  Engine(const SimConfig& cfg, const EngineOptions& opt)
      : cfg_(cfg),
        opt_(opt),
        latency_(cfg.platform.mem_latency),
        section_rng_(0),
        bank_rng_(0) {
    if (opt.cores == 0) throw ConfigError("core count must be positive");
    if (opt.cores > cfg.platform.total_cores()) {
      throw ConfigError("core count exceeds the platform (" +
                        std::to_string(cfg.platform.total_cores()) + ")");
    }
    if (cfg.workload.noncritical.empty() || cfg.workload.critical.empty()) {
      throw ConfigError(cfg.name + ": config carries no workload");
    }
    if (opt.max_ticks == 0) throw ConfigError("max_ticks must be positive");
    if (opt.warmup_fraction < 0.0 || opt.warmup_fraction >= 1.0) {
      throw ConfigError("warmup_fraction must lie in [0, 1)");
    }
    if (opt.sample_interval == 0) {
      throw ConfigError("sample_interval must be positive");
    }
    SplitMix64 seeder(opt.seed);
    section_rng_ = SplitMix64(seeder.next());
    bank_rng_ = SplitMix64(seeder.next());
    warmup_ = static_cast<uint64_t>(
        static_cast<double>(opt.max_ticks) * opt.warmup_fraction);

    cores_.resize(opt.cores);
    locks_.resize(cfg.workload.num_locks());
    for (const auto& cs : cfg.workload.critical) {
      locks_[cs.lock].bank = static_cast<int32_t>(cs.bank);
    }
    bank_free_at_.assign(cfg.platform.memory_banks, 0);
    wait_cycles_.assign(opt.cores, 0);
  }

  SimResult run() {
    for (uint32_t c = 0; c < opt_.cores; ++c) {
      cores_[c].events.push_back({EventKind::EnterNonCritical, -1, -1, 0});
      heap_.push({0, c});
    }

    while (!heap_.empty()) {
      const auto [ts, c] = heap_.top();
      heap_.pop();
      CoreState& core = cores_[c];
      if (core.ts != ts) throw EngineError("stale dispatch entry");
      if (ts >= opt_.max_ticks) break;
      tick_ = ts;
      flush_samples(tick_);
      if (core.parked_since != kInvalidTimestamp) {
        // The idle span between parking and this wake-up is spin time.
        if (tick_ >= warmup_) {
          cycles_[idx(EventKind::Spin)] += tick_ - core.parked_since;
        }
        core.parked_since = kInvalidTimestamp;
      }
      if (core.events.empty()) throw EngineError("core ran out of events");
      dispatch(c, core);
    }
    flush_samples(opt_.max_ticks + 1);
    return finish();
  }

 private:
  using HeapEntry = std::pair<uint64_t, uint32_t>;

  static std::size_t idx(EventKind k) { return static_cast<std::size_t>(k); }

  bool counted(uint64_t dispatch_tick) const { return dispatch_tick >= warmup_; }

  uint64_t bank_access(uint32_t bank, uint64_t start) {
    const uint64_t end = std::max(start, bank_free_at_[bank]) + latency_;
    bank_free_at_[bank] = end;
    return end;
  }

  void log(uint64_t ts_after, uint32_t c, EventKind kind, uint8_t flags,
           int32_t lock, int32_t bank) {
    if (opt_.record_event_log) {
      log_.push_back({tick_, ts_after, c, kind, flags, lock, bank});
    }
  }

  void schedule(uint32_t c, uint64_t ts) {
    cores_[c].ts = ts;
    heap_.push({ts, c});
  }

  const SectionSpec& pick_noncritical() {
    const double u = section_rng_.next_unit();
    double acc = 0.0;
    for (const auto& s : cfg_.workload.noncritical) {
      acc += s.prob;
      if (u < acc) return s;
    }
    return cfg_.workload.noncritical.back();
  }

  const CriticalSectionSpec& pick_critical() {
    const double u = section_rng_.next_unit();
    double acc = 0.0;
    for (const auto& s : cfg_.workload.critical) {
      acc += s.prob;
      if (u < acc) return s;
    }
    return cfg_.workload.critical.back();
  }

  // A queue change makes every spin-waiting core re-read the lock word: one
  // coherence miss each, serialized by the lock's bank. Cores whose front is
  // already a pending miss coalesce into it and take nothing new.
  void broadcast(LockState& lk, uint64_t when, uint32_t exclude) {
    if (opt_.policy.kind == PolicyKind::LocalSpin) return;
    for (const uint32_t c : lk.fifo) {
      if (c == exclude) continue;
      CoreState& cc = cores_[c];
      if (!LockPolicy::receives_broadcast(cc.mode)) continue;
      if (cc.events.empty() || cc.events.front().kind != EventKind::Spin) {
        continue;
      }
      const Event& spin = cc.events.front();
      cc.events.push_front({EventKind::LockMiss, spin.lock, lk.bank, 0});
      if (cc.ts == kInvalidTimestamp) schedule(c, when);
    }
  }

  // Hand-off to a locally spinning head: one fixed-cost miss, no bank queue.
  void notify_head(LockState& lk, uint64_t when) {
    const uint32_t c = lk.fifo.front();
    CoreState& cc = cores_[c];
    if (cc.events.empty() || cc.events.front().kind != EventKind::Spin) return;
    const Event& spin = cc.events.front();
    cc.events.push_front(
        {EventKind::LockMiss, spin.lock, kFixedCostBank, opt_.policy.notify_cost});
    if (cc.ts == kInvalidTimestamp) schedule(c, when);
  }

  void wake_parked_head(LockState& lk, uint64_t store_end) {
    if (lk.fifo.empty()) return;
    const uint32_t c = lk.fifo.front();
    CoreState& cc = cores_[c];
    if (cc.mode != WaitMode::Parked || cc.ts != kInvalidTimestamp) return;
    uint64_t wake = store_end;
    if (opt_.policy.kind == PolicyKind::Blocking) {
      wake = std::max(store_end, cc.park_ready) + opt_.policy.ctx_switch_cost;
    } else {
      wake = store_end + opt_.policy.wake_cost;
    }
    schedule(c, wake);
  }

  void expand(uint32_t c, CoreState& core, std::vector<Event>&& body) {
    core.events.pop_front();
    core.events.insert(core.events.begin(), body.begin(), body.end());
    schedule(c, tick_);
  }

  void dispatch(uint32_t c, CoreState& core) {
    const Event ev = core.events.front();
    const bool gate = counted(tick_);

    switch (ev.kind) {
      case EventKind::EnterNonCritical: {
        if (gate) ++counts_[idx(ev.kind)];
        log(tick_, c, ev.kind, 0, -1, -1);
        expand(c, core, expand_enter_noncritical(pick_noncritical()));
        return;
      }
      case EventKind::EnterCritical: {
        if (gate) ++counts_[idx(ev.kind)];
        log(tick_, c, ev.kind, 0, -1, -1);
        expand(c, core, expand_enter_critical(pick_critical()));
        return;
      }
      case EventKind::ExitCritical: {
        if (gate) ++counts_[idx(ev.kind)];
        log(tick_, c, ev.kind, 0, ev.lock, ev.bank);
        expand(c, core, expand_exit_critical(ev.lock, ev.bank));
        return;
      }
      case EventKind::Instruction: {
        const uint64_t end = tick_ + ev.duration;
        if (gate) {
          ++counts_[idx(ev.kind)];
          cycles_[idx(ev.kind)] += ev.duration;
        }
        log(end, c, ev.kind, 0, -1, -1);
        core.events.pop_front();
        schedule(c, end);
        return;
      }
      case EventKind::CacheMiss: {
        const uint32_t bank = static_cast<uint32_t>(
            bank_rng_.next_below(cfg_.platform.memory_banks));
        const uint64_t end = bank_access(bank, tick_);
        if (gate) {
          ++counts_[idx(ev.kind)];
          cycles_[idx(ev.kind)] += end - tick_;
        }
        log(end, c, ev.kind, 0, -1, static_cast<int32_t>(bank));
        core.events.pop_front();
        schedule(c, end);
        return;
      }
      case EventKind::LockMiss: {
        uint64_t end;
        if (ev.bank == kFixedCostBank) {
          end = tick_ + ev.duration;
        } else {
          end = bank_access(static_cast<uint32_t>(ev.bank), tick_);
        }
        if (gate) {
          ++counts_[idx(ev.kind)];
          cycles_[idx(ev.kind)] += end - tick_;
        }
        log(end, c, ev.kind, 0, ev.lock, ev.bank);
        core.events.pop_front();
        schedule(c, end);
        return;
      }
      case EventKind::Store: {
        const uint64_t end = bank_access(static_cast<uint32_t>(ev.bank), tick_);
        if (gate) {
          ++counts_[idx(ev.kind)];
          cycles_[idx(ev.kind)] += end - tick_;
        }
        core.events.pop_front();
        if (core.events.empty()) throw EngineError("store without successor");
        LockState& lk = locks_[ev.lock];
        if (core.events.front().kind == EventKind::Spin) {
          handle_acquire_store(c, core, lk, ev, end);
        } else {
          handle_release_store(c, core, lk, ev, end);
        }
        schedule(c, end);
        return;
      }
      case EventKind::Spin: {
        LockState& lk = locks_[ev.lock];
        if (!lk.fifo.empty() && lk.fifo.front() == c) {
          // Acquisition: the wait window closes here.
          core.events.pop_front();
          if (core.window_start != kInvalidTimestamp) {
            wait_cycles_[c] += window_overlap(core.window_start, tick_);
            core.window_start = kInvalidTimestamp;
          }
          log(tick_, c, ev.kind, kLogAcquire, ev.lock, ev.bank);
          schedule(c, tick_);
        } else {
          // Off the queue head: this is a real spin episode.
          if (gate) ++counts_[idx(ev.kind)];
          log(kInvalidTimestamp, c, ev.kind, kLogParked, ev.lock, ev.bank);
          core.parked_since = tick_;
          if (opt_.policy.kind == PolicyKind::Blocking) {
            core.park_ready = tick_ + opt_.policy.ctx_switch_cost;
          }
          core.ts = kInvalidTimestamp;
        }
        return;
      }
    }
    throw EngineError("unhandled event kind");
  }

  void handle_acquire_store(uint32_t c, CoreState& core, LockState& lk,
                            const Event& ev, uint64_t end) {
    const uint64_t waiters = lk.fifo.empty() ? 0 : lk.fifo.size() - 1;
    core.mode = opt_.policy.wait_mode(waiters);
    lk.fifo.push_back(c);
    core.window_start = end;
    log(end, c, ev.kind, kLogEnqueue, ev.lock, ev.bank);
    broadcast(lk, end, c);
  }

  void handle_release_store(uint32_t c, CoreState& core, LockState& lk,
                            const Event& ev, uint64_t end) {
    if (lk.fifo.empty() || lk.fifo.front() != c) {
      throw EngineError("release by a core that does not hold the lock");
    }
    lk.fifo.pop_front();
    if (counted(tick_)) ++iterations_;
    log(end, c, ev.kind, kLogRelease, ev.lock, ev.bank);
    (void)core;
    if (opt_.policy.kind == PolicyKind::LocalSpin) {
      if (!lk.fifo.empty()) notify_head(lk, end);
    } else {
      broadcast(lk, end, c);
      wake_parked_head(lk, end);
    }
  }

  // Portion of [lo, hi) inside the measured interval [warmup, max_ticks).
  uint64_t window_overlap(uint64_t lo, uint64_t hi) const {
    const uint64_t a = std::max(lo, warmup_);
    const uint64_t b = std::min(hi, opt_.max_ticks);
    return b > a ? b - a : 0;
  }

  void flush_samples(uint64_t up_to) {
    while (next_sample_ < up_to && next_sample_ <= opt_.max_ticks) {
      std::vector<uint32_t> lq;
      lq.reserve(locks_.size());
      for (const auto& lk : locks_) {
        lq.push_back(lk.fifo.empty()
                         ? 0u
                         : static_cast<uint32_t>(lk.fifo.size() - 1));
      }
      std::vector<uint32_t> bq;
      bq.reserve(bank_free_at_.size());
      for (const uint64_t free_at : bank_free_at_) {
        const uint64_t backlog =
            free_at > next_sample_
                ? (free_at - next_sample_ + latency_ - 1) / latency_
                : 0;
        bq.push_back(static_cast<uint32_t>(backlog));
      }
      lock_trace_.push_back(std::move(lq));
      bank_trace_.push_back(std::move(bq));
      next_sample_ += opt_.sample_interval;
    }
  }

  SimResult finish() {
    // Waits still open at the horizon contribute their clipped span.
    for (uint32_t c = 0; c < opt_.cores; ++c) {
      CoreState& core = cores_[c];
      if (core.window_start != kInvalidTimestamp) {
        wait_cycles_[c] += window_overlap(core.window_start, opt_.max_ticks);
      }
      if (core.parked_since != kInvalidTimestamp &&
          core.parked_since < opt_.max_ticks) {
        cycles_[idx(EventKind::Spin)] += opt_.max_ticks - core.parked_since;
      }
    }
    SimResult r;
    r.cores = opt_.cores;
    r.total_ticks = opt_.max_ticks;
    r.warmup_ticks = warmup_;
    r.iterations = iterations_;
    const double elapsed = static_cast<double>(opt_.max_ticks - warmup_);
    r.aggregate_throughput =
        elapsed > 0 ? static_cast<double>(iterations_) / elapsed : 0.0;
    r.per_core_throughput = r.aggregate_throughput / opt_.cores;
    r.lock_wait_fraction.resize(opt_.cores);
    for (uint32_t c = 0; c < opt_.cores; ++c) {
      r.lock_wait_fraction[c] =
          elapsed > 0 ? static_cast<double>(wait_cycles_[c]) / elapsed : 0.0;
    }
    r.event_counts = counts_;
    r.event_cycles = cycles_;
    r.lock_queue_trace = std::move(lock_trace_);
    r.bank_queue_trace = std::move(bank_trace_);
    r.event_log = std::move(log_);
    return r;
  }

  const SimConfig& cfg_;
  const EngineOptions& opt_;
  const uint64_t latency_;
  SplitMix64 section_rng_;
  SplitMix64 bank_rng_;
  uint64_t warmup_ = 0;
  uint64_t tick_ = 0;
  uint64_t next_sample_ = 0;
  uint64_t iterations_ = 0;

  std::vector<CoreState> cores_;
  std::vector<LockState> locks_;
  std::vector<uint64_t> bank_free_at_;
  std::vector<uint64_t> wait_cycles_;
  std::array<uint64_t, kEventKindCount> counts_{};
  std::array<uint64_t, kEventKindCount> cycles_{};
  std::vector<std::vector<uint32_t>> lock_trace_;
  std::vector<std::vector<uint32_t>> bank_trace_;
  std::vector<LogRecord> log_;
  std::priority_queue<HeapEntry, std::vector<HeapEntry>, std::greater<>> heap_;
};

}  // namespace

double SimResult::mean_lock_wait_fraction() const {
  if (lock_wait_fraction.empty()) return 0.0;
  double sum = 0.0;
  for (const double f : lock_wait_fraction) sum += f;
  return sum / static_cast<double>(lock_wait_fraction.size());
}

double SimResult::spin_lockmiss_event_share() const {
  uint64_t total = 0;
  for (const uint64_t n : event_counts) total += n;
  if (total == 0) return 0.0;
  const uint64_t contended =
      event_counts[static_cast<std::size_t>(EventKind::Spin)] +
      event_counts[static_cast<std::size_t>(EventKind::LockMiss)];
  return static_cast<double>(contended) / static_cast<double>(total);
}

SimResult run_simulation(const SimConfig& cfg, const EngineOptions& opt) {
  Engine engine(cfg, opt);
  return engine.run();
}

void write_event_log(std::ostream& os, const std::vector<LogRecord>& log) {
  for (const auto& rec : log) {
    os << rec.tick << ' ' << rec.core << ' ' << to_string(rec.kind);
    os << ' ';
    if (rec.flags == 0) os << '-';
    if (rec.flags & kLogAcquire) os << 'A';
    if (rec.flags & kLogRelease) os << 'R';
    if (rec.flags & kLogEnqueue) os << 'E';
    if (rec.flags & kLogParked) os << 'P';
    os << ' ';
    if (rec.ts_after == kInvalidTimestamp) {
      os << '-';
    } else {
      os << rec.ts_after;
    }
    os << " lock=" << rec.lock << " bank=" << rec.bank << '\n';
  }
}

}  // namespace locksim
