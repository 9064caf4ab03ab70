#pragma once

#include <cstdint>
#include <exception>
#include <optional>
#include <thread>
#include <vector>

namespace clutter {

template <typename Candidate>
struct BlockedSearchResult {
  std::optional<Candidate> hit;  // first hit in canonical order, if any
  std::uint64_t nodes = 0;       // candidates admitted up to the stop decision
  bool exhausted = false;        // generator ran out before the budget did
};

// Deterministic budgeted search. `next(c)` produces candidates in canonical
// order (false = exhausted); `check(c)` tests one candidate and is safe to
// run concurrently. Candidates are admitted strictly by sequence index while
// under budget and processed in fixed blocks; workers stride within a block
// and the winner is the hit with the lowest sequence index. The admitted set
// and the reported hit are pure functions of (input, budget), independent of
// the job count.
template <typename Candidate, typename Next, typename Check>
BlockedSearchResult<Candidate> blocked_search(Next next, Check check, std::uint64_t budget,
                                              int jobs, std::size_t block_size = 256) {
  if (jobs < 1) jobs = 1;
  BlockedSearchResult<Candidate> res;
  std::vector<Candidate> block;
  bool out_of_candidates = false;
  while (!out_of_candidates && res.nodes < budget) {
    block.clear();
    while (block.size() < block_size &&
           res.nodes + block.size() < budget) {
      Candidate c;
      if (!next(c)) {
        out_of_candidates = true;
        break;
      }
      block.push_back(std::move(c));
    }
    if (block.empty()) break;

    std::size_t hit_index = block.size();
    if (jobs == 1 || block.size() < 2) {
      for (std::size_t i = 0; i < block.size(); ++i)
        if (check(block[i])) {
          hit_index = i;
          break;
        }
    } else {
      std::vector<std::size_t> local_hit(jobs, block.size());
      std::vector<std::exception_ptr> errors(jobs);
      auto worker = [&](int t) {
        try {
          for (std::size_t i = t; i < block.size(); i += jobs)
            if (check(block[i])) {
              local_hit[t] = i;
              return;
            }
        } catch (...) {
          errors[t] = std::current_exception();
        }
      };
      std::vector<std::thread> pool;
      for (int t = 1; t < jobs; ++t) pool.emplace_back(worker, t);
      worker(0);
      for (auto& th : pool) th.join();
      for (auto& e : errors)
        if (e) std::rethrow_exception(e);
      for (std::size_t h : local_hit) hit_index = std::min(hit_index, h);
    }
    if (hit_index < block.size()) {
      res.hit = block[hit_index];
      res.nodes += hit_index + 1;
      return res;
    }
    res.nodes += block.size();
  }
  res.exhausted = out_of_candidates;
  return res;
}

}  // namespace clutter
