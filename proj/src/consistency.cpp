#include "nanoie/consistency.hpp"

#include <algorithm>

#include "nanoie/error.hpp"
#include "nanoie/metrics.hpp"

namespace nanoie {

SampleList deduplicate(const SampleList& list) {
  SampleList out{list.doc_id, {}};
  std::vector<AggregatedSample> kept;
  for (const auto& s : list.samples) {
    const auto a = AggregatedSample::from(s);
    const bool seen = std::any_of(kept.begin(), kept.end(), [&](const AggregatedSample& k) { return same_sample(a, k); });
    if (seen) continue;
    kept.push_back(a);
    out.samples.push_back(s);
  }
  return out;
}

VoteResult vote(const PredictionRun& run) {
  if (run.lists.empty()) throw InvalidArgument("a prediction run needs at least one list");
  VoteResult result{run.doc_id, run.lists.size(), {}};
  std::vector<AggregatedSample> reps;
  std::vector<std::size_t> last_list;  // last list index that voted for each group

  for (std::size_t li = 0; li < run.lists.size(); ++li) {
    const auto unique = deduplicate(run.lists[li]);
    for (std::size_t pos = 0; pos < unique.samples.size(); ++pos) {
      const auto a = AggregatedSample::from(unique.samples[pos]);
      const auto it = std::find_if(reps.begin(), reps.end(), [&](const AggregatedSample& r) { return same_sample(a, r); });
      if (it == reps.end()) {
        reps.push_back(a);
        last_list.push_back(li);
        result.samples.push_back({unique.samples[pos], 1, li, pos});
        continue;
      }
      const auto g = static_cast<std::size_t>(it - reps.begin());
      if (last_list[g] != li) {
        last_list[g] = li;
        ++result.samples[g].match_count;
      }
    }
  }
  return result;
}

SampleList filter(const VoteResult& votes, std::size_t alpha) {
  if (alpha < 1 || alpha > votes.runs) {
    throw InvalidArgument("alpha must lie in [1, " + std::to_string(votes.runs) + "], got " + std::to_string(alpha));
  }
  std::vector<const VotedSample*> kept;
  for (const auto& v : votes.samples) {
    if (v.match_count >= alpha) kept.push_back(&v);
  }
  // samples are already in first-appearance order; stability keeps it as the tie-break
  std::stable_sort(kept.begin(), kept.end(),
                   [](const VotedSample* a, const VotedSample* b) { return a->match_count > b->match_count; });
  SampleList out{votes.doc_id, {}};
  for (const auto* v : kept) out.samples.push_back(v->sample);
  return out;
}

ordered_json vote_audit(const VoteResult& votes, std::size_t alpha) {
  ordered_json entries = ordered_json::array();
  for (const auto& v : votes.samples) {
    entries.push_back({{"sample", to_record(v.sample)},
                       {"match_count", v.match_count},
                       {"first_run", v.first_list},
                       {"retained", v.match_count >= alpha}});
  }
  return {{"doc_id", votes.doc_id}, {"runs", votes.runs}, {"alpha", alpha}, {"votes", std::move(entries)}};
}

}  // namespace nanoie
