#pragma once

// Set-valued self-consistency: count in how many of t sampled outputs each
// sample appears and keep those seen at least alpha times.

#include <cstddef>
#include <string>
#include <vector>

#include "nanoie/model.hpp"

namespace nanoie {

struct PredictionRun {
  std::string doc_id;
  std::vector<SampleList> lists;  // standardized
  double temperature = 0.7;
};

struct VotedSample {
  Sample sample;              // instance from the earliest list containing it
  std::size_t match_count;    // number of lists, not occurrences
  std::size_t first_list;
  std::size_t first_position;
};

struct VoteResult {
  std::string doc_id;
  std::size_t runs = 0;
  std::vector<VotedSample> samples;  // first-appearance order
};

/// Drops samples equal (all trio slots matching) to an earlier one in the list.
SampleList deduplicate(const SampleList& list);

/// Samples are grouped by trio equality against each group's representative.
/// Throws InvalidArgument when the run is empty.
VoteResult vote(const PredictionRun& run);

/// Samples with match_count >= alpha, by (match_count desc, first appearance).
/// Throws InvalidArgument unless 1 <= alpha <= runs.
SampleList filter(const VoteResult& votes, std::size_t alpha);

ordered_json vote_audit(const VoteResult& votes, std::size_t alpha);

}  // namespace nanoie
