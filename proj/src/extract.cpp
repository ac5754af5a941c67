#include "nanoie/extract.hpp"

#include <algorithm>
#include <thread>

#include "nanoie/error.hpp"
#include "nanoie/lexicon.hpp"
#include "nanoie/prompts.hpp"
#include "nanoie/text.hpp"
#include "parallel.hpp"

namespace nanoie {

void CallLog::add(CallRecord record) {
  std::lock_guard lock(mutex_);
  records_.push_back(std::move(record));
}

std::vector<CallRecord> CallLog::sorted() const {
  std::vector<CallRecord> out;
  {
    std::lock_guard lock(mutex_);
    out = records_;
  }
  std::stable_sort(out.begin(), out.end(), [](const CallRecord& a, const CallRecord& b) {
    return std::tie(a.doc_id, a.sequence) < std::tie(b.doc_id, b.sequence);
  });
  return out;
}

ordered_json to_json(const CallRecord& r) {
  ordered_json j{{"doc_id", r.doc_id},
                 {"strategy", r.strategy},
                 {"stage", r.stage},
                 {"sequence", r.sequence},
                 {"prompt_tokens", r.prompt_tokens},
                 {"output_tokens", r.output_tokens},
                 {"attempts", r.attempts},
                 {"ok", r.ok}};
  if (!r.error.empty()) j["error"] = r.error;
  return j;
}

namespace {

struct CallContext {
  std::string doc_id;
  std::string strategy;
  std::string stage;
  std::size_t sequence;
};

void check_fits(const std::string& prompt, const CompletionProvider& provider, const ExtractOptions& options) {
  const std::size_t required = text::count_tokens(prompt) + options.max_output;
  if (required > provider.context_limit()) throw ContextOverflow(required, provider.context_limit());
}

std::string call_provider(CompletionProvider& provider, std::string prompt, const ExtractOptions& options,
                          const CallContext& ctx) {
  CallRecord record{ctx.doc_id, ctx.strategy, ctx.stage, ctx.sequence, text::count_tokens(prompt), 0, 0, false, {}};
  CompletionRequest request{std::move(prompt), options.temperature, options.max_output, options.seed,
                            options.sample_index};
  const std::size_t attempts = std::max<std::size_t>(options.retry.attempts, 1);
  auto backoff = options.retry.initial_backoff;
  std::string last_error;
  for (std::size_t attempt = 1; attempt <= attempts; ++attempt) {
    record.attempts = attempt;
    try {
      std::string out = provider.complete(request);
      record.ok = true;
      record.output_tokens = text::count_tokens(out);
      if (options.log) options.log->add(record);
      return out;
    } catch (const TransportError& e) {
      last_error = e.what();
      if (attempt < attempts && backoff.count() > 0) {
        std::this_thread::sleep_for(backoff);
        backoff *= 2;
      }
    } catch (const std::exception& e) {
      record.error = e.what();
      if (options.log) options.log->add(record);
      throw;
    }
  }
  record.error = last_error;
  if (options.log) options.log->add(record);
  throw RetriesExhausted(last_error, attempts);
}

void append_unique(std::vector<std::string>& out, const ordered_json& value) {
  auto add = [&](const ordered_json& v) {
    if (v.is_null() || v.is_structured()) return;
    std::string s(text::trim(v.is_string() ? v.get<std::string>() : v.dump()));
    if (s.empty() || text::iequals(s, "null")) return;
    if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(std::move(s));
  };
  if (value.is_array()) {
    for (const auto& v : value) add(v);
  } else {
    add(value);
  }
}

std::vector<std::string>* ner_field(EntityCandidates& c, std::string_view key) {
  const std::string k = text::fold_for_matching(key);
  const bool matrix = k.find("matrix") != std::string::npos;
  const bool filler = k.find("filler") != std::string::npos;
  const bool abbrev = k.find("abbrev") != std::string::npos;
  if (k.find("fraction") != std::string::npos || k.find("composition") != std::string::npos) return &c.fractions;
  if (matrix) return abbrev ? &c.matrix_abbrevs : &c.matrix_names;
  if (filler) return abbrev ? &c.filler_abbrevs : &c.filler_names;
  return nullptr;
}

std::string yes_or_no_token(std::string_view response) {
  response = text::trim(response);
  std::size_t n = 0;
  while (n < response.size() && std::isalpha(static_cast<unsigned char>(response[n]))) ++n;
  return text::to_lower(response.substr(0, n));
}

}  // namespace

ExtractionResult extract_e2e(const Document& doc, CompletionProvider& provider, const ExtractOptions& options) {
  std::string prompt = prompts::render_e2e(doc.body());
  check_fits(prompt, provider, options);
  const auto output =
      call_provider(provider, std::move(prompt), options, {doc.doc_id(), "e2e", "e2e", options.sequence_base});
  auto parsed = parse_prediction_output(output, doc.doc_id());
  return {std::move(parsed.samples), std::move(parsed.diagnostics), 1};
}

NerResult parse_ner_output(std::string_view output) {
  NerResult result;
  const auto start = output.find('{');
  const auto end = output.rfind('}');
  if (start == std::string_view::npos || end == std::string_view::npos || end < start) {
    result.diagnostics.push_back("NER output holds no JSON object");
    return result;
  }
  const auto value = ordered_json::parse(output.substr(start, end - start + 1), nullptr, false);
  if (value.is_discarded() || !value.is_object()) {
    result.diagnostics.push_back("NER output is not a valid JSON object");
    return result;
  }
  for (const auto& [key, v] : value.items()) {
    if (auto* field = ner_field(result.candidates, key)) {
      append_unique(*field, v);
    } else {
      result.diagnostics.push_back("ignored NER key '" + key + "'");
    }
  }
  return result;
}

NerResult extract_ner(const Document& doc, CompletionProvider& provider, const ExtractOptions& options) {
  std::string prompt = prompts::render_ner(doc.body());
  check_fits(prompt, provider, options);
  const auto output =
      call_provider(provider, std::move(prompt), options, {doc.doc_id(), "nerre", "ner", options.sequence_base});
  return parse_ner_output(output);
}

std::vector<Sample> enumerate_candidates(const EntityCandidates& e, std::size_t cap) {
  using Entity = std::pair<std::optional<std::string>, std::optional<std::string>>;
  auto pair_up = [](const std::vector<std::string>& names, const std::vector<std::string>& abbrevs) {
    std::vector<Entity> out(std::max(names.size(), abbrevs.size()));
    for (std::size_t i = 0; i < out.size(); ++i) {
      if (i < names.size()) out[i].first = names[i];
      if (i < abbrevs.size()) out[i].second = abbrevs[i];
    }
    return out;
  };
  const auto matrices = pair_up(e.matrix_names, e.matrix_abbrevs);
  const auto fillers = pair_up(e.filler_names, e.filler_abbrevs);
  std::vector<std::optional<std::string>> fractions(e.fractions.begin(), e.fractions.end());
  if (fractions.empty()) fractions.emplace_back(std::nullopt);

  const std::size_t size = matrices.size() * fillers.size() * fractions.size();
  if (size > cap) throw CandidateCapExceeded(size, cap);

  std::vector<Sample> out;
  out.reserve(size);
  for (const auto& m : matrices) {
    for (const auto& f : fillers) {
      for (const auto& c : fractions) {
        Sample s;
        s.matrix_name = m.first;
        s.matrix_abbrev = m.second;
        s.filler_name = f.first;
        s.filler_abbrev = f.second;
        if (c) {
          (composition_basis(*c) == CompositionBasis::volume ? s.volume_fraction : s.mass_fraction) = Fraction{*c};
        }
        out.push_back(std::move(s));
      }
    }
  }
  return out;
}

bool is_affirmative(std::string_view response) { return yes_or_no_token(response) == "yes"; }

std::string candidate_json(const Sample& candidate) { return to_record(candidate).dump(4); }

NerReResult extract_nerre(const Document& doc, CompletionProvider& provider, const ExtractOptions& options) {
  NerReResult result;
  result.samples.doc_id = doc.doc_id();
  auto ner = extract_ner(doc, provider, options);
  result.provider_calls = 1;
  result.diagnostics = std::move(ner.diagnostics);
  result.candidates = enumerate_candidates(ner.candidates, options.candidate_cap);

  // Unitless fractions were filed under mass; surface that for the audit trail.
  for (const auto& f : ner.candidates.fractions) {
    if (composition_basis(f) == CompositionBasis::unspecified) {
      result.diagnostics.push_back("fraction '" + f + "' has no unit, assumed mass");
    }
  }

  const std::size_t n = result.candidates.size();
  std::vector<int> verdicts(n, 0);  // 1 yes, 0 no, -1 failed
  std::vector<std::string> failures(n);
  const std::size_t workers = std::min(options.parallelism, provider.max_concurrency());
  detail::parallel_for(n, workers, [&](std::size_t i) {
    std::string prompt = prompts::render_re(candidate_json(result.candidates[i]), doc.body());
    try {
      check_fits(prompt, provider, options);
      const auto answer = call_provider(provider, std::move(prompt), options,
                                        {doc.doc_id(), "nerre", "re", options.sequence_base + 1 + i});
      verdicts[i] = is_affirmative(answer) ? 1 : 0;
    } catch (const Error& e) {
      verdicts[i] = -1;
      failures[i] = e.what();
    }
  });
  result.provider_calls += n;
  for (std::size_t i = 0; i < n; ++i) {
    if (verdicts[i] == 1) result.samples.samples.push_back(result.candidates[i]);
    if (verdicts[i] == -1) result.diagnostics.push_back("candidate " + std::to_string(i) + " skipped: " + failures[i]);
  }
  return result;
}

}  // namespace nanoie
