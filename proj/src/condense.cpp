#include "nanoie/condense.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <numeric>
#include <unordered_map>

#include "nanoie/error.hpp"
#include "nanoie/text.hpp"

namespace nanoie {

namespace {

constexpr std::array<std::string_view, 9> kNonTerminal = {"e.g.", "i.e.", "al.", "fig.", "figs.",
                                                          "vs.",  "wt.",  "vol.", "ref."};

bool ends_sentence(std::string_view token) {
  while (!token.empty() && (token.back() == '"' || token.back() == '\'' || token.back() == ')')) {
    token.remove_suffix(1);
  }
  if (token.empty()) return false;
  const char c = token.back();
  if (c != '.' && c != '!' && c != '?') return false;
  const std::string low = text::to_lower(token);
  return std::find(kNonTerminal.begin(), kNonTerminal.end(), low) == kNonTerminal.end();
}

std::string join(std::span<const std::string_view> tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out.push_back(' ');
    out.append(tokens[i]);
  }
  return out;
}

}  // namespace

std::vector<Segment> segment_document(const Document& doc, std::size_t target_tokens) {
  if (target_tokens == 0) throw InvalidArgument("segment target must be positive");
  const auto tokens = text::whitespace_tokens(doc.body());
  if (tokens.empty()) throw InvalidArgument("document '" + doc.doc_id() + "' has an empty body");

  std::vector<std::vector<std::string_view>> sentences(1);
  for (auto t : tokens) {
    sentences.back().push_back(t);
    if (ends_sentence(t)) sentences.emplace_back();
  }
  if (sentences.back().empty()) sentences.pop_back();

  std::vector<Segment> out;
  std::vector<std::string_view> current;
  auto flush = [&] {
    if (current.empty()) return;
    out.push_back({doc.doc_id(), out.size(), join(current), current.size()});
    current.clear();
  };
  for (const auto& sentence : sentences) {
    if (sentence.size() > target_tokens) {
      flush();
      std::size_t i = 0;
      for (; i + target_tokens <= sentence.size(); i += target_tokens) {
        current.assign(sentence.begin() + static_cast<std::ptrdiff_t>(i),
                       sentence.begin() + static_cast<std::ptrdiff_t>(i + target_tokens));
        flush();
      }
      current.assign(sentence.begin() + static_cast<std::ptrdiff_t>(i), sentence.end());
      continue;
    }
    if (!current.empty() && current.size() + sentence.size() > target_tokens) flush();
    current.insert(current.end(), sentence.begin(), sentence.end());
  }
  flush();
  return out;
}

QuerySet QuerySet::defaults() {
  return {{"What chemical is used in the polymer matrix?", "What chemical is used in the polymer filler?",
           "What is the filler mass composition?", "What is the filler volume composition?"}};
}

QuerySet QuerySet::from_lines(std::string_view text) {
  QuerySet q;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = std::min(text.find('\n', start), text.size());
    const auto line = text::trim(text.substr(start, end - start));
    if (!line.empty()) q.queries.emplace_back(line);
    start = end + 1;
  }
  return q;
}

std::string stem(std::string w) {
  auto ends = [&](std::string_view suffix) {
    return w.size() >= suffix.size() && std::string_view(w).substr(w.size() - suffix.size()) == suffix;
  };
  if (w.size() > 4 && ends("ies")) {
    w.replace(w.size() - 3, 3, "y");
  } else if (ends("sses")) {
    w.resize(w.size() - 2);
  } else if (w.size() > 3 && ends("s") && !ends("ss") && !ends("us") && !ends("is")) {
    w.pop_back();
  }
  if (w.size() > 5 && ends("ing")) {
    w.resize(w.size() - 3);
  } else if (w.size() > 4 && ends("ed")) {
    w.resize(w.size() - 2);
  }
  return w;
}

std::vector<std::string> lexical_terms(std::string_view s) {
  std::vector<std::string> out;
  std::string cur;
  auto push = [&] {
    if (!cur.empty()) out.push_back(stem(std::move(cur)));
    cur.clear();
  };
  for (char c : s) {
    if (std::isalnum(static_cast<unsigned char>(c))) {
      cur.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    } else {
      push();
    }
  }
  push();
  return out;
}

std::vector<double> LexicalBackend::score(std::string_view query, std::span<const Segment> segments) const {
  using Vector = std::unordered_map<std::string, double>;
  std::vector<Vector> tf(segments.size());
  std::unordered_map<std::string, std::size_t> df;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    for (auto& t : lexical_terms(segments[i].text)) tf[i][std::move(t)] += 1.0;
    for (const auto& [term, _] : tf[i]) ++df[term];
  }
  const double n = static_cast<double>(segments.size());
  auto idf = [&](const std::string& term) {
    const auto it = df.find(term);
    const double d = it == df.end() ? 0.0 : static_cast<double>(it->second);
    return std::log((1.0 + n) / (1.0 + d)) + 1.0;
  };

  Vector q;
  for (auto& t : lexical_terms(query)) q[std::move(t)] += 1.0;
  // Sorted term order keeps floating-point sums identical across runs.
  std::vector<std::pair<std::string, double>> qv(q.begin(), q.end());
  std::sort(qv.begin(), qv.end());
  double q_norm = 0;
  for (auto& [term, w] : qv) {
    w *= idf(term);
    q_norm += w * w;
  }
  q_norm = std::sqrt(q_norm);

  std::vector<double> out(segments.size(), 0.0);
  if (q_norm == 0.0) return out;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    std::vector<std::pair<std::string, double>> sv(tf[i].begin(), tf[i].end());
    std::sort(sv.begin(), sv.end());
    double s_norm = 0;
    for (const auto& [term, w] : sv) {
      const double x = w * idf(term);
      s_norm += x * x;
    }
    s_norm = std::sqrt(s_norm);
    if (s_norm == 0.0) continue;
    double dot = 0;
    for (const auto& [term, w] : qv) {
      if (const auto it = tf[i].find(term); it != tf[i].end()) dot += w * it->second * idf(term);
    }
    out[i] = dot / (q_norm * s_norm);
  }
  return out;
}

std::vector<std::size_t> top_k(std::span<const double> scores, std::size_t k) {
  std::vector<std::size_t> idx(scores.size());
  std::iota(idx.begin(), idx.end(), 0);
  auto value = [&](std::size_t i) { return std::isnan(scores[i]) ? -INFINITY : scores[i]; };
  const auto take = std::min(k, idx.size());
  std::partial_sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(take), idx.end(),
                    [&](std::size_t a, std::size_t b) {
                      const double va = value(a), vb = value(b);
                      return va != vb ? va > vb : a < b;
                    });
  idx.resize(take);
  return idx;
}

CondensedDocument condense_segments(const Document& doc, std::span<const Segment> segments, const QuerySet& queries,
                                    std::size_t k, const SimilarityBackend& backend) {
  if (k == 0) throw InvalidArgument("k must be at least 1");
  if (queries.queries.empty()) throw InvalidArgument("query set is empty");
  std::vector<char> chosen(segments.size(), 0);
  std::vector<std::vector<std::size_t>> per_query;
  for (const auto& q : queries.queries) {
    const auto scores = backend.score(q, segments);
    if (scores.size() != segments.size()) {
      throw Error("backend '" + backend.name() + "' returned " + std::to_string(scores.size()) + " scores for " +
                  std::to_string(segments.size()) + " segments");
    }
    auto top = top_k(scores, k);
    for (auto i : top) chosen[i] = 1;
    per_query.push_back(std::move(top));
  }
  std::vector<std::size_t> selected;
  std::string body;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    if (!chosen[i]) continue;
    selected.push_back(i);
    if (!body.empty()) body.push_back('\n');
    body += segments[i].text;
  }
  return {Document(doc.doc_id(), std::move(body)), std::move(selected), std::move(per_query), segments.size()};
}

CondensedDocument condense(const Document& doc, const QuerySet& queries, std::size_t k,
                           const SimilarityBackend& backend, std::size_t target_tokens) {
  const auto segments = segment_document(doc, target_tokens);
  return condense_segments(doc, segments, queries, k, backend);
}

}  // namespace nanoie
