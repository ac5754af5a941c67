#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nanoie/model.hpp"

namespace nanoie::cli {

/// Resolved settings for one invocation. Lookups fall through command-line
/// flags, then NANOIE_<KEY> environment variables, then the JSON config file.
class RunConfig {
 public:
  RunConfig(std::string command, std::map<std::string, std::string> flags, ordered_json file_config);

  const std::string& command() const { return command_; }

  std::optional<std::string> get(const std::string& key) const;
  std::string require(const std::string& key) const;
  std::string get_or(const std::string& key, const std::string& fallback) const;
  std::optional<std::size_t> get_size(const std::string& key) const;
  std::optional<double> get_double(const std::string& key) const;

  /// Every key that resolved to a value, for the run manifest. Secrets are masked.
  ordered_json to_json(const std::vector<std::string>& keys) const;

 private:
  std::string command_;
  std::map<std::string, std::string> flags_;
  ordered_json file_;
};

/// Loads documents from files or directories (every *.txt inside, sorted);
/// the doc_id is the file stem.
std::vector<Document> load_documents(const std::vector<std::string>& paths);

/// Reads every *.json / *.txt prediction file in a directory, keyed by stem.
std::map<std::string, PredictionParse> load_prediction_dir(const std::filesystem::path& dir);

/// Entry point shared by the executable and the tests. Returns the exit code:
/// 0 on success, 1 on a fatal error, 2 on a usage error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace nanoie::cli
