#pragma once

#include <string>
#include <vector>

namespace multicover::notes {

// Process-wide sink for degeneracy and fallback events (perturbed lines,
// deduped duplicates, slack-degraded splits, ...). Observability only; no
// algorithm reads it back.
void emit(const std::string& category, const std::string& message);
std::size_t count(const std::string& category);
std::vector<std::pair<std::string, std::string>> snapshot();
void clear();
void set_echo(bool on);  // mirror to stderr

}  // namespace multicover::notes
