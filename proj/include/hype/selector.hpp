#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace hype {

// External service that picks up to three representative paths for a
// document out of its pre-candidate list. Returning nullopt signals a
// transport failure or timeout; callers then apply the deterministic
// fallback rule.
class PathSelector {
 public:
  virtual ~PathSelector() = default;
  virtual std::optional<std::vector<std::string>> select(
      const std::string& title, const std::string& contents,
      const std::vector<std::string>& candidates) = 0;
};

struct HttpSelectorOptions {
  std::string url;
  double timeout_s = 30.0;
  std::string cache_dir;  // empty disables the on-disk response cache
};

// POSTs {"title", "contents" (first 2000 chars), "candidates": [...]} and
// expects {"selected": [...]}. Responses can be cached on disk keyed by the
// request hash.
std::unique_ptr<PathSelector> make_http_selector(const HttpSelectorOptions& options);

}  // namespace hype
