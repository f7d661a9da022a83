#pragma once

#include <string>

namespace wikitrends {

/// Fetches the plain-text summary of one article from a REST endpoint:
/// GET {endpoint}/{lang}/page/summary/{title URL-encoded}, returning the
/// response's "extract" field. `endpoint` is a base URL like
/// "https://api.example.org/v1" (http or https, optional port and prefix).
///
/// Throws NotFound on HTTP 404, RateLimited on 429 (callers should back
/// off), and TransportError on connection failures, other status codes, or
/// a response body that is not a JSON object with an "extract" string.
std::string fetch_summary(const std::string& title, const std::string& lang,
                          const std::string& endpoint);

} // namespace wikitrends
