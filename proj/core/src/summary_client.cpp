#include "wikitrends/summary_client.hpp"

#include "wikitrends/errors.hpp"
#include "wikitrends/io_util.hpp"

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>
#include <json.hpp>

#include <memory>

namespace wikitrends {

namespace {

struct Endpoint {
    bool tls = false;
    std::string host; // host or host:port
    std::string prefix;
};

Endpoint split_endpoint(const std::string& url) {
    Endpoint out;
    std::string rest;
    if (url.rfind("https://", 0) == 0) {
        out.tls = true;
        rest = url.substr(8);
    } else if (url.rfind("http://", 0) == 0) {
        rest = url.substr(7);
    } else {
        throw TransportError("endpoint must start with http:// or https://: " + url);
    }
    const size_t slash = rest.find('/');
    out.host = rest.substr(0, slash);
    if (slash != std::string::npos) {
        out.prefix = rest.substr(slash);
        while (!out.prefix.empty() && out.prefix.back() == '/') out.prefix.pop_back();
    }
    if (out.host.empty()) throw TransportError("endpoint has no host: " + url);
    return out;
}

} // namespace

std::string fetch_summary(const std::string& title, const std::string& lang,
                          const std::string& endpoint) {
    const Endpoint ep = split_endpoint(endpoint);
    std::unique_ptr<httplib::Client> client;
    if (ep.tls)
        client = std::make_unique<httplib::Client>(("https://" + ep.host).c_str());
    else
        client = std::make_unique<httplib::Client>(("http://" + ep.host).c_str());
    client->set_connection_timeout(5, 0);
    client->set_read_timeout(10, 0);
    client->set_follow_location(true);

    const std::string path = ep.prefix + "/" + lang + "/page/summary/" + url_encode(title);
    httplib::Result res = client->Get(path.c_str());
    if (!res)
        throw TransportError("GET " + endpoint + path + ": " + httplib::to_string(res.error()));
    if (res->status == 404) throw NotFound(lang + ":" + title);
    if (res->status == 429) throw RateLimited(lang + ":" + title);
    if (res->status != 200)
        throw TransportError("GET " + endpoint + path + ": HTTP " +
                             std::to_string(res->status));

    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(res->body);
    } catch (const nlohmann::json::exception& e) {
        throw TransportError(std::string("summary response is not JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("extract") || !doc["extract"].is_string())
        throw TransportError("summary response lacks an extract string");
    return doc["extract"].get<std::string>();
}

} // namespace wikitrends
