#pragma once

#include <stdexcept>
#include <string>

namespace wikitrends {

/// Base class for every error the pipeline raises on purpose.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// ingest
class MalformedLine : public Error { public: using Error::Error; };
class IoError : public Error { public: using Error::Error; };
class ParseError : public Error { public: using Error::Error; };
class EmptyRange : public Error { public: using Error::Error; };
class InvalidSpec : public Error { public: using Error::Error; };
class NotFound : public Error { public: using Error::Error; };
class TransportError : public Error { public: using Error::Error; };
class RateLimited : public Error { public: using Error::Error; };

// burst
class SeriesTooShort : public Error { public: using Error::Error; };

// graph
class EmptyGraph : public Error { public: using Error::Error; };
class EmptyCluster : public Error { public: using Error::Error; };

// text
class EmptyCorpus : public Error { public: using Error::Error; };
class InvalidK : public Error { public: using Error::Error; };
class BadTopicIndex : public Error { public: using Error::Error; };

// label
class EmptyTrainingSet : public Error { public: using Error::Error; };
class EmptyTestSet : public Error { public: using Error::Error; };
class UnlabelableCluster : public Error { public: using Error::Error; };

// report
class InconsistentInputs : public Error { public: using Error::Error; };
class NoTrends : public Error { public: using Error::Error; };
class UnsupportedFormat : public Error { public: using Error::Error; };

// cli / pipeline
class ConfigError : public Error { public: using Error::Error; };

/// A stage failure wrapping the underlying error with a "stage[lang]" tag.
class StageError : public Error {
public:
    StageError(const std::string& stage, const std::string& what)
        : Error(stage + ": " + what), stage_(stage) {}
    const std::string& stage() const { return stage_; }

private:
    std::string stage_;
};

} // namespace wikitrends
