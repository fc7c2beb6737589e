#include "confgrade/errors.hpp"

namespace confgrade {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid argument";
    case ErrorKind::MissingInput: return "missing input";
    case ErrorKind::InvalidConfig: return "invalid configuration";
    case ErrorKind::Consistency: return "consistency error";
    case ErrorKind::Git: return "git error";
    case ErrorKind::MalformedConflict: return "malformed conflict";
    case ErrorKind::UnsupportedLanguage: return "unsupported language";
    case ErrorKind::CorpusFormat: return "corpus format error";
    case ErrorKind::Io: return "i/o error";
    case ErrorKind::Template: return "template error";
    case ErrorKind::Transport: return "transport error";
    case ErrorKind::ConflictTooLarge: return "conflict too large";
    case ErrorKind::ScoreUnavailable: return "score unavailable";
  }
  return "error";
}

}  // namespace confgrade
