#include "confgrade/confgrade.h"

#include <exception>
#include <sstream>
#include <string>

#include "confgrade/classifier.hpp"
#include "confgrade/errors.hpp"
#include "confgrade/pipeline.hpp"
#include "confgrade/similarity.hpp"

struct cg_session {
  confgrade::RunConfig config;
  std::string last_error;
  std::string output;
};

namespace {

cg_status status_for(confgrade::ErrorKind kind) {
  using confgrade::ErrorKind;
  switch (kind) {
    case ErrorKind::InvalidArgument:
    case ErrorKind::UnsupportedLanguage: return CG_ERR_INVALID_ARGUMENT;
    case ErrorKind::MissingInput: return CG_ERR_MISSING_INPUT;
    case ErrorKind::InvalidConfig:
    case ErrorKind::Template: return CG_ERR_INVALID_CONFIG;
    case ErrorKind::Consistency:
    case ErrorKind::MalformedConflict: return CG_ERR_CONSISTENCY;
    case ErrorKind::Git: return CG_ERR_GIT;
    case ErrorKind::Transport: return CG_ERR_MODEL;
    case ErrorKind::CorpusFormat:
    case ErrorKind::Io: return CG_ERR_IO;
    default: return CG_ERR_INTERNAL;
  }
}

template <typename F>
cg_status guarded(cg_session* s, F&& f) {
  if (!s) return CG_ERR_INVALID_ARGUMENT;
  s->last_error.clear();
  try {
    f(*s);
    return CG_OK;
  } catch (const confgrade::Error& e) {
    s->last_error = e.what();
    return status_for(e.kind());
  } catch (const std::exception& e) {
    s->last_error = e.what();
    return CG_ERR_INTERNAL;
  } catch (...) {
    s->last_error = "unknown error";
    return CG_ERR_INTERNAL;
  }
}

std::string mine_text(const confgrade::MineSummary& m) {
  std::ostringstream out;
  out << "merges seen: " << m.merges_seen << "\n"
      << "merges replayed: " << m.merges_replayed << "\n"
      << "scenarios: " << m.scenarios << "\n"
      << "cases: " << m.cases << "\n"
      << "unalignable: " << m.unalignable << "\n"
      << "skipped: " << m.skipped.size() << "\n";
  for (const auto& k : m.skipped) {
    out << "  skip " << k.commit;
    if (!k.path.empty()) out << " " << k.path;
    out << ": " << k.reason << "\n";
  }
  return out.str();
}

}  // namespace

extern "C" {

const char* cg_version(void) { return "0.1.0"; }

cg_status cg_session_create(cg_session** out) {
  if (!out) return CG_ERR_INVALID_ARGUMENT;
  try {
    *out = new cg_session();
    return CG_OK;
  } catch (...) {
    *out = nullptr;
    return CG_ERR_INTERNAL;
  }
}

void cg_session_destroy(cg_session* session) { delete session; }

const char* cg_session_last_error(const cg_session* session) {
  return session ? session->last_error.c_str() : "no session";
}

const char* cg_session_output(const cg_session* session) {
  return session ? session->output.c_str() : "";
}

cg_status cg_session_load_config(cg_session* session, const char* path) {
  return guarded(session, [&](cg_session& s) {
    if (!path) throw confgrade::Error(confgrade::ErrorKind::InvalidArgument, "config path is null");
    s.config = confgrade::RunConfig::load(path);
  });
}

cg_status cg_session_set_option(cg_session* session, const char* key, const char* value) {
  return guarded(session, [&](cg_session& s) {
    if (!key || !value) throw confgrade::Error(confgrade::ErrorKind::InvalidArgument, "option key or value is null");
    s.config.set_option(key, value);
  });
}

cg_status cg_mine(cg_session* session) {
  return guarded(session, [](cg_session& s) { s.output = mine_text(confgrade::run_mine(s.config)); });
}

cg_status cg_classify(cg_session* session) {
  return guarded(session, [](cg_session& s) {
    const auto summary = confgrade::run_classify(s.config);
    std::ostringstream out;
    out << "cases: " << summary.cases << "\n";
    for (const auto& [region, count] : summary.regions) out << "  " << region << ": " << count << "\n";
    s.output = out.str();
  });
}

cg_status cg_stats(cg_session* session) {
  return guarded(session, [](cg_session& s) { s.output = confgrade::run_stats(s.config); });
}

cg_status cg_evaluate(cg_session* session) {
  return guarded(session, [](cg_session& s) {
    const auto records = confgrade::run_evaluate(s.config);
    std::size_t resolved = 0;
    std::size_t matched = 0;
    for (const auto& r : records) {
      resolved += r.outcome == confgrade::Outcome::Resolved ? 1 : 0;
      matched += r.matched.value_or(false) ? 1 : 0;
    }
    std::ostringstream out;
    out << "evaluated: " << records.size() << "\nresolved: " << resolved << "\nmatched: " << matched << "\n";
    s.output = out.str();
  });
}

cg_status cg_report(cg_session* session) {
  return guarded(session, [](cg_session& s) { s.output = confgrade::run_report(s.config); });
}

cg_status cg_export(cg_session* session) {
  return guarded(session, [](cg_session& s) {
    s.output = "exported: " + std::to_string(confgrade::run_export(s.config)) + "\n";
  });
}

cg_status cg_mapping_dump(cg_session* session) {
  return guarded(session, [](cg_session& s) { s.output = confgrade::load_mapping(s.config).to_json_text(); });
}

double cg_edit_similarity(const char* x, const char* y) {
  return confgrade::edit_similarity(x ? x : "", y ? y : "");
}

double cg_winnowing_similarity(const char* x, const char* y, size_t k, size_t w) {
  if (k < 1 || w < 1) return -1.0;
  return confgrade::winnowing_similarity(x ? x : "", y ? y : "", confgrade::WinnowingParams{k, w});
}

unsigned cg_classify_conflict(unsigned ops_a, unsigned ops_b) {
  const auto a = confgrade::OpSet::from_bits(static_cast<std::uint8_t>(ops_a & 0x3F));
  const auto b = confgrade::OpSet::from_bits(static_cast<std::uint8_t>(ops_b & 0x3F));
  return confgrade::classify_conflict(a, b).bits();
}

}  // extern "C"
