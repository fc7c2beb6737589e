#ifndef CONFGRADE_CONFGRADE_H
#define CONFGRADE_CONFGRADE_H

#include <stddef.h>

#if defined(_WIN32)
#  define CG_API __declspec(dllexport)
#else
#  define CG_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct cg_session cg_session;

typedef enum cg_status {
  CG_OK = 0,
  CG_ERR_INVALID_ARGUMENT = 1,
  CG_ERR_MISSING_INPUT = 2,
  CG_ERR_INVALID_CONFIG = 3,
  CG_ERR_CONSISTENCY = 4,
  CG_ERR_GIT = 5,
  CG_ERR_MODEL = 6,
  CG_ERR_IO = 7,
  CG_ERR_INTERNAL = 8
} cg_status;

/* Operation bits for cg_classify_conflict. */
enum {
  CG_OP_CTD = 1 << 0,
  CG_OP_FBD = 1 << 1,
  CG_OP_FPD = 1 << 2,
  CG_OP_LSO = 1 << 3,
  CG_OP_CMT = 1 << 4,
  CG_OP_VD = 1 << 5
};

/* Grade bits returned by cg_classify_conflict; 0 means unclassified. */
enum { CG_GRADE_TEXT = 1, CG_GRADE_SYNTAX = 2, CG_GRADE_FUNCTIONAL = 4 };

CG_API const char* cg_version(void);

CG_API cg_status cg_session_create(cg_session** out);
CG_API void cg_session_destroy(cg_session* session);

/* Message of the last failed call, or "" */
CG_API const char* cg_session_last_error(const cg_session* session);

/* Text produced by the last successful command (summary or table). */
CG_API const char* cg_session_output(const cg_session* session);

/* Replaces all options with the contents of a JSON config file. */
CG_API cg_status cg_session_load_config(cg_session* session, const char* path);

/* Dotted keys, e.g. "corpus", "repo", "winnowing.k", "model.endpoint".
   "repo" appends to the repository list. */
CG_API cg_status cg_session_set_option(cg_session* session, const char* key, const char* value);

CG_API cg_status cg_mine(cg_session* session);
CG_API cg_status cg_classify(cg_session* session);
CG_API cg_status cg_stats(cg_session* session);
CG_API cg_status cg_evaluate(cg_session* session);
CG_API cg_status cg_report(cg_session* session);
CG_API cg_status cg_export(cg_session* session);

/* Puts the effective mapping table (JSON) in the session output. */
CG_API cg_status cg_mapping_dump(cg_session* session);

CG_API double cg_edit_similarity(const char* x, const char* y);
CG_API double cg_winnowing_similarity(const char* x, const char* y, size_t k, size_t w);
CG_API unsigned cg_classify_conflict(unsigned ops_a, unsigned ops_b);

#ifdef __cplusplus
}
#endif

#endif
