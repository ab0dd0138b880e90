#ifndef QDT_QDT_H
#define QDT_QDT_H

#include <stddef.h>
#include <stdint.h>

#if defined(QDT_BUILDING)
#define QDT_API __attribute__((visibility("default")))
#else
#define QDT_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qdt_status {
  QDT_OK = 0,
  QDT_INVALID_ARGUMENT = 1,
  QDT_PARSE = 2,
  QDT_FRAME_MISMATCH = 3,
  QDT_INVALID_CAPACITY = 4,
  QDT_BUDGET = 5,
  QDT_PRECONDITION = 6,
  QDT_INTERNAL = 7,
  QDT_IO = 8
} qdt_status;

typedef struct qdt_frame qdt_frame;
typedef struct qdt_relation qdt_relation;

typedef struct qdt_options {
  uint64_t max_tuples; /* 0 = per-arity act caps */
  unsigned threads;    /* 0 = hardware concurrency */
} qdt_options;

/* Defaults with QDT_BUDGET applied when set. */
QDT_API qdt_options qdt_options_default(void);

/* Message of the last failure on this thread; valid until the next call. */
QDT_API const char* qdt_last_error(void);
/* Quantifier-space size of the last budget failure on this thread. */
QDT_API uint64_t qdt_last_budget_space(void);
QDT_API void qdt_string_free(char* s);

QDT_API qdt_status qdt_frame_from_json(const char* json, qdt_frame** out);
QDT_API qdt_status qdt_frame_from_file(const char* path, qdt_frame** out);
/* mu: one level per outcome; capacity: 2^states levels indexed by subset
   mask, bit s for state s. */
QDT_API qdt_status qdt_frame_create(int scale_size, int states, int outcomes, const int* mu,
                                    const int* capacity, qdt_frame** out);
QDT_API void qdt_frame_free(qdt_frame* frame);
QDT_API int qdt_frame_state_count(const qdt_frame* frame);
QDT_API int qdt_frame_outcome_count(const qdt_frame* frame);
QDT_API int qdt_frame_scale_size(const qdt_frame* frame);
QDT_API uint64_t qdt_frame_act_count(const qdt_frame* frame);
QDT_API qdt_status qdt_frame_to_json(const qdt_frame* frame, char** out);

typedef enum qdt_method {
  QDT_LEVELCUT = 0,
  QDT_OUTCOME = 1,
  QDT_MEDIAN = 2
} qdt_method;

/* act: one outcome index per state. */
QDT_API qdt_status qdt_frame_evaluate(const qdt_frame* frame, const int* act, int method,
                                      int* level);
QDT_API qdt_status qdt_frame_capacity(const qdt_frame* frame, uint32_t subset, int* level);

QDT_API qdt_status qdt_relation_from_json(const char* json, const char* base_dir,
                                          qdt_relation** out);
QDT_API qdt_status qdt_relation_from_file(const char* path, qdt_relation** out);
QDT_API qdt_status qdt_relation_induce(const qdt_frame* frame, qdt_relation** out);
QDT_API void qdt_relation_free(qdt_relation* rel);
/* Rank of an act given by index; higher is better. */
QDT_API qdt_status qdt_relation_rank(const qdt_relation* rel, uint64_t act, int* rank);

/* Axiom ids: SAV1 SAV2 SAV3 SAV4 SAV4P SAV5 WS3 RCD RDD CD DD COD OPTIMISM
   PESSIMISM. holds is set to 1 or 0; witness (optional) receives JSON. */
QDT_API qdt_status qdt_check_axiom(const qdt_relation* rel, const char* axiom,
                                   const qdt_options* options, int* holds, char** witness);

/* Reports: JSON body in *out, *violation = 1 when a violation or witness was
   found. */
QDT_API qdt_status qdt_report_eval(const qdt_frame* frame, const char* act, int all_acts,
                                   const char* method, const qdt_options* options, char** out,
                                   int* violation);
/* Lenient: an invalid capacity is a verdict, not an error. */
QDT_API qdt_status qdt_report_capacity_json(const char* json, char** out, int* violation);
QDT_API qdt_status qdt_report_capacity_file(const char* path, char** out, int* violation);
/* axioms: comma-separated ids or "all". */
QDT_API qdt_status qdt_report_axioms(const qdt_relation* rel, const char* axioms,
                                     const qdt_options* options, char** out, int* violation);
/* mode: general, optimistic or pessimistic. */
QDT_API qdt_status qdt_report_synthesis(const qdt_relation* rel, const char* mode,
                                        const qdt_options* options, char** out, int* violation);
QDT_API qdt_status qdt_report_sure_thing(const qdt_frame* frame, const qdt_options* options,
                                         char** out, int* violation);
QDT_API qdt_status qdt_report_eu_demo(char** out, int* violation);
QDT_API qdt_status qdt_report_compare(const qdt_frame* frame, const double* probabilities,
                                      size_t count, const qdt_options* options, char** out,
                                      int* violation);
/* Human-readable rendering of any report body. */
QDT_API qdt_status qdt_report_render(const char* report_json, char** out);

#ifdef __cplusplus
}
#endif

#endif
