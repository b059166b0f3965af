/* Plain C interface to the fanspec library.
 *
 * Objects are opaque handles created by *_read / *_create functions and
 * released with the matching *_free. Every function returns an fs_status;
 * on failure fs_last_error() describes the problem (thread local, valid
 * until the next call on the same thread). Strings returned through char**
 * are JSON documents owned by the caller and released with fs_free_string.
 *
 * Decision functions report the answer through `answer` (1 = yes /
 * satisfiable, 0 = no) and a JSON result through `result_json`. */
#ifndef FANSPEC_H
#define FANSPEC_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define FS_API __declspec(dllexport)
#else
#define FS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fs_status {
  FS_OK = 0,
  FS_ERR_PARSE = 1,        /* malformed input */
  FS_ERR_VALIDATION = 2,   /* well-formed input that violates a contract */
  FS_ERR_RESOURCE = 3,     /* an enumeration cap was hit */
  FS_ERR_BUDGET = 4,       /* an oracle refused its budget */
  FS_ERR_ARGUMENT = 5,     /* bad argument (null handle, unknown kind, ...) */
  FS_ERR_INTERNAL = 6,
  FS_ERR_DISAGREEMENT = 7  /* solver and oracle answered differently */
} fs_status;

typedef enum fs_engine { FS_ENGINE_SOLVER = 0, FS_ENGINE_ORACLE = 1, FS_ENGINE_BOTH = 2 } fs_engine;

typedef enum fs_decompose_mode {
  FS_DECOMPOSE_HEURISTIC = 0, /* min-fill */
  FS_DECOMPOSE_BINARY = 1,    /* min-fill, binarized */
  FS_DECOMPOSE_BALANCED = 2   /* binary with logarithmic depth */
} fs_decompose_mode;

typedef struct fs_options {
  size_t jobs;                 /* 0 = all cores */
  size_t bag_cap;              /* partial traces per bag */
  uint64_t work_budget;        /* 0 = unlimited */
  int compress_horizon;        /* shorten constraint-only horizons */
  int faithful;                /* keep full bag tables */
  fs_engine engine;
  uint64_t oracle_max_configs;
  uint64_t oracle_max_nodes;
  uint64_t oracle_timeout_ms;
} fs_options;

typedef struct fs_network fs_network;
typedef struct fs_spec fs_spec;
typedef struct fs_decomposition fs_decomposition;

FS_API const char* fs_version(void);
FS_API const char* fs_last_error(void);
FS_API void fs_free_string(char* s);

/* Defaults with FANSPEC_BAG_CAP, FANSPEC_ORACLE_MAX_CONFIGS,
 * FANSPEC_ORACLE_MAX_NODES and FANSPEC_ORACLE_TIMEOUT_MS applied. */
FS_API void fs_options_default(fs_options* opts);

/* `origin` names the input in error messages and may be NULL. */
FS_API fs_status fs_network_read(const char* json, const char* origin, fs_network** out);
FS_API fs_status fs_network_write(const fs_network* net, char** json);
/* {"n", "states", "max_degree", "height", "deterministic", "edges"} */
FS_API fs_status fs_network_info(const fs_network* net, char** json);
/* {"n", "edges"} */
FS_API fs_status fs_network_graph(const fs_network* net, char** json);
FS_API void fs_network_free(fs_network* net);

/* horizon < 0 requires the document to carry "t". */
FS_API fs_status fs_spec_read(const fs_network* net, const char* json, const char* origin, long long horizon,
                              fs_spec** out);
FS_API void fs_spec_free(fs_spec* spec);

/* The decomposition is checked against the network graph when used. */
FS_API fs_status fs_decomposition_read(const char* json, const char* origin, fs_decomposition** out);
FS_API void fs_decomposition_free(fs_decomposition* d);

/* Verdict {"satisfiable", "witness", "stats"}; d may be NULL. */
FS_API fs_status fs_check_spec(const fs_network* net, const fs_spec* spec, const fs_decomposition* d,
                               const fs_options* opts, char** result_json, int* answer);

/* node_spec: {"traces": [...], "initial": [...], "final": [...], "avoid": [...]}
 * with every field optional. */
FS_API fs_status fs_predict(const fs_network* net, const char* config_json, uint32_t node, const char* node_spec_json,
                            size_t t, const fs_options* opts, char** result_json, int* answer);
FS_API fs_status fs_predecessor(const fs_network* net, const char* config_json, size_t t, const fs_options* opts,
                                char** result_json, int* answer);
FS_API fs_status fs_nilpotency(const fs_network* net, const fs_options* opts, char** result_json, int* answer);
FS_API fs_status fs_async_reach(const fs_network* net, const char* c0_json, const char* c1_json,
                                const fs_options* opts, char** result_json, int* answer);

/* Orbit of a deterministic network. */
FS_API fs_status fs_simulate(const fs_network* net, const char* config_json, size_t t, char** orbit_json);

/* Replays a verdict's witness: satisfies `spec` at every node and every step
 * is a successor of the previous one. */
FS_API fs_status fs_verify_witness(const fs_network* net, const fs_spec* spec, const char* verdict_json, int* ok);

FS_API fs_status fs_decompose(const char* graph_json, fs_decompose_mode mode, char** decomposition_json);
/* {"valid", "width", "binary", "depth", "issues"} */
FS_API fs_status fs_decomposition_check(const char* graph_json, const char* decomposition_json, char** report_json,
                                        int* valid);

/* digraph_json: [[a, b], ...] over element indices of the bramble. */
FS_API fs_status fs_route(const char* graph_json, const char* bramble_json, const char* digraph_json,
                          char** routing_json);

/* Builds a reduction instance. kind is one of dominating-set, sat-nilpotency,
 * circuit-predecessor, circuit-async, routed-prediction; params_json gives
 * {"graph", "k"} or {"circuit", "host"?, "bramble"?, "inputs"?, "output"?}.
 * The result bundles the network and the matching problem inputs. */
FS_API fs_status fs_gadget(const char* kind, const char* params_json, char** bundle_json);

/* Random instance for testing: {"n", "width", "states", "max_degree", "t",
 * "deterministic"} with defaults; returns {"network", "spec"}. */
FS_API fs_status fs_random_instance(uint64_t seed, const char* params_json, char** bundle_json);

#ifdef __cplusplus
}
#endif

#endif
