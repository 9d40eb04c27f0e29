/*
 * C interface to the bitree library: extremal sizes, tree containment, and
 * exhaustive verification for bipartite-tree families.
 *
 * Conventions:
 *   - Functions return BT_OK (0) on success or a bt_status_code; the
 *     thread-local message from bt_last_error() describes the failure.
 *   - Output strings are heap-allocated; release them with bt_string_free().
 *   - Handles are opaque; release with the matching *_destroy().
 *   - Structured results are UTF-8 JSON documents.
 */
#ifndef BITREE_H
#define BITREE_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct bt_graph bt_graph;
typedef struct bt_tree_family bt_tree_family;

enum bt_status_code {
    BT_OK = 0,
    BT_ERR_INVALID = 1, /* contract violation */
    BT_ERR_PARSE = 2,   /* malformed textual input */
    BT_ERR_LIMIT = 3,   /* cap or budget exceeded */
    BT_ERR_IO = 4,      /* file access failure */
    BT_ERR_INTERNAL = 5
};

const char* bt_version(void);
const char* bt_last_error(void);
void bt_string_free(char* s);

/* --- graphs ------------------------------------------------------------- */

/* edges_uv holds edge_count (u,v) pairs flattened as 2*edge_count ints. */
int bt_graph_create(int n, int m, const int32_t* edges_uv, size_t edge_count, bt_graph** out);
int bt_graph_from_bmat(const char* text, bt_graph** out);
int bt_graph_to_bmat(const bt_graph* g, char** out);
int bt_graph_to_dot(const bt_graph* g, char** out);
int bt_graph_canonical_hex(const bt_graph* g, int allow_side_swap, char** out);
int bt_graph_counts(const bt_graph* g, int* n, int* m, int* edges);
/* side: 0 = U, 1 = V. Degrees are written in nondecreasing order. */
int bt_graph_degree_sequence(const bt_graph* g, int side, int32_t* buf, size_t buflen,
                             size_t* written);
void bt_graph_destroy(bt_graph* g);
int bt_make_regular(int size, int degree, bt_graph** out);

/* --- tree families -------------------------------------------------------- */

/* cap <= 0 selects the default vertex cap (12). */
int bt_trees_enumerate(int k, int l, int cap, bt_tree_family** out);
size_t bt_tree_family_size(const bt_tree_family* fam);
int bt_tree_family_member(const bt_tree_family* fam, size_t index, bt_graph** out);
int bt_tree_family_key_hex(const bt_tree_family* fam, size_t index, char** out);
void bt_tree_family_destroy(bt_tree_family* fam);
/* |T_{k,2}| in closed form; negative on invalid k. */
int bt_tree_count_l2(int k);

/* --- embedding ------------------------------------------------------------ */

/*
 * orientation: "preserved", "swapped" or "any". With constructive != 0 the
 * inductive construction is used instead of backtracking (the host must meet
 * its degree conditions). JSON: {"found":bool, "orientation":..., "map_u":[],
 * "map_v":[]}.
 */
int bt_embed(const bt_graph* host, const bt_graph* tree, const char* orientation, int constructive,
             char** out_json);
/* JSON: {"all":bool, "first_missing_index":int|null, "first_missing_bmat":...} */
int bt_contains_all(const bt_graph* host, int k, int l, char** out_json);

/* --- hamiltonicity ---------------------------------------------------------- */

/* JSON: {"n":..,"is_hamiltonian":..,"condition_holds":..,"witness_cycle":[...]|null} */
int bt_hamilton_check(const bt_graph* g, char** out_json);
/* JSON: {"n":..,"ex":..,"extremal_keys":[...],"violations":[...]} */
int bt_hamilton_verify_c2n(int n, char** out_json);

/* --- closed forms ----------------------------------------------------------- */

/* JSON: {"value":..,"status":"Proven|Conjectured|Unknown","case_label":...} */
int bt_ex_formula(int n, int m, int k, int l, char** out_json);
int bt_ex_path(int n, int m, int path_len, char** out_json);
/* JSON as above, or {"applicable":false} when no guard matches. */
int bt_conjecture_value(int n, int m, int k, int l, char** out_json);
/* JSON: {"supported":..,"complete":..,"value":..,"entries":[{"family":..,
   "symbolic":..,"bmat":..,"key":..}]} */
int bt_construct_extremal(int n, int m, int k, int l, char** out_json);

/* --- exhaustive search -------------------------------------------------------- */

/*
 * Family search over T_{k,l}, or a single tree when single_tree_bmat is
 * non-NULL. workers <= 0 selects the default; max_graphs/max_seconds <= 0
 * select the defaults. cache_path may be NULL (no caching). JSON:
 * {"cached":bool, "record":{...}, "reps":[bmat,...]}.
 */
int bt_ex_bruteforce(int n, int m, int k, int l, const char* single_tree_bmat, int workers,
                     uint64_t max_graphs, double max_seconds, int use_prop32_prune,
                     const char* cache_path, char** out_json);

/*
 * id: Thm1.4 | Thm1.5 | Thm1.6 | Thm1.7 | Lem2.2 | Lem3.5 | Lem4.2.
 * Nonpositive option values select the defaults. JSON: {"id":..,
 * "mismatch_count":.., "tuples":[{...}]}.
 */
int bt_verify_theorem(const char* id, int workers, int nm_budget, int sum_budget, int kmax,
                      int path_lmax, char** out_json);

/* JSON: {"mismatch_count":..,"rows":[{"n":..,...,"outcome":...}]} */
int bt_conjecture_scan(int nm_budget, int nmax, int mmax, int lmin, int lmax, int kmax,
                       int workers, char** out_json);

/* Renders the cache as an aligned table plus CSV. filter like "l=2,agreement=Match". */
int bt_report_render(const char* cache_path, const char* filter, char** out_table, char** out_csv);

#ifdef __cplusplus
}
#endif

#endif /* BITREE_H */
