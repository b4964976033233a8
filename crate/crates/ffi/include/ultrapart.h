#ifndef ULTRAPART_H
#define ULTRAPART_H

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/**
 * Result code of every fallible call.
 */
typedef enum UpStatus {
  UP_STATUS_OK = 0,
  UP_STATUS_NULL_POINTER = 1,
  UP_STATUS_INVALID_UTF8 = 2,
  UP_STATUS_SYNTAX = 3,
  /**
   * Well-formed input that violates a structural requirement
   * (cycle, missing meet, finite block, zero run, ...).
   */
  UP_STATUS_INVALID_STRUCTURE = 4,
  UP_STATUS_OUT_OF_RANGE = 5,
  /**
   * The fine join has a finite block, so no partition is returned.
   */
  UP_STATUS_BOTTOM = 6,
  /**
   * The coarse meet leaves the column class; no partition is returned.
   */
  UP_STATUS_FINITE_REMAINDER = 7,
  /**
   * `leq_star` found no threshold.
   */
  UP_STATUS_ABSENT = 8,
  UP_STATUS_PANIC = 9,
} UpStatus;

typedef struct UpEpPartition UpEpPartition;

typedef struct UpLattice UpLattice;

typedef struct UpScPartition UpScPartition;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread, or NULL. The
 * pointer stays valid until the next failing call on the same thread.
 */
const char *up_last_error_message(void);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library, not yet freed.
 */
void up_string_free(char *s);

/**
 * Parses a `semilattice v1` description.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum UpStatus up_lattice_parse(const char *text, struct UpLattice **out);

/**
 * # Safety
 * `l` must be NULL or a live handle from `up_lattice_parse`.
 */
void up_lattice_free(struct UpLattice *l);

/**
 * Number of elements, or 0 for a NULL handle.
 *
 * # Safety
 * `l` must be NULL or a live handle.
 */
size_t up_lattice_len(const struct UpLattice *l);

/**
 * Writes the number of ultrafilters (atoms).
 *
 * # Safety
 * `l` must be a live handle; `out` must be writable.
 */
enum UpStatus up_lattice_ultrafilter_count(const struct UpLattice *l, size_t *out);

/**
 * # Safety
 * `l` must be a live handle; `out` must be writable.
 */
enum UpStatus up_lattice_is_complemented(const struct UpLattice *l, bool *out);

/**
 * Renders the framework report as tab-separated lines and writes whether
 * every item passed.
 *
 * # Safety
 * `l` must be a live handle; `out` and `passed` must be writable. The
 * string is released with `up_string_free`.
 */
enum UpStatus up_lattice_framework_report(const struct UpLattice *l, char **out, bool *passed);

/**
 * Parses an `ep;prefix=…;period=…` literal.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum UpStatus up_ep_parse(const char *text, struct UpEpPartition **out);

/**
 * # Safety
 * `p` must be NULL or a live handle.
 */
void up_ep_free(struct UpEpPartition *p);

/**
 * Canonical literal of `p`.
 *
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
enum UpStatus up_ep_to_string(const struct UpEpPartition *p, char **out);

/**
 * Number of blocks of `p`, or 0 for a NULL handle.
 *
 * # Safety
 * `p` must be NULL or a live handle.
 */
size_t up_ep_block_count(const struct UpEpPartition *p);

/**
 * Finest common coarsening.
 *
 * # Safety
 * `a`, `b` must be live handles; `out` must be writable.
 */
enum UpStatus up_ep_coarse_meet(const struct UpEpPartition *a,
                                const struct UpEpPartition *b,
                                struct UpEpPartition **out);

/**
 * Coarsest common refinement; `UP_STATUS_BOTTOM` if it has a finite block.
 *
 * # Safety
 * `a`, `b` must be live handles; `out` must be writable.
 */
enum UpStatus up_ep_fine_join(const struct UpEpPartition *a,
                              const struct UpEpPartition *b,
                              struct UpEpPartition **out);

/**
 * Writes whether `a` is coarser than `b`.
 *
 * # Safety
 * `a`, `b` must be live handles; `out` must be writable.
 */
enum UpStatus up_ep_is_coarser(const struct UpEpPartition *a,
                               const struct UpEpPartition *b,
                               bool *out);

/**
 * Writes whether the coarse meet of `a` and `b` is the trivial partition.
 *
 * # Safety
 * `a`, `b` must be live handles; `out` must be writable.
 */
enum UpStatus up_ep_orth_coarse(const struct UpEpPartition *a,
                                const struct UpEpPartition *b,
                                bool *out);

/**
 * Writes whether the fine join of `a` and `b` has a finite block.
 *
 * # Safety
 * `a`, `b` must be live handles; `out` must be writable.
 */
enum UpStatus up_ep_orth_fine(const struct UpEpPartition *a,
                              const struct UpEpPartition *b,
                              bool *out);

/**
 * Glues every block meeting `{0, …, n-1}`; `n` must be at least 1.
 *
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
enum UpStatus up_ep_glue_below(const struct UpEpPartition *p, size_t n, struct UpEpPartition **out);

/**
 * A 2-block partition coarse-orthogonal to every member of the family.
 *
 * # Safety
 * `parts` must point to `len` live handles; `out` must be writable.
 */
enum UpStatus up_ep_witness_coarse(const struct UpEpPartition *const *parts,
                                   size_t len,
                                   struct UpEpPartition **out);

/**
 * A 2-block partition fine-orthogonal to every member of the family.
 * Requires a nonempty family of non-trivial partitions.
 *
 * # Safety
 * `parts` must point to `len` live handles; `out` must be writable.
 */
enum UpStatus up_ep_witness_fine(const struct UpEpPartition *const *parts,
                                 size_t len,
                                 struct UpEpPartition **out);

/**
 * Parses an `sc;runs=…;periodic=…` literal.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum UpStatus up_sc_parse(const char *text, struct UpScPartition **out);

/**
 * # Safety
 * `p` must be NULL or a live handle.
 */
void up_sc_free(struct UpScPartition *p);

/**
 * Canonical literal of `p`.
 *
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
enum UpStatus up_sc_to_string(const struct UpScPartition *p, char **out);

/**
 * Finest common coarsening; `UP_STATUS_FINITE_REMAINDER` if only finitely
 * many cuts are shared.
 *
 * # Safety
 * `a`, `b` must be live handles; `out` must be writable.
 */
enum UpStatus up_sc_coarse_meet(const struct UpScPartition *a,
                                const struct UpScPartition *b,
                                struct UpScPartition **out);

/**
 * # Safety
 * `a`, `b` must be live handles; `out` must be writable.
 */
enum UpStatus up_sc_is_coarser(const struct UpScPartition *a,
                               const struct UpScPartition *b,
                               bool *out);

/**
 * Glues every group touching `{0, …, n-1}`.
 *
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
enum UpStatus up_sc_glue_below(const struct UpScPartition *p,
                               uint64_t n,
                               struct UpScPartition **out);

/**
 * Least `n` with `glue_below(a, n)` coarser than `b`; `UP_STATUS_ABSENT`
 * if there is none.
 *
 * # Safety
 * `a`, `b` must be live handles; `out` must be writable.
 */
enum UpStatus up_sc_leq_star(const struct UpScPartition *a,
                             const struct UpScPartition *b,
                             uint64_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ULTRAPART_H */
