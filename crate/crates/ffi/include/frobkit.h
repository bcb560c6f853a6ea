#ifndef FROBKIT_H
#define FROBKIT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes shared by every entry point.
 */
typedef enum FrobStatus {
  FROB_STATUS_OK = 0,
  FROB_STATUS_NULL_POINTER = 1,
  FROB_STATUS_INVALID_UTF8 = 2,
  FROB_STATUS_PARSE = 3,
  FROB_STATUS_INVALID_INPUT = 4,
  FROB_STATUS_FIELD_MISMATCH = 5,
  FROB_STATUS_UNSUPPORTED = 6,
  FROB_STATUS_INTERNAL = 7,
  FROB_STATUS_PANIC = 8,
} FrobStatus;

/**
 * Opaque algebra handle.
 */
typedef struct FrobAlgebra FrobAlgebra;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL. The pointer stays
 * valid until the next call on the same thread.
 */
const char *frob_last_error(void);

/**
 * Releases a string returned by this library. NULL is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void frob_string_free(char *s);

/**
 * Releases an algebra handle. NULL is ignored.
 *
 * # Safety
 * `a` must come from this library and not have been freed.
 */
void frob_algebra_free(struct FrobAlgebra *a);

/**
 * Parses an algebra description file.
 *
 * # Safety
 * `text` must be a nul-terminated string; `out` must be writable.
 */
enum FrobStatus frob_algebra_parse(const char *text, struct FrobAlgebra **out);

/**
 * Builds `cyclic N`, `abelian N1,N2,...`, `matrix N` or `truncpoly N` over
 * `F_prime`, or over `Q` when `prime` is 0.
 *
 * # Safety
 * `family` and `arg` must be nul-terminated strings; `out` must be writable.
 */
enum FrobStatus frob_algebra_zoo(const char *family,
                                 const char *arg,
                                 uint64_t prime,
                                 struct FrobAlgebra **out);

/**
 * Path algebra of a quiver description. `bound` 0 means no length bound
 * beyond the one in the file.
 *
 * # Safety
 * `quiver` must be a nul-terminated string; `out` must be writable.
 */
enum FrobStatus frob_algebra_from_quiver(const char *quiver,
                                         uint64_t prime,
                                         size_t bound,
                                         struct FrobAlgebra **out);

/**
 * Dimension of the algebra, 0 for NULL.
 *
 * # Safety
 * `a` must be NULL or a live handle.
 */
size_t frob_algebra_dim(const struct FrobAlgebra *a);

/**
 * Canonical description file of the algebra.
 *
 * # Safety
 * `a` must be a live handle; `out` must be writable.
 */
enum FrobStatus frob_algebra_to_string(const struct FrobAlgebra *a, char **out);

/**
 * Direct product `a × b`.
 *
 * # Safety
 * `a`, `b` must be live handles; `out` must be writable.
 */
enum FrobStatus frob_direct_product(const struct FrobAlgebra *a,
                                    const struct FrobAlgebra *b,
                                    struct FrobAlgebra **out);

/**
 * Tensor product `a ⊗ b`.
 *
 * # Safety
 * `a`, `b` must be live handles; `out` must be writable.
 */
enum FrobStatus frob_tensor_product(const struct FrobAlgebra *a,
                                    const struct FrobAlgebra *b,
                                    struct FrobAlgebra **out);

/**
 * Frobenius dimension.
 *
 * # Safety
 * `a` must be a live handle; `out` must be writable.
 */
enum FrobStatus frob_frobdim(const struct FrobAlgebra *a, size_t *out);

/**
 * Canonical basis of the coproduct space, as tensor files separated by blank
 * lines.
 *
 * # Safety
 * `a` must be a live handle; `out` must be writable.
 */
enum FrobStatus frob_frobenius_basis(const struct FrobAlgebra *a, char **out);

/**
 * Separability decision. When `certificate` is not NULL it receives the
 * separability element as a tensor file, or NULL if there is none.
 *
 * # Safety
 * `a` must be a live handle; `separable` must be writable; `certificate`
 * must be NULL or writable.
 */
enum FrobStatus frob_is_separable(const struct FrobAlgebra *a, bool *separable, char **certificate);

/**
 * Semisimplicity over `Q`; `FROB_STATUS_UNSUPPORTED` over `F_p`.
 *
 * # Safety
 * `a` must be a live handle; `out` must be writable.
 */
enum FrobStatus frob_semisimple(const struct FrobAlgebra *a, bool *out);

/**
 * Checks whether a tensor file describes a nearly Frobenius coproduct.
 * `valid` is false when an identity fails; the message is then available
 * from `frob_last_error` even though the call returns `FROB_STATUS_OK`.
 *
 * # Safety
 * `a` must be a live handle; `tensor` a nul-terminated string; `valid`
 * writable.
 */
enum FrobStatus frob_verify_coproduct(const struct FrobAlgebra *a, const char *tensor, bool *valid);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FROBKIT_H */
