/* C interface for the mls-vsdk scattered-data approximation library.
 *
 * All objects are opaque handles created and destroyed by this library.
 * Every fallible call returns an mlsvsdk_status code; on failure a
 * human-readable message is available from mlsvsdk_last_error() until the
 * next failing call on the same thread.
 *
 * Ownership: each *_create/_build call transfers the returned handle to
 * the caller, who must release it with the matching *_free. Input buffers
 * are only borrowed for the duration of a call. A single handle must not
 * be used from several threads at once without external locking; distinct
 * handles are independent.
 */

#ifndef MLS_VSDK_H
#define MLS_VSDK_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mlsvsdk_status {
  MLSVSDK_OK = 0,
  MLSVSDK_NULL_POINTER = 1,
  MLSVSDK_INVALID_ARGUMENT = 2,
  MLSVSDK_SINGULAR_SYSTEM = 3,
  MLSVSDK_INTERNAL_ERROR = 4,
} mlsvsdk_status;

typedef enum mlsvsdk_weight {
  MLSVSDK_WEIGHT_WENDLAND_C2 = 0,
  MLSVSDK_WEIGHT_GAUSSIAN = 1,
  MLSVSDK_WEIGHT_MATERN_C6 = 2,
  MLSVSDK_WEIGHT_LEVIN_SINGULAR = 3,
} mlsvsdk_weight;

typedef struct mlsvsdk_nodes mlsvsdk_nodes;
typedef struct mlsvsdk_scale mlsvsdk_scale;
typedef struct mlsvsdk_model mlsvsdk_model;

/* Message of the most recent failure on the calling thread. Never NULL;
 * the pointer stays valid until the next failing call on this thread. */
const char *mlsvsdk_last_error(void);

/* Builds a node set from row-major coordinates (n_nodes * dim doubles).
 * values may be NULL for a value-free set, otherwise n_nodes doubles. */
mlsvsdk_status mlsvsdk_nodes_create(size_t dim, size_t n_nodes,
                                    const double *coords,
                                    const double *values,
                                    mlsvsdk_nodes **out);

void mlsvsdk_nodes_free(mlsvsdk_nodes *nodes);

size_t mlsvsdk_nodes_dim(const mlsvsdk_nodes *nodes);
size_t mlsvsdk_nodes_len(const mlsvsdk_nodes *nodes);

/* Scale-function builder. The scale function is piecewise constant:
 * a point takes the level (beta) of the first region containing it, or
 * fallback_beta if none does. Weights are then evaluated on the distance
 * augmented by that level difference, which suppresses influence across
 * region boundaries. */
mlsvsdk_status mlsvsdk_scale_create(double fallback_beta,
                                    mlsvsdk_scale **out);

/* Axis-aligned closed box region; lower and upper each hold dim doubles. */
mlsvsdk_status mlsvsdk_scale_add_box(mlsvsdk_scale *scale, size_t dim,
                                     const double *lower,
                                     const double *upper, double beta);

/* Ball region given by its center (dim doubles) and squared radius. */
mlsvsdk_status mlsvsdk_scale_add_ball(mlsvsdk_scale *scale, size_t dim,
                                      const double *center,
                                      double radius_sq, double beta);

void mlsvsdk_scale_free(mlsvsdk_scale *scale);

/* Builds an approximation model from a node set with values.
 *
 * stencil_size == 0 selects the default (twice the polynomial basis
 * size). scale may be NULL for the plain Euclidean weight; a non-NULL
 * builder is copied, so it stays usable and must still be freed. */
mlsvsdk_status mlsvsdk_model_create(const mlsvsdk_nodes *nodes,
                                    mlsvsdk_weight weight, double epsilon,
                                    size_t degree, size_t stencil_size,
                                    const mlsvsdk_scale *scale,
                                    mlsvsdk_model **out);

void mlsvsdk_model_free(mlsvsdk_model *model);

/* Evaluates the model at n_points points given as row-major coordinates
 * (n_points * dim doubles), writing n_points doubles to out_values. On
 * failure nothing is written. */
mlsvsdk_status mlsvsdk_model_evaluate(const mlsvsdk_model *model,
                                      size_t n_points,
                                      const double *coords,
                                      double *out_values);

#ifdef __cplusplus
}
#endif

#endif /* MLS_VSDK_H */
