//! C ABI for the `mls-vsdk` library.
//!
//! All types cross the boundary as opaque handles; every fallible call
//! returns an `MlsVsdkStatus` code and stores a human-readable message
//! retrievable with [`mlsvsdk_last_error`]. The matching declarations live
//! in `include/mls_vsdk.h`.
//!
//! Ownership rules: every `_create`/`_build` function transfers ownership
//! of the returned handle to the caller, who must release it with the
//! matching `_free`. Input buffers are borrowed only for the duration of
//! the call. Handles are not synchronized; using one handle from several
//! threads concurrently requires external locking, but distinct handles
//! are independent.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use mls_vsdk::error::Error;
use mls_vsdk::geometry::{NodeSet, Point};
use mls_vsdk::mls::{MlsConfig, MlsEngine, PolynomialBasis};
use mls_vsdk::scaling::{Region, RegionShape, ScaleFunction};
use mls_vsdk::weights::{WeightFamily, WeightSpec};

/// Status codes returned by every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MlsVsdkStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    SingularSystem = 3,
    InternalError = 4,
}

/// Weight family selector; values mirror the `MLSVSDK_WEIGHT_*` constants
/// in the header.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MlsVsdkWeight {
    WendlandC2 = 0,
    Gaussian = 1,
    MaternC6 = 2,
    LevinSingular = 3,
}

pub struct MlsVsdkNodes(NodeSet);

/// Scale-function builder: regions are appended one at a time and the
/// whole function is frozen when a model is created from it.
pub struct MlsVsdkScale {
    regions: Vec<Region>,
    fallback_beta: f64,
}

pub struct MlsVsdkModel {
    cfg: MlsConfig,
    nodes: NodeSet,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let sanitized: String = msg.chars().filter(|&c| c != '\0').collect();
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).unwrap_or_default();
    });
}

fn status_of(err: &Error) -> MlsVsdkStatus {
    match err {
        Error::SingularSystem { .. } => MlsVsdkStatus::SingularSystem,
        Error::InvalidArgument(_) | Error::InvalidResult(_) | Error::Config(_) => {
            MlsVsdkStatus::InvalidArgument
        }
        _ => MlsVsdkStatus::InternalError,
    }
}

fn fail(err: Error) -> MlsVsdkStatus {
    set_error(&err.to_string());
    status_of(&err)
}

fn guard(f: impl FnOnce() -> MlsVsdkStatus) -> MlsVsdkStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => {
            set_error("internal panic");
            MlsVsdkStatus::InternalError
        }
    }
}

/// Returns the message of the most recent failure on this thread. The
/// pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn mlsvsdk_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Builds a node set from row-major coordinates (`n_nodes * dim` doubles).
/// `values` may be null for a value-free set, otherwise it holds `n_nodes`
/// doubles.
///
/// # Safety
/// `coords` must point to `n_nodes * dim` readable doubles and `values`,
/// when non-null, to `n_nodes` readable doubles. `out` must be a valid
/// destination for one pointer.
#[no_mangle]
pub unsafe extern "C" fn mlsvsdk_nodes_create(
    dim: usize,
    n_nodes: usize,
    coords: *const f64,
    values: *const f64,
    out: *mut *mut MlsVsdkNodes,
) -> MlsVsdkStatus {
    if coords.is_null() || out.is_null() {
        set_error("coords and out must be non-null");
        return MlsVsdkStatus::NullPointer;
    }
    let coords = std::slice::from_raw_parts(coords, n_nodes * dim);
    let values = if values.is_null() {
        None
    } else {
        Some(std::slice::from_raw_parts(values, n_nodes))
    };
    guard(|| {
        let points: Result<Vec<Point>, Error> = coords
            .chunks_exact(dim.max(1))
            .map(|c| Point::new(c.to_vec()))
            .collect();
        let build = points.and_then(|pts| NodeSet::new(dim, pts)).and_then(|ns| {
            match values {
                Some(v) => ns.with_values(v.to_vec()),
                None => Ok(ns),
            }
        });
        match build {
            Ok(ns) => {
                *out = Box::into_raw(Box::new(MlsVsdkNodes(ns)));
                MlsVsdkStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Releases a node set. Null is a no-op.
///
/// # Safety
/// `nodes` must be null or a pointer obtained from `mlsvsdk_nodes_create`
/// that has not been freed yet.
#[no_mangle]
pub unsafe extern "C" fn mlsvsdk_nodes_free(nodes: *mut MlsVsdkNodes) {
    if !nodes.is_null() {
        drop(Box::from_raw(nodes));
    }
}

/// Creates an empty scale-function builder with the given fallback level.
///
/// # Safety
/// `out` must be a valid destination for one pointer.
#[no_mangle]
pub unsafe extern "C" fn mlsvsdk_scale_create(
    fallback_beta: f64,
    out: *mut *mut MlsVsdkScale,
) -> MlsVsdkStatus {
    if out.is_null() {
        set_error("out must be non-null");
        return MlsVsdkStatus::NullPointer;
    }
    if !fallback_beta.is_finite() {
        set_error("fallback_beta must be finite");
        return MlsVsdkStatus::InvalidArgument;
    }
    *out = Box::into_raw(Box::new(MlsVsdkScale {
        regions: Vec::new(),
        fallback_beta,
    }));
    MlsVsdkStatus::Ok
}

/// Appends an axis-aligned closed box region with scale level `beta`.
/// Earlier regions take precedence.
///
/// # Safety
/// `scale` must be a live builder handle; `lower` and `upper` must each
/// point to `dim` readable doubles.
#[no_mangle]
pub unsafe extern "C" fn mlsvsdk_scale_add_box(
    scale: *mut MlsVsdkScale,
    dim: usize,
    lower: *const f64,
    upper: *const f64,
    beta: f64,
) -> MlsVsdkStatus {
    if scale.is_null() || lower.is_null() || upper.is_null() {
        set_error("scale, lower and upper must be non-null");
        return MlsVsdkStatus::NullPointer;
    }
    let lower = std::slice::from_raw_parts(lower, dim).to_vec();
    let upper = std::slice::from_raw_parts(upper, dim).to_vec();
    (*scale).regions.push(Region {
        shape: RegionShape::Box { lower, upper },
        beta,
    });
    MlsVsdkStatus::Ok
}

/// Appends a ball region given by center and *squared* radius, with scale
/// level `beta`.
///
/// # Safety
/// `scale` must be a live builder handle; `center` must point to `dim`
/// readable doubles.
#[no_mangle]
pub unsafe extern "C" fn mlsvsdk_scale_add_ball(
    scale: *mut MlsVsdkScale,
    dim: usize,
    center: *const f64,
    radius_sq: f64,
    beta: f64,
) -> MlsVsdkStatus {
    if scale.is_null() || center.is_null() {
        set_error("scale and center must be non-null");
        return MlsVsdkStatus::NullPointer;
    }
    let center = std::slice::from_raw_parts(center, dim).to_vec();
    (*scale).regions.push(Region {
        shape: RegionShape::Ball { center, radius_sq },
        beta,
    });
    MlsVsdkStatus::Ok
}

/// Releases a scale builder. Null is a no-op.
///
/// # Safety
/// `scale` must be null or a live handle from `mlsvsdk_scale_create`.
#[no_mangle]
pub unsafe extern "C" fn mlsvsdk_scale_free(scale: *mut MlsVsdkScale) {
    if !scale.is_null() {
        drop(Box::from_raw(scale));
    }
}

/// Builds an approximation model from a node set with values.
///
/// `stencil_size == 0` selects the default (twice the polynomial basis
/// size). `scale` may be null for the plain Euclidean weight; passing a
/// builder freezes a copy of it, so the builder stays usable and must
/// still be freed by the caller.
///
/// # Safety
/// `nodes` must be a live node-set handle, `scale` null or a live builder
/// handle, and `out` a valid destination for one pointer.
#[no_mangle]
pub unsafe extern "C" fn mlsvsdk_model_create(
    nodes: *const MlsVsdkNodes,
    weight: MlsVsdkWeight,
    epsilon: f64,
    degree: usize,
    stencil_size: usize,
    scale: *const MlsVsdkScale,
    out: *mut *mut MlsVsdkModel,
) -> MlsVsdkStatus {
    if nodes.is_null() || out.is_null() {
        set_error("nodes and out must be non-null");
        return MlsVsdkStatus::NullPointer;
    }
    let node_set = &(*nodes).0;
    let scale = scale.as_ref();
    guard(|| {
        if node_set.values().is_none() {
            return fail(Error::invalid("model creation needs a node set with values"));
        }
        let family = match weight {
            MlsVsdkWeight::WendlandC2 => WeightFamily::WendlandC2,
            MlsVsdkWeight::Gaussian => WeightFamily::Gaussian,
            MlsVsdkWeight::MaternC6 => WeightFamily::MaternC6,
            MlsVsdkWeight::LevinSingular => WeightFamily::LevinSingular,
        };
        let build = || -> Result<MlsVsdkModel, Error> {
            let weight = WeightSpec::new(family, epsilon)?;
            let basis = PolynomialBasis::new(node_set.dim(), degree)?;
            let n = if stencil_size == 0 { 2 * basis.size() } else { stencil_size };
            let mut cfg = MlsConfig::new(basis, weight).with_stencil_size(n);
            if let Some(s) = scale {
                cfg = cfg.with_scale_fn(ScaleFunction::new(
                    s.regions.clone(),
                    s.fallback_beta,
                )?);
            }
            // fail fast on configurations the engine would reject later
            MlsEngine::new(&cfg, node_set)?;
            Ok(MlsVsdkModel {
                cfg,
                nodes: node_set.clone(),
            })
        };
        match build() {
            Ok(model) => {
                *out = Box::into_raw(Box::new(model));
                MlsVsdkStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Releases a model. Null is a no-op.
///
/// # Safety
/// `model` must be null or a live handle from `mlsvsdk_model_create`.
#[no_mangle]
pub unsafe extern "C" fn mlsvsdk_model_free(model: *mut MlsVsdkModel) {
    if !model.is_null() {
        drop(Box::from_raw(model));
    }
}

/// Evaluates the model at `n_points` points given as row-major coordinates
/// (`n_points * dim` doubles), writing `n_points` doubles to `out_values`.
///
/// On failure nothing is written and the error message names the first
/// offending point.
///
/// # Safety
/// `model` must be a live model handle, `coords` must point to
/// `n_points * dim` readable doubles, and `out_values` to `n_points`
/// writable doubles.
#[no_mangle]
pub unsafe extern "C" fn mlsvsdk_model_evaluate(
    model: *const MlsVsdkModel,
    n_points: usize,
    coords: *const f64,
    out_values: *mut f64,
) -> MlsVsdkStatus {
    if model.is_null() || coords.is_null() || out_values.is_null() {
        set_error("model, coords and out_values must be non-null");
        return MlsVsdkStatus::NullPointer;
    }
    let model = &*model;
    let dim = model.nodes.dim();
    let coords = std::slice::from_raw_parts(coords, n_points * dim);
    let out = std::slice::from_raw_parts_mut(out_values, n_points);
    guard(|| {
        let points: Result<Vec<Point>, Error> = coords
            .chunks_exact(dim)
            .map(|c| Point::new(c.to_vec()))
            .collect();
        let run = points.and_then(|pts| {
            let engine = MlsEngine::new(&model.cfg, &model.nodes)?;
            engine.evaluate_many(&pts)
        });
        match run {
            Ok(values) => {
                out.copy_from_slice(&values);
                MlsVsdkStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Reports the dimension of the node set behind a handle.
///
/// # Safety
/// `nodes` must be a live node-set handle.
#[no_mangle]
pub unsafe extern "C" fn mlsvsdk_nodes_dim(nodes: *const MlsVsdkNodes) -> usize {
    if nodes.is_null() {
        return 0;
    }
    (*nodes).0.dim()
}

/// Reports the number of nodes behind a handle.
///
/// # Safety
/// `nodes` must be a live node-set handle.
#[no_mangle]
pub unsafe extern "C" fn mlsvsdk_nodes_len(nodes: *const MlsVsdkNodes) -> usize {
    if nodes.is_null() {
        return 0;
    }
    (*nodes).0.len()
}
