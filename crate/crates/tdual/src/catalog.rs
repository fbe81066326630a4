//! Built-in examples paired with a default choice of `r̃`.

use coeff_ring::{qi, TrigScalar};
use courant::{examples, BaseData};

/// Names accepted by [`example`]; `exact-flux-<n>` and `heisenberg-<n>` take any integer.
pub const NAMES: &[&str] = &["exact-flux-<n>", "heisenberg", "heisenberg-<n>", "trivial", "affine-so3"];

/// Base data for a named example together with the `r̃` used to dualize it.
pub fn example(name: &str) -> Option<(BaseData, Vec<Vec<TrigScalar>>)> {
    let base = examples::by_name(name)?;
    let dim = base.sig.base_dim();
    let mut r_tilde = vec![vec![TrigScalar::zero(dim); base.g.dim()]; base.num_fibers()];
    if name == "affine-so3" {
        r_tilde[0][0] = TrigScalar::constant(dim, qi(2));
        r_tilde[0][4] = TrigScalar::one(dim);
    }
    Some((base, r_tilde))
}
