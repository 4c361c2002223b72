//! Tropical cycles: balanced weighted fans with weights in `Q` or in Laurent
//! polynomials of `y - 1`, and the operations on them.

mod balance;
mod cone;
mod cycle;
mod exp;
mod fan;
mod intersect;
mod weight;

pub use balance::{is_balanced, primitive_normal, BalanceReport, Violation};
pub use cone::Cone;
pub use cycle::{linear_combination, TropicalCycle};
pub use exp::{dual_hypersurface, exp_cycle, exp_cycle_by_intersection, exp_cycle_on, negate_exp_cycle};
pub use fan::{common_refinement, common_refinement_by_intersection, Fan};
pub use intersect::{power, set_displacement_salt, stable_intersection, DISPLACEMENT_ATTEMPTS};
pub use weight::WeightPoly;

pub(crate) use exp::face_volume_weights;

use crate::error::Result;
use crate::exactmath::Rational;

pub fn graded_component(c: &TropicalCycle, codim: usize) -> Result<TropicalCycle> {
    c.graded_component(codim)
}

pub fn top_component(c: &TropicalCycle) -> Result<TropicalCycle> {
    c.top_component()
}

pub fn evaluate_weights(c: &TropicalCycle, y: &Rational) -> Result<TropicalCycle> {
    c.evaluate_weights(y)
}

pub fn support_equal(a: &TropicalCycle, b: &TropicalCycle) -> bool {
    a.support_equal(b)
}
