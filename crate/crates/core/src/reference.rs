//! Fixed reference configurations.

use alloc::vec;
use alloc::vec::Vec;

use itertools::Itertools;

use crate::geom::{orient, Point};
use crate::{PointConfig, PointId, Rat};

/// Id of the center in [`pentagon_with_center`].
pub const CENTER: PointId = PointId(0);

/// A regular pentagon around its center, with vertices rounded to
/// thousandths. Id 0 is the center; ids 1..=5 are the vertices in
/// counterclockwise order starting from the top.
pub fn pentagon_with_center() -> PointConfig {
    let coords: [(i64, i64); 6] = [(0, 0), (0, 1000), (-951, 309), (-588, -809), (588, -809), (951, 309)];
    let config = PointConfig::from_coords(
        2,
        coords
            .iter()
            .map(|&(x, y)| vec![Rat::new(x, 1000).unwrap(), Rat::new(y, 1000).unwrap()])
            .collect(),
    )
    .expect("distinct reference points");
    assert!(
        has_pentagon_order_type(&config),
        "rounded pentagon lost the order type of the regular pentagon"
    );
    config
}

/// The orientation the regular pentagon with center gives to the triple of
/// ids `i < j < l`.
fn ideal_sign(i: u32, j: u32, l: u32) -> i8 {
    if i != 0 {
        // Three vertices listed counterclockwise.
        return 1;
    }
    // (center, v_j, v_l) is a cyclic shift of (v_j, v_l, center).
    match (l - j) % 5 {
        1 | 2 => 1,
        _ => -1,
    }
}

/// Every orientation of `config` (ids 0..=5, center first) agrees with the
/// regular pentagon's.
pub fn has_pentagon_order_type(config: &PointConfig) -> bool {
    let ids: Vec<PointId> = config.sorted_ids();
    if ids != (0..6).map(PointId).collect::<Vec<_>>() || config.dim() != 2 {
        return false;
    }
    ids.iter().tuple_combinations().all(|(&a, &b, &c)| {
        let pts: Vec<&Point> = [a, b, c].iter().map(|&id| config.point(id).unwrap()).collect();
        orient(&pts, 2).ok() == Some(ideal_sign(a.0, b.0, c.0))
    })
}
