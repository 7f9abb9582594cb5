//! Built-in curve groups.

use crate::error::{Error, Result};
use crate::presentation::Presentation;
use crate::word::Word;
use crate::zariski::CurveGroup;

pub use crate::zariski::torus_curve_group;

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub provenance: &'static str,
    pub group: CurveGroup,
}

/// Quartic with three cusps, `x^2y^2 + y^2z^2 + z^2x^2 - 2xyz(x+y+z) = 0`.
/// Its complement group is binary dihedral of order 12, stored in the
/// dicyclic presentation with `y` carrying linking number 1.
pub fn three_cuspidal_quartic() -> CurveGroup {
    let p = Presentation::from_names(
        &["x", "y"],
        vec![
            Word::power_of(0, 6),
            Word::from_syllables(&[(0, 3), (1, -2)]),
            Word::from_syllables(&[(1, -1), (0, 1), (1, 1), (0, 1)]),
        ],
    )
    .expect("static presentation");
    CurveGroup::new(p, 4, vec![2, 1]).expect("static linking data")
}

/// Sextic with six cusps on a conic: `Z/2 * Z/3`.
pub fn zariski_sextic_conic() -> CurveGroup {
    let p = Presentation::from_names(
        &["a", "b"],
        vec![Word::power_of(0, 2), Word::power_of(1, 3)],
    )
    .expect("static presentation");
    CurveGroup::new(p, 6, vec![3, 2]).expect("static linking data")
}

/// Sextic with six cusps not on a conic: cyclic of order 6.
pub fn zariski_sextic_generic() -> CurveGroup {
    let p =
        Presentation::from_names(&["m"], vec![Word::power_of(0, 6)]).expect("static presentation");
    CurveGroup::new(p, 6, vec![1]).expect("static linking data")
}

pub fn entries() -> Vec<CatalogEntry> {
    vec![
        CatalogEntry {
            name: "quartic",
            provenance: "three-cuspidal quartic x^2y^2+y^2z^2+z^2x^2-2xyz(x+y+z)=0; group binary dihedral of order 12",
            group: three_cuspidal_quartic(),
        },
        CatalogEntry {
            name: "sextic-conic",
            provenance: "sextic with six cusps on a conic; group Z/2 * Z/3",
            group: zariski_sextic_conic(),
        },
        CatalogEntry {
            name: "sextic-generic",
            provenance: "sextic with six cusps not on a conic; group cyclic of order 6",
            group: zariski_sextic_generic(),
        },
        CatalogEntry {
            name: "torus-2-3-1",
            provenance: "torus curve f^3 + g^2 = 0 with deg f = 2, deg g = 3; <a,b,c | a^3 = b^2 = c, c = 1>",
            group: torus_curve_group(2, 3, 1).expect("coprime"),
        },
    ]
}

/// Looks up a built-in entry. Besides the fixed names, `torus-<p>-<q>-<k>`
/// yields the torus-type curve group for any coprime `p`, `q`.
pub fn lookup(name: &str) -> Result<CurveGroup> {
    if let Some(e) = entries().into_iter().find(|e| e.name == name) {
        return Ok(e.group);
    }
    if let Some(rest) = name.strip_prefix("torus-") {
        let parts: Vec<u64> = rest.split('-').filter_map(|s| s.parse().ok()).collect();
        if let [p, q, k] = parts[..] {
            return torus_curve_group(p, q, k);
        }
    }
    Err(Error::InvalidArgument(format!("no catalog entry `{name}`")))
}
