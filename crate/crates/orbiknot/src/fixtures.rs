//! The diagram fixture set shipped with the repository.
//!
//! Each fixture records its provenance. Table diagrams use the standard
//! planar-diagram codes; constructed diagrams come from the continued
//! fraction assemblers in [`crate::construct`], so the fixture set doubles as
//! a regression anchor for those constructors. `fixtures/*.pd.json` in the
//! repository root are serializations of exactly these values.

use crate::construct::{montesinos_diagram, two_bridge_diagram, TwoBridgeParams};
use crate::montesinos::MontesinosLink;
use crate::pd::PdCode;

#[derive(Debug, Clone)]
pub struct Fixture {
    /// File-friendly name, e.g. `"6_1"`.
    pub name: &'static str,
    pub pd: PdCode,
    pub provenance: &'static str,
    /// Known determinant, used as a cross-check in tests.
    pub det: u64,
    pub components: usize,
}

fn tb(p: u64, q: u64) -> PdCode {
    two_bridge_diagram(TwoBridgeParams::new(p, q).expect("fixture parameters"))
}

fn mont(s: &str) -> PdCode {
    montesinos_diagram(&MontesinosLink::parse(s).expect("fixture fractions"))
        .expect("fixture diagram")
}

/// Standard 3-crossing right trefoil.
pub fn trefoil() -> PdCode {
    PdCode::new(vec![[1, 4, 2, 5], [3, 6, 4, 1], [5, 2, 6, 3]], 6)
}

/// The full fixture set, in a fixed order.
pub fn all() -> Vec<Fixture> {
    let trefoil_kinked = PdCode::new(
        vec![[1, 4, 2, 5], [3, 6, 4, 7], [5, 2, 6, 3], [1, 8, 8, 7]],
        8,
    );
    let figure_eight = PdCode::new(
        vec![[4, 2, 5, 1], [8, 6, 1, 5], [6, 3, 7, 4], [2, 7, 3, 8]],
        8,
    );
    let granny = PdCode::connected_sum(&trefoil(), &trefoil()).expect("granny fixture");
    let square = PdCode::connected_sum(&trefoil(), &trefoil().mirror()).expect("square fixture");
    vec![
        Fixture {
            name: "unknot",
            pd: PdCode::unknot(),
            provenance: "crossingless unknot convention",
            det: 1,
            components: 1,
        },
        Fixture {
            name: "unlink_2",
            pd: PdCode::trivial_link(2),
            provenance: "2-component trivial link, two crossingless loops",
            det: 0,
            components: 2,
        },
        Fixture {
            name: "hopf",
            pd: PdCode::new(vec![[1, 3, 2, 4], [3, 1, 4, 2]], 4),
            provenance: "standard 2-crossing Hopf link code",
            det: 2,
            components: 2,
        },
        Fixture {
            name: "trefoil",
            pd: trefoil(),
            provenance: "standard 3-crossing table code for 3_1",
            det: 3,
            components: 1,
        },
        Fixture {
            name: "trefoil_kinked",
            pd: trefoil_kinked,
            provenance: "3_1 with one kink added to arc 1 (distinct diagram of the same knot)",
            det: 3,
            components: 1,
        },
        Fixture {
            name: "4_1",
            pd: figure_eight,
            provenance: "standard 4-crossing table code for the figure-eight knot",
            det: 5,
            components: 1,
        },
        Fixture {
            name: "5_2",
            pd: tb(7, 3),
            provenance: "4-plat of the 2-bridge form S(7,3) of 5_2",
            det: 7,
            components: 1,
        },
        Fixture {
            name: "6_1",
            pd: tb(9, 7),
            provenance: "4-plat of the 2-bridge form S(9,7) of 6_1",
            det: 9,
            components: 1,
        },
        Fixture {
            name: "7_4",
            pd: tb(15, 4),
            provenance: "4-plat of the 2-bridge form S(15,4) of 7_4",
            det: 15,
            components: 1,
        },
        Fixture {
            name: "8_19",
            pd: mont("-1/2,1/3,1/3"),
            provenance: "Montesinos form K(-1/2,1/3,1/3) of the (3,4)-torus knot 8_19",
            det: 3,
            components: 1,
        },
        Fixture {
            name: "11a_201",
            pd: mont("1/3,2/3,4/5"),
            provenance: "Montesinos form K(1/3,2/3,4/5) of 11a_201",
            det: 81,
            components: 1,
        },
        Fixture {
            name: "granny",
            pd: granny,
            provenance: "connected sum of two like-handed trefoil table codes",
            det: 9,
            components: 1,
        },
        Fixture {
            name: "square",
            pd: square,
            provenance: "connected sum of the trefoil table code and its mirror",
            det: 9,
            components: 1,
        },
    ]
}

/// Look up a fixture by name.
pub fn by_name(name: &str) -> Option<Fixture> {
    all().into_iter().find(|f| f.name == name)
}

/// The knot fixtures (one component), excluding nothing else.
pub fn knots() -> Vec<Fixture> {
    all().into_iter().filter(|f| f.components == 1).collect()
}
