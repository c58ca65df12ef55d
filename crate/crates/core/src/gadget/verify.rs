//! Ω-sets, Σ tables and the independent check of the four gadget
//! properties.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{BridgePiece, GadgetError, HardnessGadget, RootedPiece, SigmaEntry, SigmaTable};
use crate::graph::{Graph, PartiallyLabelledGraph};
use crate::hom::{rooted_counts, rooted_odd_tuples};

fn check_root(j: &PartiallyLabelledGraph, root: &str) -> Result<(), GadgetError> {
    if !j.graph().contains(root) {
        return Err(GadgetError::UnknownVertex(root.to_string()));
    }
    if j.is_pinned(root) {
        return Err(GadgetError::Precondition(format!("distinguished vertex `{root}` is pinned")));
    }
    Ok(())
}

/// Host vertices `a` with an odd number of homomorphisms sending `root` to `a`.
pub fn compute_omega(
    j: &PartiallyLabelledGraph,
    root: &str,
    h: &Graph,
) -> Result<BTreeSet<String>, GadgetError> {
    check_root(j, root)?;
    Ok(rooted_odd_tuples(j, &[root], h)?
        .into_iter()
        .map(|mut t| t.pop().expect("one root"))
        .collect())
}

/// Parities of the bridge counts for `(a, b)` in `omega_y × omega_z`; with
/// `exact`, the exact counts are kept too.
pub fn compute_sigma_table(
    j3: &BridgePiece,
    h: &Graph,
    omega_y: &BTreeSet<String>,
    omega_z: &BTreeSet<String>,
    exact: bool,
) -> Result<SigmaTable, GadgetError> {
    check_root(&j3.part, &j3.y)?;
    check_root(&j3.part, &j3.z)?;
    if j3.y == j3.z {
        return Err(GadgetError::Precondition("bridge ends coincide".into()));
    }
    let roots = [j3.y.as_str(), j3.z.as_str()];
    let odd: BTreeSet<Vec<String>> = rooted_odd_tuples(&j3.part, &roots, h)?.into_iter().collect();
    let counts = if exact {
        Some(rooted_counts(&j3.part, &roots, h)?)
    } else {
        None
    };
    let mut entries = Vec::with_capacity(omega_y.len() * omega_z.len());
    for a in omega_y {
        for b in omega_z {
            let key = vec![a.clone(), b.clone()];
            let exact = counts
                .as_ref()
                .map(|c| c.get(&key).cloned().unwrap_or_else(|| 0u64.into()));
            entries.push(SigmaEntry {
                parity: odd.contains(&key) as u8,
                a: a.clone(),
                b: b.clone(),
                exact,
            });
        }
    }
    Ok(SigmaTable { entries })
}

/// Packages the pieces with freshly computed Ω-sets and Σ table. No
/// property is checked.
pub fn assemble_gadget(
    h: &Graph,
    i: &str,
    s: &str,
    j1: RootedPiece,
    j2: RootedPiece,
    j3: BridgePiece,
    exact: bool,
) -> Result<HardnessGadget, GadgetError> {
    let omega_y = compute_omega(&j1.part, &j1.root, h)?;
    let omega_z = compute_omega(&j2.part, &j2.root, h)?;
    let sigma = compute_sigma_table(&j3, h, &omega_y, &omega_z, exact)?;
    Ok(HardnessGadget {
        i: i.to_string(),
        s: s.to_string(),
        j1,
        j2,
        j3,
        omega_y,
        omega_z,
        sigma,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Piece {
    J1,
    J2,
    J3,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Y,
    Z,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Violation {
    Disconnected {
        piece: Piece,
    },
    BadRoot {
        piece: Piece,
        root: String,
    },
    Uncountable {
        piece: Piece,
        reason: String,
    },
    UnknownAnchor {
        vertex: String,
    },
    OmegaMismatch {
        side: Side,
        declared: BTreeSet<String>,
        computed: BTreeSet<String>,
    },
    SigmaMismatch {
        a: String,
        b: String,
        declared: Option<u8>,
        computed: Option<u8>,
    },
    /// Property 1 or 2: the Ω-set has odd size.
    OddOmega {
        side: Side,
        omega: BTreeSet<String>,
    },
    /// Property 1 or 2: i ∉ Ω_y or s ∉ Ω_z.
    AnchorMissing {
        side: Side,
        anchor: String,
        omega: BTreeSet<String>,
    },
    /// Property 3: Σ_{o,x} odd.
    OddAwayPair {
        o: String,
        x: String,
    },
    /// Property 4: one of Σ_{i,s}, Σ_{o,s}, Σ_{i,x} even.
    EvenAnchorPair {
        a: String,
        b: String,
    },
}

impl Violation {
    /// The numbered gadget property that fails, for property violations.
    pub fn property(&self) -> Option<u8> {
        match self {
            Violation::OddOmega { side, .. } | Violation::AnchorMissing { side, .. } => {
                Some(if *side == Side::Y { 1 } else { 2 })
            }
            Violation::OddAwayPair { .. } => Some(3),
            Violation::EvenAnchorPair { .. } => Some(4),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum GadgetVerdict {
    Accepted,
    Rejected {
        property: Option<u8>,
        violation: Violation,
    },
}

impl GadgetVerdict {
    pub fn is_accepted(&self) -> bool {
        matches!(self, GadgetVerdict::Accepted)
    }

    pub fn violation(&self) -> Option<&Violation> {
        match self {
            GadgetVerdict::Accepted => None,
            GadgetVerdict::Rejected { violation, .. } => Some(violation),
        }
    }

    fn reject(violation: Violation) -> Self {
        GadgetVerdict::Rejected {
            property: violation.property(),
            violation,
        }
    }
}

fn structural(piece: Piece, part: &PartiallyLabelledGraph, roots: &[&str]) -> Option<Violation> {
    if !part.graph().is_connected() {
        return Some(Violation::Disconnected { piece });
    }
    roots
        .iter()
        .find(|r| !part.graph().contains(r) || part.is_pinned(r))
        .map(|r| Violation::BadRoot {
            piece,
            root: r.to_string(),
        })
}

/// Recomputes Ω_y, Ω_z and Σ from the pieces and checks them against the
/// declared values, then the four properties in order.
pub fn verify_hardness_gadget(g: &HardnessGadget, h: &Graph) -> GadgetVerdict {
    let checks = [
        structural(Piece::J1, &g.j1.part, &[&g.j1.root]),
        structural(Piece::J2, &g.j2.part, &[&g.j2.root]),
        structural(Piece::J3, &g.j3.part, &[&g.j3.y, &g.j3.z]),
    ];
    if let Some(v) = checks.into_iter().flatten().next() {
        return GadgetVerdict::reject(v);
    }
    if g.j3.y == g.j3.z {
        return GadgetVerdict::reject(Violation::BadRoot {
            piece: Piece::J3,
            root: g.j3.z.clone(),
        });
    }
    for anchor in [&g.i, &g.s] {
        if !h.contains(anchor) {
            return GadgetVerdict::reject(Violation::UnknownAnchor {
                vertex: anchor.clone(),
            });
        }
    }
    let uncountable = |piece: Piece, e: GadgetError| {
        GadgetVerdict::reject(Violation::Uncountable {
            piece,
            reason: e.to_string(),
        })
    };
    let omega_y = match compute_omega(&g.j1.part, &g.j1.root, h) {
        Ok(o) => o,
        Err(e) => return uncountable(Piece::J1, e),
    };
    let omega_z = match compute_omega(&g.j2.part, &g.j2.root, h) {
        Ok(o) => o,
        Err(e) => return uncountable(Piece::J2, e),
    };
    for (side, declared, computed) in [(Side::Y, &g.omega_y, &omega_y), (Side::Z, &g.omega_z, &omega_z)] {
        if declared != computed {
            return GadgetVerdict::reject(Violation::OmegaMismatch {
                side,
                declared: declared.clone(),
                computed: computed.clone(),
            });
        }
    }
    let sigma = match compute_sigma_table(&g.j3, h, &omega_y, &omega_z, false) {
        Ok(t) => t,
        Err(e) => return uncountable(Piece::J3, e),
    };
    if !sigma.same_parities(&g.sigma) {
        let pair = sigma
            .entries
            .iter()
            .map(|e| (e.a.clone(), e.b.clone()))
            .chain(g.sigma.entries.iter().map(|e| (e.a.clone(), e.b.clone())))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .find(|(a, b)| sigma.parity(a, b) != g.sigma.parity(a, b))
            .unwrap_or_default();
        return GadgetVerdict::reject(Violation::SigmaMismatch {
            declared: g.sigma.parity(&pair.0, &pair.1),
            computed: sigma.parity(&pair.0, &pair.1),
            a: pair.0,
            b: pair.1,
        });
    }
    for (side, omega, anchor) in [(Side::Y, &omega_y, &g.i), (Side::Z, &omega_z, &g.s)] {
        if omega.len() % 2 == 1 {
            return GadgetVerdict::reject(Violation::OddOmega {
                side,
                omega: omega.clone(),
            });
        }
        if !omega.contains(anchor) {
            return GadgetVerdict::reject(Violation::AnchorMissing {
                side,
                anchor: anchor.clone(),
                omega: omega.clone(),
            });
        }
    }
    let parity = |a: &str, b: &str| sigma.parity(a, b).expect("pair in table");
    for o in omega_y.iter().filter(|&o| o != &g.i) {
        for x in omega_z.iter().filter(|&x| x != &g.s) {
            if parity(o, x) == 1 {
                return GadgetVerdict::reject(Violation::OddAwayPair {
                    o: o.clone(),
                    x: x.clone(),
                });
            }
        }
    }
    let anchor_pairs = std::iter::once((g.i.clone(), g.s.clone()))
        .chain(omega_y.iter().filter(|&o| o != &g.i).map(|o| (o.clone(), g.s.clone())))
        .chain(omega_z.iter().filter(|&x| x != &g.s).map(|x| (g.i.clone(), x.clone())));
    for (a, b) in anchor_pairs {
        if parity(&a, &b) == 0 {
            return GadgetVerdict::reject(Violation::EvenAnchorPair { a, b });
        }
    }
    GadgetVerdict::Accepted
}
