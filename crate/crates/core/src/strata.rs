//! Strata of jet space and their defining equations.
//!
//! Equations are polynomial in the Monge–Taylor coordinates (a_i; b_i), so
//! they are generic over the scalar type and exact for rational input.

use crate::jet::{Jet, JetError};
use crate::mink::JetCoords;
use crate::scalar::Scalar;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum StratumId {
    /// Cusp.
    C,
    /// Ramphoid cusp.
    RC,
    /// Cusp with lightlike limiting tangent.
    LC,
    /// Lightlike point.
    L,
    /// Inflection of order k.
    I(u32),
    /// Lightlike inflection of order k.
    LI(u32),
    /// Vertex of order k.
    V(u32),
    /// Self-intersection through an inflection.
    IT,
    /// Self-intersection through a vertex.
    VT,
    /// Self-intersection through a lightlike point.
    LT,
    /// Tangential self-intersection (tacnode).
    Tc,
}

impl StratumId {
    pub fn is_bilocal(self) -> bool {
        matches!(self, StratumId::IT | StratumId::VT | StratumId::LT | StratumId::Tc)
    }

    /// Jet order the residual reads up to.
    pub fn required_order(self) -> usize {
        match self {
            StratumId::C | StratumId::L | StratumId::Tc | StratumId::LT => 1,
            StratumId::LC => 2,
            StratumId::RC => 3,
            StratumId::I(1) | StratumId::IT => 2,
            StratumId::I(k) => k as usize + 1,
            StratumId::LI(k) => k as usize + 1,
            StratumId::V(1) | StratumId::VT => 3,
            StratumId::V(k) => k as usize + 2,
        }
    }

    /// The codimension-one and -two strata traced in parameter planes.
    pub fn traced() -> [StratumId; 8] {
        [
            StratumId::C,
            StratumId::I(2),
            StratumId::LI(1),
            StratumId::V(2),
            StratumId::IT,
            StratumId::LT,
            StratumId::VT,
            StratumId::Tc,
        ]
    }
}

impl fmt::Display for StratumId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StratumId::C => write!(f, "C"),
            StratumId::RC => write!(f, "RC"),
            StratumId::LC => write!(f, "LC"),
            StratumId::L => write!(f, "L"),
            StratumId::I(1) => write!(f, "I"),
            StratumId::I(k) => write!(f, "I({k})"),
            StratumId::LI(1) => write!(f, "LI"),
            StratumId::LI(k) => write!(f, "LI({k})"),
            StratumId::V(1) => write!(f, "V"),
            StratumId::V(k) => write!(f, "V({k})"),
            StratumId::IT => write!(f, "IT"),
            StratumId::VT => write!(f, "VT"),
            StratumId::LT => write!(f, "LT"),
            StratumId::Tc => write!(f, "Tc"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
#[error("unknown stratum '{0}'")]
pub struct ParseStratumError(pub String);

impl FromStr for StratumId {
    type Err = ParseStratumError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let with_order = |prefix: &str| -> Option<u32> {
            let rest = s.strip_prefix(prefix)?;
            if rest.is_empty() {
                return Some(1);
            }
            let inner = rest.strip_prefix('(').and_then(|r| r.strip_suffix(')')).unwrap_or(rest);
            inner.parse().ok().filter(|k| *k >= 1)
        };
        Ok(match s {
            "C" => StratumId::C,
            "RC" => StratumId::RC,
            "LC" => StratumId::LC,
            "L" => StratumId::L,
            "IT" => StratumId::IT,
            "VT" => StratumId::VT,
            "LT" => StratumId::LT,
            "Tc" | "TC" => StratumId::Tc,
            _ => {
                if let Some(k) = with_order("LI") {
                    StratumId::LI(k)
                } else if let Some(k) = with_order("I") {
                    StratumId::I(k)
                } else if let Some(k) = with_order("V") {
                    StratumId::V(k)
                } else {
                    return Err(ParseStratumError(s.to_string()));
                }
            }
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StratumError {
    #[error("stratum {stratum} needs jet order {need}, got {have}")]
    InsufficientOrder {
        stratum: StratumId,
        have: usize,
        need: usize,
    },
    #[error("stratum {0} is defined on pairs of jets")]
    NeedsPair(StratumId),
    #[error("stratum {0} is defined on single jets")]
    NeedsSingle(StratumId),
    #[error(transparent)]
    Jet(#[from] JetError),
}

/// Values of a stratum's defining equations.
///
/// Strata with a ± choice (L, LI, LT) carry one component per sign; a point
/// lies on the stratum when every entry of some component vanishes.
#[derive(Clone, Debug, PartialEq)]
pub struct StratumResidual<T = f64> {
    pub components: Vec<Vec<T>>,
}

impl StratumResidual<f64> {
    /// Smallest over components of the largest |entry|.
    pub fn distance(&self) -> f64 {
        self.components
            .iter()
            .map(|c| c.iter().fold(0.0f64, |m, v| m.max(v.abs())))
            .fold(f64::INFINITY, f64::min)
    }

    pub fn vanishes(&self, tol: f64) -> bool {
        self.distance() <= tol
    }
}

impl<T: Scalar> StratumResidual<T> {
    pub fn is_exactly_zero(&self) -> bool {
        self.components.iter().any(|c| c.iter().all(|v| v.is_zero()))
    }
}

pub enum StratumArgs<'a, T> {
    Single(&'a JetCoords<T>),
    Pair(&'a JetCoords<T>, &'a JetCoords<T>),
}

fn check_order<T: Scalar>(id: StratumId, jc: &JetCoords<T>) -> Result<(), StratumError> {
    let need = id.required_order();
    if jc.order() < need {
        return Err(StratumError::InsufficientOrder {
            stratum: id,
            have: jc.order(),
            need,
        });
    }
    Ok(())
}

/// a1b2 − a2b1
pub fn inflection_eq<T: Scalar>(j: &JetCoords<T>) -> T {
    j.ai(1) * j.bi(2) - j.ai(2) * j.bi(1)
}

/// (a1² − b1²)(a1b3 − a3b1) + 2(b1b2 − a1a2)(a1b2 − a2b1)
pub fn vertex_eq<T: Scalar>(j: &JetCoords<T>) -> T {
    let (a1, a2, a3) = (j.ai(1), j.ai(2), j.ai(3));
    let (b1, b2, b3) = (j.bi(1), j.bi(2), j.bi(3));
    let two = T::from_i64(2);
    (a1.clone() * a1.clone() - b1.clone() * b1.clone())
        * (a1.clone() * b3 - a3 * b1.clone())
        + two * (b1.clone() * b2.clone() - a1.clone() * a2.clone()) * (a1 * b2 - a2 * b1)
}

/// Second V(2) equation of the lightlike-cusp list:
/// (−a1² + b1²)(2(a1b4 − a4b1) + a2b3 − a3b2) − (a1b3 − a3b1)(b1b2 − a1a2)
///   − (a1b2 − a2b1)(3(b1b3 − a1a3) + 2(b2² − a2²)).
/// It equals −½ d/dt of the vertex equation.
pub fn vertex2_eq<T: Scalar>(j: &JetCoords<T>) -> T {
    let (a1, a2, a3, a4) = (j.ai(1), j.ai(2), j.ai(3), j.ai(4));
    let (b1, b2, b3, b4) = (j.bi(1), j.bi(2), j.bi(3), j.bi(4));
    let (two, three) = (T::from_i64(2), T::from_i64(3));
    let q = b1.clone() * b1.clone() - a1.clone() * a1.clone();
    q * (two.clone() * (a1.clone() * b4 - a4 * b1.clone()) + a2.clone() * b3.clone() - a3.clone() * b2.clone())
        - (a1.clone() * b3.clone() - a3.clone() * b1.clone()) * (b1.clone() * b2.clone() - a1.clone() * a2.clone())
        - (a1.clone() * b2.clone() - a2.clone() * b1.clone())
            * (three * (b1 * b3 - a1 * a3) + two * (b2.clone() * b2 - a2.clone() * a2))
}

/// Second V(2) equation as printed in the ramphoid-cusp list:
/// 2(a1b2 − a2b1)[−(−a1² + b1²)(−a2² + b2²) + 5(b1b2 − a1a2)²]
///   + (−a1² + b1²)[(4a2b3 + 4a3b2)a1² − 9(a2a3 + b2b3)a1b1 + (4a2b3 + 5a3b2)b1²]
///   + 2(−a1² + b1²)²(a1b4 − a4b1).
///
/// Kept verbatim for reference. Unlike [`vertex2_eq`] it is not a
/// combination of the vertex equation and its derivative, and it does not
/// vanish on numerically located double vertices, so tracing never uses it.
pub fn ramphoid_list_vertex2_eq<T: Scalar>(j: &JetCoords<T>) -> T {
    let (a1, a2, a3, a4) = (j.ai(1), j.ai(2), j.ai(3), j.ai(4));
    let (b1, b2, b3, b4) = (j.bi(1), j.bi(2), j.bi(3), j.bi(4));
    let n = |v: i64| T::from_i64(v);
    let q = b1.clone() * b1.clone() - a1.clone() * a1.clone();
    let q2 = b2.clone() * b2.clone() - a2.clone() * a2.clone();
    let m = b1.clone() * b2.clone() - a1.clone() * a2.clone();
    let first = n(2)
        * (a1.clone() * b2.clone() - a2.clone() * b1.clone())
        * (-(q.clone() * q2) + n(5) * m.clone() * m);
    let second = q.clone()
        * ((n(4) * a2.clone() * b3.clone() + n(4) * a3.clone() * b2.clone()) * a1.clone() * a1.clone()
            - n(9) * (a2.clone() * a3.clone() + b2.clone() * b3.clone()) * a1.clone() * b1.clone()
            + (n(4) * a2 * b3 + n(5) * a3 * b2) * b1.clone() * b1.clone());
    let third = n(2) * q.clone() * q * (a1 * b4 - a4 * b1);
    first + second + third
}

/// a1b1′ − a1′b1 for a pair of jets.
pub fn tacnode_eq<T: Scalar>(j: &JetCoords<T>, k: &JetCoords<T>) -> T {
    j.ai(1) * k.bi(1) - k.ai(1) * j.bi(1)
}

/// Jets of the κ-numerator and κ′-numerator read off jet coordinates,
/// used for the order-k strata.
fn local_numerators<T: Scalar>(j: &JetCoords<T>) -> (Jet<T>, Jet<T>, Jet<T>) {
    let (x, y) = j.to_jets();
    let (x1, y1) = (x.derivative(), y.derivative());
    let (x2, y2) = (x1.derivative(), y1.derivative());
    let d = &(&y1 * &y1) - &(&x1 * &x1);
    let p = &(&x1 * &y2) - &(&y1 * &x2);
    let w = &(&p * &d.derivative()).scale(&T::from_ratio(3, 2)) - &(&p.derivative() * &d);
    (d, p, w)
}

pub fn stratum_residual<T: Scalar>(
    id: StratumId,
    args: StratumArgs<'_, T>,
) -> Result<StratumResidual<T>, StratumError> {
    let one = |v: Vec<T>| StratumResidual { components: vec![v] };
    if id.is_bilocal() {
        let (j, k) = match args {
            StratumArgs::Pair(j, k) => (j, k),
            StratumArgs::Single(_) => return Err(StratumError::NeedsPair(id)),
        };
        check_order(id, j)?;
        check_order(id, k)?;
        let dx = j.a0.clone() - k.a0.clone();
        let dy = j.b0.clone() - k.b0.clone();
        return Ok(match id {
            StratumId::IT => one(vec![dx, dy, inflection_eq(j)]),
            StratumId::VT => one(vec![dx, dy, vertex_eq(j)]),
            StratumId::LT => StratumResidual {
                components: vec![
                    vec![dx.clone(), dy.clone(), j.ai(1) + j.bi(1)],
                    vec![dx, dy, j.ai(1) - j.bi(1)],
                ],
            },
            StratumId::Tc => one(vec![dx, dy, tacnode_eq(j, k)]),
            _ => unreachable!(),
        });
    }
    let j = match args {
        StratumArgs::Single(j) => j,
        StratumArgs::Pair(..) => return Err(StratumError::NeedsSingle(id)),
    };
    check_order(id, j)?;
    let (a1, b1) = (j.ai(1), j.bi(1));
    Ok(match id {
        StratumId::C => one(vec![a1, b1]),
        StratumId::LC => one(vec![a1, b1, j.ai(2) - j.bi(2)]),
        StratumId::RC => one(vec![a1, b1, j.ai(2) * j.bi(3) - j.ai(3) * j.bi(2)]),
        StratumId::L => StratumResidual {
            components: vec![vec![a1.clone() + b1.clone()], vec![a1 - b1]],
        },
        StratumId::I(1) => one(vec![inflection_eq(j)]),
        StratumId::I(2) => one(vec![
            inflection_eq(j),
            j.ai(1) * j.bi(3) - j.ai(3) * j.bi(1),
        ]),
        StratumId::I(k) => {
            let (_, p, _) = local_numerators(j);
            one((0..k as usize).map(|i| p.coeff(i)).collect())
        }
        StratumId::V(1) => one(vec![vertex_eq(j)]),
        StratumId::V(2) => one(vec![vertex_eq(j), vertex2_eq(j)]),
        StratumId::V(k) => {
            let (_, _, w) = local_numerators(j);
            one((0..k as usize).map(|i| w.coeff(i)).collect())
        }
        StratumId::LI(k) => {
            // contact of order k+1 with the tangent line: a1 b_i − a_i b1 = 0, i = 2..k+1
            let contact: Vec<T> = (2..=k as usize + 1)
                .map(|i| j.ai(1) * j.bi(i) - j.ai(i) * j.bi(1))
                .collect();
            let mut plus = vec![a1.clone() + b1.clone()];
            plus.extend(contact.iter().cloned());
            let mut minus = vec![a1 - b1];
            minus.extend(contact);
            StratumResidual {
                components: vec![plus, minus],
            }
        }
        _ => unreachable!(),
    })
}
