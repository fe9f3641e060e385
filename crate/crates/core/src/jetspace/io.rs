//! JSON interchange for metric jet points.
//!
//! Shape:
//! ```json
//! {
//!   "n": 2, "r": 1, "signature": [2, 0],
//!   "coords": [ {"j": 1, "k": 2, "alpha": [1, 0], "value": "-3/2"}, … ]
//! }
//! ```
//! Indices j, k are 1-based; `alpha` has length n; `value` is `"p"` or
//! `"p/q"`.  Coordinates omitted on input default to zero; export writes the
//! nonzero coordinates in storage order.  The declared signature must match
//! the zero-jet block, which must be invertible.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{signature_of, JetCoords, JetError, MetricJetPoint, sym_pairs};
use crate::exact::{format_rational, parse_rational, Rational};
use crate::multiindex::MultiIndex;

#[derive(Serialize, Deserialize)]
struct MetricJetPointJson {
    n: usize,
    r: u32,
    signature: [usize; 2],
    coords: Vec<CoordJson>,
}

#[derive(Serialize, Deserialize)]
struct CoordJson {
    j: usize,
    k: usize,
    alpha: Vec<u32>,
    value: String,
}

pub fn metric_point_to_json(point: &MetricJetPoint) -> String {
    let n = point.n();
    let mut coords = Vec::new();
    for (j, k) in sym_pairs(n) {
        for alpha in point.coords().index_set().iter() {
            let v = point.get(j, k, alpha);
            if !v.is_zero() {
                coords.push(CoordJson {
                    j: j + 1,
                    k: k + 1,
                    alpha: alpha.entries().to_vec(),
                    value: format_rational(v),
                });
            }
        }
    }
    let doc = MetricJetPointJson {
        n,
        r: point.r(),
        signature: [point.signature().0, point.signature().1],
        coords,
    };
    serde_json::to_string_pretty(&doc).expect("serialization cannot fail")
}

pub fn metric_point_from_json(text: &str) -> Result<MetricJetPoint, JetError> {
    let doc: MetricJetPointJson = serde_json::from_str(text)?;
    if doc.n == 0 {
        return Err(JetError::ZeroDimension);
    }
    let mut coords = JetCoords::<Rational>::zero(doc.n, doc.r);
    let mut seen = std::collections::HashSet::new();
    for c in &doc.coords {
        if c.j == 0 || c.j > doc.n || c.k == 0 || c.k > doc.n {
            return Err(JetError::PairOutOfRange(c.j, c.k, doc.n));
        }
        let alpha = MultiIndex::new(c.alpha.clone());
        if alpha.dim() != doc.n || alpha.order() > doc.r {
            return Err(JetError::BadMultiIndex(alpha.to_string(), doc.n, doc.r));
        }
        let (j, k) = (c.j.min(c.k) - 1, c.j.max(c.k) - 1);
        if !seen.insert((j, k, alpha.clone())) {
            return Err(JetError::DuplicateCoord(j + 1, k + 1, alpha.to_string()));
        }
        coords.set_coord(j, k, &alpha, parse_rational(&c.value)?);
    }
    let computed = signature_of(&coords.zero_jet())?;
    if computed != (doc.signature[0], doc.signature[1]) {
        return Err(JetError::SignatureMismatch(
            doc.signature[0],
            doc.signature[1],
            computed.0,
            computed.1,
        ));
    }
    MetricJetPoint::from_coords(coords)
}
