use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{shape, Error, Result};

use super::set::{FinMap, FinSet};

/// The limit shapes the probes are built from. Together they generate all
/// finite limits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LimitShape {
    Terminal,
    Product,
    Equalizer,
    Pullback,
}

impl LimitShape {
    pub const ALL: [LimitShape; 4] = [
        LimitShape::Terminal,
        LimitShape::Product,
        LimitShape::Equalizer,
        LimitShape::Pullback,
    ];

    pub fn name(self) -> &'static str {
        match self {
            LimitShape::Terminal => "terminal",
            LimitShape::Product => "product",
            LimitShape::Equalizer => "equalizer",
            LimitShape::Pullback => "pullback",
        }
    }
}

impl fmt::Display for LimitShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for LimitShape {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        LimitShape::ALL
            .into_iter()
            .find(|shape| shape.name() == s)
            .ok_or_else(|| Error::UnsupportedShape(s.to_string()))
    }
}

/// A finite diagram of sets of one of the supported shapes.
#[derive(Clone, Debug)]
pub enum LimitDiagram {
    Terminal,
    Product(FinSet, FinSet),
    /// Parallel pair `A ⇉ B`.
    Equalizer(FinMap, FinMap),
    /// Cospan `A → C ← B`.
    Pullback(FinMap, FinMap),
}

impl LimitDiagram {
    pub fn shape(&self) -> LimitShape {
        match self {
            LimitDiagram::Terminal => LimitShape::Terminal,
            LimitDiagram::Product(..) => LimitShape::Product,
            LimitDiagram::Equalizer(..) => LimitShape::Equalizer,
            LimitDiagram::Pullback(..) => LimitShape::Pullback,
        }
    }

    /// Objects whose cone legs are returned by [`finite_limit`], in order.
    pub fn leg_targets(&self) -> Vec<FinSet> {
        match self {
            LimitDiagram::Terminal => vec![],
            LimitDiagram::Product(a, b) => vec![a.clone(), b.clone()],
            LimitDiagram::Equalizer(f, _) => vec![f.dom().clone()],
            LimitDiagram::Pullback(f, g) => vec![f.dom().clone(), g.dom().clone()],
        }
    }

    /// Whether a family of maps out of a common apex is a cone over the diagram.
    pub fn is_cone(&self, legs: &[FinMap]) -> bool {
        match self {
            LimitDiagram::Terminal => legs.is_empty(),
            LimitDiagram::Product(..) => legs.len() == 2,
            LimitDiagram::Equalizer(f, g) => {
                legs.len() == 1 && legs[0].table().iter().all(|&x| f.apply(x) == g.apply(x))
            }
            LimitDiagram::Pullback(f, g) => {
                legs.len() == 2
                    && legs[0].dom().size() == legs[1].dom().size()
                    && legs[0]
                        .table()
                        .iter()
                        .zip(legs[1].table())
                        .all(|(&a, &b)| f.apply(a) == g.apply(b))
            }
        }
    }
}

/// A limit apex together with its legs, in the order of
/// [`LimitDiagram::leg_targets`].
#[derive(Clone, Debug)]
pub struct LimitCone {
    pub apex: FinSet,
    pub legs: Vec<FinMap>,
}

impl LimitCone {
    /// The unique element of the apex whose leg images are `coords`, if any.
    pub fn element_with(&self, coords: &[usize]) -> Option<usize> {
        self.apex.indices().find(|&p| {
            self.legs
                .iter()
                .zip(coords)
                .all(|(leg, &c)| leg.apply(p) == c)
        })
    }

    /// Mediating map from a competing cone with apex `apex`.
    pub fn mediate(&self, apex: &FinSet, legs: &[FinMap]) -> Option<FinMap> {
        let table = apex
            .indices()
            .map(|p| {
                let coords: Vec<usize> = legs.iter().map(|l| l.apply(p)).collect();
                self.element_with(&coords)
            })
            .collect::<Option<Vec<_>>>()?;
        Some(FinMap::from_parts(apex.clone(), self.apex.clone(), table))
    }
}

/// Standard construction of the limit of a finite diagram of sets.
pub fn finite_limit(diagram: &LimitDiagram) -> Result<LimitCone> {
    match diagram {
        LimitDiagram::Terminal => Ok(LimitCone {
            apex: FinSet::singleton(),
            legs: vec![],
        }),
        LimitDiagram::Product(a, b) => {
            let mut labels = Vec::with_capacity(a.size() * b.size());
            let (mut pa, mut pb) = (Vec::new(), Vec::new());
            for i in a.indices() {
                for j in b.indices() {
                    labels.push(format!("({},{})", a.label(i), b.label(j)));
                    pa.push(i);
                    pb.push(j);
                }
            }
            let apex = FinSet::from_generated(labels);
            Ok(LimitCone {
                legs: vec![
                    FinMap::from_parts(apex.clone(), a.clone(), pa),
                    FinMap::from_parts(apex.clone(), b.clone(), pb),
                ],
                apex,
            })
        }
        LimitDiagram::Equalizer(f, g) => {
            if f.dom().size() != g.dom().size() || f.cod().size() != g.cod().size() {
                return Err(shape("equalizer needs a parallel pair"));
            }
            let members: Vec<usize> = f
                .dom()
                .indices()
                .filter(|&x| f.apply(x) == g.apply(x))
                .collect();
            let apex = FinSet::from_distinct(
                members
                    .iter()
                    .map(|&x| f.dom().label(x).to_string())
                    .collect(),
            );
            Ok(LimitCone {
                legs: vec![FinMap::from_parts(apex.clone(), f.dom().clone(), members)],
                apex,
            })
        }
        LimitDiagram::Pullback(f, g) => {
            if f.cod().size() != g.cod().size() {
                return Err(shape("pullback needs a cospan with a shared codomain"));
            }
            let mut labels = Vec::new();
            let (mut pa, mut pb) = (Vec::new(), Vec::new());
            for i in f.dom().indices() {
                for j in g.dom().indices() {
                    if f.apply(i) == g.apply(j) {
                        labels.push(format!("({},{})", f.dom().label(i), g.dom().label(j)));
                        pa.push(i);
                        pb.push(j);
                    }
                }
            }
            let apex = FinSet::from_generated(labels);
            Ok(LimitCone {
                legs: vec![
                    FinMap::from_parts(apex.clone(), f.dom().clone(), pa),
                    FinMap::from_parts(apex.clone(), g.dom().clone(), pb),
                ],
                apex,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn terminal_is_a_singleton() {
        assert_eq!(
            finite_limit(&LimitDiagram::Terminal).unwrap().apex.size(),
            1
        );
    }

    #[test]
    fn product_cardinality() {
        let a = FinSet::new(["0", "1"]).unwrap();
        let b = FinSet::new(["a", "b", "c"]).unwrap();
        let cone = finite_limit(&LimitDiagram::Product(a, b)).unwrap();
        assert_eq!(cone.apex.size(), 6);
        assert_eq!(cone.apex.label(4), "(1,b)");
    }

    #[test]
    fn pullback_over_a_point() {
        let f = FinMap::new(
            FinSet::new(["x", "y"]).unwrap(),
            FinSet::range(1),
            vec![0, 0],
        )
        .unwrap();
        let g = FinMap::new(FinSet::new(["z"]).unwrap(), FinSet::range(1), vec![0]).unwrap();
        let cone = finite_limit(&LimitDiagram::Pullback(f, g)).unwrap();
        assert_eq!(cone.apex.size(), 2);
    }

    #[test]
    fn unknown_shape_name() {
        assert_eq!(
            "wide_pullback".parse::<LimitShape>().unwrap_err(),
            Error::UnsupportedShape("wide_pullback".into())
        );
    }
}
