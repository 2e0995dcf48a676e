use std::collections::BTreeMap;

use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::group::FiniteGroup;
use crate::error::{Error, Result};
use crate::linear::Rational;

/// Nonnegative rational weights on a finite group, stored densely by flat index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Measure {
    group: FiniteGroup,
    weights: Vec<Rational>,
}

impl Measure {
    pub fn new(group: FiniteGroup, weights: Vec<Rational>) -> Result<Self> {
        if weights.len() != group.order() {
            return Err(Error::dims(group.order(), weights.len()));
        }
        if let Some(bad) = weights.iter().find(|w| w.is_negative()) {
            return Err(Error::InvalidForm(format!("negative weight {bad}")));
        }
        Ok(Measure { group, weights })
    }

    pub fn zero(group: &FiniteGroup) -> Self {
        Measure {
            weights: vec![Rational::zero(); group.order()],
            group: group.clone(),
        }
    }

    /// `scale` times counting measure on `support` (flat indices).
    pub fn counting_on(group: &FiniteGroup, support: &[usize], scale: Rational) -> Result<Self> {
        let mut m = Measure::zero(group);
        for &i in support {
            if i >= group.order() {
                return Err(Error::InvalidForm(format!("element index {i} out of range")));
            }
            m.weights[i] = scale.clone();
        }
        Ok(m)
    }

    /// Counting measure on the whole group (the Haar normalization).
    pub fn counting(group: &FiniteGroup) -> Self {
        Measure {
            weights: vec![Rational::one(); group.order()],
            group: group.clone(),
        }
    }

    /// `(1/|G|)·counting`, the dual Haar normalization.
    pub fn dual_haar(group: &FiniteGroup) -> Self {
        let w = Rational::frac(1, group.order() as i64);
        Measure {
            weights: vec![w; group.order()],
            group: group.clone(),
        }
    }

    pub fn dirac(group: &FiniteGroup, at: usize) -> Result<Self> {
        Self::counting_on(group, &[at], Rational::one())
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn weight(&self, index: usize) -> &Rational {
        &self.weights[index]
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.weights.len())
            .filter(|&i| !self.weights[i].is_zero())
            .collect()
    }

    pub fn total_mass(&self) -> Rational {
        self.weights.iter().sum()
    }

    pub fn mass_of(&self, set: &[usize]) -> Rational {
        set.iter().map(|&i| &self.weights[i]).sum()
    }

    /// `μ ∘ (x ↦ −x)`.
    pub fn reflect(&self) -> Measure {
        let weights = (0..self.weights.len())
            .map(|i| self.weights[self.group.neg(i)].clone())
            .collect();
        Measure {
            group: self.group.clone(),
            weights,
        }
    }

    /// `(μ∗ν)(x) = Σ_y μ(y)·ν(x − y)`.
    pub fn convolve(&self, other: &Measure) -> Result<Measure> {
        if self.group != other.group {
            return Err(Error::GroupMismatch);
        }
        let mut out = Measure::zero(&self.group);
        for y in self.support() {
            for z in other.support() {
                let x = self.group.add(y, z);
                out.weights[x] += &(&self.weights[y] * &other.weights[z]);
            }
        }
        Ok(out)
    }
}

/// `μ̃ = μ ∘ m⁻¹` with `m(x) = −x`.
pub fn reflect_measure(mu: &Measure) -> Measure {
    mu.reflect()
}

/// True iff `μ∗ν` is counting measure, i.e. equals 1 at every element.
pub fn is_tiling_pair_measures(mu: &Measure, nu: &Measure) -> Result<bool> {
    let conv = mu.convolve(nu)?;
    let one = Rational::one();
    Ok(conv.weights.iter().all(|w| w == &one))
}

impl Serialize for Measure {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        struct Weights<'a>(&'a Measure);
        impl Serialize for Weights<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                let support = self.0.support();
                let mut map = s.serialize_map(Some(support.len()))?;
                for i in support {
                    map.serialize_entry(&self.0.group.format_element(i), &self.0.weights[i])?;
                }
                map.end()
            }
        }
        let mut map = serializer.serialize_map(Some(2))?;
        map.serialize_entry("group", self.group.orders())?;
        map.serialize_entry("weights", &Weights(self))?;
        map.end()
    }
}

#[derive(Deserialize)]
struct MeasureRepr {
    group: FiniteGroup,
    weights: BTreeMap<String, Rational>,
}

impl<'de> Deserialize<'de> for Measure {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = MeasureRepr::deserialize(deserializer)?;
        let mut m = Measure::zero(&repr.group);
        for (key, w) in repr.weights {
            let i = repr
                .group
                .parse_element(&key)
                .map_err(serde::de::Error::custom)?;
            if w.is_negative() {
                return Err(serde::de::Error::custom(format!("negative weight {w} at {key}")));
            }
            m.weights[i] = w;
        }
        Ok(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u64) -> FiniteGroup {
        FiniteGroup::cyclic(n).unwrap()
    }

    fn counting(g: &FiniteGroup, s: &[usize]) -> Measure {
        Measure::counting_on(g, s, Rational::one()).unwrap()
    }

    #[test]
    fn reflection_examples() {
        let g = z(4);
        assert_eq!(reflect_measure(&counting(&g, &[1])), counting(&g, &[3]));
        let sym = counting(&g, &[1, 3]);
        assert_eq!(reflect_measure(&sym), sym);
        assert_eq!(reflect_measure(&counting(&g, &[0, 1])), counting(&g, &[0, 3]));
    }

    #[test]
    fn tiling_examples() {
        let g = z(4);
        assert!(is_tiling_pair_measures(&counting(&g, &[0, 1]), &counting(&g, &[0, 2])).unwrap());
        assert!(!is_tiling_pair_measures(&counting(&g, &[0, 2]), &counting(&g, &[0, 2])).unwrap());
        let delta = Measure::dirac(&g, 0).unwrap();
        assert!(is_tiling_pair_measures(&delta, &Measure::counting(&g)).unwrap());
        assert_eq!(
            is_tiling_pair_measures(&delta, &Measure::counting(&z(5))),
            Err(Error::GroupMismatch)
        );
    }

    #[test]
    fn json_round_trip() {
        let g = FiniteGroup::new(vec![2, 3]).unwrap();
        let mut w = vec![Rational::zero(); 6];
        w[4] = Rational::frac(1, 2);
        w[0] = Rational::frac(3, 1);
        let m = Measure::new(g, w).unwrap();
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, r#"{"group":[2,3],"weights":{"(0,0)":"3","(1,1)":"1/2"}}"#);
        let back: Measure = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
        let bad = r#"{"group":[2,3],"weights":{"(0,0)":"-1"}}"#;
        assert!(serde_json::from_str::<Measure>(bad).is_err());
    }
}
