use std::f64::consts::PI;

use num_complex::Complex64;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported group order.
pub const MAX_GROUP_ORDER: u64 = 4096;
/// Largest supported group exponent (lcm of the cyclic orders).
pub const MAX_EXPONENT: u64 = 64;

/// `Z_{n₁} × … × Z_{n_k}`, identified with its own dual.
///
/// Elements are coordinate vectors `0 ≤ x_j < n_j`, and also flat indices in
/// mixed radix with the last coordinate fastest.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct FiniteGroup {
    orders: Vec<u64>,
    exponent: u64,
}

impl TryFrom<Vec<u64>> for FiniteGroup {
    type Error = Error;

    fn try_from(orders: Vec<u64>) -> Result<Self> {
        FiniteGroup::new(orders)
    }
}

impl From<FiniteGroup> for Vec<u64> {
    fn from(g: FiniteGroup) -> Self {
        g.orders
    }
}

impl FiniteGroup {
    pub fn new(orders: Vec<u64>) -> Result<Self> {
        if orders.is_empty() || orders.contains(&0) {
            return Err(Error::InvalidForm(format!(
                "cyclic orders must be a nonempty list of positive integers, got {orders:?}"
            )));
        }
        let size = orders
            .iter()
            .try_fold(1u64, |acc, &n| acc.checked_mul(n))
            .filter(|&s| s <= MAX_GROUP_ORDER);
        if size.is_none() {
            return Err(Error::GroupTooLarge(format!(
                "order of {orders:?} exceeds {MAX_GROUP_ORDER}"
            )));
        }
        let exponent = orders.iter().fold(1u64, |acc, n| acc.lcm(n));
        if exponent > MAX_EXPONENT {
            return Err(Error::GroupTooLarge(format!(
                "exponent {exponent} of {orders:?} exceeds {MAX_EXPONENT}"
            )));
        }
        Ok(FiniteGroup { orders, exponent })
    }

    pub fn cyclic(n: u64) -> Result<Self> {
        Self::new(vec![n])
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn order(&self) -> usize {
        self.orders.iter().product::<u64>() as usize
    }

    pub fn element(&self, mut index: usize) -> Vec<u64> {
        let mut out = vec![0; self.orders.len()];
        for (slot, &n) in out.iter_mut().zip(&self.orders).rev() {
            *slot = (index as u64) % n;
            index /= n as usize;
        }
        out
    }

    pub fn index(&self, x: &[u64]) -> Result<usize> {
        if x.len() != self.orders.len() {
            return Err(Error::dims(self.orders.len(), x.len()));
        }
        let mut idx = 0usize;
        for (&c, &n) in x.iter().zip(&self.orders) {
            if c >= n {
                return Err(Error::InvalidForm(format!("coordinate {c} is not below {n}")));
            }
            idx = idx * n as usize + c as usize;
        }
        Ok(idx)
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let (x, y) = (self.element(a), self.element(b));
        let sum: Vec<u64> = x
            .iter()
            .zip(&y)
            .zip(&self.orders)
            .map(|((p, q), n)| (p + q) % n)
            .collect();
        self.index(&sum).expect("reduced coordinates")
    }

    pub fn neg(&self, a: usize) -> usize {
        let neg: Vec<u64> = self
            .element(a)
            .iter()
            .zip(&self.orders)
            .map(|(p, n)| (n - p) % n)
            .collect();
        self.index(&neg).expect("reduced coordinates")
    }

    /// Exact phase `k` with `⟨x, ξ⟩ = exp(2πi·k/exponent)`, `0 ≤ k < exponent`.
    pub fn pairing_phase(&self, x: usize, xi: usize) -> u64 {
        let (x, xi) = (self.element(x), self.element(xi));
        x.iter()
            .zip(&xi)
            .zip(&self.orders)
            .map(|((a, b), n)| (a * b % n) * (self.exponent / n))
            .sum::<u64>()
            % self.exponent
    }

    /// `⟨x, ξ⟩ = exp(2πi·Σ x_j ξ_j / n_j)` on flat indices.
    pub fn pairing_index(&self, x: usize, xi: usize) -> Complex64 {
        let k = self.pairing_phase(x, xi);
        Complex64::from_polar(1.0, 2.0 * PI * k as f64 / self.exponent as f64)
    }

    /// Character table `T[ξ][x] = ⟨x, ξ⟩`.
    pub fn character_table(&self) -> Vec<Vec<Complex64>> {
        let n = self.order();
        (0..n)
            .map(|xi| (0..n).map(|x| self.pairing_index(x, xi)).collect())
            .collect()
    }

    /// `"(a,b,…)"`
    pub fn format_element(&self, index: usize) -> String {
        let coords: Vec<String> = self.element(index).iter().map(u64::to_string).collect();
        format!("({})", coords.join(","))
    }

    /// Accepts `"(a,b,…)"` or, for cyclic groups, a bare `"a"`.
    pub fn parse_element(&self, s: &str) -> Result<usize> {
        let inner = s.trim();
        let inner = inner
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .unwrap_or(inner);
        let coords: Vec<u64> = inner
            .split(',')
            .map(|c| {
                c.trim()
                    .parse::<u64>()
                    .map_err(|e| Error::Parse(format!("element {s:?}: {e}")))
            })
            .collect::<Result<_>>()?;
        self.index(&coords)
    }
}

/// `⟨x, ξ⟩` on coordinate vectors.
pub fn pairing(group: &FiniteGroup, x: &[u64], xi: &[u64]) -> Result<Complex64> {
    Ok(group.pairing_index(group.index(x)?, group.index(xi)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() < 1e-12
    }

    #[test]
    fn pairing_examples() {
        let z4 = FiniteGroup::cyclic(4).unwrap();
        assert!(close(pairing(&z4, &[0], &[3]).unwrap(), Complex64::new(1.0, 0.0)));
        assert!(close(pairing(&z4, &[1], &[2]).unwrap(), Complex64::new(-1.0, 0.0)));
        let k4 = FiniteGroup::new(vec![2, 2]).unwrap();
        assert!(close(pairing(&k4, &[1, 1], &[1, 0]).unwrap(), Complex64::new(-1.0, 0.0)));
    }

    #[test]
    fn bicharacter_and_negation() {
        let g = FiniteGroup::new(vec![3, 4]).unwrap();
        let n = g.order();
        for x in 0..n {
            assert_eq!(g.neg(g.neg(x)), x);
            for y in 0..n {
                for xi in (0..n).step_by(5) {
                    let lhs = g.pairing_index(g.add(x, y), xi);
                    let rhs = g.pairing_index(x, xi) * g.pairing_index(y, xi);
                    assert!(close(lhs, rhs));
                }
                assert!(close(g.pairing_index(x, y), g.pairing_index(y, x)));
            }
        }
    }

    #[test]
    fn indexing_round_trip() {
        let g = FiniteGroup::new(vec![2, 3, 5]).unwrap();
        for i in 0..g.order() {
            assert_eq!(g.index(&g.element(i)).unwrap(), i);
            assert_eq!(g.parse_element(&g.format_element(i)).unwrap(), i);
        }
        assert_eq!(g.element(1), vec![0, 0, 1]);
        let z7 = FiniteGroup::cyclic(7).unwrap();
        assert_eq!(z7.parse_element("5").unwrap(), 5);
        assert!(z7.parse_element("(7)").is_err());
    }

    #[test]
    fn size_limits() {
        assert!(matches!(FiniteGroup::cyclic(65), Err(Error::GroupTooLarge(_))));
        assert!(matches!(
            FiniteGroup::new(vec![64, 64, 2]),
            Err(Error::GroupTooLarge(_))
        ));
        assert!(FiniteGroup::new(vec![]).is_err());
        assert!(FiniteGroup::new(vec![64, 64]).is_ok());
    }
}
