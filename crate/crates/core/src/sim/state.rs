use crate::algebra::check_dim;
use crate::error::{Error, Result};
use crate::lattice::LocalOperator;
use crate::linalg::{inner, norm, C64, ONE, ZERO};

/// Pure state of `n` qudits of dimension `d`, stored densely.
///
/// Amplitude index is little-endian in qudit order: `Σ_e a_e d^e`.
#[derive(Clone, Debug, PartialEq)]
pub struct PureState {
    d: usize,
    n: usize,
    amps: Vec<C64>,
}

pub fn check_budget(d: usize, n: usize, budget: usize) -> Result<usize> {
    let size = (d as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if size > budget as u128 {
        return Err(Error::Budget { amplitudes: size, budget });
    }
    Ok(size as usize)
}

impl PureState {
    /// `|0…0⟩` on `n` qudits.
    pub fn zeros(d: usize, n: usize, budget: usize) -> Result<Self> {
        check_dim(d)?;
        let size = check_budget(d, n, budget)?;
        let mut amps = vec![ZERO; size];
        amps[0] = ONE;
        Ok(PureState { d, n, amps })
    }

    /// Computational basis state with the given digits (one per qudit).
    pub fn basis(d: usize, digits: &[usize], budget: usize) -> Result<Self> {
        let mut s = Self::zeros(d, digits.len(), budget)?;
        s.amps[0] = ZERO;
        let idx = digits.iter().rev().fold(0, |acc, x| acc * d + x % d);
        s.amps[idx] = ONE;
        Ok(s)
    }

    pub fn from_amps(d: usize, n: usize, amps: Vec<C64>) -> Result<Self> {
        check_dim(d)?;
        if (d as u128).checked_pow(n as u32) != Some(amps.len() as u128) {
            return Err(Error::Shape(format!("{} amplitudes for {n} qudits of dimension {d}", amps.len())));
        }
        Ok(PureState { d, n, amps })
    }

    /// Product state from one single-qudit vector per qudit.
    pub fn product(d: usize, factors: &[Vec<C64>], budget: usize) -> Result<Self> {
        let mut s = PureState::from_amps(d, 0, vec![ONE])?;
        for f in factors {
            s = s.adjoin(f, budget)?;
        }
        Ok(s)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn qudits(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    pub fn into_amplitudes(self) -> Vec<C64> {
        self.amps
    }

    pub fn digit(&self, index: usize, qudit: usize) -> usize {
        (index / self.d.pow(qudit as u32)) % self.d
    }

    pub fn norm(&self) -> f64 {
        norm(&self.amps)
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn normalized(mut self) -> Result<Self> {
        let n = self.norm();
        if n == 0.0 {
            return Err(Error::ZeroProjection("cannot normalize the zero vector".into()));
        }
        self.amps.iter_mut().for_each(|a| *a /= n);
        Ok(self)
    }

    pub fn scale(&mut self, s: C64) {
        self.amps.iter_mut().for_each(|a| *a *= s);
    }

    /// `⟨self|other⟩`.
    pub fn overlap(&self, other: &PureState) -> Result<C64> {
        if self.d != other.d || self.n != other.n {
            return Err(Error::Shape(format!("overlap of {} and {} qudits", self.n, other.n)));
        }
        Ok(inner(&self.amps, &other.amps))
    }

    pub fn apply(&mut self, op: &LocalOperator) -> Result<()> {
        if op.d != self.d {
            return Err(Error::DimensionMismatch(op.d, self.d));
        }
        self.amps = op.apply(&self.amps, self.n)?;
        Ok(())
    }

    pub fn applied(&self, op: &LocalOperator) -> Result<PureState> {
        let mut s = self.clone();
        s.apply(op)?;
        Ok(s)
    }

    /// Appends one qudit in the (not necessarily normalized) state `v`; it
    /// becomes the last, most significant qudit.
    pub fn adjoin(&self, v: &[C64], budget: usize) -> Result<PureState> {
        if v.len() != self.d {
            return Err(Error::Shape(format!("single-qudit vector of length {} for d={}", v.len(), self.d)));
        }
        check_budget(self.d, self.n + 1, budget)?;
        let mut amps = Vec::with_capacity(self.amps.len() * self.d);
        for c in v {
            amps.extend(self.amps.iter().map(|a| a * c));
        }
        Ok(PureState { d: self.d, n: self.n + 1, amps })
    }

    /// `self ⊗ other`, with `other`'s qudits placed after this state's.
    pub fn tensor(&self, other: &PureState, budget: usize) -> Result<PureState> {
        if self.d != other.d {
            return Err(Error::DimensionMismatch(self.d, other.d));
        }
        check_budget(self.d, self.n + other.n, budget)?;
        let mut amps = Vec::with_capacity(self.amps.len() * other.amps.len());
        for b in &other.amps {
            amps.extend(self.amps.iter().map(|a| a * b));
        }
        Ok(PureState { d: self.d, n: self.n + other.n, amps })
    }

    /// Contracts qudit `q` with the bra `⟨v|`, removing it.
    pub fn contract(&self, q: usize, v: &[C64]) -> Result<PureState> {
        if q >= self.n {
            return Err(Error::Support { index: q, edges: self.n });
        }
        if v.len() != self.d {
            return Err(Error::Shape(format!("single-qudit vector of length {} for d={}", v.len(), self.d)));
        }
        let d = self.d;
        let low = d.pow(q as u32);
        let size = self.amps.len() / d;
        let mut amps = vec![ZERO; size];
        for (i, out) in amps.iter_mut().enumerate() {
            let (lo, hi) = (i % low, i / low);
            *out = (0..d).map(|k| v[k].conj() * self.amps[lo + low * (k + d * hi)]).sum();
        }
        Ok(PureState { d, n: self.n - 1, amps })
    }

    /// Reorders qudits: new qudit `i` is old qudit `order[i]`.
    pub fn permute(&self, order: &[usize]) -> Result<PureState> {
        let mut seen = vec![false; self.n];
        if order.len() != self.n || order.iter().any(|q| *q >= self.n || std::mem::replace(&mut seen[*q], true)) {
            return Err(Error::Shape(format!("{order:?} is not a permutation of {} qudits", self.n)));
        }
        let d = self.d;
        let strides: Vec<usize> = order.iter().map(|q| d.pow(*q as u32)).collect();
        let mut amps = vec![ZERO; self.amps.len()];
        for (i, out) in amps.iter_mut().enumerate() {
            let mut rest = i;
            let mut old = 0;
            for s in &strides {
                old += (rest % d) * s;
                rest /= d;
            }
            *out = self.amps[old];
        }
        Ok(PureState { d, n: self.n, amps })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{Action, LocalOperator};

    const BIG: usize = 1 << 20;

    #[test]
    fn basis_is_little_endian() {
        let s = PureState::basis(3, &[1, 2], BIG).unwrap();
        assert_eq!(s.amplitudes()[1 + 3 * 2], ONE);
        assert_eq!(s.digit(7, 0), 1);
        assert_eq!(s.digit(7, 1), 2);
    }

    #[test]
    fn adjoin_then_contract_roundtrips() {
        let s = PureState::basis(3, &[2, 0, 1], BIG).unwrap();
        let v = [ZERO, ONE, ZERO];
        let t = s.adjoin(&v, BIG).unwrap();
        assert_eq!(t.qudits(), 4);
        let back = t.contract(3, &v).unwrap();
        assert_eq!(back, s);
        let mid = t.contract(1, &[ONE, ZERO, ZERO]).unwrap();
        assert_eq!(mid, PureState::basis(3, &[2, 1, 1], BIG).unwrap());
    }

    #[test]
    fn permute_moves_digits() {
        let s = PureState::basis(4, &[1, 2, 3], BIG).unwrap();
        let p = s.permute(&[2, 0, 1]).unwrap();
        assert_eq!(p, PureState::basis(4, &[3, 1, 2], BIG).unwrap());
        assert!(s.permute(&[0, 0, 1]).is_err());
    }

    #[test]
    fn apply_shift() {
        let mut s = PureState::zeros(5, 2, BIG).unwrap();
        s.apply(&LocalOperator::new(5, vec![1], vec![-1], Action::shift_by(5, 2))).unwrap();
        assert_eq!(s, PureState::basis(5, &[0, 3], BIG).unwrap());
    }

    #[test]
    fn budget_enforced() {
        assert!(matches!(PureState::zeros(4, 13, 1 << 24), Err(Error::Budget { .. })));
    }
}
