use std::cmp::Ordering;

use smallvec::SmallVec;

use super::var::{VarId, VarSet};

/// Exponent vector indexed by [`VarId`], with trailing zeros trimmed so that
/// equal monomials have identical representations.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial {
    exps: SmallVec<[u32; 8]>,
}

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn var(v: VarId, e: u32) -> Self {
        let mut m = Self::one();
        m.set(v, e);
        m
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        let mut m = Monomial {
            exps: SmallVec::from_slice(exps),
        };
        m.trim();
        m
    }

    fn trim(&mut self) {
        while self.exps.last() == Some(&0) {
            self.exps.pop();
        }
    }

    #[inline]
    pub fn exp(&self, v: VarId) -> u32 {
        self.exps.get(v.index()).copied().unwrap_or(0)
    }

    pub fn set(&mut self, v: VarId, e: u32) {
        let i = v.index();
        if e == 0 {
            if i < self.exps.len() {
                self.exps[i] = 0;
                self.trim();
            }
            return;
        }
        if self.exps.len() <= i {
            self.exps.resize(i + 1, 0);
        }
        self.exps[i] = e;
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    #[inline]
    pub fn total_degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn degree_in(&self, vars: VarSet) -> u32 {
        self.exps
            .iter()
            .enumerate()
            .filter(|(i, _)| vars.contains_index(*i))
            .map(|(_, e)| *e)
            .sum()
    }

    pub fn vars(&self) -> VarSet {
        let mut s = VarSet::EMPTY;
        for (i, e) in self.exps.iter().enumerate() {
            if *e > 0 {
                s.insert(VarId(i as u16));
            }
        }
        s
    }

    /// Keeps only the exponents of `vars`.
    pub fn restrict(&self, vars: VarSet) -> Monomial {
        let mut m = self.clone();
        for (i, e) in m.exps.iter_mut().enumerate() {
            if !vars.contains_index(i) {
                *e = 0;
            }
        }
        m.trim();
        m
    }

    /// Drops the exponents of `vars`.
    pub fn remove(&self, vars: VarSet) -> Monomial {
        let mut m = self.clone();
        for (i, e) in m.exps.iter_mut().enumerate() {
            if vars.contains_index(i) {
                *e = 0;
            }
        }
        m.trim();
        m
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (long, short) = if self.exps.len() >= other.exps.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut exps = long.exps.clone();
        for (a, b) in exps.iter_mut().zip(short.exps.iter()) {
            *a = a.checked_add(*b).expect("exponent overflow");
        }
        Monomial { exps }
    }

    /// `self / other` if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if other.exps.len() > self.exps.len() {
            return None;
        }
        let mut exps = self.exps.clone();
        for (a, b) in exps.iter_mut().zip(other.exps.iter()) {
            if *a < *b {
                return None;
            }
            *a -= *b;
        }
        let mut m = Monomial { exps };
        m.trim();
        Some(m)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.len() <= other.exps.len()
            && self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut exps: SmallVec<[u32; 8]> = self
            .exps
            .iter()
            .zip(other.exps.iter())
            .map(|(a, b)| *a.min(b))
            .collect();
        while exps.last() == Some(&0) {
            exps.pop();
        }
        Monomial { exps }
    }

    pub fn pow(&self, e: u32) -> Monomial {
        let mut m = self.clone();
        for x in m.exps.iter_mut() {
            *x = x.checked_mul(e).expect("exponent overflow");
        }
        if e == 0 {
            m.exps.clear();
        }
        m
    }
}

impl Ord for Monomial {
    /// Graded lexicographic order with `y1 > y2 > ... > t > params`.
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| {
                let n = self.exps.len().max(other.exps.len());
                for i in 0..n {
                    let a = self.exps.get(i).copied().unwrap_or(0);
                    let b = other.exps.get(i).copied().unwrap_or(0);
                    match a.cmp(&b) {
                        Ordering::Equal => continue,
                        o => return o,
                    }
                }
                Ordering::Equal
            })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grlex_ordering() {
        let y1 = Monomial::var(VarId::Y1, 1);
        let y2 = Monomial::var(VarId::Y2, 1);
        let y2sq = Monomial::var(VarId::Y2, 2);
        assert!(y1 > y2);
        assert!(y2sq > y1);
        assert!(y1.mul(&y2) < Monomial::var(VarId::Y1, 2));
        assert!(Monomial::one() < y2);
    }

    #[test]
    fn trailing_zeros_are_canonical() {
        let a = Monomial::from_exponents(&[1, 0, 0, 0]);
        let b = Monomial::var(VarId::Y1, 1);
        assert_eq!(a, b);
        let c = Monomial::from_exponents(&[1, 2]).div(&Monomial::var(VarId::Y2, 2));
        assert_eq!(c, Some(b));
    }

    #[test]
    fn division_and_gcd() {
        let a = Monomial::from_exponents(&[2, 1, 3]);
        let b = Monomial::from_exponents(&[1, 2]);
        assert_eq!(a.gcd(&b), Monomial::from_exponents(&[1, 1]));
        assert!(a.div(&b).is_none());
        assert!(Monomial::from_exponents(&[1, 1]).divides(&a));
    }
}
