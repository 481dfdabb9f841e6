//! Dense univariate view over a multivariate coefficient ring.

use num_traits::One;

use super::division::exact_div;
use super::polynomial::Poly;
use super::var::VarId;
use super::PolyError;

/// `coeffs[i]` is the coefficient of `v^i`; the top coefficient is nonzero
/// unless the polynomial is zero (then `coeffs` is empty).
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct UPoly {
    pub coeffs: Vec<Poly>,
}

impl UPoly {
    pub fn from_poly(p: &Poly, v: VarId) -> Self {
        let mut u = UPoly {
            coeffs: p.coeffs_in(v),
        };
        u.trim();
        u
    }

    pub fn to_poly(&self, v: VarId) -> Poly {
        Poly::from_coeffs(v, &self.coeffs)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Poly::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn lc(&self) -> &Poly {
        self.coeffs.last().expect("leading coefficient of zero")
    }

    pub fn scale(&self, c: &Poly) -> UPoly {
        let mut u = UPoly {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        };
        u.trim();
        u
    }

    pub fn div_exact(&self, c: &Poly) -> Result<UPoly, PolyError> {
        if c.is_one() {
            return Ok(self.clone());
        }
        let coeffs = self
            .coeffs
            .iter()
            .map(|x| exact_div(x, c))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(UPoly { coeffs })
    }

    /// Pseudo-remainder: `lc(b)^(deg a - deg b + 1) * a mod b`.
    pub fn prem(&self, b: &UPoly) -> UPoly {
        let (m, n) = (self.degree(), b.degree());
        assert!(n >= 0, "pseudo-division by zero");
        if m < n {
            return self.clone();
        }
        let lcb = b.lc().clone();
        let mut r = self.clone();
        let mut e = m - n + 1;
        while !r.is_zero() && r.degree() >= n {
            let shift = (r.degree() - n) as usize;
            let lr = r.lc().clone();
            // r = lcb*r - lr * v^shift * b
            let mut next: Vec<Poly> = r.coeffs.iter().map(|x| x * &lcb).collect();
            for (i, bc) in b.coeffs.iter().enumerate() {
                let t = bc * &lr;
                next[i + shift] = &next[i + shift] - &t;
            }
            r = UPoly { coeffs: next };
            r.trim();
            e -= 1;
        }
        if e > 0 && !r.is_zero() {
            let f = lcb.pow(e as u32);
            r = r.scale(&f);
        }
        r
    }
}

impl UPoly {
    pub fn one() -> Self {
        UPoly {
            coeffs: vec![Poly::constant(num_bigint::BigInt::one())],
        }
    }
}
