use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::Rational;
use crate::error::{Error, Result};

/// Power series in `h` truncated modulo `h^(order+1)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Jet {
    coeffs: Vec<Rational>,
}

impl Jet {
    pub fn zero(order: usize) -> Self {
        Jet {
            coeffs: vec![Rational::zero(); order + 1],
        }
    }

    pub fn constant(c: Rational, order: usize) -> Self {
        let mut j = Jet::zero(order);
        j.coeffs[0] = c;
        j
    }

    /// Coefficients of `h^0..h^N`; must be non-empty.
    pub fn from_coeffs(coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Invalid("a jet needs at least one coefficient".into()));
        }
        Ok(Jet { coeffs })
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, s: usize) -> &Rational {
        &self.coeffs[s]
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn set_coeff(&mut self, s: usize, c: Rational) {
        self.coeffs[s] = c;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    /// Truncated product; both factors must have the same order.
    pub fn mul(&self, other: &Jet) -> Result<Jet> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch(self.order(), other.order()));
        }
        Ok(self.mul_unchecked(other))
    }

    pub fn add(&self, other: &Jet) -> Result<Jet> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch(self.order(), other.order()));
        }
        let mut out = self.clone();
        out.add_assign_unchecked(other);
        Ok(out)
    }

    /// Divides by `h`, dropping the order by one.
    pub fn div_h(&self) -> Result<Jet> {
        if self.order() == 0 {
            return Err(Error::OrderZero);
        }
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        Ok(Jet {
            coeffs: self.coeffs[1..].to_vec(),
        })
    }

    pub fn truncate(&self, order: usize) -> Jet {
        let mut coeffs: Vec<Rational> = self.coeffs.iter().take(order + 1).cloned().collect();
        coeffs.resize(order + 1, Rational::zero());
        Jet { coeffs }
    }

    pub fn lowest_order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub(crate) fn mul_unchecked(&self, other: &Jet) -> Jet {
        assert_eq!(self.order(), other.order(), "jet order mismatch");
        let n = self.coeffs.len();
        let mut out = vec![Rational::zero(); n];
        for (p, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (q, b) in other.coeffs[..n - p].iter().enumerate() {
                if !b.is_zero() {
                    out[p + q] = &out[p + q] + &(a * b);
                }
            }
        }
        Jet { coeffs: out }
    }

    pub(crate) fn add_assign_unchecked(&mut self, other: &Jet) {
        assert_eq!(self.order(), other.order(), "jet order mismatch");
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            if !b.is_zero() {
                *a = &*a + b;
            }
        }
    }

    pub(crate) fn sub_assign_unchecked(&mut self, other: &Jet) {
        assert_eq!(self.order(), other.order(), "jet order mismatch");
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            if !b.is_zero() {
                *a = &*a - b;
            }
        }
    }

    pub fn neg(&self) -> Jet {
        Jet {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Jet {
        Jet {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }
}

impl fmt::Display for Jet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (s, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match s {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})h")?,
                _ => write!(f, "({c})h^{s}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " mod h^{}", self.coeffs.len())
    }
}

impl fmt::Debug for Jet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Jet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.coeffs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Jet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let coeffs = Vec::<Rational>::deserialize(d)?;
        Jet::from_coeffs(coeffs).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn jet(cs: &[(i64, i64)]) -> Jet {
        Jet::from_coeffs(cs.iter().map(|&(p, q)| Rational::new(p, q)).collect()).unwrap()
    }

    #[test]
    fn product_examples() {
        let a = jet(&[(1, 1), (1, 1), (0, 1)]);
        let b = jet(&[(1, 1), (-1, 1), (0, 1)]);
        assert_eq!(a.mul(&b).unwrap(), jet(&[(1, 1), (0, 1), (-1, 1)]));
        let z = Jet::zero(2);
        assert!(z.mul(&a).unwrap().is_zero());
        assert!(matches!(a.mul(&Jet::zero(3)), Err(Error::OrderMismatch(2, 3))));
    }

    #[test]
    fn division_by_h() {
        let a = jet(&[(0, 1), (2, 1), (4, 1)]);
        assert_eq!(a.div_h().unwrap(), jet(&[(2, 1), (4, 1)]));
        let b = jet(&[(0, 1), (0, 1), (3, 1)]);
        assert_eq!(b.div_h().unwrap(), jet(&[(0, 1), (3, 1)]));
        assert!(matches!(
            jet(&[(1, 1), (1, 1)]).div_h(),
            Err(Error::NonzeroConstantTerm)
        ));
        assert!(matches!(jet(&[(0, 1)]).div_h(), Err(Error::OrderZero)));
    }

    #[test]
    fn serde_as_strings() {
        let a = jet(&[(1, 2), (0, 1), (-3, 1)]);
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, r#"["1/2","0","-3"]"#);
        let back: Jet = serde_json::from_str(&s).unwrap();
        assert_eq!(back, a);
    }
}
